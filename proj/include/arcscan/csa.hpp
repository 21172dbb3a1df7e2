/**
 * @file csa.hpp
 * @brief Chord-and-sagitta arc detection: straight-segment removal, chord
 *        property certification with recursive splitting, arc merging,
 *        sagitta parameter estimation, restricted Hough refinement and
 *        re-absorption of thick-stroke pixels.
 */
#pragma once

#include "arcscan/curves.hpp"
#include "arcscan/digigeom.hpp"
#include "arcscan/raster.hpp"

#include <cstdint>
#include <numbers>
#include <optional>
#include <span>
#include <unordered_map>
#include <vector>

namespace arcscan {

struct CsaConfig {
    int tau_h = kDefaultTauH;                       ///< straightness area threshold
    int tau_c = 7;                                  ///< shortest arc examined (pixels)
    double delta_phi = std::numbers::pi / 18.0;     ///< chord-angle tolerance (rad)
    std::size_t hough_triple_budget = 2000;         ///< rHT triples per arc
    std::uint64_t rng_seed = 0;
    /// Skeleton branches this short that end freely are pruned before tracing.
    int spur_length = 3;
    /// Pixels ignored at each open end by the straightness test, so a line
    /// whose skeleton hooks into a junction is still recognised as straight.
    int straight_end_trim = 3;
    /// Isolated dots removed and one-pixel holes filled before thinning.
    bool despeckle = true;
    /// Distance cap (px) from an arc's circle for pixel re-absorption.
    double absorb_distance = 3.0;

    /// Throws std::invalid_argument on out-of-range fields.
    void validate() const;
};

enum class ArcSource { sagitta, hough };

struct ArcRecord {
    CurveSegment segment;
    RealPoint center;
    double radius = 0.0;
    ArcSource source = ArcSource::sagitta;
    int merged_from = 1;
};

// -----------------------------------------------------------------------------
// Chord property on the grid
// -----------------------------------------------------------------------------

/// max |phi_c - phi_m| over the central region, with every angle subtended by
/// the chord between the first and last pixel and m the pixel at index k/2.
/// Needs at least 3 pixels.
double max_chord_deviation(std::span<const Pixel> pixels);

/// The certification test applied to one candidate: chord property within
/// delta_phi; for a closed curve each of its two halves must pass as well.
bool satisfies_chord_property(const CurveSegment& seg, double delta_phi);

// -----------------------------------------------------------------------------
// Pipeline stages
// -----------------------------------------------------------------------------

/// Digitally straight (tau_h) as a whole or once `straight_end_trim` pixels
/// are dropped from both ends. Closed curves are never straight.
bool is_nearly_straight(const CurveSegment& seg, const CsaConfig& cfg);

/// Drops every nearly straight segment (and degenerate ones with fewer
/// than two pixels).
SegmentList remove_straight(SegmentList list, const CsaConfig& cfg);

/// Maximal circular sub-segments of `seg`. Segments shorter than tau_c or
/// digitally straight are discarded; failing segments are halved (the left
/// half keeps the middle pixel) and each half is examined again.
std::vector<CurveSegment> verify_circularity(const CurveSegment& seg, const CsaConfig& cfg);

/// Segment pixel closest to the perpendicular bisector of the end chord;
/// ties go to the pixel nearer the middle index. Throws DegenerateGeometry
/// when every pixel lies on the chord line.
Pixel find_sagitta_foot(const CurveSegment& seg);

/// Center and radius from the sagitta through find_sagitta_foot(). A
/// closed curve is measured on its first half.
ArcRecord estimate_params(const CurveSegment& seg);

/// Repeatedly joins the lowest-index pair of entries whose endpoints touch
/// (isothetic distance <= 2) when the joined curve still satisfies the chord
/// property; parameters of joined entries are re-estimated.
SegmentList merge_adjacent(SegmentList list, const CsaConfig& cfg);

/// Sparse 3-D vote array over [x - d, x + d] x [y - d, y + d] x [r - d, r + d]
/// with d = r. Cells are one pixel wide and centred on integer parameters.
class RestrictedAccumulator {
public:
    RestrictedAccumulator(RealPoint center, double radius);

    /// Counts the circle in its cell; returns false when it falls outside.
    bool vote(const CircleParams& c);

    std::size_t total() const { return total_; }
    /// Cells per axis.
    int dims() const { return 2 * half_ + 1; }
    std::size_t count_at(RealPoint center, double radius) const;

    /// Cell with the most votes; ties go to the smaller radius, then the
    /// lexicographically smaller (x, y). Empty when nothing was counted.
    std::optional<CircleParams> best() const;

private:
    std::optional<std::uint64_t> key_of(RealPoint center, double radius) const;

    RealPoint center_;
    double delta_;
    int half_;
    int x0_, y0_, r0_;
    std::unordered_map<std::uint64_t, std::uint32_t> counts_;
    std::size_t total_ = 0;
};

/// Restricted Hough finalisation of a sagitta estimate. Triples take one
/// pixel from each of the left, central and right regions; when their cross
/// product exceeds the budget, that many triples are drawn uniformly with the
/// seeded generator. Without a single non-collinear triple the record is
/// returned unchanged.
ArcRecord restricted_hough(const ArcRecord& rec, const CsaConfig& cfg);

/// Per-arc masks of `original` object pixels reached from the arc's pixels
/// through 8-neighbour steps while staying within `max_distance` of the arc's
/// circle. A pixel reached by several arcs goes to the nearest circle.
std::vector<BinaryImage> absorb_thick_pixels(std::span<const ArcRecord> arcs,
                                             const BinaryImage& original,
                                             double max_distance = 3.0);

// -----------------------------------------------------------------------------
// Whole pipeline
// -----------------------------------------------------------------------------

struct Detection {
    std::vector<ArcRecord> arcs;           ///< final, rHT refined
    std::vector<ArcRecord> sagitta_arcs;   ///< same arcs before rHT
    std::vector<BinaryImage> masks;        ///< absorb_thick_pixels output
    BinaryImage mask{1, 1};                ///< union of `masks`
};

Detection detect_detailed(const BinaryImage& img, const CsaConfig& cfg = {});

std::vector<ArcRecord> detect(const BinaryImage& img, const CsaConfig& cfg = {});

/// Union of masks (all the same size as `like`).
BinaryImage union_mask(std::span<const BinaryImage> masks, const BinaryImage& like);

}  // namespace arcscan
