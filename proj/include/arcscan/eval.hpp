/**
 * @file eval.hpp
 * @brief Synthetic scenes with ground truth, pixel-level E1/E2/AD metrics
 *        and primitive matching.
 */
#pragma once

#include "arcscan/csa.hpp"
#include "arcscan/raster.hpp"

#include <cstdint>
#include <numbers>
#include <optional>
#include <span>
#include <vector>

namespace arcscan {

// -----------------------------------------------------------------------------
// Scenes
// -----------------------------------------------------------------------------

/// Circle or arc. Angles are polar angles about the centre with y pointing
/// up, swept counter-clockwise from start to end; a sweep of 2*pi or more is
/// a full circle.
struct CircleSpec {
    Pixel center;
    int radius = 1;
    double start = 0.0;
    double end = 2.0 * std::numbers::pi;

    bool full() const { return end - start >= 2.0 * std::numbers::pi - 1e-12; }
};

struct LineSpec {
    Pixel a;
    Pixel b;
};

struct SceneSpec {
    int width = 200;
    int height = 200;
    int thickness = 1;  ///< stroke width in pixels (odd)
    std::vector<CircleSpec> circles;
    std::vector<LineSpec> lines;
};

enum class PrimitiveKind { circle, arc, line };

struct Primitive {
    PrimitiveKind kind = PrimitiveKind::circle;
    RealPoint center;   ///< circle/arc
    double radius = 0;  ///< circle/arc
    double start = 0;   ///< arc
    double end = 0;     ///< arc
    RealPoint a;        ///< line
    RealPoint b;        ///< line

    bool circular() const { return kind != PrimitiveKind::line; }
};

struct GroundTruth {
    BinaryImage arc_mask;        ///< pixels on circles and arcs
    BinaryImage all_curves_mask; ///< every drawn pixel
    std::vector<Primitive> primitives;

    std::vector<Primitive> circular_primitives() const;
};

struct SynthScene {
    BinaryImage image;
    GroundTruth truth;
};

/// Renders midpoint circles/arcs and Bresenham lines, each pixel stamped with
/// a square brush of side `thickness`. Pixels drawn by both a line and an arc
/// belong to the arc mask. Throws std::invalid_argument when a primitive
/// leaves the canvas or a radius is < 1.
SynthScene synth_scene(const SceneSpec& spec);

struct RandomSceneOptions {
    int width = 800;
    int height = 800;
    int thickness = 3;
    int min_circular = 3;
    int max_circular = 8;
    int min_lines = 2;
    int max_lines = 5;
    int min_radius = 15;
    int max_radius = 120;
    double full_circle_fraction = 0.5;
};

/// Seeded random scene: non-overlapping circles and arcs (span at least a
/// quarter turn) plus straight lines that cross circles at a clear angle
/// instead of grazing them.
SceneSpec random_scene(std::uint64_t seed, const RandomSceneOptions& opts = {});

/// Ground truth of `scene` after rotate(image, degrees): masks are rotated
/// the same way and primitive geometry is mapped through Rotation.
GroundTruth rotate_truth(const GroundTruth& truth, double degrees);

// -----------------------------------------------------------------------------
// Metrics
// -----------------------------------------------------------------------------

struct MetricsReport {
    std::size_t N_c = 0;   ///< curve pixels in the image
    std::size_t N_g = 0;   ///< ground-truth arc pixels
    std::size_t N_p = 0;   ///< detected arc pixels
    std::size_t N_fa = 0;  ///< false acceptances
    std::size_t N_fr = 0;  ///< false rejections
    double E1 = 0.0;       ///< percent; +inf when N_g = 0 < N_fa
    double E2 = 0.0;       ///< percent
    double AD = 1.0;
    double elapsed = 0.0;  ///< seconds, filled in by benchmarks

    bool e1_infinite() const;
};

/// E1/E2/AD from the five pixel counts.
MetricsReport metrics_from_counts(std::size_t N_c, std::size_t N_g, std::size_t N_p,
                                  std::size_t N_fa, std::size_t N_fr);

/// Throws std::invalid_argument when the mask sizes differ.
MetricsReport compute_metrics(const BinaryImage& detected_mask, const GroundTruth& truth);

// -----------------------------------------------------------------------------
// Primitive matching
// -----------------------------------------------------------------------------

struct MatchTolerance {
    double center = 2.0;        ///< px
    double radius = 2.0;        ///< px
    double radius_rel = 0.0;    ///< radius may also be off by this fraction
};

struct MatchResult {
    std::size_t matched = 0;
    std::size_t missed = 0;
    std::size_t spurious = 0;
    /// (detected index, truth index) per match.
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
};

/// Greedy one-to-one matching by centre distance, then radius difference.
/// Lines in `truth` are ignored.
MatchResult match_primitives(std::span<const ArcRecord> detected,
                             std::span<const Primitive> truth, const MatchTolerance& tol = {});

MatchResult match_primitives(std::span<const ArcRecord> detected, const GroundTruth& truth,
                             double tol_center, double tol_radius);

}  // namespace arcscan
