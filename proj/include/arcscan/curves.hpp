/**
 * @file curves.hpp
 * @brief Tracing a thinned raster into ordered digital curve segments.
 */
#pragma once

#include "arcscan/raster.hpp"
#include "arcscan/types.hpp"

#include <nlohmann/json_fwd.hpp>

#include <optional>
#include <utility>
#include <span>
#include <vector>

namespace arcscan {

/// One entry of the working segment list: the curve plus the circle
/// parameters once they have been estimated.
struct SegmentEntry {
    CurveSegment segment;
    std::optional<RealPoint> center;
    std::optional<double> radius;
    int merged_from = 1;  ///< number of traced pieces joined into this entry

    SegmentEntry() = default;
    explicit SegmentEntry(CurveSegment seg) : segment(std::move(seg)) {}
};

using SegmentList = std::vector<SegmentEntry>;

/// Splits a thinned raster into 8-connected curve segments.
///
/// Tracing starts at free ends and junctions (m-degree != 2) in row-major
/// order, walks through degree-2 pixels and stops at the next free end or
/// junction. Junction pixels are replicated as the endpoint of every branch
/// incident to them. Pure loops left over afterwards are traced from their
/// topmost-then-leftmost pixel and marked closed. Isolated pixels become
/// one-pixel segments.
SegmentList extract_segments(const BinaryImage& skeleton);

/// Half-open index interval [begin, end).
struct IndexRange {
    std::size_t begin = 0;
    std::size_t end = 0;

    std::size_t size() const { return end - begin; }
    bool contains(std::size_t i) const { return i >= begin && i < end; }
    friend bool operator==(const IndexRange&, const IndexRange&) = default;
};

struct Regions {
    IndexRange left;
    IndexRange central;
    IndexRange right;
};

/// Left/central/right thirds of a k-pixel sequence (k >= 3):
/// central = [floor(k/3), floor(2k/3)], clipped so the right region keeps at
/// least one pixel. Throws std::invalid_argument for k < 3.
Regions partition_regions(std::size_t k);
inline Regions partition_regions(const CurveSegment& seg) { return partition_regions(seg.size()); }

/// Checks the CurveSegment invariants (8-connected steps, no repeats apart
/// from first == last on a closed curve, no chord shortcuts between
/// non-consecutive pixels).
bool is_simple_curve(const CurveSegment& seg);

/// Renders segments onto a width x height canvas.
BinaryImage render_segments(std::span<const CurveSegment> segments, int width, int height);

/// Debug dump: [{"closed": bool, "pixels": [[x, y], ...]}, ...].
nlohmann::json segments_to_json(const SegmentList& list);

}  // namespace arcscan
