/**
 * @file curves.cpp
 * @brief Skeleton tracing into the segment list.
 */
#include "arcscan/curves.hpp"
#include "arcscan/neighborhood.hpp"

#include <nlohmann/json.hpp>

#include <stdexcept>
#include <unordered_set>

namespace arcscan {

namespace {

class Tracer {
public:
    explicit Tracer(const BinaryImage& skeleton)
        : img_(skeleton), visited_(skeleton.width(), skeleton.height()) {}

    SegmentList run() {
        SegmentList out;
        const auto pixels = img_.pixels();
        for (const Pixel p : pixels) {
            const auto nbrs = m_neighbors(img_, p);
            if (nbrs.size() == 2) continue;
            visited_.set(p);
            if (nbrs.empty()) {
                out.emplace_back(CurveSegment{{p}, false});
                continue;
            }
            for (const Pixel q : nbrs) {
                if (!edges_.insert(edge_key(p, q)).second) continue;
                out.emplace_back(walk(p, q));
            }
        }
        // Whatever is left consists of pure loops of degree-2 pixels.
        for (const Pixel p : pixels) {
            if (visited_.test(p)) continue;
            out.emplace_back(trace_loop(p));
        }
        return out;
    }

private:
    std::uint64_t edge_key(Pixel p, Pixel q) const {
        auto idx = [&](Pixel r) {
            return static_cast<std::uint64_t>(r.y) * static_cast<std::uint64_t>(img_.width()) +
                   static_cast<std::uint64_t>(r.x);
        };
        const std::uint64_t a = idx(p), b = idx(q);
        return a < b ? (a << 32) | b : (b << 32) | a;
    }

    /// Walks from a free end or junction `start` through `first` until the
    /// next pixel whose degree is not 2.
    CurveSegment walk(Pixel start, Pixel first) {
        CurveSegment seg;
        seg.pixels.push_back(start);
        Pixel prev = start;
        Pixel cur = first;
        while (true) {
            seg.pixels.push_back(cur);
            const auto nbrs = m_neighbors(img_, cur);
            if (nbrs.size() != 2) break;
            visited_.set(cur);
            const Pixel next = nbrs[0] == prev ? nbrs[1] : nbrs[0];
            edges_.insert(edge_key(cur, next));
            prev = cur;
            cur = next;
        }
        if (seg.size() > 2 && seg.front() == seg.back()) {
            // Loop hanging off a single junction: store it closed, cut there.
            seg.pixels.pop_back();
            seg.closed = true;
        }
        return seg;
    }

    CurveSegment trace_loop(Pixel start) {
        CurveSegment seg;
        seg.closed = true;
        seg.pixels.push_back(start);
        visited_.set(start);
        Pixel prev = start;
        Pixel cur = m_neighbors(img_, start).front();
        while (cur != start) {
            seg.pixels.push_back(cur);
            visited_.set(cur);
            const auto nbrs = m_neighbors(img_, cur);
            const Pixel next = nbrs[0] == prev ? nbrs[1] : nbrs[0];
            prev = cur;
            cur = next;
        }
        return seg;
    }

    const BinaryImage& img_;
    BinaryImage visited_;
    std::unordered_set<std::uint64_t> edges_;
};

}  // namespace

SegmentList extract_segments(const BinaryImage& skeleton) {
    return Tracer(skeleton).run();
}

Regions partition_regions(std::size_t k) {
    if (k < 3) throw std::invalid_argument("partition_regions: need at least 3 pixels");
    const std::size_t lo = k / 3;
    const std::size_t hi = std::min(2 * k / 3, k - 2);
    return {{0, lo}, {lo, hi + 1}, {hi + 1, k}};
}

bool is_simple_curve(const CurveSegment& seg) {
    const auto& px = seg.pixels;
    const std::size_t k = px.size();
    if (k == 0) return false;
    std::unordered_set<Pixel, PixelHash> seen;
    for (std::size_t i = 0; i < k; ++i) {
        const bool wrap_repeat = seg.closed && i == k - 1 && px[i] == px[0];
        if (!seen.insert(px[i]).second && !wrap_repeat) return false;
        if (i > 0 && !are_8_neighbors(px[i - 1], px[i])) return false;
    }
    if (seg.closed && k > 2 && px.front() != px.back() && !are_8_neighbors(px.front(), px.back()))
        return false;

    // No shortcut: a pixel's 8-neighbours on the curve are its sequence
    // neighbours only.
    auto seq_adjacent = [&](std::size_t i, std::size_t j) {
        const std::size_t d = i > j ? i - j : j - i;
        if (d == 1) return true;
        return seg.closed && d == k - 1;
    };
    for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = i + 2; j < k; ++j) {
            if (px[i] == px[j]) continue;
            if (are_8_neighbors(px[i], px[j]) && !seq_adjacent(i, j)) return false;
        }
    }
    return true;
}

BinaryImage render_segments(std::span<const CurveSegment> segments, int width, int height) {
    BinaryImage out(width, height);
    for (const auto& s : segments)
        for (const Pixel p : s.pixels) out.set_clipped(p);
    return out;
}

nlohmann::json segments_to_json(const SegmentList& list) {
    auto arr = nlohmann::json::array();
    for (const auto& e : list) {
        auto pts = nlohmann::json::array();
        for (const Pixel p : e.segment.pixels) pts.push_back({p.x, p.y});
        arr.push_back({{"closed", e.segment.closed}, {"pixels", std::move(pts)}});
    }
    return arr;
}

}  // namespace arcscan
