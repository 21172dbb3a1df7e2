/**
 * @file csa.cpp
 * @brief Chord-and-sagitta detection pipeline.
 */
#include "arcscan/csa.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <random>
#include <stdexcept>
#include <unordered_set>

namespace arcscan {

void CsaConfig::validate() const {
    if (tau_h < 1) throw std::invalid_argument("CsaConfig: tau_h must be >= 1");
    if (tau_c < 3) throw std::invalid_argument("CsaConfig: tau_c must be >= 3");
    if (!(delta_phi > 0.0 && delta_phi < std::numbers::pi / 2.0))
        throw std::invalid_argument("CsaConfig: delta_phi must lie in (0, pi/2)");
    if (hough_triple_budget == 0)
        throw std::invalid_argument("CsaConfig: hough_triple_budget must be positive");
    if (spur_length < 0) throw std::invalid_argument("CsaConfig: spur_length must be >= 0");
    if (straight_end_trim < 0) throw std::invalid_argument("CsaConfig: straight_end_trim must be >= 0");
    if (!(absorb_distance >= 0.0))
        throw std::invalid_argument("CsaConfig: absorb_distance must be >= 0");
}

// =============================================================================
// Chord property
// =============================================================================

double max_chord_deviation(std::span<const Pixel> pixels) {
    const std::size_t k = pixels.size();
    const Regions regions = partition_regions(k);
    const Pixel a = pixels.front();
    const Pixel b = pixels.back();
    if (a == b) return std::numeric_limits<double>::infinity();
    const double phi_m = subtended_angle(a, pixels[k / 2], b);
    double worst = 0.0;
    for (std::size_t i = regions.central.begin; i < regions.central.end; ++i) {
        worst = std::max(worst, std::abs(subtended_angle(a, pixels[i], b) - phi_m));
    }
    return worst;
}

namespace {

bool chord_ok(std::span<const Pixel> pixels, double delta_phi) {
    return pixels.size() >= 3 && max_chord_deviation(pixels) <= delta_phi;
}

}  // namespace

bool satisfies_chord_property(const CurveSegment& seg, double delta_phi) {
    const std::span<const Pixel> px(seg.pixels);
    if (!chord_ok(px, delta_phi)) return false;
    if (!seg.closed) return true;
    // The end chord of a closed curve is a single step, which every closed
    // curve satisfies loosely; require both halves to be circular too.
    const std::size_t h = px.size() / 2;
    return chord_ok(px.subspan(0, h + 1), delta_phi) && chord_ok(px.subspan(h + 1), delta_phi);
}

// =============================================================================
// Straightness and circularity
// =============================================================================

bool is_nearly_straight(const CurveSegment& seg, const CsaConfig& cfg) {
    if (seg.closed) return false;
    const std::span<const Pixel> px = seg.pixels;
    if (is_digitally_straight(px, cfg.tau_h)) return true;
    const auto trim = static_cast<std::size_t>(cfg.straight_end_trim);
    if (trim == 0 || px.size() < 2 * trim + static_cast<std::size_t>(cfg.tau_c)) return false;
    return is_digitally_straight(px.subspan(trim, px.size() - 2 * trim), cfg.tau_h);
}

SegmentList remove_straight(SegmentList list, const CsaConfig& cfg) {
    std::erase_if(list, [&](const SegmentEntry& e) {
        if (e.segment.size() < 2) return true;
        return is_nearly_straight(e.segment, cfg);
    });
    return list;
}

namespace {

void certify(const CurveSegment& seg, const CsaConfig& cfg, std::vector<CurveSegment>& out) {
    const std::size_t k = seg.size();
    if (k < static_cast<std::size_t>(cfg.tau_c)) return;
    if (is_nearly_straight(seg, cfg)) return;
    if (satisfies_chord_property(seg, cfg.delta_phi)) {
        out.push_back(seg);
        return;
    }
    const std::size_t h = k / 2;
    CurveSegment left{{seg.pixels.begin(), seg.pixels.begin() + static_cast<std::ptrdiff_t>(h) + 1},
                      false};
    CurveSegment right{{seg.pixels.begin() + static_cast<std::ptrdiff_t>(h) + 1, seg.pixels.end()},
                       false};
    certify(left, cfg, out);
    certify(right, cfg, out);
}

}  // namespace

std::vector<CurveSegment> verify_circularity(const CurveSegment& seg, const CsaConfig& cfg) {
    std::vector<CurveSegment> out;
    certify(seg, cfg, out);
    return out;
}

// =============================================================================
// Sagitta estimation
// =============================================================================

Pixel find_sagitta_foot(const CurveSegment& seg) {
    const std::size_t k = seg.size();
    if (k < 3) throw std::invalid_argument("find_sagitta_foot: need at least 3 pixels");
    const Pixel a = seg.front();
    const Pixel b = seg.back();
    if (a == b) throw DegenerateGeometry("find_sagitta_foot: coincident endpoints");
    const double len = distance(a, b);
    const double ux = (b.x - a.x) / len;
    const double uy = (b.y - a.y) / len;
    const double mx = (a.x + b.x) / 2.0;
    const double my = (a.y + b.y) / 2.0;

    constexpr double kTie = 1e-9;
    std::size_t best = 0;
    double best_dist = std::numeric_limits<double>::infinity();
    auto off_middle = [&](std::size_t i) {
        const auto twice = static_cast<long long>(2 * i) - static_cast<long long>(k - 1);
        return twice < 0 ? -twice : twice;
    };
    bool any_off_chord = false;
    for (std::size_t i = 0; i < k; ++i) {
        const Pixel p = seg.pixels[i];
        any_off_chord = any_off_chord || triangle_area2(a, p, b) != 0;
        const double d = std::abs((p.x - mx) * ux + (p.y - my) * uy);
        if (d < best_dist - kTie || (d <= best_dist + kTie && off_middle(i) < off_middle(best))) {
            best = i;
            best_dist = std::min(d, best_dist);
        }
    }
    if (!any_off_chord) throw DegenerateGeometry("find_sagitta_foot: segment is collinear");
    return seg.pixels[best];
}

ArcRecord estimate_params(const CurveSegment& seg) {
    // A closed curve has no end chord; its first half spans about a diameter.
    const CurveSegment basis =
        seg.closed ? CurveSegment{{seg.pixels.begin(), seg.pixels.begin() + static_cast<std::ptrdiff_t>(seg.size() / 2) + 1}, false}
                   : seg;
    const Pixel foot = find_sagitta_foot(basis);
    const SagittaEstimate est = sagitta_estimate(basis.front(), basis.back(), foot);
    ArcRecord rec;
    rec.segment = seg;
    rec.center = est.center;
    rec.radius = est.radius;
    rec.source = ArcSource::sagitta;
    return rec;
}

// =============================================================================
// Merging
// =============================================================================

namespace {

// Thinning leaves crossings as small junction clusters, so endpoints of
// pieces of one curve may sit a few pixels apart.
constexpr int kTouchDistance = 8;

/// Appends `tail` to `head` (head.back() near tail.front()), bridging the
/// gap with a digital straight run.
void append_touching(std::vector<Pixel>& head, std::span<const Pixel> tail) {
    const Pixel e = head.back();
    const Pixel s = tail.front();
    std::size_t skip = 0;
    if (e == s) {
        skip = 1;
    } else if (isothetic_distance(e, s) > 1) {
        const auto bridge = bresenham_line(e, s);
        head.insert(head.end(), bridge.begin() + 1, bridge.end() - 1);
    }
    head.insert(head.end(), tail.begin() + static_cast<std::ptrdiff_t>(skip), tail.end());
}

bool all_distinct(const CurveSegment& seg) {
    std::unordered_set<Pixel, PixelHash> seen;
    for (const Pixel p : seg.pixels)
        if (!seen.insert(p).second) return false;
    return true;
}

/// Turns an open curve whose ends nearly meet into a closed one.
void close_if_touching(CurveSegment& seg) {
    if (seg.closed || seg.size() <= 3) return;
    const int gap = isothetic_distance(seg.front(), seg.back());
    if (gap > kTouchDistance) return;
    if (gap == 0) {
        seg.pixels.pop_back();
    } else if (gap > 1) {
        const auto bridge = bresenham_line(seg.back(), seg.front());
        seg.pixels.insert(seg.pixels.end(), bridge.begin() + 1, bridge.end() - 1);
    }
    seg.closed = true;
}

std::optional<CurveSegment> join(const CurveSegment& s, const CurveSegment& t) {
    if (s.closed || t.closed || s.empty() || t.empty()) return std::nullopt;
    struct Option {
        int gap;
        bool reverse_s;
        bool reverse_t;
    };
    // s.back-t.front, s.back-t.back, s.front-t.back, s.front-t.front
    const std::array<Option, 4> options{{
        {isothetic_distance(s.back(), t.front()), false, false},
        {isothetic_distance(s.back(), t.back()), false, true},
        {isothetic_distance(s.front(), t.back()), true, true},
        {isothetic_distance(s.front(), t.front()), true, false},
    }};
    const Option* pick = nullptr;
    for (const auto& o : options)
        if (o.gap <= kTouchDistance && (pick == nullptr || o.gap < pick->gap)) pick = &o;
    if (pick == nullptr) return std::nullopt;

    std::vector<Pixel> head = s.pixels;
    std::vector<Pixel> tail = t.pixels;
    if (pick->reverse_s) std::reverse(head.begin(), head.end());
    if (pick->reverse_t) std::reverse(tail.begin(), tail.end());
    // Option 3 (front of s to back of t) reverses both so s runs into t.
    append_touching(head, tail);

    CurveSegment out{std::move(head), false};
    close_if_touching(out);
    if (!all_distinct(out)) return std::nullopt;
    return out;
}

}  // namespace

SegmentList merge_adjacent(SegmentList list, const CsaConfig& cfg) {
    for (auto& entry : list) {
        CurveSegment closed = entry.segment;
        close_if_touching(closed);
        if (!closed.closed || !all_distinct(closed)) continue;
        if (!satisfies_chord_property(closed, cfg.delta_phi)) continue;
        entry.segment = std::move(closed);
    }
    bool changed = true;
    while (changed) {
        changed = false;
        for (std::size_t i = 0; i < list.size() && !changed; ++i) {
            for (std::size_t j = i + 1; j < list.size() && !changed; ++j) {
                auto joined = join(list[i].segment, list[j].segment);
                if (!joined) continue;
                if (is_nearly_straight(*joined, cfg)) continue;
                if (!satisfies_chord_property(*joined, cfg.delta_phi)) continue;
                SegmentEntry merged;
                merged.segment = std::move(*joined);
                merged.merged_from = list[i].merged_from + list[j].merged_from;
                try {
                    const ArcRecord rec = estimate_params(merged.segment);
                    merged.center = rec.center;
                    merged.radius = rec.radius;
                } catch (const DegenerateGeometry&) {
                }
                list[i] = std::move(merged);
                list.erase(list.begin() + static_cast<std::ptrdiff_t>(j));
                changed = true;
            }
        }
    }
    return list;
}

// =============================================================================
// Restricted Hough transform
// =============================================================================

RestrictedAccumulator::RestrictedAccumulator(RealPoint center, double radius)
    : center_(center), delta_(radius) {
    if (!(radius > 0.0) || !std::isfinite(radius))
        throw std::invalid_argument("RestrictedAccumulator: radius must be positive");
    half_ = static_cast<int>(std::ceil(radius));
    x0_ = static_cast<int>(std::lround(center.x)) - half_;
    y0_ = static_cast<int>(std::lround(center.y)) - half_;
    r0_ = static_cast<int>(std::lround(radius)) - half_;
}

std::optional<std::uint64_t> RestrictedAccumulator::key_of(RealPoint c, double r) const {
    if (!std::isfinite(c.x) || !std::isfinite(c.y) || !std::isfinite(r)) return std::nullopt;
    if (std::abs(c.x - center_.x) > delta_ || std::abs(c.y - center_.y) > delta_ ||
        std::abs(r - delta_) > delta_) {
        return std::nullopt;
    }
    const long long ix = std::llround(c.x) - x0_;
    const long long iy = std::llround(c.y) - y0_;
    const long long ir = std::llround(r) - r0_;
    const long long n = dims();
    if (ix < 0 || iy < 0 || ir < 0 || ix >= n || iy >= n || ir >= n) return std::nullopt;
    return (static_cast<std::uint64_t>(ir) << 42) | (static_cast<std::uint64_t>(ix) << 21) |
           static_cast<std::uint64_t>(iy);
}

bool RestrictedAccumulator::vote(const CircleParams& c) {
    const auto key = key_of(c.center, c.radius);
    if (!key) return false;
    ++counts_[*key];
    ++total_;
    return true;
}

std::size_t RestrictedAccumulator::count_at(RealPoint center, double radius) const {
    const auto key = key_of(center, radius);
    if (!key) return 0;
    const auto it = counts_.find(*key);
    return it == counts_.end() ? 0 : it->second;
}

std::optional<CircleParams> RestrictedAccumulator::best() const {
    if (counts_.empty()) return std::nullopt;
    constexpr std::uint64_t kMask = (1ULL << 21) - 1;
    std::uint64_t best_key = 0;
    std::uint32_t best_count = 0;
    for (const auto& [key, n] : counts_) {
        // Key order is (r, x, y), which is exactly the tie-break order.
        if (n > best_count || (n == best_count && key < best_key)) {
            best_key = key;
            best_count = n;
        }
    }
    const auto ir = static_cast<int>(best_key >> 42);
    const auto ix = static_cast<int>((best_key >> 21) & kMask);
    const auto iy = static_cast<int>(best_key & kMask);
    return CircleParams{{static_cast<double>(x0_ + ix), static_cast<double>(y0_ + iy)},
                        static_cast<double>(r0_ + ir)};
}

ArcRecord restricted_hough(const ArcRecord& rec, const CsaConfig& cfg) {
    const auto& px = rec.segment.pixels;
    if (px.size() < 3 || !(rec.radius > 0.0) || !std::isfinite(rec.radius)) return rec;
    const Regions reg = partition_regions(px.size());
    RestrictedAccumulator acc(rec.center, rec.radius);

    auto try_triple = [&](std::size_t i, std::size_t j, std::size_t k) {
        try {
            acc.vote(circumcircle(to_real(px[i]), to_real(px[j]), to_real(px[k])));
        } catch (const DegenerateGeometry&) {
        }
    };

    const std::size_t nl = reg.left.size(), nc = reg.central.size(), nr = reg.right.size();
    const double cross = static_cast<double>(nl) * static_cast<double>(nc) * static_cast<double>(nr);
    if (cross <= static_cast<double>(cfg.hough_triple_budget)) {
        for (std::size_t i = reg.left.begin; i < reg.left.end; ++i)
            for (std::size_t j = reg.central.begin; j < reg.central.end; ++j)
                for (std::size_t k = reg.right.begin; k < reg.right.end; ++k) try_triple(i, j, k);
    } else {
        std::mt19937_64 rng(cfg.rng_seed);
        std::uniform_int_distribution<std::size_t> li(reg.left.begin, reg.left.end - 1);
        std::uniform_int_distribution<std::size_t> ci(reg.central.begin, reg.central.end - 1);
        std::uniform_int_distribution<std::size_t> ri(reg.right.begin, reg.right.end - 1);
        for (std::size_t n = 0; n < cfg.hough_triple_budget; ++n) {
            const std::size_t i = li(rng);
            const std::size_t j = ci(rng);
            const std::size_t k = ri(rng);
            try_triple(i, j, k);
        }
    }
    const auto best = acc.best();
    if (!best) return rec;
    ArcRecord out = rec;
    out.center = best->center;
    out.radius = best->radius;
    out.source = ArcSource::hough;
    return out;
}

// =============================================================================
// Thick-pixel absorption
// =============================================================================

std::vector<BinaryImage> absorb_thick_pixels(std::span<const ArcRecord> arcs,
                                             const BinaryImage& original, double max_distance) {
    const int w = original.width();
    const int h = original.height();
    std::vector<BinaryImage> masks;
    masks.reserve(arcs.size());
    for (const auto& arc : arcs) {
        auto off_circle = [&](Pixel p) {
            return std::abs(distance(to_real(p), arc.center) - arc.radius);
        };
        BinaryImage mask(w, h);
        std::deque<Pixel> queue;
        for (const Pixel p : arc.segment.pixels) {
            if (original.test(p) && !mask.test(p) && off_circle(p) <= max_distance) {
                mask.set(p);
                queue.push_back(p);
            }
        }
        while (!queue.empty()) {
            const Pixel p = queue.front();
            queue.pop_front();
            for (int dy = -1; dy <= 1; ++dy) {
                for (int dx = -1; dx <= 1; ++dx) {
                    const Pixel q{p.x + dx, p.y + dy};
                    if (!original.test(q) || mask.test(q) || off_circle(q) > max_distance) continue;
                    mask.set(q);
                    queue.push_back(q);
                }
            }
        }
        masks.push_back(std::move(mask));
    }

    // Resolve pixels claimed by several arcs in favour of the nearest circle.
    if (masks.size() > 1) {
        for (int y = 0; y < h; ++y) {
            for (int x = 0; x < w; ++x) {
                std::size_t owner = masks.size();
                double best = std::numeric_limits<double>::infinity();
                std::size_t claims = 0;
                for (std::size_t i = 0; i < masks.size(); ++i) {
                    if (!masks[i].test(x, y)) continue;
                    ++claims;
                    const double d = std::abs(distance(RealPoint{double(x), double(y)},
                                                       arcs[i].center) - arcs[i].radius);
                    if (d < best) {
                        best = d;
                        owner = i;
                    }
                }
                if (claims < 2) continue;
                for (std::size_t i = 0; i < masks.size(); ++i)
                    if (i != owner) masks[i].set(x, y, false);
            }
        }
    }
    return masks;
}

BinaryImage union_mask(std::span<const BinaryImage> masks, const BinaryImage& like) {
    BinaryImage out(like.width(), like.height());
    for (const auto& m : masks)
        for (const Pixel p : m.pixels()) out.set(p);
    return out;
}

// =============================================================================
// Pipeline
// =============================================================================

Detection detect_detailed(const BinaryImage& img, const CsaConfig& cfg) {
    cfg.validate();
    const BinaryImage cleaned = cfg.despeckle ? despeckle(img) : img;
    const BinaryImage skeleton = prune_spurs(thin(cleaned), cfg.spur_length);

    SegmentList list = remove_straight(extract_segments(skeleton), cfg);
    SegmentList certified;
    for (const auto& entry : list)
        for (auto& seg : verify_circularity(entry.segment, cfg))
            certified.emplace_back(std::move(seg));
    certified = merge_adjacent(std::move(certified), cfg);

    Detection out;
    for (const auto& entry : certified) {
        try {
            ArcRecord rec = estimate_params(entry.segment);
            rec.merged_from = entry.merged_from;
            out.sagitta_arcs.push_back(rec);
        } catch (const DegenerateGeometry&) {
        }
    }
    out.arcs.reserve(out.sagitta_arcs.size());
    for (const auto& rec : out.sagitta_arcs) out.arcs.push_back(restricted_hough(rec, cfg));
    out.masks = absorb_thick_pixels(out.arcs, img, cfg.absorb_distance);
    out.mask = union_mask(out.masks, img);
    return out;
}

std::vector<ArcRecord> detect(const BinaryImage& img, const CsaConfig& cfg) {
    return detect_detailed(img, cfg).arcs;
}

}  // namespace arcscan
