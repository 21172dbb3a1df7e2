/**
 * @file baselines.cpp
 * @brief RHT and EVM reference detectors.
 */
#include "arcscan/baselines.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <random>
#include <stdexcept>
#include <tuple>
#include <unordered_map>

namespace arcscan {

namespace {

constexpr double kOnCircle = 1.0;  // membership distance (px)

double circumference(double r) { return 2.0 * std::numbers::pi * r; }

/// Calls fn(p) for every canvas pixel whose distance to the circle is <= tol.
template <typename Fn>
void for_each_band_pixel(const BinaryImage& img, const CircleParams& c, double tol, Fn&& fn) {
    const double outer = c.radius + tol;
    const double inner = std::max(0.0, c.radius - tol);
    const int y_lo = std::max(0, static_cast<int>(std::ceil(c.center.y - outer)));
    const int y_hi = std::min(img.height() - 1, static_cast<int>(std::floor(c.center.y + outer)));
    for (int y = y_lo; y <= y_hi; ++y) {
        const double dy = y - c.center.y;
        const double wo = std::sqrt(std::max(0.0, outer * outer - dy * dy));
        const double wi = inner > std::abs(dy) ? std::sqrt(inner * inner - dy * dy) : 0.0;
        auto scan = [&](double from, double to) {
            const int x_lo = std::max(0, static_cast<int>(std::floor(from)));
            const int x_hi = std::min(img.width() - 1, static_cast<int>(std::ceil(to)));
            for (int x = x_lo; x <= x_hi; ++x) {
                const double d = std::hypot(x - c.center.x, dy);
                if (std::abs(d - c.radius) <= tol) fn(Pixel{x, y});
            }
        };
        if (wi <= 1.0) {
            scan(c.center.x - wo, c.center.x + wo);
        } else {
            scan(c.center.x - wo, c.center.x - wi);
            scan(c.center.x + wi, c.center.x + wo);
        }
    }
}

ArcRecord circle_record(const BinaryImage& img, const CircleParams& c) {
    ArcRecord rec;
    rec.segment = {on_circle_pixels(img, c), true};
    rec.center = c.center;
    rec.radius = c.radius;
    rec.source = ArcSource::hough;
    return rec;
}

}  // namespace

void RhtConfig::validate() const {
    if (n_t != 2 && n_t != 3) throw std::invalid_argument("RhtConfig: n_t must be 2 or 3");
    if (!(T_r > 0.0 && T_r <= 1.0)) throw std::invalid_argument("RhtConfig: T_r must lie in (0, 1]");
}

void EvmConfig::validate() const {
    if (!(T_e > 0.0 && T_e <= 1.0)) throw std::invalid_argument("EvmConfig: T_e must lie in (0, 1]");
    if (sample_count < 3) throw std::invalid_argument("EvmConfig: sample_count must be >= 3");
}

std::vector<Pixel> on_circle_pixels(const BinaryImage& img, const CircleParams& circle) {
    std::vector<std::pair<double, Pixel>> keyed;
    for_each_band_pixel(img, circle, kOnCircle, [&](Pixel p) {
        if (img.test(p))
            keyed.emplace_back(std::atan2(circle.center.y - p.y, p.x - circle.center.x), p);
    });
    std::sort(keyed.begin(), keyed.end(), [](const auto& l, const auto& r) {
        return std::tie(l.first, l.second) < std::tie(r.first, r.second);
    });
    std::vector<Pixel> out;
    out.reserve(keyed.size());
    for (const auto& kp : keyed) out.push_back(kp.second);
    return out;
}

double existing_rate(const BinaryImage& img, const CircleParams& circle) {
    std::size_t n = 0;
    for_each_band_pixel(img, circle, kOnCircle, [&](Pixel p) { n += img.test(p) ? 1 : 0; });
    return static_cast<double>(n) / circumference(circle.radius);
}

// =============================================================================
// Randomized Hough Transform
// =============================================================================

namespace {

/// Candidate set P with 1-px per-axis matching, bucketed on rounded params.
class CandidateSet {
public:
    struct Entry {
        double x, y, r;
        int score;
        bool alive;
    };

    /// Adds the sample or bumps a matching entry; returns its index.
    std::size_t add(const CircleParams& c) {
        const auto [bx, by, br] = bucket(c.center.x, c.center.y, c.radius);
        for (long long dx = -1; dx <= 1; ++dx)
            for (long long dy = -1; dy <= 1; ++dy)
                for (long long dr = -1; dr <= 1; ++dr) {
                    const auto it = buckets_.find(key(bx + dx, by + dy, br + dr));
                    if (it == buckets_.end()) continue;
                    for (const std::size_t idx : it->second) {
                        Entry& e = entries_[idx];
                        if (!e.alive) continue;
                        if (std::abs(e.x - c.center.x) <= 1.0 && std::abs(e.y - c.center.y) <= 1.0 &&
                            std::abs(e.r - c.radius) <= 1.0) {
                            ++e.score;
                            return idx;
                        }
                    }
                }
        entries_.push_back({c.center.x, c.center.y, c.radius, 1, true});
        buckets_[key(bx, by, br)].push_back(entries_.size() - 1);
        return entries_.size() - 1;
    }

    Entry& operator[](std::size_t i) { return entries_[i]; }
    void clear() {
        entries_.clear();
        buckets_.clear();
    }

private:
    static std::tuple<long long, long long, long long> bucket(double x, double y, double r) {
        return {std::llround(x), std::llround(y), std::llround(r)};
    }
    static std::uint64_t key(long long x, long long y, long long r) {
        auto u = [](long long v) { return static_cast<std::uint64_t>(v + (1LL << 20)) & 0x1FFFFF; };
        return (u(r) << 42) | (u(x) << 21) | u(y);
    }

    std::vector<Entry> entries_;
    std::unordered_map<std::uint64_t, std::vector<std::size_t>> buckets_;
};

}  // namespace

std::vector<ArcRecord> rht_detect(const BinaryImage& img, const RhtConfig& cfg) {
    cfg.validate();
    BinaryImage work = cfg.thin_input ? thin(img) : img;
    const BinaryImage reference = work;
    std::vector<Pixel> points = work.pixels();
    const double max_radius = std::max(work.width(), work.height());
    std::mt19937_64 rng(cfg.rng_seed);
    CandidateSet candidates;
    std::vector<ArcRecord> found;

    for (std::size_t step = 0; step < cfg.max_steps; ++step) {
        if (points.size() < std::max<std::size_t>(cfg.min_points, 3)) break;
        std::uniform_int_distribution<std::size_t> pick(0, points.size() - 1);
        const std::size_t i = pick(rng);
        std::size_t j = pick(rng);
        std::size_t k = pick(rng);
        if (i == j || j == k || i == k) continue;
        CircleParams c;
        try {
            c = circumcircle(to_real(points[i]), to_real(points[j]), to_real(points[k]));
        } catch (const DegenerateGeometry&) {
            continue;
        }
        if (c.radius < cfg.min_radius || c.radius > max_radius) continue;

        const std::size_t idx = candidates.add(c);
        auto& entry = candidates[idx];
        if (entry.score < cfg.n_t) continue;

        const CircleParams cand{{entry.x, entry.y}, entry.r};
        const auto on = on_circle_pixels(work, cand);
        const double rate = static_cast<double>(on.size()) / circumference(cand.radius);
        if (rate >= cfg.T_r) {
            found.push_back(circle_record(reference, cand));
            for (const Pixel p : on) work.set(p, false);
            points = work.pixels();
            candidates.clear();
        } else {
            entry.alive = false;
        }
    }
    return found;
}

// =============================================================================
// Effective Voting Method
// =============================================================================

std::vector<ArcRecord> evm_detect(const BinaryImage& img, const EvmConfig& cfg) {
    cfg.validate();
    const BinaryImage work = cfg.thin_input ? thin(img) : img;
    std::vector<Pixel> points = work.pixels();
    if (points.size() < 3) return {};

    std::mt19937_64 rng(cfg.rng_seed);
    std::vector<Pixel> sample;
    if (points.size() <= cfg.sample_count) {
        sample = points;
    } else {
        std::sample(points.begin(), points.end(), std::back_inserter(sample), cfg.sample_count, rng);
    }
    const double max_radius = std::max(work.width(), work.height());

    // Unique candidate circles keyed on rounded parameters (x, y, r).
    std::map<std::tuple<long long, long long, long long>, std::pair<CircleParams, double>> circles;
    for (const Pixel p : sample) {
        for (const Pixel q : sample) {
            if (p == q) continue;
            const double d = distance(p, q);
            if (d < cfg.min_pair_distance || d > cfg.max_pair_distance) continue;
            // Third points r with |qr| = |pq| within one pixel.
            for_each_band_pixel(work, {to_real(q), d}, 0.5, [&](Pixel r) {
                if (!work.test(r) || r == p) return;
                CircleParams c;
                try {
                    c = circumcircle(to_real(p), to_real(q), to_real(r));
                } catch (const DegenerateGeometry&) {
                    return;
                }
                if (c.radius < cfg.min_radius || c.radius > max_radius) return;
                const auto key = std::make_tuple(std::llround(c.center.x), std::llround(c.center.y),
                                                 std::llround(c.radius));
                if (circles.contains(key)) return;
                circles.emplace(key, std::make_pair(c, existing_rate(work, c)));
            });
        }
    }

    // Each object pixel votes for the highest-rate circle through it.
    std::vector<std::pair<CircleParams, double>> ranked;
    ranked.reserve(circles.size());
    for (const auto& [key, value] : circles) ranked.push_back(value);
    std::stable_sort(ranked.begin(), ranked.end(),
                     [](const auto& l, const auto& r) { return l.second > r.second; });
    BinaryImage claimed(work.width(), work.height());
    std::vector<ArcRecord> found;
    for (const auto& [c, rate] : ranked) {
        if (rate < cfg.T_e) break;  // later circles cannot reach T_e either
        std::size_t votes = 0;
        for (const Pixel p : on_circle_pixels(work, c)) {
            if (claimed.test(p)) continue;
            claimed.set(p);
            ++votes;
        }
        if (static_cast<double>(votes) / circumference(c.radius) >= cfg.T_e)
            found.push_back(circle_record(work, c));
    }
    return found;
}

}  // namespace arcscan
