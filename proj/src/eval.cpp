/**
 * @file eval.cpp
 * @brief Scene synthesis, metrics and primitive matching.
 */
#include "arcscan/eval.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>
#include <string>
#include <tuple>

namespace arcscan {

std::vector<Primitive> GroundTruth::circular_primitives() const {
    std::vector<Primitive> out;
    std::copy_if(primitives.begin(), primitives.end(), std::back_inserter(out),
                 [](const Primitive& p) { return p.circular(); });
    return out;
}

// =============================================================================
// Rendering
// =============================================================================

namespace {

void stamp(BinaryImage& img, Pixel p, int thickness, const char* what) {
    const int half = (thickness - 1) / 2;
    for (int dy = -half; dy <= half; ++dy) {
        for (int dx = -half; dx <= half; ++dx) {
            const Pixel q{p.x + dx, p.y + dy};
            if (!img.contains(q)) {
                throw std::invalid_argument(std::string("synth_scene: ") + what +
                                            " leaves the canvas at (" + std::to_string(q.x) +
                                            "," + std::to_string(q.y) + ")");
            }
            img.set(q);
        }
    }
}

}  // namespace

SynthScene synth_scene(const SceneSpec& spec) {
    if (spec.thickness < 1 || spec.thickness % 2 == 0)
        throw std::invalid_argument("synth_scene: thickness must be a positive odd number");
    SynthScene out{BinaryImage(spec.width, spec.height),
                   {BinaryImage(spec.width, spec.height), BinaryImage(spec.width, spec.height), {}}};
    for (const auto& c : spec.circles) {
        if (c.radius < 1) throw std::invalid_argument("synth_scene: radius must be >= 1");
        const CurveSegment arc = c.full() ? CurveSegment{midpoint_circle(c.center, c.radius), true}
                                          : digital_arc(c.center, c.radius, c.start, c.end);
        for (const Pixel p : arc.pixels) {
            stamp(out.truth.arc_mask, p, spec.thickness, "circle");
            stamp(out.truth.all_curves_mask, p, spec.thickness, "circle");
        }
        Primitive prim;
        prim.kind = c.full() ? PrimitiveKind::circle : PrimitiveKind::arc;
        prim.center = to_real(c.center);
        prim.radius = c.radius;
        prim.start = c.start;
        prim.end = c.end;
        out.truth.primitives.push_back(prim);
    }
    for (const auto& l : spec.lines) {
        for (const Pixel p : bresenham_line(l.a, l.b)) stamp(out.truth.all_curves_mask, p, spec.thickness, "line");
        Primitive prim;
        prim.kind = PrimitiveKind::line;
        prim.a = to_real(l.a);
        prim.b = to_real(l.b);
        out.truth.primitives.push_back(prim);
    }
    out.image = out.truth.all_curves_mask;
    return out;
}

namespace {

double point_segment_distance(RealPoint p, RealPoint a, RealPoint b) {
    const double vx = b.x - a.x, vy = b.y - a.y;
    const double len2 = vx * vx + vy * vy;
    double t = len2 > 0 ? ((p.x - a.x) * vx + (p.y - a.y) * vy) / len2 : 0.0;
    t = std::clamp(t, 0.0, 1.0);
    return distance(p, {a.x + t * vx, a.y + t * vy});
}

double point_line_distance(RealPoint p, RealPoint a, RealPoint b) {
    const double vx = b.x - a.x, vy = b.y - a.y;
    return std::abs(vx * (p.y - a.y) - vy * (p.x - a.x)) / std::hypot(vx, vy);
}

}  // namespace

SceneSpec random_scene(std::uint64_t seed, const RandomSceneOptions& opts) {
    std::mt19937_64 rng(seed);
    auto uniform_int = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
    auto uniform_real = [&](double lo, double hi) {
        return std::uniform_real_distribution<double>(lo, hi)(rng);
    };
    constexpr double kPi = std::numbers::pi;
    const int margin = opts.thickness + 2;
    const int gap = 2 * opts.thickness + 6;  // clearance between circles

    SceneSpec scene;
    scene.width = opts.width;
    scene.height = opts.height;
    scene.thickness = opts.thickness;

    const int n_circ = uniform_int(opts.min_circular, opts.max_circular);
    for (int attempt = 0; attempt < 10000 && static_cast<int>(scene.circles.size()) < n_circ;
         ++attempt) {
        const int r = uniform_int(opts.min_radius, opts.max_radius);
        const Pixel c{uniform_int(r + margin, opts.width - 1 - r - margin),
                      uniform_int(r + margin, opts.height - 1 - r - margin)};
        const bool clear = std::all_of(scene.circles.begin(), scene.circles.end(), [&](const CircleSpec& o) {
            return distance(c, o.center) > r + o.radius + gap;
        });
        if (!clear) continue;
        CircleSpec spec{c, r, 0.0, 2.0 * kPi};
        if (uniform_real(0.0, 1.0) >= opts.full_circle_fraction) {
            spec.start = uniform_real(0.0, 2.0 * kPi);
            spec.end = spec.start + uniform_real(kPi / 2.0, 1.5 * kPi);
        }
        scene.circles.push_back(spec);
    }

    const int n_lines = uniform_int(opts.min_lines, opts.max_lines);
    for (int attempt = 0; attempt < 10000 && static_cast<int>(scene.lines.size()) < n_lines;
         ++attempt) {
        const Pixel a{uniform_int(margin, opts.width - 1 - margin),
                      uniform_int(margin, opts.height - 1 - margin)};
        const Pixel b{uniform_int(margin, opts.width - 1 - margin),
                      uniform_int(margin, opts.height - 1 - margin)};
        const double len = distance(a, b);
        if (len < 80.0 || len > 500.0) continue;
        // Reject grazing contacts: the line must either stay clear of a
        // circle or cut through it well inside its rim. Endpoints must not
        // sit on a rim either.
        const bool ok = std::all_of(scene.circles.begin(), scene.circles.end(), [&](const CircleSpec& o) {
            const RealPoint oc = to_real(o.center);
            const double seg_d = point_segment_distance(oc, to_real(a), to_real(b));
            if (seg_d > o.radius + gap) return true;
            const double line_d = point_line_distance(oc, to_real(a), to_real(b));
            if (line_d > 0.7 * o.radius) return false;
            return std::abs(distance(to_real(a), oc) - o.radius) > gap &&
                   std::abs(distance(to_real(b), oc) - o.radius) > gap;
        });
        if (!ok) continue;
        scene.lines.push_back({a, b});
    }
    return scene;
}

GroundTruth rotate_truth(const GroundTruth& truth, double degrees) {
    const Rotation rot(truth.arc_mask.width(), truth.arc_mask.height(), degrees);
    GroundTruth out{rotate(truth.arc_mask, degrees), rotate(truth.all_curves_mask, degrees), {}};
    // Clockwise on screen is a negative turn in y-up polar angles.
    const double turn = degrees * std::numbers::pi / 180.0;
    for (Primitive p : truth.primitives) {
        p.center = rot.forward(p.center);
        p.a = rot.forward(p.a);
        p.b = rot.forward(p.b);
        p.start -= turn;
        p.end -= turn;
        out.primitives.push_back(p);
    }
    return out;
}

// =============================================================================
// Metrics
// =============================================================================

bool MetricsReport::e1_infinite() const { return std::isinf(E1); }

MetricsReport metrics_from_counts(std::size_t N_c, std::size_t N_g, std::size_t N_p,
                                  std::size_t N_fa, std::size_t N_fr) {
    MetricsReport m{N_c, N_g, N_p, N_fa, N_fr};
    if (N_g > 0) {
        m.E1 = 100.0 * static_cast<double>(N_fa) / static_cast<double>(N_g);
        m.E2 = 100.0 * static_cast<double>(N_fr) / static_cast<double>(N_g);
    } else {
        m.E1 = N_fa > 0 ? std::numeric_limits<double>::infinity() : 0.0;
        m.E2 = 0.0;
    }
    if (N_c > 0) {
        m.AD = (static_cast<double>(N_c) - static_cast<double>(N_fa + N_fr)) / static_cast<double>(N_c);
    } else {
        m.AD = N_fa + N_fr == 0 ? 1.0 : 0.0;
    }
    return m;
}

MetricsReport compute_metrics(const BinaryImage& detected_mask, const GroundTruth& truth) {
    const auto& g = truth.arc_mask;
    const auto& all = truth.all_curves_mask;
    if (detected_mask.width() != g.width() || detected_mask.height() != g.height() ||
        all.width() != g.width() || all.height() != g.height()) {
        throw std::invalid_argument("compute_metrics: mask dimensions differ");
    }
    const auto det = detected_mask.data();
    const auto arc = g.data();
    std::size_t n_p = 0, n_fa = 0, n_fr = 0;
    for (std::size_t i = 0; i < det.size(); ++i) {
        n_p += det[i];
        n_fa += (det[i] != 0 && arc[i] == 0) ? 1 : 0;
        n_fr += (det[i] == 0 && arc[i] != 0) ? 1 : 0;
    }
    return metrics_from_counts(all.count(), g.count(), n_p, n_fa, n_fr);
}

// =============================================================================
// Matching
// =============================================================================

MatchResult match_primitives(std::span<const ArcRecord> detected, std::span<const Primitive> truth,
                             const MatchTolerance& tol) {
    if (!(tol.center > 0.0) || !(tol.radius > 0.0))
        throw std::invalid_argument("match_primitives: tolerances must be positive");
    struct Candidate {
        double center_err;
        double radius_err;
        std::size_t det;
        std::size_t gt;
    };
    std::vector<Candidate> cands;
    std::size_t n_truth = 0;
    for (std::size_t j = 0; j < truth.size(); ++j) {
        if (!truth[j].circular()) continue;
        ++n_truth;
        for (std::size_t i = 0; i < detected.size(); ++i) {
            const double ce = distance(detected[i].center, truth[j].center);
            const double re = std::abs(detected[i].radius - truth[j].radius);
            const double r_tol = std::max(tol.radius, tol.radius_rel * truth[j].radius);
            if (ce <= tol.center && re <= r_tol) cands.push_back({ce, re, i, j});
        }
    }
    std::sort(cands.begin(), cands.end(), [](const Candidate& l, const Candidate& r) {
        return std::tie(l.center_err, l.radius_err, l.det, l.gt) <
               std::tie(r.center_err, r.radius_err, r.det, r.gt);
    });
    MatchResult out;
    std::vector<bool> det_used(detected.size(), false);
    std::vector<bool> gt_used(truth.size(), false);
    for (const auto& c : cands) {
        if (det_used[c.det] || gt_used[c.gt]) continue;
        det_used[c.det] = gt_used[c.gt] = true;
        out.pairs.emplace_back(c.det, c.gt);
    }
    out.matched = out.pairs.size();
    out.missed = n_truth - out.matched;
    out.spurious = detected.size() - out.matched;
    return out;
}

MatchResult match_primitives(std::span<const ArcRecord> detected, const GroundTruth& truth,
                             double tol_center, double tol_radius) {
    return match_primitives(detected, truth.primitives, MatchTolerance{tol_center, tol_radius, 0.0});
}

}  // namespace arcscan
