/**
 * @file digigeom.cpp
 * @brief Digital-geometry primitives behind the chord and sagitta analysis.
 */
#include "arcscan/digigeom.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <numbers>
#include <stdexcept>

namespace arcscan {

std::int64_t triangle_area2(Pixel a, Pixel c, Pixel b) {
    const std::int64_t xa = a.x, ya = a.y, xc = c.x, yc = c.y, xb = b.x, yb = b.y;
    return (xc * yb - xb * yc) - (xa * yb - xb * ya) + (xa * yc - xc * ya);
}

int isothetic_distance(Pixel a, Pixel b) {
    return std::max(std::abs(a.x - b.x), std::abs(a.y - b.y));
}

bool is_digitally_straight(std::span<const Pixel> pixels, int tau_h) {
    if (pixels.size() < 2) throw std::invalid_argument("is_digitally_straight: need >= 2 pixels");
    if (tau_h < 1) throw std::invalid_argument("is_digitally_straight: tau_h must be >= 1");
    const Pixel a = pixels.front();
    const Pixel b = pixels.back();
    const std::int64_t limit = static_cast<std::int64_t>(tau_h) * isothetic_distance(a, b);
    for (std::size_t i = 1; i + 1 < pixels.size(); ++i) {
        if (std::llabs(triangle_area2(a, pixels[i], b)) > limit) return false;
    }
    return true;
}

// =============================================================================
// Digital circles
// =============================================================================

namespace {

/// round(sqrt(n)) for n >= 0, exact. n is never (k + 1/2)^2 for integer
/// input, so there are no ties.
std::int64_t round_sqrt(std::int64_t n) {
    auto y = static_cast<std::int64_t>(std::llround(std::sqrt(static_cast<double>(n))));
    // Enforce (2y - 1)^2 < 4n < (2y + 1)^2.
    while (y > 0 && (2 * y - 1) * (2 * y - 1) > 4 * n) --y;
    while ((2 * y + 1) * (2 * y + 1) < 4 * n) ++y;
    return y;
}

/// Octant pixels (x, y) with 0 <= x <= y, from the axis towards the diagonal.
std::vector<Pixel> first_octant(int r) {
    std::vector<Pixel> octant;
    const std::int64_t r2 = static_cast<std::int64_t>(r) * r;
    for (int x = 0;; ++x) {
        const auto y = static_cast<int>(round_sqrt(r2 - static_cast<std::int64_t>(x) * x));
        if (x < y) {
            octant.push_back({x, y});
            continue;
        }
        // The diagonal pixel is kept only when it bridges (x-1, x+1) and its
        // mirror (x+1, x-1); otherwise it would thicken the curve.
        if (x == y && !octant.empty() && octant.back().y == x + 1) octant.push_back({x, y});
        break;
    }
    return octant;
}

}  // namespace

std::vector<Pixel> midpoint_circle(Pixel center, int r) {
    if (r < 1) throw std::invalid_argument("midpoint_circle: radius must be >= 1");
    const auto octant = first_octant(r);

    // Build the first quadrant (x >= 0, y >= 0 in y-up terms) counter-clockwise
    // from (r, 0) to (0, r): mirrored octant 2 followed by octant 1 reversed.
    std::vector<Pixel> quadrant;
    for (const Pixel p : octant) {
        if (p.x == p.y) continue;  // diagonal pixel added once below
        quadrant.push_back({p.y, p.x});
    }
    if (!octant.empty() && octant.back().x == octant.back().y) quadrant.push_back(octant.back());
    for (auto it = octant.rbegin(); it != octant.rend(); ++it) {
        if (it->x == it->y) continue;
        quadrant.push_back(*it);
    }
    // quadrant now runs (r,0) ... (0,r); the two axis pixels are each present once.

    std::vector<Pixel> ring;
    ring.reserve(quadrant.size() * 4);
    // Quadrant k is the first one rotated by k * 90 degrees: (x, y) -> (-y, x).
    for (int k = 0; k < 4; ++k) {
        for (std::size_t i = 0; i + 1 < quadrant.size(); ++i) {
            Pixel p = quadrant[i];
            for (int t = 0; t < k; ++t) p = {-p.y, p.x};
            ring.push_back(p);
        }
    }
    // Math y-up to raster y-down.
    for (Pixel& p : ring) p = {center.x + p.x, center.y - p.y};
    return ring;
}

CurveSegment digital_arc(Pixel center, int r, double start_angle, double end_angle) {
    constexpr double kTwoPi = 2.0 * std::numbers::pi;
    const double span = end_angle - start_angle;
    if (!(span > 0.0)) throw std::invalid_argument("digital_arc: empty angular span");
    const auto ring = midpoint_circle(center, r);
    if (span >= kTwoPi - 1e-12) return {ring, true};

    constexpr double kEps = 1e-9;
    std::vector<std::pair<double, Pixel>> keyed;
    for (const Pixel p : ring) {
        const double theta = std::atan2(static_cast<double>(center.y - p.y),
                                        static_cast<double>(p.x - center.x));
        double rel = std::fmod(theta - start_angle, kTwoPi);
        if (rel < -kEps) rel += kTwoPi;
        if (rel < 0.0) rel = 0.0;
        if (rel > kTwoPi - kEps) rel = 0.0;
        if (rel <= span + kEps) keyed.emplace_back(rel, p);
    }
    if (keyed.empty()) throw std::invalid_argument("digital_arc: span contains no pixel");
    std::stable_sort(keyed.begin(), keyed.end(),
                     [](const auto& l, const auto& r) { return l.first < r.first; });
    CurveSegment seg;
    seg.pixels.reserve(keyed.size());
    for (const auto& [rel, p] : keyed) seg.pixels.push_back(p);
    return seg;
}

RealPoint corresponding_point(Pixel p, const CircleParams& circle) {
    const double dx = p.x - circle.center.x;
    const double dy = p.y - circle.center.y;
    const double r2 = circle.radius * circle.radius;
    if (std::abs(dx) <= std::abs(dy)) {
        const double h = std::sqrt(std::max(0.0, r2 - dx * dx));
        return {static_cast<double>(p.x), circle.center.y + std::copysign(h, dy)};
    }
    const double h = std::sqrt(std::max(0.0, r2 - dy * dy));
    return {circle.center.x + std::copysign(h, dx), static_cast<double>(p.y)};
}

// =============================================================================
// Chord property
// =============================================================================

double subtended_angle(RealPoint a, RealPoint c, RealPoint b) {
    const double ux = a.x - c.x, uy = a.y - c.y;
    const double vx = b.x - c.x, vy = b.y - c.y;
    if ((ux == 0.0 && uy == 0.0) || (vx == 0.0 && vy == 0.0)) {
        throw DegenerateGeometry("subtended_angle: vertex coincides with a chord endpoint");
    }
    return std::atan2(std::abs(ux * vy - uy * vx), ux * vx + uy * vy);
}

double subtended_angle(Pixel a, Pixel c, Pixel b) {
    return subtended_angle(to_real(a), to_real(c), to_real(b));
}

double chord_deviation_bound(Pixel a, Pixel c, Pixel b) {
    const double ac = distance(a, c);
    const double cb = distance(c, b);
    if (ac <= 1.0 || cb <= 1.0) {
        throw std::domain_error("chord_deviation_bound: pixel within unit distance of an endpoint");
    }
    return std::asin(1.0 / ac) + std::asin(1.0 / cb);
}

double care(const CurveSegment& seg, std::size_t c_index, const CircleParams& truth) {
    if (c_index == 0 || c_index + 1 >= seg.size()) {
        throw std::invalid_argument("care: c_index must be interior");
    }
    const Pixel a = seg.front();
    const Pixel b = seg.back();
    const Pixel c = seg.pixels[c_index];
    const double phi_c = subtended_angle(a, c, b);
    const double phi_gamma = subtended_angle(corresponding_point(a, truth),
                                             corresponding_point(c, truth),
                                             corresponding_point(b, truth));
    return std::abs(phi_gamma - phi_c) / phi_gamma;
}

// =============================================================================
// Sagitta property
// =============================================================================

SagittaEstimate sagitta_estimate(Pixel a, Pixel b, Pixel foot) {
    if (a == b) throw DegenerateGeometry("sagitta_estimate: chord endpoints coincide");
    if (triangle_area2(a, foot, b) == 0) {
        throw DegenerateGeometry("sagitta_estimate: foot is collinear with the chord");
    }
    SagittaEstimate est;
    est.chord_len = distance(a, b);
    const RealPoint m{(a.x + b.x) / 2.0, (a.y + b.y) / 2.0};
    const RealPoint f = to_real(foot);
    est.sagitta_len = distance(m, f);
    const double s = est.sagitta_len;
    est.radius = est.chord_len * est.chord_len / (8.0 * s) + s / 2.0;
    est.center = {f.x + est.radius * (m.x - f.x) / s, f.y + est.radius * (m.y - f.y) / s};
    est.err_bound = std::abs(1.0 - s / (2.0 * est.radius));
    return est;
}

// =============================================================================
// Circumcircle
// =============================================================================

CircleParams circumcircle(RealPoint p1, RealPoint p2, RealPoint p3) {
    // Work relative to p1 for conditioning.
    const double bx = p2.x - p1.x, by = p2.y - p1.y;
    const double cx = p3.x - p1.x, cy = p3.y - p1.y;
    const double d = 2.0 * (bx * cy - by * cx);
    const double scale = std::max({bx * bx + by * by, cx * cx + cy * cy,
                                   (cx - bx) * (cx - bx) + (cy - by) * (cy - by)});
    if (scale == 0.0 || std::abs(d) <= 1e-12 * scale) {
        throw DegenerateGeometry("circumcircle: points are collinear");
    }
    const double b2 = bx * bx + by * by;
    const double c2 = cx * cx + cy * cy;
    const double ux = (cy * b2 - by * c2) / d;
    const double uy = (bx * c2 - cx * b2) / d;
    return {{p1.x + ux, p1.y + uy}, std::hypot(ux, uy)};
}

std::vector<Pixel> bresenham_line(Pixel a, Pixel b) {
    std::vector<Pixel> out;
    const int dx = std::abs(b.x - a.x);
    const int dy = -std::abs(b.y - a.y);
    const int sx = a.x < b.x ? 1 : -1;
    const int sy = a.y < b.y ? 1 : -1;
    int err = dx + dy;
    Pixel p = a;
    while (true) {
        out.push_back(p);
        if (p == b) break;
        const int e2 = 2 * err;
        if (e2 >= dy) {
            err += dy;
            p.x += sx;
        }
        if (e2 <= dx) {
            err += dx;
            p.y += sy;
        }
    }
    return out;
}

}  // namespace arcscan
