/**
 * @file digigeom.hpp
 * @brief Integer-grid geometry: straightness, digital circles, chord angles
 *        and their deviation bound, sagitta radius estimation, circumcircles.
 */
#pragma once

#include "arcscan/types.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace arcscan {

// -----------------------------------------------------------------------------
// Straightness
// -----------------------------------------------------------------------------

/// Determinant |1 1 1; xa xc xb; ya yc yb|, i.e. twice the signed area of
/// triangle (a, c, b). Exact in integers.
std::int64_t triangle_area2(Pixel a, Pixel c, Pixel b);

/// Chebyshev distance max(|dx|, |dy|).
int isothetic_distance(Pixel a, Pixel b);

inline constexpr int kDefaultTauH = 2;

/// Area-deviation straightness test: the largest |triangle_area2(a, c_i, b)|
/// over interior pixels must not exceed tau_h * isothetic_distance(a, b).
/// Requires at least two pixels.
bool is_digitally_straight(std::span<const Pixel> pixels, int tau_h = kDefaultTauH);

// -----------------------------------------------------------------------------
// Digital circles
// -----------------------------------------------------------------------------

/// Midpoint digital circle ordered counter-clockwise (in x-right/y-up terms)
/// starting from the pixel on the positive x axis. Every pixel is the
/// nearest grid point to the real circle along its minor coordinate, and the
/// result is a simple closed 8-connected curve (each pixel has exactly two
/// circle pixels among its 8-neighbours) for every r >= 1.
std::vector<Pixel> midpoint_circle(Pixel center, int r);

/// Counter-clockwise run of midpoint_circle pixels whose polar angle about
/// `center` lies in [start_angle, end_angle]. A span of 2*pi or more yields
/// the whole circle as a closed segment.
CurveSegment digital_arc(Pixel center, int r, double start_angle, double end_angle);

/// Real point on `circle` associated with pixel p by the digitisation: same
/// x when |dx| <= |dy| (the y coordinate was rounded), otherwise same y.
RealPoint corresponding_point(Pixel p, const CircleParams& circle);

// -----------------------------------------------------------------------------
// Chord property
// -----------------------------------------------------------------------------

/// Interior angle acb in (0, pi], via atan2(|cross|, dot).
/// Throws DegenerateGeometry when c coincides with a or b.
double subtended_angle(Pixel a, Pixel c, Pixel b);
double subtended_angle(RealPoint a, RealPoint c, RealPoint b);

/// Upper bound asin(1/|ac|) + asin(1/|cb|) on the circumferential angular
/// deviation at c. Throws std::domain_error when either distance is <= 1,
/// where the bound does not exist.
double chord_deviation_bound(Pixel a, Pixel c, Pixel b);

/// Circumferential angle relative error |phi_gamma - phi_c| / phi_gamma of
/// pixel seg[c_index] against the real circle `truth` (oracle use).
double care(const CurveSegment& seg, std::size_t c_index, const CircleParams& truth);

// -----------------------------------------------------------------------------
// Sagitta property
// -----------------------------------------------------------------------------

struct SagittaEstimate {
    double chord_len = 0.0;    ///< d(a, b)
    double sagitta_len = 0.0;  ///< d(m, foot), m the chord midpoint
    double radius = 0.0;       ///< chord^2 / (8 s) + s / 2
    RealPoint center;
    double err_bound = 0.0;    ///< |1 - s / (2 r)|
};

/// Throws DegenerateGeometry when a == b or the foot lies on line ab.
SagittaEstimate sagitta_estimate(Pixel a, Pixel b, Pixel foot);

// -----------------------------------------------------------------------------
// Circumcircle
// -----------------------------------------------------------------------------

/// Unique circle through three points. Throws DegenerateGeometry when the
/// points are collinear (relative area below 1e-12).
CircleParams circumcircle(RealPoint p1, RealPoint p2, RealPoint p3);

/// Bresenham digital straight line from a to b inclusive.
std::vector<Pixel> bresenham_line(Pixel a, Pixel b);

}  // namespace arcscan
