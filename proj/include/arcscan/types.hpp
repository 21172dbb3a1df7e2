/**
 * @file types.hpp
 * @brief Grid and real-plane value types shared by every stage.
 */
#pragma once

#include <cmath>
#include <compare>
#include <cstddef>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace arcscan {

/// Integer grid point. x is the column, y is the row (growing downwards).
struct Pixel {
    int x = 0;
    int y = 0;

    friend constexpr auto operator<=>(const Pixel&, const Pixel&) = default;
};

struct PixelHash {
    std::size_t operator()(const Pixel& p) const noexcept {
        return std::hash<long long>()((static_cast<long long>(p.x) << 32) ^
                                      static_cast<unsigned int>(p.y));
    }
};

/// True when p and q are distinct 8-neighbours.
constexpr bool are_8_neighbors(Pixel p, Pixel q) {
    const int dx = p.x > q.x ? p.x - q.x : q.x - p.x;
    const int dy = p.y > q.y ? p.y - q.y : q.y - p.y;
    return (dx | dy) != 0 && dx <= 1 && dy <= 1;
}

struct RealPoint {
    double x = 0.0;
    double y = 0.0;

    friend constexpr bool operator==(const RealPoint&, const RealPoint&) = default;
};

inline RealPoint to_real(Pixel p) {
    return {static_cast<double>(p.x), static_cast<double>(p.y)};
}

inline double distance(RealPoint a, RealPoint b) {
    return std::hypot(a.x - b.x, a.y - b.y);
}

inline double distance(Pixel a, Pixel b) {
    return distance(to_real(a), to_real(b));
}

struct CircleParams {
    RealPoint center;
    double radius = 0.0;
};

/// Ordered 8-connected pixel sequence. A closed segment wraps from the last
/// pixel back to the first; its pixels are stored without repetition unless
/// it was traced from a junction back onto itself.
struct CurveSegment {
    std::vector<Pixel> pixels;
    bool closed = false;

    std::size_t size() const { return pixels.size(); }
    bool empty() const { return pixels.empty(); }
    Pixel front() const { return pixels.front(); }
    Pixel back() const { return pixels.back(); }

    friend bool operator==(const CurveSegment&, const CurveSegment&) = default;
};

/// Raised when a geometric construction has no unique answer
/// (collinear triples, zero sagitta, coincident points).
class DegenerateGeometry : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// File or format problems while reading/writing images and JSON.
class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace arcscan
