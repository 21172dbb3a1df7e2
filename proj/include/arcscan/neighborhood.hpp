/**
 * @file neighborhood.hpp
 * @brief Fixed neighbour orderings and m-adjacency on binary rasters.
 */
#pragma once

#include "arcscan/raster.hpp"

#include <array>
#include <vector>

namespace arcscan {

/// E, NE, N, NW, W, SW, S, SE with rows growing downwards.
inline constexpr std::array<Pixel, 8> kNeighborOffsets{
    {{1, 0}, {1, -1}, {0, -1}, {-1, -1}, {-1, 0}, {-1, 1}, {0, 1}, {1, 1}}};

/// Mixed (m-) adjacency: every 4-neighbour, plus each diagonal neighbour whose
/// two shared 4-neighbours are both background. On a staircase-free skeleton
/// this equals 8-adjacency away from junctions and removes the redundant
/// diagonal links inside junction clusters.
inline std::vector<Pixel> m_neighbors(const BinaryImage& img, Pixel p) {
    std::vector<Pixel> out;
    out.reserve(4);
    for (const Pixel d : kNeighborOffsets) {
        const Pixel q{p.x + d.x, p.y + d.y};
        if (!img.test(q)) continue;
        const bool diagonal = d.x != 0 && d.y != 0;
        if (diagonal && (img.test(p.x + d.x, p.y) || img.test(p.x, p.y + d.y))) continue;
        out.push_back(q);
    }
    return out;
}

inline int m_degree(const BinaryImage& img, Pixel p) {
    return static_cast<int>(m_neighbors(img, p).size());
}

}  // namespace arcscan
