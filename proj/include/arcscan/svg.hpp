/**
 * @file svg.hpp
 * @brief SVG overlay of detected arcs on the input raster.
 */
#pragma once

#include "arcscan/csa.hpp"
#include "arcscan/raster.hpp"

#include <filesystem>
#include <span>
#include <string>

namespace arcscan {

/// Object pixels in gray, each arc stroked in its own colour along the side
/// traversed by its pixels, centres marked with a cross.
std::string render_overlay(const BinaryImage& img, std::span<const ArcRecord> arcs);

void save_overlay(const BinaryImage& img, std::span<const ArcRecord> arcs,
                  const std::filesystem::path& path);

}  // namespace arcscan
