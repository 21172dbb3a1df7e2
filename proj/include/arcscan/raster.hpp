/**
 * @file raster.hpp
 * @brief Binary raster container, image I/O, thinning and test perturbations.
 */
#pragma once

#include "arcscan/types.hpp"

#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

namespace arcscan {

/// Row-major occupancy grid; true marks an object (ink) pixel.
class BinaryImage {
public:
    BinaryImage(int width, int height);

    int width() const { return width_; }
    int height() const { return height_; }

    bool contains(int x, int y) const {
        return x >= 0 && y >= 0 && x < width_ && y < height_;
    }
    bool contains(Pixel p) const { return contains(p.x, p.y); }

    /// Out-of-range coordinates read as background.
    bool test(int x, int y) const {
        return contains(x, y) && bits_[index(x, y)] != 0;
    }
    bool test(Pixel p) const { return test(p.x, p.y); }

    /// Throws std::out_of_range outside the canvas.
    void set(int x, int y, bool value = true);
    void set(Pixel p, bool value = true) { set(p.x, p.y, value); }

    /// Sets the pixel when it is on the canvas, ignores it otherwise.
    void set_clipped(Pixel p, bool value = true) {
        if (contains(p)) bits_[index(p.x, p.y)] = value ? 1 : 0;
    }

    std::size_t count() const;
    /// Object pixels in row-major order.
    std::vector<Pixel> pixels() const;
    std::span<const std::uint8_t> data() const { return bits_; }

    friend bool operator==(const BinaryImage&, const BinaryImage&) = default;

private:
    std::size_t index(int x, int y) const {
        return static_cast<std::size_t>(y) * static_cast<std::size_t>(width_) +
               static_cast<std::size_t>(x);
    }

    int width_;
    int height_;
    std::vector<std::uint8_t> bits_;
};

/// Number of object pixels among the 8 neighbours of p.
int count_8_neighbors(const BinaryImage& img, Pixel p);

// -----------------------------------------------------------------------------
// I/O
// -----------------------------------------------------------------------------

inline constexpr int kDefaultThreshold = 128;

/// Reads PNG (gray or RGB, luma-converted), PGM (P2/P5) or PBM (P1/P4).
/// Gray pixels strictly darker than `threshold` become object pixels.
BinaryImage load_binary(const std::filesystem::path& path,
                        int threshold = kDefaultThreshold);

/// Binary PBM (P4).
void save_pbm(const BinaryImage& img, const std::filesystem::path& path);
/// 8-bit gray PNG, object pixels black.
void save_png(const BinaryImage& img, const std::filesystem::path& path);
/// Dispatches on the extension (.png, otherwise PBM).
void save_binary(const BinaryImage& img, const std::filesystem::path& path);

// -----------------------------------------------------------------------------
// Preprocessing
// -----------------------------------------------------------------------------

/// Zhang-Suen thinning followed by removal of 4-connected staircase corners,
/// iterated to a joint fixpoint. The result is idempotent under thin().
BinaryImage thin(const BinaryImage& img);

/// Removes object pixels with no object 8-neighbour and fills background
/// pixels whose four 4-neighbours are all object pixels.
BinaryImage despeckle(const BinaryImage& img);

/// Deletes skeleton branches that run from a junction to a free end in at
/// most `max_length` pixels. Isolated curves are never touched.
BinaryImage prune_spurs(const BinaryImage& skeleton, int max_length);

// -----------------------------------------------------------------------------
// Perturbations used by the robustness experiments
// -----------------------------------------------------------------------------

/// Flips exactly round(fraction * width * height) distinct pixels chosen by a
/// seeded uniform sample. Throws std::invalid_argument outside [0, 1].
BinaryImage add_salt_pepper(const BinaryImage& img, double fraction,
                            std::uint64_t seed);

/// Rigid rotation about the image centre into a canvas that holds the rotated
/// bounding box. Quarter turns are exact pixel permutations.
class Rotation {
public:
    Rotation(int width, int height, double degrees);

    int out_width() const { return out_width_; }
    int out_height() const { return out_height_; }

    /// Source coordinates to destination coordinates.
    RealPoint forward(RealPoint p) const;
    /// Destination coordinates to source coordinates.
    RealPoint inverse(RealPoint p) const;

private:
    double cos_;
    double sin_;
    double src_cx_;
    double src_cy_;
    double dst_cx_;
    double dst_cy_;
    int out_width_;
    int out_height_;
};

/// Nearest-neighbour inverse-mapped rotation (see Rotation for geometry).
BinaryImage rotate(const BinaryImage& img, double degrees);

}  // namespace arcscan
