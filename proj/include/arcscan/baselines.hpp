/**
 * @file baselines.hpp
 * @brief Comparison detectors: Randomized Hough Transform (RHT) and the
 *        Effective Voting Method (EVM).
 */
#pragma once

#include "arcscan/csa.hpp"
#include "arcscan/raster.hpp"

#include <cstdint>
#include <vector>

namespace arcscan {

struct RhtConfig {
    int n_t = 2;                      ///< score that promotes a candidate (2 or 3)
    double T_r = 0.5;                 ///< minimum existing rate of a reported circle
    std::size_t max_steps = 60000;    ///< sampling steps before giving up
    std::size_t min_points = 10;      ///< stop once fewer object pixels remain
    double min_radius = 5.0;
    std::uint64_t rng_seed = 0;
    bool thin_input = true;           ///< run on the skeleton, like CSA

    void validate() const;
};

struct EvmConfig {
    double T_e = 0.4;                 ///< minimum existing rate of a reported circle
    std::size_t sample_count = 200;   ///< |M|; all object pixels when fewer
    double min_pair_distance = 4.0;   ///< pairs (p, q) closer than this are skipped
    double max_pair_distance = 60.0;  ///< ... and farther than this
    double min_radius = 5.0;
    std::uint64_t rng_seed = 0;
    bool thin_input = true;

    void validate() const;
};

/// Object pixels within 1 px of the circle divided by its circumference.
double existing_rate(const BinaryImage& img, const CircleParams& circle);

/// Object pixels within 1 px of the circle, ordered by polar angle.
std::vector<Pixel> on_circle_pixels(const BinaryImage& img, const CircleParams& circle);

std::vector<ArcRecord> rht_detect(const BinaryImage& img, const RhtConfig& cfg = {});

std::vector<ArcRecord> evm_detect(const BinaryImage& img, const EvmConfig& cfg = {});

}  // namespace arcscan
