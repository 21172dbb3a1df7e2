/**
 * @file cli.hpp
 * @brief Command-line front end: detect, synth, eval and bench.
 */
#pragma once

#include "arcscan/baselines.hpp"
#include "arcscan/csa.hpp"
#include "arcscan/eval.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace arcscan {

enum class Algorithm { csa, rht, evm };

const char* to_string(Algorithm a);

/// Throws std::invalid_argument for names other than csa, rht, evm.
Algorithm parse_algorithm(const std::string& name);

struct AlgorithmConfigs {
    CsaConfig csa;
    RhtConfig rht;
    EvmConfig evm;
};

struct AlgorithmResult {
    std::vector<ArcRecord> arcs;
    BinaryImage mask{1, 1};  ///< union of the absorbed per-arc pixel sets
};

/// Runs one detector. Baseline masks come from the same thick-pixel
/// absorption as CSA so the metrics are comparable.
AlgorithmResult run_algorithm(Algorithm algo, const BinaryImage& img, const AlgorithmConfigs& cfg);

/// Parallelism cap from ARCSCAN_THREADS; hardware concurrency when unset.
unsigned thread_cap();

/// `args` excludes the program name. Returns the process exit status.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace arcscan
