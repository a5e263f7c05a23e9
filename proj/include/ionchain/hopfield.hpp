#ifndef IONCHAIN_HOPFIELD_HPP
#define IONCHAIN_HOPFIELD_HPP

#include <cstdint>
#include <map>
#include <vector>

#include "ionchain/couplings.hpp"

namespace ionchain {

enum class SweepOrder { Random, Sequential };

struct QuenchResult {
    SpinConfig final_config;
    int sweeps_used = 0;
    bool converged = false; // a full sweep accepted zero flips
};

/// Zero-temperature Metropolis quench: visit spins (fresh random permutation
/// per sweep by default), flip iff the flip strictly lowers the energy, stop
/// at the first sweep with zero accepted flips. Ties (dE = 0) are rejected so
/// fixed points are exactly the single-flip local minima.
QuenchResult quench(const SpinConfig& start, const CouplingMatrix& couplings,
                    std::uint64_t rng_seed, int max_sweeps,
                    SweepOrder order = SweepOrder::Random);

/// Basin-of-attraction statistics for one pattern at fixed flip count r.
struct BasinReport {
    int pattern_index = 0; // caller-supplied label
    int flips_r = 0;
    int trials_m = 0;
    double initial_overlap = 0.0;  // m_i = (N - r) / N
    double final_overlap = 0.0;    // m_f = sum_j m_j n_j / M
    double recovery_probability = 0.0;          // final distance 0
    double recovery_probability_mod_flip = 0.0; // distance 0 or N (global flip)
    std::map<int, int> distance_histogram;      // final Hamming distance -> count
    std::uint64_t master_seed = 0;
};

/// M trials: flip a uniformly random r-subset of `pattern`, quench, record
/// the Hamming distance to the original pattern. Deterministic given
/// master_seed and independent of n_threads: trial t draws its perturbation
/// from stream 2t and its sweep permutations from stream 2t+1 (derive_seed).
/// max_sweeps = 0 selects the default 10 N.
BasinReport basin_statistics(const SpinConfig& pattern, const CouplingMatrix& couplings,
                             int flips_r, int trials_m, std::uint64_t master_seed,
                             int max_sweeps = 0, int n_threads = 1, int pattern_index = 0);

/// One basin report per r in r_grid; point k uses master seed
/// derive_seed(master_seed, k).
std::vector<BasinReport> overlap_curve(const SpinConfig& pattern,
                                       const CouplingMatrix& couplings,
                                       const std::vector<int>& r_grid, int trials_m,
                                       std::uint64_t master_seed, int max_sweeps = 0,
                                       int n_threads = 1, int pattern_index = 0);

/// Exhaustive census of single-flip local minima (oracle; 2^N states).
std::vector<SpinConfig> enumerate_minima(const CouplingMatrix& couplings, int cap = 12);

} // namespace ionchain

#endif
