#ifndef IONCHAIN_COUPLINGS_HPP
#define IONCHAIN_COUPLINGS_HPP

#include <Eigen/Core>
#include <optional>
#include <vector>

#include "ionchain/chain_mechanics.hpp"
#include "ionchain/errors.hpp"

namespace ionchain {

/// Length-N Ising configuration, entries exactly +1 or -1.
struct SpinConfig {
    Eigen::VectorXi spins;

    SpinConfig() = default;
    explicit SpinConfig(Eigen::VectorXi s);

    static SpinConfig all_up(int n);
    int size() const { return static_cast<int>(spins.size()); }
    SpinConfig flipped() const; // global flip

    /// Hamming distance to another config of the same length.
    int distance(const SpinConfig& other) const;

    bool operator==(const SpinConfig& other) const { return spins == other.spins; }
};

/// Symmetric coupling matrix with zero diagonal, plus local fields.
struct CouplingMatrix {
    Eigen::MatrixXd j; // energy units, j(i,i) = 0, j = j^T
    Eigen::VectorXd h; // energy units

    int size() const { return static_cast<int>(h.size()); }
};

/// Phonon-mediated couplings J_ij = (F^2/m) sum_n M_in M_jn / omega_n^2
/// over the selected modes (default all), diagonal zeroed, h = 0.
/// mode_subset entries are 1-based mode numbers (mode 1 = lowest frequency).
CouplingMatrix phonon_couplings(const PhononSpectrum& spectrum, double force, double mass,
                                const std::optional<std::vector<int>>& mode_subset = std::nullopt);

/// Hebbian rule J_ij = (1/N) sum_mu xi_i^mu xi_j^mu, i != j, h = 0.
CouplingMatrix hebbian_couplings(const std::vector<SpinConfig>& patterns);

/// Sign pattern of mode `mode_number` (1-based) under the fixed sign gauge.
/// Throws AmbiguousSign when the mode has a node at an ion site.
SpinConfig pattern_from_mode(const PhononSpectrum& spectrum, int mode_number);

/// H = -1/2 sum_ij J_ij S_i S_j + sum_i h_i S_i.
double ising_energy(const SpinConfig& config, const CouplingMatrix& couplings);

} // namespace ionchain

#endif
