#ifndef IONCHAIN_CHAIN_MECHANICS_HPP
#define IONCHAIN_CHAIN_MECHANICS_HPP

#include <Eigen/Core>
#include <string>
#include <vector>

#include "ionchain/constants.hpp"
#include "ionchain/errors.hpp"

namespace ionchain {

/// Power-law axial trap V(x) = rho |x|^gamma plus ion species constants.
///
/// Internal unit system: length l = (k_c q^2 / rho)^(1/(gamma+1)),
/// energy eps = rho l^gamma, frequency omega0 = sqrt(eps / (m l^2)).
/// In these units the potential of the chain is
///   U(u) = sum_i |u_i|^gamma + sum_{i<j} 1/|u_i - u_j|.
struct TrapPotential {
    double rho;    // J / m^gamma
    double gamma;  // > 0, dimensionless
    double mass;   // kg
    double charge; // C

    double length_scale() const;    // l, meters
    double energy_scale() const;    // eps, joules
    double frequency_scale() const; // omega0, rad/s
    void validate() const;          // throws InvalidParams
};

/// Ca+ trap with the species constants filled in.
TrapPotential calcium_trap(double rho = 6.6e-20, double gamma = 0.5);

/// Equilibrium ion positions, dimensionless units of the trap length scale.
struct EquilibriumChain {
    Eigen::VectorXd positions; // u = x / l, strictly increasing
    double length_scale;       // l, meters
    double residual;           // max |dU/du| at the solution, dimensionless

    int size() const { return static_cast<int>(positions.size()); }
    Eigen::VectorXd positions_si() const { return positions * length_scale; }
};

/// Axial phonon spectrum: frequencies ascending, orthonormal mode matrix.
/// Column n of `modes` is the amplitude pattern M_{i,n} of mode n.
struct PhononSpectrum {
    Eigen::VectorXd frequencies;  // rad/s, ascending
    Eigen::MatrixXd modes;        // N x N orthonormal
    double frequency_scale;       // omega0, rad/s

    int size() const { return static_cast<int>(frequencies.size()); }
    Eigen::VectorXd dimensionless_frequencies() const {
        return frequencies / frequency_scale;
    }
};

/// Dimensionless potential, gradient and Hessian of the chain.
/// Exposed for oracles and property tests.
double chain_potential(const Eigen::VectorXd& u, double gamma);
Eigen::VectorXd chain_gradient(const Eigen::VectorXd& u, double gamma);

/// Elastic-constant matrix kappa (dimensionless: kappa_SI = omega0^2 kappa):
/// exact Coulomb curvature plus per-ion trap stiffness gamma |u|^(gamma-2)
/// (restoring force over displacement; equals the curvature for a harmonic
/// trap and keeps the spectrum positive definite for every exponent).
/// Throws SingularCurvature if an ion sits at x = 0 with gamma < 2.
Eigen::MatrixXd elastic_matrix(const EquilibriumChain& chain, const TrapPotential& trap);

/// Minimize U(u) by damped Newton over mirror-symmetric coordinates with an
/// ordering-preserving line search; initial guess from the harmonic chain
/// rescaled to the gamma-dependent extent.
EquilibriumChain solve_equilibrium(const TrapPotential& trap, int n_ions,
                                   double tol = 1e-10, int max_iter = 200);

/// Hessian eigendecomposition at the equilibrium. Eigenvector sign gauge:
/// each column scaled so its first ion entry is positive (first entry with
/// magnitude above 1e-14 of the column max decides when ion 1 is at a node).
PhononSpectrum phonon_modes(const EquilibriumChain& chain, const TrapPotential& trap);

struct ModeRatioPoint {
    double gamma;
    double ratio;      // omega_2 / omega_1, valid when ok
    bool ok;
    std::string error; // module error name when !ok
};

/// omega_2/omega_1 over a gamma grid. Per-point failures are reported in the
/// point record; the scan continues. Output ordered by the input grid.
std::vector<ModeRatioPoint> mode_ratio_scan(const TrapPotential& base,
                                            const std::vector<double>& gammas,
                                            int n_ions, int n_threads = 1);

} // namespace ionchain

#endif
