#include "ionchain/couplings.hpp"

#include <cmath>

namespace ionchain {

SpinConfig::SpinConfig(Eigen::VectorXi s) : spins(std::move(s)) {
    for (int i = 0; i < spins.size(); ++i)
        if (spins[i] != 1 && spins[i] != -1)
            throw InvalidParams("SpinConfig: entries must be +1 or -1");
}

SpinConfig SpinConfig::all_up(int n) {
    SpinConfig c;
    c.spins = Eigen::VectorXi::Ones(n);
    return c;
}

SpinConfig SpinConfig::flipped() const {
    SpinConfig c;
    c.spins = -spins;
    return c;
}

int SpinConfig::distance(const SpinConfig& other) const {
    if (other.size() != size()) throw LengthMismatch("SpinConfig::distance: length mismatch");
    int d = 0;
    for (int i = 0; i < size(); ++i) d += (spins[i] != other.spins[i]);
    return d;
}

CouplingMatrix phonon_couplings(const PhononSpectrum& spectrum, double force, double mass,
                                const std::optional<std::vector<int>>& mode_subset) {
    const int n = spectrum.size();
    if (force == 0.0) throw InvalidParams("phonon_couplings: force must be nonzero");
    if (!(mass > 0.0)) throw InvalidParams("phonon_couplings: mass must be > 0");

    std::vector<int> modes;
    if (mode_subset) {
        modes = *mode_subset;
        for (int m : modes)
            if (m < 1 || m > n)
                throw InvalidParams("phonon_couplings: mode_subset entry out of range");
    } else {
        modes.resize(n);
        for (int i = 0; i < n; ++i) modes[i] = i + 1;
    }

    const double pref = force * force / mass;
    Eigen::MatrixXd j = Eigen::MatrixXd::Zero(n, n);
    for (int m : modes) {
        const double w = spectrum.frequencies[m - 1];
        if (!(w > 0.0)) throw ZeroFrequencyMode("phonon_couplings: mode " +
                                                std::to_string(m) + " has omega <= 0");
        j.noalias() += (pref / (w * w)) * spectrum.modes.col(m - 1) *
                       spectrum.modes.col(m - 1).transpose();
    }
    j.diagonal().setZero();
    j = 0.5 * (j + j.transpose()).eval(); // exact symmetry
    return CouplingMatrix{std::move(j), Eigen::VectorXd::Zero(n)};
}

CouplingMatrix hebbian_couplings(const std::vector<SpinConfig>& patterns) {
    if (patterns.empty()) throw InvalidParams("hebbian_couplings: need at least one pattern");
    const int n = patterns.front().size();
    if (n < 1) throw InvalidParams("hebbian_couplings: empty pattern");
    for (const auto& p : patterns)
        if (p.size() != n) throw LengthMismatch("hebbian_couplings: pattern length mismatch");

    Eigen::MatrixXd j = Eigen::MatrixXd::Zero(n, n);
    for (const auto& p : patterns) {
        const Eigen::VectorXd xi = p.spins.cast<double>();
        j.noalias() += xi * xi.transpose();
    }
    j /= static_cast<double>(n);
    j.diagonal().setZero();
    return CouplingMatrix{std::move(j), Eigen::VectorXd::Zero(n)};
}

SpinConfig pattern_from_mode(const PhononSpectrum& spectrum, int mode_number) {
    const int n = spectrum.size();
    if (mode_number < 1 || mode_number > n)
        throw InvalidParams("pattern_from_mode: mode_number out of range");
    const auto col = spectrum.modes.col(mode_number - 1);
    SpinConfig c;
    c.spins.resize(n);
    for (int i = 0; i < n; ++i) {
        if (std::abs(col[i]) < 1e-12)
            throw AmbiguousSign("pattern_from_mode: mode " + std::to_string(mode_number) +
                                " has a node at ion " + std::to_string(i + 1));
        c.spins[i] = col[i] > 0.0 ? 1 : -1;
    }
    return c;
}

double ising_energy(const SpinConfig& config, const CouplingMatrix& couplings) {
    if (config.size() != couplings.size())
        throw LengthMismatch("ising_energy: dimension mismatch");
    const Eigen::VectorXd s = config.spins.cast<double>();
    return -0.5 * s.dot(couplings.j * s) + couplings.h.dot(s);
}

} // namespace ionchain
