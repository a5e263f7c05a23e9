#include "ionchain/chain_mechanics.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>
#include <cmath>
#include <thread>

namespace ionchain {

double TrapPotential::length_scale() const {
    return std::pow(k_coulomb * charge * charge / rho, 1.0 / (gamma + 1.0));
}

double TrapPotential::energy_scale() const {
    return rho * std::pow(length_scale(), gamma);
}

double TrapPotential::frequency_scale() const {
    const double l = length_scale();
    return std::sqrt(energy_scale() / (mass * l * l));
}

void TrapPotential::validate() const {
    if (!(rho > 0.0)) throw InvalidParams("TrapPotential: rho must be > 0");
    if (!(gamma > 0.0)) throw InvalidParams("TrapPotential: gamma must be > 0");
    if (!(mass > 0.0)) throw InvalidParams("TrapPotential: mass must be > 0");
    if (charge == 0.0) throw InvalidParams("TrapPotential: charge must be nonzero");
    const double l = length_scale();
    if (!std::isfinite(l) || !(l > 0.0))
        throw InvalidParams("TrapPotential: length scale not finite and positive");
}

TrapPotential calcium_trap(double rho, double gamma) {
    return TrapPotential{rho, gamma, ca40_mass, elementary_charge};
}

double chain_potential(const Eigen::VectorXd& u, double gamma) {
    const int n = static_cast<int>(u.size());
    double e = 0.0;
    for (int i = 0; i < n; ++i) e += std::pow(std::abs(u[i]), gamma);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) e += 1.0 / std::abs(u[j] - u[i]);
    return e;
}

Eigen::VectorXd chain_gradient(const Eigen::VectorXd& u, double gamma) {
    const int n = static_cast<int>(u.size());
    Eigen::VectorXd g(n);
    for (int i = 0; i < n; ++i) {
        const double x = u[i];
        g[i] = (x == 0.0) ? 0.0
                          : gamma * std::pow(std::abs(x), gamma - 1.0) * (x > 0 ? 1.0 : -1.0);
    }
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            const double d = u[j] - u[i];
            const double f = 1.0 / (d * d);
            g[i] += f;
            g[j] -= f;
        }
    }
    return g;
}

namespace {

// Pair (Coulomb) part of the Hessian; exact, translation-free (zero row sums).
Eigen::MatrixXd coulomb_hessian(const Eigen::VectorXd& u) {
    const int n = static_cast<int>(u.size());
    Eigen::MatrixXd h = Eigen::MatrixXd::Zero(n, n);
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            const double d = std::abs(u[j] - u[i]);
            const double c = 2.0 / (d * d * d);
            h(i, i) += c;
            h(j, j) += c;
            h(i, j) -= c;
            h(j, i) -= c;
        }
    }
    return h;
}

// Mirror-symmetric coordinate reduction: the ordered stationary point of the
// chain is mirror symmetric, but along rigid translation it is an energy
// saddle whenever gamma < 1 (the trap curvature gamma(gamma-1)|u|^(gamma-2)
// is negative at every ion while the Coulomb part is translation free).
// Optimizing over the right-half coordinates only removes that direction,
// and the reduced problem is a proper minimum for every exponent.
struct MirrorChain {
    int n = 0;
    int h = 0;    // number of free right-half coordinates
    bool odd = false;

    explicit MirrorChain(int n_ions)
        : n(n_ions), h(n_ions / 2), odd(n_ions % 2 == 1) {}

    int right(int k) const { return odd ? h + 1 + k : h + k; }
    int left(int k) const { return h - 1 - k; }

    Eigen::VectorXd assemble(const Eigen::VectorXd& v) const {
        Eigen::VectorXd u(n);
        if (odd) u[h] = 0.0;
        for (int k = 0; k < h; ++k) {
            u[right(k)] = v[k];
            u[left(k)] = -v[k];
        }
        return u;
    }

    bool feasible(const Eigen::VectorXd& v) const {
        if (!(v[0] > 0.0)) return false;
        for (int k = 0; k + 1 < h; ++k)
            if (!(v[k] < v[k + 1])) return false;
        return true;
    }

    Eigen::VectorXd reduce_gradient(const Eigen::VectorXd& g) const {
        Eigen::VectorXd gr(h);
        for (int k = 0; k < h; ++k) gr[k] = g[right(k)] - g[left(k)];
        return gr;
    }

    // Newton model: exact curvature of U restricted to the reduced
    // coordinates. The pinned center ion (odd n) contributes only through
    // the Coulomb pair terms, so its singular on-site curvature never
    // enters.
    Eigen::MatrixXd reduce_hessian(const Eigen::VectorXd& u, double gamma) const {
        Eigen::MatrixXd full = coulomb_hessian(u);
        for (int k = 0; k < h; ++k) {
            const double t =
                gamma * (gamma - 1.0) * std::pow(std::abs(u[right(k)]), gamma - 2.0);
            full(right(k), right(k)) += t;
            full(left(k), left(k)) += t;
        }
        Eigen::MatrixXd red(h, h);
        for (int k = 0; k < h; ++k)
            for (int l = 0; l < h; ++l)
                red(k, l) = full(right(k), right(l)) - full(right(k), left(l)) -
                            full(left(k), right(l)) + full(left(k), left(l));
        return red;
    }
};

// Half-extent of the equilibrium from the single-scale force balance
// gamma W^(gamma-1) ~ N^2 / (4 W^2).
double extent_scale(int n, double gamma) {
    return std::pow(n * n / (4.0 * gamma), 1.0 / (gamma + 1.0));
}

Eigen::VectorXd newton_minimize(const MirrorChain& mc, Eigen::VectorXd v, double gamma,
                                double tol, int max_iter, double* residual_out) {
    Eigen::VectorXd u = mc.assemble(v);
    Eigen::VectorXd g = chain_gradient(u, gamma);
    double gmax = g.cwiseAbs().maxCoeff();
    double energy = chain_potential(u, gamma);
    double mu = 0.0;

    for (int iter = 0; iter < max_iter && gmax > tol; ++iter) {
        const Eigen::VectorXd gr = mc.reduce_gradient(g);
        const Eigen::MatrixXd hr = mc.reduce_hessian(u, gamma);

        bool moved = false;
        for (int damping = 0; damping < 80 && !moved; ++damping) {
            Eigen::MatrixXd hd = hr;
            if (mu > 0.0) hd.diagonal().array() += mu;
            Eigen::LLT<Eigen::MatrixXd> llt(hd);
            if (llt.info() != Eigen::Success) {
                mu = (mu == 0.0) ? 1e-8 * hr.diagonal().cwiseAbs().maxCoeff() : 10.0 * mu;
                if (!std::isfinite(mu))
                    throw NonConvergence("solve_equilibrium: Hessian damping diverged");
                continue;
            }
            const Eigen::VectorXd step = llt.solve(-gr);

            double alpha = 1.0;
            for (int ls = 0; ls < 60; ++ls, alpha *= 0.5) {
                const Eigen::VectorXd vt = v + alpha * step;
                if (!mc.feasible(vt)) continue;
                const Eigen::VectorXd ut = mc.assemble(vt);
                const double et = chain_potential(ut, gamma);
                const Eigen::VectorXd gt = chain_gradient(ut, gamma);
                const double gtmax = gt.cwiseAbs().maxCoeff();
                if (et < energy - 1e-14 * std::abs(energy) ||
                    (et <= energy + 1e-14 * std::abs(energy) && gtmax < gmax)) {
                    v = vt;
                    u = ut;
                    g = gt;
                    gmax = gtmax;
                    energy = et;
                    moved = true;
                    break;
                }
            }
            if (!moved) {
                mu = (mu == 0.0) ? 1e-8 * hr.diagonal().cwiseAbs().maxCoeff() : 10.0 * mu;
                if (!std::isfinite(mu) || mu > 1e30)
                    throw NonConvergence("solve_equilibrium: line search stalled");
            }
        }
        if (!moved) break;
        mu *= 0.25;
        if (mu < 1e-14) mu = 0.0;
    }

    if (gmax > tol)
        throw NonConvergence("solve_equilibrium: max_iter exceeded, residual " +
                             std::to_string(gmax));
    *residual_out = gmax;
    return v;
}

} // namespace

EquilibriumChain solve_equilibrium(const TrapPotential& trap, int n_ions,
                                   double tol, int max_iter) {
    trap.validate();
    if (n_ions < 1) throw DegenerateInput("solve_equilibrium: n_ions must be >= 1");
    if (!(tol > 0.0)) throw InvalidParams("solve_equilibrium: tol must be > 0");
    if (trap.gamma < 1.0 && n_ions % 2 == 1)
        throw InvalidOddChain("odd ion count with gamma < 1: center ion at the trap cusp");

    const double l = trap.length_scale();
    if (n_ions == 1) return EquilibriumChain{Eigen::VectorXd::Zero(1), l, 0.0};

    const MirrorChain mc(n_ions);

    // Harmonic chain first (benign, nearly quadratic), then rescale its
    // extent to the gamma-dependent scale as the starting point.
    Eigen::VectorXd v0(mc.h);
    const double w2 = extent_scale(n_ions, 2.0);
    for (int k = 0; k < mc.h; ++k)
        v0[k] = w2 * (k + (mc.odd ? 1.0 : 0.5)) / mc.h;

    double residual = 0.0;
    Eigen::VectorXd v = newton_minimize(mc, v0, 2.0, std::min(tol, 1e-9), max_iter, &residual);
    if (trap.gamma != 2.0) {
        v *= extent_scale(n_ions, trap.gamma) / w2;
        v = newton_minimize(mc, v, trap.gamma, tol, max_iter, &residual);
    }
    return EquilibriumChain{mc.assemble(v), l, residual};
}

Eigen::MatrixXd elastic_matrix(const EquilibriumChain& chain, const TrapPotential& trap) {
    // Per-ion trap stiffness is taken as restoring force over displacement,
    // gamma |u|^(gamma-2): identical to the trap curvature for a harmonic
    // trap and positive for every exponent, so the chain spectrum is
    // positive definite across the full gamma range (the raw curvature is
    // negative for gamma < 1 and makes the symmetric chain a translation
    // saddle, which has no stable spectrum at all).
    const int n = chain.size();
    const double gamma = trap.gamma;
    Eigen::MatrixXd kappa = coulomb_hessian(chain.positions);
    for (int i = 0; i < n; ++i) {
        const double x = std::abs(chain.positions[i]);
        if (x < 1e-12) {
            if (gamma == 2.0) kappa(i, i) += 2.0;
            else if (gamma > 2.0) continue;
            else
                throw SingularCurvature("elastic_matrix: ion at x = 0 with gamma < 2");
        } else {
            kappa(i, i) += gamma * std::pow(x, gamma - 2.0);
        }
    }
    return kappa;
}

PhononSpectrum phonon_modes(const EquilibriumChain& chain, const TrapPotential& trap) {
    trap.validate();
    if (chain.size() < 1) throw DegenerateInput("phonon_modes: empty chain");
    if (!(chain.residual <= 1e-6))
        throw InvalidParams("phonon_modes: chain residual too large (not an equilibrium)");

    const Eigen::MatrixXd kappa = elastic_matrix(chain, trap);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(kappa);
    if (es.info() != Eigen::Success)
        throw NonConvergence("phonon_modes: eigensolver failed");

    Eigen::VectorXd w2 = es.eigenvalues(); // ascending
    Eigen::MatrixXd m = es.eigenvectors();

    const double scale = kappa.cwiseAbs().maxCoeff();
    if (w2[0] <= 1e-12 * scale)
        throw IndefiniteHessian("phonon_modes: non-positive mode frequency, omega^2 = " +
                                std::to_string(w2[0]));

    // Sign gauge: entry of ion 1 positive; fall through to the first entry
    // that is not at a node.
    const int n = chain.size();
    for (int c = 0; c < n; ++c) {
        const double colmax = m.col(c).cwiseAbs().maxCoeff();
        for (int r = 0; r < n; ++r) {
            if (std::abs(m(r, c)) > 1e-14 * colmax) {
                if (m(r, c) < 0.0) m.col(c) = -m.col(c);
                break;
            }
        }
    }

    const double omega0 = trap.frequency_scale();
    PhononSpectrum spec;
    spec.frequencies = (w2.array().sqrt() * omega0).matrix();
    spec.modes = m;
    spec.frequency_scale = omega0;
    return spec;
}

std::vector<ModeRatioPoint> mode_ratio_scan(const TrapPotential& base,
                                            const std::vector<double>& gammas,
                                            int n_ions, int n_threads) {
    if (n_ions < 2) throw DegenerateInput("mode_ratio_scan: n_ions must be >= 2");
    for (double g : gammas)
        if (!(g > 0.0 && g <= 3.0))
            throw InvalidParams("mode_ratio_scan: gamma grid must lie in (0, 3]");

    std::vector<ModeRatioPoint> out(gammas.size());
    auto eval = [&](std::size_t i) {
        ModeRatioPoint p{gammas[i], 0.0, false, {}};
        try {
            TrapPotential t = base;
            t.gamma = gammas[i];
            const EquilibriumChain chain = solve_equilibrium(t, n_ions);
            const PhononSpectrum spec = phonon_modes(chain, t);
            p.ratio = spec.frequencies[1] / spec.frequencies[0];
            p.ok = true;
        } catch (const Error& e) {
            p.error = e.what();
        }
        out[i] = p;
    };

    if (n_threads <= 1) {
        for (std::size_t i = 0; i < gammas.size(); ++i) eval(i);
    } else {
        std::vector<std::thread> pool;
        std::size_t next = 0;
        const std::size_t stride = (gammas.size() + n_threads - 1) / n_threads;
        for (int t = 0; t < n_threads && next < gammas.size(); ++t) {
            const std::size_t lo = next;
            const std::size_t hi = std::min(gammas.size(), lo + stride);
            next = hi;
            pool.emplace_back([&, lo, hi] { for (std::size_t i = lo; i < hi; ++i) eval(i); });
        }
        for (auto& th : pool) th.join();
    }
    return out;
}

} // namespace ionchain
