#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "ionchain/chain_mechanics.hpp"
#include "oracles.hpp"

using namespace ionchain;

namespace {

TrapPotential unit_trap(double gamma) {
    // rho chosen so the SI scales are benign; dimensionless results do not
    // depend on it.
    TrapPotential t = calcium_trap(6.6e-20, gamma);
    return t;
}

} // namespace

TEST_CASE("single ion sits at the trap center") {
    const auto chain = solve_equilibrium(unit_trap(2.0), 1);
    CHECK(chain.size() == 1);
    CHECK(chain.positions[0] == 0.0);
    CHECK(chain.residual == 0.0);
}

TEST_CASE("two harmonic ions: hand-solved stationarity and grid oracle") {
    const auto chain = solve_equilibrium(unit_trap(2.0), 2);
    REQUIRE(chain.size() == 2);

    // Internal units (trap term u^2): 2u = 1/(2u)^2 => u = (1/8)^(1/3) = 1/2.
    CHECK(chain.positions[1] == doctest::Approx(0.5).epsilon(1e-9));
    CHECK(chain.positions[0] == doctest::Approx(-0.5).epsilon(1e-9));

    // Same solution in the (1/2)u^2 convention: u' = u 2^(1/3) = (1/4)^(1/3).
    CHECK(chain.positions[1] * std::cbrt(2.0) ==
          doctest::Approx(std::cbrt(0.25)).epsilon(1e-9));
    CHECK(chain.positions[1] * std::cbrt(2.0) == doctest::Approx(0.62996).epsilon(1e-4));

    // Grid-minimization oracle over the symmetric ansatz (-u, u).
    const double u_oracle = oracles::grid_minimize_1d(
        [](double u) { return 2.0 * u * u + 1.0 / (2.0 * u); }, 0.05, 3.0);
    CHECK(chain.positions[1] == doctest::Approx(u_oracle).epsilon(1e-6));
}

TEST_CASE("three harmonic ions: analytic positions") {
    const auto chain = solve_equilibrium(unit_trap(2.0), 3);
    REQUIRE(chain.size() == 3);

    // Outer ion: 2u = 1/u^2 + 1/(2u)^2 => u = (5/8)^(1/3).
    const double u = std::cbrt(5.0 / 8.0);
    CHECK(chain.positions[0] == doctest::Approx(-u).epsilon(1e-9));
    CHECK(std::abs(chain.positions[1]) < 1e-9);
    CHECK(chain.positions[2] == doctest::Approx(u).epsilon(1e-9));

    // (1/2)u^2 convention: (5/4)^(1/3) = 1.0772.
    CHECK(chain.positions[2] * std::cbrt(2.0) == doctest::Approx(1.0772).epsilon(1e-4));
}

TEST_CASE("four-ion equilibria match the brute-force grid oracle") {
    for (double gamma : {2.0, 0.5, 1.4}) {
        CAPTURE(gamma);
        const auto chain = solve_equilibrium(unit_trap(gamma), 4);
        // Symmetric ansatz (-b, -a, a, b).
        auto energy = [gamma](double a, double b) {
            Eigen::VectorXd u(4);
            u << -b, -a, a, b;
            return chain_potential(u, gamma);
        };
        const auto [a, b] = oracles::grid_minimize_2d(energy, 0.01, 6.0, 0.02, 12.0);
        CHECK(chain.positions[2] == doctest::Approx(a).epsilon(1e-5));
        CHECK(chain.positions[3] == doctest::Approx(b).epsilon(1e-5));
    }
}

TEST_CASE("equilibrium invariants: residual, ordering, antisymmetry") {
    const double tol = 1e-10;
    for (int n : {2, 8, 20}) {
        for (double gamma : {0.5, 1.0, 2.0, 3.0}) {
            CAPTURE(n);
            CAPTURE(gamma);
            const auto chain = solve_equilibrium(unit_trap(gamma), n, tol);
            CHECK(chain.residual <= tol);
            CHECK(chain_gradient(chain.positions, gamma).cwiseAbs().maxCoeff() <= tol);
            for (int i = 0; i + 1 < n; ++i)
                CHECK(chain.positions[i] < chain.positions[i + 1]);
            for (int i = 0; i < n; ++i)
                CHECK(std::abs(chain.positions[i] + chain.positions[n - 1 - i]) <= 10 * tol);
        }
    }
}

TEST_CASE("error paths") {
    CHECK_THROWS_AS(solve_equilibrium(unit_trap(2.0), 0), DegenerateInput);
    CHECK_THROWS_AS(solve_equilibrium(unit_trap(0.5), 3), InvalidOddChain);
    CHECK_THROWS_AS(solve_equilibrium(unit_trap(0.5), 1), InvalidOddChain);
    CHECK_THROWS_AS(solve_equilibrium(unit_trap(2.0), 12, 1e-10, 1), NonConvergence);

    TrapPotential bad = unit_trap(2.0);
    bad.rho = -1.0;
    CHECK_THROWS_AS(solve_equilibrium(bad, 2), InvalidParams);

    // Center ion at the cusp: equilibrium solves, curvature is singular.
    const auto chain = solve_equilibrium(unit_trap(1.5), 3);
    CHECK_THROWS_AS(phonon_modes(chain, unit_trap(1.5)), SingularCurvature);

    // Unconverged chain rejected by phonon_modes.
    EquilibriumChain fake;
    fake.positions = Eigen::VectorXd::LinSpaced(4, -2.0, 2.0);
    fake.length_scale = 1.0;
    fake.residual = 1.0;
    CHECK_THROWS_AS(phonon_modes(fake, unit_trap(2.0)), InvalidParams);
}

TEST_CASE("harmonic breathing mode: omega2/omega1 = sqrt(3) at any N") {
    for (int n : {2, 8, 20}) {
        CAPTURE(n);
        const auto trap = unit_trap(2.0);
        const auto chain = solve_equilibrium(trap, n);
        const auto spec = phonon_modes(chain, trap);
        CHECK(spec.frequencies[1] / spec.frequencies[0] ==
              doctest::Approx(std::sqrt(3.0)).epsilon(1e-9));
        // Lowest mode is the uniform center-of-mass vector.
        for (int i = 0; i < n; ++i)
            CHECK(spec.modes(i, 0) == doctest::Approx(1.0 / std::sqrt(n)).epsilon(1e-9));
        // Harmonic CM frequency equals the bare trap frequency sqrt(2) omega0
        // (trap term u^2 has curvature 2).
        CHECK(spec.dimensionless_frequencies()[0] ==
              doctest::Approx(std::sqrt(2.0)).epsilon(1e-9));
    }
}

TEST_CASE("mode matrix orthonormality and kappa reconstruction") {
    for (double gamma : {0.5, 2.0, 2.7}) {
        CAPTURE(gamma);
        const auto trap = unit_trap(gamma);
        const auto chain = solve_equilibrium(trap, 12);
        const auto spec = phonon_modes(chain, trap);
        const int n = spec.size();

        const Eigen::MatrixXd gram = spec.modes.transpose() * spec.modes;
        CHECK((gram - Eigen::MatrixXd::Identity(n, n)).cwiseAbs().maxCoeff() <= 1e-10);

        const Eigen::MatrixXd kappa = elastic_matrix(chain, trap);
        const Eigen::VectorXd w2 = spec.dimensionless_frequencies().array().square();
        const Eigen::MatrixXd recon =
            spec.modes * w2.asDiagonal() * spec.modes.transpose();
        CHECK((kappa - recon).cwiseAbs().maxCoeff() / kappa.cwiseAbs().maxCoeff() <= 1e-8);

        // M^T kappa M diagonal within the stated invariant.
        const Eigen::MatrixXd diag = spec.modes.transpose() * kappa * spec.modes;
        Eigen::MatrixXd off = diag;
        off.diagonal().setZero();
        CHECK(off.cwiseAbs().maxCoeff() / kappa.cwiseAbs().maxCoeff() <= 1e-8);

        for (int c = 0; c < n; ++c) CHECK(spec.frequencies[c] > 0.0);
        for (int c = 0; c + 1 < n; ++c)
            CHECK(spec.frequencies[c] <= spec.frequencies[c + 1]);
    }
}

TEST_CASE("scale covariance: rho rescaling leaves dimensionless results fixed") {
    const double gamma = 0.5;
    TrapPotential t1 = unit_trap(gamma);
    TrapPotential t2 = t1;
    t2.rho *= 37.0;

    CHECK(t2.length_scale() / t1.length_scale() ==
          doctest::Approx(std::pow(37.0, -1.0 / (gamma + 1.0))).epsilon(1e-12));

    const auto c1 = solve_equilibrium(t1, 10);
    const auto c2 = solve_equilibrium(t2, 10);
    CHECK((c1.positions - c2.positions).cwiseAbs().maxCoeff() <= 1e-9);

    const auto s1 = phonon_modes(c1, t1);
    const auto s2 = phonon_modes(c2, t2);
    const double r1 = s1.frequencies[1] / s1.frequencies[0];
    const double r2 = s2.frequencies[1] / s2.frequencies[0];
    CHECK(r1 == doctest::Approx(r2).epsilon(1e-9));
}

TEST_CASE("sub-harmonic trap: near-degenerate lowest modes for Ca+ at gamma = 0.5") {
    const auto trap = calcium_trap(6.6e-20, 0.5);
    const auto chain = solve_equilibrium(trap, 20);
    const auto spec = phonon_modes(chain, trap);
    const double ratio = spec.frequencies[1] / spec.frequencies[0];
    CHECK(ratio >= 1.0);
    CHECK(ratio <= 1.2);
}

TEST_CASE("mode_ratio_scan: harmonic point, ratio ordering, linear trap") {
    const auto base = calcium_trap();
    const auto pts = mode_ratio_scan(base, {0.5, 1.0, 2.0}, 20);
    REQUIRE(pts.size() == 3);

    CHECK(pts[0].ok);
    CHECK(pts[0].ratio >= 1.0);
    CHECK(pts[2].ok);
    CHECK(pts[2].ratio == doctest::Approx(std::sqrt(3.0)).epsilon(1e-6));

    // Linear trap: finite ratio, still in the moderately split regime.
    CHECK(pts[1].ok);
    CHECK(pts[1].ratio > 1.0);
    CHECK(pts[1].ratio < 1.25);

    CHECK_THROWS_AS(mode_ratio_scan(base, {3.5}, 20), InvalidParams);
    CHECK_THROWS_AS(mode_ratio_scan(base, {2.0}, 1), DegenerateInput);
}

TEST_CASE("scan is N- and rho-insensitive in the sub-harmonic regime") {
    const auto base = calcium_trap();
    const auto p20 = mode_ratio_scan(base, {0.5}, 20);
    const auto p40 = mode_ratio_scan(base, {0.5}, 40);
    REQUIRE(p20[0].ok);
    REQUIRE(p40[0].ok);
    CHECK(std::abs(p20[0].ratio - p40[0].ratio) / p20[0].ratio < 0.01);

    TrapPotential dense = base;
    dense.rho *= 10.0;
    const auto p20b = mode_ratio_scan(dense, {0.5}, 20);
    REQUIRE(p20b[0].ok);
    CHECK(std::abs(p20[0].ratio - p20b[0].ratio) / p20[0].ratio < 1e-9);
}

TEST_CASE("scan results do not depend on thread count") {
    const auto base = calcium_trap();
    std::vector<double> grid;
    for (double g = 0.4; g <= 2.4; g += 0.4) grid.push_back(g);
    const auto serial = mode_ratio_scan(base, grid, 8, 1);
    const auto parallel = mode_ratio_scan(base, grid, 8, 4);
    REQUIRE(serial.size() == parallel.size());
    for (std::size_t i = 0; i < serial.size(); ++i) {
        CHECK(serial[i].ok == parallel[i].ok);
        if (serial[i].ok) CHECK(serial[i].ratio == parallel[i].ratio);
    }
}
