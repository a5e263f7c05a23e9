// Test-only oracles, independent of the production solver paths they check.
#ifndef IONCHAIN_TESTS_ORACLES_HPP
#define IONCHAIN_TESTS_ORACLES_HPP

#include <Eigen/Core>
#include <cmath>
#include <functional>
#include <vector>

namespace oracles {

/// Repeatedly refined grid search for the minimum of a 1-D function.
inline double grid_minimize_1d(const std::function<double(double)>& f,
                               double lo, double hi, int rounds = 40, int pts = 64) {
    double best = 0.5 * (lo + hi);
    for (int r = 0; r < rounds; ++r) {
        double fbest = std::numeric_limits<double>::infinity();
        double xbest = best;
        for (int i = 0; i <= pts; ++i) {
            const double x = lo + (hi - lo) * i / pts;
            const double v = f(x);
            if (v < fbest) { fbest = v; xbest = x; }
        }
        const double span = (hi - lo) / pts;
        lo = xbest - span;
        hi = xbest + span;
        best = xbest;
    }
    return best;
}

/// 2-D refined grid search; returns the minimizing pair.
inline std::pair<double, double> grid_minimize_2d(
    const std::function<double(double, double)>& f,
    double lo1, double hi1, double lo2, double hi2, int rounds = 30, int pts = 48) {
    double x1 = 0, x2 = 0;
    for (int r = 0; r < rounds; ++r) {
        double fbest = std::numeric_limits<double>::infinity();
        for (int i = 0; i <= pts; ++i) {
            for (int j = 0; j <= pts; ++j) {
                const double a = lo1 + (hi1 - lo1) * i / pts;
                const double b = lo2 + (hi2 - lo2) * j / pts;
                const double v = f(a, b);
                if (v < fbest) { fbest = v; x1 = a; x2 = b; }
            }
        }
        const double s1 = (hi1 - lo1) / pts;
        const double s2 = (hi2 - lo2) / pts;
        lo1 = x1 - s1; hi1 = x1 + s1;
        lo2 = x2 - s2; hi2 = x2 + s2;
    }
    return {x1, x2};
}

} // namespace oracles

#endif
