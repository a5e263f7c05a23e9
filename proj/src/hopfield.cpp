#include "ionchain/hopfield.hpp"

#include <thread>

#include "ionchain/rng.hpp"

namespace ionchain {

namespace {

// dE of flipping spin k given the local fields f = J s: dE = 2 s_k (f_k - h_k).
// Flips are accepted only on strict decrease.
struct QuenchState {
    Eigen::VectorXd s; // +-1 as doubles
    Eigen::VectorXd f; // J s, maintained incrementally
};

} // namespace

QuenchResult quench(const SpinConfig& start, const CouplingMatrix& couplings,
                    std::uint64_t rng_seed, int max_sweeps, SweepOrder order) {
    const int n = start.size();
    if (n != couplings.size()) throw LengthMismatch("quench: dimension mismatch");
    if (max_sweeps < 1) throw InvalidParams("quench: max_sweeps must be >= 1");

    QuenchState st;
    st.s = start.spins.cast<double>();
    st.f = couplings.j * st.s;

    Rng rng(rng_seed);
    std::vector<int> visit(n);
    for (int i = 0; i < n; ++i) visit[i] = i;

    QuenchResult res;
    for (int sweep = 0; sweep < max_sweeps; ++sweep) {
        if (order == SweepOrder::Random) rng.shuffle(visit);
        int accepted = 0;
        for (int k : visit) {
            const double de = 2.0 * st.s[k] * (st.f[k] - couplings.h[k]);
            if (de < 0.0) {
                st.f -= 2.0 * st.s[k] * couplings.j.col(k);
                st.s[k] = -st.s[k];
                ++accepted;
            }
        }
        res.sweeps_used = sweep + 1;
        if (accepted == 0) {
            res.converged = true;
            break;
        }
    }

    res.final_config.spins.resize(n);
    for (int i = 0; i < n; ++i) res.final_config.spins[i] = st.s[i] > 0 ? 1 : -1;
    return res;
}

BasinReport basin_statistics(const SpinConfig& pattern, const CouplingMatrix& couplings,
                             int flips_r, int trials_m, std::uint64_t master_seed,
                             int max_sweeps, int n_threads, int pattern_index) {
    const int n = pattern.size();
    if (n != couplings.size()) throw LengthMismatch("basin_statistics: dimension mismatch");
    if (flips_r < 0 || flips_r > n) throw InvalidParams("basin_statistics: flips_r out of range");
    if (trials_m < 1) throw InvalidParams("basin_statistics: trials_m must be >= 1");
    if (max_sweeps <= 0) max_sweeps = 10 * n;

    std::vector<int> distances(trials_m);
    auto run_trial = [&](int t) {
        Rng perturb(derive_seed(master_seed, 2 * static_cast<std::uint64_t>(t)));
        SpinConfig start = pattern;
        for (int i : perturb.subset(n, flips_r)) start.spins[i] = -start.spins[i];
        const std::uint64_t qseed = derive_seed(master_seed, 2 * static_cast<std::uint64_t>(t) + 1);
        const QuenchResult q = quench(start, couplings, qseed, max_sweeps);
        distances[t] = q.final_config.distance(pattern);
    };

    if (n_threads <= 1) {
        for (int t = 0; t < trials_m; ++t) run_trial(t);
    } else {
        std::vector<std::thread> pool;
        const int stride = (trials_m + n_threads - 1) / n_threads;
        for (int w = 0; w < n_threads; ++w) {
            const int lo = w * stride;
            const int hi = std::min(trials_m, lo + stride);
            if (lo >= hi) break;
            pool.emplace_back([&, lo, hi] { for (int t = lo; t < hi; ++t) run_trial(t); });
        }
        for (auto& th : pool) th.join();
    }

    BasinReport rep;
    rep.pattern_index = pattern_index;
    rep.flips_r = flips_r;
    rep.trials_m = trials_m;
    rep.initial_overlap = static_cast<double>(n - flips_r) / n;
    rep.master_seed = master_seed;
    double mf = 0.0;
    int exact = 0, flip = 0;
    for (int s : distances) {
        rep.distance_histogram[s] += 1;
        mf += static_cast<double>(n - s) / n;
        if (s == 0) ++exact;
        if (s == n) ++flip;
    }
    rep.final_overlap = mf / trials_m;
    rep.recovery_probability = static_cast<double>(exact) / trials_m;
    rep.recovery_probability_mod_flip = static_cast<double>(exact + flip) / trials_m;
    return rep;
}

std::vector<BasinReport> overlap_curve(const SpinConfig& pattern,
                                       const CouplingMatrix& couplings,
                                       const std::vector<int>& r_grid, int trials_m,
                                       std::uint64_t master_seed, int max_sweeps,
                                       int n_threads, int pattern_index) {
    std::vector<BasinReport> out;
    out.reserve(r_grid.size());
    for (std::size_t k = 0; k < r_grid.size(); ++k) {
        out.push_back(basin_statistics(pattern, couplings, r_grid[k], trials_m,
                                       derive_seed(master_seed, k), max_sweeps,
                                       n_threads, pattern_index));
    }
    return out;
}

std::vector<SpinConfig> enumerate_minima(const CouplingMatrix& couplings, int cap) {
    const int n = couplings.size();
    if (cap > 20) throw InvalidParams("enumerate_minima: cap must be <= 20");
    if (n > cap) throw TooLarge("enumerate_minima: N = " + std::to_string(n) +
                                " exceeds cap " + std::to_string(cap));

    std::vector<SpinConfig> minima;
    Eigen::VectorXd s(n);
    for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
        for (int i = 0; i < n; ++i) s[i] = (mask >> i) & 1u ? 1.0 : -1.0;
        const Eigen::VectorXd f = couplings.j * s;
        bool is_min = true;
        for (int k = 0; k < n; ++k) {
            if (2.0 * s[k] * (f[k] - couplings.h[k]) < 0.0) {
                is_min = false;
                break;
            }
        }
        if (is_min) {
            SpinConfig c;
            c.spins.resize(n);
            for (int i = 0; i < n; ++i) c.spins[i] = s[i] > 0 ? 1 : -1;
            minima.push_back(std::move(c));
        }
    }
    return minima;
}

} // namespace ionchain
