#pragma once

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdint>
#include <cstdio>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "stardisc/point_set.hpp"
#include "stardisc/rng.hpp"
#include "stardisc/solvers.hpp"

namespace stardisc {

/// Exact expectation of the maximum of a uniformly random k-subset of the
/// values (without replacement): with the values sorted ascending, the i-th
/// order statistic carries weight C(i-1, k-1) / C(m, k). Evaluated from the
/// top down with the incremental ratio w_{i-1} = w_i (i-k)/(i-1), starting at
/// w_m = k/m.
inline double best_of_k_estimate(std::vector<double> values, std::size_t k) {
    const std::size_t m = values.size();
    if (k < 1 || k > m) throw std::invalid_argument("best_of_k: need 1 <= k <= m");
    std::sort(values.begin(), values.end());
    double est = 0.0;
    double w = static_cast<double>(k) / static_cast<double>(m);
    for (std::size_t i = m; i >= k; --i) {
        est += w * values[i - 1];
        if (i > k)
            w *= static_cast<double>(i - k) / static_cast<double>(i - 1);
    }
    return est;
}

inline const char* algorithm_name(Algorithm a) {
    switch (a) {
    case Algorithm::wf: return "wf";
    case Algorithm::ta_basic: return "ta-basic";
    case Algorithm::ta_improved: return "ta-improved";
    }
    return "?";
}

/// One experiment: independent trials of one algorithm on one instance.
/// `best_of_10` is the order-statistics estimate over min(10, trials);
/// `hits` counts trials reaching reference - 1e-9 when a reference value was
/// supplied.
struct ExperimentReport {
    std::string instance;
    Algorithm algo = Algorithm::ta_improved;
    std::uint64_t master_seed = 0;
    std::uint64_t requested_iterations = 0;
    std::vector<TrialResult> trials;
    double best_of_10 = 0.0;
    std::optional<double> reference;
    std::optional<std::uint64_t> hits;
    double seconds_per_trial = 0.0;
};

constexpr double kHitTolerance = 1e-9;

/// Runs `trials` independent trials with seeds derived from the master seed
/// by trial index, dispatched to a small worker pool. Results are ordered by
/// trial index, so the report does not depend on the pool size.
inline ExperimentReport run_experiment(const PointSet& X, const std::string& instance,
                                       Algorithm algo, std::uint64_t trials,
                                       std::uint64_t iterations, std::uint64_t master_seed,
                                       std::optional<double> reference = {},
                                       unsigned threads = 0) {
    if (trials < 1) throw std::invalid_argument("experiment needs at least one trial");
    CoordinateGrids grids(X);
    ExperimentReport rep;
    rep.instance = instance;
    rep.algo = algo;
    rep.master_seed = master_seed;
    rep.requested_iterations = iterations;
    rep.trials.resize(trials);
    rep.reference = reference;

    if (threads == 0)
        threads = std::max(1u, std::thread::hardware_concurrency());
    threads = static_cast<unsigned>(std::min<std::uint64_t>(threads, trials));

    const auto t0 = std::chrono::steady_clock::now();
    std::atomic<std::uint64_t> next{0};
    auto worker = [&] {
        for (std::uint64_t t = next.fetch_add(1); t < trials; t = next.fetch_add(1))
            rep.trials[t] = run_trial(X, grids, algo, iterations, derive_seed(master_seed, t));
    };
    if (threads <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(threads);
        for (unsigned i = 0; i < threads; ++i) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }
    const auto dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0);
    rep.seconds_per_trial = dt.count() / static_cast<double>(trials);

    std::vector<double> values;
    values.reserve(trials);
    for (const auto& tr : rep.trials) values.push_back(tr.value);
    rep.best_of_10 = best_of_k_estimate(values, std::min<std::size_t>(10, values.size()));
    if (reference) {
        std::uint64_t h = 0;
        for (double v : values)
            if (v >= *reference - kHitTolerance) ++h;
        rep.hits = h;
    }
    return rep;
}

/// CSV rows, one per trial: instance,algo,seed,trial,iterations,value,witness
/// with the witness coordinates semicolon-joined at 17 significant digits.
/// Identical invocations produce byte-identical output.
inline void write_csv(std::ostream& out, const ExperimentReport& rep) {
    out << "instance,algo,seed,trial,iterations,value,witness\n";
    char buf[32];
    for (std::size_t t = 0; t < rep.trials.size(); ++t) {
        const auto& tr = rep.trials[t];
        out << rep.instance << ',' << algorithm_name(rep.algo) << ',' << tr.seed << ',' << t
            << ',' << tr.iterations << ',';
        std::snprintf(buf, sizeof buf, "%.17g", tr.value);
        out << buf << ',';
        for (std::size_t j = 0; j < tr.witness.size(); ++j) {
            std::snprintf(buf, sizeof buf, "%.17g", tr.witness[j]);
            out << (j ? ";" : "") << buf;
        }
        out << '\n';
    }
}

} // namespace stardisc
