#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <utility>
#include <vector>

#include "stardisc/exact.hpp"
#include "stardisc/geometry.hpp"
#include "stardisc/point_set.hpp"
#include "stardisc/rng.hpp"
#include "stardisc/sampling.hpp"
#include "stardisc/snapping.hpp"

namespace stardisc {

enum class Algorithm { wf, ta_basic, ta_improved };

/// Which local discrepancy function certifies a reported value.
enum class Objective { delta, delta_bar, delta_star };

/// One heuristic trial. `value` is the running maximum over every grid point
/// the trial evaluated; re-evaluating `objective` at `witness` reproduces it
/// bit for bit. `iterations` counts executed optimization iterations, which
/// is floor(sqrt(I))^2 per threshold-accepting pass rather than the requested
/// I when I is not a perfect square.
struct TrialResult {
    double value = 0.0;
    std::vector<double> witness;
    Objective objective = Objective::delta_star;
    Algorithm algorithm = Algorithm::ta_improved;
    std::uint64_t seed = 0;
    std::uint64_t iterations = 0;
};

/// Non-positive thresholds sorted increasing (toward zero), each used for
/// `iterations_per_threshold` iterations.
struct ThresholdSequence {
    std::vector<double> values;
    std::uint64_t iterations_per_threshold = 0;
};

struct WfParams {
    std::size_t mc = 3;
    std::size_t ell = 20;
    double alpha = 0.995;
};

/// Winker-Fang defaults: mc = 3 up to d = 12 and 4 beyond, window k = 41
/// (ell = 20) up to n = 500 and 301 (ell = 150) beyond, alpha = 0.995;
/// mc and ell are clamped to the instance size.
inline WfParams default_wf_params(std::size_t n, std::size_t d) {
    WfParams p;
    p.mc = d <= 12 ? 3 : 4;
    p.mc = std::min(p.mc, d);
    p.ell = n <= 500 ? 20 : 150;
    p.ell = std::max<std::size_t>(1, std::min(p.ell, (n - 1) / 2 > 0 ? (n - 1) / 2 : 1));
    return p;
}

/// TA_basic neighborhood order: ell = floor(n/8) for n >= 100, floor(n/4)
/// otherwise, never below 1.
inline std::size_t default_basic_ell(std::size_t n) {
    const std::size_t ell = n >= 100 ? n / 8 : n / 4;
    return std::max<std::size_t>(1, ell);
}

/// Shrinking-neighborhood schedule at iteration t of I: the window halves
/// from (n-1)/2 down to 1 while the number of varied coordinates grows from
/// 2 to d, both linearly in t.
inline std::pair<std::size_t, std::size_t> schedule(std::uint64_t t, std::uint64_t total,
                                                    std::size_t n, std::size_t d) {
    const double frac = total == 0 ? 1.0 : static_cast<double>(t) / static_cast<double>(total);
    const double ell_real =
        0.5 * static_cast<double>(n - 1) * (1.0 - frac) + frac;
    const std::size_t ell = std::max<std::size_t>(1, static_cast<std::size_t>(ell_real));
    // the floor binds to t/total, so mc stays at 2 and jumps to d only in the
    // final iteration; a linearly growing mc destroys the late-stage polish
    // (measured: it stops short of the known optima on d = 20 instances)
    std::size_t mc = 2 + static_cast<std::size_t>(frac) * (d >= 2 ? d - 2 : 0);
    mc = std::min(std::max<std::size_t>(1, mc), d);
    return {ell, mc};
}

/// One uniform draw from the discrete Winker-Fang neighborhood: mc random
/// coordinates each move to a uniform grid value within ell positions of the
/// current one (window clamped at the grid ends), the rest stay put.
inline std::vector<double> wf_neighborhood(std::span<const double> x, std::size_t mc,
                                           std::size_t ell, const CoordinateGrids& grids,
                                           Rng& rng) {
    const std::size_t d = grids.dimension();
    std::vector<double> y(x.begin(), x.end());
    std::vector<std::size_t> perm(d);
    for (std::size_t j = 0; j < d; ++j) perm[j] = j;
    for (std::size_t j = 0; j < mc; ++j) std::swap(perm[j], perm[j + rng.below(d - j)]);
    for (std::size_t j = 0; j < mc; ++j) {
        const std::size_t c = perm[j];
        const auto bar = grids.gamma_bar(c);
        const std::size_t pos = grids.index_of(c, x[c]);
        const std::size_t lo = pos > ell ? pos - ell : 0;
        const std::size_t hi = std::min(bar.size() - 1, pos + ell);
        y[c] = bar[lo + rng.between(0, hi - lo)];
    }
    return y;
}

namespace detail {

inline std::vector<double> uniform_grid_point(const CoordinateGrids& grids, Rng& rng) {
    std::vector<double> y(grids.dimension());
    for (std::size_t j = 0; j < grids.dimension(); ++j) {
        const auto bar = grids.gamma_bar(j);
        y[j] = bar[rng.below(bar.size())];
    }
    return y;
}

/// Componentwise round-up only; the delta-version of TA_improved never
/// touches the down-roundings.
inline std::vector<double> round_up_only(std::span<const double> y,
                                         const CoordinateGrids& grids) {
    std::vector<double> up(y.size());
    for (std::size_t j = 0; j < y.size(); ++j) {
        const auto bar = grids.gamma_bar(j);
        up[j] = *std::lower_bound(bar.begin(), bar.end(), y[j]);
    }
    return up;
}

/// A certified value at a grid point: `point` is where the trial may move
/// next, `cert` the (possibly snapped) point whose objective equals `value`.
struct PipelineEval {
    double value = 0.0;
    std::vector<double> point;
    std::vector<double> cert;
    Objective objective = Objective::delta_star;
};

/// TA_basic pipeline: round the continuous sample to y+, y-, y-- and take
/// the best of delta(y+), delta_bar(y-), delta_bar(y--); ties resolve in
/// that order.
inline PipelineEval eval_rounded(std::span<const double> y, const PointSet& X,
                                 const CoordinateGrids& grids) {
    const auto r = round_to_grid(y, grids);
    PipelineEval e;
    e.value = evaluate_box(r.up, X).delta;
    e.point = r.up;
    e.objective = Objective::delta;
    const double down = evaluate_box(r.down, X).delta_bar;
    if (down > e.value) {
        e.value = down;
        e.point = r.down;
        e.objective = Objective::delta_bar;
    }
    if (r.wrapped) {
        const double down_min = evaluate_box(r.down_min, X).delta_bar;
        if (down_min > e.value) {
            e.value = down_min;
            e.point = r.down_min;
            e.objective = Objective::delta_bar;
        }
    }
    e.cert = e.point;
    return e;
}

/// Delta-version pipeline of TA_improved: round up, snap up, certify by the
/// snapped delta value; the current point stays the simply-rounded y+.
inline PipelineEval eval_snapped_up(std::span<const double> y, const PointSet& X,
                                    const CoordinateGrids& grids, Rng& rng) {
    PipelineEval e;
    e.point = round_up_only(y, grids);
    e.cert = snap_up(e.point, X, rng);
    e.value = evaluate_box(e.cert, X).delta;
    e.objective = Objective::delta;
    return e;
}

/// Delta_bar-version pipeline: round down (both variants when the wrap rule
/// fired), snap each down, certify by the larger snapped delta_bar value;
/// ties resolve to y-.
inline PipelineEval eval_snapped_down(std::span<const double> y, const PointSet& X,
                                      const CoordinateGrids& grids) {
    const auto r = round_to_grid(y, grids);
    PipelineEval e;
    e.point = r.down;
    e.cert = snap_down(r.down, X);
    e.value = evaluate_box(e.cert, X).delta_bar;
    e.objective = Objective::delta_bar;
    if (r.wrapped) {
        auto cert2 = snap_down(r.down_min, X);
        const double v2 = evaluate_box(cert2, X).delta_bar;
        if (v2 > e.value) {
            e.value = v2;
            e.point = r.down_min;
            e.cert = std::move(cert2);
        }
    }
    return e;
}

} // namespace detail

/// Threshold sequence for the requested variant. Every probe pair runs the
/// variant's own sampling/rounding/snapping pipeline; thresholds are the
/// negative absolute value differences, sorted increasing.
inline ThresholdSequence compute_thresholds(const PointSet& X, const CoordinateGrids& grids,
                                            std::uint64_t iterations, Algorithm algo,
                                            std::size_t ell, std::size_t mc, double alpha,
                                            Rng& rng, Objective split = Objective::delta) {
    const std::size_t n = X.size(), d = X.dimension();
    const std::uint64_t m =
        static_cast<std::uint64_t>(std::floor(std::sqrt(static_cast<double>(iterations))));
    ThresholdSequence ts;
    ts.values.reserve(m);
    switch (algo) {
    case Algorithm::wf:
        for (std::uint64_t t = 1; t <= m; ++t) {
            const auto y = detail::uniform_grid_point(grids, rng);
            const auto nb = wf_neighborhood(y, mc, ell, grids, rng);
            ts.values.push_back(
                -std::abs(evaluate_box(y, X).delta_star - evaluate_box(nb, X).delta_star));
        }
        std::sort(ts.values.begin(), ts.values.end());
        {
            const std::size_t keep =
                static_cast<std::size_t>(std::floor(alpha * static_cast<double>(m)));
            ts.values.erase(ts.values.begin(), ts.values.end() - keep);
            ts.iterations_per_threshold = static_cast<std::uint64_t>(
                std::floor(static_cast<double>(m) / alpha));
        }
        return ts;
    case Algorithm::ta_basic:
        for (std::uint64_t t = 1; t <= m; ++t) {
            const auto x = sample_pi(d, rng);
            const auto e1 = detail::eval_rounded(x, X, grids);
            const auto spec = build_neighborhood(e1.point, mc, ell, grids, rng);
            const auto y = sample_neighbor(spec, grids, rng);
            const auto e2 = detail::eval_rounded(y, X, grids);
            ts.values.push_back(-std::abs(e1.value - e2.value));
        }
        break;
    case Algorithm::ta_improved:
        for (std::uint64_t t = 1; t <= m; ++t) {
            const auto [ell_t, mc_t] = schedule(t, m, n, d);
            const auto x = sample_pi(d, rng);
            const auto e1 = split == Objective::delta
                                ? detail::eval_snapped_up(x, X, grids, rng)
                                : detail::eval_snapped_down(x, X, grids);
            const auto spec = build_neighborhood(e1.point, mc_t, ell_t, grids, rng);
            const auto y = sample_neighbor(spec, grids, rng);
            const auto e2 = split == Objective::delta
                                ? detail::eval_snapped_up(y, X, grids, rng)
                                : detail::eval_snapped_down(y, X, grids);
            ts.values.push_back(-std::abs(e1.value - e2.value));
        }
        break;
    }
    std::sort(ts.values.begin(), ts.values.end());
    ts.iterations_per_threshold = m;
    return ts;
}

/// Winker-Fang baseline: uniform starting point on the grid, uniform
/// neighbor draws from the discrete window neighborhood, acceptance when the
/// delta_star change clears the current threshold. Returns the best
/// delta_star value ever visited.
inline TrialResult run_wf(const PointSet& X, const CoordinateGrids& grids,
                          std::uint64_t iterations, const WfParams& params,
                          std::uint64_t seed) {
    if (!(params.alpha > 0.9 && params.alpha <= 1.0))
        throw std::invalid_argument("wf: alpha must lie in (0.9, 1]");
    if (params.mc < 1 || params.mc > X.dimension())
        throw std::invalid_argument("wf: mc out of range");
    if (params.ell < 1) throw std::invalid_argument("wf: ell must be >= 1");
    Rng rng(seed);
    const auto ts = compute_thresholds(X, grids, iterations, Algorithm::wf, params.ell,
                                       params.mc, params.alpha, rng);

    TrialResult out;
    out.seed = seed;
    out.algorithm = Algorithm::wf;
    out.objective = Objective::delta_star;
    std::vector<double> xc = detail::uniform_grid_point(grids, rng);
    double current = evaluate_box(xc, X).delta_star;
    out.value = current;
    out.witness = xc;
    for (double threshold : ts.values) {
        for (std::uint64_t j = 0; j < ts.iterations_per_threshold; ++j) {
            auto nb = wf_neighborhood(xc, params.mc, params.ell, grids, rng);
            const double v = evaluate_box(nb, X).delta_star;
            ++out.iterations;
            if (v > out.value) {
                out.value = v;
                out.witness = nb;
            }
            if (v - current >= threshold) {
                xc = std::move(nb);
                current = v;
            }
        }
    }
    return out;
}

/// TA_basic: non-uniform pi^d sampling over continuous neighborhoods,
/// rounding to the grid, acceptance compares the best rounded value with
/// delta_star at the current point. Fixed ell and mc.
inline TrialResult run_ta_basic(const PointSet& X, const CoordinateGrids& grids,
                                std::uint64_t iterations, std::size_t ell, std::size_t mc,
                                std::uint64_t seed) {
    const std::size_t d = X.dimension();
    mc = std::min(std::max<std::size_t>(1, mc), d);
    if (ell < 1) throw std::invalid_argument("ta_basic: ell must be >= 1");
    Rng rng(seed);
    const auto ts = compute_thresholds(X, grids, iterations, Algorithm::ta_basic, ell, mc,
                                       1.0, rng);

    TrialResult out;
    out.seed = seed;
    out.algorithm = Algorithm::ta_basic;
    const auto start = detail::eval_rounded(sample_pi(d, rng), X, grids);
    std::vector<double> xc = start.point;
    double current = evaluate_box(xc, X).delta_star;
    out.value = start.value;
    out.witness = start.cert;
    out.objective = start.objective;
    for (double threshold : ts.values) {
        for (std::uint64_t j = 0; j < ts.iterations_per_threshold; ++j) {
            const auto spec = build_neighborhood(xc, mc, ell, grids, rng);
            const auto y = sample_neighbor(spec, grids, rng);
            const auto e = detail::eval_rounded(y, X, grids);
            ++out.iterations;
            if (e.value > out.value) {
                out.value = e.value;
                out.witness = e.cert;
                out.objective = e.objective;
            }
            if (e.value - current >= threshold) {
                xc = e.point;
                current = evaluate_box(xc, X).delta_star;
            }
        }
    }
    return out;
}

namespace detail {

/// One split pass of TA_improved: optimize delta (snapping up) or delta_bar
/// (snapping down) alone, with shrinking neighborhoods, growing mc, and the
/// snapped values deciding both acceptance and the running maximum. The
/// current point always remains a simply-rounded grid point.
inline TrialResult run_improved_pass(const PointSet& X, const CoordinateGrids& grids,
                                     std::uint64_t iterations, Objective split, Rng& rng,
                                     std::uint64_t seed) {
    const std::size_t n = X.size(), d = X.dimension();
    const auto ts = compute_thresholds(X, grids, iterations, Algorithm::ta_improved, 0, 0,
                                       1.0, rng, split);
    const std::uint64_t m = ts.iterations_per_threshold;
    const std::uint64_t total = m * m;

    TrialResult out;
    out.seed = seed;
    out.algorithm = Algorithm::ta_improved;
    const auto start = split == Objective::delta
                           ? eval_snapped_up(sample_pi(d, rng), X, grids, rng)
                           : eval_snapped_down(sample_pi(d, rng), X, grids);
    std::vector<double> xc = start.point;
    double current = start.value;
    out.value = start.value;
    out.witness = start.cert;
    out.objective = split;
    std::uint64_t t = 0;
    for (double threshold : ts.values) {
        for (std::uint64_t j = 0; j < m; ++j) {
            ++t;
            const auto [ell_t, mc_t] = schedule(t, total, n, d);
            const auto spec = build_neighborhood(xc, mc_t, ell_t, grids, rng);
            const auto y = sample_neighbor(spec, grids, rng);
            const auto e = split == Objective::delta ? eval_snapped_up(y, X, grids, rng)
                                                     : eval_snapped_down(y, X, grids);
            ++out.iterations;
            if (e.value > out.value) {
                out.value = e.value;
                out.witness = e.cert;
            }
            if (e.value - current >= threshold) {
                xc = e.point;
                current = e.value;
            }
        }
    }
    return out;
}

} // namespace detail

/// TA_improved: I iterations of the delta-version followed by I iterations
/// of the delta_bar-version, each with its own threshold sequence and
/// schedule; the result is the better of the two passes.
inline TrialResult run_ta_improved(const PointSet& X, const CoordinateGrids& grids,
                                   std::uint64_t iterations, std::uint64_t seed) {
    Rng rng(seed);
    TrialResult a =
        detail::run_improved_pass(X, grids, iterations, Objective::delta, rng, seed);
    TrialResult b =
        detail::run_improved_pass(X, grids, iterations, Objective::delta_bar, rng, seed);
    TrialResult& best = b.value > a.value ? b : a;
    best.iterations = a.iterations + b.iterations;
    return best;
}

/// Dispatch by algorithm tag with the per-algorithm default parameters.
inline TrialResult run_trial(const PointSet& X, const CoordinateGrids& grids, Algorithm algo,
                             std::uint64_t iterations, std::uint64_t seed) {
    switch (algo) {
    case Algorithm::wf:
        return run_wf(X, grids, iterations, default_wf_params(X.size(), X.dimension()), seed);
    case Algorithm::ta_basic:
        return run_ta_basic(X, grids, iterations, default_basic_ell(X.size()),
                            std::min<std::size_t>(2, X.dimension()), seed);
    case Algorithm::ta_improved:
        return run_ta_improved(X, grids, iterations, seed);
    }
    throw std::logic_error("unreachable");
}

} // namespace stardisc
