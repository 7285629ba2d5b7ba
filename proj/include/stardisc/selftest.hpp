#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <string>
#include <vector>

#include "stardisc/exact.hpp"
#include "stardisc/generators.hpp"
#include "stardisc/rng.hpp"
#include "stardisc/sampling.hpp"
#include "stardisc/theory.hpp"

namespace stardisc {

struct CheckResult {
    std::string name;
    bool pass = false;
    std::string detail;
};

namespace detail {

inline std::string fmt(const char* f, double a, double b) {
    char buf[128];
    std::snprintf(buf, sizeof buf, f, a, b);
    return buf;
}

/// 4-sigma band around a binomial estimate; sigma comes from the model
/// probability so that zero observed hits of a tiny probability still have a
/// meaningful width.
inline bool within_4sigma(double closed, const McEstimate& mc, double mass) {
    const double p = std::min(1.0, std::max(0.0, closed / mass));
    const double se_model = mass * std::sqrt(p * (1.0 - p) / static_cast<double>(mc.samples));
    const double tol = 4.0 * std::max(mc.se, se_model) + mass * 1e-12;
    return std::abs(closed - mc.value) <= tol;
}

} // namespace detail

/// The verifier battery behind `theory selftest`: every closed form of the
/// analysis sections against its Monte Carlo oracle or bound, with fixed
/// seeds so a failure is a regression rather than noise.
inline std::vector<CheckResult> theory_selftest(std::uint64_t samples = 1'000'000,
                                                std::uint64_t seed = 20120521) {
    std::vector<CheckResult> out;
    Rng rng(seed);
    auto check = [&](const std::string& name, bool pass, std::string detail = {}) {
        out.push_back({name, pass, std::move(detail)});
    };

    // lambda_A_eps and pi_A_eps vs Monte Carlo
    for (std::size_t d : {2, 3, 5})
        for (double V : {0.3, 0.5, 0.9})
            for (double eps : {0.05, 0.1}) {
                EpsilonSetQuery q{V, eps, d};
                const double lam = lambda_A_eps(q);
                const auto lam_mc = mc_lambda_A_eps(q, samples, rng);
                char name[96];
                std::snprintf(name, sizeof name, "lambda_A_eps d=%zu V=%.2f eps=%.2f", d, V, eps);
                check(name, detail::within_4sigma(lam, lam_mc, V),
                      detail::fmt("closed=%.3e mc=%.3e", lam, lam_mc.value));
                const double pi = pi_A_eps(q);
                const auto pi_mc = mc_pi_A_eps(q, samples, rng);
                std::snprintf(name, sizeof name, "pi_A_eps d=%zu V=%.2f eps=%.2f", d, V, eps);
                check(name, detail::within_4sigma(pi, pi_mc, std::pow(V, double(d))),
                      detail::fmt("closed=%.3e mc=%.3e", pi, pi_mc.value));
            }

    // bounds: pi_A_eps >= eps^d always; the e^-1..2.5 d^d/d! bracket for V >= d*eps
    {
        bool lower_ok = true, bracket_ok = true, simplex_ok = true;
        for (std::size_t d : {2, 3, 5})
            for (double V : {0.3, 0.5, 0.9})
                for (double eps : {0.05, 0.1}) {
                    EpsilonSetQuery q{V, eps, d};
                    const double pi = pi_A_eps(q);
                    lower_ok = lower_ok && pi >= std::pow(eps, double(d)) - 1e-15;
                    if (V >= double(d) * eps) {
                        double dfac = 1.0, dd = 1.0;
                        for (std::size_t i = 2; i <= d; ++i) dfac *= double(i);
                        for (std::size_t i = 0; i < d; ++i) dd *= double(d);
                        const double unit = dd / dfac * std::pow(eps, double(d));
                        bracket_ok = bracket_ok && pi >= std::exp(-1.0) * unit - 1e-15 &&
                                     pi <= 2.5 * unit + 1e-15;
                        const double lam = lambda_A_eps(q);
                        simplex_ok =
                            simplex_ok &&
                            lam <= 2.5 / dfac * std::pow(eps, double(d)) /
                                       std::pow(V, double(d) - 1.0) + 1e-15;
                    }
                }
        check("pi_A_eps lower bound eps^d", lower_ok);
        check("pi_A_eps bracket for V >= d*eps", bracket_ok);
        check("lambda_A_eps corollary bound for V >= d*eps", simplex_ok);
    }

    // pi_A_eps strictly increasing in V
    {
        bool ok = true;
        for (std::size_t d : {2, 3, 5}) {
            double prev = -1.0;
            for (double V = 0.12; V <= 1.0; V += 0.04) {
                const double v = pi_A_eps({V, 0.1, d});
                ok = ok && v > prev;
                prev = v;
            }
        }
        check("pi_A_eps strictly increasing in V", ok);
    }

    // b_k: normalization, first coefficients, growth bound, series consistency
    {
        bool ok = true;
        for (std::size_t d = 2; d <= 8; ++d) {
            ok = ok && std::abs(b_k(0, d) - 1.0) < 1e-12;
            const double b1 = double(d) * double(d - 1) / (2.0 * double(d + 1));
            ok = ok && std::abs(b_k(1, d) - b1) < 1e-12;
            for (std::size_t k = 0; k <= 10; ++k)
                ok = ok && b_k(k, d) <= std::pow(double(d), double(k)) /
                                            std::pow(2.0, double(k) - 1.0) + 1e-12;
        }
        check("b_k coefficients (b_0, b_1, growth bound)", ok);
        bool series_ok = true;
        for (std::size_t d : {2, 3, 5})
            for (double V : {0.3, 0.5, 0.9})
                for (double eps : {0.05, 0.1})
                    if (eps / V <= 0.5) {
                        EpsilonSetQuery q{V, eps, d};
                        const double direct = lambda_A_eps(q);
                        const double series = lambda_A_eps_series(q, 50);
                        series_ok = series_ok && std::abs(direct - series) <= 1e-8 * direct;
                    }
        check("lambda_A_eps series consistency (K=50)", series_ok);
    }

    // criticality probabilities vs Monte Carlo
    {
        const std::uint64_t mc_samples = std::max<std::uint64_t>(10'000, samples / 10);
        for (std::size_t n : {4, 5})
            for (std::size_t d : {2, 3}) {
                std::vector<std::vector<std::size_t>> open_idx = {
                    std::vector<std::size_t>(d, n + 1), std::vector<std::size_t>(d, n),
                    std::vector<std::size_t>(d, 3)};
                open_idx.push_back([&] {
                    std::vector<std::size_t> v(d, n + 1);
                    v[0] = 2;
                    return v;
                }());
                bool ok = true;
                std::string detail;
                for (const auto& iota : open_idx) {
                    const double p = prob_critical_open(iota, n, d);
                    const auto mc = mc_prob_critical(iota, n, d, BoxKind::open, mc_samples, rng);
                    if (!detail::within_4sigma(p, mc, 1.0)) {
                        ok = false;
                        detail = detail::fmt("closed=%.4f mc=%.4f", p, mc.value);
                    }
                }
                char name[64];
                std::snprintf(name, sizeof name, "prob_critical_open n=%zu d=%zu", n, d);
                check(name, ok, detail);

                std::vector<std::vector<std::size_t>> closed_idx = {
                    std::vector<std::size_t>(d, 1), std::vector<std::size_t>(d, n),
                    std::vector<std::size_t>(d, 3)};
                ok = true;
                detail.clear();
                for (const auto& iota : closed_idx) {
                    const double p = prob_critical_closed(iota, n, d);
                    const auto mc =
                        mc_prob_critical(iota, n, d, BoxKind::closed, mc_samples, rng);
                    if (!detail::within_4sigma(p, mc, 1.0)) {
                        ok = false;
                        detail = detail::fmt("closed=%.4f mc=%.4f", p, mc.value);
                    }
                }
                std::snprintf(name, sizeof name, "prob_critical_closed n=%zu d=%zu", n, d);
                check(name, ok, detail);
            }
    }

    // stirling numbers against the recurrence
    {
        bool ok = true;
        for (std::size_t d = 1; d <= 12; ++d)
            for (std::size_t k = 1; k <= d; ++k) {
                const std::int64_t direct = stirling2(d, k);
                std::int64_t rec;
                if (k == 1 || k == d) rec = 1;
                else rec = static_cast<std::int64_t>(k) * stirling2(d - 1, k) +
                           stirling2(d - 1, k - 1);
                ok = ok && direct == rec;
            }
        check("stirling2 matches recurrence", ok);
    }

    // polynomial measure: per-coordinate mean d/(d+1)
    for (std::size_t d : {1, 3, 7}) {
        const std::uint64_t R = samples;
        double sum = 0.0;
        for (std::uint64_t s = 0; s < R; ++s) {
            const auto y = sample_pi(d, rng);
            for (double c : y) sum += c;
        }
        const double mean = sum / (double(R) * double(d));
        const double mu = double(d) / double(d + 1);
        const double var = double(d) / double(d + 2) - mu * mu;
        const double band = 4.0 * std::sqrt(var / (double(R) * double(d)));
        char name[64];
        std::snprintf(name, sizeof name, "pi^d coordinate mean d=%zu", d);
        check(name, std::abs(mean - mu) <= band, detail::fmt("mean=%.5f mu=%.5f", mean, mu));
    }

    // Lemma on 1-D weights: w_l(tau) >= 1/n, expectation inequalities
    {
        bool ok = true;
        std::string detail;
        for (int rep = 0; rep < 100 && ok; ++rep) {
            const std::size_t n = 1 + rng.below(30);
            std::vector<double> xs(n);
            for (auto& c : xs) c = rng.uniform01();
            std::sort(xs.begin(), xs.end());
            if (std::unique(xs.begin(), xs.end()) != xs.end()) continue;
            PointSet X(n, 1, xs);
            CoordinateGrids grids(X);
            const auto wl = weights(grids, WeightKind::lower);
            const auto wu = weights(grids, WeightKind::upper);
            const auto g = grids.gamma(0);
            std::size_t arg_delta = 0, arg_bar = 0;
            double best_delta = -2, best_bar = -2;
            for (std::size_t i = 0; i < g.size(); ++i) {
                const auto box = evaluate_box(std::span<const double>(&g[i], 1), X);
                if (box.delta > best_delta) { best_delta = box.delta; arg_delta = i; }
                if (box.delta_bar > best_bar) { best_bar = box.delta_bar; arg_bar = i; }
            }
            const double inv_n = 1.0 / double(n);
            ok = ok && wl.factors[0][arg_delta] >= inv_n - 1e-14;
            ok = ok && wu.factors[0][arg_bar] >= inv_n - 1e-14;
            const double el = expectation_1d(X, Weighting::lower, Objective1d::delta);
            const double eu = expectation_1d(X, Weighting::upper, Objective1d::delta_bar);
            const double e_delta = expectation_1d(X, Weighting::uniform, Objective1d::delta);
            const double e_bar = expectation_1d(X, Weighting::uniform, Objective1d::delta_bar);
            ok = ok && el >= e_delta - 1e-14 && eu >= e_bar - 1e-14;
        }
        check("1-D weight lemma (argmax weights, expectations)", ok);
    }

    // sampling bounds: 1-D reduction, sharpness instance, poly vs lebesgue
    {
        const std::uint64_t R = std::max<std::uint64_t>(10'000, samples / 10);
        bool ok = true;
        for (int rep = 0; rep < 5 && ok; ++rep) {
            std::vector<double> xs(8);
            for (auto& c : xs) c = 0.05 + 0.9 * rng.uniform01();
            PointSet X(8, 1, xs);
            const double eps = 0.05; // delta-argmax is >= the smallest point, so V >= eps
            const auto leb = verify_sampling_bound(X, eps, SamplingMeasure::lebesgue, R, rng);
            const auto pol = verify_sampling_bound(X, eps, SamplingMeasure::poly, R, rng);
            ok = ok && leb.value >= eps - 4.0 * std::sqrt(eps / double(R));
            ok = ok && pol.value >= eps - 4.0 * std::sqrt(eps / double(R));
        }
        check("sampling bound, 1-D reduction (both measures)", ok);

        // all mass at (eps, 0, ..., 0): the poly bound eps^d is attained
        {
            const double eps = 0.3;
            const std::size_t d = 3, n = 10;
            std::vector<double> coords(n * d, 0.0);
            for (std::size_t i = 0; i < n; ++i) coords[i * d] = eps;
            PointSet X(n, d, coords);
            const auto pol = verify_sampling_bound(X, eps, SamplingMeasure::poly, R, rng);
            const double target = std::pow(eps, double(d));
            const double band =
                4.0 * std::sqrt(target * (1 - target) / double(R)) + 1e-9;
            check("sampling bound sharpness at eps^d", std::abs(pol.value - target) <= band,
                  detail::fmt("rate=%.5f target=%.5f", pol.value, target));
        }

        // d = 3 random sets: poly rate dominates lebesgue rate
        {
            bool dom = true;
            int used = 0;
            while (used < 3) {
                std::vector<double> coords(8 * 3);
                for (auto& c : coords) c = rng.uniform01();
                PointSet X(8, 3, coords);
                const double eps = 0.2;
                if (box_volume(exact_star_discrepancy(X).delta_witness) < eps)
                    continue; // outside the propositions' precondition
                ++used;
                const auto leb =
                    verify_sampling_bound(X, eps, SamplingMeasure::lebesgue, R, rng);
                const auto pol = verify_sampling_bound(X, eps, SamplingMeasure::poly, R, rng);
                dom = dom && pol.value >= leb.value - 4.0 * (leb.se + pol.se);
            }
            check("sampling bound, poly dominates lebesgue (d=3)", dom);
        }
    }

    return out;
}

} // namespace stardisc
