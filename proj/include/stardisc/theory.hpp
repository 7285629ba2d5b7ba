#pragma once

#include <cmath>
#include <cstdint>
#include <numeric>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "stardisc/exact.hpp"
#include "stardisc/geometry.hpp"
#include "stardisc/point_set.hpp"
#include "stardisc/rng.hpp"
#include "stardisc/sampling.hpp"

namespace stardisc {

/// Query for the epsilon set A_eps(z) = {x <= z : V_z - V_x <= eps}: only the
/// box volume V_z, the admissible error and the dimension enter the closed
/// forms.
struct EpsilonSetQuery {
    double volume = 1.0; // V_z
    double eps = 0.1;
    std::size_t d = 1;
};

inline void check_eps_query(const EpsilonSetQuery& q) {
    if (!(q.eps > 0.0 && q.eps <= 1.0)) throw std::invalid_argument("eps must be in (0,1]");
    if (!(q.volume >= q.eps)) throw std::invalid_argument("V_z >= eps required");
    if (q.d < 1) throw std::invalid_argument("d >= 1 required");
}

namespace detail {

/// Exponential tail sum_{k >= d} x^k / k!. Since e^x * (first d terms
/// removed) loses almost every digit when x is small, the tail is summed
/// directly; all terms are positive.
inline double exp_tail(double x, std::size_t d) {
    double term = 1.0;
    for (std::size_t k = 1; k <= d; ++k) term *= x / static_cast<double>(k);
    double sum = 0.0;
    for (std::size_t k = d; term > sum * 1e-18 || k == d; ++k) {
        sum += term;
        term *= x / static_cast<double>(k + 1);
    }
    return sum;
}

} // namespace detail

/// Lebesgue measure of A_eps(z). The textbook form
/// V - (V - eps) sum_{k<d} L^k/k! with L = -ln(1 - eps/V) cancels badly for
/// small eps/V; since (V - eps) e^L = V it equals the stable positive series
/// (V - eps) sum_{k>=d} L^k/k!.
inline double lambda_A_eps(const EpsilonSetQuery& q) {
    check_eps_query(q);
    if (q.volume == q.eps) return q.eps;
    const double L = -std::log1p(-q.eps / q.volume);
    if (L <= 600.0) return (q.volume - q.eps) * detail::exp_tail(L, q.d);
    // eps/V ~ 1: the direct form no longer cancels
    double sum = 0.0, term = 1.0;
    for (std::size_t k = 0; k < q.d; ++k) {
        sum += term;
        term *= L / static_cast<double>(k + 1);
    }
    return q.volume - (q.volume - q.eps) * sum;
}

/// Polynomial-measure volume of A_eps(z); same rewriting with
/// (V - eps)^d e^{dL} = V^d gives (V - eps)^d sum_{k>=d} (dL)^k/k!.
inline double pi_A_eps(const EpsilonSetQuery& q) {
    check_eps_query(q);
    const double dd = static_cast<double>(q.d);
    if (q.volume == q.eps) return std::pow(q.eps, dd);
    const double L = -std::log1p(-q.eps / q.volume);
    if (dd * L <= 600.0)
        return std::pow(q.volume - q.eps, dd) * detail::exp_tail(dd * L, q.d);
    double sum = 0.0, term = 1.0;
    for (std::size_t k = 0; k < q.d; ++k) {
        sum += term;
        term *= dd * L / static_cast<double>(k + 1);
    }
    return std::pow(q.volume, dd) - std::pow(q.volume - q.eps, dd) * sum;
}

/// Coefficients of the power-series expansion
/// lambda(A_eps) = (1/d!) (eps^d / V^{d-1}) sum_k b_k(d) (eps/V)^k,
/// evaluated from the nested-sum closed forms (d = 2 and 3 have short
/// special cases, higher d uses the triangular-sum form directly).
inline double b_k(std::size_t k, std::size_t d) {
    if (d < 2) throw std::invalid_argument("b_k needs d >= 2");
    const double kk = static_cast<double>(k);
    if (d == 2) return 2.0 / ((kk + 1.0) * (kk + 2.0));
    if (d == 3) {
        double h = 0.0;
        for (std::size_t nu = 0; nu <= k; ++nu) h += 1.0 / static_cast<double>(nu + 1);
        return 6.0 / ((kk + 2.0) * (kk + 3.0)) * h;
    }
    // inner-to-outer accumulation of the nested sums over
    // k >= k_1 >= ... >= k_{d-2} >= 0 of prod_j 1/(k_j + d - j - 1)
    std::vector<double> acc(k + 1, 0.0);
    for (std::size_t i = 0; i <= k; ++i)
        acc[i] = 1.0 / static_cast<double>(i + 1); // j = d-2: factor 1/(k_j + 1)
    for (std::size_t j = d - 3; j >= 1; --j) {
        double run = 0.0;
        for (std::size_t i = 0; i <= k; ++i) {
            run += acc[i];
            acc[i] = run / static_cast<double>(i + d - j - 1);
        }
    }
    double nested = std::accumulate(acc.begin(), acc.end(), 0.0);
    double dfac = 1.0;
    for (std::size_t i = 2; i <= d; ++i) dfac *= static_cast<double>(i);
    return dfac / ((kk + d - 1.0) * (kk + d)) * nested;
}

/// Partial sum of the series above, for consistency checks against
/// lambda_A_eps.
inline double lambda_A_eps_series(const EpsilonSetQuery& q, std::size_t terms) {
    check_eps_query(q);
    if (q.d < 2) throw std::invalid_argument("series form needs d >= 2");
    double dfac = 1.0;
    for (std::size_t i = 2; i <= q.d; ++i) dfac *= static_cast<double>(i);
    const double ratio = q.eps / q.volume;
    double lead = std::pow(q.eps, static_cast<double>(q.d)) /
                  std::pow(q.volume, static_cast<double>(q.d - 1)) / dfac;
    double sum = 0.0, pw = 1.0;
    for (std::size_t k = 0; k <= terms; ++k) {
        sum += b_k(k, q.d) * pw;
        pw *= ratio;
    }
    return lead * sum;
}

/// Stirling numbers of the second kind by the alternating closed formula,
/// rounded to the nearest integer.
inline std::int64_t stirling2(std::size_t d, std::size_t k) {
    if (k < 1 || k > d) throw std::invalid_argument("stirling2 needs 1 <= k <= d");
    double sum = 0.0;
    double jfac = 1.0;
    for (std::size_t j = 0; j <= k; ++j) {
        if (j > 0) jfac *= static_cast<double>(j);
        double kjfac = 1.0;
        for (std::size_t i = 2; i <= k - j; ++i) kjfac *= static_cast<double>(i);
        const double t =
            std::pow(static_cast<double>(k - j), static_cast<double>(d)) / (jfac * kjfac);
        sum += (j % 2 == 0) ? t : -t;
    }
    return std::llround(sum);
}

namespace detail {

/// log of (n-k)!/n! = -log(n (n-1) ... (n-k+1))
inline double log_falling_factorial_ratio(std::size_t n, std::size_t k) {
    double s = 0.0;
    for (std::size_t i = 0; i < k; ++i) s += std::log(static_cast<double>(n - i));
    return -s;
}

} // namespace detail

/// Probability that a multi-index iota in [n+1]^d is delta-critical for a
/// uniformly random n-point set: with k indices at most n (the rest equal to
/// n+1, i.e. the coordinate value 1),
/// ((n-k)!/n!)^{k-1} * prod_{chosen j} prod_{l=1}^{k-1} max(iota_j - l, 0).
inline double prob_critical_open(std::span<const std::size_t> iota, std::size_t n,
                                 std::size_t d) {
    if (iota.size() != d) throw std::invalid_argument("multi-index size != d");
    std::vector<std::size_t> low;
    for (std::size_t v : iota) {
        if (v < 1 || v > n + 1) throw std::invalid_argument("index outside [n+1]");
        if (v <= n) low.push_back(v);
    }
    const std::size_t k = low.size();
    if (k <= 1) return 1.0;
    double lg = static_cast<double>(k - 1) * detail::log_falling_factorial_ratio(n, k);
    for (std::size_t v : low)
        for (std::size_t l = 1; l < k; ++l) {
            if (v <= l) return 0.0;
            lg += std::log(static_cast<double>(v - l));
        }
    return std::exp(lg);
}

/// Probability that a multi-index iota in [n]^d is delta_bar-critical for a
/// uniformly random n-point set:
/// sum_k S(d,k) ((n-k)!/n!)^{d-1} prod_j prod_{nu=1}^{k-1} (iota_j - nu).
inline double prob_critical_closed(std::span<const std::size_t> iota, std::size_t n,
                                   std::size_t d) {
    if (iota.size() != d) throw std::invalid_argument("multi-index size != d");
    for (std::size_t v : iota)
        if (v < 1 || v > n) throw std::invalid_argument("index outside [n]");
    double total = 0.0;
    for (std::size_t k = 1; k <= std::min(d, n); ++k) {
        double lg = static_cast<double>(d - 1) * detail::log_falling_factorial_ratio(n, k);
        bool zero = false;
        for (std::size_t v : iota) {
            for (std::size_t nu = 1; nu < k && !zero; ++nu) {
                if (v <= nu) zero = true;
                else lg += std::log(static_cast<double>(v - nu));
            }
            if (zero) break;
        }
        if (zero) continue;
        total += static_cast<double>(stirling2(d, k)) * std::exp(lg);
    }
    return total;
}

enum class WeightKind { lower, upper };

/// Per-dimension factors of the rounding weights: w(y) is the product over
/// dimensions of factor[j][i_j]. The lower weights live on Gamma_bar (the
/// probability that a Lebesgue draw rounds up to y); the upper weights live
/// on Gamma (rounding down, with the wrap gap closing the last interval).
/// In one dimension the lower weights follow the wrapped convention
/// w_l(x^i) = x^i - x^{i-1} with x^0 = x^n - 1, so they live on Gamma and
/// sum to 1 there.
struct WeightMap {
    WeightKind kind = WeightKind::lower;
    std::vector<std::vector<double>> factors;

    double at(std::span<const std::size_t> idx) const {
        double w = 1.0;
        for (std::size_t j = 0; j < factors.size(); ++j) w *= factors[j][idx[j]];
        return w;
    }
};

inline WeightMap weights(const CoordinateGrids& grids, WeightKind kind) {
    const std::size_t d = grids.dimension();
    WeightMap map;
    map.kind = kind;
    map.factors.resize(d);
    for (std::size_t j = 0; j < d; ++j) {
        if (kind == WeightKind::lower) {
            if (d == 1) {
                const auto g = grids.gamma(j);
                map.factors[j].resize(g.size());
                map.factors[j][0] = g[0] - (g[g.size() - 1] - 1.0);
                for (std::size_t i = 1; i < g.size(); ++i)
                    map.factors[j][i] = g[i] - g[i - 1];
            } else {
                const auto bar = grids.gamma_bar(j);
                map.factors[j].resize(bar.size());
                map.factors[j][0] = bar[0];
                for (std::size_t i = 1; i < bar.size(); ++i)
                    map.factors[j][i] = bar[i] - bar[i - 1];
            }
        } else {
            const auto g = grids.gamma(j);
            map.factors[j].resize(g.size());
            for (std::size_t i = 0; i + 1 < g.size(); ++i)
                map.factors[j][i] = g[i + 1] - g[i];
            map.factors[j][g.size() - 1] = g[0] + 1.0 - g[g.size() - 1];
        }
    }
    return map;
}

enum class Weighting { uniform, lower, upper };
enum class Objective1d { delta, delta_bar };

/// Exact expectation of delta or delta_bar over the 1-D grid Gamma(X) under
/// uniform, lower or upper weights.
inline double expectation_1d(const PointSet& X, Weighting weighting, Objective1d objective) {
    if (X.dimension() != 1)
        throw std::invalid_argument("expectation_1d needs a one-dimensional set");
    CoordinateGrids grids(X);
    const auto g = grids.gamma(0);
    const std::size_t m = g.size();
    const WeightMap wl = weights(grids, WeightKind::lower);
    const WeightMap wu = weights(grids, WeightKind::upper);
    double e = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        const double y = g[i];
        const auto box = evaluate_box(std::span<const double>(&y, 1), X);
        const double f = objective == Objective1d::delta ? box.delta : box.delta_bar;
        double w = 1.0 / static_cast<double>(m);
        if (weighting == Weighting::lower) w = wl.factors[0][i];
        if (weighting == Weighting::upper) w = wu.factors[0][i];
        e += w * f;
    }
    return e;
}

/// Monte Carlo estimate with its binomial standard error.
struct McEstimate {
    double value = 0.0;
    double se = 0.0;
    std::uint64_t samples = 0;
};

/// Monte Carlo check of lambda_A_eps: samples uniformly inside [0, z] with
/// z = (V^(1/d), ..., V^(1/d)) and counts V_z - V_x <= eps, rescaled by V_z.
inline McEstimate mc_lambda_A_eps(const EpsilonSetQuery& q, std::uint64_t samples, Rng& rng) {
    check_eps_query(q);
    const double zj = std::pow(q.volume, 1.0 / static_cast<double>(q.d));
    std::uint64_t hits = 0;
    for (std::uint64_t s = 0; s < samples; ++s) {
        double v = 1.0;
        for (std::size_t j = 0; j < q.d; ++j) v *= zj * rng.uniform01();
        if (q.volume - v <= q.eps) ++hits;
    }
    const double rate = static_cast<double>(hits) / static_cast<double>(samples);
    McEstimate e;
    e.value = q.volume * rate;
    e.se = q.volume * std::sqrt(rate * (1.0 - rate) / static_cast<double>(samples));
    e.samples = samples;
    return e;
}

/// Monte Carlo check of pi_A_eps: per-coordinate draws z_j * u^(1/d) follow
/// the polynomial measure restricted to [0, z_j]; the restriction carries
/// mass V_z^d.
inline McEstimate mc_pi_A_eps(const EpsilonSetQuery& q, std::uint64_t samples, Rng& rng) {
    check_eps_query(q);
    const double dd = static_cast<double>(q.d);
    const double zj = std::pow(q.volume, 1.0 / dd);
    const double mass = std::pow(q.volume, dd);
    std::uint64_t hits = 0;
    for (std::uint64_t s = 0; s < samples; ++s) {
        double v = 1.0;
        for (std::size_t j = 0; j < q.d; ++j)
            v *= zj * std::pow(rng.uniform01(), 1.0 / dd);
        if (q.volume - v <= q.eps) ++hits;
    }
    const double rate = static_cast<double>(hits) / static_cast<double>(samples);
    McEstimate e;
    e.value = mass * rate;
    e.se = mass * std::sqrt(rate * (1.0 - rate) / static_cast<double>(samples));
    e.samples = samples;
    return e;
}

/// Monte Carlo frequency of a multi-index being critical over uniformly
/// random n-point sets in [0,1)^d.
inline McEstimate mc_prob_critical(std::span<const std::size_t> iota, std::size_t n,
                                   std::size_t d, BoxKind kind, std::uint64_t samples,
                                   Rng& rng) {
    std::uint64_t hits = 0;
    std::vector<double> coords(n * d);
    std::vector<double> y(d);
    for (std::uint64_t s = 0; s < samples; ++s) {
        for (auto& c : coords) c = rng.uniform01();
        PointSet X(n, d, coords);
        CoordinateGrids grids(X);
        bool valid = true;
        for (std::size_t j = 0; j < d && valid; ++j) {
            const auto bar = grids.gamma_bar(j);
            if (bar.size() != n + 1) valid = false; // duplicate draw, null event
            else y[j] = bar[iota[j] - 1];
        }
        if (valid && is_critical(y, X, kind)) ++hits;
    }
    const double rate = static_cast<double>(hits) / static_cast<double>(samples);
    McEstimate e;
    e.value = rate;
    e.se = std::sqrt(rate * (1.0 - rate) / static_cast<double>(samples));
    e.samples = samples;
    return e;
}

enum class SamplingMeasure { lebesgue, poly };

/// Empirical frequency of delta(x*) - delta(r) <= eps over R independent
/// draws of r, where x* is the exact delta-argmax of X. The frequency is
/// lower-bounded by eps^d/d! for Lebesgue draws and eps^d for polynomial
/// draws.
inline McEstimate verify_sampling_bound(const PointSet& X, double eps,
                                        SamplingMeasure measure, std::uint64_t samples,
                                        Rng& rng) {
    const auto exact = exact_star_discrepancy(X);
    const double vstar = box_volume(exact.delta_witness);
    if (!(vstar >= eps))
        throw std::invalid_argument("verify_sampling_bound needs V_{x*} >= eps");
    const std::size_t d = X.dimension();
    std::uint64_t hits = 0;
    std::vector<double> r(d);
    for (std::uint64_t s = 0; s < samples; ++s) {
        if (measure == SamplingMeasure::lebesgue)
            for (auto& c : r) c = rng.uniform01();
        else
            r = sample_pi(d, rng);
        if (exact.delta_max - evaluate_box(r, X).delta <= eps) ++hits;
    }
    const double rate = static_cast<double>(hits) / static_cast<double>(samples);
    McEstimate e;
    e.value = rate;
    e.se = std::sqrt(rate * (1.0 - rate) / static_cast<double>(samples));
    e.samples = samples;
    return e;
}

} // namespace stardisc
