#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

#include "stardisc/geometry.hpp"
#include "stardisc/rng.hpp"

namespace stardisc {

/// Draws one point from the polynomial product measure on [0,1]^d, density
/// d*r^(d-1) per coordinate: sample z uniformly and take z^(1/d) per
/// coordinate. In dimension 1 this is the uniform distribution.
inline std::vector<double> sample_pi(std::size_t d, Rng& rng) {
    if (d < 1) throw std::invalid_argument("sample_pi: d >= 1 required");
    std::vector<double> y(d);
    const double inv_d = 1.0 / static_cast<double>(d);
    for (std::size_t j = 0; j < d; ++j) y[j] = std::pow(rng.uniform01(), inv_d);
    return y;
}

/// Continuous neighborhood of a grid point: mc coordinates chosen uniformly
/// at random each get a real interval [xi, eta] whose bounds sit l positions
/// below/above the coordinate in the zero-extended ordering of
/// Gamma_bar_j + {0}, with index clamping at both ends. The remaining
/// coordinates stay fixed.
struct NeighborhoodSpec {
    std::vector<double> center;
    std::vector<std::size_t> chosen;           // coordinate indices, mc of them
    std::vector<std::pair<double, double>> bounds; // [xi, eta] per chosen coord
    std::size_t ell = 1;
};

inline NeighborhoodSpec build_neighborhood(std::span<const double> x, std::size_t mc,
                                           std::size_t ell, const CoordinateGrids& grids,
                                           Rng& rng) {
    const std::size_t d = grids.dimension();
    if (x.size() != d) throw std::invalid_argument("neighborhood center dimension mismatch");
    if (mc < 1 || mc > d) throw std::invalid_argument("neighborhood needs 1 <= mc <= d");
    if (ell < 1) throw std::invalid_argument("neighborhood needs ell >= 1");

    NeighborhoodSpec spec;
    spec.center.assign(x.begin(), x.end());
    spec.ell = ell;

    // uniform mc-subset by partial Fisher-Yates
    std::vector<std::size_t> perm(d);
    for (std::size_t j = 0; j < d; ++j) perm[j] = j;
    for (std::size_t j = 0; j < mc; ++j)
        std::swap(perm[j], perm[j + rng.below(d - j)]);
    spec.chosen.assign(perm.begin(), perm.begin() + mc);
    std::sort(spec.chosen.begin(), spec.chosen.end());

    for (std::size_t c : spec.chosen) {
        const auto bar = grids.gamma_bar(c);
        // zero-extended ordering: position 0 is the value 0, positions
        // 1..|gamma_bar| are the grid values
        std::size_t pos;
        if (x[c] == 0.0) {
            pos = 0;
        } else {
            pos = grids.index_of(c, x[c]) + 1;
        }
        const std::size_t size = bar.size() + 1;
        const std::size_t lo = pos > ell ? pos - ell : 0;
        const std::size_t hi = std::min(size - 1, pos + ell);
        const double xi = lo == 0 ? 0.0 : bar[lo - 1];
        const double eta = hi == 0 ? 0.0 : bar[hi - 1];
        spec.bounds.emplace_back(xi, eta);
    }
    return spec;
}

/// Maps [xi, eta] onto [0,1] by the polynomial measure's distribution
/// function restricted to the interval.
inline double psi(double r, double xi, double eta, std::size_t d) {
    const double a = std::pow(xi, static_cast<double>(d));
    const double b = std::pow(eta, static_cast<double>(d));
    return (std::pow(r, static_cast<double>(d)) - a) / (b - a);
}

inline double psi_inverse(double s, double xi, double eta, std::size_t d) {
    const double a = std::pow(xi, static_cast<double>(d));
    const double b = std::pow(eta, static_cast<double>(d));
    const double r = std::pow((b - a) * s + a, 1.0 / static_cast<double>(d));
    return std::clamp(r, xi, eta);
}

/// Samples a point of the neighborhood: chosen coordinates draw s uniform on
/// [0,1) and map through psi_inverse, so each varying coordinate follows the
/// polynomial measure conditioned on its interval. A degenerate interval
/// (xi == eta) keeps the coordinate fixed.
inline std::vector<double> sample_neighbor(const NeighborhoodSpec& spec,
                                           const CoordinateGrids& grids, Rng& rng) {
    std::vector<double> y = spec.center;
    const std::size_t d = grids.dimension();
    for (std::size_t k = 0; k < spec.chosen.size(); ++k) {
        const auto [xi, eta] = spec.bounds[k];
        if (xi == eta) continue;
        y[spec.chosen[k]] = psi_inverse(rng.uniform01(), xi, eta, d);
    }
    return y;
}

/// The three grid roundings of a continuous point: componentwise round-up
/// into Gamma_bar, round-down with the wrap rule (a coordinate below the
/// smallest grid value wraps to the largest data value), and round-down with
/// minimum substitution instead of the wrap. `wrapped` is set iff some
/// coordinate fell below its smallest grid value, i.e. iff down and down_min
/// differ.
struct RoundedTriple {
    std::vector<double> up;       // y+
    std::vector<double> down;     // y-
    std::vector<double> down_min; // y--
    bool wrapped = false;
};

inline RoundedTriple round_to_grid(std::span<const double> y, const CoordinateGrids& grids) {
    const std::size_t d = grids.dimension();
    if (y.size() != d) throw std::invalid_argument("rounding dimension mismatch");
    RoundedTriple r;
    r.up.resize(d);
    r.down.resize(d);
    r.down_min.resize(d);
    for (std::size_t j = 0; j < d; ++j) {
        const auto bar = grids.gamma_bar(j);
        auto it = std::lower_bound(bar.begin(), bar.end(), y[j]);
        r.up[j] = *it; // gamma_bar ends with 1 >= y_j, so it != end
        if (it != bar.begin()) {
            const double down = (*it == y[j]) ? y[j] : *(it - 1);
            r.down[j] = down;
            r.down_min[j] = down;
        } else if (*it == y[j]) {
            r.down[j] = y[j];
            r.down_min[j] = y[j];
        } else {
            r.down[j] = grids.max_data_value(j);
            r.down_min[j] = grids.min_value(j);
            r.wrapped = true;
        }
    }
    return r;
}

} // namespace stardisc
