#pragma once

#include <algorithm>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

#include "stardisc/point_set.hpp"

namespace stardisc {

/// Per-dimension sorted coordinate grids. gamma_bar(j) is the sorted set of
/// distinct j-th coordinates with 1 appended; since all coordinates are
/// strictly below 1, the final entry is always the appended 1.
class CoordinateGrids {
  public:
    explicit CoordinateGrids(const PointSet& X) : grids_(X.dimension()) {
        for (std::size_t j = 0; j < X.dimension(); ++j) {
            auto& g = grids_[j];
            g.reserve(X.size() + 1);
            for (std::size_t i = 0; i < X.size(); ++i) g.push_back(X.coord(i, j));
            std::sort(g.begin(), g.end());
            g.erase(std::unique(g.begin(), g.end()), g.end());
            g.push_back(1.0);
        }
    }

    std::size_t dimension() const { return grids_.size(); }

    /// Gamma_bar_j: distinct coordinate values plus 1, sorted ascending.
    std::span<const double> gamma_bar(std::size_t j) const { return grids_[j]; }

    /// Gamma_j: the data values only (drops the trailing 1).
    std::span<const double> gamma(std::size_t j) const {
        return {grids_[j].data(), grids_[j].size() - 1};
    }

    double min_value(std::size_t j) const { return grids_[j].front(); }
    double max_data_value(std::size_t j) const { return grids_[j][grids_[j].size() - 2]; }

    /// Index of value v in gamma_bar(j) (0-based). v must be a grid value;
    /// membership is bit-exact, no epsilon comparisons.
    std::size_t index_of(std::size_t j, double v) const {
        const auto& g = grids_[j];
        auto it = std::lower_bound(g.begin(), g.end(), v);
        if (it == g.end() || *it != v)
            throw std::invalid_argument("value is not on the coordinate grid");
        return static_cast<std::size_t>(it - g.begin());
    }

  private:
    std::vector<std::vector<double>> grids_;
};

inline CoordinateGrids build_grids(const PointSet& X) { return CoordinateGrids(X); }

/// A test-box corner with its volume, point counts and local discrepancies:
/// delta = V_y - A/n (open box deficit), delta_bar = Abar/n - V_y (closed box
/// surplus), delta_star = max of the two.
struct BoxEval {
    std::vector<double> y;
    double volume = 0.0;
    std::size_t open_count = 0;   // A: points strictly inside [0, y)
    std::size_t closed_count = 0; // Abar: points inside [0, y]
    double delta = 0.0;
    double delta_bar = 0.0;
    double delta_star = 0.0;
};

/// Volume of [0, y) as the left-to-right coordinate product. Every code path
/// that reports a discrepancy value uses this same fold so that equal boxes
/// produce bit-equal values.
inline double box_volume(std::span<const double> y) {
    double v = 1.0;
    for (double c : y) v *= c;
    return v;
}

inline double delta_value(double volume, std::size_t open_count, std::size_t n) {
    return volume - static_cast<double>(open_count) / static_cast<double>(n);
}

inline double delta_bar_value(double volume, std::size_t closed_count, std::size_t n) {
    return static_cast<double>(closed_count) / static_cast<double>(n) - volume;
}

/// Counts points of X in the open and closed boxes at corner y and fills in
/// the local discrepancy values. O(nd).
inline BoxEval evaluate_box(std::span<const double> y, const PointSet& X) {
    const std::size_t n = X.size(), d = X.dimension();
    if (y.size() != d) throw std::invalid_argument("corner dimension mismatch");
    BoxEval r;
    r.y.assign(y.begin(), y.end());
    for (std::size_t i = 0; i < n; ++i) {
        auto p = X.point(i);
        bool open = true, closed = true;
        for (std::size_t j = 0; j < d; ++j) {
            if (!(p[j] < y[j])) open = false;
            if (!(p[j] <= y[j])) { closed = false; break; }
        }
        if (open) ++r.open_count;
        if (closed) ++r.closed_count;
    }
    r.volume = box_volume(y);
    r.delta = delta_value(r.volume, r.open_count, n);
    r.delta_bar = delta_bar_value(r.volume, r.closed_count, n);
    r.delta_star = std::max(r.delta, r.delta_bar);
    return r;
}

} // namespace stardisc
