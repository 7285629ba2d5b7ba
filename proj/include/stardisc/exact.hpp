#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "stardisc/geometry.hpp"
#include "stardisc/point_set.hpp"
#include "stardisc/snapping.hpp"

namespace stardisc {

/// Thrown when the coordinate-index lattice is larger than the caller's node
/// budget. Enumeration refuses rather than truncating.
class budget_exceeded : public std::runtime_error {
  public:
    budget_exceeded(double lattice_size, std::uint64_t budget)
        : std::runtime_error("lattice has " + std::to_string(lattice_size) +
                             " nodes, budget is " + std::to_string(budget)),
          lattice_size(lattice_size), budget(budget) {}
    double lattice_size;
    std::uint64_t budget;
};

constexpr std::uint64_t kDefaultNodeBudget = 1'000'000'000ull;

enum class Side { delta, delta_bar };

/// Result of exact enumeration: the star discrepancy, the grid point where it
/// is attained and which of the two maxima attained it, plus the one-sided
/// maxima with their own witnesses. Witness ties break toward the
/// lexicographically smallest grid index; the value, not the witness, is the
/// contract.
struct ExactResult {
    double value = 0.0;
    std::vector<double> witness;
    Side side = Side::delta;
    double delta_max = -std::numeric_limits<double>::infinity();
    std::vector<double> delta_witness;
    double delta_bar_max = -std::numeric_limits<double>::infinity();
    std::vector<double> delta_bar_witness;
};

inline double lattice_size(const CoordinateGrids& grids) {
    double size = 1.0;
    for (std::size_t j = 0; j < grids.dimension(); ++j)
        size *= static_cast<double>(grids.gamma_bar(j).size());
    return size;
}

namespace detail {

/// Depth-first enumeration of the grid maxima behind the star discrepancy:
/// max of delta over Gamma_bar and max of delta_bar over Gamma. Each level
/// keeps the sublists of points compatible with the chosen prefix (strict
/// comparisons for the open count, non-strict for the closed count) bucketed
/// by per-level coordinate rank, so a node costs O(sublist + grid width)
/// rather than O(n) from scratch. Subtrees whose compatible sublist is empty
/// collapse to two closed-form candidates, and subtrees whose value bounds
/// (delta <= prefix volume, delta_bar <= sublist size / n) cannot beat the
/// running maxima are pruned.
class ExactEnumerator {
  public:
    ExactEnumerator(const PointSet& X, const CoordinateGrids& grids)
        : X_(X), grids_(grids), n_(X.size()), d_(X.dimension()) {
        rank_.assign(n_ * d_, 0);
        for (std::size_t i = 0; i < n_; ++i)
            for (std::size_t j = 0; j < d_; ++j)
                rank_[i * d_ + j] =
                    static_cast<std::uint32_t>(grids_.index_of(j, X_.coord(i, j)));
        open_.assign(d_ + 1, {});
        closed_.assign(d_ + 1, {});
        sorted_open_.assign(d_, {});
        sorted_closed_.assign(d_, {});
        open_cuts_.assign(d_, {});
        closed_cuts_.assign(d_, {});
        for (std::size_t l = 0; l < d_; ++l) {
            open_[l].reserve(n_);
            closed_[l].reserve(n_);
            sorted_open_[l].reserve(n_);
            sorted_closed_[l].reserve(n_);
            open_cuts_[l].reserve(n_ + 2);
            closed_cuts_[l].reserve(n_ + 2);
        }
        open_[d_].reserve(n_);
        closed_[d_].reserve(n_);
        prefix_.assign(d_, 0.0);
    }

    ExactResult run() {
        open_[0].resize(n_);
        closed_[0].resize(n_);
        for (std::uint32_t i = 0; i < static_cast<std::uint32_t>(n_); ++i)
            open_[0][i] = closed_[0][i] = i;
        recurse(0, 1.0, true);
        ExactResult r;
        r.delta_max = best_delta_;
        r.delta_witness = delta_witness_;
        r.delta_bar_max = best_delta_bar_;
        r.delta_bar_witness = delta_bar_witness_;
        if (best_delta_ >= best_delta_bar_) {
            r.value = best_delta_;
            r.witness = delta_witness_;
            r.side = Side::delta;
        } else {
            r.value = best_delta_bar_;
            r.witness = delta_bar_witness_;
            r.side = Side::delta_bar;
        }
        return r;
    }

  private:
    void recurse(std::size_t level, double volume, bool in_gamma) {
        const auto& open = open_[level];
        const auto& closed = closed_[level];

        if (closed.empty()) {
            // Every completion has A = Abar = 0: delta peaks at the all-ones
            // corner, delta_bar at the smallest data corner.
            if (delta_value(volume, 0, n_) > best_delta_) {
                best_delta_ = delta_value(volume, 0, n_);
                delta_witness_.assign(prefix_.begin(), prefix_.begin() + level);
                delta_witness_.resize(d_, 1.0);
            }
            if (in_gamma) {
                double v = volume;
                for (std::size_t j = level; j < d_; ++j) v *= grids_.min_value(j);
                if (delta_bar_value(v, 0, n_) > best_delta_bar_) {
                    best_delta_bar_ = delta_bar_value(v, 0, n_);
                    delta_bar_witness_.assign(prefix_.begin(), prefix_.begin() + level);
                    for (std::size_t j = level; j < d_; ++j)
                        delta_bar_witness_.push_back(grids_.min_value(j));
                }
            }
            return;
        }

        const double bar_bound =
            in_gamma ? static_cast<double>(closed.size()) / static_cast<double>(n_)
                     : -std::numeric_limits<double>::infinity();
        if (volume <= best_delta_ && bar_bound <= best_delta_bar_) return;

        const auto grid = grids_.gamma_bar(level);
        const std::size_t width = grid.size();

        auto& sorted_open = sorted_open_[level];
        auto& sorted_closed = sorted_closed_[level];
        auto& ocuts = open_cuts_[level];
        auto& ccuts = closed_cuts_[level];
        bucket_by_rank(open, level, width, sorted_open, ocuts);
        bucket_by_rank(closed, level, width, sorted_closed, ccuts);
        // ocuts[g] = #open points with rank < g, so A at corner grid[g] is
        // ocuts[g]; Abar at grid[g] is ccuts[g+1] (rank <= g).

        if (level + 1 == d_) {
            for (std::size_t g = 0; g < width; ++g) {
                const double v = volume * grid[g];
                const double dv = delta_value(v, ocuts[g], n_);
                if (dv > best_delta_) {
                    prefix_[level] = grid[g];
                    best_delta_ = dv;
                    delta_witness_.assign(prefix_.begin(), prefix_.end());
                }
                if (in_gamma && g + 1 < width) {
                    const double bv = delta_bar_value(v, ccuts[g + 1], n_);
                    if (bv > best_delta_bar_) {
                        prefix_[level] = grid[g];
                        best_delta_bar_ = bv;
                        delta_bar_witness_.assign(prefix_.begin(), prefix_.end());
                    }
                }
            }
            return;
        }

        for (std::size_t g = 0; g < width; ++g) {
            prefix_[level] = grid[g];
            open_[level + 1].assign(sorted_open.begin(), sorted_open.begin() + ocuts[g]);
            closed_[level + 1].assign(sorted_closed.begin(),
                                      sorted_closed.begin() + ccuts[g + 1]);
            recurse(level + 1, volume * grid[g], in_gamma && g + 1 < width);
        }
    }

    /// Counting sort of `ids` by rank in dimension `level`. Afterwards
    /// cuts[g] = #points with rank < g for g = 0..width and `out` holds the
    /// ids in rank order.
    void bucket_by_rank(const std::vector<std::uint32_t>& ids, std::size_t level,
                        std::size_t width, std::vector<std::uint32_t>& out,
                        std::vector<std::uint32_t>& cuts) {
        cuts.assign(width + 1, 0);
        for (std::uint32_t id : ids) ++cuts[rank_[id * d_ + level] + 1];
        for (std::size_t g = 1; g <= width; ++g) cuts[g] += cuts[g - 1];
        out.resize(ids.size());
        scatter_.assign(cuts.begin(), cuts.end());
        for (std::uint32_t id : ids) out[scatter_[rank_[id * d_ + level]]++] = id;
    }

    const PointSet& X_;
    const CoordinateGrids& grids_;
    std::size_t n_, d_;
    std::vector<std::uint32_t> rank_;
    std::vector<std::vector<std::uint32_t>> open_, closed_;
    std::vector<std::vector<std::uint32_t>> sorted_open_, sorted_closed_;
    std::vector<std::vector<std::uint32_t>> open_cuts_, closed_cuts_;
    std::vector<std::uint32_t> scatter_;
    std::vector<double> prefix_;
    double best_delta_ = -std::numeric_limits<double>::infinity();
    double best_delta_bar_ = -std::numeric_limits<double>::infinity();
    std::vector<double> delta_witness_, delta_bar_witness_;
};

} // namespace detail

/// Exact star discrepancy by grid enumeration: the maximum of delta over the
/// closed grid Gamma_bar and of delta_bar over the data grid Gamma. Refuses
/// with budget_exceeded when the lattice holds more nodes than `budget`.
inline ExactResult exact_star_discrepancy(const PointSet& X,
                                          std::uint64_t budget = kDefaultNodeBudget) {
    CoordinateGrids grids(X);
    const double size = lattice_size(grids);
    if (size > static_cast<double>(budget)) throw budget_exceeded(size, budget);
    detail::ExactEnumerator e(X, grids);
    return e.run();
}

/// Closed-form 1-D star discrepancy: with sorted points x_(1) <= ... <= x_(n),
/// max_i max(i/n - x_(i), x_(i) - (i-1)/n).
inline double exact_1d(const PointSet& X) {
    if (X.dimension() != 1)
        throw std::invalid_argument("exact_1d: point set must be one-dimensional");
    std::vector<double> xs(X.coords());
    std::sort(xs.begin(), xs.end());
    const double n = static_cast<double>(xs.size());
    double best = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        best = std::max(best, static_cast<double>(i + 1) / n - xs[i]);
        best = std::max(best, xs[i] - static_cast<double>(i) / n);
    }
    return best;
}

/// All critical grid points of the requested kind, by filtering the full grid
/// lattice. Intended for small instances; refuses over budget.
inline std::vector<std::vector<double>> enumerate_critical(
    const PointSet& X, BoxKind kind, std::uint64_t budget = kDefaultNodeBudget) {
    CoordinateGrids grids(X);
    const double size = lattice_size(grids);
    if (size > static_cast<double>(budget)) throw budget_exceeded(size, budget);
    const std::size_t d = X.dimension();
    std::vector<std::vector<double>> out;
    std::vector<std::size_t> idx(d, 0);
    std::vector<double> y(d);
    bool done = false;
    while (!done) {
        for (std::size_t j = 0; j < d; ++j) y[j] = grids.gamma_bar(j)[idx[j]];
        if (is_critical(y, X, kind)) out.push_back(y);
        done = true;
        for (std::size_t j = d; j > 0; --j) {
            if (++idx[j - 1] < grids.gamma_bar(j - 1).size()) { done = false; break; }
            idx[j - 1] = 0;
        }
    }
    return out;
}

} // namespace stardisc
