#pragma once

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <span>
#include <stdexcept>
#include <vector>

#include "stardisc/geometry.hpp"
#include "stardisc/point_set.hpp"
#include "stardisc/rng.hpp"

namespace stardisc {

enum class BoxKind { open, closed };

/// Snapping down: shrink the closed box [0, y] to the componentwise maximum
/// of the points it contains. The result keeps the closed count of y and is
/// delta_bar-critical whenever the box is non-empty; an empty box yields the
/// origin. Deterministic, O(nd).
inline std::vector<double> snap_down(std::span<const double> y, const PointSet& X) {
    const std::size_t n = X.size(), d = X.dimension();
    std::vector<double> out(d, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        auto p = X.point(i);
        bool inside = true;
        for (std::size_t j = 0; j < d; ++j)
            if (!(p[j] <= y[j])) { inside = false; break; }
        if (!inside) continue;
        for (std::size_t j = 0; j < d; ++j)
            if (p[j] > out[j]) out[j] = p[j];
    }
    return out;
}

/// Snapping up: grow the open box [0, y) to a delta-critical corner without
/// letting new points in. First pass: starting from (1,...,1), each point
/// that would enter the candidate box clamps one coordinate, chosen as the
/// first coordinate in a uniformly random permutation order where the point
/// sits at or above y. A clamp can strip an earlier surface of its witness
/// point, so a second pass raises every witness-less coordinate to the
/// nearest blocking value (or to 1); raises never let a point in and never
/// invalidate other witnesses. Points are visited in storage order, so the
/// output depends only on (X, y, sigma). O(nd).
inline std::vector<double> snap_up(std::span<const double> y, const PointSet& X, Rng& rng) {
    const std::size_t n = X.size(), d = X.dimension();
    std::vector<std::size_t> sigma(d);
    std::iota(sigma.begin(), sigma.end(), std::size_t{0});
    for (std::size_t j = d; j > 1; --j)
        std::swap(sigma[j - 1], sigma[rng.below(j)]);

    std::vector<double> out(d, 1.0);
    for (std::size_t i = 0; i < n; ++i) {
        auto p = X.point(i);
        bool in_target = true;  // p inside [0, y)
        bool blocked = false;   // p already outside the candidate open box
        for (std::size_t j = 0; j < d; ++j) {
            if (!(p[j] < y[j])) in_target = false;
            if (p[j] >= out[j]) blocked = true;
        }
        if (in_target || blocked) continue;
        for (std::size_t j = 0; j < d; ++j) {
            std::size_t c = sigma[j];
            if (p[c] >= y[c]) { out[c] = p[c]; break; }
        }
    }

    // raise phase. viol[i] counts coordinates with p >= out, viol_sum[i] the
    // sum of their indices; a point with viol == 1 and viol_sum == c either
    // witnesses surface c (p[c] == out[c]) or bounds how far it can raise.
    std::vector<std::uint32_t> viol(n, 0);
    std::vector<std::size_t> viol_sum(n, 0);
    for (std::size_t i = 0; i < n; ++i) {
        auto p = X.point(i);
        for (std::size_t j = 0; j < d; ++j)
            if (p[j] >= out[j]) { ++viol[i]; viol_sum[i] += j; }
    }
    for (std::size_t j = 0; j < d; ++j) {
        const std::size_t c = sigma[j];
        if (out[c] == 1.0) continue;
        bool witnessed = false;
        double raise_to = 1.0;
        for (std::size_t i = 0; i < n; ++i) {
            if (viol[i] != 1 || viol_sum[i] != c) continue;
            const double pc = X.coord(i, c);
            if (pc == out[c]) { witnessed = true; break; }
            raise_to = std::min(raise_to, pc);
        }
        if (witnessed) continue;
        const double old = out[c];
        out[c] = raise_to;
        for (std::size_t i = 0; i < n; ++i) {
            const double pc = X.coord(i, c);
            if (pc >= old && pc < out[c]) { --viol[i]; viol_sum[i] -= c; }
        }
    }
    return out;
}

/// True iff every facet surface of the box at y is critical: for the open
/// kind, surface j must contain a data point or sit at y_j = 1; for the
/// closed kind it must contain a data point. Single O(nd) pass.
inline bool is_critical(std::span<const double> y, const PointSet& X, BoxKind kind) {
    const std::size_t n = X.size(), d = X.dimension();
    std::vector<char> hit(d, 0);
    if (kind == BoxKind::open)
        for (std::size_t j = 0; j < d; ++j)
            if (y[j] == 1.0) hit[j] = 1;
    for (std::size_t i = 0; i < n; ++i) {
        auto p = X.point(i);
        if (kind == BoxKind::open) {
            // needs x_j == y_j in exactly one coordinate, strictly below
            // elsewhere
            std::size_t eq = d, less = 0;
            for (std::size_t j = 0; j < d; ++j) {
                if (p[j] == y[j]) { if (eq != d) { eq = d + 1; break; } eq = j; }
                else if (p[j] < y[j]) ++less;
                else { eq = d + 1; break; }
            }
            if (eq < d && less == d - 1) hit[eq] = 1;
        } else {
            bool inside = true;
            for (std::size_t j = 0; j < d; ++j)
                if (!(p[j] <= y[j])) { inside = false; break; }
            if (inside)
                for (std::size_t j = 0; j < d; ++j)
                    if (p[j] == y[j]) hit[j] = 1;
        }
    }
    return std::all_of(hit.begin(), hit.end(), [](char c) { return c != 0; });
}

} // namespace stardisc
