#pragma once

#include <cstddef>
#include <cstdio>
#include <istream>
#include <ostream>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace stardisc {

/// n points in the half-open unit cube [0,1)^d, stored row-major.
/// Immutable after construction; safe to share across concurrent trials.
class PointSet {
  public:
    PointSet(std::size_t n, std::size_t d, std::vector<double> coords)
        : n_(n), d_(d), coords_(std::move(coords)) {
        if (n_ < 1 || d_ < 1)
            throw std::invalid_argument("point set needs n >= 1 and d >= 1");
        if (coords_.size() != n_ * d_)
            throw std::invalid_argument("coordinate array does not match n x d");
        for (double c : coords_)
            if (!(c >= 0.0 && c < 1.0))
                throw std::invalid_argument("coordinate outside [0,1)");
    }

    std::size_t size() const { return n_; }
    std::size_t dimension() const { return d_; }

    double coord(std::size_t i, std::size_t j) const { return coords_[i * d_ + j]; }
    std::span<const double> point(std::size_t i) const {
        return {coords_.data() + i * d_, d_};
    }
    const std::vector<double>& coords() const { return coords_; }

  private:
    std::size_t n_;
    std::size_t d_;
    std::vector<double> coords_;
};

/// Reads the plain-text point format: one point per line, d whitespace-
/// separated values in [0,1); lines starting with '#' are comments.
/// d is inferred from the first data line and enforced on the rest.
inline PointSet read_pointset(std::istream& in) {
    std::vector<double> coords;
    std::size_t d = 0, n = 0, lineno = 0;
    std::string line;
    while (std::getline(in, line)) {
        ++lineno;
        std::size_t start = line.find_first_not_of(" \t\r");
        if (start == std::string::npos || line[start] == '#') continue;
        std::istringstream row(line);
        std::vector<double> vals;
        double v;
        while (row >> v) vals.push_back(v);
        if (!row.eof())
            throw std::invalid_argument("line " + std::to_string(lineno) +
                                        ": malformed number");
        if (vals.empty()) continue;
        if (d == 0) d = vals.size();
        if (vals.size() != d)
            throw std::invalid_argument("line " + std::to_string(lineno) +
                                        ": expected " + std::to_string(d) +
                                        " columns, got " + std::to_string(vals.size()));
        for (double c : vals)
            if (!(c >= 0.0 && c < 1.0))
                throw std::invalid_argument("line " + std::to_string(lineno) +
                                            ": coordinate outside [0,1)");
        coords.insert(coords.end(), vals.begin(), vals.end());
        ++n;
    }
    if (n == 0) throw std::invalid_argument("empty point set file");
    return PointSet(n, d, std::move(coords));
}

/// Writes the text format above at 17 significant digits, which makes
/// write/read round trips lossless for doubles.
inline void write_pointset(std::ostream& out, const PointSet& X) {
    out << "# n=" << X.size() << " d=" << X.dimension() << "\n";
    char buf[32];
    for (std::size_t i = 0; i < X.size(); ++i) {
        for (std::size_t j = 0; j < X.dimension(); ++j) {
            std::snprintf(buf, sizeof buf, "%.17g", X.coord(i, j));
            out << (j ? " " : "") << buf;
        }
        out << "\n";
    }
}

} // namespace stardisc
