#pragma once

#include <cstdint>
#include <istream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "stardisc/point_set.hpp"

namespace stardisc {

/// Sobol' parameters for one dimension, as one row of a Joe-Kuo direction
/// file: dimension index, primitive-polynomial degree s, coefficient bits a,
/// initial direction numbers m_1..m_s (odd, m_k < 2^k).
struct SobolDirectionRow {
    std::uint32_t dim = 0;
    std::uint32_t degree = 0;
    std::uint32_t a = 0;
    std::vector<std::uint32_t> m;
};

/// Direction-number table covering dimensions 2..max_dimension().
/// Dimension 1 needs no data (van der Corput base 2).
class DirectionTable {
  public:
    DirectionTable() = default;
    explicit DirectionTable(std::vector<SobolDirectionRow> rows) : rows_(std::move(rows)) {}

    std::size_t max_dimension() const { return rows_.size() + 1; }
    const SobolDirectionRow& row_for_dimension(std::size_t dim) const {
        return rows_.at(dim - 2);
    }

  private:
    std::vector<SobolDirectionRow> rows_;
};

/// Parses the Joe-Kuo text format: a header line, then one row
/// "d s a m_1 ... m_s" per dimension, consecutive from dimension 2.
inline DirectionTable parse_sobol_directions(std::istream& in) {
    std::string line;
    if (!std::getline(in, line))
        throw std::invalid_argument("sobol directions: empty stream");
    std::vector<SobolDirectionRow> rows;
    std::size_t lineno = 1;
    auto fail = [&](const std::string& what) {
        throw std::invalid_argument("sobol directions line " + std::to_string(lineno) +
                                    ": " + what);
    };
    while (std::getline(in, line)) {
        ++lineno;
        std::istringstream row(line);
        SobolDirectionRow r;
        if (!(row >> r.dim)) continue; // blank line
        if (!(row >> r.degree >> r.a)) fail("expected 'd s a m_1 ... m_s'");
        if (r.dim != rows.size() + 2) fail("dimensions must be consecutive from 2");
        r.m.resize(r.degree);
        for (std::uint32_t k = 0; k < r.degree; ++k) {
            if (!(row >> r.m[k])) fail("row shorter than its degree");
            if (r.m[k] % 2 == 0) fail("direction number m_" + std::to_string(k + 1) + " is even");
            if (r.m[k] >= (1u << (k + 1)))
                fail("direction number m_" + std::to_string(k + 1) + " >= 2^" +
                     std::to_string(k + 1));
        }
        std::uint32_t extra;
        if (row >> extra) fail("row longer than its degree");
        rows.push_back(std::move(r));
    }
    return DirectionTable(std::move(rows));
}

inline DirectionTable parse_sobol_directions(const std::string& text) {
    std::istringstream in(text);
    return parse_sobol_directions(in);
}

namespace detail {

/// 32-bit direction numbers v_1..v_nbits for one dimension.
inline std::vector<std::uint32_t> sobol_direction_numbers(const SobolDirectionRow& r,
                                                          unsigned nbits) {
    std::vector<std::uint32_t> v(nbits + 1, 0);
    const unsigned s = r.degree;
    for (unsigned k = 1; k <= nbits; ++k) {
        if (k <= s) {
            v[k] = r.m[k - 1] << (32 - k);
        } else {
            v[k] = v[k - s] ^ (v[k - s] >> s);
            for (unsigned i = 1; i < s; ++i)
                if ((r.a >> (s - 1 - i)) & 1u) v[k] ^= v[k - i];
        }
    }
    return v;
}

} // namespace detail

/// Sobol' point set from Joe-Kuo direction numbers, plain digital (binary)
/// construction: point with index m XORs the direction numbers selected by
/// the binary digits of m. Dimension 1 is the van der Corput sequence in
/// base 2; the origin has index 0 and is included only when skip = 0.
inline PointSet generate_sobol(std::size_t n, std::size_t d, const DirectionTable& table,
                               std::uint64_t skip = 0) {
    if (n < 1 || d < 1)
        throw std::invalid_argument("sobol: n >= 1 and d >= 1 required");
    if (d > table.max_dimension())
        throw std::invalid_argument("sobol: direction table covers only " +
                                    std::to_string(table.max_dimension()) + " dimensions");
    const std::uint64_t last = skip + n - 1;
    if (last >= (1ull << 32))
        throw std::invalid_argument("sobol: index range exceeds 2^32");
    unsigned nbits = 1;
    while ((1ull << nbits) <= last) ++nbits;

    std::vector<std::vector<std::uint32_t>> v(d);
    for (std::size_t j = 0; j < d; ++j) {
        if (j == 0) {
            v[j].assign(nbits + 1, 0);
            for (unsigned k = 1; k <= nbits; ++k) v[j][k] = 1u << (32 - k);
        } else {
            v[j] = detail::sobol_direction_numbers(table.row_for_dimension(j + 1), nbits);
        }
    }

    std::vector<double> coords(n * d, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        const std::uint64_t m = skip + i;
        for (std::size_t j = 0; j < d; ++j) {
            std::uint32_t x = 0;
            for (unsigned k = 1; k <= nbits; ++k)
                if ((m >> (k - 1)) & 1ull) x ^= v[j][k];
            coords[i * d + j] = static_cast<double>(x) * 0x1.0p-32;
        }
    }
    return PointSet(n, d, std::move(coords));
}

} // namespace stardisc
