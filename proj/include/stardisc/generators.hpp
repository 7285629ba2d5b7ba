#pragma once

#include <cmath>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "stardisc/point_set.hpp"

namespace stardisc {

inline bool is_prime(std::uint64_t m) {
    if (m < 2) return false;
    if (m % 2 == 0) return m == 2;
    for (std::uint64_t p = 3; p * p <= m; p += 2)
        if (m % p == 0) return false;
    return true;
}

/// First d primes, in order.
inline std::vector<std::uint64_t> first_primes(std::size_t d) {
    std::vector<std::uint64_t> primes;
    for (std::uint64_t c = 2; primes.size() < d; ++c)
        if (is_prime(c)) primes.push_back(c);
    return primes;
}

/// Radical inverse of m in base b: digit-reverse m across the radix point.
inline double radical_inverse(std::uint64_t m, std::uint64_t b) {
    double inv = 1.0 / static_cast<double>(b), f = inv, x = 0.0;
    while (m) {
        x += static_cast<double>(m % b) * f;
        m /= b;
        f *= inv;
    }
    return x;
}

/// Good lattice point set of generating vector (n, h_1..h_d):
/// x^i_j = frac((2 i h_j - 1) / (2n)), i = 1..n. All coordinates are odd
/// multiples of 1/(2n) reduced mod 1.
inline PointSet generate_glp(std::size_t n, const std::vector<std::uint64_t>& h) {
    if (n < 1 || h.empty())
        throw std::invalid_argument("glp: n >= 1 and nonempty h required");
    std::uint64_t prev = 0;
    bool coprime = false;
    for (std::uint64_t hj : h) {
        if (hj <= prev || hj >= n)
            throw std::invalid_argument("glp: need 0 < h_1 < ... < h_d < n");
        if (std::gcd(hj, static_cast<std::uint64_t>(n)) == 1) coprime = true;
        prev = hj;
    }
    if (!coprime)
        throw std::invalid_argument("glp: no h_j coprime with n");
    const std::size_t d = h.size();
    std::vector<double> coords(n * d);
    for (std::size_t i = 1; i <= n; ++i)
        for (std::size_t j = 0; j < d; ++j) {
            std::uint64_t num = (2 * i * h[j] - 1) % (2 * n);
            coords[(i - 1) * d + j] = static_cast<double>(num) / static_cast<double>(2 * n);
        }
    return PointSet(n, d, std::move(coords));
}

/// Halton sequence in the first d prime bases; point i is the radical
/// inverse of start_index + i - 1. start_index = 1 excludes the origin.
inline PointSet generate_halton(std::size_t n, std::size_t d, std::uint64_t start_index = 1) {
    if (n < 1 || d < 1)
        throw std::invalid_argument("halton: n >= 1 and d >= 1 required");
    auto bases = first_primes(d);
    std::vector<double> coords(n * d);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < d; ++j)
            coords[i * d + j] = radical_inverse(start_index + i, bases[j]);
    // radical_inverse is called with start_index + i because point i (1-based)
    // uses integer start_index + i - 1; the loop index i here is 0-based.
    return PointSet(n, d, std::move(coords));
}

/// Faure sequence in base q = smallest prime >= d. Coordinate j applies the
/// (j-1)-th power of the Pascal matrix mod q to the base-q digits, so
/// coordinate 1 is the van der Corput sequence in base q.
/// With skip_origin the sequence starts at index 1.
inline PointSet generate_faure(std::size_t n, std::size_t d, bool skip_origin = true) {
    if (n < 1 || d < 2)
        throw std::invalid_argument("faure: n >= 1 and d >= 2 required");
    std::uint64_t q = d;
    while (!is_prime(q)) ++q;

    const std::uint64_t first = skip_origin ? 1 : 0;
    const std::uint64_t last = first + n - 1;
    std::size_t digits = 1;
    for (std::uint64_t p = q; p <= last; p *= q) ++digits;

    // binom[k][r] = C(k, r) mod q
    std::vector<std::vector<std::uint64_t>> binom(digits, std::vector<std::uint64_t>(digits, 0));
    for (std::size_t k = 0; k < digits; ++k) {
        binom[k][0] = 1;
        for (std::size_t r = 1; r <= k; ++r)
            binom[k][r] = (binom[k - 1][r - 1] + (r <= k - 1 ? binom[k - 1][r] : 0)) % q;
    }

    std::vector<double> coords(n * d);
    std::vector<std::uint64_t> a(digits);
    for (std::size_t i = 0; i < n; ++i) {
        std::uint64_t m = first + i;
        for (std::size_t k = 0; k < digits; ++k) {
            a[k] = m % q;
            m /= q;
        }
        for (std::size_t j = 0; j < d; ++j) {
            // powj[e] = (j mod q)^e; coordinate j+1 uses multiplier j
            std::uint64_t base = j % q;
            double val = 0.0, scale = 1.0 / static_cast<double>(q);
            for (std::size_t r = 0; r < digits; ++r) {
                std::uint64_t b = 0, pw = 1;
                for (std::size_t k = r; k < digits; ++k) {
                    b = (b + binom[k][r] * pw % q * a[k]) % q;
                    pw = pw * base % q;
                }
                val += static_cast<double>(b) * scale;
                scale /= static_cast<double>(q);
            }
            coords[i * d + j] = val;
        }
    }
    return PointSet(n, d, std::move(coords));
}

} // namespace stardisc
