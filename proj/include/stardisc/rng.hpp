#pragma once

#include <cstdint>
#include <random>

namespace stardisc {

/// splitmix64 mixing step (Steele, Lea, Flood 2014). Used both as a
/// stand-alone hash and to derive per-trial seeds from a master seed.
inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

/// Seed for trial number `trial` derived from `master`. Adding trials to an
/// experiment never perturbs the streams of earlier trials.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t trial) {
    return splitmix64(splitmix64(master) + trial);
}

/// Seedable RNG with a fixed identity: std::mt19937_64 for the raw stream,
/// doubles built from the top 53 bits, bounded integers by rejection.
/// Results are reproducible across platforms for a given seed.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    /// Uniform double in [0, 1).
    double uniform01() {
        return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    }

    /// Uniform integer in [0, n). Rejection sampling, no modulo bias.
    std::uint64_t below(std::uint64_t n) {
        if (n <= 1) return 0;
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
        std::uint64_t v = engine_();
        while (v >= limit) v = engine_();
        return v % n;
    }

    /// Uniform integer in [lo, hi] inclusive.
    std::uint64_t between(std::uint64_t lo, std::uint64_t hi) {
        return lo + below(hi - lo + 1);
    }

  private:
    std::mt19937_64 engine_;
};

} // namespace stardisc
