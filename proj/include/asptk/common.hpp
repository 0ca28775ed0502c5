#pragma once

#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace asp {

// Error taxonomy, mapped to CLI exit codes by the front end.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Malformed or inconsistent input: bad files, bad dimensions, empty classes. Exit code 2.
class BadInput : public Error {
public:
    using Error::Error;
};

// A desk-scale oracle was asked to solve an instance above its guard. Exit code 3.
class OracleGuard : public Error {
public:
    using Error::Error;
};

// Numerical breakdown (degenerate pivots, non-finite values). Exit code 4.
class NumericalFailure : public Error {
public:
    using Error::Error;
};

using Rng = std::mt19937_64;

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// Independent RNG stream for (seed, a, b), e.g. (run seed, iteration, sample index).
inline Rng make_stream(std::uint64_t seed, std::uint64_t a = 0, std::uint64_t b = 0) {
    const std::uint64_t s = splitmix64(splitmix64(seed ^ 0x5851f42d4c957f2dULL) + a);
    return Rng(splitmix64(s + b));
}

// Uniform double in [0, 1). Hand-rolled so that results do not depend on the
// standard library's distribution implementation.
inline double next_double(Rng& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// Uniform integer in [0, n) without modulo bias.
inline std::uint64_t next_below(Rng& rng, std::uint64_t n) {
    if (n == 0) throw Error("next_below: empty range");
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    std::uint64_t v = rng();
    while (v >= limit) v = rng();
    return v % n;
}

// Draws an index with probability weights[i] / sum(weights); uniform fallback
// when the total mass is zero.
std::size_t weighted_draw(Rng& rng, const std::vector<double>& weights);

} // namespace asp
