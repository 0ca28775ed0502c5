#pragma once

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "asptk/engine.hpp"
#include "asptk/generators.hpp"
#include "asptk/stat_features.hpp"

namespace testutil {

using namespace asp;

// Deterministic standard normal via Box-Muller on our own uniform stream.
inline double normal(Rng& rng) {
    double u1 = next_double(rng);
    while (u1 <= 0.0) u1 = next_double(rng);
    const double u2 = next_double(rng);
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * 3.141592653589793 * u2);
}

// Hand-built model with positive weight on the ranking score, enough to make
// sampling follow the pool signal in engine-level tests.
inline LinearModel toy_model(ProblemKind kind) {
    LinearModel m;
    m.w.assign(feature_dim(kind), 0.0);
    m.w[0] = 1.0;   // rank_score
    m.w[1] = 0.25;  // corr_score
    m.b = -0.4;
    return m;
}

// Independent two-pass Pearson reference.
inline double pearson_ref(const std::vector<double>& xs, const std::vector<double>& ys) {
    const std::size_t n = xs.size();
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        mx += xs[i];
        my += ys[i];
    }
    mx /= static_cast<double>(n);
    my /= static_cast<double>(n);
    double cov = 0.0, vx = 0.0, vy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        cov += (xs[i] - mx) * (ys[i] - my);
        vx += (xs[i] - mx) * (xs[i] - mx);
        vy += (ys[i] - my) * (ys[i] - my);
    }
    if (vx <= 0.0 || vy <= 0.0) return 0.0;
    return cov / (std::sqrt(vx) * std::sqrt(vy));
}

// Fills a pool with distinct PS samples (or random tours) of the instance.
inline SamplePool random_pool(const ProblemInstance& inst, std::size_t want, std::uint64_t seed) {
    Rng rng = make_stream(seed, 0xf001ULL);
    return uniform_init(inst, want, rng);
}

inline std::uint64_t fnv1a(const std::string& data, std::uint64_t h = 0xcbf29ce484222325ULL) {
    for (unsigned char c : data) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

} // namespace testutil
