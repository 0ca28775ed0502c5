#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "asptk/pool.hpp"

namespace asp {

// Row-major feature matrix over all decision variables of one instance.
// Columns 0 and 1 are always the normalized ranking and correlation scores.
struct FeatureMatrix {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<double> data;
    std::vector<std::string> names;

    const double* row(std::size_t r) const { return data.data() + r * cols; }
    double at(std::size_t r, std::size_t c) const { return data[r * cols + c]; }
};

// Rank per pool entry (aligned with entry order): best objective gets 1,
// ties broken by ascending canonical encoding.
std::vector<std::size_t> ranks(const SamplePool& pool);

// sum_k s_i^k / r^k over the pool.
double ranking_score_raw(const SamplePool& pool, std::size_t var_index);

// Raw ranking scores divided by their maximum; all zero when the max is zero.
std::vector<double> ranking_scores_normalized(const SamplePool& pool);

// Pearson correlation between the variable's 0/1 values and the pool
// objectives; 0 when either series has zero variance. Needs >= 2 entries.
double correlation_score(const SamplePool& pool, std::size_t var_index);

// Correlation scores divided by the max (maximize) or min (minimize) raw
// score; all zero when the divisor is zero. No clamping.
std::vector<double> correlation_scores_normalized(const SamplePool& pool);

// [ranking_norm, correlation_norm, problem-specific columns];
// one row per decision variable in deterministic order. With fewer than two
// pool entries the correlation column is all zeros (no signal yet).
FeatureMatrix assemble_features(const ProblemInstance& inst, const SamplePool& pool);

void save_features_csv(const FeatureMatrix& f, const std::string& path);

} // namespace asp
