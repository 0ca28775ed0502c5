#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "asptk/linear_model.hpp"
#include "asptk/pool.hpp"
#include "asptk/stat_features.hpp"

namespace asp {

struct AspConfig {
    int iterations = 10;             // T
    std::size_t samples = 0;         // M per iteration; 0 -> problem default (n / 20n / 50n)
    std::size_t init_samples = 0;    // initial pool size and capacity; 0 -> same as M
    std::uint64_t seed = 1;
    double pinned_fraction = -1.0;   // <0 -> problem default (0.5 for TSP, else 0)
    int stall_limit = 0;             // stop after this many iterations without pool change; 0 = off
    std::int64_t time_budget_ms = 0; // 0 = no time budget
    int threads = 1;
};

struct IterRecord {
    int iteration = 0;
    double best_pool_obj = 0.0;
    double best_iter_obj = 0.0;
    std::optional<double> avg_precision;
    std::int64_t elapsed_ms = 0;
};

struct AspTrace {
    std::vector<IterRecord> rows;
};

struct AspResult {
    std::vector<double> prediction;
    Solution best_solution;
    double best_objective = 0.0;
    AspTrace trace;
    FeatureMatrix last_features; // inputs of the returned prediction
};

// Invoked for every feasible solution the engine constructs (initial pool,
// guided samples, greedy tours), before pool filtering.
using SampleObserver = std::function<void(const Solution&, double)>;

// Per-problem default sample size per iteration.
std::size_t default_samples(const ProblemInstance& inst);
double default_pinned_fraction(ProblemKind kind);

// One constructive pass: repeatedly fix a variable drawn with probability
// proportional to p over the candidate set, then drop conflicting candidates.
// sample_index selects the TSP start city (sample_index mod n).
Solution probabilistic_sample(const ProblemInstance& inst, const std::vector<double>& p,
                              std::size_t sample_index, Rng& rng);

// Pool of up to M unique feasible solutions: uniform PS for MWCP/OP, random
// permutations for TSP; duplicates redrawn up to 10*M attempts.
SamplePool uniform_init(const ProblemInstance& inst, std::size_t M, Rng& rng,
                        const SampleObserver& observer = {});

// The replacement policy of the main loop; returns whether the pool changed.
bool pool_update(SamplePool& pool, Solution candidate, double objective);

// Full run: init pool, then T rounds of assemble-features / predict / sample /
// pool-update. Returns the last prediction, the best solution ever pooled, and
// the per-iteration trace. Deterministic for a fixed seed and any thread count.
AspResult asp_run(const ProblemInstance& inst, const LinearModel& model, const Calibration& cal,
                  const AspConfig& config, const Solution* optimum = nullptr,
                  const SampleObserver& observer = {});

// Trace CSV: iteration,best_pool_obj,best_iter_obj,avg_precision,elapsed_ms.
void save_trace_csv(const AspTrace& trace, const std::string& path);

} // namespace asp
