#pragma once

#include <cstdint>
#include <vector>

#include "asptk/engine.hpp"
#include "asptk/oracles.hpp"

namespace asp {

// One example per decision variable of each labeled instance: features from
// an initial uniform pool (the same routine the engine uses), label 1 iff the
// variable is in the known optimum.
std::vector<TrainingExample> build_training_set(const std::vector<LabeledInstance>& labeled,
                                                std::size_t m_init, std::uint64_t seed);

struct TuneConfig {
    int trials = 32;
    int iterations = 5;       // T of the scoring runs
    std::size_t samples = 0;  // M of the scoring runs; 0 -> problem default
    std::uint64_t seed = 1;
    int threads = 1;
};

// Seeded random search over beta0 in [0.1, 20], beta1 in [-5, 5], scored by
// the mean best objective of a short ASP run on the tuning instances.
Calibration tune_calibration(const LinearModel& model,
                             const std::vector<const ProblemInstance*>& tuning,
                             const TuneConfig& cfg);

} // namespace asp
