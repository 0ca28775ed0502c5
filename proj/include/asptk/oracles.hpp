#pragma once

#include <utility>

#include "asptk/instance.hpp"
#include "asptk/solution.hpp"

namespace asp {

struct LabeledInstance {
    ProblemInstance instance;
    Solution optimum;
    double optimal_objective = 0.0;
};

// Desk-scale exact solvers for labeling training data. Each refuses instances
// above its guard with OracleGuard rather than emitting non-optimal "optima".

// Branch and bound with the weight-sum upper bound; result extended to a
// maximal clique. Guard: n <= 400.
std::pair<Solution, double> exact_mwcp(const WeightedGraph& g);

// Held-Karp dynamic program. Guard: n <= 16.
std::pair<Solution, double> exact_tsp(const TspInstance& t);

// Dynamic program over visited subsets with budget feasibility; the witness
// route is budget-maximal. Guard: n <= 14.
std::pair<Solution, double> exact_op(const OpInstance& o);

LabeledInstance label_instance(ProblemInstance inst);

} // namespace asp
