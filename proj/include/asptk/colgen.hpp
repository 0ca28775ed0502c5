#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "asptk/engine.hpp"
#include "asptk/oracles.hpp"
#include "asptk/simplex.hpp"

namespace asp {

// A column of the set-covering relaxation: a maximal independent set of the
// GCP graph, stored as ascending vertex indices.
struct MisColumn {
    std::vector<std::uint32_t> vertices;
};

struct Rmp {
    const WeightedGraph* graph = nullptr;
    std::vector<MisColumn> columns;
};

struct PricingResult {
    std::vector<std::pair<MisColumn, double>> columns; // ascending reduced cost
    bool heuristic = true;
};

struct HeuristicPricerConfig {
    int iterations = 10;
    std::size_t samples = 0; // 0 -> n
    std::uint64_t seed = 1;
    std::size_t max_columns = 0; // 0 -> n
    int threads = 1;
};

struct CgConfig {
    std::uint64_t seed = 1;
    std::size_t init_columns = 0;   // 0 -> 10n
    std::size_t column_cap = 0;     // columns added per iteration; 0 -> n
    int max_iterations = 10000;
    bool use_heuristic = false;
    const LinearModel* model = nullptr;
    const Calibration* cal = nullptr;
    HeuristicPricerConfig pricer;
    int threads = 1;
    // Observes each exact pricing solve: (dual-weighted complement, optimal
    // MIS, its weight). Used to harvest training data for the pricing model.
    std::function<void(const WeightedGraph&, const MisColumn&, double)> on_exact_price;
    // Observes every solved restricted master problem.
    std::function<void(const Rmp&, const LpSolution&)> on_lp;
};

struct CgIterRecord {
    int iteration = 0;
    double lp_obj = 0.0;
    std::size_t new_columns = 0;
    bool exact_pricer = false;
    std::int64_t elapsed_ms = 0;
};

struct CgResult {
    double lp_objective = 0.0;
    std::vector<MisColumn> columns;
    std::vector<double> duals;
    std::vector<CgIterRecord> trace;
    std::size_t lp_solves = 0;
    std::size_t columns_added = 0;
};

// Edge (i, j) in the output iff i != j and (i, j) is not an edge of g.
WeightedGraph complement_graph(const WeightedGraph& g);

// 1 - sum of duals over the column's vertices.
double reduced_cost(const MisColumn& column, const std::vector<double>& duals);

bool is_maximal_independent_set(const WeightedGraph& g, const std::vector<std::uint32_t>& set);

// LP relaxation of the restricted master: min 1'z, coverage >= 1, z >= 0.
LpSolution lp_solve(const Rmp& rmp);

// `count` random maximal independent sets (uniform PS on the complement)
// plus a greedy cover so every vertex is covered.
std::vector<MisColumn> init_columns(const WeightedGraph& g, std::size_t count, Rng& rng);

// ASP over the dual-weighted complement graph; returns the distinct
// negative-reduced-cost MISs found, best first, truncated to max_columns.
PricingResult price_heuristic(const std::vector<double>& duals, const WeightedGraph& complement,
                              const LinearModel& model, const Calibration& cal,
                              const HeuristicPricerConfig& cfg);

// Exact branch-and-bound pricing; returns the globally best column.
std::pair<MisColumn, double> price_exact(const std::vector<double>& duals,
                                         const WeightedGraph& complement);

// Full column generation to the proven LP optimum of the set-covering
// relaxation of graph coloring.
CgResult cg_loop(const WeightedGraph& g, const CgConfig& cfg);

// Runs exact-only CG on each graph and records every exact pricing problem as
// a labeled MWCP instance on the dual-weighted complement graph.
std::vector<LabeledInstance> harvest_pricing_instances(const std::vector<WeightedGraph>& graphs,
                                                       std::uint64_t seed);

void save_cg_trace_csv(const CgResult& result, const std::string& path);

} // namespace asp
