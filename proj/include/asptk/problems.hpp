#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "asptk/instance.hpp"
#include "asptk/solution.hpp"

namespace asp {

struct Feasibility {
    bool ok = true;
    std::string reason;
};

double objective(const ProblemInstance& inst, const Solution& s);

// Full constraint check, including clique maximality and OP budget-maximality.
Feasibility feasible(const ProblemInstance& inst, const Solution& s);

// --- MWCP ---

double mwcp_objective(const WeightedGraph& g, const std::vector<std::uint32_t>& clique);

// Candidate update after fixing `added`: candidates ∩ neighbors(added) \ {added},
// by sorted-list intersection. `candidates` must be sorted ascending.
std::vector<std::uint32_t> mwcp_propagate(const WeightedGraph& g,
                                          const std::vector<std::uint32_t>& candidates,
                                          std::uint32_t added);

// Per-vertex columns: weight, degree, clique upper bound (each max-normalized
// over the instance), graph density. Row-major n x 4.
std::vector<double> mwcp_features(const WeightedGraph& g);

// --- TSP ---

double tsp_objective(const TspInstance& t, const std::vector<std::uint32_t>& tour);

// Per directed edge (i, j): the edge length against the mean/min/max of edges
// at each endpoint, statistics taken over k != i. Row-major n(n-1) x 4.
std::vector<double> tsp_edge_features(const TspInstance& t);

// Tour sampled edge-by-edge with probability proportional to p over unvisited
// cities; start city is sample_index mod n; uniform fallback on zero mass.
Solution tsp_sample_tour(const TspInstance& t, const std::vector<double>& p,
                         std::size_t sample_index, Rng& rng);

// Greedy variant: next city = argmax p over unvisited, ties to the lowest index.
Solution tsp_greedy_tour(const TspInstance& t, const std::vector<double>& p,
                         std::uint32_t start);

// --- OP ---

double op_objective(const OpInstance& o, const std::vector<std::uint32_t>& route);

// Unvisited locations reachable within the remaining budget, counting the
// return leg to the depot. The current position is the route's last entry
// (the depot when the route is empty).
std::vector<std::uint32_t> op_candidates(const OpInstance& o,
                                         const std::vector<std::uint32_t>& route_so_far,
                                         double used_budget);

// Per directed edge (i, j): distance over budget and the two per-cost prize
// gains, each normalized by its max over k (zero-distance terms excluded).
// Row-major n(n-1) x 3.
std::vector<double> op_edge_features(const OpInstance& o);

// Names of the problem-specific feature columns, in emitted order.
std::vector<std::string> problem_feature_names(ProblemKind kind);
std::size_t problem_feature_count(ProblemKind kind);

// Expected total feature dimension (2 statistical + problem-specific).
std::size_t feature_dim(ProblemKind kind);

} // namespace asp
