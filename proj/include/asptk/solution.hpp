#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "asptk/instance.hpp"

namespace asp {

// One feasible solution, stored as sampled:
//   mwcp: clique vertices, ascending
//   tsp:  city visiting order (closed tour, closing edge implicit)
//   op:   visited non-depot locations in route order (depot endpoints implicit)
struct Solution {
    ProblemKind kind = ProblemKind::mwcp;
    std::vector<std::uint32_t> seq;

    static Solution clique(std::vector<std::uint32_t> vertices);
    static Solution tour(std::vector<std::uint32_t> order);
    static Solution route(std::vector<std::uint32_t> visits);
};

// Canonical encoding used for pool dedup and deterministic tie-breaks.
// Identifies solutions the objective cannot distinguish: cliques are sorted,
// tours are rotation- and reflection-normalized, routes direction-normalized.
std::vector<std::uint32_t> canonical_key(const Solution& s);

// Indices of the decision variables set to 1 by this solution, ascending.
// MWCP: vertex indices. TSP/OP: directed edge indices (see edge_index).
std::vector<std::size_t> active_vars(const Solution& s, const ProblemInstance& inst);

// Solution file: {"problem": ..., "vars": [...], "objective": x}.
void save_solution_json(const Solution& s, double objective, const std::string& path);
std::pair<Solution, double> load_solution_json(const std::string& path);

} // namespace asp
