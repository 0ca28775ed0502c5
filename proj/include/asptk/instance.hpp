#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "asptk/common.hpp"

namespace asp {

enum class ProblemKind { mwcp, tsp, op };

std::string to_string(ProblemKind kind);
ProblemKind problem_kind_from_string(const std::string& name);

enum class Sense { maximize, minimize };

// Undirected vertex-weighted graph. Adjacency is kept both as sorted
// neighbor lists (for candidate-set intersection) and as a flat byte
// matrix (for O(1) edge tests).
struct WeightedGraph {
    std::uint32_t n = 0;
    std::vector<std::vector<std::uint32_t>> adj;
    std::vector<std::uint8_t> matrix; // n*n, symmetric, zero diagonal
    std::vector<double> weights;
    std::size_t m = 0; // undirected edge count

    static WeightedGraph from_edges(std::uint32_t n,
                                    const std::vector<std::pair<std::uint32_t, std::uint32_t>>& edges,
                                    std::vector<double> weights);

    bool has_edge(std::uint32_t i, std::uint32_t j) const {
        return matrix[static_cast<std::size_t>(i) * n + j] != 0;
    }
    double density() const {
        if (n < 2) return 0.0;
        return 2.0 * static_cast<double>(m) / (static_cast<double>(n) * (n - 1));
    }
};

// Cities in the unit square with a dense symmetric Euclidean distance matrix.
struct TspInstance {
    std::uint32_t n = 0;
    std::vector<std::array<double, 2>> coords;
    std::vector<double> dist; // n*n

    static TspInstance from_coords(std::vector<std::array<double, 2>> coords);

    double d(std::uint32_t i, std::uint32_t j) const {
        return dist[static_cast<std::size_t>(i) * n + j];
    }
};

// Orienteering: locations with prizes, a distance budget, depot fixed at index 0.
struct OpInstance {
    std::uint32_t n = 0;
    std::vector<std::array<double, 2>> coords;
    std::vector<double> dist; // n*n
    std::vector<double> prizes; // prizes[0] == 0
    double budget = 0.0;

    static OpInstance from_parts(std::vector<std::array<double, 2>> coords,
                                 std::vector<double> prizes, double budget);

    double d(std::uint32_t i, std::uint32_t j) const {
        return dist[static_cast<std::size_t>(i) * n + j];
    }
};

// Tagged union over the three problem backends.
class ProblemInstance {
public:
    explicit ProblemInstance(WeightedGraph g);
    explicit ProblemInstance(TspInstance t);
    explicit ProblemInstance(OpInstance o);

    ProblemKind kind() const { return kind_; }
    Sense sense() const { return kind_ == ProblemKind::tsp ? Sense::minimize : Sense::maximize; }

    const WeightedGraph& graph() const;
    const TspInstance& tsp() const;
    const OpInstance& op() const;

    // Number of entities: vertices (MWCP) or locations/cities (TSP, OP).
    std::uint32_t size() const;
    // Number of decision variables: n for MWCP, n*(n-1) directed edges otherwise.
    std::size_t var_count() const;

private:
    ProblemKind kind_;
    std::variant<WeightedGraph, TspInstance, OpInstance> data_;
};

// Row index of directed edge (i, j), i != j, in lexicographic (i, j) order.
inline std::size_t edge_index(std::uint32_t i, std::uint32_t j, std::uint32_t n) {
    return static_cast<std::size_t>(i) * (n - 1) + (j < i ? j : j - 1);
}
std::pair<std::uint32_t, std::uint32_t> edge_from_index(std::size_t index, std::uint32_t n);

// --- File formats ---

// Extended DIMACS: "p edge <n> <m>", "v <i> <w>" (1-based), "e <i> <j>", comments "c".
WeightedGraph load_dimacs(const std::string& path);
void save_dimacs(const WeightedGraph& g, const std::string& path);

// JSON: {"coords": [[x,y],...]} plus, for OP, {"prizes": [...], "budget": t, "depot": 0}.
ProblemInstance load_instance_json(const std::string& path);
void save_instance_json(const ProblemInstance& inst, const std::string& path);

// Dispatching loader: .col/.dimacs -> DIMACS graph, .json -> TSP/OP.
ProblemInstance load_instance(const std::string& path);

} // namespace asp
