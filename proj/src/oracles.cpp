#include "asptk/oracles.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <numeric>

#include "asptk/problems.hpp"

namespace asp {

namespace {

struct CliqueSearch {
    const WeightedGraph& g;
    std::vector<std::uint32_t> current;
    std::vector<std::uint32_t> best;
    double current_weight = 0.0;
    double best_weight = -1.0;

    explicit CliqueSearch(const WeightedGraph& graph) : g(graph) {}

    void expand(const std::vector<std::uint32_t>& cand) {
        if (!current.empty() && current_weight > best_weight) {
            best_weight = current_weight;
            best = current;
        }
        if (cand.empty()) return;
        double remaining = 0.0;
        for (std::uint32_t v : cand) remaining += g.weights[v];
        for (std::size_t k = 0; k < cand.size(); ++k) {
            if (current_weight + remaining <= best_weight) return;
            const std::uint32_t v = cand[k];
            remaining -= g.weights[v];
            // Candidates after v, restricted to v's neighborhood.
            std::vector<std::uint32_t> next;
            next.reserve(cand.size() - k);
            for (std::size_t j = k + 1; j < cand.size(); ++j) {
                if (g.has_edge(v, cand[j])) next.push_back(cand[j]);
            }
            current.push_back(v);
            current_weight += g.weights[v];
            expand(next);
            current.pop_back();
            current_weight -= g.weights[v];
        }
    }
};

// Extends a clique to maximality; at a weight optimum only zero-weight
// vertices can still be addable.
void extend_to_maximal(const WeightedGraph& g, std::vector<std::uint32_t>& clique) {
    bool grew = true;
    while (grew) {
        grew = false;
        for (std::uint32_t v = 0; v < g.n && !grew; ++v) {
            if (std::find(clique.begin(), clique.end(), v) != clique.end()) continue;
            bool all = true;
            for (std::uint32_t u : clique) {
                if (!g.has_edge(v, u)) {
                    all = false;
                    break;
                }
            }
            if (all) {
                clique.push_back(v);
                grew = true;
            }
        }
    }
    std::sort(clique.begin(), clique.end());
}

} // namespace

std::pair<Solution, double> exact_mwcp(const WeightedGraph& g) {
    if (g.n == 0) throw BadInput("empty graph");
    if (g.n > 400) throw OracleGuard("exact_mwcp guard: n <= 400");
    // Descending weight order tightens the weight-sum bound early.
    std::vector<std::uint32_t> order(g.n);
    std::iota(order.begin(), order.end(), 0u);
    std::sort(order.begin(), order.end(), [&g](std::uint32_t a, std::uint32_t b) {
        if (g.weights[a] != g.weights[b]) return g.weights[a] > g.weights[b];
        return a < b;
    });
    CliqueSearch search(g);
    search.expand(order);
    auto clique = search.best;
    extend_to_maximal(g, clique);
    // Re-evaluate on the sorted clique so the stored objective is bit-equal
    // to any later re-evaluation.
    const double obj = mwcp_objective(g, clique);
    return {Solution::clique(std::move(clique)), obj};
}

std::pair<Solution, double> exact_tsp(const TspInstance& t) {
    if (t.n > 16) throw OracleGuard("exact_tsp guard: n <= 16");
    const std::uint32_t n = t.n;
    const std::uint32_t q = n - 1; // cities 1..n-1; city 0 is the fixed start
    const std::size_t n_masks = std::size_t{1} << q;
    const double inf = std::numeric_limits<double>::infinity();
    std::vector<double> dp(n_masks * q, inf);
    std::vector<std::int8_t> parent(n_masks * q, -1);
    for (std::uint32_t j = 0; j < q; ++j) {
        dp[(std::size_t{1} << j) * q + j] = t.d(0, j + 1);
    }
    for (std::size_t mask = 1; mask < n_masks; ++mask) {
        for (std::uint32_t j = 0; j < q; ++j) {
            if (!(mask & (std::size_t{1} << j))) continue;
            const double base = dp[mask * q + j];
            if (base == inf) continue;
            for (std::uint32_t k = 0; k < q; ++k) {
                if (mask & (std::size_t{1} << k)) continue;
                const std::size_t next = mask | (std::size_t{1} << k);
                const double cost = base + t.d(j + 1, k + 1);
                if (cost < dp[next * q + k]) {
                    dp[next * q + k] = cost;
                    parent[next * q + k] = static_cast<std::int8_t>(j);
                }
            }
        }
    }
    const std::size_t full = n_masks - 1;
    double best = inf;
    std::uint32_t best_j = 0;
    for (std::uint32_t j = 0; j < q; ++j) {
        const double cost = dp[full * q + j] + t.d(j + 1, 0);
        if (cost < best) {
            best = cost;
            best_j = j;
        }
    }
    std::vector<std::uint32_t> rev;
    std::size_t mask = full;
    std::uint32_t j = best_j;
    while (true) {
        rev.push_back(j + 1);
        const std::int8_t p = parent[mask * q + j];
        mask &= ~(std::size_t{1} << j);
        if (p < 0) break;
        j = static_cast<std::uint32_t>(p);
    }
    std::vector<std::uint32_t> tour{0};
    tour.insert(tour.end(), rev.rbegin(), rev.rend());
    const double obj = tsp_objective(t, tour);
    return {Solution::tour(std::move(tour)), obj};
}

std::pair<Solution, double> exact_op(const OpInstance& o) {
    if (o.n > 14) throw OracleGuard("exact_op guard: n <= 14");
    const std::uint32_t q = o.n - 1; // non-depot locations, 1-based shift
    const std::size_t n_masks = std::size_t{1} << q;
    const double inf = std::numeric_limits<double>::infinity();
    // dist[mask * q + j]: cheapest depot->...->(j+1) path visiting exactly mask.
    std::vector<double> dist(n_masks * q, inf);
    std::vector<std::int8_t> parent(n_masks * q, -1);
    for (std::uint32_t j = 0; j < q; ++j) {
        dist[(std::size_t{1} << j) * q + j] = o.d(0, j + 1);
    }
    std::vector<double> prize_of_mask(n_masks, 0.0);
    for (std::size_t mask = 1; mask < n_masks; ++mask) {
        const std::uint32_t low = static_cast<std::uint32_t>(std::countr_zero(mask));
        prize_of_mask[mask] = prize_of_mask[mask & (mask - 1)] + o.prizes[low + 1];
    }
    double best_prize = 0.0, best_dist = 0.0; // the empty route
    std::size_t best_mask = 0;
    std::uint32_t best_j = 0;
    bool best_nonempty = false;
    for (std::size_t mask = 1; mask < n_masks; ++mask) {
        for (std::uint32_t j = 0; j < q; ++j) {
            if (!(mask & (std::size_t{1} << j))) continue;
            const double base = dist[mask * q + j];
            if (base == inf) continue;
            for (std::uint32_t k = 0; k < q; ++k) {
                if (mask & (std::size_t{1} << k)) continue;
                const std::size_t next = mask | (std::size_t{1} << k);
                const double cost = base + o.d(j + 1, k + 1);
                if (cost < dist[next * q + k]) {
                    dist[next * q + k] = cost;
                    parent[next * q + k] = static_cast<std::int8_t>(j);
                }
            }
            const double closed = base + o.d(j + 1, 0);
            if (closed <= o.budget) {
                const double prize = prize_of_mask[mask];
                if (prize > best_prize || (prize == best_prize && (!best_nonempty || closed < best_dist))) {
                    best_prize = prize;
                    best_dist = closed;
                    best_mask = mask;
                    best_j = j;
                    best_nonempty = true;
                }
            }
        }
    }
    std::vector<std::uint32_t> route;
    if (best_nonempty) {
        std::vector<std::uint32_t> rev;
        std::size_t mask = best_mask;
        std::uint32_t j = best_j;
        while (true) {
            rev.push_back(j + 1);
            const std::int8_t p = parent[mask * q + j];
            mask &= ~(std::size_t{1} << j);
            if (p < 0) break;
            j = static_cast<std::uint32_t>(p);
        }
        route.assign(rev.rbegin(), rev.rend());
    }
    // Budget-maximal witness: only zero-prize locations can still be
    // appendable at a prize optimum.
    double used = 0.0;
    std::uint32_t prev = 0;
    for (std::uint32_t v : route) {
        used = used + o.d(prev, v);
        prev = v;
    }
    while (true) {
        const auto cand = op_candidates(o, route, used);
        if (cand.empty()) break;
        const std::uint32_t v = cand.front();
        used = used + o.d(route.empty() ? 0 : route.back(), v);
        route.push_back(v);
    }
    const double obj = op_objective(o, route);
    return {Solution::route(std::move(route)), obj};
}

LabeledInstance label_instance(ProblemInstance inst) {
    std::pair<Solution, double> r;
    switch (inst.kind()) {
        case ProblemKind::mwcp: r = exact_mwcp(inst.graph()); break;
        case ProblemKind::tsp: r = exact_tsp(inst.tsp()); break;
        case ProblemKind::op: r = exact_op(inst.op()); break;
    }
    const auto check = feasible(inst, r.first);
    if (!check.ok) throw Error("oracle produced an infeasible optimum: " + check.reason);
    return {std::move(inst), std::move(r.first), r.second};
}

} // namespace asp
