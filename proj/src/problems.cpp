#include "asptk/problems.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace asp {

namespace {

// Pairwise / membership checks share this scratch-free bitmap idiom.
std::vector<std::uint8_t> mark(const std::vector<std::uint32_t>& items, std::uint32_t n) {
    std::vector<std::uint8_t> seen(n, 0);
    for (std::uint32_t v : items) {
        if (v >= n) throw BadInput("index out of range");
        seen[v] = 1;
    }
    return seen;
}

} // namespace

double objective(const ProblemInstance& inst, const Solution& s) {
    if (s.kind != inst.kind()) throw BadInput("solution/instance kind mismatch");
    switch (inst.kind()) {
        case ProblemKind::mwcp: return mwcp_objective(inst.graph(), s.seq);
        case ProblemKind::tsp: return tsp_objective(inst.tsp(), s.seq);
        case ProblemKind::op: return op_objective(inst.op(), s.seq);
    }
    throw Error("unknown problem kind");
}

// --- MWCP ---

double mwcp_objective(const WeightedGraph& g, const std::vector<std::uint32_t>& clique) {
    if (clique.empty()) throw BadInput("empty clique");
    double total = 0.0;
    for (std::size_t a = 0; a < clique.size(); ++a) {
        const std::uint32_t u = clique[a];
        if (u >= g.n) throw BadInput("clique vertex out of range");
        for (std::size_t b = a + 1; b < clique.size(); ++b) {
            if (clique[b] == u || !g.has_edge(u, clique[b]))
                throw BadInput("vertex set is not a clique");
        }
        total += g.weights[u];
    }
    return total;
}

std::vector<std::uint32_t> mwcp_propagate(const WeightedGraph& g,
                                          const std::vector<std::uint32_t>& candidates,
                                          std::uint32_t added) {
    const auto& nbrs = g.adj[added];
    std::vector<std::uint32_t> out;
    out.reserve(std::min(candidates.size(), nbrs.size()));
    std::set_intersection(candidates.begin(), candidates.end(), nbrs.begin(), nbrs.end(),
                          std::back_inserter(out));
    // `added` is not its own neighbor, so the intersection already excludes it.
    return out;
}

std::vector<double> mwcp_features(const WeightedGraph& g) {
    const std::uint32_t n = g.n;
    std::vector<double> ub(n, 0.0);
    double max_w = 0.0, max_deg = 0.0, max_ub = 0.0;
    for (std::uint32_t i = 0; i < n; ++i) {
        double s = g.weights[i];
        for (std::uint32_t j : g.adj[i]) s += g.weights[j];
        ub[i] = s;
        max_w = std::max(max_w, g.weights[i]);
        max_deg = std::max(max_deg, static_cast<double>(g.adj[i].size()));
        max_ub = std::max(max_ub, s);
    }
    const double density = g.density();
    std::vector<double> rows(static_cast<std::size_t>(n) * 4);
    for (std::uint32_t i = 0; i < n; ++i) {
        double* r = rows.data() + static_cast<std::size_t>(i) * 4;
        r[0] = max_w > 0.0 ? g.weights[i] / max_w : 0.0;
        r[1] = max_deg > 0.0 ? static_cast<double>(g.adj[i].size()) / max_deg : 0.0;
        r[2] = max_ub > 0.0 ? ub[i] / max_ub : 0.0;
        r[3] = density;
    }
    return rows;
}

// --- TSP ---

double tsp_objective(const TspInstance& t, const std::vector<std::uint32_t>& tour) {
    if (tour.size() != t.n) throw BadInput("tour does not visit every city");
    const auto seen = mark(tour, t.n);
    for (std::uint32_t i = 0; i < t.n; ++i) {
        if (!seen[i]) throw BadInput("tour misses a city");
    }
    double total = 0.0;
    for (std::size_t k = 0; k < tour.size(); ++k) {
        total += t.d(tour[k], tour[(k + 1) % tour.size()]);
    }
    return total;
}

std::vector<double> tsp_edge_features(const TspInstance& t) {
    const std::uint32_t n = t.n;
    std::vector<double> mean(n), lo(n), hi(n);
    for (std::uint32_t i = 0; i < n; ++i) {
        double sum = 0.0;
        double mn = std::numeric_limits<double>::infinity();
        double mx = -std::numeric_limits<double>::infinity();
        for (std::uint32_t k = 0; k < n; ++k) {
            if (k == i) continue;
            const double d = t.d(i, k);
            sum += d;
            mn = std::min(mn, d);
            mx = std::max(mx, d);
        }
        mean[i] = sum / (n - 1);
        lo[i] = mn;
        hi[i] = mx;
    }
    std::vector<double> rows(static_cast<std::size_t>(n) * (n - 1) * 4);
    for (std::uint32_t i = 0; i < n; ++i) {
        for (std::uint32_t j = 0; j < n; ++j) {
            if (j == i) continue;
            double* r = rows.data() + edge_index(i, j, n) * 4;
            const double d = t.d(i, j);
            const double span_i = hi[i] - lo[i];
            const double span_j = hi[j] - lo[j];
            r[0] = span_i > 0.0 ? (d - mean[i]) / span_i : 0.0;
            r[1] = span_i > 0.0 ? (d - lo[i]) / span_i : 0.0;
            r[2] = span_j > 0.0 ? (d - mean[j]) / span_j : 0.0;
            r[3] = span_j > 0.0 ? (d - lo[j]) / span_j : 0.0;
        }
    }
    return rows;
}

Solution tsp_sample_tour(const TspInstance& t, const std::vector<double>& p,
                         std::size_t sample_index, Rng& rng) {
    const std::uint32_t n = t.n;
    if (p.size() != static_cast<std::size_t>(n) * (n - 1)) throw BadInput("edge probability length mismatch");
    std::vector<std::uint32_t> order;
    order.reserve(n);
    std::vector<std::uint8_t> visited(n, 0);
    std::uint32_t current = static_cast<std::uint32_t>(sample_index % n);
    order.push_back(current);
    visited[current] = 1;
    std::vector<std::uint32_t> cand;
    std::vector<double> w;
    for (std::uint32_t step = 1; step < n; ++step) {
        cand.clear();
        w.clear();
        for (std::uint32_t j = 0; j < n; ++j) {
            if (!visited[j]) {
                cand.push_back(j);
                w.push_back(p[edge_index(current, j, n)]);
            }
        }
        current = cand[weighted_draw(rng, w)];
        order.push_back(current);
        visited[current] = 1;
    }
    return Solution::tour(std::move(order));
}

Solution tsp_greedy_tour(const TspInstance& t, const std::vector<double>& p,
                         std::uint32_t start) {
    const std::uint32_t n = t.n;
    if (p.size() != static_cast<std::size_t>(n) * (n - 1)) throw BadInput("edge probability length mismatch");
    if (start >= n) throw BadInput("start city out of range");
    std::vector<std::uint32_t> order;
    order.reserve(n);
    std::vector<std::uint8_t> visited(n, 0);
    std::uint32_t current = start;
    order.push_back(current);
    visited[current] = 1;
    for (std::uint32_t step = 1; step < n; ++step) {
        std::uint32_t best = n;
        double best_p = -1.0;
        for (std::uint32_t j = 0; j < n; ++j) {
            if (visited[j]) continue;
            const double pj = p[edge_index(current, j, n)];
            if (pj > best_p) {
                best_p = pj;
                best = j;
            }
        }
        current = best;
        order.push_back(current);
        visited[current] = 1;
    }
    return Solution::tour(std::move(order));
}

// --- OP ---

double op_objective(const OpInstance& o, const std::vector<std::uint32_t>& route) {
    double total = 0.0;
    std::vector<std::uint8_t> used(o.n, 0);
    for (std::uint32_t v : route) {
        if (v >= o.n) throw BadInput("location out of range");
        if (v == 0) throw BadInput("route may not revisit the depot");
        if (used[v]) throw BadInput("route visits a location twice");
        used[v] = 1;
        total += o.prizes[v];
    }
    return total;
}

std::vector<std::uint32_t> op_candidates(const OpInstance& o,
                                         const std::vector<std::uint32_t>& route_so_far,
                                         double used_budget) {
    const std::uint32_t current = route_so_far.empty() ? 0 : route_so_far.back();
    std::vector<std::uint8_t> visited(o.n, 0);
    visited[0] = 1;
    for (std::uint32_t v : route_so_far) visited[v] = 1;
    std::vector<std::uint32_t> cand;
    for (std::uint32_t j = 1; j < o.n; ++j) {
        if (visited[j]) continue;
        // Evaluation order matters: the feasibility re-check reproduces
        // exactly this expression.
        if (used_budget + o.d(current, j) + o.d(j, 0) <= o.budget) cand.push_back(j);
    }
    return cand;
}

std::vector<double> op_edge_features(const OpInstance& o) {
    const std::uint32_t n = o.n;
    // Best per-cost gain out of i, and best per-cost gain into j; zero-length
    // edges cannot form a ratio and are excluded from the maxima.
    std::vector<double> best_from(n, 0.0), best_into(n, 0.0);
    for (std::uint32_t i = 0; i < n; ++i) {
        for (std::uint32_t k = 0; k < n; ++k) {
            if (k == i) continue;
            const double d = o.d(i, k);
            if (d > 0.0) best_from[i] = std::max(best_from[i], o.prizes[k] / d);
            const double dk = o.d(k, i);
            if (dk > 0.0) best_into[i] = std::max(best_into[i], o.prizes[k] / dk);
        }
    }
    std::vector<double> rows(static_cast<std::size_t>(n) * (n - 1) * 3);
    for (std::uint32_t i = 0; i < n; ++i) {
        for (std::uint32_t j = 0; j < n; ++j) {
            if (j == i) continue;
            double* r = rows.data() + edge_index(i, j, n) * 3;
            const double d = o.d(i, j);
            r[0] = o.budget > 0.0 ? d / o.budget : 0.0;
            if (d > 0.0) {
                const double gain = o.prizes[j] / d;
                r[1] = best_from[i] > 0.0 ? gain / best_from[i] : 0.0;
                r[2] = best_into[j] > 0.0 ? gain / best_into[j] : 0.0;
            } else {
                r[1] = 0.0;
                r[2] = 0.0;
            }
        }
    }
    return rows;
}

// --- feasibility ---

Feasibility feasible(const ProblemInstance& inst, const Solution& s) {
    if (s.kind != inst.kind()) return {false, "solution/instance kind mismatch"};
    switch (inst.kind()) {
        case ProblemKind::mwcp: {
            const auto& g = inst.graph();
            if (s.seq.empty()) return {false, "empty clique"};
            for (std::uint32_t v : s.seq) {
                if (v >= g.n) return {false, "vertex out of range"};
            }
            for (std::size_t a = 0; a < s.seq.size(); ++a) {
                for (std::size_t b = a + 1; b < s.seq.size(); ++b) {
                    if (s.seq[a] == s.seq[b]) return {false, "repeated vertex"};
                    if (!g.has_edge(s.seq[a], s.seq[b])) return {false, "missing edge"};
                }
            }
            const auto in = mark(s.seq, g.n);
            for (std::uint32_t v = 0; v < g.n; ++v) {
                if (in[v]) continue;
                bool adjacent_to_all = true;
                for (std::uint32_t u : s.seq) {
                    if (!g.has_edge(v, u)) {
                        adjacent_to_all = false;
                        break;
                    }
                }
                if (adjacent_to_all) return {false, "clique not maximal"};
            }
            return {};
        }
        case ProblemKind::tsp: {
            const auto& t = inst.tsp();
            if (s.seq.size() != t.n) return {false, "tour length mismatch"};
            std::vector<std::uint8_t> seen(t.n, 0);
            for (std::uint32_t c : s.seq) {
                if (c >= t.n) return {false, "city out of range"};
                if (seen[c]) return {false, "repeated city"};
                seen[c] = 1;
            }
            return {};
        }
        case ProblemKind::op: {
            const auto& o = inst.op();
            std::vector<std::uint8_t> seen(o.n, 0);
            double used = 0.0;
            std::uint32_t prev = 0;
            for (std::uint32_t v : s.seq) {
                if (v >= o.n) return {false, "location out of range"};
                if (v == 0) return {false, "route revisits the depot"};
                if (seen[v]) return {false, "repeated location"};
                seen[v] = 1;
                used = used + o.d(prev, v);
                prev = v;
            }
            if (used + o.d(prev, 0) > o.budget) return {false, "over budget"};
            if (!op_candidates(o, s.seq, used).empty()) return {false, "route not budget-maximal"};
            return {};
        }
    }
    return {false, "unknown problem kind"};
}

// --- feature metadata ---

std::vector<std::string> problem_feature_names(ProblemKind kind) {
    switch (kind) {
        case ProblemKind::mwcp: return {"weight", "degree", "clique_ub", "density"};
        case ProblemKind::tsp: return {"d_to_mean_i", "d_to_min_i", "d_to_mean_j", "d_to_min_j"};
        case ProblemKind::op: return {"d_over_budget", "gain_from_i", "gain_to_j"};
    }
    throw Error("unknown problem kind");
}

std::size_t problem_feature_count(ProblemKind kind) {
    return problem_feature_names(kind).size();
}

std::size_t feature_dim(ProblemKind kind) {
    return 2 + problem_feature_count(kind);
}

} // namespace asp
