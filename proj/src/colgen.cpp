#include "asptk/colgen.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <map>
#include <numeric>
#include <set>

#include <json.hpp>

namespace asp {

WeightedGraph complement_graph(const WeightedGraph& g) {
    std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;
    for (std::uint32_t i = 0; i < g.n; ++i) {
        for (std::uint32_t j = i + 1; j < g.n; ++j) {
            if (!g.has_edge(i, j)) edges.emplace_back(i, j);
        }
    }
    return WeightedGraph::from_edges(g.n, edges, g.weights);
}

double reduced_cost(const MisColumn& column, const std::vector<double>& duals) {
    double s = 0.0;
    for (std::uint32_t v : column.vertices) {
        if (v >= duals.size()) throw BadInput("column vertex out of range");
        s += duals[v];
    }
    return 1.0 - s;
}

bool is_maximal_independent_set(const WeightedGraph& g, const std::vector<std::uint32_t>& set) {
    if (set.empty()) return false;
    std::vector<std::uint8_t> in(g.n, 0);
    for (std::uint32_t v : set) {
        if (v >= g.n || in[v]) return false;
        in[v] = 1;
    }
    for (std::size_t a = 0; a < set.size(); ++a) {
        for (std::size_t b = a + 1; b < set.size(); ++b) {
            if (g.has_edge(set[a], set[b])) return false;
        }
    }
    for (std::uint32_t v = 0; v < g.n; ++v) {
        if (in[v]) continue;
        bool independent = true;
        for (std::uint32_t u : set) {
            if (g.has_edge(v, u)) {
                independent = false;
                break;
            }
        }
        if (independent) return false; // v could be added
    }
    return true;
}

LpSolution lp_solve(const Rmp& rmp) {
    if (!rmp.graph || rmp.graph->n == 0) throw BadInput("RMP needs a graph");
    if (rmp.columns.empty()) throw BadInput("RMP needs at least one column");
    std::vector<std::vector<std::uint32_t>> cols;
    cols.reserve(rmp.columns.size());
    for (const auto& c : rmp.columns) cols.push_back(c.vertices);
    return solve_covering_lp(rmp.graph->n, cols);
}

namespace {

// Greedy maximal IS that prefers currently uncovered vertices (lowest index
// first), used to guarantee initial coverage.
MisColumn greedy_cover_column(const WeightedGraph& complement,
                              const std::vector<std::uint8_t>& covered) {
    const std::uint32_t n = complement.n;
    std::vector<std::uint32_t> cand(n);
    std::iota(cand.begin(), cand.end(), 0u);
    std::vector<std::uint32_t> clique; // clique of the complement == IS of g
    while (!cand.empty()) {
        std::uint32_t pick = cand.front();
        for (std::uint32_t v : cand) {
            if (!covered[v]) {
                pick = v;
                break;
            }
        }
        clique.push_back(pick);
        cand = mwcp_propagate(complement, cand, pick);
    }
    std::sort(clique.begin(), clique.end());
    return MisColumn{std::move(clique)};
}

} // namespace

std::vector<MisColumn> init_columns(const WeightedGraph& g, std::size_t count, Rng& rng) {
    if (count == 0) throw BadInput("init_columns needs count >= 1");
    const WeightedGraph comp = complement_graph(g);
    const std::vector<double> ones(g.n, 1.0);
    std::set<std::vector<std::uint32_t>> seen;
    std::vector<MisColumn> out;
    const ProblemInstance comp_inst{comp};
    const std::size_t max_attempts = 10 * count;
    for (std::size_t attempt = 0; attempt < max_attempts && out.size() < count; ++attempt) {
        Solution s = probabilistic_sample(comp_inst, ones, attempt, rng);
        if (seen.insert(s.seq).second) out.push_back(MisColumn{s.seq});
    }
    // Top up with a greedy cover so the RMP is always feasible.
    std::vector<std::uint8_t> covered(g.n, 0);
    for (const auto& c : out) {
        for (std::uint32_t v : c.vertices) covered[v] = 1;
    }
    while (std::find(covered.begin(), covered.end(), 0) != covered.end()) {
        MisColumn c = greedy_cover_column(comp, covered);
        for (std::uint32_t v : c.vertices) covered[v] = 1;
        if (seen.insert(c.vertices).second) out.push_back(std::move(c));
    }
    return out;
}

PricingResult price_heuristic(const std::vector<double>& duals, const WeightedGraph& complement,
                              const LinearModel& model, const Calibration& cal,
                              const HeuristicPricerConfig& cfg) {
    if (duals.size() != complement.n) throw BadInput("dual vector length mismatch");
    std::vector<double> weights(duals);
    for (double& w : weights) w = std::max(0.0, w);
    WeightedGraph priced = complement;
    priced.weights = weights;
    const ProblemInstance inst{std::move(priced)};

    std::map<std::vector<std::uint32_t>, double> found; // canonical set -> weight
    const auto observer = [&found](const Solution& s, double obj) {
        found.emplace(s.seq, obj);
    };

    AspConfig asp;
    asp.iterations = cfg.iterations;
    asp.samples = cfg.samples ? cfg.samples : complement.n;
    asp.seed = cfg.seed;
    asp.threads = cfg.threads;
    asp_run(inst, model, cal, asp, nullptr, observer);

    PricingResult result;
    result.heuristic = true;
    for (const auto& [vertices, weight] : found) {
        const double rc = 1.0 - weight;
        if (rc < -1e-9) result.columns.push_back({MisColumn{vertices}, rc});
    }
    std::sort(result.columns.begin(), result.columns.end(),
              [](const auto& a, const auto& b) {
                  if (a.second != b.second) return a.second < b.second;
                  return a.first.vertices < b.first.vertices;
              });
    const std::size_t cap = cfg.max_columns ? cfg.max_columns : complement.n;
    if (result.columns.size() > cap) result.columns.resize(cap);
    return result;
}

std::pair<MisColumn, double> price_exact(const std::vector<double>& duals,
                                         const WeightedGraph& complement) {
    if (duals.size() != complement.n) throw BadInput("dual vector length mismatch");
    WeightedGraph priced = complement;
    for (std::uint32_t v = 0; v < complement.n; ++v) priced.weights[v] = std::max(0.0, duals[v]);
    auto [sol, weight] = exact_mwcp(priced);
    return {MisColumn{std::move(sol.seq)}, 1.0 - weight};
}

CgResult cg_loop(const WeightedGraph& g, const CgConfig& cfg) {
    if (g.n == 0) throw BadInput("empty graph");
    if (cfg.use_heuristic && (!cfg.model || !cfg.cal))
        throw BadInput("heuristic pricing needs a model and calibration");
    const auto start = std::chrono::steady_clock::now();
    const WeightedGraph comp = complement_graph(g);
    const std::size_t cap = cfg.column_cap ? cfg.column_cap : g.n;

    Rng rng = make_stream(cfg.seed, 0xc61ULL);
    Rmp rmp;
    rmp.graph = &g;
    rmp.columns = init_columns(g, cfg.init_columns ? cfg.init_columns : 10 * g.n, rng);
    std::set<std::vector<std::uint32_t>> keys;
    for (const auto& c : rmp.columns) {
        if (!is_maximal_independent_set(g, c.vertices))
            throw Error("initial column is not a maximal independent set");
        keys.insert(c.vertices);
    }

    CgResult result;
    auto elapsed = [&start] {
        return std::chrono::duration_cast<std::chrono::milliseconds>(
                   std::chrono::steady_clock::now() - start)
            .count();
    };

    for (int iter = 1; iter <= cfg.max_iterations; ++iter) {
        const LpSolution lp = lp_solve(rmp);
        ++result.lp_solves;
        if (cfg.on_lp) cfg.on_lp(rmp, lp);
        std::vector<double> duals(lp.duals);
        for (double& d : duals) d = std::max(0.0, d); // simplex noise clamp

        std::size_t added = 0;
        bool exact_used = false;
        if (cfg.use_heuristic) {
            HeuristicPricerConfig hp = cfg.pricer;
            hp.seed = splitmix64(cfg.seed + static_cast<std::uint64_t>(iter));
            hp.max_columns = cap;
            hp.threads = cfg.threads;
            PricingResult pr = price_heuristic(duals, comp, *cfg.model, *cfg.cal, hp);
            for (auto& [col, rc] : pr.columns) {
                if (keys.count(col.vertices)) continue;
                if (!is_maximal_independent_set(g, col.vertices))
                    throw Error("heuristic column is not a maximal independent set");
                keys.insert(col.vertices);
                rmp.columns.push_back(std::move(col));
                ++added;
            }
        }
        if (added == 0) {
            exact_used = true;
            auto [col, rc] = price_exact(duals, comp);
            if (cfg.on_exact_price) {
                WeightedGraph priced = comp;
                priced.weights = duals;
                cfg.on_exact_price(priced, col, mwcp_objective(priced, col.vertices));
            }
            if (rc < -1e-9 && !keys.count(col.vertices)) {
                if (!is_maximal_independent_set(g, col.vertices))
                    throw Error("exact column is not a maximal independent set");
                keys.insert(col.vertices);
                rmp.columns.push_back(std::move(col));
                added = 1;
            }
        }
        result.columns_added += added;
        result.trace.push_back({iter, lp.objective, added, exact_used, elapsed()});

        if (added == 0) {
            // No negative-reduced-cost column exists: lp is the proven optimum.
            result.lp_objective = lp.objective;
            result.duals = lp.duals;
            result.columns = rmp.columns;
            return result;
        }
    }
    throw NumericalFailure("column generation did not converge within the iteration cap");
}

std::vector<LabeledInstance> harvest_pricing_instances(const std::vector<WeightedGraph>& graphs,
                                                       std::uint64_t seed) {
    std::vector<LabeledInstance> out;
    std::size_t g_index = 0;
    for (const auto& g : graphs) {
        CgConfig cfg;
        cfg.seed = splitmix64(seed + g_index++);
        cfg.use_heuristic = false;
        cfg.on_exact_price = [&out](const WeightedGraph& priced, const MisColumn& col, double obj) {
            ProblemInstance inst{priced};
            Solution s = Solution::clique(col.vertices);
            const auto check = feasible(inst, s);
            if (!check.ok) throw Error("harvested optimum infeasible: " + check.reason);
            out.push_back({std::move(inst), std::move(s), obj});
        };
        cg_loop(g, cfg);
    }
    return out;
}

void save_cg_trace_csv(const CgResult& result, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw BadInput("cannot write CG trace file: " + path);
    out << "iteration,lp_obj,new_columns,pricer,elapsed_ms\n";
    for (const auto& r : result.trace) {
        out << r.iteration << ',' << nlohmann::json(r.lp_obj).dump() << ',' << r.new_columns
            << ',' << (r.exact_pricer ? "exact" : "heuristic") << ',' << r.elapsed_ms << '\n';
    }
    out << "final," << nlohmann::json(result.lp_objective).dump() << ",0,none,"
        << (result.trace.empty() ? 0 : result.trace.back().elapsed_ms) << '\n';
}

} // namespace asp
