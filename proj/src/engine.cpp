#include "asptk/engine.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <numeric>
#include <thread>

#include <json.hpp>

#include "asptk/metrics.hpp"

namespace asp {

std::size_t default_samples(const ProblemInstance& inst) {
    const std::size_t n = inst.size();
    switch (inst.kind()) {
        case ProblemKind::mwcp: return n;
        case ProblemKind::tsp: return 20 * n;
        case ProblemKind::op: return 50 * n;
    }
    throw Error("unknown problem kind");
}

double default_pinned_fraction(ProblemKind kind) {
    return kind == ProblemKind::tsp ? 0.5 : 0.0;
}

namespace {

Solution sample_clique(const WeightedGraph& g, const std::vector<double>& p, Rng& rng) {
    std::vector<std::uint32_t> cand(g.n);
    std::iota(cand.begin(), cand.end(), 0u);
    std::vector<std::uint32_t> clique;
    std::vector<double> w;
    while (!cand.empty()) {
        w.clear();
        for (std::uint32_t v : cand) w.push_back(p[v]);
        const std::uint32_t v = cand[weighted_draw(rng, w)];
        clique.push_back(v);
        cand = mwcp_propagate(g, cand, v);
    }
    return Solution::clique(std::move(clique));
}

Solution sample_route(const OpInstance& o, const std::vector<double>& p, Rng& rng) {
    std::vector<std::uint32_t> route;
    double used = 0.0;
    std::uint32_t current = 0;
    std::vector<double> w;
    auto cand = op_candidates(o, route, used);
    while (!cand.empty()) {
        w.clear();
        for (std::uint32_t j : cand) w.push_back(p[edge_index(current, j, o.n)]);
        const std::uint32_t j = cand[weighted_draw(rng, w)];
        used = used + o.d(current, j);
        route.push_back(j);
        current = j;
        cand = op_candidates(o, route, used);
    }
    return Solution::route(std::move(route));
}

std::int64_t ms_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration_cast<std::chrono::milliseconds>(
               std::chrono::steady_clock::now() - start)
        .count();
}

} // namespace

Solution probabilistic_sample(const ProblemInstance& inst, const std::vector<double>& p,
                              std::size_t sample_index, Rng& rng) {
    if (p.size() != inst.var_count()) throw BadInput("probability vector length mismatch");
    for (double pi : p) {
        if (!(pi >= 0.0) || !(pi <= 1.0)) throw BadInput("probabilities must lie in [0, 1]");
    }
    switch (inst.kind()) {
        case ProblemKind::mwcp: return sample_clique(inst.graph(), p, rng);
        case ProblemKind::tsp: return tsp_sample_tour(inst.tsp(), p, sample_index, rng);
        case ProblemKind::op: return sample_route(inst.op(), p, rng);
    }
    throw Error("unknown problem kind");
}

SamplePool uniform_init(const ProblemInstance& inst, std::size_t M, Rng& rng,
                        const SampleObserver& observer) {
    if (M == 0) throw BadInput("initial sample size must be >= 1");
    SamplePool pool(inst, M);
    const std::vector<double> ones(inst.var_count(), 1.0);
    const std::size_t max_attempts = 10 * M;
    for (std::size_t attempt = 0; attempt < max_attempts && pool.size() < M; ++attempt) {
        Solution s;
        if (inst.kind() == ProblemKind::tsp) {
            // Uniformly random permutation of the cities.
            std::vector<std::uint32_t> order(inst.size());
            std::iota(order.begin(), order.end(), 0u);
            for (std::size_t i = order.size() - 1; i > 0; --i) {
                std::swap(order[i], order[next_below(rng, i + 1)]);
            }
            s = Solution::tour(std::move(order));
        } else {
            s = probabilistic_sample(inst, ones, attempt, rng);
        }
        const double obj = objective(inst, s);
        if (observer) observer(s, obj);
        pool.try_insert(std::move(s), obj);
    }
    return pool;
}

bool pool_update(SamplePool& pool, Solution candidate, double objective) {
    return pool.try_insert(std::move(candidate), objective);
}

AspResult asp_run(const ProblemInstance& inst, const LinearModel& model, const Calibration& cal,
                  const AspConfig& config, const Solution* optimum,
                  const SampleObserver& observer) {
    if (model.w.size() != feature_dim(inst.kind()))
        throw BadInput("model dimension does not match the instance's problem");
    if (config.iterations < 1) throw BadInput("iteration count must be >= 1");
    if (config.pinned_fraction > 1.0) throw BadInput("pinned fraction must be <= 1");
    const auto start = std::chrono::steady_clock::now();

    const std::size_t M = config.samples ? config.samples : default_samples(inst);
    const std::size_t M_init = config.init_samples ? config.init_samples : M;
    const double pinned_fraction = config.pinned_fraction >= 0.0
                                       ? config.pinned_fraction
                                       : default_pinned_fraction(inst.kind());

    Rng init_rng = make_stream(config.seed, 0, 0);
    SamplePool pool = uniform_init(inst, M_init, init_rng, observer);
    pool.set_pinned_count(static_cast<std::size_t>(
        std::floor(pinned_fraction * static_cast<double>(pool.size()))));

    std::vector<int> opt_labels;
    if (optimum) {
        opt_labels.assign(inst.var_count(), 0);
        for (std::size_t v : active_vars(*optimum, inst)) opt_labels[v] = 1;
    }

    AspResult result;
    const PoolEntry* b = pool.best();
    result.best_solution = b->solution;
    result.best_objective = b->objective;

    const int threads = std::max(1, config.threads);
    std::vector<std::pair<Solution, double>> batch;
    int stall = 0;

    for (int t = 1; t <= config.iterations; ++t) {
        FeatureMatrix features = assemble_features(inst, pool);
        result.prediction = predict(model, cal, features.data, features.rows);
        result.last_features = std::move(features);

        // Draw the batch with per-sample RNG streams so results do not depend
        // on the worker count; merge in sample-index order.
        batch.assign(M, {});
        auto worker = [&](std::size_t lo, std::size_t hi) {
            for (std::size_t m = lo; m < hi; ++m) {
                Rng rng = make_stream(config.seed, static_cast<std::uint64_t>(t), m + 1);
                Solution s = probabilistic_sample(inst, result.prediction, m, rng);
                const double obj = objective(inst, s);
                batch[m] = {std::move(s), obj};
            }
        };
        if (threads == 1 || M < 2) {
            worker(0, M);
        } else {
            std::vector<std::thread> pool_threads;
            const std::size_t chunk = (M + threads - 1) / threads;
            for (int w = 0; w < threads; ++w) {
                const std::size_t lo = std::min(M, static_cast<std::size_t>(w) * chunk);
                const std::size_t hi = std::min(M, lo + chunk);
                if (lo < hi) pool_threads.emplace_back(worker, lo, hi);
            }
            for (auto& th : pool_threads) th.join();
        }

        bool changed = false;
        double best_iter = 0.0;
        bool have_iter = false;
        auto offer = [&](Solution s, double obj) {
            if (observer) observer(s, obj);
            if (!have_iter || pool.better(obj, best_iter)) {
                best_iter = obj;
                have_iter = true;
            }
            if (pool.better(obj, result.best_objective)) {
                result.best_objective = obj;
                result.best_solution = s;
            }
            changed = pool_update(pool, std::move(s), obj) || changed;
        };
        for (auto& [s, obj] : batch) offer(std::move(s), obj);

        if (inst.kind() == ProblemKind::tsp) {
            // Greedy companion tours, one per start city.
            for (std::uint32_t start_city = 0; start_city < inst.size(); ++start_city) {
                Solution s = tsp_greedy_tour(inst.tsp(), result.prediction, start_city);
                const double obj = objective(inst, s);
                offer(std::move(s), obj);
            }
        }

        IterRecord row;
        row.iteration = t;
        row.best_pool_obj = pool.best()->objective;
        row.best_iter_obj = best_iter;
        if (optimum) row.avg_precision = average_precision(result.prediction, opt_labels);
        row.elapsed_ms = ms_since(start);
        result.trace.rows.push_back(row);

        if (config.stall_limit > 0) {
            stall = changed ? 0 : stall + 1;
            if (stall >= config.stall_limit) break;
        }
        if (config.time_budget_ms > 0 && ms_since(start) >= config.time_budget_ms) break;
    }
    return result;
}

void save_trace_csv(const AspTrace& trace, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw BadInput("cannot write trace file: " + path);
    out << "iteration,best_pool_obj,best_iter_obj,avg_precision,elapsed_ms\n";
    for (const auto& r : trace.rows) {
        out << r.iteration << ',' << nlohmann::json(r.best_pool_obj).dump() << ','
            << nlohmann::json(r.best_iter_obj).dump() << ',';
        if (r.avg_precision) out << nlohmann::json(*r.avg_precision).dump();
        out << ',' << r.elapsed_ms << '\n';
    }
}

} // namespace asp
