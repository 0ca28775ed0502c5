#include <doctest.h>

#include <algorithm>
#include <set>

#include "asptk/colgen.hpp"
#include "asptk/training.hpp"
#include "helpers.hpp"

using namespace asp;

namespace {

WeightedGraph cycle5() {
    return WeightedGraph::from_edges(5, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 0}},
                                     {1, 1, 1, 1, 1});
}

WeightedGraph complete(std::uint32_t n) {
    std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;
    for (std::uint32_t i = 0; i < n; ++i) {
        for (std::uint32_t j = i + 1; j < n; ++j) edges.emplace_back(i, j);
    }
    return WeightedGraph::from_edges(n, edges, std::vector<double>(n, 1.0));
}

WeightedGraph edgeless(std::uint32_t n) {
    return WeightedGraph::from_edges(n, {}, std::vector<double>(n, 1.0));
}

// Exhaustive maximal-independent-set enumeration for tiny graphs.
std::vector<MisColumn> all_mis(const WeightedGraph& g) {
    std::vector<MisColumn> out;
    for (std::uint32_t mask = 1; mask < (1u << g.n); ++mask) {
        std::vector<std::uint32_t> set;
        for (std::uint32_t v = 0; v < g.n; ++v) {
            if (mask & (1u << v)) set.push_back(v);
        }
        if (is_maximal_independent_set(g, set)) out.push_back(MisColumn{std::move(set)});
    }
    return out;
}

// Complementary slackness of the covering LP, both directions.
void check_cs(const Rmp& rmp, const LpSolution& lp, double tol = 1e-8) {
    std::vector<double> coverage(rmp.graph->n, 0.0);
    for (std::size_t j = 0; j < rmp.columns.size(); ++j) {
        for (std::uint32_t v : rmp.columns[j].vertices) coverage[v] += lp.primal[j];
        const double rc = reduced_cost(rmp.columns[j], lp.duals);
        CHECK(lp.primal[j] * rc == doctest::Approx(0.0).epsilon(0).scale(1).epsilon(tol));
        CHECK(lp.primal[j] >= -1e-9);
        CHECK(rc >= -1e-9);
    }
    for (std::uint32_t v = 0; v < rmp.graph->n; ++v) {
        CHECK(coverage[v] >= 1.0 - 1e-9);
        CHECK(lp.duals[v] * (coverage[v] - 1.0) == doctest::Approx(0.0).epsilon(tol));
        CHECK(lp.duals[v] >= -1e-9);
    }
}

// A pricing model biased toward high ranking scores and heavy vertices.
ModelFile pricing_model() {
    ModelFile mf;
    mf.problem = ProblemKind::mwcp;
    mf.model.w = {1.0, 0.25, 1.0, 0.1, 0.3, 0.0};
    mf.model.b = -0.8;
    mf.cal = {4.0, 0.0};
    mf.feature_names = {"rank_score", "corr_score", "weight", "degree", "clique_ub", "density"};
    return mf;
}

} // namespace

TEST_SUITE("colgen") {

TEST_CASE("complement graph") {
    const auto k4 = complete(4);
    const auto ck4 = complement_graph(k4);
    CHECK(ck4.m == 0);

    const auto g = gen_er(12, 0.4, 3);
    const auto cc = complement_graph(complement_graph(g));
    CHECK(cc.matrix == g.matrix);
    CHECK(cc.weights == g.weights);

    const auto c5c = complement_graph(cycle5());
    CHECK(c5c.m == 5);
    for (std::uint32_t v = 0; v < 5; ++v) CHECK(c5c.adj[v].size() == 2);
}

TEST_CASE("reduced cost") {
    CHECK(reduced_cost(MisColumn{{0, 2}}, {0.0, 0.0, 0.0}) == 1.0);
    CHECK(reduced_cost(MisColumn{{0, 1}}, {0.4, 0.6}) == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(reduced_cost(MisColumn{{0, 1}}, {0.5, 0.6}) == doctest::Approx(-0.1).epsilon(1e-12));
}

TEST_CASE("lp_solve on five hand covering LPs") {
    // 1. Edgeless graph, one all-vertex column: objective 1.
    const auto e3 = edgeless(3);
    Rmp r1{&e3, {MisColumn{{0, 1, 2}}}};
    const auto s1 = lp_solve(r1);
    CHECK(s1.objective == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(s1.primal[0] == doctest::Approx(1.0).epsilon(1e-9));
    check_cs(r1, s1);

    // 2. K4 with singleton columns: objective 4.
    const auto k4 = complete(4);
    Rmp r2{&k4, {MisColumn{{0}}, MisColumn{{1}}, MisColumn{{2}}, MisColumn{{3}}}};
    const auto s2 = lp_solve(r2);
    CHECK(s2.objective == doctest::Approx(4.0).epsilon(1e-9));
    check_cs(r2, s2);

    // 3. C5 with all five 2-vertex MISs: fractional optimum 2.5.
    const auto c5 = cycle5();
    Rmp r3{&c5, {}};
    for (const auto& m : all_mis(c5)) r3.columns.push_back(m);
    REQUIRE(r3.columns.size() == 5);
    const auto s3 = lp_solve(r3);
    CHECK(s3.objective == doctest::Approx(2.5).epsilon(1e-9));
    check_cs(r3, s3);

    // 4. Path 0-1-2: columns {0,2} and {1}: objective 2.
    const auto p3 = WeightedGraph::from_edges(3, {{0, 1}, {1, 2}}, {1, 1, 1});
    Rmp r4{&p3, {MisColumn{{0, 2}}, MisColumn{{1}}}};
    const auto s4 = lp_solve(r4);
    CHECK(s4.objective == doctest::Approx(2.0).epsilon(1e-9));
    check_cs(r4, s4);

    // 5. Star K1,3: columns {1,2,3} (the leaves) and {0}: objective 2.
    const auto star = WeightedGraph::from_edges(4, {{0, 1}, {0, 2}, {0, 3}}, {1, 1, 1, 1});
    Rmp r5{&star, {MisColumn{{1, 2, 3}}, MisColumn{{0}}}};
    const auto s5 = lp_solve(r5);
    CHECK(s5.objective == doctest::Approx(2.0).epsilon(1e-9));
    check_cs(r5, s5);
}

TEST_CASE("lp_solve rejects uncoverable rows") {
    const auto e3 = edgeless(3);
    Rmp rmp{&e3, {MisColumn{{0, 1}}}}; // vertex 2 uncovered
    CHECK_THROWS_AS(lp_solve(rmp), BadInput);
}

TEST_CASE("init_columns guarantees coverage") {
    SUBCASE("complete graph yields singletons") {
        const auto k5 = complete(5);
        Rng rng = make_stream(1, 0x1111ULL);
        const auto cols = init_columns(k5, 10, rng);
        std::vector<std::uint8_t> covered(5, 0);
        for (const auto& c : cols) {
            CHECK(c.vertices.size() == 1);
            covered[c.vertices[0]] = 1;
        }
        CHECK(std::count(covered.begin(), covered.end(), 1) == 5);
    }
    SUBCASE("edgeless graph has the single all-vertex MIS") {
        const auto e4 = edgeless(4);
        Rng rng = make_stream(2, 0x2222ULL);
        const auto cols = init_columns(e4, 8, rng);
        REQUIRE(cols.size() == 1);
        CHECK(cols[0].vertices == std::vector<std::uint32_t>{0, 1, 2, 3});
    }
    SUBCASE("random graphs stay covered and maximal") {
        for (std::uint64_t seed = 1; seed <= 10; ++seed) {
            const auto g = gen_er(14, 0.5, seed * 7);
            Rng rng = make_stream(seed, 0x3333ULL);
            const auto cols = init_columns(g, 20, rng);
            std::vector<std::uint8_t> covered(g.n, 0);
            for (const auto& c : cols) {
                CHECK(is_maximal_independent_set(g, c.vertices));
                for (std::uint32_t v : c.vertices) covered[v] = 1;
            }
            CHECK(std::count(covered.begin(), covered.end(), 1) ==
                  static_cast<long>(g.n));
        }
    }
}

TEST_CASE("exact pricing") {
    const auto g = gen_er(12, 0.5, 19);
    const auto comp = complement_graph(g);

    SUBCASE("zero duals price every MIS at cost 1") {
        const auto [col, rc] = price_exact(std::vector<double>(g.n, 0.0), comp);
        CHECK(rc == 1.0);
        CHECK(is_maximal_independent_set(g, col.vertices));
    }

    SUBCASE("matches exhaustive MIS enumeration") {
        Rng rng = make_stream(4, 0x4444ULL);
        for (int trial = 0; trial < 20; ++trial) {
            std::vector<double> duals(g.n);
            for (double& d : duals) d = next_double(rng);
            const auto [col, rc] = price_exact(duals, comp);
            double best = std::numeric_limits<double>::infinity();
            for (const auto& m : all_mis(g)) best = std::min(best, reduced_cost(m, duals));
            CHECK(rc == doctest::Approx(best).epsilon(1e-12));
        }
    }
}

TEST_CASE("heuristic pricing") {
    const auto g = gen_er(14, 0.55, 23);
    const auto comp = complement_graph(g);
    const auto mf = pricing_model();

    SUBCASE("zero duals yield no negative columns") {
        HeuristicPricerConfig cfg;
        cfg.seed = 5;
        const auto pr = price_heuristic(std::vector<double>(g.n, 0.0), comp, mf.model, mf.cal, cfg);
        CHECK(pr.columns.empty());
    }

    SUBCASE("a known negative column is found and correctly priced") {
        // Give one exhaustively-verified MIS a dual mass of 1.4.
        const auto mis = all_mis(g);
        REQUIRE(!mis.empty());
        const auto& target = mis.front();
        std::vector<double> duals(g.n, 0.0);
        for (std::uint32_t v : target.vertices)
            duals[v] = 1.4 / static_cast<double>(target.vertices.size());
        HeuristicPricerConfig cfg;
        cfg.seed = 6;
        cfg.iterations = 10;
        const auto pr = price_heuristic(duals, comp, mf.model, mf.cal, cfg);
        REQUIRE(!pr.columns.empty());
        bool found = false;
        for (const auto& [col, rc] : pr.columns) {
            CHECK(rc < 0.0);
            CHECK(rc == doctest::Approx(reduced_cost(col, duals)).epsilon(1e-12));
            if (col.vertices == target.vertices) {
                found = true;
                CHECK(rc == doctest::Approx(-0.4).epsilon(1e-9));
            }
        }
        CHECK(found);
        for (std::size_t k = 1; k < pr.columns.size(); ++k) {
            CHECK(pr.columns[k - 1].second <= pr.columns[k].second);
        }
    }
}

TEST_CASE("cg_loop closes the three textbook graphs") {
    CgConfig cfg;
    cfg.seed = 3;
    CHECK(cg_loop(edgeless(6), cfg).lp_objective == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(cg_loop(complete(5), cfg).lp_objective == doctest::Approx(5.0).epsilon(1e-9));
    CHECK(cg_loop(cycle5(), cfg).lp_objective == doctest::Approx(2.5).epsilon(1e-6));
}

TEST_CASE("cg_loop matches the full-enumeration LP and terminates soundly") {
    for (std::uint64_t seed = 1; seed <= 8; ++seed) {
        const auto g = gen_er(10, 0.45, seed * 11);
        CgConfig cfg;
        cfg.seed = seed;
        const auto result = cg_loop(g, cfg);

        Rmp full{&g, all_mis(g)};
        const auto oracle = lp_solve(full);
        CHECK(result.lp_objective == doctest::Approx(oracle.objective).epsilon(1e-6));

        // Objective is monotone non-increasing along the trace.
        for (std::size_t k = 1; k < result.trace.size(); ++k) {
            CHECK(result.trace[k].lp_obj <= result.trace[k - 1].lp_obj + 1e-9);
        }
        // At termination the exact pricer cannot improve.
        std::vector<double> clamped(result.duals);
        for (double& d : clamped) d = std::max(0.0, d);
        const auto [col, rc] = price_exact(clamped, complement_graph(g));
        CHECK(rc >= -1e-9);
    }
}

TEST_CASE("cg_loop with heuristic pricing reaches the same optimum") {
    const auto g = gen_er(12, 0.5, 77);
    const auto mf = pricing_model();

    CgConfig exact_cfg;
    exact_cfg.seed = 5;
    const auto exact_run = cg_loop(g, exact_cfg);

    CgConfig heur_cfg;
    heur_cfg.seed = 5;
    heur_cfg.use_heuristic = true;
    heur_cfg.model = &mf.model;
    heur_cfg.cal = &mf.cal;
    heur_cfg.pricer.iterations = 5;
    const auto heur_run = cg_loop(g, heur_cfg);

    CHECK(heur_run.lp_objective == doctest::Approx(exact_run.lp_objective).epsilon(1e-6));
    for (const auto& c : heur_run.columns) CHECK(is_maximal_independent_set(g, c.vertices));
}

TEST_CASE("harvesting pricing instances") {
    const std::vector<WeightedGraph> graphs{gen_er(10, 0.5, 1), gen_er(10, 0.4, 2)};
    const auto labeled = harvest_pricing_instances(graphs, 9);
    CHECK(!labeled.empty());
    for (const auto& li : labeled) {
        CHECK(li.instance.kind() == ProblemKind::mwcp);
        CHECK(feasible(li.instance, li.optimum).ok);
        CHECK(objective(li.instance, li.optimum) == li.optimal_objective);
    }
}

} // TEST_SUITE
