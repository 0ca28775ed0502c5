#include <doctest.h>

#include <algorithm>
#include <numeric>

#include "asptk/engine.hpp"
#include "asptk/problems.hpp"
#include "helpers.hpp"

using namespace asp;

namespace {

// Exhaustive maximal-clique enumeration for tiny graphs.
std::vector<std::vector<std::uint32_t>> all_maximal_cliques(const WeightedGraph& g) {
    std::vector<std::vector<std::uint32_t>> out;
    for (std::uint32_t mask = 1; mask < (1u << g.n); ++mask) {
        std::vector<std::uint32_t> set;
        for (std::uint32_t v = 0; v < g.n; ++v) {
            if (mask & (1u << v)) set.push_back(v);
        }
        bool clique = true;
        for (std::size_t a = 0; a < set.size() && clique; ++a) {
            for (std::size_t b = a + 1; b < set.size() && clique; ++b) {
                clique = g.has_edge(set[a], set[b]);
            }
        }
        if (!clique) continue;
        bool maximal = true;
        for (std::uint32_t v = 0; v < g.n && maximal; ++v) {
            if (std::find(set.begin(), set.end(), v) != set.end()) continue;
            bool all = true;
            for (std::uint32_t u : set) all = all && g.has_edge(v, u);
            maximal = !all;
        }
        if (maximal) out.push_back(std::move(set));
    }
    return out;
}

// Direct nearest-neighbor tour, ties to the lowest index.
std::vector<std::uint32_t> nn_tour(const TspInstance& t, std::uint32_t start) {
    std::vector<std::uint32_t> order{start};
    std::vector<std::uint8_t> visited(t.n, 0);
    visited[start] = 1;
    std::uint32_t cur = start;
    for (std::uint32_t step = 1; step < t.n; ++step) {
        std::uint32_t best = t.n;
        for (std::uint32_t j = 0; j < t.n; ++j) {
            if (visited[j]) continue;
            if (best == t.n || t.d(cur, j) < t.d(cur, best)) best = j;
        }
        visited[best] = 1;
        order.push_back(best);
        cur = best;
    }
    return order;
}

} // namespace

TEST_SUITE("problems") {

TEST_CASE("mwcp objective") {
    const auto tri = WeightedGraph::from_edges(3, {{0, 1}, {1, 2}, {0, 2}}, {1, 2, 3});
    CHECK(mwcp_objective(tri, {0, 1, 2}) == 6.0);

    const auto lone = WeightedGraph::from_edges(1, {}, {7});
    CHECK(mwcp_objective(lone, {0}) == 7.0);

    const auto path = WeightedGraph::from_edges(3, {{0, 1}, {1, 2}}, {5, 1, 5});
    CHECK(mwcp_objective(path, {0, 1}) == 6.0);
    // Brute force over the path's maximal cliques confirms 6 is optimal.
    double best = 0.0;
    for (const auto& c : all_maximal_cliques(path)) best = std::max(best, mwcp_objective(path, c));
    CHECK(best == 6.0);

    CHECK_THROWS_AS(mwcp_objective(path, {0, 2}), BadInput); // not adjacent
    CHECK_THROWS_AS(mwcp_objective(path, {}), BadInput);
}

TEST_CASE("mwcp propagation") {
    const auto k4 = WeightedGraph::from_edges(
        4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}, {1, 1, 1, 1});
    std::vector<std::uint32_t> cand{0, 1, 2, 3};
    CHECK(mwcp_propagate(k4, cand, 2) == std::vector<std::uint32_t>{0, 1, 3});

    const auto star = WeightedGraph::from_edges(4, {{0, 1}, {0, 2}, {0, 3}}, {1, 1, 1, 1});
    CHECK(mwcp_propagate(star, cand, 0) == std::vector<std::uint32_t>{1, 2, 3});
    CHECK(mwcp_propagate(star, cand, 2) == std::vector<std::uint32_t>{0});

    SUBCASE("iterated propagation always ends in a maximal clique") {
        for (std::uint64_t seed = 0; seed < 50; ++seed) {
            const auto g = gen_er(8, 0.5, 1000 + seed);
            Rng rng = make_stream(seed, 0x9f9fULL);
            std::vector<std::uint32_t> c(g.n);
            std::iota(c.begin(), c.end(), 0u);
            std::vector<std::uint32_t> clique;
            while (!c.empty()) {
                const std::uint32_t v = c[next_below(rng, c.size())];
                clique.push_back(v);
                c = mwcp_propagate(g, c, v);
            }
            std::sort(clique.begin(), clique.end());
            const auto maximal = all_maximal_cliques(g);
            CHECK(std::find(maximal.begin(), maximal.end(), clique) != maximal.end());
        }
    }
}

TEST_CASE("mwcp features") {
    // Vertex 2 isolated.
    const auto g = WeightedGraph::from_edges(3, {{0, 1}}, {2, 4, 8});
    const auto f = mwcp_features(g);
    // Columns: weight, degree, clique_ub, density.
    CHECK(f[2 * 4 + 1] == 0.0);                        // isolated: degree 0
    CHECK(f[2 * 4 + 2] == doctest::Approx(8.0 / 8.0)); // ub = own weight = max ub
    CHECK(f[0 * 4 + 3] == doctest::Approx(1.0 / 3.0)); // density 2*1/(3*2)

    const auto k3 = WeightedGraph::from_edges(3, {{0, 1}, {1, 2}, {0, 2}}, {5, 5, 5});
    const auto fk = mwcp_features(k3);
    for (int c = 0; c < 4; ++c) {
        CHECK(fk[0 * 4 + c] == fk[1 * 4 + c]);
        CHECK(fk[1 * 4 + c] == fk[2 * 4 + c]);
    }

    const auto one = WeightedGraph::from_edges(1, {}, {3});
    CHECK(mwcp_features(one)[3] == 0.0); // density guard at n = 1
}

TEST_CASE("tsp objective") {
    const auto tri = TspInstance::from_coords({{0, 0}, {1, 0}, {0, 1}});
    const double perimeter = 1.0 + std::sqrt(2.0) + 1.0;
    CHECK(tsp_objective(tri, {0, 1, 2}) == doctest::Approx(perimeter));

    const auto sq = TspInstance::from_coords({{0, 0}, {1, 0}, {1, 1}, {0, 1}});
    CHECK(tsp_objective(sq, {0, 1, 2, 3}) == doctest::Approx(4.0));

    std::vector<std::uint32_t> tour{0, 2, 1, 3};
    std::vector<std::uint32_t> rev(tour.rbegin(), tour.rend());
    CHECK(tsp_objective(sq, tour) == doctest::Approx(tsp_objective(sq, rev)));

    CHECK_THROWS_AS(tsp_objective(sq, {0, 1, 2}), BadInput);
    CHECK_THROWS_AS(tsp_objective(sq, {0, 1, 2, 2}), BadInput);
}

TEST_CASE("tsp edge features") {
    // Collinear cities at x = 0, 1, 3.
    const auto t = TspInstance::from_coords({{0, 0}, {1, 0}, {3, 0}});
    const auto f = tsp_edge_features(t);
    const std::size_t row01 = edge_index(0, 1, 3);
    CHECK(f[row01 * 4 + 0] == doctest::Approx(-0.5)); // (1 - 2) / (3 - 1)
    CHECK(f[row01 * 4 + 1] == doctest::Approx(0.0));  // d01 is the min at 0

    // Equally spaced collinear points: the middle city sees two bit-equal
    // distances, an exact zero denominator.
    const auto mid = TspInstance::from_coords({{0, 0}, {1, 0}, {2, 0}});
    const auto fm = tsp_edge_features(mid);
    for (std::uint32_t j : {0u, 2u}) {
        const std::size_t r = edge_index(1, j, 3);
        CHECK(fm[r * 4 + 0] == 0.0);
        CHECK(fm[r * 4 + 1] == 0.0);
        const std::size_t rj = edge_index(j, 1, 3);
        CHECK(fm[rj * 4 + 2] == 0.0);
        CHECK(fm[rj * 4 + 3] == 0.0);
    }
}

TEST_CASE("tsp sampling follows concentrated probabilities") {
    const auto t = gen_tsp(8, 99);
    const ProblemInstance inst(t);

    // Probability 1 exactly on the directed edges of one reference cycle.
    std::vector<std::uint32_t> cycle(t.n);
    std::iota(cycle.begin(), cycle.end(), 0u);
    Rng shuffle = make_stream(4, 0x5c5cULL);
    for (std::size_t i = cycle.size() - 1; i > 0; --i)
        std::swap(cycle[i], cycle[next_below(shuffle, i + 1)]);
    std::vector<double> p(inst.var_count(), 0.0);
    for (std::size_t k = 0; k < cycle.size(); ++k) {
        const auto a = cycle[k], b = cycle[(k + 1) % cycle.size()];
        p[edge_index(a, b, t.n)] = 1.0;
        p[edge_index(b, a, t.n)] = 1.0;
    }
    const Solution ref = Solution::tour(cycle);
    const auto ref_key = canonical_key(ref);
    Rng rng = make_stream(5, 0xabcULL);
    for (std::size_t m = 0; m < 20; ++m) {
        const Solution s = tsp_sample_tour(t, p, m, rng);
        CHECK(canonical_key(s) == ref_key);
        CHECK(s.seq.front() == m % t.n);
    }
}

TEST_CASE("tsp greedy tour") {
    const auto t = gen_tsp(9, 123);
    std::vector<double> inv_d(static_cast<std::size_t>(t.n) * (t.n - 1));
    for (std::uint32_t i = 0; i < t.n; ++i) {
        for (std::uint32_t j = 0; j < t.n; ++j) {
            if (i != j) inv_d[edge_index(i, j, t.n)] = 1.0 / t.d(i, j);
        }
    }
    for (std::uint32_t start = 0; start < t.n; ++start) {
        CHECK(tsp_greedy_tour(t, inv_d, start).seq == nn_tour(t, start));
    }

    SUBCASE("uniform probabilities visit cities in index order") {
        const std::vector<double> ones(static_cast<std::size_t>(t.n) * (t.n - 1), 1.0);
        CHECK(tsp_greedy_tour(t, ones, 3).seq ==
              std::vector<std::uint32_t>{3, 0, 1, 2, 4, 5, 6, 7, 8});
    }
}

TEST_CASE("op objective and candidates") {
    const auto o =
        OpInstance::from_parts({{0, 0}, {0.1, 0}, {0.5, 0}, {5, 5}}, {0, 3, 9, 1}, 1.1);
    CHECK(op_objective(o, {}) == 0.0);
    CHECK(op_objective(o, {1, 2}) == 12.0);
    CHECK_THROWS_AS(op_objective(o, {1, 1}), BadInput);

    SUBCASE("budget screening") {
        const auto from_depot = op_candidates(o, {}, 0.0);
        CHECK(from_depot == std::vector<std::uint32_t>{1, 2}); // 3 is out of reach
        // After visiting 1, only 2 fits: enumerate continuations by hand.
        const double used = o.d(0, 1);
        const auto nexts = op_candidates(o, {1}, used);
        CHECK(nexts == std::vector<std::uint32_t>{2});
    }

    SUBCASE("huge budget admits every unvisited location") {
        const auto big =
            OpInstance::from_parts({{0, 0}, {0.1, 0}, {0.5, 0}, {5, 5}}, {0, 3, 9, 1}, 100.0);
        CHECK(op_candidates(big, {}, 0.0) == std::vector<std::uint32_t>{1, 2, 3});
    }

    SUBCASE("budget below the cheapest round trip leaves no candidates") {
        const auto tiny = OpInstance::from_parts({{0, 0}, {1, 0}, {0, 1}}, {0, 1, 1}, 0.5);
        CHECK(op_candidates(tiny, {}, 0.0).empty());
    }

    SUBCASE("uniform-prize route collects n-1") {
        const auto loose = OpInstance::from_parts({{0, 0}, {0.1, 0}, {0.2, 0}}, {0, 1, 1}, 10.0);
        CHECK(op_objective(loose, {1, 2}) == 2.0);
    }
}

TEST_CASE("op edge features") {
    const auto o = OpInstance::from_parts({{0, 0}, {1, 0}, {0, 2}}, {0, 4, 6}, 1.0);
    const auto f = op_edge_features(o);
    const std::size_t row01 = edge_index(0, 1, 3);
    CHECK(f[row01 * 3 + 0] == doctest::Approx(1.0)); // d01 equals the budget

    // Gains from the depot: p1/d01 = 4, p2/d02 = 3; location 1 is the best.
    CHECK(f[row01 * 3 + 1] == doctest::Approx(1.0));
    const std::size_t row02 = edge_index(0, 2, 3);
    CHECK(f[row02 * 3 + 1] == doctest::Approx(3.0 / 4.0));

    SUBCASE("third feature against a brute-force max over sources") {
        for (std::uint32_t i = 0; i < o.n; ++i) {
            for (std::uint32_t j = 0; j < o.n; ++j) {
                if (i == j || o.d(i, j) == 0.0) continue;
                double best = 0.0;
                for (std::uint32_t k = 0; k < o.n; ++k) {
                    if (k == j || o.d(k, j) == 0.0) continue;
                    best = std::max(best, o.prizes[k] / o.d(k, j));
                }
                const double gain = o.prizes[j] / o.d(i, j);
                const double expected = best > 0.0 ? gain / best : 0.0;
                CHECK(f[edge_index(i, j, o.n) * 3 + 2] == doctest::Approx(expected));
            }
        }
    }
}

TEST_CASE("feasibility checks") {
    const auto path = WeightedGraph::from_edges(3, {{0, 1}, {1, 2}}, {5, 1, 5});
    const ProblemInstance g(path);
    CHECK(feasible(g, Solution::clique({0, 1})).ok);
    CHECK(feasible(g, Solution::clique({0, 2})).reason == "missing edge");
    CHECK(feasible(g, Solution::clique({1})).reason == "clique not maximal");

    const ProblemInstance t(TspInstance::from_coords({{0, 0}, {1, 0}, {1, 1}, {0, 1}}));
    CHECK(feasible(t, Solution::tour({0, 1, 2, 3})).ok);
    CHECK(feasible(t, Solution::tour({0, 1, 2, 2})).reason == "repeated city");
    CHECK_FALSE(feasible(t, Solution::tour({0, 1, 2})).ok);

    const auto o = OpInstance::from_parts({{0, 0}, {0.4, 0}, {10, 10}}, {0, 1, 1}, 1.0);
    const ProblemInstance op(o);
    CHECK(feasible(op, Solution::route({1})).ok);
    CHECK(feasible(op, Solution::route({})).reason == "route not budget-maximal");
    CHECK(feasible(op, Solution::route({1, 2})).reason == "over budget");
    CHECK(feasible(op, Solution::route({2})).reason == "over budget");

    SUBCASE("an over-budget-by-epsilon route is rejected") {
        // Budget exactly the round trip to 1; the detour via 2 overshoots.
        const auto tight =
            OpInstance::from_parts({{0, 0}, {0.5, 0}, {0.5, 1e-9}}, {0, 1, 1}, 1.0);
        const ProblemInstance ti(tight);
        CHECK(feasible(ti, Solution::route({1})).ok);
        CHECK_FALSE(feasible(ti, Solution::route({1, 2})).ok);
    }
}

TEST_CASE("problem feature metadata") {
    CHECK(feature_dim(ProblemKind::mwcp) == 6);
    CHECK(feature_dim(ProblemKind::tsp) == 6);
    CHECK(feature_dim(ProblemKind::op) == 5);
    CHECK(problem_feature_names(ProblemKind::op) ==
          std::vector<std::string>{"d_over_budget", "gain_from_i", "gain_to_j"});
}

} // TEST_SUITE
