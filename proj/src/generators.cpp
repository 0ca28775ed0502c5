#include "asptk/generators.hpp"

#include <algorithm>
#include <cmath>

#include "asptk/common.hpp"

namespace asp {

namespace {

std::vector<double> benchmark_weights(std::uint32_t n) {
    std::vector<double> w(n);
    for (std::uint32_t i = 0; i < n; ++i) w[i] = static_cast<double>((i + 1) % 200 + 1);
    return w;
}

} // namespace

WeightedGraph gen_er(std::uint32_t n, double density, std::uint64_t seed) {
    if (n == 0) throw BadInput("graph needs at least one vertex");
    if (!(density >= 0.0 && density <= 1.0)) throw BadInput("density must be in [0, 1]");
    Rng rng = make_stream(seed, 0x45521ULL);
    std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;
    for (std::uint32_t i = 0; i < n; ++i) {
        for (std::uint32_t j = i + 1; j < n; ++j) {
            if (next_double(rng) < density) edges.emplace_back(i, j);
        }
    }
    return WeightedGraph::from_edges(n, edges, benchmark_weights(n));
}

WeightedGraph gen_ba(std::uint32_t n, std::uint32_t attach_m, std::uint64_t seed) {
    if (n == 0) throw BadInput("graph needs at least one vertex");
    if (attach_m == 0) throw BadInput("attach_m must be >= 1");
    Rng rng = make_stream(seed, 0xba0001ULL);
    const std::uint32_t m0 = std::min(attach_m + 1, n);
    std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;
    // Seed clique, then preferential attachment via the repeated-endpoint list.
    std::vector<std::uint32_t> endpoints;
    for (std::uint32_t i = 0; i < m0; ++i) {
        for (std::uint32_t j = i + 1; j < m0; ++j) {
            edges.emplace_back(i, j);
            endpoints.push_back(i);
            endpoints.push_back(j);
        }
    }
    std::vector<std::uint8_t> picked(n, 0);
    for (std::uint32_t v = m0; v < n; ++v) {
        std::vector<std::uint32_t> targets;
        const std::uint32_t want = std::min(attach_m, v);
        std::size_t attempts = 0;
        while (targets.size() < want) {
            std::uint32_t u;
            if (endpoints.empty() || attempts > 50 + 20 * static_cast<std::size_t>(want)) {
                u = static_cast<std::uint32_t>(next_below(rng, v)); // uniform fallback
            } else {
                u = endpoints[next_below(rng, endpoints.size())];
            }
            ++attempts;
            if (picked[u]) continue;
            picked[u] = 1;
            targets.push_back(u);
        }
        for (std::uint32_t u : targets) {
            picked[u] = 0;
            edges.emplace_back(u, v);
            endpoints.push_back(u);
            endpoints.push_back(v);
        }
    }
    return WeightedGraph::from_edges(n, edges, benchmark_weights(n));
}

TspInstance gen_tsp(std::uint32_t n, std::uint64_t seed) {
    if (n < 3) throw BadInput("TSP needs at least 3 cities");
    Rng rng = make_stream(seed, 0x75b0ULL);
    std::vector<std::array<double, 2>> coords(n);
    for (auto& c : coords) {
        c[0] = next_double(rng);
        c[1] = next_double(rng);
    }
    return TspInstance::from_coords(std::move(coords));
}

PrizeScheme prize_scheme_from_string(const std::string& name) {
    if (name == "constant") return PrizeScheme::constant;
    if (name == "uniform") return PrizeScheme::uniform;
    if (name == "distance") return PrizeScheme::distance;
    throw BadInput("unknown prize scheme: " + name);
}

std::string to_string(PrizeScheme scheme) {
    switch (scheme) {
        case PrizeScheme::constant: return "constant";
        case PrizeScheme::uniform: return "uniform";
        case PrizeScheme::distance: return "distance";
    }
    throw Error("unknown prize scheme");
}

OpInstance gen_op(std::uint32_t n, PrizeScheme scheme, double mean_tour_len, std::uint64_t seed) {
    if (n < 2) throw BadInput("OP needs at least 2 locations");
    if (!(mean_tour_len > 0.0)) throw BadInput("mean tour length must be positive");
    Rng rng = make_stream(seed, 0x0b0eULL);
    std::vector<std::array<double, 2>> coords(n);
    for (auto& c : coords) {
        c[0] = next_double(rng);
        c[1] = next_double(rng);
    }
    const auto& depot = coords[0];
    double max_depot_dist = 0.0;
    std::vector<double> depot_dist(n, 0.0);
    for (std::uint32_t i = 1; i < n; ++i) {
        const double dx = coords[i][0] - depot[0];
        const double dy = coords[i][1] - depot[1];
        depot_dist[i] = std::sqrt(dx * dx + dy * dy);
        max_depot_dist = std::max(max_depot_dist, depot_dist[i]);
    }

    std::vector<double> prizes(n, 0.0);
    for (std::uint32_t i = 1; i < n; ++i) {
        switch (scheme) {
            case PrizeScheme::constant:
                prizes[i] = 1.0;
                break;
            case PrizeScheme::uniform:
                prizes[i] = static_cast<double>(1 + next_below(rng, 100)) / 100.0;
                break;
            case PrizeScheme::distance: {
                const double ratio = max_depot_dist > 0.0 ? depot_dist[i] / max_depot_dist : 0.0;
                prizes[i] = (1.0 + std::floor(99.0 * ratio)) / 100.0;
                break;
            }
        }
    }

    double budget = (mean_tour_len / 2.0 - 1.0) + 2.0 * next_double(rng);
    double cheapest_round_trip = 2.0 * *std::min_element(depot_dist.begin() + 1, depot_dist.end());
    budget = std::max(budget, cheapest_round_trip);
    return OpInstance::from_parts(std::move(coords), std::move(prizes), budget);
}

} // namespace asp
