#pragma once

#include <cstdint>

#include "asptk/instance.hpp"

namespace asp {

// Both graph generators assign vertex weights w_i = ((i + 1) mod 200) + 1,
// the convention of the weighted-clique benchmark literature; the weights are
// written into the instance file so they stay auditable.

// Erdős–Rényi G(n, p): each pair independently an edge with the given density.
WeightedGraph gen_er(std::uint32_t n, double density, std::uint64_t seed);

// Barabási–Albert preferential attachment, attach_m edges per new vertex.
WeightedGraph gen_ba(std::uint32_t n, std::uint32_t attach_m, std::uint64_t seed);

// n cities uniform in the unit square.
TspInstance gen_tsp(std::uint32_t n, std::uint64_t seed);

enum class PrizeScheme { constant, uniform, distance };
PrizeScheme prize_scheme_from_string(const std::string& name);
std::string to_string(PrizeScheme scheme);

// Locations as gen_tsp with location 0 as depot. Budget uniform in
// [d/2 - 1, d/2 + 1] where d is the supplied mean optimal tour length,
// clamped below at the cheapest depot round trip.
OpInstance gen_op(std::uint32_t n, PrizeScheme scheme, double mean_tour_len, std::uint64_t seed);

} // namespace asp
