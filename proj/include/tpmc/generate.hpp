#pragma once

#include "tpmc/instance.hpp"
#include "tpmc/matching_types.hpp"

#include <cstdint>

namespace tpmc {

/// Seeded instance generation. The draw sequence is fixed (supplies, demands,
/// revenues, edge coin flips, per-market coverage edges, edge costs), so a
/// given seed always yields the same instance.
struct RandomInstanceOptions {
    std::uint64_t seed = 0;
    int suppliers = 0;
    int markets = 0;
    int demand_cap = 2; // demands drawn from {1..demand_cap}
    int supply_cap = 1; // capacities drawn from {1..supply_cap}
    Rational density = Rational(1, 2);
    Int cost_min = 0;
    Int cost_max = 9;
    Int revenue_min = 0;
    Int revenue_max = 20;
    int denominator_cap = 1; // >1 draws rational values num/den
};

TpmcInstance random_instance(const RandomInstanceOptions& options);

struct RandomGraphOptions {
    std::uint64_t seed = 0;
    int vertices = 0;
    Rational density = Rational(1, 2);
    Int weight_min = -5;
    Int weight_max = 9;
    int denominator_cap = 4;
    int max_edges = -1; // truncate after this many edges when >= 0
};

SimpleGraph random_graph(const RandomGraphOptions& options);

} // namespace tpmc
