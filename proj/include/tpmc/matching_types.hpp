#pragma once

#include "tpmc/rational.hpp"

#include <vector>

namespace tpmc {

struct WeightedEdge {
    int u = 0;
    int v = 0;
    Rational weight;

    bool operator==(const WeightedEdge&) const = default;
};

/// Undirected graph with 0-based vertices, no loops and no duplicate edges.
struct SimpleGraph {
    int vertices = 0;
    std::vector<WeightedEdge> edges;

    bool operator==(const SimpleGraph&) const = default;
};

/// Throws ParseError when the graph violates the structural invariants.
void validate_graph(const SimpleGraph& graph);

} // namespace tpmc
