#pragma once

#include "tpmc/cc_solver.hpp"
#include "tpmc/instance.hpp"
#include "tpmc/matching_types.hpp"

namespace tpmc {

/// Market-choice encoding of a matching problem: one unit supply per vertex,
/// one demand-2 market per edge, and a market edge from each endpoint. A
/// matching M corresponds to the integral solution that serves exactly the
/// markets of M (y = 1 - z coordinatewise, market index = edge index).
/// Edge costs are zero; market revenues carry the edge weights, so
/// minimizing lost revenue maximizes matched weight.
struct MatchingReduction {
    TpmcInstance instance;
};

MatchingReduction reduce_matching(const SimpleGraph& graph);

/// Maximum-weight matching with at most k edges, found through the
/// cardinality-constrained solver on the reduced instance (at most k served
/// markets means at least m - k rejections). Returns ascending edge indices.
std::vector<int> max_weight_matching_card(const SimpleGraph& graph, Int k, int jobs = 1);

/// Same solve with the reduction and its selection table built once, for
/// sweeping over many bounds on one graph.
class MatchingCardSolver {
  public:
    explicit MatchingCardSolver(const SimpleGraph& graph, int jobs = 1);
    std::vector<int> solve(Int k) const;

  private:
    SimpleGraph graph_;
    CcSolver solver_;
};

/// Exhaustive oracle over all matchings with at most k edges (m <= 20).
/// Ties prefer the lexicographically smallest ascending edge-index list.
std::vector<int> brute_force_matchings(const SimpleGraph& graph, Int k);

/// Every matching of the graph as ascending edge-index lists, in
/// lexicographic order; cap guards the enumeration size.
std::vector<std::vector<int>> all_matchings(const SimpleGraph& graph, std::size_t cap = 1 << 20);

Rational matching_weight(const SimpleGraph& graph, const std::vector<int>& edges);

} // namespace tpmc
