#include "tpmc/matching.hpp"

#include "tpmc/cc_solver.hpp"
#include "tpmc/error.hpp"

#include <algorithm>

namespace tpmc {

void validate_graph(const SimpleGraph& graph) {
    std::vector<std::pair<int, int>> seen;
    for (const auto& e : graph.edges) {
        if (e.u < 0 || e.v < 0 || e.u >= graph.vertices || e.v >= graph.vertices) {
            throw ParseError("edge endpoint out of range");
        }
        if (e.u == e.v) {
            throw ParseError("loops are not allowed");
        }
        seen.emplace_back(std::min(e.u, e.v), std::max(e.u, e.v));
    }
    std::sort(seen.begin(), seen.end());
    if (std::adjacent_find(seen.begin(), seen.end()) != seen.end()) {
        throw ParseError("duplicate edge");
    }
}

MatchingReduction reduce_matching(const SimpleGraph& graph) {
    validate_graph(graph);
    std::vector<SupplyNode> supplies;
    supplies.reserve(graph.vertices);
    for (int v = 0; v < graph.vertices; ++v) {
        supplies.push_back({"v" + std::to_string(v), 1});
    }
    std::vector<MarketNode> markets;
    std::vector<CostEdge> edges;
    markets.reserve(graph.edges.size());
    for (std::size_t e = 0; e < graph.edges.size(); ++e) {
        const auto& edge = graph.edges[e];
        std::string market_id = "e" + std::to_string(e);
        edges.push_back({"v" + std::to_string(edge.u), market_id, Rational(0)});
        edges.push_back({"v" + std::to_string(edge.v), market_id, Rational(0)});
        markets.push_back({std::move(market_id), 2, edge.weight});
    }
    return {TpmcInstance(std::move(supplies), std::move(markets), std::move(edges))};
}

MatchingCardSolver::MatchingCardSolver(const SimpleGraph& graph, int jobs)
    : graph_(graph), solver_(reduce_matching(graph).instance, jobs) {}

std::vector<int> MatchingCardSolver::solve(Int k) const {
    const Int m = static_cast<Int>(graph_.edges.size());
    if (k < 0 || k > m) {
        throw PreconditionError("matching cardinality k out of range");
    }
    const auto result = solver_.solve({CardinalitySense::AT_LEAST, m - k});
    if (!result) {
        throw FalsificationError("rejecting markets is always feasible");
    }
    std::vector<int> matched;
    for (int e = 0; e < m; ++e) {
        if (result->solution.z[e] == 0) matched.push_back(e);
    }
    return matched;
}

std::vector<int> max_weight_matching_card(const SimpleGraph& graph, Int k, int jobs) {
    return MatchingCardSolver(graph, jobs).solve(k);
}

namespace {

void enumerate_matchings(const SimpleGraph& graph, std::size_t edge, std::uint64_t used,
                         std::vector<int>& current, std::vector<std::vector<int>>& out,
                         std::size_t cap) {
    if (out.size() >= cap) {
        throw CapExceededError("matching enumeration cap exceeded");
    }
    if (edge == graph.edges.size()) {
        out.push_back(current);
        return;
    }
    const auto& e = graph.edges[edge];
    // Excluding first yields lexicographic order over ascending index lists.
    enumerate_matchings(graph, edge + 1, used, current, out, cap);
    if (!(used >> e.u & 1u) && !(used >> e.v & 1u)) {
        current.push_back(static_cast<int>(edge));
        enumerate_matchings(graph, edge + 1, used | 1ULL << e.u | 1ULL << e.v, current, out,
                            cap);
        current.pop_back();
    }
}

} // namespace

std::vector<std::vector<int>> all_matchings(const SimpleGraph& graph, std::size_t cap) {
    validate_graph(graph);
    if (graph.vertices > 63) {
        throw CapExceededError("matching enumeration supports at most 63 vertices");
    }
    std::vector<std::vector<int>> out;
    std::vector<int> current;
    enumerate_matchings(graph, 0, 0, current, out, cap);
    std::sort(out.begin(), out.end());
    return out;
}

Rational matching_weight(const SimpleGraph& graph, const std::vector<int>& edges) {
    Rational total = 0;
    for (int e : edges) total += graph.edges[e].weight;
    return total;
}

std::vector<int> brute_force_matchings(const SimpleGraph& graph, Int k) {
    if (graph.edges.size() > 20) {
        throw CapExceededError("brute-force matching oracle supports at most 20 edges");
    }
    if (k < 0 || k > static_cast<Int>(graph.edges.size())) {
        throw PreconditionError("matching cardinality k out of range");
    }
    std::optional<std::vector<int>> best;
    Rational best_weight;
    for (const auto& matching : all_matchings(graph)) {
        if (static_cast<Int>(matching.size()) > k) continue;
        const Rational weight = matching_weight(graph, matching);
        if (!best || weight > best_weight) {
            best = matching;
            best_weight = weight;
        }
    }
    return *best; // the empty matching always qualifies
}

} // namespace tpmc
