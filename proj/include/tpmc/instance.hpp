#pragma once

#include "tpmc/error.hpp"
#include "tpmc/rational.hpp"

#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

namespace tpmc {

struct SupplyNode {
    std::string id;
    Int capacity = 0; // s_i >= 1

    bool operator==(const SupplyNode&) const = default;
};

struct MarketNode {
    std::string id;
    Int demand = 0; // d_j >= 1
    Rational revenue; // lost revenue when the market is rejected

    bool operator==(const MarketNode&) const = default;
};

struct CostEdge {
    std::string from; // supply id
    std::string to;   // market id
    Rational cost;
    // Indices into the owning instance, resolved at construction.
    int supply = -1;
    int market = -1;

    bool operator==(const CostEdge& other) const {
        return from == other.from && to == other.to && cost == other.cost;
    }
};

/// A bipartite supply/market instance. Immutable after construction; the
/// listed order of supplies, markets and edges is the canonical coordinate
/// order for every vector indexed by them.
class TpmcInstance {
  public:
    TpmcInstance() = default;
    /// Validates and indexes the data. Throws ParseError on duplicate ids,
    /// unknown edge endpoints, duplicate edges, or nonpositive s/d.
    TpmcInstance(std::vector<SupplyNode> supplies, std::vector<MarketNode> markets,
                 std::vector<CostEdge> edges);

    const std::vector<SupplyNode>& supplies() const { return supplies_; }
    const std::vector<MarketNode>& markets() const { return markets_; }
    const std::vector<CostEdge>& edges() const { return edges_; }

    std::size_t num_supplies() const { return supplies_.size(); }
    std::size_t num_markets() const { return markets_.size(); }
    std::size_t num_edges() const { return edges_.size(); }

    /// Index lookups; return -1 when absent.
    int supply_index(const std::string& id) const;
    int market_index(const std::string& id) const;
    int edge_index(const std::string& from, const std::string& to) const;

    /// Incident edge indices in canonical order.
    const std::vector<int>& market_edges(int market) const { return market_edges_[market]; }
    const std::vector<int>& supply_edges(int supply) const { return supply_edges_[supply]; }

    Int total_supply() const;
    Int total_demand() const;

    std::vector<Rational> cost_vector() const;
    std::vector<Rational> revenue_vector() const;

    /// Value-identical copy with costs/revenues replaced (same combinatorics).
    TpmcInstance with_objective(const std::vector<Rational>& costs,
                                const std::vector<Rational>& revenues) const;

    bool operator==(const TpmcInstance& other) const {
        return supplies_ == other.supplies_ && markets_ == other.markets_ &&
               edges_ == other.edges_;
    }

  private:
    std::vector<SupplyNode> supplies_;
    std::vector<MarketNode> markets_;
    std::vector<CostEdge> edges_;
    std::unordered_map<std::string, int> supply_index_;
    std::unordered_map<std::string, int> market_index_;
    std::unordered_map<std::string, int> edge_index_; // key: from + '\x1f' + to
    std::vector<std::vector<int>> market_edges_;
    std::vector<std::vector<int>> supply_edges_;
};

/// Edge flows and market rejection flags in canonical coordinate order.
/// z is 0/1 for integral solutions and may be any rational in [0,1] for
/// relaxed points.
struct Solution {
    std::vector<Rational> x;
    std::vector<Rational> z;
    std::optional<Rational> objective;

    bool operator==(const Solution& other) const { return x == other.x && z == other.z; }
};

enum class CardinalitySense { AT_MOST, EXACTLY, AT_LEAST };

struct CardinalityBound {
    CardinalitySense sense = CardinalitySense::AT_MOST;
    Int k = 0;

    bool admits(Int cardinality) const {
        switch (sense) {
        case CardinalitySense::AT_MOST: return cardinality <= k;
        case CardinalitySense::EXACTLY: return cardinality == k;
        case CardinalitySense::AT_LEAST: return cardinality >= k;
        }
        return false;
    }
};

/// Correspondence produced by split_supplies: each original supply i becomes
/// capacity(i) unit copies named "<id>#1".."<id>#s".
struct SplitMapping {
    std::unordered_map<std::string, std::string> to_original;
    std::unordered_map<std::string, std::vector<std::string>> copies;
};

struct SplitResult {
    TpmcInstance instance;
    SplitMapping mapping;
};

struct Violation {
    std::string constraint; // e.g. "demand", "supply", "x-nonneg", "z-binary"
    std::string subject;    // node/edge id
    std::string detail;
};

struct FeasibilityReport {
    bool feasible = true;
    std::vector<Violation> violations;
};

/// Exact objective value w·x + r·z. Throws PreconditionError on index mismatch.
Rational evaluate_objective(const TpmcInstance& inst, const Solution& sol);
Rational evaluate_objective(const TpmcInstance& inst, const std::vector<Rational>& costs,
                            const std::vector<Rational>& revenues, const Solution& sol);

/// Checks demand equalities, supply bounds, x >= 0 and z in [0,1]
/// (or z in {0,1} and x integral when `integral` is set). Reports, never throws.
FeasibilityReport check_feasible(const TpmcInstance& inst, const Solution& sol, bool integral);

/// True iff every demand is at most 2.
bool is_simple(const TpmcInstance& inst);

/// True iff every supply capacity is exactly 1.
bool is_unit_supply(const TpmcInstance& inst);

/// Replaces each supply of capacity s by s unit-capacity copies, each
/// inheriting all incident edges at identical cost. The market side is
/// unchanged.
SplitResult split_supplies(const TpmcInstance& inst);

/// Folds a split-instance solution back onto the original instance: original
/// edge flow = sum over copies, z unchanged, objective preserved exactly.
/// Throws PreconditionError when sol is infeasible for the split instance.
Solution merge_solution(const TpmcInstance& original, const TpmcInstance& split,
                        const SplitMapping& mapping, const Solution& sol);

/// Distributes an original-instance integral solution over unit copies in
/// canonical copy order; inverse of merge_solution up to flow routing.
Solution split_solution(const TpmcInstance& original, const TpmcInstance& split,
                        const SplitMapping& mapping, const Solution& sol);

Int rejection_cardinality(const Solution& sol);

/// Deterministic tie-break order: z as a 0/1 string in market order, then x
/// lexicographically.
bool solution_less(const Solution& a, const Solution& b);

} // namespace tpmc
