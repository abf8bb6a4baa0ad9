#pragma once

#include "tpmc/instance.hpp"

#include <array>
#include <cstdint>
#include <vector>

namespace tpmc {

enum class NodeKind { FULL_U1, FULL_U2, PARTIAL_U1, PARTIAL_U2 };
enum class CopyTag { NONE, J1, J2, J3, J4 };

const char* to_string(NodeKind kind);
const char* to_string(CopyTag tag);

/// One node of the conflict graph. Full nodes stand for markets served in
/// exactly one of the two source solutions and carry that solution's whole
/// supplier set; partial nodes are per-supplier copies (tags J1/J2 on the
/// first solution's side, J3/J4 on the second's) of markets served in both.
struct ConflictNode {
    std::string id;
    NodeKind kind = NodeKind::FULL_U1;
    int market = -1;             // canonical market index
    CopyTag copy_tag = CopyTag::NONE;
    std::vector<int> suppliers;  // I_a, canonical supply indices, ascending

    bool in_u1() const { return kind == NodeKind::FULL_U1 || kind == NodeKind::PARTIAL_U1; }
    bool is_full() const { return kind == NodeKind::FULL_U1 || kind == NodeKind::FULL_U2; }
};

/// Node value: +1 / -1 for full nodes on the first / second side, +1/2 and
/// -1/2 for partial copies. Path and graph values are sums of node values.
Rational node_value(NodeKind kind);

/// How suppliers are attached to the two partial copies of a market that is
/// served in both solutions. The construction is valid for any attachment;
/// Ascending is the deterministic default and Seeded shuffles each pair to
/// let tests confirm outcomes do not depend on the choice.
struct PartialAssignment {
    enum class Mode { Ascending, Seeded };
    Mode mode = Mode::Ascending;
    std::uint64_t seed = 0;
};

/// Bipartite graph on the two solutions' serving structure: nodes share an
/// edge exactly when their supplier sets intersect. Built only for
/// unit-supply instances with demands at most 2, where every node has degree
/// at most 2, so components are paths or even cycles.
class ConflictGraph {
  public:
    const TpmcInstance& instance() const { return inst_; }
    const Solution& first_solution() const { return sol1_; }
    const Solution& second_solution() const { return sol2_; }
    const std::vector<ConflictNode>& nodes() const { return nodes_; }
    /// (u1 node, u2 node) index pairs, lexicographically sorted.
    const std::vector<std::pair<int, int>>& graph_edges() const { return edges_; }
    const std::vector<std::vector<int>>& adjacency() const { return adjacency_; }

    /// Market-index partitions: served only by the first solution (full side
    /// one), only by the second (full side two), by both (split into
    /// demand-1 and demand-2 groups), or by neither.
    const std::vector<int>& full_markets_u1() const { return full_u1_; }
    const std::vector<int>& full_markets_u2() const { return full_u2_; }
    const std::vector<int>& partial_markets_d1() const { return partial_d1_; }
    const std::vector<int>& partial_markets_d2() const { return partial_d2_; }
    const std::vector<int>& rejected_markets() const { return rejected_; }

    Int k1() const { return k1_; }
    Int k2() const { return k2_; }

    /// Node index of a market's copy with the given tag, -1 when absent.
    int copy_node(int market, CopyTag tag) const;

    friend ConflictGraph build_conflict_graph(const TpmcInstance&, const Solution&,
                                              const Solution&, const PartialAssignment&);

  private:
    TpmcInstance inst_;
    Solution sol1_, sol2_;
    std::vector<ConflictNode> nodes_;
    std::vector<std::pair<int, int>> edges_;
    std::vector<std::vector<int>> adjacency_;
    std::vector<int> full_u1_, full_u2_, partial_d1_, partial_d2_, rejected_;
    std::vector<std::array<int, 4>> copy_nodes_; // per market, J1..J4 node ids
    Int k1_ = 0, k2_ = 0;
};

ConflictGraph build_conflict_graph(const TpmcInstance& inst, const Solution& sol1,
                                   const Solution& sol2,
                                   const PartialAssignment& assignment = {});

/// Values keyed by node index.
std::vector<Rational> node_values(const ConflictGraph& graph);

/// Sum of all node values; always equals k2 - k1.
Rational total_value(const ConflictGraph& graph);

enum class ComponentKind { PATH, EVEN_CYCLE };

struct Component {
    std::vector<int> nodes; // ascending node indices
    ComponentKind kind = ComponentKind::PATH;
    Rational value;
    int partial_count = 0;
};

/// Connected components in canonical order (by smallest node index). Throws
/// FalsificationError if any component is neither a path nor an even cycle
/// of full nodes.
std::vector<Component> classify_components(const ConflictGraph& graph);

/// Selects a union of whole path components whose value is 1 by the marking
/// walk: start from a +1 full path if one exists, otherwise pair +1/2
/// partial paths with mirror paths until the running value closes at 1.
/// Requires total_value(graph) >= 2. The result always satisfies
/// verify_swap_subgraph.
std::vector<int> find_swap_subgraph(const ConflictGraph& graph);

struct SwapSubgraphCheck {
    bool component_closed = false; // no edges leave the node set
    bool copies_balanced = false;  // per market, equal copy counts on both sides
    bool full_excess_one = false;  // one more first-side full node than second
    bool all() const { return component_closed && copies_balanced && full_excess_one; }
};

/// Literal check of the three properties the swap construction needs.
SwapSubgraphCheck verify_swap_subgraph(const ConflictGraph& graph,
                                       const std::vector<int>& node_set);

struct SwapOutcome {
    Solution sol3, sol4;
    Rational rho;   // objective of the first source solution
    Rational delta; // obj(sol3) = rho - delta; obj(sol4) = obj(sol2) + delta
    Int k3 = 0;     // = k1 + 1
    Int k4 = 0;     // = k2 - 1
};

/// Applies the two symmetric reroutes defined by the selected node set:
/// sol3 starts from the first solution and flips the selected full markets,
/// serving each doubly-served market by its unselected first-side copies and
/// selected second-side copies; sol4 mirrors this from the second solution.
/// Both outputs are checked feasible with cardinalities k1+1 and k2-1.
SwapOutcome apply_swap(const ConflictGraph& graph, const std::vector<int>& node_set);
SwapOutcome apply_swap(const ConflictGraph& graph, const std::vector<int>& node_set,
                       const std::vector<Rational>& costs,
                       const std::vector<Rational>& revenues);

/// Given two optimal solutions of a unit-supply simple instance whose
/// rejection counts differ by at least two, produces an optimal solution at
/// cardinality k1 + 1. Optimality of the inputs is caller-asserted; it is
/// rechecked through delta = 0, and a nonzero delta raises
/// PreconditionError.
Solution edge_property_witness(const TpmcInstance& inst, const std::vector<Rational>& costs,
                               const std::vector<Rational>& revenues, const Solution& sol1,
                               const Solution& sol2);

} // namespace tpmc
