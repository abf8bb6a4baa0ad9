#include "tpmc/conflict_graph.hpp"

#include "tpmc/error.hpp"

#include <algorithm>
#include <random>
#include <sstream>

namespace tpmc {

const char* to_string(NodeKind kind) {
    switch (kind) {
    case NodeKind::FULL_U1: return "FULL_U1";
    case NodeKind::FULL_U2: return "FULL_U2";
    case NodeKind::PARTIAL_U1: return "PARTIAL_U1";
    case NodeKind::PARTIAL_U2: return "PARTIAL_U2";
    }
    return "?";
}

const char* to_string(CopyTag tag) {
    switch (tag) {
    case CopyTag::NONE: return "-";
    case CopyTag::J1: return "j1";
    case CopyTag::J2: return "j2";
    case CopyTag::J3: return "j3";
    case CopyTag::J4: return "j4";
    }
    return "?";
}

Rational node_value(NodeKind kind) {
    switch (kind) {
    case NodeKind::FULL_U1: return Rational(1);
    case NodeKind::PARTIAL_U1: return Rational(1, 2);
    case NodeKind::PARTIAL_U2: return Rational(-1, 2);
    case NodeKind::FULL_U2: return Rational(-1);
    }
    return Rational(0);
}

int ConflictGraph::copy_node(int market, CopyTag tag) const {
    if (tag == CopyTag::NONE) return -1;
    return copy_nodes_[market][static_cast<int>(tag) - 1];
}

namespace {

// Suppliers shipping one unit to the market in an integral unit-supply
// solution.
std::vector<int> serving_suppliers(const TpmcInstance& inst, const Solution& sol, int market) {
    std::vector<int> suppliers;
    for (int e : inst.market_edges(market)) {
        if (sol.x[e] == 1) {
            suppliers.push_back(inst.edges()[e].supply);
        } else if (sol.x[e] != 0) {
            throw PreconditionError("solution flows are not unit-integral");
        }
    }
    std::sort(suppliers.begin(), suppliers.end());
    return suppliers;
}

std::string copy_id(const TpmcInstance& inst, int market, CopyTag tag) {
    return inst.markets()[market].id + "." + to_string(tag);
}

} // namespace

ConflictGraph build_conflict_graph(const TpmcInstance& inst, const Solution& sol1,
                                   const Solution& sol2, const PartialAssignment& assignment) {
    if (!is_unit_supply(inst)) {
        throw PreconditionError("conflict graph requires unit supplies");
    }
    if (!is_simple(inst)) {
        throw PreconditionError("conflict graph requires demands of at most 2");
    }
    for (const Solution* sol : {&sol1, &sol2}) {
        if (!check_feasible(inst, *sol, /*integral=*/true).feasible) {
            throw PreconditionError("conflict graph inputs must be feasible integral solutions");
        }
    }

    ConflictGraph graph;
    graph.inst_ = inst;
    graph.sol1_ = sol1;
    graph.sol2_ = sol2;
    graph.k1_ = rejection_cardinality(sol1);
    graph.k2_ = rejection_cardinality(sol2);
    graph.copy_nodes_.assign(inst.num_markets(), {-1, -1, -1, -1});

    std::mt19937_64 rng(assignment.seed);
    auto order_pair = [&](std::vector<int> pair) {
        if (assignment.mode == PartialAssignment::Mode::Seeded && pair.size() == 2 &&
            (rng() & 1u)) {
            std::swap(pair[0], pair[1]);
        }
        return pair;
    };

    auto add_copy = [&graph, &inst](int market, CopyTag tag, NodeKind kind, int supplier) {
        graph.copy_nodes_[market][static_cast<int>(tag) - 1] =
            static_cast<int>(graph.nodes_.size());
        graph.nodes_.push_back({copy_id(inst, market, tag), kind, market, tag, {supplier}});
    };

    for (int j = 0; j < static_cast<int>(inst.num_markets()); ++j) {
        const bool served1 = sol1.z[j] == 0;
        const bool served2 = sol2.z[j] == 0;
        if (!served1 && !served2) {
            graph.rejected_.push_back(j);
            continue;
        }
        if (served1 && !served2) {
            graph.full_u1_.push_back(j);
            graph.nodes_.push_back({inst.markets()[j].id, NodeKind::FULL_U1, j, CopyTag::NONE,
                                    serving_suppliers(inst, sol1, j)});
            continue;
        }
        if (!served1 && served2) {
            graph.full_u2_.push_back(j);
            graph.nodes_.push_back({inst.markets()[j].id, NodeKind::FULL_U2, j, CopyTag::NONE,
                                    serving_suppliers(inst, sol2, j)});
            continue;
        }
        const auto side1 = order_pair(serving_suppliers(inst, sol1, j));
        const auto side2 = order_pair(serving_suppliers(inst, sol2, j));
        if (inst.markets()[j].demand == 2) {
            if (side1.size() != 2 || side2.size() != 2) {
                throw FalsificationError("demand-2 market served by fewer than two suppliers");
            }
            graph.partial_d2_.push_back(j);
            add_copy(j, CopyTag::J1, NodeKind::PARTIAL_U1, side1[0]);
            add_copy(j, CopyTag::J2, NodeKind::PARTIAL_U1, side1[1]);
            add_copy(j, CopyTag::J3, NodeKind::PARTIAL_U2, side2[0]);
            add_copy(j, CopyTag::J4, NodeKind::PARTIAL_U2, side2[1]);
        } else {
            graph.partial_d1_.push_back(j);
            add_copy(j, CopyTag::J1, NodeKind::PARTIAL_U1, side1[0]);
            add_copy(j, CopyTag::J3, NodeKind::PARTIAL_U2, side2[0]);
        }
    }

    // A unit supplier ships at most one unit per solution, so it belongs to
    // at most one node per side; edges join the two owners of a supplier.
    std::vector<int> owner_u1(inst.num_supplies(), -1);
    std::vector<int> owner_u2(inst.num_supplies(), -1);
    for (std::size_t a = 0; a < graph.nodes_.size(); ++a) {
        auto& owner = graph.nodes_[a].in_u1() ? owner_u1 : owner_u2;
        for (int i : graph.nodes_[a].suppliers) {
            if (owner[i] != -1) {
                throw FalsificationError("supplier '" + inst.supplies()[i].id +
                                         "' serves two markets in one solution");
            }
            owner[i] = static_cast<int>(a);
        }
    }
    for (std::size_t i = 0; i < inst.num_supplies(); ++i) {
        if (owner_u1[i] >= 0 && owner_u2[i] >= 0) {
            graph.edges_.emplace_back(owner_u1[i], owner_u2[i]);
        }
    }
    std::sort(graph.edges_.begin(), graph.edges_.end());
    graph.edges_.erase(std::unique(graph.edges_.begin(), graph.edges_.end()),
                       graph.edges_.end());
    graph.adjacency_.assign(graph.nodes_.size(), {});
    for (const auto& [a, b] : graph.edges_) {
        graph.adjacency_[a].push_back(b);
        graph.adjacency_[b].push_back(a);
    }
    return graph;
}

std::vector<Rational> node_values(const ConflictGraph& graph) {
    std::vector<Rational> values;
    values.reserve(graph.nodes().size());
    for (const auto& node : graph.nodes()) values.push_back(node_value(node.kind));
    return values;
}

Rational total_value(const ConflictGraph& graph) {
    Rational total = 0;
    for (const auto& node : graph.nodes()) total += node_value(node.kind);
    return total;
}

std::vector<Component> classify_components(const ConflictGraph& graph) {
    const auto& adjacency = graph.adjacency();
    const std::size_t n = graph.nodes().size();
    for (std::size_t v = 0; v < n; ++v) {
        if (adjacency[v].size() > 2) {
            throw FalsificationError("conflict-graph node '" + graph.nodes()[v].id +
                                     "' has degree " + std::to_string(adjacency[v].size()));
        }
    }
    std::vector<Component> components;
    std::vector<bool> seen(n, false);
    for (std::size_t start = 0; start < n; ++start) {
        if (seen[start]) continue;
        Component comp;
        std::vector<int> stack = {static_cast<int>(start)};
        seen[start] = true;
        std::size_t edge_ends = 0;
        while (!stack.empty()) {
            const int v = stack.back();
            stack.pop_back();
            comp.nodes.push_back(v);
            comp.value += node_value(graph.nodes()[v].kind);
            if (!graph.nodes()[v].is_full()) ++comp.partial_count;
            edge_ends += adjacency[v].size();
            for (int w : adjacency[v]) {
                if (!seen[w]) {
                    seen[w] = true;
                    stack.push_back(w);
                }
            }
        }
        std::sort(comp.nodes.begin(), comp.nodes.end());
        const std::size_t edges = edge_ends / 2;
        if (edges == comp.nodes.size() - 1) {
            comp.kind = ComponentKind::PATH;
        } else if (edges == comp.nodes.size()) {
            comp.kind = ComponentKind::EVEN_CYCLE;
            if (comp.nodes.size() % 2 != 0) {
                throw FalsificationError("odd cycle in conflict graph");
            }
            if (comp.partial_count != 0) {
                throw FalsificationError("cycle through a partial node in conflict graph");
            }
        } else {
            throw FalsificationError("conflict-graph component is neither path nor cycle");
        }
        components.push_back(std::move(comp));
    }
    // DFS discovery order already starts components at their smallest
    // unvisited node; sort keys keep this canonical regardless.
    std::sort(components.begin(), components.end(),
              [](const Component& a, const Component& b) { return a.nodes[0] < b.nodes[0]; });
    return components;
}

namespace {

// Partial copies in a path, in node-index order (lowest market, then tag).
std::vector<int> path_partials(const ConflictGraph& graph, const Component& comp) {
    std::vector<int> partials;
    for (int v : comp.nodes) {
        if (!graph.nodes()[v].is_full()) partials.push_back(v);
    }
    return partials;
}

// The opposite-side copy tags for a partial node's market.
std::vector<CopyTag> mirror_tags(const ConflictGraph& graph, int node) {
    const auto& n = graph.nodes()[node];
    const bool d2 = graph.instance().markets()[n.market].demand == 2;
    if (n.in_u1()) {
        return d2 ? std::vector<CopyTag>{CopyTag::J3, CopyTag::J4}
                  : std::vector<CopyTag>{CopyTag::J3};
    }
    return d2 ? std::vector<CopyTag>{CopyTag::J1, CopyTag::J2}
              : std::vector<CopyTag>{CopyTag::J1};
}

} // namespace

std::vector<int> find_swap_subgraph(const ConflictGraph& graph) {
    if (total_value(graph) < 2) {
        throw PreconditionError("swap subgraph needs total value >= 2 (k1 <= k2 - 2)");
    }
    const auto components = classify_components(graph);

    // A full-only path of value 1 is a complete answer on its own.
    for (const auto& comp : components) {
        if (comp.kind == ComponentKind::PATH && comp.partial_count == 0 && comp.value == 1) {
            return comp.nodes;
        }
    }

    std::vector<int> node_component(graph.nodes().size(), -1);
    for (std::size_t c = 0; c < components.size(); ++c) {
        for (int v : components[c].nodes) node_component[v] = static_cast<int>(c);
    }
    std::vector<bool> marked(components.size(), false);

    auto pick_positive_half_path = [&]() -> int {
        for (std::size_t c = 0; c < components.size(); ++c) {
            const auto& comp = components[c];
            if (!marked[c] && comp.kind == ComponentKind::PATH && comp.partial_count > 0 &&
                comp.value == Rational(1, 2)) {
                return static_cast<int>(c);
            }
        }
        return -1;
    };

    auto pick_mirror_path = [&](int pivot_node) -> std::pair<int, int> {
        // Candidate mirror copies of the pivot's market, lowest tag first.
        const auto& pivot = graph.nodes()[pivot_node];
        for (std::size_t c = 0; c < components.size(); ++c) {
            if (marked[c] || components[c].kind != ComponentKind::PATH) continue;
            for (CopyTag tag : mirror_tags(graph, pivot_node)) {
                const int copy = graph.copy_node(pivot.market, tag);
                if (copy >= 0 && node_component[copy] == static_cast<int>(c)) {
                    return {static_cast<int>(c), copy};
                }
            }
        }
        return {-1, -1};
    };

    const std::size_t step_limit = 4 * components.size() + 4;
    std::size_t steps = 0;
    for (;;) {
        const int start = pick_positive_half_path();
        if (start < 0) {
            throw FalsificationError("no unmarked +1/2 path available for the marking walk");
        }
        marked[start] = true;
        const auto start_partials = path_partials(graph, components[start]);
        if (start_partials.size() != 1) {
            throw FalsificationError("+1/2 path does not contain a unique partial node");
        }
        int pivot = start_partials[0];
        for (;;) {
            if (++steps > step_limit) {
                throw FalsificationError("marking walk exceeded its step bound");
            }
            const auto [mirror_comp, mirror_node] = pick_mirror_path(pivot);
            if (mirror_comp < 0) {
                throw FalsificationError("no unmarked mirror path for partial node '" +
                                         graph.nodes()[pivot].id + "'");
            }
            marked[mirror_comp] = true;
            const auto& comp = components[mirror_comp];
            const auto partials = path_partials(graph, comp);
            if (partials.size() == 1) {
                if (comp.value == Rational(1, 2)) {
                    // Walk closed at total value 1.
                    std::vector<int> selected;
                    for (std::size_t c = 0; c < components.size(); ++c) {
                        if (marked[c]) {
                            selected.insert(selected.end(), components[c].nodes.begin(),
                                            components[c].nodes.end());
                        }
                    }
                    std::sort(selected.begin(), selected.end());
                    return selected;
                }
                if (comp.value == Rational(-1, 2)) break; // reopen with a fresh +1/2 path
                throw FalsificationError("single-partial path has value outside {-1/2, 1/2}");
            }
            if (partials.size() == 2) {
                if (comp.value != 0) {
                    throw FalsificationError("two-partial path has nonzero value");
                }
                pivot = partials[0] == mirror_node ? partials[1] : partials[0];
                continue;
            }
            throw FalsificationError("path contains more than two partial nodes");
        }
    }
}

SwapSubgraphCheck verify_swap_subgraph(const ConflictGraph& graph,
                                       const std::vector<int>& node_set) {
    std::vector<bool> selected(graph.nodes().size(), false);
    for (int v : node_set) selected[v] = true;

    SwapSubgraphCheck check;
    check.component_closed = true;
    for (const auto& [a, b] : graph.graph_edges()) {
        if (selected[a] != selected[b]) {
            check.component_closed = false;
            break;
        }
    }

    check.copies_balanced = true;
    auto copy_count = [&](int market, std::initializer_list<CopyTag> tags) {
        int count = 0;
        for (CopyTag tag : tags) {
            const int node = graph.copy_node(market, tag);
            if (node >= 0 && selected[node]) ++count;
        }
        return count;
    };
    for (int j : graph.partial_markets_d1()) {
        if (copy_count(j, {CopyTag::J1}) != copy_count(j, {CopyTag::J3})) {
            check.copies_balanced = false;
        }
    }
    for (int j : graph.partial_markets_d2()) {
        if (copy_count(j, {CopyTag::J1, CopyTag::J2}) !=
            copy_count(j, {CopyTag::J3, CopyTag::J4})) {
            check.copies_balanced = false;
        }
    }

    int full_u1 = 0, full_u2 = 0;
    for (int v : node_set) {
        const auto& node = graph.nodes()[v];
        if (node.kind == NodeKind::FULL_U1) ++full_u1;
        if (node.kind == NodeKind::FULL_U2) ++full_u2;
    }
    check.full_excess_one = full_u1 == full_u2 + 1;
    return check;
}

SwapOutcome apply_swap(const ConflictGraph& graph, const std::vector<int>& node_set) {
    return apply_swap(graph, node_set, graph.instance().cost_vector(),
                      graph.instance().revenue_vector());
}

SwapOutcome apply_swap(const ConflictGraph& graph, const std::vector<int>& node_set,
                       const std::vector<Rational>& costs,
                       const std::vector<Rational>& revenues) {
    const auto check = verify_swap_subgraph(graph, node_set);
    if (!check.all()) {
        std::ostringstream what;
        what << "swap subgraph violates required properties:"
             << (check.component_closed ? "" : " component-closure")
             << (check.copies_balanced ? "" : " copy-balance")
             << (check.full_excess_one ? "" : " full-node-excess");
        throw PreconditionError(what.str());
    }
    const auto& inst = graph.instance();
    std::vector<bool> selected(graph.nodes().size(), false);
    for (int v : node_set) selected[v] = true;

    SwapOutcome outcome;
    outcome.sol3.x.assign(inst.num_edges(), Rational(0));
    outcome.sol4.x.assign(inst.num_edges(), Rational(0));
    outcome.sol3.z = graph.first_solution().z;
    outcome.sol4.z = graph.second_solution().z;

    // Full markets in the selected set swap their rejection flags between
    // the two outputs; everything else keeps its source flag.
    for (std::size_t v = 0; v < graph.nodes().size(); ++v) {
        const auto& node = graph.nodes()[v];
        if (node.copy_tag != CopyTag::NONE || !selected[v]) continue;
        if (node.kind == NodeKind::FULL_U1) {
            outcome.sol3.z[node.market] = 1;
            outcome.sol4.z[node.market] = 0;
        } else {
            outcome.sol3.z[node.market] = 0;
            outcome.sol4.z[node.market] = 1;
        }
    }

    auto ship = [&inst](Solution& sol, int market, const std::vector<int>& suppliers) {
        for (int i : suppliers) {
            const int e = inst.edge_index(inst.supplies()[i].id, inst.markets()[market].id);
            if (e < 0) {
                throw FalsificationError("swap routes over a missing edge");
            }
            sol.x[e] = 1;
        }
    };

    // A served full market uses its recorded supplier set; doubly-served
    // markets are re-routed copy by copy: sol3 takes unselected first-side
    // copies plus selected second-side copies, sol4 the complement.
    for (std::size_t v = 0; v < graph.nodes().size(); ++v) {
        const auto& node = graph.nodes()[v];
        if (node.copy_tag == CopyTag::NONE) {
            if (outcome.sol3.z[node.market] == 0) ship(outcome.sol3, node.market, node.suppliers);
            if (outcome.sol4.z[node.market] == 0) ship(outcome.sol4, node.market, node.suppliers);
            continue;
        }
        const bool first_side = node.in_u1();
        if (first_side ? !selected[v] : selected[v]) {
            ship(outcome.sol3, node.market, node.suppliers);
        }
        if (first_side ? selected[v] : !selected[v]) {
            ship(outcome.sol4, node.market, node.suppliers);
        }
    }

    outcome.k3 = rejection_cardinality(outcome.sol3);
    outcome.k4 = rejection_cardinality(outcome.sol4);
    if (outcome.k3 != graph.k1() + 1 || outcome.k4 != graph.k2() - 1) {
        throw FalsificationError("swap outputs have unexpected cardinalities");
    }
    for (const Solution* sol : {&outcome.sol3, &outcome.sol4}) {
        if (!check_feasible(inst, *sol, /*integral=*/true).feasible) {
            throw FalsificationError("swap produced an infeasible solution");
        }
    }

    outcome.rho = evaluate_objective(inst, costs, revenues, graph.first_solution());
    const Rational obj2 = evaluate_objective(inst, costs, revenues, graph.second_solution());
    const Rational obj3 = evaluate_objective(inst, costs, revenues, outcome.sol3);
    const Rational obj4 = evaluate_objective(inst, costs, revenues, outcome.sol4);
    outcome.delta = outcome.rho - obj3;
    if (obj4 != obj2 + outcome.delta) {
        throw FalsificationError("swap objectives are not symmetric");
    }
    outcome.sol3.objective = obj3;
    outcome.sol4.objective = obj4;
    return outcome;
}

Solution edge_property_witness(const TpmcInstance& inst, const std::vector<Rational>& costs,
                               const std::vector<Rational>& revenues, const Solution& sol1,
                               const Solution& sol2) {
    const Int k1 = rejection_cardinality(sol1);
    const Int k2 = rejection_cardinality(sol2);
    if (k1 > k2 - 2) {
        throw PreconditionError("edge property witness needs k1 <= k2 - 2");
    }
    const auto graph = build_conflict_graph(inst, sol1, sol2);
    const auto node_set = find_swap_subgraph(graph);
    auto outcome = apply_swap(graph, node_set, costs, revenues);
    if (outcome.delta != 0) {
        throw PreconditionError("witness inputs are not jointly optimal (delta = " +
                                to_string(outcome.delta) + ")");
    }
    return std::move(outcome.sol3);
}

} // namespace tpmc
