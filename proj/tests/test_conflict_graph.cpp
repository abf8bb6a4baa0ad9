#include "doctest.h"

#include "test_util.hpp"
#include "tpmc/conflict_graph.hpp"
#include "tpmc/enumeration.hpp"
#include "tpmc/generate.hpp"

#include <algorithm>
#include <set>

using namespace tpmc;
using testutil::make_instance;
using testutil::make_straddle_pair;

namespace {

Solution all_reject(const TpmcInstance& inst) {
    Solution sol;
    sol.x.assign(inst.num_edges(), Rational(0));
    sol.z.assign(inst.num_markets(), Rational(1));
    sol.objective = evaluate_objective(inst, sol);
    return sol;
}

TpmcInstance unit_simple_instance(std::uint64_t seed, int suppliers, int markets) {
    RandomInstanceOptions options;
    options.seed = seed;
    options.suppliers = suppliers;
    options.markets = markets;
    options.supply_cap = 1;
    options.demand_cap = 2;
    options.cost_max = 3;
    options.revenue_max = 5;
    options.density = Rational(3, 5);
    return random_instance(options);
}

// Two feasible integral solutions drawn from the transport-feasible
// selections; not necessarily optimal for anything.
std::optional<std::pair<Solution, Solution>> random_feasible_pair(const TpmcInstance& inst,
                                                                  std::uint64_t seed) {
    std::vector<std::uint64_t> feasible;
    for (std::uint64_t mask = 0; mask < (1ULL << inst.num_markets()); ++mask) {
        if (selection_feasible(inst, Selection::of_mask(inst, mask))) feasible.push_back(mask);
    }
    if (feasible.empty()) return std::nullopt;
    const std::uint64_t a = feasible[seed % feasible.size()];
    const std::uint64_t b = feasible[(seed / feasible.size()) % feasible.size()];
    auto solve = [&](std::uint64_t mask) {
        const auto sel = Selection::of_mask(inst, mask);
        return solution_from_flow(inst, sel, min_cost_transport(inst, sel));
    };
    return std::make_pair(solve(a), solve(b));
}

// Exhaustive check that at least one nonempty node subset satisfies the
// three swap-subgraph properties; independent of the marking walk.
bool some_valid_subgraph_exists(const ConflictGraph& graph) {
    const std::size_t n = graph.nodes().size();
    for (std::uint64_t mask = 1; mask < (1ULL << n); ++mask) {
        std::vector<int> nodes;
        for (std::size_t v = 0; v < n; ++v) {
            if (mask >> v & 1u) nodes.push_back(static_cast<int>(v));
        }
        if (verify_swap_subgraph(graph, nodes).all()) return true;
    }
    return false;
}

} // namespace

TEST_CASE("identical all-reject solutions give an empty graph") {
    const auto inst = unit_simple_instance(3, 4, 3);
    const auto sol = all_reject(inst);
    const auto graph = build_conflict_graph(inst, sol, sol);
    CHECK(graph.nodes().empty());
    CHECK(graph.graph_edges().empty());
    CHECK(total_value(graph) == 0);
    CHECK(classify_components(graph).empty());
}

TEST_CASE("identical solutions produce matched partial copies") {
    const auto inst = make_instance(
        {{"1", 1}, {"2", 1}, {"3", 1}},
        {{"a", 1, Rational(1)}, {"b", 2, Rational(1)}},
        {{"1", "a", Rational(0)}, {"2", "b", Rational(0)}, {"3", "b", Rational(0)}});
    const auto sel = Selection::all(inst);
    const auto sol = solution_from_flow(inst, sel, min_cost_transport(inst, sel));
    const auto graph = build_conflict_graph(inst, sol, sol);

    CHECK(graph.full_markets_u1().empty());
    CHECK(graph.full_markets_u2().empty());
    REQUIRE(graph.partial_markets_d1().size() == 1);
    REQUIRE(graph.partial_markets_d2().size() == 1);
    CHECK(graph.nodes().size() == 6); // 2 copies for a, 4 for b
    CHECK(total_value(graph) == 0);

    // Identically served demand-1 market: its two copies share the supplier.
    const int j1 = graph.copy_node(0, CopyTag::J1);
    const int j3 = graph.copy_node(0, CopyTag::J3);
    const auto& edges = graph.graph_edges();
    CHECK(std::count(edges.begin(), edges.end(), std::make_pair(j1, j3)) == 1);
}

TEST_CASE("disagreeing single-supplier solutions meet in one edge") {
    const auto inst = make_instance(
        {{"1", 1}, {"2", 1}},
        {{"a", 1, Rational(1)}, {"b", 1, Rational(1)}},
        {{"1", "a", Rational(0)}, {"1", "b", Rational(0)}, {"2", "a", Rational(0)},
         {"2", "b", Rational(0)}});
    Solution sol1, sol2;
    sol1.x = {Rational(1), Rational(0), Rational(0), Rational(0)};
    sol1.z = {Rational(0), Rational(1)};
    sol2.x = {Rational(0), Rational(1), Rational(0), Rational(0)};
    sol2.z = {Rational(1), Rational(0)};
    const auto graph = build_conflict_graph(inst, sol1, sol2);

    REQUIRE(graph.nodes().size() == 2);
    CHECK(graph.nodes()[0].kind == NodeKind::FULL_U1);
    CHECK(graph.nodes()[1].kind == NodeKind::FULL_U2);
    CHECK(graph.graph_edges() == std::vector<std::pair<int, int>>{{0, 1}});
    CHECK(total_value(graph) == 0); // k2 - k1 = 1 - 1
}

TEST_CASE("graph structure invariants hold on random feasible pairs") {
    int built = 0;
    for (std::uint64_t seed = 1; built < 200; ++seed) {
        const auto inst = unit_simple_instance(seed, 5, 4);
        const auto pair = random_feasible_pair(inst, seed * 977);
        if (!pair) continue;
        ++built;
        const auto graph = build_conflict_graph(inst, pair->first, pair->second);

        // Edge rule soundness: recompute adjacency from supplier sets.
        std::set<std::pair<int, int>> expected;
        for (std::size_t a = 0; a < graph.nodes().size(); ++a) {
            if (!graph.nodes()[a].in_u1()) continue;
            for (std::size_t b = 0; b < graph.nodes().size(); ++b) {
                if (graph.nodes()[b].in_u1()) continue;
                const auto& sa = graph.nodes()[a].suppliers;
                const auto& sb = graph.nodes()[b].suppliers;
                const bool intersects =
                    std::find_first_of(sa.begin(), sa.end(), sb.begin(), sb.end()) != sa.end();
                if (intersects) expected.insert({static_cast<int>(a), static_cast<int>(b)});
            }
        }
        CHECK(std::set<std::pair<int, int>>(graph.graph_edges().begin(),
                                            graph.graph_edges().end()) == expected);

        // Total value counts the cardinality difference.
        CHECK(total_value(graph) == graph.k2() - graph.k1());

        // Components are paths or even cycles; cycles avoid partial nodes;
        // path values obey the per-shape ranges.
        const auto components = classify_components(graph);
        Rational cycle_total = 0;
        for (const auto& comp : components) {
            if (comp.kind == ComponentKind::EVEN_CYCLE) {
                CHECK(comp.partial_count == 0);
                CHECK(comp.value == 0);
                cycle_total += comp.value;
            } else if (comp.partial_count == 1) {
                CHECK((comp.value == Rational(1, 2) || comp.value == Rational(-1, 2)));
            } else if (comp.partial_count == 2) {
                CHECK(comp.value == 0);
            } else {
                CHECK(comp.partial_count == 0);
                CHECK((comp.value == -1 || comp.value == 0 || comp.value == 1));
            }
        }
        CHECK(cycle_total == 0);
    }
}

TEST_CASE("a four-cycle of full nodes classifies as an even cycle") {
    const auto inst = make_instance(
        {{"1", 1}, {"2", 1}, {"3", 1}, {"4", 1}},
        {{"g1", 2, Rational(1)}, {"g2", 2, Rational(1)}, {"h1", 2, Rational(1)},
         {"h2", 2, Rational(1)}},
        {{"1", "g1"}, {"2", "g1"}, {"3", "g2"}, {"4", "g2"},
         {"2", "h1"}, {"3", "h1"}, {"4", "h2"}, {"1", "h2"}});
    auto serve = [&](const std::vector<std::string>& ids) {
        const auto sel = Selection::of_ids(inst, ids);
        return solution_from_flow(inst, sel, min_cost_transport(inst, sel));
    };
    const auto graph = build_conflict_graph(inst, serve({"g1", "g2"}), serve({"h1", "h2"}));
    const auto components = classify_components(graph);
    REQUIRE(components.size() == 1);
    CHECK(components.front().kind == ComponentKind::EVEN_CYCLE);
    CHECK(components.front().nodes.size() == 4);
    CHECK(components.front().value == 0);
}

TEST_CASE("swap subgraph on the disjoint two-market instance") {
    // Serving a market costs exactly its lost revenue, so accept-both and
    // reject-both are both optimal.
    const auto inst = make_instance(
        {{"1", 1}, {"2", 1}},
        {{"a", 1, Rational(2)}, {"b", 1, Rational(2)}},
        {{"1", "a", Rational(2)}, {"2", "b", Rational(2)}});
    const auto accept_both = [&] {
        const auto sel = Selection::all(inst);
        return solution_from_flow(inst, sel, min_cost_transport(inst, sel));
    }();
    const auto reject_both = all_reject(inst);
    const auto graph = build_conflict_graph(inst, accept_both, reject_both);
    CHECK(total_value(graph) == 2);

    const auto node_set = find_swap_subgraph(graph);
    CHECK(verify_swap_subgraph(graph, node_set).all());
    CHECK(some_valid_subgraph_exists(graph));

    const auto outcome = apply_swap(graph, node_set);
    CHECK(outcome.k3 == 1);
    CHECK(outcome.k4 == 1);
    CHECK(outcome.delta == 0); // both inputs are optimal
    CHECK(*outcome.sol3.objective == 4);

    SUBCASE("the guard rejects pairs without a two-step gap") {
        const auto tight = build_conflict_graph(inst, accept_both, accept_both);
        CHECK_THROWS_AS(find_swap_subgraph(tight), PreconditionError);
    }
}

TEST_CASE("verify_swap_subgraph checks the three properties literally") {
    const auto inst = make_instance(
        {{"1", 1}, {"2", 1}},
        {{"a", 1, Rational(2)}, {"b", 1, Rational(2)}},
        {{"1", "a", Rational(2)}, {"2", "b", Rational(2)}});
    const auto accept_both = [&] {
        const auto sel = Selection::all(inst);
        return solution_from_flow(inst, sel, min_cost_transport(inst, sel));
    }();
    const auto graph = build_conflict_graph(inst, accept_both, all_reject(inst));

    const auto empty = verify_swap_subgraph(graph, {});
    CHECK(empty.component_closed);
    CHECK(empty.copies_balanced);
    CHECK_FALSE(empty.full_excess_one); // 0 != 0 + 1

    // One isolated first-side full node forms a value-1 path on its own.
    const auto single = verify_swap_subgraph(graph, {0});
    CHECK(single.all());
}

TEST_CASE("marking walk output satisfies the swap properties on straddling optima") {
    int trials = 0;
    for (std::uint64_t seed = 1; trials < 120 && seed < 4000; ++seed) {
        const auto inst = unit_simple_instance(seed, 6, 5);
        Enumerator enumerator(inst);
        const auto pair = make_straddle_pair(enumerator);
        if (!pair) continue;
        ++trials;
        const auto tilted = inst.with_objective(pair->costs, pair->revenues);
        const auto graph = build_conflict_graph(tilted, pair->low, pair->high);
        REQUIRE(total_value(graph) >= 2);

        const auto node_set = find_swap_subgraph(graph);
        CHECK(verify_swap_subgraph(graph, node_set).all());

        const auto outcome = apply_swap(graph, node_set);
        CHECK(check_feasible(inst, outcome.sol3, true).feasible);
        CHECK(check_feasible(inst, outcome.sol4, true).feasible);
        CHECK(outcome.k3 == graph.k1() + 1);
        CHECK(outcome.k4 == graph.k2() - 1);
        CHECK(outcome.delta == 0);

        // Exact objective symmetry under the original objective as well.
        const auto plain = apply_swap(graph, node_set, inst.cost_vector(),
                                      inst.revenue_vector());
        const Rational lhs = *plain.sol3.objective -
                             evaluate_objective(inst, pair->low);
        const Rational rhs = *plain.sol4.objective -
                             evaluate_objective(inst, pair->high);
        CHECK(lhs == -rhs);
    }
    CHECK(trials == 120);
}

TEST_CASE("randomized partial assignment keeps outcomes valid") {
    int trials = 0;
    for (std::uint64_t seed = 1; trials < 40 && seed < 4000; ++seed) {
        const auto inst = unit_simple_instance(seed, 6, 5);
        Enumerator enumerator(inst);
        const auto pair = make_straddle_pair(enumerator);
        if (!pair) continue;
        ++trials;
        const auto tilted = inst.with_objective(pair->costs, pair->revenues);
        for (std::uint64_t shuffle = 0; shuffle < 4; ++shuffle) {
            PartialAssignment assignment{PartialAssignment::Mode::Seeded, shuffle * 31 + 7};
            const auto graph = build_conflict_graph(tilted, pair->low, pair->high, assignment);
            const auto node_set = find_swap_subgraph(graph);
            CHECK(verify_swap_subgraph(graph, node_set).all());
            const auto outcome = apply_swap(graph, node_set);
            CHECK(outcome.delta == 0);
            CHECK(check_feasible(inst, outcome.sol3, true).feasible);
        }
    }
    CHECK(trials == 40);
}

TEST_CASE("edge property witness lands on the intermediate cardinality") {
    const auto inst = make_instance(
        {{"1", 1}, {"2", 1}},
        {{"a", 1, Rational(2)}, {"b", 1, Rational(2)}},
        {{"1", "a", Rational(2)}, {"2", "b", Rational(2)}});
    const auto accept_both = [&] {
        const auto sel = Selection::all(inst);
        return solution_from_flow(inst, sel, min_cost_transport(inst, sel));
    }();
    const auto witness = edge_property_witness(inst, inst.cost_vector(), inst.revenue_vector(),
                                               accept_both, all_reject(inst));
    CHECK(rejection_cardinality(witness) == 1);
    const auto oracle = solve_exact(inst, CardinalityBound{CardinalitySense::EXACTLY, 1});
    CHECK(*witness.objective == *oracle->objective);

    SUBCASE("equal-cardinality inputs violate the precondition") {
        CHECK_THROWS_AS(edge_property_witness(inst, inst.cost_vector(), inst.revenue_vector(),
                                              accept_both, accept_both),
                        PreconditionError);
    }
}

TEST_CASE("repeated witnessing walks through every intermediate cardinality") {
    int trials = 0;
    for (std::uint64_t seed = 1; trials < 60 && seed < 4000; ++seed) {
        const auto inst = unit_simple_instance(seed, 6, 5);
        Enumerator enumerator(inst);
        const auto pair = make_straddle_pair(enumerator);
        if (!pair) continue;
        ++trials;
        Solution low = pair->low;
        const Int k_high = rejection_cardinality(pair->high);
        while (rejection_cardinality(low) + 2 <= k_high) {
            low = edge_property_witness(inst, pair->costs, pair->revenues, low, pair->high);
            // Every intermediate stop is optimal for the tilted objective.
            const auto at_k = enumerator.solve(
                pair->revenues,
                CardinalityBound{CardinalitySense::EXACTLY, rejection_cardinality(low)});
            REQUIRE(at_k);
            CHECK(evaluate_objective(inst, pair->costs, pair->revenues, low) ==
                  *at_k->objective);
        }
    }
    CHECK(trials == 60);
}
