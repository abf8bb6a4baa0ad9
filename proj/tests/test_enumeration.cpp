#include "doctest.h"

#include "test_util.hpp"
#include "tpmc/builtin_examples.hpp"
#include "tpmc/enumeration.hpp"
#include "tpmc/generate.hpp"
#include "tpmc/matching.hpp"

#include <algorithm>

using namespace tpmc;
using testutil::make_instance;

namespace {

TpmcInstance triangle_instance() {
    // Three mutually exclusive demand-2 markets over three unit suppliers:
    // the market-choice form of a triangle's edge set. Costs 0, revenues 1.
    SimpleGraph k3;
    k3.vertices = 3;
    k3.edges = {{0, 1, Rational(1)}, {0, 2, Rational(1)}, {1, 2, Rational(1)}};
    return reduce_matching(k3).instance;
}

} // namespace

TEST_CASE("vacuous cardinality equals the unconstrained optimum") {
    const auto inst = example2().instance;
    Enumerator enumerator(inst);
    const auto unconstrained = enumerator.solve();
    const auto vacuous = enumerator.solve(
        CardinalityBound{CardinalitySense::AT_MOST, static_cast<Int>(inst.num_markets())});
    REQUIRE(unconstrained);
    REQUIRE(vacuous);
    CHECK(*unconstrained == *vacuous);
    CHECK(*unconstrained->objective == *vacuous->objective);
}

TEST_CASE("triangle instance optimum rejects two markets") {
    const auto inst = triangle_instance();
    const auto sol = solve_exact(inst);
    REQUIRE(sol);
    CHECK(*sol->objective == 2);
    CHECK(rejection_cardinality(*sol) == 2);
}

TEST_CASE("bounded rejections on the demand-3 showcase instance") {
    const auto inst = example2().instance;
    const auto sol = solve_exact(inst, CardinalityBound{CardinalitySense::AT_MOST, 2});
    REQUIRE(sol);
    CHECK(rejection_cardinality(*sol) == 1);
    CHECK(*sol->objective == 16); // six unit shipments plus one lost revenue of 10
}

TEST_CASE("sweeping EXACTLY over k recovers the unconstrained optimum") {
    for (std::uint64_t seed = 1; seed <= 25; ++seed) {
        RandomInstanceOptions options;
        options.seed = seed;
        options.suppliers = 4;
        options.markets = 4;
        options.supply_cap = 2;
        options.demand_cap = 3;
        const auto inst = random_instance(options);
        Enumerator enumerator(inst);
        const auto unconstrained = enumerator.solve();
        REQUIRE(unconstrained);
        std::optional<Rational> best;
        for (Int k = 0; k <= static_cast<Int>(inst.num_markets()); ++k) {
            const auto sol = enumerator.solve(CardinalityBound{CardinalitySense::EXACTLY, k});
            if (sol && (!best || *sol->objective < *best)) best = *sol->objective;
        }
        CHECK(*best == *unconstrained->objective);
    }
}

TEST_CASE("infeasible bounds report no solution") {
    const auto inst = triangle_instance();
    // Serving at least two of the three markets needs four units from three.
    CHECK_FALSE(solve_exact(inst, CardinalityBound{CardinalitySense::AT_MOST, 1}));
    CHECK_FALSE(solve_exact(inst, CardinalityBound{CardinalitySense::EXACTLY, 0}));
    CHECK(solve_exact(inst, CardinalityBound{CardinalitySense::EXACTLY, 2}));
}

TEST_CASE("enumeration cap") {
    RandomInstanceOptions options;
    options.suppliers = 1;
    options.markets = 23;
    CHECK_THROWS_AS(Enumerator(random_instance(options)), CapExceededError);
}

TEST_CASE("optimal support shapes") {
    SUBCASE("unique optimum gives a single entry") {
        const auto inst = make_instance({{"1", 1}}, {{"a", 1, Rational(5)}},
                                        {{"1", "a", Rational(1)}});
        Enumerator enumerator(inst);
        const auto support = enumerator.optimal_support(inst.revenue_vector());
        REQUIRE(support.size() == 1);
        CHECK(support.front().first == 0);
    }
    SUBCASE("an all-zero objective supports every feasible cardinality") {
        const auto inst = make_instance(
            {{"1", 1}, {"2", 1}}, {{"a", 1, Rational(0)}, {"b", 1, Rational(0)}},
            {{"1", "a", Rational(0)}, {"2", "b", Rational(0)}});
        Enumerator enumerator(inst);
        const auto support = enumerator.optimal_support(inst.revenue_vector());
        REQUIRE(support.size() == 3);
        for (Int k = 0; k <= 2; ++k) {
            CHECK(support[k].first == k);
            CHECK(*support[k].second.objective == 0);
        }
    }
    SUBCASE("all entries share the optimal objective") {
        for (std::uint64_t seed = 100; seed < 120; ++seed) {
            RandomInstanceOptions options;
            options.seed = seed;
            options.suppliers = 4;
            options.markets = 4;
            options.cost_max = 3;
            options.revenue_max = 6;
            const auto inst = random_instance(options);
            Enumerator enumerator(inst);
            const auto support = enumerator.optimal_support(inst.revenue_vector());
            REQUIRE_FALSE(support.empty());
            const auto unconstrained = enumerator.solve();
            for (const auto& [k, sol] : support) {
                CHECK(*sol.objective == *unconstrained->objective);
                CHECK(rejection_cardinality(sol) == k);
            }
        }
    }
}

TEST_CASE("optimal cardinalities form a contiguous interval on simple instances") {
    // The no-gap consequence the swap machinery guarantees for demands <= 2.
    for (std::uint64_t seed = 1; seed <= 60; ++seed) {
        RandomInstanceOptions options;
        options.seed = seed;
        options.suppliers = 5;
        options.markets = 4;
        options.demand_cap = 2;
        options.cost_max = 2;
        options.revenue_max = 4;
        const auto inst = random_instance(options);
        Enumerator enumerator(inst);
        const auto support = enumerator.optimal_support(inst.revenue_vector());
        REQUIRE_FALSE(support.empty());
        for (std::size_t i = 1; i < support.size(); ++i) {
            CHECK(support[i].first == support[i - 1].first + 1);
        }
    }
}

TEST_CASE("parallel selection table matches the serial reference") {
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        RandomInstanceOptions options;
        options.seed = seed;
        options.suppliers = 4;
        options.markets = 6;
        options.supply_cap = 2;
        options.demand_cap = 3;
        options.cost_min = -3;
        const auto inst = random_instance(options);
        const auto serial = build_selection_table_serial(inst);
        const auto parallel = build_selection_table(inst, 4);
        REQUIRE(serial.size() == parallel.size());
        for (std::size_t mask = 0; mask < serial.size(); ++mask) {
            CHECK(serial[mask].feasible == parallel[mask].feasible);
            CHECK(serial[mask].transport_cost == parallel[mask].transport_cost);
        }
        // Winners agree as well.
        const auto a = Enumerator(inst, 1).solve();
        const auto b = Enumerator(inst, 4).solve();
        REQUIRE(a.has_value() == b.has_value());
        if (a) {
            CHECK(*a == *b);
            CHECK(*a->objective == *b->objective);
        }
    }
}

TEST_CASE("winner tie-break prefers the lexicographically smallest z") {
    // Two symmetric markets, everything costs the same: accepting both,
    // either one, or neither are all optimal at 0; smallest z wins.
    const auto inst = make_instance(
        {{"1", 1}, {"2", 1}}, {{"a", 1, Rational(0)}, {"b", 1, Rational(0)}},
        {{"1", "a", Rational(0)}, {"2", "b", Rational(0)}});
    const auto sol = solve_exact(inst);
    REQUIRE(sol);
    CHECK(sol->z == std::vector<Rational>{Rational(0), Rational(0)});

    const auto exactly_one = solve_exact(inst, CardinalityBound{CardinalitySense::EXACTLY, 1});
    REQUIRE(exactly_one);
    CHECK(exactly_one->z == std::vector<Rational>{Rational(0), Rational(1)});
}
