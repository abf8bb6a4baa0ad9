#include "doctest.h"

#include "test_util.hpp"
#include "tpmc/cc_solver.hpp"
#include "tpmc/generate.hpp"
#include "tpmc/matching.hpp"

using namespace tpmc;
using testutil::make_instance;

namespace {

TpmcInstance triangle_instance() {
    SimpleGraph k3;
    k3.vertices = 3;
    k3.edges = {{0, 1, Rational(1)}, {0, 2, Rational(1)}, {1, 2, Rational(1)}};
    return reduce_matching(k3).instance;
}

TpmcInstance simple_instance(std::uint64_t seed) {
    RandomInstanceOptions options;
    options.seed = seed;
    options.suppliers = 3 + static_cast<int>(seed % 4);
    options.markets = 2 + static_cast<int>(seed % 4);
    options.supply_cap = 2;
    options.demand_cap = 2;
    options.cost_max = 4;
    options.revenue_max = 8;
    options.denominator_cap = 2;
    return random_instance(options);
}

} // namespace

TEST_CASE("vacuous bound reproduces the unconstrained optimum") {
    const auto inst = simple_instance(11);
    const auto result = solve_cc(
        inst, {CardinalitySense::AT_MOST, static_cast<Int>(inst.num_markets())});
    REQUIRE(result);
    CHECK(result->certificate.lambda == 0);
    const auto oracle = solve_exact(inst);
    CHECK(*result->solution.objective == *oracle->objective);
}

TEST_CASE("triangle instance bounds") {
    const auto inst = triangle_instance();
    SUBCASE("unconstrained optimum rejects two markets") {
        const auto result = solve_cc(inst, {CardinalitySense::AT_MOST, 3});
        REQUIRE(result);
        CHECK(*result->solution.objective == 2);
    }
    SUBCASE("at most one rejection is infeasible") {
        CHECK_FALSE(solve_cc(inst, {CardinalitySense::AT_MOST, 1}));
        CHECK_FALSE(solve_cc(inst, {CardinalitySense::EXACTLY, 1}));
        CHECK_FALSE(solve_cc(inst, {CardinalitySense::EXACTLY, 0}));
    }
    SUBCASE("forcing every rejection") {
        const auto result = solve_cc(inst, {CardinalitySense::AT_LEAST, 3});
        REQUIRE(result);
        CHECK(*result->solution.objective == 3);
        CHECK(rejection_cardinality(result->solution) == 3);
    }
    SUBCASE("sweep profile") {
        const auto profile = sweep_cardinality(inst);
        REQUIRE(profile.size() == 4);
        CHECK_FALSE(profile[0]);
        CHECK_FALSE(profile[1]); // serving two edge-markets needs four units from three
        CHECK(*profile[2] == 2);
        CHECK(*profile[3] == 3);
    }
}

TEST_CASE("bound k out of range throws") {
    const auto inst = simple_instance(3);
    CHECK_THROWS_AS(solve_cc(inst, {CardinalitySense::AT_MOST, -1}), PreconditionError);
    CHECK_THROWS_AS(
        solve_cc(inst, {CardinalitySense::AT_MOST, static_cast<Int>(inst.num_markets()) + 1}),
        PreconditionError);
}

TEST_CASE("non-simple instances are rejected") {
    const auto inst = make_instance({{"1", 3}}, {{"a", 3, Rational(1)}},
                                    {{"1", "a", Rational(1)}});
    CHECK_THROWS_AS(solve_cc(inst, {CardinalitySense::AT_MOST, 0}), PreconditionError);
}

TEST_CASE("supplies above one are split internally") {
    const auto inst = make_instance(
        {{"s", 2}, {"t", 1}},
        {{"a", 2, Rational(9)}, {"b", 1, Rational(9)}},
        {{"s", "a", Rational(1)}, {"s", "b", Rational(1)}, {"t", "b", Rational(2)}});
    const auto result = solve_cc(inst, {CardinalitySense::AT_MOST, 0});
    REQUIRE(result);
    CHECK(check_feasible(inst, result->solution, true).feasible);
    const auto oracle = solve_exact(inst, CardinalityBound{CardinalitySense::AT_MOST, 0});
    CHECK(*result->solution.objective == *oracle->objective);
}

TEST_CASE("matches the exhaustive oracle across senses and bounds") {
    for (std::uint64_t seed = 1; seed <= 60; ++seed) {
        const auto inst = simple_instance(seed);
        CcSolver solver(inst);
        Enumerator oracle(inst);
        for (Int k = 0; k <= static_cast<Int>(inst.num_markets()); ++k) {
            for (const auto sense : {CardinalitySense::AT_MOST, CardinalitySense::EXACTLY,
                                     CardinalitySense::AT_LEAST}) {
                const CardinalityBound card{sense, k};
                const auto fast = solver.solve(card);
                const auto exact = oracle.solve(card);
                REQUIRE(fast.has_value() == exact.has_value());
                if (fast) {
                    CHECK(*fast->solution.objective == *exact->objective);
                    CHECK(card.admits(rejection_cardinality(fast->solution)));
                    CHECK(check_feasible(inst, fast->solution, true).feasible);
                }
            }
        }
    }
}

TEST_CASE("certificates tie the solution to the penalized optimum") {
    for (std::uint64_t seed = 61; seed <= 90; ++seed) {
        const auto inst = simple_instance(seed);
        CcSolver solver(inst);
        const auto split = split_supplies(inst);
        Enumerator inner(split.instance);
        for (const auto sense :
             {CardinalitySense::AT_MOST, CardinalitySense::EXACTLY, CardinalitySense::AT_LEAST}) {
            for (Int k = 0; k <= static_cast<Int>(inst.num_markets()); ++k) {
                const auto result = solver.solve({sense, k});
                if (!result) continue;
                const auto& cert = result->certificate;
                CHECK(cert.lambda >= 0);
                // Recompute the inner optimum at lambda and compare.
                auto revenues = split.instance.revenue_vector();
                for (auto& r : revenues) r += Rational(cert.sigma) * cert.lambda;
                const auto inner_opt = inner.solve(revenues, std::nullopt);
                REQUIRE(inner_opt);
                CHECK(*inner_opt->objective == cert.penalized_value);
                // The returned solution attains it.
                const Rational own =
                    *result->solution.objective +
                    Rational(cert.sigma) * cert.lambda *
                        rejection_cardinality(result->solution);
                CHECK(own == cert.penalized_value);
            }
        }
    }
}

TEST_CASE("sweep minimum equals the unconstrained optimum") {
    for (std::uint64_t seed = 200; seed < 220; ++seed) {
        const auto inst = simple_instance(seed);
        const auto profile = sweep_cardinality(inst);
        const auto unconstrained = solve_exact(inst);
        std::optional<Rational> best;
        for (const auto& row : profile) {
            if (row && (!best || *row < *best)) best = *row;
        }
        CHECK(*best == *unconstrained->objective);
    }
}

TEST_CASE("empty instance sweeps to a single zero row") {
    const auto profile = sweep_cardinality(TpmcInstance{});
    REQUIRE(profile.size() == 1);
    CHECK(*profile[0] == 0);
}

TEST_CASE("disjoint two-market instance has a flat middle row") {
    const auto inst = make_instance(
        {{"1", 1}, {"2", 1}},
        {{"a", 1, Rational(2)}, {"b", 1, Rational(2)}},
        {{"1", "a", Rational(2)}, {"2", "b", Rational(2)}});
    const auto profile = sweep_cardinality(inst);
    REQUIRE(profile.size() == 3);
    CHECK(*profile[0] == 4);
    CHECK(*profile[1] == 4);
    CHECK(*profile[2] == 4);
}
