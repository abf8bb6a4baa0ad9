#include "tpmc/enumeration.hpp"

#include "tpmc/error.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

#include <map>

namespace tpmc {

namespace {

SelectionEntry solve_mask(const TpmcInstance& inst, std::uint64_t mask) {
    const auto result = min_cost_transport(inst, Selection::of_mask(inst, mask));
    SelectionEntry entry;
    entry.feasible = result.status == FlowStatus::OPTIMAL;
    if (entry.feasible) entry.transport_cost = result.cost;
    return entry;
}

int popcount(std::uint64_t mask) {
    int count = 0;
    for (; mask; mask &= mask - 1) ++count;
    return count;
}

// z(a) lexicographically before z(b), where bit j set means market j is
// accepted (z_j = 0). Decided by the lowest differing bit.
bool mask_z_less(std::uint64_t a, std::uint64_t b) {
    if (a == b) return false;
    const std::uint64_t low = (a ^ b) & (~(a ^ b) + 1);
    return (a & low) != 0;
}

} // namespace

std::vector<SelectionEntry> build_selection_table_serial(const TpmcInstance& inst) {
    const std::uint64_t count = std::uint64_t(1) << inst.num_markets();
    std::vector<SelectionEntry> table(count);
    for (std::uint64_t mask = 0; mask < count; ++mask) {
        table[mask] = solve_mask(inst, mask);
    }
    return table;
}

std::vector<SelectionEntry> build_selection_table(const TpmcInstance& inst, int jobs) {
#ifdef _OPENMP
    if (jobs > 1) {
        const std::int64_t count = std::int64_t(1) << inst.num_markets();
        std::vector<SelectionEntry> table(count);
#pragma omp parallel for schedule(dynamic, 8) num_threads(jobs)
        for (std::int64_t mask = 0; mask < count; ++mask) {
            table[mask] = solve_mask(inst, static_cast<std::uint64_t>(mask));
        }
        return table;
    }
#else
    (void)jobs;
#endif
    return build_selection_table_serial(inst);
}

Enumerator::Enumerator(const TpmcInstance& inst, int jobs, int cap) : inst_(inst) {
    if (inst.num_markets() > static_cast<std::size_t>(cap)) {
        throw CapExceededError("instance has " + std::to_string(inst.num_markets()) +
                               " markets; enumeration cap is " + std::to_string(cap));
    }
    table_ = build_selection_table(inst_, jobs);
}

Solution Enumerator::materialize(std::uint64_t mask) const {
    const Selection sel = Selection::of_mask(inst_, mask);
    const auto flow = min_cost_transport(inst_, sel);
    if (flow.status != FlowStatus::OPTIMAL) {
        throw PreconditionError("selection is transport-infeasible");
    }
    return solution_from_flow(inst_, sel, flow);
}

std::optional<Solution> Enumerator::solve(const std::optional<CardinalityBound>& card) const {
    return solve(inst_.revenue_vector(), card);
}

std::optional<Solution> Enumerator::solve(const std::vector<Rational>& revenues,
                                          const std::optional<CardinalityBound>& card) const {
    const int n2 = static_cast<int>(inst_.num_markets());
    if (revenues.size() != inst_.num_markets()) {
        throw PreconditionError("revenue vector does not match instance");
    }
    if (card && (card->k < 0 || card->k > n2)) {
        throw PreconditionError("cardinality bound k out of range");
    }
    std::optional<Rational> best;
    std::uint64_t best_mask = 0;
    const std::uint64_t count = std::uint64_t(1) << n2;
    for (std::uint64_t mask = 0; mask < count; ++mask) {
        const auto& entry = table_[mask];
        if (!entry.feasible) continue;
        if (card && !card->admits(n2 - popcount(mask))) continue;
        Rational objective = entry.transport_cost;
        for (int j = 0; j < n2; ++j) {
            if (!(mask >> j & 1u)) objective += revenues[j];
        }
        if (!best || objective < *best ||
            (objective == *best && mask_z_less(mask, best_mask))) {
            best = std::move(objective);
            best_mask = mask;
        }
    }
    if (!best) return std::nullopt;
    Solution winner = materialize(best_mask);
    winner.objective = evaluate_objective(inst_, inst_.cost_vector(), revenues, winner);
    return winner;
}

std::vector<std::pair<Int, Solution>> Enumerator::optimal_support(
    const std::vector<Rational>& revenues) const {
    const int n2 = static_cast<int>(inst_.num_markets());
    if (revenues.size() != inst_.num_markets()) {
        throw PreconditionError("revenue vector does not match instance");
    }
    std::optional<Rational> best;
    std::map<Int, std::uint64_t> winners; // cardinality -> winning mask
    const std::uint64_t count = std::uint64_t(1) << n2;
    for (std::uint64_t mask = 0; mask < count; ++mask) {
        const auto& entry = table_[mask];
        if (!entry.feasible) continue;
        Rational objective = entry.transport_cost;
        for (int j = 0; j < n2; ++j) {
            if (!(mask >> j & 1u)) objective += revenues[j];
        }
        if (!best || objective < *best) {
            best = std::move(objective);
            winners.clear();
            winners.emplace(n2 - popcount(mask), mask);
        } else if (objective == *best) {
            const auto [it, inserted] = winners.emplace(n2 - popcount(mask), mask);
            if (!inserted && mask_z_less(mask, it->second)) it->second = mask;
        }
    }
    std::vector<std::pair<Int, Solution>> support;
    support.reserve(winners.size());
    for (const auto& [cardinality, mask] : winners) {
        Solution sol = materialize(mask);
        sol.objective = evaluate_objective(inst_, inst_.cost_vector(), revenues, sol);
        support.emplace_back(cardinality, std::move(sol));
    }
    return support;
}

std::optional<Solution> solve_exact(const TpmcInstance& inst,
                                    const std::optional<CardinalityBound>& card, int jobs) {
    return Enumerator(inst, jobs).solve(card);
}

std::vector<std::pair<Int, Solution>> optimal_support(const TpmcInstance& inst,
                                                      const std::vector<Rational>& costs,
                                                      const std::vector<Rational>& revenues,
                                                      int jobs) {
    if (costs == inst.cost_vector()) {
        return Enumerator(inst, jobs).optimal_support(revenues);
    }
    return Enumerator(inst.with_objective(costs, revenues), jobs).optimal_support(revenues);
}

} // namespace tpmc
