#pragma once

#include "tpmc/instance.hpp"

#include <cstdint>

namespace tpmc {

/// The set of accepted markets S(z), i.e. those with z_j = 0.
struct Selection {
    std::vector<char> accept; // per market, canonical order

    static Selection all(const TpmcInstance& inst);
    static Selection none(const TpmcInstance& inst);
    static Selection of_ids(const TpmcInstance& inst, const std::vector<std::string>& ids);
    /// Bit j of `mask` accepts market j (canonical order).
    static Selection of_mask(const TpmcInstance& inst, std::uint64_t mask);

    Int total_demand(const TpmcInstance& inst) const;
};

enum class FlowStatus { OPTIMAL, INFEASIBLE };

struct FlowResult {
    FlowStatus status = FlowStatus::INFEASIBLE;
    std::vector<Int> flow; // per edge, integral
    Rational cost;
};

/// Minimum-cost integral flow meeting every accepted demand exactly.
/// Successive shortest augmenting paths with exact rational reduced costs;
/// initial potentials come from relaxing the acyclic source->supply->market->
/// sink orientation, so negative edge costs are fine. Deterministic: nodes
/// and arcs are scanned in canonical order and distance ties keep the
/// earliest candidate.
FlowResult min_cost_transport(const TpmcInstance& inst, const Selection& sel);

/// True iff min_cost_transport would return OPTIMAL, decided by a max-flow
/// feasibility check (augmenting value must reach the selected demand).
bool selection_feasible(const TpmcInstance& inst, const Selection& sel);

/// Assembles the full Solution for a selection from its optimal flow.
Solution solution_from_flow(const TpmcInstance& inst, const Selection& sel,
                            const FlowResult& flow);

} // namespace tpmc
