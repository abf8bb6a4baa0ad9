#pragma once

#include "tpmc/flow.hpp"
#include "tpmc/instance.hpp"

#include <optional>
#include <utility>

namespace tpmc {

inline constexpr int kDefaultEnumerationCap = 22; // max |V2| for 2^|V2| scans

/// Per-selection transport data: one entry per accepted-market bitmask.
struct SelectionEntry {
    bool feasible = false;
    Rational transport_cost;
};

/// Serial reference kernel; one min-cost transport solve per bitmask.
std::vector<SelectionEntry> build_selection_table_serial(const TpmcInstance& inst);

/// OpenMP kernel over bitmasks. Entries are independent, so the result is
/// identical to the serial reference for any thread count.
std::vector<SelectionEntry> build_selection_table(const TpmcInstance& inst, int jobs);

/// Exhaustive solver over market selections. Flow costs depend only on edge
/// costs, so one table serves any revenue vector; this is what makes the
/// Lagrangian solver's repeated penalized solves cheap.
class Enumerator {
  public:
    explicit Enumerator(const TpmcInstance& inst, int jobs = 1,
                        int cap = kDefaultEnumerationCap);

    const TpmcInstance& instance() const { return inst_; }
    const std::vector<SelectionEntry>& table() const { return table_; }

    /// Global optimum under the instance objective, or nullopt when no
    /// selection admitted by `card` is transport-feasible. Winner ties are
    /// broken by the smallest z as a 0/1 string in market order (each
    /// selection contributes one deterministic flow, so the x tie-break of
    /// solution_less never has to fire).
    std::optional<Solution> solve(const std::optional<CardinalityBound>& card = {}) const;

    /// Same search under a replacement revenue vector (edge costs fixed).
    std::optional<Solution> solve(const std::vector<Rational>& revenues,
                                  const std::optional<CardinalityBound>& card) const;

    /// One optimal solution per achieved optimal cardinality, ascending.
    /// Every listed solution has the same (optimal) objective value.
    std::vector<std::pair<Int, Solution>> optimal_support(
        const std::vector<Rational>& revenues) const;

    Solution materialize(std::uint64_t mask) const;

  private:
    TpmcInstance inst_;
    std::vector<SelectionEntry> table_;
};

/// Free-function forms matching the module surface.
std::optional<Solution> solve_exact(const TpmcInstance& inst,
                                    const std::optional<CardinalityBound>& card = {},
                                    int jobs = 1);
std::vector<std::pair<Int, Solution>> optimal_support(const TpmcInstance& inst,
                                                      const std::vector<Rational>& costs,
                                                      const std::vector<Rational>& revenues,
                                                      int jobs = 1);

} // namespace tpmc
