#pragma once

#include "tpmc/enumeration.hpp"
#include "tpmc/instance.hpp"

#include <optional>

namespace tpmc {

/// Optimality evidence for a cardinality-constrained solve: at multiplier
/// `lambda` the returned solution attains the penalized optimum
/// min w.x + sum_j (r_j + sigma*lambda) z_j over all selections, which
/// certifies it among all solutions satisfying the bound.
struct CcCertificate {
    Rational lambda;
    int sigma = 0;                 // +1 pushes rejections down, -1 up, 0 unpenalized
    Rational penalized_value;      // inner optimum at lambda
    std::vector<Int> support_cards;// optimal rejection counts at lambda
    std::vector<Int> swap_trace;   // cardinalities visited by the swap walk
};

struct CcResult {
    Solution solution; // integral, in original-instance coordinates
    CcCertificate certificate;
};

/// Exact solver for cardinality-constrained simple instances. Splits
/// supplies to unit capacity, finds a penalty multiplier whose unconstrained
/// optima touch or straddle the target cardinality, and walks straddling
/// optima to the exact count with edge_property_witness. The multiplier
/// search refines the interval [0, sum|w| + sum|r| + 1] by intersecting the
/// two active value lines, which lands on the rational breakpoint exactly
/// (plain midpoint bisection cannot).
class CcSolver {
  public:
    explicit CcSolver(const TpmcInstance& inst, int jobs = 1);

    /// nullopt means no solution satisfies the bound (possible only for
    /// AT_MOST/EXACTLY with k below the minimum feasible rejection count;
    /// rejecting more markets is always feasible).
    std::optional<CcResult> solve(const CardinalityBound& card) const;

    /// Optimal value of EXACTLY k for every k in 0..|V2|; nullopt rows are
    /// infeasible. The minimum over rows equals the unconstrained optimum.
    std::vector<std::optional<Rational>> sweep() const;

    const TpmcInstance& instance() const { return original_; }

  private:
    struct InnerLine; // value/cardinality pair of a penalized optimum

    CcSolver(const TpmcInstance& inst, SplitResult split, int jobs);
    std::optional<CcResult> solve_directed(Int k, int sigma) const;
    Solution walk_to(Int k, const Rational& lambda, int sigma, Solution low,
                     Solution high, std::vector<Int>& trace) const;
    std::vector<Rational> penalized_revenues(const Rational& lambda, int sigma) const;

    TpmcInstance original_;
    TpmcInstance split_;
    SplitMapping mapping_;
    Enumerator enumerator_; // on the split instance
};

std::optional<CcResult> solve_cc(const TpmcInstance& inst, const CardinalityBound& card,
                                 int jobs = 1);
std::vector<std::optional<Rational>> sweep_cardinality(const TpmcInstance& inst, int jobs = 1);

} // namespace tpmc
