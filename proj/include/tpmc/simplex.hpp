#pragma once

#include "tpmc/rational.hpp"

#include <vector>

namespace tpmc {

enum class RowSense { LE, EQ, GE };
enum class LpStatus { OPTIMAL, INFEASIBLE, UNBOUNDED };

/// min objective . x  subject to  rows[i] . x (sense[i]) rhs[i],  x >= 0.
struct LpProblem {
    std::size_t num_vars = 0;
    std::vector<std::vector<Rational>> rows;
    std::vector<Rational> rhs;
    std::vector<RowSense> senses;
    std::vector<Rational> objective;
};

struct LpSolution {
    LpStatus status = LpStatus::INFEASIBLE;
    Rational objective;
    std::vector<Rational> primal; // per variable (OPTIMAL)
    std::vector<Rational> dual;   // per row (OPTIMAL)
    /// Infeasibility certificate y (INFEASIBLE): y.A <= 0 componentwise,
    /// y.b > 0, with y <= 0 on LE rows and y >= 0 on GE rows.
    std::vector<Rational> farkas;
};

/// Dense two-phase tableau simplex over exact rationals with Bland's rule
/// for both the entering and leaving choices, so it cannot cycle. Artificial
/// columns are kept (barred from entering) to read row duals off the final
/// tableau.
LpSolution solve_lp(const LpProblem& problem);

} // namespace tpmc
