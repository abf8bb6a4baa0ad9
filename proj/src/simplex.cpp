#include "tpmc/simplex.hpp"

#include "tpmc/error.hpp"

namespace tpmc {

namespace {

class Tableau {
  public:
    explicit Tableau(const LpProblem& problem) : problem_(problem) {
        const std::size_t m = problem.rows.size();
        const std::size_t n = problem.num_vars;
        if (problem.rhs.size() != m || problem.senses.size() != m ||
            problem.objective.size() != n) {
            throw PreconditionError("inconsistent linear program dimensions");
        }
        sign_.assign(m, 1);
        artificial_column_.assign(m, 0);

        std::size_t aux_count = 0;
        for (std::size_t i = 0; i < m; ++i) {
            if (problem.senses[i] != RowSense::EQ) ++aux_count;
        }
        cols_ = n + aux_count + m;
        first_artificial_ = n + aux_count;
        a_.assign(m, std::vector<Rational>(cols_, Rational(0)));
        b_.assign(m, Rational(0));
        basis_.assign(m, -1);

        std::size_t next_aux = n;
        for (std::size_t i = 0; i < m; ++i) {
            if (problem.rows[i].size() != n) {
                throw PreconditionError("row length does not match variable count");
            }
            const bool flip = problem.rhs[i] < 0;
            sign_[i] = flip ? -1 : 1;
            for (std::size_t j = 0; j < n; ++j) {
                a_[i][j] = flip ? Rational(-problem.rows[i][j]) : problem.rows[i][j];
            }
            b_[i] = flip ? Rational(-problem.rhs[i]) : problem.rhs[i];
            RowSense sense = problem.senses[i];
            if (flip) {
                if (sense == RowSense::LE) sense = RowSense::GE;
                else if (sense == RowSense::GE) sense = RowSense::LE;
            }
            if (sense != RowSense::EQ) {
                a_[i][next_aux] = sense == RowSense::LE ? 1 : -1;
                if (sense == RowSense::LE) basis_[i] = static_cast<int>(next_aux);
                ++next_aux;
            }
            artificial_column_[i] = static_cast<int>(first_artificial_ + i);
            a_[i][first_artificial_ + i] = 1;
            if (basis_[i] < 0) basis_[i] = artificial_column_[i];
        }
    }

    LpSolution run() {
        // Phase 1: minimize the sum of artificial values.
        std::vector<Rational> phase1(cols_, Rational(0));
        for (std::size_t j = first_artificial_; j < cols_; ++j) phase1[j] = 1;
        if (!optimize(phase1)) {
            throw FalsificationError("phase-1 objective cannot be unbounded");
        }
        LpSolution out;
        if (objective_value(phase1) > 0) {
            out.status = LpStatus::INFEASIBLE;
            out.farkas = recover_duals(phase1, /*artificial_cost=*/Rational(1));
            return out;
        }
        pivot_out_artificials();

        std::vector<Rational> phase2(cols_, Rational(0));
        for (std::size_t j = 0; j < problem_.num_vars; ++j) phase2[j] = problem_.objective[j];
        if (!optimize(phase2)) {
            out.status = LpStatus::UNBOUNDED;
            return out;
        }
        out.status = LpStatus::OPTIMAL;
        out.primal.assign(problem_.num_vars, Rational(0));
        for (std::size_t i = 0; i < b_.size(); ++i) {
            if (basis_[i] >= 0 && static_cast<std::size_t>(basis_[i]) < problem_.num_vars) {
                out.primal[basis_[i]] = b_[i];
            }
        }
        out.objective = 0;
        for (std::size_t j = 0; j < problem_.num_vars; ++j) {
            out.objective += problem_.objective[j] * out.primal[j];
        }
        out.dual = recover_duals(phase2, /*artificial_cost=*/Rational(0));
        return out;
    }

  private:
    // Reduced costs for the given cost vector under the current basis.
    std::vector<Rational> reduced_costs(const std::vector<Rational>& costs) const {
        std::vector<Rational> rc = costs;
        for (std::size_t i = 0; i < b_.size(); ++i) {
            const Rational& cb = costs[basis_[i]];
            if (cb == 0) continue;
            for (std::size_t j = 0; j < cols_; ++j) {
                if (a_[i][j] != 0) rc[j] -= cb * a_[i][j];
            }
        }
        return rc;
    }

    Rational objective_value(const std::vector<Rational>& costs) const {
        Rational value = 0;
        for (std::size_t i = 0; i < b_.size(); ++i) value += costs[basis_[i]] * b_[i];
        return value;
    }

    // Bland's rule on both choices; artificial columns never enter.
    // Returns false on unboundedness.
    bool optimize(const std::vector<Rational>& costs) {
        for (;;) {
            const auto rc = reduced_costs(costs);
            int entering = -1;
            for (std::size_t j = 0; j < first_artificial_; ++j) {
                if (rc[j] < 0) {
                    entering = static_cast<int>(j);
                    break;
                }
            }
            if (entering < 0) return true;
            int leaving = -1;
            Rational best_ratio;
            for (std::size_t i = 0; i < b_.size(); ++i) {
                if (a_[i][entering] <= 0) continue;
                const Rational ratio = b_[i] / a_[i][entering];
                if (leaving < 0 || ratio < best_ratio ||
                    (ratio == best_ratio && basis_[i] < basis_[leaving])) {
                    leaving = static_cast<int>(i);
                    best_ratio = ratio;
                }
            }
            if (leaving < 0) return false;
            pivot(static_cast<std::size_t>(leaving), static_cast<std::size_t>(entering));
        }
    }

    void pivot(std::size_t row, std::size_t col) {
        const Rational inv = Rational(1) / a_[row][col];
        for (std::size_t j = 0; j < cols_; ++j) a_[row][j] *= inv;
        b_[row] *= inv;
        for (std::size_t i = 0; i < b_.size(); ++i) {
            if (i == row || a_[i][col] == 0) continue;
            const Rational factor = a_[i][col];
            for (std::size_t j = 0; j < cols_; ++j) {
                if (a_[row][j] != 0) a_[i][j] -= factor * a_[row][j];
            }
            b_[i] -= factor * b_[row];
        }
        basis_[row] = static_cast<int>(col);
    }

    // Degenerate pivots remove artificials from the basis where possible.
    // A row whose non-artificial entries are all zero is redundant; its
    // artificial stays basic at zero and can never change again because
    // entering columns have a zero entry there.
    void pivot_out_artificials() {
        for (std::size_t i = 0; i < b_.size(); ++i) {
            if (static_cast<std::size_t>(basis_[i]) < first_artificial_) continue;
            for (std::size_t j = 0; j < first_artificial_; ++j) {
                if (a_[i][j] != 0) {
                    pivot(i, j);
                    break;
                }
            }
        }
    }

    // y = c_B B^{-1}, read off the kept artificial columns:
    // rc(artificial_i) = cost(artificial_i) - y_i.
    std::vector<Rational> recover_duals(const std::vector<Rational>& costs,
                                        const Rational& artificial_cost) const {
        const auto rc = reduced_costs(costs);
        std::vector<Rational> duals(b_.size());
        for (std::size_t i = 0; i < b_.size(); ++i) {
            duals[i] = (artificial_cost - rc[artificial_column_[i]]) * sign_[i];
        }
        return duals;
    }

    const LpProblem& problem_;
    std::vector<std::vector<Rational>> a_;
    std::vector<Rational> b_;
    std::vector<int> basis_;
    std::vector<int> sign_;
    std::vector<int> artificial_column_;
    std::size_t cols_ = 0;
    std::size_t first_artificial_ = 0;
};

} // namespace

LpSolution solve_lp(const LpProblem& problem) {
    return Tableau(problem).run();
}

} // namespace tpmc
