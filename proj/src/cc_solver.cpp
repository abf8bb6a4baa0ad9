#include "tpmc/cc_solver.hpp"

#include "tpmc/conflict_graph.hpp"
#include "tpmc/error.hpp"

#include <algorithm>

namespace tpmc {

namespace {

SplitResult split_or_throw(const TpmcInstance& inst) {
    if (!is_simple(inst)) {
        throw PreconditionError("cardinality solver requires demands of at most 2");
    }
    return split_supplies(inst);
}

std::vector<Int> cards_of(const std::vector<std::pair<Int, Solution>>& support) {
    std::vector<Int> cards;
    cards.reserve(support.size());
    for (const auto& [k, sol] : support) cards.push_back(k);
    return cards;
}

Int distance(Int a, Int b) {
    return a > b ? a - b : b - a;
}

} // namespace

struct CcSolver::InnerLine {
    Rational value; // unpenalized objective w.x + r.z of the inner optimum
    Int cardinality = 0;
};

CcSolver::CcSolver(const TpmcInstance& inst, int jobs)
    : CcSolver(inst, split_or_throw(inst), jobs) {}

CcSolver::CcSolver(const TpmcInstance& inst, SplitResult split, int jobs)
    : original_(inst),
      split_(std::move(split.instance)),
      mapping_(std::move(split.mapping)),
      enumerator_(split_, jobs) {}

std::vector<Rational> CcSolver::penalized_revenues(const Rational& lambda, int sigma) const {
    auto revenues = split_.revenue_vector();
    for (auto& r : revenues) r += Rational(sigma) * lambda;
    return revenues;
}

std::optional<CcResult> CcSolver::solve(const CardinalityBound& card) const {
    const Int n2 = static_cast<Int>(original_.num_markets());
    if (card.k < 0 || card.k > n2) {
        throw PreconditionError("cardinality bound k out of range");
    }

    const auto base = enumerator_.optimal_support(split_.revenue_vector());
    const auto base_cards = cards_of(base);

    auto finish = [&](Solution split_sol, CcCertificate certificate) {
        Solution merged = merge_solution(original_, split_, mapping_, split_sol);
        merged.objective = evaluate_objective(original_, merged);
        return CcResult{std::move(merged), std::move(certificate)};
    };

    // An unconstrained optimum that already satisfies the bound settles it.
    const auto satisfied = [&]() -> const Solution* {
        const Solution* pick = nullptr;
        Int pick_card = 0;
        for (const auto& [k, sol] : base) {
            if (!card.admits(k)) continue;
            // Prefer the admissible cardinality closest to k (deterministic;
            // all candidates share the optimal objective).
            if (!pick || distance(k, card.k) < distance(pick_card, card.k)) {
                pick = &sol;
                pick_card = k;
            }
        }
        return pick;
    }();
    if (satisfied) {
        CcCertificate certificate;
        certificate.lambda = 0;
        certificate.sigma = 0;
        certificate.penalized_value = *base.front().second.objective;
        certificate.support_cards = base_cards;
        return finish(*satisfied, std::move(certificate));
    }

    // EXACTLY with unconstrained optima on both sides of k: straddle at
    // lambda = 0, walk to the target.
    if (card.sense == CardinalitySense::EXACTLY && base_cards.front() < card.k &&
        base_cards.back() > card.k) {
        CcCertificate certificate;
        certificate.lambda = 0;
        certificate.sigma = 0;
        certificate.penalized_value = *base.front().second.objective;
        certificate.support_cards = base_cards;
        const Solution* low = nullptr;
        const Solution* high = nullptr;
        for (const auto& [k, sol] : base) {
            if (k < card.k) low = &sol;
            if (k > card.k && !high) high = &sol;
        }
        Solution landed =
            walk_to(card.k, Rational(0), 0, *low, *high, certificate.swap_trace);
        return finish(std::move(landed), std::move(certificate));
    }

    const int sigma = base_cards.front() > card.k ? +1 : -1;
    return solve_directed(card.k, sigma);
}

std::optional<CcResult> CcSolver::solve_directed(Int k, int sigma) const {
    auto finish = [&](Solution split_sol, CcCertificate certificate) {
        Solution merged = merge_solution(original_, split_, mapping_, split_sol);
        merged.objective = evaluate_objective(original_, merged);
        return CcResult{std::move(merged), std::move(certificate)};
    };
    auto support_at = [&](const Rational& lambda) {
        return enumerator_.optimal_support(penalized_revenues(lambda, sigma));
    };
    auto unpenalized = [&](const Solution& sol, const Rational& lambda) {
        Rational value = *sol.objective;
        value -= Rational(sigma) * lambda * rejection_cardinality(sol);
        return value;
    };
    // `beyond` = past the target in the drive direction (card < k for
    // sigma = +1). Penalizing harder only pushes further, so once the
    // endpoint supports bracket k a breakpoint with a touch or straddle
    // exists in between.
    auto beyond = [&](Int card) { return sigma > 0 ? card < k : card > k; };
    auto before = [&](Int card) { return sigma > 0 ? card > k : card < k; };

    auto try_close = [&](const Rational& lambda,
                         const std::vector<std::pair<Int, Solution>>& support)
        -> std::optional<CcResult> {
        CcCertificate certificate;
        certificate.lambda = lambda;
        certificate.sigma = sigma;
        certificate.penalized_value = *support.front().second.objective;
        certificate.support_cards = cards_of(support);
        for (const auto& [card, sol] : support) {
            if (card == k) {
                certificate.swap_trace = {k};
                return finish(sol, std::move(certificate));
            }
        }
        const Solution* low = nullptr;
        const Solution* high = nullptr;
        for (const auto& [card, sol] : support) {
            if (card < k) low = &sol;
            if (card > k && !high) high = &sol;
        }
        if (low && high) {
            Solution landed = walk_to(k, lambda, sigma, *low, *high, certificate.swap_trace);
            return finish(std::move(landed), std::move(certificate));
        }
        return std::nullopt;
    };

    const Rational bound =
        abs_sum(split_.cost_vector()) + abs_sum(split_.revenue_vector()) + 1;

    auto support_lo = support_at(Rational(0));
    if (auto closed = try_close(Rational(0), support_lo)) return closed;
    auto support_hi = support_at(bound);
    if (auto closed = try_close(bound, support_hi)) return closed;
    if (!beyond(support_hi.front().first)) {
        // Even the extreme penalty cannot reach k rejections: certify
        // infeasibility against the plain enumeration oracle.
        if (enumerator_.solve(split_.revenue_vector(),
                              CardinalityBound{sigma > 0 ? CardinalitySense::AT_MOST
                                                         : CardinalitySense::AT_LEAST,
                                               k})) {
            throw FalsificationError("penalty bound missed a feasible bounded solution");
        }
        return std::nullopt;
    }

    // Newton refinement on the concave dual: intersect the value lines of
    // the two active optima. Each iteration either closes at a breakpoint or
    // discovers a strictly better line, and there are finitely many lines.
    // Start from the closest optimal cardinality on each side of k.
    const auto& before_entry = sigma > 0 ? support_lo.front() : support_lo.back();
    const auto& beyond_entry = sigma > 0 ? support_hi.front() : support_hi.back();
    InnerLine line_before{unpenalized(before_entry.second, Rational(0)), before_entry.first};
    InnerLine line_beyond{unpenalized(beyond_entry.second, bound), beyond_entry.first};

    const int max_iterations = 1 << 20;
    for (int iteration = 0; iteration < max_iterations; ++iteration) {
        const Rational lambda = (line_beyond.value - line_before.value) /
                                (Rational(sigma) * (line_before.cardinality -
                                                    line_beyond.cardinality));
        auto support = support_at(lambda);
        if (auto closed = try_close(lambda, support)) return closed;
        bool advanced = false;
        for (const auto& [card, sol] : support) {
            InnerLine candidate{unpenalized(sol, lambda), card};
            InnerLine& slot = before(card) ? line_before : line_beyond;
            if (candidate.value != slot.value || candidate.cardinality != slot.cardinality) {
                slot = candidate;
                advanced = true;
            }
        }
        if (!advanced) {
            throw FalsificationError("multiplier refinement stalled without a straddle");
        }
    }
    throw FalsificationError("multiplier refinement exceeded its iteration bound");
}

Solution CcSolver::walk_to(Int k, const Rational& lambda, int sigma, Solution low,
                           Solution high, std::vector<Int>& trace) const {
    const auto costs = split_.cost_vector();
    const auto revenues = penalized_revenues(lambda, sigma);
    Int low_card = rejection_cardinality(low);
    const Int high_card = rejection_cardinality(high);
    trace.push_back(low_card);
    trace.push_back(high_card);
    while (low_card < k) {
        low = edge_property_witness(split_, costs, revenues, low, high);
        low_card = rejection_cardinality(low);
        trace.push_back(low_card);
    }
    low.objective = evaluate_objective(split_, low);
    return low;
}

std::vector<std::optional<Rational>> CcSolver::sweep() const {
    std::vector<std::optional<Rational>> profile;
    const Int n2 = static_cast<Int>(original_.num_markets());
    profile.reserve(n2 + 1);
    for (Int k = 0; k <= n2; ++k) {
        const auto result = solve(CardinalityBound{CardinalitySense::EXACTLY, k});
        if (result) {
            profile.push_back(*result->solution.objective);
        } else {
            profile.push_back(std::nullopt);
        }
    }
    return profile;
}

std::optional<CcResult> solve_cc(const TpmcInstance& inst, const CardinalityBound& card,
                                 int jobs) {
    return CcSolver(inst, jobs).solve(card);
}

std::vector<std::optional<Rational>> sweep_cardinality(const TpmcInstance& inst, int jobs) {
    return CcSolver(inst, jobs).sweep();
}

} // namespace tpmc
