#include "tpmc/polytope.hpp"

#include "tpmc/error.hpp"
#include "tpmc/matching.hpp"
#include "tpmc/simplex.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <random>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace tpmc {

std::vector<std::string> coordinate_names(const TpmcInstance& inst) {
    std::vector<std::string> names;
    names.reserve(inst.num_edges() + inst.num_markets());
    for (const auto& e : inst.edges()) names.push_back("x:" + e.from + "->" + e.to);
    for (const auto& m : inst.markets()) names.push_back("z:" + m.id);
    return names;
}

RationalPoint point_from_solution(const TpmcInstance& inst, const Solution& sol) {
    if (sol.x.size() != inst.num_edges() || sol.z.size() != inst.num_markets()) {
        throw PreconditionError("solution dimensions do not match instance");
    }
    RationalPoint p;
    p.coords.reserve(sol.x.size() + sol.z.size());
    p.coords.insert(p.coords.end(), sol.x.begin(), sol.x.end());
    p.coords.insert(p.coords.end(), sol.z.begin(), sol.z.end());
    return p;
}

Rational point_rejection_total(const TpmcInstance& inst, const RationalPoint& p) {
    if (p.coords.size() != inst.num_edges() + inst.num_markets()) {
        throw PreconditionError("point dimension does not match instance");
    }
    Rational total = 0;
    for (std::size_t j = 0; j < inst.num_markets(); ++j) {
        total += p.coords[inst.num_edges() + j];
    }
    return total;
}

namespace {

// Depth-first routing of one accepted market's demand over its incident
// edges; emits every exact split.
void route_market(const TpmcInstance& inst, int market, std::size_t edge_pos, Int remaining,
                  std::vector<Int>& x, std::vector<Int>& supply_left,
                  const std::function<void()>& done) {
    const auto& incident = inst.market_edges(market);
    if (edge_pos == incident.size()) {
        if (remaining == 0) done();
        return;
    }
    const int e = incident[edge_pos];
    const int supplier = inst.edges()[e].supply;
    const Int cap = std::min(supply_left[supplier], remaining);
    for (Int amount = 0; amount <= cap; ++amount) {
        x[e] = amount;
        supply_left[supplier] -= amount;
        route_market(inst, market, edge_pos + 1, remaining - amount, x, supply_left, done);
        supply_left[supplier] += amount;
        x[e] = 0;
    }
}

void route_from(const TpmcInstance& inst, int market, std::uint64_t mask, std::vector<Int>& x,
                std::vector<Int>& supply_left, std::vector<RationalPoint>& out) {
    const int n2 = static_cast<int>(inst.num_markets());
    if (market == n2) {
        RationalPoint p;
        p.coords.reserve(inst.num_edges() + inst.num_markets());
        for (Int v : x) p.coords.emplace_back(v);
        for (int j = 0; j < n2; ++j) p.coords.emplace_back((mask >> j & 1u) ? 0 : 1);
        out.push_back(std::move(p));
        return;
    }
    if (!(mask >> market & 1u)) {
        route_from(inst, market + 1, mask, x, supply_left, out);
        return;
    }
    route_market(inst, market, 0, inst.markets()[market].demand, x, supply_left,
                 [&] { route_from(inst, market + 1, mask, x, supply_left, out); });
}

} // namespace

std::vector<RationalPoint> enumerate_integral_points(const TpmcInstance& inst,
                                                     const BigInt& cap) {
    BigInt product = 1;
    for (const auto& e : inst.edges()) {
        product *= 1 + std::min(inst.supplies()[e.supply].capacity,
                                inst.markets()[e.market].demand);
        if (product > cap) {
            throw CapExceededError("integral point enumeration cap exceeded");
        }
    }
    std::vector<RationalPoint> points;
    std::vector<Int> x(inst.num_edges(), 0);
    std::vector<Int> supply_left;
    supply_left.reserve(inst.num_supplies());
    for (const auto& s : inst.supplies()) supply_left.push_back(s.capacity);
    const std::uint64_t masks = std::uint64_t(1) << inst.num_markets();
    for (std::uint64_t mask = 0; mask < masks; ++mask) {
        route_from(inst, 0, mask, x, supply_left, points);
    }
    std::sort(points.begin(), points.end(), [](const RationalPoint& a, const RationalPoint& b) {
        return compare_lex(a.coords, b.coords) < 0;
    });
    return points;
}

HullMembership hull_membership(const RationalPoint& p,
                               const std::vector<RationalPoint>& generators) {
    if (generators.empty()) {
        throw PreconditionError("hull membership needs at least one generator");
    }
    const std::size_t dim = p.coords.size();
    for (const auto& g : generators) {
        if (g.coords.size() != dim) {
            throw PreconditionError("generator dimension mismatch");
        }
    }
    // Feasibility of: sum_g lambda_g * g = p, sum_g lambda_g = 1, lambda >= 0.
    LpProblem lp;
    lp.num_vars = generators.size();
    lp.objective.assign(lp.num_vars, Rational(0));
    for (std::size_t c = 0; c < dim; ++c) {
        std::vector<Rational> row(lp.num_vars);
        for (std::size_t g = 0; g < generators.size(); ++g) row[g] = generators[g].coords[c];
        lp.rows.push_back(std::move(row));
        lp.rhs.push_back(p.coords[c]);
        lp.senses.push_back(RowSense::EQ);
    }
    lp.rows.emplace_back(lp.num_vars, Rational(1));
    lp.rhs.emplace_back(1);
    lp.senses.push_back(RowSense::EQ);

    const LpSolution solved = solve_lp(lp);
    HullMembership verdict;
    if (solved.status == LpStatus::OPTIMAL) {
        verdict.inside = true;
        verdict.weights = solved.primal;
        Rational weight_total = 0;
        std::vector<Rational> mix(dim, Rational(0));
        for (std::size_t g = 0; g < generators.size(); ++g) {
            if (verdict.weights[g] < 0) {
                throw FalsificationError("membership weights must be nonnegative");
            }
            weight_total += verdict.weights[g];
            for (std::size_t c = 0; c < dim; ++c) {
                mix[c] += verdict.weights[g] * generators[g].coords[c];
            }
        }
        if (weight_total != 1 || mix != p.coords) {
            throw FalsificationError("membership weights do not reproduce the point");
        }
        return verdict;
    }
    if (solved.status != LpStatus::INFEASIBLE) {
        throw FalsificationError("membership feasibility solve cannot be unbounded");
    }
    // Farkas vector y over (coordinate rows, convexity row):
    // y.[g;1] <= 0 for all generators and y.[p;1] > 0 separate p.
    verdict.inside = false;
    verdict.separator.assign(dim, Rational(0));
    for (std::size_t c = 0; c < dim; ++c) verdict.separator[c] = solved.farkas[c];
    verdict.separator_rhs = -solved.farkas[dim];
    Rational at_point = 0;
    for (std::size_t c = 0; c < dim; ++c) at_point += verdict.separator[c] * p.coords[c];
    if (at_point <= verdict.separator_rhs) {
        throw FalsificationError("separator does not cut the queried point");
    }
    for (const auto& g : generators) {
        Rational at_gen = 0;
        for (std::size_t c = 0; c < dim; ++c) at_gen += verdict.separator[c] * g.coords[c];
        if (at_gen > verdict.separator_rhs) {
            throw FalsificationError("separator cuts a generator");
        }
    }
    return verdict;
}

namespace {

std::size_t matrix_rank(std::vector<std::vector<Rational>> rows, std::size_t dim) {
    std::size_t rank = 0;
    for (std::size_t col = 0; col < dim && rank < rows.size(); ++col) {
        std::size_t pivot = rank;
        while (pivot < rows.size() && rows[pivot][col] == 0) ++pivot;
        if (pivot == rows.size()) continue;
        std::swap(rows[rank], rows[pivot]);
        const Rational inv = Rational(1) / rows[rank][col];
        for (std::size_t c = col; c < dim; ++c) rows[rank][c] *= inv;
        for (std::size_t r = 0; r < rows.size(); ++r) {
            if (r == rank || rows[r][col] == 0) continue;
            const Rational factor = rows[r][col];
            for (std::size_t c = col; c < dim; ++c) rows[r][c] -= factor * rows[rank][c];
        }
        ++rank;
    }
    return rank;
}

Rational dot(const std::vector<Rational>& a, const std::vector<Rational>& b) {
    Rational total = 0;
    for (std::size_t i = 0; i < a.size(); ++i) total += a[i] * b[i];
    return total;
}

} // namespace

ExtremeReport extreme_point_check(const RationalPoint& p, const LinearSystem& sys) {
    if (p.coords.size() != sys.dimension) {
        throw PreconditionError("point dimension does not match system");
    }
    std::vector<std::vector<Rational>> tight;
    for (const auto& row : sys.equalities) {
        if (dot(row.coefficients, p.coords) != row.rhs) {
            throw PreconditionError("point violates an equality row");
        }
        tight.push_back(row.coefficients);
    }
    for (const auto& row : sys.inequalities) {
        const Rational lhs = dot(row.coefficients, p.coords);
        if (lhs > row.rhs) {
            throw PreconditionError("point violates an inequality row");
        }
        if (lhs == row.rhs) tight.push_back(row.coefficients);
    }
    ExtremeReport report;
    report.dimension = sys.dimension;
    report.tight_rows = tight.size();
    report.tight_rank = matrix_rank(std::move(tight), sys.dimension);
    report.extreme = report.tight_rank == sys.dimension;
    return report;
}

namespace {

struct GeneratorFamily {
    std::vector<RationalPoint> points;
    std::vector<Int> cardinality; // per point: the bounded coordinate total
};

struct ObjectiveOutcome {
    bool gap = false;
    RationalPoint point;
    Rational relaxed_value;
    Rational integral_value;
};

// One objective of the battery against one bound k: fold generators to
// per-cardinality minima, compare the best integral point against the exact
// LP over convex mixtures subject to the cardinality bound.
ObjectiveOutcome check_objective(const GeneratorFamily& family,
                                 const std::vector<Rational>& objective, Int k) {
    ObjectiveOutcome outcome;
    std::map<Int, std::pair<Rational, std::size_t>> per_card; // t -> (min value, argmin)
    for (std::size_t g = 0; g < family.points.size(); ++g) {
        const Rational value = dot(objective, family.points[g].coords);
        const Int t = family.cardinality[g];
        const auto it = per_card.find(t);
        if (it == per_card.end()) {
            per_card.emplace(t, std::make_pair(value, g));
        } else if (value < it->second.first) {
            it->second = {value, g};
        }
    }
    std::optional<Rational> integral;
    for (const auto& [t, best] : per_card) {
        if (t <= k && (!integral || best.first < *integral)) integral = best.first;
    }
    if (!integral) return outcome; // both sides empty: nothing to compare

    // min sum mu_t c*_t  s.t.  sum mu_t = 1, sum t mu_t <= k, mu >= 0.
    LpProblem lp;
    lp.num_vars = per_card.size();
    std::vector<Int> ts;
    std::vector<std::size_t> argmins;
    for (const auto& [t, best] : per_card) {
        ts.push_back(t);
        argmins.push_back(best.second);
        lp.objective.push_back(best.first);
    }
    lp.rows.emplace_back(lp.num_vars, Rational(1));
    lp.rhs.emplace_back(1);
    lp.senses.push_back(RowSense::EQ);
    std::vector<Rational> card_row;
    card_row.reserve(lp.num_vars);
    for (Int t : ts) card_row.emplace_back(t);
    lp.rows.push_back(std::move(card_row));
    lp.rhs.emplace_back(k);
    lp.senses.push_back(RowSense::LE);

    const LpSolution solved = solve_lp(lp);
    if (solved.status != LpStatus::OPTIMAL) {
        throw FalsificationError("cardinality-restricted hull solve must be feasible");
    }
    if (solved.objective > *integral) {
        throw FalsificationError("relaxation cannot be worse than its integral points");
    }
    if (solved.objective == *integral) return outcome;

    outcome.gap = true;
    outcome.relaxed_value = solved.objective;
    outcome.integral_value = *integral;
    const std::size_t dim = family.points.front().coords.size();
    outcome.point.coords.assign(dim, Rational(0));
    for (std::size_t v = 0; v < lp.num_vars; ++v) {
        if (solved.primal[v] == 0) continue;
        const auto& generator = family.points[argmins[v]];
        for (std::size_t c = 0; c < dim; ++c) {
            outcome.point.coords[c] += solved.primal[v] * generator.coords[c];
        }
    }
    return outcome;
}

AuditVerdict run_audit(const GeneratorFamily& family,
                       const std::vector<std::vector<Rational>>& battery, Int k, int jobs) {
    const std::size_t count = battery.size();
    std::vector<char> gap(count, 0);
    std::vector<ObjectiveOutcome> outcomes(count);
    auto evaluate = [&](std::size_t idx) {
        outcomes[idx] = check_objective(family, battery[idx], k);
        gap[idx] = outcomes[idx].gap ? 1 : 0;
    };
#ifdef _OPENMP
    if (jobs > 1) {
#pragma omp parallel for schedule(dynamic) num_threads(jobs)
        for (std::int64_t idx = 0; idx < static_cast<std::int64_t>(count); ++idx) {
            evaluate(static_cast<std::size_t>(idx));
        }
    } else {
        for (std::size_t idx = 0; idx < count; ++idx) evaluate(idx);
    }
#else
    (void)jobs;
    for (std::size_t idx = 0; idx < count; ++idx) evaluate(idx);
#endif
    AuditVerdict verdict;
    verdict.objectives_checked = count;
    for (std::size_t idx = 0; idx < count; ++idx) {
        if (!gap[idx]) continue;
        verdict.holds = false;
        verdict.counterexample = AuditCounterexample{battery[idx], outcomes[idx].point,
                                                     outcomes[idx].relaxed_value,
                                                     outcomes[idx].integral_value};
        break; // lowest battery index wins, independent of scheduling
    }
    return verdict;
}

// Every +-1 sign pattern over the trailing `block` coordinates, then seeded
// random rationals over all coordinates.
std::vector<std::vector<Rational>> build_battery(std::size_t dim, std::size_t block_offset,
                                                 std::size_t block, const AuditOptions& options) {
    std::vector<std::vector<Rational>> battery;
    const std::uint64_t patterns = std::uint64_t(1) << block;
    battery.reserve(patterns + options.random_objectives);
    for (std::uint64_t mask = 0; mask < patterns; ++mask) {
        std::vector<Rational> objective(dim, Rational(0));
        for (std::size_t j = 0; j < block; ++j) {
            objective[block_offset + j] = (mask >> j & 1u) ? Rational(1) : Rational(-1);
        }
        battery.push_back(std::move(objective));
    }
    std::mt19937_64 rng(options.seed);
    for (int r = 0; r < options.random_objectives; ++r) {
        std::vector<Rational> objective(dim);
        for (std::size_t c = 0; c < dim; ++c) {
            const Int num = static_cast<Int>(rng() % 19) - 9;
            const Int den = static_cast<Int>(rng() % 4) + 1;
            objective[c] = Rational(num, den);
        }
        battery.push_back(std::move(objective));
    }
    return battery;
}

} // namespace

AuditVerdict audit_theorem1(const TpmcInstance& inst, Int k, const AuditOptions& options) {
    const std::size_t dim = inst.num_edges() + inst.num_markets();
    if (dim > options.max_dimension) {
        throw CapExceededError("ambient dimension exceeds the audit cap");
    }
    if (k < 0 || k > static_cast<Int>(inst.num_markets())) {
        throw PreconditionError("cardinality bound k out of range");
    }
    GeneratorFamily family;
    family.points = enumerate_integral_points(inst, options.point_cap);
    if (family.points.size() > options.generator_cap) {
        throw CapExceededError("generator count exceeds the audit cap");
    }
    family.cardinality.reserve(family.points.size());
    for (const auto& p : family.points) {
        Rational total = point_rejection_total(inst, p);
        family.cardinality.push_back(static_cast<Int>(boost::multiprecision::numerator(total)));
    }
    const auto battery =
        build_battery(dim, inst.num_edges(), inst.num_markets(), options);
    return run_audit(family, battery, k, options.jobs);
}

AuditVerdict audit_matching_cardinality(const SimpleGraph& graph, Int k,
                                        const AuditOptions& options) {
    const std::size_t dim = graph.edges.size();
    if (dim > options.max_dimension) {
        throw CapExceededError("ambient dimension exceeds the audit cap");
    }
    if (k < 0 || k > static_cast<Int>(dim)) {
        throw PreconditionError("cardinality bound k out of range");
    }
    GeneratorFamily family;
    const auto matchings = all_matchings(graph, options.generator_cap);
    family.points.reserve(matchings.size());
    family.cardinality.reserve(matchings.size());
    for (const auto& matching : matchings) {
        RationalPoint p;
        p.coords.assign(dim, Rational(0));
        for (int e : matching) p.coords[e] = 1;
        family.points.push_back(std::move(p));
        family.cardinality.push_back(static_cast<Int>(matching.size()));
    }
    const auto battery = build_battery(dim, 0, dim, options);
    return run_audit(family, battery, k, options.jobs);
}

} // namespace tpmc
