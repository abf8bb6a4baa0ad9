#pragma once

#include "tpmc/instance.hpp"
#include "tpmc/matching_types.hpp"

#include <optional>
#include <string>
#include <vector>

namespace tpmc {

/// A point in the instance coordinate space: edge flows in canonical order
/// followed by market rejection values (or matching indicators for graphs).
struct RationalPoint {
    std::vector<Rational> coords;

    bool operator==(const RationalPoint&) const = default;
};

struct LinearRow {
    std::vector<Rational> coefficients;
    Rational rhs;
};

/// H-representation container: equality rows a.x = rhs and inequality rows
/// a.x <= rhs over a fixed ambient dimension.
struct LinearSystem {
    std::size_t dimension = 0;
    std::vector<LinearRow> equalities;
    std::vector<LinearRow> inequalities;
};

std::vector<std::string> coordinate_names(const TpmcInstance& inst);
RationalPoint point_from_solution(const TpmcInstance& inst, const Solution& sol);
Rational point_rejection_total(const TpmcInstance& inst, const RationalPoint& p);

/// All integral feasible (x, z) vectors, lexicographically sorted. The raw
/// search space (product over edges of 1 + min(s, d)) must stay within cap.
std::vector<RationalPoint> enumerate_integral_points(const TpmcInstance& inst,
                                                     const BigInt& cap = BigInt(1000000));

struct HullMembership {
    bool inside = false;
    std::vector<Rational> weights;   // inside: convex weights over generators
    std::vector<Rational> separator; // outside: a with a.p > rhs, a.g <= rhs
    Rational separator_rhs;
};

/// Exact membership of p in the convex hull of the generators, decided by a
/// phase-1 simplex feasibility solve. Produces explicit convex-combination
/// weights or a strictly separating hyperplane; both certificates are
/// re-verified before returning.
HullMembership hull_membership(const RationalPoint& p,
                               const std::vector<RationalPoint>& generators);

struct ExtremeReport {
    bool extreme = false;
    std::size_t tight_rows = 0;
    std::size_t tight_rank = 0;
    std::size_t dimension = 0;
};

/// p is an extreme point of the system iff its tight constraints have full
/// rank. Throws PreconditionError when p violates the system.
ExtremeReport extreme_point_check(const RationalPoint& p, const LinearSystem& sys);

struct AuditOptions {
    std::size_t generator_cap = 5000;
    std::size_t max_dimension = 14;
    int random_objectives = 64;
    std::uint64_t seed = 2024;
    int jobs = 1;
    BigInt point_cap = BigInt(1000000);
};

struct AuditCounterexample {
    std::vector<Rational> objective; // full-dimension coefficient vector
    RationalPoint point;             // relaxed optimum beating every integral point
    Rational relaxed_value;
    Rational integral_value;
};

struct AuditVerdict {
    bool holds = true;
    std::size_t objectives_checked = 0;
    std::optional<AuditCounterexample> counterexample;
};

/// Audits whether restricting the integer hull by "at most k rejections"
/// loses nothing: for a battery of objectives (every +-1 sign pattern on the
/// z block plus seeded random rationals on all coordinates), the exact LP
/// optimum over the hull of all integral points subject to sum z <= k must
/// match the best integral point with sum z <= k. Any gap is returned as an
/// explicit fractional optimum. Holds whenever demands are at most 2; the
/// CLI exposes it as `audit theorem1`.
AuditVerdict audit_theorem1(const TpmcInstance& inst, Int k, const AuditOptions& options = {});

/// Same audit over matching indicator vectors and the bound |M| <= k.
AuditVerdict audit_matching_cardinality(const SimpleGraph& graph, Int k,
                                        const AuditOptions& options = {});

} // namespace tpmc
