#include "tpmc/instance.hpp"

#include <algorithm>
#include <sstream>

namespace tpmc {

namespace {

std::string edge_key(const std::string& from, const std::string& to) {
    return from + '\x1f' + to;
}

} // namespace

TpmcInstance::TpmcInstance(std::vector<SupplyNode> supplies, std::vector<MarketNode> markets,
                           std::vector<CostEdge> edges)
    : supplies_(std::move(supplies)), markets_(std::move(markets)), edges_(std::move(edges)) {
    supply_index_.reserve(supplies_.size());
    for (std::size_t i = 0; i < supplies_.size(); ++i) {
        if (supplies_[i].capacity < 1) {
            throw ParseError("nonpositive supply for '" + supplies_[i].id + "'");
        }
        if (!supply_index_.emplace(supplies_[i].id, static_cast<int>(i)).second) {
            throw ParseError("duplicate supply id '" + supplies_[i].id + "'");
        }
    }
    market_index_.reserve(markets_.size());
    for (std::size_t j = 0; j < markets_.size(); ++j) {
        if (markets_[j].demand < 1) {
            throw ParseError("nonpositive demand for '" + markets_[j].id + "'");
        }
        if (!market_index_.emplace(markets_[j].id, static_cast<int>(j)).second) {
            throw ParseError("duplicate market id '" + markets_[j].id + "'");
        }
    }
    market_edges_.assign(markets_.size(), {});
    supply_edges_.assign(supplies_.size(), {});
    edge_index_.reserve(edges_.size());
    for (std::size_t e = 0; e < edges_.size(); ++e) {
        auto& edge = edges_[e];
        const auto si = supply_index_.find(edge.from);
        if (si == supply_index_.end()) {
            throw ParseError("edge references unknown supply '" + edge.from + "'");
        }
        const auto mi = market_index_.find(edge.to);
        if (mi == market_index_.end()) {
            throw ParseError("edge references unknown market '" + edge.to + "'");
        }
        edge.supply = si->second;
        edge.market = mi->second;
        if (!edge_index_.emplace(edge_key(edge.from, edge.to), static_cast<int>(e)).second) {
            throw ParseError("duplicate edge (" + edge.from + ", " + edge.to + ")");
        }
        supply_edges_[edge.supply].push_back(static_cast<int>(e));
        market_edges_[edge.market].push_back(static_cast<int>(e));
    }
}

int TpmcInstance::supply_index(const std::string& id) const {
    const auto it = supply_index_.find(id);
    return it == supply_index_.end() ? -1 : it->second;
}

int TpmcInstance::market_index(const std::string& id) const {
    const auto it = market_index_.find(id);
    return it == market_index_.end() ? -1 : it->second;
}

int TpmcInstance::edge_index(const std::string& from, const std::string& to) const {
    const auto it = edge_index_.find(edge_key(from, to));
    return it == edge_index_.end() ? -1 : it->second;
}

Int TpmcInstance::total_supply() const {
    Int total = 0;
    for (const auto& s : supplies_) total += s.capacity;
    return total;
}

Int TpmcInstance::total_demand() const {
    Int total = 0;
    for (const auto& m : markets_) total += m.demand;
    return total;
}

std::vector<Rational> TpmcInstance::cost_vector() const {
    std::vector<Rational> w;
    w.reserve(edges_.size());
    for (const auto& e : edges_) w.push_back(e.cost);
    return w;
}

std::vector<Rational> TpmcInstance::revenue_vector() const {
    std::vector<Rational> r;
    r.reserve(markets_.size());
    for (const auto& m : markets_) r.push_back(m.revenue);
    return r;
}

TpmcInstance TpmcInstance::with_objective(const std::vector<Rational>& costs,
                                          const std::vector<Rational>& revenues) const {
    if (costs.size() != edges_.size() || revenues.size() != markets_.size()) {
        throw PreconditionError("objective vectors do not match instance dimensions");
    }
    auto supplies = supplies_;
    auto markets = markets_;
    auto edges = edges_;
    for (std::size_t j = 0; j < markets.size(); ++j) markets[j].revenue = revenues[j];
    for (std::size_t e = 0; e < edges.size(); ++e) edges[e].cost = costs[e];
    return TpmcInstance(std::move(supplies), std::move(markets), std::move(edges));
}

Rational evaluate_objective(const TpmcInstance& inst, const Solution& sol) {
    return evaluate_objective(inst, inst.cost_vector(), inst.revenue_vector(), sol);
}

Rational evaluate_objective(const TpmcInstance& inst, const std::vector<Rational>& costs,
                            const std::vector<Rational>& revenues, const Solution& sol) {
    if (sol.x.size() != inst.num_edges() || sol.z.size() != inst.num_markets() ||
        costs.size() != inst.num_edges() || revenues.size() != inst.num_markets()) {
        throw PreconditionError("solution/objective indexes do not match instance");
    }
    Rational total = 0;
    for (std::size_t e = 0; e < costs.size(); ++e) total += costs[e] * sol.x[e];
    for (std::size_t j = 0; j < revenues.size(); ++j) total += revenues[j] * sol.z[j];
    return total;
}

namespace {

bool is_integral(const Rational& v) {
    return boost::multiprecision::denominator(v) == 1;
}

} // namespace

FeasibilityReport check_feasible(const TpmcInstance& inst, const Solution& sol, bool integral) {
    FeasibilityReport report;
    auto add = [&report](std::string constraint, std::string subject, std::string detail) {
        report.feasible = false;
        report.violations.push_back({std::move(constraint), std::move(subject), std::move(detail)});
    };
    if (sol.x.size() != inst.num_edges() || sol.z.size() != inst.num_markets()) {
        add("shape", "", "solution dimensions do not match instance");
        return report;
    }
    for (std::size_t e = 0; e < sol.x.size(); ++e) {
        if (sol.x[e] < 0) {
            add("x-nonneg", inst.edges()[e].from + "->" + inst.edges()[e].to,
                "x = " + to_string(sol.x[e]));
        }
        if (integral && !is_integral(sol.x[e])) {
            add("x-integral", inst.edges()[e].from + "->" + inst.edges()[e].to,
                "x = " + to_string(sol.x[e]));
        }
    }
    for (std::size_t j = 0; j < sol.z.size(); ++j) {
        const auto& zj = sol.z[j];
        if (integral) {
            if (zj != 0 && zj != 1) {
                add("z-binary", inst.markets()[j].id, "z = " + to_string(zj));
            }
        } else if (zj < 0 || zj > 1) {
            add("z-range", inst.markets()[j].id, "z = " + to_string(zj));
        }
    }
    for (std::size_t j = 0; j < inst.num_markets(); ++j) {
        Rational shipped = 0;
        for (int e : inst.market_edges(static_cast<int>(j))) shipped += sol.x[e];
        const Rational expected = Rational(inst.markets()[j].demand) * (Rational(1) - sol.z[j]);
        if (shipped != expected) {
            std::ostringstream detail;
            detail << "sum x = " << shipped << ", d(1-z) = " << expected;
            add("demand", inst.markets()[j].id, detail.str());
        }
    }
    for (std::size_t i = 0; i < inst.num_supplies(); ++i) {
        Rational shipped = 0;
        for (int e : inst.supply_edges(static_cast<int>(i))) shipped += sol.x[e];
        if (shipped > inst.supplies()[i].capacity) {
            std::ostringstream detail;
            detail << "sum x = " << shipped << ", s = " << inst.supplies()[i].capacity;
            add("supply", inst.supplies()[i].id, detail.str());
        }
    }
    return report;
}

bool is_simple(const TpmcInstance& inst) {
    for (const auto& m : inst.markets()) {
        if (m.demand > 2) return false;
    }
    return true;
}

bool is_unit_supply(const TpmcInstance& inst) {
    for (const auto& s : inst.supplies()) {
        if (s.capacity != 1) return false;
    }
    return true;
}

SplitResult split_supplies(const TpmcInstance& inst) {
    SplitResult result;
    std::vector<SupplyNode> supplies;
    SplitMapping mapping;
    for (const auto& s : inst.supplies()) {
        if (s.capacity == 1) {
            supplies.push_back({s.id, 1});
            mapping.to_original[s.id] = s.id;
            mapping.copies[s.id] = {s.id};
            continue;
        }
        auto& fiber = mapping.copies[s.id];
        for (Int c = 1; c <= s.capacity; ++c) {
            std::string copy_id = s.id + "#" + std::to_string(c);
            supplies.push_back({copy_id, 1});
            mapping.to_original[copy_id] = s.id;
            fiber.push_back(std::move(copy_id));
        }
    }
    std::vector<CostEdge> edges;
    for (const auto& e : inst.edges()) {
        for (const auto& copy : mapping.copies[e.from]) {
            edges.push_back({copy, e.to, e.cost});
        }
    }
    result.instance = TpmcInstance(std::move(supplies), inst.markets(), std::move(edges));
    result.mapping = std::move(mapping);
    return result;
}

Solution merge_solution(const TpmcInstance& original, const TpmcInstance& split,
                        const SplitMapping& mapping, const Solution& sol) {
    const auto report = check_feasible(split, sol, /*integral=*/false);
    if (!report.feasible) {
        throw PreconditionError("solution is infeasible for the split instance: " +
                                report.violations.front().constraint + " at '" +
                                report.violations.front().subject + "'");
    }
    Solution merged;
    merged.x.assign(original.num_edges(), Rational(0));
    merged.z = sol.z;
    for (std::size_t e = 0; e < split.num_edges(); ++e) {
        const auto& edge = split.edges()[e];
        const auto it = mapping.to_original.find(edge.from);
        if (it == mapping.to_original.end()) {
            throw PreconditionError("split supply '" + edge.from + "' has no original");
        }
        const int oe = original.edge_index(it->second, edge.to);
        if (oe < 0) {
            throw PreconditionError("merged edge (" + it->second + ", " + edge.to +
                                    ") missing from original instance");
        }
        merged.x[oe] += sol.x[e];
    }
    merged.objective = evaluate_objective(original, merged);
    return merged;
}

Solution split_solution(const TpmcInstance& original, const TpmcInstance& split,
                        const SplitMapping& mapping, const Solution& sol) {
    const auto report = check_feasible(original, sol, /*integral=*/true);
    if (!report.feasible) {
        throw PreconditionError("solution is infeasible for the original instance");
    }
    Solution out;
    out.x.assign(split.num_edges(), Rational(0));
    out.z = sol.z;
    // Per original supply, assign its shipped units to copies in canonical
    // copy order, walking incident edges in canonical edge order.
    for (std::size_t i = 0; i < original.num_supplies(); ++i) {
        const auto& fiber = mapping.copies.at(original.supplies()[i].id);
        std::size_t next_copy = 0;
        for (int e : original.supply_edges(static_cast<int>(i))) {
            Rational remaining = sol.x[e];
            while (remaining > 0) {
                if (next_copy >= fiber.size()) {
                    throw PreconditionError("supply '" + original.supplies()[i].id +
                                            "' ships more than its capacity");
                }
                const int se = split.edge_index(fiber[next_copy], original.edges()[e].to);
                out.x[se] = 1;
                remaining -= 1;
                ++next_copy;
            }
        }
    }
    out.objective = evaluate_objective(split, out);
    return out;
}

Int rejection_cardinality(const Solution& sol) {
    Int total = 0;
    for (const auto& zj : sol.z) {
        if (zj == 1) {
            ++total;
        } else if (zj != 0) {
            throw PreconditionError("cardinality of a fractional z is undefined");
        }
    }
    return total;
}

bool solution_less(const Solution& a, const Solution& b) {
    const int zc = compare_lex(a.z, b.z);
    if (zc != 0) return zc < 0;
    return compare_lex(a.x, b.x) < 0;
}

} // namespace tpmc
