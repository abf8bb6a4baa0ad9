#include "tpmc/flow.hpp"

#include "tpmc/error.hpp"

#include <algorithm>
#include <optional>

namespace tpmc {

Selection Selection::all(const TpmcInstance& inst) {
    Selection s;
    s.accept.assign(inst.num_markets(), 1);
    return s;
}

Selection Selection::none(const TpmcInstance& inst) {
    Selection s;
    s.accept.assign(inst.num_markets(), 0);
    return s;
}

Selection Selection::of_ids(const TpmcInstance& inst, const std::vector<std::string>& ids) {
    Selection s = none(inst);
    for (const auto& id : ids) {
        const int j = inst.market_index(id);
        if (j < 0) throw PreconditionError("unknown market '" + id + "' in selection");
        s.accept[j] = 1;
    }
    return s;
}

Selection Selection::of_mask(const TpmcInstance& inst, std::uint64_t mask) {
    Selection s = none(inst);
    for (std::size_t j = 0; j < s.accept.size(); ++j) {
        if (mask >> j & 1u) s.accept[j] = 1;
    }
    return s;
}

Int Selection::total_demand(const TpmcInstance& inst) const {
    Int total = 0;
    for (std::size_t j = 0; j < accept.size(); ++j) {
        if (accept[j]) total += inst.markets()[j].demand;
    }
    return total;
}

namespace {

// Residual network: node 0 = source, 1..n1 = supplies, then one node per
// accepted market, last node = sink. Arcs are stored with their reverse
// partners; adjacency lists keep canonical order.
struct Arc {
    int to;
    Int capacity;
    Rational cost;
    int reverse; // index of the paired arc
};

struct Network {
    std::vector<Arc> arcs;
    std::vector<std::vector<int>> adjacency;
    std::vector<int> market_node; // per market, -1 if rejected
    std::vector<int> market_of_node;
    std::vector<std::pair<int, int>> edge_arcs; // (edge index, arc index)
    int source = 0;
    int sink = 0;

    void add_arc(int from, int to, Int capacity, const Rational& cost) {
        const int fwd = static_cast<int>(arcs.size());
        arcs.push_back({to, capacity, cost, fwd + 1});
        arcs.push_back({from, 0, -cost, fwd});
        adjacency[from].push_back(fwd);
        adjacency[to].push_back(fwd + 1);
    }
};

Network build_network(const TpmcInstance& inst, const Selection& sel) {
    Network net;
    const int n1 = static_cast<int>(inst.num_supplies());
    net.market_node.assign(inst.num_markets(), -1);
    int next = n1 + 1;
    for (std::size_t j = 0; j < inst.num_markets(); ++j) {
        if (sel.accept[j]) net.market_node[j] = next++;
    }
    net.sink = next;
    net.adjacency.assign(next + 1, {});
    net.market_of_node.assign(next + 1, -1);
    for (std::size_t j = 0; j < inst.num_markets(); ++j) {
        if (net.market_node[j] >= 0) net.market_of_node[net.market_node[j]] = static_cast<int>(j);
    }
    for (int i = 0; i < n1; ++i) {
        net.add_arc(net.source, i + 1, inst.supplies()[i].capacity, Rational(0));
    }
    for (std::size_t e = 0; e < inst.num_edges(); ++e) {
        const auto& edge = inst.edges()[e];
        const int m = net.market_node[edge.market];
        if (m < 0) continue;
        const Int cap = std::min(inst.supplies()[edge.supply].capacity,
                                 inst.markets()[edge.market].demand);
        net.edge_arcs.emplace_back(static_cast<int>(e), static_cast<int>(net.arcs.size()));
        net.add_arc(edge.supply + 1, m, cap, edge.cost);
    }
    for (std::size_t j = 0; j < inst.num_markets(); ++j) {
        if (net.market_node[j] >= 0) {
            net.add_arc(net.market_node[j], net.sink, inst.markets()[j].demand, Rational(0));
        }
    }
    return net;
}

// Shortest-path distances from the source using reduced costs; linear-scan
// selection keeps the lowest-index node among ties.
struct PathSearch {
    std::vector<std::optional<Rational>> dist;
    std::vector<int> parent_arc;
};

PathSearch dijkstra(const Network& net, const std::vector<std::optional<Rational>>& potential) {
    const std::size_t n = net.adjacency.size();
    PathSearch out;
    out.dist.assign(n, std::nullopt);
    out.parent_arc.assign(n, -1);
    std::vector<bool> done(n, false);
    out.dist[net.source] = Rational(0);
    for (;;) {
        int u = -1;
        for (std::size_t v = 0; v < n; ++v) {
            if (done[v] || !out.dist[v]) continue;
            if (u < 0 || *out.dist[v] < *out.dist[u]) u = static_cast<int>(v);
        }
        if (u < 0) break;
        done[u] = true;
        for (int a : net.adjacency[u]) {
            const Arc& arc = net.arcs[a];
            if (arc.capacity <= 0 || !potential[u] || !potential[arc.to]) continue;
            const Rational reduced = arc.cost + *potential[u] - *potential[arc.to];
            const Rational candidate = *out.dist[u] + reduced;
            if (!out.dist[arc.to] || candidate < *out.dist[arc.to]) {
                out.dist[arc.to] = candidate;
                out.parent_arc[arc.to] = a;
            }
        }
    }
    return out;
}

} // namespace

FlowResult min_cost_transport(const TpmcInstance& inst, const Selection& sel) {
    if (sel.accept.size() != inst.num_markets()) {
        throw PreconditionError("selection does not match instance");
    }
    FlowResult result;
    result.flow.assign(inst.num_edges(), 0);
    result.cost = 0;

    const Int required = sel.total_demand(inst);
    if (required == 0) {
        result.status = FlowStatus::OPTIMAL;
        return result;
    }
    Network net = build_network(inst, sel);
    const std::size_t n = net.adjacency.size();

    // Initial potentials: relax nodes in the layered source -> supply ->
    // market -> sink order, which is acyclic before any augmentation.
    std::vector<std::optional<Rational>> potential(n, std::nullopt);
    potential[net.source] = Rational(0);
    for (std::size_t i = 0; i < inst.num_supplies(); ++i) potential[i + 1] = Rational(0);
    for (const auto& [e, a] : net.edge_arcs) {
        const auto& arc = net.arcs[a];
        const Rational candidate = inst.edges()[e].cost;
        if (!potential[arc.to] || candidate < *potential[arc.to]) potential[arc.to] = candidate;
    }
    for (std::size_t v = 0; v < n; ++v) {
        if (net.market_of_node[v] < 0 || !potential[v]) continue;
        if (!potential[net.sink] || *potential[v] < *potential[net.sink]) {
            potential[net.sink] = *potential[v];
        }
    }

    Int shipped = 0;
    while (shipped < required) {
        const PathSearch search = dijkstra(net, potential);
        if (!search.dist[net.sink]) {
            result.status = FlowStatus::INFEASIBLE;
            result.flow.assign(inst.num_edges(), 0);
            result.cost = 0;
            return result;
        }
        // Bottleneck along the predecessor path.
        Int bottleneck = required - shipped;
        for (int v = net.sink; v != net.source;) {
            const Arc& arc = net.arcs[search.parent_arc[v]];
            bottleneck = std::min(bottleneck, arc.capacity);
            v = net.arcs[arc.reverse].to;
        }
        for (int v = net.sink; v != net.source;) {
            const int a = search.parent_arc[v];
            net.arcs[a].capacity -= bottleneck;
            net.arcs[net.arcs[a].reverse].capacity += bottleneck;
            v = net.arcs[net.arcs[a].reverse].to;
        }
        shipped += bottleneck;
        const Rational reached = *search.dist[net.sink];
        for (std::size_t v = 0; v < n; ++v) {
            if (!potential[v]) continue;
            // Cap unreached nodes at the sink distance to keep reduced costs
            // nonnegative after augmentation.
            *potential[v] += search.dist[v] ? std::min(*search.dist[v], reached) : reached;
        }
    }

    for (const auto& [e, a] : net.edge_arcs) {
        const Int used = net.arcs[net.arcs[a].reverse].capacity;
        result.flow[e] = used;
        result.cost += inst.edges()[e].cost * used;
    }
    result.status = FlowStatus::OPTIMAL;
    return result;
}

bool selection_feasible(const TpmcInstance& inst, const Selection& sel) {
    if (sel.accept.size() != inst.num_markets()) {
        throw PreconditionError("selection does not match instance");
    }
    const Int required = sel.total_demand(inst);
    if (required == 0) return true;
    Network net = build_network(inst, sel);

    // Edmonds-Karp; costs are irrelevant here.
    Int value = 0;
    for (;;) {
        std::vector<int> parent(net.adjacency.size(), -1);
        std::vector<int> queue = {net.source};
        parent[net.source] = -2;
        for (std::size_t head = 0; head < queue.size() && parent[net.sink] == -1; ++head) {
            const int u = queue[head];
            for (int a : net.adjacency[u]) {
                const Arc& arc = net.arcs[a];
                if (arc.capacity > 0 && parent[arc.to] == -1) {
                    parent[arc.to] = a;
                    queue.push_back(arc.to);
                }
            }
        }
        if (parent[net.sink] == -1) break;
        Int bottleneck = required - value;
        for (int v = net.sink; v != net.source;) {
            const Arc& arc = net.arcs[parent[v]];
            bottleneck = std::min(bottleneck, arc.capacity);
            v = net.arcs[arc.reverse].to;
        }
        for (int v = net.sink; v != net.source;) {
            const int a = parent[v];
            net.arcs[a].capacity -= bottleneck;
            net.arcs[net.arcs[a].reverse].capacity += bottleneck;
            v = net.arcs[net.arcs[a].reverse].to;
        }
        value += bottleneck;
        if (value == required) return true;
    }
    return value == required;
}

Solution solution_from_flow(const TpmcInstance& inst, const Selection& sel,
                            const FlowResult& flow) {
    if (flow.status != FlowStatus::OPTIMAL) {
        throw PreconditionError("cannot assemble a solution from an infeasible flow");
    }
    Solution sol;
    sol.x.reserve(inst.num_edges());
    for (Int value : flow.flow) sol.x.emplace_back(value);
    sol.z.reserve(inst.num_markets());
    for (std::size_t j = 0; j < inst.num_markets(); ++j) {
        sol.z.emplace_back(sel.accept[j] ? 0 : 1);
    }
    sol.objective = evaluate_objective(inst, sol);
    return sol;
}

} // namespace tpmc
