#include "tpmc/generate.hpp"

#include "tpmc/error.hpp"

#include <random>

namespace tpmc {

namespace {

// Modulo draws keep instances identical across standard-library versions,
// unlike std::uniform_int_distribution.
Int draw_int(std::mt19937_64& rng, Int lo, Int hi) {
    if (lo > hi) throw PreconditionError("empty draw range");
    const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
    return lo + static_cast<Int>(rng() % span);
}

bool draw_coin(std::mt19937_64& rng, const Rational& density) {
    // 53-bit draw compared exactly against the density.
    const std::uint64_t v = rng() >> 11;
    return Rational(BigInt(v), BigInt(1) << 53) < density;
}

Rational draw_rational(std::mt19937_64& rng, Int lo, Int hi, int denominator_cap) {
    const Int num = draw_int(rng, lo, hi);
    if (denominator_cap <= 1) return Rational(num);
    const Int den = draw_int(rng, 1, denominator_cap);
    return Rational(num, den);
}

} // namespace

TpmcInstance random_instance(const RandomInstanceOptions& options) {
    if (options.suppliers < 0 || options.markets < 0) {
        throw PreconditionError("sizes must be nonnegative");
    }
    if (options.density <= 0 || options.density > 1) {
        throw PreconditionError("density must be in (0, 1]");
    }
    if (options.demand_cap < 1 || options.supply_cap < 1) {
        throw PreconditionError("demand/supply caps must be positive");
    }
    std::mt19937_64 rng(options.seed);

    std::vector<SupplyNode> supplies;
    supplies.reserve(options.suppliers);
    for (int i = 1; i <= options.suppliers; ++i) {
        supplies.push_back({std::to_string(i), draw_int(rng, 1, options.supply_cap)});
    }
    std::vector<MarketNode> markets;
    markets.reserve(options.markets);
    for (int j = 1; j <= options.markets; ++j) {
        markets.push_back({std::to_string(j), draw_int(rng, 1, options.demand_cap), Rational(0)});
    }
    for (auto& m : markets) {
        m.revenue = draw_rational(rng, options.revenue_min, options.revenue_max,
                                  options.denominator_cap);
    }

    std::vector<std::pair<int, int>> pairs; // (supply idx, market idx)
    std::vector<bool> covered(markets.size(), false);
    for (int i = 0; i < options.suppliers; ++i) {
        for (int j = 0; j < options.markets; ++j) {
            if (draw_coin(rng, options.density)) {
                pairs.emplace_back(i, j);
                covered[j] = true;
            }
        }
    }
    if (options.suppliers > 0) {
        for (int j = 0; j < options.markets; ++j) {
            if (!covered[j]) {
                const int i = static_cast<int>(draw_int(rng, 0, options.suppliers - 1));
                pairs.emplace_back(i, j);
            }
        }
        std::sort(pairs.begin(), pairs.end());
    }

    std::vector<CostEdge> edges;
    edges.reserve(pairs.size());
    for (const auto& [i, j] : pairs) {
        edges.push_back({supplies[i].id, markets[j].id,
                         draw_rational(rng, options.cost_min, options.cost_max,
                                       options.denominator_cap)});
    }
    return TpmcInstance(std::move(supplies), std::move(markets), std::move(edges));
}

SimpleGraph random_graph(const RandomGraphOptions& options) {
    if (options.vertices < 0) throw PreconditionError("vertex count must be nonnegative");
    std::mt19937_64 rng(options.seed);
    SimpleGraph graph;
    graph.vertices = options.vertices;
    for (int u = 0; u < options.vertices; ++u) {
        for (int v = u + 1; v < options.vertices; ++v) {
            if (!draw_coin(rng, options.density)) continue;
            graph.edges.push_back(
                {u, v, draw_rational(rng, options.weight_min, options.weight_max,
                                     options.denominator_cap)});
        }
    }
    if (options.max_edges >= 0 && graph.edges.size() > static_cast<std::size_t>(options.max_edges)) {
        graph.edges.resize(options.max_edges);
    }
    validate_graph(graph);
    return graph;
}

} // namespace tpmc
