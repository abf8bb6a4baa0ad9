#include "tpmc/builtin_examples.hpp"

namespace tpmc {

Example1 example1() {
    Example1 out;
    // Edge coordinates: x14, x15, x24, x25, x26, x35, x36.
    out.system.dimension = 7;
    const std::vector<std::vector<int>> degree_rows = {
        {1, 1, 0, 0, 0, 0, 0}, // vertex 1
        {0, 0, 1, 1, 1, 0, 0}, // vertex 2
        {0, 0, 0, 0, 0, 1, 1}, // vertex 3
        {1, 0, 1, 0, 0, 0, 0}, // vertex 4
        {0, 1, 0, 1, 0, 1, 0}, // vertex 5
        {0, 0, 0, 0, 1, 0, 1}, // vertex 6
    };
    for (const auto& row : degree_rows) {
        LinearRow r;
        for (int c : row) r.coefficients.emplace_back(c);
        r.rhs = 1;
        out.system.equalities.push_back(std::move(r));
    }
    for (std::size_t c = 0; c < 7; ++c) {
        LinearRow r;
        r.coefficients.assign(7, Rational(0));
        r.coefficients[c] = -1; // -x_c <= 0
        r.rhs = 0;
        out.system.inequalities.push_back(std::move(r));
    }
    LinearRow cardinality;
    cardinality.coefficients = {Rational(1), Rational(0), Rational(0), Rational(1),
                                Rational(0), Rational(0), Rational(0)};
    cardinality.rhs = 1; // x14 + x25 <= 1
    out.system.inequalities.push_back(std::move(cardinality));

    out.point.coords = {Rational(1, 2), Rational(1, 2), Rational(1, 2), Rational(1, 2),
                        Rational(0),    Rational(0),    Rational(1)};
    return out;
}

Example2 example2() {
    Example2 out;
    std::vector<SupplyNode> supplies;
    for (int i = 1; i <= 6; ++i) supplies.push_back({std::to_string(i), 1});
    std::vector<MarketNode> markets = {
        {"1", 2, Rational(10)},
        {"2", 2, Rational(10)},
        {"3", 2, Rational(10)},
        {"4", 3, Rational(10)},
    };
    const std::vector<std::pair<int, int>> pairs = {{1, 1}, {2, 2}, {3, 3}, {4, 1}, {4, 4},
                                                    {5, 2}, {5, 4}, {6, 3}, {6, 4}};
    std::vector<CostEdge> edges;
    for (const auto& [i, j] : pairs) {
        edges.push_back({std::to_string(i), std::to_string(j), Rational(1)});
    }
    out.instance = TpmcInstance(std::move(supplies), std::move(markets), std::move(edges));

    out.point.coords.assign(out.instance.num_edges() + out.instance.num_markets(),
                            Rational(1, 2));
    out.k = 2;
    return out;
}

} // namespace tpmc
