#include "tpmc/io.hpp"

#include "tpmc/error.hpp"

#include "json.hpp"

#include <fstream>
#include <sstream>

namespace tpmc {

namespace {

using Json = nlohmann::ordered_json;

Rational rational_from_json(const Json& value, const std::string& where) {
    if (value.is_number_integer()) {
        return Rational(static_cast<long long>(value.get<std::int64_t>()));
    }
    if (value.is_number_unsigned()) {
        return Rational(BigInt(value.get<std::uint64_t>()));
    }
    if (value.is_string()) {
        return parse_rational(value.get<std::string>());
    }
    if (value.is_number_float()) {
        throw ParseError(where + ": floating-point literals are not accepted; use \"p/q\"");
    }
    throw ParseError(where + ": expected integer or \"p/q\" string");
}

Json rational_to_json(const Rational& value) {
    const auto& num = boost::multiprecision::numerator(value);
    const auto& den = boost::multiprecision::denominator(value);
    if (den == 1 && num >= std::numeric_limits<std::int64_t>::min() &&
        num <= std::numeric_limits<std::int64_t>::max()) {
        return Json(static_cast<std::int64_t>(num));
    }
    return Json(to_string(value));
}

std::string id_from_json(const Json& value, const std::string& where) {
    if (value.is_string()) return value.get<std::string>();
    if (value.is_number_integer()) return std::to_string(value.get<std::int64_t>());
    if (value.is_number_unsigned()) return std::to_string(value.get<std::uint64_t>());
    throw ParseError(where + ": node ids must be strings or integers");
}

Int int_from_json(const Json& value, const std::string& where) {
    if (value.is_number_integer()) return value.get<std::int64_t>();
    if (value.is_number_unsigned()) {
        const auto v = value.get<std::uint64_t>();
        if (v > static_cast<std::uint64_t>(std::numeric_limits<Int>::max())) {
            throw ParseError(where + ": integer out of range");
        }
        return static_cast<Int>(v);
    }
    throw ParseError(where + ": expected an integer");
}

Json parse_document(const std::string& text) {
    try {
        return Json::parse(text);
    } catch (const nlohmann::json::parse_error& err) {
        throw ParseError(std::string("syntax error: ") + err.what());
    }
}

const Json& require(const Json& doc, const std::string& key, const std::string& where) {
    const auto it = doc.find(key);
    if (it == doc.end()) {
        throw ParseError(where + ": missing key '" + key + "'");
    }
    return *it;
}

std::string dump(const Json& doc) {
    return doc.dump(2) + "\n";
}

} // namespace

TpmcInstance parse_instance(const std::string& text) {
    const Json doc = parse_document(text);
    if (!doc.is_object()) throw ParseError("instance document must be an object");
    std::vector<SupplyNode> supplies;
    for (const auto& item : require(doc, "supplies", "instance")) {
        supplies.push_back({id_from_json(require(item, "id", "supplies"), "supplies.id"),
                            int_from_json(require(item, "s", "supplies"), "supplies.s")});
    }
    std::vector<MarketNode> markets;
    for (const auto& item : require(doc, "markets", "instance")) {
        markets.push_back({id_from_json(require(item, "id", "markets"), "markets.id"),
                           int_from_json(require(item, "d", "markets"), "markets.d"),
                           rational_from_json(require(item, "r", "markets"), "markets.r")});
    }
    std::vector<CostEdge> edges;
    for (const auto& item : require(doc, "edges", "instance")) {
        edges.push_back({id_from_json(require(item, "from", "edges"), "edges.from"),
                         id_from_json(require(item, "to", "edges"), "edges.to"),
                         rational_from_json(require(item, "w", "edges"), "edges.w")});
    }
    return TpmcInstance(std::move(supplies), std::move(markets), std::move(edges));
}

std::string serialize_instance(const TpmcInstance& inst) {
    Json doc;
    doc["supplies"] = Json::array();
    for (const auto& s : inst.supplies()) {
        doc["supplies"].push_back({{"id", s.id}, {"s", s.capacity}});
    }
    doc["markets"] = Json::array();
    for (const auto& m : inst.markets()) {
        doc["markets"].push_back({{"id", m.id}, {"d", m.demand}, {"r", rational_to_json(m.revenue)}});
    }
    doc["edges"] = Json::array();
    for (const auto& e : inst.edges()) {
        doc["edges"].push_back({{"from", e.from}, {"to", e.to}, {"w", rational_to_json(e.cost)}});
    }
    return dump(doc);
}

Solution parse_solution(const TpmcInstance& inst, const std::string& text) {
    const Json doc = parse_document(text);
    if (!doc.is_object()) throw ParseError("solution document must be an object");
    Solution sol;
    sol.x.assign(inst.num_edges(), Rational(0));
    sol.z.assign(inst.num_markets(), Rational(0));
    if (doc.contains("x")) {
        for (const auto& item : doc["x"]) {
            const auto from = id_from_json(require(item, "from", "x"), "x.from");
            const auto to = id_from_json(require(item, "to", "x"), "x.to");
            const int e = inst.edge_index(from, to);
            if (e < 0) throw ParseError("solution references unknown edge (" + from + ", " + to + ")");
            sol.x[e] = rational_from_json(require(item, "value", "x"), "x.value");
        }
    }
    if (doc.contains("z")) {
        for (const auto& item : doc["z"]) {
            const auto id = id_from_json(require(item, "id", "z"), "z.id");
            const int j = inst.market_index(id);
            if (j < 0) throw ParseError("solution references unknown market '" + id + "'");
            sol.z[j] = rational_from_json(require(item, "value", "z"), "z.value");
        }
    }
    if (doc.contains("objective")) {
        sol.objective = rational_from_json(doc["objective"], "objective");
    }
    return sol;
}

std::string serialize_solution(const TpmcInstance& inst, const Solution& sol) {
    if (sol.x.size() != inst.num_edges() || sol.z.size() != inst.num_markets()) {
        throw PreconditionError("solution dimensions do not match instance");
    }
    Json doc;
    doc["x"] = Json::array();
    for (std::size_t e = 0; e < sol.x.size(); ++e) {
        doc["x"].push_back({{"from", inst.edges()[e].from},
                            {"to", inst.edges()[e].to},
                            {"value", rational_to_json(sol.x[e])}});
    }
    doc["z"] = Json::array();
    for (std::size_t j = 0; j < sol.z.size(); ++j) {
        doc["z"].push_back({{"id", inst.markets()[j].id}, {"value", rational_to_json(sol.z[j])}});
    }
    doc["objective"] = rational_to_json(sol.objective ? *sol.objective
                                                      : evaluate_objective(inst, sol));
    return dump(doc);
}

SimpleGraph parse_graph(const std::string& text) {
    const Json doc = parse_document(text);
    if (!doc.is_object()) throw ParseError("graph document must be an object");
    SimpleGraph graph;
    graph.vertices = static_cast<int>(int_from_json(require(doc, "vertices", "graph"), "vertices"));
    for (const auto& item : require(doc, "edges", "graph")) {
        WeightedEdge edge;
        edge.u = static_cast<int>(int_from_json(require(item, "u", "edges"), "edges.u"));
        edge.v = static_cast<int>(int_from_json(require(item, "v", "edges"), "edges.v"));
        edge.weight = item.contains("w") ? rational_from_json(item["w"], "edges.w") : Rational(1);
        graph.edges.push_back(std::move(edge));
    }
    validate_graph(graph);
    return graph;
}

std::string serialize_graph(const SimpleGraph& graph) {
    Json doc;
    doc["vertices"] = graph.vertices;
    doc["edges"] = Json::array();
    for (const auto& e : graph.edges) {
        doc["edges"].push_back({{"u", e.u}, {"v", e.v}, {"w", rational_to_json(e.weight)}});
    }
    return dump(doc);
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open file '" + path + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ParseError("cannot open file '" + path + "' for writing");
    out << content;
}

} // namespace tpmc
