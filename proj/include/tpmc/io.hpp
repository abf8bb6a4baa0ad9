#pragma once

#include "tpmc/instance.hpp"
#include "tpmc/matching_types.hpp"

#include <string>

namespace tpmc {

/// Instance document: {"supplies": [{"id","s"}], "markets": [{"id","d","r"}],
/// "edges": [{"from","to","w"}]}. Rationals are written as integers when the
/// denominator is 1 and as "p/q" strings otherwise; document order is the
/// canonical coordinate order.
TpmcInstance parse_instance(const std::string& text);
std::string serialize_instance(const TpmcInstance& inst);

/// Solution document: {"x": [{"from","to","value"}], "z": [{"id","value"}],
/// "objective": ...}. Serialization lists every coordinate in canonical
/// order; parsing accepts sparse x/z (absent coordinates default to 0).
Solution parse_solution(const TpmcInstance& inst, const std::string& text);
std::string serialize_solution(const TpmcInstance& inst, const Solution& sol);

/// Graph document: {"vertices": n, "edges": [{"u","v","w"}]} with 0-based
/// vertex indices.
SimpleGraph parse_graph(const std::string& text);
std::string serialize_graph(const SimpleGraph& graph);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

} // namespace tpmc
