#pragma once

#include "homdom/graph.hpp"

#include <json.hpp>

#include <string>
#include <string_view>

namespace homdom {

using json = nlohmann::json;

enum class GraphFormat { edge_json, graph6 };

/// graph6 per the standard layout: N(n) then the upper triangle column by
/// column (x(0,1), x(0,2), x(1,2), ...), six bits per byte, offset 63.
std::string encode_graph6(const Graph& g);
Graph decode_graph6(std::string_view text);

/// {"n": int, "edges": [[u, v], ...]}, 0-indexed.
json graph_to_json(const Graph& g);
Graph graph_from_json(const json& j);

std::string encode_graph(const Graph& g, GraphFormat format);
Graph decode_graph(std::string_view text, GraphFormat format);

/// Shorthand names: Kn, Cn (C2 = K2), Pn (n edges), Sn (star), En (edgeless),
/// Ka,b, K4-e, pendant, Cn+ (C_{2k+1} with the triangle chord), Cn+l (chord
/// closing a (2l+1)-cycle), and disjoint unions written A+B with an optional
/// multiplicity prefix (2C4 = C4+C4). Throws ParseError on anything else.
Graph parse_named_graph(std::string_view name);

/// A named graph, a path to a graph6 / JSON file, or inline graph6.
Graph read_graph_arg(std::string_view arg);

} // namespace homdom
