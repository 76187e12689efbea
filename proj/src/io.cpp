#include "homdom/io.hpp"

#include "homdom/error.hpp"

#include <cctype>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace homdom {

namespace {

constexpr int kOffset = 63;

void append_size(std::string& out, int n)
{
    if (n <= 62) {
        out.push_back(static_cast<char>(n + kOffset));
    } else if (n <= 258047) {
        out.push_back(126);
        for (int shift = 12; shift >= 0; shift -= 6) {
            out.push_back(static_cast<char>(((n >> shift) & 63) + kOffset));
        }
    } else {
        out.push_back(126);
        out.push_back(126);
        for (int shift = 30; shift >= 0; shift -= 6) {
            out.push_back(static_cast<char>(((n >> shift) & 63) + kOffset));
        }
    }
}

int sextet(char c)
{
    int v = static_cast<unsigned char>(c) - kOffset;
    if (v < 0 || v > 63) {
        throw ParseError(std::string("graph6: byte out of range: '") + c + "'");
    }
    return v;
}

} // namespace

std::string encode_graph6(const Graph& g)
{
    const int n = g.num_vertices();
    std::string out;
    append_size(out, n);
    int acc = 0;
    int nbits = 0;
    for (int j = 1; j < n; ++j) {
        for (int i = 0; i < j; ++i) {
            acc = (acc << 1) | (g.has_edge(i, j) ? 1 : 0);
            if (++nbits == 6) {
                out.push_back(static_cast<char>(acc + kOffset));
                acc = 0;
                nbits = 0;
            }
        }
    }
    if (nbits > 0) {
        out.push_back(static_cast<char>((acc << (6 - nbits)) + kOffset));
    }
    return out;
}

Graph decode_graph6(std::string_view text)
{
    while (!text.empty() && (text.back() == '\n' || text.back() == '\r')) {
        text.remove_suffix(1);
    }
    if (text.starts_with(">>graph6<<")) {
        text.remove_prefix(10);
    }
    if (text.empty()) {
        throw ParseError("graph6: empty input");
    }
    std::size_t pos = 0;
    long n = 0;
    if (text[0] != 126) {
        n = sextet(text[0]);
        pos = 1;
    } else if (text.size() >= 2 && text[1] != 126) {
        if (text.size() < 4) {
            throw ParseError("graph6: truncated size field");
        }
        for (std::size_t k = 1; k <= 3; ++k) {
            n = (n << 6) | sextet(text[k]);
        }
        pos = 4;
    } else {
        if (text.size() < 8) {
            throw ParseError("graph6: truncated size field");
        }
        for (std::size_t k = 2; k <= 7; ++k) {
            n = (n << 6) | sextet(text[k]);
        }
        pos = 8;
    }
    const long pairs = n * (n - 1) / 2;
    const std::size_t expected = pos + static_cast<std::size_t>((pairs + 5) / 6);
    if (text.size() != expected) {
        throw ParseError("graph6: expected " + std::to_string(expected) + " bytes, got " + std::to_string(text.size()));
    }
    std::vector<Edge> edges;
    long bit = 0;
    for (int j = 1; j < n; ++j) {
        for (int i = 0; i < j; ++i, ++bit) {
            int byte = sextet(text[pos + static_cast<std::size_t>(bit / 6)]);
            if (byte >> (5 - bit % 6) & 1) {
                edges.emplace_back(i, j);
            }
        }
    }
    if (bit % 6 != 0) {
        int last = sextet(text.back());
        if ((last & ((1 << (6 - bit % 6)) - 1)) != 0) {
            throw ParseError("graph6: nonzero padding bits");
        }
    }
    return Graph(static_cast<int>(n), std::move(edges));
}

json graph_to_json(const Graph& g)
{
    json edges = json::array();
    for (auto [u, v] : g.edges()) {
        edges.push_back({u, v});
    }
    return json{{"n", g.num_vertices()}, {"edges", edges}};
}

Graph graph_from_json(const json& j)
{
    if (!j.is_object() || !j.contains("n") || !j["n"].is_number_integer()) {
        throw ParseError("graph JSON needs an integer field \"n\"");
    }
    const int n = j["n"].get<int>();
    std::vector<Edge> edges;
    if (j.contains("edges")) {
        if (!j["edges"].is_array()) {
            throw ParseError("graph JSON: \"edges\" must be an array");
        }
        for (const auto& e : j["edges"]) {
            if (!e.is_array() || e.size() != 2 || !e[0].is_number_integer() || !e[1].is_number_integer()) {
                throw ParseError("graph JSON: each edge must be a pair of integers");
            }
            edges.emplace_back(e[0].get<int>(), e[1].get<int>());
        }
    }
    try {
        return Graph(n, std::move(edges));
    } catch (const InvalidArgument& err) {
        throw ParseError(std::string("graph JSON: ") + err.what());
    }
}

std::string encode_graph(const Graph& g, GraphFormat format)
{
    return format == GraphFormat::graph6 ? encode_graph6(g) : graph_to_json(g).dump();
}

Graph decode_graph(std::string_view text, GraphFormat format)
{
    if (format == GraphFormat::graph6) {
        return decode_graph6(text);
    }
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& err) {
        throw ParseError(std::string("graph JSON: ") + err.what());
    }
    return graph_from_json(j);
}

namespace {

bool all_digits(std::string_view s)
{
    if (s.empty()) {
        return false;
    }
    for (char c : s) {
        if (!std::isdigit(static_cast<unsigned char>(c))) {
            return false;
        }
    }
    return true;
}

int to_int(std::string_view s, std::string_view whole)
{
    if (!all_digits(s) || s.size() > 4) {
        throw ParseError("unknown graph name '" + std::string(whole) + "'");
    }
    return std::stoi(std::string(s));
}

Graph parse_atom(std::string_view atom, std::string_view whole)
{
    auto bad = [&]() { return ParseError("unknown graph name '" + std::string(whole) + "'"); };
    if (atom.empty()) {
        throw bad();
    }
    if (atom == "K4-e") {
        return k4_minus_e();
    }
    if (atom == "pendant" || atom == "triangle_pendant") {
        return triangle_pendant();
    }
    std::size_t lead = 0;
    while (lead < atom.size() && std::isdigit(static_cast<unsigned char>(atom[lead]))) {
        ++lead;
    }
    if (lead > 0) {
        const int mult = to_int(atom.substr(0, lead), whole);
        if (mult < 1 || mult > 64) {
            throw bad();
        }
        return disjoint_power(parse_atom(atom.substr(lead), whole), mult);
    }
    const char kind = atom[0];
    const std::string_view rest = atom.substr(1);
    try {
        switch (kind) {
        case 'K': {
            const auto comma = rest.find(',');
            if (comma != std::string_view::npos) {
                return complete_bipartite(to_int(rest.substr(0, comma), whole), to_int(rest.substr(comma + 1), whole));
            }
            return complete(to_int(rest, whole));
        }
        case 'C': {
            const auto plus = rest.find('+');
            if (plus != std::string_view::npos) {
                const int n = to_int(rest.substr(0, plus), whole);
                const std::string_view chord = rest.substr(plus + 1);
                const int l = chord.empty() ? 1 : to_int(chord, whole);
                if (n < 5 || n % 2 == 0) {
                    throw bad();
                }
                return cycle_with_chord((n - 1) / 2, l);
            }
            return cycle(to_int(rest, whole));
        }
        case 'P':
            return path(to_int(rest, whole));
        case 'S':
            return star(to_int(rest, whole));
        case 'E':
            return empty_graph(to_int(rest, whole));
        default:
            throw bad();
        }
    } catch (const InvalidArgument&) {
        throw bad();
    }
}

} // namespace

Graph parse_named_graph(std::string_view name)
{
    // '+' separates union parts only when a part name follows
    std::vector<std::string_view> parts;
    std::size_t start = 0;
    for (std::size_t i = 0; i < name.size(); ++i) {
        if (name[i] == '+' && i + 1 < name.size() &&
            (std::isalpha(static_cast<unsigned char>(name[i + 1])) ||
             (std::isdigit(static_cast<unsigned char>(name[i + 1])) && name[start] != 'C'))) {
            parts.push_back(name.substr(start, i - start));
            start = i + 1;
        }
    }
    parts.push_back(name.substr(start));
    Graph out = parse_atom(parts[0], name);
    for (std::size_t i = 1; i < parts.size(); ++i) {
        out = disjoint_union(out, parse_atom(parts[i], name));
    }
    return out;
}

Graph read_graph_arg(std::string_view arg)
{
    try {
        return parse_named_graph(arg);
    } catch (const ParseError&) {
    }
    const std::filesystem::path file{std::string(arg)};
    std::error_code ec;
    if (std::filesystem::is_regular_file(file, ec)) {
        std::ifstream in(file);
        std::stringstream buf;
        buf << in.rdbuf();
        std::string text = buf.str();
        const auto first = text.find_first_not_of(" \t\r\n");
        if (first != std::string::npos && text[first] == '{') {
            return decode_graph(text, GraphFormat::edge_json);
        }
        std::istringstream lines(text);
        std::string line;
        while (std::getline(lines, line)) {
            const auto b = line.find_first_not_of(" \t\r");
            if (b == std::string::npos) {
                continue;
            }
            const auto e = line.find_last_not_of(" \t\r");
            return decode_graph6(line.substr(b, e - b + 1));
        }
        throw ParseError("graph file '" + std::string(arg) + "' is empty");
    }
    if (!arg.empty() && arg.front() == '{') {
        return decode_graph(arg, GraphFormat::edge_json);
    }
    try {
        return decode_graph6(arg);
    } catch (const ParseError&) {
        throw ParseError("'" + std::string(arg) + "' is neither a graph name, a file nor graph6");
    }
}

} // namespace homdom
