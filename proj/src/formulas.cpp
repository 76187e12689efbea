#include "homdom/formulas.hpp"

#include "homdom/cones.hpp"
#include "homdom/constructions.hpp"
#include "homdom/error.hpp"
#include "homdom/hom.hpp"
#include "homdom/lp.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <stdexcept>

namespace homdom {

namespace {

Rat q(long p, long d)
{
    Rat r(p, d);
    r.canonicalize();
    return r;
}

std::optional<int> cycle_length(const Graph& g)
{
    if (g.num_vertices() == 2 && g.num_edges() == 1) {
        return 2;
    }
    if (g.as_cycle()) {
        return g.num_vertices();
    }
    return std::nullopt;
}

std::optional<int> path_length(const Graph& g)
{
    if (g.num_edges() >= 1 && g.as_path()) {
        return g.num_edges();
    }
    return std::nullopt;
}

bool iso(const Graph& a, const Graph& b)
{
    return a.num_vertices() == b.num_vertices() && a.num_edges() == b.num_edges() && isomorphic(a, b);
}

bool has_isolated(const Graph& g)
{
    for (int v = 0; v < g.num_vertices(); ++v) {
        if (g.degree(v) == 0) {
            return true;
        }
    }
    return false;
}

} // namespace

json bound_to_json(const ExponentBound& bound)
{
    json j;
    j["lower"] = to_string(bound.lower);
    if (bound.upper) {
        j["upper"] = to_string(*bound.upper);
    } else {
        j["upper"] = "nonexistent";
    }
    j["exact"] = bound.exact;
    j["provenance"] = bound.provenance;
    return j;
}

bool exists_exponent(const Graph& g, const Graph& h) { return has_hom(g, h); }

Rat crude_upper(const Graph& g, const Graph& h)
{
    if (!exists_exponent(g, h)) {
        throw InvalidArgument("crude_upper: C(G,H) does not exist");
    }
    const int vg = g.num_vertices();
    const int top = std::min(vg, h.num_vertices());
    Rat best = 0;
    for (int r = 1; r <= top; ++r) {
        best = std::max(best, pow(q(vg, r), static_cast<unsigned long>(r)));
    }
    return best;
}

Rat simple_lower(const Graph& g, const Graph& h)
{
    if (!g.is_connected() || !h.is_connected()) {
        throw InvalidArgument("simple_lower needs connected graphs");
    }
    Rat best = 0;
    if (h.num_edges() > 0) {
        best = std::max(best, q(g.num_edges(), h.num_edges()));
    }
    if (h.num_vertices() > 1) {
        best = std::max(best, q(g.num_vertices() - 1, h.num_vertices() - 1));
    }
    if (h.num_vertices() > 0) {
        best = std::max(best, q(g.num_vertices(), h.num_vertices()));
    }
    return best;
}

Rat path_exponent(int k, int l)
{
    if (k < 1 || l < 1) {
        throw InvalidArgument("path_exponent needs k, l >= 1");
    }
    if (k == l) {
        return 1;
    }
    const bool k_odd = k % 2 == 1;
    const bool l_odd = l % 2 == 1;
    if (k_odd && !l_odd) {
        return q(k + 1, l);
    }
    if (k > l) {
        return q(k, l); // k even, or both odd
    }
    if (!k_odd) {
        return q(k + 1, l + 1);
    }
    const int a = l / (k + 1);
    const int r = l % (k + 1);
    return q(k + l - r, static_cast<long>(a + 1) * l);
}

Rat even_cycle_exponent(int k, int l)
{
    if (k < 2 || l < 2) {
        throw InvalidArgument("even_cycle_exponent needs k, l >= 2");
    }
    if (2 * k >= l) {
        return q(4L * k * (k - 1), 2L * k * l - 2L * k - l);
    }
    return q(2L * k, l);
}

bool has_hamiltonian_cycle(const Graph& h)
{
    const int n = h.num_vertices();
    if (n > 12) {
        throw ResourceLimit("Hamiltonicity search is capped at 12 vertices");
    }
    if (n == 2) {
        return h.num_edges() == 1;
    }
    if (n < 3) {
        return false;
    }
    // reach[mask][v]: a path from 0 through exactly mask ending at v
    const int full = (1 << n) - 1;
    std::vector<std::vector<char>> reach(static_cast<std::size_t>(1) << n, std::vector<char>(n, 0));
    reach[1][0] = 1;
    for (int mask = 1; mask <= full; ++mask) {
        if (!(mask & 1)) {
            continue;
        }
        for (int v = 0; v < n; ++v) {
            if (!reach[mask][v]) {
                continue;
            }
            for (int w : h.neighbors(v)) {
                if (!(mask >> w & 1)) {
                    reach[mask | (1 << w)][w] = 1;
                }
            }
        }
    }
    for (int v : h.neighbors(0)) {
        if (reach[full][v]) {
            return true;
        }
    }
    return false;
}

Rat hamiltonian_exponent(int k, const Graph& h)
{
    const int l = h.num_vertices();
    if (k < 2 || l < 2) {
        throw InvalidArgument("hamiltonian_exponent needs k >= 2 and v(H) >= 2");
    }
    if (2 * k < l) {
        throw InvalidArgument("hamiltonian_exponent needs 2k >= v(H)");
    }
    if (!has_hamiltonian_cycle(h)) {
        throw InvalidArgument("hamiltonian_exponent: H has no Hamiltonian cycle");
    }
    return q(4L * k * (k - 1), 2L * k * l - 2L * k - l);
}

std::pair<Rat, Rat> odd_cycle_bounds(int k, int l)
{
    if (!(k > l && l >= 1)) {
        throw InvalidArgument("odd_cycle_bounds needs k > l >= 1");
    }
    const long K = k;
    const long L = l;
    const Rat lower = q(4 * K * K - 1, 4 * K * L - 1);
    Rat upper;
    if (K <= 2 * L - 1) {
        upper = q(2 * (K + 1), 2 * L + 1);
    } else {
        const long t = 2 * K - 2 * L + 1;
        upper = q(2 * K * t - 1, 2 * L * t - 1);
    }
    return {lower, upper};
}

Rat fractional_matching(const Graph& h)
{
    if (h.num_edges() == 0) {
        throw InvalidArgument("fractional_matching needs at least one edge");
    }
    LPProblem lp;
    lp.sense = Sense::maximize;
    for (int e = 0; e < h.num_edges(); ++e) {
        lp.add_variable(1);
    }
    for (int v = 0; v < h.num_vertices(); ++v) {
        if (h.degree(v) == 0) {
            continue;
        }
        std::vector<Rat> row(static_cast<std::size_t>(h.num_edges()), Rat(0));
        for (int e = 0; e < h.num_edges(); ++e) {
            const auto [a, b] = h.edges()[e];
            if (a == v || b == v) {
                row[e] = 1;
            }
        }
        lp.add_row(row, Relation::le, 1);
    }
    LPLimits limits;
    limits.max_vars = std::max(limits.max_vars, h.num_edges());
    limits.max_rows = std::max(limits.max_rows, h.num_vertices());
    return solve_lp(lp, limits).optimum;
}

Rat edge_exponent(const Graph& h) { return 1 / fractional_matching(h); }

bool has_long_path_cover(const Graph& h)
{
    const int n = h.num_vertices();
    if (n > 12) {
        throw ResourceLimit("path cover search is capped at 12 vertices");
    }
    if (n == 0) {
        return false;
    }
    // Every path with >= 2 edges splits into pieces on 3, 4 or 5 vertices.
    const int full = (1 << n) - 1;
    std::vector<signed char> memo(static_cast<std::size_t>(1) << n, -1);
    std::function<bool(int)> covered = [&](int mask) -> bool {
        if (mask == full) {
            return true;
        }
        auto& slot = memo[mask];
        if (slot >= 0) {
            return slot != 0;
        }
        int v = 0;
        while (mask >> v & 1) {
            ++v;
        }
        bool ok = false;
        // paths through v: grow both ends from v
        std::vector<int> seq{v};
        std::function<void(int)> grow = [&](int used) {
            if (ok) {
                return;
            }
            const int len = static_cast<int>(seq.size());
            if (len >= 3 && covered(used)) {
                ok = true;
                return;
            }
            if (len == 5) {
                return;
            }
            for (int end = 0; end < 2 && !ok; ++end) {
                const int tip = end == 0 ? seq.back() : seq.front();
                for (int w : h.neighbors(tip)) {
                    if (used >> w & 1) {
                        continue;
                    }
                    if (end == 0) {
                        seq.push_back(w);
                    } else {
                        seq.insert(seq.begin(), w);
                    }
                    grow(used | (1 << w));
                    if (end == 0) {
                        seq.pop_back();
                    } else {
                        seq.erase(seq.begin());
                    }
                    if (ok) {
                        return;
                    }
                }
            }
        };
        grow(mask | (1 << v));
        slot = ok ? 1 : 0;
        return ok;
    };
    return covered(0);
}

std::optional<Rat> p2_exponent(const Graph& h)
{
    if (!has_long_path_cover(h)) {
        return std::nullopt;
    }
    return q(3, h.num_vertices());
}

std::optional<Rat> kk_exponent(const Graph& g, const Graph& h)
{
    const int k = g.num_vertices();
    const int n = h.num_vertices();
    if (k == 0 || k > n) {
        return std::nullopt;
    }
    if (n > 10) {
        throw ResourceLimit("subset condition is capped at v(H) <= 10");
    }
    std::vector<int> pick;
    bool ok = true;
    std::function<void(int)> rec = [&](int start) {
        if (!ok) {
            return;
        }
        if (static_cast<int>(pick.size()) == k) {
            ok = has_subgraph(g, h.induced(pick));
            return;
        }
        for (int v = start; v <= n - (k - static_cast<int>(pick.size())); ++v) {
            pick.push_back(v);
            rec(v + 1);
            pick.pop_back();
            if (!ok) {
                return;
            }
        }
    };
    rec(0);
    if (!ok) {
        return std::nullopt;
    }
    return q(k, n);
}

std::optional<Rat> subgraph_equal_nu(const Graph& g, const Graph& h)
{
    if (g.num_edges() == 0 || h.num_edges() == 0 || g.num_vertices() > h.num_vertices()) {
        return std::nullopt;
    }
    if (!has_subgraph(g, h)) {
        return std::nullopt;
    }
    if (fractional_matching(g) != fractional_matching(h)) {
        return std::nullopt;
    }
    return Rat(1);
}

Graph strip_isolated(const Graph& g)
{
    std::vector<int> keep;
    for (int v = 0; v < g.num_vertices(); ++v) {
        if (g.degree(v) > 0) {
            keep.push_back(v);
        }
    }
    return g.induced(keep);
}

namespace {

struct ComponentClass {
    Graph rep;
    int count = 0;
};

std::vector<ComponentClass> component_classes(const Graph& g)
{
    std::vector<ComponentClass> classes;
    for (const auto& comp : g.components()) {
        Graph c = g.induced(comp);
        bool placed = false;
        for (auto& cls : classes) {
            if (iso(cls.rep, c)) {
                ++cls.count;
                placed = true;
                break;
            }
        }
        if (!placed) {
            classes.push_back({c, 1});
        }
    }
    return classes;
}

int power_of(const std::vector<ComponentClass>& classes)
{
    int a = 0;
    for (const auto& cls : classes) {
        a = std::gcd(a, cls.count);
    }
    return a;
}

Graph root_of(const std::vector<ComponentClass>& classes, int a)
{
    Graph out = empty_graph(0);
    for (const auto& cls : classes) {
        for (int i = 0; i < cls.count / a; ++i) {
            out = disjoint_union(out, cls.rep);
        }
    }
    return out;
}

/// Lengths when every component is K_2 or an even cycle.
std::optional<std::vector<int>> even_union_lengths(const Graph& g)
{
    std::vector<int> lengths;
    for (const auto& comp : g.components()) {
        const auto len = cycle_length(g.induced(comp));
        if (!len || *len % 2 != 0) {
            return std::nullopt;
        }
        lengths.push_back(*len);
    }
    return lengths;
}

using Rule = std::function<std::optional<Rat>(const Graph&, const Graph&)>;

const std::vector<std::pair<std::string, Rule>>& rule_table()
{
    static const std::vector<std::pair<std::string, Rule>> table = {
        {"path", [](const Graph& g, const Graph& h) -> std::optional<Rat> {
             const auto k = path_length(g);
             const auto l = path_length(h);
             if (!k || !l) {
                 return std::nullopt;
             }
             return path_exponent(*k, *l);
         }},
        {"even_cycle", [](const Graph& g, const Graph& h) -> std::optional<Rat> {
             const auto len = cycle_length(g);
             const auto l = cycle_length(h);
             if (!len || *len % 2 != 0 || *len < 4 || !l) {
                 return std::nullopt;
             }
             return even_cycle_exponent(*len / 2, *l);
         }},
        {"hamiltonian_target", [](const Graph& g, const Graph& h) -> std::optional<Rat> {
             const auto len = cycle_length(g);
             if (!len || *len % 2 != 0 || *len < 4 || *len < h.num_vertices() || h.num_vertices() > 12 ||
                 !has_hamiltonian_cycle(h)) {
                 return std::nullopt;
             }
             return hamiltonian_exponent(*len / 2, h);
         }},
        {"edge_fractional_matching", [](const Graph& g, const Graph& h) -> std::optional<Rat> {
             if (!(g.num_vertices() == 2 && g.num_edges() == 1)) {
                 return std::nullopt;
             }
             return edge_exponent(h);
         }},
        {"k4_minus_e_triangle", [](const Graph& g, const Graph& h) -> std::optional<Rat> {
             if (!iso(g, k4_minus_e()) || !iso(h, complete(3))) {
                 return std::nullopt;
             }
             return Rat(2);
         }},
        {"triangle_pendant_triangle", [](const Graph& g, const Graph& h) -> std::optional<Rat> {
             if (!iso(g, triangle_pendant()) || !iso(h, complete(3))) {
                 return std::nullopt;
             }
             return q(3, 2);
         }},
        {"kruskal_katona", [](const Graph& g, const Graph& h) -> std::optional<Rat> {
             if (h.num_vertices() > 10) {
                 return std::nullopt;
             }
             return kk_exponent(g, h);
         }},
        {"p2_path_cover", [](const Graph& g, const Graph& h) -> std::optional<Rat> {
             if (!iso(g, path(2)) || h.num_vertices() > 12) {
                 return std::nullopt;
             }
             return p2_exponent(h);
         }},
        {"subgraph_equal_nu", [](const Graph& g, const Graph& h) { return subgraph_equal_nu(g, h); }},
        {"even_union_lp", [](const Graph& g, const Graph& h) -> std::optional<Rat> {
             const auto gl = even_union_lengths(g);
             const auto hl = even_union_lengths(h);
             if (!gl || !hl || hl->empty() || gl->empty()) {
                 return std::nullopt;
             }
             int top = 4;
             for (int len : *gl) {
                 top = std::max(top, len);
             }
             for (int len : *hl) {
                 top = std::max(top, len);
             }
             if (top > 20) {
                 return std::nullopt;
             }
             return union_exponent_lp(*gl, *hl, top / 2);
         }},
    };
    return table;
}

struct CatalogEntry {
    std::string name;
    Graph graph;
};

const std::vector<CatalogEntry>& composition_catalog()
{
    static const std::vector<CatalogEntry> catalog = [] {
        std::vector<CatalogEntry> c;
        for (int m = 1; m <= 6; ++m) {
            c.push_back({"P_" + std::to_string(m), path(m)});
        }
        for (int m = 3; m <= 8; ++m) {
            c.push_back({"C_" + std::to_string(m), cycle(m)});
        }
        c.push_back({"K_4", complete(4)});
        c.push_back({"K_5", complete(5)});
        c.push_back({"K_4-e", k4_minus_e()});
        c.push_back({"triangle_pendant", triangle_pendant()});
        return c;
    }();
    return catalog;
}

const std::vector<CatalogEntry>& harvest_catalog()
{
    static const std::vector<CatalogEntry> catalog = [] {
        std::vector<CatalogEntry> c;
        for (SimpleFamily kind : {SimpleFamily::two_cliques, SimpleFamily::clique_plus_isolated,
                                  SimpleFamily::single_edge}) {
            for (int n : {4, 6, 8}) {
                c.push_back({to_string(kind) + "(" + std::to_string(n) + ")", simple_family(kind, n)});
            }
        }
        for (int m = 5; m <= 9; ++m) {
            c.push_back({"C_" + std::to_string(m), cycle(m)});
        }
        c.push_back({"behrend(10)", behrend_graph(10)});
        c.push_back({"red_line(p=3)", red_line_graph(ProjectivePlaneSpec{3, 2, std::nullopt}, 1).graph});
        return c;
    }();
    return catalog;
}

/// Largest p/64 <= log tG / log tH certified by tH^p >= tG^64, if positive.
std::optional<Rat> certified_log_ratio(const Rat& tg, const Rat& th)
{
    if (!(th > 0 && th < 1 && tg > 0 && tg < 1)) {
        return std::nullopt;
    }
    constexpr long den = 64;
    const double ratio = log_rat(tg) / log_rat(th);
    long p = static_cast<long>(std::floor(ratio * den)) + 1;
    const Rat tg_pow = pow(tg, static_cast<unsigned long>(den));
    for (int tries = 0; tries < 4 && p > 0; ++tries, --p) {
        if (pow(th, static_cast<unsigned long>(p)) >= tg_pow) {
            return q(p, den);
        }
    }
    return std::nullopt;
}

ExponentBound scaled(ExponentBound b, const Rat& factor)
{
    b.lower *= factor;
    if (b.upper) {
        *b.upper *= factor;
    }
    return b;
}

} // namespace

std::optional<std::pair<Rat, std::vector<std::string>>> exact_rules(const Graph& g, const Graph& h)
{
    if (g.num_edges() == 0 || h.num_edges() == 0 || has_isolated(g) || has_isolated(h) ||
        !exists_exponent(g, h)) {
        return std::nullopt;
    }
    std::optional<Rat> value;
    std::vector<std::string> fired;
    for (const auto& [name, rule] : rule_table()) {
        std::optional<Rat> r;
        try {
            r = rule(g, h);
        } catch (const ResourceLimit&) {
            continue;
        }
        if (!r) {
            continue;
        }
        if (value && *value != *r) {
            throw std::logic_error("exact rules disagree: " + fired.front() + " gives " + to_string(*value) + ", " +
                                   name + " gives " + to_string(*r));
        }
        value = *r;
        fired.push_back(name);
    }
    if (!value) {
        return std::nullopt;
    }
    return std::make_pair(*value, fired);
}

ExponentBound dispatch_exponent(const Graph& g_in, const Graph& h_in, const DispatchOptions& options)
{
    ExponentBound out;
    const Graph g = strip_isolated(g_in);
    const Graph h = strip_isolated(h_in);
    if (g.num_vertices() != g_in.num_vertices() || h.num_vertices() != h_in.num_vertices()) {
        out.provenance.push_back("strip_isolated");
    }
    if (!exists_exponent(g, h)) {
        out.lower = 0;
        out.upper.reset();
        out.provenance.push_back("nonexistent");
        return out;
    }
    if (g.num_edges() == 0) {
        out.lower = 0;
        out.upper = Rat(0);
        out.exact = true;
        out.provenance.push_back("edgeless");
        return out;
    }

    const auto gc = component_classes(g);
    const auto hc = component_classes(h);
    const int a = power_of(gc);
    const int b = power_of(hc);
    if (a > 1 || b > 1) {
        ExponentBound inner = dispatch_exponent(root_of(gc, a), root_of(hc, b), options);
        ExponentBound res = scaled(inner, q(a, b));
        res.provenance.insert(res.provenance.begin(), "union_power(" + std::to_string(a) + "," + std::to_string(b) + ")");
        res.provenance.insert(res.provenance.begin(), out.provenance.begin(), out.provenance.end());
        return res;
    }

    if (auto exact = exact_rules(g, h)) {
        out.lower = exact->first;
        out.upper = exact->first;
        out.exact = true;
        out.provenance.insert(out.provenance.end(), exact->second.begin(), exact->second.end());
        return out;
    }

    if (g.is_connected() && h.is_connected()) {
        out.lower = simple_lower(g, h);
        out.provenance.push_back("simple_lower");
    } else {
        out.lower = std::max(q(g.num_edges(), h.num_edges()), q(g.num_vertices(), h.num_vertices()));
        out.provenance.push_back("ratio_lower");
    }
    out.upper = crude_upper(g, h);
    out.provenance.push_back("crude_upper");

    const auto gl = cycle_length(g);
    const auto hl = cycle_length(h);
    if (gl && hl && *gl % 2 == 1 && *hl % 2 == 1 && *gl > *hl) {
        const auto [lo, up] = odd_cycle_bounds((*gl - 1) / 2, (*hl - 1) / 2);
        out.lower = std::max(out.lower, lo);
        out.upper = std::min(*out.upper, up);
        out.provenance.push_back("odd_cycle_bounds");
    }

    for (const auto& entry : composition_catalog()) {
        const auto first = exact_rules(g, entry.graph);
        if (!first) {
            continue;
        }
        const auto second = exact_rules(entry.graph, h);
        if (!second) {
            continue;
        }
        const Rat candidate = first->first * second->first;
        if (candidate < *out.upper) {
            out.upper = candidate;
            out.provenance.push_back("composition[" + entry.name + "]");
        }
    }

    if (options.harvest) {
        for (const auto& entry : harvest_catalog()) {
            const Rat tg = density(g, entry.graph);
            const Rat th = density(h, entry.graph);
            const auto lo = certified_log_ratio(tg, th);
            if (lo && *lo > out.lower) {
                out.lower = *lo;
                out.provenance.push_back("harvest[" + entry.name + "]");
            }
        }
    }

    if (out.lower > *out.upper) {
        throw std::logic_error("dispatch produced lower > upper");
    }
    out.exact = out.lower == *out.upper;
    return out;
}

} // namespace homdom
