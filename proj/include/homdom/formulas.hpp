#pragma once

#include "homdom/graph.hpp"
#include "homdom/io.hpp"
#include "homdom/rational.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace homdom {

/// Bounds on C(G, H), the least c with t(G,T) >= t(H,T)^c for every T.
/// upper is empty when the exponent does not exist.
struct ExponentBound {
    Rat lower;
    std::optional<Rat> upper;
    bool exact = false;
    std::vector<std::string> provenance;

    bool nonexistent() const { return !upper.has_value(); }
};

json bound_to_json(const ExponentBound& bound);

/// hom(G, H) > 0.
bool exists_exponent(const Graph& g, const Graph& h);

/// max over 1 <= r <= min(v(G), v(H)) of (v(G)/r)^r. Throws InvalidArgument
/// when the exponent does not exist.
Rat crude_upper(const Graph& g, const Graph& h);

/// max(e(G)/e(H), (v(G)-1)/(v(H)-1), v(G)/v(H)) for connected G, H; terms with
/// a zero denominator are left out. Throws InvalidArgument on disconnected input.
Rat simple_lower(const Graph& g, const Graph& h);

/// C(P_k, P_l), paths with k and l edges.
Rat path_exponent(int k, int l);

/// C(C_2k, C_l), l >= 2 (C_2 = K_2): 4k(k-1)/(2kl-2k-l) when 2k >= l, else 2k/l.
Rat even_cycle_exponent(int k, int l);

/// Whether H has a Hamiltonian cycle (bitmask search, v(H) <= 12; ResourceLimit beyond).
/// K_2 counts as C_2.
bool has_hamiltonian_cycle(const Graph& h);

/// C(C_2k, H) for Hamiltonian H with 2k >= v(H). InvalidArgument otherwise.
Rat hamiltonian_exponent(int k, const Graph& h);

/// (lower, upper) for C(C_{2k+1}, C_{2l+1}), k > l >= 1.
std::pair<Rat, Rat> odd_cycle_bounds(int k, int l);

/// Fractional matching number by exact LP. InvalidArgument when H has no edge.
Rat fractional_matching(const Graph& h);
/// C(K_2, H) = 1 / nu*(H).
Rat edge_exponent(const Graph& h);

/// 3/v(H) when H is vertex-covered by disjoint paths with at least two edges each.
std::optional<Rat> p2_exponent(const Graph& h);
/// Whether that cover exists (v(H) <= 12, ResourceLimit beyond).
bool has_long_path_cover(const Graph& h);

/// v(G)/v(H) when v(G) <= v(H) and every v(G)-subset of V(H) spans a copy of G
/// (v(H) <= 10, ResourceLimit beyond).
std::optional<Rat> kk_exponent(const Graph& g, const Graph& h);

/// 1 when G is a subgraph of H with nu*(G) = nu*(H).
std::optional<Rat> subgraph_equal_nu(const Graph& g, const Graph& h);

/// Removes isolated vertices; edgeless graphs become the empty graph.
Graph strip_isolated(const Graph& g);

struct DispatchOptions {
    /// Tighten the lower bound with exact log-ratio certificates over a small
    /// target catalog (constructions and simple families).
    bool harvest = false;
};

/// Priority cascade: nonexistence, power rewriting C(G^a, H^b) = (a/b) C(G, H),
/// exact rules, then bounds (simple lower bound, crude and composed upper
/// bounds). Never throws on valid graphs.
ExponentBound dispatch_exponent(const Graph& g, const Graph& h, const DispatchOptions& options = {});

/// Exact value from the closed-form rules alone, with the names of the rules
/// that fired. Empty when none applies. Throws std::logic_error if two rules disagree.
std::optional<std::pair<Rat, std::vector<std::string>>> exact_rules(const Graph& g, const Graph& h);

} // namespace homdom
