#pragma once

#include "homdom/graph.hpp"
#include "homdom/hom.hpp"
#include "homdom/io.hpp"
#include "homdom/rational.hpp"

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace homdom {

// ---------------------------------------------------------------------------
// Path blow-up

struct PathBlowupSpec {
    int k = 1;
    int l = 1;
    int m = 1;

    /// Throws InvalidArgument unless k, l, m >= 1 and m <= k.
    void validate() const;
};

/// Weighted P_{2kl+1} with b = 2l+1, s = 2l, d_i = [k | i]. Vertex u carries
/// p(u), edge {u, u+1} carries p(u, u+1); eexp is indexed like base.edges(),
/// which for a path is edge u = {u, u+1}.
WeightedPattern path_blowup_pattern(const PathBlowupSpec& spec);

/// Class v gets weight n^vexp(v); base edge uv gets density n^(eexp - vexp(u) - vexp(v)).
/// Requires n > 1 and integer exponents; throws InvalidArgument if some density exceeds 1.
WeightedTarget instantiate_weighted(const WeightedPattern& pattern, const Rat& n);

// ---------------------------------------------------------------------------
// Projective planes

bool is_prime(long p);

/// PG(2, p): points and lines are both normalized nonzero vectors of F_p^3
/// (first nonzero coordinate 1); point x lies on line y iff x . y = 0 mod p.
struct ProjectivePlane {
    int p = 0;
    std::vector<std::array<int, 3>> points;
    std::vector<std::array<int, 3>> lines;
    std::vector<std::vector<int>> line_points; // sorted point indices per line
    std::vector<std::vector<int>> point_lines; // sorted line indices per point

    int order() const { return p; }
    int size() const { return static_cast<int>(points.size()); }
};

ProjectivePlane projective_plane(int p);

struct ProjectivePlaneSpec {
    int p = 2;
    int k = 2;
    /// Overrides the L = floor(n^(k/(2k-1))) rule.
    std::optional<long> lines;

    long line_count() const;
    void validate() const;
};

/// floor(n^(k/(2k-1))) with n = p^2 + p + 1, exact.
long red_line_count(int p, int k);

struct RedLineGraph {
    Graph graph;
    std::vector<int> red_lines; // sorted line indices
};

/// Union of cliques on L lines drawn uniformly without replacement (seeded).
RedLineGraph red_line_graph(const ProjectivePlaneSpec& spec, std::uint64_t seed);

// ---------------------------------------------------------------------------
// Bipartite power targets

/// Parts {0..N-1} and {N..2N-1} with N = n^(i+1); each cross pair independently
/// with probability n^-i. Throws ResourceLimit when N exceeds max_part.
Graph bipartite_power_random(int i, long n, std::uint64_t seed, long max_part = 10000);
/// The two-class step graphon with the same weights and cross density.
WeightedTarget bipartite_power_weighted(int i, long n);

// ---------------------------------------------------------------------------
// Behrend graphs

/// Largest sphere-digit set in [0, N): numbers whose base-(2D-1) digits are all
/// below D and whose digit squares sum to a fixed radius, best over D and radius.
std::vector<long> ap3_free_set(long N);
bool is_ap3_free(const std::vector<long>& set);

/// Parts A = [0,N), B = N + [0,2N), C = 3N + [0,3N); triangle (x, x+d, x+2d)
/// for every x in [0,N) and d in S.
Graph behrend_graph(long N, const std::vector<long>& S);
Graph behrend_graph(long N);

// ---------------------------------------------------------------------------
// Simple families

enum class SimpleFamily { half_clique, two_cliques, clique_plus_isolated, single_edge };

SimpleFamily parse_simple_family(const std::string& name);
std::string to_string(SimpleFamily kind);

/// half_clique and clique_plus_isolated are both K_n plus n isolated vertices;
/// two_cliques is 2 K_n; single_edge is one edge on n vertices.
Graph simple_family(SimpleFamily kind, int n);

// ---------------------------------------------------------------------------
// Ratio estimation

enum class FamilyKind {
    path_blowup,
    projective,
    bipartite_power,
    single_edge,
    half_clique,
    two_cliques,
    clique_plus_isolated,
    behrend
};

FamilyKind parse_family_kind(const std::string& name);
std::string to_string(FamilyKind kind);

/// A family indexed by one size parameter: n for blow-ups and simple families,
/// the prime p for projective planes, N for Behrend graphs.
struct ScalingFamily {
    FamilyKind kind = FamilyKind::single_edge;
    PathBlowupSpec path;   // path_blowup
    int k = 2;             // projective
    int i = 1;             // bipartite_power
    bool weighted = false; // bipartite_power: step graphon instead of a random graph
    std::uint64_t seed = 1;
};

using FamilyInstance = std::variant<Graph, WeightedTarget>;

FamilyInstance instantiate(const ScalingFamily& family, long size);
/// The scale n used to normalize logs: p^2+p+1 for projective planes, the size otherwise.
Rat family_scale(const ScalingFamily& family, long size);
Rat instance_density(const Graph& h, const FamilyInstance& instance, const HomLimits& limits = {});

struct EstimatePoint {
    long size = 0;
    Rat t_g;
    Rat t_h;
    double ratio = 0;      // log t(G) / log t(H)
    double exponent_g = 0; // log t(G) / log scale
    double exponent_h = 0;
};

struct EstimateResult {
    std::vector<EstimatePoint> points; // sorted by size
    double extrapolated = 0;           // last ratio
    std::string trend;                 // increasing, decreasing, constant or mixed
};

/// Throws InvalidArgument when t(H,T) is 0 or 1 at some size.
EstimateResult estimate_ratio(const Graph& g, const Graph& h, const ScalingFamily& family, std::vector<long> sizes,
                              const HomLimits& limits = {});

/// "kind" or "kind:key=value,...", keys k, l, m (path_blowup), k (projective),
/// i, weighted (bipartite_power), seed. Throws InvalidArgument.
ScalingFamily parse_scaling_family(const std::string& text);
json scaling_family_to_json(const ScalingFamily& family);

json weighted_target_to_json(const WeightedTarget& w);
json weighted_pattern_to_json(const WeightedPattern& p);
/// Graphs as {"graph6", "n", "m"}, weighted targets as above.
json instance_to_json(const FamilyInstance& instance);
json estimate_to_json(const EstimateResult& result);

/// Exact test of log tg / log th <= c for 0 < th < 1, by cross-powering.
bool ratio_at_most(const Rat& tg, const Rat& th, const Rat& c);

} // namespace homdom
