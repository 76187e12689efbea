#pragma once

#include "homdom/graph.hpp"
#include "homdom/rational.hpp"

#include <cstdint>
#include <map>
#include <span>
#include <vector>

namespace homdom {

struct HomLimits {
    /// Backtracking search nodes allowed per count before ResourceLimit is thrown.
    std::uint64_t max_search_nodes = 4'000'000'000ULL;
    /// Class assignments allowed in brute-force weighted evaluation.
    std::uint64_t max_weighted_maps = 20'000'000ULL;
};

/// Step-graphon target: classes with positive weights and symmetric densities in [0, 1].
struct WeightedTarget {
    std::vector<Rat> weight;
    std::vector<std::vector<Rat>> density;

    int num_classes() const { return static_cast<int>(weight.size()); }
    Rat total_weight() const;
    /// Throws InvalidArgument when an invariant fails.
    void validate() const;

    /// One unit-weight class per vertex, densities from the adjacency matrix.
    static WeightedTarget from_graph(const Graph& t);
};

/// Base graph with rational exponents on vertices and edges (indexed like base.edges()).
struct WeightedPattern {
    Graph base;
    std::vector<Rat> vexp;
    std::vector<Rat> eexp;

    const Rat& edge_exponent(int u, int v) const;
};

/// Exact count of adjacency-preserving maps V(H) -> V(T) by backtracking.
///
/// Components of H are counted independently and multiplied. Inside a component
/// vertices are visited in BFS order from a maximum-degree vertex; candidates for
/// each vertex are the common neighbours of the images of its earlier neighbours,
/// and the last vertex of a component is counted without enumeration.
BigInt hom_count(const Graph& h, const Graph& t, const HomLimits& limits = {});
/// Whether some homomorphism H -> T exists (same search, stops at the first).
bool has_hom(const Graph& h, const Graph& t, const HomLimits& limits = {});
/// Whether H is isomorphic to a (not necessarily induced) subgraph of T.
bool has_subgraph(const Graph& h, const Graph& t, const HomLimits& limits = {});

/// hom(H,T) / v(T)^v(H). Throws InvalidArgument on an empty target.
Rat hom_density(const Graph& h, const Graph& t, const HomLimits& limits = {});

/// Same values as hom_count, but path and cycle components go through the
/// walk-counting routines below. This is what corpus checks and estimators use.
BigInt count_homs(const Graph& h, const Graph& t, const HomLimits& limits = {});
Rat density(const Graph& h, const Graph& t, const HomLimits& limits = {});

/// Sum over maps V(H) -> classes of prod (w/N) * prod density, exact.
Rat weighted_hom_density(const Graph& h, const WeightedTarget& w, const HomLimits& limits = {});

/// 1^T A^m 1: homomorphisms from the path with m edges.
BigInt path_hom_count(int m, const Graph& t);
/// tr(A^m) for m >= 3 (m = 2 gives 2 e(T), the K_2 alias).
BigInt cycle_hom_count(int m, const Graph& t);
/// Homomorphisms of C_a sending the labelled consecutive pair (1, 2) to (u, v).
BigInt rooted_cycle_hom(int a, const Graph& t, int u, int v);

/// Sum of lambda^m over adjacency eigenvalues, for every requested m, from one
/// dense symmetric eigendecomposition. Bipartite targets are reduced to the
/// Gram matrix of the smaller side. Relative error is expected within
/// 1e-6 * n * max|lambda|^m.
std::vector<double> spectral_cycle_traces(const Graph& t, std::span<const int> lengths);
double cycle_density_spectral(int m, const Graph& t);

/// Max-plus tree DP: max over homomorphisms phi: H -> P.base of
/// vexp(phi(root)) + sum over edges (parent -> child) of eexp(phi(edge)) - vexp(phi(parent)).
/// Throws InvalidArgument when H is not a tree or no homomorphism exists.
Rat tropical_tree_exponent(const Graph& tree, const WeightedPattern& pattern, int root = 0);

} // namespace homdom
