#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace homdom {

using Edge = std::pair<int, int>;

/// Finite simple graph on vertices 0..n-1. Immutable after construction.
///
/// Edges are stored once, normalized to (u, v) with u < v and sorted; adjacency
/// lists are sorted so that membership is a binary search.
class Graph {
public:
    Graph() = default;
    /// Throws InvalidArgument on loops, duplicate edges or out-of-range endpoints.
    Graph(int n, std::vector<Edge> edges);

    int num_vertices() const { return n_; }
    int num_edges() const { return static_cast<int>(edges_.size()); }
    const std::vector<Edge>& edges() const { return edges_; }
    std::span<const int> neighbors(int v) const { return adj_[v]; }
    int degree(int v) const { return static_cast<int>(adj_[v].size()); }
    bool has_edge(int u, int v) const;

    bool operator==(const Graph& other) const { return n_ == other.n_ && edges_ == other.edges_; }

    bool is_connected() const;
    /// Vertex sets of connected components, each sorted, ordered by smallest vertex.
    std::vector<std::vector<int>> components() const;
    /// Subgraph induced by `vertices`, relabeled in the given order.
    Graph induced(std::span<const int> vertices) const;
    /// Same graph with vertex v renamed to perm[v].
    Graph relabeled(std::span<const int> perm) const;

    bool is_tree() const;
    bool is_bipartite() const;
    /// When the graph is a path P_m (m >= 1 edges), its vertices in walk order.
    std::optional<std::vector<int>> as_path() const;
    /// When the graph is a cycle C_m (m >= 3), its vertices in walk order.
    std::optional<std::vector<int>> as_cycle() const;

private:
    int n_ = 0;
    std::vector<Edge> edges_;
    std::vector<std::vector<int>> adj_;
};

/// A graph with a partial injective labeling of its vertices by positive integers.
struct LabeledGraph {
    Graph graph;
    std::map<int, int> labels; // vertex -> label

    std::optional<int> vertex_with_label(int label) const;
};

// ---------------------------------------------------------------------------
// Named graphs. Vertex numbering is part of the contract:
//   path(m)            0-1-...-m
//   cycle(m)           0-1-...-(m-1)-0; cycle(2) is the alias K_2
//   complete(m)        0..m-1
//   complete_bipartite parts {0..a-1}, {a..a+b-1}
//   k4_minus_e         K_4 without the edge {2,3} (so {0,1} is the shared edge)
//   triangle_pendant   triangle {0,1,2} plus pendant edge {0,3}
//   cycle_with_chord   C_{2k+1} plus chord {0, 2l}; the chord closes a
//                      (2l+1)-cycle 0..2l and a (2k-2l+2)-cycle 2l..2k,0
//   chorded_fan(i)     C_{2i+1} plus chords {0, j} for 2 <= j <= 2i-1
//   star(m)            centre 0, leaves 1..m
//   single_edge_plus_isolated(n)  edge {0,1} and n-2 isolated vertices
// ---------------------------------------------------------------------------
Graph path(int m);
Graph cycle(int m);
Graph complete(int m);
Graph complete_bipartite(int a, int b);
Graph k4_minus_e();
Graph triangle_pendant();
Graph cycle_with_chord(int k, int l);
Graph chorded_fan(int i);
Graph star(int m);
Graph single_edge_plus_isolated(int n);
Graph empty_graph(int n);

Graph disjoint_union(const Graph& g, const Graph& h);
/// The a-fold disjoint union G^a.
Graph disjoint_power(const Graph& g, int a);
/// Categorical product; vertex (g, h) is numbered g * v(H) + h.
Graph tensor_product(const Graph& g, const Graph& h);
/// Vertex (v, j) for j < mult[v] is numbered offset(v) + j with offsets cumulative.
Graph blowup(const Graph& g, std::span<const int> multiplicities);

/// Glues vertices carrying equal labels; L1's vertices keep their numbers and
/// L2's unmatched vertices follow in order.
LabeledGraph glue(const LabeledGraph& a, const LabeledGraph& b);
Graph unlabel(const LabeledGraph& g);

/// Canonical form: "n:" followed by the lexicographically smallest upper-triangle
/// bitstring (column order as in graph6) over all vertex permutations.
/// Throws ResourceLimit for n > 8.
std::string canonical_form(const Graph& g);
inline constexpr int kMaxCanonicalVertices = 8;

/// Canonical forms up to 8 vertices, bijection search beyond.
bool isomorphic(const Graph& a, const Graph& b);

/// Calls `visit` with every labeled graph on n vertices (n <= 7), or with one
/// representative per isomorphism class (n <= 8), in a deterministic order.
void for_each_graph(int n, bool dedup, const std::function<void(const Graph&)>& visit);
std::vector<Graph> enumerate_graphs(int n, bool dedup);

} // namespace homdom
