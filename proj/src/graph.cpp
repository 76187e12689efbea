#include "homdom/graph.hpp"

#include "homdom/error.hpp"

#include <algorithm>
#include <numeric>
#include <queue>
#include <set>

namespace homdom {

Graph::Graph(int n, std::vector<Edge> edges) : n_(n), edges_(std::move(edges)), adj_(n < 0 ? 0 : n)
{
    if (n < 0) {
        throw InvalidArgument("negative vertex count");
    }
    for (auto& [u, v] : edges_) {
        if (u < 0 || v < 0 || u >= n || v >= n) {
            throw InvalidArgument("edge endpoint out of range: (" + std::to_string(u) + "," + std::to_string(v) + ")");
        }
        if (u == v) {
            throw InvalidArgument("loop at vertex " + std::to_string(u));
        }
        if (u > v) {
            std::swap(u, v);
        }
    }
    std::sort(edges_.begin(), edges_.end());
    if (std::adjacent_find(edges_.begin(), edges_.end()) != edges_.end()) {
        throw InvalidArgument("duplicate edge");
    }
    for (auto [u, v] : edges_) {
        adj_[u].push_back(v);
        adj_[v].push_back(u);
    }
    for (auto& list : adj_) {
        std::sort(list.begin(), list.end());
    }
}

bool Graph::has_edge(int u, int v) const
{
    if (u < 0 || u >= n_) {
        return false;
    }
    const auto& list = adj_[u];
    return std::binary_search(list.begin(), list.end(), v);
}

std::vector<std::vector<int>> Graph::components() const
{
    std::vector<int> comp(n_, -1);
    std::vector<std::vector<int>> out;
    for (int s = 0; s < n_; ++s) {
        if (comp[s] >= 0) {
            continue;
        }
        std::vector<int> members{s};
        comp[s] = static_cast<int>(out.size());
        for (std::size_t head = 0; head < members.size(); ++head) {
            for (int w : adj_[members[head]]) {
                if (comp[w] < 0) {
                    comp[w] = comp[s];
                    members.push_back(w);
                }
            }
        }
        std::sort(members.begin(), members.end());
        out.push_back(std::move(members));
    }
    return out;
}

bool Graph::is_connected() const { return n_ > 0 && components().size() == 1; }

Graph Graph::induced(std::span<const int> vertices) const
{
    std::vector<int> index(n_, -1);
    for (std::size_t i = 0; i < vertices.size(); ++i) {
        index[vertices[i]] = static_cast<int>(i);
    }
    std::vector<Edge> out;
    for (auto [u, v] : edges_) {
        if (index[u] >= 0 && index[v] >= 0) {
            out.emplace_back(index[u], index[v]);
        }
    }
    return Graph(static_cast<int>(vertices.size()), std::move(out));
}

Graph Graph::relabeled(std::span<const int> perm) const
{
    std::vector<Edge> out;
    out.reserve(edges_.size());
    for (auto [u, v] : edges_) {
        out.emplace_back(perm[u], perm[v]);
    }
    return Graph(n_, std::move(out));
}

bool Graph::is_tree() const { return is_connected() && num_edges() == n_ - 1; }

bool Graph::is_bipartite() const
{
    std::vector<int> side(n_, -1);
    for (int s = 0; s < n_; ++s) {
        if (side[s] >= 0) {
            continue;
        }
        side[s] = 0;
        std::queue<int> q;
        q.push(s);
        while (!q.empty()) {
            int u = q.front();
            q.pop();
            for (int w : adj_[u]) {
                if (side[w] < 0) {
                    side[w] = 1 - side[u];
                    q.push(w);
                } else if (side[w] == side[u]) {
                    return false;
                }
            }
        }
    }
    return true;
}

std::optional<std::vector<int>> Graph::as_path() const
{
    if (n_ < 2 || !is_tree()) {
        return std::nullopt;
    }
    int start = -1;
    for (int v = 0; v < n_; ++v) {
        if (degree(v) > 2) {
            return std::nullopt;
        }
        if (degree(v) == 1 && start < 0) {
            start = v;
        }
    }
    std::vector<int> order{start};
    int prev = -1;
    int cur = start;
    while (static_cast<int>(order.size()) < n_) {
        int next = adj_[cur][0] == prev ? adj_[cur][1] : adj_[cur][0];
        prev = cur;
        cur = next;
        order.push_back(cur);
    }
    return order;
}

std::optional<std::vector<int>> Graph::as_cycle() const
{
    if (n_ < 3 || num_edges() != n_ || !is_connected()) {
        return std::nullopt;
    }
    for (int v = 0; v < n_; ++v) {
        if (degree(v) != 2) {
            return std::nullopt;
        }
    }
    std::vector<int> order{0};
    int prev = -1;
    int cur = 0;
    while (static_cast<int>(order.size()) < n_) {
        int next = adj_[cur][0] == prev ? adj_[cur][1] : adj_[cur][0];
        prev = cur;
        cur = next;
        order.push_back(cur);
    }
    return order;
}

std::optional<int> LabeledGraph::vertex_with_label(int label) const
{
    for (auto [v, l] : labels) {
        if (l == label) {
            return v;
        }
    }
    return std::nullopt;
}

// ---------------------------------------------------------------------------

Graph path(int m)
{
    if (m < 0) {
        throw InvalidArgument("path length must be nonnegative");
    }
    std::vector<Edge> e;
    for (int i = 0; i < m; ++i) {
        e.emplace_back(i, i + 1);
    }
    return Graph(m + 1, std::move(e));
}

Graph cycle(int m)
{
    if (m == 2) {
        return complete(2);
    }
    if (m < 3) {
        throw InvalidArgument("cycle length must be at least 3 (or 2 for the K_2 alias)");
    }
    std::vector<Edge> e;
    for (int i = 0; i < m; ++i) {
        e.emplace_back(i, (i + 1) % m);
    }
    return Graph(m, std::move(e));
}

Graph complete(int m)
{
    if (m < 0) {
        throw InvalidArgument("clique size must be nonnegative");
    }
    std::vector<Edge> e;
    for (int i = 0; i < m; ++i) {
        for (int j = i + 1; j < m; ++j) {
            e.emplace_back(i, j);
        }
    }
    return Graph(m, std::move(e));
}

Graph complete_bipartite(int a, int b)
{
    if (a < 1 || b < 1) {
        throw InvalidArgument("complete bipartite parts must be nonempty");
    }
    std::vector<Edge> e;
    for (int i = 0; i < a; ++i) {
        for (int j = 0; j < b; ++j) {
            e.emplace_back(i, a + j);
        }
    }
    return Graph(a + b, std::move(e));
}

Graph k4_minus_e() { return Graph(4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}}); }

Graph triangle_pendant() { return Graph(4, {{0, 1}, {0, 2}, {1, 2}, {0, 3}}); }

Graph cycle_with_chord(int k, int l)
{
    if (l < 1 || k <= l) {
        throw InvalidArgument("cycle_with_chord requires k > l >= 1");
    }
    std::vector<Edge> e = cycle(2 * k + 1).edges();
    e.emplace_back(0, 2 * l);
    return Graph(2 * k + 1, std::move(e));
}

Graph chorded_fan(int i)
{
    if (i < 1) {
        throw InvalidArgument("chorded_fan requires i >= 1");
    }
    std::vector<Edge> e = cycle(2 * i + 1).edges();
    for (int j = 2; j <= 2 * i - 1; ++j) {
        e.emplace_back(0, j);
    }
    return Graph(2 * i + 1, std::move(e));
}

Graph star(int m)
{
    if (m < 1) {
        throw InvalidArgument("star needs at least one leaf");
    }
    std::vector<Edge> e;
    for (int i = 1; i <= m; ++i) {
        e.emplace_back(0, i);
    }
    return Graph(m + 1, std::move(e));
}

Graph single_edge_plus_isolated(int n)
{
    if (n < 2) {
        throw InvalidArgument("single_edge_plus_isolated requires n >= 2");
    }
    return Graph(n, {{0, 1}});
}

Graph empty_graph(int n) { return Graph(n, {}); }

Graph disjoint_union(const Graph& g, const Graph& h)
{
    std::vector<Edge> e = g.edges();
    const int off = g.num_vertices();
    for (auto [u, v] : h.edges()) {
        e.emplace_back(u + off, v + off);
    }
    return Graph(g.num_vertices() + h.num_vertices(), std::move(e));
}

Graph disjoint_power(const Graph& g, int a)
{
    if (a < 1) {
        throw InvalidArgument("disjoint power must be positive");
    }
    Graph out = g;
    for (int i = 1; i < a; ++i) {
        out = disjoint_union(out, g);
    }
    return out;
}

Graph tensor_product(const Graph& g, const Graph& h)
{
    const int nh = h.num_vertices();
    std::vector<Edge> e;
    for (auto [a, b] : g.edges()) {
        for (auto [c, d] : h.edges()) {
            e.emplace_back(a * nh + c, b * nh + d);
            e.emplace_back(a * nh + d, b * nh + c);
        }
    }
    return Graph(g.num_vertices() * nh, std::move(e));
}

Graph blowup(const Graph& g, std::span<const int> multiplicities)
{
    if (static_cast<int>(multiplicities.size()) != g.num_vertices()) {
        throw InvalidArgument("blowup needs exactly one multiplicity per vertex");
    }
    std::vector<int> offset(g.num_vertices() + 1, 0);
    for (int v = 0; v < g.num_vertices(); ++v) {
        if (multiplicities[v] < 1) {
            throw InvalidArgument("blowup multiplicities must be positive");
        }
        offset[v + 1] = offset[v] + multiplicities[v];
    }
    std::vector<Edge> e;
    for (auto [u, v] : g.edges()) {
        for (int a = 0; a < multiplicities[u]; ++a) {
            for (int b = 0; b < multiplicities[v]; ++b) {
                e.emplace_back(offset[u] + a, offset[v] + b);
            }
        }
    }
    return Graph(offset.back(), std::move(e));
}

LabeledGraph glue(const LabeledGraph& a, const LabeledGraph& b)
{
    const int na = a.graph.num_vertices();
    std::vector<int> image(b.graph.num_vertices(), -1);
    std::map<int, int> labels = a.labels;
    int next = na;
    for (int v = 0; v < b.graph.num_vertices(); ++v) {
        auto it = b.labels.find(v);
        if (it != b.labels.end()) {
            if (auto shared = a.vertex_with_label(it->second)) {
                image[v] = *shared;
                continue;
            }
        }
        image[v] = next++;
        if (it != b.labels.end()) {
            labels[image[v]] = it->second;
        }
    }
    std::set<Edge> edges(a.graph.edges().begin(), a.graph.edges().end());
    for (auto [u, v] : b.graph.edges()) {
        int x = image[u];
        int y = image[v];
        edges.insert({std::min(x, y), std::max(x, y)});
    }
    return LabeledGraph{Graph(next, std::vector<Edge>(edges.begin(), edges.end())), std::move(labels)};
}

Graph unlabel(const LabeledGraph& g) { return g.graph; }

// ---------------------------------------------------------------------------
// Canonical forms by exhaustive permutation search with prefix pruning.

namespace {

class Canonicalizer {
public:
    explicit Canonicalizer(const Graph& g) : g_(g), n_(g.num_vertices()), used_(n_, false), place_(n_, -1) {}

    std::string run()
    {
        if (n_ > kMaxCanonicalVertices) {
            throw ResourceLimit("canonical_form is limited to " + std::to_string(kMaxCanonicalVertices) + " vertices");
        }
        bits_.reserve(n_ * (n_ - 1) / 2);
        search(0);
        return std::to_string(n_) + ":" + best_;
    }

private:
    void search(int pos)
    {
        if (pos == n_) {
            if (!have_best_ || bits_ < best_) {
                best_ = bits_;
                have_best_ = true;
            }
            return;
        }
        for (int w = 0; w < n_; ++w) {
            if (used_[w]) {
                continue;
            }
            const std::size_t mark = bits_.size();
            for (int i = 0; i < pos; ++i) {
                bits_.push_back(g_.has_edge(place_[i], w) ? '1' : '0');
            }
            if (!have_best_ || bits_.compare(0, bits_.size(), best_, 0, bits_.size()) <= 0) {
                used_[w] = true;
                place_[pos] = w;
                search(pos + 1);
                used_[w] = false;
            }
            bits_.resize(mark);
        }
    }

    const Graph& g_;
    int n_;
    std::vector<bool> used_;
    std::vector<int> place_;
    std::string bits_;
    std::string best_;
    bool have_best_ = false;
};

Graph from_canonical(const std::string& form)
{
    auto colon = form.find(':');
    int n = std::stoi(form.substr(0, colon));
    std::vector<Edge> e;
    std::size_t k = colon + 1;
    for (int j = 1; j < n; ++j) {
        for (int i = 0; i < j; ++i, ++k) {
            if (form[k] == '1') {
                e.emplace_back(i, j);
            }
        }
    }
    return Graph(n, std::move(e));
}

} // namespace

std::string canonical_form(const Graph& g) { return Canonicalizer(g).run(); }

bool isomorphic(const Graph& a, const Graph& b)
{
    if (a.num_vertices() != b.num_vertices() || a.num_edges() != b.num_edges()) {
        return false;
    }
    std::vector<int> da;
    std::vector<int> db;
    for (int v = 0; v < a.num_vertices(); ++v) {
        da.push_back(a.degree(v));
        db.push_back(b.degree(v));
    }
    std::sort(da.begin(), da.end());
    std::sort(db.begin(), db.end());
    if (da != db) {
        return false;
    }
    if (a.num_vertices() <= kMaxCanonicalVertices) {
        return canonical_form(a) == canonical_form(b);
    }
    // Larger graphs: backtracking bijection search, degree-preserving and
    // checked against every previously mapped vertex.
    const int n = a.num_vertices();
    std::vector<int> order;
    std::vector<bool> seen(n, false);
    for (int s = 0; s < n; ++s) {
        if (seen[s]) {
            continue;
        }
        seen[s] = true;
        order.push_back(s);
        for (std::size_t i = order.size() - 1; i < order.size(); ++i) {
            for (int w : a.neighbors(order[i])) {
                if (!seen[w]) {
                    seen[w] = true;
                    order.push_back(w);
                }
            }
        }
    }
    std::vector<int> image(n, -1);
    std::vector<bool> used(n, false);
    std::function<bool(int)> extend = [&](int pos) {
        if (pos == n) {
            return true;
        }
        const int v = order[pos];
        for (int c = 0; c < n; ++c) {
            if (used[c] || b.degree(c) != a.degree(v)) {
                continue;
            }
            bool ok = true;
            for (int i = 0; i < pos && ok; ++i) {
                const int u = order[i];
                ok = a.has_edge(u, v) == b.has_edge(image[u], c);
            }
            if (!ok) {
                continue;
            }
            image[v] = c;
            used[c] = true;
            if (extend(pos + 1)) {
                return true;
            }
            used[c] = false;
        }
        image[v] = -1;
        return false;
    };
    return extend(0);
}

void for_each_graph(int n, bool dedup, const std::function<void(const Graph&)>& visit)
{
    if (n < 0) {
        throw InvalidArgument("negative vertex count");
    }
    if (!dedup) {
        if (n > 7) {
            throw ResourceLimit("labeled enumeration is limited to 7 vertices");
        }
        std::vector<Edge> pairs;
        for (int j = 1; j < n; ++j) {
            for (int i = 0; i < j; ++i) {
                pairs.emplace_back(i, j);
            }
        }
        const std::uint64_t total = 1ULL << pairs.size();
        for (std::uint64_t mask = 0; mask < total; ++mask) {
            std::vector<Edge> e;
            for (std::size_t b = 0; b < pairs.size(); ++b) {
                if (mask >> b & 1ULL) {
                    e.push_back(pairs[b]);
                }
            }
            visit(Graph(n, std::move(e)));
        }
        return;
    }
    if (n > kMaxCanonicalVertices) {
        throw ResourceLimit("isomorphism-class enumeration is limited to " + std::to_string(kMaxCanonicalVertices) +
                            " vertices");
    }
    // Every class on n vertices arises by adding a vertex to a class on n-1.
    std::set<std::string> level{canonical_form(Graph(0, {}))};
    for (int size = 1; size <= n; ++size) {
        std::set<std::string> next;
        for (const auto& form : level) {
            Graph base = from_canonical(form);
            const int m = base.num_vertices();
            for (std::uint32_t nbrs = 0; nbrs < (1U << m); ++nbrs) {
                std::vector<Edge> e = base.edges();
                for (int v = 0; v < m; ++v) {
                    if (nbrs >> v & 1U) {
                        e.emplace_back(v, m);
                    }
                }
                next.insert(canonical_form(Graph(m + 1, std::move(e))));
            }
        }
        level = std::move(next);
    }
    for (const auto& form : level) {
        visit(from_canonical(form));
    }
}

std::vector<Graph> enumerate_graphs(int n, bool dedup)
{
    std::vector<Graph> out;
    for_each_graph(n, dedup, [&](const Graph& g) { out.push_back(g); });
    return out;
}

} // namespace homdom
