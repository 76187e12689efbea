#include "homdom/hom.hpp"

#include "homdom/error.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <optional>
#include <queue>

namespace homdom {

namespace {

using u128 = unsigned __int128;

BigInt from_u128(u128 x)
{
    BigInt hi(static_cast<unsigned long>(static_cast<std::uint64_t>(x >> 64)));
    BigInt lo(static_cast<unsigned long>(static_cast<std::uint64_t>(x)));
    return (hi << 64) + lo;
}

enum class Mode { count, exists, injective };

/// Backtracking over one connected component of the pattern.
class ComponentSearch {
public:
    ComponentSearch(const Graph& h, std::span<const int> component, const Graph& t, Mode mode, std::uint64_t& budget)
        : t_(t), mode_(mode), budget_(budget), used_(mode == Mode::injective ? t.num_vertices() : 0, false)
    {
        // BFS order from a maximum-degree vertex (lowest index on ties).
        int start = component[0];
        for (int v : component) {
            if (h.degree(v) > h.degree(start)) {
                start = v;
            }
        }
        std::vector<int> position(h.num_vertices(), -1);
        std::queue<int> q;
        q.push(start);
        position[start] = 0;
        order_.push_back(start);
        while (!q.empty()) {
            int u = q.front();
            q.pop();
            for (int w : h.neighbors(u)) {
                if (position[w] < 0) {
                    position[w] = static_cast<int>(order_.size());
                    order_.push_back(w);
                    q.push(w);
                }
            }
        }
        back_.resize(order_.size());
        for (std::size_t i = 0; i < order_.size(); ++i) {
            for (int w : h.neighbors(order_[i])) {
                if (position[w] < static_cast<int>(i)) {
                    back_[i].push_back(position[w]);
                }
            }
        }
        image_.assign(order_.size(), -1);
    }

    u128 run()
    {
        total_ = 0;
        found_ = false;
        search(0);
        return total_;
    }

    bool found() const { return found_; }

private:
    bool admissible(std::size_t pos, int c) const
    {
        if (mode_ == Mode::injective && used_[c]) {
            return false;
        }
        for (int b : back_[pos]) {
            if (!t_.has_edge(image_[b], c)) {
                return false;
            }
        }
        return true;
    }

    template <typename Fn>
    void for_candidates(std::size_t pos, Fn&& fn)
    {
        if (back_[pos].empty()) {
            for (int c = 0; c < t_.num_vertices(); ++c) {
                if (mode_ != Mode::injective || !used_[c]) {
                    if (!fn(c)) {
                        return;
                    }
                }
            }
            return;
        }
        int pivot = back_[pos][0];
        for (int b : back_[pos]) {
            if (t_.degree(image_[b]) < t_.degree(image_[pivot])) {
                pivot = b;
            }
        }
        for (int c : t_.neighbors(image_[pivot])) {
            if (admissible(pos, c)) {
                if (!fn(c)) {
                    return;
                }
            }
        }
    }

    void search(std::size_t pos)
    {
        if (budget_ == 0) {
            throw ResourceLimit("homomorphism search exceeded its node budget");
        }
        --budget_;
        const bool last = pos + 1 == order_.size();
        if (last && mode_ == Mode::count) {
            std::uint64_t n = 0;
            for_candidates(pos, [&](int) {
                ++n;
                return true;
            });
            total_ += n;
            return;
        }
        for_candidates(pos, [&](int c) {
            image_[pos] = c;
            if (last) {
                found_ = true;
                return false;
            }
            if (mode_ == Mode::injective) {
                used_[c] = true;
            }
            search(pos + 1);
            if (mode_ == Mode::injective) {
                used_[c] = false;
            }
            return !(found_ && mode_ != Mode::count);
        });
    }

    const Graph& t_;
    Mode mode_;
    std::uint64_t& budget_;
    std::vector<bool> used_;
    std::vector<int> order_;
    std::vector<std::vector<int>> back_;
    std::vector<int> image_;
    u128 total_ = 0;
    bool found_ = false;
};

} // namespace

BigInt hom_count(const Graph& h, const Graph& t, const HomLimits& limits)
{
    std::uint64_t budget = limits.max_search_nodes;
    BigInt result = 1;
    for (const auto& comp : h.components()) {
        ComponentSearch s(h, comp, t, Mode::count, budget);
        result *= from_u128(s.run());
        if (result == 0) {
            break;
        }
    }
    return result;
}

bool has_hom(const Graph& h, const Graph& t, const HomLimits& limits)
{
    std::uint64_t budget = limits.max_search_nodes;
    for (const auto& comp : h.components()) {
        ComponentSearch s(h, comp, t, Mode::exists, budget);
        s.run();
        if (!s.found()) {
            return false;
        }
    }
    return true;
}

bool has_subgraph(const Graph& h, const Graph& t, const HomLimits& limits)
{
    if (h.num_vertices() > t.num_vertices()) {
        return false;
    }
    if (h.num_vertices() == 0) {
        return true;
    }
    // Injectivity couples components, so they cannot be counted independently.
    auto comps = h.components();
    std::uint64_t budget = limits.max_search_nodes;
    if (comps.size() == 1) {
        ComponentSearch s(h, comps[0], t, Mode::injective, budget);
        s.run();
        return s.found();
    }
    std::vector<int> order;
    for (const auto& c : comps) {
        order.insert(order.end(), c.begin(), c.end());
    }
    std::vector<int> image(h.num_vertices(), -1);
    std::vector<bool> used(t.num_vertices(), false);
    std::function<bool(std::size_t)> rec = [&](std::size_t pos) -> bool {
        if (budget == 0) {
            throw ResourceLimit("subgraph search exceeded its node budget");
        }
        --budget;
        if (pos == order.size()) {
            return true;
        }
        const int v = order[pos];
        for (int c = 0; c < t.num_vertices(); ++c) {
            if (used[c]) {
                continue;
            }
            bool ok = true;
            for (int w : h.neighbors(v)) {
                if (image[w] >= 0 && !t.has_edge(image[w], c)) {
                    ok = false;
                    break;
                }
            }
            if (!ok) {
                continue;
            }
            image[v] = c;
            used[c] = true;
            if (rec(pos + 1)) {
                return true;
            }
            used[c] = false;
            image[v] = -1;
        }
        return false;
    };
    return rec(0);
}

Rat hom_density(const Graph& h, const Graph& t, const HomLimits& limits)
{
    if (t.num_vertices() == 0) {
        throw InvalidArgument("homomorphism density needs a nonempty target");
    }
    Rat out(hom_count(h, t, limits), ipow(t.num_vertices(), h.num_vertices()));
    out.canonicalize();
    return out;
}

BigInt count_homs(const Graph& h, const Graph& t, const HomLimits& limits)
{
    BigInt result = 1;
    std::vector<int> rest;
    for (const auto& comp : h.components()) {
        if (comp.size() == 1) {
            result *= t.num_vertices();
            continue;
        }
        Graph sub = h.induced(comp);
        if (sub.as_cycle()) {
            result *= cycle_hom_count(sub.num_vertices(), t);
        } else if (sub.as_path()) {
            result *= path_hom_count(sub.num_edges(), t);
        } else {
            result *= hom_count(sub, t, limits);
        }
        if (result == 0) {
            break;
        }
    }
    return result;
}

Rat density(const Graph& h, const Graph& t, const HomLimits& limits)
{
    if (t.num_vertices() == 0) {
        throw InvalidArgument("homomorphism density needs a nonempty target");
    }
    Rat out(count_homs(h, t, limits), ipow(t.num_vertices(), h.num_vertices()));
    out.canonicalize();
    return out;
}

// ---------------------------------------------------------------------------
// Walk counting

namespace {

int max_degree(const Graph& t)
{
    int d = 0;
    for (int v = 0; v < t.num_vertices(); ++v) {
        d = std::max(d, t.degree(v));
    }
    return d;
}

/// Whether maxdeg^steps stays below 2^bits.
bool fits(const Graph& t, int steps, int bits)
{
    return static_cast<double>(steps) * std::log2(static_cast<double>(max_degree(t)) + 1.0) < bits;
}

std::vector<BigInt> apply_adjacency(const Graph& t, const std::vector<BigInt>& x)
{
    std::vector<BigInt> y(x.size());
    for (auto [u, v] : t.edges()) {
        y[u] += x[v];
        y[v] += x[u];
    }
    return y;
}

} // namespace

BigInt path_hom_count(int m, const Graph& t)
{
    if (m < 0) {
        throw InvalidArgument("path length must be nonnegative");
    }
    const int n = t.num_vertices();
    if (fits(t, m, 62) && n < (1 << 20)) {
        std::vector<std::uint64_t> x(n, 1);
        std::vector<std::uint64_t> y(n);
        for (int step = 0; step < m; ++step) {
            std::fill(y.begin(), y.end(), 0);
            for (auto [u, v] : t.edges()) {
                y[u] += x[v];
                y[v] += x[u];
            }
            x.swap(y);
        }
        BigInt total = 0;
        for (auto value : x) {
            total += BigInt(static_cast<unsigned long>(value));
        }
        return total;
    }
    std::vector<BigInt> x(n, BigInt(1));
    for (int step = 0; step < m; ++step) {
        x = apply_adjacency(t, x);
    }
    BigInt total = 0;
    for (const auto& value : x) {
        total += value;
    }
    return total;
}

BigInt cycle_hom_count(int m, const Graph& t)
{
    if (m == 2) {
        return BigInt(2 * t.num_edges());
    }
    if (m < 3) {
        throw InvalidArgument("cycle_hom_count requires m >= 3");
    }
    const int n = t.num_vertices();
    const int a = m / 2;
    const int b = m - a;
    if (fits(t, m, 126)) {
        // (A^m)_{uu} = <A^a e_u, A^b e_u>, computed from sparse walk vectors.
        std::vector<std::uint64_t> cur(n, 0);
        std::vector<std::uint64_t> nxt(n, 0);
        std::vector<std::uint64_t> half(n, 0);
        std::vector<char> touched_flag(n, 0);
        std::vector<int> support;
        std::vector<int> next_support;
        BigInt total = 0;
        for (int u = 0; u < n; ++u) {
            support.assign(1, u);
            cur[u] = 1;
            std::vector<int> half_support;
            for (int step = 1; step <= b; ++step) {
                next_support.clear();
                for (int x : support) {
                    const std::uint64_t cx = cur[x];
                    for (int w : t.neighbors(x)) {
                        if (!touched_flag[w]) {
                            touched_flag[w] = 1;
                            next_support.push_back(w);
                        }
                        nxt[w] += cx;
                    }
                }
                for (int x : support) {
                    cur[x] = 0;
                }
                for (int w : next_support) {
                    touched_flag[w] = 0;
                    cur[w] = nxt[w];
                    nxt[w] = 0;
                }
                support.swap(next_support);
                if (step == a) {
                    half_support = support;
                    for (int w : support) {
                        half[w] = cur[w];
                    }
                }
            }
            u128 diag = 0;
            for (int w : half_support) {
                diag += static_cast<u128>(half[w]) * cur[w];
                half[w] = 0;
            }
            for (int w : support) {
                cur[w] = 0;
            }
            total += from_u128(diag);
        }
        return total;
    }
    BigInt total = 0;
    for (int u = 0; u < n; ++u) {
        std::vector<BigInt> x(n, BigInt(0));
        x[u] = 1;
        std::vector<BigInt> xa;
        for (int step = 1; step <= b; ++step) {
            x = apply_adjacency(t, x);
            if (step == a) {
                xa = x;
            }
        }
        for (int w = 0; w < n; ++w) {
            total += xa[w] * x[w];
        }
    }
    return total;
}

BigInt rooted_cycle_hom(int a, const Graph& t, int u, int v)
{
    if (a < 3) {
        throw InvalidArgument("rooted_cycle_hom requires a >= 3");
    }
    if (!t.has_edge(u, v)) {
        throw InvalidArgument("rooted_cycle_hom: root pair is not an edge of the target");
    }
    // Vertex 1 -> u, vertex 2 -> v, then a walk of length a-1 from v back to u.
    std::vector<BigInt> x(t.num_vertices(), BigInt(0));
    x[v] = 1;
    for (int step = 0; step < a - 1; ++step) {
        x = apply_adjacency(t, x);
    }
    return x[u];
}

std::vector<double> spectral_cycle_traces(const Graph& t, std::span<const int> lengths)
{
    const int n = t.num_vertices();
    std::vector<double> out(lengths.size(), 0.0);
    if (n == 0) {
        return out;
    }
    if (t.is_bipartite() && t.num_edges() > 0) {
        std::vector<int> side(n, -1);
        std::vector<int> index(n, -1);
        std::vector<int> sizes{0, 0};
        for (const auto& comp : t.components()) {
            side[comp[0]] = 0;
            std::queue<int> q;
            q.push(comp[0]);
            while (!q.empty()) {
                int x = q.front();
                q.pop();
                for (int w : t.neighbors(x)) {
                    if (side[w] < 0) {
                        side[w] = 1 - side[x];
                        q.push(w);
                    }
                }
            }
        }
        for (int v = 0; v < n; ++v) {
            index[v] = sizes[side[v]]++;
        }
        const int small = sizes[0] <= sizes[1] ? 0 : 1;
        const int k = sizes[small];
        // Gram matrix G = B B^T on the smaller side: G_xy = common neighbours.
        Eigen::MatrixXd gram = Eigen::MatrixXd::Zero(k, k);
        for (int y = 0; y < n; ++y) {
            if (side[y] == small) {
                continue;
            }
            auto nb = t.neighbors(y);
            for (int p : nb) {
                for (int q : nb) {
                    gram(index[p], index[q]) += 1.0;
                }
            }
        }
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(gram, Eigen::EigenvaluesOnly);
        const Eigen::VectorXd mu = solver.eigenvalues();
        for (std::size_t i = 0; i < lengths.size(); ++i) {
            const int m = lengths[i];
            if (m % 2 == 1) {
                continue;
            }
            double s = 0.0;
            for (Eigen::Index j = 0; j < mu.size(); ++j) {
                s += std::pow(std::max(mu[j], 0.0), m / 2);
            }
            out[i] = 2.0 * s;
        }
        return out;
    }
    Eigen::MatrixXd adj = Eigen::MatrixXd::Zero(n, n);
    for (auto [u, v] : t.edges()) {
        adj(u, v) = 1.0;
        adj(v, u) = 1.0;
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(adj, Eigen::EigenvaluesOnly);
    const Eigen::VectorXd lambda = solver.eigenvalues();
    for (std::size_t i = 0; i < lengths.size(); ++i) {
        double s = 0.0;
        for (Eigen::Index j = 0; j < lambda.size(); ++j) {
            s += std::pow(lambda[j], lengths[i]);
        }
        out[i] = s;
    }
    return out;
}

double cycle_density_spectral(int m, const Graph& t)
{
    if (t.num_vertices() == 0) {
        throw InvalidArgument("spectral density needs a nonempty target");
    }
    const int lengths[] = {m};
    return spectral_cycle_traces(t, lengths)[0] / std::pow(static_cast<double>(t.num_vertices()), m);
}

// ---------------------------------------------------------------------------
// Weighted targets

Rat WeightedTarget::total_weight() const
{
    Rat s = 0;
    for (const auto& w : weight) {
        s += w;
    }
    return s;
}

void WeightedTarget::validate() const
{
    const std::size_t q = weight.size();
    if (q == 0) {
        throw InvalidArgument("weighted target needs at least one class");
    }
    if (density.size() != q) {
        throw InvalidArgument("density matrix has the wrong number of rows");
    }
    for (std::size_t a = 0; a < q; ++a) {
        if (weight[a] <= 0) {
            throw InvalidArgument("class weights must be positive");
        }
        if (density[a].size() != q) {
            throw InvalidArgument("density matrix must be square");
        }
        for (std::size_t b = 0; b < q; ++b) {
            if (density[a][b] < 0 || density[a][b] > 1) {
                throw InvalidArgument("densities must lie in [0, 1]");
            }
            if (density[a][b] != density[b][a]) {
                throw InvalidArgument("density matrix must be symmetric");
            }
        }
    }
}

WeightedTarget WeightedTarget::from_graph(const Graph& t)
{
    const int n = t.num_vertices();
    WeightedTarget w;
    w.weight.assign(n, Rat(1));
    w.density.assign(n, std::vector<Rat>(n, Rat(0)));
    for (auto [u, v] : t.edges()) {
        w.density[u][v] = 1;
        w.density[v][u] = 1;
    }
    return w;
}

namespace {

/// prod over walk of (w/N) * density along consecutive classes, summed.
Rat weighted_path(const std::vector<Rat>& p, const WeightedTarget& w, int edges)
{
    const int q = w.num_classes();
    std::vector<Rat> x = p;
    for (int step = 0; step < edges; ++step) {
        std::vector<Rat> y(q, Rat(0));
        for (int b = 0; b < q; ++b) {
            for (int a = 0; a < q; ++a) {
                if (x[a] != 0 && w.density[a][b] != 0) {
                    y[b] += x[a] * w.density[a][b];
                }
            }
            y[b] *= p[b];
        }
        x = std::move(y);
    }
    Rat s = 0;
    for (const auto& v : x) {
        s += v;
    }
    return s;
}

Rat weighted_cycle(const std::vector<Rat>& p, const WeightedTarget& w, int length)
{
    const int q = w.num_classes();
    Rat total = 0;
    for (int start = 0; start < q; ++start) {
        std::vector<Rat> x(q, Rat(0));
        x[start] = p[start];
        for (int step = 0; step < length - 1; ++step) {
            std::vector<Rat> y(q, Rat(0));
            for (int b = 0; b < q; ++b) {
                for (int a = 0; a < q; ++a) {
                    if (x[a] != 0 && w.density[a][b] != 0) {
                        y[b] += x[a] * w.density[a][b];
                    }
                }
                y[b] *= p[b];
            }
            x = std::move(y);
        }
        for (int a = 0; a < q; ++a) {
            total += x[a] * w.density[a][start];
        }
    }
    return total;
}

Rat weighted_brute(const Graph& h, const std::vector<Rat>& p, const WeightedTarget& w, const HomLimits& limits)
{
    const int q = w.num_classes();
    const int n = h.num_vertices();
    std::vector<int> cls(n, -1);
    std::uint64_t budget = limits.max_weighted_maps;
    Rat total = 0;
    std::function<void(int, const Rat&)> rec = [&](int v, const Rat& acc) {
        if (budget == 0) {
            throw ResourceLimit("weighted evaluation exceeded its map budget");
        }
        --budget;
        if (v == n) {
            total += acc;
            return;
        }
        for (int c = 0; c < q; ++c) {
            Rat next = acc * p[c];
            for (int u : h.neighbors(v)) {
                if (u < v) {
                    const Rat& d = w.density[cls[u]][c];
                    if (d == 0) {
                        next = 0;
                        break;
                    }
                    next *= d;
                }
            }
            if (next == 0) {
                continue;
            }
            cls[v] = c;
            rec(v + 1, next);
        }
        cls[v] = -1;
    };
    rec(0, Rat(1));
    return total;
}

} // namespace

Rat weighted_hom_density(const Graph& h, const WeightedTarget& w, const HomLimits& limits)
{
    w.validate();
    const Rat total = w.total_weight();
    std::vector<Rat> p;
    for (const auto& x : w.weight) {
        p.push_back(x / total);
    }
    Rat result = 1;
    for (const auto& comp : h.components()) {
        if (comp.size() == 1) {
            continue;
        }
        Graph sub = h.induced(comp);
        if (sub.as_path()) {
            result *= weighted_path(p, w, sub.num_edges());
        } else if (sub.as_cycle()) {
            result *= weighted_cycle(p, w, sub.num_vertices());
        } else {
            // BFS relabeling keeps the partial products nonzero-pruned early.
            std::vector<int> order;
            std::vector<bool> seen(sub.num_vertices(), false);
            std::queue<int> q;
            q.push(0);
            seen[0] = true;
            while (!q.empty()) {
                int x = q.front();
                q.pop();
                order.push_back(x);
                for (int y : sub.neighbors(x)) {
                    if (!seen[y]) {
                        seen[y] = true;
                        q.push(y);
                    }
                }
            }
            std::vector<int> perm(sub.num_vertices());
            for (std::size_t i = 0; i < order.size(); ++i) {
                perm[order[i]] = static_cast<int>(i);
            }
            result *= weighted_brute(sub.relabeled(perm), p, w, limits);
        }
        if (result == 0) {
            break;
        }
    }
    return result;
}

// ---------------------------------------------------------------------------
// Tropical tree exponent

const Rat& WeightedPattern::edge_exponent(int u, int v) const
{
    Edge key{std::min(u, v), std::max(u, v)};
    const auto& e = base.edges();
    auto it = std::lower_bound(e.begin(), e.end(), key);
    if (it == e.end() || *it != key) {
        throw InvalidArgument("edge_exponent: not an edge of the pattern base");
    }
    return eexp[static_cast<std::size_t>(it - e.begin())];
}

Rat tropical_tree_exponent(const Graph& tree, const WeightedPattern& pattern, int root)
{
    if (!tree.is_tree()) {
        throw InvalidArgument("tropical_tree_exponent requires a tree pattern");
    }
    if (root < 0 || root >= tree.num_vertices()) {
        throw InvalidArgument("tropical_tree_exponent: root out of range");
    }
    const Graph& base = pattern.base;
    const int q = base.num_vertices();
    if (static_cast<int>(pattern.vexp.size()) != q || static_cast<int>(pattern.eexp.size()) != base.num_edges()) {
        throw InvalidArgument("weighted pattern exponent vectors do not match its base graph");
    }
    // Parent pointers and a reverse BFS order give a bottom-up pass.
    const int n = tree.num_vertices();
    std::vector<int> parent(n, -1);
    std::vector<int> order{root};
    std::vector<bool> seen(n, false);
    seen[root] = true;
    for (std::size_t i = 0; i < order.size(); ++i) {
        for (int w : tree.neighbors(order[i])) {
            if (!seen[w]) {
                seen[w] = true;
                parent[w] = order[i];
                order.push_back(w);
            }
        }
    }
    // best[x][c]: max exponent of the subtree at x with x -> c, excluding vexp(c).
    std::vector<std::vector<std::optional<Rat>>> best(n, std::vector<std::optional<Rat>>(q, Rat(0)));
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
        const int y = *it;
        const int x = parent[y];
        if (x < 0) {
            continue;
        }
        for (int c = 0; c < q; ++c) {
            if (!best[x][c]) {
                continue;
            }
            std::optional<Rat> top;
            for (int c2 : base.neighbors(c)) {
                if (!best[y][c2]) {
                    continue;
                }
                Rat v = pattern.edge_exponent(c, c2) - pattern.vexp[c] + *best[y][c2];
                if (!top || v > *top) {
                    top = v;
                }
            }
            if (top) {
                *best[x][c] += *top;
            } else {
                best[x][c].reset();
            }
        }
    }
    std::optional<Rat> answer;
    for (int c = 0; c < q; ++c) {
        if (best[root][c]) {
            Rat v = pattern.vexp[c] + *best[root][c];
            if (!answer || v > *answer) {
                answer = v;
            }
        }
    }
    if (!answer) {
        throw InvalidArgument("tropical_tree_exponent: no homomorphism from the tree to the pattern base");
    }
    return *answer;
}

} // namespace homdom
