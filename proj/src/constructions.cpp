#include "homdom/constructions.hpp"

#include "homdom/error.hpp"
#include "homdom/rng.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

namespace homdom {

// ---------------------------------------------------------------------------
// Path blow-up

void PathBlowupSpec::validate() const
{
    if (k < 1 || l < 1 || m < 1 || m > k) {
        throw InvalidArgument("path blow-up needs k, l, m >= 1 and m <= k");
    }
}

WeightedPattern path_blowup_pattern(const PathBlowupSpec& spec)
{
    spec.validate();
    const int k = spec.k;
    const int l = spec.l;
    const int kl = k * l;
    const int b = 2 * l + 1;
    const int s = 2 * l;
    std::vector<int> d(kl + 1);
    for (int i = 0; i <= kl; ++i) {
        d[i] = i % k == 0 ? 1 : 0;
    }
    const int last = 2 * kl + 1;
    std::vector<int> vexp(last + 1, 0);
    vexp[0] = b;
    vexp[1] = d[0];
    int partial = 0; // sum_{v=1}^{u} d_v
    for (int u = 1; u <= (kl - 1) / 2; ++u) {
        partial += d[u];
        vexp[2 * u + 1] = d[0] + 2 * partial;
    }
    partial = 0; // sum_{v=1}^{u-1} d_v
    for (int u = 1; u <= kl / 2; ++u) {
        vexp[2 * u] = s - d[0] - 2 * partial;
        partial += d[u];
    }
    for (int u = 0; u <= kl; ++u) {
        vexp[last - u] = vexp[u];
    }

    // eexp[u] is the exponent of edge {u, u+1}.
    std::vector<int> eexp(last, 0);
    for (int u = 0; u <= (kl - 1) / 2; ++u) {
        eexp[2 * u] = s + d[u];
    }
    for (int u = 1; u <= kl / 2; ++u) {
        eexp[2 * u - 1] = s;
    }
    eexp[kl] = kl % 2 == 0 ? s + d[kl / 2] : vexp[kl] + vexp[kl + 1];
    for (int u = 0; u <= kl - 1; ++u) {
        eexp[2 * kl - u] = eexp[u];
    }

    WeightedPattern out{path(last), {}, {}};
    for (int v : vexp) {
        out.vexp.emplace_back(v);
    }
    for (int e : eexp) {
        out.eexp.emplace_back(e);
    }
    return out;
}

WeightedTarget instantiate_weighted(const WeightedPattern& pattern, const Rat& n)
{
    if (n <= 1) {
        throw InvalidArgument("instantiate_weighted needs n > 1");
    }
    const int q = pattern.base.num_vertices();
    auto as_long = [](const Rat& r) {
        if (!is_integer(r) || !r.get_num().fits_slong_p()) {
            throw InvalidArgument("instantiate_weighted needs integer exponents");
        }
        return r.get_num().get_si();
    };
    WeightedTarget w;
    for (int v = 0; v < q; ++v) {
        w.weight.push_back(pow_signed(n, as_long(pattern.vexp[v])));
    }
    w.density.assign(q, std::vector<Rat>(q, Rat(0)));
    const auto& edges = pattern.base.edges();
    for (std::size_t e = 0; e < edges.size(); ++e) {
        auto [u, v] = edges[e];
        Rat dens = pow_signed(n, as_long(pattern.eexp[e] - pattern.vexp[u] - pattern.vexp[v]));
        if (dens > 1) {
            throw InvalidArgument("instantiate_weighted: density above 1 on edge {" + std::to_string(u) + "," +
                                  std::to_string(v) + "} at n = " + to_string(n));
        }
        w.density[u][v] = dens;
        w.density[v][u] = dens;
    }
    return w;
}

// ---------------------------------------------------------------------------
// Projective planes

bool is_prime(long p)
{
    if (p < 2) {
        return false;
    }
    for (long f = 2; f * f <= p; ++f) {
        if (p % f == 0) {
            return false;
        }
    }
    return true;
}

ProjectivePlane projective_plane(int p)
{
    if (!is_prime(p)) {
        throw InvalidArgument("projective_plane needs a prime order, got " + std::to_string(p));
    }
    if (p > 400) {
        throw ResourceLimit("projective_plane: order above 400");
    }
    ProjectivePlane plane;
    plane.p = p;
    for (int a = 0; a < p; ++a) {
        for (int b = 0; b < p; ++b) {
            plane.points.push_back({1, a, b});
        }
    }
    for (int b = 0; b < p; ++b) {
        plane.points.push_back({0, 1, b});
    }
    plane.points.push_back({0, 0, 1});
    plane.lines = plane.points;
    const int n = plane.size();
    plane.line_points.assign(n, {});
    plane.point_lines.assign(n, {});
    for (int y = 0; y < n; ++y) {
        const auto& l = plane.lines[y];
        for (int x = 0; x < n; ++x) {
            const auto& pt = plane.points[x];
            if ((pt[0] * l[0] + pt[1] * l[1] + pt[2] * l[2]) % p == 0) {
                plane.line_points[y].push_back(x);
                plane.point_lines[x].push_back(y);
            }
        }
    }
    return plane;
}

long red_line_count(int p, int k)
{
    if (k < 2) {
        throw InvalidArgument("red-line rule needs k >= 2");
    }
    const long n = static_cast<long>(p) * p + p + 1;
    return floor_power(BigInt(n), static_cast<unsigned long>(k), static_cast<unsigned long>(2 * k - 1)).get_si();
}

void ProjectivePlaneSpec::validate() const
{
    if (!is_prime(p)) {
        throw InvalidArgument("projective plane order must be prime");
    }
    if (k < 2) {
        throw InvalidArgument("projective family needs k >= 2");
    }
    const long n = static_cast<long>(p) * p + p + 1;
    if (lines && (*lines < 0 || *lines > n)) {
        throw InvalidArgument("red line count must lie in [0, p^2+p+1]");
    }
}

long ProjectivePlaneSpec::line_count() const
{
    return lines ? *lines : red_line_count(p, k);
}

RedLineGraph red_line_graph(const ProjectivePlaneSpec& spec, std::uint64_t seed)
{
    spec.validate();
    const ProjectivePlane plane = projective_plane(spec.p);
    const int n = plane.size();
    const long count = spec.line_count();
    std::vector<int> ids(n);
    std::iota(ids.begin(), ids.end(), 0);
    Rng rng(seed);
    for (long i = 0; i < count; ++i) {
        const auto j = i + static_cast<long>(rng.below(static_cast<std::uint64_t>(n - i)));
        std::swap(ids[i], ids[j]);
    }
    RedLineGraph out;
    out.red_lines.assign(ids.begin(), ids.begin() + count);
    std::sort(out.red_lines.begin(), out.red_lines.end());
    std::vector<Edge> edges;
    for (int line : out.red_lines) {
        const auto& pts = plane.line_points[line];
        for (std::size_t a = 0; a < pts.size(); ++a) {
            for (std::size_t b = a + 1; b < pts.size(); ++b) {
                edges.emplace_back(pts[a], pts[b]);
            }
        }
    }
    out.graph = Graph(n, std::move(edges));
    return out;
}

// ---------------------------------------------------------------------------
// Bipartite power targets

namespace {

long checked_power(long n, int e, long cap)
{
    BigInt v = ipow(n, static_cast<unsigned long>(e));
    if (v > cap) {
        throw ResourceLimit("bipartite power target: part size " + to_string(v) + " exceeds " + std::to_string(cap));
    }
    return v.get_si();
}

} // namespace

Graph bipartite_power_random(int i, long n, std::uint64_t seed, long max_part)
{
    if (i < 1 || n < 2) {
        throw InvalidArgument("bipartite power target needs i >= 1 and n >= 2");
    }
    const long part = checked_power(n, i + 1, max_part);
    const auto den = static_cast<std::uint64_t>(checked_power(n, i, max_part));
    Rng rng(seed);
    std::vector<Edge> edges;
    for (long a = 0; a < part; ++a) {
        for (long b = 0; b < part; ++b) {
            if (rng.bernoulli(1, den)) {
                edges.emplace_back(static_cast<int>(a), static_cast<int>(part + b));
            }
        }
    }
    return Graph(static_cast<int>(2 * part), std::move(edges));
}

WeightedTarget bipartite_power_weighted(int i, long n)
{
    if (i < 1 || n < 2) {
        throw InvalidArgument("bipartite power target needs i >= 1 and n >= 2");
    }
    Rat part(ipow(n, static_cast<unsigned long>(i + 1)));
    Rat dens(BigInt(1), ipow(n, static_cast<unsigned long>(i)));
    return WeightedTarget{{part, part}, {{Rat(0), dens}, {dens, Rat(0)}}};
}

// ---------------------------------------------------------------------------
// Behrend graphs

std::vector<long> ap3_free_set(long N)
{
    if (N < 1) {
        throw InvalidArgument("ap3_free_set needs N >= 1");
    }
    std::vector<long> best{0};
    for (long D = 2; 2 * D - 1 <= std::max(N, 3L) && D <= 256; ++D) {
        const long base = 2 * D - 1;
        std::map<long, std::vector<long>> spheres;
        for (long x = 0; x < N; ++x) {
            long y = x;
            long radius = 0;
            bool ok = true;
            while (y > 0) {
                const long digit = y % base;
                if (digit >= D) {
                    ok = false;
                    break;
                }
                radius += digit * digit;
                y /= base;
            }
            if (ok) {
                spheres[radius].push_back(x);
            }
        }
        for (auto& [radius, members] : spheres) {
            if (members.size() > best.size()) {
                best = members;
            }
        }
    }
    return best;
}

bool is_ap3_free(const std::vector<long>& set)
{
    std::vector<long> s = set;
    std::sort(s.begin(), s.end());
    for (std::size_t a = 0; a < s.size(); ++a) {
        for (std::size_t c = a + 2; c < s.size(); ++c) {
            if ((s[a] + s[c]) % 2 == 0 && std::binary_search(s.begin() + a + 1, s.begin() + c, (s[a] + s[c]) / 2)) {
                return false;
            }
        }
    }
    return true;
}

Graph behrend_graph(long N, const std::vector<long>& S)
{
    if (N < 1) {
        throw InvalidArgument("behrend_graph needs N >= 1");
    }
    if (6 * N > 50'000'000) {
        throw ResourceLimit("behrend_graph: too many vertices");
    }
    std::vector<Edge> edges;
    for (long x = 0; x < N; ++x) {
        for (long d : S) {
            if (d < 0 || d >= N) {
                throw InvalidArgument("behrend_graph: difference set must lie in [0, N)");
            }
            const int a = static_cast<int>(x);
            const int b = static_cast<int>(N + x + d);
            const int c = static_cast<int>(3 * N + x + 2 * d);
            edges.emplace_back(a, b);
            edges.emplace_back(b, c);
            edges.emplace_back(a, c);
        }
    }
    return Graph(static_cast<int>(6 * N), std::move(edges));
}

Graph behrend_graph(long N)
{
    if (N < 3) {
        throw InvalidArgument("behrend_graph needs N >= 3");
    }
    return behrend_graph(N, ap3_free_set(N));
}

// ---------------------------------------------------------------------------
// Simple families

SimpleFamily parse_simple_family(const std::string& name)
{
    if (name == "half_clique") {
        return SimpleFamily::half_clique;
    }
    if (name == "two_cliques") {
        return SimpleFamily::two_cliques;
    }
    if (name == "clique_plus_isolated") {
        return SimpleFamily::clique_plus_isolated;
    }
    if (name == "single_edge") {
        return SimpleFamily::single_edge;
    }
    throw InvalidArgument("unknown simple family '" + name + "'");
}

std::string to_string(SimpleFamily kind)
{
    switch (kind) {
    case SimpleFamily::half_clique:
        return "half_clique";
    case SimpleFamily::two_cliques:
        return "two_cliques";
    case SimpleFamily::clique_plus_isolated:
        return "clique_plus_isolated";
    case SimpleFamily::single_edge:
        return "single_edge";
    }
    return "?";
}

Graph simple_family(SimpleFamily kind, int n)
{
    if (n < 2) {
        throw InvalidArgument("simple families need n >= 2");
    }
    switch (kind) {
    case SimpleFamily::half_clique:
    case SimpleFamily::clique_plus_isolated:
        return disjoint_union(complete(n), empty_graph(n));
    case SimpleFamily::two_cliques:
        return disjoint_power(complete(n), 2);
    case SimpleFamily::single_edge:
        return single_edge_plus_isolated(n);
    }
    throw InvalidArgument("unknown simple family");
}

// ---------------------------------------------------------------------------
// Ratio estimation

FamilyKind parse_family_kind(const std::string& name)
{
    static const std::map<std::string, FamilyKind> names{
        {"path_blowup", FamilyKind::path_blowup},
        {"projective", FamilyKind::projective},
        {"bipartite_power", FamilyKind::bipartite_power},
        {"single_edge", FamilyKind::single_edge},
        {"half_clique", FamilyKind::half_clique},
        {"two_cliques", FamilyKind::two_cliques},
        {"clique_plus_isolated", FamilyKind::clique_plus_isolated},
        {"behrend", FamilyKind::behrend},
    };
    auto it = names.find(name);
    if (it == names.end()) {
        throw InvalidArgument("unknown family '" + name + "'");
    }
    return it->second;
}

std::string to_string(FamilyKind kind)
{
    switch (kind) {
    case FamilyKind::path_blowup:
        return "path_blowup";
    case FamilyKind::projective:
        return "projective";
    case FamilyKind::bipartite_power:
        return "bipartite_power";
    case FamilyKind::single_edge:
        return "single_edge";
    case FamilyKind::half_clique:
        return "half_clique";
    case FamilyKind::two_cliques:
        return "two_cliques";
    case FamilyKind::clique_plus_isolated:
        return "clique_plus_isolated";
    case FamilyKind::behrend:
        return "behrend";
    }
    return "?";
}

namespace {

int small_size(long size)
{
    if (size < 2 || size > 1'000'000) {
        throw InvalidArgument("family size out of range: " + std::to_string(size));
    }
    return static_cast<int>(size);
}

} // namespace

FamilyInstance instantiate(const ScalingFamily& family, long size)
{
    switch (family.kind) {
    case FamilyKind::path_blowup:
        return instantiate_weighted(path_blowup_pattern(family.path), Rat(BigInt(size)));
    case FamilyKind::projective:
        return red_line_graph(ProjectivePlaneSpec{small_size(size), family.k, std::nullopt}, family.seed).graph;
    case FamilyKind::bipartite_power:
        if (family.weighted) {
            return bipartite_power_weighted(family.i, size);
        }
        return bipartite_power_random(family.i, size, family.seed);
    case FamilyKind::single_edge:
        return simple_family(SimpleFamily::single_edge, small_size(size));
    case FamilyKind::half_clique:
        return simple_family(SimpleFamily::half_clique, small_size(size));
    case FamilyKind::two_cliques:
        return simple_family(SimpleFamily::two_cliques, small_size(size));
    case FamilyKind::clique_plus_isolated:
        return simple_family(SimpleFamily::clique_plus_isolated, small_size(size));
    case FamilyKind::behrend:
        return behrend_graph(size);
    }
    throw InvalidArgument("unknown family");
}

Rat family_scale(const ScalingFamily& family, long size)
{
    if (family.kind == FamilyKind::projective) {
        return Rat(BigInt(size * size + size + 1));
    }
    return Rat(BigInt(size));
}

Rat instance_density(const Graph& h, const FamilyInstance& instance, const HomLimits& limits)
{
    if (const auto* g = std::get_if<Graph>(&instance)) {
        return density(h, *g, limits);
    }
    return weighted_hom_density(h, std::get<WeightedTarget>(instance), limits);
}

EstimateResult estimate_ratio(const Graph& g, const Graph& h, const ScalingFamily& family, std::vector<long> sizes,
                              const HomLimits& limits)
{
    if (sizes.empty()) {
        throw InvalidArgument("estimate_ratio needs at least one size");
    }
    std::sort(sizes.begin(), sizes.end());
    sizes.erase(std::unique(sizes.begin(), sizes.end()), sizes.end());
    EstimateResult result;
    for (long size : sizes) {
        const FamilyInstance inst = instantiate(family, size);
        EstimatePoint pt;
        pt.size = size;
        pt.t_h = instance_density(h, inst, limits);
        if (pt.t_h == 0 || pt.t_h == 1) {
            throw InvalidArgument("degenerate family: t(H,T) = " + to_string(pt.t_h) + " at size " + std::to_string(size));
        }
        pt.t_g = instance_density(g, inst, limits);
        const double lg = log_rat(pt.t_g);
        const double lh = log_rat(pt.t_h);
        const double ls = log_rat(family_scale(family, size));
        pt.ratio = lg / lh;
        pt.exponent_g = lg / ls;
        pt.exponent_h = lh / ls;
        result.points.push_back(pt);
    }
    result.extrapolated = result.points.back().ratio;
    bool up = true;
    bool down = true;
    bool flat = true;
    for (std::size_t j = 1; j < result.points.size(); ++j) {
        const double a = result.points[j - 1].ratio;
        const double b = result.points[j].ratio;
        const double tol = 1e-12 * std::max(1.0, std::abs(a));
        if (b > a + tol) {
            down = false;
            flat = false;
        } else if (b < a - tol) {
            up = false;
            flat = false;
        }
    }
    result.trend = flat ? "constant" : up ? "increasing" : down ? "decreasing" : "mixed";
    return result;
}

bool ratio_at_most(const Rat& tg, const Rat& th, const Rat& c)
{
    if (th <= 0 || th >= 1) {
        throw InvalidArgument("ratio_at_most needs 0 < t(H) < 1");
    }
    if (tg == 0) {
        return false;
    }
    const BigInt& p = c.get_num();
    const BigInt& q = c.get_den();
    if (!p.fits_slong_p() || !q.fits_ulong_p()) {
        throw ResourceLimit("ratio_at_most: exponent too large");
    }
    return pow(tg, q.get_ui()) >= pow_signed(th, p.get_si());
}

ScalingFamily parse_scaling_family(const std::string& text)
{
    ScalingFamily family;
    const auto colon = text.find(':');
    family.kind = parse_family_kind(text.substr(0, colon));
    if (colon == std::string::npos) {
        return family;
    }
    std::string rest = text.substr(colon + 1);
    std::size_t start = 0;
    while (start <= rest.size()) {
        auto end = rest.find(',', start);
        if (end == std::string::npos) {
            end = rest.size();
        }
        const std::string item = rest.substr(start, end - start);
        start = end + 1;
        if (item.empty()) {
            continue;
        }
        const auto eq = item.find('=');
        if (eq == std::string::npos) {
            throw InvalidArgument("family parameter '" + item + "' needs key=value");
        }
        const std::string key = item.substr(0, eq);
        long value = 0;
        try {
            std::size_t used = 0;
            value = std::stol(item.substr(eq + 1), &used);
            if (used != item.size() - eq - 1) {
                throw std::invalid_argument("trailing");
            }
        } catch (const std::exception&) {
            throw InvalidArgument("family parameter '" + item + "' needs an integer value");
        }
        if (key == "k") {
            family.k = static_cast<int>(value);
            family.path.k = static_cast<int>(value);
        } else if (key == "l") {
            family.path.l = static_cast<int>(value);
        } else if (key == "m") {
            family.path.m = static_cast<int>(value);
        } else if (key == "i") {
            family.i = static_cast<int>(value);
        } else if (key == "weighted") {
            family.weighted = value != 0;
        } else if (key == "seed") {
            family.seed = static_cast<std::uint64_t>(value);
        } else {
            throw InvalidArgument("unknown family parameter '" + key + "'");
        }
    }
    return family;
}

json scaling_family_to_json(const ScalingFamily& family)
{
    json j{{"kind", to_string(family.kind)}, {"seed", family.seed}};
    switch (family.kind) {
    case FamilyKind::path_blowup:
        j["k"] = family.path.k;
        j["l"] = family.path.l;
        j["m"] = family.path.m;
        break;
    case FamilyKind::projective:
        j["k"] = family.k;
        break;
    case FamilyKind::bipartite_power:
        j["i"] = family.i;
        j["weighted"] = family.weighted;
        break;
    default:
        break;
    }
    return j;
}

json weighted_target_to_json(const WeightedTarget& w)
{
    json weights = json::array();
    for (const auto& x : w.weight) {
        weights.push_back(to_string(x));
    }
    json dens = json::array();
    for (const auto& row : w.density) {
        json r = json::array();
        for (const auto& x : row) {
            r.push_back(to_string(x));
        }
        dens.push_back(r);
    }
    return json{{"weights", weights}, {"densities", dens}};
}

json weighted_pattern_to_json(const WeightedPattern& p)
{
    json v = json::array();
    for (const auto& x : p.vexp) {
        v.push_back(to_string(x));
    }
    json e = json::array();
    for (std::size_t i = 0; i < p.eexp.size(); ++i) {
        const auto [a, b] = p.base.edges()[i];
        e.push_back(json{{"edge", {a, b}}, {"exponent", to_string(p.eexp[i])}});
    }
    return json{{"base", graph_to_json(p.base)}, {"vertex_exponents", v}, {"edge_exponents", e}};
}

json instance_to_json(const FamilyInstance& instance)
{
    if (const auto* g = std::get_if<Graph>(&instance)) {
        return json{{"graph6", encode_graph6(*g)}, {"n", g->num_vertices()}, {"m", g->num_edges()}};
    }
    return weighted_target_to_json(std::get<WeightedTarget>(instance));
}

json estimate_to_json(const EstimateResult& result)
{
    json points = json::array();
    for (const auto& pt : result.points) {
        points.push_back(json{{"size", pt.size},
                              {"t_g", to_string(pt.t_g)},
                              {"t_h", to_string(pt.t_h)},
                              {"ratio", pt.ratio},
                              {"exponent_g", pt.exponent_g},
                              {"exponent_h", pt.exponent_h}});
    }
    return json{{"points", points}, {"extrapolated", result.extrapolated}, {"trend", result.trend}};
}

} // namespace homdom
