#include "homdom/constructions.hpp"
#include "homdom/error.hpp"

#include <doctest.h>

#include <cmath>
#include <set>

using namespace homdom;

namespace {

std::vector<Rat> rats(std::initializer_list<int> xs)
{
    std::vector<Rat> out;
    for (int x : xs)
        out.emplace_back(x);
    return out;
}

Rat frac(const BigInt& a, const BigInt& b)
{
    Rat r(a, b);
    r.canonicalize();
    return r;
}

} // namespace

TEST_CASE("path blow-up pattern golden values")
{
    WeightedPattern p = path_blowup_pattern({3, 2, 1});
    CHECK(p.base == path(13));
    CHECK(p.vexp == rats({5, 1, 3, 1, 3, 1, 3, 3, 1, 3, 1, 3, 1, 5}));
    CHECK(p.eexp == rats({5, 4, 4, 4, 4, 4, 5, 4, 4, 4, 4, 4, 5}));

    // (1,1,1): b = 3, s = 2, d = (1,1): p(0) = 3, p(1) = d_0 = 1, mirrored;
    // edge {0,1} = s + d_0 = 3, middle edge (kl odd) = p(1) + p(2) = 2.
    WeightedPattern q = path_blowup_pattern({1, 1, 1});
    CHECK(q.base == path(3));
    CHECK(q.vexp == rats({3, 1, 1, 3}));
    CHECK(q.eexp == rats({3, 2, 3}));

    CHECK_THROWS_AS(path_blowup_pattern({2, 1, 3}), InvalidArgument);
    CHECK_THROWS_AS(path_blowup_pattern({0, 1, 1}), InvalidArgument);
}

TEST_CASE("path blow-up pattern consistency for small parameters")
{
    for (int k = 1; k <= 4; ++k)
        for (int l = 1; l <= 4; ++l)
            for (int m = 1; m <= k; ++m) {
                CAPTURE(k);
                CAPTURE(l);
                CAPTURE(m);
                WeightedPattern p = path_blowup_pattern({k, l, m});
                const int last = 2 * k * l + 1;
                for (int u = 0; u <= last; ++u)
                    CHECK(p.vexp[last - u] == p.vexp[u]);
                for (int u = 0; u < last; ++u) {
                    CHECK(p.eexp[last - 1 - u] == p.eexp[u]);
                    // every bundle has density at most 1 and at least one edge per pair of classes
                    CHECK(p.eexp[u] <= p.vexp[u] + p.vexp[u + 1]);
                    CHECK(p.eexp[u] >= std::max(p.vexp[u], p.vexp[u + 1]));
                }
                CHECK(p.vexp[0] == 2 * l + 1);
                for (int u = 1; u < last; ++u)
                    CHECK(p.vexp[u] <= 2 * l);
                // Exponents of the two paths the construction compares.
                CHECK(tropical_tree_exponent(path(2 * k - 1), p) == 2 * k * l + 1);
                CHECK(tropical_tree_exponent(path(2 * k * l + 2 * m - 1), p) == (k * l + m) * 2 * l + l + 1);
            }
}

TEST_CASE("tropical exponent examples and root independence")
{
    WeightedPattern p = path_blowup_pattern({3, 2, 1});
    CHECK(tropical_tree_exponent(path(5), p) == 13);
    CHECK(tropical_tree_exponent(path(13), p) == 31);
    CHECK(tropical_tree_exponent(path(1), p) == 5);
    for (int m = 1; m <= 8; ++m)
        for (int root = 0; root <= m; ++root)
            CHECK(tropical_tree_exponent(path(m), p, root) == tropical_tree_exponent(path(m), p));
    Graph s = star(3);
    for (int root = 0; root < 4; ++root)
        CHECK(tropical_tree_exponent(s, p, root) == tropical_tree_exponent(s, p));
}

TEST_CASE("tropical exponent agrees with numeric instantiation")
{
    // Slope of log hom between two scales cancels the leading constant.
    WeightedPattern p = path_blowup_pattern({3, 2, 1});
    const Rat n1 = Rat(BigInt(1000000));
    const Rat n2 = Rat(BigInt(1000000000));
    WeightedTarget w1 = instantiate_weighted(p, n1);
    WeightedTarget w2 = instantiate_weighted(p, n2);
    auto log_hom = [](const Graph& h, const WeightedTarget& w) {
        return log_rat(weighted_hom_density(h, w) * pow(w.total_weight(), static_cast<unsigned long>(h.num_vertices())));
    };
    std::vector<Graph> trees{path(1), path(2), path(5), path(13), star(3)};
    for (const auto& h : trees) {
        const double slope = (log_hom(h, w2) - log_hom(h, w1)) / (log_rat(n2) - log_rat(n1));
        CHECK(slope == doctest::Approx(to_double(tropical_tree_exponent(h, p))).epsilon(0.005));
    }
}

TEST_CASE("weighted instantiation")
{
    WeightedPattern p = path_blowup_pattern({3, 2, 1});
    WeightedTarget w = instantiate_weighted(p, Rat(10));
    CHECK(w.density[1][2] == 1);
    CHECK(w.density[0][1] == make_rat(1, 10));
    CHECK(w.weight[0] == 100000);
    CHECK(w.density[0][2] == 0);
    CHECK_THROWS_AS(instantiate_weighted(p, Rat(1)), InvalidArgument);
    WeightedPattern bad{path(1), {Rat(1), Rat(1)}, {Rat(3)}};
    CHECK_THROWS_AS(instantiate_weighted(bad, Rat(2)), InvalidArgument);
}

TEST_CASE("projective planes")
{
    CHECK_THROWS_AS(projective_plane(4), InvalidArgument);
    for (int p : {2, 3, 5}) {
        ProjectivePlane plane = projective_plane(p);
        const int n = p * p + p + 1;
        CHECK(plane.size() == n);
        CHECK(static_cast<int>(plane.lines.size()) == n);
        for (const auto& pts : plane.line_points)
            CHECK(static_cast<int>(pts.size()) == p + 1);
        for (int a = 0; a < n; ++a)
            for (int b = a + 1; b < n; ++b) {
                std::vector<int> common;
                std::set_intersection(plane.line_points[a].begin(), plane.line_points[a].end(),
                                      plane.line_points[b].begin(), plane.line_points[b].end(),
                                      std::back_inserter(common));
                CHECK(common.size() == 1);
                std::vector<int> through;
                std::set_intersection(plane.point_lines[a].begin(), plane.point_lines[a].end(),
                                      plane.point_lines[b].begin(), plane.point_lines[b].end(),
                                      std::back_inserter(through));
                CHECK(through.size() == 1);
            }
    }
}

TEST_CASE("red line graphs")
{
    RedLineGraph two = red_line_graph({2, 2, 2}, 7);
    CHECK(two.graph.num_vertices() == 7);
    CHECK(two.graph.num_edges() == 6);
    CHECK(cycle_hom_count(3, two.graph) == 12);
    int deg4 = 0;
    for (int v = 0; v < 7; ++v)
        deg4 += two.graph.degree(v) == 4;
    CHECK(deg4 == 1);

    RedLineGraph all = red_line_graph({2, 2, 7}, 7);
    for (int v = 0; v < 7; ++v)
        CHECK(all.graph.degree(v) == 6);

    CHECK(red_line_count(2, 2) == 3);   // floor(7^(2/3)) = 3
    CHECK(red_line_count(31, 2) == 99); // floor(993^(2/3))
    for (int p : {3, 5, 7}) {
        ProjectivePlaneSpec spec{p, 2, std::nullopt};
        RedLineGraph g = red_line_graph(spec, 3);
        const long L = spec.line_count();
        CHECK(static_cast<long>(g.red_lines.size()) == L);
        CHECK(cycle_hom_count(3, g.graph) >= BigInt(L * (p + 1) * p * (p - 1)));
        CHECK(g.graph.num_edges() == L * (p + 1) * p / 2);
        // each edge lies on exactly one red line
        ProjectivePlane plane = projective_plane(p);
        for (auto [u, v] : g.graph.edges()) {
            int hits = 0;
            for (int line : g.red_lines) {
                const auto& pts = plane.line_points[line];
                hits += std::binary_search(pts.begin(), pts.end(), u) && std::binary_search(pts.begin(), pts.end(), v);
            }
            CHECK(hits == 1);
        }
    }
    CHECK(red_line_graph({5, 2, std::nullopt}, 9).red_lines == red_line_graph({5, 2, std::nullopt}, 9).red_lines);
}

TEST_CASE("bipartite power targets")
{
    WeightedTarget w = bipartite_power_weighted(1, 10);
    CHECK(w.weight == std::vector<Rat>{Rat(100), Rat(100)});
    CHECK(w.density[0][1] == make_rat(1, 10));
    CHECK(w.density[0][0] == 0);

    Graph g = bipartite_power_random(1, 60, 1);
    CHECK(g.num_vertices() == 7200);
    const double mean = 216000.0;
    const double sigma = std::sqrt(mean * (1.0 - 1.0 / 60));
    CHECK(std::abs(g.num_edges() - mean) <= 3 * sigma);
    CHECK(g.is_bipartite());
    CHECK_THROWS_AS(bipartite_power_random(2, 100, 1), ResourceLimit);

    // Step graphon: t(C_2j) = 2 (1/2)^{2j} n^{-2ji} for j >= 2 by the 2-class trace;
    // C_2 is K_2 with one edge, so t(K_2) = n^{-i} / 2.
    for (int i = 1; i <= 2; ++i) {
        const long n = 1000;
        CHECK(weighted_hom_density(cycle(2), bipartite_power_weighted(i, n)) == frac(BigInt(1), 2 * pow(BigInt(n), i)));
        for (int j = 2; j <= 3; ++j) {
            Rat t = weighted_hom_density(cycle(2 * j), bipartite_power_weighted(i, n));
            CHECK(t == frac(BigInt(2), pow(BigInt(2), 2 * j) * pow(BigInt(n), 2 * j * i)));
        }
    }
}

TEST_CASE("Behrend sets and graphs")
{
    for (long N = 3; N <= 300; N += 7) {
        auto S = ap3_free_set(N);
        CHECK(is_ap3_free(S));
        for (long d : S)
            CHECK((d >= 0 && d < N));
    }
    CHECK(!is_ap3_free({1, 4, 7}));
    CHECK(is_ap3_free({1, 2, 4, 5}));
    // at least the binary-digit sphere of base 3: C(6,3) = 20 numbers below 3^6
    CHECK(ap3_free_set(1000).size() >= 20);
    for (long N : {20L, 40L, 60L}) {
        auto S = ap3_free_set(N);
        Graph g = behrend_graph(N, S);
        CHECK(g.num_vertices() == 6 * N);
        CHECK(g.num_edges() == 3 * N * static_cast<long>(S.size()));
        const BigInt tri = hom_count(complete(3), g);
        CHECK(tri == BigInt(6 * N * static_cast<long>(S.size())));
        CHECK(hom_count(k4_minus_e(), g) == tri);
    }
}

TEST_CASE("simple families")
{
    Graph two = simple_family(SimpleFamily::two_cliques, 3);
    CHECK(two.num_vertices() == 6);
    CHECK(two.num_edges() == 6);
    Graph one = simple_family(SimpleFamily::single_edge, 5);
    for (int j = 1; j <= 4; ++j)
        CHECK(density(cycle(2 * j), one) == frac(BigInt(2), pow(BigInt(5), 2 * j)));
    CHECK(density(complete(2), simple_family(SimpleFamily::clique_plus_isolated, 5)) == make_rat(1, 5));
    CHECK(simple_family(SimpleFamily::half_clique, 4) == simple_family(SimpleFamily::clique_plus_isolated, 4));
    CHECK_THROWS_AS(simple_family(SimpleFamily::single_edge, 1), InvalidArgument);
}

TEST_CASE("ratio estimation")
{
    ScalingFamily fam;
    fam.kind = FamilyKind::path_blowup;
    fam.path = {3, 2, 1};
    EstimateResult same = estimate_ratio(path(5), path(5), fam, {100, 10000});
    for (const auto& pt : same.points)
        CHECK(pt.ratio == doctest::Approx(1.0));
    CHECK(same.trend == "constant");

    ScalingFamily tc;
    tc.kind = FamilyKind::two_cliques;
    EstimateResult r = estimate_ratio(complete(3), complete(2), tc, {40, 10, 20});
    CHECK(r.points.front().size == 10);
    CHECK(r.points.back().size == 40);
    // two cliques: t(K_r, 2K_n) = 2 (n)_r / (2n)^r
    for (const auto& pt : r.points) {
        const double n = static_cast<double>(pt.size);
        const double t3 = 2 * n * (n - 1) * (n - 2) / std::pow(2 * n, 3);
        const double t2 = 2 * n * (n - 1) / std::pow(2 * n, 2);
        CHECK(pt.ratio == doctest::Approx(std::log(t3) / std::log(t2)));
        CHECK(pt.exponent_h == doctest::Approx(std::log(t2) / std::log(n)));
    }

    ScalingFamily se;
    se.kind = FamilyKind::single_edge;
    CHECK_THROWS_AS(estimate_ratio(complete(2), complete(3), se, {5}), InvalidArgument);
}

TEST_CASE("exact ratio comparison")
{
    // log(1/8)/log(1/2) = 3
    CHECK(ratio_at_most(make_rat(1, 8), make_rat(1, 2), Rat(3)));
    CHECK(!ratio_at_most(make_rat(1, 8), make_rat(1, 2), make_rat(29, 10)));
    CHECK(ratio_at_most(make_rat(1, 8), make_rat(1, 2), make_rat(31, 10)));
    CHECK(!ratio_at_most(Rat(0), make_rat(1, 2), Rat(100)));
    CHECK_THROWS_AS(ratio_at_most(Rat(1), Rat(1), Rat(1)), InvalidArgument);
}

TEST_CASE("family spec strings and JSON")
{
    const ScalingFamily f = parse_scaling_family("projective:k=2");
    CHECK(f.kind == FamilyKind::projective);
    CHECK(f.k == 2);
    const ScalingFamily b = parse_scaling_family("path_blowup:k=3,l=2,m=1");
    CHECK(b.path.k == 3);
    CHECK(b.path.l == 2);
    CHECK(b.path.m == 1);
    CHECK(parse_scaling_family("bipartite_power:i=2,weighted=1").weighted);
    CHECK(parse_scaling_family("single_edge").kind == FamilyKind::single_edge);
    CHECK_THROWS_AS(parse_scaling_family("projective:q=2"), InvalidArgument);
    CHECK_THROWS_AS(parse_scaling_family("projective:k=x"), InvalidArgument);
    CHECK_THROWS_AS(parse_scaling_family("nope"), InvalidArgument);
    CHECK(scaling_family_to_json(b)["l"] == 2);

    const json w = weighted_target_to_json(WeightedTarget::from_graph(complete(2)));
    CHECK(w["densities"][0][1] == "1");
    const json g = instance_to_json(FamilyInstance{cycle(4)});
    CHECK(g["m"] == 4);
    CHECK(weighted_pattern_to_json(path_blowup_pattern(PathBlowupSpec{3, 2, 1}))["edge_exponents"].size() == 13);
}
