#include "homdom/cones.hpp"
#include "homdom/error.hpp"

#include <doctest.h>

#include <functional>
#include <set>
#include <string>

using namespace homdom;

namespace {

RatVector ints(std::initializer_list<long> xs)
{
    RatVector v;
    for (long x : xs) {
        v.emplace_back(x);
    }
    return v;
}

Rat frac(long p, long q)
{
    Rat r(p, q);
    r.canonicalize();
    return r;
}

// Oracle: extreme rays by brute force over (dim-1)-subsets of rows with a
// one-dimensional kernel, for pointed cones.
std::set<RatVector> brute_extreme_rays(const Cone& cone)
{
    const int n = static_cast<int>(cone.halfspaces.size());
    const int d = cone.dim;
    std::set<RatVector> out;
    std::vector<int> pick(static_cast<std::size_t>(d - 1));
    std::function<void(int, int)> rec = [&](int start, int depth) {
        if (depth == d - 1) {
            RatMatrix rows;
            for (int p : pick) {
                rows.push_back(cone.halfspaces[p]);
            }
            const auto ker = kernel(rows, d);
            if (ker.size() != 1) {
                return;
            }
            for (int sign : {1, -1}) {
                RatVector v = ker[0];
                for (auto& x : v) {
                    x *= sign;
                }
                bool ok = true;
                for (const auto& a : cone.halfspaces) {
                    Rat s = 0;
                    for (int c = 0; c < d; ++c) {
                        s += a[c] * v[c];
                    }
                    ok = ok && s >= 0;
                }
                if (ok) {
                    out.insert(v);
                }
            }
            return;
        }
        for (int i = start; i < n; ++i) {
            pick[depth] = i;
            rec(i + 1, depth + 1);
        }
    };
    rec(0, 0);
    return out;
}

RatVector normalize_dir(RatVector v)
{
    // first nonzero entry scaled to +-1
    for (const auto& x : v) {
        if (x != 0) {
            const Rat f = abs(x);
            for (auto& y : v) {
                y /= f;
            }
            break;
        }
    }
    return v;
}

} // namespace

TEST_CASE("even cycle cone k=3 golden")
{
    const Cone c = even_cycle_cone(3);
    CHECK(c.dim == 3);
    CHECK(c.coords == std::vector<int>{2, 4, 6});
    REQUIRE(c.halfspaces.size() == 3);
    CHECK(c.halfspaces[0] == ints({1, -2, 1}));
    CHECK(c.halfspaces[1] == ints({0, 6, -4}));
    CHECK(c.halfspaces[2] == ints({-6, 0, 1}));
    REQUIRE(c.rays.size() == 3);
    CHECK(c.rays[0] == ints({-1, -4, -6}));
    CHECK(c.rays[1] == ints({-2, -7, -12}));
    CHECK(c.rays[2] == ints({-1, -2, -3}));

    const RayReport rep = verify_rays(c);
    CHECK(rep.all_inside);
    CHECK(rep.one_slack_each);
    CHECK(rep.rays[0].tight_rows == std::vector<int>{1, 2});
    CHECK(rep.rays[0].values[0] == 1);

    // single-edge family profile (-2,-4,-6) is 2s
    RatVector edge = ints({-2, -4, -6});
    for (int i = 0; i < 3; ++i) {
        CHECK(edge[i] == 2 * c.rays[2][i]);
    }
}

TEST_CASE("even cycle cone tightness, determinant and hull for k <= 6")
{
    for (int k = 2; k <= 6; ++k) {
        CAPTURE(k);
        const Cone c = even_cycle_cone(k);
        CHECK(c.halfspaces.size() == static_cast<std::size_t>(k));
        CHECK(c.rays.size() == static_cast<std::size_t>(k));
        const RayReport rep = verify_rays(c);
        CHECK(rep.all_inside);
        CHECK(rep.one_slack_each);
        // ray number i (r_1.., then s) is slack exactly on row i
        for (int i = 0; i < k; ++i) {
            for (int h = 0; h < k; ++h) {
                if (h == i) {
                    CHECK(rep.rays[i].values[h] > 0);
                } else {
                    CHECK(rep.rays[i].values[h] == 0);
                }
            }
        }
        CHECK(determinant(c.halfspaces) != 0);
        const HullReport hull = hull_report(c);
        CHECK(hull.equal());
        CHECK(hull.lineality.empty());

        std::set<RatVector> dd, brute;
        for (const auto& v : hull.extreme_rays) {
            dd.insert(normalize_dir(v));
        }
        for (const auto& v : brute_extreme_rays(c)) {
            brute.insert(normalize_dir(v));
        }
        CHECK(dd == brute);
        CHECK(dd.size() == static_cast<std::size_t>(k));
    }
}

TEST_CASE("corrupted cone fails the hull equality")
{
    Cone c = even_cycle_cone(4);
    for (int i = 0; i < 4; ++i) {
        c.rays[0][i] += c.rays[3][i]; // r_1 + s: inside, not extreme
    }
    CHECK(verify_rays(c).all_inside);
    const HullReport hull = hull_report(c);
    CHECK_FALSE(hull.equal());
    CHECK_FALSE(hull.outside.empty());

    Cone d = even_cycle_cone(3);
    d.rays[1][0] += 5; // leaves the cone
    CHECK_FALSE(verify_rays(d).all_inside);
    CHECK_FALSE(cone_equals_hull(d));

    Cone e = even_cycle_cone(3);
    e.rays.pop_back();
    e.ray_names.pop_back();
    CHECK_FALSE(cone_equals_hull(e));
}

TEST_CASE("determinant, rank and kernel")
{
    CHECK(determinant({ints({1, 2}), ints({3, 4})}) == -2);
    CHECK(determinant({ints({0, 1}), ints({1, 0})}) == -1);
    CHECK(determinant({ints({1, 2}), ints({2, 4})}) == 0);
    CHECK(rank({ints({1, 2, 3}), ints({2, 4, 6}), ints({0, 0, 1})}) == 2);
    const auto ker = kernel({ints({1, 1, 0}), ints({0, 1, 1})}, 3);
    REQUIRE(ker.size() == 1);
    CHECK(ker[0] == ints({1, -1, 1}));
    CHECK_THROWS_AS(even_cycle_cone(1), InvalidArgument);
}

TEST_CASE("hull report handles lineality")
{
    Cone half;
    half.dim = 2;
    half.coords = {2, 4};
    half.halfspaces = {ints({1, 0})};
    half.rays = {ints({1, 0}), ints({0, 1}), ints({0, -1})};
    HullReport rep = hull_report(half);
    CHECK(rep.lineality.size() == 1);
    CHECK(rep.extreme_rays.size() == 1);
    CHECK(rep.equal());
    half.rays.pop_back();
    CHECK_FALSE(cone_equals_hull(half));
}

TEST_CASE("all cycle cone rays")
{
    const Cone c2 = all_cycle_cone(2);
    CHECK(c2.coords == std::vector<int>{2, 3, 4});
    REQUIRE(c2.rays.size() == 4);
    CHECK(c2.rays[0] == ints({2, 3, 4}));  // r_3
    CHECK(c2.rays[1] == ints({1, 1, 1}));  // s_3
    CHECK(c2.rays[2] == ints({2, 0, 4}));  // r_5
    CHECK(c2.rays[3] == ints({1, 0, 1}));  // s_5

    for (int m = 2; m <= 5; ++m) {
        CAPTURE(m);
        const Cone c = all_cycle_cone(m);
        CHECK(c.dim == 2 * m - 1);
        CHECK(verify_rays(c).all_inside);
        const HullReport rep = hull_report(c);
        CHECK(rep.rays_in_cone);
        MESSAGE("m=" << m << " extreme rays " << rep.extreme_rays.size() << ", cone in hull: "
                     << std::string(rep.cone_in_hull ? "yes" : "no"));
    }
    CHECK_THROWS_AS(all_cycle_cone(1), InvalidArgument);
}

TEST_CASE("literal mixed rows cut off r_3")
{
    const Cone lit = all_cycle_cone(4, MixedRowMode::literal);
    const RayReport rep = verify_rays(lit);
    CHECK_FALSE(rep.all_inside);
    // 2 y_4 - 3 y_3 - y_7 on r_3 = (2,3,...,8): 8 - 9 - 7
    int row = -1;
    for (std::size_t h = 0; h < lit.row_names.size(); ++h) {
        if (lit.row_names[h] == "mixed_2_3") {
            row = static_cast<int>(h);
        }
    }
    REQUIRE(row >= 0);
    CHECK(rep.rays[0].values[row] == -8);
}

TEST_CASE("union exponent LP")
{
    CHECK(union_exponent_lp({6}, {4}, 3) == frac(12, 7));
    CHECK(union_exponent_lp({4, 4}, {2}, 2) == 8);
    CHECK(union_exponent_lp({4, 6}, {4, 6}, 3) == 1);
    CHECK(union_exponent_lp({2}, {2}, 2) == 1);
    // agreement with the closed form 4k(k-1)/(2k l - 2k - l)
    for (int k = 2; k <= 5; ++k) {
        for (int l = 2; l <= 2 * k; l += 2) {
            CAPTURE(k);
            CAPTURE(l);
            const Rat expected = frac(4L * k * (k - 1), 2L * k * l - 2L * k - l);
            CHECK(union_exponent_lp({2 * k}, {l}, k) == expected);
        }
    }
    CHECK_THROWS_AS(union_exponent_lp({5}, {2}, 3), InvalidArgument);
    CHECK_THROWS_AS(union_exponent_lp({8}, {2}, 3), InvalidArgument);
    CHECK_THROWS_AS(union_exponent_lp({4}, {}, 3), InvalidArgument);
}

TEST_CASE("cone json")
{
    const json j = cone_to_json(even_cycle_cone(3));
    CHECK(j["dim"] == 3);
    CHECK(j["rays"][1][2] == "-12");
    CHECK(hull_report_to_json(hull_report(even_cycle_cone(2)))["equal"] == true);
}
