#include "homdom/error.hpp"
#include "homdom/lp.hpp"
#include "homdom/rng.hpp"

#include <doctest.h>

using namespace homdom;

namespace {

LPProblem matching_lp(const Graph& g)
{
    LPProblem lp;
    lp.sense = Sense::maximize;
    for (int e = 0; e < g.num_edges(); ++e)
        lp.add_variable(Rat(1));
    for (int v = 0; v < g.num_vertices(); ++v) {
        std::vector<Rat> row(g.num_edges(), Rat(0));
        for (int e = 0; e < g.num_edges(); ++e)
            if (g.edges()[e].first == v || g.edges()[e].second == v)
                row[e] = 1;
        lp.add_row(row, Relation::le, Rat(1));
    }
    return lp;
}

} // namespace

TEST_CASE("one-variable programs")
{
    LPProblem lp;
    lp.sense = Sense::maximize;
    lp.add_variable(Rat(1));
    lp.add_row({Rat(1)}, Relation::le, Rat(3));
    LPSolution s = solve_lp(lp);
    CHECK(s.status == LPStatus::optimal);
    CHECK(s.optimum == 3);
    CHECK(s.dual == std::vector<Rat>{Rat(1)});

    LPProblem bad;
    bad.add_variable(Rat(0), true);
    bad.add_row({Rat(1)}, Relation::le, Rat(0));
    bad.add_row({Rat(1)}, Relation::ge, Rat(1));
    CHECK(solve_lp(bad).status == LPStatus::infeasible);

    LPProblem unb;
    unb.sense = Sense::maximize;
    unb.add_variable(Rat(1));
    unb.add_row({Rat(1)}, Relation::ge, Rat(1));
    CHECK(solve_lp(unb).status == LPStatus::unbounded);

    LPProblem free_min;
    free_min.add_variable(Rat(1), true);
    free_min.add_row({Rat(2)}, Relation::ge, Rat(-5));
    LPSolution f = solve_lp(free_min);
    CHECK(f.optimum == make_rat(-5, 2));
    CHECK(f.primal[0] == make_rat(-5, 2));
}

TEST_CASE("fractional matching of C_5 is half-integral")
{
    LPSolution s = solve_lp(matching_lp(cycle(5)));
    CHECK(s.optimum == make_rat(5, 2));
    for (const auto& x : s.primal)
        CHECK(x == make_rat(1, 2));
    CHECK(solve_lp(matching_lp(complete(3))).optimum == make_rat(3, 2));
    CHECK(solve_lp(matching_lp(complete(2))).optimum == 1);
}

TEST_CASE("degenerate and redundant systems")
{
    // x + y = 1 twice, x - y = 0, minimize x + 2y.
    LPProblem lp;
    lp.add_variable(Rat(1));
    lp.add_variable(Rat(2));
    lp.add_row({Rat(1), Rat(1)}, Relation::eq, Rat(1));
    lp.add_row({Rat(1), Rat(1)}, Relation::eq, Rat(1));
    lp.add_row({Rat(1), Rat(-1)}, Relation::eq, Rat(0));
    LPSolution s = solve_lp(lp);
    CHECK(s.status == LPStatus::optimal);
    CHECK(s.optimum == make_rat(3, 2));
    CHECK(verify_solution(lp, s));
}

TEST_CASE("random programs certify themselves")
{
    Rng rng(99);
    int optimal = 0;
    for (int trial = 0; trial < 200; ++trial) {
        LPProblem lp;
        lp.sense = rng.below(2) ? Sense::maximize : Sense::minimize;
        const int n = 1 + static_cast<int>(rng.below(5));
        const int m = 1 + static_cast<int>(rng.below(6));
        for (int j = 0; j < n; ++j)
            lp.add_variable(Rat(static_cast<long>(rng.below(7)) - 3), rng.below(3) == 0);
        for (int i = 0; i < m; ++i) {
            std::vector<Rat> row;
            for (int j = 0; j < n; ++j)
                row.emplace_back(static_cast<long>(rng.below(7)) - 3);
            lp.add_row(row, static_cast<Relation>(rng.below(3)), Rat(static_cast<long>(rng.below(9)) - 4));
        }
        LPSolution s = solve_lp(lp); // throws if a certificate fails to verify
        if (s.status == LPStatus::optimal) {
            ++optimal;
            CHECK(verify_solution(lp, s));
        }
    }
    CHECK(optimal > 20);
}

TEST_CASE("size cap")
{
    LPProblem lp;
    for (int j = 0; j < 5; ++j)
        lp.add_variable(Rat(1));
    LPLimits limits;
    limits.max_vars = 4;
    CHECK_THROWS_AS(solve_lp(lp, limits), ResourceLimit);
}

TEST_CASE("triangle LP family")
{
    for (int i = 2; i <= 5; ++i) {
        LPProblem lp = kr_lp(i);
        CHECK(lp.num_rows() == 16);
        CHECK(lp.num_vars() == 8);
        LPSolution s = solve_lp(lp);
        REQUIRE(s.status == LPStatus::optimal);
        CHECK(s.optimum == 2 * i - 1);
        // The printed certificate is a valid dual proving z >= 2i-1.
        const auto y = kr_certificate(i);
        CHECK(dual_feasible(lp, y));
        Rat bound = 0;
        for (int r = 0; r < 16; ++r)
            bound += y[r] * lp.rhs[r];
        CHECK(bound == 2 * i - 1);
        // A primal point attaining it: p12 = p13 = p23 = 1, singletons 1/2.
        std::vector<Rat> x{Rat(2 * i - 1), make_rat(1, 2), make_rat(1, 2), make_rat(1, 2), Rat(1), Rat(1), Rat(1), Rat(1)};
        CHECK(primal_feasible(lp, x));
    }
    CHECK_THROWS_AS(kr_lp(1), InvalidArgument);
}

TEST_CASE("JSON round trip")
{
    LPProblem lp = kr_lp(3);
    LPProblem back = lp_from_json(json::parse(lp_to_json(lp).dump()));
    CHECK(back.rows == lp.rows);
    CHECK(back.rhs == lp.rhs);
    CHECK(back.relations == lp.relations);
    CHECK(back.free_var == lp.free_var);
    CHECK(solve_lp(back).optimum == 5);
    CHECK(solution_to_json(solve_lp(back))["optimum"] == "5");
    CHECK_THROWS_AS(lp_from_json(json::parse(R"({"sense":"min","objective":["1/0"],"rows":[]})")), ParseError);
    CHECK_THROWS_AS(lp_from_json(json::parse(R"({"sense":"up","objective":[],"rows":[]})")), ParseError);
}
