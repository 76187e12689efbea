#pragma once

#include "homdom/io.hpp"
#include "homdom/rational.hpp"

#include <string>
#include <vector>

namespace homdom {

enum class Sense { minimize, maximize };
enum class Relation { le, ge, eq };
enum class LPStatus { optimal, infeasible, unbounded };

std::string to_string(LPStatus status);

/// Dense LP over the rationals: optimize c.x subject to rows[i].x (rel) rhs[i].
/// Variables are nonnegative unless marked free.
struct LPProblem {
    Sense sense = Sense::minimize;
    std::vector<Rat> objective;
    std::vector<std::vector<Rat>> rows;
    std::vector<Relation> relations;
    std::vector<Rat> rhs;
    std::vector<bool> free_var;
    std::vector<std::string> var_names; // optional
    std::vector<std::string> row_names; // optional

    int num_vars() const { return static_cast<int>(objective.size()); }
    int num_rows() const { return static_cast<int>(rows.size()); }

    /// Variable count fixes the width; free_var defaults to all nonnegative.
    void add_variable(const Rat& cost, bool free = false, std::string name = {});
    void add_row(std::vector<Rat> coef, Relation rel, const Rat& rhs_value, std::string name = {});
    /// Throws InvalidArgument on inconsistent dimensions.
    void validate() const;
};

/// Dual convention, for either sense: y has one entry per row and
/// c - A^T y is zero on free variables; on nonnegative variables it is >= 0
/// when minimizing and <= 0 when maximizing. Row signs: minimizing, a >= row
/// has y >= 0 and a <= row y <= 0; maximizing, the reverse. Equality rows are
/// free. At optimality b.y equals the optimum.
struct LPSolution {
    LPStatus status = LPStatus::infeasible;
    Rat optimum;
    std::vector<Rat> primal;
    std::vector<Rat> dual;
};

struct LPLimits {
    int max_vars = 400;
    int max_rows = 400;
};

/// Two-phase tableau simplex in exact arithmetic with Bland's rule. Free
/// variables are split, equality rows become two inequalities. An optimal
/// solution is returned only after its certificate passes verify_solution,
/// otherwise std::logic_error is thrown. ResourceLimit above the size caps.
LPSolution solve_lp(const LPProblem& problem, const LPLimits& limits = {});

/// Primal feasibility of x.
bool primal_feasible(const LPProblem& problem, const std::vector<Rat>& x);
/// Sign conditions on y and on c - A^T y per the convention above.
bool dual_feasible(const LPProblem& problem, const std::vector<Rat>& y);
/// Both feasibilities, equal objective values and complementary slackness.
bool verify_solution(const LPProblem& problem, const LPSolution& solution);

/// The triangle-versus-odd-cycle program: minimize z over
/// (z, p1, p2, p3, p12, p13, p23, p123), all free, 16 rows in display order.
LPProblem kr_lp(int i);
/// Dual vector proving z >= 2i-1: (2i-1) on the normalization row, -1/2 on rows 8 and 9.
std::vector<Rat> kr_certificate(int i);

/// {"sense":"min"|"max","objective":[...],"rows":[{"coef":[...],"rel":"<=","rhs":"p/q"}],
///  "free":[bool,...],"vars":[names],"names":[row names]}; rationals as strings.
json lp_to_json(const LPProblem& problem);
LPProblem lp_from_json(const json& j);
json solution_to_json(const LPSolution& solution);

} // namespace homdom
