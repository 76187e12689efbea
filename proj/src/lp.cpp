#include "homdom/lp.hpp"

#include "homdom/error.hpp"

#include <optional>
#include <stdexcept>

namespace homdom {

std::string to_string(LPStatus status)
{
    switch (status) {
    case LPStatus::optimal:
        return "optimal";
    case LPStatus::infeasible:
        return "infeasible";
    case LPStatus::unbounded:
        return "unbounded";
    }
    return "?";
}

void LPProblem::add_variable(const Rat& cost, bool free, std::string name)
{
    objective.push_back(cost);
    free_var.push_back(free);
    var_names.push_back(std::move(name));
    for (auto& row : rows) {
        row.emplace_back(0);
    }
}

void LPProblem::add_row(std::vector<Rat> coef, Relation rel, const Rat& rhs_value, std::string name)
{
    if (static_cast<int>(coef.size()) != num_vars()) {
        throw InvalidArgument("LP row width does not match the variable count");
    }
    rows.push_back(std::move(coef));
    relations.push_back(rel);
    rhs.push_back(rhs_value);
    row_names.push_back(std::move(name));
}

void LPProblem::validate() const
{
    const std::size_t n = objective.size();
    if (free_var.size() != n) {
        throw InvalidArgument("LP: free_var length differs from the variable count");
    }
    if (relations.size() != rows.size() || rhs.size() != rows.size()) {
        throw InvalidArgument("LP: rows, relations and rhs differ in length");
    }
    for (const auto& row : rows) {
        if (row.size() != n) {
            throw InvalidArgument("LP: ragged constraint matrix");
        }
    }
    if (!var_names.empty() && var_names.size() != n) {
        throw InvalidArgument("LP: var_names length differs from the variable count");
    }
    if (!row_names.empty() && row_names.size() != rows.size()) {
        throw InvalidArgument("LP: row_names length differs from the row count");
    }
}

namespace {

Rat dot(const std::vector<Rat>& a, const std::vector<Rat>& b)
{
    Rat s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] != 0 && b[i] != 0) {
            s += a[i] * b[i];
        }
    }
    return s;
}

/// Standard form: maximize c.x, A x (<= or >=) b with b >= 0 after row flips, x >= 0.
struct Standard {
    std::vector<std::vector<Rat>> a; // rows over structural columns
    std::vector<Rat> b;
    std::vector<bool> ge; // after flipping
    std::vector<Rat> c;
    std::vector<int> orig_row;     // original row index
    std::vector<int> row_sign;     // +1 if the standardized row is orig, -1 if negated
    std::vector<int> col_var;      // original variable of each structural column
    std::vector<int> col_sign;     // +1 or -1 (negative part of a free variable)
};

Standard standardize(const LPProblem& p)
{
    Standard s;
    const int n = p.num_vars();
    for (int j = 0; j < n; ++j) {
        s.col_var.push_back(j);
        s.col_sign.push_back(1);
        if (p.free_var[j]) {
            s.col_var.push_back(j);
            s.col_sign.push_back(-1);
        }
    }
    const int sign_obj = p.sense == Sense::maximize ? 1 : -1;
    for (std::size_t k = 0; k < s.col_var.size(); ++k) {
        s.c.push_back(sign_obj * s.col_sign[k] * p.objective[s.col_var[k]]);
    }
    auto push = [&](int i, bool ge, int sign) {
        std::vector<Rat> row;
        for (std::size_t k = 0; k < s.col_var.size(); ++k) {
            row.push_back(sign * s.col_sign[k] * p.rows[i][s.col_var[k]]);
        }
        Rat rhs = sign * p.rhs[i];
        bool g = sign > 0 ? ge : !ge;
        int rs = sign;
        if (rhs < 0) {
            for (auto& x : row) {
                x = -x;
            }
            rhs = -rhs;
            g = !g;
            rs = -rs;
        }
        s.a.push_back(std::move(row));
        s.b.push_back(rhs);
        s.ge.push_back(g);
        s.orig_row.push_back(i);
        s.row_sign.push_back(rs);
    };
    for (int i = 0; i < p.num_rows(); ++i) {
        switch (p.relations[i]) {
        case Relation::le:
            push(i, false, 1);
            break;
        case Relation::ge:
            push(i, true, 1);
            break;
        case Relation::eq:
            push(i, false, 1);
            push(i, true, 1);
            break;
        }
    }
    return s;
}

class Tableau {
public:
    Tableau(const Standard& s) : m_(static_cast<int>(s.a.size()))
    {
        const int ns = static_cast<int>(s.c.size());
        // Columns: structural, then one slack/surplus per row, then artificials.
        int n = ns + m_;
        std::vector<int> art_row;
        for (int i = 0; i < m_; ++i) {
            if (s.ge[i]) {
                art_row.push_back(i);
            }
        }
        n += static_cast<int>(art_row.size());
        n_ = n;
        first_art_ = ns + m_;
        a_.assign(m_, std::vector<Rat>(n, Rat(0)));
        b_ = s.b;
        basis_.assign(m_, -1);
        for (int i = 0; i < m_; ++i) {
            for (int j = 0; j < ns; ++j) {
                a_[i][j] = s.a[i][j];
            }
            a_[i][ns + i] = s.ge[i] ? -1 : 1;
            if (!s.ge[i]) {
                basis_[i] = ns + i;
            }
        }
        for (std::size_t k = 0; k < art_row.size(); ++k) {
            a_[art_row[k]][first_art_ + static_cast<int>(k)] = 1;
            basis_[art_row[k]] = first_art_ + static_cast<int>(k);
        }
        row_id_.resize(m_);
        for (int i = 0; i < m_; ++i) {
            row_id_[i] = i;
        }
    }

    /// Returns false when the phase-1 optimum is positive.
    bool phase1()
    {
        if (first_art_ == n_) {
            return true;
        }
        std::vector<Rat> cost(n_, Rat(0));
        for (int j = first_art_; j < n_; ++j) {
            cost[j] = -1;
        }
        set_objective(cost);
        run(n_);
        if (z_ != 0) {
            return false;
        }
        // Drive zero-level artificials out of the basis, dropping redundant rows.
        for (int i = 0; i < m_;) {
            if (basis_[i] < first_art_) {
                ++i;
                continue;
            }
            int col = -1;
            for (int j = 0; j < first_art_; ++j) {
                if (a_[i][j] != 0) {
                    col = j;
                    break;
                }
            }
            if (col >= 0) {
                pivot(i, col);
                ++i;
            } else {
                a_.erase(a_.begin() + i);
                b_.erase(b_.begin() + i);
                basis_.erase(basis_.begin() + i);
                row_id_.erase(row_id_.begin() + i);
                --m_;
            }
        }
        return true;
    }

    /// Returns false when unbounded.
    bool phase2(const std::vector<Rat>& c)
    {
        std::vector<Rat> cost(n_, Rat(0));
        for (std::size_t j = 0; j < c.size(); ++j) {
            cost[j] = c[j];
        }
        set_objective(cost);
        return run(first_art_);
    }

    const std::vector<int>& basis() const { return basis_; }
    const std::vector<int>& row_ids() const { return row_id_; }
    const Rat& rhs(int i) const { return b_[i]; }
    int rows() const { return m_; }
    const Rat& value() const { return z_; }

private:
    void set_objective(const std::vector<Rat>& cost)
    {
        cost_ = cost;
        d_ = cost;
        z_ = 0;
        for (int i = 0; i < m_; ++i) {
            const Rat& cb = cost[basis_[i]];
            if (cb == 0) {
                continue;
            }
            for (int j = 0; j < n_; ++j) {
                if (a_[i][j] != 0) {
                    d_[j] -= cb * a_[i][j];
                }
            }
            z_ += cb * b_[i];
        }
    }

    /// Bland's rule over columns [0, limit). Returns false when unbounded.
    bool run(int limit)
    {
        while (true) {
            int enter = -1;
            for (int j = 0; j < limit; ++j) {
                if (d_[j] > 0) {
                    enter = j;
                    break;
                }
            }
            if (enter < 0) {
                return true;
            }
            int leave = -1;
            Rat best;
            for (int i = 0; i < m_; ++i) {
                if (a_[i][enter] > 0) {
                    Rat ratio = b_[i] / a_[i][enter];
                    if (leave < 0 || ratio < best || (ratio == best && basis_[i] < basis_[leave])) {
                        leave = i;
                        best = ratio;
                    }
                }
            }
            if (leave < 0) {
                return false;
            }
            pivot(leave, enter);
        }
    }

    void pivot(int r, int c)
    {
        const Rat piv = a_[r][c];
        for (int j = 0; j < n_; ++j) {
            if (a_[r][j] != 0) {
                a_[r][j] /= piv;
            }
        }
        b_[r] /= piv;
        for (int i = 0; i < m_; ++i) {
            if (i == r || a_[i][c] == 0) {
                continue;
            }
            const Rat f = a_[i][c];
            for (int j = 0; j < n_; ++j) {
                if (a_[r][j] != 0) {
                    a_[i][j] -= f * a_[r][j];
                }
            }
            b_[i] -= f * b_[r];
        }
        if (d_[c] != 0) {
            const Rat f = d_[c];
            for (int j = 0; j < n_; ++j) {
                if (a_[r][j] != 0) {
                    d_[j] -= f * a_[r][j];
                }
            }
            z_ += f * b_[r];
        }
        basis_[r] = c;
    }

    int m_;
    int n_ = 0;
    int first_art_ = 0;
    std::vector<std::vector<Rat>> a_;
    std::vector<Rat> b_;
    std::vector<int> basis_;
    std::vector<int> row_id_;
    std::vector<Rat> cost_;
    std::vector<Rat> d_;
    Rat z_;
};

/// Solves M^T y = rhs for square M (rows of M are the basis columns' row entries).
std::vector<Rat> solve_transposed(std::vector<std::vector<Rat>> mt, std::vector<Rat> rhs)
{
    // mt is already the transposed system: mt[k] . y = rhs[k].
    const int n = static_cast<int>(rhs.size());
    for (int col = 0; col < n; ++col) {
        int piv = -1;
        for (int r = col; r < n; ++r) {
            if (mt[r][col] != 0) {
                piv = r;
                break;
            }
        }
        if (piv < 0) {
            throw std::logic_error("simplex: singular basis");
        }
        std::swap(mt[piv], mt[col]);
        std::swap(rhs[piv], rhs[col]);
        for (int r = 0; r < n; ++r) {
            if (r == col || mt[r][col] == 0) {
                continue;
            }
            const Rat f = mt[r][col] / mt[col][col];
            for (int j = col; j < n; ++j) {
                if (mt[col][j] != 0) {
                    mt[r][j] -= f * mt[col][j];
                }
            }
            rhs[r] -= f * rhs[col];
        }
    }
    std::vector<Rat> y(n);
    for (int i = 0; i < n; ++i) {
        y[i] = rhs[i] / mt[i][i];
    }
    return y;
}

} // namespace

LPSolution solve_lp(const LPProblem& problem, const LPLimits& limits)
{
    problem.validate();
    if (problem.num_vars() > limits.max_vars || problem.num_rows() > limits.max_rows) {
        throw ResourceLimit("LP exceeds the configured size cap");
    }
    const Standard s = standardize(problem);
    Tableau t(s);
    LPSolution out;
    if (!t.phase1()) {
        out.status = LPStatus::infeasible;
        return out;
    }
    if (!t.phase2(s.c)) {
        out.status = LPStatus::unbounded;
        return out;
    }
    out.status = LPStatus::optimal;

    const int ns = static_cast<int>(s.c.size());
    std::vector<Rat> xs(ns, Rat(0));
    for (int i = 0; i < t.rows(); ++i) {
        if (t.basis()[i] < ns) {
            xs[t.basis()[i]] = t.rhs(i);
        }
    }
    out.primal.assign(problem.num_vars(), Rat(0));
    for (int k = 0; k < ns; ++k) {
        out.primal[s.col_var[k]] += s.col_sign[k] * xs[k];
    }
    out.optimum = dot(problem.objective, out.primal);

    // Duals of the standardized maximization: B^T y = c_B over the kept rows.
    const int m = t.rows();
    std::vector<std::vector<Rat>> mt(m, std::vector<Rat>(m, Rat(0)));
    std::vector<Rat> cb(m, Rat(0));
    for (int k = 0; k < m; ++k) {
        const int col = t.basis()[k];
        for (int r = 0; r < m; ++r) {
            const int row = t.row_ids()[r];
            if (col < ns) {
                mt[k][r] = s.a[row][col];
            } else if (col - ns == row) {
                mt[k][r] = s.ge[row] ? -1 : 1;
            }
        }
        cb[k] = col < ns ? s.c[col] : Rat(0);
    }
    const std::vector<Rat> ys = solve_transposed(mt, cb);
    out.dual.assign(problem.num_rows(), Rat(0));
    const int sign_obj = problem.sense == Sense::maximize ? 1 : -1;
    for (int r = 0; r < m; ++r) {
        const int row = t.row_ids()[r];
        out.dual[s.orig_row[row]] += sign_obj * s.row_sign[row] * ys[r];
    }
    if (!verify_solution(problem, out)) {
        throw std::logic_error("simplex produced a solution whose certificate does not verify");
    }
    return out;
}

bool primal_feasible(const LPProblem& problem, const std::vector<Rat>& x)
{
    if (x.size() != problem.objective.size()) {
        return false;
    }
    for (int j = 0; j < problem.num_vars(); ++j) {
        if (!problem.free_var[j] && x[j] < 0) {
            return false;
        }
    }
    for (int i = 0; i < problem.num_rows(); ++i) {
        const Rat lhs = dot(problem.rows[i], x);
        switch (problem.relations[i]) {
        case Relation::le:
            if (lhs > problem.rhs[i]) {
                return false;
            }
            break;
        case Relation::ge:
            if (lhs < problem.rhs[i]) {
                return false;
            }
            break;
        case Relation::eq:
            if (lhs != problem.rhs[i]) {
                return false;
            }
            break;
        }
    }
    return true;
}

namespace {

std::vector<Rat> reduced_costs(const LPProblem& problem, const std::vector<Rat>& y)
{
    std::vector<Rat> r = problem.objective;
    for (int i = 0; i < problem.num_rows(); ++i) {
        if (y[i] == 0) {
            continue;
        }
        for (int j = 0; j < problem.num_vars(); ++j) {
            if (problem.rows[i][j] != 0) {
                r[j] -= y[i] * problem.rows[i][j];
            }
        }
    }
    return r;
}

} // namespace

bool dual_feasible(const LPProblem& problem, const std::vector<Rat>& y)
{
    if (static_cast<int>(y.size()) != problem.num_rows()) {
        return false;
    }
    const int sgn = problem.sense == Sense::minimize ? 1 : -1;
    for (int i = 0; i < problem.num_rows(); ++i) {
        switch (problem.relations[i]) {
        case Relation::ge:
            if (sgn * y[i] < 0) {
                return false;
            }
            break;
        case Relation::le:
            if (sgn * y[i] > 0) {
                return false;
            }
            break;
        case Relation::eq:
            break;
        }
    }
    const std::vector<Rat> r = reduced_costs(problem, y);
    for (int j = 0; j < problem.num_vars(); ++j) {
        if (problem.free_var[j] ? r[j] != 0 : sgn * r[j] < 0) {
            return false;
        }
    }
    return true;
}

bool verify_solution(const LPProblem& problem, const LPSolution& solution)
{
    if (solution.status != LPStatus::optimal) {
        return false;
    }
    if (!primal_feasible(problem, solution.primal) || !dual_feasible(problem, solution.dual)) {
        return false;
    }
    if (dot(problem.objective, solution.primal) != solution.optimum || dot(problem.rhs, solution.dual) != solution.optimum) {
        return false;
    }
    for (int i = 0; i < problem.num_rows(); ++i) {
        if (solution.dual[i] != 0 && dot(problem.rows[i], solution.primal) != problem.rhs[i]) {
            return false;
        }
    }
    const std::vector<Rat> r = reduced_costs(problem, solution.dual);
    for (int j = 0; j < problem.num_vars(); ++j) {
        if (r[j] != 0 && solution.primal[j] != 0) {
            return false;
        }
    }
    return true;
}

// ---------------------------------------------------------------------------

LPProblem kr_lp(int i)
{
    if (i < 2) {
        throw InvalidArgument("kr_lp needs i >= 2");
    }
    LPProblem lp;
    lp.sense = Sense::minimize;
    // z p1 p2 p3 p12 p13 p23 p123
    const char* names[] = {"z", "p1", "p2", "p3", "p12", "p13", "p23", "p123"};
    for (int v = 0; v < 8; ++v) {
        lp.add_variable(v == 0 ? Rat(1) : Rat(0), true, names[v]);
    }
    enum { Z, P1, P2, P3, P12, P13, P23, P123 };
    auto row = [&](std::initializer_list<std::pair<int, long>> terms, Relation rel, long rhs) {
        std::vector<Rat> coef(8, Rat(0));
        for (auto [var, c] : terms) {
            coef[var] += c;
        }
        lp.add_row(std::move(coef), rel, Rat(rhs));
    };
    const long a = 2 * i - 1;
    const long b = i - 1;
    row({{P13, -1}, {P1, 1}, {P3, 1}}, Relation::ge, 0);
    row({{P12, -1}, {P1, 1}, {P2, 1}}, Relation::ge, 0);
    row({{P23, -1}, {P2, 1}, {P3, 1}}, Relation::ge, 0);
    row({{P123, -1}, {P12, 1}, {P13, 1}, {P1, -1}}, Relation::ge, 0);
    row({{P123, -1}, {P12, 1}, {P23, 1}, {P2, -1}}, Relation::ge, 0);
    row({{P123, -1}, {P13, 1}, {P23, 1}, {P3, -1}}, Relation::ge, 0);
    row({{P123, 1}}, Relation::eq, 1);
    row({{P123, a}, {P12, b}, {P13, -b}, {Z, -1}}, Relation::le, 0);
    row({{P123, a}, {P12, -b}, {P13, b}, {Z, -1}}, Relation::le, 0);
    row({{P123, a}, {P12, -b}, {P13, -b}, {P23, 2 * b}, {Z, -1}}, Relation::le, 0);
    row({{P123, a}, {P12, b}, {P23, -b}, {Z, -1}}, Relation::le, 0);
    row({{P123, a}, {P12, -b}, {P23, b}, {Z, -1}}, Relation::le, 0);
    row({{P123, a}, {P12, -b}, {P13, 2 * b}, {P23, -b}, {Z, -1}}, Relation::le, 0);
    row({{P123, a}, {P13, b}, {P23, -b}, {Z, -1}}, Relation::le, 0);
    row({{P123, a}, {P13, -b}, {P23, b}, {Z, -1}}, Relation::le, 0);
    row({{P123, a}, {P12, 2 * b}, {P13, -b}, {P23, -b}, {Z, -1}}, Relation::le, 0);
    return lp;
}

std::vector<Rat> kr_certificate(int i)
{
    if (i < 2) {
        throw InvalidArgument("kr_certificate needs i >= 2");
    }
    std::vector<Rat> y(16, Rat(0));
    y[6] = 2 * i - 1;
    y[7] = make_rat(-1, 2);
    y[8] = make_rat(-1, 2);
    return y;
}

// ---------------------------------------------------------------------------
// JSON

namespace {

std::string relation_text(Relation r)
{
    switch (r) {
    case Relation::le:
        return "<=";
    case Relation::ge:
        return ">=";
    case Relation::eq:
        return "=";
    }
    return "?";
}

Relation parse_relation(const std::string& s)
{
    if (s == "<=") {
        return Relation::le;
    }
    if (s == ">=") {
        return Relation::ge;
    }
    if (s == "=" || s == "==") {
        return Relation::eq;
    }
    throw ParseError("LP JSON: unknown relation '" + s + "'");
}

json rat_array(const std::vector<Rat>& v)
{
    json a = json::array();
    for (const auto& x : v) {
        a.push_back(to_string(x));
    }
    return a;
}

Rat rat_value(const json& j)
{
    if (j.is_string()) {
        return parse_rat(j.get<std::string>());
    }
    if (j.is_number_integer()) {
        return Rat(BigInt(std::to_string(j.get<long long>())));
    }
    throw ParseError("LP JSON: rationals must be strings like \"7/3\" or integers");
}

std::vector<Rat> rat_vector(const json& j)
{
    if (!j.is_array()) {
        throw ParseError("LP JSON: expected an array of rationals");
    }
    std::vector<Rat> out;
    for (const auto& x : j) {
        out.push_back(rat_value(x));
    }
    return out;
}

} // namespace

json lp_to_json(const LPProblem& problem)
{
    json rows = json::array();
    for (int i = 0; i < problem.num_rows(); ++i) {
        rows.push_back({{"coef", rat_array(problem.rows[i])},
                        {"rel", relation_text(problem.relations[i])},
                        {"rhs", to_string(problem.rhs[i])}});
    }
    json free = json::array();
    for (bool f : problem.free_var) {
        free.push_back(f);
    }
    json j{{"sense", problem.sense == Sense::minimize ? "min" : "max"},
           {"objective", rat_array(problem.objective)},
           {"rows", rows},
           {"free", free}};
    if (!problem.var_names.empty()) {
        j["vars"] = problem.var_names;
    }
    if (!problem.row_names.empty()) {
        j["names"] = problem.row_names;
    }
    return j;
}

LPProblem lp_from_json(const json& j)
{
    try {
        LPProblem p;
        const std::string sense = j.at("sense").get<std::string>();
        if (sense == "min" || sense == "minimize") {
            p.sense = Sense::minimize;
        } else if (sense == "max" || sense == "maximize") {
            p.sense = Sense::maximize;
        } else {
            throw ParseError("LP JSON: sense must be min or max");
        }
        p.objective = rat_vector(j.at("objective"));
        const std::size_t n = p.objective.size();
        if (j.contains("free")) {
            for (const auto& f : j.at("free")) {
                p.free_var.push_back(f.get<bool>());
            }
        } else {
            p.free_var.assign(n, false);
        }
        if (j.contains("vars")) {
            p.var_names = j.at("vars").get<std::vector<std::string>>();
        }
        for (const auto& r : j.at("rows")) {
            p.rows.push_back(rat_vector(r.at("coef")));
            p.relations.push_back(parse_relation(r.at("rel").get<std::string>()));
            p.rhs.push_back(rat_value(r.at("rhs")));
        }
        if (j.contains("names")) {
            p.row_names = j.at("names").get<std::vector<std::string>>();
        }
        p.validate();
        return p;
    } catch (const json::exception& err) {
        throw ParseError(std::string("LP JSON: ") + err.what());
    } catch (const InvalidArgument& err) {
        throw ParseError(std::string("LP JSON: ") + err.what());
    }
}

json solution_to_json(const LPSolution& solution)
{
    json j{{"status", to_string(solution.status)}};
    if (solution.status == LPStatus::optimal) {
        j["optimum"] = to_string(solution.optimum);
        j["primal"] = rat_array(solution.primal);
        j["dual"] = rat_array(solution.dual);
    }
    return j;
}

} // namespace homdom
