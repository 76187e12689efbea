#include "homdom/cones.hpp"

#include "homdom/error.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace homdom {

int Cone::index_of(int length) const
{
    for (int c = 0; c < dim; ++c) {
        if (coords[c] == length) {
            return c;
        }
    }
    throw InvalidArgument("cone has no coordinate for cycle length " + std::to_string(length));
}

namespace {

Rat dot(const RatVector& a, const RatVector& b)
{
    Rat s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] != 0 && b[i] != 0) {
            s += a[i] * b[i];
        }
    }
    return s;
}

RatVector zeros(int n) { return RatVector(static_cast<std::size_t>(n), Rat(0)); }

/// Reduced row echelon form in place; returns pivot columns.
std::vector<int> rref(RatMatrix& m, int cols)
{
    std::vector<int> pivots;
    int row = 0;
    const int rows = static_cast<int>(m.size());
    for (int col = 0; col < cols && row < rows; ++col) {
        int pick = -1;
        for (int r = row; r < rows; ++r) {
            if (m[r][col] != 0) {
                pick = r;
                break;
            }
        }
        if (pick < 0) {
            continue;
        }
        std::swap(m[row], m[pick]);
        const Rat inv = 1 / m[row][col];
        for (auto& x : m[row]) {
            x *= inv;
        }
        for (int r = 0; r < rows; ++r) {
            if (r != row && m[r][col] != 0) {
                const Rat f = m[r][col];
                for (int c = 0; c < cols; ++c) {
                    m[r][c] -= f * m[row][c];
                }
            }
        }
        pivots.push_back(col);
        ++row;
    }
    return pivots;
}

/// Scale to a primitive integer vector, keeping the direction.
RatVector primitive(RatVector v)
{
    BigInt den = 1;
    for (const auto& x : v) {
        den = lcm(den, BigInt(x.get_den()));
    }
    BigInt g = 0;
    for (auto& x : v) {
        x *= den;
        g = gcd(g, BigInt(x.get_num()));
    }
    if (g != 0) {
        for (auto& x : v) {
            x /= g;
        }
    }
    return v;
}

Rat R(long v) { return Rat(v); }

struct DDRay {
    RatVector v;
    std::set<int> tight;
};

} // namespace

Rat determinant(RatMatrix m)
{
    const int n = static_cast<int>(m.size());
    for (const auto& row : m) {
        if (static_cast<int>(row.size()) != n) {
            throw InvalidArgument("determinant needs a square matrix");
        }
    }
    Rat det = 1;
    for (int col = 0; col < n; ++col) {
        int pick = -1;
        for (int r = col; r < n; ++r) {
            if (m[r][col] != 0) {
                pick = r;
                break;
            }
        }
        if (pick < 0) {
            return 0;
        }
        if (pick != col) {
            std::swap(m[pick], m[col]);
            det = -det;
        }
        det *= m[col][col];
        for (int r = col + 1; r < n; ++r) {
            if (m[r][col] != 0) {
                const Rat f = m[r][col] / m[col][col];
                for (int c = col; c < n; ++c) {
                    m[r][c] -= f * m[col][c];
                }
            }
        }
    }
    return det;
}

int rank(RatMatrix m)
{
    if (m.empty()) {
        return 0;
    }
    const int cols = static_cast<int>(m[0].size());
    return static_cast<int>(rref(m, cols).size());
}

RatMatrix kernel(const RatMatrix& m, int cols)
{
    RatMatrix a = m;
    const auto pivots = rref(a, cols);
    std::vector<bool> is_pivot(static_cast<std::size_t>(cols), false);
    for (int p : pivots) {
        is_pivot[p] = true;
    }
    RatMatrix basis;
    for (int f = 0; f < cols; ++f) {
        if (is_pivot[f]) {
            continue;
        }
        RatVector v = zeros(cols);
        v[f] = 1;
        for (std::size_t r = 0; r < pivots.size(); ++r) {
            v[pivots[r]] = -a[r][f];
        }
        basis.push_back(primitive(v));
    }
    return basis;
}

Cone even_cycle_cone(int k)
{
    if (k < 2) {
        throw InvalidArgument("even_cycle_cone needs k >= 2");
    }
    Cone cone;
    cone.dim = k;
    for (int j = 1; j <= k; ++j) {
        cone.coords.push_back(2 * j);
    }
    // coordinate c holds y_{2(c+1)}
    for (int i = 1; i <= k - 2; ++i) {
        RatVector row = zeros(k);
        row[i - 1] = 1;
        row[i] = -2;
        row[i + 1] = 1;
        cone.halfspaces.push_back(row);
        cone.row_names.push_back("convex_" + std::to_string(2 * i));
    }
    {
        RatVector row = zeros(k);
        row[k - 2] = R(2L * k);
        row[k - 1] = R(-(2L * k - 2));
        cone.halfspaces.push_back(row);
        cone.row_names.push_back("top");
    }
    {
        RatVector row = zeros(k);
        row[0] = R(-2L * k);
        row[k - 1] += 1;
        cone.halfspaces.push_back(row);
        cone.row_names.push_back("edge");
    }
    for (int i = 1; i <= k - 1; ++i) {
        RatVector ray = zeros(k);
        for (int j = 1; j <= k; ++j) {
            ray[j - 1] = j <= i + 1 ? R(-i - (j - 1L) * (2L * i + 1)) : R(-2L * i * j);
        }
        cone.rays.push_back(ray);
        cone.ray_names.push_back("r_" + std::to_string(i));
    }
    RatVector s = zeros(k);
    for (int j = 1; j <= k; ++j) {
        s[j - 1] = -j;
    }
    cone.rays.push_back(s);
    cone.ray_names.push_back("s");
    return cone;
}

Cone all_cycle_cone(int m, MixedRowMode mode)
{
    if (m < 2) {
        throw InvalidArgument("all_cycle_cone needs m >= 2");
    }
    Cone cone;
    cone.dim = 2 * m - 1;
    for (int c = 2; c <= 2 * m; ++c) {
        cone.coords.push_back(c);
    }
    const int d = cone.dim;
    auto y = [](int length) { return length - 2; };
    auto add = [&](RatVector row, std::string name) {
        cone.halfspaces.push_back(std::move(row));
        cone.row_names.push_back(std::move(name));
    };

    for (int i = 2; i <= m - 1; ++i) {
        RatVector row = zeros(d);
        row[y(2 * i - 2)] += 1;
        row[y(2 * i)] += -2;
        row[y(2 * i + 2)] += 1;
        add(row, "even_convex_" + std::to_string(2 * i));
    }
    for (int i = 1; i <= m - 1; ++i) {
        RatVector row = zeros(d);
        row[y(2 * i)] += 1;
        row[y(2 * i + 1)] += -2;
        row[y(2 * i + 2)] += 1;
        add(row, "mid_convex_" + std::to_string(2 * i + 1));
    }
    for (int i = 1; i <= m - 1; ++i) {
        for (int j = i + 1; j <= m - 1; ++j) {
            RatVector row = zeros(d);
            row[y(2 * i)] += 2;
            if (mode == MixedRowMode::aligned) {
                row[y(2 * j + 1)] += R(2L * j - 1 - 2L * i);
                row[y(2 * j - 1)] += R(-(2L * j + 1 - 2L * i));
            } else {
                if (i == 1) {
                    continue; // would need y_1
                }
                row[y(2 * i - 1)] += R(-(2L * j + 1 - 2L * i));
                row[y(2 * j + 1)] += -1;
            }
            add(row, "mixed_" + std::to_string(i) + "_" + std::to_string(j));
        }
    }
    for (int i = 2; i <= m - 1; ++i) {
        RatVector row = zeros(d);
        row[y(2 * i - 1)] += -1;
        row[y(2 * i + 1)] += 1;
        add(row, "odd_monotone_" + std::to_string(2 * i + 1));
    }
    {
        RatVector row = zeros(d);
        row[y(3)] = 1;
        add(row, "triangle_nonneg");
    }
    {
        RatVector row = zeros(d);
        row[y(3)] += -1;
        row[y(4)] += 1;
        add(row, "c4_over_c3");
    }
    {
        RatVector row = zeros(d);
        row[y(2)] += -1;
        row[y(4)] += 1;
        add(row, "c4_over_edge");
    }
    {
        RatVector row = zeros(d);
        row[y(2 * m - 2)] += R(m);
        row[y(2 * m)] += R(-(m - 1L));
        add(row, "top");
    }

    for (int i = 1; i <= m; ++i) {
        RatVector r = zeros(d);
        RatVector s = zeros(d);
        for (int j = 2; j <= 2 * m; ++j) {
            const bool zero = (j % 2 == 1) && j < 2 * i + 1;
            r[y(j)] = zero ? 0 : j;
            s[y(j)] = zero ? 0 : 1;
        }
        cone.rays.push_back(r);
        cone.ray_names.push_back("r_" + std::to_string(2 * i + 1));
        cone.rays.push_back(s);
        cone.ray_names.push_back("s_" + std::to_string(2 * i + 1));
    }
    return cone;
}

RayReport verify_rays(const Cone& cone)
{
    RayReport report;
    report.all_inside = true;
    report.one_slack_each = true;
    for (std::size_t r = 0; r < cone.rays.size(); ++r) {
        RayCheck check;
        check.name = r < cone.ray_names.size() ? cone.ray_names[r] : "ray_" + std::to_string(r);
        check.inside = true;
        for (std::size_t h = 0; h < cone.halfspaces.size(); ++h) {
            const Rat v = dot(cone.halfspaces[h], cone.rays[r]);
            check.values.push_back(v);
            if (v < 0) {
                check.inside = false;
            }
            if (v == 0) {
                check.tight_rows.push_back(static_cast<int>(h));
            }
        }
        report.all_inside = report.all_inside && check.inside;
        if (static_cast<int>(check.tight_rows.size()) != cone.dim - 1) {
            report.one_slack_each = false;
        }
        report.rays.push_back(std::move(check));
    }
    return report;
}

bool in_conic_hull(const RatMatrix& rays, const RatVector& v)
{
    LPProblem lp;
    lp.sense = Sense::minimize;
    for (std::size_t r = 0; r < rays.size(); ++r) {
        lp.add_variable(0);
    }
    for (std::size_t c = 0; c < v.size(); ++c) {
        RatVector row;
        for (const auto& ray : rays) {
            row.push_back(ray[c]);
        }
        lp.add_row(row, Relation::eq, v[c]);
    }
    return solve_lp(lp).status == LPStatus::optimal;
}

HullReport hull_report(const Cone& cone)
{
    const int d = cone.dim;
    if (d > 10) {
        throw ResourceLimit("hull check is capped at dimension 10");
    }
    HullReport report;
    report.rays_in_cone = verify_rays(cone).all_inside;

    // Double description: start from R^d, cut by one halfspace at a time. Rays
    // are kept modulo the current lineality space and dedup'd by tight set.
    RatMatrix lineality;
    for (int i = 0; i < d; ++i) {
        RatVector e = zeros(d);
        e[i] = 1;
        lineality.push_back(e);
    }
    std::vector<DDRay> rays;
    RatMatrix processed;
    for (std::size_t h = 0; h < cone.halfspaces.size(); ++h) {
        const RatVector& a = cone.halfspaces[h];
        const int idx = static_cast<int>(h);
        int pivot = -1;
        for (std::size_t l = 0; l < lineality.size(); ++l) {
            if (dot(a, lineality[l]) != 0) {
                pivot = static_cast<int>(l);
                break;
            }
        }
        if (pivot >= 0) {
            RatVector p = lineality[pivot];
            Rat ap = dot(a, p);
            if (ap < 0) {
                for (auto& x : p) {
                    x = -x;
                }
                ap = -ap;
            }
            RatMatrix next;
            for (std::size_t l = 0; l < lineality.size(); ++l) {
                if (static_cast<int>(l) == pivot) {
                    continue;
                }
                RatVector w = lineality[l];
                const Rat f = dot(a, w) / ap;
                for (int c = 0; c < d; ++c) {
                    w[c] -= f * p[c];
                }
                next.push_back(w);
            }
            lineality = std::move(next);
            for (auto& ray : rays) {
                const Rat f = dot(a, ray.v) / ap;
                for (int c = 0; c < d; ++c) {
                    ray.v[c] -= f * p[c];
                }
                ray.tight.insert(idx);
            }
            DDRay fresh;
            fresh.v = primitive(p);
            // p is tight on every earlier row since it lay in their lineality
            for (int t = 0; t < idx; ++t) {
                fresh.tight.insert(t);
            }
            rays.push_back(std::move(fresh));
            processed.push_back(a);
            continue;
        }

        processed.push_back(a);
        const int target_rank = rank(processed) - 1;
        std::vector<DDRay> pos, neg, next;
        std::vector<Rat> pos_val, neg_val;
        for (auto& ray : rays) {
            const Rat v = dot(a, ray.v);
            if (v > 0) {
                pos_val.push_back(v);
                pos.push_back(ray);
                next.push_back(ray);
            } else if (v < 0) {
                neg_val.push_back(v);
                neg.push_back(ray);
            } else {
                ray.tight.insert(idx);
                next.push_back(ray);
            }
        }
        std::set<std::set<int>> seen;
        for (const auto& ray : next) {
            seen.insert(ray.tight);
        }
        for (std::size_t i = 0; i < pos.size(); ++i) {
            for (std::size_t j = 0; j < neg.size(); ++j) {
                std::set<int> common;
                std::set_intersection(pos[i].tight.begin(), pos[i].tight.end(), neg[j].tight.begin(),
                                      neg[j].tight.end(), std::inserter(common, common.end()));
                common.insert(idx);
                if (seen.count(common)) {
                    continue;
                }
                RatMatrix tight_rows;
                for (int t : common) {
                    tight_rows.push_back(cone.halfspaces[t]);
                }
                if (rank(tight_rows) != target_rank) {
                    continue;
                }
                DDRay combo;
                combo.v = zeros(d);
                for (int c = 0; c < d; ++c) {
                    combo.v[c] = pos_val[i] * neg[j].v[c] - neg_val[j] * pos[i].v[c];
                }
                combo.v = primitive(combo.v);
                combo.tight = common;
                seen.insert(common);
                next.push_back(std::move(combo));
            }
        }
        rays = std::move(next);
    }

    for (const auto& ray : rays) {
        report.extreme_rays.push_back(ray.v);
    }
    report.lineality = lineality;

    report.cone_in_hull = true;
    auto check = [&](const RatVector& v) {
        if (!in_conic_hull(cone.rays, v)) {
            report.cone_in_hull = false;
            report.outside.push_back(v);
        }
    };
    for (const auto& v : report.extreme_rays) {
        check(v);
    }
    for (const auto& l : report.lineality) {
        check(l);
        RatVector minus = l;
        for (auto& x : minus) {
            x = -x;
        }
        check(minus);
    }
    return report;
}

bool cone_equals_hull(const Cone& cone) { return hull_report(cone).equal(); }

Rat union_exponent_lp(const std::vector<int>& g_cycles, const std::vector<int>& h_cycles, int k)
{
    if (h_cycles.empty()) {
        throw InvalidArgument("union_exponent_lp needs a nonempty H");
    }
    const Cone cone = even_cycle_cone(k);
    auto check = [&](int len) {
        if (len < 2 || len % 2 != 0 || len > 2 * k) {
            throw InvalidArgument("union_exponent_lp: cycle length " + std::to_string(len) +
                                  " is not an even number in 2.." + std::to_string(2 * k));
        }
    };
    LPProblem lp;
    lp.sense = Sense::maximize;
    for (int c = 0; c < k; ++c) {
        lp.add_variable(0, true, "y_" + std::to_string(cone.coords[c]));
    }
    for (int len : g_cycles) {
        check(len);
        lp.objective[cone.index_of(len)] -= 1;
    }
    for (std::size_t h = 0; h < cone.halfspaces.size(); ++h) {
        lp.add_row(cone.halfspaces[h], Relation::ge, 0, cone.row_names[h]);
    }
    RatVector norm = zeros(k);
    for (int len : h_cycles) {
        check(len);
        norm[cone.index_of(len)] += 1;
    }
    lp.add_row(norm, Relation::eq, -1, "normalize");
    const LPSolution sol = solve_lp(lp);
    if (sol.status != LPStatus::optimal) {
        throw InvalidArgument("union_exponent_lp: program is " + to_string(sol.status));
    }
    return sol.optimum;
}

namespace {

json vec_json(const RatVector& v)
{
    json out = json::array();
    for (const auto& x : v) {
        out.push_back(to_string(x));
    }
    return out;
}

json mat_json(const RatMatrix& m)
{
    json out = json::array();
    for (const auto& row : m) {
        out.push_back(vec_json(row));
    }
    return out;
}

} // namespace

json cone_to_json(const Cone& cone)
{
    return json{{"dim", cone.dim},
                {"coords", cone.coords},
                {"halfspaces", mat_json(cone.halfspaces)},
                {"row_names", cone.row_names},
                {"rays", mat_json(cone.rays)},
                {"ray_names", cone.ray_names}};
}

json ray_report_to_json(const RayReport& report)
{
    json rays = json::array();
    for (const auto& r : report.rays) {
        rays.push_back(json{{"name", r.name},
                            {"inside", r.inside},
                            {"values", vec_json(r.values)},
                            {"tight_rows", r.tight_rows}});
    }
    return json{{"all_inside", report.all_inside}, {"one_slack_each", report.one_slack_each}, {"rays", rays}};
}

json hull_report_to_json(const HullReport& report)
{
    return json{{"rays_in_cone", report.rays_in_cone},
                {"cone_in_hull", report.cone_in_hull},
                {"equal", report.equal()},
                {"extreme_rays", mat_json(report.extreme_rays)},
                {"lineality", mat_json(report.lineality)},
                {"outside", mat_json(report.outside)}};
}

} // namespace homdom
