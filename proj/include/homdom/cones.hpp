#pragma once

#include "homdom/io.hpp"
#include "homdom/lp.hpp"
#include "homdom/rational.hpp"

#include <string>
#include <vector>

namespace homdom {

using RatVector = std::vector<Rat>;
using RatMatrix = std::vector<RatVector>;

/// Polyhedral cone {y : a.y >= 0 for every halfspace row a} with a list of
/// generator rays. coords[c] is the cycle length of coordinate c.
struct Cone {
    int dim = 0;
    std::vector<int> coords;
    RatMatrix halfspaces;
    std::vector<std::string> row_names;
    RatMatrix rays;
    std::vector<std::string> ray_names;

    /// Index of the coordinate holding cycle length `length`, or throws.
    int index_of(int length) const;
};

/// Coordinates (y_2, y_4, ..., y_2k). Rows in order: the k-2 log-convexity rows,
/// 2k y_{2k-2} - (2k-2) y_{2k}, then -2k y_2 + y_{2k}. Rays r_1..r_{k-1}, then s.
Cone even_cycle_cone(int k);

/// The mixed even/odd row family of the all-cycle cone.
///   aligned:   2 y_{2i} + (2j-1-2i) y_{2j+1} - (2j+1-2i) y_{2j-1} >= 0, the log
///              form of the open cycle inequality after swapping i and j;
///   literal:   2 y_{2i} - (2j+1-2i) y_{2i-1} - y_{2j+1} >= 0 exactly as displayed,
///              rows that would need y_1 dropped.
enum class MixedRowMode { aligned, literal };

/// Coordinates (y_2, y_3, ..., y_2m); rays r_{2i+1}, s_{2i+1} for 1 <= i <= m.
Cone all_cycle_cone(int m, MixedRowMode mode = MixedRowMode::aligned);

struct RayCheck {
    std::string name;
    bool inside = false;
    RatVector values;           // a.y per halfspace
    std::vector<int> tight_rows; // rows with a.y = 0
};

struct RayReport {
    bool all_inside = false;
    /// Every ray tight on exactly dim-1 rows (the even-cycle tightness pattern).
    bool one_slack_each = false;
    std::vector<RayCheck> rays;
};

RayReport verify_rays(const Cone& cone);

struct HullReport {
    bool rays_in_cone = false;
    bool cone_in_hull = false;
    RatMatrix extreme_rays;        // of the halfspace system, primitive integer-scaled
    RatMatrix lineality;           // basis of the lineality space
    RatMatrix outside;             // extreme rays (or ±lineality vectors) not in the hull
    bool equal() const { return rays_in_cone && cone_in_hull; }
};

/// Both inclusions, exactly. Throws ResourceLimit for dim > 10.
HullReport hull_report(const Cone& cone);
bool cone_equals_hull(const Cone& cone);

/// Whether v is a nonnegative combination of the rays (exact LP).
bool in_conic_hull(const RatMatrix& rays, const RatVector& v);

Rat determinant(RatMatrix m);
int rank(RatMatrix m);
/// Basis of {x : M x = 0}.
RatMatrix kernel(const RatMatrix& m, int cols);

/// C(G, H) for disjoint unions of edges and even cycles, given as multisets of
/// even lengths (2 = K_2): maximize -sum_G y_c over y in the even-cycle cone of
/// order k with sum_H y_c = -1. Throws InvalidArgument on an infeasible or
/// unbounded program or on lengths outside 2..2k.
Rat union_exponent_lp(const std::vector<int>& g_cycles, const std::vector<int>& h_cycles, int k);

json cone_to_json(const Cone& cone);
json ray_report_to_json(const RayReport& report);
json hull_report_to_json(const HullReport& report);

} // namespace homdom
