#include "homdom/cones.hpp"
#include "homdom/constructions.hpp"
#include "homdom/error.hpp"
#include "homdom/formulas.hpp"
#include "homdom/hom.hpp"
#include "homdom/io.hpp"
#include "homdom/lp.hpp"
#include "homdom/verifier.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace homdom;

namespace {

py::object to_py(const json& j)
{
    return py::module_::import("json").attr("loads")(j.dump());
}

json from_py(const py::object& obj)
{
    return json::parse(py::module_::import("json").attr("dumps")(obj).cast<std::string>());
}

py::object fraction(const Rat& r)
{
    return py::module_::import("fractions").attr("Fraction")(to_string(r));
}

py::object big(const BigInt& v) { return py::int_(py::str(to_string(v))); }

Rat rat_arg(const py::object& obj)
{
    return parse_rat(py::str(obj).cast<std::string>());
}

/// Graph objects pass through, strings go through the CLI graph reader.
Graph graph_arg(const py::object& obj)
{
    if (py::isinstance<Graph>(obj)) {
        return obj.cast<Graph>();
    }
    return read_graph_arg(obj.cast<std::string>());
}

py::object instance_py(const FamilyInstance& inst)
{
    if (const auto* g = std::get_if<Graph>(&inst)) {
        return py::cast(*g);
    }
    return to_py(instance_to_json(inst));
}

} // namespace

PYBIND11_MODULE(_core, m)
{
    m.doc() = "Exact homomorphism densities and domination exponents";

    py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
    py::register_exception<InvalidArgument>(m, "InvalidArgument", PyExc_ValueError);
    py::register_exception<ResourceLimit>(m, "ResourceLimit", PyExc_RuntimeError);

    py::class_<Graph>(m, "Graph")
        .def(py::init<int, std::vector<Edge>>(), py::arg("n"), py::arg("edges"))
        .def_static("parse", [](const std::string& s) { return read_graph_arg(s); }, py::arg("text"))
        .def_static("from_graph6", &decode_graph6, py::arg("text"))
        .def_property_readonly("num_vertices", &Graph::num_vertices)
        .def_property_readonly("num_edges", &Graph::num_edges)
        .def_property_readonly("edges", &Graph::edges)
        .def("graph6", &encode_graph6)
        .def("is_connected", &Graph::is_connected)
        .def("is_bipartite", &Graph::is_bipartite)
        .def("__eq__", &Graph::operator==)
        .def("__repr__", [](const Graph& g) {
            return "Graph(n=" + std::to_string(g.num_vertices()) + ", m=" + std::to_string(g.num_edges()) + ")";
        });

    m.def("path", &path, py::arg("m"));
    m.def("cycle", &cycle, py::arg("m"));
    m.def("complete", &complete, py::arg("n"));
    m.def("disjoint_union", &disjoint_union);
    m.def("tensor_product", &tensor_product);

    m.def("hom_count", [](const py::object& h, const py::object& t) { return big(hom_count(graph_arg(h), graph_arg(t))); },
          py::arg("h"), py::arg("t"));
    m.def("hom_density",
          [](const py::object& h, const py::object& t) { return fraction(hom_density(graph_arg(h), graph_arg(t))); },
          py::arg("h"), py::arg("t"));

    m.def("path_exponent", [](int k, int l) { return fraction(path_exponent(k, l)); }, py::arg("k"), py::arg("l"));
    m.def("even_cycle_exponent", [](int k, int l) { return fraction(even_cycle_exponent(k, l)); }, py::arg("k"),
          py::arg("l"));
    m.def(
        "odd_cycle_bounds",
        [](int k, int l) {
            const auto [lo, hi] = odd_cycle_bounds(k, l);
            return py::make_tuple(fraction(lo), fraction(hi));
        },
        py::arg("k"), py::arg("l"));
    m.def(
        "exponent",
        [](const py::object& g, const py::object& h, bool harvest) {
            DispatchOptions opt;
            opt.harvest = harvest;
            return to_py(bound_to_json(dispatch_exponent(graph_arg(g), graph_arg(h), opt)));
        },
        py::arg("g"), py::arg("h"), py::arg("harvest") = false);

    m.def(
        "verify",
        [](const py::object& g, const py::object& h, const py::object& c, const py::object& corpus) {
            const Corpus built = build_corpus(corpus_spec_from_json(from_py(corpus)));
            return to_py(report_to_json(check_inequality(graph_arg(g), graph_arg(h), rat_arg(c), built)));
        },
        py::arg("g"), py::arg("h"), py::arg("c"), py::arg("corpus"));
    m.def(
        "search_p6",
        [](int i, int j, const py::object& corpus) {
            const Corpus built = build_corpus(corpus_spec_from_json(from_py(corpus)));
            return to_py(report_to_json(search_problem6(i, j, built)));
        },
        py::arg("i"), py::arg("j"), py::arg("corpus"));

    m.def(
        "kr_lp",
        [](int i) {
            const LPProblem p = kr_lp(i);
            json out = solution_to_json(solve_lp(p));
            out["certificate_dual_feasible"] = dual_feasible(p, kr_certificate(i));
            return to_py(out);
        },
        py::arg("i"));
    m.def("solve_lp", [](const py::object& lp) { return to_py(solution_to_json(solve_lp(lp_from_json(from_py(lp))))); },
          py::arg("lp"));

    m.def(
        "even_cycle_cone",
        [](int k) {
            const Cone c = even_cycle_cone(k);
            json out = cone_to_json(c);
            out["ray_check"] = ray_report_to_json(verify_rays(c));
            out["equality"] = cone_equals_hull(c);
            out["determinant"] = to_string(determinant(c.halfspaces));
            return to_py(out);
        },
        py::arg("k"));
    m.def(
        "all_cycle_cone",
        [](int m_, bool literal) {
            const Cone c = all_cycle_cone(m_, literal ? MixedRowMode::literal : MixedRowMode::aligned);
            json out = cone_to_json(c);
            out["ray_check"] = ray_report_to_json(verify_rays(c));
            out["hull"] = hull_report_to_json(hull_report(c));
            return to_py(out);
        },
        py::arg("m"), py::arg("literal") = false);
    m.def(
        "union_exponent_lp",
        [](const std::vector<int>& g, const std::vector<int>& h, int k) {
            return fraction(union_exponent_lp(g, h, k));
        },
        py::arg("g_lengths"), py::arg("h_lengths"), py::arg("k"));

    m.def(
        "construct",
        [](const std::string& family, long size) { return instance_py(instantiate(parse_scaling_family(family), size)); },
        py::arg("family"), py::arg("size"));
    m.def(
        "estimate",
        [](const py::object& g, const py::object& h, const std::string& family, std::vector<long> sizes) {
            return to_py(estimate_to_json(estimate_ratio(graph_arg(g), graph_arg(h), parse_scaling_family(family), sizes)));
        },
        py::arg("g"), py::arg("h"), py::arg("family"), py::arg("sizes"));
}
