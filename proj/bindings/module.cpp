#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "nbcqi/errors.hpp"
#include "nbcqi/io.hpp"

namespace py = pybind11;
using namespace nbcqi;

namespace {

Document load(const std::string& path) { return build_document(parse_document_file(path)); }

const Endomorphism& pick(const Document& doc, const std::string& name) {
    auto it = doc.endos.find(name);
    if (it == doc.endos.end())
        throw ParseError("no endomorphism named '" + name + "' in '" + doc.name + "'");
    return it->second;
}

Direction parse_dir(const std::string& d) {
    if (d == "fwd") return Direction::Forward;
    if (d == "bwd") return Direction::Backward;
    throw ParseError("direction must be 'fwd' or 'bwd'");
}

std::string validate_json(const std::string& path) {
    RawDocument raw = parse_document_file(path);
    auto violations = validate(raw.sc);
    Json report;
    report["algebra"] = raw.name;
    report["valid"] = violations.empty();
    report["violations"] = violations_to_json(violations);
    report["warnings"] = raw.warnings;
    return report.dump();
}

std::string weights_json(const std::string& path) {
    Document doc = load(path);
    Json report = weights_to_json(doc.algebra);
    report["algebra"] = doc.name;
    return report.dump();
}

std::string jordan_json(const std::string& path, const std::string& endo) {
    Document doc = load(path);
    RealJordanData d = jordan_structure(pick(doc, endo).matrix);
    Json report = jordan_to_json(d);
    report["absolute"] = abs_blocks_to_json(absolute_jordan_form(d));
    return report.dump();
}

std::string pajf_json(const std::string& path, const std::string& endo,
                      const std::string& weight_order) {
    Document doc = load(path);
    return pajf_to_json(compute_pajf(pick(doc, endo), weight_order == "asc")).dump();
}

std::string rates_json(const std::string& path, const std::string& endo,
                       const std::string& direction) {
    Document doc = load(path);
    Direction dir = parse_dir(direction);
    return rates_to_json(basis_rates(adapted_jordan_basis(pick(doc, endo)), dir), dir).dump();
}

std::string growth_json(const std::string& path, const std::string& endo) {
    Document doc = load(path);
    const Endomorphism& e = pick(doc, endo);
    return filtration_to_json(growth_filtration(e, adapted_jordan_basis(e))).dump();
}

std::string assumptions_json(const std::string& path, const std::string& endo) {
    Document doc = load(path);
    return assumptions_to_json(check_standing_assumptions(pick(doc, endo))).dump();
}

std::string compare_json(const std::string& path_a, const std::string& endo_a,
                         const std::string& path_b, const std::string& endo_b,
                         unsigned power_bound) {
    Document doc_a = load(path_a);
    Document doc_b = load(path_b);
    return verdict_to_json(classify(pick(doc_a, endo_a), pick(doc_b, endo_b), power_bound))
        .dump();
}

std::string oracle_json(const std::string& path, const std::string& endo,
                        const std::string& direction, int t_min, int t_max, unsigned seed) {
    Document doc = load(path);
    const Endomorphism& e = pick(doc, endo);
    OracleOptions opt;
    opt.t_min = t_min;
    opt.t_max = t_max;
    opt.seed = seed;
    AdaptedBasis basis = adapted_jordan_basis(e);
    return rate_checks_to_json(validate_rates(e, basis, parse_dir(direction), opt)).dump();
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "exact quasi-isometry invariants of nilpotent-by-cyclic groups";

    // translators run newest-first, so the base class goes in first
    py::register_exception<Error>(m, "NbcqiError", PyExc_RuntimeError);
    py::register_exception<ParseError>(m, "DocumentError", PyExc_ValueError);
    py::register_exception<UnsupportedEigenvalueError>(m, "UnsupportedEigenvalueError",
                                                       PyExc_ValueError);
    py::register_exception<AssumptionViolationError>(m, "AssumptionViolationError",
                                                     PyExc_ValueError);

    m.def("validate_json", &validate_json, py::arg("path"));
    m.def("weights_json", &weights_json, py::arg("path"));
    m.def("jordan_json", &jordan_json, py::arg("path"), py::arg("endo"));
    m.def("pajf_json", &pajf_json, py::arg("path"), py::arg("endo"),
          py::arg("weight_order") = "asc");
    m.def("rates_json", &rates_json, py::arg("path"), py::arg("endo"),
          py::arg("direction") = "fwd");
    m.def("growth_json", &growth_json, py::arg("path"), py::arg("endo"));
    m.def("assumptions_json", &assumptions_json, py::arg("path"), py::arg("endo"));
    m.def("compare_json", &compare_json, py::arg("path_a"), py::arg("endo_a"), py::arg("path_b"),
          py::arg("endo_b"), py::arg("power_bound") = 12);
    m.def("oracle_json", &oracle_json, py::arg("path"), py::arg("endo"),
          py::arg("direction") = "fwd", py::arg("t_min") = 10, py::arg("t_max") = 40,
          py::arg("seed") = 0);
}
