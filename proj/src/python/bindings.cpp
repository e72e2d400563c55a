#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "dualkit/diagram.hpp"
#include "dualkit/equivariant.hpp"
#include "dualkit/models.hpp"

namespace py = pybind11;
using namespace dualkit;

// Values cross the boundary as JSON text; the Python wrapper does the (de)serialization.
namespace {

std::string smith(const std::string& matrix) {
    auto m = int_matrix_from_json(json::parse(matrix));
    auto s = smith_normal_form(m);
    json diag = json::array();
    for (const auto& d : s.diagonal()) diag.push_back(int_to_json(d));
    return json{{"U", rows_json(s.U)}, {"D", rows_json(s.D)}, {"V", rows_json(s.V)}, {"diagonal", diag}}.dump();
}

std::string cokernel(const std::string& matrix) {
    auto c = cokernel_decomposition(int_matrix_from_json(json::parse(matrix)));
    json tors = json::array();
    for (const auto& t : c.torsion) tors.push_back(int_to_json(t));
    return json{{"torsion", tors}, {"free_rank", c.free_rank}}.dump();
}

std::string verify_trace(const std::string& trace) {
    auto t = diagram::RewriteTrace::from_json(json::parse(trace));
    json j = diagram::validate_trace(t).to_json();
    j["trace"] = t.name;
    return j.dump();
}

std::string span_cofiber(const std::string& morphism) {
    auto c = SpanFin::cofiber(span_morphism_from_json(json::parse(morphism)));
    return json{{"cofiber", SpanFin::to_json(c.object)},
                {"quotient", SpanFin::to_json(c.quotient)},
                {"provenance", c.provenance}}
        .dump();
}

std::string evconst_cofiber(const std::string& morphism) {
    auto c = EvConst::cofiber(EvConst::morphism_from_json(json::parse(morphism)));
    return json{{"object", EvConst::to_json(c.object)},
                {"describe", EvConst::describe(c.object)},
                {"quotient", EvConst::to_json(c.quotient)},
                {"provenance", c.provenance}}
        .dump();
}

std::string collapse(const std::string& group, const std::string& rep) {
    auto g = equi::load_group(group);
    auto poset = equi::enumerate_subgroup_classes(g);
    auto cert = equi::generate_collapse_certificate(g, poset, equi::named_rep(g, rep), group);
    json j = cert.to_json(poset);
    j["valid"] = equi::validate_certificate(cert, poset).valid;
    return j.dump();
}

std::string validate_certificate(const std::string& group, const std::string& certificate) {
    auto g = equi::load_group(group);
    auto poset = equi::enumerate_subgroup_classes(g);
    auto chk = equi::validate_certificate(equi::CollapseCertificate::from_json(json::parse(certificate)), poset);
    json j{{"valid", chk.valid}, {"reason", chk.reason}};
    j["failing_step"] = chk.failing_step ? json(*chk.failing_step) : json(nullptr);
    return j.dump();
}

}  // namespace

PYBIND11_MODULE(_dualkit, m) {
    m.doc() = "dualkit core bindings (JSON text in and out)";

    py::register_exception<UnsupportedShape>(m, "UnsupportedShape", PyExc_ValueError);
    py::register_exception<NotInvertible>(m, "NotInvertible", PyExc_ArithmeticError);

    m.def("smith", &smith, py::arg("matrix"));
    m.def("cokernel", &cokernel, py::arg("matrix"));
    m.def("verify_trace", &verify_trace, py::arg("trace"));
    m.def("corpus_files", &diagram::corpus_files);
    m.def("data_dir", &diagram::data_dir);
    m.def("span_cofiber", &span_cofiber, py::arg("morphism"));
    m.def("evconst_cofiber", &evconst_cofiber, py::arg("morphism"));
    m.def("collapse", &collapse, py::arg("group"), py::arg("rep") = "reduced-regular");
    m.def("validate_certificate", &validate_certificate, py::arg("group"), py::arg("certificate"));
}
