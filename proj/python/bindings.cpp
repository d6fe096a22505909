#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "spiegel/errors.hpp"
#include "spiegel/report.hpp"
#include "spiegel/spiegel.hpp"
#include "spiegel/zeta.hpp"

namespace py = pybind11;
using namespace spiegel;

namespace {

TowerPtr tower_of(unsigned q, const std::string& P) {
    const FieldPtr k = FiniteField::from_desc(standard_field(q));
    return Tower::build(q, parse_poly(*k, P));
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    static py::exception<SpiegelError> err(m, "SpiegelError", PyExc_ValueError);

    m.def(
        "run_json",
        [](unsigned q, const std::string& p_poly, std::uint64_t seed, unsigned probes, unsigned norm_bound) {
            RunConfig cfg;
            cfg.q = q;
            cfg.p_poly = p_poly;
            cfg.seed = seed;
            cfg.probes = probes;
            cfg.norm_bound = norm_bound;
            SpiegelReport r;
            {
                py::gil_scoped_release nogil;
                r = run_spiegel(cfg);
            }
            return std::make_pair(render_json(r), exit_code(r));
        },
        py::arg("q"), py::arg("p_poly"), py::arg("seed") = 1, py::arg("probes") = 100, py::arg("norm_bound") = 0,
        "Full pipeline for one prime; returns (report JSON, exit code).");

    m.def(
        "genus", [](unsigned q, const std::string& P) { return tower_of(q, P)->genus(); }, py::arg("q"),
        py::arg("p_poly"));

    m.def(
        "zeta",
        [](unsigned q, const std::string& P) {
            const ZetaData z = zeta_numerator(*tower_of(q, P));
            std::vector<std::string> c;
            for (const auto& a : z.coeffs) c.push_back(a.get_str());
            return py::make_tuple(c, z.class_number.get_str(), z.symmetry_verified);
        },
        py::arg("q"), py::arg("p_poly"), "(numerator coefficients, P(1), symmetry verified); big integers as strings.");

    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) std::rethrow_exception(p);
        } catch (const SpiegelError& e) {
            err(e.what());
        } catch (const std::invalid_argument& e) {
            PyErr_SetString(PyExc_ValueError, e.what());
        }
    });
}
