#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "rsg/baseline.hpp"
#include "rsg/constants.hpp"
#include "rsg/errors.hpp"
#include "rsg/estimators.hpp"
#include "rsg/geometry.hpp"
#include "rsg/graph.hpp"
#include "rsg/verify.hpp"

namespace py = pybind11;
using namespace rsg;

namespace {

Color color_arg(const std::string& s) { return parse_color(s); }

py::dict estimate_dict(const MCEstimate& e) {
    py::dict d;
    d["value"] = e.value;
    d["std_error"] = e.std_error;
    d["n_samples"] = e.n_samples;
    d["n_accepted"] = e.n_accepted;
    d["seed"] = e.seed;
    d["workers"] = e.workers;
    return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Random sphere graphs: constants, cap thresholds, estimators, certificates, baseline";

    py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
    py::register_exception<InfeasibleError>(m, "InfeasibleError", PyExc_RuntimeError);
    py::register_exception<RejectionExhausted>(m, "RejectionExhausted", PyExc_RuntimeError);
    py::register_exception<ResourceError>(m, "ResourceError", PyExc_RuntimeError);
    py::register_exception<SingularSequenceError>(m, "SingularSequenceError", PyExc_ArithmeticError);

    py::class_<ThresholdConstants>(m, "ThresholdConstants")
        .def_readonly("C", &ThresholdConstants::C)
        .def_readonly("p_C", &ThresholdConstants::p_C)
        .def_readonly("M_C", &ThresholdConstants::M_C)
        .def_readonly("alpha_C", &ThresholdConstants::alpha_C)
        .def_readonly("f_pC", &ThresholdConstants::f_pC)
        .def_readonly("eps0", &ThresholdConstants::eps0)
        .def_readonly("D", &ThresholdConstants::D)
        .def_readonly("eps", &ThresholdConstants::eps);

    py::class_<CapThreshold>(m, "CapThreshold")
        .def_readonly("k", &CapThreshold::k)
        .def_readonly("p", &CapThreshold::p)
        .def_readonly("c", &CapThreshold::c)
        .def_readonly("residual", &CapThreshold::residual)
        .def("cutoff", &CapThreshold::cutoff);

    py::class_<BaselineResult>(m, "BaselineResult")
        .def_readonly("C", &BaselineResult::C)
        .def_readonly("ell", &BaselineResult::ell)
        .def_readonly("blue_size", &BaselineResult::blue_size)
        .def_readonly("p_opt", &BaselineResult::p_opt)
        .def_property_readonly("n_opt", [](const BaselineResult& b) { return static_cast<double>(b.n_opt); })
        .def_readonly("log_n", &BaselineResult::log_n)
        .def_readonly("sandwich", &BaselineResult::sandwich);

    m.def("solve_p_C", &solve_p_C, py::arg("C"));
    m.def("threshold_constants", &threshold_constants, py::arg("C"));
    m.def("select_p_star", &select_p_star, py::arg("C"), py::arg("D"), py::arg("k"));
    m.def("normal_quantile", &normal_quantile, py::arg("p"));
    m.def("cap_probability", &cap_probability, py::arg("k"), py::arg("a"));
    m.def("solve_cap_threshold", &solve_cap_threshold, py::arg("k"), py::arg("p"), py::arg("bias") = 0.0);
    m.def("erdos_bound", &erdos_bound, py::arg("C"), py::arg("ell"), py::arg("threshold") = 0.99);

    m.def(
        "estimate_clique_prob",
        [](double k, double p, int r, const std::string& color, long long samples, std::uint64_t seed, int workers) {
            py::gil_scoped_release release;
            MCEstimate e = estimate_clique_prob(k, p, r, color_arg(color), samples, {seed, workers});
            py::gil_scoped_acquire acquire;
            return estimate_dict(e);
        },
        py::arg("k"), py::arg("p"), py::arg("r"), py::arg("color"), py::arg("samples"), py::arg("seed"),
        py::arg("workers") = 1);

    m.def(
        "certify",
        [](double C, int ell, int k, double p, int n, long long attempts, std::uint64_t seed, int workers) {
            CertifyResult r;
            {
                py::gil_scoped_release release;
                r = certify_lower_bound(C, ell, k, p, n, attempts, seed, workers);
            }
            py::dict d;
            d["found"] = r.found;
            d["attempts"] = r.attempts;
            d["attempt_index"] = r.attempt_index;
            d["red_size"] = r.red_size;
            d["blue_size"] = r.blue_size;
            if (r.graph) {
                std::vector<std::vector<double>> pts;
                for (const auto& x : r.graph->points) pts.emplace_back(x.coords().data(), x.coords().data() + x.coords().size());
                d["points"] = pts;
                d["verified"] = verify_certificate(*r.graph, r.red_size, r.blue_size);
            }
            return d;
        },
        py::arg("C"), py::arg("ell"), py::arg("k"), py::arg("p"), py::arg("n"), py::arg("attempts") = 10000,
        py::arg("seed") = 0, py::arg("workers") = 1);

    m.def(
        "verify",
        [](const std::vector<int>& only, std::uint64_t seed, bool full, int workers) {
            VerifyOptions o;
            o.only = only;
            o.seed = seed;
            o.level = full ? Level::Full : Level::Quick;
            o.workers = workers;
            std::vector<CheckResult> res;
            {
                py::gil_scoped_release release;
                res = verify_suite(o);
            }
            py::list out;
            for (const auto& r : res) {
                py::dict d;
                d["id"] = r.id;
                d["name"] = r.name;
                d["passed"] = r.passed;
                d["detail"] = r.detail;
                out.append(d);
            }
            return out;
        },
        py::arg("only") = std::vector<int>{}, py::arg("seed") = 20240601, py::arg("full") = false,
        py::arg("workers") = 1);
}
