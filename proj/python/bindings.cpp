#include <sstream>

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "sykclt/cli.hpp"
#include "sykclt/clifford.hpp"
#include "sykclt/config.hpp"
#include "sykclt/errors.hpp"
#include "sykclt/harness.hpp"
#include "sykclt/moments.hpp"
#include "sykclt/setcomb.hpp"
#include "sykclt/smoothing.hpp"

namespace py = pybind11;
using namespace sykclt;

namespace {

ScalingLimit limit_from(py::object a) {
    if (py::isinstance<py::str>(a)) return ScalingLimit::parse(a.cast<std::string>());
    return ScalingLimit::finite(a.cast<double>());
}

py::dict summary_dict(const RunSummary& s) { return py::module_::import("json").attr("loads")(to_json(s).dump()); }

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "SYK linear-statistic experiments";
    m.attr("__version__") = kToolVersion;

    py::register_exception<SchemaError>(m, "SchemaError", PyExc_ValueError);
    py::register_exception<ArgumentError>(m, "ArgumentError", PyExc_ValueError);
    py::register_exception<DimensionError>(m, "DimensionError", PyExc_ValueError);
    py::register_exception<ResourceError>(m, "ResourceError", PyExc_MemoryError);
    py::register_exception<ValidationError>(m, "ValidationError", PyExc_ArithmeticError);

    m.def(
        "word_product",
        [](const std::vector<int>& a, const std::vector<int>& b, int n) {
            const auto w = word_product(MajoranaWord(IndexSet::from_elements(a, n)), MajoranaWord(IndexSet::from_elements(b, n)));
            return py::make_tuple(w.phase.exponent(), w.support.elements());
        },
        py::arg("a"), py::arg("b"), py::arg("n"),
        "Psi_a Psi_b as (p, support) with the product equal to i^p Psi_support.");

    m.def(
        "m_k_a", [](int k, py::object a) { return m_k_a(k, limit_from(a)); }, py::arg("k"), py::arg("a"));
    m.def("crossing_histogram", &crossing_histogram, py::arg("k"));
    m.def(
        "covariance_limit",
        [](int k, int k_prime, py::object a, double gamma) { return covariance_limit(k, k_prime, limit_from(a), gamma); },
        py::arg("k"), py::arg("k_prime"), py::arg("a"), py::arg("gamma") = 3.0);

    m.def(
        "eigenvalues",
        [](int n, int q, const std::string& distribution, std::uint64_t seed, std::uint64_t sample_id) {
            const HamiltonianBuilder builder(n, q);
            Rng rng = substream(seed, sample_id);
            const auto c = sample_couplings(CouplingDistribution::from_name(distribution), n, q, rng);
            return eigenvalues(builder.assemble(c)).eigenvalues;
        },
        py::arg("n"), py::arg("q"), py::arg("distribution") = "gaussian", py::arg("seed") = 0, py::arg("sample_id") = 0);

    m.def(
        "run_clt",
        [](const std::string& config_json) {
            const auto cfg = parse_config(nlohmann::json::parse(config_json));
            RunRecord rec;
            {
                py::gil_scoped_release release;
                rec = run_ensemble(cfg);
            }
            std::vector<double> values;
            values.reserve(rec.rows.size());
            for (const auto& r : rec.rows) values.push_back(r.value);
            py::dict out;
            out["values"] = values;
            out["summary"] = summary_dict(rec.summary);
            return out;
        },
        py::arg("config_json"), "Runs an ensemble from a JSON config document.");

    m.def("exact_covariance_oracle",
          [](int n, int q, int k, int k_prime, const std::string& distribution) {
              return exact_covariance_oracle(n, q, k, k_prime, CouplingDistribution::from_name(distribution));
          },
          py::arg("n"), py::arg("q"), py::arg("k"), py::arg("k_prime"), py::arg("distribution") = "gaussian");

    m.def("count_B3", [](int n, int q) { return count_B3_exact(n, q).str(); }, py::arg("n"), py::arg("q"));
    m.def("count_B4", [](int n, int q) { return count_B4_exact(n, q).str(); }, py::arg("n"), py::arg("q"));
    m.def("hypergeometric_overlap_pmf", &hypergeometric_overlap_pmf, py::arg("n"), py::arg("q"));
    m.def("tv_distance_to_poisson", &tv_distance_to_poisson, py::arg("pmf"), py::arg("mean"));

    m.def("fejer_kernel", [](double lambda, double x) { return fejer_eval(FejerKernel(lambda), x); }, py::arg("lam"),
          py::arg("x"));
    m.def(
        "smoothing_sup_error",
        [](const std::string& function, double lambda, double lo, double hi, std::size_t nodes) {
            return smoothing_sup_error(named_test_function(function), lambda, SmoothingGrid{lo, hi, nodes});
        },
        py::arg("function"), py::arg("lam"), py::arg("lo") = -3.0, py::arg("hi") = 3.0, py::arg("nodes") = 601);

    m.def(
        "cli",
        [](const std::vector<std::string>& args) {
            std::ostringstream out, err;
            int code;
            {
                py::gil_scoped_release release;
                code = dispatch(args, out, err);
            }
            return py::make_tuple(code, out.str(), err.str());
        },
        py::arg("args"), "Runs one sykclt invocation; returns (exit_code, stdout, stderr).");
}
