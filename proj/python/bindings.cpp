#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "jaccard/all_pairs.hpp"
#include "jaccard/asymptotic.hpp"
#include "jaccard/bootstrap.hpp"
#include "jaccard/exact.hpp"
#include "jaccard/fdr.hpp"
#include "jaccard/mca.hpp"
#include "jaccard/rng.hpp"
#include "jaccard/simulate.hpp"
#include "jaccard/similarity.hpp"

namespace py = pybind11;
using namespace jaccard;

namespace {

BinaryVector to_vector(const std::vector<int>& bits) {
  return BinaryVector::from_ints(bits);
}

py::dict result_dict(const TestResult& r) {
  py::dict d;
  d["coefficient"] = r.coefficient;
  d["expectation"] = r.expectation;
  d["centered"] = r.centered;
  d["p_value"] = r.p_value;
  d["engine"] = engine_name(r.engine);
  switch (r.engine) {
    case Engine::asymptotic:
      d["z"] = r.z;
      break;
    case Engine::mca:
      d["p_upper"] = r.p_upper;
      d["states"] = r.states;
      d["covered_mass"] = r.covered_mass;
      break;
    case Engine::bootstrap:
      d["iterations"] = r.states;
      d["exceedances"] = r.exceedances;
      break;
    case Engine::exact:
      d["states"] = r.states;
      d["covered_mass"] = r.covered_mass;
      break;
  }
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Significance tests for Jaccard/Tanimoto similarity between "
            "binary presence-absence vectors";

  py::register_exception<ValidationError>(m, "ValidationError",
                                          PyExc_ValueError);
  py::register_exception<ResourceLimitError>(m, "ResourceLimitError",
                                             PyExc_RuntimeError);

  m.def(
      "contingency",
      [](const std::vector<int>& a, const std::vector<int>& b) {
        const ContingencyTable t = contingency(to_vector(a), to_vector(b));
        return py::make_tuple(t.n1, t.n2, t.n3, t.n4);
      },
      py::arg("a"), py::arg("b"),
      "Counts (n1, n2, n3, n4): both present, first only, second only, "
      "neither.");

  m.def(
      "centered_statistic",
      [](const std::vector<int>& a, const std::vector<int>& b) {
        const CenteredStatistic s =
            centered_statistic(to_vector(a), to_vector(b));
        return py::make_tuple(s.coefficient, s.expectation, s.centered);
      },
      py::arg("a"), py::arg("b"),
      "(coefficient, expectation, centered) with plug-in estimates.");

  m.def(
      "expectation",
      [](double p_i, double p_j) {
        return expectation(OccurrenceProbs{p_i, p_j});
      },
      py::arg("p_i"), py::arg("p_j"),
      "Expected coefficient of an independent pair.");

  m.def(
      "exact_pvalue",
      [](const std::vector<int>& a, const std::vector<int>& b,
         std::uint32_t m_cap) {
        ExactConfig cfg;
        cfg.m_cap = m_cap;
        return result_dict(exact_pvalue(to_vector(a), to_vector(b), cfg));
      },
      py::arg("a"), py::arg("b"), py::arg("m_cap") = 2000);

  m.def(
      "asymptotic_pvalue",
      [](const std::vector<int>& a, const std::vector<int>& b) {
        return result_dict(asymptotic_pvalue(to_vector(a), to_vector(b)));
      },
      py::arg("a"), py::arg("b"));

  m.def(
      "bootstrap_pvalue",
      [](const std::vector<int>& a, const std::vector<int>& b,
         std::optional<std::uint64_t> B, std::uint64_t seed, bool smoothing) {
        BootstrapConfig cfg;
        cfg.iterations = B;
        cfg.seed = seed;
        cfg.add_one_smoothing = smoothing;
        return result_dict(bootstrap_pvalue(to_vector(a), to_vector(b), cfg));
      },
      py::arg("a"), py::arg("b"), py::arg("B") = py::none(),
      py::arg("seed") = 0, py::arg("smoothing") = false);

  m.def(
      "mca_pvalue",
      [](const std::vector<int>& a, const std::vector<int>& b, double epsilon,
         bool report_upper) {
        McaConfig cfg;
        cfg.epsilon = epsilon;
        cfg.report_upper = report_upper;
        return result_dict(mca_pvalue(to_vector(a), to_vector(b), cfg));
      },
      py::arg("a"), py::arg("b"), py::arg("epsilon") = 1e-5,
      py::arg("report_upper") = false);

  m.def("estimate_pi0", &estimate_pi0, py::arg("pvalues"),
        py::arg("lambda_") = 0.5);

  m.def(
      "q_values",
      [](const std::vector<double>& pvalues, double pi0) {
        return q_values(pvalues, pi0).q_values;
      },
      py::arg("pvalues"), py::arg("pi0") = 1.0);

  m.def(
      "simulate_null_pair",
      [](std::size_t m, double p_i, double p_j, std::uint64_t seed) {
        Rng rng = Rng::stream(seed, 0);
        auto [a, b] = simulate_null_pair(m, p_i, p_j, rng);
        return py::make_tuple(
            std::vector<int>(a.bits().begin(), a.bits().end()),
            std::vector<int>(b.bits().begin(), b.bits().end()));
      },
      py::arg("m"), py::arg("p_i"), py::arg("p_j"), py::arg("seed") = 0);

  m.attr("__version__") = "0.1.0";
}
