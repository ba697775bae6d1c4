#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "oblab/dense_tester.hpp"
#include "oblab/graphs.hpp"
#include "oblab/locate.hpp"
#include "oblab/multiquery.hpp"
#include "oblab/noise.hpp"
#include "oblab/prefix.hpp"
#include "oblab/rng.hpp"
#include "oblab/trace.hpp"
#include "oblab/verifier.hpp"

namespace py = pybind11;
using namespace oblab;

namespace {

py::dict estimate_dict(const EpsilonEstimate& e) {
  py::dict d;
  d["eps_hat"] = e.eps_hat;
  d["delta_used"] = e.delta_used;
  d["event_family"] = e.event_family;
  d["ci_low"] = e.ci_low;
  d["ci_high"] = e.ci_high;
  d["trials"] = e.trials;
  d["degenerate"] = e.degenerate;
  return d;
}

py::dict search_dict(const SearchOutcome& o) {
  py::dict d;
  d["index"] = o.index;
  d["iterations"] = o.iterations;
  d["probes"] = o.probes;
  d["noise_within_bound"] = o.noise_within_bound;
  d["windows"] = o.windows;
  return d;
}

}  // namespace

PYBIND11_MODULE(_oblab, m) {
  m.doc() = "Differentially oblivious algorithms with traced memory and a privacy auditor";

  py::class_<Rng>(m, "Rng")
      .def(py::init<std::uint64_t>(), py::arg("seed"))
      .def_static("substream", &Rng::substream, py::arg("seed"), py::arg("index"))
      .def("uniform_unit", &Rng::uniform_unit)
      .def("uniform_index", &Rng::uniform_index, py::arg("n"));

  m.def(
      "laplace",
      [](double scale, Rng& rng) { return laplace(LaplaceScale(scale), rng); },
      py::arg("scale"), py::arg("rng"), "One Laplace(0, scale) sample from the stream");
  m.def(
      "truncated_laplace",
      [](double scale, double bound, Rng& rng) {
        return truncated_laplace(LaplaceScale(scale), bound, rng);
      },
      py::arg("scale"), py::arg("bound"), py::arg("rng"));

  m.def(
      "search",
      [](std::vector<double> values, double a, double epsilon, double beta, std::uint64_t seed,
         bool exact) {
        const SearchParams params(values.size(), epsilon, beta);
        TracedStore<double> store(std::move(values));
        Rng rng(seed);
        const auto out = do_search(store, a, params, rng, exact);
        py::dict d = search_dict(out);
        d["trace_csv"] = store.trace().to_csv();
        return d;
      },
      py::arg("values"), py::arg("a"), py::arg("epsilon"), py::arg("beta"), py::arg("seed"),
      py::arg("exact") = false,
      "Noisy binary search over a sorted list; returns the rank boundary and trace stats");

  m.def(
      "prefix_sum",
      [](std::vector<double> values, double a, double epsilon, double delta, double beta,
         std::uint64_t seed, bool exact) {
        const SearchParams params(values.size(), epsilon, beta);
        TracedStore<double> store(std::move(values));
        Rng rng(seed);
        const auto out = do_prefix_sum(store, a, epsilon, delta, params, rng, exact);
        py::dict d;
        d["index"] = out.index;
        d["sum"] = out.sum;
        d["probes"] = out.probes;
        d["padded_to"] = out.padded_to;
        d["clamped"] = out.clamped;
        return d;
      },
      py::arg("values"), py::arg("a"), py::arg("epsilon"), py::arg("delta"), py::arg("beta"),
      py::arg("seed"), py::arg("exact") = false,
      "Sum of all records <= a with noise-padded scanning");

  m.def(
      "locate",
      [](std::vector<double> values, double lo, double hi, double epsilon, double delta,
         std::uint64_t seed) {
        const LocateParams params(values.size(), epsilon, delta);
        TracedStore<double> store(std::move(values));
        Rng rng(seed);
        const auto res =
            do_locate(store, [lo, hi](double v) { return v >= lo && v <= hi; }, params, rng);
        py::dict d;
        d["found"] = res.found;
        d["halted_at_checkpoint"] = res.halted_at_checkpoint;
        d["checkpoint"] = res.checkpoint;
        d["probes"] = res.probes;
        return d;
      },
      py::arg("values"), py::arg("lo"), py::arg("hi"), py::arg("epsilon"), py::arg("delta"),
      py::arg("seed"),
      "Whether any record lies in [lo, hi], via the noisy-threshold sampling scan");

  m.def(
      "tester",
      [](std::size_t n, const std::vector<std::pair<std::uint32_t, std::uint32_t>>& edges,
         double epsilon, double delta, double beta, double gamma, std::size_t sample_size,
         std::uint64_t seed) {
        const DenseGraph g = DenseGraph::from_edges(n, edges);
        const BaseTesterConfig cfg(beta, gamma, sample_size);
        const DoTesterParams params(epsilon, delta);
        Rng rng(seed);
        const auto res = do_tester(g, cfg, params, rng);
        py::dict d;
        d["accept"] = res.accept;
        d["base_accepts"] = res.base_accepts;
        d["rounds"] = params.rounds;
        d["probes"] = res.probes;
        return d;
      },
      py::arg("n"), py::arg("edges"), py::arg("epsilon"), py::arg("delta"),
      py::arg("beta") = 2.0 / 3.0, py::arg("gamma") = 0.25, py::arg("sample_size") = 6,
      py::arg("seed") = 1, "DO bipartiteness tester over an edge list");

  py::class_<MultiSearch>(m, "MultiSearch")
      .def(py::init([](std::vector<double> values, double epsilon, double beta) {
             return std::make_unique<MultiSearch>(std::move(values), epsilon, beta);
           }),
           py::arg("values"), py::arg("epsilon"), py::arg("beta"))
      .def(
          "query",
          [](MultiSearch& self, double a, std::uint64_t seed) {
            Rng rng(seed);
            const auto rep = self.answer_query(a, rng);
            py::dict d;
            d["answer"] = rep.answer;
            d["search_invoked"] = rep.search_invoked;
            d["epsilon_spent"] = rep.epsilon_spent;
            d["records_migrated"] = rep.records_migrated;
            d["executions"] = rep.executions;
            d["search_correct"] = rep.search_correct;
            return d;
          },
          py::arg("a"), py::arg("seed"))
      .def_property_readonly("executions", &MultiSearch::executions)
      .def_property_readonly("migrated", &MultiSearch::migrated)
      .def_property_readonly("epsilon_spent",
                             [](const MultiSearch& s) { return s.ledger().spent(); })
      .def_property_readonly("all_searches_correct", &MultiSearch::all_searches_correct)
      .def("oracle_prefix_sum", &MultiSearch::oracle_prefix_sum, py::arg("a"));

  m.def(
      "audit_search",
      [](std::size_t n, double epsilon, double beta, double delta, std::size_t trials,
         std::uint64_t seed) {
        return estimate_dict(audit_search(n, epsilon, beta, delta, trials, seed));
      },
      py::arg("n"), py::arg("epsilon"), py::arg("beta"), py::arg("delta"), py::arg("trials"),
      py::arg("seed"));
  m.def(
      "audit_locate",
      [](std::size_t n, double epsilon, double delta, std::size_t trials, std::uint64_t seed) {
        return estimate_dict(audit_locate(n, epsilon, delta, trials, seed));
      },
      py::arg("n"), py::arg("epsilon"), py::arg("delta"), py::arg("trials"), py::arg("seed"));

  m.def(
      "lowerbound_demo",
      [](std::size_t n, std::size_t q, std::size_t trials, std::uint64_t seed, bool oblivious) {
        const auto rep = lowerbound_demo(n, q, trials, seed, oblivious);
        py::dict d;
        d["n"] = rep.n;
        d["q"] = rep.probe_budget;
        d["trials"] = rep.trials;
        d["adv_h1"] = rep.adv_h1;
        d["adv_h2"] = rep.adv_h2;
        d["ratio"] = rep.ratio;
        return d;
      },
      py::arg("n"), py::arg("q"), py::arg("trials"), py::arg("seed"),
      py::arg("oblivious") = false);

  m.def(
      "cycle_edges",
      [](std::size_t n) { return BoundedDegreeGraph::cycle(n).edges(); },
      py::arg("n"));
  m.def(
      "triangles_edges",
      [](std::size_t n) { return BoundedDegreeGraph::triangles(n).edges(); },
      py::arg("n"));

  m.attr("__version__") = "0.1.0";
}
