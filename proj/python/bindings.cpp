#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "ebench/asymptotics.hpp"
#include "ebench/continuous.hpp"
#include "ebench/error.hpp"
#include "ebench/exact.hpp"
#include "ebench/graph.hpp"
#include "ebench/heuristics.hpp"
#include "ebench/lp_format.hpp"
#include "ebench/planted.hpp"
#include "ebench/thermo.hpp"

namespace py = pybind11;
using namespace ebench;

namespace {

std::map<int, std::uint64_t> dos_counts(const DensityOfStates& d) { return d.counts; }

DensityOfStates dos_from_counts(const std::map<int, std::uint64_t>& counts, int n) {
  DensityOfStates d;
  d.n = n;
  d.counts = counts;
  d.config_space_size = static_cast<double>(d.total());
  return d;
}

CutHistogram histogram_from_counts(const std::map<int, std::uint64_t>& counts) {
  CutHistogram h;
  for (const auto& [k, c] : counts) h.add(k, c);
  return h;
}

}  // namespace

PYBIND11_MODULE(entropy_bench, m) {
  m.doc() = "Max-Cut solvers, density-of-states tools and effective-temperature fitting";

  py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
  py::register_exception<ContractViolation>(m, "ContractViolation", PyExc_ValueError);
  py::register_exception<RangeError>(m, "RangeError", PyExc_ValueError);
  py::register_exception<CapacityError>(m, "CapacityError", PyExc_ValueError);
  py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
  py::register_exception<InsufficientData>(m, "InsufficientData", PyExc_ValueError);
  py::register_exception<UnsupportedConstruct>(m, "UnsupportedConstruct", PyExc_ValueError);
  py::register_exception<LpSyntaxError>(m, "LpSyntaxError", PyExc_ValueError);

  py::class_<Graph>(m, "Graph")
      .def(py::init([](int n, std::vector<Edge> edges) { return Graph::from_edges(n, std::move(edges)); }),
           py::arg("n"), py::arg("edges"))
      .def_property_readonly("n", &Graph::n)
      .def_property_readonly("num_edges", &Graph::num_edges)
      .def_property_readonly("edges", &Graph::edges)
      .def("to_json", [](const Graph& g) { return to_json(g); })
      .def_static("from_json", &graph_from_json)
      .def("__eq__", &Graph::operator==)
      .def("__repr__", [](const Graph& g) {
        return "Graph(n=" + std::to_string(g.n()) + ", m=" + std::to_string(g.num_edges()) + ")";
      });

  m.def("gen_gnp", &gen_gnp, py::arg("n"), py::arg("p"), py::arg("seed") = 42);
  m.def("gen_gnm", &gen_gnm, py::arg("n"), py::arg("m"), py::arg("seed") = 42);
  m.def(
      "cut_value", [](const Graph& g, const std::vector<int>& labels) { return cut_value(g, labels); },
      py::arg("graph"), py::arg("labels"));

  py::class_<ExactSolution>(m, "ExactSolution")
      .def_readonly("best_value", &ExactSolution::best_value)
      .def_property_readonly("labels", [](const ExactSolution& s) { return s.witness.labels; })
      .def_readonly("proven_optimal", &ExactSolution::proven_optimal)
      .def_readonly("nodes_explored", &ExactSolution::nodes_explored);
  m.def("brute_force_maxcut", &brute_force_maxcut, py::arg("graph"), py::arg("workers") = 1,
        py::call_guard<py::gil_scoped_release>());
  m.def("branch_and_bound_maxkcut", &branch_and_bound_maxkcut, py::arg("graph"), py::arg("k"),
        py::arg("time_budget") = 0.0, py::call_guard<py::gil_scoped_release>());
  m.def(
      "density_of_states",
      [](const Graph& g, int workers) { return dos_counts(density_of_states_exact(g, workers)); },
      py::arg("graph"), py::arg("workers") = 1, "Exact 2-cut configuration counts {cut: count}.");

  py::class_<SolverResult>(m, "SolverResult")
      .def_readonly("best_value", &SolverResult::best_value)
      .def_property_readonly("labels", [](const SolverResult& r) { return r.witness.labels; })
      .def_readonly("trace", &SolverResult::trace)
      .def_readonly("iterations", &SolverResult::iterations);
  m.def(
      "simulated_annealing",
      [](const Graph& g, int k, std::uint64_t seed) {
        SaParams p;
        p.seed = seed;
        return simulated_annealing(g, k, p);
      },
      py::arg("graph"), py::arg("k") = 2, py::arg("seed") = 42);
  m.def(
      "tabu_search",
      [](const Graph& g, int k, std::uint64_t seed, int tenure, int max_iterations) {
        TabuParams p;
        p.seed = seed;
        p.tenure = tenure;
        p.max_iterations = max_iterations;
        return tabu_search(g, k, p);
      },
      py::arg("graph"), py::arg("k") = 2, py::arg("seed") = 42, py::arg("tenure") = 7,
      py::arg("max_iterations") = 500);

  py::class_<PlantedGraph>(m, "PlantedGraph")
      .def_readonly("graph", &PlantedGraph::graph)
      .def_property_readonly("bipartition", [](const PlantedGraph& p) { return p.bipartition.labels; })
      .def_property_readonly("witness3", [](const PlantedGraph& p) { return p.witness3.labels; })
      .def_property_readonly("witness4", [](const PlantedGraph& p) { return p.witness4.labels; })
      .def_readonly("attempts", &PlantedGraph::attempts);
  m.def(
      "plant_graph",
      [](int n, int m_edges, int target_cut, int min3, int min4, std::uint64_t seed) {
        PlantedGraphSpec spec{n, m_edges, target_cut, min3, min4, {n / 2, n - n / 2}};
        py::gil_scoped_release release;
        return plant_graph(spec, seed);
      },
      py::arg("n") = 30, py::arg("m") = 233, py::arg("target_cut") = 146, py::arg("min3") = 191,
      py::arg("min4") = 210, py::arg("seed") = 42);

  m.def(
      "gibbs_sample",
      [](const Graph& g, double beta, std::uint64_t samples, std::uint64_t seed) {
        GibbsParams p;
        p.beta = beta;
        p.samples = samples;
        p.seed = seed;
        return gibbs_sample(g, p).counts;
      },
      py::arg("graph"), py::arg("beta"), py::arg("samples") = 10000, py::arg("seed") = 42);
  m.def(
      "predicted_cut_distribution",
      [](const std::map<int, std::uint64_t>& dos, double beta) {
        return predicted_cut_distribution(dos_from_counts(dos, 0), beta);
      },
      py::arg("dos"), py::arg("beta"));
  m.def(
      "fit_beta",
      [](const std::map<int, std::uint64_t>& dos, const std::map<int, std::uint64_t>& histogram) {
        const GibbsFit fit = fit_beta(dos_from_counts(dos, 0), histogram_from_counts(histogram));
        py::dict out;
        out["beta"] = fit.beta;
        out["chi2_reduced"] = fit.chi2_reduced;
        out["dof"] = fit.dof;
        out["at_boundary"] = fit.at_boundary;
        return out;
      },
      py::arg("dos"), py::arg("histogram"));

  m.def("expected_count_gaussian", &expected_count_gaussian, py::arg("n"), py::arg("k"));
  m.def("expected_count_exact", &expected_count_exact, py::arg("n"), py::arg("k"));
  m.def("poisson_pmf", &poisson_pmf, py::arg("lam"), py::arg("m"));
  m.def(
      "gw_failure_bound", [](int n, double beta, double alpha, double c_max) {
        return gw_failure_bound(n, beta, alpha, c_max).raw;
      },
      py::arg("n"), py::arg("beta"), py::arg("alpha"), py::arg("c_max"));
  m.def(
      "gw_gaussian_success",
      [](int n, double beta, double alpha, double p_star) {
        return gw_gaussian_success(n, beta, alpha, p_star).success;
      },
      py::arg("n"), py::arg("beta") = 1.0, py::arg("alpha") = GwParams::alpha_gw,
      py::arg("p_star") = GwParams::p_star);
  m.def("random_guess_ratio", &random_guess_ratio, py::arg("n"), py::arg("c_max"));
  m.def("normal_cdf", &normal_cdf, py::arg("z"));

  m.def("eval_g", &eval_g, py::arg("x"), py::arg("y"));
  m.def("project_simplex", [](const std::vector<double>& v, double r) { return project_simplex(v, r); },
        py::arg("v"), py::arg("radius"));
  m.def(
      "minimize_g",
      [](const std::string& alg, std::uint64_t seed, int population, int iterations) {
        const Objective f = [](std::span<const double> x) { return eval_g(x[0], x[1]); };
        const Region box = Box{{-1.0, -1.0}, {5.0, 5.0}};
        ContinuousResult r;
        if (alg == "pso") {
          PsoParams p;
          p.seed = seed;
          p.population = population;
          p.iterations = iterations;
          r = pso_minimize(f, box, p);
        } else if (alg == "eca") {
          EcaParams p;
          p.seed = seed;
          p.population = population;
          p.iterations = iterations;
          r = eca_minimize(f, box, p);
        } else {
          throw ConfigError("unknown algorithm '" + alg + "'");
        }
        return py::make_tuple(r.best_point, r.best_value);
      },
      py::arg("alg") = "pso", py::arg("seed") = 42, py::arg("population") = 14, py::arg("iterations") = 200);

  m.def(
      "parse_lp",
      [](const std::string& text) {
        const QpInstance q = parse_lp(text);
        py::dict out;
        out["variables"] = q.variables;
        out["sense"] = q.sense == Sense::minimize ? "minimize" : "maximize";
        out["linear"] = q.linear;
        out["quadratic"] = q.quadratic;
        out["constraints"] = q.constraints.size();
        return out;
      },
      py::arg("text"));
  m.def("normalize_lp", [](const std::string& text) { return write_lp(parse_lp(text)); }, py::arg("text"),
        "Parses LP text and writes it back in normalized form.");
}
