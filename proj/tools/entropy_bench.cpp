// entropy_bench: command-line front end for the benchmark library.
//
// Exit codes: 0 success, 1 usage or I/O error, 2 analytic failure
// (construction or verification failed, fit underdetermined).

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "ebench/asymptotics.hpp"
#include "ebench/continuous.hpp"
#include "ebench/error.hpp"
#include "ebench/exact.hpp"
#include "ebench/format.hpp"
#include "ebench/graph.hpp"
#include "ebench/heuristics.hpp"
#include "ebench/lp_format.hpp"
#include "ebench/parallel.hpp"
#include "ebench/planted.hpp"
#include "ebench/thermo.hpp"

using namespace ebench;

namespace {

/// Raised for outcomes that map to exit code 2.
struct AnalyticFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

/// Writes to `path`, or to standard output when the path is empty or "-".
void emit(const std::string& path, const std::string& content) {
  if (path.empty() || path == "-") {
    std::cout << content << std::flush;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path);
  out << content;
  if (!out) throw IoError("write failed for " + path);
}

void note(const std::string& line) { std::cerr << line << "\n"; }

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

std::vector<double> parse_pair(const std::string& text, const std::string& flag) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(parse_double(item));
  if (out.size() != 2) throw ConfigError(flag + " expects two comma-separated numbers");
  return out;
}

struct Common {
  std::uint64_t seed = 42;
  int workers = 0;

  int resolved_workers() const { return workers > 0 ? workers : default_workers(); }
};

void add_common(CLI::App* cmd, Common& c) {
  cmd->add_option("--seed", c.seed, "Master seed")->capture_default_str();
  cmd->add_option("--workers", c.workers,
                  "Worker threads (default: ENTROPY_BENCH_WORKERS or hardware concurrency)");
}

// ---------------------------------------------------------------- gen

struct GenArgs {
  Common common;
  int n = 30;
  std::optional<std::int64_t> m;
  double p = 0.5;
  std::string output;
  std::string dimacs;
};

int cmd_gen(const GenArgs& a) {
  const Graph g = a.m ? gen_gnm(a.n, *a.m, a.common.seed) : gen_gnp(a.n, a.p, a.common.seed);
  emit(a.output, to_json(g));
  if (!a.dimacs.empty()) emit(a.dimacs, to_dimacs(g));
  note("gen: n=" + std::to_string(g.n()) + " m=" + std::to_string(g.num_edges()));
  return 0;
}

// ---------------------------------------------------------------- plant

struct SpecArgs {
  std::string preset;
  int n = 0, m = 0, target = 0, min3 = 0, min4 = 0;
  std::string sides;

  PlantedGraphSpec resolve(int fallback_n = 0, int fallback_m = 0) const {
    PlantedGraphSpec s;
    if (preset == "paper30") {
      s = PlantedGraphSpec::paper30();
    } else if (!preset.empty()) {
      throw ConfigError("unknown preset '" + preset + "'");
    } else {
      s.n = n > 0 ? n : fallback_n;
      s.m = m > 0 ? m : fallback_m;
      s.side_sizes = {s.n / 2, s.n - s.n / 2};
    }
    if (target > 0) s.target_cut = target;
    if (min3 > 0) s.min_3cut = min3;
    if (min4 > 0) s.min_4cut = min4;
    if (!sides.empty()) {
      const auto v = parse_pair(sides, "--sides");
      s.side_sizes = {static_cast<int>(v[0]), static_cast<int>(v[1])};
    }
    return s;
  }
};

void add_spec(CLI::App* cmd, SpecArgs& s) {
  cmd->add_option("--preset", s.preset, "Named instance (paper30: n=30 m=233 cut 146, 3-cut 191, 4-cut 210)");
  cmd->add_option("--n", s.n, "Vertex count");
  cmd->add_option("--m", s.m, "Edge count");
  cmd->add_option("--target-cut", s.target, "Exact Max-2-Cut to plant or verify");
  cmd->add_option("--min3", s.min3, "Lower bound on Max-3-Cut");
  cmd->add_option("--min4", s.min4, "Lower bound on Max-4-Cut");
  cmd->add_option("--sides", s.sides, "Planted side sizes a,b");
}

struct PlantArgs {
  Common common;
  SpecArgs spec;
  int max_attempts = 1000;
  std::string output = "planted.json";
  std::string witness;
  std::string dimacs;
};

std::string witness_path_for(const std::string& graph_path) {
  const auto dot = graph_path.rfind(".json");
  return (dot == std::string::npos ? graph_path : graph_path.substr(0, dot)) + ".witness.json";
}

int cmd_plant(const PlantArgs& a) {
  const PlantedGraphSpec spec = a.spec.resolve();
  PlantOptions opt;
  opt.max_attempts = a.max_attempts;
  opt.workers = a.common.resolved_workers();
  const auto start = std::chrono::steady_clock::now();
  try {
    const PlantedGraph pg = plant_graph(spec, a.common.seed, opt);
    emit(a.output, to_json(pg.graph));
    emit(a.witness.empty() ? witness_path_for(a.output) : a.witness, witnesses_to_json(pg));
    if (!a.dimacs.empty()) emit(a.dimacs, to_dimacs(pg.graph));
    note("plant: max 2-cut " + std::to_string(spec.target_cut) + ", 3-cut witness " +
         std::to_string(pg.witness3.labels.empty() ? 0 : cut_value(pg.graph, pg.witness3)) + ", 4-cut witness " +
         std::to_string(pg.witness4.labels.empty() ? 0 : cut_value(pg.graph, pg.witness4)) + ", attempts " +
         std::to_string(pg.attempts) + ", repairs " + std::to_string(pg.repairs) + ", " +
         format_fixed(seconds_since(start), 2) + " s");
    return 0;
  } catch (const ConstructionFailed& e) {
    throw AnalyticFailure(std::string("plant: ") + e.what());
  }
}

// ---------------------------------------------------------------- verify

struct VerifyArgs {
  Common common;
  SpecArgs spec;
  std::string graph;
  std::string witness;
  int trials = 20;
  std::string output;
};

int cmd_verify(const VerifyArgs& a) {
  const Graph g = load_graph(a.graph);
  PlantedGraphSpec spec = a.spec.resolve(g.n(), static_cast<int>(g.num_edges()));
  if (spec.target_cut <= 0) throw ConfigError("verify needs --target-cut or --preset");
  std::vector<Partition> witnesses;
  if (!a.witness.empty()) witnesses = witnesses_from_json(read_file(a.witness));
  VerifyOptions opt;
  opt.heuristic_trials = a.trials;
  opt.seed = a.common.seed;
  opt.workers = a.common.resolved_workers();
  const auto rep = verify_planted(g, spec, witnesses, opt);
  emit(a.output, rep.to_json());
  note(std::string("verify: ") + (rep.pass ? "pass" : "FAIL") + " (max 2-cut " + std::to_string(rep.max2cut) +
       ", best 3-cut " + std::to_string(rep.best_3cut) + ", best 4-cut " + std::to_string(rep.best_4cut) + ")");
  if (!rep.pass) throw AnalyticFailure("verification failed");
  return 0;
}

// ---------------------------------------------------------------- solve

struct HeuristicArgs {
  SaParams sa;
  TabuParams tabu;
};

void add_heuristic(CLI::App* cmd, HeuristicArgs& h) {
  cmd->add_option("--t-initial", h.sa.t_initial, "SA initial temperature")->capture_default_str();
  cmd->add_option("--t-final", h.sa.t_final, "SA final temperature")->capture_default_str();
  cmd->add_option("--cooling", h.sa.cooling, "SA geometric cooling factor")->capture_default_str();
  cmd->add_option("--moves", h.sa.moves_per_temperature, "SA moves per temperature (0: 10 n)")
      ->capture_default_str();
  cmd->add_option("--tenure", h.tabu.tenure, "Tabu tenure")->capture_default_str();
  cmd->add_option("--max-iter", h.tabu.max_iterations, "Tabu iterations")->capture_default_str();
}

AlgorithmSpec heuristic_spec(const std::string& name, const HeuristicArgs& h) {
  AlgorithmSpec spec = AlgorithmSpec::from_name(name);
  if (std::holds_alternative<SaParams>(spec.params))
    spec.params = h.sa;
  else
    spec.params = h.tabu;
  return spec;
}

TrialSummary exact_summary(const std::string& name, int k, const ExactSolution& s) {
  TrialSummary t;
  t.algorithm = name;
  t.k = k;
  t.trials = 1;
  t.best = s.best_value;
  t.mean = s.best_value;
  t.success_rate = 1.0;
  t.mean_time = s.wall_time;
  t.reference_optimum = s.best_value;
  t.proven = s.proven_optimal;
  return t;
}

void rescore(TrialRun& run, int reference) {
  int hits = 0;
  for (const auto& r : run.results) hits += r.best_value >= reference;
  run.summary.reference_optimum = reference;
  run.summary.success_rate = static_cast<double>(hits) / static_cast<double>(run.results.size());
}

struct SolveArgs {
  Common common;
  HeuristicArgs heuristic;
  std::string graph;
  std::string alg = "tabu";
  int k = 2;
  int trials = 100;
  std::optional<int> reference;
  double budget = 0.0;
  std::string output;
  std::string per_trial;
  std::string trace;
};

int cmd_solve(const SolveArgs& a) {
  const Graph g = load_graph(a.graph);
  std::string csv = trial_csv_header();
  if (a.alg == "exact") {
    if (a.k != 2) throw ConfigError("--alg exact handles k = 2 only; use --alg bb for k > 2");
    csv += trial_csv_row(exact_summary("exact", 2, brute_force_maxcut(g, a.common.resolved_workers())));
  } else if (a.alg == "bb") {
    auto s = branch_and_bound_maxkcut(g, a.k, a.budget);
    if (!s.proven_optimal) note("solve: time budget exhausted, value is a lower bound");
    csv += trial_csv_row(exact_summary("branch_and_bound", a.k, s));
  } else {
    const AlgorithmSpec spec = heuristic_spec(a.alg, a.heuristic);
    TrialRun run = run_trials(spec, g, a.k, a.trials, a.reference.value_or(0), a.common.seed,
                              a.common.resolved_workers());
    rescore(run, a.reference.value_or(run.summary.best));
    csv += trial_csv_row(run.summary);
    if (!a.per_trial.empty()) emit(a.per_trial, per_trial_csv(run));
    if (!a.trace.empty()) {
      const auto best = std::find_if(run.results.begin(), run.results.end(),
                                     [&](const SolverResult& r) { return r.best_value == run.summary.best; });
      emit(a.trace, trace_csv(*best));
    }
  }
  emit(a.output, csv);
  return 0;
}

// ---------------------------------------------------------------- dos

struct DosArgs {
  Common common;
  std::string graph;
  int k = 2;
  bool monte_carlo = false;
  std::uint64_t samples = 1000000;
  std::string output;
  std::string meta;
};

int cmd_dos(const DosArgs& a) {
  const Graph g = load_graph(a.graph);
  const bool exact = a.k == 2 && !a.monte_carlo;
  if (exact && g.n() > kMaxEnumerationOrder)
    throw ConfigError("exact DOS needs n <= 32; pass --mc for sampling");
  const DensityOfStates dos = exact ? density_of_states_exact(g, a.common.resolved_workers())
                                    : dos_monte_carlo(g, a.k, a.samples, a.common.seed, a.common.resolved_workers());
  emit(a.output, dos_to_csv(dos));
  if (!a.meta.empty()) emit(a.meta, dos_metadata_json(dos));
  return 0;
}

// ---------------------------------------------------------------- gibbs

struct GibbsArgs {
  Common common;
  std::string graph;
  GibbsParams params;
  std::string output;
};

int cmd_gibbs(GibbsArgs a) {
  const Graph g = load_graph(a.graph);
  a.params.seed = a.common.seed;
  emit(a.output, histogram_to_csv(gibbs_sample(g, a.params, a.common.resolved_workers())));
  return 0;
}

// ---------------------------------------------------------------- fit

struct FitArgs {
  std::string dos;
  std::string histogram;
  std::string output;
};

int cmd_fit(const FitArgs& a) {
  const DensityOfStates dos = dos_from_csv(read_file(a.dos));
  const CutHistogram hist = histogram_from_csv(read_file(a.histogram));
  GibbsFit fit;
  try {
    fit = fit_beta(dos, hist);
  } catch (const InsufficientData& e) {
    throw AnalyticFailure(std::string("fit: ") + e.what());
  }
  if (fit.at_boundary) note("fit: warning, beta sits at the end of the search interval");
  if (a.output.empty() || a.output == "-")
    std::cout << fit_to_json(fit);
  else
    emit(a.output, fit_to_json(fit));
  std::cout << "beta=" << format_double(fit.beta) << " chi2_red=" << format_double(fit.chi2_reduced) << "\n";
  return 0;
}

// ---------------------------------------------------------------- poisson

struct PoissonArgs {
  Common common;
  int n = 10;
  std::optional<int> k;
  double lambda_target = 1.0;
  std::uint64_t graphs = 2000;
  std::string output;
};

int cmd_poisson(const PoissonArgs& a) {
  const int k = a.k ? *a.k : tail_cut_for_lambda(a.n, a.lambda_target);
  const auto rep = poisson_limit_check(a.n, k, a.graphs, a.common.seed, a.common.resolved_workers());
  if (rep.regime_warning)
    note("poisson: warning, lambda " + format_double(rep.lambda_exact) + " lies outside [0.2, 5]");
  emit(a.output, rep.to_json());
  return 0;
}

// ---------------------------------------------------------------- gw

struct GwArgs {
  std::vector<int> ns{30, 60, 120, 240};
  double beta = 1.0;
  double alpha = GwParams::alpha_gw;
  double p_star = GwParams::p_star;
  std::string output;
};

int cmd_gw(const GwArgs& a) {
  emit(a.output, gw_sweep_csv(a.ns, a.beta, a.alpha, a.p_star));
  note("gw: random guess reaches 16/17 of n^2/8 + P* n^1.5/4 from n = " +
       std::to_string(random_guess_threshold_n(GwParams::hastad, a.p_star)));
  return 0;
}

// ---------------------------------------------------------------- poly

struct PolyArgs {
  Common common;
  std::string lp;
  std::string objective;
  double penalty = 10.0;
  std::string alg = "pso";
  int population = 14;
  int iterations = 200;
  std::string box;
  std::optional<double> simplex;
  std::string init;
  std::string output;
};

int cmd_poly(const PolyArgs& a) {
  if (!a.lp.empty() && !a.objective.empty()) throw ConfigError("--lp and --objective are exclusive");
  Objective f;
  std::optional<Region> region;
  std::optional<QpReduction> reduction;
  std::optional<QpInstance> qp;
  int dim = 2;

  if (!a.lp.empty()) {
    qp = load_lp(a.lp);
    reduction = qp_to_polynomial(*qp, a.penalty);
    dim = static_cast<int>(qp->variables.size());
    f = [&](std::span<const double> x) { return reduction->value(x); };
    const auto& b = reduction->bounds;
    const bool finite = std::all_of(b.lower.begin(), b.lower.end(), [](double v) { return std::isfinite(v); }) &&
                        std::all_of(b.upper.begin(), b.upper.end(), [](double v) { return std::isfinite(v); });
    if (finite) region = b;
  } else if (!a.objective.empty()) {
    auto obj = std::make_shared<PolynomialObjective>(polynomial_from_json(read_file(a.objective)));
    dim = obj->dimension;
    f = [obj](std::span<const double> x) { return eval_polynomial(*obj, x); };
    if (obj->radius) region = Simplex{dim, *obj->radius};
  } else {
    f = [](std::span<const double> x) { return eval_g(x[0], x[1]); };
    region = Box{{-1.0, -1.0}, {5.0, 5.0}};
  }
  if (!a.box.empty()) {
    const auto v = parse_pair(a.box, "--box");
    region = Box{std::vector<double>(dim, v[0]), std::vector<double>(dim, v[1])};
  }
  if (a.simplex) region = Simplex{dim, *a.simplex};
  if (!region) throw ConfigError("unbounded variables: pass --box lo,hi or --simplex R");

  std::vector<std::vector<double>> start;
  if (a.init == "near-minima") {
    if (!a.lp.empty() || !a.objective.empty()) throw ConfigError("--init near-minima applies to g only");
    start = clustered_start({{0.0, 3.0}, {3.0, 0.0}, {3.0, 3.0}}, a.population, 0.5, mix_seed(a.common.seed, 1));
  } else if (!a.init.empty() && a.init != "uniform") {
    throw ConfigError("unknown --init '" + a.init + "'");
  }

  ContinuousResult r;
  if (a.alg == "pso") {
    PsoParams p;
    p.population = a.population;
    p.iterations = a.iterations;
    p.seed = a.common.seed;
    p.initial_positions = start;
    r = pso_minimize(f, *region, p);
  } else if (a.alg == "eca") {
    EcaParams p;
    p.population = a.population;
    p.iterations = a.iterations;
    p.seed = a.common.seed;
    p.initial_positions = start;
    r = eca_minimize(f, *region, p);
  } else {
    throw ConfigError("unknown --alg '" + a.alg + "' (pso or eca)");
  }

  auto j = nlohmann::ordered_json::parse(continuous_result_to_json(r));
  if (qp) {
    j["variables"] = qp->variables;
    j["max_violation"] = reduction->max_violation(r.best_point);
  }
  emit(a.output, j.dump(2) + "\n");
  return 0;
}

// ---------------------------------------------------------------- bench

struct BenchArgs {
  Common common;
  SpecArgs spec;
  HeuristicArgs heuristic;
  int trials = 100;
  double budget = 30.0;
  std::string output = "bench.csv";
  std::string summary;
  std::string graph_out;
};

int cmd_bench(const BenchArgs& a) {
  PlantedGraphSpec spec = a.spec.resolve();
  if (a.spec.preset.empty() && spec.target_cut <= 0) spec = PlantedGraphSpec::paper30();
  const int workers = a.common.resolved_workers();
  PlantOptions popt;
  popt.workers = workers;
  note("bench: planting instance");
  PlantedGraph pg;
  try {
    pg = plant_graph(spec, a.common.seed, popt);
  } catch (const ConstructionFailed& e) {
    throw AnalyticFailure(std::string("bench: ") + e.what());
  }
  const Graph& g = pg.graph;
  if (!a.graph_out.empty()) emit(a.graph_out, to_json(g));

  std::vector<TrialSummary> rows;
  note("bench: exact Max-2-Cut");
  const ExactSolution exact2 = brute_force_maxcut(g, workers);
  rows.push_back(exact_summary("exact", 2, exact2));
  int reference[5] = {0, 0, exact2.best_value, 0, 0};
  bool proven[5] = {false, false, true, false, false};
  for (int k : {3, 4}) {
    note("bench: branch and bound k=" + std::to_string(k));
    const ExactSolution bb = branch_and_bound_maxkcut(g, k, a.budget);
    rows.push_back(exact_summary("branch_and_bound", k, bb));
    reference[k] = bb.best_value;
    proven[k] = bb.proven_optimal;
  }

  std::vector<TrialRun> runs;
  for (const char* name : {"sa", "tabu"}) {
    const AlgorithmSpec alg = heuristic_spec(name, a.heuristic);
    for (int k : {2, 3, 4}) {
      note("bench: " + alg.display_name() + " k=" + std::to_string(k));
      runs.push_back(run_trials(alg, g, k, a.trials, reference[k], mix_seed(a.common.seed, 100 + k), workers));
      if (!proven[k]) reference[k] = std::max(reference[k], runs.back().summary.best);
    }
  }
  // Unproven references are the best value any method found.
  for (auto& row : rows)
    if (!row.proven) row.reference_optimum = reference[row.k];
  for (auto& run : runs) rescore(run, reference[run.summary.k]);

  std::string csv = trial_csv_header();
  for (const auto& row : rows) csv += trial_csv_row(row);
  for (const auto& run : runs) csv += trial_csv_row(run.summary);
  emit(a.output, csv);

  std::ostringstream text;
  text << "instance: n=" << g.n() << " m=" << g.num_edges() << ", planted max 2-cut " << spec.target_cut
       << " (exact check " << exact2.best_value << "), witness 3-cut " << cut_value(g, pg.witness3)
       << ", witness 4-cut " << cut_value(g, pg.witness4) << "\n";
  char line[160];
  std::snprintf(line, sizeof line, "%-20s %2s %6s %8s %8s %12s %10s\n", "algorithm", "k", "best", "mean",
                "success", "time/trial", "reference");
  text << line;
  auto print = [&](const TrialSummary& s) {
    std::snprintf(line, sizeof line, "%-20s %2d %6d %8.2f %8.2f %11.4fs %9d%s\n", s.algorithm.c_str(), s.k, s.best,
                  s.mean, s.success_rate, s.mean_time, s.reference_optimum,
                  s.proven || proven[s.k] ? "" : "*");
    text << line;
  };
  for (const auto& row : rows) print(row);
  for (const auto& run : runs) print(run.summary);
  text << "* best known value; optimality not proven within the time budget\n";
  if (a.summary.empty())
    std::cout << text.str();
  else
    emit(a.summary, text.str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Max-Cut entropy benchmark toolkit"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "entropy_bench 0.1.0");

  GenArgs gen;
  auto* c_gen = app.add_subcommand("gen", "Generate a G(n,p) or G(n,m) random graph");
  add_common(c_gen, gen.common);
  c_gen->add_option("--n", gen.n, "Vertex count")->capture_default_str();
  c_gen->add_option("--m", gen.m, "Edge count (uniform G(n,m)); overrides --p");
  c_gen->add_option("--p", gen.p, "Edge probability for G(n,p)")->capture_default_str();
  c_gen->add_option("-o,--output", gen.output, "Graph JSON path (default: stdout)");
  c_gen->add_option("--dimacs", gen.dimacs, "Also write DIMACS to this path");

  PlantArgs plant;
  auto* c_plant = app.add_subcommand("plant", "Construct a graph with a planted maximum cut");
  add_common(c_plant, plant.common);
  add_spec(c_plant, plant.spec);
  c_plant->add_option("--max-attempts", plant.max_attempts, "Exact verification budget")->capture_default_str();
  c_plant->add_option("-o,--output", plant.output, "Graph JSON path")->capture_default_str();
  c_plant->add_option("--witness", plant.witness, "Witness JSON path (default: <output>.witness.json)");
  c_plant->add_option("--dimacs", plant.dimacs, "Also write DIMACS to this path");

  VerifyArgs verify;
  auto* c_verify = app.add_subcommand("verify", "Check a graph against planted-cut targets");
  add_common(c_verify, verify.common);
  add_spec(c_verify, verify.spec);
  c_verify->add_option("graph", verify.graph, "Graph file (JSON or DIMACS)")->required();
  c_verify->add_option("--witness", verify.witness, "Witness JSON written by plant");
  c_verify->add_option("--trials", verify.trials, "Heuristic trials for 3- and 4-cuts")->capture_default_str();
  c_verify->add_option("-o,--output", verify.output, "Report JSON path (default: stdout)");

  SolveArgs solve;
  auto* c_solve = app.add_subcommand("solve", "Run a solver and emit a summary CSV row");
  add_common(c_solve, solve.common);
  add_heuristic(c_solve, solve.heuristic);
  c_solve->add_option("graph", solve.graph, "Graph file (JSON or DIMACS)")->required();
  c_solve->add_option("--alg", solve.alg, "sa, tabu, exact (k=2 enumeration) or bb (branch and bound)")
      ->capture_default_str();
  c_solve->add_option("--k", solve.k, "Number of parts")->capture_default_str();
  c_solve->add_option("--trials", solve.trials, "Independent heuristic trials")->capture_default_str();
  c_solve->add_option("--reference", solve.reference, "Reference optimum for success rate (default: best found)");
  c_solve->add_option("--budget", solve.budget, "Branch-and-bound time budget in seconds (0: unlimited)")
      ->capture_default_str();
  c_solve->add_option("-o,--output", solve.output, "Summary CSV path (default: stdout)");
  c_solve->add_option("--per-trial", solve.per_trial, "Per-trial CSV path");
  c_solve->add_option("--trace", solve.trace, "Incumbent trace CSV of the best trial");

  DosArgs dos;
  auto* c_dos = app.add_subcommand("dos", "Density of states (exact for k=2, sampled otherwise)");
  add_common(c_dos, dos.common);
  c_dos->add_option("graph", dos.graph, "Graph file")->required();
  c_dos->add_option("--k", dos.k, "Number of parts")->capture_default_str();
  c_dos->add_flag("--mc", dos.monte_carlo, "Sample even when k = 2");
  c_dos->add_option("--samples", dos.samples, "Monte-Carlo samples")->capture_default_str();
  c_dos->add_option("-o,--output", dos.output, "DOS CSV path (default: stdout)");
  c_dos->add_option("--meta", dos.meta, "Metadata JSON path");

  GibbsArgs gibbs;
  auto* c_gibbs = app.add_subcommand("gibbs", "Metropolis sampling of cut values at inverse temperature beta");
  add_common(c_gibbs, gibbs.common);
  c_gibbs->add_option("graph", gibbs.graph, "Graph file")->required();
  c_gibbs->add_option("--beta", gibbs.params.beta, "Inverse temperature")->capture_default_str();
  c_gibbs->add_option("--samples", gibbs.params.samples, "Recorded samples")->capture_default_str();
  c_gibbs->add_option("--burn-in", gibbs.params.burn_in, "Burn-in steps per chain (default 100 n)");
  c_gibbs->add_option("--thinning", gibbs.params.thinning, "Steps between samples (default n)");
  c_gibbs->add_option("--chains", gibbs.params.chains, "Independent chains")->capture_default_str();
  c_gibbs->add_option("-o,--output", gibbs.output, "Histogram CSV path (default: stdout)");

  FitArgs fit;
  auto* c_fit = app.add_subcommand("fit", "Fit the effective inverse temperature of a cut histogram");
  c_fit->add_option("dos", fit.dos, "DOS CSV (k,count)")->required();
  c_fit->add_option("histogram", fit.histogram, "Histogram CSV (k,frequency)")->required();
  c_fit->add_option("-o,--output", fit.output, "Fit JSON path (default: stdout)");

  PoissonArgs poisson;
  auto* c_poisson = app.add_subcommand("poisson", "Moments of the tail configuration count over G(n,1/2)");
  add_common(c_poisson, poisson.common);
  c_poisson->add_option("--n", poisson.n, "Vertex count")->capture_default_str();
  c_poisson->add_option("--k", poisson.k, "Cut value (overrides --lambda-target)");
  c_poisson->add_option("--lambda-target", poisson.lambda_target, "Pick the tail k with this expected count")
      ->capture_default_str();
  c_poisson->add_option("--graphs", poisson.graphs, "Sampled graphs (>= 100)")->capture_default_str();
  c_poisson->add_option("-o,--output", poisson.output, "Report JSON path (default: stdout)");

  GwArgs gw;
  auto* c_gw = app.add_subcommand("gw", "Sweep the Goemans-Williamson threshold formulas over n");
  c_gw->add_option("--n", gw.ns, "Vertex counts")->delimiter(',')->capture_default_str();
  c_gw->add_option("--beta", gw.beta, "Inverse temperature")->capture_default_str();
  c_gw->add_option("--alpha", gw.alpha, "Approximation ratio")->capture_default_str();
  c_gw->add_option("--p-star", gw.p_star, "Ground-state constant")->capture_default_str();
  c_gw->add_option("-o,--output", gw.output, "Sweep CSV path (default: stdout)");

  PolyArgs poly;
  auto* c_poly = app.add_subcommand("poly", "Minimize g(x,y), a polynomial JSON or an LP-format QP");
  add_common(c_poly, poly.common);
  c_poly->add_option("--lp", poly.lp, "LP-format quadratic program");
  c_poly->add_option("--objective", poly.objective, "Polynomial objective JSON");
  c_poly->add_option("--penalty", poly.penalty, "Constraint penalty weight for --lp")->capture_default_str();
  c_poly->add_option("--alg", poly.alg, "pso or eca")->capture_default_str();
  c_poly->add_option("--population", poly.population, "Population size")->capture_default_str();
  c_poly->add_option("--iterations", poly.iterations, "Iterations")->capture_default_str();
  c_poly->add_option("--box", poly.box, "Box lo,hi applied to every coordinate");
  c_poly->add_option("--simplex", poly.simplex, "Constrain to {x >= 0, sum x = R}");
  c_poly->add_option("--init", poly.init, "uniform or near-minima (g only: around (0,3), (3,0), (3,3))");
  c_poly->add_option("-o,--output", poly.output, "Result JSON path (default: stdout)");

  BenchArgs bench;
  auto* c_bench = app.add_subcommand("bench", "Plant an instance and compare exact and heuristic solvers");
  add_common(c_bench, bench.common);
  add_spec(c_bench, bench.spec);
  add_heuristic(c_bench, bench.heuristic);
  c_bench->add_option("--trials", bench.trials, "Trials per heuristic and k")->capture_default_str();
  c_bench->add_option("--budget", bench.budget, "Branch-and-bound seconds per k")->capture_default_str();
  c_bench->add_option("-o,--output", bench.output, "Combined CSV path")->capture_default_str();
  c_bench->add_option("--summary", bench.summary, "Text summary path (default: stdout)");
  c_bench->add_option("--graph-out", bench.graph_out, "Save the planted graph here");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (c_gen->parsed()) return cmd_gen(gen);
    if (c_plant->parsed()) return cmd_plant(plant);
    if (c_verify->parsed()) return cmd_verify(verify);
    if (c_solve->parsed()) return cmd_solve(solve);
    if (c_dos->parsed()) return cmd_dos(dos);
    if (c_gibbs->parsed()) return cmd_gibbs(gibbs);
    if (c_fit->parsed()) return cmd_fit(fit);
    if (c_poisson->parsed()) return cmd_poisson(poisson);
    if (c_gw->parsed()) return cmd_gw(gw);
    if (c_poly->parsed()) return cmd_poly(poly);
    if (c_bench->parsed()) return cmd_bench(bench);
  } catch (const AnalyticFailure& e) {
    std::cerr << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
