#include "ebench/heuristics.hpp"

#include <algorithm>
#include <cctype>
#include <chrono>
#include <cmath>
#include <limits>

#include "ebench/error.hpp"
#include "ebench/format.hpp"
#include "ebench/parallel.hpp"
#include "ebench/rng.hpp"

namespace ebench {

namespace {

using Clock = std::chrono::steady_clock;

// Labels plus, for every vertex, how many neighbors sit in each part. Moving
// v from a to b changes the cut by count[v][a] - count[v][b].
class KCutState {
 public:
  KCutState(const Graph& g, int k, std::vector<int> labels)
      : g_(g), k_(k), labels_(std::move(labels)), counts_(static_cast<std::size_t>(g.n()) * k, 0) {
    for (int v = 0; v < g.n(); ++v)
      for (int u : g.neighbors(v)) ++counts_[idx(v, labels_[u])];
    cut_ = cut_value(g, labels_);
  }

  int cut() const { return cut_; }
  int label(int v) const { return labels_[v]; }
  const std::vector<int>& labels() const { return labels_; }

  int delta(int v, int to) const { return counts_[idx(v, labels_[v])] - counts_[idx(v, to)]; }

  void move(int v, int to) {
    const int from = labels_[v];
    cut_ += delta(v, to);
    for (int u : g_.neighbors(v)) {
      --counts_[idx(u, from)];
      ++counts_[idx(u, to)];
    }
    labels_[v] = to;
  }

  void check() const {
    if (cut_ != cut_value(g_, labels_))
      throw std::logic_error("incremental cut bookkeeping diverged from recount");
  }

 private:
  std::size_t idx(int v, int c) const { return static_cast<std::size_t>(v) * k_ + c; }

  const Graph& g_;
  int k_;
  std::vector<int> labels_;
  std::vector<int> counts_;
  int cut_ = 0;
};

std::vector<int> random_labels(int n, int k, Rng& rng) {
  std::vector<int> labels(n);
  for (int& x : labels) x = static_cast<int>(uniform_below(rng, static_cast<std::uint64_t>(k)));
  return labels;
}

}  // namespace

void SaParams::validate() const {
  if (!(t_final > 0.0) || !(t_initial > t_final))
    throw ContractViolation("SA schedule needs t_initial > t_final > 0");
  if (!(cooling > 0.0 && cooling < 1.0)) throw ContractViolation("SA cooling must lie in (0, 1)");
  if (moves_per_temperature < 0) throw ContractViolation("SA moves_per_temperature must be >= 0");
}

void TabuParams::validate() const {
  if (tenure < 1) throw ContractViolation("tabu tenure must be >= 1");
  if (max_iterations < 0) throw ContractViolation("tabu max_iterations must be >= 0");
}

SolverResult simulated_annealing(const Graph& g, int k, const SaParams& params,
                                 const SaObserver& observer) {
  params.validate();
  if (k < 2) throw ContractViolation("simulated_annealing: k must be >= 2");
  const auto start = Clock::now();
  Rng rng = make_rng(params.seed);
  const int n = g.n();
  const int moves = params.moves_per_temperature > 0 ? params.moves_per_temperature : 10 * n;
  const int edges = static_cast<int>(g.num_edges());

  KCutState state(g, k, random_labels(n, k, rng));
  SolverResult result;
  result.seed = params.seed;
  int best = state.cut();
  std::vector<int> best_labels = state.labels();

  // accept[d] = exp(-d / T) for a worsening of d edges.
  const int max_drop = g.max_degree();
  std::vector<double> accept(max_drop + 1, 0.0);
  std::int64_t move_index = 0;
  for (double t = params.t_initial; t > params.t_final && best < edges; t *= params.cooling) {
    for (int d = 0; d <= max_drop; ++d) accept[d] = std::exp(-d / t);
    for (int i = 0; i < moves; ++i, ++move_index) {
      const int v = static_cast<int>(uniform_below(rng, static_cast<std::uint64_t>(n)));
      int to = static_cast<int>(uniform_below(rng, static_cast<std::uint64_t>(k - 1)));
      if (to >= state.label(v)) ++to;
      const int d = state.delta(v, to);
      const bool ok = d >= 0 || uniform01(rng) < accept[-d];
      if (ok) {
        state.move(v, to);
        if (params.verify_incremental) state.check();
        if (state.cut() > best) {
          best = state.cut();
          best_labels = state.labels();
        }
      }
      if (observer) observer(move_index, state.cut(), ok);
    }
    result.trace.push_back(best);
  }
  if (result.trace.empty()) result.trace.push_back(best);

  result.best_value = best;
  result.witness = Partition(std::move(best_labels), k);
  result.iterations = move_index;
  result.wall_time = std::chrono::duration<double>(Clock::now() - start).count();
  return result;
}

SolverResult tabu_search(const Graph& g, int k, const TabuParams& params) {
  params.validate();
  if (k < 2) throw ContractViolation("tabu_search: k must be >= 2");
  const auto start = Clock::now();
  Rng rng = make_rng(params.seed);
  const int n = g.n();
  const int edges = static_cast<int>(g.num_edges());

  KCutState state(g, k, random_labels(n, k, rng));
  std::vector<std::int64_t> tabu_until(static_cast<std::size_t>(n) * k, 0);
  SolverResult result;
  result.seed = params.seed;
  int best = state.cut();
  std::vector<int> best_labels = state.labels();

  std::int64_t it = 0;
  for (; it < params.max_iterations && best < edges; ++it) {
    int move_v = -1, move_to = -1;
    int move_delta = std::numeric_limits<int>::min();
    for (int v = 0; v < n; ++v) {
      const int from = state.label(v);
      for (int to = 0; to < k; ++to) {
        if (to == from) continue;
        const int d = state.delta(v, to);
        if (d <= move_delta) continue;
        const bool tabu = tabu_until[static_cast<std::size_t>(v) * k + to] > it;
        if (tabu && state.cut() + d <= best) continue;  // aspiration overrides tabu
        move_v = v;
        move_to = to;
        move_delta = d;
      }
    }
    if (move_v < 0) {
      result.trace.push_back(best);
      continue;
    }
    const int from = state.label(move_v);
    state.move(move_v, move_to);
    if (params.verify_incremental) state.check();
    tabu_until[static_cast<std::size_t>(move_v) * k + from] = it + 1 + params.tenure;
    if (state.cut() > best) {
      best = state.cut();
      best_labels = state.labels();
    }
    result.trace.push_back(best);
  }
  if (result.trace.empty()) result.trace.push_back(best);

  result.best_value = best;
  result.witness = Partition(std::move(best_labels), k);
  result.iterations = it;
  result.wall_time = std::chrono::duration<double>(Clock::now() - start).count();
  return result;
}

AlgorithmSpec AlgorithmSpec::from_name(const std::string& raw) {
  std::string name = raw;
  std::ranges::transform(name, name.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (name == "sa" || name == "simulated_annealing") return {"sa", SaParams{}};
  if (name == "tabu" || name == "tabu_search") return {"tabu", TabuParams{}};
  throw ConfigError("unknown algorithm '" + raw + "' (expected sa or tabu)");
}

std::string AlgorithmSpec::display_name() const {
  return std::holds_alternative<SaParams>(params) ? "simulated_annealing" : "tabu_search";
}

TrialRun run_trials(const AlgorithmSpec& algorithm, const Graph& g, int k, int trials,
                    int reference_optimum, std::uint64_t master_seed, int workers) {
  if (trials < 1) throw ContractViolation("run_trials: trials must be >= 1");
  std::visit([](const auto& p) { p.validate(); }, algorithm.params);

  TrialRun run;
  run.results.resize(trials);
  parallel_for(static_cast<std::size_t>(trials), workers, [&](std::size_t i) {
    const std::uint64_t seed = mix_seed(master_seed, i);
    if (const auto* sa = std::get_if<SaParams>(&algorithm.params)) {
      SaParams p = *sa;
      p.seed = seed;
      run.results[i] = simulated_annealing(g, k, p);
    } else {
      TabuParams p = std::get<TabuParams>(algorithm.params);
      p.seed = seed;
      run.results[i] = tabu_search(g, k, p);
    }
  });

  auto& s = run.summary;
  s.algorithm = algorithm.display_name();
  s.k = k;
  s.trials = trials;
  s.reference_optimum = reference_optimum;
  s.best = 0;
  double sum = 0.0, time = 0.0;
  int hits = 0;
  for (const auto& r : run.results) {
    s.best = std::max(s.best, r.best_value);
    sum += r.best_value;
    time += r.wall_time;
    hits += r.best_value >= reference_optimum;
  }
  s.mean = sum / trials;
  s.success_rate = static_cast<double>(hits) / trials;
  s.mean_time = time / trials;
  return run;
}

std::string trial_csv_header() {
  return "algorithm,k,best,mean,success_rate,mean_time_s,trials,reference_optimum,proven\n";
}

std::string trial_csv_row(const TrialSummary& s) {
  return s.algorithm + "," + std::to_string(s.k) + "," + std::to_string(s.best) + "," +
         format_double(s.mean) + "," + format_double(s.success_rate) + "," +
         format_double(s.mean_time) + "," + std::to_string(s.trials) + "," +
         std::to_string(s.reference_optimum) + "," + (s.proven ? "1" : "0") + "\n";
}

std::string per_trial_csv(const TrialRun& run) {
  std::string out = "trial,seed,best_value,iterations,wall_time_s\n";
  for (std::size_t i = 0; i < run.results.size(); ++i) {
    const auto& r = run.results[i];
    out += std::to_string(i) + "," + std::to_string(r.seed) + "," + std::to_string(r.best_value) +
           "," + std::to_string(r.iterations) + "," + format_double(r.wall_time) + "\n";
  }
  return out;
}

std::string trace_csv(const SolverResult& r) {
  std::string out = "iteration,incumbent\n";
  for (std::size_t i = 0; i < r.trace.size(); ++i)
    out += std::to_string(i) + "," + std::to_string(r.trace[i]) + "\n";
  return out;
}

}  // namespace ebench
