#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <variant>
#include <vector>

#include "ebench/graph.hpp"

namespace ebench {

/// Geometric-cooling schedule for simulated annealing.
struct SaParams {
  double t_initial = 10.0;
  double t_final = 0.01;
  double cooling = 0.95;
  /// Moves per temperature level; 0 selects 10 * n.
  int moves_per_temperature = 0;
  std::uint64_t seed = 42;
  /// Recount the cut after every accepted move and throw on mismatch.
  bool verify_incremental = false;

  void validate() const;
};

struct TabuParams {
  int tenure = 7;
  int max_iterations = 500;
  std::uint64_t seed = 42;
  bool verify_incremental = false;

  void validate() const;
};

struct SolverResult {
  int best_value = 0;
  Partition witness;
  /// Incumbent after each iteration (one entry per temperature level for SA).
  std::vector<int> trace;
  double wall_time = 0.0;
  std::int64_t iterations = 0;
  std::uint64_t seed = 0;
};

/// Called after every SA move with (move index, current cut, accepted).
using SaObserver = std::function<void(std::int64_t, int, bool)>;

SolverResult simulated_annealing(const Graph& g, int k, const SaParams& params,
                                 const SaObserver& observer = {});

SolverResult tabu_search(const Graph& g, int k, const TabuParams& params);

/// Algorithm selection for the trial harness. The seed fields of the embedded
/// parameter blocks are ignored; each trial derives its own.
struct AlgorithmSpec {
  std::string name;
  std::variant<SaParams, TabuParams> params;

  /// Accepts "sa" / "simulated_annealing" and "tabu" / "tabu_search".
  static AlgorithmSpec from_name(const std::string& name);
  std::string display_name() const;
};

struct TrialSummary {
  std::string algorithm;
  int k = 2;
  int trials = 0;
  int best = 0;
  double mean = 0.0;
  double success_rate = 0.0;
  double mean_time = 0.0;
  int reference_optimum = 0;
  /// Only exact solvers can set this.
  bool proven = false;
};

struct TrialRun {
  TrialSummary summary;
  std::vector<SolverResult> results;
};

/// Runs `trials` independent solver runs with seeds mix_seed(master_seed, i).
TrialRun run_trials(const AlgorithmSpec& algorithm, const Graph& g, int k, int trials,
                    int reference_optimum, std::uint64_t master_seed, int workers = 1);

std::string trial_csv_header();
std::string trial_csv_row(const TrialSummary& s);
std::string per_trial_csv(const TrialRun& run);
std::string trace_csv(const SolverResult& r);

}  // namespace ebench
