#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ebench/graph.hpp"

namespace ebench {

enum class DosKind { exact, monte_carlo };

std::string to_string(DosKind kind);

/// Configuration count Omega(c) per cut value c.
///
/// Exact 2-cut tables count complement-identified configurations (vertex 0
/// pinned), so they sum to 2^(n-1). Monte-Carlo tables hold raw tallies over
/// ordered k-labelings and sum to `samples`; config_space_size is k^n there.
struct DensityOfStates {
  int n = 0;
  int k = 2;
  std::map<int, std::uint64_t> counts;
  DosKind kind = DosKind::exact;
  std::uint64_t samples = 0;
  double config_space_size = 0.0;
  std::uint64_t seed = 0;
  /// Cut values of injected witness partitions, kept apart from the uniform tallies.
  std::map<int, std::uint64_t> injected;

  std::uint64_t total() const;
  int max_cut() const;
};

struct ExactSolution {
  int best_value = 0;
  Partition witness;
  bool proven_optimal = false;
  std::uint64_t nodes_explored = 0;
  double wall_time = 0.0;
};

/// Largest graph order accepted by the Gray-code enumerators.
inline constexpr int kMaxEnumerationOrder = 32;

/// Exact Max-2-Cut over all 2^(n-1) complement-identified configurations.
ExactSolution brute_force_maxcut(const Graph& g, int workers = 1);

/// Returns a 2-partition cutting more than `bound` edges if one exists.
/// Stops at the first hit; used to reject candidates quickly.
std::optional<Partition> find_cut_above(const Graph& g, int bound, int workers = 1);

DensityOfStates density_of_states_exact(const Graph& g, int workers = 1);

/// Depth-first Max-k-Cut with a crossing-plus-open-edges bound.
/// `time_budget` is in seconds; a non-positive budget means unlimited.
ExactSolution branch_and_bound_maxkcut(const Graph& g, int k, double time_budget = 0.0);

/// Tallies cut values of uniformly random ordered k-labelings. Results do not
/// depend on `workers`: samples are drawn in fixed blocks with derived seeds.
DensityOfStates dos_monte_carlo(const Graph& g, int k, std::uint64_t samples, std::uint64_t seed,
                                int workers = 1, const std::vector<Partition>& inject = {});

// DOS CSV ("k,count" rows sorted by k) and its JSON metadata sidecar.
std::string dos_to_csv(const DensityOfStates& dos);
std::string dos_metadata_json(const DensityOfStates& dos);
DensityOfStates dos_from_csv(const std::string& csv, int n = 0, int k = 2);

}  // namespace ebench
