#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "ebench/error.hpp"
#include "ebench/graph.hpp"

namespace ebench {

/// Targets for a graph with a planted maximum bipartition.
struct PlantedGraphSpec {
  int n = 0;
  int m = 0;
  int target_cut = 0;  // exact Max-2-Cut
  int min_3cut = 0;    // lower bound on Max-3-Cut
  int min_4cut = 0;    // lower bound on Max-4-Cut
  std::pair<int, int> side_sizes{0, 0};

  void validate() const;

  /// n=30, m=233, cut 146, 3-cut >= 191, 4-cut >= 210, sides 15/15.
  static PlantedGraphSpec paper30();
};

struct PlantedGraph {
  Graph graph;
  Partition bipartition;  // cuts exactly target_cut edges
  Partition witness3;     // sub-split of one side, k = 3
  Partition witness4;     // sub-split of both sides, k = 4
  int attempts = 0;       // exact verifications spent
  int repairs = 0;        // edge swaps applied
};

class ConstructionFailed : public Error {
 public:
  ConstructionFailed(const std::string& what, PlantedGraph best)
      : Error(what), best_candidate_(std::move(best)) {}
  const PlantedGraph& best_candidate() const noexcept { return best_candidate_; }

 private:
  PlantedGraph best_candidate_;
};

struct PlantOptions {
  int max_attempts = 1000;
  /// Heuristic detect-and-repair rounds per fresh candidate before restarting.
  int repair_rounds = 400;
  int workers = 1;
};

/// Builds a graph whose planted bipartition is a maximum cut of exactly
/// spec.target_cut edges, with internal edges laid across sub-halves of each
/// side so that the planted 3- and 4-way splits reach min_3cut / min_4cut.
///
/// Crossing edges are drawn uniformly among the side_sizes.first *
/// side_sizes.second slots. Any bipartition found to beat the target (by tabu
/// probes, then by exhaustive enumeration) is removed by swapping one of the
/// edges it cuts for a non-edge of the same class that it does not cut; class
/// totals, and therefore the planted witness values, are invariant under the
/// swap. Throws ConstructionFailed once max_attempts enumerations are spent.
PlantedGraph plant_graph(const PlantedGraphSpec& spec, std::uint64_t seed,
                         const PlantOptions& options = {});

struct VerifyOptions {
  int heuristic_trials = 20;
  std::uint64_t seed = 42;
  int workers = 1;
};

struct VerificationReport {
  int n = 0;
  int m = 0;
  int target_cut = 0;
  int max2cut = 0;
  bool max2cut_exact = false;
  bool max2cut_matches = false;
  Partition max2_witness;
  int min_3cut = 0;
  int best_3cut = 0;
  bool reaches_3cut = false;
  int min_4cut = 0;
  int best_4cut = 0;
  bool reaches_4cut = false;
  bool pass = false;
  double wall_time = 0.0;

  std::string to_json() const;
};

/// Exact Max-2-Cut by enumeration (heuristic above 32 vertices), best 3- and
/// 4-cuts from tabu/SA runs and any supplied witnesses. Never throws on a
/// failed check; the report carries the verdict.
VerificationReport verify_planted(const Graph& g, const PlantedGraphSpec& spec,
                                  const std::vector<Partition>& witnesses = {},
                                  const VerifyOptions& options = {});

std::string witnesses_to_json(const PlantedGraph& planted);
std::vector<Partition> witnesses_from_json(const std::string& text);

}  // namespace ebench
