#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "ebench/exact.hpp"
#include "ebench/graph.hpp"
#include "ebench/rng.hpp"

namespace ebench {

/// Observed frequency per cut value over `total` recorded samples.
struct CutHistogram {
  std::map<int, std::uint64_t> counts;
  std::uint64_t total = 0;

  void add(int cut, std::uint64_t times = 1);
  void merge(const CutHistogram& other);
};

/// Lazy single-spin-flip Metropolis chain over 2-cut configurations with
/// stationary law proportional to exp(beta * cut). Each step holds with
/// probability 1/2, otherwise proposes flipping a uniform vertex.
class GibbsChain {
 public:
  GibbsChain(const Graph& g, double beta, std::uint64_t seed);

  /// One proposal; returns true when the flip was accepted.
  bool step();
  int cut() const noexcept { return cut_; }
  const std::vector<int>& sides() const noexcept { return sides_; }

 private:
  const Graph* graph_;
  Rng rng_;
  std::vector<int> sides_;
  int cut_ = 0;
  std::vector<double> accept_;  // indexed by delta + max degree
  int offset_ = 0;
};

struct GibbsParams {
  double beta = 1.0;
  std::uint64_t samples = 10000;
  /// Negative selects the defaults 100 n and n.
  std::int64_t burn_in = -1;
  std::int64_t thinning = -1;
  /// Samples are split evenly over this many independent chains.
  int chains = 4;
  std::uint64_t seed = 42;
};

/// Result depends on `chains` but not on `workers`.
CutHistogram gibbs_sample(const Graph& g, const GibbsParams& params, int workers = 1);

/// P(k) proportional to Omega(k) exp(beta k), evaluated in log space.
std::map<int, double> predicted_cut_distribution(const DensityOfStates& dos, double beta);

struct FitBin {
  int k = 0;
  double observed = 0.0;
  double predicted = 0.0;
  double sigma = 0.0;
  double residual = 0.0;
};

struct GibbsFit {
  double beta = 0.0;
  double chi2_reduced = 0.0;
  int dof = 0;
  /// Minimum sits within 1e-3 of an end of the search interval.
  bool at_boundary = false;
  std::vector<FitBin> bins;
};

struct FitOptions {
  double beta_min = 0.0;
  double beta_max = 20.0;
  double tolerance = 1e-6;
};

/// Weighted least-squares fit of beta. Bins span the DOS support between the
/// smallest and largest observed cut; empty bins get the one-count sigma
/// floor sqrt(1 - 1/N). Throws InsufficientData with fewer than 3 bins of
/// positive sigma.
GibbsFit fit_beta(const DensityOfStates& dos, const CutHistogram& observed, const FitOptions& options = {});

/// (1/dof) sum ((obs - pred)/sigma)^2 over bins with sigma > 0,
/// dof = usable bins - fitted_params.
double chi2_reduced(const std::vector<double>& observed, const std::vector<double>& predicted,
                    const std::vector<double>& sigmas, int fitted_params);

// Histogram CSV ("k,frequency") and fit report JSON.
std::string histogram_to_csv(const CutHistogram& hist);
CutHistogram histogram_from_csv(const std::string& csv);
std::string fit_to_json(const GibbsFit& fit);

}  // namespace ebench
