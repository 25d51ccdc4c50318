#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace ebench {

/// Annealed moments of the cut value of one configuration on G(n, 1/2),
/// in the balanced approximation.
struct AnnealedParams {
  int n = 0;
  double mu = 0.0;      // n^2/8
  double sigma2 = 0.0;  // n^2/16
  double log_configs = 0.0;  // ln 2^(n-1)
};

AnnealedParams annealed_params(int n);

/// ln of (2^(n+1) / (n sqrt(2 pi))) exp(-8 (k - n^2/8)^2 / n^2).
double log_expected_count_gaussian(int n, double k);
double expected_count_gaussian(int n, double k);

inline constexpr int kMaxExactCountOrder = 40;

/// E[Omega(k)] over G(n, 1/2) summed exactly over bipartition size classes,
/// with complement identification (the s = n/2 class is halved).
double expected_count_exact(int n, int k);

/// Upper-tail cut value (k >= n^2/8) whose exact expected count is closest to
/// `lambda_target` on a log scale.
int tail_cut_for_lambda(int n, double lambda_target);

struct PoissonCheckReport {
  int n = 0;
  int k = 0;
  double lambda_formula = 0.0;
  double lambda_exact = 0.0;
  double sample_mean = 0.0;
  double sample_variance = 0.0;
  double second_factorial_moment = 0.0;
  std::uint64_t graphs_sampled = 0;
  std::uint64_t seed = 0;
  /// Set when lambda_exact lies outside [0.2, 5].
  bool regime_warning = false;
  std::vector<std::uint64_t> counts;  // Omega(k) per sampled graph

  std::string to_json() const;
};

/// Samples `graphs` G(n, 1/2) instances (graph i uses mix_seed(seed, i)) and
/// records the exact Omega(k) of each.
PoissonCheckReport poisson_limit_check(int n, int k, std::uint64_t graphs, std::uint64_t seed, int workers = 1);

double poisson_pmf(double lambda, std::uint64_t m);

struct GwParams {
  static constexpr double alpha_gw = 0.87856;
  static constexpr double hastad = 16.0 / 17.0;
  static constexpr double p_star = 0.7632;
};

struct GwBound {
  double log_value = 0.0;
  double raw = 0.0;      // may exceed 1 or overflow to inf
  double clamped = 0.0;  // min(raw, 1)
};

/// exp(n ln 2 - beta (1 - alpha) c_max).
GwBound gw_failure_bound(int n, double beta, double alpha, double c_max);

double normal_cdf(double z);
/// ln Phi(z), finite for every finite z. Uses erfc above z = -5 and the
/// Mills-ratio continued fraction below; relative error under 1e-14.
double log_normal_cdf(double z);

struct GwGaussian {
  double success = 0.0;
  /// ln(Phi(z_gw) / Phi(z_max)); keeps resolution once success rounds to 1.
  double log_failure = 0.0;
  double z_gw = 0.0;
  double z_max = 0.0;
};

/// 1 - Phi(z(alpha k_max)) / Phi(z(k_max)) with m = n^2/8 + beta n^2/16,
/// k_max = n^2/8 + p_star n^(3/2)/4 and z(x) = 4 (x - m)/n.
GwGaussian gw_gaussian_success(int n, double beta, double alpha, double p_star = GwParams::p_star);

/// (n^2/8) / c_max.
double random_guess_ratio(int n, double c_max);
/// n^2/8 + p_star n^(3/2)/4.
double sk_max_cut(int n, double p_star = GwParams::p_star);
/// Smallest n whose random-guess ratio against sk_max_cut(n) reaches `ratio`.
int random_guess_threshold_n(double ratio = GwParams::hastad, double p_star = GwParams::p_star);

/// CSV "n,failure_bound,gaussian_success,random_guess_ratio" with
/// c_max = sk_max_cut(n) in every column.
std::string gw_sweep_csv(const std::vector<int>& ns, double beta, double alpha, double p_star = GwParams::p_star);

}  // namespace ebench
