#include "ebench/asymptotics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include <json.hpp>

#include "ebench/error.hpp"
#include "ebench/exact.hpp"
#include "ebench/format.hpp"
#include "ebench/graph.hpp"
#include "ebench/parallel.hpp"
#include "ebench/rng.hpp"

namespace ebench {

AnnealedParams annealed_params(int n) {
  if (n < 2) throw ContractViolation("annealed statistics need n >= 2");
  const double nn = static_cast<double>(n) * n;
  return {n, nn / 8.0, nn / 16.0, (n - 1) * std::numbers::ln2};
}

double log_expected_count_gaussian(int n, double k) {
  const AnnealedParams a = annealed_params(n);
  const double d = k - a.mu;
  return (n + 1) * std::numbers::ln2 - std::log(n * std::sqrt(2.0 * std::numbers::pi)) -
         8.0 * d * d / (static_cast<double>(n) * n);
}

double expected_count_gaussian(int n, double k) { return std::exp(log_expected_count_gaussian(n, k)); }

namespace {

long double log_choose(long double n, long double r) {
  return std::lgamma(n + 1.0L) - std::lgamma(r + 1.0L) - std::lgamma(n - r + 1.0L);
}

}  // namespace

double expected_count_exact(int n, int k) {
  if (n < 1 || n > kMaxExactCountOrder)
    throw RangeError("expected_count_exact supports 1 <= n <= " + std::to_string(kMaxExactCountOrder));
  if (k < 0) return 0.0;
  long double total = 0.0L;
  for (int s = 0; 2 * s <= n; ++s) {
    const int m = s * (n - s);
    if (k > m) continue;
    long double log_classes = log_choose(n, s);
    if (2 * s == n) log_classes -= std::numbers::ln2_v<long double>;
    const long double log_p = log_choose(m, k) - m * std::numbers::ln2_v<long double>;
    total += std::exp(log_classes + log_p);
  }
  return static_cast<double>(total);
}

int tail_cut_for_lambda(int n, double lambda_target) {
  if (!(lambda_target > 0.0)) throw ContractViolation("lambda target must be positive");
  const int first = static_cast<int>(std::ceil(n * static_cast<double>(n) / 8.0));
  const int last = (n / 2) * (n - n / 2);
  int best = first;
  double best_gap = std::numeric_limits<double>::infinity();
  for (int k = first; k <= last; ++k) {
    const double lambda = expected_count_exact(n, k);
    if (!(lambda > 0.0)) break;
    const double gap = std::abs(std::log(lambda / lambda_target));
    if (gap < best_gap) {
      best_gap = gap;
      best = k;
    }
  }
  return best;
}

PoissonCheckReport poisson_limit_check(int n, int k, std::uint64_t graphs, std::uint64_t seed, int workers) {
  if (graphs < 100) throw ContractViolation("poisson_limit_check needs at least 100 graphs");
  if (n < 2 || n > kMaxEnumerationOrder) throw RangeError("poisson_limit_check supports 2 <= n <= 32");
  PoissonCheckReport r;
  r.n = n;
  r.k = k;
  r.lambda_formula = expected_count_gaussian(n, k);
  r.lambda_exact = n <= kMaxExactCountOrder ? expected_count_exact(n, k) : r.lambda_formula;
  r.graphs_sampled = graphs;
  r.seed = seed;
  r.regime_warning = r.lambda_exact < 0.2 || r.lambda_exact > 5.0;
  r.counts.assign(graphs, 0);
  parallel_for(graphs, workers, [&](std::size_t i) {
    const Graph g = gen_gnp(n, 0.5, mix_seed(seed, i));
    const auto dos = density_of_states_exact(g, 1);
    const auto it = dos.counts.find(k);
    r.counts[i] = it == dos.counts.end() ? 0 : it->second;
  });
  long double sum = 0, sum_sq = 0, fact2 = 0;
  for (std::uint64_t c : r.counts) {
    const long double x = c;
    sum += x;
    sum_sq += x * x;
    fact2 += x * (x - 1);
  }
  const long double g = static_cast<long double>(graphs);
  const long double mean = sum / g;
  r.sample_mean = static_cast<double>(mean);
  r.sample_variance = static_cast<double>(std::max(0.0L, (sum_sq - g * mean * mean) / (g - 1)));
  r.second_factorial_moment = static_cast<double>(fact2 / g);
  return r;
}

std::string PoissonCheckReport::to_json() const {
  nlohmann::ordered_json j;
  j["n"] = n;
  j["k"] = k;
  j["lambda_formula"] = lambda_formula;
  j["lambda_exact"] = lambda_exact;
  j["sample_mean"] = sample_mean;
  j["sample_variance"] = sample_variance;
  j["second_factorial_moment"] = second_factorial_moment;
  j["graphs_sampled"] = graphs_sampled;
  j["seed"] = seed;
  j["regime_warning"] = regime_warning;
  return j.dump(2) + "\n";
}

double poisson_pmf(double lambda, std::uint64_t m) {
  if (!(lambda >= 0.0)) throw ContractViolation("poisson_pmf needs lambda >= 0");
  if (lambda == 0.0) return m == 0 ? 1.0 : 0.0;
  const double x = static_cast<double>(m);
  return std::exp(x * std::log(lambda) - lambda - std::lgamma(x + 1.0));
}

GwBound gw_failure_bound(int n, double beta, double alpha, double c_max) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw ContractViolation("alpha must lie in (0, 1)");
  if (!(beta > 0.0)) throw ContractViolation("beta must be positive");
  GwBound b;
  b.log_value = n * std::numbers::ln2 - beta * (1.0 - alpha) * c_max;
  b.raw = std::exp(b.log_value);
  b.clamped = std::min(1.0, b.raw);
  return b;
}

double normal_cdf(double z) { return 0.5 * std::erfc(-z / std::numbers::sqrt2); }

double log_normal_cdf(double z) {
  if (z > 5.0) return std::log1p(-0.5 * std::erfc(z / std::numbers::sqrt2));
  if (z >= -5.0) return std::log(normal_cdf(z));
  // Phi(-x) = phi(x) R(x), R(x) = 1/(x + 1/(x + 2/(x + 3/(x + ...)))).
  const double x = -z;
  double t = x;
  for (int i = 200; i >= 1; --i) t = x + i / t;
  return -0.5 * x * x - 0.5 * std::log(2.0 * std::numbers::pi) - std::log(t);
}

GwGaussian gw_gaussian_success(int n, double beta, double alpha, double p_star) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw ContractViolation("alpha must lie in (0, 1)");
  if (!(beta > 0.0)) throw ContractViolation("beta must be positive");
  if (n < 2) throw ContractViolation("n must be at least 2");
  const double nn = static_cast<double>(n) * n;
  const double m = nn / 8.0 + beta * nn / 16.0;
  const double k_max = sk_max_cut(n, p_star);
  GwGaussian r;
  r.z_max = 4.0 * (k_max - m) / n;
  r.z_gw = 4.0 * (alpha * k_max - m) / n;
  const double denom = log_normal_cdf(r.z_max);
  if (!std::isfinite(denom)) throw DegenerateError("Phi(z(k_max)) vanishes to machine precision");
  r.log_failure = log_normal_cdf(r.z_gw) - denom;
  r.success = -std::expm1(r.log_failure);
  return r;
}

double random_guess_ratio(int n, double c_max) {
  if (!(c_max > 0.0)) throw ContractViolation("c_max must be positive");
  return static_cast<double>(n) * n / 8.0 / c_max;
}

double sk_max_cut(int n, double p_star) {
  const double x = n;
  return x * x / 8.0 + p_star * std::pow(x, 1.5) / 4.0;
}

int random_guess_threshold_n(double ratio, double p_star) {
  if (!(ratio > 0.0 && ratio < 1.0) || !(p_star > 0.0)) throw ContractViolation("invalid threshold query");
  // The ratio is increasing in n, so double then bisect.
  int hi = 2;
  while (random_guess_ratio(hi, sk_max_cut(hi, p_star)) < ratio) {
    if (hi > (1 << 29)) throw RangeError("threshold beyond representable n");
    hi *= 2;
  }
  int lo = hi / 2;
  while (hi - lo > 1) {
    const int mid = lo + (hi - lo) / 2;
    (random_guess_ratio(mid, sk_max_cut(mid, p_star)) >= ratio ? hi : lo) = mid;
  }
  return random_guess_ratio(lo, sk_max_cut(lo, p_star)) >= ratio ? lo : hi;
}

std::string gw_sweep_csv(const std::vector<int>& ns, double beta, double alpha, double p_star) {
  std::string out = "n,failure_bound,gaussian_success,random_guess_ratio\n";
  for (int n : ns) {
    const double c_max = sk_max_cut(n, p_star);
    out += std::to_string(n) + "," + format_double(gw_failure_bound(n, beta, alpha, c_max).raw) + "," +
           format_double(gw_gaussian_success(n, beta, alpha, p_star).success) + "," +
           format_double(random_guess_ratio(n, c_max)) + "\n";
  }
  return out;
}

}  // namespace ebench
