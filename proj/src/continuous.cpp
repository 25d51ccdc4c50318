#include "ebench/continuous.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <numeric>

#include <json.hpp>

#include "ebench/error.hpp"
#include "ebench/rng.hpp"

namespace ebench {

void PolynomialObjective::add_term(std::vector<int> idx, double coef) {
  std::sort(idx.begin(), idx.end());
  terms[std::move(idx)] += coef;
}

void PolynomialObjective::validate() const {
  if (dimension < 1) throw ContractViolation("polynomial dimension must be >= 1");
  for (const auto& [idx, coef] : terms) {
    if (idx.empty() || idx.size() > 5)
      throw ContractViolation("polynomial term must have 1 to 5 indices");
    if (!std::is_sorted(idx.begin(), idx.end()))
      throw ContractViolation("polynomial term indices must be non-decreasing");
    if (idx.front() < 0 || idx.back() >= dimension)
      throw ContractViolation("polynomial term index out of range");
  }
  if (radius && *radius < 0.0) throw ContractViolation("sum-constraint radius must be >= 0");
}

int PolynomialObjective::degree() const {
  int d = 0;
  for (const auto& [idx, coef] : terms) d = std::max(d, static_cast<int>(idx.size()));
  return d;
}

double eval_g(double x, double y) {
  const auto h = [](double t) {
    const double t2 = t * t;
    return t2 * t2 / 4.0 - 5.0 * t2 * t / 3.0 + 3.0 * t2;
  };
  return h(x) + h(y);
}

PolynomialObjective g_objective() {
  PolynomialObjective obj;
  obj.dimension = 2;
  for (int i = 0; i < 2; ++i) {
    obj.add_term({i, i, i, i}, 0.25);
    obj.add_term({i, i, i}, -5.0 / 3.0);
    obj.add_term({i, i}, 3.0);
  }
  return obj;
}

double eval_polynomial(const PolynomialObjective& obj, std::span<const double> v) {
  if (static_cast<int>(v.size()) != obj.dimension)
    throw ContractViolation("eval_polynomial: vector length does not match dimension");
  double total = obj.constant;
  for (const auto& [idx, coef] : obj.terms) {
    double p = coef;
    for (int i : idx) p *= v[i];
    total += p;
  }
  return total;
}

std::vector<double> polynomial_gradient(const PolynomialObjective& obj, std::span<const double> v) {
  if (static_cast<int>(v.size()) != obj.dimension)
    throw ContractViolation("polynomial_gradient: vector length does not match dimension");
  std::vector<double> grad(obj.dimension, 0.0);
  for (const auto& [idx, coef] : obj.terms) {
    for (std::size_t p = 0; p < idx.size(); ++p) {
      double prod = coef;
      for (std::size_t q = 0; q < idx.size(); ++q)
        if (q != p) prod *= v[idx[q]];
      grad[idx[p]] += prod;
    }
  }
  return grad;
}

std::vector<double> project_simplex(std::span<const double> v, double radius) {
  if (!(radius >= 0.0)) throw ContractViolation("project_simplex: radius must be >= 0");
  std::vector<double> out(v.size(), 0.0);
  if (radius == 0.0 || v.empty()) return out;
  std::vector<double> sorted(v.begin(), v.end());
  std::sort(sorted.begin(), sorted.end(), std::greater<>());
  double cumsum = 0.0, theta = 0.0;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    cumsum += sorted[i];
    const double t = (cumsum - radius) / static_cast<double>(i + 1);
    if (sorted[i] - t > 0.0) theta = t;
  }
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = std::max(v[i] - theta, 0.0);
  return out;
}

int region_dimension(const Region& region) {
  if (const auto* box = std::get_if<Box>(&region)) return static_cast<int>(box->lower.size());
  return std::get<Simplex>(region).dimension;
}

void constrain(const Region& region, std::vector<double>& x) {
  if (const auto* box = std::get_if<Box>(&region)) {
    for (std::size_t i = 0; i < x.size(); ++i) x[i] = std::clamp(x[i], box->lower[i], box->upper[i]);
  } else {
    x = project_simplex(x, std::get<Simplex>(region).radius);
  }
}

bool contains(const Region& region, std::span<const double> x, double tol) {
  if (const auto* box = std::get_if<Box>(&region)) {
    for (std::size_t i = 0; i < x.size(); ++i)
      if (x[i] < box->lower[i] - tol || x[i] > box->upper[i] + tol) return false;
    return true;
  }
  const double r = std::get<Simplex>(region).radius;
  double sum = 0.0;
  for (double xi : x) {
    if (xi < -tol) return false;
    sum += xi;
  }
  return std::abs(sum - r) <= tol * std::max(1.0, r);
}

namespace {

using Clock = std::chrono::steady_clock;

void validate_region(const Region& region) {
  if (const auto* box = std::get_if<Box>(&region)) {
    if (box->lower.empty() || box->lower.size() != box->upper.size())
      throw ContractViolation("box bounds must be non-empty and of equal length");
    for (std::size_t i = 0; i < box->lower.size(); ++i)
      if (!std::isfinite(box->lower[i]) || !std::isfinite(box->upper[i]) ||
          box->lower[i] > box->upper[i])
        throw ContractViolation("box bounds must be finite with lower <= upper");
  } else {
    const auto& s = std::get<Simplex>(region);
    if (s.dimension < 1 || !(s.radius >= 0.0))
      throw ContractViolation("simplex needs dimension >= 1 and radius >= 0");
  }
}

// Coordinate-wise sampling range: the box itself or [0, R] for the simplex.
std::pair<std::vector<double>, std::vector<double>> sampling_range(const Region& region) {
  if (const auto* box = std::get_if<Box>(&region)) return {box->lower, box->upper};
  const auto& s = std::get<Simplex>(region);
  return {std::vector<double>(s.dimension, 0.0), std::vector<double>(s.dimension, s.radius)};
}

std::vector<double> random_point(const Region& region, Rng& rng) {
  if (const auto* box = std::get_if<Box>(&region)) {
    std::vector<double> x(box->lower.size());
    for (std::size_t i = 0; i < x.size(); ++i) x[i] = uniform_real(rng, box->lower[i], box->upper[i]);
    return x;
  }
  // Normalized exponentials are uniform on the simplex.
  const auto& s = std::get<Simplex>(region);
  std::vector<double> x(s.dimension);
  double sum = 0.0;
  for (double& xi : x) {
    xi = -std::log(1.0 - uniform01(rng));
    sum += xi;
  }
  for (double& xi : x) xi = sum > 0.0 ? xi / sum * s.radius : s.radius / s.dimension;
  return x;
}

std::vector<std::vector<double>> initial_population(const Region& region, int population,
                                                    const std::vector<std::vector<double>>& given,
                                                    Rng& rng) {
  const int dim = region_dimension(region);
  std::vector<std::vector<double>> pop;
  pop.reserve(population);
  for (int i = 0; i < population; ++i) {
    if (i < static_cast<int>(given.size())) {
      if (static_cast<int>(given[i].size()) != dim)
        throw ContractViolation("initial position has the wrong dimension");
      pop.push_back(given[i]);
      constrain(region, pop.back());
    } else {
      pop.push_back(random_point(region, rng));
    }
  }
  return pop;
}

}  // namespace

void PsoParams::validate() const {
  if (population < 2) throw ContractViolation("PSO population must be >= 2");
  if (iterations < 1) throw ContractViolation("PSO iterations must be >= 1");
}

void EcaParams::validate() const {
  if (population < 2) throw ContractViolation("ECA population must be >= 2");
  if (iterations < 1) throw ContractViolation("ECA iterations must be >= 1");
  if (neighborhood < 2) throw ContractViolation("ECA neighborhood must be >= 2");
  if (!(step_scale > 0.0)) throw ContractViolation("ECA step scale must be positive");
}

ContinuousResult pso_minimize(const Objective& f, const Region& region, const PsoParams& params) {
  params.validate();
  validate_region(region);
  const auto start = Clock::now();
  Rng rng = make_rng(params.seed);
  const int dim = region_dimension(region);
  const auto [lo, hi] = sampling_range(region);

  auto x = initial_population(region, params.population, params.initial_positions, rng);
  std::vector<std::vector<double>> vel(params.population, std::vector<double>(dim));
  std::vector<double> vmax(dim);
  for (int d = 0; d < dim; ++d) vmax[d] = hi[d] - lo[d];
  for (int i = 0; i < params.population; ++i)
    for (int d = 0; d < dim; ++d) vel[i][d] = (uniform_real(rng, lo[d], hi[d]) - x[i][d]) / 2.0;

  ContinuousResult res;
  auto pbest = x;
  std::vector<double> pbest_val(params.population);
  int g = 0;
  for (int i = 0; i < params.population; ++i) {
    pbest_val[i] = f(x[i]);
    if (pbest_val[i] < pbest_val[g]) g = i;
  }
  res.evaluations = params.population;
  std::vector<double> gbest = pbest[g];
  double gbest_val = pbest_val[g];

  for (int it = 0; it < params.iterations; ++it) {
    for (int i = 0; i < params.population; ++i) {
      for (int d = 0; d < dim; ++d) {
        const double r1 = uniform01(rng), r2 = uniform01(rng);
        double v = params.inertia * vel[i][d] + params.cognitive * r1 * (pbest[i][d] - x[i][d]) +
                   params.social * r2 * (gbest[d] - x[i][d]);
        vel[i][d] = std::clamp(v, -vmax[d], vmax[d]);
        x[i][d] += vel[i][d];
      }
      constrain(region, x[i]);
      const double val = f(x[i]);
      ++res.evaluations;
      if (val < pbest_val[i]) {
        pbest_val[i] = val;
        pbest[i] = x[i];
        if (val < gbest_val) {
          gbest_val = val;
          gbest = x[i];
        }
      }
    }
    res.trace.push_back(gbest_val);
  }
  res.best_point = std::move(gbest);
  res.best_value = gbest_val;
  res.wall_time = std::chrono::duration<double>(Clock::now() - start).count();
  return res;
}

ContinuousResult eca_minimize(const Objective& f, const Region& region, const EcaParams& params) {
  params.validate();
  validate_region(region);
  const auto start = Clock::now();
  Rng rng = make_rng(params.seed);
  const int dim = region_dimension(region);
  const int n = params.population;
  const int peers = std::min(params.neighborhood, n);

  auto pop = initial_population(region, n, params.initial_positions, rng);
  std::vector<double> fit(n);
  for (int i = 0; i < n; ++i) fit[i] = f(pop[i]);
  ContinuousResult res;
  res.evaluations = n;
  int best = static_cast<int>(std::min_element(fit.begin(), fit.end()) - fit.begin());
  res.best_point = pop[best];
  res.best_value = fit[best];

  std::vector<int> ids(n);
  std::iota(ids.begin(), ids.end(), 0);
  std::vector<double> center(dim);
  for (int it = 0; it < params.iterations; ++it) {
    auto next = pop;
    auto next_fit = fit;
    for (int i = 0; i < n; ++i) {
      // K distinct peers by partial Fisher-Yates.
      for (int j = 0; j < peers; ++j) std::swap(ids[j], ids[j + uniform_below(rng, n - j)]);
      std::vector<int> group(ids.begin(), ids.begin() + peers);
      std::sort(group.begin(), group.end(), [&](int a, int b) { return fit[a] < fit[b]; });
      // Rank weights: best gets K, worst gets 1.
      double mass_total = 0.0;
      std::fill(center.begin(), center.end(), 0.0);
      for (int r = 0; r < peers; ++r) {
        const double mass = peers - r;
        mass_total += mass;
        for (int d = 0; d < dim; ++d) center[d] += mass * pop[group[r]][d];
      }
      const auto& worst = pop[group.back()];
      const double eta = params.step_scale * uniform01(rng);
      std::vector<double> trial(dim);
      for (int d = 0; d < dim; ++d)
        trial[d] = pop[i][d] + eta * (center[d] / mass_total - worst[d]);
      constrain(region, trial);
      const double val = f(trial);
      ++res.evaluations;
      if (val < fit[i]) {
        next[i] = std::move(trial);
        next_fit[i] = val;
        if (val < res.best_value) {
          res.best_value = val;
          res.best_point = next[i];
        }
      }
    }
    pop = std::move(next);
    fit = std::move(next_fit);
    res.trace.push_back(res.best_value);
  }
  res.wall_time = std::chrono::duration<double>(Clock::now() - start).count();
  return res;
}

std::vector<std::vector<double>> clustered_start(const std::vector<std::vector<double>>& centers,
                                                 int population, double spread,
                                                 std::uint64_t seed) {
  if (centers.empty()) throw ContractViolation("clustered_start needs at least one center");
  Rng rng = make_rng(seed);
  std::vector<std::vector<double>> out;
  for (int i = 0; i < population; ++i) {
    auto p = centers[i % centers.size()];
    for (double& x : p) x += uniform_real(rng, -spread, spread);
    out.push_back(std::move(p));
  }
  return out;
}

std::string polynomial_to_json(const PolynomialObjective& obj) {
  nlohmann::ordered_json j;
  j["dimension"] = obj.dimension;
  j["R"] = obj.radius ? nlohmann::ordered_json(*obj.radius) : nlohmann::ordered_json(nullptr);
  auto terms = nlohmann::ordered_json::array();
  for (const auto& [idx, coef] : obj.terms) terms.push_back({{"idx", idx}, {"coef", coef}});
  j["terms"] = std::move(terms);
  if (obj.constant != 0.0) j["constant"] = obj.constant;
  return j.dump(2) + "\n";
}

PolynomialObjective polynomial_from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw IoError(std::string("polynomial JSON: ") + e.what());
  }
  PolynomialObjective obj;
  try {
    obj.dimension = j.at("dimension").get<int>();
    if (j.contains("R") && !j.at("R").is_null()) obj.radius = j.at("R").get<double>();
    for (const auto& t : j.at("terms"))
      obj.add_term(t.at("idx").get<std::vector<int>>(), t.at("coef").get<double>());
    if (j.contains("constant")) obj.constant = j.at("constant").get<double>();
  } catch (const nlohmann::json::exception& e) {
    throw IoError(std::string("polynomial JSON: ") + e.what());
  }
  obj.validate();
  return obj;
}

std::string continuous_result_to_json(const ContinuousResult& r) {
  nlohmann::ordered_json j;
  j["best_point"] = r.best_point;
  j["best_value"] = r.best_value;
  j["evaluations"] = r.evaluations;
  j["trace"] = r.trace;
  return j.dump(2) + "\n";
}

}  // namespace ebench
