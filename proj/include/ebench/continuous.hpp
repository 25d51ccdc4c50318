#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

namespace ebench {

/// Sparse polynomial of degree <= 5 with an optional sum constraint.
///
/// Each term is keyed by a non-decreasing index tuple. Its coefficient is the
/// total over all distinct orderings of that tuple in the fully symmetric
/// tensor sum, e.g. J_01 + J_10 for the key (0, 1), so evaluation needs no
/// multiplicity factors.
struct PolynomialObjective {
  int dimension = 0;
  std::map<std::vector<int>, double> terms;
  double constant = 0.0;
  std::optional<double> radius;

  /// Sorts `idx` and accumulates `coef` into the matching term.
  void add_term(std::vector<int> idx, double coef);
  void validate() const;
  int degree() const;
};

/// (x^4 + y^4)/4 - 5(x^3 + y^3)/3 + 3(x^2 + y^2)
double eval_g(double x, double y);
PolynomialObjective g_objective();

double eval_polynomial(const PolynomialObjective& obj, std::span<const double> v);
std::vector<double> polynomial_gradient(const PolynomialObjective& obj, std::span<const double> v);

/// Euclidean projection onto {v >= 0, sum(v) = radius} by sort-and-threshold.
/// A zero radius yields the zero vector.
std::vector<double> project_simplex(std::span<const double> v, double radius);

struct Box {
  std::vector<double> lower;
  std::vector<double> upper;
};

struct Simplex {
  int dimension = 0;
  double radius = 1.0;
};

using Region = std::variant<Box, Simplex>;

int region_dimension(const Region& region);
/// Clamps to the box or projects onto the simplex.
void constrain(const Region& region, std::vector<double>& x);
bool contains(const Region& region, std::span<const double> x, double tol = 1e-9);

struct PsoParams {
  int population = 14;
  int iterations = 200;
  double inertia = 0.7;
  double cognitive = 1.5;
  double social = 1.5;
  std::uint64_t seed = 42;
  /// Optional starting positions; missing particles are drawn uniformly.
  std::vector<std::vector<double>> initial_positions;

  void validate() const;
};

struct EcaParams {
  int population = 14;
  int iterations = 200;
  int neighborhood = 7;     // K peers per center of mass
  double step_scale = 2.0;  // eta
  std::uint64_t seed = 42;
  std::vector<std::vector<double>> initial_positions;

  void validate() const;
};

struct ContinuousResult {
  std::vector<double> best_point;
  double best_value = 0.0;
  std::vector<double> trace;  // best value after each iteration
  double wall_time = 0.0;
  std::int64_t evaluations = 0;
};

using Objective = std::function<double(std::span<const double>)>;

ContinuousResult pso_minimize(const Objective& f, const Region& region, const PsoParams& params);

/// Evolutionary Centers Algorithm: every member steps along (c - u_worst),
/// where c is the rank-weighted center of mass of K random peers and u_worst
/// the worst of them, with a random step in [0, eta). Members are replaced
/// only by better trial points.
ContinuousResult eca_minimize(const Objective& f, const Region& region, const EcaParams& params);

/// `population` points assigned round-robin to the given centers, each
/// coordinate offset by a uniform draw from [-spread, spread].
std::vector<std::vector<double>> clustered_start(const std::vector<std::vector<double>>& centers,
                                                 int population, double spread,
                                                 std::uint64_t seed);

std::string polynomial_to_json(const PolynomialObjective& obj);
PolynomialObjective polynomial_from_json(const std::string& text);
std::string continuous_result_to_json(const ContinuousResult& r);

}  // namespace ebench
