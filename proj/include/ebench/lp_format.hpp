#pragma once

#include <map>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ebench/continuous.hpp"
#include "ebench/error.hpp"

namespace ebench {

enum class Sense { minimize, maximize };
enum class Comparator { le, ge, eq };

struct Constraint {
  std::string name;
  std::map<int, double> linear;
  /// Quadratic terms keyed (i, j) with i <= j. Parsed but not reducible.
  std::map<std::pair<int, int>, double> quadratic;
  Comparator comparator = Comparator::le;
  double rhs = 0.0;

  bool operator==(const Constraint&) const = default;
};

/// Quadratic program in the LP-format subset.
struct QpInstance {
  std::vector<std::string> variables;  // order of first appearance
  std::vector<double> lower;
  std::vector<double> upper;
  Sense sense = Sense::minimize;
  std::string objective_name = "obj";
  std::map<int, double> linear;
  /// Actual coefficients (already divided by 2 for "[ ... ]/2" blocks).
  std::map<std::pair<int, int>, double> quadratic;
  double objective_constant = 0.0;
  std::vector<Constraint> constraints;

  int index_of(const std::string& name) const;
  bool operator==(const QpInstance&) const = default;
};

class LpSyntaxError : public Error {
 public:
  LpSyntaxError(const std::string& message, int line, int column)
      : Error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " +
              message),
        line_(line),
        column_(column) {}
  int line() const noexcept { return line_; }
  int column() const noexcept { return column_; }

 private:
  int line_, column_;
};

/// Parses the supported subset of the CPLEX LP format.
///
///   file        := objective [constraints] [bounds] "end"
///   objective   := ("minimize" | "maximize" | "min" | "max" | "minimum" | "maximum")
///                  [name ":"] expression
///   constraints := ("subject to" | "such that" | "st" | "s.t.")
///                  { [name ":"] expression comparator [sign] number }
///   bounds      := "bounds" { bound }
///   bound       := value cmp var [cmp value] | var cmp value | var "free"
///   expression  := { [sign] [number] var | [sign] number
///                  | [sign] "[" qterm { sign qterm } "]" ["/" "2"] }
///   qterm       := [number] var "^" "2" | [number] var "*" var
///   comparator  := "<=" | "=<" | "<" | ">=" | "=>" | ">" | "="
///   value       := [sign] number | [sign] ("inf" | "infinity")
///
/// Keywords are case-insensitive and whitespace (including newlines) is free.
/// Names start with a letter or one of "_!\"#$%&()',;?@{}~" followed by those
/// characters, digits and ".". "generals", "binaries", "semi-continuous" and
/// "sos" sections, and powers other than 2, raise UnsupportedConstruct.
/// Variables default to [0, +inf).
QpInstance parse_lp(std::string_view text);

/// Normalized writer; parse_lp(write_lp(q)) == q for any parsed q.
std::string write_lp(const QpInstance& inst);

QpInstance load_lp(const std::string& path);

/// A QP turned into an unconstrained-but-boxed minimization target.
struct QpReduction {
  /// Sense-normalized objective plus expanded squared equality penalties.
  PolynomialObjective objective;
  Box bounds;
  /// Inequalities contribute weight * max(0, violation)^2, which is not a
  /// polynomial; they are evaluated by value().
  std::vector<Constraint> inequalities;
  double penalty_weight = 0.0;

  double value(std::span<const double> x) const;
  double max_violation(std::span<const double> x) const;
};

/// Throws UnsupportedConstruct for constraints with quadratic terms.
QpReduction qp_to_polynomial(const QpInstance& inst, double penalty_weight);

}  // namespace ebench
