#include "ebench/lp_format.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <limits>
#include <optional>
#include <sstream>

#include "ebench/format.hpp"

namespace ebench {

int QpInstance::index_of(const std::string& name) const {
  const auto it = std::find(variables.begin(), variables.end(), name);
  return it == variables.end() ? -1 : static_cast<int>(it - variables.begin());
}

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

enum class Tok { ident, number, op, colon, lbracket, rbracket, end };

struct Token {
  Tok kind;
  std::string text;
  double value = 0.0;
  int line = 1;
  int column = 1;
};

bool name_start(char c) {
  return std::isalpha(static_cast<unsigned char>(c)) ||
         std::string_view("_!\"#$%&()',;?@{}~").find(c) != std::string_view::npos;
}

bool name_char(char c) {
  return name_start(c) || std::isdigit(static_cast<unsigned char>(c)) || c == '.';
}

std::string lower(std::string s) {
  for (char& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return s;
}

std::vector<Token> tokenize(std::string_view text) {
  std::vector<Token> out;
  int line = 1, col = 1;
  std::size_t i = 0;
  auto advance = [&](std::size_t count) {
    for (std::size_t k = 0; k < count; ++k, ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
  };
  while (i < text.size()) {
    const char c = text[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      continue;
    }
    if (c == '\\') {  // comment to end of line
      while (i < text.size() && text[i] != '\n') advance(1);
      continue;
    }
    Token t{Tok::end, "", 0.0, line, col};
    if (std::isdigit(static_cast<unsigned char>(c)) ||
        (c == '.' && i + 1 < text.size() && std::isdigit(static_cast<unsigned char>(text[i + 1])))) {
      std::size_t j = i;
      while (j < text.size() && (std::isdigit(static_cast<unsigned char>(text[j])) || text[j] == '.')) ++j;
      if (j < text.size() && (text[j] == 'e' || text[j] == 'E')) {
        std::size_t k = j + 1;
        if (k < text.size() && (text[k] == '+' || text[k] == '-')) ++k;
        if (k < text.size() && std::isdigit(static_cast<unsigned char>(text[k]))) {
          j = k;
          while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
        }
      }
      t.kind = Tok::number;
      t.text = std::string(text.substr(i, j - i));
      try {
        t.value = parse_double(t.text);
      } catch (const std::invalid_argument&) {
        throw LpSyntaxError("malformed number '" + t.text + "'", line, col);
      }
      advance(j - i);
    } else if (name_start(c)) {
      std::size_t j = i;
      while (j < text.size() && name_char(text[j])) ++j;
      t.kind = Tok::ident;
      t.text = std::string(text.substr(i, j - i));
      advance(j - i);
    } else if (c == ':') {
      t.kind = Tok::colon;
      t.text = ":";
      advance(1);
    } else if (c == '[') {
      t.kind = Tok::lbracket;
      t.text = "[";
      advance(1);
    } else if (c == ']') {
      t.kind = Tok::rbracket;
      t.text = "]";
      advance(1);
    } else if (c == '<' || c == '>' || c == '=') {
      std::size_t len = 1;
      if (i + 1 < text.size() && (text[i + 1] == '=' || (c == '=' && (text[i + 1] == '<' || text[i + 1] == '>'))))
        len = 2;
      t.kind = Tok::op;
      t.text = std::string(text.substr(i, len));
      advance(len);
    } else if (std::string_view("+-*^/").find(c) != std::string_view::npos) {
      t.kind = Tok::op;
      t.text = std::string(1, c);
      advance(1);
    } else {
      throw LpSyntaxError(std::string("unexpected character '") + c + "'", line, col);
    }
    out.push_back(std::move(t));
  }
  out.push_back({Tok::end, "", 0.0, line, col});
  return out;
}

enum class Section { none, constraints, bounds, end, unsupported };

class Parser {
 public:
  explicit Parser(std::string_view text) : toks_(tokenize(text)) {}

  QpInstance parse() {
    const Token& first = peek();
    const std::string kw = first.kind == Tok::ident ? lower(first.text) : "";
    if (kw == "minimize" || kw == "minimum" || kw == "min") {
      inst_.sense = Sense::minimize;
    } else if (kw == "maximize" || kw == "maximum" || kw == "max") {
      inst_.sense = Sense::maximize;
    } else {
      fail(first, "expected objective sense keyword (Minimize or Maximize), found '" +
                      describe(first) + "'");
    }
    ++pos_;
    if (peek().kind == Tok::ident && peek(1).kind == Tok::colon && section_at(pos_) == Section::none) {
      inst_.objective_name = peek().text;
      pos_ += 2;
    }
    Expression obj = parse_expression();
    inst_.linear = std::move(obj.linear);
    inst_.quadratic = std::move(obj.quadratic);
    inst_.objective_constant = obj.constant;

    Section sec = section_at(pos_);
    if (sec == Section::constraints) {
      consume_section_keyword();
      parse_constraints();
      sec = section_at(pos_);
    }
    if (sec == Section::bounds) {
      consume_section_keyword();
      parse_bounds();
      sec = section_at(pos_);
    }
    if (sec == Section::unsupported)
      throw UnsupportedConstruct("LP section '" + peek().text + "' is not supported (line " +
                                 std::to_string(peek().line) + ")");
    if (sec != Section::end) fail(peek(), "expected End, found '" + describe(peek()) + "'");
    ++pos_;
    if (peek().kind != Tok::end) fail(peek(), "unexpected input after End");
    drop_zeros(inst_.linear);
    drop_zeros(inst_.quadratic);
    for (auto& c : inst_.constraints) {
      drop_zeros(c.linear);
      drop_zeros(c.quadratic);
    }
    return std::move(inst_);
  }

 private:
  struct Expression {
    std::map<int, double> linear;
    std::map<std::pair<int, int>, double> quadratic;
    double constant = 0.0;
  };

  template <class Map>
  static void drop_zeros(Map& m) {
    std::erase_if(m, [](const auto& kv) { return kv.second == 0.0; });
  }

  const Token& peek(std::size_t ahead = 0) const {
    return toks_[std::min(pos_ + ahead, toks_.size() - 1)];
  }

  [[noreturn]] static void fail(const Token& t, const std::string& message) {
    throw LpSyntaxError(message, t.line, t.column);
  }

  static std::string describe(const Token& t) { return t.kind == Tok::end ? "end of input" : t.text; }

  Section section_at(std::size_t p) const {
    const Token& t = toks_[std::min(p, toks_.size() - 1)];
    if (t.kind != Tok::ident) return Section::none;
    const std::string w = lower(t.text);
    const Token& next = toks_[std::min(p + 1, toks_.size() - 1)];
    const std::string nw = next.kind == Tok::ident ? lower(next.text) : "";
    if ((w == "subject" && nw == "to") || (w == "such" && nw == "that") || w == "st" ||
        w == "s.t." || w == "st.")
      return Section::constraints;
    if (w == "bounds" || w == "bound") return Section::bounds;
    if (w == "end") return Section::end;
    if (w == "generals" || w == "general" || w == "gen" || w == "integers" || w == "binaries" ||
        w == "binary" || w == "bin" || w.starts_with("semi") || w == "sos")
      return Section::unsupported;
    return Section::none;
  }

  void consume_section_keyword() {
    const std::string w = lower(peek().text);
    pos_ += (w == "subject" || w == "such") ? 2 : 1;
  }

  int variable(const std::string& name) {
    int idx = inst_.index_of(name);
    if (idx < 0) {
      idx = static_cast<int>(inst_.variables.size());
      inst_.variables.push_back(name);
      inst_.lower.push_back(0.0);
      inst_.upper.push_back(kInf);
    }
    return idx;
  }

  static bool is_comparator(const Token& t) {
    return t.kind == Tok::op && (t.text == "<=" || t.text == "=<" || t.text == "<" || t.text == ">=" ||
                                 t.text == "=>" || t.text == ">" || t.text == "=");
  }

  static Comparator comparator_of(const Token& t) {
    if (t.text == "=") return Comparator::eq;
    return (t.text[0] == '<' || t.text == "=<") ? Comparator::le : Comparator::ge;
  }

  static bool is_infinity(const Token& t) {
    if (t.kind != Tok::ident) return false;
    const std::string w = lower(t.text);
    return w == "inf" || w == "infinity";
  }

  double parse_sign() {
    double sign = 1.0;
    while (peek().kind == Tok::op && (peek().text == "+" || peek().text == "-")) {
      if (peek().text == "-") sign = -sign;
      ++pos_;
    }
    return sign;
  }

  std::string expect_ident() {
    const Token& t = peek();
    if (t.kind != Tok::ident || section_at(pos_) != Section::none)
      fail(t, "expected variable name, found '" + describe(t) + "'");
    ++pos_;
    return t.text;
  }

  void parse_quadratic_block(double block_sign, Expression& expr) {
    const Token open = peek();
    ++pos_;  // '['
    std::map<std::pair<int, int>, double> terms;
    bool first = true;
    while (peek().kind != Tok::rbracket) {
      if (peek().kind == Tok::end) fail(open, "unterminated '['");
      const double sign = parse_sign();
      if (!first && sign == 1.0 && toks_[pos_ - 1].kind != Tok::op)
        fail(peek(), "expected '+' or '-' between quadratic terms");
      first = false;
      double coef = 1.0;
      if (peek().kind == Tok::number) {
        coef = peek().value;
        ++pos_;
      }
      const int a = variable(expect_ident());
      int b = -1;
      if (peek().kind == Tok::op && peek().text == "^") {
        ++pos_;
        if (peek().kind != Tok::number) fail(peek(), "expected exponent after '^'");
        if (peek().value != 2.0)
          throw UnsupportedConstruct("power " + peek().text + " (only ^2 is supported, line " +
                                     std::to_string(peek().line) + ")");
        ++pos_;
        b = a;
      } else if (peek().kind == Tok::op && peek().text == "*") {
        ++pos_;
        b = variable(expect_ident());
      } else {
        fail(peek(), "linear term inside quadratic block");
      }
      terms[{std::min(a, b), std::max(a, b)}] += sign * coef;
    }
    ++pos_;  // ']'
    double scale = 1.0;
    if (peek().kind == Tok::op && peek().text == "/") {
      ++pos_;
      if (peek().kind != Tok::number || peek().value != 2.0)
        fail(peek(), "quadratic block may only be divided by 2");
      ++pos_;
      scale = 0.5;
    }
    for (const auto& [key, c] : terms) expr.quadratic[key] += block_sign * c * scale;
  }

  Expression parse_expression() {
    Expression expr;
    bool first = true;
    for (;;) {
      const Token& t = peek();
      if (t.kind == Tok::end || section_at(pos_) != Section::none || is_comparator(t)) break;
      if (!first && !(t.kind == Tok::op && (t.text == "+" || t.text == "-")))
        fail(t, "expected '+' or '-' between terms, found '" + describe(t) + "'");
      first = false;
      const double sign = parse_sign();
      if (peek().kind == Tok::lbracket) {
        parse_quadratic_block(sign, expr);
        continue;
      }
      double coef = 1.0;
      bool has_number = false;
      if (peek().kind == Tok::number) {
        coef = peek().value;
        has_number = true;
        ++pos_;
      }
      if (peek().kind == Tok::ident && section_at(pos_) == Section::none && !is_comparator(peek())) {
        const int v = variable(peek().text);
        ++pos_;
        if (peek().kind == Tok::op && (peek().text == "^" || peek().text == "*"))
          fail(peek(), "quadratic terms must appear inside '[ ]'");
        expr.linear[v] += sign * coef;
      } else if (has_number) {
        expr.constant += sign * coef;
      } else {
        fail(peek(), "expected a term, found '" + describe(peek()) + "'");
      }
    }
    return expr;
  }

  void parse_constraints() {
    while (section_at(pos_) == Section::none && peek().kind != Tok::end) {
      Constraint c;
      if (peek().kind == Tok::ident && peek(1).kind == Tok::colon) {
        c.name = peek().text;
        pos_ += 2;
      } else {
        c.name = "R" + std::to_string(inst_.constraints.size() + 1);
      }
      const Token start = peek();
      Expression lhs = parse_expression();
      if (lhs.linear.empty() && lhs.quadratic.empty())
        fail(start, "constraint has no variables");
      if (!is_comparator(peek())) fail(peek(), "expected comparator, found '" + describe(peek()) + "'");
      c.comparator = comparator_of(peek());
      ++pos_;
      const double sign = parse_sign();
      if (peek().kind != Tok::number) fail(peek(), "expected right-hand side number");
      c.rhs = sign * peek().value - lhs.constant;
      ++pos_;
      c.linear = std::move(lhs.linear);
      c.quadratic = std::move(lhs.quadratic);
      inst_.constraints.push_back(std::move(c));
    }
  }

  std::optional<double> try_value() {
    const std::size_t save = pos_;
    const double sign = parse_sign();
    if (peek().kind == Tok::number) {
      const double v = sign * peek().value;
      ++pos_;
      return v;
    }
    if (is_infinity(peek())) {
      ++pos_;
      return sign * kInf;
    }
    pos_ = save;
    return std::nullopt;
  }

  double expect_value() {
    if (auto v = try_value()) return *v;
    fail(peek(), "expected bound value, found '" + describe(peek()) + "'");
  }

  // Applies "x cmp value" to the bounds of x.
  void apply_bound(int v, Comparator cmp, double value) {
    if (cmp == Comparator::le || cmp == Comparator::eq) inst_.upper[v] = value;
    if (cmp == Comparator::ge || cmp == Comparator::eq) inst_.lower[v] = value;
  }

  static Comparator flip(Comparator c) {
    if (c == Comparator::le) return Comparator::ge;
    if (c == Comparator::ge) return Comparator::le;
    return c;
  }

  void parse_bounds() {
    while (section_at(pos_) == Section::none && peek().kind != Tok::end) {
      const Token start = peek();
      if (auto lead = try_value()) {
        if (!is_comparator(peek())) fail(peek(), "expected comparator in bound");
        const Comparator c1 = comparator_of(peek());
        ++pos_;
        const int v = variable(expect_ident());
        apply_bound(v, flip(c1), *lead);
        if (is_comparator(peek())) {
          const Comparator c2 = comparator_of(peek());
          ++pos_;
          apply_bound(v, c2, expect_value());
        }
      } else if (peek().kind == Tok::ident) {
        const int v = variable(expect_ident());
        if (peek().kind == Tok::ident && lower(peek().text) == "free") {
          ++pos_;
          inst_.lower[v] = -kInf;
          inst_.upper[v] = kInf;
        } else if (is_comparator(peek())) {
          const Comparator c = comparator_of(peek());
          ++pos_;
          apply_bound(v, c, expect_value());
        } else {
          fail(peek(), "expected comparator or 'free' after bound variable");
        }
      } else {
        fail(start, "malformed bound");
      }
    }
    for (std::size_t v = 0; v < inst_.variables.size(); ++v)
      if (inst_.lower[v] > inst_.upper[v])
        throw LpSyntaxError("bounds of '" + inst_.variables[v] + "' are inconsistent (lower > upper)",
                            peek().line, peek().column);
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  QpInstance inst_;
};

std::string number_text(double x) {
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  return format_double(x);
}

void append_term(std::string& out, bool& first, double coef, const std::string& body) {
  const bool negative = std::signbit(coef);
  if (first)
    out += negative ? "- " : "";
  else
    out += negative ? " - " : " + ";
  out += format_double(std::abs(coef));
  if (!body.empty()) out += " " + body;
  first = false;
}

std::string quadratic_text(const QpInstance& inst, const std::map<std::pair<int, int>, double>& q,
                           double factor) {
  std::string out = "[ ";
  bool first = true;
  for (const auto& [key, c] : q) {
    const auto& [i, j] = key;
    const std::string body =
        i == j ? inst.variables[i] + " ^ 2" : inst.variables[i] + " * " + inst.variables[j];
    append_term(out, first, c * factor, body);
  }
  return out + " ]";
}

}  // namespace

QpInstance parse_lp(std::string_view text) { return Parser(text).parse(); }

std::string write_lp(const QpInstance& inst) {
  std::ostringstream out;
  out << (inst.sense == Sense::minimize ? "Minimize" : "Maximize") << "\n " << inst.objective_name
      << ": ";
  std::string obj;
  bool first = true;
  // Every variable is listed so that re-parsing assigns the same indices.
  for (std::size_t v = 0; v < inst.variables.size(); ++v) {
    const auto it = inst.linear.find(static_cast<int>(v));
    append_term(obj, first, it == inst.linear.end() ? 0.0 : it->second, inst.variables[v]);
  }
  if (!inst.quadratic.empty()) {
    obj += first ? "" : " + ";
    obj += quadratic_text(inst, inst.quadratic, 2.0) + "/2";
    first = false;
  }
  if (inst.objective_constant != 0.0 || first) append_term(obj, first, inst.objective_constant, "");
  out << obj << "\n";

  if (!inst.constraints.empty()) {
    out << "Subject To\n";
    for (const auto& c : inst.constraints) {
      std::string line;
      bool f = true;
      for (const auto& [v, a] : c.linear) append_term(line, f, a, inst.variables[v]);
      if (!c.quadratic.empty()) {
        line += f ? "" : " + ";
        line += quadratic_text(inst, c.quadratic, 1.0);
      }
      const char* cmp = c.comparator == Comparator::le ? "<=" : c.comparator == Comparator::ge ? ">=" : "=";
      out << ' ' << c.name << ": " << line << ' ' << cmp << ' ' << number_text(c.rhs) << "\n";
    }
  }

  std::ostringstream bounds;
  for (std::size_t v = 0; v < inst.variables.size(); ++v) {
    const double lo = inst.lower[v], hi = inst.upper[v];
    const std::string& name = inst.variables[v];
    if (lo == 0.0 && hi == kInf) continue;
    if (lo == -kInf && hi == kInf)
      bounds << ' ' << name << " free\n";
    else if (lo == hi)
      bounds << ' ' << name << " = " << number_text(lo) << "\n";
    else
      bounds << ' ' << number_text(lo) << " <= " << name << " <= " << number_text(hi) << "\n";
  }
  if (!bounds.str().empty()) out << "Bounds\n" << bounds.str();
  out << "End\n";
  return out.str();
}

QpInstance load_lp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_lp(ss.str());
}

namespace {

double activity(const Constraint& c, std::span<const double> x) {
  double a = 0.0;
  for (const auto& [v, coef] : c.linear) a += coef * x[v];
  return a;
}

}  // namespace

QpReduction qp_to_polynomial(const QpInstance& inst, double penalty_weight) {
  if (!(penalty_weight > 0.0)) throw ContractViolation("penalty weight must be positive");
  const double sense = inst.sense == Sense::minimize ? 1.0 : -1.0;
  QpReduction red;
  red.penalty_weight = penalty_weight;
  auto& obj = red.objective;
  obj.dimension = std::max<int>(1, static_cast<int>(inst.variables.size()));
  obj.constant = sense * inst.objective_constant;
  for (const auto& [v, c] : inst.linear) obj.add_term({v}, sense * c);
  for (const auto& [key, c] : inst.quadratic) obj.add_term({key.first, key.second}, sense * c);

  for (const auto& c : inst.constraints) {
    if (!c.quadratic.empty())
      throw UnsupportedConstruct("constraint '" + c.name + "' is quadratic; only linear constraints reduce");
    if (c.comparator != Comparator::eq) {
      red.inequalities.push_back(c);
      continue;
    }
    // w * (a.x - b)^2 expanded.
    const double w = penalty_weight;
    for (auto it = c.linear.begin(); it != c.linear.end(); ++it) {
      const auto& [i, ai] = *it;
      obj.add_term({i, i}, w * ai * ai);
      obj.add_term({i}, -2.0 * w * c.rhs * ai);
      for (auto jt = std::next(it); jt != c.linear.end(); ++jt) obj.add_term({i, jt->first}, 2.0 * w * ai * jt->second);
    }
    obj.constant += w * c.rhs * c.rhs;
  }
  std::erase_if(obj.terms, [](const auto& kv) { return kv.second == 0.0; });
  red.bounds.lower = inst.lower;
  red.bounds.upper = inst.upper;
  return red;
}

double QpReduction::value(std::span<const double> x) const {
  double total = eval_polynomial(objective, x);
  for (const auto& c : inequalities) {
    const double a = activity(c, x);
    const double viol = c.comparator == Comparator::le ? a - c.rhs : c.rhs - a;
    if (viol > 0.0) total += penalty_weight * viol * viol;
  }
  return total;
}

double QpReduction::max_violation(std::span<const double> x) const {
  double worst = 0.0;
  for (const auto& c : inequalities) {
    const double a = activity(c, x);
    worst = std::max(worst, c.comparator == Comparator::le ? a - c.rhs : c.rhs - a);
  }
  return worst;
}

}  // namespace ebench
