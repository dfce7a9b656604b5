#pragma once

#include <gmpxx.h>

#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <span>
#include <string>
#include <tuple>
#include <variant>
#include <vector>

#include "poslab/errors.hpp"

namespace poslab {

enum class NodeKind : std::uint8_t { variable, constant, add, mul, div };

struct Node {
  NodeKind kind = NodeKind::constant;
  std::uint32_t lhs = 0;
  std::uint32_t rhs = 0;
  std::uint64_t value = 0;  // variable index or constant
};

// Subtraction-free expression DAG with one or more outputs. Nodes are stored in
// topological order; identical nodes are shared (hash-consed).
class Expr {
 public:
  class Builder;

  std::size_t arity() const { return arity_; }
  const std::vector<Node>& nodes() const { return nodes_; }
  const std::vector<std::uint32_t>& outputs() const { return outputs_; }
  std::size_t output_count() const { return outputs_.size(); }

  // Structural equality of the output trees.
  friend bool operator==(const Expr& a, const Expr& b);

 private:
  std::size_t arity_ = 0;
  std::vector<Node> nodes_;
  std::vector<std::uint32_t> outputs_;
};

class Expr::Builder {
 public:
  explicit Builder(std::size_t arity) : arity_(arity) {}

  std::uint32_t variable(std::size_t index);
  std::uint32_t constant(std::uint64_t k);
  std::uint32_t add(std::uint32_t a, std::uint32_t b);
  std::uint32_t mul(std::uint32_t a, std::uint32_t b);
  std::uint32_t div(std::uint32_t a, std::uint32_t b);
  std::uint32_t pow(std::uint32_t a, unsigned k);

  Expr finish(std::vector<std::uint32_t> outputs) const;

 private:
  std::uint32_t intern(const Node& n);

  std::size_t arity_;
  std::vector<Node> nodes_;
  std::map<std::tuple<int, std::uint32_t, std::uint32_t, std::uint64_t>, std::uint32_t> seen_;
};

// ---- semirings ----------------------------------------------------------

struct RationalSemiring {
  using value_type = mpq_class;
  static value_type constant(std::uint64_t k) { return mpq_class(static_cast<unsigned long>(k)); }
  static value_type add(const value_type& a, const value_type& b) { return a + b; }
  static value_type mul(const value_type& a, const value_type& b) { return a * b; }
  static value_type div(const value_type& a, const value_type& b) { return a / b; }
};

struct FloatSemiring {
  using value_type = double;
  static double constant(std::uint64_t k) { return static_cast<double>(k); }
  static double add(double a, double b) { return a + b; }
  static double mul(double a, double b) { return a * b; }
  static double div(double a, double b) { return a / b; }
};

// Positive floats represented by their logarithms.
struct LogSemiring {
  using value_type = double;
  static double constant(std::uint64_t k) { return std::log(static_cast<double>(k)); }
  static double add(double a, double b) {
    const double m = std::max(a, b);
    return m + std::log1p(std::exp(std::min(a, b) - m));
  }
  static double mul(double a, double b) { return a + b; }
  static double div(double a, double b) { return a - b; }
};

// (min, +, -); integer constants k >= 1 tropicalize to 0.
struct TropicalSemiring {
  using value_type = double;
  static double constant(std::uint64_t) { return 0.0; }
  static double add(double a, double b) { return std::min(a, b); }
  static double mul(double a, double b) { return a + b; }
  static double div(double a, double b) { return a - b; }
};

template <class SR>
std::vector<typename SR::value_type> evaluate(const Expr& e, std::span<const typename SR::value_type> x) {
  using V = typename SR::value_type;
  if (x.size() != e.arity())
    throw InvalidArgument("expected " + std::to_string(e.arity()) + " values, got " + std::to_string(x.size()));
  std::vector<V> val(e.nodes().size());
  for (std::size_t i = 0; i < val.size(); ++i) {
    const Node& n = e.nodes()[i];
    switch (n.kind) {
      case NodeKind::variable: val[i] = x[n.value]; break;
      case NodeKind::constant: val[i] = SR::constant(n.value); break;
      case NodeKind::add: val[i] = SR::add(val[n.lhs], val[n.rhs]); break;
      case NodeKind::mul: val[i] = SR::mul(val[n.lhs], val[n.rhs]); break;
      case NodeKind::div: val[i] = SR::div(val[n.lhs], val[n.rhs]); break;
    }
  }
  std::vector<V> out;
  out.reserve(e.output_count());
  for (auto r : e.outputs()) out.push_back(val[r]);
  return out;
}

template <class SR>
std::vector<typename SR::value_type> evaluate(const Expr& e, const std::vector<typename SR::value_type>& x) {
  return evaluate<SR>(e, std::span<const typename SR::value_type>(x.data(), x.size()));
}

struct Tropical {
  double v = 0.0;
  friend bool operator==(const Tropical&, const Tropical&) = default;
};

using SemiringValue = std::variant<mpq_class, double, Tropical>;

// All inputs must share one alternative; rational/float inputs must be > 0.
std::vector<SemiringValue> evaluate_any(const Expr& e, const std::vector<SemiringValue>& x);

// ---- text syntax ---------------------------------------------------------
//   program := { name '=' expr ';' } output [';']
//   output  := expr | '(' expr { ',' expr } ')'
//   expr    := term { '+' term }      term := factor { ('*'|'/') factor }
//   factor  := primary [ '^' integer ]
//   primary := integer | t1..t9 | name | '(' expr ')'
Expr parse_expr(const std::string& text, std::size_t arity);

std::string to_string(const Expr& e, std::size_t output = 0);

}  // namespace poslab
