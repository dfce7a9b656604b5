#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "poslab/expr.hpp"
#include "poslab/rootsys.hpp"

namespace poslab {

struct TransitionMapDef {
  RootType type = RootType::A2;
  ReducedWord source_word;  // (1,2,...)
  ReducedWord target_word;  // (2,1,...)
  Expr components;
  // Root data whose coefficient pairing gives the gamma/exponential/geometric
  // shapes of the identity (the coroot system for G2).
  RootSystem shape_system;

  std::size_t arity() const { return components.arity(); }
};

TransitionMapDef builtin_map(RootType type);
TransitionMapDef builtin_map(const std::string& tag);

// Formula text (let-bindings + tuple) the builtin is parsed from.
const std::string& builtin_text(RootType type);

std::vector<double> source_shapes(const TransitionMapDef& map, const std::vector<double>& a);
std::vector<double> target_shapes(const TransitionMapDef& map, const std::vector<double>& a);

std::vector<SemiringValue> eval(const TransitionMapDef& map, const std::vector<SemiringValue>& values);
std::vector<mpq_class> eval_rational(const TransitionMapDef& map, const std::vector<mpq_class>& t);
std::vector<double> eval_float(const TransitionMapDef& map, const std::vector<double>& t);
std::vector<double> eval_tropical(const TransitionMapDef& map, const std::vector<double>& x);

// max_k | -h log R_k(e^{-x/h}) - [R_k]_trop(x) |, the left term computed in log space.
double tropical_limit_error(const TransitionMapDef& map, const std::vector<double>& x, double h);

struct NewtonOptions {
  double tolerance = 1e-10;
  int max_iterations = 200;
  int max_halvings = 30;
};

// Solves eval_float(map, x) = y for positive x (damped Newton in log coordinates).
std::vector<double> numeric_inverse(const TransitionMapDef& map, const std::vector<double>& y,
                                    std::vector<double> x0 = {}, const NewtonOptions& opt = {});

struct InjectivityReport {
  std::uint64_t points = 0;
  std::uint64_t collisions = 0;
  std::uint64_t non_natural = 0;  // images that are negative or non-integral
  std::vector<std::vector<std::int64_t>> first_collision;  // two preimages, when any
  bool ok() const { return collisions == 0 && non_natural == 0; }
};

InjectivityReport tropical_injectivity_check(const TransitionMapDef& map, int box_limit);

// Tropical image of an integer point; throws if some component is not an integer.
std::vector<std::int64_t> tropical_image(const TransitionMapDef& map, const std::vector<std::int64_t>& x);

}  // namespace poslab
