#include "poslab/expr.hpp"

#include <functional>
#include <sstream>

namespace poslab {

std::uint32_t Expr::Builder::intern(const Node& n) {
  const auto key = std::make_tuple(static_cast<int>(n.kind), n.lhs, n.rhs, n.value);
  if (auto it = seen_.find(key); it != seen_.end()) return it->second;
  const auto id = static_cast<std::uint32_t>(nodes_.size());
  nodes_.push_back(n);
  seen_.emplace(key, id);
  return id;
}

std::uint32_t Expr::Builder::variable(std::size_t index) {
  if (index >= arity_) throw UnknownVariable("variable t" + std::to_string(index + 1) + " exceeds arity " + std::to_string(arity_));
  return intern({NodeKind::variable, 0, 0, index});
}

std::uint32_t Expr::Builder::constant(std::uint64_t k) {
  if (k == 0) throw SyntaxError("constants must be positive integers");
  return intern({NodeKind::constant, 0, 0, k});
}

std::uint32_t Expr::Builder::add(std::uint32_t a, std::uint32_t b) { return intern({NodeKind::add, a, b, 0}); }
std::uint32_t Expr::Builder::mul(std::uint32_t a, std::uint32_t b) { return intern({NodeKind::mul, a, b, 0}); }
std::uint32_t Expr::Builder::div(std::uint32_t a, std::uint32_t b) { return intern({NodeKind::div, a, b, 0}); }

std::uint32_t Expr::Builder::pow(std::uint32_t a, unsigned k) {
  if (k == 0) throw SyntaxError("exponent must be a positive integer");
  std::uint32_t r = a;
  for (unsigned i = 1; i < k; ++i) r = mul(r, a);
  return r;
}

Expr Expr::Builder::finish(std::vector<std::uint32_t> outputs) const {
  Expr e;
  e.arity_ = arity_;
  e.nodes_ = nodes_;
  e.outputs_ = std::move(outputs);
  return e;
}

bool operator==(const Expr& a, const Expr& b) {
  if (a.arity_ != b.arity_ || a.outputs_.size() != b.outputs_.size()) return false;
  std::map<std::pair<std::uint32_t, std::uint32_t>, bool> memo;
  std::function<bool(std::uint32_t, std::uint32_t)> same = [&](std::uint32_t i, std::uint32_t j) {
    if (auto it = memo.find({i, j}); it != memo.end()) return it->second;
    const Node& x = a.nodes_[i];
    const Node& y = b.nodes_[j];
    bool r = x.kind == y.kind;
    if (r && (x.kind == NodeKind::variable || x.kind == NodeKind::constant))
      r = x.value == y.value;
    else if (r)
      r = same(x.lhs, y.lhs) && same(x.rhs, y.rhs);
    memo[{i, j}] = r;
    return r;
  };
  for (std::size_t k = 0; k < a.outputs_.size(); ++k)
    if (!same(a.outputs_[k], b.outputs_[k])) return false;
  return true;
}

std::vector<SemiringValue> evaluate_any(const Expr& e, const std::vector<SemiringValue>& x) {
  if (x.empty()) {
    if (e.arity() != 0) throw InvalidArgument("no input values");
    return {};
  }
  const auto idx = x.front().index();
  for (const auto& v : x)
    if (v.index() != idx) throw InvalidArgument("mixed-semiring input rejected");
  std::vector<SemiringValue> out;
  if (idx == 0) {
    std::vector<mpq_class> in;
    for (const auto& v : x) {
      if (std::get<0>(v) <= 0) throw InvalidArgument("rational inputs must be positive");
      in.push_back(std::get<0>(v));
    }
    for (auto& r : evaluate<RationalSemiring>(e, in)) out.emplace_back(std::move(r));
  } else if (idx == 1) {
    std::vector<double> in;
    for (const auto& v : x) {
      if (!(std::get<1>(v) > 0.0) || !std::isfinite(std::get<1>(v))) throw InvalidArgument("float inputs must be positive and finite");
      in.push_back(std::get<1>(v));
    }
    for (double r : evaluate<FloatSemiring>(e, in)) out.emplace_back(r);
  } else {
    std::vector<double> in;
    for (const auto& v : x) in.push_back(std::get<2>(v).v);
    for (double r : evaluate<TropicalSemiring>(e, in)) out.emplace_back(Tropical{r});
  }
  return out;
}

std::string to_string(const Expr& e, std::size_t output) {
  std::function<std::string(std::uint32_t)> rec = [&](std::uint32_t i) -> std::string {
    const Node& n = e.nodes()[i];
    switch (n.kind) {
      case NodeKind::variable: return "t" + std::to_string(n.value + 1);
      case NodeKind::constant: return std::to_string(n.value);
      case NodeKind::add: return "(" + rec(n.lhs) + "+" + rec(n.rhs) + ")";
      case NodeKind::mul: return rec(n.lhs) + "*" + rec(n.rhs);
      case NodeKind::div: return rec(n.lhs) + "/(" + rec(n.rhs) + ")";
    }
    return {};
  };
  return rec(e.outputs().at(output));
}

}  // namespace poslab
