#include "poslab/transmaps.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <unordered_map>

namespace poslab {
namespace {

const std::string kA2 = "(t2*t3/(t1+t3), t1+t3, t1*t2/(t1+t3))";

const std::string kB2 =
    "pi1 = t1*t2 + (t1+t3)*t4;\n"
    "pi2 = t1^2*t2 + (t1+t3)^2*t4;\n"
    "(t2*t3^2*t4/pi2, pi2/pi1, pi1^2/pi2, t1*t2*t3/pi1)";

const std::string kC2 =
    "pi1 = t1*t2 + (t1+t3)*t4;\n"
    "pi2 = t3*t4^2 + (t2+t4)^2*t1;\n"
    "(t2*t3*t4/pi1, pi1^2/pi2, pi2/pi1, t1*t2^2*t3/pi2)";

const std::string kG2 =
    "s13 = t1+t3;\n"
    "s35 = t3+t5;\n"
    "c2 = 3*t1*t3 + 2*t3^2 + 2*t3*t5 + 2*t1*t5;\n"
    "c3 = 3*t1*t3 + 3*t3^2 + 3*t3*t5 + 2*t1*t5;\n"
    "pi1 = t1*t2*t3^2*t4 + t1*t2*s35^2*t6 + s13*t4*t5^2*t6;\n"
    "pi2 = t1^2*t2^2*t3^3*t4 + t1^2*t2^2*s35^3*t6 + s13^2*t4^2*t5^3*t6 + t1*t2*t4*t5^2*t6*c2;\n"
    "pi3 = t1^3*t2^2*t3^3*t4 + t1^3*t2^2*s35^3*t6 + s13^3*t4^2*t5^3*t6 + t1^2*t2*t4*t5^2*t6*c3;\n"
    "pi4 = t1^2*t2^2*t3^3*t4*(t1*t2*t3^3*t4 + 2*t1*t2*s35^3*t6 + c3*t4*t5^2*t6)\n"
    "      + t6^2*(t1*t2*s35^2 + s13*t4*t5^2)^3;\n"
    "(t2*t3^3*t4^2*t5^3*t6/pi3, pi3/pi2, pi2^3/(pi3*pi4), pi4/(pi1*pi2), pi1^3/pi4, t1*t2*t3^2*t4*t5/pi1)";

}  // namespace

const std::string& builtin_text(RootType type) {
  switch (type) {
    case RootType::A2: return kA2;
    case RootType::B2: return kB2;
    case RootType::C2: return kC2;
    case RootType::G2: return kG2;
    default: throw UnsupportedType(to_string(type) + " has no builtin transition map");
  }
}

TransitionMapDef builtin_map(RootType type) {
  const RootSystem rs = build_root_system(type);
  TransitionMapDef m;
  m.type = type;
  m.components = parse_expr(builtin_text(type), static_cast<std::size_t>(rs.longest_word_length));
  m.source_word = alternating_word(rs, 1);
  m.target_word = alternating_word(rs, 2);
  m.shape_system = type == RootType::G2 ? coroot_system(rs) : rs;
  return m;
}

TransitionMapDef builtin_map(const std::string& tag) { return builtin_map(parse_root_type(tag)); }

std::vector<double> source_shapes(const TransitionMapDef& map, const std::vector<double>& a) {
  return gamma_parameters(map.shape_system, map.source_word, drift_from_chamber_coords(map.shape_system, a));
}

std::vector<double> target_shapes(const TransitionMapDef& map, const std::vector<double>& a) {
  return gamma_parameters(map.shape_system, map.target_word, drift_from_chamber_coords(map.shape_system, a));
}

std::vector<SemiringValue> eval(const TransitionMapDef& map, const std::vector<SemiringValue>& values) {
  return evaluate_any(map.components, values);
}

std::vector<mpq_class> eval_rational(const TransitionMapDef& map, const std::vector<mpq_class>& t) {
  return evaluate<RationalSemiring>(map.components, t);
}

std::vector<double> eval_float(const TransitionMapDef& map, const std::vector<double>& t) {
  return evaluate<FloatSemiring>(map.components, t);
}

std::vector<double> eval_tropical(const TransitionMapDef& map, const std::vector<double>& x) {
  return evaluate<TropicalSemiring>(map.components, x);
}

double tropical_limit_error(const TransitionMapDef& map, const std::vector<double>& x, double h) {
  if (!(h > 0.0)) throw InvalidArgument("h must be positive");
  std::vector<double> logs(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    logs[i] = -x[i] / h;
    if (!std::isfinite(logs[i])) throw NumericOverflow("x/h overflows; use a smaller range of x or a larger h");
  }
  const auto lg = evaluate<LogSemiring>(map.components, logs);
  const auto tr = eval_tropical(map, x);
  double err = 0.0;
  for (std::size_t k = 0; k < lg.size(); ++k) {
    const double d = std::abs(-h * lg[k] - tr[k]);
    if (!std::isfinite(d)) throw NumericOverflow("non-finite tropical-limit error");
    err = std::max(err, d);
  }
  return err;
}

std::vector<double> numeric_inverse(const TransitionMapDef& map, const std::vector<double>& y,
                                    std::vector<double> x0, const NewtonOptions& opt) {
  const std::size_t m = map.arity();
  if (y.size() != m) throw InvalidArgument("target has wrong length");
  for (double v : y)
    if (!(v > 0.0)) throw InvalidArgument("targets must be positive");
  if (x0.empty()) x0.assign(m, 1.0);
  if (x0.size() != m) throw InvalidArgument("start point has wrong length");

  const double ynorm = *std::max_element(y.begin(), y.end());
  using VecX = Eigen::VectorXd;
  VecX u(m), logy(m);
  for (std::size_t i = 0; i < m; ++i) {
    u[i] = std::log(x0[i]);
    logy[i] = std::log(y[i]);
  }
  auto image = [&](const VecX& uu) {
    std::vector<double> x(m);
    for (std::size_t i = 0; i < m; ++i) x[i] = std::exp(uu[i]);
    return eval_float(map, x);
  };
  auto residual = [&](const std::vector<double>& f) {
    double r = 0.0;
    for (std::size_t i = 0; i < m; ++i) r = std::max(r, std::abs(f[i] - y[i]));
    return r / ynorm;
  };
  auto log_gap = [&](const std::vector<double>& f) {
    VecX g(m);
    for (std::size_t i = 0; i < m; ++i) g[i] = std::log(f[i]) - logy[i];
    return g;
  };

  auto f = image(u);
  double res = residual(f);
  for (int it = 0; it < opt.max_iterations; ++it) {
    if (res <= opt.tolerance) {
      std::vector<double> x(m);
      for (std::size_t i = 0; i < m; ++i) x[i] = std::exp(u[i]);
      return x;
    }
    const VecX g = log_gap(f);
    Eigen::MatrixXd jac(m, m);
    const double step = 1e-6;
    for (std::size_t j = 0; j < m; ++j) {
      VecX up = u, dn = u;
      up[j] += step;
      dn[j] -= step;
      const VecX gp = log_gap(image(up));
      const VecX gm = log_gap(image(dn));
      jac.col(j) = (gp - gm) / (2.0 * step);
    }
    const VecX delta = jac.partialPivLu().solve(-g);
    if (!delta.allFinite()) throw NoConvergence("singular Jacobian in Newton iteration");
    double lambda = 1.0;
    bool improved = false;
    for (int k = 0; k <= opt.max_halvings; ++k, lambda *= 0.5) {
      const VecX trial = u + lambda * delta;
      const auto ft = image(trial);
      const double rt = residual(ft);
      if (std::isfinite(rt) && (rt < res || g.norm() < 1e-300)) {
        u = trial;
        f = ft;
        res = rt;
        improved = true;
        break;
      }
    }
    if (!improved) break;
  }
  if (res <= opt.tolerance) {
    std::vector<double> x(m);
    for (std::size_t i = 0; i < m; ++i) x[i] = std::exp(u[i]);
    return x;
  }
  throw NoConvergence("Newton inverse did not converge (relative residual " + std::to_string(res) + ")");
}

std::vector<std::int64_t> tropical_image(const TransitionMapDef& map, const std::vector<std::int64_t>& x) {
  std::vector<double> xd(x.begin(), x.end());
  const auto img = eval_tropical(map, xd);
  std::vector<std::int64_t> out(img.size());
  for (std::size_t k = 0; k < img.size(); ++k) {
    const double r = std::round(img[k]);
    if (std::abs(img[k] - r) > 1e-9) throw NumericError("non-integral tropical image");
    out[k] = static_cast<std::int64_t>(r);
  }
  return out;
}

InjectivityReport tropical_injectivity_check(const TransitionMapDef& map, int box_limit) {
  if (box_limit < 0) throw InvalidArgument("box limit must be nonnegative");
  const std::size_t m = map.arity();
  const double total = std::pow(box_limit + 1.0, static_cast<double>(m));
  if (total > 5e7) throw InvalidArgument("box too large to enumerate");

  struct Hash {
    std::size_t operator()(const std::vector<std::int64_t>& v) const {
      std::size_t h = 1469598103934665603ull;
      for (auto x : v) h = (h ^ static_cast<std::size_t>(x)) * 1099511628211ull;
      return h;
    }
  };
  std::unordered_map<std::vector<std::int64_t>, std::vector<std::int64_t>, Hash> seen;
  seen.reserve(static_cast<std::size_t>(total));

  InjectivityReport rep;
  std::vector<std::int64_t> x(m, 0);
  std::vector<double> xd(m, 0.0);
  while (true) {
    ++rep.points;
    for (std::size_t i = 0; i < m; ++i) xd[i] = static_cast<double>(x[i]);
    const auto img = eval_tropical(map, xd);
    std::vector<std::int64_t> key(m);
    bool natural = true;
    for (std::size_t k = 0; k < m; ++k) {
      const double r = std::round(img[k]);
      if (std::abs(img[k] - r) > 1e-9 || r < 0) natural = false;
      key[k] = static_cast<std::int64_t>(r);
    }
    if (!natural) ++rep.non_natural;
    auto [it, fresh] = seen.emplace(std::move(key), x);
    if (!fresh) {
      ++rep.collisions;
      if (rep.first_collision.empty()) rep.first_collision = {it->second, x};
    }
    std::size_t i = 0;
    while (i < m && x[i] == box_limit) x[i++] = 0;
    if (i == m) break;
    ++x[i];
  }
  return rep;
}

}  // namespace poslab
