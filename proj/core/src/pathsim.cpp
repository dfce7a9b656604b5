#include "poslab/pathsim.hpp"

#include <cmath>
#include <iomanip>
#include <ostream>

#include "poslab/errors.hpp"

namespace poslab {

double PathGrid::form(std::size_t k, const Vec& beta) const {
  const double* x = samples.data() + k * dim;
  double s = 0.0;
  for (std::size_t c = 0; c < dim; ++c) s += beta[c] * x[c];
  return s;
}

std::size_t grid_steps(double T, double dt) {
  if (!(T > 0.0) || !(dt > 0.0)) throw InvalidArgument("T and dt must be positive");
  const double r = T / dt;
  const double n = std::round(r);
  if (std::abs(r - n) > 1e-9 * std::max(1.0, r)) throw InvalidArgument("dt must divide T");
  return static_cast<std::size_t>(n);
}

PathGrid zero_path(std::size_t dim, double T, double dt) {
  const std::size_t n = grid_steps(T, dt);
  return PathGrid{dim, dt, T, std::vector<double>((n + 1) * dim, 0.0)};
}

PathGrid linear_path(const Vec& v, double T, double dt) {
  PathGrid p = zero_path(v.size(), T, dt);
  for (std::size_t k = 0; k <= p.steps(); ++k)
    for (std::size_t c = 0; c < v.size(); ++c) p.at(k)[c] = static_cast<double>(k) * dt * v[c];
  return p;
}

PathGrid sample_brownian_path(RngStream& rng, const RootSystem& rs, const Vec& drift, const Vec& x0, double T, double dt) {
  const std::size_t dim = static_cast<std::size_t>(rs.ambient_dim);
  if (drift.size() != dim || x0.size() != dim) throw InvalidArgument("drift/start dimension mismatch");
  const std::size_t n = grid_steps(T, dt);
  const auto basis = orthonormal_basis(rs);
  const double sq = std::sqrt(dt);
  PathGrid p{dim, dt, T, std::vector<double>((n + 1) * dim)};
  double* x = p.samples.data();
  for (std::size_t c = 0; c < dim; ++c) x[c] = x0[c];
  std::vector<double> inc(dim);
  for (std::size_t k = 1; k <= n; ++k) {
    for (std::size_t c = 0; c < dim; ++c) inc[c] = drift[c] * dt;
    for (const auto& e : basis) {
      const double z = sq * rng.normal();
      for (std::size_t c = 0; c < dim; ++c) inc[c] += z * e[c];
    }
    double* prev = x + (k - 1) * dim;
    double* cur = x + k * dim;
    for (std::size_t c = 0; c < dim; ++c) cur[c] = prev[c] + inc[c];
    if (rs.zero_sum) {
      // keep rounding drift off the hyperplane
      double s = 0.0;
      for (std::size_t c = 0; c < dim; ++c) s += cur[c];
      s /= static_cast<double>(dim);
      for (std::size_t c = 0; c < dim; ++c) cur[c] -= s;
    }
  }
  return p;
}

PathGrid sample_brownian_path(RngStream& rng, const RootSystem& rs, const ChamberDrift& drift, const Vec& x0, double T, double dt) {
  return sample_brownian_path(rng, rs, drift.vector, x0, T, dt);
}

FunctionalAccumulator exponential_functional(const PathGrid& path, const Vec& beta, double weight) {
  if (beta.size() != path.dim) throw InvalidArgument("linear form dimension mismatch");
  FunctionalAccumulator acc{beta, weight, std::vector<double>(path.steps() + 1)};
  const double h = 0.5 * weight * path.dt;
  double prev = std::exp(-path.form(0, beta));
  acc.values[0] = 0.0;
  for (std::size_t k = 1; k <= path.steps(); ++k) {
    const double cur = std::exp(-path.form(k, beta));
    acc.values[k] = acc.values[k - 1] + h * (prev + cur);
    prev = cur;
  }
  return acc;
}

SquareMatrix<double> n_matrix(const PathGrid& path, const RootSystem& rs) {
  if (path.dim != static_cast<std::size_t>(rs.ambient_dim)) throw InvalidArgument("path/root system dimension mismatch");
  if (rs.type == RootType::A1) {
    const Vec& a = rs.simple_roots[0];
    auto m = SquareMatrix<double>::identity(2);
    m(1, 0) = exponential_functional(path, a, dot(a, a) / 2.0).final_value();
    return m;
  }
  if (rs.type != RootType::A2 || rs.coroots) throw InvalidArgument("n_matrix supports A1 and A2 only");
  const Vec& a1 = rs.simple_roots[0];
  const Vec& a2 = rs.simple_roots[1];
  const double c1 = dot(a1, a1) / 2.0;
  const double c2 = dot(a2, a2) / 2.0;
  const double h = 0.5 * path.dt;
  double i1 = 0.0, i2 = 0.0, i12 = 0.0;
  double f1 = c1 * std::exp(-path.form(0, a1));
  double f2 = c2 * std::exp(-path.form(0, a2));
  double g = 0.0;  // f1 * running inner integral of f2
  for (std::size_t k = 1; k <= path.steps(); ++k) {
    const double e1 = c1 * std::exp(-path.form(k, a1));
    const double e2 = c2 * std::exp(-path.form(k, a2));
    i1 += h * (f1 + e1);
    i2 += h * (f2 + e2);
    const double gk = e1 * i2;
    i12 += h * (g + gk);
    f1 = e1;
    f2 = e2;
    g = gk;
  }
  auto m = SquareMatrix<double>::identity(3);
  m(1, 0) = i1;
  m(2, 1) = i2;
  m(2, 0) = i12;
  return m;
}

namespace {

Vec coroot(const Vec& alpha) {
  Vec v = alpha;
  const double s = 2.0 / dot(alpha, alpha);
  for (double& x : v) x *= s;
  return v;
}

// X + log(1 + c I) alpha^v with I the unweighted running integral of e^{-alpha(X)}.
PathGrid shift_by_log(const PathGrid& path, const Vec& alpha, double c) {
  const Vec av = coroot(alpha);
  const auto acc = exponential_functional(path, alpha, 1.0);
  PathGrid out = path;
  for (std::size_t k = 0; k <= path.steps(); ++k) {
    const double arg = c * acc.values[k];
    if (arg <= -1.0) throw NumericError("inversion condition violated: integral reached n");
    const double l = std::log1p(arg);
    auto row = out.at(k);
    for (std::size_t d = 0; d < path.dim; ++d) row[d] += l * av[d];
  }
  return out;
}

}  // namespace

PathGrid path_transform_elementary(const PathGrid& path, const Vec& alpha, double xi) {
  if (!(xi > 0.0)) throw InvalidArgument("xi must be positive");
  if (alpha.size() != path.dim) throw InvalidArgument("root dimension mismatch");
  return shift_by_log(path, alpha, xi);
}

PathGrid path_transform_elementary_inverse(const PathGrid& path, const Vec& alpha, double n) {
  if (!(n > 0.0)) throw InvalidArgument("n must be positive");
  if (alpha.size() != path.dim) throw InvalidArgument("root dimension mismatch");
  return shift_by_log(path, alpha, -1.0 / n);
}

PathGrid path_transform_word(const PathGrid& path, const RootSystem& rs, const ReducedWord& word,
                             const std::vector<double>& params) {
  if (word.size() != params.size()) throw InvalidArgument("word/parameter length mismatch");
  const Vec theta = theta_shift(rs);
  PathGrid out = path;
  for (std::size_t j = word.size(); j-- > 0;) {
    if (word[j] < 1 || word[j] > rs.rank()) throw InvalidArgument("word letter out of range");
    const Vec& a = rs.simple_roots[word[j] - 1];
    out = path_transform_elementary(out, a, std::exp(dot(a, theta)) * params[j]);
  }
  return out;
}

double inversion_residual(const PathGrid& x, const PathGrid& y, const Vec& beta, double n) {
  if (x.dim != y.dim || x.samples.size() != y.samples.size()) throw InvalidArgument("paths on different grids");
  const auto ix = exponential_functional(x, beta, 1.0);
  const auto iy = exponential_functional(y, beta, 1.0);
  double r = 0.0;
  for (std::size_t k = 0; k < ix.values.size(); ++k)
    r = std::max(r, std::abs((1.0 + iy.values[k] / n) * (1.0 - ix.values[k] / n) - 1.0));
  return r;
}

double quadratic_variation(const PathGrid& path, std::size_t c) {
  double q = 0.0;
  for (std::size_t k = 1; k <= path.steps(); ++k) {
    const double d = path.at(k)[c] - path.at(k - 1)[c];
    q += d * d;
  }
  return q;
}

double dufresne_generator_residual(double mu, const std::vector<double>& z_grid, DerivativeMode mode, double fd_step) {
  if (!(mu > 0.0)) throw InvalidArgument("mu must be positive");
  const double logc = -std::lgamma(mu) - mu * std::log(2.0);
  auto p = [&](double z) { return std::exp(logc + mu * z - 0.5 * std::exp(z)); };
  double worst = 0.0;
  for (double z : z_grid) {
    double r;
    if (mode == DerivativeMode::analytic) {
      // p' = u p, p'' = (u' + u^2) p with u = mu - e^z/2
      const double ez = std::exp(z);
      const double u = mu - 0.5 * ez;
      const double pz = p(z);
      const double p1 = u * pz;
      const double p2 = (-0.5 * ez + u * u) * pz;
      // ((2mu - e^z) p)' = -e^z p + (2mu - e^z) p'
      r = 2.0 * p2 - (-ez * pz + (2.0 * mu - ez) * p1);
    } else {
      const double h = fd_step;
      auto q = [&](double s) { return (2.0 * mu - std::exp(s)) * p(s); };
      const double p2 = (p(z + h) - 2.0 * p(z) + p(z - h)) / (h * h);
      const double q1 = (q(z + h) - q(z - h)) / (2.0 * h);
      r = 2.0 * p2 - q1;
    }
    worst = std::max(worst, std::abs(r));
  }
  return worst;
}

void write_csv(std::ostream& os, const std::vector<std::string>& columns,
               const std::vector<std::vector<double>>& rows, const std::vector<std::uint64_t>& row_seeds) {
  std::string header;
  for (std::size_t i = 0; i < columns.size(); ++i) header += (i ? "," : "") + columns[i];
  header += ",seed";
  os << "# columns: " << header << '\n' << header << '\n';
  os << std::setprecision(17);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    for (std::size_t c = 0; c < rows[r].size(); ++c) os << (c ? "," : "") << rows[r][c];
    os << ',' << row_seeds.at(r) << '\n';
  }
}

}  // namespace poslab
