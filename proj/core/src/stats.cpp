#include "poslab/stats.hpp"

#include <boost/math/special_functions/gamma.hpp>

#include <algorithm>
#include <cmath>
#include <numeric>

#include "poslab/errors.hpp"
#include "poslab/rng.hpp"

namespace poslab {

double kolmogorov_survival(double lambda) {
  if (lambda <= 0.0) return 1.0;
  if (lambda < 0.2) return 1.0;
  double s = 0.0;
  for (int k = 1; k <= 200; ++k) {
    const double term = std::exp(-2.0 * k * k * lambda * lambda);
    s += (k % 2 ? 1.0 : -1.0) * term;
    if (term < 1e-18) break;
  }
  return std::clamp(2.0 * s, 0.0, 1.0);
}

namespace {
double ks_p(double d, double ne) {
  const double sq = std::sqrt(ne);
  return kolmogorov_survival((sq + 0.12 + 0.11 / sq) * d);
}
}  // namespace

KsResult ks_one_sample(std::span<const double> samples, const std::function<double(double)>& cdf) {
  if (samples.empty()) throw InvalidArgument("KS test on empty sample");
  std::vector<double> x(samples.begin(), samples.end());
  std::sort(x.begin(), x.end());
  const double n = static_cast<double>(x.size());
  double d = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double f = cdf(x[i]);
    d = std::max({d, (i + 1) / n - f, f - i / n});
  }
  return {d, ks_p(d, n)};
}

KsResult ks_two_sample(std::span<const double> a, std::span<const double> b) {
  if (a.empty() || b.empty()) throw InvalidArgument("KS test on empty sample");
  std::vector<double> x(a.begin(), a.end()), y(b.begin(), b.end());
  std::sort(x.begin(), x.end());
  std::sort(y.begin(), y.end());
  const double n = static_cast<double>(x.size()), m = static_cast<double>(y.size());
  std::size_t i = 0, j = 0;
  double d = 0.0;
  while (i < x.size() && j < y.size()) {
    const double v = std::min(x[i], y[j]);
    while (i < x.size() && x[i] == v) ++i;
    while (j < y.size() && y[j] == v) ++j;
    d = std::max(d, std::abs(i / n - j / m));
  }
  return {d, ks_p(d, n * m / (n + m))};
}

ChiSquareResult chi_square_gof(const std::vector<double>& observed, const std::vector<double>& probs, double min_expected) {
  if (observed.size() != probs.size() || observed.empty()) throw InvalidArgument("chi-square: size mismatch");
  const double n = std::accumulate(observed.begin(), observed.end(), 0.0);
  std::vector<double> o, e;
  double oc = 0.0, ec = 0.0;
  for (std::size_t k = 0; k < observed.size(); ++k) {
    oc += observed[k];
    ec += n * probs[k];
    if (ec >= min_expected) {
      o.push_back(oc);
      e.push_back(ec);
      oc = ec = 0.0;
    }
  }
  if (ec > 0.0 || oc > 0.0) {
    if (e.empty()) {
      o.push_back(oc);
      e.push_back(ec);
    } else {
      o.back() += oc;
      e.back() += ec;
    }
  }
  ChiSquareResult r;
  for (std::size_t k = 0; k < o.size(); ++k) r.statistic += (o[k] - e[k]) * (o[k] - e[k]) / e[k];
  r.dof = static_cast<int>(o.size()) - 1;
  r.p_value = r.dof > 0 ? boost::math::gamma_q(0.5 * r.dof, 0.5 * r.statistic) : 1.0;
  return r;
}

std::vector<double> ranks(std::span<const double> x) {
  std::vector<std::size_t> idx(x.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return x[a] < x[b]; });
  std::vector<double> r(x.size());
  for (std::size_t i = 0; i < idx.size();) {
    std::size_t j = i;
    while (j + 1 < idx.size() && x[idx[j + 1]] == x[idx[i]]) ++j;
    const double avg = 0.5 * (i + j) + 1.0;
    for (std::size_t k = i; k <= j; ++k) r[idx[k]] = avg;
    i = j + 1;
  }
  return r;
}

namespace {
double pearson(const std::vector<double>& x, const std::vector<double>& y) {
  const double n = static_cast<double>(x.size());
  const double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
  const double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
    syy += (y[i] - my) * (y[i] - my);
  }
  return (sxx > 0 && syy > 0) ? sxy / std::sqrt(sxx * syy) : 0.0;
}
}  // namespace

double spearman(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2) throw InvalidArgument("spearman: length mismatch");
  return pearson(ranks(x), ranks(y));
}

IndependenceResult independence_diagnostics(const std::vector<std::vector<double>>& columns) {
  if (columns.size() < 2) throw InvalidArgument("independence diagnostics need at least two columns");
  for (const auto& c : columns)
    if (c.size() != columns[0].size()) throw InvalidArgument("independence diagnostics: length mismatch");
  std::vector<std::vector<double>> rk;
  for (const auto& c : columns) rk.push_back(ranks(c));
  const std::size_t k = columns.size();
  IndependenceResult out;
  out.spearman.assign(k, std::vector<double>(k, 1.0));
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = i + 1; j < k; ++j) {
      const double r = pearson(rk[i], rk[j]);
      out.spearman[i][j] = out.spearman[j][i] = r;
      out.max_abs = std::max(out.max_abs, std::abs(r));
    }
  return out;
}

double gamma_cdf(double shape, double x) { return x <= 0.0 ? 0.0 : boost::math::gamma_p(shape, x); }
double gamma_sf(double shape, double x) { return x <= 0.0 ? 1.0 : boost::math::gamma_q(shape, x); }

EnergyResult energy_test(const std::vector<std::vector<double>>& x, const std::vector<std::vector<double>>& y,
                         int permutations, std::uint64_t seed) {
  if (x.empty() || y.empty()) throw InvalidArgument("energy test on empty sample");
  std::vector<std::vector<double>> z = x;
  z.insert(z.end(), y.begin(), y.end());
  const std::size_t n = x.size(), N = z.size();
  std::vector<double> dist(N * N, 0.0);
  for (std::size_t i = 0; i < N; ++i)
    for (std::size_t j = i + 1; j < N; ++j) {
      double s = 0.0;
      for (std::size_t c = 0; c < z[i].size(); ++c) s += (z[i][c] - z[j][c]) * (z[i][c] - z[j][c]);
      dist[i * N + j] = dist[j * N + i] = std::sqrt(s);
    }
  auto stat = [&](const std::vector<std::size_t>& perm) {
    double xy = 0.0, xx = 0.0, yy = 0.0;
    for (std::size_t i = 0; i < N; ++i)
      for (std::size_t j = 0; j < N; ++j) {
        const double d = dist[perm[i] * N + perm[j]];
        const bool a = i < n, b = j < n;
        if (a && !b) xy += d;
        else if (a && b) xx += d;
        else if (!a && !b) yy += d;
      }
    const double m = static_cast<double>(N - n), nn = static_cast<double>(n);
    return 2.0 * xy / (nn * m) - xx / (nn * nn) - yy / (m * m);
  };
  std::vector<std::size_t> perm(N);
  std::iota(perm.begin(), perm.end(), 0);
  EnergyResult r;
  r.statistic = stat(perm);
  RngStream rng(seed, 0x656e65726779ull);
  int ge = 0;
  for (int p = 0; p < permutations; ++p) {
    for (std::size_t i = N - 1; i > 0; --i) std::swap(perm[i], perm[rng.next_u64() % (i + 1)]);
    if (stat(perm) >= r.statistic) ++ge;
  }
  r.p_value = (ge + 1.0) / (permutations + 1.0);
  return r;
}

}  // namespace poslab
