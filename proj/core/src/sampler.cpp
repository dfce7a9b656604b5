#include "poslab/sampler.hpp"

#include <cmath>

#include "poslab/errors.hpp"
#include "poslab/unipotent.hpp"

namespace poslab {
namespace {

// Marsaglia-Tsang squeeze for shape >= 1, returned on the log scale.
double log_gamma_mt(RngStream& rng, double a) {
  const double d = a - 1.0 / 3.0;
  const double c = 1.0 / std::sqrt(9.0 * d);
  while (true) {
    double x, v;
    do {
      x = rng.normal();
      v = 1.0 + c * x;
    } while (v <= 0.0);
    v = v * v * v;
    const double u = rng.uniform();
    const double x2 = x * x;
    if (u < 1.0 - 0.0331 * x2 * x2 || std::log(u) < 0.5 * x2 + d * (1.0 - v + std::log(v)))
      return std::log(d) + std::log(v);
  }
}

void check_shape(double a) {
  if (!(a > 0.0) || !std::isfinite(a)) throw InvalidArgument("gamma shape must be positive");
}

}  // namespace

double log_gamma_draw(RngStream& rng, double shape) {
  check_shape(shape);
  if (shape >= 1.0) return log_gamma_mt(rng, shape);
  // gamma_a = gamma_{a+1} * U^{1/a}
  const double lg = log_gamma_mt(rng, shape + 1.0);
  return lg + std::log(rng.uniform()) / shape;
}

double gamma_draw(RngStream& rng, double shape) { return std::exp(log_gamma_draw(rng, shape)); }

double exponential_draw(RngStream& rng, double rate) {
  if (!(rate > 0.0) || !std::isfinite(rate)) throw InvalidArgument("exponential rate must be positive");
  return -std::log(rng.uniform()) / rate;
}

std::uint64_t geometric_draw(RngStream& rng, double z) {
  if (!(z > 0.0 && z < 1.0)) throw InvalidArgument("geometric parameter must lie in (0,1)");
  return static_cast<std::uint64_t>(std::floor(-std::log(rng.uniform()) / -std::log(z)));
}

std::vector<double> gamma_to_exponential_limit(RngStream& rng, double mu, double h, std::size_t n) {
  if (!(mu > 0.0) || !(h > 0.0)) throw InvalidArgument("mu and h must be positive");
  std::vector<double> out(n);
  for (auto& x : out) x = -h * log_gamma_draw(rng, h * mu);
  return out;
}

GammaVector sample_gamma_vector(RngStream& rng, const std::vector<double>& shapes, const ReducedWord& word) {
  GammaVector g{word, shapes, std::vector<double>(shapes.size())};
  for (std::size_t j = 0; j < shapes.size(); ++j) g.values[j] = gamma_draw(rng, shapes[j]);
  return g;
}

GammaVector sample_gamma_vector(RngStream& rng, const RootSystem& rs, const ReducedWord& word, const ChamberDrift& drift) {
  return sample_gamma_vector(rng, gamma_parameters(rs, word, drift), word);
}

SquareMatrix<double> sample_D_mu(RngStream& rng, const ReducedWord& word, const ChamberDrift& drift) {
  static const RootSystem a2 = build_root_system(RootType::A2);
  const auto g = sample_gamma_vector(rng, a2, word, drift);
  return theta_twist(lusztig_product(3, LusztigParams<double>{word, g.values}));
}

}  // namespace poslab
