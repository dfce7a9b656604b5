#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

namespace poslab {

struct KsResult {
  double statistic = 0.0;
  double p_value = 1.0;
};

// P(K > lambda) for the limiting Kolmogorov distribution.
double kolmogorov_survival(double lambda);

KsResult ks_one_sample(std::span<const double> samples, const std::function<double(double)>& cdf);
KsResult ks_two_sample(std::span<const double> a, std::span<const double> b);

struct ChiSquareResult {
  double statistic = 0.0;
  int dof = 0;
  double p_value = 1.0;
};

// Pearson goodness of fit; expected probabilities cover all outcomes (last cell may be a tail bin).
// Adjacent cells are merged until each expected count is at least min_expected.
ChiSquareResult chi_square_gof(const std::vector<double>& observed, const std::vector<double>& probs,
                               double min_expected = 5.0);

struct IndependenceResult {
  std::vector<std::vector<double>> spearman;
  double max_abs = 0.0;
};

std::vector<double> ranks(std::span<const double> x);  // average ranks, 1-based
double spearman(std::span<const double> x, std::span<const double> y);
IndependenceResult independence_diagnostics(const std::vector<std::vector<double>>& columns);

// Regularized incomplete gamma P(a, x) and Q(a, x).
double gamma_cdf(double shape, double x);
double gamma_sf(double shape, double x);

struct EnergyResult {
  double statistic = 0.0;
  double p_value = 1.0;
};

// Two-sample energy distance between row samples, permutation p-value.
EnergyResult energy_test(const std::vector<std::vector<double>>& x, const std::vector<std::vector<double>>& y,
                         int permutations, std::uint64_t seed);

}  // namespace poslab
