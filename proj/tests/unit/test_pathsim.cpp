#include <gtest/gtest.h>

#include <cmath>
#include <numeric>
#include <sstream>

#include "poslab/pathsim.hpp"
#include "poslab/unipotent.hpp"

using namespace poslab;

namespace {

const RootSystem& a1() {
  static const RootSystem rs = build_root_system(RootType::A1);
  return rs;
}

const RootSystem& a2() {
  static const RootSystem rs = build_root_system(RootType::A2);
  return rs;
}

double sup_distance(const PathGrid& x, const PathGrid& y) {
  double d = 0.0;
  for (std::size_t i = 0; i < x.samples.size(); ++i) d = std::max(d, std::abs(x.samples[i] - y.samples[i]));
  return d;
}

}  // namespace

TEST(Grid, StepsAndValidation) {
  EXPECT_EQ(grid_steps(20.0, 1e-3), 20000u);
  EXPECT_EQ(grid_steps(1.0, 0.1), 10u);
  EXPECT_THROW(grid_steps(1.0, 0.3), InvalidArgument);
  EXPECT_THROW(grid_steps(-1.0, 0.1), InvalidArgument);
  const auto p = zero_path(3, 2.0, 0.5);
  EXPECT_EQ(p.steps(), 4u);
  EXPECT_EQ(p.samples.size(), 15u);
}

TEST(Brownian, VarianceAndMean) {
  const double T = 1.0, mu = 0.7;
  const auto drift = drift_from_chamber_coords(a1(), {mu});
  const int paths = 10000;
  std::vector<double> end(paths);
  for (int i = 0; i < paths; ++i) {
    RngStream rng(1, i);
    end[i] = sample_brownian_path(rng, a1(), drift, {0.25}, T, 0.01).at(100)[0];
  }
  const double m = std::accumulate(end.begin(), end.end(), 0.0) / paths;
  double v = 0.0;
  for (double x : end) v += (x - m) * (x - m);
  v /= paths - 1;
  EXPECT_NEAR(v, T, 0.05 * T);
  EXPECT_NEAR(m, 0.25 + mu * T, 3.0 * std::sqrt(T / paths));
}

TEST(Brownian, A2StaysInZeroSumPlaneWithIsotropicIncrements) {
  const auto drift = drift_from_chamber_coords(a2(), {1, 1});
  RngStream rng(2, 0);
  const auto p = sample_brownian_path(rng, a2(), drift, {0, 0, 0}, 50.0, 0.01);
  const auto basis = orthonormal_basis(a2());
  for (std::size_t k = 0; k <= p.steps(); k += 97) {
    const auto x = p.at(k);
    EXPECT_NEAR(x[0] + x[1] + x[2], 0.0, 1e-9);
  }
  for (const auto& e : basis) {
    double q = 0.0;
    for (std::size_t k = 1; k <= p.steps(); ++k) {
      double d = 0.0;
      for (int c = 0; c < 3; ++c) d += (p.at(k)[c] - p.at(k - 1)[c]) * e[c];
      q += d * d;
    }
    EXPECT_NEAR(q / 50.0, 1.0, 0.05);
  }
}

TEST(Functional, ZeroPathIsTime) {
  const auto p = zero_path(3, 2.0, 0.01);
  const auto acc = exponential_functional(p, a2().simple_roots[0], 1.0);
  for (std::size_t k = 0; k <= p.steps(); ++k) EXPECT_NEAR(acc.values[k], k * 0.01, 1e-12);
}

TEST(Functional, LinearPathSecondOrder) {
  // beta(v) = 1 for v = (1,0,0) and beta = alpha_1
  for (double dt : {1e-2, 5e-3}) {
    const auto p = linear_path({1, 0, 0}, 5.0, dt);
    const double got = exponential_functional(p, a2().simple_roots[0], 1.0).final_value();
    EXPECT_NEAR(got, 1.0 - std::exp(-5.0), dt * dt);
  }
}

TEST(Functional, DufresneMean) {
  // 2 int e^{-2X} ~ 1/gamma_1 for X with drift 1
  const auto drift = drift_from_chamber_coords(a1(), {1.0});
  const int paths = 40000;
  double s = 0.0;
  for (int i = 0; i < paths; ++i) {
    RngStream rng(3, i);
    const auto p = sample_brownian_path(rng, a1(), drift, {0.0}, 20.0, 0.01);
    s += 1.0 / exponential_functional(p, a1().simple_roots[0], 2.0).final_value();
  }
  EXPECT_NEAR(s / paths, 1.0, 0.02);
}

TEST(NMatrix, ZeroPath) {
  const auto n = n_matrix(zero_path(3, 2.0, 0.001), a2());
  EXPECT_NEAR(n(1, 0), 2.0, 1e-12);
  EXPECT_NEAR(n(2, 1), 2.0, 1e-12);
  EXPECT_NEAR(n(2, 0), 2.0, 1e-9);
  EXPECT_DOUBLE_EQ(n(0, 0), 1.0);
  EXPECT_DOUBLE_EQ(n(0, 1), 0.0);
  const auto m = n_matrix(zero_path(1, 3.0, 0.01), a1());
  EXPECT_NEAR(m(1, 0), 6.0, 1e-12);  // weight <alpha,alpha>/2 = 2
}

TEST(NMatrix, NestedIntegralOrder) {
  // X_s = s v with alpha_1(v) = 0, alpha_2(v) = 1: (3,1) = int_0^T int_0^s e^{-u} du ds
  const auto p = linear_path({1.0 / 3, 1.0 / 3, -2.0 / 3}, 4.0, 1e-3);
  const auto n = n_matrix(p, a2());
  EXPECT_NEAR(n(1, 0), 4.0, 1e-9);
  EXPECT_NEAR(n(2, 1), 1.0 - std::exp(-4.0), 1e-6);
  EXPECT_NEAR(n(2, 0), 4.0 - (1.0 - std::exp(-4.0)), 1e-5);
  EXPECT_THROW(n_matrix(zero_path(2, 1.0, 0.1), a2()), InvalidArgument);
  EXPECT_THROW(n_matrix(zero_path(3, 1.0, 0.1), build_root_system(RootType::B2)), ConfigError);
}

TEST(Transform, ZeroPathA1) {
  const double xi = 0.7;
  const auto out = path_transform_elementary(zero_path(1, 3.0, 0.01), a1().simple_roots[0], xi);
  for (std::size_t k = 0; k <= out.steps(); ++k) EXPECT_NEAR(out.at(k)[0], std::log1p(xi * k * 0.01), 1e-12);
}

TEST(Transform, SmallXiIsNearIdentity) {
  RngStream rng(4, 0);
  const auto drift = drift_from_chamber_coords(a2(), {1, 1});
  const auto p = sample_brownian_path(rng, a2(), drift, {0, 0, 0}, 5.0, 0.01);
  const auto& al = a2().simple_roots[1];
  const double xi = 1e-6;
  const double bound = xi * exponential_functional(p, al, 1.0).final_value() * 2.0 / std::sqrt(dot(al, al));
  EXPECT_LE(sup_distance(path_transform_elementary(p, al, xi), p), bound * (1 + 1e-9));
  EXPECT_THROW(path_transform_elementary(p, al, 0.0), InvalidArgument);
}

TEST(Transform, SingleLetterWordIsElementary) {
  RngStream rng(5, 0);
  const auto p = sample_brownian_path(rng, a1(), drift_from_chamber_coords(a1(), {1.0}), {0.0}, 2.0, 0.01);
  const auto& al = a1().simple_roots[0];
  const double weight = std::exp(dot(al, theta_shift(a1())));
  EXPECT_EQ(path_transform_word(p, a1(), {1}, {0.4}).samples, path_transform_elementary(p, al, weight * 0.4).samples);
  const auto a2p = zero_path(3, 1.0, 0.1);
  EXPECT_EQ(path_transform_word(a2p, a2(), {2}, {0.4}).samples,
            path_transform_elementary(a2p, a2().simple_roots[1], 0.4).samples);
}

TEST(Transform, WordComposesRightToLeft) {
  const auto p = zero_path(3, 1.0, 0.1);
  const auto& al1 = a2().simple_roots[0];
  const auto& al2 = a2().simple_roots[1];
  const auto manual = path_transform_elementary(path_transform_elementary(path_transform_elementary(p, al1, 3.0), al2, 2.0), al1, 1.0);
  EXPECT_EQ(path_transform_word(p, a2(), {1, 2, 1}, {1.0, 2.0, 3.0}).samples, manual.samples);
}

TEST(Transform, DeterministicLimitMatchesTheta) {
  // one long path: N_T of the transformed path approaches Theta(g)
  RngStream rng(6, 0);
  const auto drift = drift_from_chamber_coords(a2(), {1, 1});
  const auto w = sample_brownian_path(rng, a2(), longest_element_action(a2(), drift.vector), {0, 0, 0}, 25.0, 1e-3);
  const std::vector<double> t{0.8, 1.7, 0.5};
  const auto n = n_matrix(path_transform_word(w, a2(), {1, 2, 1}, t), a2());
  const auto th = theta_twist(lusztig_product(3, LusztigParams<double>{{1, 2, 1}, t}));
  for (auto [i, j] : {std::pair{1, 0}, {2, 1}, {2, 0}}) EXPECT_NEAR(n(i, j) / th(i, j), 1.0, 0.02) << i << j;
}

TEST(Inversion, ResidualOnPairedPaths) {
  const auto& beta = a1().simple_roots[0];
  const auto drift = drift_from_chamber_coords(a1(), {0.5});
  for (double dt : {1e-2, 1e-3}) {
    RngStream rng(7, 0);
    const auto y = sample_brownian_path(rng, a1(), drift, {0.0}, 5.0, dt);
    const double n = 2.0;
    const auto x = path_transform_elementary(y, beta, 1.0 / n);
    EXPECT_LE(inversion_residual(x, y, beta, n), 10 * dt);
    const auto back = path_transform_elementary_inverse(x, beta, n);
    EXPECT_LE(inversion_residual(x, back, beta, n), 10 * dt);
  }
}

TEST(Inversion, DetectsUnpairedPaths) {
  const auto z = zero_path(1, 1.0, 0.01);
  const double n = 4.0;
  // (1 + t/n)(1 - t/n) - 1 = -t^2/n^2
  EXPECT_NEAR(inversion_residual(z, z, a1().simple_roots[0], n), 1.0 / 16.0, 1e-12);
  EXPECT_THROW(path_transform_elementary_inverse(zero_path(1, 5.0, 0.01), a1().simple_roots[0], 2.0), NumericError);
}

TEST(Generator, AnalyticAndFiniteDifference) {
  std::vector<double> grid;
  for (int i = 0; i <= 1500; ++i) grid.push_back(-10.0 + 0.01 * i);
  for (double mu : {1.0, 3.7}) {
    EXPECT_LT(dufresne_generator_residual(mu, grid, DerivativeMode::analytic), 1e-12) << mu;
    EXPECT_LT(dufresne_generator_residual(mu, grid, DerivativeMode::finite_difference, 1e-4), 1e-6) << mu;
  }
  EXPECT_THROW(dufresne_generator_residual(0.0, grid, DerivativeMode::analytic), InvalidArgument);
}

TEST(Csv, HeaderAndRows) {
  std::ostringstream os;
  write_csv(os, {"n21", "n32"}, {{1.5, 2.0}, {0.25, 3.0}}, {11, 12});
  EXPECT_EQ(os.str(), "# columns: n21,n32,seed\nn21,n32,seed\n1.5,2,11\n0.25,3,12\n");
}
