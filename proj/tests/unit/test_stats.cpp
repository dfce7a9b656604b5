#include <gtest/gtest.h>

#include <cmath>

#include "poslab/report.hpp"
#include "poslab/sampler.hpp"
#include "poslab/stats.hpp"

using namespace poslab;

namespace {

std::vector<double> gamma_sample(std::uint64_t stream, double shape, std::size_t n) {
  RngStream rng(99, stream);
  std::vector<double> x(n);
  for (auto& v : x) v = gamma_draw(rng, shape);
  return x;
}

}  // namespace

TEST(Kolmogorov, KnownValues) {
  EXPECT_NEAR(kolmogorov_survival(1.3581), 0.05, 1e-4);
  EXPECT_NEAR(kolmogorov_survival(1.9495), 0.001, 2e-5);
  EXPECT_DOUBLE_EQ(kolmogorov_survival(0.0), 1.0);
  EXPECT_LT(kolmogorov_survival(5.0), 1e-20);
}

TEST(Ks, UniformNull) {
  RngStream rng(1, 0);
  std::vector<double> u(100000);
  for (auto& v : u) v = rng.uniform();
  EXPECT_GT(ks_one_sample(u, [](double x) { return x; }).p_value, 1e-3);
}

TEST(Ks, StatisticByHand) {
  // sample {0.1, 0.5, 0.9} vs U(0,1): D = max(1/3-0.1, 0.5-1/3, 2/3-0.5, 0.9-2/3, 1-0.9) = 0.2333
  const auto r = ks_one_sample(std::vector<double>{0.9, 0.1, 0.5}, [](double x) { return x; });
  EXPECT_NEAR(r.statistic, 0.9 - 2.0 / 3.0, 1e-12);
  const auto two = ks_two_sample(std::vector<double>{1, 2, 3}, std::vector<double>{1.5, 2.5, 3.5, 4.5});
  EXPECT_NEAR(two.statistic, 0.5, 1e-12);
}

TEST(Ks, TwoSampleTies) {
  const std::vector<double> a{1, 1, 2, 2}, b{1, 1, 2, 2};
  EXPECT_DOUBLE_EQ(ks_two_sample(a, b).statistic, 0.0);
}

TEST(Ks, DetectsWrongShape) {
  const auto x = gamma_sample(2, 2.0, 100000);
  EXPECT_LT(ks_one_sample(x, [](double v) { return gamma_cdf(3.0, v); }).p_value, 1e-6);
}

TEST(Ks, TwoHalvesOfOneSample) {
  const auto x = gamma_sample(3, 2.0, 100000);
  const std::vector<double> a(x.begin(), x.begin() + 50000), b(x.begin() + 50000, x.end());
  EXPECT_GT(ks_two_sample(a, b).p_value, 1e-3);
}

TEST(ChiSquare, MergesSmallCells) {
  // expected counts 90, 9, 0.9, 0.1 -> last two cells merge into the second
  const auto r = chi_square_gof({90, 9, 1, 0}, {0.9, 0.09, 0.009, 0.001});
  EXPECT_EQ(r.dof, 1);
  EXPECT_NEAR(r.statistic, 0.0, 1e-12);
  EXPECT_NEAR(r.p_value, 1.0, 1e-12);
  const auto bad = chi_square_gof({50, 50}, {0.9, 0.1});
  EXPECT_LT(bad.p_value, 1e-10);
  EXPECT_THROW(chi_square_gof({1, 2}, {0.5}), ConfigError);
}

TEST(ChiSquare, PValueMatchesGammaTail) {
  // statistic 4 on 2 dof: p = exp(-2)
  const auto r = chi_square_gof({20, 40, 40}, {0.2, 0.5, 0.3});
  const double stat = 0.0 + (40 - 50) * (40 - 50) / 50.0 + (40 - 30) * (40 - 30) / 30.0;
  EXPECT_NEAR(r.statistic, stat, 1e-12);
  EXPECT_NEAR(r.p_value, gamma_sf(1.0, stat / 2), 1e-12);
}

TEST(Ranks, AverageTies) {
  EXPECT_EQ(ranks(std::vector<double>{3, 1, 3, 2}), (std::vector<double>{3.5, 1, 3.5, 2}));
}

TEST(Spearman, MonotoneAndIndependent) {
  const auto g = gamma_sample(4, 1.5, 100000);
  std::vector<double> sq(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) sq[i] = g[i] * g[i];
  EXPECT_NEAR(spearman(g, sq), 1.0, 1e-12);
  const std::vector<std::vector<double>> cols{gamma_sample(5, 1, 100000), gamma_sample(6, 2, 100000),
                                              gamma_sample(7, 0.5, 100000)};
  const auto d = independence_diagnostics(cols);
  EXPECT_LT(d.max_abs, 0.013);
  EXPECT_EQ(d.spearman.size(), 3u);
  EXPECT_DOUBLE_EQ(d.spearman[1][1], 1.0);
}

TEST(Spearman, A2ImageColumnsIndependent) {
  RngStream rng(8, 0);
  const std::size_t n = 100000;
  std::vector<std::vector<double>> cols(3, std::vector<double>(n));
  for (std::size_t i = 0; i < n; ++i) {
    const double t1 = gamma_draw(rng, 1.5), t2 = gamma_draw(rng, 3.5), t3 = gamma_draw(rng, 2.0);
    cols[0][i] = t2 * t3 / (t1 + t3);
    cols[1][i] = t1 + t3;
    cols[2][i] = t1 * t2 / (t1 + t3);
  }
  EXPECT_LT(independence_diagnostics(cols).max_abs, 0.013);
}

TEST(GammaCdf, Values) {
  EXPECT_NEAR(gamma_cdf(1.0, 1.0), 1.0 - std::exp(-1.0), 1e-15);
  EXPECT_NEAR(gamma_cdf(2.0, 1.0) + gamma_sf(2.0, 1.0), 1.0, 1e-15);
  EXPECT_DOUBLE_EQ(gamma_cdf(2.0, -1.0), 0.0);
}

TEST(Energy, SameAndShiftedLaws) {
  RngStream rng(9, 0);
  std::vector<std::vector<double>> x(300, std::vector<double>(2)), y(300, std::vector<double>(2)), z(300, std::vector<double>(2));
  for (int i = 0; i < 300; ++i)
    for (int j = 0; j < 2; ++j) {
      x[i][j] = rng.normal();
      y[i][j] = rng.normal();
      z[i][j] = rng.normal() + 1.0;
    }
  EXPECT_GT(energy_test(x, y, 200, 1).p_value, 1e-3);
  EXPECT_LT(energy_test(x, z, 200, 1).p_value, 0.01);
}

TEST(Report, ThresholdsDriveVerdict) {
  TestReport r;
  r.test_name = "t";
  r.p_at_least("p", 0.5, 1e-3);
  r.at_most("d", 0.01, 0.02);
  EXPECT_TRUE(r.pass);
  r.at_least("frac", 0.9, 0.95);
  EXPECT_FALSE(r.pass);
  EXPECT_DOUBLE_EQ(r.p_value("p"), 0.5);
  EXPECT_DOUBLE_EQ(r.statistic("d"), 0.01);
  const auto js = r.to_json();
  EXPECT_NE(js.find("\"d <=\": 0.02"), std::string::npos);
  EXPECT_NE(js.find("\"verdict\": \"fail\""), std::string::npos);
  EXPECT_EQ(r.summary().rfind("FAIL", 0), 0u);
}

TEST(Report, NanFailsThreshold) {
  TestReport r;
  r.at_most("d", std::nan(""), 1.0);
  EXPECT_FALSE(r.pass);
}
