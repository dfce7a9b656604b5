#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "poslab/report.hpp"
#include "poslab/rootsys.hpp"

namespace poslab {

struct RunContext {
  std::uint64_t seed = 1;
  unsigned workers = 1;
};

inline constexpr double kLevel = 1e-3;          // per-test p-value threshold
inline constexpr double kSpearmanBound = 0.013;  // max |rho| under independence at n = 2e5
inline constexpr std::size_t kChunk = 8192;      // draws per RngStream for i.i.d. samples

// Shape overrides turn the checks into negative controls.
struct ShapeOverride {
  std::optional<std::vector<double>> source;
  std::optional<std::vector<double>> target;
};

TestReport verify_rank2_identity(RootType type, double a1, double a2, std::size_t n, const RunContext& ctx,
                                 const ShapeOverride& ov = {}, bool energy = false);

TestReport verify_tropical_identity(RootType type, double a1, double a2, std::size_t n, const RunContext& ctx,
                                    const ShapeOverride& ov = {});

TestReport verify_geometric_identity(RootType type, double z1, double z2, int box, std::size_t n, const RunContext& ctx,
                                     const ShapeOverride& ov = {});

// Default horizon max(20, 12 / min_j beta_j(mu)).
double default_horizon(const std::vector<double>& a);

// Lower-triangular entries (n21) or (n21, n32, n31) per row, with the stream seed of each row.
struct ExitSample {
  std::vector<std::vector<double>> rows;
  std::vector<std::uint64_t> seeds;
};

// N_T of Brownian paths with drift mu, one stream per path.
ExitSample simulate_exit_law(int n_group, const std::vector<double>& a, std::size_t n_paths, double T, double dt,
                             const RunContext& ctx);
// Theta(x_w0(t)) with t ~ Gamma_mu, kChunk rows per stream.
ExitSample algebraic_exit_law(int n_group, const std::vector<double>& a, std::size_t n, const RunContext& ctx);

TestReport verify_exit_law(int n_group, const std::vector<double>& a, std::size_t n_paths, double T, double dt,
                           const RunContext& ctx);

// type A1 (single letter, SL2) or A2 (word 121). fixed_params replaces the gamma draws.
TestReport verify_conditional_representation(RootType type, const std::vector<double>& a, std::size_t n_paths, double T,
                                             double dt, const RunContext& ctx,
                                             const std::optional<std::vector<double>>& fixed_params = {});

// Residual of (1 + I_y/n)(1 - I_x/n) = 1 on forward-transformed paths at dt and dt/2.
TestReport verify_inversion_lemma(double dt, std::size_t n_paths, double T, const RunContext& ctx);

TestReport verify_tropical_limit(std::size_t n_points, const std::vector<double>& hs, const RunContext& ctx);

TestReport verify_gamma_exponential_limit(double mu, const std::vector<double>& hs, std::size_t n, const RunContext& ctx);

TestReport verify_dufresne_generator(double mu);

struct SuiteOptions {
  std::vector<double> a{1.0, 1.0};
  std::size_t n = 200000;
  std::size_t n_paths = 2000;
  double dt = 1e-3;
  std::optional<double> T;
};

std::vector<TestReport> run_default_suite(const SuiteOptions& opt, const RunContext& ctx);

}  // namespace poslab
