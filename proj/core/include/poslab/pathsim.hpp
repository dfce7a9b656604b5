#pragma once

#include <cstddef>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "poslab/matrix.hpp"
#include "poslab/rng.hpp"
#include "poslab/rootsys.hpp"

namespace poslab {

struct PathGrid {
  std::size_t dim = 0;
  double dt = 0.0;
  double horizon = 0.0;
  std::vector<double> samples;  // (steps+1) x dim, row-major

  std::size_t steps() const { return samples.size() / dim - 1; }
  std::span<const double> at(std::size_t k) const { return {samples.data() + k * dim, dim}; }
  std::span<double> at(std::size_t k) { return {samples.data() + k * dim, dim}; }
  double form(std::size_t k, const Vec& beta) const;  // beta(X(k dt))
};

struct FunctionalAccumulator {
  Vec root_form;
  double weight = 1.0;
  std::vector<double> values;  // I(k dt), k = 0..steps
  double final_value() const { return values.back(); }
};

std::size_t grid_steps(double T, double dt);

PathGrid zero_path(std::size_t dim, double T, double dt);
PathGrid linear_path(const Vec& v, double T, double dt);  // X_s = s v

PathGrid sample_brownian_path(RngStream& rng, const RootSystem& rs, const Vec& drift, const Vec& x0, double T, double dt);
PathGrid sample_brownian_path(RngStream& rng, const RootSystem& rs, const ChamberDrift& drift, const Vec& x0, double T, double dt);

FunctionalAccumulator exponential_functional(const PathGrid& path, const Vec& beta, double weight);

// Unit lower triangular N_T for A1 (dim 1, alpha = 2, weight 2) or A2 (dim 3, weights 1).
SquareMatrix<double> n_matrix(const PathGrid& path, const RootSystem& rs);

PathGrid path_transform_elementary(const PathGrid& path, const Vec& alpha, double xi);
// y = x + log(1 - (1/n) int e^{-alpha(x)}) alpha^v; throws if the integral reaches n.
PathGrid path_transform_elementary_inverse(const PathGrid& path, const Vec& alpha, double n);

// T_{x_{i1}(xi_1)} o ... o T_{x_{im}(xi_m)}, xi_j = e^{alpha_{ij}(theta)} t_j.
PathGrid path_transform_word(const PathGrid& path, const RootSystem& rs, const ReducedWord& word,
                             const std::vector<double>& params);

double inversion_residual(const PathGrid& x, const PathGrid& y, const Vec& beta, double n);

// Quadratic variation of coordinate c.
double quadratic_variation(const PathGrid& path, std::size_t c);

enum class DerivativeMode { analytic, finite_difference };

// max_z |L* p(z)| with p(z) = exp(mu z - e^z/2) / (Gamma(mu) 2^mu), L* f = 2 f'' - ((2 mu - e^z) f)'.
double dufresne_generator_residual(double mu, const std::vector<double>& z_grid, DerivativeMode mode,
                                   double fd_step = 1e-4);

void write_csv(std::ostream& os, const std::vector<std::string>& columns,
               const std::vector<std::vector<double>>& rows, const std::vector<std::uint64_t>& row_seeds);

}  // namespace poslab
