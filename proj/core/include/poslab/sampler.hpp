#pragma once

#include <cstdint>
#include <vector>

#include "poslab/matrix.hpp"
#include "poslab/rng.hpp"
#include "poslab/rootsys.hpp"

namespace poslab {

struct GammaVector {
  ReducedWord word;
  std::vector<double> params;
  std::vector<double> values;
};

double gamma_draw(RngStream& rng, double shape);
// log of a gamma draw; stays finite for tiny shapes where gamma_draw underflows
double log_gamma_draw(RngStream& rng, double shape);
double exponential_draw(RngStream& rng, double rate);
std::uint64_t geometric_draw(RngStream& rng, double z);

// n draws of -h log gamma_{h mu}
std::vector<double> gamma_to_exponential_limit(RngStream& rng, double mu, double h, std::size_t n);

GammaVector sample_gamma_vector(RngStream& rng, const std::vector<double>& shapes, const ReducedWord& word = {});
GammaVector sample_gamma_vector(RngStream& rng, const RootSystem& rs, const ReducedWord& word, const ChamberDrift& drift);

// Theta(x_word(t)) with t ~ Gamma_mu, A2 only.
SquareMatrix<double> sample_D_mu(RngStream& rng, const ReducedWord& word, const ChamberDrift& drift);

}  // namespace poslab
