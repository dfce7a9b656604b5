#pragma once

#include <cstddef>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace poslab {

using Vec = std::vector<double>;

enum class RootType { A1, A2, A3, B2, C2, G2 };

std::string to_string(RootType t);
RootType parse_root_type(std::string_view tag);

using ReducedWord = std::vector<int>;  // 1-based simple-root indices

std::string word_to_string(const ReducedWord& w);

struct PositiveRoot {
  std::vector<int> coeffs;  // simple-root basis
  Vec vector;               // ambient coordinates
};

struct RootSystem {
  RootType type = RootType::A2;
  bool coroots = false;  // true for the system of simple coroots (see coroot_system)
  int ambient_dim = 0;
  std::vector<Vec> simple_roots;
  std::vector<std::vector<int>> cartan_matrix;  // a_ij = 2<a_i,a_j>/<a_j,a_j>
  int longest_word_length = 0;
  bool zero_sum = false;  // roots live in the hyperplane sum(x) = 0

  int rank() const { return static_cast<int>(simple_roots.size()); }
  std::string tag() const;
};

struct ChamberDrift {
  std::vector<double> a;  // a_i = <alpha_i^v, mu>
  Vec vector;
};

double dot(const Vec& x, const Vec& y);

RootSystem build_root_system(RootType type);
RootSystem build_root_system(std::string_view tag);

// Simple roots replaced by the simple coroots 2a/<a,a>; Cartan matrix transposed.
RootSystem coroot_system(const RootSystem& rs);

// Word of the form (1,2,1,...) or (2,1,2,...) of length m (rank 2 and A1).
ReducedWord alternating_word(const RootSystem& rs, int first);

bool is_reduced_w0(const RootSystem& rs, const ReducedWord& w);
std::set<ReducedWord> reduced_words_w0(const RootSystem& rs);

std::vector<PositiveRoot> enumerate_positive_roots(const RootSystem& rs, const ReducedWord& w);

std::vector<double> gamma_parameters(const RootSystem& rs, const ReducedWord& w, const ChamberDrift& drift);

ChamberDrift drift_from_chamber_coords(const RootSystem& rs, const std::vector<double>& a);

Vec reflect(const Vec& v, const Vec& alpha);
Vec longest_element_action(const RootSystem& rs, const Vec& x, const ReducedWord& w);
Vec longest_element_action(const RootSystem& rs, const Vec& x);

// Fundamental coweights: alpha_j(omega_i^v) = delta_ij, in the span of the roots.
std::vector<Vec> fundamental_coweights(const RootSystem& rs);

Vec theta_shift(const RootSystem& rs);

// Orthonormal basis of the span of the simple roots (the space a).
std::vector<Vec> orthonormal_basis(const RootSystem& rs);

}  // namespace poslab
