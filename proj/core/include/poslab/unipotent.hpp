#pragma once

#include <gmpxx.h>

#include <vector>

#include "poslab/errors.hpp"
#include "poslab/matrix.hpp"
#include "poslab/rootsys.hpp"

namespace poslab {

using Rational = mpq_class;

template <class S>
struct GaussTriple {
  SquareMatrix<S> lower, diag, upper;
};

template <class S>
struct LusztigParams {
  ReducedWord word;
  std::vector<S> values;
};

namespace detail {
inline void check_dim(std::size_t n) {
  if (n < 2 || n > 4) throw InvalidArgument("matrix dimension must be 2, 3 or 4");
}
inline void check_index(std::size_t n, int i) {
  check_dim(n);
  if (i < 1 || i > static_cast<int>(n) - 1) throw InvalidArgument("elementary index out of range");
}
}  // namespace detail

template <class S>
SquareMatrix<S> x_elem(std::size_t n, int i, const S& t) {
  detail::check_index(n, i);
  auto m = SquareMatrix<S>::identity(n);
  m.at1(i, i + 1) = t;
  return m;
}

template <class S>
SquareMatrix<S> y_elem(std::size_t n, int i, const S& t) {
  detail::check_index(n, i);
  auto m = SquareMatrix<S>::identity(n);
  m.at1(i + 1, i) = t;
  return m;
}

template <class S>
SquareMatrix<S> lusztig_product(std::size_t n, const LusztigParams<S>& p) {
  detail::check_dim(n);
  if (p.word.size() != p.values.size()) throw InvalidArgument("word/parameter length mismatch");
  auto g = SquareMatrix<S>::identity(n);
  for (std::size_t j = 0; j < p.word.size(); ++j) {
    if (!(p.values[j] > 0)) throw InvalidArgument("Lusztig parameters must be positive");
    g = g * x_elem<S>(n, p.word[j], p.values[j]);
  }
  return g;
}

// Doolittle elimination without pivoting.
template <class S>
GaussTriple<S> gauss_decompose(const SquareMatrix<S>& g) {
  const std::size_t n = g.size();
  SquareMatrix<S> u = g;
  auto l = SquareMatrix<S>::identity(n);
  for (std::size_t k = 0; k < n; ++k) {
    if (u(k, k) == 0) throw ZeroMinor("leading principal minor " + std::to_string(k + 1) + " vanishes");
    for (std::size_t i = k + 1; i < n; ++i) {
      S f = u(i, k) / u(k, k);
      l(i, k) = f;
      for (std::size_t j = k; j < n; ++j) u(i, j) -= f * u(k, j);
    }
  }
  GaussTriple<S> out{l, SquareMatrix<S>(n), SquareMatrix<S>::identity(n)};
  for (std::size_t i = 0; i < n; ++i) {
    out.diag(i, i) = u(i, i);
    for (std::size_t j = i + 1; j < n; ++j) out.upper(i, j) = u(i, j) / u(i, i);
  }
  return out;
}

// Antidiagonal representative with sign (-1)^(n-i) in row i; gives [[0,-1],[1,0]] for n=2.
template <class S>
SquareMatrix<S> w0_bar(std::size_t n) {
  detail::check_dim(n);
  SquareMatrix<S> w(n);
  for (std::size_t i = 1; i <= n; ++i) w.at1(i, n + 1 - i) = ((n - i) % 2 == 0) ? S(1) : S(-1);
  return w;
}

template <class S>
SquareMatrix<S> theta_twist(const SquareMatrix<S>& g) {
  return gauss_decompose(g * w0_bar<S>(g.size())).lower;
}

// Solves the chart equations of word (1,2,1) or (2,1,2) on a unit upper triangular 3x3 matrix.
template <class S>
LusztigParams<S> invert_chart_A2(const ReducedWord& word, const SquareMatrix<S>& g) {
  if (g.size() != 3) throw InvalidArgument("invert_chart_A2 needs a 3x3 matrix");
  const S& g12 = g.at1(1, 2);
  const S& g13 = g.at1(1, 3);
  const S& g23 = g.at1(2, 3);
  if (!(g12 > 0 && g13 > 0 && g23 > 0 && g12 * g23 - g13 > 0))
    throw NotInCell("matrix is not in the totally positive cell");
  if (word == ReducedWord{1, 2, 1}) {
    S t2 = g23;
    S t1 = g13 / g23;
    S t3 = g12 - t1;
    return {word, {t1, t2, t3}};
  }
  if (word == ReducedWord{2, 1, 2}) {
    S p2 = g12;
    S p3 = g13 / g12;
    S p1 = g23 - p3;
    return {word, {p1, p2, p3}};
  }
  throw NotReduced("not a reduced word of w0 in A2: " + word_to_string(word));
}

// Recovers the word-(1,2,1) parameters from Theta(g) for A2, from the entries
// 1/t1, 1/(t1 t2), (t1+t3)/(t2 t3).
template <class S>
LusztigParams<S> untwist_A2(const SquareMatrix<S>& lower) {
  if (lower.size() != 3) throw InvalidArgument("untwist_A2 needs a 3x3 matrix");
  const S& l21 = lower.at1(2, 1);
  const S& l31 = lower.at1(3, 1);
  const S& l32 = lower.at1(3, 2);
  if (!(l21 > 0 && l31 > 0 && l32 > 0)) throw NotInCell("twisted matrix has nonpositive entries");
  S t1 = S(1) / l21;
  S t2 = l21 / l31;
  S d = l32 * t2 - S(1);
  if (!(d > 0)) throw NotInCell("twisted matrix outside the image of the positive chart");
  S t3 = t1 / d;
  return {{1, 2, 1}, {t1, t2, t3}};
}

}  // namespace poslab
