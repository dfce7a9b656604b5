#pragma once

#include <cstddef>
#include <ostream>
#include <vector>

#include "poslab/errors.hpp"

namespace poslab {

template <class S>
class SquareMatrix {
 public:
  SquareMatrix() = default;
  explicit SquareMatrix(std::size_t n) : n_(n), a_(n * n, S(0)) {}

  static SquareMatrix identity(std::size_t n) {
    SquareMatrix m(n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = S(1);
    return m;
  }

  std::size_t size() const { return n_; }
  S& operator()(std::size_t i, std::size_t j) { return a_[i * n_ + j]; }
  const S& operator()(std::size_t i, std::size_t j) const { return a_[i * n_ + j]; }

  // 1-based access matching E_{i,j} notation
  S& at1(std::size_t i, std::size_t j) { return (*this)(i - 1, j - 1); }
  const S& at1(std::size_t i, std::size_t j) const { return (*this)(i - 1, j - 1); }

  friend SquareMatrix operator*(const SquareMatrix& x, const SquareMatrix& y) {
    if (x.n_ != y.n_) throw InvalidArgument("matrix size mismatch");
    SquareMatrix r(x.n_);
    for (std::size_t i = 0; i < x.n_; ++i)
      for (std::size_t k = 0; k < x.n_; ++k) {
        if (x(i, k) == 0) continue;
        for (std::size_t j = 0; j < x.n_; ++j) r(i, j) += x(i, k) * y(k, j);
      }
    return r;
  }

  friend bool operator==(const SquareMatrix& x, const SquareMatrix& y) { return x.n_ == y.n_ && x.a_ == y.a_; }

  friend std::ostream& operator<<(std::ostream& os, const SquareMatrix& m) {
    os << '[';
    for (std::size_t i = 0; i < m.n_; ++i) {
      os << (i ? ", [" : "[");
      for (std::size_t j = 0; j < m.n_; ++j) os << (j ? ", " : "") << m(i, j);
      os << ']';
    }
    return os << ']';
  }

 private:
  std::size_t n_ = 0;
  std::vector<S> a_;
};

}  // namespace poslab
