#include "poslab/rootsys.hpp"

#include <cmath>
#include <functional>
#include <numeric>
#include <sstream>

#include "poslab/errors.hpp"

namespace poslab {
namespace {

using IntMat = std::vector<std::vector<int>>;

// Dense solve for the tiny Gram systems below (rank <= 3), partial pivoting.
std::vector<double> solve_small(std::vector<std::vector<double>> m, std::vector<double> b) {
  const std::size_t n = b.size();
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    for (std::size_t r = c + 1; r < n; ++r)
      if (std::abs(m[r][c]) > std::abs(m[piv][c])) piv = r;
    std::swap(m[c], m[piv]);
    std::swap(b[c], b[piv]);
    for (std::size_t r = c + 1; r < n; ++r) {
      const double f = m[r][c] / m[c][c];
      for (std::size_t k = c; k < n; ++k) m[r][k] -= f * m[c][k];
      b[r] -= f * b[c];
    }
  }
  std::vector<double> x(n);
  for (std::size_t i = n; i-- > 0;) {
    double s = b[i];
    for (std::size_t k = i + 1; k < n; ++k) s -= m[i][k] * x[k];
    x[i] = s / m[i][i];
  }
  return x;
}

std::vector<std::vector<double>> gram(const RootSystem& rs) {
  const int r = rs.rank();
  std::vector<std::vector<double>> g(r, std::vector<double>(r));
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j) g[i][j] = dot(rs.simple_roots[i], rs.simple_roots[j]);
  return g;
}

// s_i on simple-root coefficient vectors.
std::vector<int> reflect_coeffs(const RootSystem& rs, int i, std::vector<int> c) {
  int pairing = 0;
  for (int k = 0; k < rs.rank(); ++k) pairing += c[k] * rs.cartan_matrix[k][i];
  c[i] -= pairing;
  return c;
}

std::vector<int> apply_word(const RootSystem& rs, const ReducedWord& w, std::size_t upto, std::vector<int> c) {
  for (std::size_t j = upto; j-- > 0;) c = reflect_coeffs(rs, w[j] - 1, c);
  return c;
}

void check_letters(const RootSystem& rs, const ReducedWord& w) {
  for (int l : w)
    if (l < 1 || l > rs.rank()) throw InvalidArgument("word letter out of range: " + std::to_string(l));
}

Vec combine(const RootSystem& rs, const std::vector<int>& c) {
  Vec v(rs.ambient_dim, 0.0);
  for (int k = 0; k < rs.rank(); ++k)
    for (int d = 0; d < rs.ambient_dim; ++d) v[d] += c[k] * rs.simple_roots[k][d];
  return v;
}

}  // namespace

std::string to_string(RootType t) {
  switch (t) {
    case RootType::A1: return "A1";
    case RootType::A2: return "A2";
    case RootType::A3: return "A3";
    case RootType::B2: return "B2";
    case RootType::C2: return "C2";
    case RootType::G2: return "G2";
  }
  return "?";
}

RootType parse_root_type(std::string_view tag) {
  for (RootType t : {RootType::A1, RootType::A2, RootType::A3, RootType::B2, RootType::C2, RootType::G2})
    if (tag == to_string(t)) return t;
  throw UnsupportedType(std::string(tag));
}

std::string word_to_string(const ReducedWord& w) {
  std::ostringstream os;
  for (int l : w) os << l;
  return os.str();
}

std::string RootSystem::tag() const { return to_string(type) + (coroots ? "v" : ""); }

double dot(const Vec& x, const Vec& y) {
  return std::inner_product(x.begin(), x.end(), y.begin(), 0.0);
}

RootSystem build_root_system(RootType type) {
  RootSystem rs;
  rs.type = type;
  switch (type) {
    case RootType::A1:
      rs.simple_roots = {{2.0}};
      rs.longest_word_length = 1;
      break;
    case RootType::A2:
      rs.simple_roots = {{1, -1, 0}, {0, 1, -1}};
      rs.longest_word_length = 3;
      rs.zero_sum = true;
      break;
    case RootType::A3:
      rs.simple_roots = {{1, -1, 0, 0}, {0, 1, -1, 0}, {0, 0, 1, -1}};
      rs.longest_word_length = 6;
      rs.zero_sum = true;
      break;
    case RootType::B2:
      rs.simple_roots = {{1, -1}, {0, 1}};
      rs.longest_word_length = 4;
      break;
    case RootType::C2:
      rs.simple_roots = {{1, -1}, {0, 2}};
      rs.longest_word_length = 4;
      break;
    case RootType::G2:
      rs.simple_roots = {{0, 1, -1}, {1, -2, 1}};
      rs.longest_word_length = 6;
      rs.zero_sum = true;
      break;
  }
  rs.ambient_dim = static_cast<int>(rs.simple_roots[0].size());
  const int r = rs.rank();
  rs.cartan_matrix.assign(r, std::vector<int>(r));
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j) {
      const double v = 2.0 * dot(rs.simple_roots[i], rs.simple_roots[j]) / dot(rs.simple_roots[j], rs.simple_roots[j]);
      rs.cartan_matrix[i][j] = static_cast<int>(std::lround(v));
    }
  return rs;
}

RootSystem build_root_system(std::string_view tag) { return build_root_system(parse_root_type(tag)); }

RootSystem coroot_system(const RootSystem& rs) {
  RootSystem out = rs;
  out.coroots = !rs.coroots;
  for (auto& a : out.simple_roots) {
    const double s = 2.0 / dot(a, a);
    for (double& x : a) x *= s;
  }
  const int r = rs.rank();
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j) out.cartan_matrix[i][j] = rs.cartan_matrix[j][i];
  return out;
}

ReducedWord alternating_word(const RootSystem& rs, int first) {
  if (rs.rank() == 1) return {1};
  if (rs.rank() != 2) throw InvalidArgument("alternating_word needs rank <= 2");
  ReducedWord w(rs.longest_word_length);
  for (int j = 0; j < rs.longest_word_length; ++j) w[j] = (j % 2 == 0) ? first : 3 - first;
  return w;
}

bool is_reduced_w0(const RootSystem& rs, const ReducedWord& w) {
  if (static_cast<int>(w.size()) != rs.longest_word_length) return false;
  for (int l : w)
    if (l < 1 || l > rs.rank()) return false;
  // w sends every simple root to a negative root iff w = w0; length m then forces reducedness.
  for (int i = 0; i < rs.rank(); ++i) {
    std::vector<int> e(rs.rank(), 0);
    e[i] = 1;
    const auto img = apply_word(rs, w, w.size(), e);
    for (int c : img)
      if (c > 0) return false;
  }
  return true;
}

std::set<ReducedWord> reduced_words_w0(const RootSystem& rs) {
  std::set<ReducedWord> out;
  const int m = rs.longest_word_length;
  ReducedWord w(m, 1);
  std::function<void(int)> rec = [&](int pos) {
    if (pos == m) {
      if (is_reduced_w0(rs, w)) out.insert(w);
      return;
    }
    for (int l = 1; l <= rs.rank(); ++l) {
      if (pos > 0 && w[pos - 1] == l) continue;  // s_i s_i is never reduced
      w[pos] = l;
      rec(pos + 1);
    }
  };
  rec(0);
  return out;
}

std::vector<PositiveRoot> enumerate_positive_roots(const RootSystem& rs, const ReducedWord& w) {
  check_letters(rs, w);
  if (!is_reduced_w0(rs, w)) throw NotReduced("not a reduced word of w0: " + word_to_string(w));
  std::vector<PositiveRoot> out;
  out.reserve(w.size());
  for (std::size_t j = 0; j < w.size(); ++j) {
    std::vector<int> e(rs.rank(), 0);
    e[w[j] - 1] = 1;
    PositiveRoot b;
    b.coeffs = apply_word(rs, w, j, e);
    b.vector = combine(rs, b.coeffs);
    out.push_back(std::move(b));
  }
  return out;
}

std::vector<double> gamma_parameters(const RootSystem& rs, const ReducedWord& w, const ChamberDrift& drift) {
  if (static_cast<int>(drift.a.size()) != rs.rank()) throw InvalidArgument("drift rank mismatch");
  std::vector<double> out;
  for (const auto& b : enumerate_positive_roots(rs, w)) {
    double s = 0.0;
    for (int k = 0; k < rs.rank(); ++k) s += b.coeffs[k] * drift.a[k];
    out.push_back(s);
  }
  return out;
}

ChamberDrift drift_from_chamber_coords(const RootSystem& rs, const std::vector<double>& a) {
  if (static_cast<int>(a.size()) != rs.rank())
    throw InvalidArgument("expected " + std::to_string(rs.rank()) + " chamber coordinates");
  for (double x : a)
    if (!(x > 0.0) || !std::isfinite(x)) throw InvalidArgument("chamber coordinates must be positive");
  std::vector<double> rhs(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) rhs[i] = a[i] * dot(rs.simple_roots[i], rs.simple_roots[i]) / 2.0;
  const auto b = solve_small(gram(rs), rhs);
  ChamberDrift d;
  d.a = a;
  d.vector.assign(rs.ambient_dim, 0.0);
  for (int k = 0; k < rs.rank(); ++k)
    for (int c = 0; c < rs.ambient_dim; ++c) d.vector[c] += b[k] * rs.simple_roots[k][c];
  return d;
}

Vec reflect(const Vec& v, const Vec& alpha) {
  const double f = 2.0 * dot(v, alpha) / dot(alpha, alpha);
  Vec out = v;
  for (std::size_t i = 0; i < v.size(); ++i) out[i] -= f * alpha[i];
  return out;
}

Vec longest_element_action(const RootSystem& rs, const Vec& x, const ReducedWord& w) {
  if (!is_reduced_w0(rs, w)) throw NotReduced("not a reduced word of w0: " + word_to_string(w));
  Vec v = x;
  for (std::size_t j = w.size(); j-- > 0;) v = reflect(v, rs.simple_roots[w[j] - 1]);
  return v;
}

Vec longest_element_action(const RootSystem& rs, const Vec& x) {
  if (static_cast<int>(x.size()) != rs.ambient_dim) throw InvalidArgument("vector dimension mismatch");
  if (rs.rank() <= 2) return longest_element_action(rs, x, alternating_word(rs, 1));
  return longest_element_action(rs, x, *reduced_words_w0(rs).begin());
}

std::vector<Vec> fundamental_coweights(const RootSystem& rs) {
  const auto g = gram(rs);
  std::vector<Vec> out;
  for (int i = 0; i < rs.rank(); ++i) {
    std::vector<double> e(rs.rank(), 0.0);
    e[i] = 1.0;
    const auto b = solve_small(g, e);
    Vec v(rs.ambient_dim, 0.0);
    for (int k = 0; k < rs.rank(); ++k)
      for (int c = 0; c < rs.ambient_dim; ++c) v[c] += b[k] * rs.simple_roots[k][c];
    out.push_back(std::move(v));
  }
  return out;
}

Vec theta_shift(const RootSystem& rs) {
  const auto om = fundamental_coweights(rs);
  Vec th(rs.ambient_dim, 0.0);
  for (int i = 0; i < rs.rank(); ++i) {
    const double l = std::log(dot(rs.simple_roots[i], rs.simple_roots[i]) / 2.0);
    for (int c = 0; c < rs.ambient_dim; ++c) th[c] += l * om[i][c];
  }
  return th;
}

std::vector<Vec> orthonormal_basis(const RootSystem& rs) {
  std::vector<Vec> out;
  for (const auto& a : rs.simple_roots) {
    Vec v = a;
    for (const auto& e : out) {
      const double p = dot(v, e);
      for (std::size_t c = 0; c < v.size(); ++c) v[c] -= p * e[c];
    }
    const double n = std::sqrt(dot(v, v));
    for (double& x : v) x /= n;
    out.push_back(std::move(v));
  }
  return out;
}

}  // namespace poslab
