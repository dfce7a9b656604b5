#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "poslab/transmaps.hpp"
#include "poslab/unipotent.hpp"

using namespace poslab;

namespace {

using Q = mpq_class;
using M = SquareMatrix<Q>;

struct Entry {
  std::size_t i, j;
  int c;
};

// exp(t e) for nilpotent e given by its nonzero entries (0-based).
M exp_nilpotent(std::size_t n, const std::vector<Entry>& e, const Q& t) {
  M x(n);
  for (const auto& en : e) x(en.i, en.j) = en.c;
  M term = M::identity(n), out = M::identity(n);
  for (int k = 1; k < static_cast<int>(n); ++k) {
    term = term * x;
    M scaled = term;
    Q f = 1;
    for (int j = 1; j <= k; ++j) f *= t / j;
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b) {
        scaled(a, b) *= f;
        out(a, b) += scaled(a, b);
      }
  }
  return out;
}

M word_product(std::size_t n, const std::vector<std::vector<Entry>>& gens, const ReducedWord& w, const std::vector<Q>& t) {
  M m = M::identity(n);
  for (std::size_t k = 0; k < w.size(); ++k) m = m * exp_nilpotent(n, gens[w[k] - 1], t[k]);
  return m;
}

std::vector<Q> random_point(std::mt19937_64& g, std::size_t m) {
  std::uniform_int_distribution<int> num(1, 12), den(1, 9);
  std::vector<Q> t(m);
  for (auto& v : t) {
    v = Q(num(g), den(g));
    v.canonicalize();
  }
  return t;
}

// sp4 Chevalley generators: E12+E34 (short) and E23 (long).
const std::vector<Entry> kSp4Short{{0, 1, 1}, {2, 3, 1}};
const std::vector<Entry> kSp4Long{{1, 2, 1}};
// nilpotents generating the maximal unipotent of G2 in its 7-dimensional representation
const std::vector<Entry> kG2Short{{0, 1, 1}, {2, 3, 2}, {3, 4, 1}, {5, 6, 1}};
const std::vector<Entry> kG2Long{{1, 2, 1}, {4, 5, 1}};

void check_braid(RootType type, std::size_t n, const std::vector<std::vector<Entry>>& gens, int reps) {
  const auto map = builtin_map(type);
  std::mt19937_64 g(static_cast<unsigned>(type) + 17);
  for (int rep = 0; rep < reps; ++rep) {
    const auto t = random_point(g, map.arity());
    EXPECT_EQ(word_product(n, gens, map.source_word, t), word_product(n, gens, map.target_word, eval_rational(map, t)))
        << to_string(type) << " rep " << rep;
  }
}

std::vector<double> to_double(const std::vector<Q>& q) {
  std::vector<double> d;
  for (const auto& v : q) d.push_back(v.get_d());
  return d;
}

}  // namespace

TEST(Builtin, Shapes) {
  EXPECT_EQ(builtin_map(RootType::A2).components.output_count(), 3u);
  EXPECT_EQ(builtin_map(RootType::B2).arity(), 4u);
  EXPECT_EQ(builtin_map(RootType::G2).components.output_count(), 6u);
  EXPECT_EQ(builtin_map("C2").source_word, (ReducedWord{1, 2, 1, 2}));
  EXPECT_EQ(builtin_map("C2").target_word, (ReducedWord{2, 1, 2, 1}));
  EXPECT_THROW(builtin_map("A3"), UnsupportedType);
}

TEST(Builtin, A2FirstComponent) {
  EXPECT_EQ(builtin_map(RootType::A2).components, parse_expr("(t2*t3/(t1+t3), t1+t3, t1*t2/(t1+t3))", 3));
}

TEST(Builtin, B2SecondComponentIsPi2OverPi1) {
  const auto map = builtin_map(RootType::B2);
  const std::vector<Q> t{Q(2), Q(3, 4), Q(5, 3), Q(1, 7)};
  const Q pi1 = t[0] * t[1] + (t[0] + t[2]) * t[3];
  const Q pi2 = t[0] * t[0] * t[1] + (t[0] + t[2]) * (t[0] + t[2]) * t[3];
  EXPECT_EQ(eval_rational(map, t)[1], pi2 / pi1);
}

TEST(Eval, Examples) {
  EXPECT_EQ(eval_rational(builtin_map(RootType::A2), {1, 1, 1}), (std::vector<Q>{Q(1, 2), 2, Q(1, 2)}));
  EXPECT_EQ(eval_tropical(builtin_map(RootType::A2), {2, 5, 3}), (std::vector<double>{6, 2, 5}));
  EXPECT_EQ(eval_rational(builtin_map(RootType::B2), {1, 1, 1, 1}), (std::vector<Q>{Q(1, 5), Q(5, 3), Q(9, 5), Q(1, 3)}));
  const auto v = eval(builtin_map(RootType::A2), {Q(1), Q(1), Q(1)});
  EXPECT_EQ(std::get<Q>(v[1]), 2);
  EXPECT_THROW(eval_float(builtin_map(RootType::A2), {1, 1}), ConfigError);
}

TEST(Eval, A2SelfInverse) {
  const auto map = builtin_map(RootType::A2);
  std::mt19937_64 g(1);
  for (int rep = 0; rep < 300; ++rep) {
    const auto t = random_point(g, 3);
    EXPECT_EQ(eval_rational(map, eval_rational(map, t)), t);
  }
}

TEST(Braid, A2InSl3) {
  const auto map = builtin_map(RootType::A2);
  std::mt19937_64 g(2);
  for (int rep = 0; rep < 300; ++rep) {
    const auto t = random_point(g, 3);
    EXPECT_EQ(lusztig_product<Q>(3, {{1, 2, 1}, t}), lusztig_product<Q>(3, {{2, 1, 2}, eval_rational(map, t)}));
  }
}

TEST(Braid, B2InSp4AlphaOneShort) { check_braid(RootType::B2, 4, {kSp4Short, kSp4Long}, 50); }

TEST(Braid, C2InSp4AlphaOneLong) { check_braid(RootType::C2, 4, {kSp4Long, kSp4Short}, 50); }

TEST(Braid, G2InDimensionSeven) { check_braid(RootType::G2, 7, {kG2Short, kG2Long}, 10); }

TEST(Braid, G2NegativeControlsFail) {
  // each of these differs from the builtin in one place and must break the identity
  const std::string base = builtin_text(RootType::G2);
  std::vector<std::string> variants;
  auto replace = [&](const std::string& from, const std::string& to) {
    std::string s = base;
    const auto pos = s.find(from);
    EXPECT_NE(pos, std::string::npos) << from;
    s.replace(pos, from.size(), to);
    variants.push_back(s);
  };
  replace("c2 = 3*t1*t3 + 2*t3^2", "c2 = 3*t1*t3 + 2*t2");
  replace("c3 = 3*t1*t3 + 3*t3^2", "c3 = 3*t1*t3 + 3*t2");
  replace("pi4/(pi1*pi2)", "pi3/(pi1*pi2)");
  std::mt19937_64 g(4);
  const auto t = random_point(g, 6);
  const auto lhs = word_product(7, {kG2Short, kG2Long}, {1, 2, 1, 2, 1, 2}, t);
  for (const auto& text : variants) {
    const auto e = parse_expr(text, 6);
    EXPECT_NE(lhs, word_product(7, {kG2Short, kG2Long}, {2, 1, 2, 1, 2, 1}, evaluate<RationalSemiring>(e, t)));
  }
}

TEST(Eval, Homogeneous) {
  std::mt19937_64 g(8);
  for (auto type : {RootType::A2, RootType::B2, RootType::C2, RootType::G2}) {
    const auto map = builtin_map(type);
    for (int rep = 0; rep < 20; ++rep) {
      const auto t = random_point(g, map.arity());
      const Q lambda = random_point(g, 1)[0];
      auto scaled = t;
      for (auto& v : scaled) v *= lambda;
      auto want = eval_rational(map, t);
      for (auto& v : want) v *= lambda;
      EXPECT_EQ(eval_rational(map, scaled), want) << to_string(type);
    }
  }
}

TEST(Eval, FloatAgreesWithRational) {
  std::mt19937_64 g(9);
  for (auto type : {RootType::A2, RootType::B2, RootType::C2, RootType::G2}) {
    const auto map = builtin_map(type);
    const auto t = random_point(g, map.arity());
    const auto q = eval_rational(map, t);
    const auto f = eval_float(map, to_double(t));
    for (std::size_t k = 0; k < q.size(); ++k) EXPECT_NEAR(f[k], q[k].get_d(), 1e-12 * q[k].get_d());
  }
}

TEST(Shapes, G2UsesCorootPairing) {
  const auto map = builtin_map(RootType::G2);
  EXPECT_EQ(source_shapes(map, {1, 1}), (std::vector<double>{1, 2, 5, 3, 4, 1}));
  EXPECT_EQ(target_shapes(map, {1, 1}), (std::vector<double>{1, 4, 3, 5, 2, 1}));
  EXPECT_EQ(source_shapes(builtin_map(RootType::A2), {1.5, 2.0}), (std::vector<double>{1.5, 3.5, 2.0}));
  EXPECT_EQ(target_shapes(builtin_map(RootType::A2), {1.5, 2.0}), (std::vector<double>{2.0, 3.5, 1.5}));
}

TEST(TropicalLimit, LinearInH) {
  std::mt19937_64 g(10);
  std::uniform_int_distribution<int> u(0, 10);
  for (auto type : {RootType::A2, RootType::B2, RootType::C2, RootType::G2}) {
    const auto map = builtin_map(type);
    for (int rep = 0; rep < 10; ++rep) {
      std::vector<double> x(map.arity());
      for (auto& v : x) v = u(g);
      double prev = INFINITY;
      for (double h : {1e-1, 1e-2, 1e-3, 1e-4}) {
        const double err = tropical_limit_error(map, x, h);
        EXPECT_LE(err, 10 * h) << to_string(type);
        EXPECT_LE(err, prev);
        prev = err;
      }
    }
  }
}

TEST(TropicalLimit, TiesStayBounded) {
  const auto map = builtin_map(RootType::A2);
  for (double h : {1e-1, 1e-2, 1e-3}) EXPECT_LE(tropical_limit_error(map, {4, 1, 4}, h), 10 * h);
  EXPECT_GT(tropical_limit_error(map, {4, 1, 4}, 1e-1), 0.5e-1 * std::log(2.0));
}

TEST(NumericInverse, RoundTrips) {
  const auto a2 = builtin_map(RootType::A2);
  const auto x = numeric_inverse(a2, eval_float(a2, {1, 2, 3}));
  for (std::size_t k = 0; k < 3; ++k) EXPECT_NEAR(x[k], k + 1.0, 1e-8);
  // A2 is self-inverse: the closed form is a second route
  const auto y = eval_float(a2, {0.4, 7.0, 2.5});
  const auto closed = eval_float(a2, y);
  const auto newton = numeric_inverse(a2, y);
  for (std::size_t k = 0; k < 3; ++k) EXPECT_NEAR(newton[k], closed[k], 1e-8 * closed[k]);

  const auto b2 = builtin_map(RootType::B2);
  std::mt19937_64 g(12);
  std::uniform_real_distribution<double> u(0.1, 10.0);
  double worst = 0.0;
  for (int rep = 0; rep < 100; ++rep) {
    std::vector<double> t(4);
    for (auto& v : t) v = u(g);
    const auto inv = numeric_inverse(b2, eval_float(b2, t));
    for (std::size_t k = 0; k < 4; ++k) worst = std::max(worst, std::abs(inv[k] / t[k] - 1.0));
  }
  EXPECT_LT(worst, 1e-8);

  const auto g2 = builtin_map(RootType::G2);
  const auto x6 = numeric_inverse(g2, eval_float(g2, std::vector<double>(6, 1.0)));
  for (double v : x6) EXPECT_NEAR(v, 1.0, 1e-8);
}

TEST(NumericInverse, FailsOutsideImageOrBadInput) {
  const auto a2 = builtin_map(RootType::A2);
  EXPECT_THROW(numeric_inverse(a2, {1, -1, 1}), ConfigError);
  NewtonOptions opt;
  opt.max_iterations = 1;
  EXPECT_THROW(numeric_inverse(builtin_map(RootType::G2), {1e3, 1e-3, 5, 1, 1e4, 2}, {}, opt), NoConvergence);
}

TEST(Injectivity, Boxes) {
  const auto a2 = tropical_injectivity_check(builtin_map(RootType::A2), 10);
  EXPECT_EQ(a2.points, 1331u);
  EXPECT_EQ(a2.collisions, 0u);
  EXPECT_EQ(a2.non_natural, 0u);
  EXPECT_TRUE(tropical_injectivity_check(builtin_map(RootType::B2), 8).ok());
  EXPECT_TRUE(tropical_injectivity_check(builtin_map(RootType::C2), 8).ok());
  EXPECT_TRUE(tropical_injectivity_check(builtin_map(RootType::G2), 4).ok());
  EXPECT_EQ(tropical_image(builtin_map(RootType::A2), {0, 0, 0}), (std::vector<std::int64_t>{0, 0, 0}));
}

TEST(Injectivity, DetectsCollisions) {
  TransitionMapDef bad = builtin_map(RootType::A2);
  bad.components = parse_expr("(t1+t2, t2, t3)", 3);
  const auto r = tropical_injectivity_check(bad, 3);
  EXPECT_GT(r.collisions, 0u);
  EXPECT_EQ(r.first_collision.size(), 2u);
  EXPECT_FALSE(r.ok());
}
