#include "poslab/verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <unordered_map>

#include "poslab/errors.hpp"
#include "poslab/parallel.hpp"
#include "poslab/pathsim.hpp"
#include "poslab/sampler.hpp"
#include "poslab/stats.hpp"
#include "poslab/transmaps.hpp"
#include "poslab/unipotent.hpp"

namespace poslab {
namespace {

// Stream-id namespaces, one per verification family.
enum Domain : std::uint64_t {
  kRank2 = 0x100,
  kTropical = 0x200,
  kGeometric = 0x300,
  kExitSim = 0x400,
  kExitAlg = 0x480,
  kConditional = 0x500,
  kInversion = 0x600,
  kTropLimit = 0x700,
  kGammaExp = 0x800,
  kGammaExpRef = 0x880,
};

std::uint64_t stream_id(std::uint64_t domain, std::uint64_t index) { return (domain << 40) | index; }

std::uint64_t type_index(RootType t) { return static_cast<std::uint64_t>(t); }

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", x);
  return buf;
}

std::string fmt(const std::vector<double>& xs) {
  std::string s = "(";
  for (std::size_t i = 0; i < xs.size(); ++i) s += (i ? ", " : "") + fmt(xs[i]);
  return s + ")";
}

void check_positive(const std::vector<double>& a) {
  for (double x : a)
    if (!(x > 0.0) || !std::isfinite(x)) throw InvalidArgument("drift coordinates must be positive (open chamber)");
}

// n rows of width m, drawn in fixed chunks of kChunk rows per stream.
template <class Draw>
std::vector<std::vector<double>> sample_columns(std::size_t n, std::size_t m, std::uint64_t domain,
                                                const RunContext& ctx, Draw draw) {
  const std::size_t chunks = (n + kChunk - 1) / kChunk;
  auto parts = parallel_map<std::vector<std::vector<double>>>(chunks, ctx.workers, [&](std::size_t c) {
    RngStream rng(ctx.seed, stream_id(domain, c));
    const std::size_t rows = std::min(kChunk, n - c * kChunk);
    std::vector<std::vector<double>> cols(m, std::vector<double>(rows));
    std::vector<double> row(m);
    for (std::size_t r = 0; r < rows; ++r) {
      draw(rng, row);
      for (std::size_t k = 0; k < m; ++k) cols[k][r] = row[k];
    }
    return cols;
  });
  std::vector<std::vector<double>> out(m);
  for (auto& k : out) k.reserve(n);
  for (const auto& p : parts)
    for (std::size_t k = 0; k < m; ++k) out[k].insert(out[k].end(), p[k].begin(), p[k].end());
  return out;
}

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

std::string identity_text(const std::string& kind, const TransitionMapDef& map, const std::vector<double>& src,
                          const std::vector<double>& tgt) {
  return kind + " identity, type " + to_string(map.type) + ", words " + word_to_string(map.source_word) + " -> " +
         word_to_string(map.target_word) + ": t ~ " + fmt(src) + " independent => R(t) ~ " + fmt(tgt) + " independent";
}

}  // namespace

TestReport verify_rank2_identity(RootType type, double a1, double a2, std::size_t n, const RunContext& ctx,
                                 const ShapeOverride& ov, bool energy) {
  check_positive({a1, a2});
  if (n < 2) throw InvalidArgument("need at least 2 samples");
  const auto map = builtin_map(type);
  const auto src = ov.source.value_or(source_shapes(map, {a1, a2}));
  const auto tgt = ov.target.value_or(target_shapes(map, {a1, a2}));
  const std::size_t m = map.arity();
  if (src.size() != m || tgt.size() != m) throw InvalidArgument("shape override has wrong length");

  const auto cols = sample_columns(n, m, kRank2 + type_index(type), ctx,
                                   [&](RngStream& rng, std::vector<double>& row) {
                                     std::vector<double> t(m);
                                     for (std::size_t j = 0; j < m; ++j) t[j] = gamma_draw(rng, src[j]);
                                     row = eval_float(map, t);
                                   });
  TestReport r;
  r.test_name = "rank2_gamma/" + to_string(type) + "/a=" + fmt(a1) + "," + fmt(a2);
  r.n_samples = n;
  r.seed = ctx.seed;
  r.paper_anchor = identity_text("beta-gamma", map, src, tgt);
  for (std::size_t k = 0; k < m; ++k) {
    const double shape = tgt[k];
    const auto ks = ks_one_sample(cols[k], [shape](double x) { return gamma_cdf(shape, x); });
    r.stat("ks_D_p" + std::to_string(k + 1), ks.statistic);
    r.p_at_least("ks_p" + std::to_string(k + 1), ks.p_value, kLevel);
  }
  r.at_most("max_abs_spearman", independence_diagnostics(cols).max_abs, kSpearmanBound);
  if (energy) {
    // 500 pushed rows against 500 fresh target rows; reported, not part of the verdict
    const std::size_t k = std::min<std::size_t>(500, n);
    std::vector<std::vector<double>> x(k, std::vector<double>(m)), y(k, std::vector<double>(m));
    RngStream rng(ctx.seed, stream_id(kRank2 + 0x80, type_index(type)));
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < m; ++j) {
        x[i][j] = std::log(cols[j][i]);
        y[i][j] = std::log(gamma_draw(rng, tgt[j]));
      }
    const auto e = energy_test(x, y, 200, ctx.seed);
    r.stat("energy_distance_log", e.statistic);
    r.stat("energy_permutation_p", e.p_value);
  }
  return r;
}

TestReport verify_tropical_identity(RootType type, double a1, double a2, std::size_t n, const RunContext& ctx,
                                    const ShapeOverride& ov) {
  check_positive({a1, a2});
  if (n < 2) throw InvalidArgument("need at least 2 samples");
  const auto map = builtin_map(type);
  const auto src = ov.source.value_or(source_shapes(map, {a1, a2}));
  const auto tgt = ov.target.value_or(target_shapes(map, {a1, a2}));
  const std::size_t m = map.arity();
  if (src.size() != m || tgt.size() != m) throw InvalidArgument("rate override has wrong length");

  const auto cols = sample_columns(n, m, kTropical + type_index(type), ctx, [&](RngStream& rng, std::vector<double>& row) {
    std::vector<double> t(m);
    for (std::size_t j = 0; j < m; ++j) t[j] = exponential_draw(rng, src[j]);
    row = eval_tropical(map, t);
  });
  TestReport r;
  r.test_name = "tropical_exponential/" + to_string(type) + "/a=" + fmt(a1) + "," + fmt(a2);
  r.n_samples = n;
  r.seed = ctx.seed;
  r.paper_anchor = identity_text("exponential (min-plus)", map, src, tgt);
  for (std::size_t k = 0; k < m; ++k) {
    const double rate = tgt[k];
    const auto ks = ks_one_sample(cols[k], [rate](double x) { return x <= 0.0 ? 0.0 : -std::expm1(-rate * x); });
    r.stat("ks_D_p" + std::to_string(k + 1), ks.statistic);
    r.p_at_least("ks_p" + std::to_string(k + 1), ks.p_value, kLevel);
  }
  r.at_most("max_abs_spearman", independence_diagnostics(cols).max_abs, kSpearmanBound);
  return r;
}

TestReport verify_geometric_identity(RootType type, double z1, double z2, int box, std::size_t n, const RunContext& ctx,
                                     const ShapeOverride& ov) {
  if (!(z1 > 0 && z1 < 1 && z2 > 0 && z2 < 1)) throw InvalidArgument("geometric parameters must lie in (0,1)");
  if (box < 0) throw InvalidArgument("box must be nonnegative");
  const auto map = builtin_map(type);
  const std::vector<double> a{-std::log(z1), -std::log(z2)};
  const auto src = ov.source.value_or(source_shapes(map, a));
  const auto tgt = ov.target.value_or(target_shapes(map, a));
  const std::size_t m = map.arity();
  std::vector<double> zs(m), zt(m);
  for (std::size_t j = 0; j < m; ++j) {
    zs[j] = std::exp(-src[j]);
    zt[j] = std::exp(-tgt[j]);
  }

  TestReport r;
  r.test_name = "geometric/" + to_string(type) + "/z=" + fmt(z1) + "," + fmt(z2) + "/box=" + std::to_string(box);
  r.n_samples = n;
  r.seed = ctx.seed;
  r.paper_anchor = identity_text("geometric (tropical on N^m)", map, src, tgt) + ", parameters z_j = exp(-shape_j)";

  // (i) exact pushforward on the box
  struct Hash {
    std::size_t operator()(const std::vector<std::int64_t>& v) const {
      std::size_t h = 1469598103934665603ull;
      for (auto x : v) h = (h ^ static_cast<std::size_t>(x)) * 1099511628211ull;
      return h;
    }
  };
  std::unordered_map<std::vector<std::int64_t>, double, Hash> push;
  std::vector<std::int64_t> x(m, 0);
  std::uint64_t collisions = 0;
  while (true) {
    double p = 1.0;
    for (std::size_t j = 0; j < m; ++j) p *= (1.0 - zs[j]) * std::pow(zs[j], static_cast<double>(x[j]));
    auto [it, fresh] = push.emplace(tropical_image(map, x), p);
    if (!fresh) {
      it->second += p;
      ++collisions;
    }
    std::size_t i = 0;
    while (i < m && x[i] == box) x[i++] = 0;
    if (i == m) break;
    ++x[i];
  }
  auto target_pmf = [&](const std::vector<std::int64_t>& y) {
    double q = 1.0;
    for (std::size_t j = 0; j < m; ++j) q *= (1.0 - zt[j]) * std::pow(zt[j], static_cast<double>(y[j]));
    return q;
  };
  double q_box = 1.0, s_box = 1.0;
  for (std::size_t j = 0; j < m; ++j) {
    q_box *= 1.0 - std::pow(zt[j], box + 1.0);
    s_box *= 1.0 - std::pow(zs[j], box + 1.0);
  }
  double diff = 0.0, q_seen = 0.0;
  for (const auto& [y, p] : push) {
    const bool inside = std::all_of(y.begin(), y.end(), [&](std::int64_t v) { return v >= 0 && v <= box; });
    if (inside) {
      const double q = target_pmf(y);
      q_seen += q;
      diff += std::abs(p - q);
    } else {
      diff += p;
    }
  }
  diff += std::max(0.0, q_box - q_seen);
  const double tv = 0.5 * diff;
  const double trunc = std::max(1.0 - s_box, 1.0 - q_box);
  r.stat("truncation_mass", trunc);
  r.at_most("tv_distance_box", tv, 1e-6 + trunc);
  r.at_most("tropical_collisions", static_cast<double>(collisions), 0.0);

  // (ii) chi-square on n draws: marginals, then the joint law on cells {0,1,2,>=3}^m
  if (n > 0) {
    const auto cols = sample_columns(n, m, kGeometric + type_index(type), ctx, [&](RngStream& rng, std::vector<double>& row) {
      std::vector<std::int64_t> g(m);
      for (std::size_t j = 0; j < m; ++j) g[j] = static_cast<std::int64_t>(geometric_draw(rng, zs[j]));
      const auto y = tropical_image(map, g);
      for (std::size_t j = 0; j < m; ++j) row[j] = static_cast<double>(y[j]);
    });
    const int K = 40;
    for (std::size_t j = 0; j < m; ++j) {
      std::vector<double> obs(K + 1, 0.0), prob(K + 1);
      for (double v : cols[j]) obs[std::min<std::size_t>(static_cast<std::size_t>(v), K)] += 1.0;
      for (int k = 0; k < K; ++k) prob[k] = (1.0 - zt[j]) * std::pow(zt[j], k);
      prob[K] = std::pow(zt[j], K);
      const auto c = chi_square_gof(obs, prob);
      r.stat("chi2_p" + std::to_string(j + 1), c.statistic);
      r.p_at_least("chi2_p" + std::to_string(j + 1) + "_p", c.p_value, kLevel);
    }
    const std::size_t cells = static_cast<std::size_t>(std::pow(4.0, static_cast<double>(m)));
    std::vector<double> obs(cells, 0.0), prob(cells, 1.0);
    for (std::size_t i = 0; i < n; ++i) {
      std::size_t idx = 0;
      for (std::size_t j = 0; j < m; ++j) idx = idx * 4 + std::min<std::size_t>(static_cast<std::size_t>(cols[j][i]), 3);
      obs[idx] += 1.0;
    }
    for (std::size_t idx = 0; idx < cells; ++idx) {
      std::size_t rem = idx;
      for (std::size_t j = m; j-- > 0;) {
        const std::size_t k = rem % 4;
        rem /= 4;
        prob[idx] *= k < 3 ? (1.0 - zt[j]) * std::pow(zt[j], static_cast<double>(k)) : std::pow(zt[j], 3.0);
      }
    }
    const auto c = chi_square_gof(obs, prob);
    r.stat("chi2_joint", c.statistic);
    r.p_at_least("chi2_joint_p", c.p_value, kLevel);
  }
  return r;
}

double default_horizon(const std::vector<double>& a) {
  check_positive(a);
  return std::max(20.0, 12.0 / *std::min_element(a.begin(), a.end()));
}

namespace {

RootSystem exit_root_system(int n_group, const std::vector<double>& a) {
  if (n_group != 2 && n_group != 3) throw InvalidArgument("exit law supports SL2 and SL3");
  RootSystem rs = build_root_system(n_group == 2 ? RootType::A1 : RootType::A2);
  if (static_cast<int>(a.size()) != rs.rank()) throw InvalidArgument("expected " + std::to_string(rs.rank()) + " drift coordinates");
  check_positive(a);
  return rs;
}

std::vector<double> lower_entries(const SquareMatrix<double>& N) {
  if (N.size() == 2) return {N(1, 0)};
  return {N(1, 0), N(2, 1), N(2, 0)};
}

}  // namespace

ExitSample simulate_exit_law(int n_group, const std::vector<double>& a, std::size_t n_paths, double T, double dt,
                             const RunContext& ctx) {
  const RootSystem rs = exit_root_system(n_group, a);
  const auto drift = drift_from_chamber_coords(rs, a);
  const Vec x0(rs.ambient_dim, 0.0);
  grid_steps(T, dt);
  ExitSample out;
  out.rows = parallel_map<std::vector<double>>(n_paths, ctx.workers, [&](std::size_t i) {
    RngStream rng(ctx.seed, stream_id(kExitSim + n_group, i));
    return lower_entries(n_matrix(sample_brownian_path(rng, rs, drift, x0, T, dt), rs));
  });
  for (std::size_t i = 0; i < n_paths; ++i) out.seeds.push_back(stream_seed(ctx.seed, stream_id(kExitSim + n_group, i)));
  return out;
}

ExitSample algebraic_exit_law(int n_group, const std::vector<double>& a, std::size_t n, const RunContext& ctx) {
  const RootSystem rs = exit_root_system(n_group, a);
  const auto drift = drift_from_chamber_coords(rs, a);
  const ReducedWord word = n_group == 2 ? ReducedWord{1} : ReducedWord{1, 2, 1};
  const std::size_t chunks = (n + kChunk - 1) / kChunk;
  auto parts = parallel_map<std::vector<std::vector<double>>>(chunks, ctx.workers, [&](std::size_t c) {
    RngStream rng(ctx.seed, stream_id(kExitAlg + n_group, c));
    const std::size_t rows = std::min(kChunk, n - c * kChunk);
    std::vector<std::vector<double>> block;
    block.reserve(rows);
    for (std::size_t r = 0; r < rows; ++r) {
      const auto g = sample_gamma_vector(rng, rs, word, drift);
      block.push_back(lower_entries(theta_twist(lusztig_product(static_cast<std::size_t>(n_group), LusztigParams<double>{word, g.values}))));
    }
    return block;
  });
  ExitSample out;
  for (std::size_t c = 0; c < parts.size(); ++c) {
    const auto seed = stream_seed(ctx.seed, stream_id(kExitAlg + n_group, c));
    for (auto& row : parts[c]) {
      out.rows.push_back(std::move(row));
      out.seeds.push_back(seed);
    }
  }
  return out;
}

TestReport verify_exit_law(int n_group, const std::vector<double>& a, std::size_t n_paths, double T, double dt,
                           const RunContext& ctx) {
  const RootSystem rs = exit_root_system(n_group, a);
  if (n_paths < 2) throw InvalidArgument("need at least 2 paths");
  const auto drift = drift_from_chamber_coords(rs, a);
  const auto sim = simulate_exit_law(n_group, a, n_paths, T, dt, ctx).rows;
  const std::size_t n_alg = 4 * n_paths;
  const auto alg_rows = algebraic_exit_law(n_group, a, n_alg, ctx).rows;
  const std::size_t k = sim[0].size();
  std::vector<std::vector<double>> alg(k, std::vector<double>(n_alg));
  for (std::size_t i = 0; i < n_alg; ++i)
    for (std::size_t j = 0; j < k; ++j) alg[j][i] = alg_rows[i][j];
  std::vector<std::vector<double>> simc(k, std::vector<double>(n_paths));
  for (std::size_t i = 0; i < n_paths; ++i)
    for (std::size_t j = 0; j < k; ++j) simc[j][i] = sim[i][j];

  TestReport r;
  r.test_name = "exit_law/sl" + std::to_string(n_group) + "/a=" + fmt(a) + "/T=" + fmt(T) + "/dt=" + fmt(dt);
  r.n_samples = n_paths;
  r.seed = ctx.seed;
  r.paper_anchor = n_group == 2
      ? "Dufresne: 2 int_0^inf exp(-2 W^(mu)_s) ds ~ 1/gamma_mu, compared with Theta(x(t)) at t ~ gamma_mu"
      : "exit law on SL3: N_inf(X^(mu)) ~ Theta(x_121(t)), t ~ (gamma_a1, gamma_a1+a2, gamma_a2) independent";
  const char* labels[] = {"n21", "n32", "n31"};
  for (std::size_t j = 0; j < k; ++j) {
    const auto ks = ks_two_sample(simc[j], alg[j]);
    r.stat(std::string("ks_D_") + labels[j], ks.statistic);
    r.p_at_least(std::string("ks_p_") + labels[j], ks.p_value, kLevel);
  }
  if (n_group == 3) {
    const double rs_sim = spearman(simc[0], simc[2]);
    const double rs_alg = spearman(alg[0], alg[2]);
    r.stat("spearman_n21_n31_sim", rs_sim);
    r.stat("spearman_n21_n31_alg", rs_alg);
    r.at_most("spearman_gap_n21_n31", std::abs(rs_sim - rs_alg), 0.02);
  }
  // tail beyond T: exp(-beta(X_s)) with beta(X_s) = b s + |beta| B_s
  double b = INFINITY, len = 0.0;
  for (const auto& al : rs.simple_roots) {
    const double v = dot(al, drift.vector);
    if (v < b) {
      b = v;
      len = std::sqrt(dot(al, al));
    }
  }
  const double typical = std::exp(-b * T);
  const double q999 = std::exp(-b * T + 3.09 * len * std::sqrt(T));
  r.at_most("tail_rel_typical", typical, 1e-4);
  r.stat("tail_rel_q999", q999);
  r.tail_bias_note = "horizon T=" + fmt(T) + " truncates int_T^inf; slowest exponent b=" + fmt(b) +
                     ", typical relative tail exp(-bT)=" + fmt(typical) + ", 99.9% quantile of the integrand exp(-beta(X_T)) " + fmt(q999) +
                     "; trapezoid bias O(dt^2) with dt=" + fmt(dt);
  return r;
}

TestReport verify_conditional_representation(RootType type, const std::vector<double>& a, std::size_t n_paths, double T,
                                             double dt, const RunContext& ctx,
                                             const std::optional<std::vector<double>>& fixed_params) {
  if (type != RootType::A1 && type != RootType::A2) throw InvalidArgument("conditional representation supports A1 and A2");
  const RootSystem rs = build_root_system(type);
  if (static_cast<int>(a.size()) != rs.rank()) throw InvalidArgument("expected " + std::to_string(rs.rank()) + " drift coordinates");
  check_positive(a);
  if (n_paths < 2) throw InvalidArgument("need at least 2 paths");
  const std::size_t n = static_cast<std::size_t>(rs.rank()) + 1;
  const auto drift = drift_from_chamber_coords(rs, a);
  const ReducedWord word = type == RootType::A1 ? ReducedWord{1} : ReducedWord{1, 2, 1};
  const auto shapes = gamma_parameters(rs, word, drift);
  if (fixed_params && fixed_params->size() != word.size()) throw InvalidArgument("fixed parameters have wrong length");
  const Vec wdrift = longest_element_action(rs, drift.vector);
  const Vec x0(rs.ambient_dim, 0.0);
  const auto basis = orthonormal_basis(rs);
  const std::size_t steps = grid_steps(T, dt);

  const double h = 0.5;
  const std::size_t hk = static_cast<std::size_t>(std::llround(h / dt));
  if (hk == 0 || hk > steps) throw InvalidArgument("horizon too short for increment blocks");
  std::vector<std::size_t> starts;
  for (double f : {0.0, 0.1, 0.25, 0.5})
    starts.push_back(std::min(static_cast<std::size_t>(std::llround(f * T / dt)), steps - hk));
  starts.push_back(steps - hk);

  struct PathOut {
    double relerr = 0.0;
    std::vector<double> z;
    std::vector<double> coroot_end;
  };
  const auto outs = parallel_map<PathOut>(n_paths, ctx.workers, [&](std::size_t i) {
    RngStream rng(ctx.seed, stream_id(kConditional + type_index(type), i));
    std::vector<double> t = fixed_params ? *fixed_params : sample_gamma_vector(rng, shapes, word).values;
    const auto W = sample_brownian_path(rng, rs, wdrift, x0, T, dt);
    const auto L = path_transform_word(W, rs, word, t);
    PathOut o;
    const auto N = n_matrix(L, rs);
    const auto Th = theta_twist(lusztig_product(n, LusztigParams<double>{word, t}));
    for (std::size_t p = 1; p < n; ++p)
      for (std::size_t q = 0; q < p; ++q) o.relerr = std::max(o.relerr, std::abs(N(p, q) / Th(p, q) - 1.0));
    for (std::size_t s : starts) {
      const auto x1 = L.at(s);
      const auto x2 = L.at(s + hk);
      for (const auto& e : basis) {
        double d = 0.0, m = 0.0;
        for (std::size_t c = 0; c < e.size(); ++c) {
          d += (x2[c] - x1[c]) * e[c];
          m += drift.vector[c] * e[c];
        }
        o.z.push_back((d - m * h) / std::sqrt(h));
      }
    }
    const auto end = L.at(steps);
    for (const auto& al : rs.simple_roots) {
      double v = 0.0;
      for (std::size_t c = 0; c < al.size(); ++c) v += al[c] * end[c];
      o.coroot_end.push_back(2.0 * v / dot(al, al) / T);
    }
    return o;
  });

  TestReport r;
  r.test_name = std::string("conditional_representation/") + to_string(type) + "/a=" + fmt(a) +
                (fixed_params ? "/fixed_g=" + fmt(*fixed_params) : "") + "/T=" + fmt(T);
  r.n_samples = n_paths;
  r.seed = ctx.seed;
  r.paper_anchor = "conditional representation: Lambda = T_{x_" + word_to_string(word) +
                   "(t)} W^(w0 mu), t ~ Gamma_mu, is Brownian motion with drift mu and N_inf(Lambda) = Theta(x_" +
                   word_to_string(word) + "(t))";
  std::vector<double> z;
  for (const auto& o : outs) z.insert(z.end(), o.z.begin(), o.z.end());
  const auto ks = ks_one_sample(z, normal_cdf);
  r.stat("ks_D_increments", ks.statistic);
  r.p_at_least("ks_p_increments", ks.p_value, kLevel);
  const double nn = static_cast<double>(n_paths);
  for (int i = 0; i < rs.rank(); ++i) {
    double mean = 0.0, sq = 0.0;
    for (const auto& o : outs) mean += o.coroot_end[i];
    mean /= nn;
    for (const auto& o : outs) sq += (o.coroot_end[i] - mean) * (o.coroot_end[i] - mean);
    const double se = std::sqrt(sq / (nn - 1.0) / nn);
    r.stat("drift_estimate_a" + std::to_string(i + 1), mean);
    r.at_most("drift_deviation_sigmas_a" + std::to_string(i + 1), std::abs(mean - a[i]) / se, 3.0);
  }
  std::size_t good = 0;
  double worst = 0.0;
  for (const auto& o : outs) {
    if (o.relerr <= 0.02) ++good;
    worst = std::max(worst, o.relerr);
  }
  r.stat("max_rel_error_N_vs_Theta", worst);
  r.at_least("frac_paths_within_2pct", good / nn, 0.95);
  double b = INFINITY;
  for (const auto& al : rs.simple_roots) b = std::min(b, dot(al, drift.vector));
  r.tail_bias_note = "N_T at T=" + fmt(T) + " stands in for N_inf; typical relative tail exp(-bT)=" + fmt(std::exp(-b * T));
  return r;
}

TestReport verify_inversion_lemma(double dt, std::size_t n_paths, double T, const RunContext& ctx) {
  const RootSystem rs = build_root_system(RootType::A1);
  const Vec& beta = rs.simple_roots[0];
  const double nn = 1.0;  // n in the lemma, xi = 1/n
  const double fine = dt / 2.0;
  const std::size_t steps = grid_steps(T, dt);
  const auto drift = drift_from_chamber_coords(rs, {0.5});

  struct Out {
    double res_dt, res_half, qv_dev, roundtrip;
    bool condition_ok;
  };
  const auto outs = parallel_map<Out>(n_paths, ctx.workers, [&](std::size_t i) {
    RngStream rng(ctx.seed, stream_id(kInversion, i));
    const auto y_half = sample_brownian_path(rng, rs, drift, {0.0}, T, fine);
    PathGrid y = zero_path(1, T, dt);
    for (std::size_t k = 0; k <= steps; ++k) y.at(k)[0] = y_half.at(2 * k)[0];
    Out o{};
    const auto x = path_transform_elementary(y, beta, 1.0 / nn);
    const auto x_half = path_transform_elementary(y_half, beta, 1.0 / nn);
    o.res_dt = inversion_residual(x, y, beta, nn);
    o.res_half = inversion_residual(x_half, y_half, beta, nn);
    const auto ix = exponential_functional(x, beta, 1.0);
    o.condition_ok = ix.final_value() < nn;
    const auto back = path_transform_elementary_inverse(x, beta, nn);
    for (std::size_t k = 0; k <= steps; ++k) o.roundtrip = std::max(o.roundtrip, std::abs(back.at(k)[0] - y.at(k)[0]));
    o.qv_dev = std::abs(quadratic_variation(x, 0) / quadratic_variation(y, 0) - 1.0);
    return o;
  });
  double res_dt = 0, res_half = 0, qv = 0, rt = 0;
  bool cond = true;
  for (const auto& o : outs) {
    res_dt += o.res_dt;
    res_half += o.res_half;
    qv = std::max(qv, o.qv_dev);
    rt = std::max(rt, o.roundtrip);
    cond = cond && o.condition_ok;
  }
  const double np = static_cast<double>(n_paths);
  res_dt /= np;
  res_half /= np;
  TestReport r;
  r.test_name = "inversion_lemma/dt=" + fmt(dt) + "/T=" + fmt(T);
  r.n_samples = n_paths;
  r.seed = ctx.seed;
  r.paper_anchor = "path inversion: x = y + log(1 + (1/n) int e^{-beta(y)}) beta^v implies "
                   "(1 + (1/n) int e^{-beta(y)})(1 - (1/n) int e^{-beta(x)}) = 1";
  r.at_most("residual_dt", res_dt, 10.0 * dt);
  r.at_most("residual_dt_half", res_half, 10.0 * fine);
  r.at_most("halving_ratio", res_half / res_dt, 0.5);
  r.stat("roundtrip_sup_error", rt);
  r.at_most("max_qv_ratio_dev", qv, dt);
  r.at_least("inverse_condition_holds", cond ? 1.0 : 0.0, 1.0);
  return r;
}

TestReport verify_tropical_limit(std::size_t n_points, const std::vector<double>& hs, const RunContext& ctx) {
  if (hs.size() < 2) throw InvalidArgument("need at least two values of h");
  std::vector<double> h = hs;
  std::sort(h.begin(), h.end(), std::greater<>());
  TestReport r;
  r.test_name = "tropical_limit/points=" + std::to_string(n_points) + "/h=" + fmt(h);
  r.n_samples = n_points;
  r.seed = ctx.seed;
  r.paper_anchor = "analytic tropicalization: -h log R(e^{-x/h}) -> [R]_trop(x) uniformly, error O(h)";
  const double floor = 1e-12;
  for (RootType t : {RootType::A2, RootType::B2, RootType::C2, RootType::G2}) {
    const auto map = builtin_map(t);
    RngStream rng(ctx.seed, stream_id(kTropLimit, type_index(t)));
    double worst_ratio = 0.0, worst_scaled = 0.0;
    for (std::size_t p = 0; p < n_points; ++p) {
      std::vector<double> x(map.arity());
      for (double& v : x) v = static_cast<double>(rng.next_u64() % 11);
      std::vector<double> err;
      for (double hh : h) err.push_back(tropical_limit_error(map, x, hh));
      for (std::size_t i = 0; i < h.size(); ++i) worst_scaled = std::max(worst_scaled, err[i] / h[i]);
      for (std::size_t i = 0; i + 1 < h.size(); ++i)
        if (err[i] > floor) worst_ratio = std::max(worst_ratio, (err[i + 1] - floor) / err[i]);
    }
    r.at_most("max_err_over_h_" + to_string(t), worst_scaled, 10.0);
    r.at_most("max_halving_ratio_" + to_string(t), worst_ratio, 0.75);
  }
  return r;
}

TestReport verify_gamma_exponential_limit(double mu, const std::vector<double>& hs, std::size_t n, const RunContext& ctx) {
  if (!(mu > 0.0)) throw InvalidArgument("mu must be positive");
  std::vector<double> h = hs;
  std::sort(h.begin(), h.end(), std::greater<>());
  const auto ref = sample_columns(n, 1, kGammaExpRef, ctx, [&](RngStream& rng, std::vector<double>& row) {
    row[0] = exponential_draw(rng, mu);
  });
  TestReport r;
  r.test_name = "gamma_exponential_limit/mu=" + fmt(mu) + "/h=" + fmt(h);
  r.n_samples = n;
  r.seed = ctx.seed;
  r.paper_anchor = "-h log gamma_{h mu} -> exponential(mu) in law as h -> 0";
  std::vector<double> d;
  for (std::size_t i = 0; i < h.size(); ++i) {
    const double hh = h[i];
    const auto s = sample_columns(n, 1, kGammaExp + i, ctx, [&](RngStream& rng, std::vector<double>& row) {
      row[0] = -hh * log_gamma_draw(rng, hh * mu);
    });
    d.push_back(ks_two_sample(s[0], ref[0]).statistic);
    r.stat("ks_D_h=" + fmt(hh), d.back());
  }
  double violations = 0;
  for (std::size_t i = 0; i + 1 < d.size(); ++i)
    if (d[i + 1] >= d[i]) violations += 1;
  r.at_most("ks_D_smallest_h", d.back(), 0.02);
  r.at_most("monotonicity_violations", violations, 0.0);
  return r;
}

TestReport verify_dufresne_generator(double mu) {
  std::vector<double> grid;
  for (int i = 0; i <= 1500; ++i) grid.push_back(-10.0 + 0.01 * i);
  TestReport r;
  r.test_name = "dufresne_generator/mu=" + fmt(mu);
  r.n_samples = grid.size();
  r.paper_anchor = "adjoint generator 2 d^2 - d((2 mu - e^z) .) annihilates p(z) = exp(mu z - e^z/2)/(Gamma(mu) 2^mu)";
  r.at_most("residual_analytic", dufresne_generator_residual(mu, grid, DerivativeMode::analytic), 1e-12);
  r.at_most("residual_finite_difference", dufresne_generator_residual(mu, grid, DerivativeMode::finite_difference, 1e-4), 1e-6);
  return r;
}

std::vector<TestReport> run_default_suite(const SuiteOptions& opt, const RunContext& ctx) {
  if (opt.a.size() != 2) throw InvalidArgument("the suite takes two chamber coordinates");
  check_positive(opt.a);
  const double a1 = opt.a[0], a2 = opt.a[1];
  std::vector<TestReport> out;
  for (RootType t : {RootType::A2, RootType::B2, RootType::C2, RootType::G2})
    out.push_back(verify_rank2_identity(t, a1, a2, opt.n, ctx));
  for (RootType t : {RootType::A2, RootType::B2, RootType::C2, RootType::G2})
    out.push_back(verify_tropical_identity(t, a1, a2, opt.n, ctx));
  const double z1 = std::exp(-a1), z2 = std::exp(-a2);
  out.push_back(verify_geometric_identity(RootType::A2, z1, z2, 25, opt.n / 2, ctx));
  out.push_back(verify_geometric_identity(RootType::B2, z1, z2, 15, opt.n / 2, ctx));
  out.push_back(verify_tropical_limit(20, {0.1, 0.05, 0.025, 0.0125}, ctx));
  out.push_back(verify_gamma_exponential_limit(1.0, {0.2, 0.02, 0.01}, opt.n / 2, ctx));
  out.push_back(verify_exit_law(2, {a1}, opt.n_paths, opt.T.value_or(default_horizon({a1})), opt.dt, ctx));
  out.push_back(verify_exit_law(3, opt.a, opt.n_paths, opt.T.value_or(default_horizon(opt.a)), opt.dt, ctx));
  out.push_back(verify_conditional_representation(RootType::A2, opt.a, opt.n_paths, opt.T.value_or(25.0), opt.dt, ctx));
  out.push_back(verify_inversion_lemma(1e-2, 16, 5.0, ctx));
  out.push_back(verify_dufresne_generator(1.0));
  return out;
}

}  // namespace poslab
