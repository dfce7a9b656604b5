// Acceptance gate: one PASS/FAIL line per criterion, nonzero exit if any fails.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <iterator>
#include <random>
#include <sstream>
#include <string>

#include <unistd.h>

#include "poslab/parallel.hpp"
#include "poslab/sampler.hpp"
#include "poslab/stats.hpp"
#include "poslab/transmaps.hpp"
#include "poslab/unipotent.hpp"
#include "poslab/verify.hpp"

using namespace poslab;
using Q = mpq_class;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

int failures = 0;

void criterion(int id, const std::string& title, double budget_s, const std::function<Outcome()>& body) {
  const auto t0 = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (budget_s > 0 && secs > budget_s) {
    o.pass = false;
    o.detail += " [over budget " + std::to_string(budget_s) + "s]";
  }
  if (!o.pass) ++failures;
  std::printf("%s  C%-2d %-44s %8.2fs  %s\n", o.pass ? "PASS" : "FAIL", id, title.c_str(), secs, o.detail.c_str());
  std::fflush(stdout);
}

// Folds reports into one outcome; the detail lists failing report names.
struct Gate {
  Outcome o;
  void require(const TestReport& r, bool expect_pass = true) {
    if (r.pass != expect_pass) {
      o.pass = false;
      o.detail += (expect_pass ? "failed: " : "control passed: ") + r.test_name + "; ";
      if (expect_pass) std::cerr << r.to_json() << "\n";
    }
  }
  void check(bool ok, const std::string& what) {
    if (!ok) {
      o.pass = false;
      o.detail += what + "; ";
    }
  }
  void note(const std::string& s) { o.detail += s + " "; }
};

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", x);
  return buf;
}

std::vector<std::vector<Q>> random_triples(std::size_t n) {
  std::mt19937_64 g(20240101);
  std::uniform_int_distribution<long> num(1, 1000), den(1, 997);
  std::vector<std::vector<Q>> out(n, std::vector<Q>(3));
  for (auto& t : out)
    for (auto& v : t) {
      v = Q(num(g), den(g));
      v.canonicalize();
    }
  return out;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), {}};
}

const std::vector<std::pair<double, double>> kDrifts{{1.0, 1.0}, {1.5, 2.0}};
const RootType kRank2[] = {RootType::A2, RootType::B2, RootType::C2, RootType::G2};

}  // namespace

int main() {
  const RunContext ctx{7, default_workers()};
  const auto a2 = builtin_map(RootType::A2);
  const auto triples = random_triples(1000);

  criterion(1, "exact braid identity A2", 5.0, [&] {
    Gate g;
    for (const auto& t : triples)
      g.check(lusztig_product<Q>(3, {{1, 2, 1}, t}) == lusztig_product<Q>(3, {{2, 1, 2}, eval_rational(a2, t)}),
              "mismatch");
    return g.o;
  });

  criterion(2, "A2 involution", 5.0, [&] {
    Gate g;
    for (const auto& t : triples) g.check(eval_rational(a2, eval_rational(a2, t)) == t, "mismatch");
    return g.o;
  });

  criterion(3, "rank-2 gamma identities", 120.0, [&] {
    Gate g;
    for (auto [x, y] : kDrifts)
      for (auto t : kRank2) g.require(verify_rank2_identity(t, x, y, 200000, ctx));
    ShapeOverride wrong;
    wrong.source = std::vector<double>{1, 1, 1};
    g.require(verify_rank2_identity(RootType::A2, 1.0, 1.0, 200000, ctx, wrong), false);
    return g.o;
  });

  criterion(4, "exponential identities", 120.0, [&] {
    Gate g;
    for (auto [x, y] : kDrifts)
      for (auto t : kRank2) g.require(verify_tropical_identity(t, x, y, 200000, ctx));
    ShapeOverride wrong;
    wrong.source = std::vector<double>{1, 1, 1};
    g.require(verify_tropical_identity(RootType::A2, 1.0, 1.0, 200000, ctx, wrong), false);
    return g.o;
  });

  criterion(5, "geometric identities and injectivity", 0, [&] {
    Gate g;
    for (auto [x, y] : kDrifts) {
      const auto ra = verify_geometric_identity(RootType::A2, std::exp(-x), std::exp(-y), 25, 100000, ctx);
      const auto rb = verify_geometric_identity(RootType::B2, std::exp(-x), std::exp(-y), 15, 100000, ctx);
      g.require(ra);
      g.require(rb);
      g.note("tv(A2)=" + fmt(ra.statistic("tv_distance_box")) + " tv(B2)=" + fmt(rb.statistic("tv_distance_box")));
    }
    const auto ia = tropical_injectivity_check(a2, 25);
    const auto ib = tropical_injectivity_check(builtin_map(RootType::B2), 15);
    g.check(ia.ok() && ia.points == 26u * 26 * 26, "A2 injectivity");
    g.check(ib.ok() && ib.points == 16u * 16 * 16 * 16, "B2 injectivity");
    return g.o;
  });

  criterion(6, "tropicalization limit", 0, [&] {
    Gate g;
    g.require(verify_tropical_limit(20, {0.1, 0.05, 0.025}, ctx));
    return g.o;
  });

  criterion(7, "gamma to exponential limit", 0, [&] {
    Gate g;
    const auto r = verify_gamma_exponential_limit(1.0, {0.2, 0.02, 0.01}, 100000, ctx);
    g.require(r);
    g.note("D(h=0.01)=" + fmt(r.statistic("ks_D_smallest_h")));
    return g.o;
  });

  criterion(8, "SL2 exit law (Dufresne)", 600.0, [&] {
    Gate g;
    const std::vector<double> mu{1.0};
    const auto r = verify_exit_law(2, mu, 50000, 20.0, 1e-3, ctx);
    g.require(r);
    g.check(r.statistic("tail_rel_q999") < 1e-4, "tail bias");
    // direct form: N21/2 = int_0^T e^{-2W} against 1/(2 gamma_1), P(1/(2g) <= x) = exp(-1/(2x))
    const auto sim = simulate_exit_law(2, mu, 50000, 20.0, 1e-3, ctx);
    std::vector<double> half(sim.rows.size());
    for (std::size_t i = 0; i < half.size(); ++i) half[i] = 0.5 * sim.rows[i][0];
    const auto ks = ks_one_sample(half, [](double x) { return x > 0 ? std::exp(-0.5 / x) : 0.0; });
    g.check(ks.p_value >= kLevel, "direct KS p=" + fmt(ks.p_value));
    g.note("ks_p(ens)=" + fmt(r.p_value("ks_p_n21")) + " ks_p(direct)=" + fmt(ks.p_value) +
           " tail_q999=" + fmt(r.statistic("tail_rel_q999")));
    return g.o;
  });

  criterion(9, "SL3 exit law", 0, [&] {
    Gate g;
    const auto r = verify_exit_law(3, {1.0, 1.0}, 20000, 20.0, 1e-3, ctx);
    g.require(r);
    g.note("spearman_gap=" + fmt(r.statistic("spearman_gap_n21_n31")));
    return g.o;
  });

  criterion(10, "conditional representation A2", 0, [&] {
    Gate g;
    const auto r = verify_conditional_representation(RootType::A2, {1.0, 1.0}, 10000, 25.0, 1e-3, ctx);
    g.require(r);
    g.note("within_2pct=" + fmt(r.statistic("frac_paths_within_2pct")));
    return g.o;
  });

  criterion(11, "inversion lemma residual", 0, [&] {
    Gate g;
    for (double dt : {1e-2, 1e-3}) {
      const auto r = verify_inversion_lemma(dt, 16, 5.0, ctx);
      g.require(r);
      g.note("dt=" + fmt(dt) + " ratio=" + fmt(r.statistic("halving_ratio")));
    }
    return g.o;
  });

  criterion(12, "generator residual", 0, [&] {
    Gate g;
    for (double mu : {0.5, 1.0, 3.7}) g.require(verify_dufresne_generator(mu));
    return g.o;
  });

  criterion(13, "determinism across runs and workers", 0, [&] {
    Gate g;
#ifdef POSLAB_CLI
    const auto dir = std::filesystem::temp_directory_path() / ("poslab_acc_" + std::to_string(::getpid()));
    std::filesystem::create_directories(dir);
    auto run = [&](const std::string& name, int workers) {
      const auto out = dir / name;
      const std::string cmd = std::string("\"") + POSLAB_CLI + "\" verify --identity all --seed 7 --workers " +
                              std::to_string(workers) + " -o \"" + out.string() + "\" 2>/dev/null";
      const int rc = std::system(cmd.c_str());
      g.check(rc == 0, name + " exit status " + std::to_string(rc));
      return slurp(out);
    };
    const auto a = run("w1a.json", 1), b = run("w1b.json", 1), c = run("w8.json", 8);
    g.check(!a.empty(), "empty report");
    g.check(a == b, "two runs differ");
    g.check(a == c, "1 vs 8 workers differ");
    g.note(std::to_string(a.size()) + " bytes");
    std::filesystem::remove_all(dir);
#else
    g.check(false, "built without the CLI");
#endif
    return g.o;
  });

  std::printf("%s: %d criteria failed\n", failures ? "FAIL" : "PASS", failures);
  return failures ? 1 : 0;
}
