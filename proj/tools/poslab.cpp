// poslab: verify | eval | sample
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "poslab/errors.hpp"
#include "poslab/parallel.hpp"
#include "poslab/pathsim.hpp"
#include "poslab/transmaps.hpp"
#include "poslab/verify.hpp"

namespace {

using namespace poslab;

constexpr int kExitOk = 0;
constexpr int kExitFail = 1;
constexpr int kExitConfig = 2;
constexpr int kExitNumeric = 3;

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::vector<std::string> split(const std::string& s, char sep = ',') {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep)) out.push_back(cur);
  if (!s.empty() && s.back() == sep) out.emplace_back();
  return out;
}

double parse_double(const std::string& s) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    throw InvalidArgument("not a number: '" + s + "'");
  }
  while (used < s.size() && std::isspace(static_cast<unsigned char>(s[used]))) ++used;
  if (used != s.size()) throw InvalidArgument("not a number: '" + s + "'");
  return v;
}

std::vector<double> parse_list(const std::string& s) {
  std::vector<double> out;
  for (const auto& p : split(s)) out.push_back(parse_double(p));
  if (out.empty()) throw InvalidArgument("empty list");
  return out;
}

// integers, p/q, or finite decimals such as 1.25
mpq_class parse_rational(std::string s) {
  s.erase(std::remove_if(s.begin(), s.end(), [](unsigned char c) { return std::isspace(c); }), s.end());
  if (s.empty()) throw InvalidArgument("empty rational");
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c)) && c != '/' && c != '.' && c != '-' && c != '+')
      throw InvalidArgument("not a rational: '" + s + "'");
  mpq_class q;
  const auto dot = s.find('.');
  if (dot != std::string::npos) {
    if (s.find('/') != std::string::npos) throw InvalidArgument("not a rational: '" + s + "'");
    std::string digits = s.substr(0, dot) + s.substr(dot + 1);
    if (digits.empty() || digits == "-" || digits == "+") throw InvalidArgument("not a rational: '" + s + "'");
    mpz_class den = 1;
    for (std::size_t i = dot + 1; i < s.size(); ++i) den *= 10;
    q = mpq_class(mpz_class(digits[0] == '+' ? digits.substr(1) : digits), den);
  } else {
    if (q.set_str(s[0] == '+' ? s.substr(1) : s, 10) != 0) throw InvalidArgument("not a rational: '" + s + "'");
  }
  if (q.get_den() == 0) throw InvalidArgument("zero denominator: '" + s + "'");
  q.canonicalize();
  return q;
}

std::string fmt_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

void write_text(const std::string& path, const std::string& text) {
  if (path.empty()) {
    std::cout << text;
    std::cout.flush();
    if (!std::cout) throw IoError("cannot write to standard output");
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot open " + path);
  f << text;
  f.close();
  if (!f) throw IoError("write failed: " + path);
}

struct VerifyArgs {
  std::string identity = "all";
  std::string type = "A2";
  std::string a;
  std::size_t n = 200000;
  std::size_t paths = 2000;
  std::optional<double> T;
  double dt = 1e-3;
  std::string group = "sl3";
  std::optional<int> box;
  double mu = 1.0;
  std::string hs;
  std::size_t points = 20;
  std::string fixed_params;
  std::string source_shapes;
  std::string target_shapes;
  bool energy = false;
  std::string output;
};

struct EvalArgs {
  std::string builtin;
  std::string expr;
  std::string values;
  std::string semiring = "rational";
};

struct SampleArgs {
  bool exit_law = false;
  bool dmu = false;
  std::string ensemble = "sim";
  std::string group = "sl3";
  std::string a = "1,1";
  std::size_t paths = 1000;
  std::size_t n = 1000;
  double T = 20.0;
  double dt = 1e-3;
  std::string output;
};

int default_box(RootType t) {
  switch (t) {
    case RootType::A2: return 25;
    case RootType::G2: return 6;
    default: return 15;
  }
}

std::vector<TestReport> run_verify(const VerifyArgs& v, const RunContext& ctx) {
  const std::vector<double> a = v.a.empty() ? std::vector<double>{} : parse_list(v.a);
  auto need_a = [&](std::size_t k) {
    if (a.empty()) return std::vector<double>(k, 1.0);
    if (a.size() != k) throw InvalidArgument("--a expects " + std::to_string(k) + " coordinates");
    return a;
  };
  ShapeOverride ov;
  if (!v.source_shapes.empty()) ov.source = parse_list(v.source_shapes);
  if (!v.target_shapes.empty()) ov.target = parse_list(v.target_shapes);
  const auto hs = [&](std::vector<double> dflt) { return v.hs.empty() ? dflt : parse_list(v.hs); };

  const std::string& id = v.identity;
  if (id == "all") {
    SuiteOptions opt;
    opt.a = need_a(2);
    opt.n = v.n;
    opt.n_paths = v.paths;
    opt.dt = v.dt;
    opt.T = v.T;
    return run_default_suite(opt, ctx);
  }
  if (id == "rank2" || id == "tropical" || id == "geometric") {
    const RootType t = parse_root_type(v.type);
    const auto aa = need_a(2);
    if (id == "rank2") return {verify_rank2_identity(t, aa[0], aa[1], v.n, ctx, ov, v.energy)};
    if (id == "tropical") return {verify_tropical_identity(t, aa[0], aa[1], v.n, ctx, ov)};
    if (aa[0] <= 0 || aa[1] <= 0) throw InvalidArgument("drift coordinates must be positive (open chamber)");
    return {verify_geometric_identity(t, std::exp(-aa[0]), std::exp(-aa[1]), v.box.value_or(default_box(t)), v.n, ctx, ov)};
  }
  if (id == "exit-law") {
    if (v.group != "sl2" && v.group != "sl3") throw InvalidArgument("--group must be sl2 or sl3");
    const int g = v.group == "sl2" ? 2 : 3;
    const auto aa = need_a(static_cast<std::size_t>(g - 1));
    return {verify_exit_law(g, aa, v.paths, v.T.value_or(default_horizon(aa)), v.dt, ctx)};
  }
  if (id == "conditional") {
    const RootType t = parse_root_type(v.type);
    const auto aa = need_a(t == RootType::A1 ? 1 : 2);
    std::optional<std::vector<double>> fixed;
    if (!v.fixed_params.empty()) fixed = parse_list(v.fixed_params);
    return {verify_conditional_representation(t, aa, v.paths, v.T.value_or(25.0), v.dt, ctx, fixed)};
  }
  if (id == "inversion") return {verify_inversion_lemma(v.dt, 16, v.T.value_or(5.0), ctx)};
  if (id == "tropical-limit") return {verify_tropical_limit(v.points, hs({0.1, 0.05, 0.025, 0.0125}), ctx)};
  if (id == "gamma-exp") return {verify_gamma_exponential_limit(v.mu, hs({0.2, 0.02, 0.01}), v.n, ctx)};
  if (id == "generator") return {verify_dufresne_generator(v.mu)};
  throw InvalidArgument("unknown identity: " + id);
}

int cmd_verify(const VerifyArgs& v, const RunContext& ctx) {
  const auto reports = run_verify(v, ctx);
  write_text(v.output, reports_to_json(reports) + "\n");
  bool ok = true;
  for (const auto& r : reports) {
    std::cerr << r.summary() << "\n";
    ok = ok && r.pass;
  }
  return ok ? kExitOk : kExitFail;
}

int cmd_eval(const EvalArgs& e) {
  if (e.builtin.empty() == e.expr.empty()) throw InvalidArgument("give exactly one of --builtin or --expr");
  const auto parts = split(e.values);
  if (e.values.empty() || parts.empty()) throw InvalidArgument("--values is required");
  const Expr ex = e.builtin.empty() ? parse_expr(e.expr, parts.size()) : builtin_map(e.builtin).components;
  std::vector<SemiringValue> in;
  for (const auto& p : parts) {
    if (e.semiring == "rational") in.emplace_back(parse_rational(p));
    else if (e.semiring == "float") in.emplace_back(parse_double(p));
    else if (e.semiring == "tropical") in.emplace_back(Tropical{parse_double(p)});
    else throw InvalidArgument("--semiring must be rational, float or tropical");
  }
  const auto out = evaluate_any(ex, in);
  std::string line;
  for (std::size_t i = 0; i < out.size(); ++i) {
    if (i) line += ", ";
    if (const auto* q = std::get_if<mpq_class>(&out[i])) line += q->get_str();
    else if (const auto* d = std::get_if<double>(&out[i])) line += fmt_double(*d);
    else line += fmt_double(std::get<Tropical>(out[i]).v);
  }
  write_text("", line + "\n");
  return kExitOk;
}

int cmd_sample(const SampleArgs& s, const RunContext& ctx) {
  if (s.exit_law == s.dmu) throw InvalidArgument("give exactly one of --exit-law or --dmu");
  const auto a = parse_list(s.a);
  ExitSample sample;
  int g = 3;
  if (s.dmu) {
    sample = algebraic_exit_law(3, a, s.n, ctx);
  } else {
    if (s.group != "sl2" && s.group != "sl3") throw InvalidArgument("--group must be sl2 or sl3");
    g = s.group == "sl2" ? 2 : 3;
    if (s.ensemble == "sim") sample = simulate_exit_law(g, a, s.paths, s.T, s.dt, ctx);
    else if (s.ensemble == "alg") sample = algebraic_exit_law(g, a, s.paths, ctx);
    else throw InvalidArgument("--ensemble must be sim or alg");
  }
  const std::vector<std::string> cols = g == 2 ? std::vector<std::string>{"n21"} : std::vector<std::string>{"n21", "n32", "n31"};
  std::ostringstream os;
  write_csv(os, cols, sample.rows, sample.seeds);
  write_text(s.output, os.str());
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"poslab: numerical checks of gamma, exponential and geometric identities under positive transition maps"};
  app.require_subcommand(1);

  std::uint64_t seed = 1;
  unsigned workers = default_workers();
  if (const char* env = std::getenv("POSLAB_SEED")) {
    try {
      std::size_t used = 0;
      const std::string s(env);
      seed = std::stoull(s, &used, 10);
      if (used != s.size() || s.empty() || s[0] == '-') throw std::invalid_argument(s);
    } catch (const std::exception&) {
      std::cerr << "error: POSLAB_SEED must be a decimal 64-bit integer\n";
      return kExitConfig;
    }
  }
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--seed", seed, "master seed (env POSLAB_SEED, else 1)")->capture_default_str();
    sub->add_option("--workers", workers, "worker threads")->capture_default_str()->check(CLI::PositiveNumber);
  };

  VerifyArgs v;
  auto* verify = app.add_subcommand("verify", "run verification tests and emit a JSON report");
  verify->add_option("--identity", v.identity,
                     "all | rank2 | tropical | geometric | exit-law | conditional | inversion | tropical-limit | "
                     "gamma-exp | generator")
      ->capture_default_str();
  verify->add_option("--type", v.type, "root system: A2 B2 C2 G2 (A1 for conditional)")->capture_default_str();
  verify->add_option("--a", v.a, "chamber coordinates a_i = <alpha_i^v, mu>, comma separated (default 1 per coordinate)");
  verify->add_option("--n", v.n, "i.i.d. samples per test")->capture_default_str();
  verify->add_option("--paths", v.paths, "Brownian paths")->capture_default_str();
  verify->add_option("--T", v.T, "horizon (default max(20, 12/min a); 25 for conditional; 5 for inversion)");
  verify->add_option("--dt", v.dt, "time step")->capture_default_str();
  verify->add_option("--group", v.group, "exit-law group: sl2 | sl3")->capture_default_str();
  verify->add_option("--box", v.box, "geometric box side (default 25 for A2, 15 for B2/C2, 6 for G2)");
  verify->add_option("--mu", v.mu, "drift for gamma-exp and generator")->capture_default_str();
  verify->add_option("--hs", v.hs, "h values, comma separated (tropical-limit 0.1,0.05,0.025,0.0125; gamma-exp 0.2,0.02,0.01)");
  verify->add_option("--points", v.points, "random integer points for tropical-limit")->capture_default_str();
  verify->add_option("--fixed-params", v.fixed_params, "conditional: fixed transform parameters instead of gamma draws");
  verify->add_option("--source-shapes", v.source_shapes, "override source shapes (negative controls)");
  verify->add_option("--target-shapes", v.target_shapes, "override target shapes (negative controls)");
  verify->add_flag("--energy", v.energy, "rank2: add an energy-distance test (not part of the verdict)");
  verify->add_option("-o,--output", v.output, "JSON output path (default: standard output)");
  add_common(verify);

  EvalArgs e;
  auto* eval = app.add_subcommand("eval", "evaluate a transition map or expression");
  eval->add_option("--builtin", e.builtin, "builtin map: A2 B2 C2 G2");
  eval->add_option("--expr", e.expr, "expression text: bindings 'name = expr;' then a tuple over t1..t9");
  eval->add_option("--values", e.values, "input values, comma separated")->required();
  eval->add_option("--semiring", e.semiring, "rational | float | tropical")->capture_default_str();

  SampleArgs s;
  auto* sample = app.add_subcommand("sample", "dump exit-law samples as CSV");
  sample->add_flag("--exit-law", s.exit_law, "N_T entries of Brownian paths (or the algebraic ensemble)");
  sample->add_flag("--dmu", s.dmu, "Theta(Gamma_mu) entries for SL3");
  sample->add_option("--ensemble", s.ensemble, "exit-law ensemble: sim | alg")->capture_default_str();
  sample->add_option("--group", s.group, "sl2 | sl3")->capture_default_str();
  sample->add_option("--a", s.a, "chamber coordinates, comma separated")->capture_default_str();
  sample->add_option("--paths", s.paths, "rows for --exit-law")->capture_default_str();
  sample->add_option("--n", s.n, "rows for --dmu")->capture_default_str();
  sample->add_option("--T", s.T, "horizon")->capture_default_str();
  sample->add_option("--dt", s.dt, "time step")->capture_default_str();
  sample->add_option("-o,--output", s.output, "CSV output path (default: standard output)");
  add_common(sample);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& err) {
    const int code = app.exit(err);
    return code == 0 ? kExitOk : kExitConfig;
  }

  const RunContext ctx{seed, workers};
  try {
    if (verify->parsed()) return cmd_verify(v, ctx);
    if (eval->parsed()) return cmd_eval(e);
    return cmd_sample(s, ctx);
  } catch (const ConfigError& err) {
    std::cerr << "error: " << err.what() << "\n";
    return kExitConfig;
  } catch (const NumericError& err) {
    std::cerr << "numeric error: " << err.what() << "\n";
    return kExitNumeric;
  } catch (const IoError& err) {
    std::cerr << "i/o error: " << err.what() << "\n";
    return kExitNumeric;
  } catch (const std::exception& err) {
    std::cerr << "error: " << err.what() << "\n";
    return kExitNumeric;
  }
}
