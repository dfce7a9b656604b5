#include "poslab/report.hpp"

#include <algorithm>
#include <cstdio>
#include <thread>

#include "json.hpp"
#include "poslab/errors.hpp"
#include "poslab/parallel.hpp"

namespace poslab {

unsigned default_workers() { return std::max(1u, std::thread::hardware_concurrency()); }

void TestReport::p_at_least(const std::string& name, double p, double level) {
  p_values.emplace_back(name, p);
  thresholds.emplace_back(name + " >=", level);
  if (!(p >= level)) pass = false;
}

void TestReport::at_most(const std::string& name, double v, double bound) {
  statistics.emplace_back(name, v);
  thresholds.emplace_back(name + " <=", bound);
  if (!(v <= bound)) pass = false;
}

void TestReport::at_least(const std::string& name, double v, double bound) {
  statistics.emplace_back(name, v);
  thresholds.emplace_back(name + " >=", bound);
  if (!(v >= bound)) pass = false;
}

namespace {
double lookup(const NamedValues& xs, const std::string& name) {
  for (const auto& [k, v] : xs)
    if (k == name) return v;
  throw InvalidArgument("no entry named " + name);
}
}  // namespace

double TestReport::statistic(const std::string& name) const { return lookup(statistics, name); }
double TestReport::p_value(const std::string& name) const { return lookup(p_values, name); }

std::string TestReport::summary() const {
  double min_p = 1.0;
  for (const auto& kv : p_values) min_p = std::min(min_p, kv.second);
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.3g", min_p);
  std::string s = std::string(pass ? "PASS" : "FAIL") + "  " + test_name + "  n=" + std::to_string(n_samples);
  if (!p_values.empty()) s += "  min_p=" + std::string(buf);
  s += "  checks=" + std::to_string(thresholds.size());
  return s;
}

namespace {
nlohmann::ordered_json to_obj(const TestReport& r) {
  auto named = [](const NamedValues& xs) {
    nlohmann::ordered_json o = nlohmann::ordered_json::object();
    for (const auto& [k, v] : xs) o[k] = v;
    return o;
  };
  nlohmann::ordered_json j;
  j["test_name"] = r.test_name;
  j["n_samples"] = r.n_samples;
  j["statistics"] = named(r.statistics);
  j["p_values"] = named(r.p_values);
  j["thresholds"] = named(r.thresholds);
  j["verdict"] = r.pass ? "pass" : "fail";
  j["seed"] = r.seed;
  j["tail_bias_note"] = r.tail_bias_note ? nlohmann::ordered_json(*r.tail_bias_note) : nlohmann::ordered_json(nullptr);
  j["paper_anchor"] = r.paper_anchor;
  return j;
}
}  // namespace

std::string TestReport::to_json(int indent) const { return to_obj(*this).dump(indent); }

std::string reports_to_json(const std::vector<TestReport>& reports, int indent) {
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const auto& r : reports) arr.push_back(to_obj(r));
  return arr.dump(indent);
}

}  // namespace poslab
