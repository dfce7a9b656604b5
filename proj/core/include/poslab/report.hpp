#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace poslab {

using NamedValues = std::vector<std::pair<std::string, double>>;

// Thresholds are keyed "<name> >=" (lower bound on a p-value or statistic) or
// "<name> <=" (upper bound on a statistic or residual).
struct TestReport {
  std::string test_name;
  std::uint64_t n_samples = 0;
  NamedValues statistics;
  NamedValues p_values;
  NamedValues thresholds;
  bool pass = true;
  std::uint64_t seed = 0;
  std::optional<std::string> tail_bias_note;
  std::string paper_anchor;

  void stat(const std::string& name, double v) { statistics.emplace_back(name, v); }
  void p_at_least(const std::string& name, double p, double level);
  void at_most(const std::string& name, double v, double bound);
  void at_least(const std::string& name, double v, double bound);

  double statistic(const std::string& name) const;
  double p_value(const std::string& name) const;

  std::string summary() const;
  std::string to_json(int indent = 2) const;
};

std::string reports_to_json(const std::vector<TestReport>& reports, int indent = 2);

}  // namespace poslab
