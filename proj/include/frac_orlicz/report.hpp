#pragma once

#include <string>
#include <utility>
#include <vector>

namespace frac_orlicz {

/// One inequality of the form lhs <= rhs. A check is a violation only when the
/// slack rhs - lhs falls below -budget, so discretization noise of the size of
/// the budget is tolerated.
struct InequalityCheck {
  std::string label;
  double lhs = 0.0;
  double rhs = 0.0;
  double budget = 0.0;

  double slack() const { return rhs - lhs; }
  bool violated() const { return !(slack() >= -budget); }
};

/// Structured outcome of a verifier: the asserted checks, informational checks
/// that are recorded but never fail the report, named scalar metrics and notes.
struct Report {
  std::string name;
  std::vector<InequalityCheck> checks;
  std::vector<InequalityCheck> informational;
  std::vector<std::pair<std::string, double>> metrics;
  std::vector<std::string> notes;

  void add(std::string label, double lhs, double rhs, double budget);
  void add_info(std::string label, double lhs, double rhs, double budget = 0.0);
  void metric(std::string key, double value);
  /// Value of a metric; throws std::out_of_range if absent.
  double metric(const std::string& key) const;
  bool has_metric(const std::string& key) const;

  std::size_t violations() const;
  bool ok() const { return violations() == 0; }
  /// Smallest slack over asserted checks (+inf when there are none).
  double min_slack() const;
};

}  // namespace frac_orlicz
