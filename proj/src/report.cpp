#include "frac_orlicz/report.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace frac_orlicz {

void Report::add(std::string label, double lhs, double rhs, double budget) {
  checks.push_back({std::move(label), lhs, rhs, budget});
}

void Report::add_info(std::string label, double lhs, double rhs, double budget) {
  informational.push_back({std::move(label), lhs, rhs, budget});
}

void Report::metric(std::string key, double value) {
  for (auto& [k, v] : metrics) {
    if (k == key) {
      v = value;
      return;
    }
  }
  metrics.emplace_back(std::move(key), value);
}

double Report::metric(const std::string& key) const {
  for (const auto& [k, v] : metrics) {
    if (k == key) return v;
  }
  throw std::out_of_range("report '" + name + "' has no metric '" + key + "'");
}

bool Report::has_metric(const std::string& key) const {
  return std::any_of(metrics.begin(), metrics.end(),
                     [&](const auto& kv) { return kv.first == key; });
}

std::size_t Report::violations() const {
  return static_cast<std::size_t>(
      std::count_if(checks.begin(), checks.end(), [](const auto& c) { return c.violated(); }));
}

double Report::min_slack() const {
  double m = std::numeric_limits<double>::infinity();
  for (const auto& c : checks) m = std::min(m, c.slack());
  return m;
}

}  // namespace frac_orlicz
