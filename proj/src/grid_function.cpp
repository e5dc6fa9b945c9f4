#include "frac_orlicz/grid_function.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace frac_orlicz {

GridFunction::GridFunction(double T, std::vector<double> values) : T_(T), values_(std::move(values)) {
  if (!(T_ > 0.0) || !std::isfinite(T_)) throw std::invalid_argument("GridFunction: T must be positive");
  if (values_.size() < 3) throw std::invalid_argument("GridFunction: need n >= 2 subintervals");
  for (double v : values_) {
    if (!std::isfinite(v)) throw std::invalid_argument("GridFunction: non-finite nodal value");
  }
}

GridFunction GridFunction::zeros(double T, int n) {
  if (n < 2) throw std::invalid_argument("GridFunction: need n >= 2 subintervals");
  return GridFunction(T, std::vector<double>(static_cast<std::size_t>(n) + 1, 0.0));
}

GridFunction GridFunction::sample(double T, int n, const std::function<double(double)>& f) {
  if (n < 2) throw std::invalid_argument("GridFunction: need n >= 2 subintervals");
  std::vector<double> vals(static_cast<std::size_t>(n) + 1);
  for (int j = 0; j <= n; ++j) vals[static_cast<std::size_t>(j)] = f(T * j / n);
  return GridFunction(T, std::move(vals));
}

double GridFunction::max_abs() const {
  double m = 0.0;
  for (double v : values_) m = std::max(m, std::abs(v));
  return m;
}

bool GridFunction::same_grid(const GridFunction& other) const {
  return n() == other.n() && T_ == other.T_;
}

GridFunction GridFunction::scaled(double factor) const {
  std::vector<double> out(values_);
  for (double& v : out) v *= factor;
  return GridFunction(T_, std::move(out));
}

GridFunction operator+(const GridFunction& a, const GridFunction& b) {
  if (!a.same_grid(b)) throw std::invalid_argument("GridFunction +: grid mismatch");
  std::vector<double> out(a.values_);
  for (std::size_t i = 0; i < out.size(); ++i) out[i] += b.values_[i];
  return GridFunction(a.T_, std::move(out));
}

GridFunction operator-(const GridFunction& a, const GridFunction& b) {
  if (!a.same_grid(b)) throw std::invalid_argument("GridFunction -: grid mismatch");
  std::vector<double> out(a.values_);
  for (std::size_t i = 0; i < out.size(); ++i) out[i] -= b.values_[i];
  return GridFunction(a.T_, std::move(out));
}

std::vector<double> trapezoid_weights(int n, double h) {
  std::vector<double> w(static_cast<std::size_t>(n) + 1, h);
  w.front() = 0.5 * h;
  w.back() = 0.5 * h;
  return w;
}

double trapezoid(std::span<const double> values, double h) {
  if (values.size() < 2) return 0.0;
  double acc = 0.5 * (values.front() + values.back());
  for (std::size_t i = 1; i + 1 < values.size(); ++i) acc += values[i];
  return acc * h;
}

void write_grid_function(std::ostream& out, const GridFunction& v) {
  out << fmt::format("# T={:.17g} n={}\n", v.T(), v.n());
  for (int j = 0; j <= v.n(); ++j) out << fmt::format("{:.17g} {:.17g}\n", v.t(j), v[j]);
}

GridFunction read_grid_function(std::istream& in) {
  std::string line;
  double T = 0.0;
  int n = -1;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (line[0] != '#') throw std::invalid_argument("grid function: missing '# T=<T> n=<n>' header");
    if (std::sscanf(line.c_str(), "# T=%lf n=%d", &T, &n) == 2) break;
  }
  if (n < 2) throw std::invalid_argument("grid function: bad or missing header");
  std::vector<double> vals;
  vals.reserve(static_cast<std::size_t>(n) + 1);
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    double t = 0.0;
    double value = 0.0;
    if (!(ls >> t >> value)) throw std::invalid_argument("grid function: bad line '" + line + "'");
    const double expected = T * static_cast<double>(vals.size()) / n;
    if (std::abs(t - expected) > 1e-9 * std::max(1.0, T)) {
      throw std::invalid_argument("grid function: node " + std::to_string(vals.size()) +
                                  " is not on the uniform grid");
    }
    vals.push_back(value);
  }
  if (vals.size() != static_cast<std::size_t>(n) + 1) {
    throw std::invalid_argument("grid function: expected " + std::to_string(n + 1) + " nodes, got " +
                                std::to_string(vals.size()));
  }
  return GridFunction(T, std::move(vals));
}

void save_grid_function(const std::string& path, const GridFunction& v) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  write_grid_function(out, v);
}

GridFunction load_grid_function(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read '" + path + "'");
  return read_grid_function(in);
}

}  // namespace frac_orlicz
