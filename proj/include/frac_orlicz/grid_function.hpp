#pragma once

#include <functional>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace frac_orlicz {

/// Nodal values on the uniform grid t_j = j T / n, j = 0..n, read as a
/// piecewise-linear function on [0, T].
class GridFunction {
 public:
  /// values.size() = n + 1 with n >= 2; all values finite; T > 0.
  GridFunction(double T, std::vector<double> values);

  static GridFunction zeros(double T, int n);
  static GridFunction sample(double T, int n, const std::function<double(double)>& f);

  double T() const { return T_; }
  int n() const { return static_cast<int>(values_.size()) - 1; }
  double h() const { return T_ / n(); }
  double t(int j) const { return T_ * j / n(); }

  std::span<const double> values() const { return values_; }
  double operator[](int j) const { return values_[static_cast<std::size_t>(j)]; }
  double front() const { return values_.front(); }
  double back() const { return values_.back(); }
  double max_abs() const;

  bool same_grid(const GridFunction& other) const;

  GridFunction scaled(double factor) const;
  friend GridFunction operator+(const GridFunction& a, const GridFunction& b);
  friend GridFunction operator-(const GridFunction& a, const GridFunction& b);

 private:
  double T_;
  std::vector<double> values_;
};

/// Composite-trapezoid weights h/2, h, ..., h, h/2 for n subintervals.
std::vector<double> trapezoid_weights(int n, double h);
/// Composite-trapezoid integral of the nodal values.
double trapezoid(std::span<const double> values, double h);

/// Two-column text: header "# T=<T> n=<n>", then one "t value" line per node
/// with 17 significant digits.
void write_grid_function(std::ostream& out, const GridFunction& v);
GridFunction read_grid_function(std::istream& in);
void save_grid_function(const std::string& path, const GridFunction& v);
GridFunction load_grid_function(const std::string& path);

}  // namespace frac_orlicz
