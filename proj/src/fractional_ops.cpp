#include "frac_orlicz/fractional_ops.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "frac_orlicz/gamma.hpp"

namespace frac_orlicz {

void FracParams::validate() const {
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw std::invalid_argument("alpha must lie in (0, 1), got " + std::to_string(alpha));
  }
  if (!(T > 0.0) || !std::isfinite(T)) throw std::invalid_argument("T must be positive");
  if (n < 2) throw std::invalid_argument("n must be at least 2");
}

void FracParams::require_grid(const GridFunction& v) const {
  validate();
  if (v.n() != n || v.T() != T) {
    throw std::invalid_argument("grid function does not match FracParams (T, n)");
  }
}

namespace {

std::vector<double> reversed(std::span<const double> x) { return {x.rbegin(), x.rend()}; }

// b_m = m^{order+1}, m = 0..n
std::vector<double> moment_powers(int n, double order) {
  std::vector<double> b(static_cast<std::size_t>(n) + 1);
  for (int m = 0; m <= n; ++m) b[m] = std::pow(static_cast<double>(m), order + 1.0);
  return b;
}

std::vector<double> rl_left_values(std::span<const double> v, double h, double order) {
  const int n = static_cast<int>(v.size()) - 1;
  const auto b = moment_powers(n, order);
  const double scale = std::pow(h, order) / gamma_fn(order + 2.0);
  std::vector<double> out(v.size(), 0.0);
  for (int j = 1; j <= n; ++j) {
    double acc = (b[j - 1] - (j - 1 - order) * std::pow(static_cast<double>(j), order)) * v[0];
    for (int k = 1; k < j; ++k) acc += (b[j - k + 1] - 2.0 * b[j - k] + b[j - k - 1]) * v[k];
    acc += v[j];
    out[j] = scale * acc;
  }
  return out;
}

// c_m = (m+1)^{1-alpha} - m^{1-alpha}
std::vector<double> l1_weights(int n, double alpha) {
  std::vector<double> w(static_cast<std::size_t>(n));
  for (int m = 0; m < n; ++m) {
    w[m] = std::pow(m + 1.0, 1.0 - alpha) - std::pow(static_cast<double>(m), 1.0 - alpha);
  }
  return w;
}

double l1_scale(const FracParams& p) { return std::pow(p.h(), -p.alpha) / gamma_fn(2.0 - p.alpha); }

}  // namespace

GridFunction rl_integral_left(const GridFunction& v, double order) {
  if (!(order > 0.0)) throw std::invalid_argument("rl_integral: order must be positive");
  return GridFunction(v.T(), rl_left_values(v.values(), v.h(), order));
}

GridFunction rl_integral_left(const GridFunction& v, const FracParams& p) {
  p.require_grid(v);
  return rl_integral_left(v, p.alpha);
}

GridFunction rl_integral_right(const GridFunction& v, double order) {
  if (!(order > 0.0)) throw std::invalid_argument("rl_integral: order must be positive");
  const auto rev = reversed(v.values());
  return GridFunction(v.T(), reversed(rl_left_values(rev, v.h(), order)));
}

GridFunction rl_integral_right(const GridFunction& v, const FracParams& p) {
  p.require_grid(v);
  return rl_integral_right(v, p.alpha);
}

GridFunction caputo_left(const GridFunction& v, const FracParams& p) {
  p.require_grid(v);
  const auto w = l1_weights(p.n, p.alpha);
  const double c = l1_scale(p);
  std::vector<double> out(static_cast<std::size_t>(p.n) + 1, 0.0);
  for (int j = 1; j <= p.n; ++j) {
    double acc = 0.0;
    for (int k = 0; k < j; ++k) acc += (v[k + 1] - v[k]) * w[j - k - 1];
    out[j] = c * acc;
  }
  return GridFunction(p.T, std::move(out));
}

GridFunction caputo_right(const GridFunction& v, const FracParams& p) {
  p.require_grid(v);
  const auto w = l1_weights(p.n, p.alpha);
  const double c = l1_scale(p);
  std::vector<double> out(static_cast<std::size_t>(p.n) + 1, 0.0);
  for (int j = 0; j < p.n; ++j) {
    double acc = 0.0;
    for (int k = j; k < p.n; ++k) acc += (v[k + 1] - v[k]) * w[k - j];
    out[j] = -c * acc;
  }
  return GridFunction(p.T, std::move(out));
}

RLDerivative rl_derivative_left(const GridFunction& v, const FracParams& p) {
  const auto dc = caputo_left(v, p);
  RLDerivative out;
  out.values.assign(dc.values().begin(), dc.values().end());
  const double v0 = v.front();
  if (v0 == 0.0) return out;
  out.singular_origin = true;
  out.values[0] = std::numeric_limits<double>::quiet_NaN();
  const double c = v0 / gamma_fn(1.0 - p.alpha);
  for (int j = 1; j <= p.n; ++j) out.values[j] += c * std::pow(v.t(j), -p.alpha);
  return out;
}

double composition_residual(const GridFunction& v, const FracParams& p) {
  const auto back = rl_integral_left(caputo_left(v, p), p);
  double r = 0.0;
  for (int j = 0; j <= p.n; ++j) r = std::max(r, std::abs(back[j] - (v[j] - v.front())));
  return r;
}

Eigen::MatrixXd caputo_left_matrix(const FracParams& p) {
  p.validate();
  const auto w = l1_weights(p.n, p.alpha);
  const double c = l1_scale(p);
  Eigen::MatrixXd D = Eigen::MatrixXd::Zero(p.n + 1, p.n + 1);
  for (int j = 1; j <= p.n; ++j) {
    // coefficient of v_k: w[j-k] (as the right end of interval k-1) minus w[j-k-1]
    for (int k = 0; k <= j; ++k) {
      double coef = 0.0;
      if (k >= 1) coef += w[j - k];
      if (k < j) coef -= w[j - k - 1];
      D(j, k) = c * coef;
    }
  }
  return D;
}

}  // namespace frac_orlicz
