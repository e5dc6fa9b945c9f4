#pragma once

#include <Eigen/Dense>
#include <vector>

#include "frac_orlicz/grid_function.hpp"

namespace frac_orlicz {

/// Order alpha in (0, 1) on the uniform grid of [0, T] with n subintervals.
struct FracParams {
  double alpha = 0.5;
  double T = 1.0;
  int n = 64;

  /// Throws std::invalid_argument unless 0 < alpha < 1, T > 0, n >= 2.
  void validate() const;
  /// Throws std::invalid_argument if v lives on a different grid.
  void require_grid(const GridFunction& v) const;
  double h() const { return T / n; }
};

// Product integration: exact for the piecewise-linear interpolant of v.

/// Left Riemann-Liouville integral of any order > 0.
GridFunction rl_integral_left(const GridFunction& v, double order);
GridFunction rl_integral_left(const GridFunction& v, const FracParams& p);
/// Right integral, kernel (tau - t)^{order - 1} over [t, T].
GridFunction rl_integral_right(const GridFunction& v, double order);
GridFunction rl_integral_right(const GridFunction& v, const FracParams& p);

// L1 scheme: order 1 - alpha integral of the piecewise-constant slope.

GridFunction caputo_left(const GridFunction& v, const FracParams& p);
GridFunction caputo_right(const GridFunction& v, const FracParams& p);

struct RLDerivative {
  /// Nodal values; values[0] is NaN when singular_origin.
  std::vector<double> values;
  bool singular_origin = false;
};

/// Caputo derivative plus v(0) t^{-alpha} / Gamma(1 - alpha).
RLDerivative rl_derivative_left(const GridFunction& v, const FracParams& p);

/// max_j |I^alpha(caputo_left v)(t_j) - (v(t_j) - v(0))|.
double composition_residual(const GridFunction& v, const FracParams& p);

/// Dense (n+1) x (n+1) lower-triangular matrix of caputo_left.
Eigen::MatrixXd caputo_left_matrix(const FracParams& p);

}  // namespace frac_orlicz
