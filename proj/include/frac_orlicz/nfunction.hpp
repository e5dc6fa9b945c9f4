#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "frac_orlicz/report.hpp"

namespace frac_orlicz {

/// Raised when an N-function fails a structural condition the rest of the
/// toolkit relies on (growth exponents outside (1, inf), for instance).
class ConditionViolation : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

enum class NFunctionKind { parametric, tabulated };

/// An N-function G(s) = int_0^s g together with its density g and the
/// structural constants used by the Orlicz-space estimates. Values are
/// immutable; the with_* members return modified copies.
class NFunction {
 public:
  using Map = std::function<double(double)>;

  /// G(s) = s^p / p, p > 1.
  static NFunction power(double p);
  /// G(s) = s^p / p + s^q / q, 1 < p <= q.
  static NFunction mixed_power(double p, double q);
  /// G(s) = s^p ln(1 + s), p > 1. Exponents (p, p + 1).
  static NFunction log_power(double p);
  /// G(s) = e^s - s - 1. Violates the growth and Delta2 conditions; kept as a
  /// negative example.
  static NFunction exponential();
  /// Density sampled at nodes s[0] = 0 < s[1] < ...; g is the piecewise-linear
  /// interpolant (extended past the last node with the last slope) and G its
  /// exact integral. Exponents and the Delta2 constant are estimated on the nodes.
  static NFunction tabulated(std::vector<double> s, std::vector<double> density,
                             std::string name = "table");

  double G(double s) const;
  double g(double s) const;
  /// Derivative of the density, used by Newton iterations.
  double dg(double s) const;

  const std::string& name() const { return name_; }
  NFunctionKind kind() const { return kind_; }
  double g_minus() const { return g_minus_; }
  double g_plus() const { return g_plus_; }
  double delta2_k() const { return delta2_k_; }
  bool exact_exponents() const { return exact_exponents_; }
  /// Exponent p when this is the pure power family.
  std::optional<double> power_exponent() const { return power_p_; }

  NFunction with_delta2(double k) const;
  NFunction with_growth_exponents(double g_minus, double g_plus) const;

 private:
  NFunction() = default;

  std::string name_;
  NFunctionKind kind_ = NFunctionKind::parametric;
  Map G_;
  Map g_;
  Map dg_;
  double g_minus_ = 0.0;
  double g_plus_ = 0.0;
  double delta2_k_ = 0.0;
  bool exact_exponents_ = false;
  std::optional<double> power_p_;
};

struct GridSummary {
  double lo = 0.0;
  double hi = 0.0;
  std::size_t count = 0;
};

GridSummary summarize(std::span<const double> grid);

/// count log-spaced points in [lo, hi].
std::vector<double> log_grid(double lo, double hi, std::size_t count);
/// The default grid for exponent and Delta2 sampling: 400 points in [1e-6, 1e6].
std::vector<double> default_sample_grid();

/// G(s); throws std::domain_error for s < 0.
double eval_G(const NFunction& nf, double s);

struct ConjugateOptions {
  double abs_tol = 1e-12;
  double growth = 2.0;
  double cap = 1e12;
};

struct ConjugateDensity {
  double value = 0.0;
  bool capped = false;  // bracket hit the cap; value is the cap
};

/// gbar(s) = sup{t : g(t) <= s} by geometric bracketing and bisection.
ConjugateDensity conjugate_density(const NFunction& nf, double s, const ConjugateOptions& opts = {});

/// Gbar(s) = int_0^s gbar by composite Gauss-Legendre quadrature of the
/// conjugate density (after t = s u^2, which removes the endpoint singularity
/// of gbar' for fast-growing G).
double eval_Gbar(const NFunction& nf, double s);

/// The conjugate N-function. Exact for the power family; otherwise a tabulated
/// density built by inverting g on a log grid.
NFunction conjugate_nfunction(const NFunction& nf);

/// Young-type constant c in Gbar(g(s)) <= c G(s), maximised over the grid.
double estimate_young_constant(const NFunction& nf, std::span<const double> grid);

struct Delta2Check {
  bool bounded = false;
  double k = 0.0;
  GridSummary grid;
};

/// max over the grid of G(2s)/G(s); bounded iff finite and <= cap. Samples
/// with G(s) = 0 are skipped.
Delta2Check check_delta2(const NFunction& nf, std::span<const double> grid, double cap = 1e6);

struct GrowthExponents {
  double g_minus = 0.0;
  double g_plus = 0.0;
  double sampled_min = 0.0;
  double sampled_max = 0.0;
  bool exact = false;
  /// For exact families: the sampled range lies within the exact bracket.
  bool consistent = true;
  GridSummary grid;
};

/// (min, max) of s g(s) / G(s) over the grid. Exact values are returned for
/// families that know them, with the sampled range as a consistency check.
/// Throws ConditionViolation when g_minus <= 1 or the ratio exceeds ratio_cap.
GrowthExponents estimate_growth_exponents(const NFunction& nf, std::span<const double> grid,
                                          double ratio_cap = 1e3);

/// True iff s -> G(sqrt s) has second divided differences >= -tol (relative)
/// at all interior points of the sorted positive grid.
bool check_sqrt_convexity(const NFunction& nf, std::span<const double> grid, double tol = 1e-9);

struct InvariantThresholds {
  double small_ratio = 1e-2;  // G(s)/s at the smallest sample must be below this
  double large_ratio = 1e2;   // G(s)/s at the largest sample must exceed this
  double tol = 1e-9;
};

/// Sampled N-function invariants: G(0) = 0, monotone, convex, the limits of
/// G(s)/s, G(s) <= s g(s) <= G(2s), and g_minus <= s g / G <= g_plus.
Report check_nfunction_invariants(const NFunction& nf, std::span<const double> grid,
                                  const InvariantThresholds& thr = {});

/// Parses "power:p=2", "mixed:p=2,q=4", "logpower:p=2", "exp" or
/// "table:<path>" (two columns s, g(s)). Throws std::invalid_argument.
NFunction parse_nfunction(const std::string& spec);

}  // namespace frac_orlicz
