#pragma once

#include <vector>

#include "frac_orlicz/fractional_ops.hpp"
#include "frac_orlicz/grid_function.hpp"
#include "frac_orlicz/nfunction.hpp"
#include "frac_orlicz/report.hpp"

namespace frac_orlicz {

/// An element of the Caputo-derivative Orlicz space with its cached left
/// Caputo derivative. Boundary-zero elements have v(0) = v(T) = 0 exactly.
class SpaceElement {
 public:
  /// Throws std::invalid_argument when in_O0 is requested but an endpoint is
  /// nonzero, or when v does not match params.
  SpaceElement(GridFunction v, FracParams params, bool in_O0 = false);

  /// Boundary-zero element; endpoints must already be exactly zero.
  static SpaceElement boundary_zero(GridFunction v, FracParams params) {
    return SpaceElement(std::move(v), params, true);
  }

  const GridFunction& v() const { return v_; }
  const GridFunction& dv() const { return dv_; }
  const FracParams& params() const { return params_; }
  bool in_O0() const { return in_O0_; }

  /// Replaces the nodal values and refreshes the cached derivative.
  void set_values(GridFunction v);
  SpaceElement scaled(double factor) const;

 private:
  GridFunction v_;
  GridFunction dv_;
  FracParams params_;
  bool in_O0_;
};

double seminorm(const NFunction& nf, const SpaceElement& e);
double norm_O(const NFunction& nf, const SpaceElement& e);
double modular_O(const NFunction& nf, const SpaceElement& e);
double modular_O0(const NFunction& nf, const SpaceElement& e);
/// Throws std::logic_error unless e.in_O0().
double norm_O0(const NFunction& nf, const SpaceElement& e);

/// Constants of the pointwise and Holder-modulus embedding estimates.
struct EmbeddingConstants {
  double holder_C = 2.0;
  double gbar_one = 0.0;       // Gbar(1)
  double g_plus = 0.0;
  double alpha = 0.0;
  double sup_constant = 0.0;   // C Gbar(1)^{1/g+} / Gamma(alpha + 1)
  double modulus_constant = 0.0;  // 3 sup_constant
};

EmbeddingConstants embedding_constants(const NFunction& nf, double alpha, double holder_C);

/// h^{2 - alpha} times scale: the size of one L1-scheme truncation error.
double discretization_budget(const FracParams& p, double scale = 1.0);

/// Seminorm-modular bracketing with g- / g+ by branch [v] > 1 or < 1.
Report verify_seminorm_modular(const NFunction& nf, const SpaceElement& e);

/// ||I^alpha v||_G against [T^alpha / Gamma(alpha + 1)]^{1/g-+} ||v||^{g+-/g-+}.
/// The branch is > 1 when both norms exceed 1, < 1 when both are below, and
/// the weaker bound otherwise. The modular (Jensen) step is recorded as
/// informational.
Report verify_integral_bound(const NFunction& nf, const GridFunction& v, const FracParams& p);

/// Worst node pair of |I^alpha v(t2) - I^alpha v(t1)| / (K ||v||_G (t2 - t1)^{alpha/g+}).
Report holder_modulus_check(const NFunction& nf, const GridFunction& v, const FracParams& p,
                            const EmbeddingConstants& k);

/// Norm bound for boundary-zero v, and the pointwise bound
/// |v(t_j)| <= sup_constant t_j^{alpha/g+} [v]. The t_j^alpha variant is
/// recorded as informational. Throws std::logic_error unless e.in_O0().
Report verify_embedding_bounds(const NFunction& nf, const SpaceElement& e, const EmbeddingConstants& k);

/// Uniform Holder modulus 3 M sup_constant (t2 - t1)^{alpha/g+} over members
/// with seminorm <= M. Members above M are skipped and counted.
Report equicontinuity_certificate(const NFunction& nf, const std::vector<SpaceElement>& family,
                                  double M, const EmbeddingConstants& k);

/// Region of the triangle 0 <= tau <= x <= T where (x - tau)^alpha < x - tau,
/// namely x - tau > 1, and the fraction of the triangle it covers.
Report check_kernel_assumption(double alpha, double T);
inline Report check_kernel_assumption(const FracParams& p) { return check_kernel_assumption(p.alpha, p.T); }

struct SweepSummary {
  std::size_t trials = 0;
  std::size_t violations = 0;
  double min_slack = 0.0;
};

SweepSummary summarize_sweep(const std::vector<Report>& reports);

}  // namespace frac_orlicz
