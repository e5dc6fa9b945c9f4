#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include "frac_orlicz/grid_function.hpp"
#include "frac_orlicz/nfunction.hpp"
#include "frac_orlicz/report.hpp"

namespace frac_orlicz {

class UnboundedNorm : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

constexpr double kDefaultNormTol = 1e-10;

/// rho(v) = int_0^T G(|v|) by the composite trapezoid rule on nodal values.
double modular(const NFunction& nf, const GridFunction& v);
/// Weighted form sum_j w_j G(|x_j| / scale).
double modular(const NFunction& nf, std::span<const double> values, std::span<const double> weights,
               double scale = 1.0);

/// Luxemburg norm inf{gamma > 0 : rho(v / gamma) <= 1} by bisection on gamma
/// (geometric midpoints), stopping once the bracket is narrower than tol times
/// its upper end. Zero for v = 0. Throws UnboundedNorm when the modular is not
/// finite at any bracket.
double luxemburg_norm(const NFunction& nf, const GridFunction& v, double tol = kDefaultNormTol);
double luxemburg_norm(const NFunction& nf, std::span<const double> values,
                      std::span<const double> weights, double tol = kDefaultNormTol);

struct HolderPairing {
  double lhs = 0.0;  // |int v u|
  double rhs = 0.0;  // ||v||_G ||u||_Gbar
  double ratio = 0.0;
};

/// Holder pairing of v against u, with conj the conjugate N-function of nf.
/// Throws std::logic_error if rhs = 0 while lhs > 0.
HolderPairing holder_pairing_check(const NFunction& nf, const NFunction& conj, const GridFunction& v,
                                   const GridFunction& u);
HolderPairing holder_pairing_check(const NFunction& nf, const GridFunction& v, const GridFunction& u);

/// Largest Holder ratio seen over random pairs on [0, T] with n subintervals.
/// The pair v = u = 1 and Young-extremal partners u = sgn(v) g(|v| / ||v||) are
/// always included, so for quadratic G the sharp value 2 is reached.
double estimate_holder_constant(const NFunction& nf, double T, int n, int trials, std::uint64_t seed);

/// Norm-modular bracketing: ||v||^{g-} <= rho <= ||v||^{g+} when ||v|| > 1 and
/// the reversed exponents when ||v|| < 1.
Report verify_norm_modular_relations(const NFunction& nf, const GridFunction& v,
                                     double tol = kDefaultNormTol);

struct NormModularPoint {
  double factor = 0.0;
  double norm = 0.0;
  double modular = 0.0;
};

/// (norm, modular) along factor^k v for k = 0..steps-1. With factor < 1 both
/// columns must tend to 0; with factor > 1 both must blow up.
std::vector<NormModularPoint> norm_modular_sequence(const NFunction& nf, const GridFunction& v,
                                                    double factor, int steps);

}  // namespace frac_orlicz
