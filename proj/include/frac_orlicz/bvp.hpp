#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "frac_orlicz/fractional_ops.hpp"
#include "frac_orlicz/nfunction.hpp"
#include "frac_orlicz/report.hpp"
#include "frac_orlicz/space.hpp"

namespace frac_orlicz {

/// Right-hand side a(t, v) with primitive A(t, v) = int_0^v a(t, s) ds and
/// its derivative in v.
struct Nonlinearity {
  using Map = std::function<double(double, double)>;

  std::string name;
  double mu = 0.0;  // Ambrosetti-Rabinowitz exponent
  Map a;
  Map A;
  Map da;

  /// a = |v|^{mu-2} v.
  static Nonlinearity power(double mu);
  /// a = (1 + t/2) |v|^{mu-2} v.
  static Nonlinearity perturbed_power(double mu);
  /// a = |v|^{mu-2} v + |v|^{q-2} v with q > mu; AR holds strictly.
  static Nonlinearity power_sum(double mu, double q);
  /// a = 0; violates the Ambrosetti-Rabinowitz condition.
  static Nonlinearity zero(double mu);
};

/// "power:mu=6", "perturbed:mu=6", "sum:mu=6,q=8" or "zero:mu=6".
Nonlinearity parse_nonlinearity(const std::string& spec);

struct SampleBox {
  double T = 1.0;
  double v_max = 10.0;
  int t_samples = 17;
  int v_samples = 60;  // per sign, log-spaced in [v_max * 1e-4, v_max]
};

/// Ambrosetti-Rabinowitz condition on the box: mu A <= v a, A > 0 and mu > k.
Report check_AR(const Nonlinearity& nl, const SampleBox& box, double delta2_k);

/// A(t, v) <= A(t, sgn v) |v|^mu for 0 < |v| <= 1, reversed for |v| >= 1.
Report check_homogeneity_bounds(const Nonlinearity& nl, const SampleBox& box);

/// With l = min over the grid of A(t, +-1):
/// int A(t, xi v) >= l |xi|^mu int |v|^mu - T l for each xi.
Report check_primitive_lower_bound(const GridFunction& v, const Nonlinearity& nl,
                                   const std::vector<double>& xi_list);

/// The discrete energy on boundary-zero grid functions. Unknowns are the
/// interior nodal values x_1..x_{n-1}; nodes 0 and n are fixed at zero.
class DiscreteProblem {
 public:
  DiscreteProblem(NFunction nf, Nonlinearity nl, FracParams p);

  const NFunction& nf() const { return nf_; }
  const Nonlinearity& nl() const { return nl_; }
  const FracParams& params() const { return p_; }
  int unknowns() const { return p_.n - 1; }

  GridFunction to_grid(const Eigen::VectorXd& x) const;
  /// Interior values of a boundary-zero grid function.
  Eigen::VectorXd interior(const GridFunction& v) const;

  /// Caputo derivative at all n+1 nodes.
  Eigen::VectorXd derivative(const Eigen::VectorXd& x) const { return D_ * x; }
  double energy(const Eigen::VectorXd& x) const;
  /// Pairings <J'(v), phi_j> with the interior nodal hats.
  Eigen::VectorXd gradient(const Eigen::VectorXd& x) const;
  Eigen::MatrixXd hessian(const Eigen::VectorXd& x) const;
  /// max_j |<J'(v), phi_j>| / ||phi_j||_{O0}.
  double weak_residual(const Eigen::VectorXd& x) const;
  double weak_residual_from_gradient(const Eigen::VectorXd& grad) const;
  /// ||v||_{O0} = Luxemburg norm of the Caputo derivative.
  double seminorm(const Eigen::VectorXd& x) const;
  /// rho(Caputo derivative).
  double derivative_modular(const Eigen::VectorXd& x) const;
  /// Solves K d = grad with K = D^T W D (the quadratic seminorm metric).
  Eigen::VectorXd metric_solve(const Eigen::VectorXd& grad) const;
  /// sqrt(x^T K x).
  double metric_norm(const Eigen::VectorXd& x) const;

  const Eigen::MatrixXd& D() const { return D_; }
  const Eigen::VectorXd& weights() const { return w_; }
  const std::vector<double>& basis_norms() const { return basis_norms_; }

 private:
  NFunction nf_;
  Nonlinearity nl_;
  FracParams p_;
  Eigen::MatrixXd D_;  // (n+1) x (n-1), interior columns of the Caputo matrix
  Eigen::VectorXd w_;
  Eigen::LDLT<Eigen::MatrixXd> metric_;
  Eigen::MatrixXd gram_;
  std::vector<double> basis_norms_;
};

double energy(const NFunction& nf, const SpaceElement& e, const Nonlinearity& nl);
std::vector<double> gradient(const NFunction& nf, const SpaceElement& e, const Nonlinearity& nl);
double weak_residual(const NFunction& nf, const SpaceElement& e, const Nonlinearity& nl);

/// J(v) - <J'(v), v> / mu >= (1 - k / mu) ||v||^{g-+}, with g- when ||v|| > 1
/// and g+ when ||v|| < 1.
Report ps_coercivity_check(const DiscreteProblem& prob, const Eigen::VectorXd& x);
Report ps_coercivity_check(const NFunction& nf, const SpaceElement& e, const Nonlinearity& nl);

class GeometryError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct GeometryOptions {
  int sphere_samples = 1000;
  int holder_trials = 200;
  std::uint64_t seed = 1;
  double xi_cap = 1e9;
};

/// Mountain-pass geometry: J >= beta on the sphere ||v||_{O0} = R, and
/// J(e) <= 0 for e = e_scale v0 with ||v0||_{O0} = 1.
struct Geometry {
  double R = 0.0;
  double beta = 0.0;
  double e_scale = 0.0;
  double g_used = 0.0;   // exponent of the lower bound on the sphere
  double holder_C = 0.0;
  double embed = 0.0;    // sup |v| <= embed ||v||_{O0}
  double C1 = 0.0;       // 1 / embed
  double A_max = 0.0;    // max A(t, +-1)
  double K = 0.0;        // T A_max embed^mu
  double sphere_min = 0.0;
  double sphere_budget = 0.0;
  double energy_e = 0.0;
  Eigen::VectorXd e;     // interior values of e
  Report report;
};

/// Throws GeometryError when beta <= 0 or xi-doubling hits the cap.
Geometry certify_geometry(const DiscreteProblem& prob, const GeometryOptions& opts = {});
Geometry certify_geometry(const NFunction& nf, const Nonlinearity& nl, const FracParams& p,
                          const GeometryOptions& opts = {});

struct SolverConfig {
  int path_states = 20;
  double tol = 1e-6;
  double armijo = 1e-4;
  double switch_residual = 1e-2;  // hand over from path descent to Newton
  int max_iterations = 2000;      // path-descent iterations
  int newton_max = 50;
  bool force = false;             // run even when the AR check fails
  GeometryOptions geometry;
};

struct IterationRecord {
  int iteration = 0;
  std::string stage;  // "path" or "newton"
  double path_max_energy = 0.0;
  double residual = 0.0;
  double seminorm = 0.0;
  double step = 0.0;
  std::string branch;  // active exponent side, "norm>1" or "norm<1"
};

struct MPResult {
  SpaceElement solution;
  double energy = 0.0;
  double weak_residual = 0.0;
  double seminorm = 0.0;
  Geometry geometry;
  int iterations = 0;
  std::vector<IterationRecord> history;
};

class SolveError : public std::runtime_error {
 public:
  enum class Kind { non_convergence, degenerate_descent, geometry_failure };
  SolveError(Kind kind, const std::string& what, std::optional<Eigen::VectorXd> best = std::nullopt,
             std::vector<IterationRecord> history = {})
      : std::runtime_error(what), kind_(kind), best_(std::move(best)), history_(std::move(history)) {}
  Kind kind() const { return kind_; }
  const std::optional<Eigen::VectorXd>& best_iterate() const { return best_; }
  const std::vector<IterationRecord>& history() const { return history_; }

 private:
  Kind kind_;
  std::optional<Eigen::VectorXd> best_;
  std::vector<IterationRecord> history_;
};

/// Path-based mountain-pass descent followed by Newton polishing of the path
/// maximum. On success: weak_residual <= cfg.tol, energy >= beta - budget and
/// seminorm >= R.
MPResult mountain_pass_solve(const NFunction& nf, const Nonlinearity& nl, const FracParams& p,
                             const SolverConfig& cfg = {});

/// sup over coarse nodes of |coarse - fine|; the fine grid must refine the coarse one.
double two_grid_discrepancy(const GridFunction& coarse, const GridFunction& fine);
/// h^{2-alpha} max |second difference / h^2| of the coarse solution.
double two_grid_budget(const GridFunction& coarse, double alpha);

}  // namespace frac_orlicz
