#include <doctest.h>

#include <cmath>
#include <vector>

#include "frac_orlicz/bvp.hpp"
#include "frac_orlicz/gamma.hpp"
#include "frac_orlicz/orlicz.hpp"
#include "frac_orlicz/sampling.hpp"

using namespace frac_orlicz;

namespace {

Eigen::VectorXd random_interior(const DiscreteProblem& prob, std::uint64_t seed, std::uint64_t trial) {
  auto rng = trial_rng(seed, trial);
  HatOptions o;
  o.log10_scale_lo = -0.5;
  o.log10_scale_hi = 0.3;
  return prob.interior(random_hat_combination(rng, prob.params().T, prob.params().n, o));
}

}  // namespace

TEST_CASE("Ambrosetti-Rabinowitz check") {
  const SampleBox box;
  CHECK(check_AR(Nonlinearity::power(4), box, 4.0).checks[0].violated() == false);
  CHECK_FALSE(check_AR(Nonlinearity::power(4), box, 4.0).ok());  // mu > k fails at equality
  CHECK_FALSE(check_AR(Nonlinearity::power(2), box, 4.0).ok());
  CHECK(check_AR(Nonlinearity::power(6), box, 4.0).ok());
  CHECK(check_AR(Nonlinearity::perturbed_power(6), box, 4.0).ok());
  CHECK(check_AR(Nonlinearity::power_sum(6, 8), box, 4.0).ok());
  CHECK_FALSE(check_AR(Nonlinearity::zero(6), box, 4.0).ok());
}

TEST_CASE("homogeneity bounds of the primitive") {
  const SampleBox box;
  for (const auto& nl : {Nonlinearity::power(6), Nonlinearity::perturbed_power(6), Nonlinearity::power_sum(6, 8)}) {
    CAPTURE(nl.name);
    CHECK(check_homogeneity_bounds(nl, box).ok());
  }
  CHECK(check_homogeneity_bounds(Nonlinearity::power(6), box).metric("max_relative_gap") < 1e-12);
  CHECK(check_homogeneity_bounds(Nonlinearity::power_sum(6, 8), box).metric("min_relative_slack_below") > 0.0);
}

TEST_CASE("primitive lower bound") {
  const auto v = hat(1.0, 64, 0.5, 0.3);
  const auto r = check_primitive_lower_bound(v, Nonlinearity::power(6), {1e-3, 0.5, 1.0, 10.0});
  CHECK(r.ok());
  CHECK(r.metric("ell") == doctest::Approx(1.0 / 6.0));
}

TEST_CASE("energy closed forms") {
  const FracParams p{0.5, 1.0, 64};
  const DiscreteProblem prob(NFunction::power(2), Nonlinearity::power(6), p);
  CHECK(prob.energy(Eigen::VectorXd::Zero(63)) == 0.0);
  CHECK(prob.gradient(Eigen::VectorXd::Zero(63)).norm() == 0.0);
  CHECK(prob.weak_residual(Eigen::VectorXd::Zero(63)) == 0.0);
  const auto h = hat(1.0, 64, 0.5, 0.25).scaled(1.3);
  const SpaceElement e = SpaceElement::boundary_zero(h, p);
  std::vector<double> pw(65);
  for (int j = 0; j <= 64; ++j) pw[j] = std::pow(std::abs(h[j]), 6) / 6.0;
  const double expected = modular_O0(NFunction::power(2), e) - trapezoid(pw, p.h());
  CHECK(energy(NFunction::power(2), e, Nonlinearity::power(6)) == doctest::Approx(expected).epsilon(1e-12));
  double prev = 1e300;
  for (double xi : {1.0, 10.0, 100.0}) {
    const double J = energy(NFunction::power(2), e.scaled(xi), Nonlinearity::power(6));
    CHECK(J < prev);
    prev = J;
  }
  CHECK(prev < 0.0);
}

TEST_CASE("gradient matches central differences") {
  const FracParams p{0.75, 1.0, 32};
  for (const char* nf_spec : {"power:p=2", "mixed:p=2,q=4"}) {
    for (const auto& nl : {Nonlinearity::power(6), Nonlinearity::perturbed_power(6)}) {
      const DiscreteProblem prob(parse_nfunction(nf_spec), nl, p);
      for (int i = 0; i < 5; ++i) {
        const Eigen::VectorXd x = random_interior(prob, 40, i);
        const Eigen::VectorXd g = prob.gradient(x);
        const double J = prob.energy(x);
        const double eps = 1e-6;
        for (int j = 0; j < prob.unknowns(); j += 3) {
          Eigen::VectorXd xp = x, xm = x;
          xp[j] += eps;
          xm[j] -= eps;
          const double fd = (prob.energy(xp) - prob.energy(xm)) / (2 * eps);
          CHECK(std::abs(fd - g[j]) <= 1e-6 * (1 + std::abs(J)));
        }
      }
    }
  }
}

TEST_CASE("gradient pairing is linear in the test function") {
  const DiscreteProblem prob(NFunction::power(2), Nonlinearity::power(6), FracParams{0.5, 1.0, 32});
  const Eigen::VectorXd x = random_interior(prob, 41, 0);
  const Eigen::VectorXd g = prob.gradient(x);
  // Directional derivative along phi_j + phi_k.
  const int j = 4, k = 17;
  Eigen::VectorXd d = Eigen::VectorXd::Zero(prob.unknowns());
  d[j] = d[k] = 1.0;
  const double eps = 1e-6;
  const double fd = (prob.energy(x + eps * d) - prob.energy(x - eps * d)) / (2 * eps);
  CHECK(fd == doctest::Approx(g[j] + g[k]).epsilon(1e-6));
}

TEST_CASE("Hessian matches differences of the gradient") {
  const DiscreteProblem prob(NFunction::mixed_power(2, 4), Nonlinearity::perturbed_power(6), FracParams{0.6, 1.0, 24});
  const Eigen::VectorXd x = random_interior(prob, 42, 0);
  const Eigen::MatrixXd H = prob.hessian(x);
  const double eps = 1e-6;
  for (int j = 0; j < prob.unknowns(); j += 5) {
    Eigen::VectorXd xp = x, xm = x;
    xp[j] += eps;
    xm[j] -= eps;
    const Eigen::VectorXd col = (prob.gradient(xp) - prob.gradient(xm)) / (2 * eps);
    CHECK((col - H.col(j)).norm() <= 1e-5 * (1 + H.col(j).norm()));
  }
}

TEST_CASE("PS coercivity inequality") {
  const DiscreteProblem prob(NFunction::power(2), Nonlinearity::power(6), FracParams{0.5, 1.0, 64});
  CHECK(ps_coercivity_check(prob, Eigen::VectorXd::Zero(63)).ok());
  for (int i = 0; i < 50; ++i) CHECK(ps_coercivity_check(prob, random_interior(prob, 43, i)).ok());
  // Equality family: J - <J'v,v>/mu = (1 - 2/mu) [v]^2 exactly, above the bound (1 - 4/mu) [v]^2.
  const Eigen::VectorXd x = random_interior(prob, 43, 99);
  for (double s : {2.0, 8.0, 32.0}) {
    const auto r = ps_coercivity_check(prob, s * x);
    const double nrm = r.metric("norm");
    CHECK(r.metric("lhs") == doctest::Approx((1 - 2.0 / 6.0) * nrm * nrm).epsilon(1e-9));
    CHECK(r.metric("rhs") == doctest::Approx((1 - 4.0 / 6.0) * nrm * nrm).epsilon(1e-9));
  }
}

TEST_CASE("geometry certificate for p = 2, mu = 6, alpha = 0.75") {
  const Geometry g = certify_geometry(NFunction::power(2), Nonlinearity::power(6), FracParams{0.75, 1.0, 64});
  CHECK(g.holder_C == doctest::Approx(2.0).epsilon(1e-8));
  const double embed = 2.0 * std::sqrt(0.5) / gamma_fn(1.75);
  const double K = std::pow(embed, 6) / 6.0;
  const double R = std::min(std::pow(2.0 / (6.0 * K), 0.25), 0.99 / embed);
  CHECK(g.embed == doctest::Approx(embed).epsilon(1e-7));
  CHECK(g.K == doctest::Approx(K).epsilon(1e-6));
  CHECK(g.R == doctest::Approx(R).epsilon(1e-6));
  CHECK(g.beta == doctest::Approx(R * R - K * std::pow(R, 6)).epsilon(1e-6));
  CHECK(g.beta > 0.0);
  CHECK(g.sphere_min >= g.beta - g.sphere_budget);
  CHECK(g.energy_e <= 0.0);
  CHECK(g.report.ok());
  // Recorded golden.
  CHECK(g.e_scale == doctest::Approx(2.492083454).epsilon(1e-6));
}

TEST_CASE("zero nonlinearity has no mountain pass") {
  try {
    mountain_pass_solve(NFunction::power(2), Nonlinearity::zero(6), FracParams{0.95, 1.0, 32});
    FAIL("expected SolveError");
  } catch (const SolveError& e) {
    CHECK(e.kind() == SolveError::Kind::degenerate_descent);
  }
  SolverConfig cfg;
  cfg.force = true;
  try {
    mountain_pass_solve(NFunction::power(2), Nonlinearity::zero(6), FracParams{0.95, 1.0, 32}, cfg);
    FAIL("expected SolveError");
  } catch (const SolveError& e) {
    CHECK(e.kind() == SolveError::Kind::geometry_failure);
  }
}

TEST_CASE("mountain-pass solve on a coarse grid") {
  const FracParams p{0.9, 1.0, 32};
  const MPResult r = mountain_pass_solve(NFunction::power(2), Nonlinearity::power(6), p);
  CHECK(r.weak_residual <= 1e-6);
  CHECK(r.energy > 0.0);
  CHECK(r.seminorm >= r.geometry.R);
  for (int j = 1; j < p.n; ++j) CHECK(r.solution.v()[j] > 0.0);
  // Path maximum never increases across accepted path iterations.
  double prev = 1e300;
  for (const auto& rec : r.history) {
    if (rec.stage != "path") continue;
    CHECK(rec.path_max_energy <= prev * (1 + 1e-12));
    prev = rec.path_max_energy;
  }
}

TEST_CASE("parse_nonlinearity") {
  CHECK(parse_nonlinearity("power:mu=6").mu == 6.0);
  CHECK(parse_nonlinearity("sum:mu=6,q=8").A(0.0, 1.0) == doctest::Approx(1.0 / 6 + 1.0 / 8));
  CHECK(parse_nonlinearity("perturbed:mu=5").a(1.0, 1.0) == doctest::Approx(1.5));
  CHECK_THROWS_AS(parse_nonlinearity("cubic:mu=3"), std::invalid_argument);
  CHECK_THROWS_AS(parse_nonlinearity("sum:mu=6,q=5"), std::invalid_argument);
}
