#include <doctest.h>

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "frac_orlicz/gamma.hpp"
#include "frac_orlicz/orlicz.hpp"
#include "frac_orlicz/sampling.hpp"
#include "frac_orlicz/space.hpp"

using namespace frac_orlicz;

namespace {

SpaceElement random_element(std::uint64_t seed, std::uint64_t trial, const FracParams& p) {
  auto rng = trial_rng(seed, trial);
  return SpaceElement::boundary_zero(random_hat_combination(rng, p.T, p.n), p);
}

}  // namespace

TEST_CASE("boundary-zero membership is enforced") {
  const FracParams p{0.5, 1.0, 32};
  CHECK_THROWS_AS(SpaceElement::boundary_zero(GridFunction::sample(1.0, 32, [](double t) { return t; }), p),
                  std::invalid_argument);
  const SpaceElement e(GridFunction::sample(1.0, 32, [](double t) { return t; }), p);
  CHECK_THROWS_AS(norm_O0(NFunction::power(2), e), std::logic_error);
}

TEST_CASE("seminorm and modulars of v = t") {
  const NFunction p2 = NFunction::power(2);
  const FracParams p{0.5, 1.0, 512};
  const SpaceElement e(GridFunction::sample(1.0, 512, [](double t) { return t; }), p);
  // Trapezoid on the exact nodal derivative 2 sqrt(t / pi): the sqrt(t) endpoint costs O(h^{1.5}).
  CHECK(seminorm(p2, e) == doctest::Approx(std::sqrt(1 / std::numbers::pi)).epsilon(1e-4));
  CHECK(modular_O0(p2, e) == doctest::Approx(1 / std::numbers::pi).epsilon(1e-4));
  CHECK(modular_O(p2, e) == doctest::Approx(modular(p2, e.v()) + modular_O0(p2, e)).epsilon(1e-14));
  CHECK(seminorm(p2, e.scaled(-3.0)) == doctest::Approx(3 * seminorm(p2, e)).epsilon(1e-9));
}

TEST_CASE("constants have zero seminorm and the plain norm") {
  const FracParams p{0.5, 2.0, 32};
  const SpaceElement e(GridFunction::sample(2.0, 32, [](double) { return 1.5; }), p);
  for (double q : {1.5, 2.0, 3.0}) {
    CHECK(seminorm(NFunction::power(q), e) == 0.0);
    CHECK(norm_O(NFunction::power(q), e) == doctest::Approx(1.5 * std::pow(2.0 / q, 1 / q)).epsilon(1e-9));
  }
  CHECK(norm_O(NFunction::power(2), SpaceElement(GridFunction::zeros(2.0, 32), p)) == 0.0);
}

TEST_CASE("triangle inequality for the full norm") {
  const NFunction nf = NFunction::mixed_power(2, 4);
  const FracParams p{0.6, 1.0, 64};
  for (int i = 0; i < 30; ++i) {
    auto rng = trial_rng(12, i);
    HatOptions o;
    o.boundary_zero = false;
    const SpaceElement a(random_hat_combination(rng, 1.0, 64, o), p);
    const SpaceElement b(random_hat_combination(rng, 1.0, 64, o), p);
    const SpaceElement s(a.v() + b.v(), p);
    CHECK(norm_O(nf, s) <= (norm_O(nf, a) + norm_O(nf, b)) * (1 + 1e-9));
  }
}

TEST_CASE("seminorm-modular bracketing") {
  const FracParams p{0.5, 1.0, 64};
  for (int i = 0; i < 200; ++i) {
    const SpaceElement e = random_element(13, i, p);
    const double s = seminorm(NFunction::power(2), e);
    CHECK(modular_O0(NFunction::power(2), e) == doctest::Approx(s * s).epsilon(1e-8));
    CHECK(verify_seminorm_modular(NFunction::mixed_power(2, 4), e).ok());
    CHECK(modular_O0(NFunction::power(2), e.scaled(1 / s)) == doctest::Approx(1.0).epsilon(1e-8));
  }
}

TEST_CASE("integral bound") {
  const FracParams p{0.5, 2.0, 64};
  CHECK(verify_integral_bound(NFunction::power(2), GridFunction::zeros(2.0, 64), p).ok());
  const auto r = verify_integral_bound(NFunction::power(2), GridFunction::sample(2.0, 64, [](double) { return 1.0; }), p);
  CHECK(r.ok());
  CHECK(std::pow(2.0, 0.5) / gamma_fn(1.5) == doctest::Approx(1.5957691216057308));
  for (int i = 0; i < 100; ++i) {
    auto rng = trial_rng(14, i);
    HatOptions o;
    o.boundary_zero = false;
    CHECK(verify_integral_bound(NFunction::power(2), random_hat_combination(rng, 2.0, 64, o), p).ok());
  }
}

TEST_CASE("Holder modulus of the fractional integral") {
  const FracParams p{0.5, 1.0, 64};
  const auto k = embedding_constants(NFunction::power(2), 0.5, 2.0);
  CHECK(holder_modulus_check(NFunction::power(2), GridFunction::zeros(1.0, 64), p, k).ok());
  const auto one = GridFunction::sample(1.0, 64, [](double) { return 1.0; });
  const auto r1 = holder_modulus_check(NFunction::power(2), one, p, k);
  CHECK(r1.ok());
  const auto r2 = holder_modulus_check(NFunction::power(2), one.scaled(-7.0), p, k);
  CHECK(r2.metric("max_ratio") == doctest::Approx(r1.metric("max_ratio")).epsilon(1e-9));
}

TEST_CASE("embedding constants") {
  const auto k = embedding_constants(NFunction::power(2), 0.5, 2.0);
  CHECK(k.gbar_one == doctest::Approx(0.5).epsilon(1e-10));
  CHECK(k.sup_constant == doctest::Approx(2 * std::sqrt(0.5) / gamma_fn(1.5)).epsilon(1e-10));
  CHECK(k.modulus_constant == doctest::Approx(3 * k.sup_constant));
}

TEST_CASE("embedding bounds on zero and a single hat") {
  const FracParams p{0.75, 1.0, 64};
  const auto k = embedding_constants(NFunction::power(2), 0.75, 2.0);
  CHECK(verify_embedding_bounds(NFunction::power(2), SpaceElement::boundary_zero(GridFunction::zeros(1.0, 64), p), k).ok());
  const auto h = SpaceElement::boundary_zero(hat(1.0, 64, 0.5, 0.25), p);
  const auto r = verify_embedding_bounds(NFunction::power(2), h, k);
  CHECK(r.ok());
  CHECK(r.has_metric("sup_ratio"));
  CHECK_THROWS_AS(verify_embedding_bounds(NFunction::power(2), SpaceElement(hat(1.0, 64, 0.5, 0.25), p), k),
                  std::logic_error);
}

TEST_CASE("equicontinuity certificate") {
  const FracParams p{0.5, 1.0, 64};
  const NFunction p2 = NFunction::power(2);
  const auto k = embedding_constants(p2, 0.5, 2.0);
  CHECK(equicontinuity_certificate(p2, {}, 1.0, k).ok());
  std::vector<SpaceElement> family;
  for (int i = 0; i < 20; ++i) {
    const SpaceElement e = random_element(15, i, p);
    family.push_back(e.scaled(0.9 / seminorm(p2, e)));
  }
  const SpaceElement big = random_element(15, 99, p);
  family.push_back(big.scaled(5.0 / seminorm(p2, big)));
  const auto r = equicontinuity_certificate(p2, family, 1.0, k);
  CHECK(r.ok());
  CHECK(r.metric("members_skipped") == 1.0);
}

TEST_CASE("kernel assumption diagnostic") {
  CHECK(check_kernel_assumption(0.3, 0.5).metric("fraction") == 0.0);
  CHECK(check_kernel_assumption(0.9, 1.0).metric("fraction") == 0.0);
  CHECK(check_kernel_assumption(0.5, 2.0).metric("fraction") == doctest::Approx(0.25));
  CHECK(check_kernel_assumption(0.5, 2.0).metric("holds_everywhere") == 0.0);
}

TEST_CASE("sweep summary") {
  Report a, b;
  a.add("x", 1.0, 2.0, 0.0);
  b.add("y", 3.0, 2.0, 0.5);
  const auto s = summarize_sweep({a, b});
  CHECK(s.trials == 2);
  CHECK(s.violations == 1);
  CHECK(s.min_slack == doctest::Approx(-1.0));
}
