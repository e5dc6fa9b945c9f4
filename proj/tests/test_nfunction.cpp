#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>
#include <vector>

#include "frac_orlicz/nfunction.hpp"

using namespace frac_orlicz;

namespace {

// Piecewise-linear table of g(s) = e^s - 1 on [0, smax].
NFunction exp_table(double smax, int nodes) {
  std::vector<double> s, g;
  for (int i = 0; i <= nodes; ++i) {
    const double x = smax * i / nodes;
    s.push_back(x);
    g.push_back(std::expm1(x));
  }
  return NFunction::tabulated(s, g, "exp-table");
}

}  // namespace

TEST_CASE("closed-form values of G") {
  CHECK(eval_G(NFunction::power(2), 2.0) == doctest::Approx(2.0));
  CHECK(eval_G(NFunction::power(2), 0.0) == 0.0);
  CHECK(eval_G(NFunction::exponential(), 1.0) == doctest::Approx(std::numbers::e - 2).epsilon(1e-14));
  CHECK(eval_G(NFunction::mixed_power(2, 4), 2.0) == doctest::Approx(2.0 + 4.0));
  CHECK(eval_G(NFunction::log_power(2), 1.0) == doctest::Approx(std::log(2.0)));
  CHECK_THROWS_AS(eval_G(NFunction::power(2), -1.0), std::domain_error);
}

TEST_CASE("tabulated integration of the exponential density matches e - 2") {
  const NFunction tab = exp_table(2.0, 4000);
  const double h = 2.0 / 4000;
  // Trapezoid error of the linear interpolant: h^2/12 * int g''.
  CHECK(std::abs(eval_G(tab, 1.0) - (std::numbers::e - 2)) <= h * h * (std::numbers::e - 1) / 12 * 1.01);
  CHECK(tab.g(0.5) == doctest::Approx(std::expm1(0.5)).epsilon(1e-6));
}

TEST_CASE("constructors reject bad parameters") {
  CHECK_THROWS_AS(NFunction::power(1.0), std::invalid_argument);
  CHECK_THROWS_AS(NFunction::mixed_power(3, 2), std::invalid_argument);
  CHECK_THROWS_AS(NFunction::tabulated({0.0}, {0.0}), std::invalid_argument);
  CHECK_THROWS_AS(NFunction::tabulated({0.1, 1.0}, {0.0, 1.0}), std::invalid_argument);
}

TEST_CASE("conjugate density inverts g") {
  CHECK(conjugate_density(NFunction::power(2), 3.0).value == doctest::Approx(3.0).epsilon(1e-11));
  CHECK(conjugate_density(NFunction::power(3), 4.0).value == doctest::Approx(2.0).epsilon(1e-11));
  CHECK(conjugate_density(NFunction::power(2), 0.0).value == 0.0);
  const NFunction mixed = NFunction::mixed_power(2, 4);
  for (double s : {0.1, 1.0, 7.5, 300.0}) {
    const double t = conjugate_density(mixed, s).value;
    CHECK(mixed.g(t) == doctest::Approx(s).epsilon(1e-9));
  }
}

TEST_CASE("conjugate N-function values") {
  CHECK(eval_Gbar(NFunction::power(2), 2.0) == doctest::Approx(2.0).epsilon(1e-10));
  CHECK(eval_Gbar(NFunction::power(2), 0.0) == 0.0);
  CHECK(eval_Gbar(NFunction::power(3), 1.0) == doctest::Approx(2.0 / 3.0).epsilon(1e-10));
  // Power conjugate: s^{p'} / p' with 1/p + 1/p' = 1.
  const double pp = 2.5 / 1.5;
  CHECK(eval_Gbar(NFunction::power(2.5), 1.7) == doctest::Approx(std::pow(1.7, pp) / pp).epsilon(1e-9));
  const NFunction conj = conjugate_nfunction(NFunction::power(3));
  CHECK(conj.G(1.0) == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
}

TEST_CASE("Young inequality holds for sampled pairs") {
  const NFunction nf = NFunction::mixed_power(2, 4);
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> U(0.0, 3.0);
  for (int i = 0; i < 200; ++i) {
    const double a = U(rng), b = U(rng);
    CHECK(a * b <= nf.G(a) + eval_Gbar(nf, b) + 1e-9);
  }
}

TEST_CASE("Delta2 constants") {
  const auto grid = default_sample_grid();
  auto d2 = check_delta2(NFunction::power(2), grid);
  CHECK(d2.bounded);
  CHECK(d2.k == doctest::Approx(4.0).epsilon(1e-12));
  d2 = check_delta2(NFunction::power(3), grid);
  CHECK(d2.k == doctest::Approx(8.0).epsilon(1e-12));
  const auto wide = log_grid(1e-3, 50.0, 200);
  d2 = check_delta2(NFunction::exponential(), wide, 1e6);
  CHECK_FALSE(d2.bounded);
  CHECK(eval_G(NFunction::exponential(), 100.0) / eval_G(NFunction::exponential(), 50.0) > 1e6);
  CHECK(NFunction::power(2).with_delta2(5.0).delta2_k() == 5.0);
}

TEST_CASE("growth exponents") {
  const auto grid = default_sample_grid();
  auto ge = estimate_growth_exponents(NFunction::power(2.5), grid);
  CHECK(ge.g_minus == doctest::Approx(2.5));
  CHECK(ge.g_plus == doctest::Approx(2.5));
  CHECK(ge.consistent);
  ge = estimate_growth_exponents(NFunction::mixed_power(2, 4), grid);
  CHECK(ge.g_minus == doctest::Approx(2.0));
  CHECK(ge.g_plus == doctest::Approx(4.0));
  CHECK(ge.sampled_min >= 2.0 - 1e-9);
  CHECK(ge.sampled_max <= 4.0 + 1e-9);
  CHECK(ge.sampled_min == doctest::Approx(2.0).epsilon(1e-6));
  CHECK(ge.sampled_max == doctest::Approx(4.0).epsilon(1e-6));
  CHECK_THROWS_AS(estimate_growth_exponents(NFunction::exponential(), grid), ConditionViolation);
}

TEST_CASE("square-root convexity") {
  const auto grid = default_sample_grid();
  CHECK(check_sqrt_convexity(NFunction::power(2), grid));
  CHECK(check_sqrt_convexity(NFunction::power(3), grid));
  CHECK_FALSE(check_sqrt_convexity(NFunction::power(1.5), grid));
}

TEST_CASE("sampled invariants hold for every built-in family") {
  const auto grid = default_sample_grid();
  for (const char* spec : {"power:p=2", "power:p=1.5", "mixed:p=2,q=4", "logpower:p=2"}) {
    CAPTURE(spec);
    CHECK(check_nfunction_invariants(parse_nfunction(spec), grid).ok());
  }
}

TEST_CASE("parse_nfunction") {
  CHECK(parse_nfunction("power:p=3").power_exponent() == 3.0);
  CHECK(parse_nfunction("mixed:p=2,q=4").g_plus() == 4.0);
  CHECK(parse_nfunction("exp").name() == "exp");
  CHECK_THROWS_AS(parse_nfunction("cubic:p=3"), std::invalid_argument);
  CHECK_THROWS_AS(parse_nfunction("power"), std::invalid_argument);
  CHECK_THROWS_AS(parse_nfunction("power:p=2,q=3"), std::invalid_argument);
  CHECK_THROWS_AS(parse_nfunction("table:/nonexistent/file"), std::invalid_argument);
}
