#include <doctest.h>

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "frac_orlicz/gamma.hpp"

using frac_orlicz::gamma_fn;

TEST_CASE("gamma agrees with std::tgamma across the positive axis") {
  for (double x = 0.01; x < 30.0; x *= 1.07) {
    CHECK(gamma_fn(x) == doctest::Approx(std::tgamma(x)).epsilon(1e-13));
  }
}

TEST_CASE("gamma at half integers and on the negative axis") {
  const double sqrt_pi = std::sqrt(std::numbers::pi);
  CHECK(gamma_fn(0.5) == doctest::Approx(sqrt_pi).epsilon(1e-14));
  CHECK(gamma_fn(1.5) == doctest::Approx(sqrt_pi / 2).epsilon(1e-14));
  CHECK(gamma_fn(2.5) == doctest::Approx(0.75 * sqrt_pi).epsilon(1e-14));
  CHECK(gamma_fn(-0.5) == doctest::Approx(-2 * sqrt_pi).epsilon(1e-13));
  CHECK(gamma_fn(-2.3) == doctest::Approx(std::tgamma(-2.3)).epsilon(1e-12));
}

TEST_CASE("gamma recurrence") {
  for (double x : {0.3, 1.7, 4.2, 9.9}) {
    CHECK(gamma_fn(x + 1) == doctest::Approx(x * gamma_fn(x)).epsilon(1e-13));
  }
}

TEST_CASE("gamma poles throw") {
  CHECK_THROWS_AS(gamma_fn(0.0), std::domain_error);
  CHECK_THROWS_AS(gamma_fn(-3.0), std::domain_error);
}
