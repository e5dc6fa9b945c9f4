#include <doctest.h>

#include <cmath>
#include <sstream>

#include "frac_orlicz/orlicz.hpp"
#include "frac_orlicz/sampling.hpp"

using namespace frac_orlicz;

TEST_CASE("modular on simple functions") {
  const NFunction p2 = NFunction::power(2);
  CHECK(modular(p2, GridFunction::zeros(1.0, 32)) == 0.0);
  CHECK(modular(p2, GridFunction::sample(1.0, 32, [](double) { return 1.0; })) == doctest::Approx(0.5));
  for (int n : {64, 128}) {
    const double rho = modular(p2, GridFunction::sample(1.0, n, [](double t) { return t; }));
    const double h = 1.0 / n;
    CHECK(std::abs(rho - 1.0 / 6.0) <= h * h / 12.0 * 1.0001);
  }
}

TEST_CASE("Luxemburg norm of constants") {
  CHECK(luxemburg_norm(NFunction::power(2), GridFunction::zeros(1.0, 16)) == 0.0);
  const double c = 3.7;
  CHECK(luxemburg_norm(NFunction::power(2), GridFunction::sample(1.0, 16, [&](double) { return c; })) ==
        doctest::Approx(c / std::sqrt(2.0)).epsilon(1e-9));
  for (double p : {1.5, 2.0, 3.0}) {
    for (double T : {0.5, 1.0, 2.0}) {
      const GridFunction v = GridFunction::sample(T, 16, [&](double) { return c; });
      CHECK(luxemburg_norm(NFunction::power(p), v) == doctest::Approx(c * std::pow(T / p, 1 / p)).epsilon(1e-9));
    }
  }
}

TEST_CASE("the norm gauge is attained") {
  auto rng = trial_rng(3, 0);
  const NFunction nf = NFunction::mixed_power(2, 4);
  for (int i = 0; i < 20; ++i) {
    HatOptions o;
    o.boundary_zero = false;
    const GridFunction v = random_hat_combination(rng, 1.0, 64, o);
    const double gamma = luxemburg_norm(nf, v);
    CHECK(modular(nf, v.scaled(1.0 / gamma)) == doctest::Approx(1.0).epsilon(1e-8));
  }
}

TEST_CASE("norm properties: homogeneity and triangle inequality") {
  const NFunction nf = NFunction::mixed_power(2, 4);
  for (int i = 0; i < 50; ++i) {
    auto rng = trial_rng(11, i);
    const GridFunction a = random_hat_combination(rng, 1.0, 64);
    const GridFunction b = random_hat_combination(rng, 1.0, 64);
    const double na = luxemburg_norm(nf, a), nb = luxemburg_norm(nf, b);
    CHECK(luxemburg_norm(nf, a.scaled(-2.5)) == doctest::Approx(2.5 * na).epsilon(1e-9));
    CHECK(luxemburg_norm(nf, a + b) <= (na + nb) * (1 + 1e-9));
  }
}

TEST_CASE("modular is monotone in the scale") {
  const NFunction nf = NFunction::log_power(2);
  auto rng = trial_rng(2, 0);
  const GridFunction v = random_hat_combination(rng, 1.0, 64);
  double prev = 0.0;
  for (double s = 0.1; s < 10.0; s *= 1.3) {
    const double r = modular(nf, v.scaled(s));
    CHECK(r > prev);
    prev = r;
  }
}

TEST_CASE("Holder pairing") {
  const NFunction p2 = NFunction::power(2);
  const auto zero = GridFunction::zeros(1.0, 16);
  const auto one = GridFunction::sample(1.0, 16, [](double) { return 1.0; });
  auto hp = holder_pairing_check(p2, zero, one);
  CHECK(hp.lhs == 0.0);
  CHECK(hp.ratio == 0.0);
  hp = holder_pairing_check(p2, one, one);
  CHECK(hp.lhs == doctest::Approx(1.0));
  CHECK(hp.rhs == doctest::Approx(0.5).epsilon(1e-9));
  CHECK(hp.ratio == doctest::Approx(2.0).epsilon(1e-9));
  const double C = estimate_holder_constant(p2, 1.0, 64, 1000, 7);
  CHECK(C == doctest::Approx(2.0).epsilon(1e-8));
  CHECK(C <= 2.0 + 1e-8);
}

TEST_CASE("norm-modular bracketing") {
  const auto zero = GridFunction::zeros(1.0, 16);
  CHECK(verify_norm_modular_relations(NFunction::power(2), zero).ok());
  for (int i = 0; i < 100; ++i) {
    auto rng = trial_rng(4, i);
    HatOptions o;
    o.boundary_zero = false;
    const GridFunction v = random_hat_combination(rng, 1.0, 64, o);
    const double nrm = luxemburg_norm(NFunction::power(2), v);
    CHECK(modular(NFunction::power(2), v) == doctest::Approx(nrm * nrm / 1.0).epsilon(1e-8));
    CHECK(verify_norm_modular_relations(NFunction::mixed_power(2, 4), v).ok());
  }
}

TEST_CASE("norm and modular vanish or blow up together") {
  const NFunction nf = NFunction::mixed_power(2, 4);
  const auto v = GridFunction::sample(1.0, 32, [](double t) { return 1 + t; });
  const auto down = norm_modular_sequence(nf, v, 0.5, 30);
  CHECK(down.back().norm < 1e-7);
  CHECK(down.back().modular < 1e-14);
  const auto up = norm_modular_sequence(nf, v, 2.0, 30);
  CHECK(up.back().norm > 1e7);
  CHECK(up.back().modular > 1e14);
}

TEST_CASE("grid function file round trip") {
  auto rng = trial_rng(9, 1);
  const GridFunction v = random_hat_combination(rng, 2.0, 40);
  std::stringstream ss;
  write_grid_function(ss, v);
  const GridFunction w = read_grid_function(ss);
  CHECK(w.n() == v.n());
  CHECK(w.T() == v.T());
  for (int j = 0; j <= v.n(); ++j) CHECK(w[j] == v[j]);
}
