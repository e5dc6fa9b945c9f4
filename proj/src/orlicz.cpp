#include "frac_orlicz/orlicz.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "frac_orlicz/sampling.hpp"

namespace frac_orlicz {

namespace {

double integrate_product(const GridFunction& v, const GridFunction& u) {
  std::vector<double> prod(v.values().size());
  for (std::size_t j = 0; j < prod.size(); ++j) prod[j] = v.values()[j] * u.values()[j];
  return trapezoid(prod, v.h());
}

}  // namespace

double modular(const NFunction& nf, std::span<const double> values, std::span<const double> weights,
               double scale) {
  double acc = 0.0;
  for (std::size_t j = 0; j < values.size(); ++j) {
    if (weights[j] == 0.0 || values[j] == 0.0) continue;
    acc += weights[j] * nf.G(std::abs(values[j]) / scale);
  }
  return acc;
}

double modular(const NFunction& nf, const GridFunction& v) {
  const auto w = trapezoid_weights(v.n(), v.h());
  return modular(nf, v.values(), w);
}

double luxemburg_norm(const NFunction& nf, std::span<const double> values,
                      std::span<const double> weights, double tol) {
  if (!(tol > 0.0)) throw std::invalid_argument("luxemburg_norm: tol must be positive");
  double m = 0.0;
  for (std::size_t j = 0; j < values.size(); ++j) {
    if (weights[j] > 0.0) m = std::max(m, std::abs(values[j]));
  }
  if (m == 0.0) return 0.0;
  auto admissible = [&](double gamma) {
    const double r = modular(nf, values, weights, gamma);
    return r <= 1.0;  // false for NaN and inf
  };
  double lo = 1e-3 * m;
  double hi = 1e3 * m;
  while (!admissible(hi)) {
    if (!std::isfinite(modular(nf, values, weights, hi)) && hi > 1e290) {
      throw UnboundedNorm("luxemburg_norm: modular not finite at any bracket");
    }
    lo = hi;
    hi *= 1e3;
    if (hi > 1e300) throw UnboundedNorm("luxemburg_norm: no admissible gamma below 1e300");
  }
  while (admissible(lo)) {
    hi = lo;
    lo *= 1e-3;
    if (lo < 1e-300) return hi;
  }
  // invariant: rho(v/lo) > 1 >= rho(v/hi)
  while (hi - lo > tol * hi) {
    const double mid = std::sqrt(lo * hi);
    if (mid <= lo || mid >= hi) break;
    if (admissible(mid)) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return 0.5 * (lo + hi);
}

double luxemburg_norm(const NFunction& nf, const GridFunction& v, double tol) {
  const auto w = trapezoid_weights(v.n(), v.h());
  return luxemburg_norm(nf, v.values(), w, tol);
}

HolderPairing holder_pairing_check(const NFunction& nf, const NFunction& conj, const GridFunction& v,
                                   const GridFunction& u) {
  if (!v.same_grid(u)) throw std::invalid_argument("holder_pairing_check: grid mismatch");
  HolderPairing out;
  out.lhs = std::abs(integrate_product(v, u));
  if (out.lhs == 0.0 && (v.max_abs() == 0.0 || u.max_abs() == 0.0)) return out;
  out.rhs = luxemburg_norm(nf, v) * luxemburg_norm(conj, u);
  if (out.rhs == 0.0) {
    if (out.lhs > 0.0) throw std::logic_error("holder_pairing_check: rhs = 0 but lhs > 0");
    return out;
  }
  out.ratio = out.lhs / out.rhs;
  return out;
}

HolderPairing holder_pairing_check(const NFunction& nf, const GridFunction& v, const GridFunction& u) {
  return holder_pairing_check(nf, conjugate_nfunction(nf), v, u);
}

double estimate_holder_constant(const NFunction& nf, double T, int n, int trials, std::uint64_t seed) {
  const NFunction conj = conjugate_nfunction(nf);
  const auto one = GridFunction::sample(T, n, [](double) { return 1.0; });
  double best = holder_pairing_check(nf, conj, one, one).ratio;
  HatOptions opts;
  opts.boundary_zero = false;
  opts.constant_offset = true;
  for (int trial = 0; trial < trials; ++trial) {
    auto rng = trial_rng(seed, static_cast<std::uint64_t>(trial));
    const auto v = random_hat_combination(rng, T, n, opts);
    GridFunction u = random_hat_combination(rng, T, n, opts);
    if (trial % 2 == 0) {
      const double nv = luxemburg_norm(nf, v);
      if (nv == 0.0) continue;
      std::vector<double> vals(v.values().begin(), v.values().end());
      for (double& x : vals) x = std::copysign(nf.g(std::abs(x) / nv), x);
      u = GridFunction(T, std::move(vals));
    }
    best = std::max(best, holder_pairing_check(nf, conj, v, u).ratio);
  }
  return best;
}

Report verify_norm_modular_relations(const NFunction& nf, const GridFunction& v, double tol) {
  Report rep;
  rep.name = "norm-modular relations";
  const double norm = luxemburg_norm(nf, v, tol);
  const double rho = modular(nf, v);
  rep.metric("norm", norm);
  rep.metric("modular", rho);
  if (norm == 0.0) {
    rep.add("rho(0) == 0", rho, 0.0, 0.0);
    rep.notes.push_back("zero function: relations hold vacuously");
    return rep;
  }
  const double gm = nf.g_minus();
  const double gp = nf.g_plus();
  const double lo_pow = norm > 1.0 ? std::pow(norm, gm) : std::pow(norm, gp);
  const double hi_pow = norm > 1.0 ? std::pow(norm, gp) : std::pow(norm, gm);
  // a relative norm error tol moves ||v||^g by about g tol
  const double budget = 10.0 * gp * tol * std::max({rho, lo_pow, hi_pow}) + 1e-300;
  const char* branch = norm > 1.0 ? "norm>1" : "norm<1";
  rep.add(std::string(branch) + ": norm^lower <= rho", lo_pow, rho, budget);
  rep.add(std::string(branch) + ": rho <= norm^upper", rho, hi_pow, budget);
  rep.metric("collapse_gap", std::abs(hi_pow - lo_pow));
  return rep;
}

std::vector<NormModularPoint> norm_modular_sequence(const NFunction& nf, const GridFunction& v,
                                                    double factor, int steps) {
  std::vector<NormModularPoint> out;
  double f = 1.0;
  for (int k = 0; k < steps; ++k) {
    const auto vk = v.scaled(f);
    out.push_back({f, luxemburg_norm(nf, vk), modular(nf, vk)});
    f *= factor;
  }
  return out;
}

}  // namespace frac_orlicz
