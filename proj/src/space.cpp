#include "frac_orlicz/space.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "frac_orlicz/gamma.hpp"
#include "frac_orlicz/orlicz.hpp"

namespace frac_orlicz {

SpaceElement::SpaceElement(GridFunction v, FracParams params, bool in_O0)
    : v_(std::move(v)), dv_(caputo_left(v_, params)), params_(params), in_O0_(in_O0) {
  if (in_O0_ && (v_.front() != 0.0 || v_.back() != 0.0)) {
    throw std::invalid_argument("boundary-zero element needs v(0) = v(T) = 0 exactly");
  }
}

void SpaceElement::set_values(GridFunction v) { *this = SpaceElement(std::move(v), params_, in_O0_); }

SpaceElement SpaceElement::scaled(double factor) const {
  return SpaceElement(v_.scaled(factor), params_, in_O0_);
}

double seminorm(const NFunction& nf, const SpaceElement& e) { return luxemburg_norm(nf, e.dv()); }

double norm_O(const NFunction& nf, const SpaceElement& e) {
  return luxemburg_norm(nf, e.v()) + seminorm(nf, e);
}

double modular_O0(const NFunction& nf, const SpaceElement& e) { return modular(nf, e.dv()); }

double modular_O(const NFunction& nf, const SpaceElement& e) {
  return modular(nf, e.v()) + modular_O0(nf, e);
}

double norm_O0(const NFunction& nf, const SpaceElement& e) {
  if (!e.in_O0()) throw std::logic_error("norm_O0 requires a boundary-zero element");
  return seminorm(nf, e);
}

EmbeddingConstants embedding_constants(const NFunction& nf, double alpha, double holder_C) {
  EmbeddingConstants k;
  k.holder_C = holder_C;
  k.gbar_one = eval_Gbar(nf, 1.0);
  k.g_plus = nf.g_plus();
  k.alpha = alpha;
  k.sup_constant = holder_C * std::pow(k.gbar_one, 1.0 / k.g_plus) / gamma_fn(alpha + 1.0);
  k.modulus_constant = 3.0 * k.sup_constant;
  return k;
}

double discretization_budget(const FracParams& p, double scale) {
  return std::pow(p.h(), 2.0 - p.alpha) * scale;
}

Report verify_seminorm_modular(const NFunction& nf, const SpaceElement& e) {
  Report rep = verify_norm_modular_relations(nf, e.dv());
  rep.name = "seminorm-modular bracketing";
  return rep;
}

namespace {

// [c]^{1/gd} x^{gn/gd} for the branch (gn, gd)
double power_bound(double c, double x, double gn, double gd) {
  return std::pow(c, 1.0 / gd) * std::pow(x, gn / gd);
}

struct BranchBound {
  double value;
  std::string label;
};

// g+/g- when both exceed 1, g-/g+ when both are below, else the weaker of the two.
BranchBound branch_bound(double c, double x, double a, double b, double gm, double gp) {
  const double above = power_bound(c, x, gp, gm);
  const double below = power_bound(c, x, gm, gp);
  if (a > 1.0 && b > 1.0) return {above, "norm>1"};
  if (a < 1.0 && b < 1.0) return {below, "norm<1"};
  return above >= below ? BranchBound{above, "straddle (norm>1 bound)"}
                        : BranchBound{below, "straddle (norm<1 bound)"};
}

}  // namespace

Report verify_integral_bound(const NFunction& nf, const GridFunction& v, const FracParams& p) {
  p.require_grid(v);
  Report rep;
  rep.name = "fractional integral bound";
  const auto iv = rl_integral_left(v, p);
  const double nv = luxemburg_norm(nf, v);
  const double niv = luxemburg_norm(nf, iv);
  const double c = std::pow(p.T, p.alpha) / gamma_fn(p.alpha + 1.0);
  rep.metric("norm_v", nv);
  rep.metric("norm_Iv", niv);
  if (nv == 0.0) {
    rep.add("||I v|| <= 0 for v = 0", niv, 0.0, 0.0);
    return rep;
  }
  const auto b = branch_bound(c, nv, nv, niv, nf.g_minus(), nf.g_plus());
  rep.add(b.label + ": ||I v|| <= bound", niv, b.value, discretization_budget(p, b.value));
  rep.add_info("modular: rho(I v) <= T^a/Gamma(a+1) rho(v)", modular(nf, iv), c * modular(nf, v));
  rep.metric("ratio", niv / b.value);
  return rep;
}

Report holder_modulus_check(const NFunction& nf, const GridFunction& v, const FracParams& p,
                            const EmbeddingConstants& k) {
  p.require_grid(v);
  Report rep;
  rep.name = "Holder modulus of I^alpha v";
  const auto iv = rl_integral_left(v, p);
  const double nv = luxemburg_norm(nf, v);
  const double expo = p.alpha / k.g_plus;
  double worst = -1.0, worst_lhs = 0.0, worst_rhs = 0.0;
  for (int i = 0; i < p.n; ++i) {
    for (int j = i + 1; j <= p.n; ++j) {
      const double lhs = std::abs(iv[j] - iv[i]);
      const double rhs = k.modulus_constant * nv * std::pow(v.t(j) - v.t(i), expo);
      const double r = rhs > 0.0 ? lhs / rhs : (lhs > 0.0 ? std::numeric_limits<double>::infinity() : 0.0);
      if (r > worst) {
        worst = r;
        worst_lhs = lhs;
        worst_rhs = rhs;
      }
    }
  }
  rep.add("worst pair: increment <= K ||v|| dt^{alpha/g+}", worst_lhs, worst_rhs,
          discretization_budget(p, worst_rhs));
  rep.metric("max_ratio", worst);
  rep.metric("norm_v", nv);
  return rep;
}

Report verify_embedding_bounds(const NFunction& nf, const SpaceElement& e, const EmbeddingConstants& k) {
  if (!e.in_O0()) throw std::logic_error("embedding bounds require a boundary-zero element");
  const auto& p = e.params();
  Report rep;
  rep.name = "embedding bounds";
  const double semi = seminorm(nf, e);
  const double nv = luxemburg_norm(nf, e.v());
  rep.metric("seminorm", semi);
  rep.metric("norm_v", nv);
  if (semi == 0.0) {
    rep.add("||v||_G <= 0 for [v] = 0", nv, 0.0, 0.0);
    rep.add("sup |v| <= 0 for [v] = 0", e.v().max_abs(), 0.0, 0.0);
    return rep;
  }
  const double c = std::pow(p.T, p.alpha) / gamma_fn(p.alpha + 1.0);
  const auto b = branch_bound(c, semi, nv, semi, nf.g_minus(), nf.g_plus());
  rep.add(b.label + ": ||v||_G <= bound", nv, b.value, discretization_budget(p, b.value));

  const double expo = p.alpha / k.g_plus;
  double worst = -1.0, lhs_w = 0.0, rhs_w = 0.0;
  double worst_alt = 0.0;
  for (int j = 1; j <= p.n; ++j) {
    const double lhs = std::abs(e.v()[j]);
    const double rhs = k.sup_constant * std::pow(e.v().t(j), expo) * semi;
    const double rhs_alt = k.sup_constant * std::pow(e.v().t(j), p.alpha) * semi;
    if (lhs / rhs > worst) {
      worst = lhs / rhs;
      lhs_w = lhs;
      rhs_w = rhs;
    }
    worst_alt = std::max(worst_alt, lhs / rhs_alt);
  }
  rep.add("pointwise |v(t)| <= K t^{alpha/g+} [v]", lhs_w, rhs_w, discretization_budget(p, rhs_w));
  rep.add_info("pointwise variant with t^alpha: worst ratio <= 1", worst_alt, 1.0);
  rep.metric("sup_ratio", worst);
  rep.metric("sup_ratio_t_alpha", worst_alt);
  return rep;
}

Report equicontinuity_certificate(const NFunction& nf, const std::vector<SpaceElement>& family,
                                  double M, const EmbeddingConstants& k) {
  Report rep;
  rep.name = "uniform Holder modulus";
  std::size_t used = 0, skipped = 0;
  double worst = 0.0;
  for (std::size_t m = 0; m < family.size(); ++m) {
    const auto& e = family[m];
    if (seminorm(nf, e) > M) {
      ++skipped;
      continue;
    }
    ++used;
    const auto& v = e.v();
    const double expo = e.params().alpha / k.g_plus;
    double w = 0.0, lhs_w = 0.0, rhs_w = 0.0;
    for (int i = 0; i < v.n(); ++i) {
      for (int j = i + 1; j <= v.n(); ++j) {
        const double lhs = std::abs(v[j] - v[i]);
        const double rhs = 3.0 * M * k.sup_constant * std::pow(v.t(j) - v.t(i), expo);
        if (lhs / rhs > w) {
          w = lhs / rhs;
          lhs_w = lhs;
          rhs_w = rhs;
        }
      }
    }
    worst = std::max(worst, w);
    rep.add("member " + std::to_string(m) + ": worst increment <= modulus", lhs_w, rhs_w,
            discretization_budget(e.params(), rhs_w));
  }
  rep.metric("members_checked", static_cast<double>(used));
  rep.metric("members_skipped", static_cast<double>(skipped));
  rep.metric("max_ratio", worst);
  return rep;
}

Report check_kernel_assumption(double alpha, double T) {
  Report rep;
  rep.name = "kernel power assumption";
  // (x - tau)^alpha < x - tau iff x - tau > 1 when alpha < 1; never when alpha = 1
  const double fraction = (alpha < 1.0 && T > 1.0) ? (T - 1.0) * (T - 1.0) / (T * T) : 0.0;
  rep.metric("alpha", alpha);
  rep.metric("T", T);
  rep.metric("fraction", fraction);
  rep.metric("holds_everywhere", fraction == 1.0 ? 1.0 : 0.0);
  rep.add_info("triangle fraction where the assumption holds", fraction, 1.0);
  if (alpha < 1.0) {
    rep.notes.push_back("holds exactly on {x - tau > 1}; fails wherever x - tau <= 1");
  } else {
    rep.notes.push_back("alpha = 1: equality everywhere, strict inequality holds nowhere");
  }
  if (T <= 1.0) rep.notes.push_back("T <= 1: the assumption fails on the whole triangle");
  return rep;
}

SweepSummary summarize_sweep(const std::vector<Report>& reports) {
  SweepSummary s;
  s.trials = reports.size();
  s.min_slack = std::numeric_limits<double>::infinity();
  for (const auto& r : reports) {
    s.violations += r.violations();
    s.min_slack = std::min(s.min_slack, r.min_slack());
  }
  return s;
}

}  // namespace frac_orlicz
