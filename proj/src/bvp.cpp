#include "frac_orlicz/bvp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "family_spec.hpp"
#include "frac_orlicz/orlicz.hpp"
#include "frac_orlicz/sampling.hpp"

namespace frac_orlicz {

namespace {

constexpr double kStrict = -std::numeric_limits<double>::min();
constexpr std::size_t kStallWindow = 50;

double signed_pow(double v, double e) { return std::pow(std::abs(v), e) * (v < 0.0 ? -1.0 : 1.0); }

}  // namespace

Nonlinearity Nonlinearity::power(double mu) {
  if (!(mu > 1.0)) throw std::invalid_argument("power nonlinearity needs mu > 1");
  Nonlinearity nl;
  nl.name = "power:mu=" + std::to_string(mu);
  nl.mu = mu;
  nl.a = [mu](double, double v) { return signed_pow(v, mu - 1.0); };
  nl.A = [mu](double, double v) { return std::pow(std::abs(v), mu) / mu; };
  nl.da = [mu](double, double v) { return (mu - 1.0) * std::pow(std::abs(v), mu - 2.0); };
  return nl;
}

Nonlinearity Nonlinearity::perturbed_power(double mu) {
  Nonlinearity nl = power(mu);
  nl.name = "perturbed:mu=" + std::to_string(mu);
  auto a = nl.a;
  auto A = nl.A;
  auto da = nl.da;
  nl.a = [a](double t, double v) { return (1.0 + 0.5 * t) * a(t, v); };
  nl.A = [A](double t, double v) { return (1.0 + 0.5 * t) * A(t, v); };
  nl.da = [da](double t, double v) { return (1.0 + 0.5 * t) * da(t, v); };
  return nl;
}

Nonlinearity Nonlinearity::power_sum(double mu, double q) {
  if (!(mu > 1.0) || !(q > mu)) throw std::invalid_argument("power_sum nonlinearity needs 1 < mu < q");
  Nonlinearity nl;
  nl.name = "sum:mu=" + std::to_string(mu) + ",q=" + std::to_string(q);
  nl.mu = mu;
  nl.a = [mu, q](double, double v) { return signed_pow(v, mu - 1.0) + signed_pow(v, q - 1.0); };
  nl.A = [mu, q](double, double v) {
    const double s = std::abs(v);
    return std::pow(s, mu) / mu + std::pow(s, q) / q;
  };
  nl.da = [mu, q](double, double v) {
    const double s = std::abs(v);
    return (mu - 1.0) * std::pow(s, mu - 2.0) + (q - 1.0) * std::pow(s, q - 2.0);
  };
  return nl;
}

Nonlinearity Nonlinearity::zero(double mu) {
  Nonlinearity nl;
  nl.name = "zero";
  nl.mu = mu;
  nl.a = [](double, double) { return 0.0; };
  nl.A = [](double, double) { return 0.0; };
  nl.da = [](double, double) { return 0.0; };
  return nl;
}

Nonlinearity parse_nonlinearity(const std::string& spec) {
  const auto fs = detail::parse_family_spec(spec, "nonlinearity");
  if (fs.family == "power") {
    fs.allow({"mu"});
    return Nonlinearity::power(fs.need("mu"));
  }
  if (fs.family == "perturbed") {
    fs.allow({"mu"});
    return Nonlinearity::perturbed_power(fs.need("mu"));
  }
  if (fs.family == "sum") {
    fs.allow({"mu", "q"});
    return Nonlinearity::power_sum(fs.need("mu"), fs.need("q"));
  }
  if (fs.family == "zero") {
    fs.allow({"mu"});
    return Nonlinearity::zero(fs.params.count("mu") ? fs.need("mu") : 2.0);
  }
  throw std::invalid_argument("unknown nonlinearity family '" + fs.family + "'");
}

namespace {

std::vector<double> box_times(const SampleBox& box) {
  std::vector<double> t;
  const int m = std::max(2, box.t_samples);
  for (int i = 0; i < m; ++i) t.push_back(box.T * i / (m - 1));
  return t;
}

std::vector<double> box_values(const SampleBox& box, double lo) {
  std::vector<double> v;
  for (double s : log_grid(lo, box.v_max, static_cast<std::size_t>(std::max(2, box.v_samples)))) {
    v.push_back(s);
    v.push_back(-s);
  }
  return v;
}

}  // namespace

Report check_AR(const Nonlinearity& nl, const SampleBox& box, double delta2_k) {
  Report rep;
  rep.name = "Ambrosetti-Rabinowitz";
  double worst_rel = std::numeric_limits<double>::infinity();
  double w_lhs = 0.0, w_rhs = 0.0;
  double min_A = std::numeric_limits<double>::infinity();
  for (double t : box_times(box)) {
    for (double v : box_values(box, box.v_max * 1e-4)) {
      const double muA = nl.mu * nl.A(t, v);
      const double va = v * nl.a(t, v);
      const double scale = std::abs(va) + std::abs(muA);
      const double rel = scale > 0.0 ? (va - muA) / scale : 0.0;
      if (rel < worst_rel) {
        worst_rel = rel;
        w_lhs = muA;
        w_rhs = va;
      }
      min_A = std::min(min_A, nl.A(t, v));
    }
  }
  rep.add("mu A(t,v) <= v a(t,v)", w_lhs, w_rhs, 1e-12 * (std::abs(w_lhs) + std::abs(w_rhs)));
  rep.add("A(t,v) > 0", 0.0, min_A, kStrict);
  rep.add("mu > k", delta2_k, nl.mu, kStrict);
  rep.metric("min_gap_relative", worst_rel);
  rep.metric("min_A", min_A);
  rep.metric("mu", nl.mu);
  rep.metric("k", delta2_k);
  return rep;
}

Report check_homogeneity_bounds(const Nonlinearity& nl, const SampleBox& box) {
  Report rep;
  rep.name = "primitive homogeneity bounds";
  struct Worst {
    double rel = std::numeric_limits<double>::infinity();
    double lhs = 0.0, rhs = 0.0;
  } below, above;
  double max_gap = 0.0;
  for (double t : box_times(box)) {
    for (double v : box_values(box, 1.0 / box.v_max)) {
      const double s = std::abs(v);
      const double ref = nl.A(t, v < 0.0 ? -1.0 : 1.0) * std::pow(s, nl.mu);
      const double val = nl.A(t, v);
      const double scale = std::abs(ref) + std::abs(val);
      if (scale == 0.0) continue;
      if (s <= 1.0) {
        const double rel = (ref - val) / scale;
        if (rel < below.rel) below = {rel, val, ref};
        if (s < 1.0) max_gap = std::max(max_gap, rel);
      }
      if (s >= 1.0) {
        const double rel = (val - ref) / scale;
        if (rel < above.rel) above = {rel, ref, val};
        if (s > 1.0) max_gap = std::max(max_gap, rel);
      }
    }
  }
  rep.add("0<|v|<=1: A(t,v) <= A(t,sgn v)|v|^mu", below.lhs, below.rhs,
          1e-12 * (std::abs(below.lhs) + std::abs(below.rhs)));
  rep.add("|v|>=1: A(t,v) >= A(t,sgn v)|v|^mu", above.lhs, above.rhs,
          1e-12 * (std::abs(above.lhs) + std::abs(above.rhs)));
  rep.metric("max_relative_gap", max_gap);
  rep.metric("min_relative_slack_below", std::isfinite(below.rel) ? below.rel : 0.0);
  rep.metric("min_relative_slack_above", std::isfinite(above.rel) ? above.rel : 0.0);
  return rep;
}

Report check_primitive_lower_bound(const GridFunction& v, const Nonlinearity& nl,
                                   const std::vector<double>& xi_list) {
  Report rep;
  rep.name = "primitive lower bound";
  double ell = std::numeric_limits<double>::infinity();
  for (int j = 0; j <= v.n(); ++j) ell = std::min({ell, nl.A(v.t(j), 1.0), nl.A(v.t(j), -1.0)});
  rep.metric("ell", ell);
  std::vector<double> absmu(v.values().size());
  for (std::size_t j = 0; j < absmu.size(); ++j) absmu[j] = std::pow(std::abs(v.values()[j]), nl.mu);
  const double int_mu = trapezoid(absmu, v.h());
  for (double xi : xi_list) {
    if (xi == 0.0) throw std::invalid_argument("check_primitive_lower_bound: xi must be nonzero");
    std::vector<double> a(v.values().size());
    for (int j = 0; j <= v.n(); ++j) a[j] = nl.A(v.t(j), xi * v[j]);
    const double lhs = trapezoid(a, v.h());
    const double rhs = ell * std::pow(std::abs(xi), nl.mu) * int_mu - v.T() * ell;
    rep.add("xi=" + std::to_string(xi) + ": int A(xi v) >= bound", rhs, lhs,
            1e-12 * (std::abs(lhs) + std::abs(rhs)));
  }
  return rep;
}

DiscreteProblem::DiscreteProblem(NFunction nf, Nonlinearity nl, FracParams p)
    : nf_(std::move(nf)), nl_(std::move(nl)), p_(p) {
  p_.validate();
  const Eigen::MatrixXd full = caputo_left_matrix(p_);
  D_ = full.middleCols(1, p_.n - 1);
  const auto w = trapezoid_weights(p_.n, p_.h());
  w_ = Eigen::Map<const Eigen::VectorXd>(w.data(), static_cast<Eigen::Index>(w.size()));
  gram_ = D_.transpose() * w_.asDiagonal() * D_;
  metric_.compute(gram_);
  basis_norms_.resize(static_cast<std::size_t>(unknowns()));
  std::vector<double> col(static_cast<std::size_t>(p_.n) + 1);
  for (int j = 0; j < unknowns(); ++j) {
    for (int i = 0; i <= p_.n; ++i) col[i] = D_(i, j);
    basis_norms_[j] = luxemburg_norm(nf_, col, w);
  }
}

GridFunction DiscreteProblem::to_grid(const Eigen::VectorXd& x) const {
  std::vector<double> vals(static_cast<std::size_t>(p_.n) + 1, 0.0);
  for (int i = 0; i < unknowns(); ++i) vals[i + 1] = x[i];
  return GridFunction(p_.T, std::move(vals));
}

Eigen::VectorXd DiscreteProblem::interior(const GridFunction& v) const {
  p_.require_grid(v);
  if (v.front() != 0.0 || v.back() != 0.0) {
    throw std::invalid_argument("DiscreteProblem: grid function must vanish at both ends");
  }
  Eigen::VectorXd x(unknowns());
  for (int i = 0; i < unknowns(); ++i) x[i] = v[i + 1];
  return x;
}

double DiscreteProblem::energy(const Eigen::VectorXd& x) const {
  const Eigen::VectorXd d = derivative(x);
  double acc = 0.0;
  for (int j = 0; j <= p_.n; ++j) acc += w_[j] * nf_.G(std::abs(d[j]));
  for (int i = 0; i < unknowns(); ++i) acc -= w_[i + 1] * nl_.A(p_.T * (i + 1) / p_.n, x[i]);
  return acc;
}

Eigen::VectorXd DiscreteProblem::gradient(const Eigen::VectorXd& x) const {
  const Eigen::VectorXd d = derivative(x);
  Eigen::VectorXd r(p_.n + 1);
  for (int j = 0; j <= p_.n; ++j) r[j] = w_[j] * std::copysign(nf_.g(std::abs(d[j])), d[j]);
  Eigen::VectorXd grad = D_.transpose() * r;
  for (int i = 0; i < unknowns(); ++i) grad[i] -= w_[i + 1] * nl_.a(p_.T * (i + 1) / p_.n, x[i]);
  return grad;
}

Eigen::MatrixXd DiscreteProblem::hessian(const Eigen::VectorXd& x) const {
  const Eigen::VectorXd d = derivative(x);
  Eigen::VectorXd c(p_.n + 1);
  for (int j = 0; j <= p_.n; ++j) c[j] = w_[j] * nf_.dg(std::abs(d[j]));
  Eigen::MatrixXd H = D_.transpose() * c.asDiagonal() * D_;
  for (int i = 0; i < unknowns(); ++i) H(i, i) -= w_[i + 1] * nl_.da(p_.T * (i + 1) / p_.n, x[i]);
  return H;
}

double DiscreteProblem::weak_residual_from_gradient(const Eigen::VectorXd& grad) const {
  double r = 0.0;
  for (int i = 0; i < unknowns(); ++i) r = std::max(r, std::abs(grad[i]) / basis_norms_[i]);
  return r;
}

double DiscreteProblem::weak_residual(const Eigen::VectorXd& x) const {
  return weak_residual_from_gradient(gradient(x));
}

double DiscreteProblem::seminorm(const Eigen::VectorXd& x) const {
  const Eigen::VectorXd d = derivative(x);
  return luxemburg_norm(nf_, std::span<const double>(d.data(), static_cast<std::size_t>(d.size())),
                        std::span<const double>(w_.data(), static_cast<std::size_t>(w_.size())));
}

double DiscreteProblem::derivative_modular(const Eigen::VectorXd& x) const {
  const Eigen::VectorXd d = derivative(x);
  return modular(nf_, std::span<const double>(d.data(), static_cast<std::size_t>(d.size())),
                 std::span<const double>(w_.data(), static_cast<std::size_t>(w_.size())));
}

Eigen::VectorXd DiscreteProblem::metric_solve(const Eigen::VectorXd& grad) const { return metric_.solve(grad); }

double DiscreteProblem::metric_norm(const Eigen::VectorXd& x) const {
  return std::sqrt(std::max(0.0, x.dot(gram_ * x)));
}

namespace {

DiscreteProblem problem_for(const NFunction& nf, const SpaceElement& e, const Nonlinearity& nl) {
  if (!e.in_O0()) throw std::logic_error("energy functional is defined on boundary-zero elements");
  return DiscreteProblem(nf, nl, e.params());
}

}  // namespace

double energy(const NFunction& nf, const SpaceElement& e, const Nonlinearity& nl) {
  const auto prob = problem_for(nf, e, nl);
  return prob.energy(prob.interior(e.v()));
}

std::vector<double> gradient(const NFunction& nf, const SpaceElement& e, const Nonlinearity& nl) {
  const auto prob = problem_for(nf, e, nl);
  const Eigen::VectorXd g = prob.gradient(prob.interior(e.v()));
  return {g.data(), g.data() + g.size()};
}

double weak_residual(const NFunction& nf, const SpaceElement& e, const Nonlinearity& nl) {
  const auto prob = problem_for(nf, e, nl);
  return prob.weak_residual(prob.interior(e.v()));
}

Report ps_coercivity_check(const DiscreteProblem& prob, const Eigen::VectorXd& x) {
  Report rep;
  rep.name = "Palais-Smale coercivity";
  const double mu = prob.nl().mu;
  const double k = prob.nf().delta2_k();
  const double lhs = prob.energy(x) - prob.gradient(x).dot(x) / mu;
  const double norm = prob.seminorm(x);
  const bool above = norm > 1.0;
  const double g = above ? prob.nf().g_minus() : prob.nf().g_plus();
  const double rhs = (1.0 - k / mu) * std::pow(norm, g);
  rep.add(std::string(above ? "norm>1" : "norm<1") + ": J - <J'v,v>/mu >= (1-k/mu)||v||^g", rhs, lhs,
          discretization_budget(prob.params(), std::abs(rhs)));
  rep.metric("norm", norm);
  rep.metric("lhs", lhs);
  rep.metric("rhs", rhs);
  return rep;
}

Report ps_coercivity_check(const NFunction& nf, const SpaceElement& e, const Nonlinearity& nl) {
  const auto prob = problem_for(nf, e, nl);
  return ps_coercivity_check(prob, prob.interior(e.v()));
}

Geometry certify_geometry(const DiscreteProblem& prob, const GeometryOptions& opts) {
  const auto& p = prob.params();
  const auto& nf = prob.nf();
  const auto& nl = prob.nl();
  Geometry geo;
  geo.report.name = "mountain-pass geometry";
  auto& rep = geo.report;

  geo.holder_C = estimate_holder_constant(nf, p.T, p.n, opts.holder_trials, opts.seed);
  const auto k = embedding_constants(nf, p.alpha, geo.holder_C);
  geo.embed = k.sup_constant * std::pow(p.T, p.alpha / nf.g_plus());
  geo.C1 = 1.0 / geo.embed;
  geo.A_max = 0.0;
  for (int j = 0; j <= p.n; ++j) {
    const double t = p.T * j / p.n;
    geo.A_max = std::max({geo.A_max, nl.A(t, 1.0), nl.A(t, -1.0)});
  }
  const double mu = nl.mu;
  geo.K = p.T * geo.A_max * std::pow(geo.embed, mu);
  geo.g_used = nf.g_plus();
  const double g = geo.g_used;
  if (!(mu > g)) throw GeometryError("mu must exceed g+ for the mountain-pass geometry");
  if (!(geo.K > 0.0)) throw GeometryError("A vanishes on |v| = 1: no mountain-pass geometry");
  const double r_opt = std::pow(g / (mu * geo.K), 1.0 / (mu - g));
  geo.R = std::min({r_opt, 0.99 * geo.C1, 1.0});
  geo.beta = std::pow(geo.R, g) - geo.K * std::pow(geo.R, mu);
  rep.metric("R", geo.R);
  rep.metric("beta", geo.beta);
  rep.metric("holder_C", geo.holder_C);
  rep.metric("embed", geo.embed);
  rep.metric("C1", geo.C1);
  rep.metric("A_max", geo.A_max);
  rep.metric("K", geo.K);
  rep.add("beta > 0", 0.0, geo.beta, kStrict);
  if (!(geo.beta > 0.0)) throw GeometryError("beta <= 0: R^g <= K R^mu");

  // sphere ||v||_{O0} = R
  HatOptions hats;
  hats.boundary_zero = true;
  geo.sphere_min = std::numeric_limits<double>::infinity();
  int sampled = 0;
  for (int trial = 0; sampled < opts.sphere_samples && trial < 10 * opts.sphere_samples + 10; ++trial) {
    auto rng = trial_rng(opts.seed ^ 0x5eedULL, static_cast<std::uint64_t>(trial));
    const auto v = random_hat_combination(rng, p.T, p.n, hats);
    const Eigen::VectorXd x = prob.interior(v);
    const double s = prob.seminorm(x);
    if (!(s > 0.0)) continue;
    geo.sphere_min = std::min(geo.sphere_min, prob.energy(x * (geo.R / s)));
    ++sampled;
  }
  geo.sphere_budget = discretization_budget(p, geo.beta);
  rep.add("min J on sphere >= beta", geo.beta, geo.sphere_min, geo.sphere_budget);
  rep.metric("sphere_min", geo.sphere_min);
  rep.metric("sphere_samples", sampled);
  if (!(geo.sphere_min >= geo.beta - geo.sphere_budget)) {
    throw GeometryError("sampled sphere energy falls below beta");
  }

  // e = xi v0 with v0 a unit-seminorm sine
  Eigen::VectorXd v0(prob.unknowns());
  for (int i = 0; i < prob.unknowns(); ++i) v0[i] = std::sin(std::numbers::pi * (i + 1) / p.n);
  v0 /= prob.seminorm(v0);
  double xi = std::max(1.0, 2.0 * geo.R);
  while (prob.energy(xi * v0) > 0.0) {
    xi *= 2.0;
    if (xi > opts.xi_cap) throw GeometryError("xi-doubling reached the cap without J(e) <= 0");
  }
  geo.e_scale = xi;
  geo.e = xi * v0;
  geo.energy_e = prob.energy(geo.e);
  rep.add("J(e) <= 0", geo.energy_e, 0.0, 0.0);
  rep.metric("e_scale", xi);
  rep.metric("energy_e", geo.energy_e);
  return geo;
}

Geometry certify_geometry(const NFunction& nf, const Nonlinearity& nl, const FracParams& p,
                          const GeometryOptions& opts) {
  return certify_geometry(DiscreteProblem(nf, nl, p), opts);
}

namespace {

std::vector<Eigen::VectorXd> respline(const DiscreteProblem& prob, const std::vector<Eigen::VectorXd>& path) {
  const std::size_t m = path.size();
  std::vector<double> s(m, 0.0);
  for (std::size_t k = 1; k < m; ++k) s[k] = s[k - 1] + prob.metric_norm(path[k] - path[k - 1]);
  std::vector<Eigen::VectorXd> out(m);
  out.front() = path.front();
  out.back() = path.back();
  std::size_t seg = 1;
  for (std::size_t k = 1; k + 1 < m; ++k) {
    const double target = s.back() * static_cast<double>(k) / static_cast<double>(m - 1);
    while (seg + 1 < m && s[seg] < target) ++seg;
    const double len = s[seg] - s[seg - 1];
    const double lam = len > 0.0 ? (target - s[seg - 1]) / len : 0.0;
    out[k] = (1.0 - lam) * path[seg - 1] + lam * path[seg];
  }
  return out;
}

std::size_t argmax_interior(const std::vector<double>& J) {
  std::size_t best = 1;
  for (std::size_t k = 1; k + 1 < J.size(); ++k) {
    if (J[k] > J[best]) best = k;
  }
  return best;
}

double dual_norm_sq(const DiscreteProblem& prob, const Eigen::VectorXd& grad) {
  return grad.dot(prob.metric_solve(grad));
}

}  // namespace

MPResult mountain_pass_solve(const NFunction& nf, const Nonlinearity& nl, const FracParams& p,
                             const SolverConfig& cfg) {
  using Kind = SolveError::Kind;
  if (cfg.path_states < 3) throw std::invalid_argument("path_states must be at least 3");
  const DiscreteProblem prob(nf, nl, p);

  SampleBox box;
  box.T = p.T;
  const auto ar = check_AR(nl, box, nf.delta2_k());
  if (!ar.ok() && !cfg.force) {
    throw SolveError(Kind::degenerate_descent,
                     "nonlinearity '" + nl.name + "' fails the Ambrosetti-Rabinowitz check; "
                     "only the trivial critical point is available");
  }

  Geometry geo;
  try {
    geo = certify_geometry(prob, cfg.geometry);
  } catch (const GeometryError& err) {
    throw SolveError(Kind::geometry_failure, std::string("geometry certification failed: ") + err.what());
  }

  const auto m = static_cast<std::size_t>(cfg.path_states);
  std::vector<Eigen::VectorXd> path(m);
  for (std::size_t k = 0; k < m; ++k) path[k] = geo.e * (static_cast<double>(k) / static_cast<double>(m - 1));
  // energies at the states and at the segment midpoints; the midpoints expose
  // ridges crossed between two states
  std::vector<double> J(m), Jmid(m - 1);
  auto eval_profile = [&](const std::vector<Eigen::VectorXd>& pth, std::vector<double>& Js, std::vector<double>& Jm) {
    for (std::size_t k = 0; k < m; ++k) Js[k] = prob.energy(pth[k]);
    for (std::size_t k = 0; k + 1 < m; ++k) Jm[k] = prob.energy(0.5 * (pth[k] + pth[k + 1]));
  };
  auto profile_max = [&](const std::vector<double>& Js, const std::vector<double>& Jm) {
    return std::max(*std::max_element(Js.begin() + 1, Js.end() - 1), *std::max_element(Jm.begin(), Jm.end()));
  };
  eval_profile(path, J, Jmid);

  std::vector<IterationRecord> history;
  auto branch_of = [](double s) { return std::string(s > 1.0 ? "norm>1" : "norm<1"); };
  int iter = 0;
  double step = 1.0;
  Eigen::VectorXd x;
  for (; iter < cfg.max_iterations; ++iter) {
    const std::size_t kmax = argmax_interior(J);
    const double pmax = profile_max(J, Jmid);
    x = path[kmax];
    const Eigen::VectorXd grad = prob.gradient(x);
    const double res = prob.weak_residual_from_gradient(grad);
    const double semi = prob.seminorm(x);
    history.push_back({iter, "path", pmax, res, semi, step, branch_of(semi)});
    if (res <= cfg.switch_residual) break;

    const Eigen::VectorXd d = prob.metric_solve(grad);
    const double slope = grad.dot(d);
    // a move longer than half the spacing could jump across the ridge
    double length = 0.0;
    for (std::size_t k = 1; k < m; ++k) length += prob.metric_norm(path[k] - path[k - 1]);
    const double gap = length / static_cast<double>(m - 1);
    const double dnorm = prob.metric_norm(d);
    double s = std::min(1.0, 2.0 * step);
    if (dnorm > 0.0) s = std::min(s, 0.5 * gap / dnorm);
    bool accepted = false;
    for (int bt = 0; bt < 60; ++bt, s *= 0.5) {
      const Eigen::VectorXd trial = x - s * d;
      const double Jt = prob.energy(trial);
      if (!(Jt <= J[kmax] - cfg.armijo * s * slope)) continue;
      const double left = prob.energy(0.5 * (path[kmax - 1] + trial));
      const double right = prob.energy(0.5 * (trial + path[kmax + 1]));
      if (left > pmax || right > pmax) continue;
      path[kmax] = trial;
      J[kmax] = Jt;
      Jmid[kmax - 1] = left;
      Jmid[kmax] = right;
      accepted = true;
      break;
    }
    if (!accepted) break;
    step = s;
    if (history.size() > kStallWindow &&
        !(pmax < history[history.size() - 1 - kStallWindow].path_max_energy * (1.0 - 1e-10))) {
      break;  // path maximum stalled; hand over to Newton
    }

    auto candidate = respline(prob, path);
    std::vector<double> Jc(m), Jcm(m - 1);
    eval_profile(candidate, Jc, Jcm);
    if (profile_max(Jc, Jcm) <= profile_max(J, Jmid)) {
      path = std::move(candidate);
      J = std::move(Jc);
      Jmid = std::move(Jcm);
    }
  }
  x = path[argmax_interior(J)];

  // Newton on the gradient, merit = dual norm of the gradient
  Eigen::VectorXd grad = prob.gradient(x);
  double res = prob.weak_residual_from_gradient(grad);
  Eigen::VectorXd best = x;
  double best_res = res;
  for (int it = 0; it < cfg.newton_max && res > cfg.tol; ++it) {
    const Eigen::VectorXd delta = prob.hessian(x).partialPivLu().solve(-grad);
    const double merit = dual_norm_sq(prob, grad);
    double s = 1.0;
    Eigen::VectorXd trial = x + delta;
    Eigen::VectorXd trial_grad = prob.gradient(trial);
    while (dual_norm_sq(prob, trial_grad) > (1.0 - 1e-4 * s) * merit && s > 1e-6) {
      s *= 0.5;
      trial = x + s * delta;
      trial_grad = prob.gradient(trial);
    }
    x = trial;
    grad = trial_grad;
    res = prob.weak_residual_from_gradient(grad);
    const double semi = prob.seminorm(x);
    ++iter;
    history.push_back({iter, "newton", prob.energy(x), res, semi, s, branch_of(semi)});
    if (res < best_res) {
      best_res = res;
      best = x;
    }
  }
  x = best;
  res = best_res;

  const double semi = prob.seminorm(x);
  const double en = prob.energy(x);
  if (semi < geo.R / 10.0) {
    throw SolveError(Kind::degenerate_descent, "descent collapsed towards the trivial solution", x,
                     history);
  }
  if (res > cfg.tol) {
    throw SolveError(Kind::non_convergence,
                     "weak residual " + std::to_string(res) + " above tolerance after " +
                         std::to_string(iter) + " iterations",
                     x, history);
  }
  if (en < geo.beta - geo.sphere_budget) {
    throw SolveError(Kind::degenerate_descent, "critical point found below the mountain-pass level", x,
                     history);
  }
  MPResult out{SpaceElement::boundary_zero(prob.to_grid(x), p), en, res, semi, std::move(geo), iter,
               std::move(history)};
  return out;
}

double two_grid_discrepancy(const GridFunction& coarse, const GridFunction& fine) {
  if (coarse.T() != fine.T() || fine.n() % coarse.n() != 0) {
    throw std::invalid_argument("two_grid_discrepancy: fine grid must refine the coarse grid");
  }
  const int r = fine.n() / coarse.n();
  double d = 0.0;
  for (int j = 0; j <= coarse.n(); ++j) d = std::max(d, std::abs(coarse[j] - fine[r * j]));
  return d;
}

double two_grid_budget(const GridFunction& coarse, double alpha) {
  const double h = coarse.h();
  double curv = 0.0;
  for (int j = 1; j < coarse.n(); ++j) {
    curv = std::max(curv, std::abs(coarse[j + 1] - 2.0 * coarse[j] + coarse[j - 1]) / (h * h));
  }
  return std::pow(h, 2.0 - alpha) * curv;
}

}  // namespace frac_orlicz
