#include "frac_orlicz/nfunction.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <fstream>
#include <limits>
#include <map>
#include <sstream>

#include "family_spec.hpp"

namespace frac_orlicz {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void require_nonneg(double s, const char* what) {
  if (!(s >= 0.0)) {
    throw std::domain_error(std::string(what) + ": argument must be >= 0");
  }
}

// A piecewise-linear density on nodes s_0 = 0 < s_1 < ... with the exact
// integral of its interpolant cached at each node.
struct DensityTable {
  std::vector<double> s;
  std::vector<double> g;
  std::vector<double> slope;  // slope on [s_k, s_{k+1}]; last entry extends past the end
  std::vector<double> cumulative;

  std::size_t segment(double x) const {
    auto it = std::upper_bound(s.begin(), s.end(), x);
    auto k = static_cast<std::size_t>(it - s.begin());
    return k == 0 ? 0 : std::min(k - 1, s.size() - 1);
  }
  double density(double x) const {
    const auto k = segment(x);
    return g[k] + slope[k] * (x - s[k]);
  }
  double integral(double x) const {
    const auto k = segment(x);
    const double dx = x - s[k];
    return cumulative[k] + g[k] * dx + 0.5 * slope[k] * dx * dx;
  }
  double density_slope(double x) const { return slope[segment(x)]; }
};

// 8-point Gauss-Legendre rule on [-1, 1].
constexpr std::array<double, 8> kGaussNodes = {
    -0.9602898564975363, -0.7966664774136267, -0.5255324099163290, -0.1834346424956498,
    0.1834346424956498,  0.5255324099163290,  0.7966664774136267,  0.9602898564975363};
constexpr std::array<double, 8> kGaussWeights = {
    0.1012285362903763, 0.2223810344533745, 0.3137066458778873, 0.3626837833783620,
    0.3626837833783620, 0.3137066458778873, 0.2223810344533745, 0.1012285362903763};
constexpr int kGbarPanels = 32;

double exp_family_G(double s) {
  if (s < 1e-3) {
    return s * s * (0.5 + s * (1.0 / 6.0 + s * (1.0 / 24.0 + s / 120.0)));
  }
  return std::expm1(s) - s;
}

double divided_second(double x0, double x1, double x2, double f0, double f1, double f2) {
  return ((f2 - f1) / (x2 - x1) - (f1 - f0) / (x1 - x0)) / (x2 - x0);
}

}  // namespace

NFunction NFunction::power(double p) {
  if (!(p > 1.0) || !std::isfinite(p)) throw std::invalid_argument("power N-function needs p > 1");
  NFunction nf;
  nf.name_ = "power:p=" + std::to_string(p);
  nf.G_ = [p](double s) { return std::pow(s, p) / p; };
  nf.g_ = [p](double s) { return std::pow(s, p - 1.0); };
  nf.dg_ = [p](double s) {
    if (s == 0.0) return p > 2.0 ? 0.0 : (p == 2.0 ? 1.0 : kInf);
    return (p - 1.0) * std::pow(s, p - 2.0);
  };
  nf.g_minus_ = p;
  nf.g_plus_ = p;
  nf.delta2_k_ = std::pow(2.0, p);
  nf.exact_exponents_ = true;
  nf.power_p_ = p;
  return nf;
}

NFunction NFunction::mixed_power(double p, double q) {
  if (!(p > 1.0) || !(q >= p) || !std::isfinite(q)) {
    throw std::invalid_argument("mixed-power N-function needs 1 < p <= q");
  }
  NFunction nf;
  nf.name_ = "mixed:p=" + std::to_string(p) + ",q=" + std::to_string(q);
  nf.G_ = [p, q](double s) { return std::pow(s, p) / p + std::pow(s, q) / q; };
  nf.g_ = [p, q](double s) { return std::pow(s, p - 1.0) + std::pow(s, q - 1.0); };
  nf.dg_ = [p, q](double s) {
    auto term = [s](double r) {
      if (s == 0.0) return r > 2.0 ? 0.0 : (r == 2.0 ? 1.0 : kInf);
      return (r - 1.0) * std::pow(s, r - 2.0);
    };
    return term(p) + term(q);
  };
  nf.g_minus_ = p;
  nf.g_plus_ = q;
  nf.delta2_k_ = std::pow(2.0, q);
  nf.exact_exponents_ = true;
  return nf;
}

NFunction NFunction::log_power(double p) {
  if (!(p > 1.0) || !std::isfinite(p)) throw std::invalid_argument("log-power N-function needs p > 1");
  NFunction nf;
  nf.name_ = "logpower:p=" + std::to_string(p);
  nf.G_ = [p](double s) { return std::pow(s, p) * std::log1p(s); };
  nf.g_ = [p](double s) {
    return p * std::pow(s, p - 1.0) * std::log1p(s) + std::pow(s, p) / (1.0 + s);
  };
  nf.dg_ = [p](double s) {
    if (s == 0.0) return 0.0;
    const double l = std::log1p(s);
    return p * (p - 1.0) * std::pow(s, p - 2.0) * l + 2.0 * p * std::pow(s, p - 1.0) / (1.0 + s) -
           std::pow(s, p) / ((1.0 + s) * (1.0 + s));
  };
  // s g / G = p + s / ((1 + s) ln(1 + s)) decreases from p + 1 to p.
  nf.g_minus_ = p;
  nf.g_plus_ = p + 1.0;
  // G(2s)/G(s) = 2^p ln(1 + 2s) / ln(1 + s), largest as s -> 0.
  nf.delta2_k_ = std::pow(2.0, p + 1.0);
  nf.exact_exponents_ = true;
  return nf;
}

NFunction NFunction::exponential() {
  NFunction nf;
  nf.name_ = "exp";
  nf.G_ = exp_family_G;
  nf.g_ = [](double s) { return std::expm1(s); };
  nf.dg_ = [](double s) { return std::exp(s); };
  nf.g_minus_ = 2.0;
  nf.g_plus_ = kInf;
  nf.delta2_k_ = kInf;
  nf.exact_exponents_ = false;
  return nf;
}

NFunction NFunction::tabulated(std::vector<double> s, std::vector<double> density, std::string name) {
  if (s.size() != density.size() || s.size() < 2) {
    throw std::invalid_argument("tabulated N-function: need >= 2 (s, g) pairs");
  }
  if (s.front() != 0.0 || density.front() != 0.0) {
    throw std::invalid_argument("tabulated N-function: table must start at (0, 0)");
  }
  for (std::size_t k = 1; k < s.size(); ++k) {
    if (!std::isfinite(s[k]) || !std::isfinite(density[k]) || !(s[k] > s[k - 1]) ||
        density[k] < density[k - 1]) {
      throw std::invalid_argument(
          "tabulated N-function: s must increase strictly and g must be nondecreasing");
    }
  }
  auto table = std::make_shared<DensityTable>();
  table->s = std::move(s);
  table->g = std::move(density);
  const std::size_t m = table->s.size();
  table->slope.resize(m);
  table->cumulative.resize(m);
  table->cumulative[0] = 0.0;
  for (std::size_t k = 0; k + 1 < m; ++k) {
    const double ds = table->s[k + 1] - table->s[k];
    table->slope[k] = (table->g[k + 1] - table->g[k]) / ds;
    table->cumulative[k + 1] = table->cumulative[k] + 0.5 * ds * (table->g[k] + table->g[k + 1]);
  }
  table->slope[m - 1] = table->slope[m - 2];

  NFunction nf;
  nf.name_ = std::move(name);
  nf.kind_ = NFunctionKind::tabulated;
  nf.G_ = [table](double x) { return table->integral(x); };
  nf.g_ = [table](double x) { return table->density(x); };
  nf.dg_ = [table](double x) { return table->density_slope(x); };
  nf.exact_exponents_ = false;

  std::vector<double> nodes(table->s.begin() + 1, table->s.end());
  double lo = kInf;
  double hi = 0.0;
  for (double x : nodes) {
    const double G = table->integral(x);
    if (G > 0.0) {
      const double r = x * table->density(x) / G;
      lo = std::min(lo, r);
      hi = std::max(hi, r);
    }
  }
  nf.g_minus_ = lo;
  nf.g_plus_ = hi;
  double k2 = 0.0;
  for (double x : nodes) {
    if (2.0 * x > table->s.back()) break;
    const double G = table->integral(x);
    if (G > 0.0) k2 = std::max(k2, table->integral(2.0 * x) / G);
  }
  nf.delta2_k_ = k2 > 0.0 ? k2 : std::numeric_limits<double>::quiet_NaN();
  return nf;
}

double NFunction::G(double s) const {
  require_nonneg(s, "G");
  return G_(s);
}

double NFunction::g(double s) const {
  require_nonneg(s, "g");
  return g_(s);
}

double NFunction::dg(double s) const {
  require_nonneg(s, "dg");
  return dg_(s);
}

NFunction NFunction::with_delta2(double k) const {
  NFunction copy = *this;
  copy.delta2_k_ = k;
  return copy;
}

NFunction NFunction::with_growth_exponents(double g_minus, double g_plus) const {
  NFunction copy = *this;
  copy.g_minus_ = g_minus;
  copy.g_plus_ = g_plus;
  return copy;
}

GridSummary summarize(std::span<const double> grid) {
  GridSummary out;
  out.count = grid.size();
  if (!grid.empty()) {
    out.lo = *std::min_element(grid.begin(), grid.end());
    out.hi = *std::max_element(grid.begin(), grid.end());
  }
  return out;
}

std::vector<double> log_grid(double lo, double hi, std::size_t count) {
  if (!(lo > 0.0) || !(hi > lo) || count < 2) {
    throw std::invalid_argument("log_grid: need 0 < lo < hi and count >= 2");
  }
  std::vector<double> out(count);
  const double a = std::log(lo);
  const double b = std::log(hi);
  for (std::size_t i = 0; i < count; ++i) {
    out[i] = std::exp(a + (b - a) * static_cast<double>(i) / static_cast<double>(count - 1));
  }
  out.front() = lo;
  out.back() = hi;
  return out;
}

std::vector<double> default_sample_grid() { return log_grid(1e-6, 1e6, 400); }

double eval_G(const NFunction& nf, double s) {
  require_nonneg(s, "eval_G");
  return nf.G(s);
}

ConjugateDensity conjugate_density(const NFunction& nf, double s, const ConjugateOptions& opts) {
  require_nonneg(s, "conjugate_density");
  if (s == 0.0) return {0.0, false};
  double lo = 0.0;
  double hi = 1.0;
  while (nf.g(hi) <= s) {
    lo = hi;
    hi *= opts.growth;
    if (hi > opts.cap) return {opts.cap, true};
  }
  // invariant: g(lo) <= s < g(hi)
  while (hi - lo > opts.abs_tol) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (nf.g(mid) <= s) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return {0.5 * (lo + hi), false};
}

double eval_Gbar(const NFunction& nf, double s) {
  require_nonneg(s, "eval_Gbar");
  if (s == 0.0) return 0.0;
  // int_0^s gbar(t) dt = int_0^1 gbar(s u^2) 2 s u du
  double total = 0.0;
  const double width = 1.0 / kGbarPanels;
  for (int panel = 0; panel < kGbarPanels; ++panel) {
    const double mid = (panel + 0.5) * width;
    double acc = 0.0;
    for (std::size_t i = 0; i < kGaussNodes.size(); ++i) {
      const double u = mid + 0.5 * width * kGaussNodes[i];
      acc += kGaussWeights[i] * conjugate_density(nf, s * u * u).value * 2.0 * s * u;
    }
    total += 0.5 * width * acc;
  }
  return total;
}

NFunction conjugate_nfunction(const NFunction& nf) {
  if (auto p = nf.power_exponent()) {
    return NFunction::power(*p / (*p - 1.0));
  }
  // gbar(g(s)) = s for continuous strictly increasing g, so the table is
  // {(g(s_i), s_i)} on a log grid of the primal variable.
  std::vector<double> xs{0.0};
  std::vector<double> ys{0.0};
  for (double s : log_grid(1e-8, 1e8, 1600)) {
    const double gs = nf.g(s);
    if (!std::isfinite(gs) || gs > 1e300) break;
    if (gs > xs.back()) {
      xs.push_back(gs);
      ys.push_back(s);
    }
  }
  return NFunction::tabulated(std::move(xs), std::move(ys), "conjugate(" + nf.name() + ")");
}

double estimate_young_constant(const NFunction& nf, std::span<const double> grid) {
  double c = 0.0;
  for (double s : grid) {
    const double G = nf.G(s);
    if (!(G > 0.0) || !std::isfinite(G)) continue;
    const double gs = nf.g(s);
    if (!std::isfinite(gs)) continue;
    c = std::max(c, eval_Gbar(nf, gs) / G);
  }
  return c;
}

Delta2Check check_delta2(const NFunction& nf, std::span<const double> grid, double cap) {
  if (grid.empty()) throw std::invalid_argument("check_delta2: empty grid");
  Delta2Check out;
  out.grid = summarize(grid);
  for (double s : grid) {
    if (!(s > 0.0)) throw std::invalid_argument("check_delta2: grid must be strictly positive");
    const double G = nf.G(s);
    if (G == 0.0) continue;
    const double G2 = nf.G(2.0 * s);
    const double ratio = std::isfinite(G) && std::isfinite(G2) ? G2 / G : kInf;
    out.k = std::max(out.k, std::isnan(ratio) ? kInf : ratio);
  }
  out.bounded = std::isfinite(out.k) && out.k <= cap;
  return out;
}

GrowthExponents estimate_growth_exponents(const NFunction& nf, std::span<const double> grid,
                                          double ratio_cap) {
  if (grid.empty()) throw std::invalid_argument("estimate_growth_exponents: empty grid");
  GrowthExponents out;
  out.grid = summarize(grid);
  out.sampled_min = kInf;
  out.sampled_max = 0.0;
  for (double s : grid) {
    if (!(s > 0.0)) throw std::invalid_argument("estimate_growth_exponents: grid must be positive");
    const double G = nf.G(s);
    if (G == 0.0) continue;
    const double sg = s * nf.g(s);
    const double r = (std::isfinite(G) && std::isfinite(sg)) ? sg / G : kInf;
    out.sampled_min = std::min(out.sampled_min, std::isnan(r) ? kInf : r);
    out.sampled_max = std::max(out.sampled_max, std::isnan(r) ? kInf : r);
  }
  if (nf.exact_exponents()) {
    out.exact = true;
    out.g_minus = nf.g_minus();
    out.g_plus = nf.g_plus();
    const double tol = 1e-8 * out.g_plus;
    out.consistent = out.sampled_min >= out.g_minus - tol && out.sampled_max <= out.g_plus + tol;
  } else {
    out.g_minus = out.sampled_min;
    out.g_plus = out.sampled_max;
  }
  if (!(out.g_minus > 1.0)) {
    throw ConditionViolation("growth exponent g- = " + std::to_string(out.g_minus) +
                             " must exceed 1 (" + nf.name() + ")");
  }
  if (!(out.g_plus <= ratio_cap)) {
    throw ConditionViolation("growth exponent g+ exceeds cap " + std::to_string(ratio_cap) + " (" +
                             nf.name() + ")");
  }
  return out;
}

bool check_sqrt_convexity(const NFunction& nf, std::span<const double> grid, double tol) {
  for (std::size_t i = 1; i + 1 < grid.size(); ++i) {
    const double x0 = grid[i - 1];
    const double x1 = grid[i];
    const double x2 = grid[i + 1];
    const double f0 = nf.G(std::sqrt(x0));
    const double f1 = nf.G(std::sqrt(x1));
    const double f2 = nf.G(std::sqrt(x2));
    if (!std::isfinite(f2)) break;
    const double scale = std::max({std::abs(f0), std::abs(f1), std::abs(f2), 1e-300});
    const double dd = divided_second(x0, x1, x2, f0, f1, f2) * (x2 - x0) * (x2 - x0) / scale;
    if (dd < -tol) return false;
  }
  return true;
}

Report check_nfunction_invariants(const NFunction& nf, std::span<const double> grid,
                                  const InvariantThresholds& thr) {
  Report rep;
  rep.name = "nfunction invariants (" + nf.name() + ")";
  rep.add("G(0) == 0", std::abs(nf.G(0.0)), 0.0, thr.tol);

  double worst_monotone = 0.0;
  double worst_convex = 0.0;
  double worst_lower = 0.0;  // max of G(s) / (s g(s)) - 1
  double worst_upper = 0.0;  // max of s g(s) / G(2s) - 1
  double worst_exp_lo = 0.0;
  double worst_exp_hi = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double s = grid[i];
    const double G = nf.G(s);
    const double sg = s * nf.g(s);
    const double G2 = nf.G(2.0 * s);
    if (!std::isfinite(G) || !std::isfinite(sg)) continue;
    if (sg > 0.0) worst_lower = std::max(worst_lower, G / sg - 1.0);
    if (std::isfinite(G2) && G2 > 0.0) worst_upper = std::max(worst_upper, sg / G2 - 1.0);
    if (G > 0.0) {
      const double r = sg / G;
      worst_exp_lo = std::max(worst_exp_lo, nf.g_minus() - r);
      if (std::isfinite(nf.g_plus())) worst_exp_hi = std::max(worst_exp_hi, r - nf.g_plus());
    }
    if (i >= 1) {
      const double Gp = nf.G(grid[i - 1]);
      worst_monotone = std::max(worst_monotone, (Gp - G) / std::max(std::abs(G), 1e-300));
    }
    if (i >= 1 && i + 1 < grid.size()) {
      const double x0 = grid[i - 1];
      const double x2 = grid[i + 1];
      const double f0 = nf.G(x0);
      const double f2 = nf.G(x2);
      if (std::isfinite(f2)) {
        const double scale = std::max({std::abs(f0), std::abs(G), std::abs(f2), 1e-300});
        const double dd = divided_second(x0, s, x2, f0, G, f2) * (x2 - x0) * (x2 - x0) / scale;
        worst_convex = std::max(worst_convex, -dd);
      }
    }
  }
  rep.add("G nondecreasing (relative decrease)", worst_monotone, 0.0, thr.tol);
  rep.add("G convex (negative second difference)", worst_convex, 0.0, thr.tol);
  if (!grid.empty()) {
    const double s_lo = grid.front();
    const double s_hi = grid.back();
    rep.add("G(s)/s small at smallest sample", nf.G(s_lo) / s_lo, thr.small_ratio, 0.0);
    const double G_hi = nf.G(s_hi);
    rep.add("G(s)/s large at largest sample", thr.large_ratio,
            std::isfinite(G_hi) ? G_hi / s_hi : kInf, 0.0);
  }
  rep.add("G(s) <= s g(s)", worst_lower, 0.0, thr.tol);
  rep.add("s g(s) <= G(2s)", worst_upper, 0.0, thr.tol);
  rep.add("g- <= s g(s)/G(s)", worst_exp_lo, 0.0, 1e-8 * nf.g_minus());
  if (std::isfinite(nf.g_plus())) {
    rep.add("s g(s)/G(s) <= g+", worst_exp_hi, 0.0, 1e-8 * nf.g_plus());
  } else {
    rep.notes.push_back("g+ is infinite; upper exponent bound not checked");
  }
  rep.metric("grid_lo", grid.empty() ? 0.0 : grid.front());
  rep.metric("grid_hi", grid.empty() ? 0.0 : grid.back());
  rep.metric("grid_count", static_cast<double>(grid.size()));
  return rep;
}

NFunction parse_nfunction(const std::string& spec) {
  const bool table = spec.rfind("table:", 0) == 0;
  const auto fs = detail::parse_family_spec(spec, "N-function", !table);
  if (table) {
    const std::string& path = fs.rest;
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("N-function table '" + path + "' cannot be read");
    std::vector<double> s;
    std::vector<double> g;
    std::string line;
    while (std::getline(in, line)) {
      if (line.empty() || line[0] == '#') continue;
      std::istringstream ls(line);
      double a = 0.0;
      double b = 0.0;
      if (!(ls >> a >> b)) throw std::invalid_argument("N-function table '" + path + "': bad line '" + line + "'");
      s.push_back(a);
      g.push_back(b);
    }
    return NFunction::tabulated(std::move(s), std::move(g), spec);
  }
  if (fs.family == "power") {
    fs.allow({"p"});
    return NFunction::power(fs.need("p"));
  }
  if (fs.family == "mixed") {
    fs.allow({"p", "q"});
    return NFunction::mixed_power(fs.need("p"), fs.need("q"));
  }
  if (fs.family == "logpower") {
    fs.allow({"p"});
    return NFunction::log_power(fs.need("p"));
  }
  if (fs.family == "exp") {
    fs.allow({});
    return NFunction::exponential();
  }
  throw std::invalid_argument("unknown N-function family '" + fs.family + "'");
}

}  // namespace frac_orlicz
