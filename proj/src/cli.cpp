#include "frac_orlicz/cli.hpp"

#include <CLI11.hpp>
#include <fmt/format.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <numbers>
#include <optional>
#include <set>
#include <sstream>
#include <tuple>

#include "family_spec.hpp"
#include "frac_orlicz/bvp.hpp"
#include "frac_orlicz/fractional_ops.hpp"
#include "frac_orlicz/gamma.hpp"
#include "frac_orlicz/nfunction.hpp"
#include "frac_orlicz/orlicz.hpp"
#include "frac_orlicz/parallel.hpp"
#include "frac_orlicz/sampling.hpp"
#include "frac_orlicz/space.hpp"

namespace frac_orlicz::cli {

namespace {

const std::vector<std::string> kProps = {"norm-modular", "seminorm-modular", "integral-bound",
                                         "holder-modulus", "embedding", "equicontinuity"};
const std::vector<std::string> kOps = {"caputo-left",      "caputo-right",      "rl-integral-left",
                                       "rl-integral-right", "rl-derivative-left", "composition"};

std::string num(double x) { return fmt::format("{:.17g}", x); }

bool contains(const std::vector<std::string>& list, const std::string& s) {
  return std::find(list.begin(), list.end(), s) != list.end();
}

double parse_double(const std::string& key, const std::string& s) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (s.empty() || used != s.size() || !std::isfinite(v)) throw ConfigError(key, "'" + s + "' is not a number");
  return v;
}

long long parse_int(const std::string& key, const std::string& s) {
  std::size_t used = 0;
  long long v = 0;
  try {
    v = std::stoll(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (s.empty() || used != s.size()) throw ConfigError(key, "'" + s + "' is not an integer");
  return v;
}

std::uint64_t parse_seed(const std::string& key, const std::string& s) {
  std::size_t used = 0;
  unsigned long long v = 0;
  try {
    v = std::stoull(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (s.empty() || used != s.size() || s[0] == '-') throw ConfigError(key, "'" + s + "' is not a seed");
  return v;
}

bool parse_bool(const std::string& key, const std::string& s) {
  if (s == "1" || s == "true" || s == "yes" || s == "on") return true;
  if (s == "0" || s == "false" || s == "no" || s == "off") return false;
  throw ConfigError(key, "'" + s + "' is not a boolean");
}

std::vector<int> parse_ladder(const std::string& key, const std::string& s) {
  std::vector<int> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const long long v = parse_int(key, item);
    if (v < 2) throw ConfigError(key, "grid sizes must be at least 2");
    out.push_back(static_cast<int>(v));
  }
  if (out.size() < 2) throw ConfigError(key, "needs at least two grid sizes");
  for (std::size_t i = 1; i < out.size(); ++i) {
    if (out[i] <= out[i - 1]) throw ConfigError(key, "grid sizes must increase");
  }
  return out;
}

// Closed-form test functions: v and, for monomials, the exponent.
struct InputFunction {
  std::function<double(double)> f;
  std::optional<double> monomial;  // v = t^nu
};

InputFunction parse_function(const std::string& spec, double T) {
  if (spec == "one") return {[](double) { return 1.0; }, 0.0};
  if (spec == "t") return {[](double t) { return t; }, 1.0};
  if (spec == "t2") return {[](double t) { return t * t; }, 2.0};
  if (spec == "sin") return {[T](double t) { return std::sin(std::numbers::pi * t / T); }, std::nullopt};
  const auto fs = detail::parse_family_spec(spec, "function");
  if (fs.family == "tpow") {
    fs.allow({"nu"});
    const double nu = fs.need("nu");
    if (!(nu >= 0.0)) throw std::invalid_argument("function 'tpow' needs nu >= 0");
    return {[nu](double t) { return std::pow(t, nu); }, nu};
  }
  throw std::invalid_argument("unknown function '" + spec + "'");
}

Nonlinearity nonlinearity_from(const Config& cfg) {
  std::string spec = cfg.at("nonlinearity");
  if (spec.find(':') == std::string::npos && spec != "zero") spec += ":mu=" + cfg.at("mu");
  return parse_nonlinearity(spec);
}

struct Settings {
  NFunction nf = NFunction::power(2.0);
  FracParams frac;
  int trials = 1;
  std::uint64_t seed = 1;
  double tol = 1e-6;
  std::size_t workers = 0;
  std::filesystem::path out_dir;
};

Settings settings_from(const Config& cfg) {
  Settings s;
  s.nf = parse_nfunction(cfg.at("nfunction"));
  s.frac.alpha = std::stod(cfg.at("alpha"));
  s.frac.T = std::stod(cfg.at("T"));
  s.frac.n = std::stoi(cfg.at("n"));
  s.trials = std::stoi(cfg.at("trials"));
  s.seed = std::stoull(cfg.at("seed"));
  s.tol = std::stod(cfg.at("tol"));
  s.workers = static_cast<std::size_t>(std::stoll(cfg.at("workers")));
  s.out_dir = cfg.at("output_dir");
  return s;
}

std::ofstream open_output(const Settings& s, const std::string& name) {
  std::filesystem::create_directories(s.out_dir);
  const auto path = s.out_dir / name;
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
  return out;
}

void write_report_rows(std::ostream& csv, long long trial, const Report& rep) {
  for (const auto& c : rep.checks) {
    csv << trial << ',' << c.label << ',' << num(c.lhs) << ',' << num(c.rhs) << ',' << num(c.slack()) << ','
        << num(c.budget) << ',' << (c.violated() ? "violation" : "ok") << '\n';
  }
  for (const auto& c : rep.informational) {
    csv << trial << ',' << c.label << ',' << num(c.lhs) << ',' << num(c.rhs) << ',' << num(c.slack()) << ','
        << num(c.budget) << ",info\n";
  }
  for (const auto& [k, v] : rep.metrics) {
    csv << trial << ',' << k << ',' << num(v) << ",,,,metric\n";
  }
}

constexpr const char* kReportHeader = "trial,check,lhs,rhs,slack,budget,status\n";

// --- subcommands ---------------------------------------------------------

int cmd_nfcheck(const Config& cfg, std::ostream& out) {
  const auto s = settings_from(cfg);
  const auto grid = default_sample_grid();
  auto csv = open_output(s, "nfcheck.csv");
  csv << config_comment(cfg) << '\n' << kReportHeader;
  std::size_t violations = 0;

  auto inv = check_nfunction_invariants(s.nf, grid);
  write_report_rows(csv, 0, inv);
  violations += inv.violations();

  Report st;
  st.name = "structural conditions";
  const auto d2 = check_delta2(s.nf, grid);
  st.add("Delta2 ratio bounded by cap", d2.k, 1e6, 0.0);
  st.metric("delta2_k", d2.k);
  try {
    const auto ge = estimate_growth_exponents(s.nf, grid);
    st.metric("g_minus", ge.g_minus);
    st.metric("g_plus", ge.g_plus);
    st.add("1 < g-", 1.0, ge.g_minus, -std::numeric_limits<double>::min());
    st.add("sampled exponent range consistent", ge.consistent ? 0.0 : 1.0, 0.0, 0.0);
  } catch (const ConditionViolation& e) {
    st.add(std::string("growth exponents: ") + e.what(), 1.0, 0.0, 0.0);
  }
  const bool sqrt_convex = check_sqrt_convexity(s.nf, grid);
  st.add("G(sqrt s) convex", sqrt_convex ? 0.0 : 1.0, 0.0, 0.0);
  if (d2.bounded) st.metric("young_constant", estimate_young_constant(s.nf, log_grid(1e-4, 1e4, 200)));
  write_report_rows(csv, 0, st);
  violations += st.violations();

  out << fmt::format("nfcheck {}: {} violation(s)\n", s.nf.name(), violations);
  return violations == 0 ? kPass : kViolation;
}

GridFunction load_input(const Config& cfg, const Settings& s) {
  const auto& input = cfg.at("input");
  if (!input.empty()) {
    auto v = load_grid_function(input);
    return v;
  }
  const auto fn = parse_function(cfg.at("function"), s.frac.T);
  return GridFunction::sample(s.frac.T, s.frac.n, fn.f);
}

int cmd_fracop(const Config& cfg, std::ostream& out) {
  auto s = settings_from(cfg);
  const auto v = load_input(cfg, s);
  s.frac.T = v.T();
  s.frac.n = v.n();
  const auto& op = cfg.at("op");
  std::vector<double> result;
  std::vector<double> residual_col;
  if (op == "caputo-left") {
    const auto r = caputo_left(v, s.frac);
    result.assign(r.values().begin(), r.values().end());
  } else if (op == "caputo-right") {
    const auto r = caputo_right(v, s.frac);
    result.assign(r.values().begin(), r.values().end());
  } else if (op == "rl-integral-left") {
    const auto r = rl_integral_left(v, s.frac);
    result.assign(r.values().begin(), r.values().end());
  } else if (op == "rl-integral-right") {
    const auto r = rl_integral_right(v, s.frac);
    result.assign(r.values().begin(), r.values().end());
  } else if (op == "rl-derivative-left") {
    result = rl_derivative_left(v, s.frac).values;
  } else {
    const auto r = rl_integral_left(caputo_left(v, s.frac), s.frac);
    result.assign(r.values().begin(), r.values().end());
  }
  auto csv = open_output(s, "fracop.csv");
  csv << config_comment(cfg) << '\n' << "t,input,output\n";
  for (int j = 0; j <= v.n(); ++j) {
    csv << num(v.t(j)) << ',' << num(v[j]) << ',' << (std::isfinite(result[j]) ? num(result[j]) : "nan") << '\n';
  }
  bool singular = false;
  std::vector<double> finite = result;
  if (!std::isfinite(finite[0])) {
    singular = true;
    finite[0] = 0.0;
  }
  {
    auto gf = open_output(s, "fracop_output.txt");
    if (singular) gf << "# singular value at t=0 replaced by 0\n";
    write_grid_function(gf, GridFunction(v.T(), finite));
  }
  out << fmt::format("fracop {}: alpha={} n={}{}\n", op, s.frac.alpha, v.n(),
                     singular ? " (singular node at t=0)" : "");
  if (op == "composition") {
    out << fmt::format("composition residual {}\n", num(composition_residual(v, s.frac)));
  }
  return kPass;
}

int cmd_verify(const Config& cfg, std::ostream& out) {
  const auto s = settings_from(cfg);
  s.frac.validate();
  const auto& prop = cfg.at("prop");
  const double M = std::stod(cfg.at("M"));
  const auto& nf = s.nf;
  const auto& p = s.frac;

  std::optional<EmbeddingConstants> k;
  if (prop == "holder-modulus" || prop == "embedding" || prop == "equicontinuity") {
    const double C = estimate_holder_constant(nf, p.T, p.n, std::min(s.trials, 200), s.seed);
    k = embedding_constants(nf, p.alpha, C);
  }

  auto trial = [&](std::size_t i) -> Report {
    auto rng = trial_rng(s.seed, i);
    HatOptions opts;
    if (prop == "norm-modular") {
      opts.boundary_zero = false;
      opts.constant_offset = true;
      return verify_norm_modular_relations(nf, random_hat_combination(rng, p.T, p.n, opts));
    }
    if (prop == "seminorm-modular") {
      opts.boundary_zero = false;
      opts.constant_offset = true;
      return verify_seminorm_modular(nf, SpaceElement(random_hat_combination(rng, p.T, p.n, opts), p));
    }
    if (prop == "integral-bound") {
      opts.boundary_zero = false;
      opts.constant_offset = true;
      return verify_integral_bound(nf, random_hat_combination(rng, p.T, p.n, opts), p);
    }
    if (prop == "holder-modulus") {
      opts.boundary_zero = false;
      opts.constant_offset = true;
      return holder_modulus_check(nf, random_hat_combination(rng, p.T, p.n, opts), p, *k);
    }
    const auto e = SpaceElement::boundary_zero(random_hat_combination(rng, p.T, p.n, opts), p);
    if (prop == "embedding") return verify_embedding_bounds(nf, e, *k);
    // equicontinuity: rescale into the seminorm ball of radius M
    const double semi = seminorm(nf, e);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const double f = semi > 0.0 ? M * unit(rng) / semi : 1.0;
    return equicontinuity_certificate(nf, {e.scaled(f)}, M, *k);
  };
  const auto reports = parallel_map(static_cast<std::size_t>(s.trials), trial, s.workers);

  auto csv = open_output(s, "verify_" + prop + ".csv");
  csv << config_comment(cfg) << '\n' << kReportHeader;
  if (prop == "integral-bound" || prop == "embedding" || prop == "holder-modulus" || prop == "equicontinuity") {
    write_report_rows(csv, -1, check_kernel_assumption(p));
  }
  for (std::size_t i = 0; i < reports.size(); ++i) write_report_rows(csv, static_cast<long long>(i), reports[i]);
  const auto sum = summarize_sweep(reports);
  out << fmt::format("verify {} {}: trials={} violations={} min_slack={}\n", prop, nf.name(), sum.trials,
                     sum.violations, num(sum.min_slack));
  return sum.violations == 0 ? kPass : kViolation;
}

int cmd_solve(const Config& cfg, std::ostream& out, std::ostream& err) {
  const auto s = settings_from(cfg);
  const auto nl = nonlinearity_from(cfg);
  SolverConfig sc;
  sc.tol = s.tol;
  sc.path_states = std::stoi(cfg.at("path_states"));
  sc.max_iterations = std::stoi(cfg.at("max_iterations"));
  sc.newton_max = std::stoi(cfg.at("newton_max"));
  sc.force = cfg.at("force") == "true" || cfg.at("force") == "1" || cfg.at("force") == "yes" ||
             cfg.at("force") == "on";
  sc.geometry.seed = s.seed;
  sc.geometry.sphere_samples = std::stoi(cfg.at("sphere_samples"));
  try {
    const auto res = mountain_pass_solve(s.nf, nl, s.frac, sc);
    {
      auto gf = open_output(s, "solve_solution.txt");
      write_grid_function(gf, res.solution.v());
    }
    auto csv = open_output(s, "solve_report.csv");
    csv << config_comment(cfg) << '\n'
        << "iteration,stage,energy,residual,seminorm,step,branch,R,beta,e_scale\n";
    for (const auto& h : res.history) {
      csv << h.iteration << ',' << h.stage << ',' << num(h.path_max_energy) << ',' << num(h.residual) << ','
          << num(h.seminorm) << ',' << num(h.step) << ',' << h.branch << ',' << num(res.geometry.R) << ','
          << num(res.geometry.beta) << ',' << num(res.geometry.e_scale) << '\n';
    }
    out << fmt::format("solve: energy={} residual={} seminorm={} R={} beta={} iterations={}\n", num(res.energy),
                       num(res.weak_residual), num(res.seminorm), num(res.geometry.R), num(res.geometry.beta),
                       res.iterations);
    return kPass;
  } catch (const SolveError& e) {
    err << "solve failed: " << e.what() << '\n';
    return kViolation;
  }
}

double exact_value(const std::string& op, double nu, double alpha, double t) {
  if (op == "caputo-left" || op == "rl-derivative-left") {
    if (nu == 0.0) return op == "caputo-left" ? 0.0 : std::pow(t, -alpha) / gamma_fn(1.0 - alpha);
    return gamma_fn(nu + 1.0) / gamma_fn(nu + 1.0 - alpha) * std::pow(t, nu - alpha);
  }
  if (op == "rl-integral-left") return gamma_fn(nu + 1.0) / gamma_fn(nu + 1.0 + alpha) * std::pow(t, nu + alpha);
  return nu == 0.0 ? 0.0 : std::pow(t, nu);  // composition: v - v(0)
}

int cmd_converge(const Config& cfg, std::ostream& out, std::ostream& err) {
  const auto s = settings_from(cfg);
  const auto ladder = parse_ladder("ladder", cfg.at("ladder"));
  const auto& op = cfg.at("op");
  if (op == "caputo-right" || op == "rl-integral-right") {
    err << "converge supports left-sided operators and composition only\n";
    return kUsage;
  }
  const auto fn = parse_function(cfg.at("function"), s.frac.T);
  if (!fn.monomial) {
    err << "converge needs a monomial function (one, t, t2 or tpow:nu=...)\n";
    return kUsage;
  }
  struct Row {
    int n;
    double h, error, order;
  };
  std::vector<Row> rows;
  for (int n : ladder) {
    FracParams p = s.frac;
    p.n = n;
    const auto v = GridFunction::sample(p.T, n, fn.f);
    std::vector<double> got;
    if (op == "caputo-left") {
      const auto r = caputo_left(v, p);
      got.assign(r.values().begin(), r.values().end());
    } else if (op == "rl-integral-left") {
      const auto r = rl_integral_left(v, p);
      got.assign(r.values().begin(), r.values().end());
    } else if (op == "rl-derivative-left") {
      got = rl_derivative_left(v, p).values;
    } else {
      const auto r = rl_integral_left(caputo_left(v, p), p);
      got.assign(r.values().begin(), r.values().end());
    }
    double e = 0.0;
    for (int j = 1; j <= n; ++j) {
      e = std::max(e, std::abs(got[j] - exact_value(op, *fn.monomial, p.alpha, v.t(j))));
    }
    const double order = rows.empty() ? std::nan("") : std::log(rows.back().error / e) / std::log(static_cast<double>(n) / rows.back().n);
    rows.push_back({n, p.h(), e, order});
  }
  auto csv = open_output(s, "converge.csv");
  csv << config_comment(cfg) << '\n' << "n,h,max_error,observed_order\n";
  bool decreasing = true;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    csv << rows[i].n << ',' << num(rows[i].h) << ',' << num(rows[i].error) << ','
        << (i == 0 ? std::string() : num(rows[i].order)) << '\n';
    if (i > 0 && !(rows[i].error < rows[i - 1].error) && rows[i - 1].error > 1e-13) decreasing = false;
    out << fmt::format("n={} error={}{}\n", rows[i].n, num(rows[i].error),
                       i == 0 ? std::string() : " order=" + num(rows[i].order));
  }
  return decreasing ? kPass : kViolation;
}

const std::set<std::string>& known_keys() {
  static const std::set<std::string> keys = [] {
    std::set<std::string> k;
    for (const auto& [key, v] : default_config()) k.insert(key);
    return k;
  }();
  return keys;
}

}  // namespace

Config default_config() {
  return {{"nfunction", "power:p=2"},
          {"alpha", "0.5"},
          {"T", "1"},
          {"n", "128"},
          {"ladder", "64,128,256,512"},
          {"trials", "100"},
          {"seed", "1"},
          {"tol", "1e-6"},
          {"output_dir", "."},
          {"workers", "0"},
          {"prop", "seminorm-modular"},
          {"op", "caputo-left"},
          {"input", ""},
          {"function", "t"},
          {"nonlinearity", "power:mu=6"},
          {"mu", "6"},
          {"M", "1"},
          {"path_states", "20"},
          {"max_iterations", "2000"},
          {"newton_max", "50"},
          {"sphere_samples", "1000"},
          {"force", "false"}};
}

Config read_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config", "cannot read file '" + path + "'");
  Config cfg;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    line = line.substr(first, line.find_last_not_of(" \t\r") - first + 1);
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError(line, "line " + std::to_string(lineno) + " is not of the form key = value");
    }
    auto trim = [](std::string s) {
      const auto a = s.find_first_not_of(" \t");
      if (a == std::string::npos) return std::string();
      return s.substr(a, s.find_last_not_of(" \t") - a + 1);
    };
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (!known_keys().count(key)) throw ConfigError(key, "unknown key");
    cfg[key] = value;
  }
  if (cfg.empty()) throw ConfigError("config", "file '" + path + "' defines no keys");
  return cfg;
}

void validate_config(const Config& cfg) {
  for (const auto& [key, value] : cfg) {
    if (!known_keys().count(key)) throw ConfigError(key, "unknown key");
  }
  auto get = [&](const std::string& key) -> const std::string& {
    auto it = cfg.find(key);
    if (it == cfg.end()) throw ConfigError(key, "missing");
    return it->second;
  };
  auto wrap = [&](const std::string& key, auto&& fn) {
    try {
      fn();
    } catch (const ConfigError&) {
      throw;
    } catch (const std::exception& e) {
      throw ConfigError(key, e.what());
    }
  };
  wrap("nfunction", [&] { parse_nfunction(get("nfunction")); });
  const double alpha = parse_double("alpha", get("alpha"));
  if (!(alpha > 0.0 && alpha < 1.0)) throw ConfigError("alpha", "must lie in (0, 1)");
  if (!(parse_double("T", get("T")) > 0.0)) throw ConfigError("T", "must be positive");
  if (parse_int("n", get("n")) < 2) throw ConfigError("n", "must be at least 2");
  parse_ladder("ladder", get("ladder"));
  if (parse_int("trials", get("trials")) < 1) throw ConfigError("trials", "must be at least 1");
  parse_seed("seed", get("seed"));
  if (!(parse_double("tol", get("tol")) > 0.0)) throw ConfigError("tol", "must be positive");
  if (get("output_dir").empty()) throw ConfigError("output_dir", "must not be empty");
  if (parse_int("workers", get("workers")) < 0) throw ConfigError("workers", "must be nonnegative");
  if (!contains(kProps, get("prop"))) throw ConfigError("prop", "unknown property '" + get("prop") + "'");
  if (!contains(kOps, get("op"))) throw ConfigError("op", "unknown operator '" + get("op") + "'");
  wrap("function", [&] { parse_function(get("function"), 1.0); });
  if (!(parse_double("mu", get("mu")) > 1.0)) throw ConfigError("mu", "must exceed 1");
  wrap("nonlinearity", [&] { nonlinearity_from(cfg); });
  if (!(parse_double("M", get("M")) > 0.0)) throw ConfigError("M", "must be positive");
  if (parse_int("path_states", get("path_states")) < 3) throw ConfigError("path_states", "must be at least 3");
  if (parse_int("max_iterations", get("max_iterations")) < 0) throw ConfigError("max_iterations", "must be nonnegative");
  if (parse_int("newton_max", get("newton_max")) < 0) throw ConfigError("newton_max", "must be nonnegative");
  if (parse_int("sphere_samples", get("sphere_samples")) < 1) throw ConfigError("sphere_samples", "must be at least 1");
  parse_bool("force", get("force"));
}

std::string config_comment(const Config& cfg) {
  std::string s = "# config:";
  for (const auto& [k, v] : cfg) s += " " + k + "=" + v;
  return s;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Fractional Caputo-derivative Orlicz space toolkit", "frac-orlicz"};
  app.require_subcommand(1, 1);
  std::string config_path;
  std::map<std::string, std::string> flag_values;
  std::vector<std::tuple<std::string, std::string, CLI::Option*>> flag_options;
  bool force_flag = false;
  CLI::Option* force_opt = nullptr;

  struct FlagSpec {
    const char* names;
    const char* key;
    const char* help;
  };
  const std::vector<FlagSpec> common = {
      {"--nf,--nfunction", "nfunction", "N-function: power:p=2 | mixed:p=2,q=4 | logpower:p=2 | exp | table:<file>"},
      {"--alpha", "alpha", "fractional order in (0,1)"},
      {"--T", "T", "right endpoint of [0,T]"},
      {"--n", "n", "number of subintervals"},
      {"--trials", "trials", "number of random trials"},
      {"--seed", "seed", "random seed"},
      {"--tol", "tol", "tolerance"},
      {"--out,--output-dir", "output_dir", "output directory"},
      {"--workers", "workers", "worker threads (0 = all cores)"},
  };
  struct Sub {
    const char* name;
    const char* help;
    std::vector<FlagSpec> extra;
  };
  const std::vector<Sub> subs = {
      {"nfcheck", "check N-function invariants and structural conditions", {}},
      {"fracop",
       "apply a fractional operator to a grid function",
       {{"--op", "op", "caputo-left | caputo-right | rl-integral-left | rl-integral-right | rl-derivative-left | composition"},
        {"--input", "input", "grid function file (# T=.. n=.. header)"},
        {"--function", "function", "one | t | t2 | sin | tpow:nu=<nu> when no input file is given"}}},
      {"verify",
       "randomized inequality sweep",
       {{"--prop", "prop", "norm-modular | seminorm-modular | integral-bound | holder-modulus | embedding | equicontinuity"},
        {"--M", "M", "seminorm radius for equicontinuity"}}},
      {"solve",
       "mountain-pass solve of the boundary value problem",
       {{"--nl,--nonlinearity", "nonlinearity", "power:mu=6 | perturbed:mu=6 | sum:mu=6,q=8 | zero"},
        {"--mu", "mu", "exponent when the nonlinearity omits it"},
        {"--path-states", "path_states", "states on the mountain-pass path"},
        {"--max-iterations", "max_iterations", "path-descent iteration cap"},
        {"--newton-max", "newton_max", "Newton iteration cap"},
        {"--sphere-samples", "sphere_samples", "random directions on the geometry sphere"}}},
      {"converge",
       "grid-refinement study against closed forms",
       {{"--ladder", "ladder", "comma-separated increasing grid sizes"},
        {"--op", "op", "caputo-left | rl-integral-left | rl-derivative-left | composition"},
        {"--function", "function", "one | t | t2 | tpow:nu=<nu>"}}},
  };
  std::vector<CLI::App*> sub_apps;
  for (const auto& sub : subs) {
    auto* sa = app.add_subcommand(sub.name, sub.help);
    sa->add_option("--config", config_path, "key = value configuration file");
    auto add = [&](const FlagSpec& f) {
      auto* opt = sa->add_option(f.names, flag_values[std::string(sub.name) + "/" + f.key], f.help);
      flag_options.emplace_back(sub.name, f.key, opt);
    };
    for (const auto& f : common) add(f);
    for (const auto& f : sub.extra) add(f);
    if (std::string(sub.name) == "solve") {
      force_opt = sa->add_flag("--force", force_flag, "run even when the nonlinearity fails the AR check");
    }
    sub_apps.push_back(sa);
  }

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kPass;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kPass;
  } catch (const CLI::ParseError& e) {
    err << e.what() << '\n';
    return kUsage;
  }
  CLI::App* chosen = nullptr;
  for (auto* sa : sub_apps) {
    if (sa->parsed()) chosen = sa;
  }
  if (!chosen) {
    err << "no subcommand given\n";
    return kUsage;
  }

  Config cfg = default_config();
  try {
    if (!config_path.empty()) {
      for (const auto& [k, v] : read_config_file(config_path)) cfg[k] = v;
    }
    if (const char* env = std::getenv("FRAC_ORLICZ_SEED"); env && *env) cfg["seed"] = env;
    for (const auto& [sub, key, opt] : flag_options) {
      if (opt->count() > 0 && sub == chosen->get_name()) {
        cfg[key] = flag_values[chosen->get_name() + "/" + key];
      }
    }
    if (force_opt && force_opt->count() > 0 && force_flag) cfg["force"] = "true";
    validate_config(cfg);
  } catch (const ConfigError& e) {
    err << e.what() << '\n';
    return kUsage;
  }

  const std::string name = chosen->get_name();
  try {
    if (name == "nfcheck") return cmd_nfcheck(cfg, out);
    if (name == "fracop") return cmd_fracop(cfg, out);
    if (name == "verify") return cmd_verify(cfg, out);
    if (name == "solve") return cmd_solve(cfg, out, err);
    return cmd_converge(cfg, out, err);
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }
}

int run(int argc, const char* const* argv) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return run(args, std::cout, std::cerr);
}

}  // namespace frac_orlicz::cli
