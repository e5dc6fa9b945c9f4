#include "frac_orlicz/sampling.hpp"

#include <algorithm>
#include <cmath>

namespace frac_orlicz {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace

std::mt19937_64 trial_rng(std::uint64_t seed, std::uint64_t trial) {
  std::seed_seq seq{splitmix64(seed), splitmix64(seed ^ splitmix64(trial + 1))};
  return std::mt19937_64(seq);
}

GridFunction hat(double T, int n, double centre, double half_width) {
  return GridFunction::sample(T, n, [&](double t) {
    return std::max(0.0, 1.0 - std::abs(t - centre) / half_width);
  });
}

GridFunction random_hat_combination(std::mt19937_64& rng, double T, int n, const HatOptions& opts) {
  std::uniform_int_distribution<int> count(1, std::max(1, opts.max_hats));
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<double> vals(static_cast<std::size_t>(n) + 1, 0.0);
  const int hats = count(rng);
  for (int k = 0; k < hats; ++k) {
    const double centre = T * unit(rng);
    const double width =
        T * (opts.min_half_width + (opts.max_half_width - opts.min_half_width) * unit(rng));
    const double amp = 2.0 * unit(rng) - 1.0;
    for (int j = 0; j <= n; ++j) {
      const double t = T * j / n;
      vals[static_cast<std::size_t>(j)] += amp * std::max(0.0, 1.0 - std::abs(t - centre) / width);
    }
  }
  if (opts.constant_offset && !opts.boundary_zero) {
    const double offset = 2.0 * unit(rng) - 1.0;
    for (double& v : vals) v += offset;
  }
  const double scale =
      std::pow(10.0, opts.log10_scale_lo + (opts.log10_scale_hi - opts.log10_scale_lo) * unit(rng));
  for (double& v : vals) v *= scale;
  if (opts.boundary_zero) {
    vals.front() = 0.0;
    vals.back() = 0.0;
  }
  return GridFunction(T, std::move(vals));
}

}  // namespace frac_orlicz
