#pragma once

#include <cstdint>
#include <random>

#include "frac_orlicz/grid_function.hpp"

namespace frac_orlicz {

/// Independent generator for one trial of a sweep. Streams depend only on
/// (seed, trial), so results do not depend on scheduling.
std::mt19937_64 trial_rng(std::uint64_t seed, std::uint64_t trial);

struct HatOptions {
  int max_hats = 6;
  double min_half_width = 1.0 / 16.0;  // fractions of T
  double max_half_width = 0.5;
  double log10_scale_lo = -1.0;
  double log10_scale_hi = 1.0;
  /// Force v(0) = v(T) = 0 (membership in the boundary-zero subspace).
  bool boundary_zero = true;
  /// Add a random constant offset (only meaningful without boundary_zero).
  bool constant_offset = false;
};

/// Random combination of 1..max_hats hat functions with random centres, widths
/// and amplitudes in [-1, 1], times a log-uniform overall scale.
GridFunction random_hat_combination(std::mt19937_64& rng, double T, int n, const HatOptions& opts = {});

/// A single hat of unit height centred at c with half-width w (nodal sample).
GridFunction hat(double T, int n, double centre, double half_width);

}  // namespace frac_orlicz
