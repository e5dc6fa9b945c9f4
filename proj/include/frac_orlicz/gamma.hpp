#pragma once

namespace frac_orlicz {

/// Gamma function by the Lanczos approximation (g = 7, nine terms), with the
/// reflection formula below x = 1/2. Relative error is below 1e-13 on the
/// positive axis. Throws std::domain_error at the poles 0, -1, -2, ...
double gamma_fn(double x);

}  // namespace frac_orlicz
