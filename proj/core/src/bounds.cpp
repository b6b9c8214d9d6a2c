#include "chromatic/bounds.hpp"

#include <cmath>

#include "chromatic/error.hpp"

namespace chromatic::color {

Theorem1Bound theorem1_bound(int n, double k, double gamma) {
  require(n >= 2, Errc::InvalidInput, "bound formula needs n >= 2");
  require(k >= 1.0, Errc::InvalidInput, "bound formula needs k >= 1");
  require(gamma >= 1.0, Errc::InvalidInput, "bound formula needs gamma >= 1");
  const double nd = n;
  Theorem1Bound out;
  out.bracket = nd * std::log(nd) + nd * std::log(std::log(nd)) + 2.0 * std::log(k) +
                2.0 * nd * (1.0 + std::log(2.0 * gamma));
  require(out.bracket > 0.0, Errc::InvalidInput, "bound bracket is not positive");
  out.ln_value = nd * std::log1p(gamma) + std::log(out.bracket);
  out.small_n_warning = (n == 2);
  return out;
}

double butler_bound_ln(int n, double ln_vol_ratio, double c) {
  require(n >= 3, Errc::InvalidInput, "bound formula needs n >= 3");
  require(ln_vol_ratio >= 0.0, Errc::InvalidInput, "volume ratio must be >= 1");
  const double ln_n = std::log(static_cast<double>(n));
  return std::exp((ln_vol_ratio + (std::log2(ln_n) + c) * ln_n) / n);
}

double butler_bound(int n, double vol_ratio, double c) {
  require(vol_ratio >= 1.0, Errc::InvalidInput, "volume ratio must be >= 1");
  return butler_bound_ln(n, std::log(vol_ratio), c);
}

double finite_run_bound(int max_set_size, double tau_star) {
  require(max_set_size >= 1, Errc::InvalidInput, "max set size must be >= 1");
  require(tau_star > 0.0, Errc::InvalidInput, "fractional value must be positive");
  return (1.0 + std::log(static_cast<double>(max_set_size))) * tau_star;
}

}  // namespace chromatic::color
