#include "nscr/multipliers.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "nscr/symbols.hpp"

namespace nscr {

MultiplierParams::MultiplierParams(double nu_, double cutoff_) : nu(nu_), cutoff(cutoff_) {
  if (!(nu > 0.0) || !std::isfinite(nu)) throw std::invalid_argument("multiplier nu must be positive");
  if (!(cutoff > 0.0) || !std::isfinite(cutoff)) throw std::invalid_argument("multiplier cutoff must be positive");
}

double MultiplierParams::window() const { return cutoff / std::cbrt(nu); }

double stretching_multiplier(double t, const Wavevector& w, const MultiplierParams& prm) {
  if (w.k == 0) return 1.0;
  const double k = w.k, l = w.l;
  const double start = w.eta / k;
  const double end = start + prm.window();
  if (end < 0.0) return 1.0;
  const double kl2 = k * k + l * l;
  const double p_end = kl2 + (k * prm.window()) * (k * prm.window());
  if (start < 0.0) {
    const double num2 = kl2 + w.eta * w.eta;
    return std::min(1.0, std::sqrt(num2 / (t < end ? symbol_p(t, w) : p_end)));
  }
  if (t < start) return 1.0;
  return std::min(1.0, std::sqrt(kl2 / (t < end ? symbol_p(t, w) : p_end)));
}

double stretching_multiplier_rate(double t, const Wavevector& w, const MultiplierParams& prm) {
  if (w.k == 0) return 0.0;
  const double start = w.eta / w.k;
  const double end = start + prm.window();
  if (t < start || t >= end) return 0.0;
  return w.k * sheared_eta(t, w) / symbol_p(t, w);
}

double ghost_multiplier(double t, const Wavevector& w, const MultiplierParams& prm) {
  if (w.k == 0) return 1.0;
  const double c = std::cbrt(prm.nu);
  const double ratio = w.eta / w.k;
  return std::exp(std::atan(-c * ratio) - std::atan(c * (t - ratio)));
}

double ghost_multiplier_rate(double t, const Wavevector& w, const MultiplierParams& prm) {
  if (w.k == 0) return 0.0;
  const double c = std::cbrt(prm.nu);
  const double s = c * (t - w.eta / w.k);
  return -c / (s * s + 1.0);
}

double ghost_coercivity(double t, const Wavevector& w, const MultiplierParams& prm) {
  const double big_m = ghost_multiplier(t, w, prm);
  const double minus_mdot_m = -ghost_multiplier_rate(t, w, prm) * big_m * big_m;
  const double c = std::cbrt(prm.nu);
  return std::sqrt(minus_mdot_m) / std::sqrt(c) + c * std::sqrt(symbol_p(t, w));
}

}  // namespace nscr
