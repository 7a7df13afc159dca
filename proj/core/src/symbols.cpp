#include "nscr/symbols.hpp"

#include <cmath>

namespace nscr {

double symbol_p(double t, const Wavevector& w) {
  const double s = sheared_eta(t, w);
  return static_cast<double>(w.k) * w.k + s * s + static_cast<double>(w.l) * w.l;
}

double symbol_p_dot(double t, const Wavevector& w) { return -2.0 * w.k * sheared_eta(t, w); }

std::array<Complex, 3> symbol_grad_l(double t, const Wavevector& w) {
  return {Complex(0.0, w.k), Complex(0.0, sheared_eta(t, w)), Complex(0.0, w.l)};
}

ShearedSymbols sheared_symbols(double t, const Wavevector& w) {
  return {symbol_p(t, w), symbol_p_dot(t, w), symbol_grad_l(t, w)};
}

double integrated_p(double a, double b, const Wavevector& w) {
  const double ua = sheared_eta(a, w);
  const double ub = sheared_eta(b, w);
  const double kl = static_cast<double>(w.k) * w.k + static_cast<double>(w.l) * w.l;
  return (b - a) * (kl + (ua * ua + ua * ub + ub * ub) / 3.0);
}

double viscous_factor(double nu, double a, double b, const Wavevector& w) {
  return std::exp(-nu * integrated_p(a, b, w));
}

}  // namespace nscr
