#pragma once

#include <array>

#include "nscr/grid.hpp"

namespace nscr {

// Time-dependent symbols of the moving-frame operators at one mode.
struct ShearedSymbols {
  double p = 0.0;      // k^2 + (eta - k t)^2 + l^2, the symbol of -Delta_L
  double p_dot = 0.0;  // -2 k (eta - k t)
  std::array<Complex, 3> grad_l{};  // i (k, eta - k t, l)
};

inline double sheared_eta(double t, const Wavevector& w) { return w.eta - w.k * t; }

double symbol_p(double t, const Wavevector& w);
double symbol_p_dot(double t, const Wavevector& w);
std::array<Complex, 3> symbol_grad_l(double t, const Wavevector& w);
ShearedSymbols sheared_symbols(double t, const Wavevector& w);

// Exact integral of p over [a, b], written to avoid cancellation at large t.
double integrated_p(double a, double b, const Wavevector& w);

// exp(-nu * integral_a^b p), the per-mode viscous integrating factor.
double viscous_factor(double nu, double a, double b, const Wavevector& w);

}  // namespace nscr
