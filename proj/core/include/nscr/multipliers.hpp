#pragma once

#include "nscr/grid.hpp"

namespace nscr {

struct MultiplierParams {
  double nu = 1e-3;
  double cutoff = 1000.0;  // window length is cutoff * nu^{-1/3}

  MultiplierParams() = default;
  MultiplierParams(double nu, double cutoff = 1000.0);

  double window() const;
};

// Stretching compensator m(t, k, eta, l): closed form of the piecewise ODE
//   m'/m = k(eta - k t)/p  on [eta/k, eta/k + window),  0 elsewhere,  m(0) = 1.
double stretching_multiplier(double t, const Wavevector& w, const MultiplierParams& prm);
// m'/m, right-continuous at the window seams.
double stretching_multiplier_rate(double t, const Wavevector& w, const MultiplierParams& prm);

// Ghost weight M = exp[arctan(-nu^{1/3} eta/k) - arctan(nu^{1/3}(t - eta/k))], 1 for k = 0.
double ghost_multiplier(double t, const Wavevector& w, const MultiplierParams& prm);
// M'/M = -nu^{1/3} / (1 + nu^{2/3}(t - eta/k)^2).
double ghost_multiplier_rate(double t, const Wavevector& w, const MultiplierParams& prm);

// nu^{-1/6} sqrt(-M' M) + nu^{1/3} |k, eta - k t, l|; bounded below by a constant for k != 0.
double ghost_coercivity(double t, const Wavevector& w, const MultiplierParams& prm);

// Constant C with 1 <= C * ghost_coercivity for every k != 0 mode and t >= 0.
// Inside |t - eta/k| <= nu^{-1/3} one has M >= e^{-3pi/4} and -M'/M >= nu^{1/3}/2.
inline constexpr double kGhostCoercivityConstant = 14.920977078586793;  // sqrt(2) e^{3 pi / 4}

}  // namespace nscr
