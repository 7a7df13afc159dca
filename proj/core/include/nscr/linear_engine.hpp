#pragma once

#include <array>
#include <utility>

#include "nscr/grid.hpp"

namespace nscr {

struct PhysicsParams {
  double nu = 1e-2;
  double beta = 2.0;

  PhysicsParams() = default;
  // Requires nu >= 0 and beta(beta - 1) > 0, i.e. beta > 1 or beta < 0.
  PhysicsParams(double nu, double beta);

  // |beta| >= 2, the regime covered by the stability theory.
  bool in_theorem_regime() const;
  // sign(beta) sqrt(beta(beta - 1)): coupling between Q and K.
  double coupling() const;
  // sqrt(beta / (beta - 1)): K = i scale p^{1/2} W.
  double good_unknown_scale() const;
};

// Good unknowns of a k != 0 mode: Q = -p U^2, W = i(l U^1 - k U^3), K = i s p^{1/2} W.
struct NonzeroModeState {
  Complex q_hat;
  Complex k_hat;
  Complex w_hat;
};

NonzeroModeState make_nonzero_state(const Wavevector& w, double t, const PhysicsParams& prm, Complex q_hat,
                                    Complex w_hat);
NonzeroModeState nonzero_state_from_velocity(const Wavevector& w, double t, const PhysicsParams& prm,
                                             const std::array<Complex, 3>& u);
bool is_consistent(const NonzeroModeState& s, const Wavevector& w, double t, const PhysicsParams& prm,
                   double tol = 1e-12);

// Linear (Q, K) dynamics from 0 to t with an adaptive Dormand-Prince 5(4) integrator
// applied after removing the exact viscous factor. l = 0 is solved in closed form.
NonzeroModeState evolve_qk_mode(const Wavevector& w, const NonzeroModeState& s0, const PhysicsParams& prm,
                                double t, double tol = 1e-10);
NonzeroModeState evolve_qk_mode_from(const Wavevector& w, const NonzeroModeState& s0, const PhysicsParams& prm,
                                     double t0, double t1, double tol = 1e-10);

// m(t)^2 (|Q|^2 + |K|^2) <= e^{-nu k^2 t^3 / 12} (|Q0|^2 + |K0|^2) (1 + 1e-8).
bool decay_envelope_check(const Wavevector& w, const NonzeroModeState& s0, const PhysicsParams& prm, double t,
                          double cutoff = 1000.0);

// Velocity from (Q, W) through Delta_L U^2 = Q and incompressibility.
std::array<Complex, 3> reconstruct_velocity(const Wavevector& w, double t, Complex q_hat, Complex w_hat);

struct ZeroModeState {
  Complex u1_hat;
  Complex u2_hat;
  Complex u3_hat;
};

// Dispersion relation h = sqrt(beta(beta-1)) |l| / |eta, l| of the k = 0, l != 0 modes.
double inertial_frequency(double eta, int l, const PhysicsParams& prm);

ZeroModeState zero_mode_simple(double eta, int l, const PhysicsParams& prm, double t, const ZeroModeState& s0);
ZeroModeState zero_mode_double(double eta, const PhysicsParams& prm, double t, const ZeroModeState& s0);
// Non-rotating reference: u1 grows linearly from u2 before heat decay wins.
ZeroModeState classical_liftup(double eta, int l, double nu, double t, const ZeroModeState& s0);

// Eigenvalues -nu(eta^2 + l^2) +- i h of the k = 0 (u1, u2) system.
std::pair<Complex, Complex> eigen_structure(double eta, int l, const PhysicsParams& prm);
// The 2x2 (u1, u2) matrix whose spectrum eigen_structure returns; row-major.
std::array<double, 4> zero_mode_matrix(double eta, int l, const PhysicsParams& prm);

// (beta l^2 / (eta^2 + l^2)) |u1|^2 + (beta - 1) |u2|^2, conserved at nu = 0.
double zero_mode_invariant(double eta, int l, const PhysicsParams& prm, const ZeroModeState& s);

}  // namespace nscr
