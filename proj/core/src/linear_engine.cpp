#include "nscr/linear_engine.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "nscr/multipliers.hpp"
#include "nscr/symbols.hpp"

namespace nscr {

PhysicsParams::PhysicsParams(double nu_, double beta_) : nu(nu_), beta(beta_) {
  if (!(nu >= 0.0) || !std::isfinite(nu)) throw std::invalid_argument("nu must be finite and >= 0");
  if (!std::isfinite(beta) || !(beta * (beta - 1.0) > 0.0)) {
    throw std::invalid_argument("beta must satisfy beta > 1 or beta < 0");
  }
}

bool PhysicsParams::in_theorem_regime() const { return std::abs(beta) >= 2.0; }

double PhysicsParams::coupling() const { return std::copysign(std::sqrt(beta * (beta - 1.0)), beta); }

double PhysicsParams::good_unknown_scale() const { return std::sqrt(beta / (beta - 1.0)); }

NonzeroModeState make_nonzero_state(const Wavevector& w, double t, const PhysicsParams& prm, Complex q_hat,
                                    Complex w_hat) {
  const Complex k_hat = Complex(0.0, prm.good_unknown_scale() * std::sqrt(symbol_p(t, w))) * w_hat;
  return {q_hat, k_hat, w_hat};
}

NonzeroModeState nonzero_state_from_velocity(const Wavevector& w, double t, const PhysicsParams& prm,
                                             const std::array<Complex, 3>& u) {
  const Complex q = -symbol_p(t, w) * u[1];
  const Complex wv = Complex(0.0, 1.0) * (static_cast<double>(w.l) * u[0] - static_cast<double>(w.k) * u[2]);
  return make_nonzero_state(w, t, prm, q, wv);
}

bool is_consistent(const NonzeroModeState& s, const Wavevector& w, double t, const PhysicsParams& prm,
                   double tol) {
  const NonzeroModeState ref = make_nonzero_state(w, t, prm, s.q_hat, s.w_hat);
  const double scale = std::max({1.0, std::abs(s.k_hat), std::abs(ref.k_hat)});
  return std::abs(ref.k_hat - s.k_hat) <= tol * scale;
}

namespace {

// Inviscid (Q, K) right-hand side; the viscous part is carried by the integrating factor.
struct QkSystem {
  Wavevector w;
  double c;

  void operator()(double t, const std::array<Complex, 2>& y, std::array<Complex, 2>& dy) const {
    const double p = symbol_p(t, w);
    const double g = c * w.l / std::sqrt(p);
    dy[0] = -g * y[1];
    dy[1] = (symbol_p_dot(t, w) / (2.0 * p)) * y[1] + g * y[0];
  }
};

// Dormand-Prince 5(4) tableau.
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561, a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                 a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784, b6 = 11.0 / 84;
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920, e5 = -17253.0 / 339200,
                 e6 = 22.0 / 525, e7 = -1.0 / 40;

std::array<Complex, 2> integrate_dp45(const QkSystem& f, std::array<Complex, 2> y, double t0, double t1,
                                      double tol) {
  const double floor = tol * std::max(std::abs(y[0]), std::abs(y[1]));
  double t = t0;
  double h = std::min(0.1, t1 - t0);
  using V = std::array<Complex, 2>;
  V k1, k2, k3, k4, k5, k6, k7, ys, y5;
  auto comb = [&](std::initializer_list<std::pair<double, const V*>> terms) {
    V out = y;
    for (const auto& [a, kv] : terms)
      for (int i = 0; i < 2; ++i) out[i] += h * a * (*kv)[i];
    return out;
  };
  f(t, y, k1);
  long steps = 0;
  while (t < t1) {
    if (++steps > 50'000'000) throw std::runtime_error("evolve_qk_mode: step budget exhausted");
    h = std::min(h, t1 - t);
    ys = comb({{a21, &k1}});
    f(t + c2 * h, ys, k2);
    ys = comb({{a31, &k1}, {a32, &k2}});
    f(t + c3 * h, ys, k3);
    ys = comb({{a41, &k1}, {a42, &k2}, {a43, &k3}});
    f(t + c4 * h, ys, k4);
    ys = comb({{a51, &k1}, {a52, &k2}, {a53, &k3}, {a54, &k4}});
    f(t + c5 * h, ys, k5);
    ys = comb({{a61, &k1}, {a62, &k2}, {a63, &k3}, {a64, &k4}, {a65, &k5}});
    f(t + h, ys, k6);
    y5 = comb({{b1, &k1}, {b3, &k3}, {b4, &k4}, {b5, &k5}, {b6, &k6}});
    f(t + h, y5, k7);
    double err = 0.0;
    for (int i = 0; i < 2; ++i) {
      const Complex e = h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i] + e7 * k7[i]);
      const double sc = floor + tol * std::max(std::abs(y[i]), std::abs(y5[i]));
      err = std::max(err, std::abs(e) / sc);
    }
    if (err <= 1.0) {
      t = (t1 - t <= h) ? t1 : t + h;
      y = y5;
      k1 = k7;
    }
    const double factor = err == 0.0 ? 5.0 : std::clamp(0.9 * std::pow(err, -0.2), 0.2, 5.0);
    h *= factor;
  }
  return y;
}

}  // namespace

NonzeroModeState evolve_qk_mode_from(const Wavevector& w, const NonzeroModeState& s0, const PhysicsParams& prm,
                                     double t0, double t1, double tol) {
  if (w.k == 0) throw std::invalid_argument("evolve_qk_mode: k must be nonzero");
  if (!(t1 >= t0) || t0 < 0.0) throw std::invalid_argument("evolve_qk_mode: need 0 <= t0 <= t1");
  if (!(tol > 0.0)) throw std::invalid_argument("evolve_qk_mode: tolerance must be positive");
  const double decay = viscous_factor(prm.nu, t0, t1, w);
  const double scale = prm.good_unknown_scale();
  std::array<Complex, 2> y{s0.q_hat, s0.k_hat};
  if (w.l == 0) {
    y[1] *= std::sqrt(symbol_p(t1, w) / symbol_p(t0, w));
  } else if (t1 > t0 && (y[0] != Complex(0.0) || y[1] != Complex(0.0))) {
    y = integrate_dp45(QkSystem{w, prm.coupling()}, y, t0, t1, tol);
  }
  NonzeroModeState out;
  out.q_hat = decay * y[0];
  out.k_hat = decay * y[1];
  out.w_hat = out.k_hat / Complex(0.0, scale * std::sqrt(symbol_p(t1, w)));
  return out;
}

NonzeroModeState evolve_qk_mode(const Wavevector& w, const NonzeroModeState& s0, const PhysicsParams& prm,
                                double t, double tol) {
  return evolve_qk_mode_from(w, s0, prm, 0.0, t, tol);
}

bool decay_envelope_check(const Wavevector& w, const NonzeroModeState& s0, const PhysicsParams& prm, double t,
                          double cutoff) {
  if (w.k == 0) throw std::invalid_argument("decay_envelope_check: k must be nonzero");
  const NonzeroModeState s = evolve_qk_mode(w, s0, prm, t, 1e-12);
  const double m = stretching_multiplier(t, w, MultiplierParams(prm.nu, cutoff));
  const double lhs = m * m * (std::norm(s.q_hat) + std::norm(s.k_hat));
  const double k2 = static_cast<double>(w.k) * w.k;
  const double rhs = std::exp(-prm.nu * k2 * t * t * t / 12.0) * (std::norm(s0.q_hat) + std::norm(s0.k_hat));
  return lhs <= rhs * (1.0 + 1e-8);
}

std::array<Complex, 3> reconstruct_velocity(const Wavevector& w, double t, Complex q_hat, Complex w_hat) {
  const double k = w.k, l = w.l;
  const double kl2 = k * k + l * l;
  if (kl2 == 0.0) throw std::invalid_argument("reconstruct_velocity: k = l = 0 has no reconstruction");
  const double s = sheared_eta(t, w);
  const Complex i(0.0, 1.0);
  const Complex u2 = -q_hat / symbol_p(t, w);
  const Complex u1 = -(k * s * u2 + i * l * w_hat) / kl2;
  const Complex u3 = -(l * s * u2 - i * k * w_hat) / kl2;
  return {u1, u2, u3};
}

double inertial_frequency(double eta, int l, const PhysicsParams& prm) {
  if (l == 0) throw std::invalid_argument("inertial_frequency: l must be nonzero");
  return std::sqrt(prm.beta * (prm.beta - 1.0)) * std::abs(l) / std::hypot(eta, static_cast<double>(l));
}

ZeroModeState zero_mode_simple(double eta, int l, const PhysicsParams& prm, double t, const ZeroModeState& s0) {
  if (l == 0) throw std::invalid_argument("zero_mode_simple: l must be nonzero");
  const double beta = prm.beta;
  const double h = inertial_frequency(eta, l, prm);
  const double mag = std::hypot(eta, static_cast<double>(l));
  const double e = std::exp(-prm.nu * (eta * eta + static_cast<double>(l) * l) * t);
  const double c = std::cos(h * t), s = std::sin(h * t);
  const double root = std::sqrt(beta * (beta - 1.0));
  const double sgn_l = l > 0 ? 1.0 : -1.0;
  ZeroModeState out;
  out.u1_hat = e * (c * s0.u1_hat + ((beta - 1.0) / h) * s * s0.u2_hat);
  out.u2_hat = e * (c * s0.u2_hat - (h / (beta - 1.0)) * s * s0.u1_hat);
  out.u3_hat = e * (s0.u3_hat + (beta * eta * sgn_l / (mag * root)) * s * s0.u1_hat -
                    (eta / l) * (c - 1.0) * s0.u2_hat);
  return out;
}

ZeroModeState zero_mode_double(double eta, const PhysicsParams& prm, double t, const ZeroModeState& s0) {
  if (s0.u2_hat != Complex(0.0)) throw std::invalid_argument("zero_mode_double: u2 must vanish when l = 0");
  const double e = std::exp(-prm.nu * eta * eta * t);
  return {e * s0.u1_hat, Complex(0.0), e * s0.u3_hat};
}

ZeroModeState classical_liftup(double eta, int l, double nu, double t, const ZeroModeState& s0) {
  const double e = std::exp(-nu * (eta * eta + static_cast<double>(l) * l) * t);
  return {e * (s0.u1_hat - t * s0.u2_hat), e * s0.u2_hat, e * s0.u3_hat};
}

std::pair<Complex, Complex> eigen_structure(double eta, int l, const PhysicsParams& prm) {
  const double h = inertial_frequency(eta, l, prm);
  const double re = -prm.nu * (eta * eta + static_cast<double>(l) * l);
  return {Complex(re, h), Complex(re, -h)};
}

std::array<double, 4> zero_mode_matrix(double eta, int l, const PhysicsParams& prm) {
  if (l == 0) throw std::invalid_argument("zero_mode_matrix: l must be nonzero");
  const double p = eta * eta + static_cast<double>(l) * l;
  return {-prm.nu * p, prm.beta - 1.0, -prm.beta * l * l / p, -prm.nu * p};
}

double zero_mode_invariant(double eta, int l, const PhysicsParams& prm, const ZeroModeState& s) {
  const double p = eta * eta + static_cast<double>(l) * l;
  return prm.beta * l * l / p * std::norm(s.u1_hat) + (prm.beta - 1.0) * std::norm(s.u2_hat);
}

}  // namespace nscr
