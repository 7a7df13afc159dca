#include <gtest/gtest.h>

#include <Eigen/Eigenvalues>

#include "nscr/decay_fit.hpp"
#include "nscr/linear_engine.hpp"
#include "nscr/spectral_field.hpp"
#include "nscr/symbols.hpp"
#include "test_support.hpp"

using namespace nscr;
using nscr::testing::CVec;
using nscr::testing::Rng;

namespace {

CVec<3> divfree_velocity(const Wavevector& w, double t, Rng& rng) {
  CVec<3> u{rng.complex(), rng.complex(), rng.complex()};
  const double xi[3] = {static_cast<double>(w.k), sheared_eta(t, w), static_cast<double>(w.l)};
  const double p = symbol_p(t, w);
  const Complex d = xi[0] * u[0] + xi[1] * u[1] + xi[2] * u[2];
  for (int i = 0; i < 3; ++i) u[i] -= xi[i] * d / p;
  return u;
}

CVec<3> reference_velocity(const Wavevector& w, const PhysicsParams& prm, const CVec<3>& u0, double t, long steps) {
  const std::function<CVec<3>(double, const CVec<3>&)> f = [&](double s, const CVec<3>& u) {
    return nscr::testing::linear_velocity_rhs(w, prm.nu, prm.beta, s, u);
  };
  return nscr::testing::rk4_richardson<3>(f, u0, 0.0, t, steps);
}

double rel_err(const CVec<3>& a, const CVec<3>& b) {
  double num = 0.0, den = 0.0;
  for (int i = 0; i < 3; ++i) {
    num += std::norm(a[i] - b[i]);
    den += std::norm(b[i]);
  }
  return std::sqrt(num / den);
}

}  // namespace

TEST(PhysicsParams, Validation) {
  EXPECT_THROW(PhysicsParams(-1.0, 2.0), std::invalid_argument);
  EXPECT_THROW(PhysicsParams(1e-2, 0.5), std::invalid_argument);
  EXPECT_THROW(PhysicsParams(1e-2, 0.0), std::invalid_argument);
  EXPECT_THROW(PhysicsParams(1e-2, 1.0), std::invalid_argument);
  EXPECT_NO_THROW(PhysicsParams(1e-2, -0.5));
  EXPECT_FALSE(PhysicsParams(1e-2, 1.5).in_theorem_regime());
  EXPECT_TRUE(PhysicsParams(1e-2, -2.0).in_theorem_regime());
  EXPECT_DOUBLE_EQ(PhysicsParams(1e-2, 2.0).coupling(), std::sqrt(2.0));
  EXPECT_DOUBLE_EQ(PhysicsParams(1e-2, -2.0).coupling(), -std::sqrt(6.0));
}

TEST(NonzeroMode, ZeroDataStaysZero) {
  const PhysicsParams prm(1e-2, 2.0);
  const Wavevector w{1, 0.5, 2};
  const NonzeroModeState s = evolve_qk_mode(w, make_nonzero_state(w, 0.0, prm, 0.0, 0.0), prm, 3.0);
  EXPECT_EQ(s.q_hat, Complex(0.0));
  EXPECT_EQ(s.k_hat, Complex(0.0));
}

TEST(NonzeroMode, RejectsZeroStreamwiseFrequency) {
  const PhysicsParams prm(1e-2, 2.0);
  EXPECT_THROW(evolve_qk_mode({0, 1.0, 1}, {}, prm, 1.0), std::invalid_argument);
}

TEST(NonzeroMode, DecoupledSpanwiseZeroMode) {
  const PhysicsParams prm(0.1, 2.0);
  const Wavevector w{1, 0.0, 0};
  const NonzeroModeState s0 = make_nonzero_state(w, 0.0, prm, Complex(1.0, 0.5), Complex(0.3, 0.0));
  for (double t : {0.5, 2.0, 4.0}) {
    const NonzeroModeState s = evolve_qk_mode(w, s0, prm, t);
    EXPECT_NEAR(std::abs(s.q_hat - s0.q_hat * std::exp(-0.1 * (t + t * t * t / 3.0))), 0.0, 1e-14);
    EXPECT_TRUE(is_consistent(s, w, t, prm, 1e-12));
  }
}

TEST(NonzeroMode, MatchesPrimitiveVelocityOracleOnRandomModes) {
  Rng rng(21);
  const double betas[] = {2.0, -2.0, 5.0};
  for (int n = 0; n < 50; ++n) {
    const PhysicsParams prm(std::pow(10.0, rng.uniform(-3.0, -1.0)), betas[n % 3]);
    Wavevector w{rng.integer(1, 3) * (rng.uniform() < 0.5 ? -1 : 1), rng.uniform(-5.0, 5.0), rng.integer(-3, 3)};
    const CVec<3> u0 = divfree_velocity(w, 0.0, rng);
    const NonzeroModeState s = evolve_qk_mode(w, nonzero_state_from_velocity(w, 0.0, prm, u0), prm, 5.0, 1e-10);
    const auto u = reconstruct_velocity(w, 5.0, s.q_hat, s.w_hat);
    const CVec<3> ref = reference_velocity(w, prm, u0, 5.0, 4000);
    EXPECT_LE(rel_err({u[0], u[1], u[2]}, ref), 1e-7) << "mode " << n;
  }
}

TEST(NonzeroMode, ReferenceValueAtUnitTime) {
  const PhysicsParams prm(0.01, 2.0);
  const Wavevector w{1, 0.0, 1};
  const NonzeroModeState s0 = make_nonzero_state(w, 0.0, prm, 1.0, 0.5);
  const NonzeroModeState s = evolve_qk_mode(w, s0, prm, 1.0, 1e-12);
  const auto u0 = reconstruct_velocity(w, 0.0, s0.q_hat, s0.w_hat);
  const CVec<3> ref = reference_velocity(w, prm, {u0[0], u0[1], u0[2]}, 1.0, 4000);
  const auto u = reconstruct_velocity(w, 1.0, s.q_hat, s.w_hat);
  EXPECT_LE(rel_err({u[0], u[1], u[2]}, ref), 1e-10);
}

TEST(NonzeroMode, EnvelopeExamples) {
  {
    const PhysicsParams prm(0.01, 2.0);
    const Wavevector w{1, 0.0, 1};
    const NonzeroModeState s0 = make_nonzero_state(w, 0.0, prm, 1.0, 1.0);
    for (double t : {1.0, 5.0, 10.0}) EXPECT_TRUE(decay_envelope_check(w, s0, prm, t));
  }
  {
    const PhysicsParams prm(0.05, -2.0);
    const Wavevector w{1, 5.0, 2};
    EXPECT_TRUE(decay_envelope_check(w, make_nonzero_state(w, 0.0, prm, 0.2, 1.0), prm, 3.0));
  }
  const PhysicsParams prm(0.1, 2.0);
  EXPECT_TRUE(decay_envelope_check({2, 1.0, 1}, {}, prm, 4.0));
}

TEST(Reconstruction, ZeroInputs) {
  const auto u = reconstruct_velocity({1, 0.3, 2}, 1.0, 0.0, 0.0);
  for (const auto& c : u) EXPECT_EQ(c, Complex(0.0));
  EXPECT_THROW(reconstruct_velocity({0, 1.0, 0}, 0.0, 1.0, 1.0), std::invalid_argument);
}

TEST(Reconstruction, DivergenceFreeAndRecoversUnknowns) {
  Rng rng(22);
  const PhysicsParams prm(1e-2, 2.0);
  for (int n = 0; n < 200; ++n) {
    Wavevector w{rng.integer(-5, 5), rng.uniform(-5.0, 5.0), rng.integer(-5, 5)};
    if (w.k == 0 && w.l == 0) w.l = 1;
    const double t = rng.uniform(0.0, 10.0);
    const Complex q = rng.complex(), wv = rng.complex();
    const auto u = reconstruct_velocity(w, t, q, wv);
    const Complex div = Complex(0.0, 1.0) * (static_cast<double>(w.k) * u[0] + sheared_eta(t, w) * u[1] +
                                             static_cast<double>(w.l) * u[2]);
    EXPECT_LT(std::abs(div), 1e-12 * (1.0 + std::abs(q) + std::abs(wv)));
    const NonzeroModeState back = nonzero_state_from_velocity(w, t, prm, u);
    EXPECT_LT(std::abs(back.w_hat - wv), 1e-12);
    EXPECT_LT(std::abs(back.q_hat - q), 1e-12 * std::max(1.0, std::abs(q)));
  }
}

TEST(ZeroMode, SimpleIdentityAtZeroTime) {
  const PhysicsParams prm(1e-2, 2.0);
  const ZeroModeState s0{Complex(1.0, 2.0), Complex(-0.5, 0.1), Complex(0.2, -0.3)};
  const ZeroModeState s = zero_mode_simple(0.7, 2, prm, 0.0, s0);
  EXPECT_EQ(s.u1_hat, s0.u1_hat);
  EXPECT_EQ(s.u2_hat, s0.u2_hat);
  EXPECT_NEAR(std::abs(s.u3_hat - s0.u3_hat), 0.0, 1e-15);
  EXPECT_THROW(zero_mode_simple(1.0, 0, prm, 1.0, s0), std::invalid_argument);
}

TEST(ZeroMode, InviscidClosedForm) {
  const PhysicsParams prm(0.0, 2.0);
  const ZeroModeState s0{Complex(1.0), Complex(0.5), Complex(0.0)};
  for (double t : {0.3, 1.0, 4.0}) {
    const ZeroModeState s = zero_mode_simple(0.0, 1, prm, t, s0);
    const double r2 = std::sqrt(2.0);
    EXPECT_NEAR(std::abs(s.u1_hat - (std::cos(r2 * t) + 0.5 / r2 * std::sin(r2 * t))), 0.0, 1e-14);
  }
}

TEST(ZeroMode, SimpleMatchesPrimitiveVelocityOracle) {
  Rng rng(23);
  const double betas[] = {2.0, -2.0, 5.0, 1.5, -0.5};
  for (int n = 0; n < 40; ++n) {
    const PhysicsParams prm(rng.uniform(0.0, 0.05), betas[n % 5]);
    const Wavevector w{0, rng.uniform(-4.0, 4.0), rng.integer(1, 4) * (rng.uniform() < 0.5 ? -1 : 1)};
    const CVec<3> u0 = divfree_velocity(w, 0.0, rng);
    const double t = rng.uniform(0.5, 8.0);
    const ZeroModeState s = zero_mode_simple(w.eta, w.l, prm, t, {u0[0], u0[1], u0[2]});
    const CVec<3> ref = reference_velocity(w, prm, u0, t, 4000);
    EXPECT_LE(rel_err({s.u1_hat, s.u2_hat, s.u3_hat}, ref), 1e-10) << "mode " << n;
  }
}

TEST(ZeroMode, InvariantConservedWithoutViscosity) {
  Rng rng(24);
  for (double beta : {2.0, -2.0, 5.0}) {
    const PhysicsParams prm(0.0, beta);
    const ZeroModeState s0{rng.complex(), rng.complex(), Complex(0.0)};
    const double e0 = zero_mode_invariant(1.3, 2, prm, s0);
    for (double t : {0.1, 1.0, 10.0, 100.0}) {
      EXPECT_NEAR(zero_mode_invariant(1.3, 2, prm, zero_mode_simple(1.3, 2, prm, t, s0)), e0, 1e-12 * std::abs(e0));
    }
  }
}

TEST(ZeroMode, HeatFactorCommutesWithRotation) {
  Rng rng(25);
  for (int n = 0; n < 50; ++n) {
    const double nu = rng.uniform(0.0, 0.1), eta = rng.uniform(-3.0, 3.0), t = rng.uniform(0.0, 20.0);
    const int l = rng.integer(1, 5);
    const ZeroModeState s0{rng.complex(), rng.complex(), rng.complex()};
    const ZeroModeState a = zero_mode_simple(eta, l, PhysicsParams(nu, 2.0), t, s0);
    const ZeroModeState b = zero_mode_simple(eta, l, PhysicsParams(0.0, 2.0), t, s0);
    const double e = std::exp(-nu * (eta * eta + l * l) * t);
    EXPECT_NEAR(std::abs(a.u1_hat - e * b.u1_hat), 0.0, 1e-13);
    EXPECT_NEAR(std::abs(a.u2_hat - e * b.u2_hat), 0.0, 1e-13);
    EXPECT_NEAR(std::abs(a.u3_hat - e * b.u3_hat), 0.0, 1e-13);
  }
}

TEST(ZeroMode, DoubleZeroHeatDecay) {
  const PhysicsParams prm(1.0, 2.0);
  const ZeroModeState s0{Complex(2.0), Complex(0.0), Complex(-1.0)};
  const ZeroModeState s = zero_mode_double(1.0, prm, 1.0, s0);
  EXPECT_NEAR(s.u1_hat.real(), 2.0 * std::exp(-1.0), 1e-15);
  EXPECT_NEAR(s.u3_hat.real(), -std::exp(-1.0), 1e-15);
  EXPECT_EQ(s.u2_hat, Complex(0.0));
  const ZeroModeState id = zero_mode_double(1.0, prm, 0.0, s0);
  EXPECT_EQ(id.u1_hat, s0.u1_hat);
  EXPECT_THROW(zero_mode_double(1.0, prm, 1.0, {Complex(1.0), Complex(1.0), Complex(0.0)}), std::invalid_argument);
}

TEST(ZeroMode, ClassicalLiftUp) {
  const ZeroModeState s0{Complex(0.5), Complex(1.0), Complex(0.0)};
  EXPECT_NEAR(classical_liftup(0.0, 1, 0.0, 7.0, s0).u1_hat.real(), 0.5 - 7.0, 1e-14);
  const ZeroModeState pure = classical_liftup(1.0, 1, 0.1, 2.0, {Complex(1.0), Complex(0.0), Complex(0.0)});
  EXPECT_NEAR(pure.u1_hat.real(), std::exp(-0.4), 1e-15);
  const double nu = 1e-3;
  double peak = 0.0;
  for (int i = 0; i <= 10000; ++i) {
    const double t = i * 0.001 / nu;
    peak = std::max(peak, std::abs(classical_liftup(0.0, 1, nu, t, {Complex(0.0), Complex(1.0), Complex(0.0)}).u1_hat));
  }
  EXPECT_NEAR(peak, 1.0 / (std::exp(1.0) * nu), 1e-3 / nu);
  EXPECT_GE(peak, 0.3 / nu);
}

TEST(ZeroMode, EigenvaluesMatchGenericSolver) {
  Rng rng(26);
  for (int n = 0; n < 100; ++n) {
    const PhysicsParams prm(rng.uniform(0.0, 0.1), n % 2 == 0 ? rng.uniform(1.1, 10.0) : rng.uniform(-10.0, -0.1));
    const double eta = rng.uniform(-5.0, 5.0);
    const int l = rng.integer(1, 6);
    const auto m = zero_mode_matrix(eta, l, prm);
    Eigen::Matrix2d a;
    a << m[0], m[1], m[2], m[3];
    Eigen::EigenSolver<Eigen::Matrix2d> es(a);
    auto ev = es.eigenvalues();
    const auto [l1, l2] = eigen_structure(eta, l, prm);
    EXPECT_EQ(l1, std::conj(l2));
    EXPECT_EQ(l1.real(), -prm.nu * (eta * eta + l * l));
    const Complex e1 = ev(0).imag() > 0 ? ev(0) : ev(1);
    EXPECT_NEAR(std::abs(e1 - l1), 0.0, 1e-12 * std::max(1.0, std::abs(l1)));
  }
  const auto [a, b] = eigen_structure(0.0, 1, PhysicsParams(0.0, 2.0));
  EXPECT_NEAR(std::abs(a - Complex(0.0, std::sqrt(2.0))), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(b - Complex(0.0, -std::sqrt(2.0))), 0.0, 1e-15);
}

TEST(ZeroMode, RotationCancelsLiftUp) {
  for (double nu : {1e-2, 1e-3, 1e-4}) {
    const PhysicsParams prm(nu, 2.0);
    const ZeroModeState s0{Complex(0.0), Complex(1.0), Complex(0.0)};
    const double n0 = 1.0;
    double sup_rot = 0.0, sup_cls = 0.0;
    for (int i = 0; i <= 20000; ++i) {
      const double t = i * (10.0 / nu) / 20000;
      const ZeroModeState r = zero_mode_simple(0.0, 1, prm, t, s0);
      const ZeroModeState c = classical_liftup(0.0, 1, nu, t, s0);
      sup_rot = std::max(sup_rot, std::sqrt(std::norm(r.u1_hat) + std::norm(r.u2_hat) + std::norm(r.u3_hat)));
      sup_cls = std::max(sup_cls, std::sqrt(std::norm(c.u1_hat) + std::norm(c.u2_hat) + std::norm(c.u3_hat)));
    }
    EXPECT_LE(sup_rot, 2.0 * n0);
    EXPECT_GE(sup_cls, 0.3 / nu);
  }
}
