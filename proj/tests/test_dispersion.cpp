#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "nscr/decay_fit.hpp"
#include "nscr/dispersion.hpp"
#include "nscr/linear_engine.hpp"
#include "test_support.hpp"

using namespace nscr;
using nscr::testing::Rng;

namespace {

ZeroFreqField random_zero_field(int ny, int nz, double ly, std::uint64_t seed) {
  Rng rng(seed);
  ZeroFreqField f(ny, nz, ly);
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (f.l_of(i) != 0 && f.l_of(i) != -nz / 2 && f.j_of(i) != -ny / 2) f.at(i) = rng.complex();
  }
  return f;
}

double max_diff(const ZeroFreqField& a, const ZeroFreqField& b) {
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) worst = std::max(worst, std::abs(a.at(i) - b.at(i)));
  return worst;
}

}  // namespace

TEST(DispersiveSemigroup, IdentityModulusComposition) {
  const PhysicsParams prm(1e-3, 2.0);
  const ZeroFreqField f = random_zero_field(16, 8, 2.0, 31);
  EXPECT_EQ(max_diff(apply_dispersive_semigroup(f, 0.0, prm, DispersiveBranch::plus), f), 0.0);
  for (auto branch : {DispersiveBranch::plus, DispersiveBranch::minus}) {
    const ZeroFreqField g = apply_dispersive_semigroup(f, 3.0, prm, branch);
    for (std::size_t i = 0; i < f.size(); ++i) {
      const double eta = f.eta_of(i), l = f.l_of(i);
      EXPECT_NEAR(std::abs(g.at(i)), std::exp(-1e-3 * (eta * eta + l * l) * 3.0) * std::abs(f.at(i)), 1e-12);
    }
    const ZeroFreqField ab = apply_dispersive_semigroup(apply_dispersive_semigroup(f, 1.25, prm, branch), 4.5, prm,
                                                        branch);
    EXPECT_LT(max_diff(ab, apply_dispersive_semigroup(f, 5.75, prm, branch)), 1e-12);
  }
}

TEST(DispersiveSemigroup, InviscidParsevalAndRejectsSpanwiseMean) {
  const ZeroFreqField f = random_zero_field(16, 8, 2.0, 32);
  const PhysicsParams prm(0.0, 5.0);
  EXPECT_NEAR(apply_dispersive_semigroup(f, 17.0, prm, DispersiveBranch::minus).l2_norm(), f.l2_norm(), 1e-12);
  ZeroFreqField g(8, 4, 1.0);
  g.mode(1, 0) = 1.0;
  EXPECT_THROW(apply_dispersive_semigroup(g, 1.0, prm, DispersiveBranch::plus), std::invalid_argument);
}

TEST(SimpleZeroField, MatchesModewisePropagator) {
  Rng rng(33);
  for (double beta : {2.0, -2.0, 6.0}) {
    const PhysicsParams prm(rng.uniform(0.0, 0.01), beta);
    const ZeroFreqField u1 = random_zero_field(32, 8, 1.5, 34);
    const ZeroFreqField u2 = random_zero_field(32, 8, 1.5, 35);
    for (double t : {0.0, 0.7, 9.0}) {
      const auto out = evolve_simple_zero_field(u1, u2, t, prm);
      int checked = 0;
      for (std::size_t i = 0; i < u1.size(); ++i) {
        const int l = u1.l_of(i);
        if (l == 0 || u1.at(i) == Complex(0.0)) continue;
        const double eta = u1.eta_of(i);
        const ZeroModeState s = zero_mode_simple(eta, l, prm, t, {u1.at(i), u2.at(i), -eta / l * u2.at(i)});
        EXPECT_NEAR(std::abs(out[0].at(i) - s.u1_hat), 0.0, 1e-10);
        EXPECT_NEAR(std::abs(out[1].at(i) - s.u2_hat), 0.0, 1e-10);
        EXPECT_NEAR(std::abs(out[2].at(i) - s.u3_hat), 0.0, 1e-10);
        ++checked;
      }
      EXPECT_GE(checked, 100);
      if (t == 0.0) {
        EXPECT_LT(max_diff(out[0], u1), 1e-15);
        EXPECT_LT(max_diff(out[1], u2), 1e-15);
      }
    }
  }
}

TEST(SimpleZeroField, InviscidInvariant) {
  const PhysicsParams prm(0.0, 2.0);
  const ZeroFreqField u1 = random_zero_field(8, 8, 1.0, 36);
  const ZeroFreqField u2 = random_zero_field(8, 8, 1.0, 37);
  const auto out = evolve_simple_zero_field(u1, u2, 12.0, prm);
  for (std::size_t i = 0; i < u1.size(); ++i) {
    if (u1.l_of(i) == 0) continue;
    const double eta = u1.eta_of(i);
    const int l = u1.l_of(i);
    const double e0 = zero_mode_invariant(eta, l, prm, {u1.at(i), u2.at(i), 0.0});
    const double e1 = zero_mode_invariant(eta, l, prm, {out[0].at(i), out[1].at(i), 0.0});
    EXPECT_NEAR(e1, e0, 1e-12 * std::max(1.0, e0));
  }
}

TEST(Linf, UnitModeAndLinearity) {
  ZeroFreqField f(16, 8, 2.0);
  f.mode(3, 1) = 1.0;
  EXPECT_NEAR(linf_amplitude(f), 1.0, 1e-14);
  const ZeroFreqField g = random_zero_field(16, 8, 2.0, 38);
  ZeroFreqField h = g;
  for (std::size_t i = 0; i < h.size(); ++i) h.at(i) *= Complex(0.0, -2.5);
  EXPECT_NEAR(linf_amplitude(h), 2.5 * linf_amplitude(g), 1e-12 * linf_amplitude(h));
}

TEST(Linf, GaussianMatchesDirectSum) {
  const ZeroFreqField f = gaussian_profile(512, 4, 32.0, 1, 1.0);
  // Peak at the origin: sum of all coefficients.
  Complex direct = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) direct += f.at(i);
  EXPECT_NEAR(linf_amplitude(f), std::abs(direct), 1e-6);
  // The periodized Gaussian has unit peak.
  EXPECT_NEAR(std::abs(direct), 1.0, 1e-6);
  // Direct evaluation at an off-grid point stays below the oversampled maximum.
  Complex off = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) {
    off += f.at(i) * std::exp(Complex(0.0, f.eta_of(i) * 0.37 + f.l_of(i) * 0.11));
  }
  EXPECT_NEAR(off.real(), std::exp(-0.5 * 0.37 * 0.37) * std::cos(0.11), 1e-6);
  EXPECT_LE(std::abs(off), linf_amplitude(f) + 1e-12);
}

TEST(DispersionExperiment, NoPhaseMeansNoDecay) {
  const ZeroFreqField profile = gaussian_profile(4096, 4, 256.0, 1, 1.0);
  const PhysicsParams prm(1e-6, 2.0);
  std::vector<double> t;
  for (int i = 0; i < 7; ++i) t.push_back(10.0 * std::pow(10.0, i / 6.0));
  const DispersionResult off = dispersion_experiment(profile, prm, t, false);
  EXPECT_LT(std::abs(off.fit.exponent), 0.01);
  const DispersionResult on = dispersion_experiment(profile, prm, t, true);
  EXPECT_LT(on.fit.exponent, -0.1);
  for (const auto& s : on.samples) EXPECT_NEAR(s.heat_corrected, s.amplitude * std::exp(prm.nu * s.t), 1e-15);
  EXPECT_THROW(dispersion_experiment(profile, prm, std::span<const double>(t).first(4)), std::invalid_argument);
}

TEST(DispersionExperiment, ExponentIndependentOfBeta) {
  const ZeroFreqField profile = gaussian_profile(65536, 4, 4096.0, 1, 1.0);
  std::vector<double> t;
  for (int i = 0; i < 21; ++i) t.push_back(1e2 * std::pow(100.0, i / 20.0));
  const double e2 = dispersion_experiment(profile, PhysicsParams(1e-6, 2.0), t).fit.exponent;
  const double e6 = dispersion_experiment(profile, PhysicsParams(1e-6, 6.0), t).fit.exponent;
  EXPECT_NEAR(e2, e6, 0.05);
}

TEST(DecayFit, SyntheticPowerLaw) {
  std::vector<double> t, v;
  for (int i = 1; i <= 20; ++i) {
    t.push_back(i * 3.0);
    v.push_back(2.0 / (i * 3.0));
  }
  const DecayFit f = fit_decay(t, v, DecayModel::powerlaw);
  EXPECT_NEAR(f.exponent, -1.0, 1e-9);
  EXPECT_NEAR(f.amplitude, 2.0, 1e-9);
  EXPECT_LT(f.residual, 1e-12);
  EXPECT_EQ(f.t_min, 3.0);
  EXPECT_EQ(f.t_max, 60.0);
}

TEST(DecayFit, SyntheticCubicExponential) {
  std::vector<double> t, v;
  for (int i = 0; i <= 20; ++i) {
    t.push_back(i * 0.25);
    v.push_back(std::exp(-std::pow(i * 0.25, 3) / 24.0));
  }
  EXPECT_NEAR(fit_decay(t, v, DecayModel::cubic_exponential).exponent, 1.0 / 24.0, 1e-9);
}

TEST(DecayFit, RejectsBadInput) {
  const std::vector<double> t{1, 2, 3, 4, 5}, v{1, 2, 0, 4, 5}, w{1, 1, 1, 1, 1};
  EXPECT_THROW(fit_decay(t, v, DecayModel::powerlaw), std::invalid_argument);
  EXPECT_THROW(fit_decay(std::span(t).first(4), std::span(w).first(4), DecayModel::powerlaw), std::invalid_argument);
  const std::vector<double> t0{0, 1, 2, 3, 4};
  EXPECT_THROW(fit_decay(t0, w, DecayModel::powerlaw), std::invalid_argument);
  EXPECT_NO_THROW(fit_decay(t0, w, DecayModel::cubic_exponential));
}

TEST(DecayFit, Line) {
  const std::vector<double> x{0, 1, 2, 3}, y{1, 3, 5, 7};
  const LineFit f = fit_line(x, y);
  EXPECT_NEAR(f.slope, 2.0, 1e-14);
  EXPECT_NEAR(f.intercept, 1.0, 1e-14);
  const std::vector<double> same{1, 1};
  EXPECT_THROW(fit_line(same, same), std::invalid_argument);
}
