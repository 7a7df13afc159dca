#pragma once

#include <array>
#include <span>
#include <vector>

#include "nscr/decay_fit.hpp"
#include "nscr/grid.hpp"
#include "nscr/linear_engine.hpp"

namespace nscr {

// Coefficients of a k = 0 field over (eta, l) on a periodic (y, z) box; eta = j / L_y.
// Storage is (j, l) in FFT order. Only l != 0 modes may carry content.
class ZeroFreqField {
 public:
  ZeroFreqField(int ny, int nz, double ly);

  int ny() const { return ny_; }
  int nz() const { return nz_; }
  double ly() const { return ly_; }
  std::size_t size() const { return data_.size(); }

  std::size_t index_of(int j, int l) const;
  int j_of(std::size_t idx) const { return Grid::signed_frequency(static_cast<int>(idx / nz_), ny_); }
  int l_of(std::size_t idx) const { return Grid::signed_frequency(static_cast<int>(idx % nz_), nz_); }
  double eta_of(std::size_t idx) const { return j_of(idx) / ly_; }

  Complex& at(std::size_t idx) { return data_[idx]; }
  const Complex& at(std::size_t idx) const { return data_[idx]; }
  Complex& mode(int j, int l) { return data_[index_of(j, l)]; }
  std::span<Complex> data() { return data_; }
  std::span<const Complex> data() const { return data_; }

  bool same_shape(const ZeroFreqField& o) const { return ny_ == o.ny_ && nz_ == o.nz_ && ly_ == o.ly_; }
  double l2_norm() const;

 private:
  int ny_, nz_;
  double ly_;
  std::vector<Complex> data_;
};

enum class DispersiveBranch { plus, minus };

// Multiplies each coefficient by exp(-nu(eta^2 + l^2) t +- i t sqrt(beta(beta-1)) |l| / |eta, l|).
ZeroFreqField apply_dispersive_semigroup(const ZeroFreqField& f, double t, const PhysicsParams& prm,
                                         DispersiveBranch sign);

// (u1, u2, u3)(t) of the l != 0, k = 0 dynamics as half-sums and half-differences of the two
// dispersive semigroups; u3 follows from incompressibility.
std::array<ZeroFreqField, 3> evolve_simple_zero_field(const ZeroFreqField& u1_in, const ZeroFreqField& u2_in,
                                                      double t, const PhysicsParams& prm);

// Max modulus on a (y, z) grid refined `oversample` times in each direction.
double linf_amplitude(const ZeroFreqField& f, int oversample = 4);

// Gaussian of width `width` in y carried by the spanwise modes +l and -l (real field).
ZeroFreqField gaussian_profile(int ny, int nz, double ly, int l, double width);

struct DispersionSample {
  double t = 0.0;
  double amplitude = 0.0;
  double heat_corrected = 0.0;  // amplitude * e^{nu t}
};

struct DispersionResult {
  std::vector<DispersionSample> samples;
  DecayFit fit;
};

// Fits the heat-corrected L-infinity amplitude of e^{L_+ t} profile against t.
// With `with_phase` false the oscillatory factor is dropped (heat semigroup only).
DispersionResult dispersion_experiment(const ZeroFreqField& profile, const PhysicsParams& prm,
                                       std::span<const double> t_grid, bool with_phase = true);

}  // namespace nscr
