#include "nscr/dispersion.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <mutex>
#include <stdexcept>

#include "nscr/transform.hpp"

namespace nscr {

ZeroFreqField::ZeroFreqField(int ny, int nz, double ly) : ny_(ny), nz_(nz), ly_(ly) {
  if (ny < 2 || nz < 2 || ny % 2 || nz % 2) throw std::invalid_argument("ZeroFreqField: sizes must be even");
  if (!(ly > 0.0)) throw std::invalid_argument("ZeroFreqField: L_y must be positive");
  data_.assign(static_cast<std::size_t>(ny) * nz, Complex(0.0));
}

std::size_t ZeroFreqField::index_of(int j, int l) const {
  return static_cast<std::size_t>(Grid::storage_position(j, ny_)) * nz_ + Grid::storage_position(l, nz_);
}

double ZeroFreqField::l2_norm() const {
  double acc = 0.0;
  for (const Complex& c : data_) acc += std::norm(c);
  return std::sqrt(acc);
}

namespace {

void require_simple_zero(const ZeroFreqField& f) {
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (f.l_of(i) == 0 && f.at(i) != Complex(0.0)) {
      throw std::invalid_argument("zero-frequency field carries l = 0 content");
    }
  }
}

Complex semigroup_factor(double eta, int l, double t, const PhysicsParams& prm, double sign) {
  const double p = eta * eta + static_cast<double>(l) * l;
  const double phase = sign * t * inertial_frequency(eta, l, prm);
  return std::exp(Complex(-prm.nu * p * t, phase));
}

}  // namespace

ZeroFreqField apply_dispersive_semigroup(const ZeroFreqField& f, double t, const PhysicsParams& prm,
                                         DispersiveBranch sign) {
  require_simple_zero(f);
  const double s = sign == DispersiveBranch::plus ? 1.0 : -1.0;
  ZeroFreqField out(f.ny(), f.nz(), f.ly());
  for (std::size_t i = 0; i < f.size(); ++i) {
    const int l = f.l_of(i);
    if (l == 0) continue;
    out.at(i) = semigroup_factor(f.eta_of(i), l, t, prm, s) * f.at(i);
  }
  return out;
}

std::array<ZeroFreqField, 3> evolve_simple_zero_field(const ZeroFreqField& u1_in, const ZeroFreqField& u2_in,
                                                      double t, const PhysicsParams& prm) {
  if (!u1_in.same_shape(u2_in)) throw std::invalid_argument("evolve_simple_zero_field: shape mismatch");
  const ZeroFreqField p1 = apply_dispersive_semigroup(u1_in, t, prm, DispersiveBranch::plus);
  const ZeroFreqField m1 = apply_dispersive_semigroup(u1_in, t, prm, DispersiveBranch::minus);
  const ZeroFreqField p2 = apply_dispersive_semigroup(u2_in, t, prm, DispersiveBranch::plus);
  const ZeroFreqField m2 = apply_dispersive_semigroup(u2_in, t, prm, DispersiveBranch::minus);
  const double beta = prm.beta;
  const double sgn = beta > 0.0 ? 1.0 : -1.0;
  const double w12 = sgn * std::sqrt((beta - 1.0) / beta);
  const double w21 = sgn * std::sqrt(beta / (beta - 1.0));
  const Complex half_i(0.0, 0.5);
  std::array<ZeroFreqField, 3> out{ZeroFreqField(u1_in.ny(), u1_in.nz(), u1_in.ly()),
                                   ZeroFreqField(u1_in.ny(), u1_in.nz(), u1_in.ly()),
                                   ZeroFreqField(u1_in.ny(), u1_in.nz(), u1_in.ly())};
  for (std::size_t i = 0; i < u1_in.size(); ++i) {
    const int l = u1_in.l_of(i);
    if (l == 0) continue;
    const double eta = u1_in.eta_of(i);
    const double ratio = std::hypot(eta, static_cast<double>(l)) / std::abs(l);  // |grad| |d_z|^{-1}
    out[0].at(i) = 0.5 * (p1.at(i) + m1.at(i)) + half_i * w12 * ratio * (m2.at(i) - p2.at(i));
    out[1].at(i) = 0.5 * (p2.at(i) + m2.at(i)) + half_i * w21 / ratio * (p1.at(i) - m1.at(i));
    out[2].at(i) = -(eta / l) * out[1].at(i);
  }
  return out;
}

double linf_amplitude(const ZeroFreqField& f, int oversample) {
  if (oversample < 1) throw std::invalid_argument("linf_amplitude: oversample must be >= 1");
  const int ny = f.ny() * oversample, nz = f.nz() * oversample;
  const std::size_t n = static_cast<std::size_t>(ny) * nz;
  fftw_complex* buf = fftw_alloc_complex(n);
  if (!buf) throw std::bad_alloc();
  std::fill_n(reinterpret_cast<double*>(buf), 2 * n, 0.0);
  for (std::size_t i = 0; i < f.size(); ++i) {
    const std::size_t pos = static_cast<std::size_t>(Grid::storage_position(f.j_of(i), ny)) * nz +
                            Grid::storage_position(f.l_of(i), nz);
    buf[pos][0] = f.at(i).real();
    buf[pos][1] = f.at(i).imag();
  }
  fftw_plan plan = nullptr;
  {
    std::lock_guard<std::mutex> lock(fftw_planner_mutex());
    plan = fftw_plan_dft_2d(ny, nz, buf, buf, FFTW_BACKWARD, FFTW_ESTIMATE);
  }
  fftw_execute(plan);
  double worst = 0.0;
  for (std::size_t i = 0; i < n; ++i) worst = std::max(worst, std::hypot(buf[i][0], buf[i][1]));
  {
    std::lock_guard<std::mutex> lock(fftw_planner_mutex());
    fftw_destroy_plan(plan);
    fftw_free(buf);
  }
  return worst;
}

ZeroFreqField gaussian_profile(int ny, int nz, double ly, int l, double width) {
  if (l == 0) throw std::invalid_argument("gaussian_profile: l must be nonzero");
  ZeroFreqField f(ny, nz, ly);
  if (std::abs(l) >= nz / 2) throw std::invalid_argument("gaussian_profile: l outside the grid");
  // Fourier transform of exp(-y^2 / (2 width^2)) sampled at eta = j / L_y, halved over +-l.
  const double norm = width / (std::sqrt(2.0 * M_PI) * ly);
  for (int j = -ny / 2 + 1; j < ny / 2; ++j) {
    const double eta = j / ly;
    const double c = 0.5 * norm * std::exp(-0.5 * width * width * eta * eta);
    f.mode(j, l) = c;
    f.mode(j, -l) = c;
  }
  return f;
}

DispersionResult dispersion_experiment(const ZeroFreqField& profile, const PhysicsParams& prm,
                                       std::span<const double> t_grid, bool with_phase) {
  if (t_grid.size() < 5) throw std::invalid_argument("dispersion_experiment: need at least 5 times");
  DispersionResult res;
  std::vector<double> ts, vs;
  for (double t : t_grid) {
    ZeroFreqField evolved = apply_dispersive_semigroup(profile, t, prm, DispersiveBranch::plus);
    if (!with_phase) {
      for (std::size_t i = 0; i < profile.size(); ++i) {
        evolved.at(i) = std::abs(evolved.at(i)) * std::polar(1.0, std::arg(profile.at(i)));
      }
    }
    const double amp = linf_amplitude(evolved);
    res.samples.push_back({t, amp, amp * std::exp(prm.nu * t)});
    ts.push_back(t);
    vs.push_back(amp * std::exp(prm.nu * t));
  }
  res.fit = fit_decay(ts, vs, DecayModel::powerlaw);
  return res;
}

}  // namespace nscr
