#include "nscr/spectral_field.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "nscr/symbols.hpp"

namespace nscr {

SpectralField::SpectralField(const Grid& grid, double frame_time) : grid_(grid), frame_time_(frame_time) {
  for (auto& c : comp_) c.assign(grid_.size(), Complex(0.0, 0.0));
}

void SpectralField::set_zero() {
  for (auto& c : comp_) std::fill(c.begin(), c.end(), Complex(0.0, 0.0));
}

SpectralField& SpectralField::operator+=(const SpectralField& other) {
  axpy(1.0, other);
  return *this;
}

SpectralField& SpectralField::operator*=(double a) {
  for (auto& c : comp_)
    for (auto& v : c) v *= a;
  return *this;
}

void SpectralField::axpy(double a, const SpectralField& x) {
  if (!(x.grid_ == grid_)) throw std::invalid_argument("axpy: grid mismatch");
  for (int c = 0; c < 3; ++c) {
    auto& dst = comp_[c];
    const auto& src = x.comp_[c];
    for (std::size_t i = 0; i < dst.size(); ++i) dst[i] += a * src[i];
  }
}

namespace {

template <class Keep>
SpectralField select_modes(const SpectralField& f, Keep keep) {
  SpectralField out(f.grid(), f.frame_time());
  const Grid& g = f.grid();
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (!keep(g.label(i))) continue;
    for (int c = 0; c < 3; ++c) out.at(c, i) = f.at(c, i);
  }
  return out;
}

double sobolev_weight(const Wavevector& w, double s) {
  const double r = 1.0 + static_cast<double>(w.k) * w.k + w.eta * w.eta + static_cast<double>(w.l) * w.l;
  return std::pow(r, s);
}

}  // namespace

SpectralField project_x_zero(const SpectralField& f) {
  return select_modes(f, [](const ModeLabel& m) { return m.k == 0; });
}
SpectralField project_x_nonzero(const SpectralField& f) {
  return select_modes(f, [](const ModeLabel& m) { return m.k != 0; });
}
SpectralField project_z_zero(const SpectralField& f) {
  return select_modes(f, [](const ModeLabel& m) { return m.l == 0; });
}
SpectralField project_z_nonzero(const SpectralField& f) {
  return select_modes(f, [](const ModeLabel& m) { return m.l != 0; });
}

double sobolev_norm(const Grid& grid, std::span<const Complex> coeffs, double s) {
  if (s < 0.0) throw std::invalid_argument("sobolev_norm: s must be >= 0");
  double acc = 0.0;
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    const double a = std::norm(coeffs[i]);
    if (a == 0.0) continue;
    acc += (s == 0.0 ? 1.0 : sobolev_weight(grid.wavevector(i), s)) * a;
  }
  return std::sqrt(acc);
}

double sobolev_norm(const SpectralField& f, double s) {
  double acc = 0.0;
  for (int c = 0; c < 3; ++c) {
    const double n = sobolev_norm(f.grid(), f.component(c), s);
    acc += n * n;
  }
  return std::sqrt(acc);
}

double l2_norm(const SpectralField& f) { return sobolev_norm(f, 0.0); }

Complex inner_product(const SpectralField& a, const SpectralField& b) {
  Complex acc(0.0, 0.0);
  for (int c = 0; c < 3; ++c) {
    const auto x = a.component(c);
    const auto y = b.component(c);
    for (std::size_t i = 0; i < x.size(); ++i) acc += std::conj(x[i]) * y[i];
  }
  return acc;
}

void leray_project_in_place(double t, SpectralField& f) {
  const Grid& g = f.grid();
  for (std::size_t i = 0; i < g.size(); ++i) {
    const Wavevector w = g.wavevector(i);
    if (w.is_mean()) continue;
    const double xi[3] = {static_cast<double>(w.k), sheared_eta(t, w), static_cast<double>(w.l)};
    const double p = xi[0] * xi[0] + xi[1] * xi[1] + xi[2] * xi[2];
    if (!(p > 0.0)) throw std::logic_error("leray projection: vanishing symbol away from the mean mode");
    const Complex d = (xi[0] * f.at(0, i) + xi[1] * f.at(1, i) + xi[2] * f.at(2, i)) / p;
    for (int c = 0; c < 3; ++c) f.at(c, i) -= xi[c] * d;
  }
}

SpectralField leray_project_moving(double t, const SpectralField& f) {
  if (std::abs(t - f.frame_time()) > 1e-12 * std::max(1.0, std::abs(t))) {
    throw std::invalid_argument("leray_project_moving: t does not match the field's frame time");
  }
  SpectralField out = f;
  leray_project_in_place(t, out);
  return out;
}

double divergence_residual(const SpectralField& f) {
  const double norm = l2_norm(f);
  if (norm == 0.0) return 0.0;
  const Grid& g = f.grid();
  const double t = f.frame_time();
  double worst = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i) {
    const Wavevector w = g.wavevector(i);
    const Complex d = static_cast<double>(w.k) * f.at(0, i) + sheared_eta(t, w) * f.at(1, i) +
                      static_cast<double>(w.l) * f.at(2, i);
    worst = std::max(worst, std::abs(d));
  }
  return worst / norm;
}

double hermitian_defect(const SpectralField& f) {
  const Grid& g = f.grid();
  double worst = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i) {
    const std::size_t j = g.conjugate_index(i);
    for (int c = 0; c < 3; ++c) worst = std::max(worst, std::abs(f.at(c, i) - std::conj(f.at(c, j))));
  }
  return worst;
}

void enforce_hermitian(SpectralField& f) {
  const Grid& g = f.grid();
  for (std::size_t i = 0; i < g.size(); ++i) {
    const std::size_t j = g.conjugate_index(i);
    if (j < i) continue;
    for (int c = 0; c < 3; ++c) {
      const Complex avg = 0.5 * (f.at(c, i) + std::conj(f.at(c, j)));
      f.at(c, i) = avg;
      f.at(c, j) = std::conj(avg);
    }
  }
}

void truncate_to_band(SpectralField& f) {
  const Grid& g = f.grid();
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (g.in_band(i)) continue;
    for (int c = 0; c < 3; ++c) f.at(c, i) = Complex(0.0, 0.0);
  }
}

bool is_band_limited(const SpectralField& f) {
  const Grid& g = f.grid();
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (g.in_band(i)) continue;
    for (int c = 0; c < 3; ++c)
      if (f.at(c, i) != Complex(0.0, 0.0)) return false;
  }
  return true;
}

}  // namespace nscr
