#pragma once

#include <array>
#include <span>
#include <vector>

#include "nscr/grid.hpp"

namespace nscr {

// Fourier coefficients of a 3-component velocity field in the moving frame.
// Coefficients are normalized so that sum |c|^2 is the box-averaged |u|^2.
class SpectralField {
 public:
  explicit SpectralField(const Grid& grid, double frame_time = 0.0);

  const Grid& grid() const { return grid_; }
  double frame_time() const { return frame_time_; }
  void set_frame_time(double t) { frame_time_ = t; }

  Complex& at(int c, std::size_t idx) { return comp_[c][idx]; }
  const Complex& at(int c, std::size_t idx) const { return comp_[c][idx]; }
  std::span<Complex> component(int c) { return comp_[c]; }
  std::span<const Complex> component(int c) const { return comp_[c]; }

  void set_zero();
  SpectralField& operator+=(const SpectralField& other);
  SpectralField& operator*=(double a);
  // this += a * x
  void axpy(double a, const SpectralField& x);

 private:
  Grid grid_;
  double frame_time_;
  std::array<std::vector<Complex>, 3> comp_;
};

SpectralField project_x_zero(const SpectralField& f);
SpectralField project_x_nonzero(const SpectralField& f);
SpectralField project_z_zero(const SpectralField& f);
SpectralField project_z_nonzero(const SpectralField& f);

double sobolev_norm(const Grid& grid, std::span<const Complex> coeffs, double s);
double sobolev_norm(const SpectralField& f, double s);
double l2_norm(const SpectralField& f);
Complex inner_product(const SpectralField& a, const SpectralField& b);

// I - grad_L Delta_L^{-1} div_L at time t; the mean mode passes through.
SpectralField leray_project_moving(double t, const SpectralField& f);
void leray_project_in_place(double t, SpectralField& f);

// max over modes of |xi . u_hat| relative to the field's L2 norm (0 for a zero field).
double divergence_residual(const SpectralField& f);
double hermitian_defect(const SpectralField& f);
void enforce_hermitian(SpectralField& f);
void truncate_to_band(SpectralField& f);
bool is_band_limited(const SpectralField& f);

}  // namespace nscr
