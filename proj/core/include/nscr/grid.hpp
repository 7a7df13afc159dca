#pragma once

#include <complex>
#include <cstddef>

namespace nscr {

using Complex = std::complex<double>;

// One Fourier mode e^{i(kX + eta Y + lZ)} of the moving-frame perturbation.
struct Wavevector {
  int k = 0;
  double eta = 0.0;
  int l = 0;

  bool is_mean() const { return k == 0 && eta == 0.0 && l == 0; }
};

// Signed integer labels of a stored mode; eta = j / L_y.
struct ModeLabel {
  int k = 0;
  int j = 0;
  int l = 0;
};

// Periodic box [0,2pi) x [0, 2pi L_y) x [0,2pi) with Nx x Ny x Nz modes.
// Storage is row-major (k, j, l) in FFT order.
class Grid {
 public:
  Grid(int nx, int ny, int nz, double ly = 8.0, double dealias_fraction = 2.0 / 3.0);

  int nx() const { return nx_; }
  int ny() const { return ny_; }
  int nz() const { return nz_; }
  double ly() const { return ly_; }
  double dealias_fraction() const { return dealias_; }
  std::size_t size() const { return static_cast<std::size_t>(nx_) * ny_ * nz_; }

  // Largest retained |frequency label| per direction.
  int cutoff_x() const { return cut_x_; }
  int cutoff_y() const { return cut_y_; }
  int cutoff_z() const { return cut_z_; }

  std::size_t storage_index(int i, int j, int m) const {
    return (static_cast<std::size_t>(i) * ny_ + j) * nz_ + m;
  }
  std::size_t index_of(int k, int j, int l) const;
  ModeLabel label(std::size_t idx) const;
  Wavevector wavevector(std::size_t idx) const;
  std::size_t conjugate_index(std::size_t idx) const;
  bool in_band(std::size_t idx) const;
  bool in_band(const ModeLabel& m) const;

  double eta_of(int j) const { return j / ly_; }
  // Time after which k_max * t exceeds the resolved eta range (physical frame under-resolved).
  double resolution_horizon() const;

  friend bool operator==(const Grid& a, const Grid& b) {
    return a.nx_ == b.nx_ && a.ny_ == b.ny_ && a.nz_ == b.nz_ && a.ly_ == b.ly_ &&
           a.dealias_ == b.dealias_;
  }

  static int signed_frequency(int idx, int n) { return idx < n / 2 ? idx : idx - n; }
  static int storage_position(int f, int n) { return ((f % n) + n) % n; }

 private:
  int nx_, ny_, nz_;
  double ly_;
  double dealias_;
  int cut_x_, cut_y_, cut_z_;
};

}  // namespace nscr
