#include "nscr/grid.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace nscr {

namespace {

int retained_cutoff(int n, double fraction) {
  // Keep |f| < fraction * n / 2; for 2/3 this is the usual |f| < n/3.
  return static_cast<int>(std::ceil(fraction * n / 2.0 - 1e-12)) - 1;
}

void require_even(int n, const char* name) {
  if (n < 4 || n % 2 != 0) {
    throw std::invalid_argument(std::string("grid size ") + name + " must be even and >= 4, got " +
                                std::to_string(n));
  }
}

}  // namespace

Grid::Grid(int nx, int ny, int nz, double ly, double dealias_fraction)
    : nx_(nx), ny_(ny), nz_(nz), ly_(ly), dealias_(dealias_fraction) {
  require_even(nx, "Nx");
  require_even(ny, "Ny");
  require_even(nz, "Nz");
  if (!(ly > 0.0) || !std::isfinite(ly)) throw std::invalid_argument("L_y must be positive");
  if (!(dealias_fraction > 0.0 && dealias_fraction <= 1.0)) {
    throw std::invalid_argument("dealias fraction must lie in (0, 1]");
  }
  cut_x_ = retained_cutoff(nx, dealias_fraction);
  cut_y_ = retained_cutoff(ny, dealias_fraction);
  cut_z_ = retained_cutoff(nz, dealias_fraction);
}

std::size_t Grid::index_of(int k, int j, int l) const {
  return storage_index(storage_position(k, nx_), storage_position(j, ny_), storage_position(l, nz_));
}

ModeLabel Grid::label(std::size_t idx) const {
  const int m = static_cast<int>(idx % nz_);
  const std::size_t rest = idx / nz_;
  const int j = static_cast<int>(rest % ny_);
  const int i = static_cast<int>(rest / ny_);
  return {signed_frequency(i, nx_), signed_frequency(j, ny_), signed_frequency(m, nz_)};
}

Wavevector Grid::wavevector(std::size_t idx) const {
  const ModeLabel m = label(idx);
  return {m.k, eta_of(m.j), m.l};
}

std::size_t Grid::conjugate_index(std::size_t idx) const {
  const ModeLabel m = label(idx);
  return index_of(-m.k, -m.j, -m.l);
}

bool Grid::in_band(const ModeLabel& m) const {
  return std::abs(m.k) <= cut_x_ && std::abs(m.j) <= cut_y_ && std::abs(m.l) <= cut_z_;
}

bool Grid::in_band(std::size_t idx) const { return in_band(label(idx)); }

double Grid::resolution_horizon() const {
  return static_cast<double>(ny_) / (2.0 * ly_ * std::max(cut_x_, 1));
}

}  // namespace nscr
