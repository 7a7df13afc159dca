#include "nscr/transform.hpp"

#include <fftw3.h>

#include <cstring>
#include <mutex>
#include <stdexcept>

namespace nscr {

std::mutex& fftw_planner_mutex() {
  static std::mutex m;
  return m;
}

struct PhysicalTransform::Plans {
  int nzh = 0;
  double* real = nullptr;
  fftw_complex* half = nullptr;
  fftw_plan forward = nullptr;
  fftw_plan backward = nullptr;
};

PhysicalTransform::PhysicalTransform(const Grid& grid) : grid_(grid), plans_(std::make_unique<Plans>()) {
  const int nx = grid_.nx(), ny = grid_.ny(), nz = grid_.nz();
  plans_->nzh = nz / 2 + 1;
  const std::size_t nhalf = static_cast<std::size_t>(nx) * ny * plans_->nzh;
  std::lock_guard<std::mutex> lock(fftw_planner_mutex());
  plans_->real = fftw_alloc_real(grid_.size());
  plans_->half = fftw_alloc_complex(nhalf);
  if (!plans_->real || !plans_->half) throw std::bad_alloc();
  plans_->forward = fftw_plan_dft_r2c_3d(nx, ny, nz, plans_->real, plans_->half, FFTW_ESTIMATE);
  plans_->backward = fftw_plan_dft_c2r_3d(nx, ny, nz, plans_->half, plans_->real, FFTW_ESTIMATE);
  if (!plans_->forward || !plans_->backward) throw std::runtime_error("FFTW planning failed");
}

PhysicalTransform::~PhysicalTransform() {
  std::lock_guard<std::mutex> lock(fftw_planner_mutex());
  if (plans_->forward) fftw_destroy_plan(plans_->forward);
  if (plans_->backward) fftw_destroy_plan(plans_->backward);
  fftw_free(plans_->real);
  fftw_free(plans_->half);
}

void PhysicalTransform::to_physical(std::span<const Complex> spectral, std::span<double> physical) {
  const int nx = grid_.nx(), ny = grid_.ny(), nzh = plans_->nzh;
  if (spectral.size() != grid_.size() || physical.size() != grid_.size()) {
    throw std::invalid_argument("to_physical: size mismatch");
  }
  for (int i = 0; i < nx; ++i)
    for (int j = 0; j < ny; ++j) {
      const std::size_t src = grid_.storage_index(i, j, 0);
      const std::size_t dst = (static_cast<std::size_t>(i) * ny + j) * nzh;
      std::memcpy(plans_->half + dst, spectral.data() + src, sizeof(fftw_complex) * nzh);
    }
  fftw_execute(plans_->backward);
  std::memcpy(physical.data(), plans_->real, sizeof(double) * grid_.size());
}

void PhysicalTransform::to_spectral(std::span<const double> physical, std::span<Complex> spectral) {
  const int nx = grid_.nx(), ny = grid_.ny(), nz = grid_.nz(), nzh = plans_->nzh;
  if (spectral.size() != grid_.size() || physical.size() != grid_.size()) {
    throw std::invalid_argument("to_spectral: size mismatch");
  }
  std::memcpy(plans_->real, physical.data(), sizeof(double) * grid_.size());
  fftw_execute(plans_->forward);
  const double scale = 1.0 / static_cast<double>(grid_.size());
  for (int i = 0; i < nx; ++i) {
    const int ic = (nx - i) % nx;
    for (int j = 0; j < ny; ++j) {
      const int jc = (ny - j) % ny;
      const fftw_complex* row = plans_->half + (static_cast<std::size_t>(i) * ny + j) * nzh;
      const fftw_complex* crow = plans_->half + (static_cast<std::size_t>(ic) * ny + jc) * nzh;
      Complex* out = spectral.data() + grid_.storage_index(i, j, 0);
      for (int m = 0; m < nzh; ++m) out[m] = Complex(row[m][0], row[m][1]) * scale;
      for (int m = nzh; m < nz; ++m) out[m] = Complex(crow[nz - m][0], -crow[nz - m][1]) * scale;
    }
  }
}

}  // namespace nscr
