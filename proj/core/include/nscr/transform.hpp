#pragma once

#include <memory>
#include <mutex>
#include <span>

#include "nscr/grid.hpp"

namespace nscr {

// Guards every FFTW plan creation and destruction; the planner is not re-entrant.
std::mutex& fftw_planner_mutex();

// Real 3D transforms between full-array Fourier coefficients and physical grid values.
// Plans use FFTW_ESTIMATE so results are reproducible bit for bit.
class PhysicalTransform {
 public:
  explicit PhysicalTransform(const Grid& grid);
  ~PhysicalTransform();
  PhysicalTransform(const PhysicalTransform&) = delete;
  PhysicalTransform& operator=(const PhysicalTransform&) = delete;

  const Grid& grid() const { return grid_; }

  // u(x) = sum_c c e^{i xi.x}; `spectral` must be Hermitian.
  void to_physical(std::span<const Complex> spectral, std::span<double> physical);
  // Inverse of to_physical; fills every mode including the conjugate half.
  void to_spectral(std::span<const double> physical, std::span<Complex> spectral);

 private:
  struct Plans;
  Grid grid_;
  std::unique_ptr<Plans> plans_;
};

}  // namespace nscr
