#pragma once

#include <cstdint>
#include <string>

#include "nscr/linear_engine.hpp"
#include "nscr/spectral_field.hpp"

namespace nscr {

// Little-endian binary layout:
//   "NSCR1" | Nx Ny Nz (u32) | L_y dealias nu beta t (f64) | seed (u64) | 3 Nx Ny Nz (re, im) f64 pairs
struct Checkpoint {
  Grid grid;
  PhysicsParams prm;
  double t = 0.0;
  std::uint64_t seed = 0;
  SpectralField field;
};

void write_checkpoint(const std::string& path, const SpectralField& field, const PhysicsParams& prm,
                      std::uint64_t seed);
Checkpoint read_checkpoint(const std::string& path);

}  // namespace nscr
