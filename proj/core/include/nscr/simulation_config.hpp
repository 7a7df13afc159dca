#pragma once

#include <cstdint>
#include <string>

#include "nscr/grid.hpp"
#include "nscr/linear_engine.hpp"

namespace nscr {

enum class InitProfile { random_divfree, single_mode, file };

struct SimulationConfig {
  Grid grid{32, 64, 32};
  PhysicsParams prm{1e-2, 2.0};
  double epsilon = 1e-3;  // H^sigma size of the initial perturbation
  double sigma = 5.0;     // ledger norms use N = sigma - 2
  double dt = 0.05;       // maximal step
  double cfl = 0.5;       // advective CFL number; 0 disables the reduction
  double t_end = 100.0;
  std::uint64_t seed = 1;
  InitProfile init_profile = InitProfile::random_divfree;
  ModeLabel single_mode{1, 0, 1};
  std::string init_file;

  bool nonlinear = true;
  bool linear_coupling = true;

  double bootstrap_factor = 10.0;  // stable iff every bootstrap quantity stays <= factor * epsilon
  double blowup_factor = 1e6;
  double multiplier_cutoff = 1000.0;
  double reconstruction_constant = 4.0;
  bool stop_on_bootstrap_violation = false;
  long max_steps = 10'000'000;

  double regularity_index() const { return sigma - 2.0; }
  // Throws std::invalid_argument on inconsistent settings.
  void validate() const;
};

const char* to_string(InitProfile p);
InitProfile parse_init_profile(const std::string& s);

}  // namespace nscr
