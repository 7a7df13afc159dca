#pragma once

#include <array>
#include <functional>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "nscr/ledger.hpp"
#include "nscr/simulation_config.hpp"
#include "nscr/spectral_field.hpp"
#include "nscr/transform.hpp"

namespace nscr {

// Non-finite state or runaway growth; carries the time at which it was detected.
class SimulationBlowup : public std::runtime_error {
 public:
  SimulationBlowup(const std::string& what, double t) : std::runtime_error(what), time_(t) {}
  double time() const { return time_; }

 private:
  double time_;
};

// Random divergence-free, single-mode or checkpointed field with ||u||_{H^sigma} = epsilon.
SpectralField make_initial_data(const SimulationConfig& cfg);

// Pseudo-spectral evaluation of the moving-frame momentum equations without the viscous term.
class Solver {
 public:
  explicit Solver(const SimulationConfig& cfg);

  const SimulationConfig& config() const { return cfg_; }

  // -P(U . grad_L U) minus the Coriolis and linear pressure terms.
  SpectralField rhs(double t, const SpectralField& u);
  // One integrating-factor RK3 step from t to t + dt.
  SpectralField step(const SpectralField& u, double t, double dt);

  // max |u_i| over the physical grid from the latest nonlinear evaluation.
  const std::array<double, 3>& last_max_velocity() const { return umax_; }
  // Largest dt allowed by the advective CFL condition at time t.
  double cfl_limit(double t, double dt_max) const;

 private:
  void add_nonlinear(double t, const SpectralField& u, SpectralField& out);
  void add_linear(double t, const SpectralField& u, SpectralField& out) const;

  SimulationConfig cfg_;
  std::vector<std::size_t> band_;
  std::vector<Wavevector> band_w_;
  std::unique_ptr<PhysicalTransform> fft_;
  std::array<std::vector<double>, 3> vel_;
  std::vector<double> prod_;
  std::array<std::vector<Complex>, 6> prod_hat_;
  std::array<double, 3> umax_{};
};

SpectralField nonlinear_rhs(double t, const SpectralField& u, const SimulationConfig& cfg);
SpectralField step(const SpectralField& state, double t, double dt, const SimulationConfig& cfg);

enum class Verdict { stable, blowup, maxtime };
const char* to_string(Verdict v);

struct RunResult {
  EnergyLedger ledger;
  // stable: reached t_end inside the bootstrap bound. blowup: non-finite or > blowup_factor * epsilon.
  // maxtime: ended (t_end, early stop, or step budget) after leaving the bootstrap bound.
  Verdict verdict = Verdict::stable;
  double t_final = 0.0;
  double failure_time = -1.0;    // first time the bootstrap bound or blowup test failed; -1 if never
  bool past_resolution_horizon = false;
  long steps = 0;
  std::string message;
};

using RowCallback = std::function<void(const LedgerRow&)>;

RunResult run(const SimulationConfig& cfg, const RowCallback& on_row = {});
RunResult run_from(const SimulationConfig& cfg, SpectralField initial, const RowCallback& on_row = {},
                   SpectralField* final_state = nullptr);

}  // namespace nscr
