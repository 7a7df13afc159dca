#pragma once

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "nscr/config_file.hpp"
#include "nscr/multipliers.hpp"

namespace nscr {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitNumerical = 3;

struct ExperimentSpec {
  std::string name;
  ParamMap params;
};

class UsageError : public std::invalid_argument {
 public:
  UsageError(const std::string& key, const std::string& what) : std::invalid_argument(what), key_(key) {}
  const std::string& key() const { return key_; }

 private:
  std::string key_;
};

const std::vector<std::string>& experiment_names();
// Keys accepted by a subcommand (without leading dashes).
const std::vector<std::string>& experiment_keys(const std::string& name);

// Config-file section `name` (plus global keys) overlaid with explicit flags.
ExperimentSpec make_experiment_spec(const std::string& name, const std::string& config_path, const ParamMap& flags);

// Runs one experiment, writing CSV files under params["out"]. Returns an exit status.
int run_experiment(const ExperimentSpec& spec, std::ostream& out, std::ostream& err);

struct MultiplierCheckResult {
  long samples = 0;
  long stretching_bounds = 0;   // nu^{1/3}/2000 <= m <= 1
  long ghost_bounds = 0;        // e^{-pi} <= M <= 1
  long stretching_lower = 0;    // m >= sqrt(k^2+l^2)/sqrt(2 p)
  long ghost_coercivity = 0;    // 1 <= C (nu^{-1/6} sqrt(-M'M) + nu^{1/3}|k, eta-kt, l|)
  long ghost_monotone = 0;      // M non-increasing in t
  long total() const {
    return stretching_bounds + ghost_bounds + stretching_lower + ghost_coercivity + ghost_monotone;
  }
};

// Random (t, k, eta, l, nu) samples; nu_fixed <= 0 draws nu log-uniformly from [1e-6, 1].
MultiplierCheckResult multiplier_check(long samples, std::uint64_t seed, double nu_fixed = 0.0,
                                       double cutoff = 1000.0);

}  // namespace nscr
