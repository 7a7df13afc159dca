#pragma once

#include <functional>
#include <span>
#include <string>
#include <vector>

#include "nscr/decay_fit.hpp"
#include "nscr/simulation_config.hpp"

namespace nscr {

struct ThresholdRow {
  double nu = 0.0;
  double eps_critical = 0.0;
  double eps_stable = 0.0;    // largest amplitude found stable
  double eps_unstable = 0.0;  // smallest amplitude found unstable; 0 if none
  bool bound_only = false;    // no stable/unstable bracket: eps_critical is a one-sided bound
  int runs = 0;
  std::string unstable_verdict;  // verdict of the run at eps_unstable
};

struct ThresholdScanResult {
  std::vector<ThresholdRow> rows;  // sorted by nu
  double fitted_gamma = 0.0;       // slope of log eps_c against log nu
  double intercept = 0.0;
  double residual = 0.0;
  bool monotone = true;            // eps_c nondecreasing in nu
};

struct ThresholdScanOptions {
  double start_ratio = 1000.0;  // first amplitude tried is start_ratio * nu
  double growth = 4.0;       // bracket expansion factor
  int max_expansions = 4;
  int threads = 0;           // 0: NSCR_THREADS or hardware concurrency
  std::function<void(const std::string&)> log;  // progress lines; may be called from workers
};

// Stability verdict for one amplitude; the default runs the solver and stops at the first
// bootstrap violation.
using StabilityProbe = std::function<std::pair<bool, std::string>(const SimulationConfig&)>;

ThresholdScanResult threshold_scan(const SimulationConfig& base, std::span<const double> nus, double bisection_tol,
                                   const ThresholdScanOptions& opts = {}, const StabilityProbe& probe = {});

LineFit fit_gamma(std::span<const double> nus, std::span<const double> eps_critical);

// Worker count from NSCR_THREADS (>= 1), else hardware concurrency.
int worker_count();

}  // namespace nscr
