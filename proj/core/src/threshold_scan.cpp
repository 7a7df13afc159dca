#include "nscr/threshold_scan.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <mutex>
#include <set>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "nscr/solver.hpp"

namespace nscr {

int worker_count() {
  if (const char* env = std::getenv("NSCR_THREADS")) {
    char* end = nullptr;
    const long n = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && n >= 1) return static_cast<int>(n);
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

LineFit fit_gamma(std::span<const double> nus, std::span<const double> eps_critical) {
  if (nus.size() != eps_critical.size()) throw std::invalid_argument("fit_gamma: length mismatch");
  std::vector<double> x, y;
  for (std::size_t i = 0; i < nus.size(); ++i) {
    if (!(nus[i] > 0.0) || !(eps_critical[i] > 0.0)) throw std::invalid_argument("fit_gamma: values must be positive");
    x.push_back(std::log(nus[i]));
    y.push_back(std::log(eps_critical[i]));
  }
  return fit_line(x, y);
}

namespace {

std::pair<bool, std::string> default_probe(const SimulationConfig& cfg) {
  SimulationConfig c = cfg;
  c.stop_on_bootstrap_violation = true;
  const RunResult r = run(c);
  return {r.verdict == Verdict::stable, to_string(r.verdict)};
}

ThresholdRow scan_one(const SimulationConfig& base, double nu, double tol, const ThresholdScanOptions& opts,
                      const StabilityProbe& probe) {
  ThresholdRow row;
  row.nu = nu;
  SimulationConfig cfg = base;
  cfg.prm = PhysicsParams(nu, base.prm.beta);
  auto test = [&](double eps) {
    cfg.epsilon = eps;
    ++row.runs;
    auto [ok, verdict] = probe(cfg);
    if (opts.log) {
      std::ostringstream msg;
      msg << "nu=" << nu << " eps=" << eps << " -> " << (ok ? "stable" : verdict);
      opts.log(msg.str());
    }
    if (!ok) row.unstable_verdict = verdict;
    return ok;
  };

  double lo = 0.0, hi = 0.0;
  const double start = opts.start_ratio * nu;
  if (test(start)) {
    lo = start;
    hi = start * opts.growth;
    int n = 0;
    while (test(hi)) {
      lo = hi;
      if (++n >= opts.max_expansions) {
        row.eps_stable = lo;
        row.eps_critical = lo;
        row.bound_only = true;
        return row;
      }
      hi *= opts.growth;
    }
  } else {
    hi = start;
    lo = start / opts.growth;
    int n = 0;
    while (!test(lo)) {
      hi = lo;
      if (++n >= opts.max_expansions) {
        row.eps_unstable = hi;
        row.eps_critical = hi;
        row.bound_only = true;
        return row;
      }
      lo /= opts.growth;
    }
  }
  std::string hi_verdict = row.unstable_verdict;
  while (hi / lo - 1.0 > tol) {
    const double mid = std::sqrt(lo * hi);
    if (test(mid)) {
      lo = mid;
    } else {
      hi = mid;
      hi_verdict = row.unstable_verdict;
    }
  }
  row.eps_stable = lo;
  row.eps_unstable = hi;
  row.eps_critical = std::sqrt(lo * hi);
  row.unstable_verdict = hi_verdict;
  return row;
}

}  // namespace

ThresholdScanResult threshold_scan(const SimulationConfig& base, std::span<const double> nus, double bisection_tol,
                                   const ThresholdScanOptions& opts, const StabilityProbe& probe) {
  if (nus.empty()) throw std::invalid_argument("threshold_scan: no viscosities given");
  if (!(bisection_tol > 0.0)) throw std::invalid_argument("threshold_scan: tolerance must be positive");
  if (!(opts.growth > 1.0) || opts.max_expansions < 1 || !(opts.start_ratio > 0.0)) {
    throw std::invalid_argument("threshold_scan: invalid bracketing options");
  }
  std::set<double> seen;
  for (double nu : nus) {
    if (!(nu > 0.0)) throw std::invalid_argument("threshold_scan: viscosities must be positive");
    if (!seen.insert(nu).second) throw std::invalid_argument("threshold_scan: viscosities must be distinct");
  }
  base.validate();
  const StabilityProbe& use = probe ? probe : StabilityProbe(default_probe);

  std::vector<ThresholdRow> rows(nus.size());
  std::vector<std::exception_ptr> errors(nus.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < nus.size(); i = next++) {
      try {
        rows[i] = scan_one(base, nus[i], bisection_tol, opts, use);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const int n_threads = std::clamp(opts.threads > 0 ? opts.threads : worker_count(), 1, static_cast<int>(nus.size()));
  std::vector<std::thread> pool;
  for (int i = 1; i < n_threads; ++i) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);

  std::sort(rows.begin(), rows.end(), [](const ThresholdRow& a, const ThresholdRow& b) { return a.nu < b.nu; });
  ThresholdScanResult res;
  res.rows = rows;
  for (std::size_t i = 1; i < rows.size(); ++i)
    if (rows[i].eps_critical < rows[i - 1].eps_critical) res.monotone = false;
  if (rows.size() >= 2) {
    std::vector<double> x, y;
    for (const auto& r : rows) {
      x.push_back(r.nu);
      y.push_back(r.eps_critical);
    }
    const LineFit f = fit_gamma(x, y);
    res.fitted_gamma = f.slope;
    res.intercept = f.intercept;
    res.residual = f.residual;
  }
  return res;
}

}  // namespace nscr
