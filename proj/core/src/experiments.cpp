#include "nscr/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <ostream>
#include <random>
#include <set>
#include <sstream>

#include "nscr/checkpoint.hpp"
#include "nscr/decay_fit.hpp"
#include "nscr/dispersion.hpp"
#include "nscr/linear_engine.hpp"
#include "nscr/solver.hpp"
#include "nscr/symbols.hpp"
#include "nscr/threshold_scan.hpp"

namespace nscr {

namespace fs = std::filesystem;

const std::vector<std::string>& experiment_names() {
  static const std::vector<std::string> names{"multiplier-check", "linear-modes", "zero-freq",
                                              "dispersion",       "simulate",     "threshold-scan"};
  return names;
}

const std::vector<std::string>& experiment_keys(const std::string& name) {
  static const std::map<std::string, std::vector<std::string>> keys{
      {"multiplier-check", {"out", "seed", "samples", "nu", "cutoff", "k", "eta", "l", "T", "points"}},
      {"linear-modes", {"out", "nu", "beta", "k", "eta", "l", "T", "points", "cutoff", "tol"}},
      {"zero-freq", {"out", "nu", "beta", "eta", "l", "T", "points"}},
      {"dispersion", {"out", "nu", "beta", "Ly", "Ny", "Nz", "l", "width", "tmin", "tmax", "points", "phase"}},
      {"simulate",
       {"out", "nu", "beta", "grid", "Ly", "eps", "sigma", "T", "seed", "dt", "cfl", "init", "init-file", "mode",
        "nonlinear", "coupling", "dealias", "cutoff", "stop-on-violation"}},
      {"threshold-scan",
       {"out", "nus", "beta", "grid", "Ly", "sigma", "T", "seed", "dt", "cfl", "tol", "start", "growth",
        "expansions", "dealias", "cutoff"}},
  };
  const auto it = keys.find(name);
  if (it == keys.end()) throw UsageError(name, "unknown subcommand '" + name + "'");
  return it->second;
}

ExperimentSpec make_experiment_spec(const std::string& name, const std::string& config_path, const ParamMap& flags) {
  ExperimentSpec spec{name, {}};
  if (!config_path.empty()) spec.params = ConfigFile::load(config_path).section(name);
  for (const auto& [k, v] : flags) spec.params[k] = v;
  return spec;
}

namespace {

class Params {
 public:
  Params(const ExperimentSpec& spec) : map_(spec.params) {
    const auto& allowed = experiment_keys(spec.name);
    for (const auto& [k, v] : map_) {
      if (std::find(allowed.begin(), allowed.end(), k) == allowed.end()) {
        throw UsageError(k, "unknown parameter '" + k + "' for " + spec.name);
      }
    }
  }

  std::string str(const std::string& key, const std::string& def) const {
    const auto it = map_.find(key);
    return it == map_.end() ? def : it->second;
  }

  double real(const std::string& key, double def) const {
    const auto it = map_.find(key);
    if (it == map_.end()) return def;
    return parse_real(key, it->second);
  }

  long integer(const std::string& key, long def) const {
    const auto it = map_.find(key);
    if (it == map_.end()) return def;
    std::size_t used = 0;
    long v = 0;
    try {
      v = std::stol(it->second, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != it->second.size() || it->second.empty()) bad(key, it->second);
    return v;
  }

  std::uint64_t seed(const std::string& key, std::uint64_t def) const {
    const auto it = map_.find(key);
    if (it == map_.end()) return def;
    std::size_t used = 0;
    unsigned long long v = 0;
    try {
      v = std::stoull(it->second, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != it->second.size() || it->second.empty()) bad(key, it->second);
    return v;
  }

  bool flag(const std::string& key, bool def) const {
    const auto it = map_.find(key);
    if (it == map_.end()) return def;
    const std::string& s = it->second;
    if (s == "1" || s == "true" || s == "on" || s == "yes") return true;
    if (s == "0" || s == "false" || s == "off" || s == "no") return false;
    bad(key, s);
  }

  std::vector<double> list(const std::string& key, const std::vector<double>& def) const {
    const auto it = map_.find(key);
    if (it == map_.end()) return def;
    std::vector<double> out;
    std::stringstream ss(it->second);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(parse_real(key, item));
    if (out.empty()) bad(key, it->second);
    return out;
  }

  std::array<int, 3> grid(const std::string& key, std::array<int, 3> def) const {
    const auto it = map_.find(key);
    if (it == map_.end()) return def;
    const std::vector<double> v = list(key, {});
    if (v.size() != 3) bad(key, it->second);
    std::array<int, 3> g{};
    for (int i = 0; i < 3; ++i) {
      g[i] = static_cast<int>(v[i]);
      if (g[i] != v[i]) bad(key, it->second);
    }
    return g;
  }

 private:
  [[noreturn]] static void bad(const std::string& key, const std::string& value) {
    throw UsageError(key, "invalid value '" + value + "' for --" + key);
  }

  static double parse_real(const std::string& key, const std::string& s) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(s, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != s.size() || s.empty() || !std::isfinite(v)) bad(key, s);
    return v;
  }

  ParamMap map_;
};

// Rethrows parameter-validation failures from the core as usage errors tied to a key.
template <class F>
auto checked(const std::string& key, F&& f) {
  try {
    return f();
  } catch (const UsageError&) {
    throw;
  } catch (const std::invalid_argument& e) {
    throw UsageError(key, e.what());
  }
}

class Csv {
 public:
  Csv(const fs::path& path, std::initializer_list<std::string> header) : os_(path) {
    if (!os_) throw std::runtime_error("cannot write '" + path.string() + "'");
    bool first = true;
    for (const auto& h : header) {
      os_ << (first ? "" : ",") << h;
      first = false;
    }
    os_ << '\n';
  }

  void row(std::initializer_list<double> values) {
    bool first = true;
    char buf[40];
    for (double v : values) {
      std::snprintf(buf, sizeof buf, "%.12e", v);
      os_ << (first ? "" : ",") << buf;
      first = false;
    }
    os_ << '\n';
  }

  std::ofstream& stream() { return os_; }

 private:
  std::ofstream os_;
};

fs::path output_dir(const Params& p) {
  fs::path dir = p.str("out", ".");
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw UsageError("out", "cannot create output directory '" + dir.string() + "': " + ec.message());
  return dir;
}

// Uniform doubles from mt19937_64 with a portable mapping.
class Uniform {
 public:
  explicit Uniform(std::uint64_t seed) : rng_(seed) {}
  double operator()() { return static_cast<double>(rng_() >> 11) * 0x1.0p-53; }
  double range(double a, double b) { return a + (b - a) * (*this)(); }
  int integer(int lo, int hi) { return lo + static_cast<int>((*this)() * (hi - lo + 1)); }

 private:
  std::mt19937_64 rng_;
};

PhysicsParams physics(const Params& p, double nu_def, double beta_def) {
  const double nu = p.real("nu", nu_def);
  const double beta = p.real("beta", beta_def);
  return checked("beta", [&] {
    if (!(nu >= 0.0)) throw UsageError("nu", "nu must be >= 0");
    return PhysicsParams(nu, beta);
  });
}

void warn_regime(const PhysicsParams& prm, std::ostream& err) {
  if (!prm.in_theorem_regime()) err << "warning: |beta| < 2 lies outside the regime of the stability theory\n";
}

int cmd_multiplier_check(const Params& p, std::ostream& out) {
  const fs::path dir = output_dir(p);
  const long samples = p.integer("samples", 10000);
  const double cutoff = p.real("cutoff", 1000.0);
  const double nu_fixed = p.real("nu", 0.0);
  if (samples < 1) throw UsageError("samples", "samples must be positive");
  const MultiplierCheckResult r =
      checked("cutoff", [&] { return multiplier_check(samples, p.seed("seed", 1), nu_fixed, cutoff); });

  Csv check(dir / "multiplier_check.csv", {"check", "samples", "violations"});
  const std::pair<const char*, long> rows[] = {{"stretching_bounds_nu13_over_2000_le_m_le_1", r.stretching_bounds},
                                               {"ghost_bounds_exp_minus_pi_le_M_le_1", r.ghost_bounds},
                                               {"stretching_lower_sqrt_kl2_over_2p", r.stretching_lower},
                                               {"ghost_coercivity", r.ghost_coercivity},
                                               {"ghost_monotone_in_t", r.ghost_monotone}};
  for (const auto& [name, v] : rows) check.stream() << name << ',' << r.samples << ',' << v << '\n';

  // Profile of both multipliers for one mode.
  const double nu_profile = nu_fixed > 0.0 ? nu_fixed : 1e-3;
  const MultiplierParams mprm = checked("nu", [&] { return MultiplierParams(nu_profile, cutoff); });
  const Wavevector w{static_cast<int>(p.integer("k", 1)), p.real("eta", 5.0), static_cast<int>(p.integer("l", 1))};
  const double horizon = p.real("T", 2.0 * (std::max(w.k != 0 ? w.eta / w.k : 0.0, 0.0) + mprm.window()));
  const long points = p.integer("points", 2000);
  if (points < 2 || !(horizon > 0.0)) throw UsageError("points", "need points >= 2 and T > 0");
  Csv prof(dir / "multiplier_profile.csv", {"t", "stretching_m", "ghost_M", "stretching_rate_mdot_over_m",
                                             "ghost_rate_Mdot_over_M"});
  for (long i = 0; i <= points; ++i) {
    const double t = horizon * static_cast<double>(i) / points;
    prof.row({t, stretching_multiplier(t, w, mprm), ghost_multiplier(t, w, mprm),
              stretching_multiplier_rate(t, w, mprm), ghost_multiplier_rate(t, w, mprm)});
  }
  out << "multiplier-check: samples=" << r.samples << " violations=" << r.total() << '\n';
  return r.total() == 0 ? kExitOk : kExitNumerical;
}

int cmd_linear_modes(const Params& p, std::ostream& out, std::ostream& err) {
  const fs::path dir = output_dir(p);
  const PhysicsParams prm = physics(p, 1e-2, 2.0);
  warn_regime(prm, err);
  if (!(prm.nu > 0.0)) throw UsageError("nu", "linear-modes needs nu > 0");
  const Wavevector w{static_cast<int>(p.integer("k", 1)), p.real("eta", 0.0), static_cast<int>(p.integer("l", 1))};
  if (w.k == 0) throw UsageError("k", "linear-modes needs k != 0");
  const double horizon = p.real("T", 20.0);
  const long points = p.integer("points", 200);
  const double cutoff = p.real("cutoff", 1000.0);
  const double tol = p.real("tol", 1e-12);
  if (!(horizon > 0.0) || points < 5) throw UsageError("points", "need T > 0 and points >= 5");
  const MultiplierParams mprm = checked("cutoff", [&] { return MultiplierParams(prm.nu, cutoff); });

  const NonzeroModeState s0 = make_nonzero_state(w, 0.0, prm, Complex(1.0, 0.0),
                                                 Complex(1.0, 0.0) / Complex(0.0, prm.good_unknown_scale() *
                                                                                      std::sqrt(symbol_p(0.0, w))));
  const double e0 = std::norm(s0.q_hat) + std::norm(s0.k_hat);
  const double k2 = static_cast<double>(w.k) * w.k;
  Csv csv(dir / "linear_modes.csv", {"t", "weighted_energy_m2_Q2_plus_K2", "envelope_exp_minus_nu_k2_t3_over_12",
                                     "Q_abs", "K_abs", "U2_abs"});
  NonzeroModeState s = s0;
  double t_prev = 0.0;
  long violations = 0;
  std::vector<double> ts, amps;
  for (long i = 0; i <= points; ++i) {
    const double t = horizon * static_cast<double>(i) / points;
    s = evolve_qk_mode_from(w, s, prm, t_prev, t, tol);
    t_prev = t;
    const double m = stretching_multiplier(t, w, mprm);
    const double energy = m * m * (std::norm(s.q_hat) + std::norm(s.k_hat));
    const double envelope = std::exp(-prm.nu * k2 * t * t * t / 12.0) * e0;
    if (energy > envelope * (1.0 + 1e-8)) ++violations;
    csv.row({t, energy, envelope, std::abs(s.q_hat), std::abs(s.k_hat), std::abs(s.q_hat) / symbol_p(t, w)});
    if (t > 0.0 && energy > 0.0) {
      ts.push_back(t);
      amps.push_back(std::sqrt(energy));
    }
  }
  out << "linear-modes: envelope violations=" << violations;
  if (ts.size() >= 5) {
    const DecayFit f = fit_decay(ts, amps, DecayModel::cubic_exponential);
    out << " fitted_b=" << f.exponent << " (nu k^2/24=" << prm.nu * k2 / 24.0 << ")";
  }
  out << '\n';
  return violations == 0 ? kExitOk : kExitNumerical;
}

int cmd_zero_freq(const Params& p, std::ostream& out, std::ostream& err) {
  const fs::path dir = output_dir(p);
  const PhysicsParams prm = physics(p, 1e-3, 2.0);
  warn_regime(prm, err);
  const double eta = p.real("eta", 0.0);
  const int l = static_cast<int>(p.integer("l", 1));
  if (l == 0) throw UsageError("l", "zero-freq needs l != 0");
  const double horizon = p.real("T", prm.nu > 0.0 ? 10.0 / prm.nu : 1000.0);
  const long points = p.integer("points", 2000);
  if (!(horizon > 0.0) || points < 2) throw UsageError("points", "need T > 0 and points >= 2");

  const ZeroModeState s0{Complex(0.0), Complex(1.0), Complex(-eta / l)};
  auto norm3 = [](const ZeroModeState& s) {
    return std::sqrt(std::norm(s.u1_hat) + std::norm(s.u2_hat) + std::norm(s.u3_hat));
  };
  const double n0 = norm3(s0);
  Csv csv(dir / "zero_freq.csv", {"t", "rotating_simple_zero_norm", "classical_liftup_norm", "rotating_u1_abs",
                                  "classical_u1_abs"});
  double sup_rot = 0.0, sup_cls = 0.0;
  for (long i = 0; i <= points; ++i) {
    const double t = horizon * static_cast<double>(i) / points;
    const ZeroModeState r = zero_mode_simple(eta, l, prm, t, s0);
    const ZeroModeState c = classical_liftup(eta, l, prm.nu, t, s0);
    sup_rot = std::max(sup_rot, norm3(r));
    sup_cls = std::max(sup_cls, norm3(c));
    csv.row({t, norm3(r), norm3(c), std::abs(r.u1_hat), std::abs(c.u1_hat)});
  }
  out << "zero-freq: sup rotating/initial=" << sup_rot / n0 << " sup classical/initial=" << sup_cls / n0 << '\n';
  return kExitOk;
}

int cmd_dispersion(const Params& p, std::ostream& out, std::ostream& err) {
  const fs::path dir = output_dir(p);
  const PhysicsParams prm = physics(p, 1e-6, 2.0);
  warn_regime(prm, err);
  const double ly = p.real("Ly", 4096.0);
  const long ny = p.integer("Ny", 65536);
  const long nz = p.integer("Nz", 4);
  const int l = static_cast<int>(p.integer("l", 1));
  const double width = p.real("width", 1.0);
  const double tmin = p.real("tmin", 1e2), tmax = p.real("tmax", 1e4);
  const long points = p.integer("points", 21);
  const bool phase = p.flag("phase", true);
  if (!(tmin > 0.0) || !(tmax > tmin)) throw UsageError("tmin", "need 0 < tmin < tmax");
  if (points < 5) throw UsageError("points", "need at least 5 sample times");
  const ZeroFreqField profile = checked("Ny", [&] {
    return gaussian_profile(static_cast<int>(ny), static_cast<int>(nz), ly, l, width);
  });
  std::vector<double> tg;
  for (long i = 0; i < points; ++i) tg.push_back(tmin * std::pow(tmax / tmin, static_cast<double>(i) / (points - 1)));
  const DispersionResult r = dispersion_experiment(profile, prm, tg, phase);
  Csv csv(dir / "dispersion.csv", {"t", "amplitude", "heat_corrected_amplitude"});
  for (const auto& s : r.samples) csv.row({s.t, s.amplitude, s.heat_corrected});
  out << "dispersion: fitted exponent=" << r.fit.exponent << " residual=" << r.fit.residual << '\n';
  return kExitOk;
}

SimulationConfig simulation_config(const Params& p) {
  SimulationConfig cfg;
  const auto g = p.grid("grid", {32, 64, 32});
  const double ly = p.real("Ly", 8.0);
  const double dealias = p.real("dealias", 2.0 / 3.0);
  cfg.grid = checked("grid", [&] { return Grid(g[0], g[1], g[2], ly, dealias); });
  cfg.prm = physics(p, 1e-2, 2.0);
  cfg.sigma = p.real("sigma", 5.0);
  cfg.t_end = p.real("T", 100.0);
  cfg.seed = p.seed("seed", 1);
  cfg.dt = p.real("dt", 0.05);
  cfg.cfl = p.real("cfl", 0.5);
  cfg.multiplier_cutoff = p.real("cutoff", 1000.0);
  return cfg;
}

int cmd_simulate(const Params& p, std::ostream& out, std::ostream& err) {
  const fs::path dir = output_dir(p);
  SimulationConfig cfg = simulation_config(p);
  warn_regime(cfg.prm, err);
  cfg.epsilon = p.real("eps", 0.1 * cfg.prm.nu);
  cfg.init_profile = checked("init", [&] { return parse_init_profile(p.str("init", "random_divfree")); });
  cfg.init_file = p.str("init-file", "");
  if (p.str("mode", "").size()) {
    const auto m = p.grid("mode", {1, 0, 1});
    cfg.single_mode = {m[0], m[1], m[2]};
  }
  cfg.nonlinear = p.flag("nonlinear", true);
  cfg.linear_coupling = p.flag("coupling", true);
  cfg.stop_on_bootstrap_violation = p.flag("stop-on-violation", false);
  checked("eps", [&] {
    cfg.validate();
    return 0;
  });
  if (cfg.prm.nu > 0.0 && !(cfg.prm.nu <= 1.0)) throw UsageError("nu", "nu must lie in (0, 1]");

  const SpectralField u0 = checked("init", [&] { return make_initial_data(cfg); });
  std::ofstream ledger_os(dir / "ledger.csv");
  if (!ledger_os) throw std::runtime_error("cannot write ledger.csv");
  write_ledger_header(ledger_os);
  SpectralField final_state = u0;
  const RunResult r = run_from(cfg, u0, [&](const LedgerRow& row) { write_ledger_row(ledger_os, row); }, &final_state);
  write_checkpoint((dir / "final.nscr").string(), final_state, cfg.prm, cfg.seed);

  double violations = 0.0;
  for (const auto& row : r.ledger.rows) violations += row[kReconstructionViolations];
  out << "simulate: verdict=" << to_string(r.verdict) << " t_final=" << r.t_final << " steps=" << r.steps
      << " sup_bootstrap/eps=" << (cfg.epsilon > 0.0 ? r.ledger.sup_bootstrap() / cfg.epsilon : 0.0)
      << " reconstruction_violations=" << violations << '\n';
  if (r.past_resolution_horizon) {
    out << "simulate: flagged: t_final exceeds the physical-frame resolution horizon "
        << cfg.grid.resolution_horizon() << '\n';
  }
  if (r.failure_time >= 0.0) out << "simulate: bootstrap bound first exceeded at t=" << r.failure_time << '\n';
  if (!r.message.empty()) out << "simulate: " << r.message << '\n';
  return r.verdict == Verdict::blowup ? kExitNumerical : kExitOk;
}

int cmd_threshold_scan(const Params& p, std::ostream& out, std::ostream& err) {
  const fs::path dir = output_dir(p);
  SimulationConfig cfg = simulation_config(p);
  warn_regime(cfg.prm, err);
  const std::vector<double> nus = p.list("nus", {1e-2, 5e-3, 2.5e-3});
  const double tol = p.real("tol", 0.2);
  ThresholdScanOptions opts;
  opts.start_ratio = p.real("start", opts.start_ratio);
  opts.growth = p.real("growth", opts.growth);
  opts.max_expansions = static_cast<int>(p.integer("expansions", opts.max_expansions));
  opts.log = [&err](const std::string& line) { err << "threshold-scan: " << line << '\n'; };
  const ThresholdScanResult r = checked("nus", [&] { return threshold_scan(cfg, nus, tol, opts); });

  Csv csv(dir / "threshold_scan.csv",
          {"nu", "eps_critical", "eps_stable", "eps_unstable", "bound_only", "runs"});
  for (const auto& row : r.rows) {
    csv.row({row.nu, row.eps_critical, row.eps_stable, row.eps_unstable, row.bound_only ? 1.0 : 0.0,
             static_cast<double>(row.runs)});
  }
  Csv fit(dir / "threshold_fit.csv", {"gamma", "intercept", "residual", "monotone"});
  fit.row({r.fitted_gamma, r.intercept, r.residual, r.monotone ? 1.0 : 0.0});
  if (!r.monotone) err << "threshold-scan: note: critical amplitude is not monotone in nu\n";
  out << "threshold-scan: gamma=" << r.fitted_gamma << " residual=" << r.residual << '\n';
  return kExitOk;
}

}  // namespace

MultiplierCheckResult multiplier_check(long samples, std::uint64_t seed, double nu_fixed, double cutoff) {
  Uniform u(seed);
  MultiplierCheckResult r;
  r.samples = samples;
  const double e_minus_pi = std::exp(-M_PI);
  for (long s = 0; s < samples; ++s) {
    const double nu = nu_fixed > 0.0 ? nu_fixed : std::pow(10.0, u.range(-6.0, 0.0));
    const MultiplierParams prm(nu, cutoff);
    Wavevector w;
    w.k = u.integer(-16, 16);
    w.l = u.integer(-16, 16);
    w.eta = u.range(-64.0, 64.0);
    double t;
    const double pick = u();
    if (pick < 0.05) {
      t = 0.0;
    } else if (pick < 0.25 && w.k != 0) {
      // Near the window seams.
      const double seam = w.eta / w.k + (u() < 0.5 ? 0.0 : prm.window());
      t = std::max(0.0, seam + u.range(-1e-6, 1e-6) * std::max(1.0, std::abs(seam)));
    } else {
      t = std::pow(10.0, u.range(-3.0, 6.0));
    }
    const double m = stretching_multiplier(t, w, prm);
    const double big_m = ghost_multiplier(t, w, prm);
    if (!(m <= 1.0 && m >= std::cbrt(nu) / 2000.0)) ++r.stretching_bounds;
    if (!(big_m <= 1.0 && big_m >= e_minus_pi)) ++r.ghost_bounds;
    if (w.k != 0) {
      const double kl = std::sqrt(static_cast<double>(w.k) * w.k + static_cast<double>(w.l) * w.l);
      if (m < kl / std::sqrt(2.0 * symbol_p(t, w))) ++r.stretching_lower;
      if (kGhostCoercivityConstant * ghost_coercivity(t, w, prm) < 1.0) ++r.ghost_coercivity;
      const double later = t + u.range(0.0, 10.0) * std::max(1.0, t);
      if (ghost_multiplier(later, w, prm) > big_m * (1.0 + 1e-14)) ++r.ghost_monotone;
    }
  }
  return r;
}

int run_experiment(const ExperimentSpec& spec, std::ostream& out, std::ostream& err) {
  try {
    const Params p(spec);
    if (spec.name == "multiplier-check") return cmd_multiplier_check(p, out);
    if (spec.name == "linear-modes") return cmd_linear_modes(p, out, err);
    if (spec.name == "zero-freq") return cmd_zero_freq(p, out, err);
    if (spec.name == "dispersion") return cmd_dispersion(p, out, err);
    if (spec.name == "simulate") return cmd_simulate(p, out, err);
    if (spec.name == "threshold-scan") return cmd_threshold_scan(p, out, err);
    throw UsageError(spec.name, "unknown subcommand '" + spec.name + "'");
  } catch (const UsageError& e) {
    err << "usage error (" << e.key() << "): " << e.what() << '\n';
    return kExitUsage;
  } catch (const SimulationBlowup& e) {
    err << "numerical failure at t=" << e.time() << ": " << e.what() << '\n';
    return kExitNumerical;
  } catch (const std::exception& e) {
    err << "numerical failure: " << e.what() << '\n';
    return kExitNumerical;
  }
}

}  // namespace nscr
