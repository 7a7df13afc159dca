#include "nscr/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "nscr/symbols.hpp"

namespace nscr {

namespace {

// Index pairs (i, j), i <= j, of the symmetric product U_i U_j.
constexpr std::array<std::array<int, 2>, 6> kPairs{{{0, 0}, {0, 1}, {0, 2}, {1, 1}, {1, 2}, {2, 2}}};

int pair_slot(int i, int j) {
  if (i > j) std::swap(i, j);
  for (int s = 0; s < 6; ++s)
    if (kPairs[s][0] == i && kPairs[s][1] == j) return s;
  return -1;
}

void require_finite(const SpectralField& f, double t) {
  for (int c = 0; c < 3; ++c)
    for (const Complex& z : f.component(c))
      if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
        throw SimulationBlowup("non-finite coefficient", t);
      }
}

}  // namespace

Solver::Solver(const SimulationConfig& cfg) : cfg_(cfg) {
  cfg_.validate();
  const Grid& g = cfg_.grid;
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (!g.in_band(i)) continue;
    band_.push_back(i);
    band_w_.push_back(g.wavevector(i));
  }
  if (cfg_.nonlinear) {
    fft_ = std::make_unique<PhysicalTransform>(g);
    for (auto& v : vel_) v.resize(g.size());
    prod_.resize(g.size());
    for (auto& p : prod_hat_) p.resize(g.size());
  }
}

void Solver::add_nonlinear(double t, const SpectralField& u, SpectralField& out) {
  const std::size_t n = cfg_.grid.size();
  for (int c = 0; c < 3; ++c) {
    fft_->to_physical(u.component(c), vel_[c]);
    double m = 0.0;
    for (double x : vel_[c]) m = std::max(m, std::abs(x));
    umax_[c] = m;
  }
  for (int s = 0; s < 6; ++s) {
    const auto& a = vel_[kPairs[s][0]];
    const auto& b = vel_[kPairs[s][1]];
    for (std::size_t x = 0; x < n; ++x) prod_[x] = a[x] * b[x];
    fft_->to_spectral(prod_, prod_hat_[s]);
  }
  for (std::size_t b = 0; b < band_.size(); ++b) {
    const std::size_t i = band_[b];
    const Wavevector& w = band_w_[b];
    if (w.is_mean()) continue;
    const double xi[3] = {static_cast<double>(w.k), sheared_eta(t, w), static_cast<double>(w.l)};
    const double p = xi[0] * xi[0] + xi[1] * xi[1] + xi[2] * xi[2];
    Complex nl[3];
    for (int c = 0; c < 3; ++c) {
      Complex d(0.0, 0.0);
      for (int j = 0; j < 3; ++j) d += xi[j] * prod_hat_[pair_slot(c, j)][i];
      nl[c] = Complex(d.imag(), -d.real());  // -i * d
    }
    const Complex proj = (xi[0] * nl[0] + xi[1] * nl[1] + xi[2] * nl[2]) / p;
    for (int c = 0; c < 3; ++c) out.at(c, i) += nl[c] - xi[c] * proj;
  }
}

void Solver::add_linear(double t, const SpectralField& u, SpectralField& out) const {
  const double beta = cfg_.prm.beta;
  for (std::size_t b = 0; b < band_.size(); ++b) {
    const std::size_t i = band_[b];
    const Wavevector& w = band_w_[b];
    if (w.is_mean()) continue;
    const double xi[3] = {static_cast<double>(w.k), sheared_eta(t, w), static_cast<double>(w.l)};
    const double p = xi[0] * xi[0] + xi[1] * xi[1] + xi[2] * xi[2];
    const Complex u1 = u.at(0, i), u2 = u.at(1, i);
    // grad_L Delta_L^{-1} of the linear pressure sources, as a multiple of xi.
    const Complex pressure = (-(beta - 2.0) * xi[0] * u2 + beta * xi[1] * u1) / p;
    out.at(0, i) += -(1.0 - beta) * u2 + xi[0] * pressure;
    out.at(1, i) += -beta * u1 + xi[1] * pressure;
    out.at(2, i) += xi[2] * pressure;
  }
}

SpectralField Solver::rhs(double t, const SpectralField& u) {
  if (!(u.grid() == cfg_.grid)) throw std::invalid_argument("rhs: grid mismatch");
  if (std::abs(u.frame_time() - t) > 1e-9 * std::max(1.0, std::abs(t))) {
    throw std::invalid_argument("rhs: t does not match the field's frame time");
  }
  if (!is_band_limited(u)) throw std::domain_error("rhs: field has content outside the dealiased band");
  SpectralField out(cfg_.grid, t);
  if (cfg_.nonlinear) add_nonlinear(t, u, out);
  if (cfg_.linear_coupling) add_linear(t, u, out);
  return out;
}

SpectralField Solver::step(const SpectralField& u, double t, double dt) {
  if (!(dt > 0.0)) throw std::invalid_argument("step: dt must be positive");
  const double nu = cfg_.prm.nu;
  const double th = t + 0.5 * dt, t1 = t + dt;
  std::vector<double> e_first(band_.size()), e_second(band_.size());
  for (std::size_t b = 0; b < band_.size(); ++b) {
    e_first[b] = viscous_factor(nu, t, th, band_w_[b]);
    e_second[b] = viscous_factor(nu, th, t1, band_w_[b]);
  }

  const SpectralField k1 = rhs(t, u);
  const std::array<double, 3> umax_start = umax_;
  SpectralField ua(cfg_.grid, th);
  for (std::size_t b = 0; b < band_.size(); ++b) {
    const std::size_t i = band_[b];
    for (int c = 0; c < 3; ++c) ua.at(c, i) = e_first[b] * (u.at(c, i) + 0.5 * dt * k1.at(c, i));
  }
  const SpectralField k2 = rhs(th, ua);
  SpectralField ub(cfg_.grid, t1);
  for (std::size_t b = 0; b < band_.size(); ++b) {
    const std::size_t i = band_[b];
    const double e_full = e_first[b] * e_second[b];
    for (int c = 0; c < 3; ++c) {
      ub.at(c, i) = e_full * (u.at(c, i) - dt * k1.at(c, i)) + 2.0 * dt * e_second[b] * k2.at(c, i);
    }
  }
  const SpectralField k3 = rhs(t1, ub);
  SpectralField out(cfg_.grid, t1);
  for (std::size_t b = 0; b < band_.size(); ++b) {
    const std::size_t i = band_[b];
    const double e_full = e_first[b] * e_second[b];
    for (int c = 0; c < 3; ++c) {
      out.at(c, i) = e_full * (u.at(c, i) + dt / 6.0 * k1.at(c, i)) + (2.0 * dt / 3.0) * e_second[b] * k2.at(c, i) +
                     dt / 6.0 * k3.at(c, i);
    }
  }
  umax_ = umax_start;
  leray_project_in_place(t1, out);
  require_finite(out, t1);
  return out;
}

double Solver::cfl_limit(double t, double dt_max) const {
  if (cfg_.cfl <= 0.0 || !cfg_.nonlinear) return dt_max;
  const Grid& g = cfg_.grid;
  double xi_y = g.cutoff_y() / g.ly() + g.cutoff_x() * t;
  // Modes damped by more than e^{-1} per step cannot destabilize the explicit stages.
  if (cfg_.prm.nu > 0.0) xi_y = std::min(xi_y, std::sqrt(1.0 / (cfg_.prm.nu * dt_max)));
  const double rate = umax_[0] * g.cutoff_x() + umax_[1] * xi_y + umax_[2] * g.cutoff_z();
  if (!(rate > 0.0)) return dt_max;
  return std::min(dt_max, cfg_.cfl / rate);
}

SpectralField nonlinear_rhs(double t, const SpectralField& u, const SimulationConfig& cfg) {
  Solver s(cfg);
  return s.rhs(t, u);
}

SpectralField step(const SpectralField& state, double t, double dt, const SimulationConfig& cfg) {
  Solver s(cfg);
  return s.step(state, t, dt);
}

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::stable: return "stable";
    case Verdict::blowup: return "blowup";
    case Verdict::maxtime: return "maxtime";
  }
  return "?";
}

RunResult run(const SimulationConfig& cfg, const RowCallback& on_row) {
  return run_from(cfg, make_initial_data(cfg), on_row);
}

RunResult run_from(const SimulationConfig& cfg, SpectralField u, const RowCallback& on_row,
                   SpectralField* final_state) {
  Solver solver(cfg);
  LedgerAccumulator acc(cfg);
  RunResult res;
  const double bound = cfg.bootstrap_factor * cfg.epsilon;
  const double blowup = cfg.blowup_factor * cfg.epsilon;
  bool violated = false;
  double t = u.frame_time();

  auto record = [&](double time) -> bool {
    const LedgerRow row = acc.record(u, time);
    res.ledger.rows.push_back(row);
    if (on_row) on_row(row);
    const double worst = row.bootstrap_max();
    if (!row.finite() || !(worst <= blowup)) {
      res.verdict = Verdict::blowup;
      res.failure_time = time;
      res.message = "ledger exceeded the blowup threshold";
      return false;
    }
    if (worst > bound && !violated) {
      violated = true;
      res.failure_time = time;
      if (cfg.stop_on_bootstrap_violation) return false;
    }
    return true;
  };

  bool go = record(t);
  if (go && cfg.nonlinear && cfg.cfl > 0.0) (void)solver.rhs(t, u);
  const double t_end = cfg.t_end;
  while (go && t < t_end - 1e-12 * std::max(1.0, t_end)) {
    if (res.steps >= cfg.max_steps) {
      res.message = "step budget exhausted";
      break;
    }
    double dt = std::min(cfg.dt, t_end - t);
    dt = solver.cfl_limit(t, dt);
    try {
      u = solver.step(u, t, dt);
    } catch (const SimulationBlowup& e) {
      res.verdict = Verdict::blowup;
      res.failure_time = e.time();
      res.message = e.what();
      go = false;
      break;
    }
    t = (t_end - (t + dt) < 1e-12 * std::max(1.0, t_end)) ? t_end : t + dt;
    u.set_frame_time(t);
    ++res.steps;
    go = record(t);
  }
  res.t_final = t;
  res.past_resolution_horizon = t > cfg.grid.resolution_horizon();
  if (res.verdict != Verdict::blowup) {
    const bool finished = t >= t_end - 1e-12 * std::max(1.0, t_end);
    res.verdict = (!violated && finished) ? Verdict::stable : Verdict::maxtime;
    if (violated && res.message.empty()) res.message = "left the bootstrap bound";
  }
  if (final_state) *final_state = std::move(u);
  return res;
}

}  // namespace nscr
