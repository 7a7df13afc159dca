#include "nscr/ledger.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>

#include "nscr/multipliers.hpp"
#include "nscr/symbols.hpp"

namespace nscr {

const std::array<LedgerColumnInfo, kLedgerColumnCount>& ledger_columns() {
  using K = ColumnKind;
  static const std::array<LedgerColumnInfo, kLedgerColumnCount> cols{{
      {"t", K::time},
      {"mMQ_noteq_HN", K::sup},
      {"diss_mMQ_noteq_L2HN", K::accumulated},
      {"ghost_mQ_noteq_L2HN", K::accumulated},
      {"mMK_noteq_HN", K::sup},
      {"diss_mMK_noteq_L2HN", K::accumulated},
      {"ghost_mK_noteq_L2HN", K::accumulated},
      {"Q0_HN", K::sup},
      {"diss_Q0_L2HN", K::accumulated},
      {"K0_HN", K::sup},
      {"diss_K0_L2HN", K::accumulated},
      {"tildeU0_1_HN", K::sup},
      {"diss_tildeU0_1_L2HN", K::accumulated},
      {"tildeU0_2_HN", K::sup},
      {"visc_tildeU0_2_L2HN", K::accumulated},
      {"diss_tildeU0_2_L2HN", K::accumulated},
      {"tildeU0_3_HN", K::sup},
      {"diss_tildeU0_3_L2HN", K::accumulated},
      {"barU0_1_HN1", K::sup},
      {"diss_barU0_1_L2HN1", K::accumulated},
      {"barU0_3_HN1", K::sup},
      {"diss_barU0_3_L2HN1", K::accumulated},
      {"Uneq_1_HN", K::sup},
      {"diss_Uneq_1_L2HN", K::accumulated},
      {"ghost_Uneq_1_L2HN", K::accumulated},
      {"Uneq_2_HN", K::sup},
      {"diss_Uneq_2_L2HN", K::accumulated},
      {"ghost_Uneq_2_L2HN", K::accumulated},
      {"Uneq_3_HN", K::sup},
      {"diss_Uneq_3_L2HN", K::accumulated},
      {"ghost_Uneq_3_L2HN", K::accumulated},
      {"reconstruction_bound_violations", K::count},
      {"bootstrap_max_over_eps", K::ratio},
  }};
  return cols;
}

std::span<const std::vector<LedgerColumn>> bootstrap_groups() {
  static const std::vector<std::vector<LedgerColumn>> groups{
      {kMMQNoteq, kDissQ, kGhostQ},
      {kMMKNoteq, kDissK, kGhostK},
      {kQ0, kDissQ0},
      {kK0, kDissK0},
      {kTildeU0_1, kDissTildeU0_1},
      {kTildeU0_2, kL2TildeU0_2, kDissTildeU0_2},
      {kTildeU0_3, kDissTildeU0_3},
      {kBarU0_1, kDissBarU0_1},
      {kBarU0_3, kDissBarU0_3},
      {kUneq_1, kDissUneq_1, kGhostUneq_1},
      {kUneq_2, kDissUneq_2, kGhostUneq_2},
      {kUneq_3, kDissUneq_3, kGhostUneq_3},
  };
  return groups;
}

double LedgerRow::bootstrap_max() const {
  double worst = 0.0;
  for (const auto& g : bootstrap_groups()) {
    double s = 0.0;
    for (LedgerColumn c : g) s += v[c];
    if (std::isnan(s)) return s;
    worst = std::max(worst, s);
  }
  return worst;
}

bool LedgerRow::finite() const {
  return std::all_of(v.begin(), v.end(), [](double x) { return std::isfinite(x); });
}

struct LedgerAccumulator::Snapshot {
  std::array<double, kLedgerColumnCount> squares{};  // sup columns: squared norm; accumulated: squared integrand
  double violations = 0.0;
};

LedgerAccumulator::LedgerAccumulator(const SimulationConfig& cfg) : cfg_(cfg) {
  const Grid& g = cfg_.grid;
  const double n = cfg_.regularity_index();
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (!g.in_band(i)) continue;
    const Wavevector w = g.wavevector(i);
    if (w.is_mean()) continue;
    const double r = 1.0 + static_cast<double>(w.k) * w.k + w.eta * w.eta + static_cast<double>(w.l) * w.l;
    band_.push_back(i);
    weight_n_.push_back(std::pow(r, n));
    weight_n1_.push_back(std::pow(r, n + 1.0));
  }
}

LedgerAccumulator::Snapshot LedgerAccumulator::measure(const SpectralField& u, double t) const {
  Snapshot s;
  auto& q = s.squares;
  const Grid& g = cfg_.grid;
  const double nu = cfg_.prm.nu;
  const double scale2 = cfg_.prm.beta / (cfg_.prm.beta - 1.0);  // |K|^2 = scale2 p |W|^2
  const bool have_multipliers = nu > 0.0;
  const MultiplierParams mprm = have_multipliers ? MultiplierParams(nu, cfg_.multiplier_cutoff) : MultiplierParams();
  const double c_rec = cfg_.reconstruction_constant;
  for (std::size_t b = 0; b < band_.size(); ++b) {
    const std::size_t i = band_[b];
    const Complex u1 = u.at(0, i), u2 = u.at(1, i), u3 = u.at(2, i);
    const double a1 = std::norm(u1), a2 = std::norm(u2), a3 = std::norm(u3);
    if (a1 == 0.0 && a2 == 0.0 && a3 == 0.0) continue;
    const Wavevector w = g.wavevector(i);
    const double k = w.k, l = w.l;
    const double p = symbol_p(t, w);
    const double wn = weight_n_[b];
    const double q2 = p * p * a2;
    const Complex wv = Complex(0.0, 1.0) * (l * u1 - k * u3);
    const double k2 = scale2 * p * std::norm(wv);
    if (w.k != 0) {
      const double m = have_multipliers ? stretching_multiplier(t, w, mprm) : 1.0;
      const double big_m = have_multipliers ? ghost_multiplier(t, w, mprm) : 1.0;
      const double ghost = have_multipliers ? -ghost_multiplier_rate(t, w, mprm) * big_m * big_m : 0.0;
      const double mm2 = m * m * big_m * big_m;
      q[kMMQNoteq] += wn * mm2 * q2;
      q[kDissQ] += nu * wn * p * mm2 * q2;
      q[kGhostQ] += wn * ghost * m * m * q2;
      q[kMMKNoteq] += wn * mm2 * k2;
      q[kDissK] += nu * wn * p * mm2 * k2;
      q[kGhostK] += wn * ghost * m * m * k2;
      const double amp[3] = {a1, a2, a3};
      for (int c = 0; c < 3; ++c) {
        q[kUneq_1 + 3 * c] += wn * amp[c];
        q[kDissUneq_1 + 3 * c] += nu * wn * p * amp[c];
        q[kGhostUneq_1 + 3 * c] += wn * ghost * amp[c];
      }
      const double kl2 = k * k + l * l;
      const double mmq = std::sqrt(mm2 * q2), mmk = std::sqrt(mm2 * k2);
      const double bound13 = c_rec / kl2 * (mmk + mmq) * (1.0 + 1e-12);
      const double bound2 = c_rec / (std::sqrt(kl2) * std::sqrt(p)) * mmq * (1.0 + 1e-12);
      if (std::sqrt(a1) > bound13) s.violations += 1.0;
      if (std::sqrt(a3) > bound13) s.violations += 1.0;
      if (std::sqrt(a2) > bound2) s.violations += 1.0;
    } else {
      q[kQ0] += wn * q2;
      q[kDissQ0] += nu * wn * p * q2;
      q[kK0] += wn * k2;
      q[kDissK0] += nu * wn * p * k2;
      if (w.l != 0) {
        q[kTildeU0_1] += wn * a1;
        q[kDissTildeU0_1] += nu * wn * p * a1;
        q[kTildeU0_2] += wn * a2;
        q[kL2TildeU0_2] += nu * wn * a2;
        q[kDissTildeU0_2] += nu * wn * p * a2;
        q[kTildeU0_3] += wn * a3;
        q[kDissTildeU0_3] += nu * wn * p * a3;
      } else {
        const double wn1 = weight_n1_[b];
        const double eta2 = w.eta * w.eta;
        q[kBarU0_1] += wn1 * a1;
        q[kDissBarU0_1] += nu * wn1 * eta2 * a1;
        q[kBarU0_3] += wn1 * a3;
        q[kDissBarU0_3] += nu * wn1 * eta2 * a3;
      }
    }
  }
  return s;
}

LedgerRow LedgerAccumulator::record(const SpectralField& state, double t) {
  const Snapshot snap = measure(state, t);
  const auto& cols = ledger_columns();
  LedgerRow row;
  row[kTime] = t;
  for (int c = 0; c < kLedgerColumnCount; ++c) {
    if (cols[c].kind == ColumnKind::sup) {
      row.v[c] = std::sqrt(snap.squares[c]);
    } else if (cols[c].kind == ColumnKind::accumulated) {
      if (started_) integrated_[c] += 0.5 * (t - last_t_) * (last_integrand_[c] + snap.squares[c]);
      last_integrand_[c] = snap.squares[c];
      row.v[c] = std::sqrt(integrated_[c]);
    }
  }
  started_ = true;
  last_t_ = t;
  row[kReconstructionViolations] = snap.violations;
  const double bmax = row.bootstrap_max();
  row[kBootstrapRatio] = cfg_.epsilon > 0.0 ? bmax / cfg_.epsilon : (bmax == 0.0 ? 0.0 : INFINITY);
  return row;
}

LedgerRow diagnostics(const SpectralField& state, double t, const SimulationConfig& cfg) {
  LedgerAccumulator acc(cfg);
  return acc.record(state, t);
}

double EnergyLedger::sup(LedgerColumn c) const {
  double worst = 0.0;
  for (const auto& r : rows) worst = std::max(worst, r[c]);
  return worst;
}

double EnergyLedger::sup_bootstrap() const {
  double worst = 0.0;
  for (const auto& r : rows) worst = std::max(worst, r.bootstrap_max());
  return worst;
}

void write_ledger_header(std::ostream& os) {
  const auto& cols = ledger_columns();
  for (int c = 0; c < kLedgerColumnCount; ++c) os << (c ? "," : "") << cols[c].name;
  os << '\n';
}

void write_ledger_row(std::ostream& os, const LedgerRow& row) {
  char buf[32];
  for (int c = 0; c < kLedgerColumnCount; ++c) {
    std::snprintf(buf, sizeof buf, "%.10e", row.v[c]);
    os << (c ? "," : "") << buf;
  }
  os << '\n';
}

void EnergyLedger::write_csv(std::ostream& os) const {
  write_ledger_header(os);
  for (const auto& r : rows) write_ledger_row(os, r);
}

}  // namespace nscr
