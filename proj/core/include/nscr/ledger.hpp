#pragma once

#include <array>
#include <cstddef>
#include <iosfwd>
#include <span>
#include <string_view>
#include <vector>

#include "nscr/simulation_config.hpp"
#include "nscr/spectral_field.hpp"

namespace nscr {

// Columns of the energy ledger, in CSV order. H^N uses N = sigma - 2.
// sup columns are instantaneous norms; accumulated columns are (integral_0^t f^2)^{1/2}.
enum LedgerColumn : int {
  kTime,
  kMMQNoteq,        // ||m M Q_noteq||_{H^N}
  kDissQ,           // nu^{1/2} ||m M grad_L Q_noteq||_{L^2 H^N}
  kGhostQ,          // ||sqrt(-M' M) m Q_noteq||_{L^2 H^N}
  kMMKNoteq,        // ||m M K_noteq||_{H^N}
  kDissK,
  kGhostK,
  kQ0,              // ||Q_0||_{H^N}
  kDissQ0,          // nu^{1/2} ||grad Q_0||_{L^2 H^N}
  kK0,
  kDissK0,
  kTildeU0_1,       // ||U_0^1, l != 0||_{H^N}
  kDissTildeU0_1,
  kTildeU0_2,
  kL2TildeU0_2,     // nu^{1/2} ||tilde U_0^2||_{L^2 H^N}
  kDissTildeU0_2,
  kTildeU0_3,
  kDissTildeU0_3,
  kBarU0_1,         // ||U_0^1, l = 0||_{H^{N+1}}
  kDissBarU0_1,     // nu^{1/2} ||d_y bar U_0^1||_{L^2 H^{N+1}}
  kBarU0_3,
  kDissBarU0_3,
  kUneq_1,          // ||U_noteq^1||_{H^N}
  kDissUneq_1,
  kGhostUneq_1,
  kUneq_2,
  kDissUneq_2,
  kGhostUneq_2,
  kUneq_3,
  kDissUneq_3,
  kGhostUneq_3,
  kReconstructionViolations,  // modes breaking |U^{1,2,3}| <= C |k,l|^{-2}(|mMK| + |mMQ|)-type bounds
  kBootstrapRatio,            // max over bootstrap groups of (group sum) / epsilon
  kLedgerColumnCount
};

enum class ColumnKind { time, sup, accumulated, count, ratio };

struct LedgerColumnInfo {
  std::string_view name;
  ColumnKind kind;
};

const std::array<LedgerColumnInfo, kLedgerColumnCount>& ledger_columns();

// Column groups whose sums the bootstrap argument bounds by 10 epsilon.
std::span<const std::vector<LedgerColumn>> bootstrap_groups();

struct LedgerRow {
  std::array<double, kLedgerColumnCount> v{};
  double& operator[](LedgerColumn c) { return v[c]; }
  double operator[](LedgerColumn c) const { return v[c]; }
  // Largest bootstrap group sum.
  double bootstrap_max() const;
  bool finite() const;
};

// Instantaneous ledger row; accumulated columns are zero.
LedgerRow diagnostics(const SpectralField& state, double t, const SimulationConfig& cfg);

// Builds rows along a trajectory, integrating the accumulated columns with the trapezoidal rule.
class LedgerAccumulator {
 public:
  explicit LedgerAccumulator(const SimulationConfig& cfg);
  LedgerRow record(const SpectralField& state, double t);

 private:
  struct Snapshot;
  Snapshot measure(const SpectralField& state, double t) const;

  SimulationConfig cfg_;
  std::vector<std::size_t> band_;
  std::vector<double> weight_n_;   // (1 + |k,eta,l|^2)^N
  std::vector<double> weight_n1_;  // (1 + |k,eta,l|^2)^{N+1}
  std::array<double, kLedgerColumnCount> integrated_{};
  std::array<double, kLedgerColumnCount> last_integrand_{};
  double last_t_ = 0.0;
  bool started_ = false;
};

struct EnergyLedger {
  std::vector<LedgerRow> rows;

  // Largest value of a column over all rows.
  double sup(LedgerColumn c) const;
  double sup_bootstrap() const;
  void write_csv(std::ostream& os) const;
};

void write_ledger_header(std::ostream& os);
void write_ledger_row(std::ostream& os, const LedgerRow& row);

}  // namespace nscr
