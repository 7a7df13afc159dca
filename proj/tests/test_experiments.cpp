#include <gtest/gtest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "nscr/checkpoint.hpp"
#include "nscr/config_file.hpp"
#include "nscr/experiments.hpp"
#include "nscr/solver.hpp"
#include "nscr/threshold_scan.hpp"
#include "test_support.hpp"

using namespace nscr;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("nscr_test_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream is(p, std::ios::binary);
  std::ostringstream os;
  os << is.rdbuf();
  return os.str();
}

int run_cli(const std::string& name, ParamMap params, std::string* err_text = nullptr) {
  std::ostringstream out, err;
  const int code = run_experiment({name, std::move(params)}, out, err);
  if (err_text) *err_text = err.str();
  return code;
}

}  // namespace

TEST(ConfigFile, SectionsOverlayGlobals) {
  std::istringstream is(
      "# experiment manifest\n"
      "nu = 0.01\n"
      "beta=2\n"
      "[simulate]\n"
      "eps = 1e-3 ; trailing comment\n"
      "nu = 0.02\n"
      "[dispersion]\n"
      "Ly = 64\n");
  const ConfigFile cfg = ConfigFile::parse(is);
  const ParamMap sim = cfg.section("simulate");
  EXPECT_EQ(sim.at("nu"), "0.02");
  EXPECT_EQ(sim.at("beta"), "2");
  EXPECT_EQ(sim.at("eps"), "1e-3");
  EXPECT_EQ(cfg.section("dispersion").at("nu"), "0.01");
  EXPECT_EQ(cfg.section("zero-freq").size(), 2u);
  EXPECT_TRUE(cfg.has_section("dispersion"));
  EXPECT_FALSE(cfg.has_section("linear-modes"));
}

TEST(ConfigFile, RejectsMalformedLines) {
  std::istringstream a("nu 0.01\n");
  EXPECT_THROW(ConfigFile::parse(a), std::invalid_argument);
  std::istringstream b("[simulate\n");
  EXPECT_THROW(ConfigFile::parse(b), std::invalid_argument);
  EXPECT_THROW(ConfigFile::load("/nonexistent/manifest.cfg"), std::runtime_error);
}

TEST(Checkpoint, RoundTrip) {
  const Grid g(8, 12, 8, 1.5);
  const SpectralField f = nscr::testing::random_divfree_field(g, 51, 2.5);
  const fs::path p = scratch("checkpoint") / "state.nscr";
  write_checkpoint(p.string(), f, PhysicsParams(3e-3, -2.0), 99);
  const Checkpoint c = read_checkpoint(p.string());
  EXPECT_TRUE(c.grid == g);
  EXPECT_EQ(c.prm.nu, 3e-3);
  EXPECT_EQ(c.prm.beta, -2.0);
  EXPECT_EQ(c.t, 2.5);
  EXPECT_EQ(c.seed, 99u);
  for (int k = 0; k < 3; ++k)
    for (std::size_t i = 0; i < g.size(); ++i) ASSERT_EQ(c.field.at(k, i), f.at(k, i));
  EXPECT_EQ(slurp(p).substr(0, 5), "NSCR1");
}

TEST(Checkpoint, RejectsForeignFiles) {
  const fs::path p = scratch("checkpoint_bad") / "bad.nscr";
  std::ofstream(p) << "NOTAFILE";
  EXPECT_THROW(read_checkpoint(p.string()), std::runtime_error);
  EXPECT_THROW(read_checkpoint((p.parent_path() / "missing").string()), std::runtime_error);
}

TEST(Checkpoint, FileInitialDataResumes) {
  const fs::path dir = scratch("checkpoint_init");
  SimulationConfig cfg;
  cfg.grid = Grid(8, 8, 8, 1.0);
  cfg.epsilon = 2e-3;
  const SpectralField a = make_initial_data(cfg);
  write_checkpoint((dir / "a.nscr").string(), a, cfg.prm, cfg.seed);
  cfg.init_profile = InitProfile::file;
  cfg.init_file = (dir / "a.nscr").string();
  const SpectralField b = make_initial_data(cfg);
  EXPECT_NEAR(sobolev_norm(b, cfg.sigma), cfg.epsilon, 1e-12 * cfg.epsilon);
  cfg.grid = Grid(16, 8, 8, 1.0);
  EXPECT_THROW(make_initial_data(cfg), std::invalid_argument);
}

TEST(ThresholdScan, SyntheticLineFit) {
  const std::vector<double> nus{1e-2, 5e-3, 2.5e-3, 1e-3};
  std::vector<double> eps;
  for (double nu : nus) eps.push_back(0.3 * nu);
  const LineFit f = fit_gamma(nus, eps);
  EXPECT_NEAR(f.slope, 1.0, 1e-6);
  EXPECT_NEAR(std::exp(f.intercept), 0.3, 1e-9);
}

TEST(ThresholdScan, BisectsSyntheticThreshold) {
  SimulationConfig base;
  const std::vector<double> nus{2.5e-3, 1e-2, 5e-3};
  const StabilityProbe probe = [](const SimulationConfig& c) {
    return std::pair<bool, std::string>{c.epsilon < 0.3 * c.prm.nu, "maxtime"};
  };
  ThresholdScanOptions opts;
  opts.threads = 3;
  opts.start_ratio = 0.1;
  const ThresholdScanResult r = threshold_scan(base, nus, 0.01, opts, probe);
  ASSERT_EQ(r.rows.size(), 3u);
  EXPECT_EQ(r.rows[0].nu, 2.5e-3);
  EXPECT_EQ(r.rows[2].nu, 1e-2);
  for (const auto& row : r.rows) {
    EXPECT_FALSE(row.bound_only);
    EXPECT_LT(row.eps_stable, 0.3 * row.nu);
    EXPECT_GE(row.eps_unstable, 0.3 * row.nu);
    EXPECT_LE(row.eps_unstable / row.eps_stable - 1.0, 0.01);
    EXPECT_EQ(row.unstable_verdict, "maxtime");
  }
  EXPECT_NEAR(r.fitted_gamma, 1.0, 0.01);
  EXPECT_TRUE(r.monotone);
}

TEST(ThresholdScan, FlagsUnbracketedRows) {
  SimulationConfig base;
  const std::vector<double> nus{1e-2, 5e-3};
  const StabilityProbe always = [](const SimulationConfig&) { return std::pair<bool, std::string>{true, "stable"}; };
  ThresholdScanOptions opts;
  opts.max_expansions = 2;
  const ThresholdScanResult r = threshold_scan(base, nus, 0.1, opts, always);
  for (const auto& row : r.rows) {
    EXPECT_TRUE(row.bound_only);
    EXPECT_GT(row.eps_critical, 0.0);
    EXPECT_EQ(row.eps_unstable, 0.0);
  }
  const StabilityProbe never = [](const SimulationConfig&) { return std::pair<bool, std::string>{false, "blowup"}; };
  const ThresholdScanResult n = threshold_scan(base, nus, 0.1, opts, never);
  for (const auto& row : n.rows) {
    EXPECT_TRUE(row.bound_only);
    EXPECT_GT(row.eps_unstable, 0.0);
  }
}

TEST(ThresholdScan, RejectsBadViscosityLists) {
  SimulationConfig base;
  const std::vector<double> dup{1e-2, 1e-2};
  EXPECT_THROW(threshold_scan(base, dup, 0.1), std::invalid_argument);
  const std::vector<double> neg{-1e-2};
  EXPECT_THROW(threshold_scan(base, neg, 0.1), std::invalid_argument);
}

TEST(Experiments, UnknownSubcommandAndKeys) {
  std::string err;
  EXPECT_EQ(run_cli("no-such-thing", {}, &err), kExitUsage);
  EXPECT_EQ(run_cli("zero-freq", {{"bogus", "1"}, {"out", scratch("bogus").string()}}, &err), kExitUsage);
  EXPECT_NE(err.find("bogus"), std::string::npos);
  EXPECT_EQ(run_cli("zero-freq", {{"nu", "abc"}, {"out", scratch("abc").string()}}, &err), kExitUsage);
  EXPECT_NE(err.find("nu"), std::string::npos);
  EXPECT_EQ(run_cli("linear-modes", {{"beta", "0.5"}, {"out", scratch("beta").string()}}, &err), kExitUsage);
  EXPECT_NE(err.find("beta"), std::string::npos);
}

TEST(Experiments, MultiplierCheckDefaults) {
  const fs::path dir = scratch("mc");
  EXPECT_EQ(run_cli("multiplier-check", {{"out", dir.string()}}), kExitOk);
  const std::string csv = slurp(dir / "multiplier_check.csv");
  EXPECT_EQ(csv.rfind("check,samples,violations\n", 0), 0u);
  EXPECT_EQ(csv.find(",10000,1"), std::string::npos);
  EXPECT_TRUE(fs::exists(dir / "multiplier_profile.csv"));
}

TEST(Experiments, LinearModesEnvelope) {
  const fs::path dir = scratch("lm");
  EXPECT_EQ(run_cli("linear-modes", {{"out", dir.string()}, {"nu", "1e-2"}, {"beta", "2"}, {"k", "1"}, {"l", "1"}}),
            kExitOk);
  std::ifstream is(dir / "linear_modes.csv");
  std::string line;
  std::getline(is, line);
  EXPECT_EQ(line.rfind("t,weighted_energy", 0), 0u);
  int rows = 0;
  while (std::getline(is, line)) {
    double t, measured, envelope;
    ASSERT_EQ(std::sscanf(line.c_str(), "%lf,%lf,%lf", &t, &measured, &envelope), 3);
    EXPECT_LE(measured, envelope * (1.0 + 1e-8));
    ++rows;
  }
  EXPECT_GT(rows, 100);
}

TEST(Experiments, DeterministicBytesAndConfigOverlay) {
  const fs::path dir = scratch("det");
  const fs::path manifest = dir / "manifest.cfg";
  std::ofstream(manifest) << "[zero-freq]\nnu = 1e-2\npoints = 50\n";
  ParamMap flags{{"out", (dir / "a").string()}, {"T", "30"}};
  const ExperimentSpec spec = make_experiment_spec("zero-freq", manifest.string(), flags);
  EXPECT_EQ(spec.params.at("nu"), "1e-2");
  EXPECT_EQ(spec.params.at("T"), "30");
  std::ostringstream out, err;
  EXPECT_EQ(run_experiment(spec, out, err), kExitOk);
  ExperimentSpec again = spec;
  again.params["out"] = (dir / "b").string();
  EXPECT_EQ(run_experiment(again, out, err), kExitOk);
  const std::string a = slurp(dir / "a" / "zero_freq.csv");
  EXPECT_FALSE(a.empty());
  EXPECT_EQ(a, slurp(dir / "b" / "zero_freq.csv"));
  EXPECT_EQ(std::count(a.begin(), a.end(), '\n'), 52);
}

TEST(Experiments, SimulateWritesLedgerAndCheckpoint) {
  const fs::path dir = scratch("sim");
  std::string err;
  EXPECT_EQ(run_cli("simulate", {{"out", dir.string()}, {"grid", "8,8,8"}, {"Ly", "1"}, {"T", "0.5"}}, &err),
            kExitOk)
      << err;
  const std::string ledger = slurp(dir / "ledger.csv");
  EXPECT_EQ(ledger.rfind("t,mMQ_noteq_HN", 0), 0u);
  const Checkpoint c = read_checkpoint((dir / "final.nscr").string());
  EXPECT_EQ(c.t, 0.5);
  EXPECT_EQ(run_cli("simulate", {{"out", dir.string()}, {"grid", "8,8"}}), kExitUsage);
  EXPECT_EQ(run_cli("simulate", {{"out", dir.string()}, {"sigma", "4"}}), kExitUsage);
}

TEST(Experiments, SimulateBlowupExitCode) {
  const fs::path dir = scratch("blow");
  EXPECT_EQ(run_cli("simulate", {{"out", dir.string()},
                                 {"grid", "16,16,16"},
                                 {"Ly", "2"},
                                 {"nu", "1e-4"},
                                 {"eps", "50"},
                                 {"cfl", "0"},
                                 {"dt", "2"},
                                 {"T", "200"}}),
            kExitNumerical);
}
