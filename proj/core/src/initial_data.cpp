#include <cmath>
#include <cstdint>
#include <random>
#include <stdexcept>

#include "nscr/checkpoint.hpp"
#include "nscr/solver.hpp"

namespace nscr {

void SimulationConfig::validate() const {
  if (!(epsilon >= 0.0) || !std::isfinite(epsilon)) throw std::invalid_argument("epsilon must be >= 0");
  if (!(sigma > 4.5)) throw std::invalid_argument("sigma must exceed 9/2");
  if (!(dt > 0.0)) throw std::invalid_argument("dt must be positive");
  if (!(cfl >= 0.0)) throw std::invalid_argument("cfl must be >= 0");
  if (!(t_end >= 0.0)) throw std::invalid_argument("T must be >= 0");
  if (!(bootstrap_factor > 0.0) || !(blowup_factor > bootstrap_factor)) {
    throw std::invalid_argument("need 0 < bootstrap factor < blowup factor");
  }
  if (!(multiplier_cutoff > 0.0)) throw std::invalid_argument("multiplier cutoff must be positive");
  if (max_steps <= 0) throw std::invalid_argument("max_steps must be positive");
  if (init_profile == InitProfile::file && init_file.empty()) {
    throw std::invalid_argument("init profile 'file' needs an input path");
  }
}

const char* to_string(InitProfile p) {
  switch (p) {
    case InitProfile::random_divfree: return "random_divfree";
    case InitProfile::single_mode: return "single_mode";
    case InitProfile::file: return "file";
  }
  return "?";
}

InitProfile parse_init_profile(const std::string& s) {
  if (s == "random_divfree") return InitProfile::random_divfree;
  if (s == "single_mode") return InitProfile::single_mode;
  if (s == "file") return InitProfile::file;
  throw std::invalid_argument("unknown init profile '" + s + "'");
}

namespace {

// Portable standard normal draws: the distribution objects of the standard library are
// implementation-defined, so seeded fields would differ between toolchains.
class NormalStream {
 public:
  explicit NormalStream(std::uint64_t seed) : rng_(seed) {}
  double next() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    double u1 = uniform();
    while (u1 <= 0.0) u1 = uniform();
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    spare_ = r * std::sin(2.0 * M_PI * u2);
    has_spare_ = true;
    return r * std::cos(2.0 * M_PI * u2);
  }

 private:
  double uniform() { return static_cast<double>(rng_() >> 11) * 0x1.0p-53; }
  std::mt19937_64 rng_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

void normalize_to(SpectralField& f, double epsilon, double sigma) {
  const double n = sobolev_norm(f, sigma);
  if (epsilon == 0.0) {
    f.set_zero();
    return;
  }
  if (!(n > 0.0)) throw std::invalid_argument("initial data: no resolvable modes to carry the amplitude");
  f *= epsilon / n;
}

}  // namespace

SpectralField make_initial_data(const SimulationConfig& cfg) {
  cfg.validate();
  const Grid& g = cfg.grid;
  SpectralField u(g, 0.0);
  switch (cfg.init_profile) {
    case InitProfile::random_divfree: {
      NormalStream normal(cfg.seed);
      for (std::size_t i = 0; i < g.size(); ++i) {
        if (!g.in_band(i)) continue;
        const Wavevector w = g.wavevector(i);
        if (w.is_mean()) continue;
        const double r2 = static_cast<double>(w.k) * w.k + w.eta * w.eta + static_cast<double>(w.l) * w.l;
        const double amp = std::exp(-r2 / 8.0);  // energy spectrum ~ exp(-|xi|^2 / 4)
        for (int c = 0; c < 3; ++c) {
          const double re = normal.next();
          const double im = normal.next();
          u.at(c, i) = amp * Complex(re, im);
        }
      }
      break;
    }
    case InitProfile::single_mode: {
      const ModeLabel m = cfg.single_mode;
      if (!g.in_band(m) || (m.k == 0 && m.j == 0 && m.l == 0)) {
        throw std::invalid_argument("single_mode: mode outside the dealiased band or the mean mode");
      }
      const std::size_t i = g.index_of(m.k, m.j, m.l);
      const Wavevector w = g.wavevector(i);
      const double xi[3] = {static_cast<double>(w.k), w.eta, static_cast<double>(w.l)};
      double a[3] = {1.0, 1.0, 1.0};
      const double p = xi[0] * xi[0] + xi[1] * xi[1] + xi[2] * xi[2];
      const double d = (xi[0] + xi[1] + xi[2]) / p;
      double len = 0.0;
      for (int c = 0; c < 3; ++c) {
        a[c] -= xi[c] * d;
        len += a[c] * a[c];
      }
      if (len < 1e-12) {
        a[0] = xi[1];
        a[1] = -xi[0];
        a[2] = 0.0;
        if (a[0] == 0.0 && a[1] == 0.0) a[0] = 1.0;
      }
      for (int c = 0; c < 3; ++c) u.at(c, i) = a[c];
      break;
    }
    case InitProfile::file: {
      Checkpoint cp = read_checkpoint(cfg.init_file);
      if (!(cp.grid == g)) throw std::invalid_argument("init file grid does not match the configuration");
      u = std::move(cp.field);
      u.set_frame_time(0.0);
      break;
    }
  }
  truncate_to_band(u);
  leray_project_in_place(0.0, u);
  enforce_hermitian(u);
  normalize_to(u, cfg.epsilon, cfg.sigma);
  return u;
}

}  // namespace nscr
