#include "nscr/checkpoint.hpp"

#include <array>
#include <bit>
#include <cstring>
#include <fstream>
#include <stdexcept>

namespace nscr {

namespace {

constexpr std::array<char, 5> kMagic{'N', 'S', 'C', 'R', '1'};

template <class U>
void put_le(std::ostream& os, U v) {
  static_assert(std::is_unsigned_v<U>);
  char b[sizeof(U)];
  for (std::size_t i = 0; i < sizeof(U); ++i) b[i] = static_cast<char>((v >> (8 * i)) & 0xFF);
  os.write(b, sizeof(U));
}

template <class U>
U get_le(std::istream& is) {
  unsigned char b[sizeof(U)];
  if (!is.read(reinterpret_cast<char*>(b), sizeof(U))) throw std::runtime_error("checkpoint: truncated file");
  U v = 0;
  for (std::size_t i = 0; i < sizeof(U); ++i) v |= static_cast<U>(b[i]) << (8 * i);
  return v;
}

void put_f64(std::ostream& os, double x) { put_le(os, std::bit_cast<std::uint64_t>(x)); }
double get_f64(std::istream& is) { return std::bit_cast<double>(get_le<std::uint64_t>(is)); }

}  // namespace

void write_checkpoint(const std::string& path, const SpectralField& field, const PhysicsParams& prm,
                      std::uint64_t seed) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("checkpoint: cannot open '" + path + "' for writing");
  const Grid& g = field.grid();
  os.write(kMagic.data(), kMagic.size());
  put_le<std::uint32_t>(os, static_cast<std::uint32_t>(g.nx()));
  put_le<std::uint32_t>(os, static_cast<std::uint32_t>(g.ny()));
  put_le<std::uint32_t>(os, static_cast<std::uint32_t>(g.nz()));
  put_f64(os, g.ly());
  put_f64(os, g.dealias_fraction());
  put_f64(os, prm.nu);
  put_f64(os, prm.beta);
  put_f64(os, field.frame_time());
  put_le<std::uint64_t>(os, seed);
  for (int c = 0; c < 3; ++c)
    for (const Complex& z : field.component(c)) {
      put_f64(os, z.real());
      put_f64(os, z.imag());
    }
  if (!os) throw std::runtime_error("checkpoint: write failed for '" + path + "'");
}

Checkpoint read_checkpoint(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw std::runtime_error("checkpoint: cannot open '" + path + "'");
  std::array<char, 5> magic{};
  if (!is.read(magic.data(), magic.size()) || magic != kMagic) {
    throw std::runtime_error("checkpoint: '" + path + "' is not an NSCR1 file");
  }
  const int nx = static_cast<int>(get_le<std::uint32_t>(is));
  const int ny = static_cast<int>(get_le<std::uint32_t>(is));
  const int nz = static_cast<int>(get_le<std::uint32_t>(is));
  const double ly = get_f64(is);
  const double dealias = get_f64(is);
  const double nu = get_f64(is);
  const double beta = get_f64(is);
  const double t = get_f64(is);
  const std::uint64_t seed = get_le<std::uint64_t>(is);
  Grid grid(nx, ny, nz, ly, dealias);
  Checkpoint cp{grid, PhysicsParams(nu, beta), t, seed, SpectralField(grid, t)};
  for (int c = 0; c < 3; ++c)
    for (Complex& z : cp.field.component(c)) {
      const double re = get_f64(is);
      const double im = get_f64(is);
      z = Complex(re, im);
    }
  return cp;
}

}  // namespace nscr
