#include "ptw/wigner_io.hpp"

#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <iomanip>
#include <ostream>

#include "ptw/error.hpp"

namespace ptw {

namespace {

template <typename T>
void put(std::ostream& out, T value) {
  static_assert(sizeof(T) == 8);
  std::uint64_t bits;
  std::memcpy(&bits, &value, 8);
  if constexpr (std::endian::native == std::endian::big) bits = __builtin_bswap64(bits);
  char bytes[8];
  std::memcpy(bytes, &bits, 8);
  out.write(bytes, 8);
}

template <typename T>
T get(std::istream& in) {
  char bytes[8];
  if (!in.read(bytes, 8)) throw MeasurementError("truncated Wigner binary");
  std::uint64_t bits;
  std::memcpy(&bits, bytes, 8);
  if constexpr (std::endian::native == std::endian::big) bits = __builtin_bswap64(bits);
  T value;
  std::memcpy(&value, &bits, 8);
  return value;
}

}  // namespace

void write_wigner_binary(const WignerField& field, std::ostream& out) {
  const auto& g = field.grid();
  put<std::uint64_t>(out, static_cast<std::uint64_t>(g.nx()));
  put<std::uint64_t>(out, static_cast<std::uint64_t>(g.np()));
  put(out, g.x_min());
  put(out, g.x_max());
  put(out, g.p_min());
  put(out, g.p_max());
  const auto& v = field.values();
  for (Eigen::Index i = 0; i < v.rows(); ++i) {
    for (Eigen::Index j = 0; j < v.cols(); ++j) put(out, v(i, j));
  }
  if (!out) throw Error("failed writing Wigner binary");
}

void write_wigner_binary(const WignerField& field, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot open " + path.string() + " for writing");
  write_wigner_binary(field, out);
}

WignerField read_wigner_binary(std::istream& in) {
  const auto nx = get<std::uint64_t>(in);
  const auto np = get<std::uint64_t>(in);
  if (nx < 16 || np < 16 || nx > (1u << 24) || np > (1u << 24)) {
    throw MeasurementError("Wigner binary header has implausible sizes");
  }
  const double x_min = get<double>(in);
  const double x_max = get<double>(in);
  const double p_min = get<double>(in);
  const double p_max = get<double>(in);
  PhaseSpaceGrid grid(x_min, x_max, static_cast<int>(nx), p_min, p_max, static_cast<int>(np));
  RowMatrix values(static_cast<Eigen::Index>(nx), static_cast<Eigen::Index>(np));
  for (Eigen::Index i = 0; i < values.rows(); ++i) {
    for (Eigen::Index j = 0; j < values.cols(); ++j) values(i, j) = get<double>(in);
  }
  return {grid, std::move(values)};
}

WignerField read_wigner_binary(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path.string());
  return read_wigner_binary(in);
}

void write_wigner_csv(const WignerField& field, std::ostream& out) {
  const auto& g = field.grid();
  out << std::setprecision(17) << "x,p,w\n";
  for (int i = 0; i < g.nx(); ++i) {
    for (int j = 0; j < g.np(); ++j) out << g.x(i) << ',' << g.p(j) << ',' << field(i, j) << '\n';
  }
  if (!out) throw Error("failed writing Wigner CSV");
}

void write_wigner_csv(const WignerField& field, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot open " + path.string() + " for writing");
  write_wigner_csv(field, out);
}

}  // namespace ptw
