#include "pea/checkpoint.hpp"

#include <bit>
#include <cstring>
#include <fstream>

#include "pea/errors.hpp"

static_assert(std::endian::native == std::endian::little,
              "checkpoint format is little-endian");

namespace pea {

namespace {

constexpr char kMagic[4] = {'P', 'E', 'A', '1'};
constexpr std::uint32_t kTagModeSet = 0xFFFF0001u;
constexpr std::uint32_t kTagOperator = 0xFFFF0002u;

template <typename T>
void put(std::ostream& os, const T& v) {
  os.write(reinterpret_cast<const char*>(&v), sizeof v);
}

template <typename T>
T get(std::istream& is, const char* what) {
  T v;
  is.read(reinterpret_cast<char*>(&v), sizeof v);
  if (!is) throw ConfigError(std::string("truncated checkpoint file while reading ") + what);
  return v;
}

std::ofstream open_out(const std::string& path) {
  std::ofstream os(path, std::ios::binary | std::ios::trunc);
  if (!os) throw ConfigError("cannot open checkpoint file for writing: " + path);
  return os;
}

std::ifstream open_in(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw ConfigError("cannot open checkpoint file: " + path);
  return is;
}

void write_header(std::ostream& os) {
  os.write(kMagic, 4);
  put<std::uint32_t>(os, kCheckpointVersion);
}

void read_header(std::istream& is) {
  char magic[4];
  is.read(magic, 4);
  if (!is || std::memcmp(magic, kMagic, 4) != 0)
    throw ConfigError("bad checkpoint magic (expected PEA1)");
  const auto version = get<std::uint32_t>(is, "format version");
  if (version != kCheckpointVersion) throw ConfigError("unsupported checkpoint format version");
}

void write_geometry(std::ostream& os, const Grid& g, const Domain& d) {
  put<std::uint32_t>(os, static_cast<std::uint32_t>(g.N1));
  put<std::uint32_t>(os, static_cast<std::uint32_t>(g.N2));
  put<std::uint32_t>(os, static_cast<std::uint32_t>(g.N3));
  put<double>(os, d.L1);
  put<double>(os, d.L2);
  put<double>(os, d.L3);
}

std::pair<Grid, Domain> read_geometry(std::istream& is, std::uint32_t n1) {
  const auto n2 = get<std::uint32_t>(is, "grid size");
  const auto n3 = get<std::uint32_t>(is, "grid size");
  if (n1 == 0 || n2 == 0 || n3 == 0 || n1 > (1u << 20) || n2 > (1u << 20) || n3 > (1u << 20))
    throw ConfigError("checkpoint grid sizes are implausible");
  Domain d;
  d.L1 = get<double>(is, "domain size");
  d.L2 = get<double>(is, "domain size");
  d.L3 = get<double>(is, "domain size");
  d.validate();
  return {Grid::make(static_cast<int>(n1), static_cast<int>(n2), static_cast<int>(n3)), d};
}

void write_coeffs(std::ostream& os, const ScalarField& f) {
  os.write(reinterpret_cast<const char*>(f.c.data()),
           static_cast<std::streamsize>(f.c.size() * sizeof(Cx)));
}

void read_coeffs(std::istream& is, ScalarField& f) {
  is.read(reinterpret_cast<char*>(f.c.data()),
          static_cast<std::streamsize>(f.c.size() * sizeof(Cx)));
  if (!is) throw ConfigError("truncated checkpoint file while reading coefficients");
}

void expect_eof(std::istream& is, const std::string& path) {
  is.peek();
  if (!is.eof()) throw ConfigError("trailing bytes in checkpoint file: " + path);
}

void write_entries(std::ostream& os, const std::vector<SparseEntry>& entries) {
  put<std::uint32_t>(os, static_cast<std::uint32_t>(entries.size()));
  for (const auto& e : entries) {
    put<std::int32_t>(os, e.field);
    put<std::int32_t>(os, e.k1);
    put<std::int32_t>(os, e.k2);
    put<std::int32_t>(os, e.m);
    put<double>(os, e.value.real());
    put<double>(os, e.value.imag());
  }
}

std::vector<SparseEntry> read_entries(std::istream& is) {
  const auto n = get<std::uint32_t>(is, "entry count");
  if (n > 4096) throw ConfigError("checkpoint sparse entry count is implausible");
  std::vector<SparseEntry> entries(n);
  for (auto& e : entries) {
    e.field = get<std::int32_t>(is, "entry field");
    e.k1 = get<std::int32_t>(is, "entry wavevector");
    e.k2 = get<std::int32_t>(is, "entry wavevector");
    e.m = get<std::int32_t>(is, "entry wavevector");
    const double re = get<double>(is, "entry value");
    const double im = get<double>(is, "entry value");
    e.value = Cx{re, im};
  }
  return entries;
}

void write_mode_set_payload(std::ostream& os, const ModeSet& modes) {
  write_geometry(os, modes.grid, modes.domain);
  put<std::uint64_t>(os, modes.modes.size());
  put<double>(os, modes.lambda_next);
  put<std::uint64_t>(os, modes.shell_begin.size());
  for (std::size_t s : modes.shell_begin) put<std::uint64_t>(os, s);
  for (const auto& mode : modes.modes) {
    put<double>(os, mode.lambda);
    put<std::int32_t>(os, mode.k1);
    put<std::int32_t>(os, mode.k2);
    put<std::int32_t>(os, mode.m);
    put<std::int32_t>(os, mode.component);
    write_entries(os, mode.entries);
  }
}

ModeSet read_mode_set_payload(std::istream& is) {
  ModeSet modes;
  const auto n1 = get<std::uint32_t>(is, "grid size");
  auto [g, d] = read_geometry(is, n1);
  modes.grid = g;
  modes.domain = d;
  const auto count = get<std::uint64_t>(is, "mode count");
  if (count > (1u << 24)) throw ConfigError("checkpoint mode count is implausible");
  modes.lambda_next = get<double>(is, "lambda_next");
  const auto shells = get<std::uint64_t>(is, "shell count");
  if (shells > count + 1) throw ConfigError("checkpoint shell table is implausible");
  modes.shell_begin.resize(shells);
  for (auto& s : modes.shell_begin) s = get<std::uint64_t>(is, "shell boundary");
  modes.modes.resize(count);
  for (auto& mode : modes.modes) {
    mode.lambda = get<double>(is, "mode eigenvalue");
    mode.k1 = get<std::int32_t>(is, "mode wavevector");
    mode.k2 = get<std::int32_t>(is, "mode wavevector");
    mode.m = get<std::int32_t>(is, "mode wavevector");
    mode.component = get<std::int32_t>(is, "mode component");
    mode.entries = read_entries(is);
  }
  return modes;
}

}  // namespace

void save_checkpoint(const std::string& path, const StateVector& u, double time) {
  std::ofstream os = open_out(path);
  write_header(os);
  write_geometry(os, u.grid(), u.domain());
  put<double>(os, time);
  write_coeffs(os, u.v1);
  write_coeffs(os, u.v2);
  write_coeffs(os, u.b);
  os.flush();
  if (!os) throw ConfigError("failed to write checkpoint: " + path);
}

Checkpoint load_checkpoint(const std::string& path) {
  std::ifstream is = open_in(path);
  read_header(is);
  const auto n1 = get<std::uint32_t>(is, "grid size");
  if (n1 >= 0xFFFF0000u) throw ConfigError("file is a typed record, not a state checkpoint");
  auto [g, d] = read_geometry(is, n1);
  Checkpoint cp{StateVector(g, d), get<double>(is, "time")};
  read_coeffs(is, cp.state.v1);
  read_coeffs(is, cp.state.v2);
  read_coeffs(is, cp.state.b);
  expect_eof(is, path);
  return cp;
}

void save_mode_set(const std::string& path, const ModeSet& modes) {
  std::ofstream os = open_out(path);
  write_header(os);
  put<std::uint32_t>(os, kTagModeSet);
  write_mode_set_payload(os, modes);
  os.flush();
  if (!os) throw ConfigError("failed to write mode set: " + path);
}

ModeSet load_mode_set(const std::string& path) {
  std::ifstream is = open_in(path);
  read_header(is);
  if (get<std::uint32_t>(is, "type tag") != kTagModeSet)
    throw ConfigError("file does not contain a mode set record");
  ModeSet modes = read_mode_set_payload(is);
  expect_eof(is, path);
  return modes;
}

void save_operator(const std::string& path, const InterpolationOperator& op) {
  std::ofstream os = open_out(path);
  write_header(os);
  put<std::uint32_t>(os, kTagOperator);
  write_mode_set_payload(os, op.modes);
  put<double>(os, op.k_norm_h);
  put<std::uint8_t>(os, op.lagrange ? 1 : 0);
  put<std::uint64_t>(os, op.riesz.size());
  for (const auto& r : op.riesz) write_entries(os, r);
  put<std::uint64_t>(os, op.psi.size());
  for (const auto& p : op.psi) write_entries(os, p);
  os.flush();
  if (!os) throw ConfigError("failed to write operator: " + path);
}

InterpolationOperator load_operator(const std::string& path) {
  std::ifstream is = open_in(path);
  read_header(is);
  if (get<std::uint32_t>(is, "type tag") != kTagOperator)
    throw ConfigError("file does not contain an interpolation operator record");
  InterpolationOperator op;
  op.modes = read_mode_set_payload(is);
  op.k_norm_h = get<double>(is, "operator norm");
  op.lagrange = get<std::uint8_t>(is, "lagrange flag") != 0;
  const auto nr = get<std::uint64_t>(is, "riesz count");
  if (nr != op.modes.modes.size()) throw ConfigError("operator record is inconsistent");
  op.riesz.resize(nr);
  for (auto& r : op.riesz) r = read_entries(is);
  const auto np = get<std::uint64_t>(is, "psi count");
  if (np != nr) throw ConfigError("operator record is inconsistent");
  op.psi.resize(np);
  for (auto& p : op.psi) p = read_entries(is);
  expect_eof(is, path);
  return op;
}

}  // namespace pea
