#include "ifdyn/io.hpp"

#include <cerrno>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <limits>
#include <sstream>

namespace ifdyn {

namespace {

[[noreturn]] void io_error(const std::filesystem::path& path, const std::string& what) {
  throw std::runtime_error(path.string() + ": " + what);
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::string cell;
  std::istringstream is(line);
  while (std::getline(is, cell, ',')) out.push_back(cell);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

double parse_real(const std::string& s) {
  if (s == "inf") return std::numeric_limits<double>::infinity();
  if (s == "-inf") return -std::numeric_limits<double>::infinity();
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (s.empty() || end != s.c_str() + s.size()) throw std::invalid_argument("not a number: '" + s + "'");
  return v;
}

std::string strip_cr(std::string line) {
  if (!line.empty() && line.back() == '\r') line.pop_back();
  return line;
}

}  // namespace

std::string format_real(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string diag_row(const DiagRecord& r) {
  std::string s;
  for (double v : {r.t, r.A, r.B, r.min_sigma, r.arc_chord, r.energy, r.e_rt, r.mean_omega, r.max_speed,
                   r.uniformity, r.solver_residual}) {
    s += format_real(v);
    s += ',';
  }
  s += std::to_string(r.solver_iters);
  return s;
}

DiagRecord parse_diag_row(const std::string& line) {
  const auto cells = split_csv(strip_cr(line));
  if (cells.size() != 12) throw std::invalid_argument("diag row: expected 12 fields, got " + std::to_string(cells.size()));
  DiagRecord r;
  double* fields[] = {&r.t,          &r.A,          &r.B,         &r.min_sigma,  &r.arc_chord,     &r.energy,
                      &r.e_rt,       &r.mean_omega, &r.max_speed, &r.uniformity, &r.solver_residual};
  for (std::size_t i = 0; i < 11; ++i) *fields[i] = parse_real(cells[i]);
  r.solver_iters = static_cast<int>(parse_real(cells[11]));
  return r;
}

std::vector<DiagRecord> read_diag(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) io_error(path, "cannot open for reading");
  std::string line;
  if (!std::getline(in, line) || strip_cr(line) != kDiagHeader) io_error(path, "missing or wrong header");
  std::vector<DiagRecord> out;
  std::size_t row = 1;
  while (std::getline(in, line)) {
    ++row;
    if (strip_cr(line).empty()) continue;
    try {
      out.push_back(parse_diag_row(line));
    } catch (const std::invalid_argument& e) {
      io_error(path, "row " + std::to_string(row) + ": " + e.what());
    }
  }
  return out;
}

Snapshot make_snapshot(const SimState& state, const StateDerivative& d, const ScalarField& sigma) {
  Snapshot s;
  s.t = state.t;
  const VectorField z = state.z.coordinates();
  const Grid g = state.z.grid();
  s.rows.reserve(z.size());
  for (std::size_t j = 0; j < z.size(); ++j) {
    s.rows.push_back({g.node(static_cast<std::ptrdiff_t>(j)), z.x[j], z.y[j], state.omega[j], d.aux.phi[j], sigma[j],
                      d.aux.c[j]});
  }
  return s;
}

void write_snapshot(const Snapshot& snap, std::ostream& os) {
  os << kSnapshotHeader << '\n';
  for (const auto& r : snap.rows) {
    os << format_real(r.alpha) << ',' << format_real(r.x) << ',' << format_real(r.y) << ',' << format_real(r.omega)
       << ',' << format_real(r.phi) << ',' << format_real(r.sigma) << ',' << format_real(r.c) << '\n';
  }
}

void write_snapshot(const Snapshot& snap, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) io_error(path, "cannot open for writing");
  write_snapshot(snap, out);
  if (!out) io_error(path, "write failed");
}

Snapshot read_snapshot(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) io_error(path, "cannot open for reading");
  std::string line;
  if (!std::getline(in, line) || strip_cr(line) != kSnapshotHeader) io_error(path, "missing or wrong header");
  Snapshot s;
  std::size_t row = 1;
  while (std::getline(in, line)) {
    ++row;
    line = strip_cr(line);
    if (line.empty()) continue;
    const auto cells = split_csv(line);
    if (cells.size() != 7) io_error(path, "row " + std::to_string(row) + ": expected 7 fields");
    try {
      s.rows.push_back({parse_real(cells[0]), parse_real(cells[1]), parse_real(cells[2]), parse_real(cells[3]),
                        parse_real(cells[4]), parse_real(cells[5]), parse_real(cells[6])});
    } catch (const std::invalid_argument& e) {
      io_error(path, "row " + std::to_string(row) + ": " + e.what());
    }
  }
  return s;
}

std::string snapshot_name(std::size_t index) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "snap_%06zu.csv", index);
  return buf;
}

CsvRunSink::CsvRunSink(std::filesystem::path dir) : dir_(std::move(dir)) {
  std::error_code ec;
  std::filesystem::create_directories(dir_, ec);
  if (ec) io_error(dir_, "cannot create directory: " + ec.message());
  const auto path = dir_ / "diag.csv";
  diag_ = std::fopen(path.c_str(), "w");
  if (!diag_) io_error(path, std::strerror(errno));
  std::fprintf(diag_, "%s\n", kDiagHeader);
}

CsvRunSink::~CsvRunSink() {
  if (diag_) std::fclose(diag_);
}

void CsvRunSink::diag(const DiagRecord& record) {
  if (std::fprintf(diag_, "%s\n", diag_row(record).c_str()) < 0) io_error(dir_ / "diag.csv", "write failed");
  std::fflush(diag_);
}

void CsvRunSink::snapshot(const Snapshot& snap) { write_snapshot(snap, dir_ / snapshot_name(next_snapshot_++)); }

}  // namespace ifdyn
