#pragma once

#include <cstdio>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "ifdyn/diagnostics.hpp"

namespace ifdyn {

inline constexpr const char* kDiagHeader =
    "t,A,B,min_sigma,arc_chord,energy,e_rt,mean_omega,max_speed,uniformity,solver_residual,solver_iters";
inline constexpr const char* kSnapshotHeader = "alpha,x,y,omega,phi,sigma,c";

struct SnapshotRow {
  double alpha, x, y, omega, phi, sigma, c;
  friend bool operator==(const SnapshotRow&, const SnapshotRow&) = default;
};

struct Snapshot {
  double t = 0.0;  // not serialized; the file carries only the rows
  std::vector<SnapshotRow> rows;
};

Snapshot make_snapshot(const SimState& state, const StateDerivative& d, const ScalarField& sigma);

/// Reals use 17 significant digits so parsing recovers them exactly.
std::string format_real(double v);
std::string diag_row(const DiagRecord& r);
DiagRecord parse_diag_row(const std::string& line);
std::vector<DiagRecord> read_diag(const std::filesystem::path& path);

void write_snapshot(const Snapshot& snap, std::ostream& os);
void write_snapshot(const Snapshot& snap, const std::filesystem::path& path);
Snapshot read_snapshot(const std::filesystem::path& path);
std::string snapshot_name(std::size_t index);  // snap_000012.csv

class RunSink {
 public:
  virtual ~RunSink() = default;
  virtual void diag(const DiagRecord& record) = 0;
  virtual void snapshot(const Snapshot& snap) = 0;
};

/// diag.csv plus snap_XXXXXX.csv files (sequential index) in a directory.
class CsvRunSink : public RunSink {
 public:
  explicit CsvRunSink(std::filesystem::path dir);
  ~CsvRunSink() override;
  CsvRunSink(const CsvRunSink&) = delete;
  CsvRunSink& operator=(const CsvRunSink&) = delete;

  void diag(const DiagRecord& record) override;
  void snapshot(const Snapshot& snap) override;

 private:
  std::filesystem::path dir_;
  std::FILE* diag_ = nullptr;
  std::size_t next_snapshot_ = 0;
};

class MemoryRunSink : public RunSink {
 public:
  void diag(const DiagRecord& record) override { records.push_back(record); }
  void snapshot(const Snapshot& snap) override { snapshots.push_back(snap); }

  std::vector<DiagRecord> records;
  std::vector<Snapshot> snapshots;
};

}  // namespace ifdyn
