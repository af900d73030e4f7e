#pragma once

#include "erlanga/params.hpp"
#include "erlanga/simulator.hpp"
#include "erlanga/time_grid.hpp"

#include <Eigen/Core>

#include <cstdint>
#include <filesystem>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace erlanga {

/// One named configuration, e.g. a Table 1 row.
struct ExperimentSpec {
  std::string name;
  ErlangAParams params;
  int q0 = 0;
  double v0 = 0.0;
  double t_max = 20.0;
  double dt = 0.1;
  std::uint64_t replications = 2000;
  std::uint64_t master_seed = 20240601;
  OverlapMode overlap_mode = OverlapMode::direct_sampling;

  [[nodiscard]] TimeGrid grid() const { return TimeGrid::uniform(t_max, dt); }
};

/// Throws std::invalid_argument on any field outside its invariants.
void validate(const ExperimentSpec& spec);

/// The eight Table 1 rows (a)-(h): mu = 1, c = 30, lambda in {10, 40},
/// theta in {0.5, 2}, Q(0) in {10, 50}, grid 0..20 step 0.1.
std::vector<ExperimentSpec> builtin_table1();

struct RunOptions {
  unsigned workers = 1;
  /// Adds the chain-rule covariance variant of the overlap std column.
  bool chain_rule_variants = false;
};

/// One curve file: t, sim_value, sim_stderr, analytical_1[, analytical_2 ...].
struct CurveTable {
  std::string family;
  std::vector<std::string> columns;
  Eigen::MatrixXd data;  // one row per grid point
};

/// Simulated-vs-analytical error summary for one spec. All metrics are
/// nonnegative; see the README for their names.
struct ComparisonReport {
  ExperimentSpec spec;
  std::map<std::string, double> metrics;
};

struct ExperimentResult {
  ComparisonReport report;
  std::vector<CurveTable> curves;
};

/// Thrown for filesystem failures; carries the offending path.
class IoError : public std::runtime_error {
public:
  IoError(const std::filesystem::path& path, const std::string& what);
  [[nodiscard]] const std::filesystem::path& path() const noexcept { return path_; }

private:
  std::filesystem::path path_;
};

/// Simulation plus analytical curves, no I/O.
ExperimentResult evaluate(const ExperimentSpec& spec, const RunOptions& options = {});

/// Single metadata comment line shared by every output file of a spec.
std::string metadata_line(const ExperimentSpec& spec);

/// CSV text of one curve table, metadata line first.
std::string format_curve(const ExperimentSpec& spec, const CurveTable& table);

/// Report as JSON text (stable key order, fixed number formatting).
std::string format_report(const ComparisonReport& report);

/// evaluate() and write <out_dir>/<family>.csv plus <out_dir>/report.json.
ComparisonReport run(const ExperimentSpec& spec, const std::filesystem::path& out_dir,
                     const RunOptions& options = {});

/// Runs every spec into <out_dir>/<name>/ and writes a combined
/// <out_dir>/report.json whose metrics are prefixed "<name>.".
std::vector<ComparisonReport> run_all(const std::vector<ExperimentSpec>& specs,
                                      const std::filesystem::path& out_dir,
                                      const RunOptions& options = {});

std::string format_combined_report(const std::vector<ComparisonReport>& reports);

/// Gate evaluation: a gate passes iff metric <= limit.
struct GateOutcome {
  std::vector<std::string> failed;
  [[nodiscard]] bool passed() const noexcept { return failed.empty(); }
};

/// `report_json` and `gates_json` are file contents. Throws
/// std::invalid_argument when a gate names a metric the report lacks or the
/// documents are malformed.
GateOutcome check(const std::string& report_json, const std::string& gates_json);

}  // namespace erlanga
