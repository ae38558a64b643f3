#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "adhestring/diagnostics.hpp"
#include "adhestring/solvers.hpp"
#include "adhestring/state.hpp"

namespace adhestring {

enum class SolverKind { leapfrog, charsplit, picard };

struct DiagnosticToggles {
  bool energy = true;
  bool dissipation = true;
  bool singularities = true;
  bool entropy = false;
  bool weak = false;
  bool cone = false;

  bool needs_dense() const { return singularities || entropy || weak || cone; }
  friend bool operator==(const DiagnosticToggles&, const DiagnosticToggles&) = default;
};

/// Plain `key = value` run description. Omitted keys take the defaults below;
/// an omitted `courant` becomes 1 for the characteristic solver.
struct RunConfig {
  double length = 10.0;
  std::size_t nx = 1001;
  double courant = 0.9;
  double final_time = 3.0;
  std::string potential = "exact";
  std::string ic = "c2:0.006,1.2";
  SolverKind solver = SolverKind::leapfrog;
  std::size_t stride = 10;
  DiagnosticToggles diagnostics;
  std::uint64_t seed = 42;
  std::string output = "out";
  SourceMode leapfrog_source = SourceMode::gradient;
  SplitSource split_source = SplitSource::euler;
  std::size_t picard_iters = 100;
  double theta_jump = 8.0;
  double theta_kink = 8.0;

  Grid1D grid() const { return {length, nx, courant, final_time}; }
  friend bool operator==(const RunConfig&, const RunConfig&) = default;
};

/// Throws ConfigError (with the offending line number where there is one).
RunConfig parse_config(std::string_view text);
/// Canonical form: every key, fixed order, doubles with 17 significant digits.
std::string serialize_config(const RunConfig& config);
RunConfig load_config(const std::string& path);

std::string to_string(SolverKind solver);

/// Snapshot CSV `t,x,u,v,w`, rows ordered by (t, x). Writes every `every`-th
/// snapshot and always the last one. Throws IoError with the path.
void write_fields(const SolutionRecord& record, const std::string& path, std::size_t every = 1);
/// Reads a file produced by write_fields back into snapshots.
std::vector<WaveState> read_fields(const std::string& path);

void write_energy(const std::vector<EnergyBreakdown>& series, const std::string& path);
void write_singularities(const CharacteristicMap& map, const std::string& path);
void write_cone_reports(const std::vector<ConeReport>& reports, const std::string& path);
void write_residual_summary(const std::vector<std::pair<std::string, double>>& rows,
                            const std::string& path);

namespace exit_code {
inline constexpr int ok = 0;
inline constexpr int io = 1;
inline constexpr int config = 2;
inline constexpr int blowup = 3;
inline constexpr int diagnostic = 4;
}  // namespace exit_code

/// Output root: $ADHESTRING_OUT when set, otherwise `fallback`.
std::string output_root(const std::string& fallback);

/// Runs the configured solver with the same stride rules as `run`.
SolutionRecord solve(const RunConfig& config);

/// Solve, diagnose and write outputs into the output root. Returns an exit code.
int run(const RunConfig& config, std::ostream& log);

/// Runs one named scenario into <root>/<name>/. Returns an exit code.
int run_experiment(const std::string& name, const std::string& root, std::ostream& log);

/// Scenario names from a manifest file: one per line, blank lines and `#`
/// comments skipped.
std::vector<std::string> read_manifest(const std::string& path);

}  // namespace adhestring
