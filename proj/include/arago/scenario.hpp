#pragma once

#include <filesystem>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "arago/classical.hpp"
#include "arago/config.hpp"
#include "arago/farfield.hpp"
#include "arago/poisson.hpp"

namespace arago {

struct RunOptions {
  /// Output directory; empty means config.output_path, or "." if that is empty too.
  std::filesystem::path out_dir;
  int threads = 1;
};

struct RunSummary {
  double w0 = std::numeric_limits<double>::quiet_NaN();
  /// Measured first minimum of the primary profile, units of R.
  double spot_radius = std::numeric_limits<double>::quiet_NaN();
  /// Quantum over classical spot height (compare mode only).
  double distinguishability = std::numeric_limits<double>::quiet_NaN();
  std::vector<std::filesystem::path> files;
};

/// Quantum (or ideal, for poisson_ideal) profile with the averaging the
/// config asks for.
RadialProfile compute_quantum(const ScenarioConfig& config, int threads = 1);

/// Classical counter-model profile with the same grid and averaging.
RadialProfile compute_classical(const ScenarioConfig& config, int threads = 1);

/// Radial grid the config asks for: grid_points nodes on [0, u_max].
std::vector<double> profile_grid(const ScenarioConfig& config);

/// Near-field setup with the config's particle filled in.
PoissonSetup poisson_setup(const ScenarioConfig& config);

std::string format_profile_csv(const RadialProfile& profile, const DimensionlessParams& params);
std::string format_report_text(std::span<const ConstraintReport> reports);
std::string format_report_kv(std::span<const ConstraintReport> reports);

/// Runs one scenario and writes its artifacts. Any exception removes the
/// files this call created and propagates.
RunSummary run_scenario(const ScenarioConfig& config, const RunOptions& options = {});

struct SweepPoint {
  double value = 0.0;
  std::filesystem::path dir;
  RunSummary summary;
};

/// Runs the scenario once per value of the numeric field `key`, each in its
/// own subdirectory, and writes summary.csv. Every variant is validated
/// before anything is computed.
std::vector<SweepPoint> sweep(const ScenarioConfig& config, std::string_view key,
                              std::span<const double> values, const RunOptions& options = {});

}  // namespace arago
