#pragma once

#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "arago/farfield.hpp"
#include "arago/interaction.hpp"
#include "arago/numerics.hpp"
#include "arago/particles.hpp"
#include "arago/poisson.hpp"

namespace arago {

enum class Mode { farfield, poisson_ideal, poisson_quantum, poisson_classical, poisson_compare };

std::string to_string(Mode mode);

struct NumericsConfig {
  QuadratureSpec quad;
  int grid_points = 600;
  std::optional<double> u_max;  // default 3 ell
  int source_samples = 64;
  int angular_samples = 256;
  int velocity_nodes = 9;
  int ray_points = 20000;
  PhaseTableOptions table;
};

struct AveragingConfig {
  bool source = true;
  bool velocity = false;
};

/// A complete, validated scenario.
///
/// Text form: one `key = value` per line, dotted section names, `#` starts a
/// comment. Lengths in m, angles in rad, masses in amu, polarizability
/// volumes in m^3.
struct ScenarioConfig {
  std::string name;
  Mode mode = Mode::poisson_ideal;
  std::string particle_preset;
  ParticleSpecies particle;
  FarFieldSetup farfield;
  PoissonSetup poisson;
  bool capture = true;
  GravityLength gravity_length = GravityLength::L2_only;
  NumericsConfig numerics;
  AveragingConfig averaging;
  std::string output_path;

  bool is_farfield() const noexcept { return mode == Mode::farfield; }
};

/// Returns the text of a named preset (species or scenario), or nullopt.
using PresetResolver = std::function<std::optional<std::string>(std::string_view kind,
                                                                std::string_view name)>;

/// Presets from `<dir>/species/<name>.cfg` and `<dir>/scenarios/<name>.cfg`.
PresetResolver directory_resolver(std::filesystem::path dir);

/// Preset directory: $ARAGO_PRESET_DIR if set, else the source tree's presets/.
std::filesystem::path default_preset_dir();

/// Parses and validates a scenario. Throws ConfigError carrying the line and
/// column of syntax errors or the field path of a failed invariant.
ScenarioConfig parse_config(std::string_view text,
                            const PresetResolver& resolver = directory_resolver(default_preset_dir()));

/// Canonical text form: presets expanded, every field of the active mode
/// listed in a fixed order with round-trip precision.
std::string serialize_config(const ScenarioConfig& config);

/// True if `key` names a numeric scalar that set_scalar accepts.
bool is_scalar_key(std::string_view key);

/// Assigns one numeric field by its dotted key and re-validates the config.
void set_scalar(ScenarioConfig& config, std::string_view key, double value);

/// Checks mode/setup consistency and every domain invariant.
void validate(const ScenarioConfig& config);

}  // namespace arago
