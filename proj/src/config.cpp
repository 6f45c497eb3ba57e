#include "arago/config.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>

#include "arago/errors.hpp"

namespace arago {

namespace {

enum class Section { general, particle, farfield, poisson, numerics, averaging, output };

struct Field {
  std::string key;
  Section section;
  std::function<void(ScenarioConfig&, std::string_view)> parse;
  std::function<std::optional<std::string>(const ScenarioConfig&)> print;
  std::function<void(ScenarioConfig&, double)> assign;  // numeric scalars only
};

std::string format_number(double value) {
  char buffer[40];
  std::snprintf(buffer, sizeof buffer, "%.17g", value);
  return buffer;
}

double parse_number(std::string_view text) {
  double value = 0.0;
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc() || ptr != end || !std::isfinite(value)) {
    throw std::invalid_argument("expected a finite number, got '" + std::string(text) + "'");
  }
  return value;
}

int parse_integer(std::string_view text) {
  int value = 0;
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc() || ptr != end) {
    throw std::invalid_argument("expected an integer, got '" + std::string(text) + "'");
  }
  return value;
}

bool parse_bool(std::string_view text) {
  if (text == "on" || text == "true" || text == "yes" || text == "1") return true;
  if (text == "off" || text == "false" || text == "no" || text == "0") return false;
  throw std::invalid_argument("expected on/off, got '" + std::string(text) + "'");
}

template <typename Get>
Field number(std::string key, Section section, Get get) {
  return {std::move(key), section,
          [get](ScenarioConfig& c, std::string_view v) { get(c) = parse_number(v); },
          [get](const ScenarioConfig& c) -> std::optional<std::string> {
            return format_number(get(const_cast<ScenarioConfig&>(c)));
          },
          [get](ScenarioConfig& c, double v) { get(c) = v; }};
}

template <typename Get>
Field optional_number(std::string key, Section section, Get get) {
  return {std::move(key), section,
          [get](ScenarioConfig& c, std::string_view v) { get(c) = parse_number(v); },
          [get](const ScenarioConfig& c) -> std::optional<std::string> {
            const auto& value = get(const_cast<ScenarioConfig&>(c));
            if (!value) return std::nullopt;
            return format_number(*value);
          },
          [get](ScenarioConfig& c, double v) { get(c) = v; }};
}

template <typename Get>
Field integer(std::string key, Section section, Get get) {
  return {std::move(key), section,
          [get](ScenarioConfig& c, std::string_view v) { get(c) = parse_integer(v); },
          [get](const ScenarioConfig& c) -> std::optional<std::string> {
            return std::to_string(get(const_cast<ScenarioConfig&>(c)));
          },
          {}};
}

template <typename Get>
Field boolean(std::string key, Section section, Get get) {
  return {std::move(key), section,
          [get](ScenarioConfig& c, std::string_view v) { get(c) = parse_bool(v); },
          [get](const ScenarioConfig& c) -> std::optional<std::string> {
            return get(const_cast<ScenarioConfig&>(c)) ? "on" : "off";
          },
          {}};
}

template <typename Get>
Field text(std::string key, Section section, Get get) {
  return {std::move(key), section,
          [get](ScenarioConfig& c, std::string_view v) { get(c) = std::string(v); },
          [get](const ScenarioConfig& c) -> std::optional<std::string> {
            const auto& value = get(const_cast<ScenarioConfig&>(c));
            if (value.empty()) return std::nullopt;
            return value;
          },
          {}};
}

const std::vector<std::pair<std::string, Mode>>& mode_names() {
  static const std::vector<std::pair<std::string, Mode>> names = {
      {"farfield", Mode::farfield},
      {"poisson_ideal", Mode::poisson_ideal},
      {"poisson_quantum", Mode::poisson_quantum},
      {"poisson_classical", Mode::poisson_classical},
      {"poisson_compare", Mode::poisson_compare}};
  return names;
}

const std::vector<Field>& fields() {
  using C = ScenarioConfig;
  using S = Section;
  static const std::vector<Field> table = [] {
    std::vector<Field> f;
    f.push_back(text("name", S::general, [](C& c) -> std::string& { return c.name; }));
    f.push_back({"mode", S::general,
                 [](C& c, std::string_view v) {
                   for (const auto& [name, mode] : mode_names()) {
                     if (v == name) {
                       c.mode = mode;
                       return;
                     }
                   }
                   throw std::invalid_argument("unknown mode '" + std::string(v) + "'");
                 },
                 [](const C& c) -> std::optional<std::string> { return to_string(c.mode); },
                 {}});

    f.push_back(text("particle.name", S::particle,
                     [](C& c) -> std::string& { return c.particle.name; }));
    f.push_back(number("particle.mass", S::particle,
                       [](C& c) -> double& { return c.particle.mass_amu; }));
    f.push_back(number("particle.alpha", S::particle,
                       [](C& c) -> double& { return c.particle.alpha_m3; }));
    f.push_back(number("particle.v_long", S::particle,
                       [](C& c) -> double& { return c.particle.v_long; }));
    f.push_back(number("particle.dv_rel", S::particle,
                       [](C& c) -> double& { return c.particle.dv_rel; }));

    auto ff = [&f](const char* name, double FarFieldSetup::*member) {
      f.push_back(number(std::string("farfield.") + name, S::farfield,
                         [member](C& c) -> double& { return c.farfield.*member; }));
    };
    ff("D", &FarFieldSetup::D);
    ff("Y", &FarFieldSetup::Y);
    ff("L1", &FarFieldSetup::L1);
    ff("L2", &FarFieldSetup::L2);
    ff("d", &FarFieldSetup::d);
    ff("b", &FarFieldSetup::b);
    ff("slit_open", &FarFieldSetup::slit_open);
    ff("Theta", &FarFieldSetup::Theta);
    ff("eps1", &FarFieldSetup::eps1);
    ff("eps2", &FarFieldSetup::eps2);
    ff("eps3", &FarFieldSetup::eps3);
    ff("latitude", &FarFieldSetup::latitude);
    ff("H", &FarFieldSetup::H);
    ff("T_source", &FarFieldSetup::T_source);
    ff("eta_trans", &FarFieldSetup::eta_trans);
    ff("tau", &FarFieldSetup::tau);
    ff("N_target", &FarFieldSetup::N_target);
    ff("particle_density", &FarFieldSetup::particle_density);
    f.push_back(optional_number("farfield.wavelength", S::farfield,
                                [](C& c) -> std::optional<double>& { return c.farfield.wavelength; }));
    f.push_back({"farfield.gravity_length", S::farfield,
                 [](C& c, std::string_view v) {
                   if (v == "L2_only") c.gravity_length = GravityLength::L2_only;
                   else if (v == "L1_plus_L2") c.gravity_length = GravityLength::L1_plus_L2;
                   else throw std::invalid_argument("expected L2_only or L1_plus_L2");
                 },
                 [](const C& c) -> std::optional<std::string> {
                   return c.gravity_length == GravityLength::L2_only ? "L2_only" : "L1_plus_L2";
                 },
                 {}});

    f.push_back({"poisson.obstacle", S::poisson,
                 [](C& c, std::string_view v) {
                   if (v == "sphere") c.poisson.obstacle.kind = ObstacleKind::sphere;
                   else if (v == "disc") c.poisson.obstacle.kind = ObstacleKind::disc;
                   else throw std::invalid_argument("expected sphere or disc");
                 },
                 [](const C& c) -> std::optional<std::string> {
                   return c.poisson.obstacle.kind == ObstacleKind::sphere ? "sphere" : "disc";
                 },
                 {}});
    f.push_back(number("poisson.R", S::poisson, [](C& c) -> double& { return c.poisson.obstacle.R; }));
    f.push_back(number("poisson.b", S::poisson, [](C& c) -> double& { return c.poisson.obstacle.b; }));
    f.push_back(number("poisson.R0", S::poisson, [](C& c) -> double& { return c.poisson.R0; }));
    f.push_back(number("poisson.L1", S::poisson, [](C& c) -> double& { return c.poisson.L1; }));
    f.push_back(number("poisson.L2", S::poisson, [](C& c) -> double& { return c.poisson.L2; }));
    f.push_back(optional_number("poisson.wavelength", S::poisson,
                                [](C& c) -> std::optional<double>& { return c.poisson.wavelength; }));
    f.push_back(boolean("poisson.capture", S::poisson, [](C& c) -> bool& { return c.capture; }));

    f.push_back(number("numerics.rel_tol", S::numerics,
                       [](C& c) -> double& { return c.numerics.quad.rel_tol; }));
    f.push_back(number("numerics.abs_tol", S::numerics,
                       [](C& c) -> double& { return c.numerics.quad.abs_tol; }));
    f.push_back(integer("numerics.max_subdivisions", S::numerics,
                        [](C& c) -> int& { return c.numerics.quad.max_subdivisions; }));
    f.push_back(integer("numerics.grid_points", S::numerics,
                        [](C& c) -> int& { return c.numerics.grid_points; }));
    f.push_back(optional_number("numerics.u_max", S::numerics,
                                [](C& c) -> std::optional<double>& { return c.numerics.u_max; }));
    f.push_back(integer("numerics.source_samples", S::numerics,
                        [](C& c) -> int& { return c.numerics.source_samples; }));
    f.push_back(integer("numerics.angular_samples", S::numerics,
                        [](C& c) -> int& { return c.numerics.angular_samples; }));
    f.push_back(integer("numerics.velocity_nodes", S::numerics,
                        [](C& c) -> int& { return c.numerics.velocity_nodes; }));
    f.push_back(integer("numerics.ray_points", S::numerics,
                        [](C& c) -> int& { return c.numerics.ray_points; }));
    f.push_back(integer("numerics.phase_points", S::numerics,
                        [](C& c) -> int& { return c.numerics.table.points; }));
    f.push_back(number("numerics.phase_floor", S::numerics,
                       [](C& c) -> double& { return c.numerics.table.phase_floor; }));

    f.push_back(boolean("averaging.source", S::averaging,
                        [](C& c) -> bool& { return c.averaging.source; }));
    f.push_back(boolean("averaging.velocity", S::averaging,
                        [](C& c) -> bool& { return c.averaging.velocity; }));

    f.push_back(text("output.path", S::output, [](C& c) -> std::string& { return c.output_path; }));
    return f;
  }();
  return table;
}

const Field* find_field(std::string_view key) {
  for (const auto& field : fields()) {
    if (field.key == key) return &field;
  }
  return nullptr;
}

struct Entry {
  std::string key;
  std::string value;
  int line;
  int key_column;
  int value_column;
};

std::string_view trim(std::string_view text, std::size_t* offset = nullptr) {
  std::size_t begin = 0;
  while (begin < text.size() && std::isspace(static_cast<unsigned char>(text[begin]))) ++begin;
  std::size_t end = text.size();
  while (end > begin && std::isspace(static_cast<unsigned char>(text[end - 1]))) --end;
  if (offset) *offset = begin;
  return text.substr(begin, end - begin);
}

std::vector<Entry> tokenize(std::string_view text) {
  std::vector<Entry> entries;
  int line_number = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t eol = std::min(text.find('\n', pos), text.size());
    std::string_view line = text.substr(pos, eol - pos);
    ++line_number;
    pos = eol + 1;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    const std::size_t hash = line.find('#');
    if (hash != std::string_view::npos) line = line.substr(0, hash);
    std::size_t lead = 0;
    if (trim(line, &lead).empty()) {
      if (eol == text.size()) break;
      continue;
    }
    const std::size_t eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError("expected 'key = value'", line_number, static_cast<int>(lead) + 1);
    }
    std::size_t key_offset = 0;
    const auto key = trim(line.substr(0, eq), &key_offset);
    if (key.empty()) {
      throw ConfigError("missing key before '='", line_number, static_cast<int>(eq) + 1);
    }
    for (std::size_t i = 0; i < key.size(); ++i) {
      const char ch = key[i];
      if (!(std::isalnum(static_cast<unsigned char>(ch)) || ch == '_' || ch == '.')) {
        throw ConfigError(std::string("invalid character '") + ch + "' in key", line_number,
                          static_cast<int>(key_offset + i) + 1);
      }
    }
    std::size_t value_offset = 0;
    const auto value = trim(line.substr(eq + 1), &value_offset);
    if (value.empty()) {
      throw ConfigError("missing value after '='", line_number, static_cast<int>(eq) + 2);
    }
    entries.push_back({std::string(key), std::string(value), line_number,
                       static_cast<int>(key_offset) + 1,
                       static_cast<int>(eq + 1 + value_offset) + 1});
    if (eol == text.size()) break;
  }
  return entries;
}

void apply(ScenarioConfig& config, const Entry& entry, const Field& field) {
  try {
    field.parse(config, entry.value);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what(), entry.line, entry.value_column, entry.key);
  }
}

void apply_species(ScenarioConfig& config, std::string_view name,
                   const PresetResolver& resolver, const Entry& origin) {
  const auto text = resolver ? resolver("species", name) : std::nullopt;
  if (!text) {
    throw ConfigError("unknown particle preset '" + std::string(name) + "'", origin.line,
                      origin.value_column, origin.key);
  }
  for (const auto& entry : tokenize(*text)) {
    const Field* field = find_field(entry.key);
    if (field == nullptr || field->section != Section::particle) {
      throw ConfigError("species preset '" + std::string(name) +
                            "' may only set particle.* keys",
                        entry.line, entry.key_column, entry.key);
    }
    apply(config, entry, *field);
  }
}

std::optional<std::string> read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return std::nullopt;
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

template <typename Fn>
void wrap_domain(const char* field, Fn&& fn) {
  try {
    fn();
  } catch (const DomainError& e) {
    throw ConfigError(e.what(), 0, 0, field);
  }
}

}  // namespace

std::string to_string(Mode mode) {
  for (const auto& [name, value] : mode_names()) {
    if (value == mode) return name;
  }
  return "unknown";
}

PresetResolver directory_resolver(std::filesystem::path dir) {
  return [dir = std::move(dir)](std::string_view kind,
                                std::string_view name) -> std::optional<std::string> {
    if (name.empty() || name.find('/') != std::string_view::npos ||
        name.find("..") != std::string_view::npos) {
      return std::nullopt;
    }
    const auto folder = kind == "species" ? "species" : "scenarios";
    return read_file(dir / folder / (std::string(name) + ".cfg"));
  };
}

std::filesystem::path default_preset_dir() {
  if (const char* env = std::getenv("ARAGO_PRESET_DIR"); env != nullptr && *env != '\0') {
    return env;
  }
#ifdef ARAGO_PRESET_DIR
  return ARAGO_PRESET_DIR;
#else
  return "presets";
#endif
}

void validate(const ScenarioConfig& config) {
  wrap_domain("particle", [&] { config.particle.validate(); });
  const auto& n = config.numerics;
  wrap_domain("numerics", [&] {
    n.quad.validate();
    if (n.grid_points < 2) throw DomainError("grid_points must be >= 2");
    if (n.u_max && !(*n.u_max > 0.0)) throw DomainError("u_max must be positive");
    if (n.source_samples < 1 || n.angular_samples < 1 || n.velocity_nodes < 1) {
      throw DomainError("sample counts must be >= 1");
    }
    if (n.ray_points < 16) throw DomainError("ray_points must be >= 16");
    if (n.table.points < 4) throw DomainError("phase_points must be >= 4");
    if (!(n.table.phase_floor > 0.0)) throw DomainError("phase_floor must be positive");
  });
  if (config.is_farfield()) {
    wrap_domain("farfield", [&] { config.farfield.validate(); });
  } else {
    wrap_domain("poisson", [&] {
      PoissonSetup setup = config.poisson;
      setup.particle = config.particle;
      setup.validate();
    });
  }
}

ScenarioConfig parse_config(std::string_view text, const PresetResolver& resolver) {
  const auto entries = tokenize(text);
  if (entries.empty()) throw ConfigError("empty configuration", 1, 1);

  std::map<std::string, const Entry*> seen;
  for (const auto& entry : entries) {
    if (entry.key != "particle.preset" && find_field(entry.key) == nullptr) {
      throw ConfigError("unknown key '" + entry.key + "'", entry.line, entry.key_column);
    }
    if (!seen.emplace(entry.key, &entry).second) {
      throw ConfigError("duplicate key '" + entry.key + "'", entry.line, entry.key_column);
    }
  }
  if (!seen.count("mode")) throw ConfigError("missing required key", 0, 0, "mode");

  ScenarioConfig config;
  apply(config, *seen["mode"], *find_field("mode"));
  if (const auto it = seen.find("particle.preset"); it != seen.end()) {
    config.particle_preset = it->second->value;
    apply_species(config, it->second->value, resolver, *it->second);
  }
  const bool farfield = config.is_farfield();
  for (const auto& entry : entries) {
    if (entry.key == "mode" || entry.key == "particle.preset") continue;
    const Field& field = *find_field(entry.key);
    if (field.section == Section::farfield && !farfield) {
      throw ConfigError("farfield keys are not allowed in mode " + to_string(config.mode),
                        entry.line, entry.key_column, entry.key);
    }
    if (field.section == Section::poisson && farfield) {
      throw ConfigError("poisson keys are not allowed in mode farfield", entry.line,
                        entry.key_column, entry.key);
    }
    apply(config, entry, field);
  }

  const std::vector<std::string> required =
      farfield ? std::vector<std::string>{"farfield.D", "farfield.L1", "farfield.L2", "farfield.d"}
               : std::vector<std::string>{"poisson.obstacle", "poisson.R", "poisson.L1",
                                          "poisson.L2"};
  for (const auto& key : required) {
    if (!seen.count(key)) throw ConfigError("missing required key", 0, 0, key);
  }
  if (config.particle_preset.empty() &&
      (!seen.count("particle.mass") || !seen.count("particle.v_long"))) {
    throw ConfigError("particle needs a preset or mass and v_long", 0, 0, "particle");
  }
  validate(config);
  return config;
}

std::string serialize_config(const ScenarioConfig& config) {
  std::string out;
  for (const auto& field : fields()) {
    if (field.section == Section::farfield && !config.is_farfield()) continue;
    if (field.section == Section::poisson && config.is_farfield()) continue;
    if (const auto value = field.print(config)) {
      out += field.key + " = " + *value + "\n";
    }
  }
  return out;
}

bool is_scalar_key(std::string_view key) {
  const Field* field = find_field(key);
  return field != nullptr && static_cast<bool>(field->assign);
}

void set_scalar(ScenarioConfig& config, std::string_view key, double value) {
  const Field* field = find_field(key);
  if (field == nullptr || !field->assign) {
    throw ConfigError("'" + std::string(key) + "' is not a numeric scalar field");
  }
  if (field->section == Section::farfield && !config.is_farfield()) {
    throw ConfigError("farfield key in a near-field scenario", 0, 0, std::string(key));
  }
  if (field->section == Section::poisson && config.is_farfield()) {
    throw ConfigError("poisson key in a farfield scenario", 0, 0, std::string(key));
  }
  field->assign(config, value);
  validate(config);
}

}  // namespace arago
