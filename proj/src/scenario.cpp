#include "arago/scenario.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>

#include "arago/errors.hpp"
#include "arago/parallel.hpp"

namespace arago {

namespace {

std::string format(const char* fmt, double value) {
  char buffer[64];
  std::snprintf(buffer, sizeof buffer, fmt, value);
  return buffer;
}

std::string direction_name(Direction direction) {
  switch (direction) {
    case Direction::less: return "<";
    case Direction::less_equal: return "<=";
    case Direction::greater: return ">";
    case Direction::greater_equal: return ">=";
    case Direction::info: return "info";
  }
  return "info";
}

PatternOptions pattern_options(const ScenarioConfig& config, int threads) {
  PatternOptions options;
  options.quad = config.numerics.quad;
  options.source_samples = config.numerics.source_samples;
  options.angular_samples = config.numerics.angular_samples;
  options.velocity_nodes = config.averaging.velocity ? config.numerics.velocity_nodes : 1;
  options.threads = threads;
  return options;
}

// Setup as seen by the averaging: a disabled source average is a point source.
PoissonSetup averaged_setup(const ScenarioConfig& config) {
  auto setup = poisson_setup(config);
  if (!config.averaging.source) setup.R0 = 0.0;
  return setup;
}

void require_poisson(const ScenarioConfig& config) {
  if (config.is_farfield()) throw ConfigError("near-field profile requested in farfield mode");
}

class OutputGuard {
 public:
  explicit OutputGuard(std::vector<std::filesystem::path>& files) : files_(files) {}
  ~OutputGuard() {
    if (committed_) return;
    std::error_code ignored;
    for (const auto& file : files_) std::filesystem::remove(file, ignored);
  }
  void write(const std::filesystem::path& path, const std::string& text) {
    files_.push_back(path);
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    out << text;
    out.close();
    if (!out) throw std::runtime_error("cannot write " + path.string());
  }
  void commit() { committed_ = true; }

 private:
  std::vector<std::filesystem::path>& files_;
  bool committed_ = false;
};

std::string kv_line(const std::string& key, double value) {
  return key + " = " + format("%.9g", value) + "\n";
}

}  // namespace

PoissonSetup poisson_setup(const ScenarioConfig& config) {
  require_poisson(config);
  auto setup = config.poisson;
  setup.particle = config.particle;
  return setup;
}

std::vector<double> profile_grid(const ScenarioConfig& config) {
  const auto params = DimensionlessParams::from_setup(poisson_setup(config));
  return uniform_grid(config.numerics.u_max.value_or(3.0 * params.ell), config.numerics.grid_points);
}

RadialProfile compute_quantum(const ScenarioConfig& config, int threads) {
  const auto setup = averaged_setup(config);
  InteractionSettings settings;
  settings.enabled = config.mode != Mode::poisson_ideal;
  settings.capture = settings.enabled && config.capture;
  settings.table = config.numerics.table;
  const auto grid = profile_grid(config);
  auto profile = wavelength_averaged_pattern(grid, setup, settings, pattern_options(config, threads));
  profile.meta.setup_hash = setup_hash(poisson_setup(config));
  return profile;
}

RadialProfile compute_classical(const ScenarioConfig& config, int threads) {
  const auto setup = averaged_setup(config);
  setup.validate();
  const auto options = pattern_options(config, threads);
  const auto nodes = velocity_nodes(setup.particle, options.velocity_nodes);
  const auto grid = profile_grid(config);

  std::vector<RadialProfile> parts(nodes.size());
  parallel_for(nodes.size(), threads, [&](std::size_t i) {
    const double v = nodes[i].v;
    const auto params = DimensionlessParams::from_setup(setup, setup.wavelength_at(v));
    std::optional<EikonalPhase> phase;
    Interaction interaction;
    if (setup.particle.C4() > 0.0) {
      phase = EikonalPhase::build(setup.obstacle, setup.particle, v, config.numerics.table,
                                  options.quad);
      interaction.phase = &*phase;
    }
    if (config.capture) interaction.eta = capture_eta(setup.obstacle, setup.particle, v);
    const auto map = ray_map(params, interaction, setup.L2, config.numerics.ray_points);
    parts[i] = params.beta > 0.0 ? classical_source_averaged(grid, params, map)
                                 : classical_point_pattern(grid, map);
  });

  RadialProfile total;
  total.u = grid;
  total.w.assign(grid.size(), 0.0);
  total.meta.model = Model::classical;
  total.meta.source_averaged = setup.R0 > 0.0;
  total.meta.velocity_averaged = nodes.size() > 1;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    for (std::size_t j = 0; j < grid.size(); ++j) total.w[j] += nodes[i].weight * parts[i].w[j];
    total.meta.converged = total.meta.converged && parts[i].meta.converged;
    total.meta.divergent_origin = total.meta.divergent_origin || parts[i].meta.divergent_origin;
    total.meta.origin_coefficient += nodes[i].weight * parts[i].meta.origin_coefficient;
    total.meta.caustics = std::max(total.meta.caustics, parts[i].meta.caustics);
  }
  total.meta.setup_hash = setup_hash(poisson_setup(config));
  return total;
}

std::string format_profile_csv(const RadialProfile& profile, const DimensionlessParams& params) {
  const auto& m = profile.meta;
  std::string out = "# u = screen radius / R, w = intensity / unobstructed intensity; model=" +
                    to_string(m.model) + " k=" + format("%.9g", params.k) +
                    " ell=" + format("%.9g", params.ell) + " beta=" + format("%.9g", params.beta) +
                    " source_averaged=" + (m.source_averaged ? "1" : "0") +
                    " velocity_averaged=" + (m.velocity_averaged ? "1" : "0") +
                    " converged=" + (m.converged ? "1" : "0");
  if (m.divergent_origin) {
    out += " divergent_origin=1 origin_coefficient=" + format("%.9g", m.origin_coefficient);
  }
  if (m.caustics > 0) out += " caustics=" + std::to_string(m.caustics);
  out += " setup=" + m.setup_hash + "\nu,w\n";
  for (std::size_t i = 0; i < profile.u.size(); ++i) {
    out += format("%.9g", profile.u[i]) + "," + format("%.9g", profile.w[i]) + "\n";
  }
  return out;
}

std::string format_report_text(std::span<const ConstraintReport> reports) {
  std::string out;
  char line[512];
  for (const auto& r : reports) {
    const char* status = r.direction == Direction::info ? "info" : (r.satisfied ? "ok" : "FAIL");
    if (r.direction == Direction::info) {
      std::snprintf(line, sizeof line, "%-26s %-5s value %.4g", r.name.c_str(), status, r.value);
    } else {
      std::snprintf(line, sizeof line, "%-26s %-5s value %.4g %s %.4g", r.name.c_str(), status,
                    r.value, direction_name(r.direction).c_str(), r.bound);
    }
    out += line;
    if (!r.note.empty()) out += "  (" + r.note + ")";
    out += "\n";
  }
  return out;
}

std::string format_report_kv(std::span<const ConstraintReport> reports) {
  std::string out;
  for (const auto& r : reports) {
    const std::string prefix = "constraint." + r.name + ".";
    out += kv_line(prefix + "value", r.value);
    out += kv_line(prefix + "bound", r.bound);
    out += prefix + "direction = " + direction_name(r.direction) + "\n";
    out += prefix + "satisfied = " + (r.satisfied ? "true" : "false") + "\n";
    out += prefix + "note = " + r.note + "\n";
  }
  return out;
}

RunSummary run_scenario(const ScenarioConfig& config, const RunOptions& options) {
  validate(config);
  std::filesystem::path dir = options.out_dir;
  if (dir.empty()) dir = config.output_path.empty() ? "." : config.output_path;

  RunSummary summary;
  // Everything is computed before the first file is written.
  std::vector<std::pair<std::string, std::string>> outputs;
  if (config.is_farfield()) {
    const auto reports = feasibility_report(config.farfield, config.particle);
    outputs.emplace_back("report.txt", format_report_text(reports));
    outputs.emplace_back("report.kv", format_report_kv(reports));
  } else {
    const auto setup = poisson_setup(config);
    const auto params = DimensionlessParams::from_setup(averaged_setup(config));
    const bool quantum = config.mode != Mode::poisson_classical;
    const bool classical =
        config.mode == Mode::poisson_classical || config.mode == Mode::poisson_compare;
    std::optional<RadialProfile> q, cl;
    if (quantum) q = compute_quantum(config, options.threads);
    if (classical) cl = compute_classical(config, options.threads);
    if (q && !q->meta.converged) {
      throw NumericalError("quadrature did not converge; tighten numerics or raise "
                           "numerics.max_subdivisions");
    }
    const auto& primary = q ? *q : *cl;
    summary.w0 = primary.w.front();
    if (const auto minimum = first_minimum(primary)) summary.spot_radius = *minimum;

    if (config.mode == Mode::poisson_ideal) {
      outputs.emplace_back("profile.csv", format_profile_csv(*q, params));
    } else {
      if (q) outputs.emplace_back("quantum.csv", format_profile_csv(*q, params));
      if (cl) outputs.emplace_back("classical.csv", format_profile_csv(*cl, params));
    }
    if (q && cl) {
      const auto d = distinguishability(*q, *cl, params.ell);
      summary.distinguishability = d.height_ratio;
      outputs.emplace_back("compare.kv", kv_line("w0_quantum", q->w.front()) +
                                             kv_line("w0_classical", cl->w.front()) +
                                             kv_line("height_ratio", d.height_ratio) +
                                             kv_line("l1_distance", d.l1_distance));
    }
    outputs.emplace_back("visibility.kv", format_report_kv(visibility_checks(setup)));
  }

  std::filesystem::create_directories(dir);
  OutputGuard guard(summary.files);
  for (const auto& [name, text] : outputs) guard.write(dir / name, text);
  guard.commit();
  return summary;
}

std::vector<SweepPoint> sweep(const ScenarioConfig& config, std::string_view key,
                              std::span<const double> values, const RunOptions& options) {
  if (!is_scalar_key(key)) {
    throw ConfigError("'" + std::string(key) + "' is not a numeric scalar field", 0, 0,
                      std::string(key));
  }
  if (values.empty()) throw ConfigError("sweep needs at least one value", 0, 0, std::string(key));
  std::filesystem::path root = options.out_dir;
  if (root.empty()) root = config.output_path.empty() ? "." : config.output_path;

  std::vector<ScenarioConfig> variants;
  std::vector<SweepPoint> points(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    auto variant = config;
    set_scalar(variant, key, values[i]);
    variants.push_back(std::move(variant));
    char name[64];
    std::snprintf(name, sizeof name, "%03zu", i);
    points[i].value = values[i];
    points[i].dir = root / name;
  }

  // Parallelism goes across variants; each variant runs single-threaded.
  parallel_for(values.size(), options.threads, [&](std::size_t i) {
    points[i].summary = run_scenario(variants[i], {points[i].dir, 1});
  });

  std::string table = "# sweep of " + std::string(key) +
                      "; w0 and spot_radius (units of R) from the primary profile\n"
                      "value,w0,spot_radius,distinguishability\n";
  for (const auto& p : points) {
    table += format("%.9g", p.value) + "," + format("%.9g", p.summary.w0) + "," +
             format("%.9g", p.summary.spot_radius) + "," +
             format("%.9g", p.summary.distinguishability) + "\n";
  }
  std::filesystem::create_directories(root);
  std::ofstream out(root / "summary.csv", std::ios::binary | std::ios::trunc);
  out << table;
  if (!out) throw std::runtime_error("cannot write summary.csv");
  return points;
}

}  // namespace arago
