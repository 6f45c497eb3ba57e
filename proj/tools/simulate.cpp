// simulate: run a scenario config, a shipped preset, or a parameter sweep.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "arago/config.hpp"
#include "arago/errors.hpp"
#include "arago/scenario.hpp"

namespace {

constexpr int kConfigError = 2;
constexpr int kNumericalError = 3;

std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw arago::ConfigError("cannot open " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

struct SweepSpec {
  std::string key;
  std::vector<double> values;
};

SweepSpec parse_sweep(const std::string& text) {
  const auto eq = text.find('=');
  if (eq == std::string::npos || eq == 0 || eq + 1 == text.size()) {
    throw arago::ConfigError("--sweep expects KEY=v1,v2,...");
  }
  SweepSpec spec{text.substr(0, eq), {}};
  std::stringstream list(text.substr(eq + 1));
  std::string item;
  while (std::getline(list, item, ',')) {
    try {
      std::size_t used = 0;
      spec.values.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw arago::ConfigError("bad sweep value '" + item + "'");
    }
  }
  return spec;
}

void print_summary(const arago::RunSummary& summary) {
  for (const auto& file : summary.files) std::printf("wrote %s\n", file.string().c_str());
  if (!std::isnan(summary.w0)) std::printf("w(0) = %.6g\n", summary.w0);
  if (!std::isnan(summary.spot_radius)) std::printf("first minimum at u = %.6g\n", summary.spot_radius);
  if (!std::isnan(summary.distinguishability)) {
    std::printf("quantum/classical spot height = %.6g\n", summary.distinguishability);
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Near- and far-field matter-wave diffraction scenarios"};
  std::string config_path;
  std::string preset;
  std::string out_dir;
  std::string sweep_text;
  int threads = 1;
  app.add_option("config", config_path, "scenario config file");
  app.add_option("--preset", preset, "run a shipped scenario preset instead of a file");
  app.add_option("--out", out_dir, "output directory (default: output.path or .)");
  app.add_option("--sweep", sweep_text, "sweep a numeric field, KEY=v1,v2,...");
  app.add_option("--threads", threads, "worker threads")->check(CLI::PositiveNumber);
  CLI11_PARSE(app, argc, argv);

  try {
    if (config_path.empty() == preset.empty()) {
      throw arago::ConfigError("give exactly one of a config file or --preset");
    }
    std::string text;
    if (!preset.empty()) {
      const auto resolver = arago::directory_resolver(arago::default_preset_dir());
      const auto found = resolver("scenario", preset);
      if (!found) throw arago::ConfigError("unknown scenario preset '" + preset + "'");
      text = *found;
    } else {
      text = read_text(config_path);
    }
    const auto config = arago::parse_config(text);
    const arago::RunOptions options{out_dir, threads};
    if (sweep_text.empty()) {
      print_summary(arago::run_scenario(config, options));
    } else {
      const auto spec = parse_sweep(sweep_text);
      const auto points = arago::sweep(config, spec.key, spec.values, options);
      for (const auto& point : points) {
        std::printf("%s = %.6g -> %s\n", spec.key.c_str(), point.value, point.dir.string().c_str());
      }
    }
  } catch (const arago::ConfigError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return kConfigError;
  } catch (const arago::DomainError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return kConfigError;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "numerical failure: %s\n", e.what());
    return kNumericalError;
  }
  return 0;
}
