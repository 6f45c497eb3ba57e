#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "arago/classical.hpp"
#include "arago/config.hpp"
#include "arago/constants.hpp"
#include "arago/errors.hpp"
#include "arago/farfield.hpp"
#include "arago/interaction.hpp"
#include "arago/particles.hpp"
#include "arago/poisson.hpp"
#include "arago/scenario.hpp"

namespace py = pybind11;
using namespace arago;

namespace {

py::dict profile_dict(const RadialProfile& p) {
  py::dict d;
  d["u"] = p.u;
  d["w"] = p.w;
  d["model"] = to_string(p.meta.model);
  d["converged"] = p.meta.converged;
  d["divergent_origin"] = p.meta.divergent_origin;
  d["setup_hash"] = p.meta.setup_hash;
  return d;
}

py::dict report_dict(const ConstraintReport& r) {
  static const char* names[] = {"<", "<=", ">", ">=", "info"};
  py::dict d;
  d["name"] = r.name;
  d["value"] = r.value;
  d["bound"] = r.bound;
  d["direction"] = names[static_cast<int>(r.direction)];
  d["satisfied"] = r.satisfied;
  d["note"] = r.note;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Matter-wave Poisson spot and far-field feasibility calculations";

  auto config_error = py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
  py::register_exception<NumericalError>(m, "NumericalError", PyExc_RuntimeError);
  (void)config_error;

  m.def("de_broglie_wavelength", &de_broglie_wavelength, py::arg("mass_amu"), py::arg("v"));
  m.def("polarizability_to_C4", &polarizability_to_C4, py::arg("alpha_m3"));
  m.def("cutoff_distance", &cutoff_distance, py::arg("C4"), py::arg("b"), py::arg("mass_amu"),
        py::arg("v"));
  m.def("mass_limit", &mass_limit, py::arg("d"), py::arg("temperature"), py::arg("Theta"));

  py::class_<ParticleSpecies>(m, "ParticleSpecies")
      .def(py::init([](std::string name, double mass, double alpha, double v, double dv) {
             ParticleSpecies p{std::move(name), mass, alpha, v, dv};
             p.validate();
             return p;
           }),
           py::arg("name"), py::arg("mass_amu"), py::arg("alpha_m3"), py::arg("v_long"),
           py::arg("dv_rel") = 0.0)
      .def_readonly("name", &ParticleSpecies::name)
      .def_readonly("mass_amu", &ParticleSpecies::mass_amu)
      .def_readonly("alpha_m3", &ParticleSpecies::alpha_m3)
      .def_readonly("v_long", &ParticleSpecies::v_long)
      .def_readonly("dv_rel", &ParticleSpecies::dv_rel)
      .def_property_readonly("C4", &ParticleSpecies::C4)
      .def_property_readonly("wavelength", &ParticleSpecies::wavelength);

  m.def(
      "capture_eta",
      [](const std::string& kind, double R, double b, const ParticleSpecies& particle, double v) {
        if (kind != "sphere" && kind != "disc") throw DomainError("kind must be sphere or disc");
        const Obstacle obstacle{kind == "sphere" ? ObstacleKind::sphere : ObstacleKind::disc, R, b};
        return capture_eta(obstacle, particle, v);
      },
      py::arg("kind"), py::arg("R"), py::arg("b"), py::arg("particle"), py::arg("v"));

  m.def(
      "amplitude",
      [](double u, double k, double ell) { return amplitude(u, {k, ell, 0.0}).value; },
      py::arg("u"), py::arg("k"), py::arg("ell"),
      "Ideal-obstacle amplitude psi(u) for a point source.");

  m.def(
      "ideal_pattern",
      [](const std::vector<double>& u, double k, double ell, double beta) {
        return profile_dict(source_averaged_pattern(u, {k, ell, beta}));
      },
      py::arg("u"), py::arg("k"), py::arg("ell"), py::arg("beta") = 0.0,
      "Ideal-obstacle pattern, averaged over a source image of radius beta.");

  m.def("spot_radius", [](double k) { return spot_radius({k, 2.0, 0.0}); }, py::arg("k"));

  py::class_<ScenarioConfig>(m, "ScenarioConfig")
      .def_property_readonly("name", [](const ScenarioConfig& c) { return c.name; })
      .def_property_readonly("mode", [](const ScenarioConfig& c) { return to_string(c.mode); })
      .def("serialize", &serialize_config)
      .def("set", [](ScenarioConfig& c, const std::string& key, double value) {
        set_scalar(c, key, value);
      });

  m.def("parse_config", [](const std::string& text) { return parse_config(text); }, py::arg("text"));
  m.def(
      "load_preset",
      [](const std::string& name) {
        const auto text = directory_resolver(default_preset_dir())("scenario", name);
        if (!text) throw ConfigError("unknown scenario preset '" + name + "'");
        return parse_config(*text);
      },
      py::arg("name"));

  m.def(
      "compute_quantum",
      [](const ScenarioConfig& c, int threads) {
        py::gil_scoped_release release;
        auto profile = compute_quantum(c, threads);
        py::gil_scoped_acquire acquire;
        return profile_dict(profile);
      },
      py::arg("config"), py::arg("threads") = 1);
  m.def(
      "compute_classical",
      [](const ScenarioConfig& c, int threads) {
        py::gil_scoped_release release;
        auto profile = compute_classical(c, threads);
        py::gil_scoped_acquire acquire;
        return profile_dict(profile);
      },
      py::arg("config"), py::arg("threads") = 1);

  m.def(
      "feasibility_report",
      [](const ScenarioConfig& c) {
        if (!c.is_farfield()) throw ConfigError("feasibility_report needs a farfield scenario");
        py::list out;
        for (const auto& r : feasibility_report(c.farfield, c.particle)) out.append(report_dict(r));
        return out;
      },
      py::arg("config"));

  m.def(
      "run_scenario",
      [](const ScenarioConfig& c, const std::filesystem::path& out_dir, int threads) {
        RunSummary s;
        {
          py::gil_scoped_release release;
          s = run_scenario(c, {out_dir, threads});
        }
        py::dict d;
        d["w0"] = s.w0;
        d["spot_radius"] = s.spot_radius;
        d["distinguishability"] = s.distinguishability;
        d["files"] = s.files;
        return d;
      },
      py::arg("config"), py::arg("out_dir"), py::arg("threads") = 1);
}
