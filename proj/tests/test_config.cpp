#include <doctest.h>

#include <string>

#include "arago/config.hpp"
#include "arago/errors.hpp"

using namespace arago;

namespace {

const char* kPresets[] = {"fig2a", "fig2b", "fig3-sphere", "fig3-disc", "farfield-30k",
                          "farfield-au5000"};

std::string preset_text(const char* name) {
  const auto text = directory_resolver(default_preset_dir())("scenario", name);
  REQUIRE(text);
  return *text;
}

const char* kMinimal =
    "mode = poisson_ideal\n"
    "particle.preset = C60\n"
    "poisson.obstacle = disc\n"
    "poisson.R = 500e-9\n"
    "poisson.L1 = 0.125\n"
    "poisson.L2 = 0.125\n";

template <typename Fn>
ConfigError capture_error(Fn&& fn) {
  try {
    fn();
  } catch (const ConfigError& e) {
    return e;
  }
  FAIL("expected a ConfigError");
  return ConfigError("unreachable");
}

}  // namespace

TEST_SUITE("config") {
  TEST_CASE("fig2a preset") {
    const auto c = parse_config(preset_text("fig2a"));
    CHECK(c.mode == Mode::poisson_ideal);
    CHECK(c.poisson.obstacle.R == 500e-9);
    CHECK(c.poisson.L1 == 0.125);
    CHECK(c.poisson.L2 == 0.125);
    CHECK(*c.poisson.wavelength == 10e-12);
    CHECK(c.particle.name == "C60");
  }

  TEST_CASE("every preset parses and round-trips") {
    for (const char* name : kPresets) {
      CAPTURE(name);
      const auto first = serialize_config(parse_config(preset_text(name)));
      const auto second = serialize_config(parse_config(first));
      CHECK(first == second);
    }
  }

  TEST_CASE("species presets match the quoted values") {
    std::string text = kMinimal;
    text.replace(text.find("C60"), 3, "Au100");
    const auto au = parse_config(text);
    CHECK(au.particle.mass_amu == 19700.0);
    CHECK(au.particle.alpha_m3 == 500e-30);
    const auto c = parse_config(kMinimal);
    CHECK(c.particle.mass_amu == 720.0);
    CHECK(c.particle.alpha_m3 == 89e-30);
  }

  TEST_CASE("inline keys override the species preset") {
    const auto c = parse_config(std::string(kMinimal) + "particle.v_long = 300\n");
    CHECK(c.particle.v_long == 300.0);
    CHECK(c.particle.mass_amu == 720.0);
  }

  TEST_CASE("syntax errors carry line and column") {
    auto e = capture_error([] { parse_config(""); });
    CHECK(e.line() == 1);
    e = capture_error([] { parse_config("   # only a comment\n\n"); });
    CHECK(e.line() == 1);

    e = capture_error([] { parse_config(std::string(kMinimal) + "  poisson.R0\n"); });
    CHECK(e.line() == 7);
    CHECK(e.column() == 3);

    e = capture_error([] { parse_config(std::string(kMinimal) + "poisson.R0 = 1e-7x\n"); });
    CHECK(e.line() == 7);
    CHECK(e.column() == 14);
    CHECK(e.field() == "poisson.R0");

    e = capture_error([] { parse_config(std::string(kMinimal) + "poisson.R$ = 1\n"); });
    CHECK(e.column() == 10);
  }

  TEST_CASE("unknown and duplicate keys are rejected") {
    auto e = capture_error([] { parse_config(std::string(kMinimal) + "poisson.radius = 1\n"); });
    CHECK(e.line() == 7);
    e = capture_error([] { parse_config(std::string(kMinimal) + "poisson.R = 400e-9\n"); });
    CHECK(std::string(e.what()).find("duplicate") != std::string::npos);
  }

  TEST_CASE("mode and section must agree") {
    auto e = capture_error([] {
      parse_config(preset_text("farfield-30k") + "poisson.R0 = 1e-7\n");
    });
    CHECK(e.field() == "poisson.R0");
    e = capture_error([] { parse_config(std::string(kMinimal) + "farfield.D = 4e-6\n"); });
    CHECK(e.field() == "farfield.D");
  }

  TEST_CASE("missing keys and invariants report the field") {
    auto e = capture_error([] { parse_config("mode = poisson_ideal\nparticle.preset = C60\n"); });
    CHECK(e.field() == "poisson.obstacle");
    e = capture_error([] { parse_config(std::string(kMinimal) + "poisson.R0 = 1e-6\n"); });
    CHECK(e.field() == "poisson");
    e = capture_error([] { parse_config(std::string(kMinimal) + "particle.mass = -5\n"); });
    CHECK(e.field() == "particle");
    e = capture_error([] { parse_config(std::string(kMinimal) + "numerics.grid_points = 1\n"); });
    CHECK(e.field() == "numerics");
    e = capture_error([] {
      parse_config("mode = poisson_ideal\nparticle.preset = Xe\npoisson.obstacle = disc\n");
    });
    CHECK(e.line() == 2);
  }

  TEST_CASE("comments, blank lines and CRLF") {
    const auto c = parse_config("# header\r\nmode = poisson_ideal   # trailing\r\n\r\n"
                                "particle.preset = C60\r\npoisson.obstacle = sphere\r\n"
                                "poisson.R = 5e-7\r\npoisson.L1 = 0.1\r\npoisson.L2 = 0.2\r\n");
    CHECK(c.poisson.obstacle.kind == ObstacleKind::sphere);
    CHECK(c.poisson.L2 == 0.2);
  }

  TEST_CASE("set_scalar") {
    auto c = parse_config(kMinimal);
    CHECK(is_scalar_key("poisson.R0"));
    CHECK_FALSE(is_scalar_key("poisson.obstacle"));
    CHECK_FALSE(is_scalar_key("numerics.grid_points"));
    CHECK_FALSE(is_scalar_key("no.such.key"));
    set_scalar(c, "poisson.R0", 2e-7);
    CHECK(c.poisson.R0 == 2e-7);
    CHECK_THROWS_AS(set_scalar(c, "poisson.R0", 2e-6), ConfigError);
    CHECK_THROWS_AS(set_scalar(c, "farfield.D", 1e-6), ConfigError);
  }
}
