import math

import pytest

import arago


def test_ideal_spot_is_unity():
    psi = arago.amplitude(0.0, 0.2, 2.0)
    assert abs(abs(psi) ** 2 - 1.0) < 1e-10


def test_ideal_pattern_shape():
    p = arago.ideal_pattern([0.0, 1.0, 2.0], 0.2, 2.0)
    assert p["u"] == [0.0, 1.0, 2.0]
    assert p["w"][0] == pytest.approx(1.0, abs=1e-9)
    assert p["model"] == "ideal"


def test_cutoff_distance():
    C4 = arago.polarizability_to_C4(2.5e-26)
    assert arago.cutoff_distance(C4, 100e-9, 1e6, 1.0) == pytest.approx(46e-9, rel=0.05)


def test_capture_radius():
    au = arago.ParticleSpecies("Au100", 19700.0, 500e-30, 2.0)
    eta = arago.capture_eta("sphere", 500e-9, 0.0, au, 2.0)
    assert eta * 500e-9 == pytest.approx(39e-9, rel=0.15)


def test_presets_and_quantum_spot():
    config = arago.load_preset("fig3-sphere")
    assert config.mode == "poisson_compare"
    profile = arago.compute_quantum(config)
    assert profile["w"][0] > 1.0


def test_farfield_report():
    reports = {r["name"]: r for r in arago.feasibility_report(arago.load_preset("farfield-30k"))}
    assert reports["collimation"]["satisfied"]
    assert reports["coherence_width"]["value"] == pytest.approx(175e-9, rel=0.02)


def test_config_errors_are_value_errors():
    with pytest.raises(arago.ConfigError):
        arago.parse_config("")
    with pytest.raises(ValueError):
        arago.parse_config("mode = nonsense\n")


def test_run_scenario(tmp_path):
    summary = arago.run_scenario(arago.load_preset("fig2a"), tmp_path)
    assert math.isclose(summary["w0"], 1.0, abs_tol=1e-3)
    assert (tmp_path / "profile.csv").read_text().splitlines()[1] == "u,w"
