import math

import pytest

import potkit


def test_atom_potentials_match_closed_forms():
    mu = potkit.Measure.atoms([([0.0, 0.0, 0.0], 2.0)])
    x = [0.3, 0.4, 0.0]
    assert potkit.riesz_potential(mu, 2.0, x) == pytest.approx(2.0 / 0.5)
    assert potkit.wolff_potential(mu, 2.0, 1.0, x) == pytest.approx(2.0 * (1 / 0.5 - 1))
    assert math.isinf(potkit.wolff_potential(mu, 2.0, 1.0, [0.0, 0.0, 0.0]))
    assert mu.ball_mass([0.0, 0.0, 0.0], 0.1) == 2.0


def test_sum_measure_and_profile():
    power = potkit.Measure.power_profile([0.0, 0.0, 0.0], 2.0, 1.5, 10.0)
    assert power.ball_mass([0.0, 0.0, 0.0], 4.0) == pytest.approx(16.0)
    both = potkit.Measure.sum([power, potkit.Measure.atoms([([0.0, 0.0, 0.0], 1.0)])])
    assert both.total_mass() == pytest.approx(2.0 * 10.0**1.5 + 1.0)


def test_capacity_and_cones():
    cap = potkit.radial_condenser_capacity(3, 2.0, 0.25, 1.0)
    assert cap == pytest.approx(4 * math.pi / (4 - 1))
    assert potkit.p_gamma_k(3, 1) == pytest.approx(2.0)
    assert potkit.p_gamma(4, "Gamma", 2) == pytest.approx(potkit.p_gamma_k(4, 2), rel=1e-10)
    assert potkit.cone_member([1.0, 1.0, 1.0], "Gamma", 3)
    assert not potkit.cone_member([-2.0, 1.0, 0.5], "Gamma", 1)
    assert potkit.elementary_symmetric([1.0, 2.0, 3.0], 3) == pytest.approx([1.0, 6.0, 11.0, 6.0])


def test_errors_surface_as_exceptions():
    mu = potkit.Measure.atoms([([0.0, 0.0, 0.0], 1.0)])
    with pytest.raises(potkit.PotkitError, match="invalid-argument"):
        potkit.riesz_potential(mu, 0.5, [1.0, 0.0, 0.0])
    with pytest.raises(potkit.PotkitError, match="/dimension"):
        potkit.run_scene({"tasks": []})


def test_scene_round_trip():
    scene = {
        "dimension": 3,
        "measures": {"atom": {"atoms": [{"at": [0, 0, 0], "mass": 2}]}},
        "tasks": [
            {
                "type": "wolff",
                "name": "w",
                "measure": "atom",
                "p": 2.5,
                "r": 1,
                "x0": [0, 0, 0],
                "path": {"direction": [1, 0, 0], "r0": 0.5, "q": 0.5, "count": 12},
            }
        ],
    }
    first, failed = potkit.run_scene(scene)
    second, _ = potkit.run_scene(scene)
    assert failed == 0
    assert first == second
    assert "w" in first["tasks"]
