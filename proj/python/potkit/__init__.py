"""Numerical potential theory: Riesz and Wolff potentials, capacities, cones and densities."""

import json as _json

from ._potkit import (
    Measure,
    PotkitError,
    cone_member,
    elementary_symmetric,
    p_gamma,
    p_gamma_k,
    radial_condenser_capacity,
    riesz_potential,
    unit_mass_coefficient,
    upper_density,
    wolff_potential,
    wolff_single_atom,
)
from ._potkit import run_scene as _run_scene

__all__ = [
    "Measure",
    "PotkitError",
    "cone_member",
    "elementary_symmetric",
    "p_gamma",
    "p_gamma_k",
    "radial_condenser_capacity",
    "riesz_potential",
    "run_scene",
    "unit_mass_coefficient",
    "upper_density",
    "wolff_potential",
    "wolff_single_atom",
]


def run_scene(scene, task_type="all", verb="", seed=None):
    """Run a scene (dict or JSON text) and return (report dict, failed check count)."""
    text = scene if isinstance(scene, str) else _json.dumps(scene)
    report, failed = _run_scene(text, task_type, verb, seed)
    return _json.loads(report), failed
