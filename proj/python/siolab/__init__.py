"""Singular integral operators on discretized boundaries."""

import json

import numpy as np

from . import _core
from ._core import (
    BoundaryMesh,
    GrowthFunction,
    SiolabError,
    blade_name,
    clifford_involution_check,
    dilation_indices,
    distance_to_boundary,
    experiment_names,
    git_blob_hash,
    riesz_via_clifford,
    w_omega,
    zygmund_transform,
)

__version__ = _core.__version__

__all__ = [
    "BoundaryMesh",
    "GrowthFunction",
    "SiolabError",
    "analyze",
    "blade_name",
    "build_mesh",
    "clifford_involution_check",
    "clifford_product",
    "dilation_indices",
    "distance_to_boundary",
    "experiment_names",
    "git_blob_hash",
    "growth",
    "load_config",
    "plot",
    "potential",
    "pv_boundary",
    "riesz_via_clifford",
    "run",
    "sample_probes",
    "seminorm",
    "theta",
    "w_omega",
    "write_artifacts",
    "zygmund_transform",
]


def growth(kind, **params):
    """growth("power", alpha=0.5, D=1.0) and friends; D may be float("inf")."""
    spec = {"kind": kind}
    for k, v in params.items():
        spec[k] = "inf" if isinstance(v, float) and np.isinf(v) else v
    return GrowthFunction.from_json(json.dumps(spec))


def analyze(g):
    return json.loads(_core.analyze(g))


def clifford_product(n, u, v):
    return np.asarray(_core.clifford_product(n, list(u), list(v)))


def build_mesh(domain, n):
    """domain is a dict such as {"kind": "ellipse", "a": 2, "b": 1}."""
    return _core.build_mesh(json.dumps(domain), int(n))


def sample_probes(mesh, count, rho_min, seed=1, exterior=False):
    return _core.sample_probes(mesh, count, rho_min, seed, exterior)


def theta(field):
    return np.asarray(_core.theta(json.dumps(field)))


def pv_boundary(op, mesh, f):
    """op is a dict such as {"kind": "riesz", "j": 1}; f has shape (N,) or (N, width)."""
    return _core.pv_boundary(json.dumps(op), mesh, np.asarray(f, dtype=float))


def potential(op, mesh, f, points):
    return _core.potential(json.dumps(op), mesh, np.asarray(f, dtype=float), np.asarray(points, dtype=float))


def seminorm(points, f, g):
    return json.loads(_core.seminorm(np.asarray(points, dtype=float), np.asarray(f, dtype=float), g))


def load_config(text):
    return json.loads(_core.parse_config(text))


def run(config, overrides=()):
    """Runs an experiment from a config dict (or config text); returns the report dict."""
    if isinstance(config, str):
        config = load_config(config)
    return json.loads(_core.run_experiment(json.dumps(config), list(overrides)))


def write_artifacts(report, directory):
    return _core.write_artifacts(json.dumps(report), str(directory))


def plot(report, kind="convergence"):
    return _core.plot(json.dumps(report), kind)
