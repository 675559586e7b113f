import math

import numpy as np
import pytest

import siolab


def test_growth_closed_forms():
    g = siolab.growth("power", alpha=0.5, D=1.0)
    for t in (1e-4, 0.1, 0.7):
        assert siolab.zygmund_transform(g, t) == pytest.approx(4 * math.sqrt(t) - 2 * t, rel=1e-10)
    lo, hi = siolab.dilation_indices(siolab.growth("power", alpha=0.4))
    assert lo == pytest.approx(0.4, abs=0.02)
    assert hi == pytest.approx(0.4, abs=0.02)


def test_clifford_vectors_square_to_minus_length():
    x = np.zeros(8)
    x[1], x[2], x[4] = 1.0, 2.0, -2.0
    p = siolab.clifford_product(3, x, x)
    assert p[0] == pytest.approx(-9.0)
    assert np.allclose(p[1:], 0.0)
    assert siolab.blade_name(0b11) == "e1^e2"


def test_disk_riesz_and_double_layer():
    mesh = siolab.build_mesh({"kind": "disk"}, 256)
    assert len(mesh) == 256
    assert mesh.total_measure() == pytest.approx(2 * math.pi)
    one = np.ones(len(mesh))
    r1 = siolab.pv_boundary({"kind": "riesz", "j": 1}, mesh, one)
    assert np.allclose(r1, mesh.nodes[:, 0] / 2, atol=1e-10)
    t1 = siolab.pv_boundary({"kind": "double_layer", "field": {"kind": "harmonic"}}, mesh, one)
    assert np.allclose(t1, -0.5, atol=1e-10)


def test_cauchy_reproduces_one():
    mesh = siolab.build_mesh({"kind": "ellipse", "a": 2, "b": 1}, 512)
    probes = siolab.sample_probes(mesh, 10, 0.2, seed=4)
    vals = siolab.potential({"kind": "cauchy_clifford"}, mesh, np.ones(len(mesh)), probes)
    assert vals.shape == (10, 4)
    assert np.allclose(vals[:, 0], 1.0, atol=1e-10)
    assert np.allclose(vals[:, 1:], 0.0, atol=1e-10)


def test_theta_of_cauchy_field():
    t = siolab.theta({"kind": "cauchy_clifford", "n": 2})
    assert t[0] == pytest.approx(-1.0, abs=1e-8)


def test_seminorm_on_a_line():
    x = np.linspace(0, 1, 20)
    pts = np.stack([x, np.zeros_like(x)], axis=1)
    rep = siolab.seminorm(pts, 3 * x, siolab.growth("power", alpha=1.0))
    assert rep["seminorm"] == pytest.approx(3.0)


def test_errors_carry_a_kind():
    with pytest.raises(siolab.SiolabError) as e:
        siolab.build_mesh({"kind": "triangle"}, 64)
    assert e.value.args[0] == "spec"
    g = siolab.growth("power", alpha=0.5, D=1.0)
    with pytest.raises(siolab.SiolabError):
        g(2.0)


def test_run_experiment_is_deterministic(tmp_path):
    cfg = siolab.load_config(
        """
experiment = "t1_check"
resolutions = [64, 128]
[domain]
kind = "disk"
[operator]
kind = "double_layer"
field = { kind = "harmonic" }
[params]
probes = 5
"""
    )
    a = siolab.run(cfg)
    b = siolab.run(cfg)
    assert a == b
    assert all(r["criterion"].startswith("AC-") for r in a["summary"])
    assert len(a["provenance"]["config_hash"]) == 40
    paths = siolab.write_artifacts(a, tmp_path)
    assert any(p.endswith("report.json") for p in paths)
    assert siolab.plot(a, "convergence").startswith("<svg")
    assert "t1_check" in siolab.experiment_names()
