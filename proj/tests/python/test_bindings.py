import math

import numpy as np
import pytest

import weingarten as w


def test_reference_rotational_profile():
    prof = w.rot.integrate_profile(w.WeingartenParams(2, -2), 3.0, n_periods=3)
    assert prof.T == pytest.approx(2 * math.pi, abs=1e-6)
    fi, closed = w.rot.first_integral_residual(prof)
    assert fi < 1e-8 and closed < 1e-8
    bounds = w.rot.bounds(prof)
    assert bounds["M"] == pytest.approx(-1 / math.sqrt(5), abs=1e-12)
    assert bounds["violations"] == 0
    s = prof.samples
    assert s["theta_prime"][0] == pytest.approx(-2.0, abs=1e-9)
    assert np.all(np.diff(s["theta"]) < 0)
    assert w.rot.periodicity(prof)["translation_defect"] < 1e-6
    assert len(w.rot.self_intersections(prof)) >= 1


def test_revolved_surface():
    prof = w.rot.integrate_profile(w.WeingartenParams(2, -2), 3.0, n_periods=1, samples_per_period=200)
    surface, mesh_residual, obj = w.rot.revolve(prof, phi_samples=16)
    assert mesh_residual < 1e-6
    assert surface.residual(w.WeingartenParams(2, -2), nu=40, nv=8)["max_residual"] < 1e-6
    assert obj.count("\nv ") == 201 * 16


def test_inadmissible_height_raises():
    with pytest.raises(w.WeingartenError, match="InvalidParams"):
        w.rot.integrate_profile(w.WeingartenParams(2, -2), 1.0)


@pytest.mark.parametrize(
    "b,label",
    [(-1.0, "CompleteConcaveGraph"), (-0.8, "IncompleteGraph"), (-0.2, "PeriodicComplete"), (0.3, "IncompleteNonGraph")],
)
def test_parabolic_classification(b, label):
    cls = w.parab.classify(0.5, b)
    assert cls["label"] == label
    ok, _observed, detail = w.parab.corroborate(0.5, b)
    assert ok, detail


def test_boundary_angle_and_circle():
    assert w.parab.boundary_angle(0.5, -1.0) == pytest.approx(-math.pi / 3, abs=1e-9)
    circle = w.parab.circle(0.8, -0.2)
    assert circle["radius"] == pytest.approx(1.0, abs=1e-12)
    assert circle["max_distance"] < 1e-8
    with pytest.raises(w.WeingartenError):
        w.parab.circle(0.5, -1.0)


def test_parabolic_identities():
    prof = w.parab.integrate(0.5, -1.0)
    assert prof.end == "BoundaryReached"
    assert w.parab.second_derivative_residual(prof) < 1e-5
    assert w.parab.hyperbolic_residual(prof) < 1e-8


def test_riemann_example_is_minimal():
    spec, identity, drift = w.cyclic.riemann(1.0)
    assert identity < 1e-8 and drift < 1e-8
    res = spec.surface().residual(w.WeingartenParams(1, 0, 0))
    assert res["max_abs_H"] < 1e-6


def test_sphere_coefficients_vanish():
    sphere = w.cyclic.sphere_slice(1.0, -0.9, 0.9)
    coeffs = w.cyclic.trig_coefficients(sphere, w.WeingartenParams(2, 0, 2), 0.2)
    assert coeffs["max_abs"] < 1e-8
    assert len(coeffs["A"]) == 13


def test_cone_is_flat():
    cone = w.cyclic.generalized_cone(0, 0.3, 0, 0.4, 1, 0.5)
    assert cone.surface().residual(w.WeingartenParams(0, 1, 0))["max_abs_K"] < 1e-9
    assert cone.obj(nu=4, nv=4).startswith("# cone")


def test_run_in_process(tmp_path):
    code, report = w.run("parab-h3 classify", a=0.5, b=-1.0, z0=1.0, output_dir=str(tmp_path))
    assert code == 0
    assert report["results"]["label"] == "CompleteConcaveGraph"
    assert (tmp_path / "parab_classify.json").exists()
