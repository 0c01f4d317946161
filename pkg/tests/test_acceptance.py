"""Acceptance criteria 1-10.

Each test prints a single ``criterion N: PASS|FAIL`` line (visible with
``pytest -v``/``-s``; the capture is bypassed for that line only).
"""
import numpy as np
import pytest

from linespace import EUCLIDEAN, LORENTZIAN
from linespace import cli
from linespace.congruence import rotational_section, weingarten_test
from linespace.verify import DEFAULT_TOLERANCES, run_suite

SPACES = (EUCLIDEAN, LORENTZIAN)


def _report(capsys, n, ok, detail):
    with capsys.disabled():
        print(f"\ncriterion {n}: {'PASS' if ok else 'FAIL'}  {detail}")


def _both(suite):
    return {sp.name: run_suite(suite, sp, seed=42) for sp in SPACES}


def _summary(res, keys):
    parts = []
    for name, r in res.items():
        vals = ", ".join(f"{k}={r['metrics'][k]:.2e}" for k in keys if k in r["metrics"])
        parts.append(f"{name}[{vals}]")
    return " ".join(parts)


def _run(capsys, n, suite, keys):
    res = _both(suite)
    ok = all(r["passed"] for r in res.values())
    _report(capsys, n, ok, _summary(res, keys))
    for name, r in res.items():
        assert r["passed"], (name, r["failures"], r["metrics"])
    return res


def test_criterion_1_wirtinger_identity(capsys):
    res = _run(capsys, 1, "wirtinger", ["wirtinger_max_rel", "complex_plane_max_rel"])
    for r in res.values():
        assert r["metrics"]["samples"] == 10_000
        assert r["metrics"]["wirtinger_max_rel"] <= 1e-9


def test_criterion_2_compatibility(capsys):
    res = _run(capsys, 2, "compatibility", ["compat_max_rel"])
    for r in res.values():
        assert r["metrics"]["compat_max_rel"] <= 1e-12


def test_criterion_3_line_map(capsys):
    res = _run(capsys, 3, "linemap", ["roundtrip_max", "eta_invariance_max"])
    for r in res.values():
        assert r["metrics"]["roundtrip_max"] <= 1e-12
        assert r["metrics"]["eta_invariance_max"] <= 1e-10


def test_criterion_4_killing_fields(capsys):
    res = _run(capsys, 4, "killing", ["killing_max", "negative_control_min"])
    for r in res.values():
        m = r["metrics"]
        assert m["points"] == 100
        assert sum(k.startswith("residual_") for k in m) == 6
        assert m["killing_max"] <= 1e-6
        assert m["negative_control_min"] >= 1e-2


def test_criterion_5_geodesics(capsys):
    res = _run(capsys, 5, "geodesic", ["closed_form_max_dev", "first_integral_drift", "null_energy_max",
                                       "helicoid_max_dev", "plane_max_x2", "energy_drift"])
    m = res["lorentzian"]["metrics"]
    assert m["draws"] == 50
    assert m["closed_form_max_dev"] <= 1e-6
    assert m["first_integral_drift"] <= 1e-8
    assert m["null_energy_max"] <= 1e-8
    assert m["helicoid_max_dev"] <= 1e-9
    assert m["plane_max_x2"] <= 1e-12


def test_criterion_6_optical_scalars(capsys):
    res = _run(capsys, 6, "optical", ["sphere_max_dev", "parametric_vs_slopes_max"])
    for r in res.values():
        assert r["metrics"]["sphere_max_dev"] <= 1e-9
        assert r["metrics"]["parametric_vs_slopes_max"] <= 1e-10


def test_criterion_7_cm2_identity(capsys):
    res = _run(capsys, 7, "cm2", ["cm2_analytic_max", "cm2_fd_max", "cm2_independent_max"])
    for r in res.values():
        assert r["metrics"]["sections"] == 20
        assert r["metrics"]["cm2_analytic_max"] <= 1e-12
        assert r["metrics"]["cm2_fd_max"] <= 1e-8


def test_criterion_8_weingarten_curvature(capsys):
    res = _both("curvature")
    ok = all(r["passed"] for r in res.values())
    # the Weingarten classifier on the same 20x20 grids
    wein = {}
    for sp in SPACES:
        half = 0.8 if sp.sign == 1 else 0.6
        g = np.linspace(-half, half, 20)
        grid = g[:, None] + 1j * g[None, :]
        wein[sp.name] = weingarten_test(sp, rotational_section(sp), grid)
    ok = ok and all(w.is_weingarten and w.agree for w in wein.values())
    _report(capsys, 8, ok, _summary(res, ["rotational_max_abs_K", "rotational_oracle_max_dev",
                                          "perturbed_abs_K", "minimal_max_abs_K"]))
    for name, r in res.items():
        m = r["metrics"]
        assert r["passed"], (name, r["failures"], m)
        assert m["grid_points"] == 400
        assert m["rotational_max_abs_K"] <= 1e-6
        assert m["rotational_oracle_max_dev"] <= 1e-5
        assert m["perturbed_abs_K"] >= 1e-3
        assert m["minimal_max_abs_K"] <= 1e-10
        assert wein[name].is_weingarten and wein[name].agree
        assert wein[name].max_abs_K <= 1e-6


def test_criterion_9_minimal_maximal(capsys):
    res = _run(capsys, 9, "minimal", ["mineq_max", "lagrangian_max", "supfunc2_max", "weierstrass_rho_max",
                                      "dbar3_max", "cubic_closed_form_max", "umbilic_winding_min"])
    for r in res.values():
        m = r["metrics"]
        assert m["mineq_max"] <= 1e-10
        assert m["lagrangian_max"] <= 1e-10
        assert m["supfunc2_max"] <= 1e-8
        assert m["weierstrass_rho_max"] <= 1e-8
        assert m["dbar3_max"] <= 1e-10
        assert m["cubic_closed_form_max"] <= 1e-10
        assert m["umbilic_winding_min"] >= 0


def test_criterion_10_determinism(capsys, tmp_path):
    paths = [tmp_path / "a.json", tmp_path / "b.json"]
    codes = [cli.main(["verify", "--seed", "42", "--out", str(p)]) for p in paths]
    a, b = (p.read_bytes() for p in paths)
    ok = codes == [0, 0] and a == b
    _report(capsys, 10, ok, f"exit={codes} bytes={len(a)} identical={a == b}")
    assert codes == [0, 0]
    assert a == b


def test_tolerances_match_criteria():
    t = DEFAULT_TOLERANCES
    assert t["wirtinger_rel"] == 1e-9 and t["compat_rel"] == 1e-12
    assert t["roundtrip"] == 1e-12 and t["eta_invariance"] == 1e-10
    assert t["killing"] == 1e-6 and t["killing_negative_min"] == 1e-2
    assert t["geodesic_dev"] == 1e-6 and t["first_integral_drift"] == 1e-8
    assert t["helicoid"] == 1e-9 and t["plane"] == 1e-12
    assert t["sphere_rho"] == 1e-9 and t["parametric_slopes"] == 1e-10
    assert t["cm2_analytic"] == 1e-12 and t["cm2_fd"] == 1e-8
    assert t["weingarten_K"] == 1e-6 and t["K_oracle"] == 1e-5 and t["minimal_K"] == 1e-10
    assert t["mineq"] == 1e-10 and t["supfunc2"] == 1e-8 and t["weierstrass_rho"] == 1e-8


@pytest.mark.parametrize("space", SPACES, ids=lambda s: s.name)
def test_verify_report_shape(space):
    r = run_suite("compatibility", space, seed=7, samples=50)
    assert set(r) == {"passed", "failures", "metrics"}
