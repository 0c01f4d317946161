"""Seeded identity suites and the machine-readable verification report.

Each suite draws from its own generator seeded by ``(seed, suite, space)``,
so results do not depend on which suites run or in which order / thread.
"""
from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from . import __version__
from .congruence import (
    PERTURBED_SAMPLE_POINT,
    cm2_residual,
    lagrangian_residual,
    metric_scalar_curvature,
    perturbed_section,
    rotational_section,
    scalar_curvature_graph,
    slopes,
    spin_coefficients_graph,
    spin_coefficients_parametric,
    support_gradient,
    support_integrate,
)
from .errors import DomainExitError, UmbilicPointError
from .geodesics import (
    GeodesicParams,
    closed_form_state,
    closed_form_th2,
    energy,
    first_integral,
    helicoid_standard,
    integrate_geodesic,
    ruled_surface,
)
from .isometry import KillingField, killing_basis, killing_residual
from .jets import FiniteDifferenceSection, PolynomialSection
from .kahler import (
    EUCLIDEAN,
    LORENTZIAN,
    LinePoint,
    SpaceKind,
    TangentVector,
    apply_complex_structure,
    metric_value,
    sigma_squared,
    symplectic_value,
    wirtinger_residual,
    wirtinger_scale,
)
from .kernels import BACKEND
from .linemap import LineWithParam, SpacePoint, from_space, to_space
from .minimal import (
    HolomorphicPoly,
    SeriesSection,
    dbar_eta_relation_residual,
    minimal_residual,
    surface_rho,
    umbilic_winding,
    weierstrass_surface,
)

SCHEMA_VERSION = 1

DEFAULT_TOLERANCES = {
    "wirtinger_rel": 1e-9,
    "complex_plane_rel": 1e-12,
    "compat_rel": 1e-12,
    "roundtrip": 1e-12,
    "eta_invariance": 1e-10,
    "killing": 1e-6,
    "killing_negative_min": 1e-2,
    "geodesic_dev": 1e-6,
    "first_integral_drift": 1e-8,
    "null": 1e-8,
    "helicoid": 1e-9,
    "plane": 1e-12,
    "sphere_rho": 1e-9,
    "parametric_slopes": 1e-10,
    "cm2_analytic": 1e-12,
    "cm2_fd": 1e-8,
    "cm2_independent": 1e-8,
    "weingarten_K": 1e-6,
    "K_oracle": 1e-5,
    "perturbed_K_min": 1e-3,
    "minimal_K": 1e-10,
    "mineq": 1e-10,
    "lagrangian": 1e-10,
    "supfunc2": 1e-8,
    "weierstrass_rho": 1e-8,
    "dbar3": 1e-10,
    "closed_form": 1e-10,
}

SUITES = ("wirtinger", "compatibility", "linemap", "killing", "geodesic", "optical", "cm2",
          "curvature", "minimal")
DEFAULT_SAMPLES = 10_000


def _rng(seed, suite, space):
    return np.random.default_rng([int(seed), SUITES.index(suite), 1 if space.sign == 1 else 2])


def _disc(rng, n, rmax):
    return rmax * np.sqrt(rng.uniform(size=n)) * np.exp(2j * np.pi * rng.uniform(size=n))


def _cnormal(rng, n):
    return rng.normal(size=n) + 1j * rng.normal(size=n)


def _check(metrics, tol, checks):
    """``checks``: list of (metric, tol-name, 'max' | 'min')."""
    failures = []
    for key, tname, kind in checks:
        v = metrics[key]
        ok = (v <= tol[tname]) if kind == "max" else (v >= tol[tname])
        if not (ok and np.isfinite(v)):
            failures.append(key)
    return failures


# ---------------------------------------------------------------------------
# suites: each returns (metrics, failures)
# ---------------------------------------------------------------------------


def suite_wirtinger(space, rng, tol, samples):
    n = samples
    xi = _disc(rng, n, 0.9)
    p = LinePoint(xi, _cnormal(rng, n))
    v = TangentVector(_cnormal(rng, n), _cnormal(rng, n))
    w = TangentVector(_cnormal(rng, n), _cnormal(rng, n))
    rel = np.abs(wirtinger_residual(space, p, v, w)) / wirtinger_scale(space, p, v, w)
    jv = apply_complex_structure(v)
    s2 = sigma_squared(space, p, v, jv)
    ref = np.abs(metric_value(space, p, v, v)) ** 2 + 1e-300
    m = {"wirtinger_max_rel": float(rel.max()), "complex_plane_max_rel": float(np.max(s2 / ref)), "samples": n}
    return m, _check(m, tol, [("wirtinger_max_rel", "wirtinger_rel", "max"),
                              ("complex_plane_max_rel", "complex_plane_rel", "max")])


def suite_compatibility(space, rng, tol, samples):
    n = samples
    p = LinePoint(_disc(rng, n, 0.9), _cnormal(rng, n))
    v = TangentVector(_cnormal(rng, n), _cnormal(rng, n))
    w = TangentVector(_cnormal(rng, n), _cnormal(rng, n))
    g = metric_value(space, p, v, w)
    om = symplectic_value(space, p, apply_complex_structure(v), w)
    scale = np.sqrt(np.abs(metric_value(space, p, v, v) * metric_value(space, p, w, w))) + np.abs(g)
    m = {"compat_max_rel": float(np.max(np.abs(g - om) / scale)), "samples": n}
    return m, _check(m, tol, [("compat_max_rel", "compat_rel", "max")])


def suite_linemap(space, rng, tol, samples):
    n = samples
    xi = _disc(rng, n, 0.9)
    eta = _cnormal(rng, n)
    r = rng.normal(size=n)
    pt = to_space(space, LineWithParam(LinePoint(xi, eta), r))
    back = from_space(space, xi, pt)
    rt = max(np.max(np.abs(back.line.eta - eta) / (1 + np.abs(eta))), np.max(np.abs(back.r - r) / (1 + np.abs(r))))
    # forward-then-back in 3-space
    z = _cnormal(rng, n)
    t = rng.normal(size=n)
    lw = from_space(space, xi, SpacePoint(z, t))
    pt2 = to_space(space, lw)
    rt2 = np.max((np.abs(pt2.z - z) + np.abs(pt2.t - t)) / (1 + np.abs(z) + np.abs(t)))
    # eta is the same for every point of the line
    s = rng.normal(size=n) * 3
    moved = to_space(space, LineWithParam(LinePoint(xi, eta), r + s))
    inv = np.max(np.abs(from_space(space, xi, moved).line.eta - eta) / (1 + np.abs(eta)))
    m = {"roundtrip_max": float(max(rt, rt2)), "eta_invariance_max": float(inv), "samples": n}
    return m, _check(m, tol, [("roundtrip_max", "roundtrip", "max"), ("eta_invariance_max", "eta_invariance", "max")])


def suite_killing(space, rng, tol, samples):
    n = min(samples, 100)
    pts = LinePoint(_disc(rng, n, 0.8), _cnormal(rng, n))
    m = {}
    worst = 0.0
    for f in killing_basis(space):
        res = float(np.max(killing_residual(f, space, pts)))
        m[f"residual_{f.label}"] = res
        worst = max(worst, res)
    neg = KillingField(a0=(0j, 0j, 1 + 0j), label="xi^2")
    m["negative_control_min"] = float(np.min(killing_residual(neg, space, pts)))
    m["killing_max"] = worst
    m["points"] = n
    return m, _check(m, tol, [("killing_max", "killing", "max"),
                              ("negative_control_min", "killing_negative_min", "min")])


def _draw_params(rng):
    return GeodesicParams(C1=float(rng.uniform(-2, 2)), C2=float(rng.choice([-1, 1]) * rng.uniform(0.2, 1.0)),
                          C5=float(rng.uniform(-1, 1)), theta=float(rng.uniform(0, 2 * np.pi)))


def suite_geodesic(space, rng, tol, samples):
    draws = min(samples, 50)
    step = 1e-3
    m = {}
    if space.sign == -1:
        dev = drift = null = 0.0
        for _ in range(draws):
            gp = _draw_params(rng)
            tr = integrate_geodesic(space, gp.initial_state(), 1.0, step)
            cf = closed_form_th2(gp, tr.s)
            dev = max(dev, float(np.max(np.abs(tr.xi - cf.xi) + np.abs(tr.eta - cf.eta))))
            c = np.array([first_integral(space, st) for st in tr])
            drift = max(drift, float(np.max(np.abs(c - gp.C1))))
            # C1 = 0 <=> G(c', c') = 0
            g0 = GeodesicParams(0.0, gp.C2, gp.C5, gp.theta)
            null = max(null, abs(energy(space, closed_form_state(g0, 0.7))),
                       abs(energy(space, g0.initial_state())))
        s = np.linspace(0, 1, 21)
        rr = np.linspace(-1, 1, 11)
        hel = 0.0
        plane = 0.0
        for _ in range(5):
            gp = GeodesicParams(float(rng.uniform(-2, 2)), float(rng.uniform(0.2, 1.0)))
            hel = max(hel, float(np.max(np.abs(ruled_surface(space, gp, s, rr) - helicoid_standard(gp, s, rr)))))
            flat = GeodesicParams(0.0, float(rng.uniform(0.2, 1.0)))
            plane = max(plane, float(np.max(np.abs(ruled_surface(space, flat, s, rr)[..., 1]))))
        m.update(closed_form_max_dev=dev, first_integral_drift=drift, null_energy_max=null,
                 helicoid_max_dev=hel, plane_max_x2=plane, draws=draws)
        return m, _check(m, tol, [("closed_form_max_dev", "geodesic_dev", "max"),
                                  ("first_integral_drift", "first_integral_drift", "max"),
                                  ("null_energy_max", "null", "max"),
                                  ("helicoid_max_dev", "helicoid", "max"),
                                  ("plane_max_x2", "plane", "max")])
    # S^2: no closed form; check conservation of G(c', c')
    drift = 0.0
    for _ in range(draws):
        gp = _draw_params(rng)
        st = gp.initial_state()
        try:
            tr = integrate_geodesic(space, st, 1.0, step)
        except DomainExitError as exc:  # pragma: no cover - |xi| stays bounded here
            tr = exc.trajectory
        e = energy(space, tr)
        drift = max(drift, float(np.max(np.abs(e - e[0]))))
    m.update(energy_drift=drift, draws=draws)
    return m, _check(m, tol, [("energy_drift", "first_integral_drift", "max")])


def _random_lagrangian(space, rng):
    """Random Lagrangian section: rotational part plus a series part."""
    g = rng.uniform(-0.3, 0.3, size=3)
    lam = 0.1 * _cnormal(rng, 3)
    rot = rotational_section(space, g).terms
    return PolynomialSection(space, rot + SeriesSection(space, lam).terms())


def suite_optical(space, rng, tol, samples):
    zero = PolynomialSection(space, [])
    sph = 0.0
    for _ in range(20):
        xi = complex(_disc(rng, 1, 0.8)[0])
        R = float(rng.uniform(0.5, 5))
        rho, sigma = spin_coefficients_parametric(space, zero, xi, R)
        sph = max(sph, abs(rho - 1 / R), abs(sigma))
    agree = 0.0
    for _ in range(20):
        sec = _random_lagrangian(space, rng)
        xi = complex(_disc(rng, 1, 0.8)[0])
        r = float(rng.uniform(2, 4))
        a = spin_coefficients_parametric(space, sec, xi, r)
        b = spin_coefficients_graph(space, sec, xi, r)
        agree = max(agree, abs(a[0] - b[0]), abs(a[1] - b[1]))
    m = {"sphere_max_dev": sph, "parametric_vs_slopes_max": agree}
    return m, _check(m, tol, [("sphere_max_dev", "sphere_rho", "max"), ("parametric_vs_slopes_max", "parametric_slopes", "max")])


def _random_poly(space, rng):
    return PolynomialSection(space, [(mm, nn, complex(*rng.normal(size=2)) * 0.5)
                                     for mm in range(4) for nn in range(4)])


def suite_cm2(space, rng, tol, samples):
    an = fd = indep = 0.0
    for _ in range(20):
        sec = _random_poly(space, rng)
        xi = complex(_disc(rng, 1, 0.7)[0])
        an = max(an, abs(cm2_residual(space, sec, xi)))
        fd = max(fd, abs(cm2_residual(space, FiniteDifferenceSection(space, sec.value), xi)))
        # outer derivatives by differencing the slopes: independent of the jet algebra
        indep = max(indep, abs(cm2_residual(space, sec, xi, method="fd")))
    m = {"cm2_analytic_max": an, "cm2_fd_max": fd, "cm2_independent_max": indep, "sections": 20}
    return m, _check(m, tol, [("cm2_analytic_max", "cm2_analytic", "max"), ("cm2_fd_max", "cm2_fd", "max"),
                              ("cm2_independent_max", "cm2_independent", "max")])


def _grid(space, n=20):
    half = 0.8 if space.sign == 1 else 0.6
    g = np.linspace(-half, half, n)
    return (g[:, None] + 1j * g[None, :]).ravel()


def suite_curvature(space, rng, tol, samples):
    rot = rotational_section(space)
    kmax = 0.0
    oracle = 0.0
    for z in _grid(space):
        k = scalar_curvature_graph(space, rot, z)
        kmax = max(kmax, abs(k))
        oracle = max(oracle, abs(k - metric_scalar_curvature(space, rot, z)))
    # a few other rotational sections at random points
    for _ in range(5):
        sec = rotational_section(space, rng.uniform(-0.3, 0.3, size=3))
        for z in _disc(rng, 4, 0.7):
            try:
                kmax = max(kmax, abs(scalar_curvature_graph(space, sec, z)))
            except UmbilicPointError:
                pass
    pert = perturbed_section(space)
    kp = scalar_curvature_graph(space, pert, PERTURBED_SAMPLE_POINT)
    kp_oracle = metric_scalar_curvature(space, pert, PERTURBED_SAMPLE_POINT)
    kmin = 0.0
    for _ in range(5):
        ss = SeriesSection(space, 0.3 * _cnormal(rng, 3))
        sec = ss.build()
        for z in _disc(rng, 4, 0.7):
            try:
                kmin = max(kmin, abs(scalar_curvature_graph(space, sec, z)))
            except UmbilicPointError:
                pass
    m = {
        "rotational_max_abs_K": kmax,
        "rotational_oracle_max_dev": oracle,
        "perturbed_abs_K": abs(kp),
        "perturbed_oracle_rel_dev": abs(kp - kp_oracle) / max(1.0, abs(kp)),
        "minimal_max_abs_K": kmin,
        "grid_points": len(_grid(space)),
    }
    return m, _check(m, tol, [("rotational_max_abs_K", "weingarten_K", "max"),
                              ("rotational_oracle_max_dev", "K_oracle", "max"),
                              ("perturbed_oracle_rel_dev", "K_oracle", "max"),
                              ("perturbed_abs_K", "perturbed_K_min", "min"),
                              ("minimal_max_abs_K", "minimal_K", "max")])


def _dbar_fd(f, z, h=2e-4):
    gx = (f(z - 2 * h) - 8 * f(z - h) + 8 * f(z + h) - f(z + 2 * h)) / (12 * h)
    gy = (f(z - 2j * h) - 8 * f(z - 1j * h) + 8 * f(z + 1j * h) - f(z + 2j * h)) / (12 * h)
    return 0.5 * (gx + 1j * gy)


def suite_minimal(space, rng, tol, samples):
    mineq = lag = sup = 0.0
    for _ in range(10):
        ss = SeriesSection(space, 0.5 * _cnormal(rng, 3))
        sec = ss.build()
        for z in _disc(rng, 5, 0.7):
            mineq = max(mineq, abs(minimal_residual(space, sec, z)))
            lag = max(lag, abs(lagrangian_residual(space, sec, z)))
            want = support_gradient(space, sec.value(z), z)
            sup = max(sup, abs(_dbar_fd(ss.potential_r, z) - want))
            end = support_integrate(space, sec, [0j, z], ss.potential_r(0j))
            sup = max(sup, abs(end - ss.potential_r(z)))
    rho = dbar3 = 0.0
    for _ in range(10):
        w = HolomorphicPoly(0.5 * _cnormal(rng, 6))
        for z in _disc(rng, 3, 0.7):
            rho = max(rho, abs(surface_rho(space, w, z)))
            dbar3 = max(dbar3, abs(dbar_eta_relation_residual(space, w, z)))
    cubic = HolomorphicPoly([0, 0, 0, 1])
    zs = _disc(rng, 50, 0.8)
    pt = weierstrass_surface(space, cubic, zs)
    cf_z = 3 * np.conj(zs) - space.sign * zs**3
    cf_t = -space.sign * 1.5 * (zs**2 + np.conj(zs) ** 2).real
    closed = float(np.max(np.abs(pt.z - cf_z) + np.abs(pt.t - cf_t)))
    half = weierstrass_surface(space, cubic, 0.5)
    fixture = abs(half.z - (1.375 if space.sign == 1 else 1.625)) + abs(half.t + 0.75 * space.sign)
    wmin = 10**9
    done = 0
    while done < 20:
        ss = SeriesSection(space, 0.5 * _cnormal(rng, 4))
        sec = ss.build(order=1)
        c = complex(_disc(rng, 1, 0.3)[0])
        try:
            wmin = min(wmin, umbilic_winding(space, sec, c, float(rng.uniform(0.05, 0.4))))
        except UmbilicPointError:
            continue
        done += 1
    m = {
        "mineq_max": mineq,
        "lagrangian_max": lag,
        "supfunc2_max": sup,
        "weierstrass_rho_max": rho,
        "dbar3_max": dbar3,
        "cubic_closed_form_max": max(closed, fixture),
        "umbilic_winding_min": wmin,
    }
    fails = _check(m, tol, [("mineq_max", "mineq", "max"), ("lagrangian_max", "lagrangian", "max"),
                            ("supfunc2_max", "supfunc2", "max"), ("weierstrass_rho_max", "weierstrass_rho", "max"),
                            ("dbar3_max", "dbar3", "max"), ("cubic_closed_form_max", "closed_form", "max")])
    if wmin < 0:
        fails.append("umbilic_winding_min")
    return m, fails


_SUITE_FUNCS = {
    "wirtinger": suite_wirtinger,
    "compatibility": suite_compatibility,
    "linemap": suite_linemap,
    "killing": suite_killing,
    "geodesic": suite_geodesic,
    "optical": suite_optical,
    "cm2": suite_cm2,
    "curvature": suite_curvature,
    "minimal": suite_minimal,
}


def thread_count() -> int:
    env = os.environ.get("LINESPACE_THREADS")
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            raise ValueError(f"LINESPACE_THREADS must be an integer, got {env!r}") from None
    return min(4, os.cpu_count() or 1)


def ordered_map(func, items, threads: int | None = None):
    """``map`` over a thread pool; results keep the input order."""
    items = list(items)
    threads = thread_count() if threads is None else threads
    if threads <= 1 or len(items) <= 1:
        return [func(x) for x in items]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(func, items))


def run_suite(name: str, space: SpaceKind, seed: int = 42, tolerances=None, samples: int = DEFAULT_SAMPLES):
    tol = dict(DEFAULT_TOLERANCES)
    tol.update(tolerances or {})
    metrics, failures = _SUITE_FUNCS[name](space, _rng(seed, name, space), tol, samples)
    return {"passed": not failures, "failures": sorted(failures), "metrics": metrics}


def run_verification(spaces=(EUCLIDEAN, LORENTZIAN), suites=SUITES, seed: int = 42, tolerances=None,
                     samples: int = DEFAULT_SAMPLES, threads: int | None = None) -> dict:
    """Run the suites and assemble the report (deterministic for fixed arguments)."""
    for s in suites:
        if s not in _SUITE_FUNCS:
            raise ValueError(f"unknown suite {s!r}")
    tol = dict(DEFAULT_TOLERANCES)
    for k, v in (tolerances or {}).items():
        if k not in tol:
            raise ValueError(f"unknown tolerance {k!r}")
        tol[k] = float(v)
    jobs = [(s, sp) for s in suites for sp in spaces]
    results = ordered_map(lambda job: run_suite(job[0], job[1], seed, tol, samples), jobs, threads)
    out = {}
    for (s, sp), res in zip(jobs, results):
        out.setdefault(s, {})[sp.name] = res
    return {
        "schema_version": SCHEMA_VERSION,
        "package_version": __version__,
        "backend": BACKEND,
        "seed": int(seed),
        "samples": int(samples),
        "spaces": [sp.name for sp in spaces],
        "tolerances": tol,
        "suites": out,
        "passed": all(r["passed"] for r in results),
    }
