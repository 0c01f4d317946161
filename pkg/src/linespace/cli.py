"""Command-line front end: ``linespace {verify,geodesic,congruence,weierstrass}``.

Exit codes: 0 success, 1 failed check or runtime failure, 2 invalid
configuration or input.
"""
from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from . import export
from .congruence import (
    perturbed_section,
    rotational_section,
    spin_coefficients_graph,
    spin_data,
    support_integrate,
    weingarten_test,
)
from .errors import DomainError, DomainExitError, FlatPointError, LinespaceError, NotLagrangianError
from .geodesics import (
    GeodesicParams,
    Trajectory,
    closed_form_th2,
    fibre_geodesic,
    helicoid_standard,
    integrate_geodesic,
    ruled_surface,
)
from .jets import PolynomialSection
from .kahler import EUCLIDEAN, LORENTZIAN, LinePoint, SpaceKind
from .linemap import LineWithParam, to_space
from .minimal import HolomorphicPoly, WeierstrassSection, check_immersion, weierstrass_surface
from .verify import DEFAULT_SAMPLES, DEFAULT_TOLERANCES, SUITES, ordered_map, run_verification

EXIT_OK, EXIT_FAIL, EXIT_CONFIG = 0, 1, 2


class ConfigError(Exception):
    pass


def _parse_tol(items):
    out = {}
    for item in items or []:
        if "=" not in item:
            raise ConfigError(f"--tol expects NAME=VALUE, got {item!r}")
        k, v = item.split("=", 1)
        if k not in DEFAULT_TOLERANCES:
            raise ConfigError(f"unknown tolerance {k!r}; known: {', '.join(sorted(DEFAULT_TOLERANCES))}")
        try:
            out[k] = float(v)
        except ValueError:
            raise ConfigError(f"tolerance {k!r} is not a number: {v!r}") from None
    return out


def _spaces(name, allow_both=True):
    if name == "both":
        if not allow_both:
            raise ConfigError("this command needs a single space (euclidean or lorentzian)")
        return [EUCLIDEAN, LORENTZIAN]
    return [SpaceKind.from_name(name)]


def _emit(text, out):
    if out:
        export.write_text(out, text)
    else:
        sys.stdout.write(text)


def _xi_grid(space, nx, ny, xi_max):
    if nx < 2 or ny < 2:
        raise ConfigError("--grid needs at least 2 x 2 points")
    xs = np.linspace(-xi_max, xi_max, nx)
    ys = np.linspace(-xi_max, xi_max, ny)
    grid = xs[None, :] + 1j * ys[:, None]  # row = y index, column = x index
    if space.sign == -1 and np.max(np.abs(grid)) >= 1.0:
        raise ConfigError(f"grid leaves the disc |xi| < 1 (corner radius {np.max(np.abs(grid)):.4g})")
    return grid


def _polar_grid(space, nr, nt, radius):
    """``xi = rho e^{i phi}`` on ``[0, radius] x [0, 2 pi]`` (rows = radius, columns = angle)."""
    if nr < 2 or nt < 3:
        raise ConfigError("--grid needs at least 2 radii and 3 angles")
    if radius <= 0 or (space.sign == -1 and radius >= 1.0):
        raise ConfigError(f"--xi-max must lie in (0, 1) for {space.name}, got {radius}")
    rho = np.linspace(0.0, radius, nr)
    phi = np.linspace(0.0, 2 * np.pi, nt)
    return rho[:, None] * np.exp(1j * phi[None, :])


def _load_json(path):
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise ConfigError(f"cannot read {path}: {exc}") from None
    except json.JSONDecodeError as exc:
        raise ConfigError(f"malformed JSON in {path}: {exc}") from None


# ---------------------------------------------------------------------------
# verify
# ---------------------------------------------------------------------------


def cmd_verify(args) -> int:
    tol = _parse_tol(args.tol)
    spaces = _spaces(args.space)
    suites = args.suite or list(SUITES)
    for s in suites:
        if s not in SUITES:
            raise ConfigError(f"unknown suite {s!r}; known: {', '.join(SUITES)}")
    if args.samples is not None and args.samples < 1:
        raise ConfigError("--samples must be positive")
    report = run_verification(spaces, suites, args.seed, tol, args.samples or DEFAULT_SAMPLES)
    _emit(export.json_text(report), args.out)
    if args.out:
        for s in suites:
            for sp in spaces:
                res = report["suites"][s][sp.name]
                status = "PASS" if res["passed"] else "FAIL " + ",".join(res["failures"])
                print(f"{s:14s} {sp.name:11s} {status}", file=sys.stderr)
    return EXIT_OK if report["passed"] else EXIT_FAIL


# ---------------------------------------------------------------------------
# geodesic
# ---------------------------------------------------------------------------


def _trajectory_rows(tr, dev=None):
    rows = []
    for k in range(len(tr)):
        row = [tr.s[k], tr.xi[k].real, tr.xi[k].imag, tr.eta[k].real, tr.eta[k].imag,
               tr.dxi[k].real, tr.dxi[k].imag, tr.deta[k].real, tr.deta[k].imag]
        if dev is not None:
            row.append(dev[k])
        rows.append(row)
    return rows


_TRAJ_HEADER = ["s", "re_xi", "im_xi", "re_eta", "im_eta", "re_dxi", "im_dxi", "re_deta", "im_deta"]


def cmd_geodesic(args) -> int:
    (space,) = _spaces(args.space, allow_both=False)
    if args.step <= 0 or args.s_max <= 0:
        raise ConfigError("--step and --s-max must be positive")
    if args.format == "auto":
        args.format = "obj" if args.ruled else "csv"
    elif not args.ruled and args.format != "csv":
        raise ConfigError("trajectories are written as csv; use --ruled for obj/json meshes")
    ns, nr = args.grid
    if args.fibre:
        s = np.linspace(0.0, args.s_max, ns)
        st = fibre_geodesic(complex(args.eta0), complex(args.deta), complex(args.xi0))
        eta = st.eta + s * st.deta
        if args.ruled:
            rr = np.linspace(-args.r_max, args.r_max, nr)
            ones = np.ones((ns, nr))
            lines = LinePoint(st.xi * ones, eta[:, None] * ones)
            pts = to_space(space, LineWithParam(lines, rr[None, :] * ones))
            verts = np.stack([np.real(pts.z), np.imag(pts.z), np.asarray(pts.t)], axis=-1)
            return _emit_mesh(verts, args, ["fibre ruled surface"])
        rows = [[sk, st.xi.real, st.xi.imag, e.real, e.imag, 0.0, 0.0, st.deta.real, st.deta.imag]
                for sk, e in zip(s, eta)]
        _emit(export.csv_text(_TRAJ_HEADER, rows), args.out)
        return EXIT_OK
    try:
        gp = GeodesicParams(args.c1, args.c2, args.c5, args.theta)
    except ValueError as exc:
        raise ConfigError(str(exc)) from None
    if args.compare_closed_form and space.sign != -1:
        raise ConfigError("--compare-closed-form is only available on TH^2 (lorentzian)")
    if args.ruled:
        s = np.linspace(0.0, args.s_max, ns)
        rr = np.linspace(-args.r_max, args.r_max, nr)
        comments = [f"ruled surface C1={args.c1!r} C2={args.c2!r} C5={args.c5!r} theta={args.theta!r}"]
        if space.sign == -1:
            verts = ruled_surface(space, gp, s, rr)
            if args.compare_closed_form and args.theta == 0 and args.c5 == 0:
                dev = np.max(np.abs(verts - helicoid_standard(gp, s, rr)))
                comments.append(f"max_dev_helicoid={export.fmt(dev)}")
        else:
            tr = integrate_geodesic(space, gp.initial_state(), args.s_max, args.step)
            idx = np.round(np.linspace(0, len(tr) - 1, ns)).astype(int)
            sub = Trajectory(tr.s[idx], np.column_stack([tr.xi[idx], tr.eta[idx], tr.dxi[idx], tr.deta[idx]]))
            verts = ruled_surface(space, sub, r_values=rr)
        return _emit_mesh(verts, args, comments)
    tr = integrate_geodesic(space, gp.initial_state(), args.s_max, args.step)
    dev = None
    header = list(_TRAJ_HEADER)
    if args.compare_closed_form:
        cf = closed_form_th2(gp, tr.s)
        dev = np.abs(tr.xi - cf.xi) + np.abs(tr.eta - cf.eta)
        header.append("closed_form_dev")
    _emit(export.csv_text(header, _trajectory_rows(tr, dev)), args.out)
    return EXIT_OK


def _emit_mesh(verts, args, comments):
    if args.format == "obj":
        _emit(export.obj_text(verts, comments), args.out)
    elif args.format == "csv":
        rows = [list(v) for v in verts.reshape(-1, 3)]
        _emit(export.csv_text(["x1", "x2", "x3"], rows, comments), args.out)
    else:
        _emit(export.json_text({"vertices": verts.tolist(), "comments": list(comments)}), args.out)
    return EXIT_OK


# ---------------------------------------------------------------------------
# congruence
# ---------------------------------------------------------------------------


_CONG_HEADER = ["re_xi", "im_xi", "sigma0_re", "sigma0_im", "rho0", "r", "rho", "sigma_re", "sigma_im",
                "lambda1", "lambda2", "K"]


def _example_section(name, space):
    if name == "sphere":
        return PolynomialSection(space, [])
    if name == "rotational":
        return rotational_section(space)
    if name == "perturbed":
        return perturbed_section(space)
    raise ConfigError(f"unknown example {name!r}")


def cmd_congruence(args) -> int:
    if args.section and args.example:
        raise ConfigError("give either a section file or --example, not both")
    if args.section:
        try:
            sec = PolynomialSection.from_json(_load_json(args.section))
        except ValueError as exc:
            raise ConfigError(f"bad section file: {exc}") from None
        if args.space != "auto" and SpaceKind.from_name(args.space) != sec.space:
            raise ConfigError("--space disagrees with the section file")
        space = sec.space
    elif args.example:
        space = LORENTZIAN if args.space == "lorentzian" else EUCLIDEAN
        sec = _example_section(args.example, space)
    else:
        raise ConfigError("a section file or --example is required")
    grid = _xi_grid(space, args.grid[0], args.grid[1], args.xi_max)
    pts = grid.ravel()
    tol = _parse_tol(args.tol)
    k_tol = tol.get("weingarten_K", DEFAULT_TOLERANCES["weingarten_K"])

    def cell(z):
        r = support_integrate(space, sec, [0j, z], args.r0)
        return spin_data(space, sec, z, r)

    data = ordered_map(cell, pts)
    report = weingarten_test(space, sec, pts, r0=args.r0, tol=k_tol, wedge_tol=k_tol)
    rows = [[d.xi.real, d.xi.imag, d.sigma0.real, d.sigma0.imag, d.rho0.real, d.r, d.rho.real,
             d.sigma.real, d.sigma.imag, d.lambda1, d.lambda2, d.K] for d in data]
    summary = {
        "weingarten": report.is_weingarten,
        "weingarten_wedge": report.is_weingarten_wedge,
        "detectors_agree": report.agree,
        "max_abs_K": report.max_abs_K,
        "max_abs_wedge": report.max_abs_wedge,
        "umbilic_cells": report.umbilic_cells,
        "cells": len(rows),
    }
    if args.format == "json":
        _emit(export.json_text({"space": space.name, "columns": _CONG_HEADER, "rows": rows, "summary": summary}),
              args.out)
    elif args.format == "csv":
        comments = [f"{k}={str(v).lower() if isinstance(v, bool) else (export.fmt(v) if isinstance(v, float) else v)}"
                    for k, v in sorted(summary.items())]
        _emit(export.csv_text(_CONG_HEADER, rows, comments), args.out)
    else:
        raise ConfigError("congruence output is csv or json")
    return EXIT_OK


# ---------------------------------------------------------------------------
# weierstrass
# ---------------------------------------------------------------------------


def cmd_weierstrass(args) -> int:
    if args.wfile and args.w:
        raise ConfigError("give either a w file or --w, not both")
    if args.wfile:
        try:
            space, w = HolomorphicPoly.from_json(_load_json(args.wfile))
        except ValueError as exc:
            raise ConfigError(f"bad w file: {exc}") from None
        if args.space != "auto":
            space = SpaceKind.from_name(args.space)
    elif args.w:
        coeffs = []
        for item in args.w:
            try:
                re, im = (float(x) for x in item.split(","))
            except ValueError:
                raise ConfigError(f"--w entries are RE,IM pairs, got {item!r}") from None
            coeffs.append(complex(re, im))
        w = HolomorphicPoly(coeffs)
        space = LORENTZIAN if args.space == "lorentzian" else EUCLIDEAN
    else:
        raise ConfigError("a w file or --w coefficients are required")
    try:
        check_immersion(w)
    except FlatPointError as exc:
        raise ConfigError(str(exc)) from None
    grid = _polar_grid(space, args.grid[0], args.grid[1], args.xi_max)
    pt = weierstrass_surface(space, w, grid)
    verts = np.stack([np.real(pt.z), np.imag(pt.z), np.asarray(pt.t, dtype=float)], axis=-1)
    flat = np.abs(w.deriv(3)(grid)) <= 1e-12 * max(1.0, float(np.max(np.abs(w.coeffs))))
    comments = [f"space={space.name}", f"flat_points={int(flat.sum())}"]
    abs_rho = None
    if args.check:
        sec = WeierstrassSection(space, w)

        def rho_at(item):
            z, is_flat = item
            if is_flat:
                return float("nan")
            return abs(spin_coefficients_graph(space, sec, z, sec.surface_r(z))[0])

        abs_rho = np.array(ordered_map(rho_at, zip(grid.ravel(), flat.ravel()))).reshape(grid.shape)
        comments.append(f"max_abs_rho={export.fmt(np.nanmax(abs_rho))}")
    if args.format == "obj":
        _emit(export.obj_text(verts, comments), args.out)
    elif args.format == "csv":
        header = ["re_xi", "im_xi", "x1", "x2", "x3"] + (["abs_rho"] if abs_rho is not None else [])
        rows = []
        for idx in np.ndindex(grid.shape):
            row = [grid[idx].real, grid[idx].imag, *verts[idx]]
            if abs_rho is not None:
                row.append(abs_rho[idx])
            rows.append(row)
        _emit(export.csv_text(header, rows, comments), args.out)
    else:
        payload = {"space": space.name, "vertices": verts.tolist(), "comments": comments}
        if abs_rho is not None:
            payload["abs_rho"] = abs_rho.tolist()
        _emit(export.json_text(payload), args.out)
    return EXIT_OK


# ---------------------------------------------------------------------------
# argument parsing
# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="linespace", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, space_default, space_choices, fmt_default, fmt_choices):
        sp.add_argument("--space", default=space_default, choices=space_choices)
        sp.add_argument("--seed", type=int, default=42)
        sp.add_argument("--out", help="output path (default: stdout)")
        sp.add_argument("--format", default=fmt_default, choices=fmt_choices)
        sp.add_argument("--tol", action="append", metavar="NAME=VALUE", help="override a tolerance")

    v = sub.add_parser("verify", help="run the identity suites and print a JSON report")
    common(v, "both", ["euclidean", "lorentzian", "both"], "json", ["json"])
    v.add_argument("--suite", action="append", help=f"suite to run (repeatable): {', '.join(SUITES)}")
    v.add_argument("--samples", type=int, help="samples for the sampling suites")
    v.set_defaults(func=cmd_verify)

    g = sub.add_parser("geodesic", help="geodesic trajectory (CSV) or its ruled surface (OBJ/CSV)")
    common(g, "lorentzian", ["euclidean", "lorentzian"], "auto", ["auto", "csv", "obj", "json"])
    g.add_argument("--c1", type=float, default=1.0)
    g.add_argument("--c2", type=float, default=0.5)
    g.add_argument("--c5", type=float, default=0.0)
    g.add_argument("--theta", type=float, default=0.0)
    g.add_argument("--s-max", type=float, default=1.0)
    g.add_argument("--step", type=float, default=1e-3)
    g.add_argument("--ruled", action="store_true", help="output the ruled surface of the geodesic's lines")
    g.add_argument("--r-max", type=float, default=1.0, help="ruled surface: affine range [-r_max, r_max]")
    g.add_argument("--grid", type=int, nargs=2, default=[21, 11], metavar=("N_S", "N_R"))
    g.add_argument("--fibre", action="store_true", help="null geodesic along a fibre")
    g.add_argument("--xi0", type=complex, default=0j)
    g.add_argument("--eta0", type=complex, default=0j)
    g.add_argument("--deta", type=complex, default=1 + 0j)
    g.add_argument("--compare-closed-form", action="store_true")
    g.set_defaults(func=cmd_geodesic)

    c = sub.add_parser("congruence", help="optical scalars and curvature of a section over a grid")
    common(c, "auto", ["auto", "euclidean", "lorentzian"], "csv", ["csv", "json"])
    c.add_argument("section", nargs="?", help="section JSON file")
    c.add_argument("--example", choices=["sphere", "rotational", "perturbed"])
    c.add_argument("--grid", type=int, nargs=2, default=[20, 20], metavar=("N_X", "N_Y"))
    c.add_argument("--xi-max", type=float, default=0.6)
    c.add_argument("--r0", type=float, default=2.0, help="value of r at xi = 0")
    c.set_defaults(func=cmd_congruence)

    w = sub.add_parser("weierstrass", help="minimal / maximal surface mesh from a holomorphic polynomial")
    common(w, "auto", ["auto", "euclidean", "lorentzian"], "obj", ["obj", "csv", "json"])
    w.add_argument("wfile", nargs="?", help='JSON {"space": ..., "w": [[re, im], ...]}')
    w.add_argument("--w", nargs="+", metavar="RE,IM", help="coefficients of w in ascending powers")
    w.add_argument("--grid", type=int, nargs=2, default=[17, 33], metavar=("N_R", "N_THETA"),
                   help="polar grid over the disc |xi| <= xi_max")
    w.add_argument("--xi-max", type=float, default=0.8)
    w.add_argument("--check", action="store_true", help="append |rho| at the surface per vertex")
    w.set_defaults(func=cmd_weierstrass)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_CONFIG if exc.code not in (0, None) else EXIT_OK
    try:
        return args.func(args)
    except ConfigError as exc:
        print(f"linespace: error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except DomainExitError as exc:
        print(f"linespace: {exc} ({len(exc.trajectory)} valid samples)", file=sys.stderr)
        return EXIT_FAIL
    except (NotLagrangianError, DomainError, LinespaceError) as exc:
        print(f"linespace: {exc}", file=sys.stderr)
        return EXIT_FAIL
    except ValueError as exc:  # e.g. LINESPACE_THREADS parsing
        print(f"linespace: error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except BrokenPipeError:  # output piped into e.g. head
        sys.stderr.close()
        return EXIT_OK


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
