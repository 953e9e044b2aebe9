"""Command-line interface: ``pg4 {frenet,classify,audit,synthesize,reparam}``.

Exit codes: 0 success, 1 internal error or failed audit, 2 parse error,
3 geometric degeneracy, 4 invalid specification.
"""

from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path

import numpy as np

from . import __version__
from .audit import DEFAULT_AUDIT_TOL, audit_curve, run_suite
from .errors import (
    DomainErrorJet,
    GeometryError,
    IllConditionedFit,
    InvalidSpecification,
    NotAdmissible,
    NotApplicable,
    ParseError,
    PreconditionViolation,
)
from .formats import FRAME_COLUMNS, SCHEMA, csv_text, dumps, flat_csv, load_any_curve, write_atomic
from .frenet import SignTriple, frenet_apparatus, reparametrize_by_arclength
from .integrator import CurvatureSpec, canonical_initial_frame, integrate_frenet
from .special import DEFAULT_GRID, DEFAULT_TOL, classify_curve, synthesize_rectifying

EXIT_OK, EXIT_FAIL, EXIT_PARSE, EXIT_GEOMETRY, EXIT_SPEC = 0, 1, 2, 3, 4


class UsageError(Exception):
    pass


# -- argument types ---------------------------------------------------------------

def _grid(v):
    n = int(v)
    if n < 11:
        raise argparse.ArgumentTypeError("grid must be at least 11")
    return n


def _tol(v):
    x = float(v)
    if not (0 < x <= 1e-2):
        raise argparse.ArgumentTypeError("tolerance must lie in (0, 1e-2]")
    return x


def _jet_order(v):
    k = int(v)
    if not 5 <= k <= 12:
        raise argparse.ArgumentTypeError("jet order must lie in [5, 12]")
    return k


def _sign(v):
    k = int(v)
    if k not in (1, -1):
        raise argparse.ArgumentTypeError("signs are +1 or -1")
    return k


def _positive(v):
    x = float(v)
    if not x > 0:
        raise argparse.ArgumentTypeError("must be positive")
    return x


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--grid", type=_grid, default=DEFAULT_GRID, help="number of sample points (>= 11)")
    common.add_argument("--tol", type=_tol, default=None, help="tolerance for flags / identity residuals")
    common.add_argument("--tol-frame", type=_tol, default=1e-10, help="tolerance for frame residuals")
    common.add_argument("--jet-order", type=_jet_order, default=6, help="jet order in [5, 12]")
    common.add_argument("--format", choices=("json", "csv"), default="json")
    common.add_argument("--out", default=None, help="output path (default stdout)")
    common.add_argument("--paper-signs", action="store_true",
                        help="judge residuals by the printed sign conventions")

    p = argparse.ArgumentParser(prog="pg4", description="Admissible curves in pseudo-Galilean 4-space.")
    p.add_argument("--version", action="version", version=f"pg4 {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    f = sub.add_parser("frenet", parents=[common], help="Frenet apparatus along a curve")
    f.add_argument("curve", help="curve file (.json, .csv or curve text)")
    f.add_argument("--at", type=float, nargs="+", metavar="T", help="parameter values instead of a grid")

    c = sub.add_parser("classify", parents=[common], help="special-curve flags")
    c.add_argument("curve")

    a = sub.add_parser("audit", parents=[common], help="identity residuals")
    a.add_argument("curve", nargs="?")
    a.add_argument("--suite", action="store_true", help="audit the built-in corpus")
    a.add_argument("--corpus", default=None, help="corpus directory (default: PG4_CORPUS or packaged)")

    s = sub.add_parser("synthesize", parents=[common], help="integrate the Frenet system")
    kind = s.add_mutually_exclusive_group(required=True)
    kind.add_argument("--rectifying", action="store_true", help="rectifying-curve recipe")
    kind.add_argument("--wcurve", type=float, nargs=3, metavar=("KAPPA", "TAU", "SIGMA"))
    kind.add_argument("--curvatures", nargs=3, metavar=("KAPPA", "TAU", "SIGMA"),
                      help="curvature expressions in s")
    s.add_argument("--c", type=float, default=2.0, help="offset of the rectifying recipe")
    s.add_argument("--signs", type=_sign, nargs=3, default=[-1, 1, 1], metavar=("E1", "E2", "E3"))
    s.add_argument("--interval", type=float, nargs=2, default=[0.0, 1.0], metavar=("S0", "S1"))
    s.add_argument("--step", type=_positive, default=1e-3)
    s.add_argument("--reorthonormalize", action="store_true")

    r = sub.add_parser("reparam", parents=[common], help="resample a curve by arclength")
    r.add_argument("curve")
    return p


# -- output -------------------------------------------------------------------------

def _emit(args, text: str):
    if args.out:
        write_atomic(args.out, text)
    else:
        sys.stdout.write(text)


def _report(args, command: str, body: dict):
    doc = {"schema": SCHEMA, "command": command}
    doc.update(body)
    if args.format == "csv":
        _emit(args, flat_csv(doc))
    else:
        _emit(args, dumps(doc))


def _vec(v):
    return list(v)


# -- commands ---------------------------------------------------------------------

def cmd_frenet(args) -> int:
    curve = load_any_curve(args.curve)
    ts = args.at if args.at else [float(t) for t in np.linspace(*curve.domain, args.grid)]
    tol_unit = 1e-8
    rows, failures = [], []
    for t in ts:
        try:
            app = frenet_apparatus(reparametrize_by_arclength(curve, t, args.jet_order),
                                   tol_unit=tol_unit)
        except (GeometryError, DomainErrorJet) as exc:
            failures.append({"t": t, "error": type(exc).__name__, "message": str(exc)})
            continue
        pos = list(app.jets.alpha[i].d[0] for i in range(4))
        rows.append([app.s, *pos, *_vec(app.T), *_vec(app.N), *_vec(app.B1), *_vec(app.B2),
                     app.kappa, app.tau, app.sigma, *app.signs.eps, app.gram_residual()])
    if not rows:
        first = failures[0]
        print(f"{first['error']}: {first['message']}", file=sys.stderr)
        return EXIT_GEOMETRY
    cols = FRAME_COLUMNS + ["gram_residual"]
    if args.format == "csv":
        _emit(args, csv_text(cols, rows))
    else:
        _report(args, "frenet", {
            "curve": _describe(curve),
            "columns": cols,
            "rows": [dict(zip(cols, r)) for r in rows],
            "failures": failures,
        })
    return EXIT_OK


def _describe(curve):
    return str(curve) if hasattr(curve, "components") else f"tabulated:{curve.label}"


def cmd_classify(args) -> int:
    curve = load_any_curve(args.curve)
    tol = args.tol if args.tol is not None else DEFAULT_TOL
    rep = classify_curve(curve, args.grid, tol)
    body = {"curve": _describe(curve)}
    body.update({k: v.flag for k, v in rep.flags.items()})
    body["report"] = rep.to_dict()
    _report(args, "classify", body)
    return EXIT_OK


def cmd_audit(args) -> int:
    tol = args.tol if args.tol is not None else DEFAULT_AUDIT_TOL
    if args.suite:
        if args.curve:
            raise UsageError("give either a curve file or --suite, not both")
        res = run_suite(args.corpus, args.grid, tol, args.paper_signs)
        _report(args, "audit", {"suite": True, **res})
        if not res["pass"]:
            print(f"audit failed on {res['curves'] - res['passed']} of {res['curves']} curves",
                  file=sys.stderr)
            return EXIT_FAIL
        return EXIT_OK
    if not args.curve:
        raise UsageError("audit needs a curve file or --suite")
    curve = load_any_curve(args.curve)
    res = audit_curve(curve, args.grid, tol, args.paper_signs, args.tol_frame)
    _report(args, "audit", {"suite": False, **res})
    return EXIT_OK if res["pass"] else EXIT_FAIL


def cmd_synthesize(args) -> int:
    signs = SignTriple(*args.signs)
    interval = tuple(args.interval)
    frame0 = point0 = None
    if args.rectifying:
        recipe = synthesize_rectifying(signs, interval, args.c)
        spec = recipe.curvature_spec(args.step)
        frame0, point0 = recipe.frame0, recipe.point0
        kind = {"kind": "rectifying", "c": args.c}
    elif args.wcurve:
        k, t, s = args.wcurve
        spec = CurvatureSpec(k, t, s, signs, interval, args.step)
        kind = {"kind": "wcurve"}
    else:
        k, t, s = args.curvatures
        spec = CurvatureSpec(k, t, s, signs, interval, args.step)
        kind = {"kind": "curvatures"}
    if frame0 is None:
        frame0 = canonical_initial_frame(signs)
    path = integrate_frenet(spec, frame0, point0, reorthonormalize=args.reorthonormalize)
    rows = []
    for i, s in enumerate(path.s):
        k, t, sg = spec.k_fn(s), spec.t_fn(s), spec.s_fn(s)
        rows.append([s, *path.positions[i], *path.T[i], *path.N[i], *path.B1[i], *path.B2[i],
                     k, t, sg, *signs.eps])
    table = csv_text(FRAME_COLUMNS, rows)
    sidecar = {
        "schema": SCHEMA, "command": "synthesize", **kind,
        "spec": spec.describe(),
        "initial_frame": [list(v) for v in frame0],
        "initial_point": list(point0) if point0 is not None else [0.0, 0.0, 0.0, 0.0],
        "reorthonormalize": args.reorthonormalize,
        "samples": len(path),
        "max_gram_residual": path.max_gram_residual,
    }
    if args.out:
        write_atomic(args.out, table)
        write_atomic(Path(args.out).with_suffix(".json"), dumps(sidecar))
    else:
        sys.stdout.write(table)
    return EXIT_OK


def _reparam_rows(curve, grid, order):
    a, b = curve.domain
    ts = np.linspace(a, b, grid)
    dx = []
    for t in ts:
        xj = curve.coordinate_jets(float(t), 2)[0]
        dx.append((xj.d[1], xj.d[2]))
    h = (b - a) / (grid - 1)
    for (t, (d1, d2)) in zip(ts, dx):
        if abs(d1) < 1e-8:
            raise NotAdmissible(f"x'({t:g}) = {d1:.3g}; the curve is not admissible there")
        # a zero of x' predicted by the local Taylor model inside the cell
        if d2 != 0.0:
            r = -d1 / d2
            if 0 < abs(r) <= h / 2 and a <= t + r <= b:
                d1r = curve.coordinate_jets(float(t + r), 1)[0].d[1]
                if abs(d1r) < 1e-8 or d1r * d1 < 0:
                    raise NotAdmissible(f"x' vanishes near t={t + r:g}")
    signs = {d1 > 0 for d1, _ in dx}
    if len(signs) > 1:
        raise NotAdmissible("x' changes sign on the domain")
    rows = []
    for t in ts:
        cj = reparametrize_by_arclength(curve, float(t), order)
        rows.append([cj.s, cj.s, cj.y.d[0], cj.z.d[0], cj.w.d[0],
                     1.0, cj.y.d[1], cj.z.d[1], cj.w.d[1]])
    if rows[0][0] > rows[-1][0]:
        rows.reverse()
    return rows


def cmd_reparam(args) -> int:
    curve = load_any_curve(args.curve)
    rows = _reparam_rows(curve, args.grid, args.jet_order)
    cols = ["s", "x", "y", "z", "w", "T_x", "T_y", "T_z", "T_w"]
    if args.format == "csv" or (args.out and args.out.endswith(".csv")):
        _emit(args, csv_text(cols, rows))
    else:
        _report(args, "reparam", {"curve": _describe(curve), "columns": cols,
                                  "rows": [dict(zip(cols, r)) for r in rows]})
    return EXIT_OK


COMMANDS = {
    "frenet": cmd_frenet,
    "classify": cmd_classify,
    "audit": cmd_audit,
    "synthesize": cmd_synthesize,
    "reparam": cmd_reparam,
}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except ParseError as exc:
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"pg4: error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except (GeometryError, DomainErrorJet, NotApplicable, PreconditionViolation,
            IllConditionedFit) as exc:
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_GEOMETRY
    except InvalidSpecification as exc:
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_SPEC
    except FileNotFoundError as exc:
        print(f"pg4: error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except BrokenPipeError:
        # reader went away (e.g. `| head`); keep the interpreter from complaining at exit
        os.dup2(os.open(os.devnull, os.O_WRONLY), sys.stdout.fileno())
        return EXIT_OK
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAIL
    except Exception as exc:  # pragma: no cover - last resort
        print(f"internal error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
