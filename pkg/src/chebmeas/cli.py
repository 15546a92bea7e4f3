"""Command-line entry point.

Exit codes: 0 success, 1 I/O error, 2 domain or validation error,
3 oracle result not certified (budget exhausted, exchange stalled, or a
verification campaign reporting violations).
"""

import argparse
import csv
import io
import json
import math
import sys
import time
from dataclasses import asdict, dataclass, field

import numpy as np

from . import __version__
from . import closedforms as cf
from . import geometry, oracle
from .errors import ChebmeasError
from .levelset import SampleGrid, level_set
from .trigpoly import CirclePoly, poly_from_json, poly_to_json

EXIT_OK, EXIT_IO, EXIT_DOMAIN, EXIT_UNCERTIFIED = 0, 1, 2, 3


class UsageError(ChebmeasError):
    pass


@dataclass
class RunManifest:
    command: str
    params: dict
    seed: int = None
    version: str = __version__
    wall_time: float = 0.0
    outputs: list = field(default_factory=list)


# --- helpers ----------------------------------------------------------------

def _angle(args, v):
    return math.radians(v) if args.deg else v


def _parse_set(args, text):
    """``"a,b;c,d"`` -> ``[(a, b), (c, d)]``."""
    out = []
    try:
        for part in text.split(";"):
            if part.strip():
                a, b = (float(s) for s in part.split(","))
                out.append((_angle(args, a), _angle(args, b)))
    except ValueError:
        raise UsageError(f"cannot parse interval set {text!r}; expected 'a,b;c,d'") from None
    if not out:
        raise UsageError("interval set is empty")
    return out


def _require(args, *names):
    missing = [n for n in names if getattr(args, n, None) is None]
    if missing:
        raise UsageError("missing " + ", ".join("--" + n.replace("_", "-") for n in missing))


def _params(args):
    skip = {"func", "out", "output"}
    return {k: v for k, v in sorted(vars(args).items()) if k not in skip and not k.startswith("_")}


def _emit(args, payload, manifest, rows=None, header=None):
    """Write JSON (payload + manifest) or CSV (rows) to stdout or ``--output``."""
    if args.output:
        manifest.outputs.append(args.output)
    manifest.wall_time = time.perf_counter() - args._t0
    if getattr(args, "out", "json") == "csv" and rows is not None:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(header)
        for r in rows:
            w.writerow([repr(float(v)) for v in r])
        text = buf.getvalue()
    else:
        payload = dict(payload)
        payload["manifest"] = asdict(manifest)
        text = json.dumps(payload, indent=2) + "\n"
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _manifest(args, name):
    return RunManifest(command=name, params=_params(args), seed=getattr(args, "seed", None))


def _search_config(args):
    kw = {"seed": args.seed}
    if args.starts is not None:
        kw["starts"] = args.starts
    if args.max_evals is not None:
        kw["max_evals"] = args.max_evals
    return oracle.SearchConfig(**kw)


# --- closed-form --------------------------------------------------------------

def _closed_value(args):
    q = args.quantity
    if q == "sigma":
        _require(args, "n", "y")
        return cf.sigma(args.n, args.y)
    if q == "delta":
        _require(args, "m", "h")
        return cf.delta(args.m, args.h)
    if q == "eps-arc":
        _require(args, "m", "alpha")
        return cf.eps_arc(args.m, 2 * _angle(args, args.alpha))
    if q == "u-compact":
        _require(args, "n", "alpha")
        return cf.u_compact(args.n, 2 * _angle(args, args.alpha))
    if q == "babenko":
        _require(args, "n")
        return cf.babenko_beta(args.n)
    if q == "polya":
        _require(args, "m", "rho")
        return cf.polya_e(args.m, 2 * args.rho)
    if q == "mu-leading":
        _require(args, "y")
        return cf.mu_leading(args.y)
    _require(args, "m")
    return cf.min_supnorm_value(args.m)


def cmd_closed_form(args):
    value = _closed_value(args)
    params = {k: getattr(args, k) for k in ("n", "m", "y", "h", "alpha", "rho")
              if getattr(args, k, None) is not None}
    _emit(args, {"quantity": args.quantity, "params": params, "value": value},
          _manifest(args, "closed-form"))
    return EXIT_OK


# --- construct ------------------------------------------------------------------

def cmd_construct(args):
    fam = args.family
    meta = {}
    if fam == "fnk":
        _require(args, "n", "y")
        p = cf.extremal_fnk(args.n, args.y, args.k)
        meta = {"level": 1.0, "theoretical_measure": cf.sigma(args.n, args.y)}
    elif fam == "segment":
        _require(args, "n", "alpha")
        a = _angle(args, args.alpha)
        p = cf.segment_extremal(args.n, a, args.k)
        meta = {"segment": [-a - math.pi * args.k / args.n, a - math.pi * args.k / args.n],
                "theoretical_deviation": cf.u_compact(args.n, 2 * a)}
    elif fam in ("arc", "g"):
        _require(args, "m", "alpha")
        a = _angle(args, args.alpha)
        p = cf.arc_extremal(args.m, a) if fam == "arc" else cf.extremal_g(args.m, a)
        h = cf.arc_threshold(args.m, a)
        meta = {"level": h, "theoretical_supnorm_on_arc": cf.eps_arc(args.m, 2 * a),
                "theoretical_measure": cf.delta(args.m, min(h, 2.0))}
    else:
        raise UsageError(f"unknown family {fam!r}")
    poly = poly_to_json(p)
    if isinstance(p, CirclePoly):
        meta["coefficients"] = {"real": list(p.coefficients().real),
                                "imag": list(p.coefficients().imag)}
    if hasattr(p, "phis"):
        meta["zeros"] = list(p.phis)
    if args.emit_poly:
        with open(args.emit_poly, "w", encoding="utf-8") as fh:
            json.dump(poly, fh, indent=2)
    man = _manifest(args, "construct")
    if args.emit_poly:
        man.outputs.append(args.emit_poly)
    _emit(args, {"family": fam, "poly": poly, "metadata": meta}, man)
    return EXIT_OK


# --- measure --------------------------------------------------------------------

def _load_poly(path):
    try:
        with open(path, encoding="utf-8") as fh:
            d = json.load(fh)
        if "poly" in d and isinstance(d["poly"], dict):
            d = d["poly"]
        return poly_from_json(d)
    except (OSError, json.JSONDecodeError, KeyError, TypeError, ValueError) as exc:
        raise OSError(f"cannot read polynomial from {path}: {exc}") from exc


def cmd_measure(args):
    p = _load_poly(args.poly)
    try:
        grid = SampleGrid(N=args.grid, touch_tol=args.touch_tol)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    ls = level_set(p, args.level, grid)
    _emit(args, {"level_set": ls.to_json(), "segment_count": ls.segment_count,
                 "touch_count": ls.touch_count}, _manifest(args, "measure"))
    return EXIT_OK


# --- oracle ---------------------------------------------------------------------

def cmd_oracle(args):
    man = _manifest(args, "oracle " + args.task)
    t = args.task
    if t == "babenko":
        _require(args, "n", "y_from", "y_to", "steps")
        ys = _grid(args.y_from, args.y_to, args.steps)
        rows = oracle.babenko_scan(args.n, ys)
        _emit(args, {"n": args.n, "beta": cf.babenko_beta(args.n),
                     "rows": [list(r) for r in rows]}, man, rows, ["y", "mu", "sigma", "ratio"])
        return EXIT_OK
    if t == "minimax":
        _require(args, "n", "set")
        Q = _parse_set(args, args.set)
        r = oracle.minimax_on_set(args.n, Q, grid_pts=args.grid_pts)
        _emit(args, {"value": r.value, "certified": r.certified, "alternation": r.alternation,
                     "active": list(r.active), "coeffs": list(r.coeffs),
                     "max_error": r.max_error, "iterations": r.iterations}, man)
        return EXIT_OK if r.certified else EXIT_UNCERTIFIED
    cfg = _search_config(args)
    if t == "min-measure":
        _require(args, "m", "h")
        r = oracle.minimize_measure(args.m, args.h, cfg)
        extra = {"delta": cf.delta(args.m, args.h)}
    elif t == "min-supnorm":
        _require(args, "m")
        r = oracle.minimize_supnorm(args.m, cfg)
        extra = {}
    else:
        _require(args, "m", "set")
        _, r = oracle.e_on_set(args.m, _parse_set(args, args.set), cfg)
        extra = {}
    _emit(args, {"result": r.to_json(), **extra}, man)
    return EXIT_UNCERTIFIED if r.budget_exhausted else EXIT_OK


# --- verify ---------------------------------------------------------------------

def cmd_verify(args):
    c = args.check
    if c == "convexity":
        rep = geometry.convexity_campaign(args.m, args.samples, args.seed)
    elif c == "cubes":
        rep = geometry.cubes_campaign(args.m, args.samples, args.seed)
    elif c == "decomposition":
        _require(args, "h")
        rep = geometry.decomposition_campaign(args.m, args.h, args.samples, args.seed)
    elif c == "equivalence":
        _require(args, "h")
        rep = geometry.equivalence_check(args.m, args.h, args.samples, args.seed)
    else:
        _require(args, "h")
        rep = geometry.structure_check(args.m, args.h, oracle.SearchConfig(seed=args.seed))
    _emit(args, rep, _manifest(args, "verify " + c))
    return EXIT_OK if not rep["violations"] else EXIT_UNCERTIFIED


# --- scan -----------------------------------------------------------------------

def _grid(lo, hi, steps):
    if steps is None or steps < 1:
        raise UsageError("steps must be at least 1")
    return np.linspace(lo, hi, steps) if steps > 1 else np.array([lo])


SCAN_VAR = {"sigma": "y", "mu-leading": "y", "babenko-ratio": "y",
            "delta": "h", "eps-arc": "alpha", "u-compact": "alpha"}


def cmd_scan(args):
    _require(args, "y_from", "y_to")
    q = args.quantity
    xs = _grid(args.y_from, args.y_to, args.steps)
    if q == "babenko-ratio":
        _require(args, "n")
        rows = oracle.babenko_scan(args.n, xs)
        header = ["y", "mu", "sigma", "ratio"]
    else:
        if q in ("sigma", "u-compact"):
            _require(args, "n")
        elif q in ("delta", "eps-arc"):
            _require(args, "m")
        f = {
            "sigma": lambda x: cf.sigma(args.n, x),
            "mu-leading": cf.mu_leading,
            "delta": lambda x: cf.delta(args.m, x),
            "eps-arc": lambda x: cf.eps_arc(args.m, 2 * _angle(args, x)),
            "u-compact": lambda x: cf.u_compact(args.n, 2 * _angle(args, x)),
        }[q]
        rows = [(float(x), f(float(x))) for x in xs]
        header = [SCAN_VAR[q], "value"]
    _emit(args, {"quantity": q, "header": header, "rows": [list(r) for r in rows]},
          _manifest(args, "scan"), rows, header)
    return EXIT_OK


# --- parser ---------------------------------------------------------------------

def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", choices=["json", "csv"], default="json")
    common.add_argument("--output", help="write to this file instead of stdout")
    common.add_argument("--deg", action="store_true", help="angles on input are in degrees")
    common.add_argument("--seed", type=int, default=oracle.default_seed())

    nums = argparse.ArgumentParser(add_help=False)
    nums.add_argument("--n", type=int)
    nums.add_argument("--m", type=int)
    nums.add_argument("--y", type=float)
    nums.add_argument("--h", type=float)
    nums.add_argument("--alpha", type=float)

    parser = argparse.ArgumentParser(prog="chebmeas", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"chebmeas {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("closed-form", parents=[common, nums], help="closed-form extremal values")
    p.add_argument("quantity", choices=["sigma", "delta", "eps-arc", "u-compact", "babenko",
                                        "polya", "mu-leading", "min-supnorm"])
    p.add_argument("--rho", type=float, help="half-length of the real set for polya")
    p.set_defaults(func=cmd_closed_form)

    p = sub.add_parser("construct", parents=[common, nums], help="explicit extremal polynomials")
    p.add_argument("family", choices=["fnk", "arc", "g", "segment"])
    p.add_argument("--k", type=int, default=0)
    p.add_argument("--emit-poly", help="also write the bare polynomial JSON here")
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("measure", parents=[common], help="level set of a polynomial JSON file")
    p.add_argument("--poly", required=True)
    p.add_argument("--level", type=float, default=1.0)
    p.add_argument("--grid", type=int, default=8192)
    p.add_argument("--touch-tol", type=float, default=1e-7)
    p.set_defaults(func=cmd_measure)

    p = sub.add_parser("oracle", parents=[common, nums], help="brute-force searches")
    p.add_argument("task", choices=["min-measure", "min-supnorm", "minimax", "e-set", "babenko"])
    p.add_argument("--set", help="interval union 'a,b;c,d'")
    p.add_argument("--starts", type=int)
    p.add_argument("--max-evals", type=int)
    p.add_argument("--grid-pts", type=int, default=4000)
    p.add_argument("--y-from", type=float)
    p.add_argument("--y-to", type=float)
    p.add_argument("--steps", type=int)
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("verify", parents=[common], help="geometric verification campaigns")
    p.add_argument("check", choices=["convexity", "cubes", "decomposition", "equivalence",
                                     "structure"])
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--h", type=float)
    p.add_argument("--samples", type=int, default=1000)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("scan", parents=[common], help="closed-form tables as CSV")
    p.add_argument("--quantity", required=True, choices=sorted(SCAN_VAR))
    p.add_argument("--n", type=int)
    p.add_argument("--m", type=int)
    p.add_argument("--y-from", "--from", dest="y_from", type=float)
    p.add_argument("--y-to", "--to", dest="y_to", type=float)
    p.add_argument("--steps", type=int, default=100)
    p.set_defaults(func=cmd_scan, out="csv")
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    args._t0 = time.perf_counter()
    try:
        return args.func(args)
    except OSError as exc:
        print(f"chebmeas: {exc}", file=sys.stderr)
        return EXIT_IO
    except (ChebmeasError, ValueError) as exc:
        print(f"chebmeas: {exc}", file=sys.stderr)
        return EXIT_DOMAIN


if __name__ == "__main__":
    sys.exit(main())
