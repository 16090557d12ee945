"""Command-line interface: ``satgeom <command> ...``.

Exit codes: 0 success, 1 a verification came out false, 2 usage or
precondition error, 3 an enumeration or retry budget ran out.  Errors are
also written to stderr as a JSON object.
"""
from __future__ import annotations

import argparse
import json
import math
import secrets
import sys
from fractions import Fraction

from . import bounds, codes, oracle, randomized
from .errors import AxiomViolation, BudgetExceeded, RetriesExhausted, SatGeomError
from .geometry import build_pg2, dump_plane, load_plane
from .gf import field_new, field_of_order
from .saturation import dump_pointset, is_mu_saturating, load_pointset

SCHEMA = 1


class UsageError(SatGeomError):
    pass


# -- helpers ----------------------------------------------------------------

def _jsonable(v):
    if isinstance(v, Fraction):
        return str(v)
    if isinstance(v, float) and not math.isfinite(v):
        return None
    if isinstance(v, dict):
        return {str(k): _jsonable(x) for k, x in v.items()}
    if isinstance(v, (list, tuple)):
        return [_jsonable(x) for x in v]
    if hasattr(v, "item"):
        return v.item()
    return v


def _emit(args, payload, rows=None):
    fmt = args.format
    if fmt == "json":
        text = json.dumps({"schema": SCHEMA, "command": args.cmd_name, **_jsonable(payload)},
                          indent=2) + "\n"
    elif fmt == "csv":
        if rows is not None:
            text = codes.write_table_csv(rows)
        else:
            keys = [k for k, v in payload.items() if not isinstance(v, (list, dict))]
            text = ",".join(keys) + "\n" + ",".join(str(_jsonable(payload[k])) for k in keys) + "\n"
    else:
        if rows is not None:
            cols = codes.CSV_FIELDS
            lines = ["  ".join(f"{c:>12}" for c in cols)]
            for r in rows:
                lines.append("  ".join(f"{_cell(r[c]):>12}" for c in cols))
            text = "\n".join(lines) + "\n"
        else:
            width = max((len(k) for k in payload), default=0)
            text = "".join(f"{k:<{width}}  {_cell(v)}\n" for k, v in payload.items())
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _cell(v):
    if isinstance(v, float):
        return f"{v:.6g}"
    if isinstance(v, (list, tuple)):
        return " ".join(_cell(x) for x in v)
    return str(_jsonable(v))


def _field(args):
    if args.q is not None:
        return field_of_order(args.q)
    if args.p is not None:
        return field_new(args.p, args.m or 1)
    raise UsageError("give --q or --p/--m")


def _plane(args):
    if getattr(args, "plane_file", None):
        with open(args.plane_file) as fh:
            return load_plane(fh)
    return build_pg2(_field(args))


def _seed(args):
    if args.seed is None:
        args.seed = secrets.randbits(63)
    return args.seed


def _ints(text):
    return [int(x) for x in text.split(",") if x.strip()]


# -- commands ---------------------------------------------------------------

def cmd_plane_gen(args):
    plane = build_pg2(_field(args))
    text = dump_plane(plane)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


def cmd_plane_check(args):
    try:
        plane = _plane(args)
    except AxiomViolation as exc:
        _emit(args, {"valid": False, "axiom": exc.which, "witness": list(exc.witness),
                     "message": str(exc)})
        return 1
    _emit(args, {"valid": True, "q": plane.q, "points": plane.n_points,
                 "lines": plane.n_lines, "name": plane.name, "digest": plane.digest})
    return 0


def cmd_construct(args):
    plane = build_pg2(_field(args)) if not args.plane_file else _plane(args)
    seed = _seed(args)
    mu = args.mu
    params = randomized.ConstructorParams(c=args.c, d=args.d or 1.2, mu=mu, seed=seed,
                                          max_retries=args.retries,
                                          enforce_range=args.enforce_range)
    if mu == 1:
        res = randomized.construct_saturating(plane, params)
    elif args.method == "direct":
        res = randomized.construct_mu_direct(plane, mu, params)
    else:
        res = randomized.construct_mu_iterative(plane, mu, params)
    if args.set_out:
        with open(args.set_out, "w") as fh:
            dump_pointset(res.set, fh)
    payload = {"q": plane.q, "mu": mu, "size": res.size, "w": res.w,
               "trials_used": res.trials_used, "bound": res.size_bound,
               "verified": res.verified, "range_ok": res.theorem_range_ok, "seed": seed,
               "points": list(res.set.indices)}
    if res.D_sequence:
        payload["D_sequence"] = res.D_sequence
    _emit(args, payload)
    return 0


def cmd_verify(args):
    plane = _plane(args)
    with open(args.set_file) as fh:
        S = load_pointset(fh)
    chk = is_mu_saturating(plane, S, args.mu)
    _emit(args, {"geometry": plane.name, "size": len(S), "mu": args.mu, "saturating": chk.ok,
                 "witness": chk.witness, "multiplicity": chk.multiplicity,
                 "deficit": chk.deficit})
    return 0 if chk.ok else 1


def cmd_mc(args):
    plane = _plane(args)
    seed = _seed(args)
    params = randomized.ConstructorParams(c=args.c, seed=seed)
    res = randomized.monte_carlo(plane, args.c, args.trials, params, jobs=args.jobs)
    _emit(args, {"q": plane.q, "c": args.c, "w": res.w, "trials": res.trials,
                 "successes": res.successes, "empirical_rate": res.empirical_rate,
                 "theorem2_bound": res.theorem2_bound, "seed": seed})
    return 0


def cmd_bounds_table(args):
    rows = codes.length_function_table(_ints(args.qs), _ints(args.mus), _ints(args.Ns))
    _emit(args, {"rows": rows}, rows=rows)
    return 0


def cmd_bounds_eval(args):
    q, w = args.q, args.w
    out = {"q": q}
    if w is not None:
        pe = bounds.pi_exact(q, w)
        pu = bounds.pi_upper(q, w)
        out.update({"w": w, "pi_exact": pe, "pi": float(pe), "pi_upper": pu.approx,
                    "range_ok": pu.valid})
        for i in range(4):
            out[f"T{i}"] = str(bounds.T_count(q, w, i))
        out["R_wq"] = float(bounds.R_wq(q, w))
        for mu in range(1, 5):
            out[f"pi_mu{mu}"] = float(bounds.pi_mu_exact(q, w, mu))
        if args.k is not None and pu.valid:
            out["lambda_upper"] = bounds.lambda_upper(q, w, args.k)
    out["theorem1_bound"] = bounds.theorem1_bound(q)
    out["theorem2_bound"] = bounds.theorem2_bound(q, args.c)
    out["delta"] = bounds.delta(q)
    out["D_sequence"] = bounds.D_sequence(q, args.mu)
    try:
        out["D_closed"], out["D_row"] = bounds.D_closed(q, args.mu)
    except SatGeomError:
        out["D_closed"], out["D_row"] = None, None
    if args.d is not None and args.mu in (2, 3, 4):
        out["pi_mu_closed"] = bounds.pi_mu_closed(q, args.d, args.mu)
    if args.N is not None:
        bv = bounds.space_bounds(args.N, q, args.mu, strict=False)
        out.update({"space_bound": bv.approx, "space_valid": bv.valid,
                    "space_violations": list(bv.violations)})
    _emit(args, out)
    return 0


def cmd_threshold(args):
    res = bounds.threshold_scan(args.mu, args.d, args.qmax, jobs=args.jobs)
    _emit(args, {"mu": res.mu, "d": res.d, "q_max": res.q_max, "q_star": res.q_star,
                 "q_int": res.q_int, "q_real": res.q_real, "last_failure": res.last_failure})
    return 0


def _budget():
    return oracle.EnumerationBudget.default()


def cmd_oracle_pi(args):
    plane = _plane(args)
    val = oracle.brute_pi(plane, args.point, args.w, _budget())
    _emit(args, {"q": plane.q, "w": args.w, "point": args.point, "pi": val, "pi_float": float(val)})
    return 0


def cmd_oracle_t(args):
    plane = _plane(args)
    hist = oracle.brute_T(plane, args.point, args.w, _budget())
    _emit(args, {"q": plane.q, "w": args.w, "point": args.point,
                 "histogram": {str(k): v for k, v in hist.items()}})
    return 0


def cmd_oracle_minsat(args):
    plane = _plane(args)
    res = oracle.brute_min_saturating(plane, args.mu, _budget())
    _emit(args, {"q": plane.q, "mu": args.mu, "size": res.size,
                 "witness": list(res.witness.indices)})
    return 0


def cmd_oracle_radius(args):
    with open(args.matrix_file) as fh:
        H = codes.load_matrix(fh)
    _emit(args, {"q": H.q, "r": H.r, "n": H.n,
                 "covering_radius": oracle.brute_covering_radius(H, _budget())})
    return 0


def cmd_code_export(args):
    plane = _plane(args)
    with open(args.set_file) as fh:
        S = load_pointset(fh)
    H = codes.export_parity_check(plane, S)
    text = codes.dump_matrix(H)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


def cmd_code_check(args):
    with open(args.matrix_file) as fh:
        H = codes.load_matrix(fh)
    ok = codes.check_mcf(H, args.mu, method=args.method, budget=_budget())
    _emit(args, {"q": H.q, "r": H.r, "n": H.n, "mu": args.mu, "mcf": ok})
    return 0 if ok else 1


# -- parser -----------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=["table", "json", "csv"], default="table")
    common.add_argument("--out", help="write output here instead of stdout")

    geo = argparse.ArgumentParser(add_help=False)
    geo.add_argument("--q", type=int)
    geo.add_argument("--p", type=int)
    geo.add_argument("--m", type=int)
    geo.add_argument("--plane-file")

    parser = argparse.ArgumentParser(prog="satgeom", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def add(subparsers, name, func, parents=(common,), **kw):
        sp = subparsers.add_parser(name, parents=list(parents), **kw)
        sp.set_defaults(func=func, cmd_name=name)
        return sp

    plane = sub.add_parser("plane").add_subparsers(dest="action", required=True)
    add(plane, "gen", cmd_plane_gen, (common, geo))
    add(plane, "check", cmd_plane_check, (common, geo))

    sp = add(sub, "construct", cmd_construct, (common, geo))
    sp.add_argument("--c", type=float, default=1.0)
    sp.add_argument("--d", type=float)
    sp.add_argument("--mu", type=int, default=1)
    sp.add_argument("--method", choices=["iterative", "direct"], default="iterative")
    sp.add_argument("--seed", type=int)
    sp.add_argument("--retries", type=int, default=50)
    sp.add_argument("--enforce-range", action="store_true")
    sp.add_argument("--set-out", help="write the constructed point set here")

    sp = add(sub, "verify", cmd_verify, (common, geo))
    sp.add_argument("--set-file", required=True)
    sp.add_argument("--mu", type=int, default=1)

    sp = add(sub, "mc", cmd_mc, (common, geo))
    sp.add_argument("--c", type=float, default=1.0)
    sp.add_argument("--trials", type=int, default=100)
    sp.add_argument("--seed", type=int)
    sp.add_argument("--jobs", type=int, default=1)

    bnd = sub.add_parser("bounds").add_subparsers(dest="action", required=True)
    sp = add(bnd, "table", cmd_bounds_table)
    sp.add_argument("--q", dest="qs", required=True, help="comma-separated orders")
    sp.add_argument("--mu", dest="mus", default="1")
    sp.add_argument("--N", dest="Ns", default="2")
    sp = add(bnd, "eval", cmd_bounds_eval)
    sp.add_argument("--q", type=int, required=True)
    sp.add_argument("--w", type=int)
    sp.add_argument("--k", type=int)
    sp.add_argument("--c", type=float, default=1.0)
    sp.add_argument("--d", type=float)
    sp.add_argument("--mu", type=int, default=1)
    sp.add_argument("--N", type=int)

    sp = add(sub, "threshold", cmd_threshold)
    sp.add_argument("--mu", type=int, required=True)
    sp.add_argument("--d", type=float, required=True)
    sp.add_argument("--qmax", type=int, default=1024)
    sp.add_argument("--jobs", type=int, default=1)

    orc = sub.add_parser("oracle").add_subparsers(dest="action", required=True)
    for name, func in (("pi", cmd_oracle_pi), ("t", cmd_oracle_t)):
        sp = add(orc, name, func, (common, geo))
        sp.add_argument("--w", type=int, required=True)
        sp.add_argument("--point", type=int, default=0)
    sp = add(orc, "min-sat", cmd_oracle_minsat, (common, geo))
    sp.add_argument("--mu", type=int, default=1)
    sp = add(orc, "radius", cmd_oracle_radius)
    sp.add_argument("--matrix-file", required=True)

    code = sub.add_parser("code").add_subparsers(dest="action", required=True)
    sp = add(code, "export", cmd_code_export, (common, geo))
    sp.add_argument("--set-file", required=True)
    sp = add(code, "check", cmd_code_check)
    sp.add_argument("--matrix-file", required=True)
    sp.add_argument("--mu", type=int, default=1)
    sp.add_argument("--method", choices=["geometry", "syndrome"], default="geometry")
    return parser


def _fail(code: int, exc: BaseException) -> int:
    err = {"schema": SCHEMA, "error": type(exc).__name__, "message": str(exc)}
    for attr in ("which", "witness", "failure_probability_bound", "stage", "lineno"):
        if getattr(exc, attr, None) is not None:
            err[attr] = _jsonable(getattr(exc, attr))
    sys.stderr.write(json.dumps(err) + "\n")
    return code


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (BudgetExceeded, RetriesExhausted) as exc:
        return _fail(3, exc)
    except AxiomViolation as exc:
        return _fail(1, exc)
    except (SatGeomError, ValueError, OSError) as exc:
        return _fail(2, exc)


if __name__ == "__main__":
    sys.exit(main())
