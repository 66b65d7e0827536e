"""Command-line front end.

    qwhittaker polys     --preset P1 --max-weight 3
    qwhittaker verify    eigen --preset P1 --max-weight 4
    qwhittaker scatter   --preset P1 --xi 2.0,1.0
    qwhittaker transform --roundtrip --lambda 0
    qwhittaker stencil   --preset P1 --max-weight 2

Exit codes: 0 all checks pass, 1 some check fails, 2 bad parameters or usage.
Without --preset and without explicit --q/--t/--that the preset P1 is used.
"""
from __future__ import annotations

import argparse
import csv
import io
import itertools
import json
import math
import sys

from .exactnum import exact, fmt
from .params import MODES, ParamSet, ParameterError, preset, preset_names
from .report import SCHEMA_VERSION, dump_reports, numeric_report
from .suites import SUITES, run_suite
from .weyl import partitions

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _rational(text: str):
    try:
        return exact(text.strip())
    except (ValueError, TypeError, ZeroDivisionError):
        raise UsageError(f"not a rational number: {text!r}") from None


def _floats(text: str) -> list:
    try:
        vals = [float(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise UsageError(f"malformed real list: {text!r}") from None
    if not vals or not all(math.isfinite(v) for v in vals):
        raise UsageError(f"malformed real list: {text!r}")
    return vals


def _partition(text: str) -> tuple:
    try:
        lam = tuple(int(x) for x in text.split(",") if x.strip())
    except ValueError:
        raise UsageError(f"malformed partition: {text!r}") from None
    if not lam or min(lam) < 0 or any(a < b for a, b in zip(lam, lam[1:])):
        raise UsageError(f"not a partition: {text!r}")
    return lam


def params_from_args(args, n_hint: int | None = None) -> ParamSet:
    explicit = [args.q is not None, args.t is not None, args.that is not None]
    n = args.n if args.n is not None else n_hint
    if args.preset or not any(explicit):
        ps = preset(args.preset or "P1", n=n)
        if args.t is not None:
            ps = ps.at_t(_rational(args.t))
        if args.q is not None or args.that is not None:
            q = _rational(args.q) if args.q is not None else ps.q
            that = tuple(_rational(x) for x in args.that.split(",")) if args.that else ps.that
            ps = ParamSet(ps.n, q, ps.t, that, _infer_mode(ps.t, that, args.mode or ps.mode), name=ps.name)
        elif args.mode:
            ps = ParamSet(ps.n, ps.q, ps.t, ps.that, args.mode, name=ps.name)
        return ps
    missing = [flag for flag, ok in zip(("--q", "--t", "--that"), explicit) if not ok]
    if n is None:
        missing.insert(0, "--n")
    if missing:
        raise UsageError(f"missing parameter flags: {', '.join(missing)} (or use --preset)")
    that = tuple(_rational(x) for x in args.that.split(","))
    if len(that) != 4:
        raise UsageError("--that needs exactly four values that_0,that_1,that_2,that_3")
    t = _rational(args.t)
    return ParamSet(n, _rational(args.q), t, that, _infer_mode(t, that, args.mode))


def _infer_mode(t, that, mode):
    if t != 0:
        return "generic-t" if mode in (None, "generic-t") else mode
    if mode and mode != "generic-t":
        return mode
    if len(that) == 4 and that[0] == 0:
        return "that0-zero"
    if any(abs(x) == 1 for x in that):
        return "extended-boundary"
    return "t-zero"


# output helpers -----------------------------------------------------------------

def _emit(text: str, out: str | None):
    if out:
        with open(out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _csv(rows, header) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


def _lam_str(lam) -> str:
    return " ".join(str(x) for x in lam)


def _num(x) -> str:
    return repr(float(x))


def _reports_out(reports, params, args) -> int:
    if args.format == "csv":
        rows = [(r.name, r.status, r.residual, r.tolerance,
                 "" if not args.timing or r.seconds is None else round(r.seconds, 3)) for r in reports]
        _emit(_csv(rows, ("name", "status", "residual", "tolerance", "seconds")), args.out)
    else:
        _emit(dump_reports(reports, params, args.timing) + "\n", args.out)
    return EXIT_OK if all(r.passed for r in reports) else EXIT_FAIL


# commands -----------------------------------------------------------------------

def cmd_polys(args) -> int:
    params = params_from_args(args)
    mw = args.max_weight if args.max_weight is not None else 3
    if params.mode == "generic-t":
        from .koornwinder import MKTable
        table = MKTable(params)
        for lam in partitions(params.n, mw):
            table.poly(lam)
    else:
        from .whittaker import WhittakerTable
        table = WhittakerTable(params).build(mw)
    if args.format == "csv":
        rows = []
        data = table.to_json()
        for entry in data["entries"]:
            for mu, c in entry["coeffs"].items():
                rows.append((_lam_str(entry["lambda"]), _lam_str(json.loads(mu)), c))
        _emit(_csv(rows, ("lambda", "mu", "coefficient")), args.out)
    else:
        data = dict(table.to_json(), version=SCHEMA_VERSION)
        _emit(json.dumps(data, indent=2, sort_keys=True) + "\n", args.out)
    return EXIT_OK


def cmd_verify(args) -> int:
    params = params_from_args(args)
    opts = dict(max_weight=args.max_weight, grid=args.grid, tol=args.tol, trials=args.trials)
    return _reports_out(run_suite(args.suite, params, **opts), params, args)


def cmd_scatter(args) -> int:
    from .scattering import s_matrix

    if (args.xi is None) == (args.grid is None):
        raise UsageError("scatter needs exactly one of --xi or --grid")
    if args.xi is not None:
        xi = _floats(args.xi)
        params = params_from_args(args, n_hint=len(xi))
        if len(xi) != params.n:
            raise UsageError(f"--xi has {len(xi)} entries but n = {params.n}")
        points = [xi]
    else:
        params = params_from_args(args)
        N = args.grid
        if N < 2:
            raise UsageError("--grid must be at least 2")
        axis = [math.pi * (k + 0.5) / N for k in range(N)]
        points = [list(p) for p in _alcove_points(axis, params.n)]
    n = params.n
    rows = []
    for xi in points:
        S = s_matrix(xi, params)
        rows.append([_num(x) for x in xi] + [_num(S.value.real), _num(S.value.imag), _num(abs(S.value)),
                                             _num(S.root.real), _num(S.root.imag)])
    header = [f"xi_{j + 1}" for j in range(n)] + ["re_S", "im_S", "abs_S", "re_root", "im_root"]
    _emit(_csv(rows, header), args.out)
    return EXIT_OK


def _alcove_points(axis, n):
    """Grid points with pi > xi_1 > ... > xi_n > 0."""
    return itertools.combinations(sorted(axis, reverse=True), n)


def cmd_transform(args) -> int:
    """Round trip of the indicator of lambda through the transform and back."""
    if not args.roundtrip:
        raise UsageError("transform currently supports --roundtrip only")
    lam0 = _partition(args.lam)
    if args.free:
        return _free_roundtrip(args, lam0)
    from .suites import t_zero
    from .whittaker import WhittakerTable, forward_transform, inverse_transform

    params = t_zero(params_from_args(args, n_hint=len(lam0)))
    if len(lam0) != params.n:
        raise UsageError(f"--lambda has {len(lam0)} parts but n = {params.n}")
    table = WhittakerTable(params)
    N = args.grid or 64
    f = {lam0: 1}

    def fhat(pts):
        return forward_transform(f, pts, params, table)

    size = sum(lam0) + 2
    rows, worst = [], 0.0
    for mu in partitions(params.n, size):
        val = inverse_transform(fhat, mu, params, N, table)
        err = abs(val - (1.0 if mu == lam0 else 0.0))
        worst = max(worst, err)
        rows.append((_lam_str(mu), _num(val.real), _num(val.imag), _num(err)))
    tol = args.tol if args.tol is not None else 1e-5
    rep = numeric_report("transform-roundtrip", worst, tol, params,
                         [f"indicator of {lam0}, grid N = {N}, |mu| <= {size}"])
    return _transform_out(rows, rep, params, args)


def _free_roundtrip(args, lam0):
    from .scattering import free_transform, inverse_free_transform

    n = len(lam0)
    N = args.grid or (512 if n == 1 else 256)
    f = {lam0: 1}
    size = sum(lam0) + 2
    rows, worst = [], 0.0
    method = "torus" if args.torus else "mask"
    for mu in partitions(n, size):
        val = inverse_free_transform(lambda pts: free_transform(f, pts), mu, n, N, method)
        err = abs(val - (1.0 if mu == lam0 else 0.0))
        worst = max(worst, err)
        rows.append((_lam_str(mu), _num(val.real), _num(val.imag), _num(err)))
    tol = args.tol if args.tol is not None else (1e-5 if n == 1 else 1e-4)
    rep = numeric_report("free-transform-roundtrip", worst, tol, None,
                         [f"indicator of {lam0}, grid N = {N}, method {method}"])
    return _transform_out(rows, rep, None, args)


def _transform_out(rows, rep, params, args):
    if args.format == "json":
        return _reports_out([rep], params, args)
    text = _csv(rows, ("mu", "re", "im", "error"))
    text += f"# {rep.name} max error {rep.residual!r} tolerance {rep.tolerance!r} {rep.status}\n"
    _emit(text, args.out)
    return EXIT_OK if rep.passed else EXIT_FAIL


def cmd_stencil(args) -> int:
    from .suites import t_zero
    from .toda import h_stencil, hq_stencil, reduced_h_stencil

    params = t_zero(params_from_args(args))
    mw = args.max_weight if args.max_weight is not None else 2
    if params.mode == "that0-zero":
        if args.operator == "HQ":
            raise UsageError("H_Q has no that_0 = 0 form")
        fn = reduced_h_stencil
    else:
        fn = hq_stencil if args.operator == "HQ" else h_stencil
    rows = []
    for lam in partitions(params.n, mw):
        for mu, c in sorted(fn(lam, params).items()):
            move = tuple(a - b for a, b in zip(mu, lam))
            rows.append((_lam_str(lam), _lam_str(move), fmt(c)))
    _emit(_csv(rows, ("lambda", "move", "coefficient")), args.out)
    return EXIT_OK


# parser ---------------------------------------------------------------------------

def _common(p: argparse.ArgumentParser, fmt_default="json"):
    g = p.add_argument_group("parameters")
    g.add_argument("--preset", choices=preset_names(), help="named parameter set (default P1)")
    g.add_argument("--n", type=int, help="rank")
    g.add_argument("--q", help="rational q in (0, 1), e.g. 1/4")
    g.add_argument("--t", help="rational t (0 selects the t = 0 layer)")
    g.add_argument("--that", help="four rationals that_0,that_1,that_2,that_3")
    g.add_argument("--mode", choices=MODES)
    o = p.add_argument_group("run")
    o.add_argument("--max-weight", type=int, dest="max_weight", help="largest |lambda|")
    o.add_argument("--grid", type=int, help="quadrature grid size N")
    o.add_argument("--tol", type=float, help="numeric tolerance")
    o.add_argument("--trials", type=int, help="random sample count")
    o.add_argument("--out", help="output file (default stdout)")
    o.add_argument("--format", choices=("json", "csv"), default=fmt_default)
    o.add_argument("--timing", action="store_true", help="include wall times in reports")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="qwhittaker", description=__doc__.split("\n\n")[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("polys", help="table of p_lam (t = 0) or monic MK polynomials (generic t)")
    _common(p)
    p.set_defaults(func=cmd_polys, parser=p)

    p = sub.add_parser("verify", help="run a verification suite")
    p.add_argument("suite", choices=SUITES)
    _common(p)
    p.set_defaults(func=cmd_verify, parser=p)

    p = sub.add_parser("scatter", help="S-matrix values as CSV")
    _common(p, "csv")
    p.add_argument("--xi", help="comma-separated reals")
    p.set_defaults(func=cmd_scatter, parser=p)

    p = sub.add_parser("transform", help="transform round trips")
    _common(p, "csv")
    p.add_argument("--roundtrip", action="store_true")
    p.add_argument("--lambda", dest="lam", default="0", help="partition, e.g. 2,1")
    p.add_argument("--free", action="store_true", help="use the free transform")
    p.add_argument("--torus", action="store_true", help="free transform: full-torus quadrature")
    p.set_defaults(func=cmd_transform, parser=p)

    p = sub.add_parser("stencil", help="Toda stencil coefficients as CSV")
    _common(p, "csv")
    p.add_argument("--operator", choices=("H", "HQ"), default="H")
    p.set_defaults(func=cmd_stencil, parser=p)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ParameterError, UsageError) as exc:
        args.parser.print_usage(sys.stderr)
        print(f"qwhittaker: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
