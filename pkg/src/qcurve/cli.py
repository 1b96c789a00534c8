"""Command-line front end.

    qcurve normalize "c a"
    qcurve act --op X- "a"
    qcurve d|del|delbar "a c*"
    qcurve curvature --n 1
    qcurve sections --n -2 --maxlen 4
    qcurve connection --n 1 --perturb "a* c*"
    qcurve jet verify --n 0 [--perturb10 EXPR] [--perturb01 EXPR]
    qcurve bimodule verify --n 0
    qcurve bimodule check22 --n 0
    qcurve verify <suite|all> [--n N | --range A:B]

Exit status: 0 if every check passed, 1 if some check failed, 2 on bad input.
"""
from __future__ import annotations

import argparse
import sys

from . import bimodule as bm
from . import jet as jt
from .bundles import (DelbarConnection, DelConnection, WeightError, holomorphic_sections,
                      leibniz01_residual, leibniz10_residual, random_weighted)
from .calculus import Form, d, dell, delbar
from .config import load_config
from .ncalg import ParseError, parse
from .printing import format_scalar
from .report import SuiteReport, render
from .su2 import apply_op, weights_of
from .suites import SUITES, rng_for, run_bimodule, run_jet, run_suite, run_theorem


class InputError(Exception):
    pass


def _common():
    p = argparse.ArgumentParser(add_help=False)
    g = p.add_argument_group("common options")
    g.add_argument("--n", type=int, help="bundle label (default: the suite's range)")
    g.add_argument("--range", dest="nrange", metavar="A:B", help="inclusive range of n, e.g. -4:4")
    g.add_argument("--maxlen", type=int)
    g.add_argument("--samples", type=int)
    g.add_argument("--seed", type=int)
    g.add_argument("--format", choices=("human", "machine"))
    g.add_argument("--out", help="write the report here instead of stdout")
    g.add_argument("--config", help="key=value file; flags override it")
    g.add_argument("--timing", action="store_true", default=None,
                   help="append wall-clock times (reports are then not byte-stable)")
    return p


def build_parser():
    common = _common()
    ap = argparse.ArgumentParser(prog="qcurve", description="Exact jet-bundle computations on CP_q^1.")
    sub = ap.add_subparsers(dest="cmd", required=True)

    def add(name, **kw):
        return sub.add_parser(name, parents=[common], **kw)

    p = add("normalize", help="print the normal form of an expression")
    p.add_argument("expr")
    p = add("act", help="apply E, F, K, Kinv, X+ or X- to an expression")
    p.add_argument("--op", required=True, choices=("E", "F", "K", "Kinv", "X+", "X-"))
    p.add_argument("expr")
    for name in ("d", "del", "delbar"):
        p = add(name, help=f"{name} of a function")
        p.add_argument("expr")
    add("curvature", help="curvature coefficient of the canonical pair on L_n")
    add("sections", help="truncated holomorphic sections of L_n")
    p = add("connection", help="Leibniz and curvature report for a (perturbed) connection on L_n")
    p.add_argument("--perturb", help="weight -2 (dbar part) or +2 (del part)")

    pj = sub.add_parser("jet", help="jet bundle checks")
    sj = pj.add_subparsers(dest="sub", required=True)
    p = sj.add_parser("verify", parents=[common])
    p.add_argument("--perturb10", help="weight +2 perturbation of the del-connection")
    p.add_argument("--perturb01", help="weight -2 perturbation of the dbar-connection")

    pb = sub.add_parser("bimodule", help="bimodule compatibility checks")
    sb = pb.add_subparsers(dest="sub", required=True)
    sb.add_parser("verify", parents=[common])
    sb.add_parser("check22", parents=[common])

    p = add("verify", help="run a named suite")
    p.add_argument("suite", choices=SUITES + ("all",))
    return ap


def _expr(text, weight=None, what="expression"):
    try:
        p = parse(text)
    except ParseError as ex:
        raise InputError(f"parse error: {ex}\n  {text}\n  {' ' * ex.pos}^") from None
    if weight is not None and p and weights_of(p) != {weight}:
        raise InputError(f"{what} must have weight {weight}: {p}")
    return p


def _ns(args, default=None):
    if args.n is not None and args.nrange:
        raise InputError("give --n or --range, not both")
    if args.n is not None:
        return [args.n]
    if args.nrange:
        try:
            lo, hi = (int(x) for x in args.nrange.split(":"))
        except ValueError:
            raise InputError(f"bad range {args.nrange!r}, expected A:B") from None
        return list(range(lo, hi + 1))
    return default


def _need_n(args):
    if args.n is None:
        raise InputError("--n is required")
    return args.n


def _config(args):
    return load_config(args.config, maxlen=args.maxlen, samples=args.samples, seed=args.seed,
                       format=args.format, timing=args.timing)


def _emit(text, args):
    if getattr(args, "out", None):
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _report(reports, args, cfg):
    _emit(render(reports, cfg), args)
    return 0 if all(r.ok for r in reports) else 1


def _connection_report(cfg, n, g):
    rep = SuiteReport("connection", dict(cfg.params(), n=n))
    w = weights_of(g).pop() if g else None
    c01 = DelbarConnection(n, g if w == -2 else parse("0"))
    c10 = DelConnection(n, g if w == 2 else parse("0"))
    rng = rng_for(cfg, "connection", n)
    sam = [(random_weighted(rng, 0, cfg.maxlen), random_weighted(rng, n, cfg.maxlen))
           for _ in range(cfg.samples)]
    rep.add(f"connection.delbar-leibniz[n={n}]", all(leibniz01_residual(c01, a, e).is_zero() for a, e in sam))
    rep.add(f"connection.del-leibniz[n={n}]", all(leibniz10_residual(c10, a, e).is_zero() for a, e in sam))
    H = holomorphic_sections(c01, max(cfg.maxlen, abs(n) + 2))
    rep.add(f"connection.sections[n={n}]", True, note=f"dim {len(H)}")
    try:
        k = jt.curvature_coefficient(c10, c01)
        rep.add(f"connection.curvature[n={n}]", True, note=f"Theta = {format_scalar(k)} (scalar)")
    except jt.CurvatureError as ex:
        rep.add(f"connection.curvature[n={n}]", True, note=f"Theta: {ex}")
    return rep


def dispatch(args):
    cmd = args.cmd
    if cmd == "normalize":
        _emit(f"{_expr(args.expr)}\n", args)
        return 0
    if cmd == "act":
        _emit(f"{apply_op(args.op, _expr(args.expr))}\n", args)
        return 0
    if cmd in ("d", "del", "delbar"):
        f = _expr(args.expr)
        op = {"d": d, "del": dell, "delbar": delbar}[cmd]
        _emit(f"{op(Form.fn(f))}\n", args)
        return 0
    if cmd == "curvature":
        _emit(format_scalar(jt.curvature_line_bundle(_need_n(args))) + "\n", args)
        return 0

    cfg = _config(args)
    if cmd == "sections":
        n = _need_n(args)
        L = args.maxlen if args.maxlen is not None else max(cfg.maxlen, abs(n) + 2)
        H = holomorphic_sections(DelbarConnection(n), L)
        _emit("".join(f"{h}\n" for h in H) + f"dim {len(H)} (n={n}, maxlen={L})\n", args)
        return 0
    if cmd == "connection":
        n = _need_n(args)
        g = _expr(args.perturb) if args.perturb else parse("0")
        if g and weights_of(g) not in ({-2}, {2}):
            raise InputError(f"perturbation must have weight -2 or +2: {g}")
        return _report([_connection_report(cfg, n, g)], args, cfg)
    if cmd == "jet":
        reps = []
        for n in _ns(args, list(range(-2, 3))):
            g10 = _expr(args.perturb10, 2, "--perturb10") if args.perturb10 else parse("0")
            g01 = _expr(args.perturb01, -2, "--perturb01") if args.perturb01 else parse("0")
            c01, c10 = DelbarConnection(n, g01), DelConnection(n, g10)
            reps += [run_jet(cfg, n, c01), run_theorem(cfg, n, c10, c01)]
        return _report(reps, args, cfg)
    if cmd == "bimodule":
        ns = _ns(args, list(range(-2, 3)))
        if args.sub == "verify":
            return _report([run_bimodule(cfg, n) for n in ns], args, cfg)
        return _report([check_compatibility(cfg, n) for n in ns], args, cfg)
    if cmd == "verify":
        names = SUITES if args.suite == "all" else (args.suite,)
        reps = []
        for name in names:
            reps += run_suite(name, cfg, _ns(args))
        return _report(reps, args, cfg)
    raise InputError(f"unknown command {cmd}")


def check_compatibility(cfg, n):
    """The sigma-bar / sigma_E compatibility condition for canonical data, with the reduced form of the residual."""
    rep = SuiteReport("compatibility", dict(cfg.params(), n=n))
    data = bm.canonical_data(n)
    rng = rng_for(cfg, "compatibility", n)
    bad = mism = 0
    first = None
    for _ in range(cfg.samples):
        e = random_weighted(rng, n, max(cfg.maxlen, abs(n)))
        a, b = random_weighted(rng, 0, cfg.maxlen), random_weighted(rng, 0, cfg.maxlen)
        r = bm.compatibility_residual(data, e, a, b)
        red = bm.compatibility_reduced(e, a, b, n)
        mism += r != red.scale(jt.Q ** (-n - 2))
        if r:
            bad += 1
            first = first or r
    rep.add(f"compatibility.reduction[n={n}]", mism == 0, f"{mism} samples differ from the reduced form")
    rep.add(f"compatibility.canonical[n={n}]", bad == 0, first or "", note=f"{bad}/{cfg.samples} nonzero")
    rep.notes.append("residual = q^(-n-2) e (X+a X-b - q^2 X-a X+b)")
    return rep


def _fix_negative_values(argv):
    # "--range -4:4" would otherwise be read as an unknown option
    out, it = [], iter(argv)
    for tok in it:
        if tok == "--range":
            nxt = next(it, None)
            out.append(tok if nxt is None else f"--range={nxt}")
        else:
            out.append(tok)
    return out


def main(argv=None):
    argv = _fix_negative_values(sys.argv[1:] if argv is None else list(argv))
    args = build_parser().parse_args(argv)
    try:
        return dispatch(args)
    except (InputError, WeightError, ValueError) as ex:
        print(f"qcurve: {ex}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
