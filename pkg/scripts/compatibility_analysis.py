#!/usr/bin/env python3
"""Why the compatibility condition between sigma-bar and sigma_E and the curvature diagram fail for the
canonical bimodule data, with explicit witnesses.

On line bundles it reduces to  e (X+a X-b - q^2 X-a X+b) = 0.  At q = 1 this is the
coefficient of  da ^ dbar b - dbar a ^ db, which is nonzero for a = z, b = zbar
in any chart, so the failure is not a q-artefact.

The diagram fails by the cross terms  dbar a ^ nabla e  and  da ^ nabla-bar e,
which vanish only when e is constant (classically e = zbar, a = z is a witness).
"""
import argparse
import random

from qcurve import bimodule as bm
from qcurve.bundles import random_weighted
from qcurve.ncalg import parse
from qcurve.scalar import Q
from qcurve.su2 import xminus, xplus


def witness(n):
    data = bm.canonical_data(n)
    e = parse("1") if n == 0 else (parse("a") ** -n if n < 0 else parse("a*") ** n)
    a, b = parse("a c*"), parse("c a*")
    r = bm.compatibility_residual(data, e, a, b)
    print(f"n={n:+d}  e={e}  a={a}  b={b}")
    print(f"   compatibility residual: {r}")
    print(f"   X+a X-b - q^2 X-a X+b : {xplus(a) * xminus(b) - (xminus(a) * xplus(b)).scale(Q * Q)}")
    print(f"   reduced form agrees: {r == bm.compatibility_reduced(e, a, b, n).scale(Q ** (-n - 2))}")


def sample_stats(n, k, seed):
    rng = random.Random(seed)
    data = bm.canonical_data(n)
    bad = same = 0
    for _ in range(k):
        e = random_weighted(rng, n, max(3, abs(n)))
        a, b = random_weighted(rng, 0, 3), random_weighted(rng, 0, 3)
        rc = bm.compatibility_residual(data, e, a, b)
        bad += not rc.is_zero()
        same += rc == bm.sigma_right_residual(data, e, a, b)
    print(f"n={n:+d}: compatibility fails on {bad}/{k} samples; sigma_J right defect equals it on {same}/{k}")


def diagram():
    data = bm.canonical_data(0)
    e, a = parse("a* c"), parse("a c*")
    print("diagram at n=0, e = a* c, a = a c*")
    print(f"   as-stated residual  : {bm.diagram_residual(data, e, a)}")
    print(f"   cross terms         : {bm.cross_terms(data, e, a)}")
    print(f"   with cross terms    : {bm.diagram_residual(data, e, a, corrected=True)}")
    print(f"   constant e residual : {bm.diagram_residual(data, parse('1'), a)}")


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--samples", type=int, default=20)
    ap.add_argument("--seed", type=int, default=7)
    args = ap.parse_args()
    for n in range(-2, 3):
        witness(n)
    for n in range(-2, 3):
        sample_stats(n, args.samples, args.seed + n)
    diagram()


if __name__ == "__main__":
    main()
