#!/usr/bin/env python3
"""Curvature of the canonical pair on L_n, compared with -q^(1-n) [n]_q.

Also prints the value obtained with forms pushed to the right (the stored
convention), which differs by q^(2n), and the classical limit q -> 1.
"""
import argparse

from qcurve.jet import curvature_coefficient, curvature_line_bundle
from qcurve.bundles import nabla01_std, nabla10_canonical
from qcurve.printing import format_scalar
from qcurve.scalar import Q, evaluate_at, qint_by_quotient


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--lo", type=int, default=-4)
    ap.add_argument("--hi", type=int, default=4)
    args = ap.parse_args()
    print(f"{'n':>3}  {'kappa (forms left)':<28} {'pushed right':<28} q->1  match")
    for n in range(args.lo, args.hi + 1):
        kappa = curvature_line_bundle(n)
        pushed = curvature_coefficient(nabla10_canonical(n), nabla01_std(n))
        expect = -(Q ** (1 - n)) * qint_by_quotient(n)
        print(f"{n:>3}  {format_scalar(kappa):<28} {format_scalar(pushed):<28} "
              f"{str(evaluate_at(kappa, 1)):>4}  {kappa == expect}")


if __name__ == "__main__":
    main()
