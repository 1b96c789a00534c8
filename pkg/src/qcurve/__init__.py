"""Exact computations with jet bundles and holomorphic connections on CP_q^1.

Coefficients live in Q(s), q = s^2.  Modules:

    scalar    Laurent polynomials and the field Q(s)
    ncalg     noncommutative polynomials in a, a*, c, c* with a confluent rewrite system
    su2       the U_q(su2) action and the operators X_+, X_-
    calculus  the two-dimensional calculus on CP_q^1
    bundles   line bundles L_n and their connections
    jet       the jet module J^1 L_n with its lifted dbar-connection
              (splitting and curvature checks live here too)
    bimodule  bimodule structures and compatibility checks
    suites    named verification suites (used by the CLI)
"""
from .ncalg import Poly, parse
from .scalar import Q, S, Scalar

__all__ = ["Poly", "parse", "Q", "S", "Scalar"]
__version__ = "0.1.0"
