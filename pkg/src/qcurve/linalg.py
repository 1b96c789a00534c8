"""Exact kernels of linear maps between spans of words, over Q(s).

Elimination is fraction-free (rows are combined by cross multiplication,
never divided) so that entries stay Laurent polynomials whenever the input
does; a single division per pivot happens during back substitution.
"""
from __future__ import annotations

from .ncalg import Poly
from .scalar import ONE, ZERO, Scalar


def _entries(out):
    # a Poly, or a tuple of Polys (one per block of a direct sum)
    if isinstance(out, Poly):
        return {(0, w): v for w, v in out.terms.items()}
    return {(k, w): v for k, p in enumerate(out) for w, v in p.terms.items()}


def matrix_of(fn, basis):
    """Columns are fn(b) for b in basis; rows indexed by (block, word)."""
    cols = [_entries(fn(b)) for b in basis]
    rows = sorted({key for c in cols for key in c}, key=lambda k: (k[0], len(k[1]), k[1]))
    index = {key: i for i, key in enumerate(rows)}
    M = [[ZERO] * len(basis) for _ in rows]
    for j, c in enumerate(cols):
        for key, v in c.items():
            M[index[key]][j] = v
    return M, rows


def echelon(M, ncols):
    M = [list(r) for r in M]
    pivots = []
    r = 0
    for col in range(ncols):
        piv = next((i for i in range(r, len(M)) if M[i][col]), None)
        if piv is None:
            continue
        M[r], M[piv] = M[piv], M[r]
        p = M[r][col]
        for i in range(len(M)):
            if i == r or not M[i][col]:
                continue
            f = M[i][col]
            M[i] = [p * x - f * y for x, y in zip(M[i], M[r])]
        pivots.append(col)
        r += 1
        if r == len(M):
            break
    return M[:r], pivots


def rank(M, ncols):
    return len(echelon(M, ncols)[1])


def kernel(M, ncols):
    """Basis of {v : M v = 0} as lists of Scalars."""
    E, pivots = echelon(M, ncols)
    free = [j for j in range(ncols) if j not in set(pivots)]
    out = []
    for f in free:
        v = [ZERO] * ncols
        v[f] = ONE
        for row, pc in zip(E, pivots):
            # fully reduced: row has only its pivot and free columns nonzero
            v[pc] = -(row[f] / row[pc])
        out.append(v)
    return out


def kernel_vectors(fn, basis):
    M, _ = matrix_of(fn, basis)
    if not M:
        return [[ONE if i == j else ZERO for i in range(len(basis))] for j in range(len(basis))]
    return kernel(M, len(basis))


def kernel_polys(fn, basis):
    res = []
    for v in kernel_vectors(fn, basis):
        p = Poly()
        for c, b in zip(v, basis):
            if c:
                p = p + b.scale(c)
        res.append(p)
    return res
