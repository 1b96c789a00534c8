"""U_q(su(2)) acting on the coordinate algebra of SU_q(2).

The action table is not typed in by hand: it is read off from the dual
pairing on the matrix of generators u = [[a, -q c*], [c, a*]], via
h > u_ij = sum_k u_ik <h, u_kj>.  Words are then handled with the coproduct
Delta(E) = E (x) K + K^-1 (x) E (same shape for F), Delta(K) = K (x) K.

Weight: deg a = deg c = -1, deg a* = deg c* = +1.  E raises the weight by
two, F lowers it, and K acts by s^weight.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .ncalg import SUQ2, Poly, _acc
from .scalar import ONE, Q, S, Scalar

OPS = ("E", "F", "K", "Kinv")

# pairing matrices <h, u_kj>.  K must pair as diag(q^{-1/2}, q^{1/2}) for the
# action to respect ac = qca under this coproduct (see check_relations); E
# pairs with the lower-left slot so that E raises the weight below.
_PAIRING = {
    "E": [[0, 0], [1, 0]],
    "F": [[0, 1], [0, 0]],
    "K": [[S.inv(), 0], [0, S]],
    "Kinv": [[S, 0], [0, S.inv()]],
}


def generator_matrix():
    a, as_, c, cs = (Poly.gen(x) for x in ("a", "a*", "c", "c*"))
    return [[a, cs.scale(-Q)], [c, as_]]


@dataclass(frozen=True)
class ActionTable:
    table: dict  # op -> {generator index: Poly}

    def __getitem__(self, key):
        return self.table[key]


def derive_action_table() -> ActionTable:
    u = generator_matrix()
    # which generator lives in which slot, and with what scalar
    slots = {"a": (0, 0, ONE), "c": (1, 0, ONE), "a*": (1, 1, ONE), "c*": (0, 1, -Q)}
    table = {}
    for h in OPS:
        m = _PAIRING[h]
        row = {}
        for name, (i, j, scale) in slots.items():
            val = Poly()
            for k in range(2):
                if m[k][j]:
                    val = val + u[i][k].scale(m[k][j])
            row[SUQ2.index[name]] = val.scale(scale.inv())
        table[h] = row
    return ActionTable(table)


TABLE = derive_action_table()
# K acts on weight w by s^(KEXP * w); read off from K > a* rather than assumed
KEXP = next(iter(TABLE["K"][1].terms.values())).num.low()


def word_weight(w) -> int:
    # a, c -> -1 ; a*, c* -> +1  (indices: a=0, a*=1, c=2, c*=3)
    return sum(-1 if x in (0, 2) else 1 for x in w)


weight = word_weight


def weights_of(p: Poly) -> set:
    return {word_weight(w) for w in p.terms}


def project_weight(p: Poly, n: int) -> Poly:
    return Poly({w: c for w, c in p.terms.items() if word_weight(w) == n}, p.pr, normalized=True)


def is_homogeneous(p: Poly, n: int) -> bool:
    return all(word_weight(w) == n for w in p.terms)


@lru_cache(maxsize=None)
def _act_word(h: str, w: tuple) -> Poly:
    if h in ("K", "Kinv"):
        k = KEXP * word_weight(w) * (1 if h == "K" else -1)
        return Poly({w: Scalar.s_power(k)})
    if not w:
        return Poly()
    out = {}
    tab = TABLE[h]
    for i, x in enumerate(w):
        hx = tab[x]
        if not hx:
            continue
        pre, post = w[:i], w[i + 1:]
        c = Scalar.s_power(KEXP * (word_weight(post) - word_weight(pre)))
        for v, d in hx.terms.items():
            for u, e in SUQ2.nf_word(pre + v + post).items():
                _acc(out, u, c * d * e)
    return Poly(out, normalized=True)


def act(h: str, p: Poly) -> Poly:
    if h not in OPS:
        raise ValueError(f"unknown operator {h!r}")
    out = Poly()
    for w, c in p.terms.items():
        out = out + _act_word(h, w).scale(c)
    return out


def _xop(h, shift, p):
    out = {}
    for w, c in p.terms.items():
        f = Scalar.s_power(KEXP * word_weight(w) + shift)
        for u, d in _act_word(h, w).terms.items():
            _acc(out, u, c * f * d)
    return Poly(out, normalized=True)


def xplus(p: Poly) -> Poly:
    """X_+ = q^{1/2} E K."""
    return _xop("E", 1, p)


def xminus(p: Poly) -> Poly:
    """X_- = q^{-1/2} F K."""
    return _xop("F", -1, p)


def k2(p: Poly) -> Poly:
    return p.map_coeffs(lambda w, c: c * Scalar.s_power(2 * KEXP * word_weight(w)))


def k2_eigen(n: int) -> Scalar:
    """Eigenvalue of K^2 on weight n."""
    return Scalar.s_power(2 * KEXP * n)


def check_relations():
    """Residuals h > (lhs) - h > (rhs) for every rule lhs -> rhs; all zero
    iff the action descends to the quotient algebra."""
    bad = []
    for lhs in SUQ2.rules:
        for h in OPS:
            r = _act_word.__wrapped__(h, lhs) - act(h, Poly.word(lhs))
            if r:
                bad.append((h, lhs, r))
    return bad


def apply_op(name: str, p: Poly) -> Poly:
    if name in ("X+", "Xplus"):
        return xplus(p)
    if name in ("X-", "Xminus"):
        return xminus(p)
    return act(name, p)
