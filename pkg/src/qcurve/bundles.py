"""Line bundles L_n (weight-n subspace) and connections on them.

Collapsed conventions for E = L_n, with every omega pushed right:

    Omega^{0,1} (x) E    ->  P  of weight n-2     (x w- (x) e  ->  q^n x e)
    Omega^{1,0} (x) E    ->  eta of weight n+2    (y w+ (x) e  ->  q^n y e)
    Omega^{1,1} (x) E    ->  T  of weight n       (z w-^w+ (x) e -> q^{2n} z e)

so in particular  dbar a (x) e -> q^n X_-(a) e  and  d a (x) e -> q^n X_+(a) e.
A ∂̄-connection is  e -> X_- e + e g  (g of weight -2), a ∂-connection
e -> X_+ e + e g  (g of weight +2); g = 0 gives the standard ones.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

from .calculus import LAMBDA, Form
from .linalg import kernel_polys
from .ncalg import SUQ2, Poly, parse
from .scalar import Q, ZERO, Scalar
from .su2 import is_homogeneous, word_weight, xminus, xplus


class WeightError(ValueError):
    pass


def qn(n: int) -> Scalar:
    """K^2 eigenvalue on weight n: the factor picked up pushing an omega past L_n."""
    return Q ** n


@dataclass(frozen=True)
class BundleElement:
    n: int
    value: Poly

    def __post_init__(self):
        if not is_homogeneous(self.value, self.n):
            raise WeightError(f"element is not of weight {self.n}: {self.value}")


def require_weight(p: Poly, n: int, what="element"):
    if not is_homogeneous(p, n):
        raise WeightError(f"{what} must have weight {n}: {p}")
    return p


# ----------------------------------------------------------- tensor helpers

def delbar_tensor(a: Poly, e: Poly, n: int) -> Poly:
    """dbar a (x) e in Omega^{0,1} (x) L_n."""
    return xminus(a).scale(qn(n)) * e


def del_tensor(a: Poly, e: Poly, n: int) -> Poly:
    """d a (x) e in Omega^{1,0} (x) L_n."""
    return xplus(a).scale(qn(n)) * e


# -------------------------------------------------------------- connections

@dataclass(frozen=True)
class DelbarConnection:
    n: int
    perturbation: Poly = field(default_factory=Poly)

    def __post_init__(self):
        require_weight(self.perturbation, -2, "perturbation of a dbar-connection")

    def __call__(self, e: Poly) -> Poly:
        return xminus(e) + e * self.perturbation

    def extend(self, eta: Poly) -> Poly:
        """Covariant extension to Omega^{1,0} (x) E -> Omega^{1,1} (x) E:
        dbar (x) id - wedge (id (x) nabla)."""
        return xminus(eta) + eta * self.perturbation

    @property
    def is_standard(self):
        return self.perturbation.is_zero()


@dataclass(frozen=True)
class DelConnection:
    n: int
    perturbation: Poly = field(default_factory=Poly)

    def __post_init__(self):
        require_weight(self.perturbation, 2, "perturbation of a del-connection")

    def __call__(self, e: Poly) -> Poly:
        return xplus(e) + e * self.perturbation

    def extend(self, P: Poly) -> Poly:
        """Covariant extension to Omega^{0,1} (x) E -> Omega^{1,1} (x) E:
        del (x) id - wedge (id (x) nabla)."""
        return (xplus(P) + P * self.perturbation).scale(LAMBDA)

    @property
    def is_canonical(self):
        return self.perturbation.is_zero()


def nabla01_std(n: int) -> DelbarConnection:
    return DelbarConnection(n)


def nabla10_canonical(n: int) -> DelConnection:
    return DelConnection(n)


def leibniz01_residual(conn: DelbarConnection, a: Poly, e: Poly) -> Poly:
    return conn(a * e) - a * conn(e) - delbar_tensor(a, e, conn.n)


def leibniz10_residual(conn: DelConnection, a: Poly, e: Poly) -> Poly:
    return conn(a * e) - a * conn(e) - del_tensor(a, e, conn.n)


# ------------------------------------------------------------------ spans

@lru_cache(maxsize=None)
def _pbw_words(length: int):
    return tuple(SUQ2.irreducible_words(length))


def weight_words(n: int, maxlen: int):
    """Normal words of weight n and length <= maxlen."""
    out = []
    for L in range(maxlen + 1):
        out.extend(w for w in _pbw_words(L) if word_weight(w) == n)
    return out


def weight_basis(n: int, maxlen: int):
    """Words of weight n and length <= maxlen (an empty list if maxlen < |n|)."""
    return [Poly.word(w) for w in weight_words(n, maxlen)]


def holomorphic_sections(conn: DelbarConnection, maxlen: int):
    """Basis of the kernel of conn on the span of weight-n words of length <= maxlen."""
    if maxlen < 0:
        raise ValueError("maxlen must be >= 0")
    return kernel_polys(conn, weight_basis(conn.n, maxlen))


# -------------------------------------------------------------- curvature

def total_curvature(c10: DelConnection, c01: DelbarConnection, e: Poly) -> Poly:
    """Curvature of nabla10 + nabla01 on e, as the collapsed Omega^{1,1} (x) E value
    (nabla~ applied to nabla e; only the (1,1) part survives)."""
    return c01.extend(c10(e)) + c10.extend(c01(e))


# -------------------------------------------------------------- direct sums

@dataclass(frozen=True)
class DirectSum:
    """Componentwise connections on L_{n_1} + ... + L_{n_k}.

    offdiag[(i, j)] = h means the del-connection has an extra left-linear
    term e_j -> e_j h in slot i (h of weight n_i - n_j + 2)."""
    labels: tuple
    c01: tuple
    c10: tuple
    offdiag: tuple = ()

    def apply01(self, es):
        return tuple(c(e) for c, e in zip(self.c01, es))

    def apply10(self, es):
        out = [c(e) for c, e in zip(self.c10, es)]
        for (i, j), h in self.offdiag:
            out[i] = out[i] + es[j] * h
        return tuple(out)

    def curvature(self, es):
        # Theta(e) = nabla01~(nabla10 e) + nabla10~(nabla01 e), slot by slot
        n10 = self.apply10(es)
        n01 = self.apply01(es)
        out = []
        for i in range(len(es)):
            t = self.c01[i].extend(n10[i]) + self.c10[i].extend(n01[i])
            for (k, j), h in self.offdiag:
                if k == i:
                    t = t + (n01[j] * h).scale(LAMBDA)
            out.append(t)
        return tuple(out)


def direct_sum(pairs) -> DirectSum:
    """pairs: list of (DelbarConnection, DelConnection) on the same L_n."""
    labels = tuple(c01.n for c01, _ in pairs)
    for c01, c10 in pairs:
        if c01.n != c10.n:
            raise WeightError("connections in a summand must share the label n")
    return DirectSum(labels, tuple(p[0] for p in pairs), tuple(p[1] for p in pairs))


def restrict_connection(ds: DirectSum, i: int):
    """Project-then-restrict: pr_i o nabla o incl_i on the i-th summand."""
    if not 0 <= i < len(ds.labels):
        raise IndexError(f"summand {i} out of range")
    g = ds.c10[i].perturbation
    for (k, j), h in ds.offdiag:
        if k == i and j == i:
            g = g + h
    return ds.c01[i], DelConnection(ds.labels[i], g)


def parse_weighted(text: str, n: int) -> Poly:
    return require_weight(parse(text), n)


# ------------------------------------------------ explicit tensor representatives
#
# The collapsed values above hide the tensor product over A.  For checks that
# apply maps which are only defined on representatives (such as d (x) id), an
# element of Omega (x)_A L_n is written as sum_i xi_i (x) v_i using a partition
# of unity  sum_i u_i v_i = 1  with u_i in L_{-n}, v_i in L_n.

FORM_SLOT = {"01": "cm", "10": "cp", "11": "cmp"}


@lru_cache(maxsize=None)
def partition_of_unity(n: int):
    """Pairs (u_i, v_i), u_i of weight -n and v_i of weight n, with sum u_i v_i = 1."""
    if n == 0:
        return ((Poly.const(1), Poly.const(1)),)
    if n > 0:
        # a a* + q^2 c c* = 1
        base = ((Poly.gen("a"), Poly.gen("a*")), (Poly.gen("c").scale(Q * Q), Poly.gen("c*")))
    else:
        # a* a + c* c = 1
        base = ((Poly.gen("a*"), Poly.gen("a")), (Poly.gen("c*"), Poly.gen("c")))
    out = [(Poly.const(1), Poly.const(1))]
    for _ in range(abs(n)):
        out = [(u * bu, bv * v) for u, v in out for bu, bv in base]
    return tuple(out)


def form_power(kind: str) -> int:
    # number of omegas pushed across e when collapsing
    return 2 if kind == "11" else 1


def collapse(pairs, n: int, kind: str) -> Poly:
    """sum_i xi_i (x) v_i  ->  collapsed value; xi_i are Forms, only the `kind` slot is read."""
    slot = FORM_SLOT[kind]
    f = qn(n) ** form_power(kind)
    out = Poly()
    for xi, v in pairs:
        out = out + (getattr(xi, slot) * v).scale(f)
    return out


def uncollapse(P: Poly, n: int, kind: str):
    """A representative sum_i xi_i (x) v_i of the collapsed value P."""
    slot = FORM_SLOT[kind]
    f = (qn(n) ** form_power(kind)).inv()
    out = []
    for u, v in partition_of_unity(n):
        x = (P * u).scale(f)
        if x:
            out.append((Form(**{slot: x}), v))
    return out


def random_weighted(rng, n: int, maxlen=3, nterms=3, coeffs=(-2, -1, 1, 2, 3)) -> Poly:
    """Seeded random element of L_n supported on words of length <= maxlen."""
    # a weight-n word has length >= |n|; widen the truncation if it is too short
    words = weight_words(n, max(maxlen, abs(n)))
    terms = {}
    for _ in range(rng.randint(1, nterms)):
        w = rng.choice(words)
        c = Scalar.s_power(2 * rng.randint(-1, 1), rng.choice(coeffs))
        terms[w] = terms.get(w, ZERO) + c
    return Poly(terms)
