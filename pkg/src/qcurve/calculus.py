"""The 2D calculus on CP_q^1 in the collapsed model.

A Form is a coefficient vector on {1, w-, w+, w-^w+} with every omega pushed
to the right of its coefficient.  Commutation: w_+- f = (K^2 > f) w_+-, which
is q^w f w_+- on weight w.  df = (X_- f) w- + (X_+ f) w+, d(omegas) = 0, and
the only relation in degree two is w+ ^ w- = LAMBDA w- ^ w+.

LAMBDA is not typed in: solve_wedge_constant() recovers it from d^2 = 0 and
the test-suite checks the stored value against it.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from .ncalg import Poly
from .scalar import Q, Scalar
from .su2 import is_homogeneous, k2, xminus, xplus

LAMBDA = -(Q * Q)  # w+ ^ w- = -q^2 w- ^ w+


class BidegreeError(ValueError):
    pass


_Z = Poly()


@dataclass(frozen=True)
class Form:
    c0: Poly = field(default_factory=Poly)
    cm: Poly = field(default_factory=Poly)
    cp: Poly = field(default_factory=Poly)
    cmp: Poly = field(default_factory=Poly)

    @classmethod
    def fn(cls, f):
        return cls(c0=f)

    def parts(self):
        return (self.c0, self.cm, self.cp, self.cmp)

    def is_zero(self):
        return not any(self.parts())

    def __add__(self, o):
        return Form(*(x + y for x, y in zip(self.parts(), o.parts())))

    def __sub__(self, o):
        return Form(*(x - y for x, y in zip(self.parts(), o.parts())))

    def __neg__(self):
        return Form(*(-x for x in self.parts()))

    def scale(self, c):
        return Form(*(x.scale(c) for x in self.parts()))

    def lmul(self, f: Poly):
        return Form(*(f * x for x in self.parts()))

    def degree(self):
        if self.cmp:
            return 2
        if self.cm or self.cp:
            return 1
        return 0

    def bidegrees(self):
        out = set()
        if self.c0:
            out.add((0, 0))
        if self.cm:
            out.add((0, 1))
        if self.cp:
            out.add((1, 0))
        if self.cmp:
            out.add((1, 1))
        return out

    def __eq__(self, o):
        return isinstance(o, Form) and self.parts() == o.parts()

    def __hash__(self):
        return hash(self.parts())

    def __str__(self):
        bits = []
        for p, sym in zip(self.parts(), ("", "w-", "w+", "w-^w+")):
            if not p:
                continue
            t = str(p)
            if sym:
                if t in ("1", "-1"):
                    t = t[:-1] + sym
                elif len(p.terms) > 1:
                    t = f"({t}) {sym}"
                else:
                    t = f"{t} {sym}"
            bits.append(t)
        if not bits:
            return "0"
        out = bits[0]
        for t in bits[1:]:
            out += f" - {t[1:]}" if t.startswith("-") else f" + {t}"
        return out


W_MINUS = Form(cm=Poly.const(1))
W_PLUS = Form(cp=Poly.const(1))


def wedge(x: Form, y: Form) -> Form:
    """Product in the truncated algebra; raises BidegreeError when a nonzero
    product would need a degree-3 slot."""
    for dx in range(3):
        for dy in range(3):
            if dx + dy > 2 and _deg_part(x, dx) and _deg_part(y, dy):
                raise BidegreeError("product lands above degree (1,1)")
    x0, xm, xp, xmp = x.parts()
    y0, ym, yp, ymp = y.parts()
    c0 = x0 * y0
    cm = x0 * ym + xm * k2(y0)
    cp = x0 * yp + xp * k2(y0)
    cmp = x0 * ymp + xm * k2(yp) + (xp * k2(ym)).scale(LAMBDA) + xmp * k2(k2(y0))
    return Form(c0, cm, cp, cmp)


def _deg_part(x, d):
    if d == 0:
        return bool(x.c0)
    if d == 1:
        return bool(x.cm or x.cp)
    return bool(x.cmp)


def push_right(factors) -> Form:
    """Multiply out a product of Polys and the symbols 'w-', 'w+'."""
    out = Form.fn(Poly.const(1))
    for f in factors:
        if isinstance(f, str):
            f = {"w-": W_MINUS, "w+": W_PLUS}[f]
        elif isinstance(f, Poly):
            f = Form.fn(f)
        out = wedge(out, f)
    return out


def d(x: Form) -> Form:
    return delbar(x) + dell(x)


def dell(x: Form) -> Form:
    # d(y w-) = dy ^ w- ; only its (1,1) part survives
    return Form(cp=xplus(x.c0), cmp=xplus(x.cm).scale(LAMBDA))


def delbar(x: Form) -> Form:
    return Form(cm=xminus(x.c0), cmp=xminus(x.cp))


# the name `del` is reserved in Python
del_ = dell


def solve_wedge_constant(f: Poly | None = None) -> Scalar:
    """The unique lambda with (lambda X_+X_- + X_-X_+) f = 0 on a weight-0 f."""
    from .ncalg import parse
    f = f if f is not None else parse("a c*")
    u, v = xplus(xminus(f)), xminus(xplus(f))
    # v = -lambda u, with u a nonzero multiple of v
    w, c = next(iter(u.terms.items()))
    return -(v.terms[w] / c)


# ------------------------------------------------------------- tensor tags

@dataclass(frozen=True)
class Tagged:
    """A collapsed value together with the abstract space it represents.

    tag lists the factors left to right, e.g. ('01', '10', 'E') for
    Omega^{0,1} (x) Omega^{1,0} (x) L_n; n is the bundle label (0 when no
    E-slot is present)."""
    tag: tuple
    n: int
    value: Poly

    def __add__(self, o):
        _same(self, o)
        return Tagged(self.tag, self.n, self.value + o.value)

    def __sub__(self, o):
        _same(self, o)
        return Tagged(self.tag, self.n, self.value - o.value)

    def is_zero(self):
        return self.value.is_zero()


class TagError(ValueError):
    pass


def _same(x, y):
    if x.tag != y.tag or x.n != y.n:
        raise TagError(f"tag mismatch: {x.tag}/{x.n} vs {y.tag}/{y.n}")


TAG_WEIGHT = {"01": -2, "10": 2, "11": 0}


def tag_weight(tag, n):
    """Weight of the collapsed coefficient for a tagged space."""
    return sum(TAG_WEIGHT[t] for t in tag if t != "E") + (n if "E" in tag else 0)


def mu_twist(n: int, with_bundle=True) -> Scalar:
    # pushing w- across the weight-2 coefficient of w+, and (with a bundle
    # slot) the collapsed w- and w+ across e
    return Q ** (n + 2) if with_bundle else Q * Q


def mu(x: Tagged) -> Tagged:
    if x.tag[:2] != ("01", "10"):
        raise TagError(f"mu expects ('01','10',...), got {x.tag}")
    rest = x.tag[2:]
    return Tagged(("11",) + rest, x.n, x.value.scale(mu_twist(x.n, bool(rest))))


def mu_inv(x: Tagged) -> Tagged:
    if x.tag[:1] != ("11",):
        raise TagError(f"mu_inv expects ('11',...), got {x.tag}")
    rest = x.tag[1:]
    return Tagged(("01", "10") + rest, x.n, x.value.scale(mu_twist(x.n, bool(rest)).inv()))


def check_homogeneous(x: Tagged) -> bool:
    return is_homogeneous(x.value, tag_weight(x.tag, x.n))
