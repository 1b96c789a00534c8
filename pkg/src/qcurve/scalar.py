"""Exact coefficients: the field Q(s) of rational functions in s, with q = s^2.

Laurent polynomials are stored sparsely as {exponent: Fraction}.  A Scalar is
a reduced fraction num/den of Laurent polynomials in canonical form: the
denominator is an ordinary polynomial whose constant term is 1.  Canonical
form makes equality a dict comparison, which everything downstream relies on.

Polynomial gcds are delegated to sympy's sparse polynomial rings; the common
case (denominator 1) never touches sympy.
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

from sympy import QQ
from sympy.polys.rings import ring

_R, _S = ring("s", QQ)


class ScalarError(ArithmeticError):
    """Division by zero or evaluation at a pole."""


def _frac(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


class LaurentPoly:
    __slots__ = ("coeffs", "_hash")

    def __init__(self, coeffs=None):
        c = {}
        if coeffs:
            for k, v in coeffs.items():
                v = _frac(v)
                if v:
                    c[int(k)] = v
        self.coeffs = c
        self._hash = None

    @classmethod
    def _raw(cls, coeffs):
        # trusted constructor: no zero entries, Fraction values
        p = cls.__new__(cls)
        p.coeffs = coeffs
        p._hash = None
        return p

    @classmethod
    def monomial(cls, exp, c=1):
        return cls({exp: c})

    def is_zero(self):
        return not self.coeffs

    def is_monomial(self):
        return len(self.coeffs) == 1

    def low(self):
        return min(self.coeffs)

    def high(self):
        return max(self.coeffs)

    def __add__(self, o):
        c = dict(self.coeffs)
        for k, v in o.coeffs.items():
            w = c.get(k, 0) + v
            if w:
                c[k] = w
            else:
                c.pop(k, None)
        return LaurentPoly._raw(c)

    def __neg__(self):
        return LaurentPoly._raw({k: -v for k, v in self.coeffs.items()})

    def __sub__(self, o):
        return self + (-o)

    def __mul__(self, o):
        a, b = self.coeffs, o.coeffs
        if len(a) == 1 and len(b) == 1:
            (i, x), = a.items()
            (j, y), = b.items()
            return LaurentPoly._raw({i + j: x * y})
        c = {}
        for i, x in a.items():
            for j, y in b.items():
                k = i + j
                w = c.get(k, 0) + x * y
                if w:
                    c[k] = w
                else:
                    c.pop(k, None)
        return LaurentPoly._raw(c)

    def scale(self, f):
        f = _frac(f)
        if not f:
            return LaurentPoly._raw({})
        return LaurentPoly._raw({k: v * f for k, v in self.coeffs.items()})

    def shift(self, m):
        return LaurentPoly._raw({k + m: v for k, v in self.coeffs.items()})

    def __eq__(self, o):
        return isinstance(o, LaurentPoly) and self.coeffs == o.coeffs

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self.coeffs.items()))
        return self._hash

    def evaluate(self, s0):
        s0 = _frac(s0)
        return sum((v * s0 ** k for k, v in self.coeffs.items()), Fraction(0))

    def to_ring(self):
        # only for polynomials (all exponents >= 0)
        return _R.from_dict({(k,): QQ(v.numerator, v.denominator) for k, v in self.coeffs.items()})

    @classmethod
    def from_ring(cls, p, shift=0):
        c = {}
        for (k,), v in p.terms():
            c[k + shift] = Fraction(int(v.numerator), int(v.denominator))
        return cls._raw(c)

    def __repr__(self):
        return f"LaurentPoly({self.coeffs})"


_ZERO_LP = LaurentPoly._raw({})
_ONE_LP = LaurentPoly._raw({0: Fraction(1)})


class Scalar:
    """Element of Q(s) in canonical reduced form."""

    __slots__ = ("num", "den", "_hash")

    def __init__(self, num, den=None, _canonical=False):
        if not isinstance(num, LaurentPoly):
            num = LaurentPoly({0: num})
        if den is None:
            den = _ONE_LP
        elif not isinstance(den, LaurentPoly):
            den = LaurentPoly({0: den})
        if den.is_zero():
            raise ScalarError("zero denominator")
        self._hash = None
        if _canonical:
            self.num, self.den = num, den
        else:
            self.num, self.den = _canonical_pair(num, den)

    # constructors
    @classmethod
    def s_power(cls, k, c=1):
        return cls(LaurentPoly._raw({k: _frac(c)}), _ONE_LP, _canonical=True)

    @classmethod
    def q_power(cls, k, c=1):
        return cls.s_power(2 * k, c)

    @classmethod
    def _lp(cls, lp):
        return cls(lp, _ONE_LP, _canonical=True)

    def is_zero(self):
        return self.num.is_zero()

    def __bool__(self):
        return not self.num.is_zero()

    def is_laurent(self):
        return self.den.coeffs == _ONE_LP.coeffs

    # arithmetic
    def __add__(self, o):
        o = as_scalar(o)
        if self.is_laurent() and o.is_laurent():
            return Scalar._lp(self.num + o.num)
        if self.den == o.den:
            return Scalar(self.num + o.num, self.den)
        return Scalar(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self):
        return Scalar(-self.num, self.den, _canonical=True)

    def __sub__(self, o):
        return self + (-as_scalar(o))

    def __rsub__(self, o):
        return as_scalar(o) - self

    def __mul__(self, o):
        o = as_scalar(o)
        if self.is_laurent() and o.is_laurent():
            return Scalar._lp(self.num * o.num)
        return Scalar(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def inv(self):
        if self.is_zero():
            raise ScalarError("division by zero")
        return Scalar(self.den, self.num)

    def __truediv__(self, o):
        return self * as_scalar(o).inv()

    def __rtruediv__(self, o):
        return as_scalar(o) * self.inv()

    def __pow__(self, k):
        if k < 0:
            return self.inv() ** (-k)
        r = ONE
        b = self
        while k:
            if k & 1:
                r = r * b
            b = b * b
            k >>= 1
        return r

    def __eq__(self, o):
        if not isinstance(o, Scalar):
            try:
                o = as_scalar(o)
            except TypeError:
                return NotImplemented
        return self.num == o.num and self.den == o.den

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.num, self.den))
        return self._hash

    def canonical(self):
        return Scalar(self.num, self.den)

    def evaluate_at(self, s0):
        s0 = _frac(s0)
        if s0 == 0:
            raise ScalarError("evaluation at s = 0")
        d = self.den.evaluate(s0)
        if d == 0:
            raise ScalarError(f"pole at s = {s0}")
        return self.num.evaluate(s0) / d

    def __str__(self):
        from .printing import format_scalar
        return format_scalar(self)

    def __repr__(self):
        return f"Scalar({self})"


def _canonical_pair(num, den):
    if num.is_zero():
        return _ZERO_LP, _ONE_LP
    # strip the s-power and leading constant from den
    lo = den.low()
    c = den.coeffs[lo]
    den = den.shift(-lo).scale(1 / c)
    num = num.shift(-lo).scale(1 / c)
    if den.is_monomial():
        return num, den
    nlo = num.low()
    g = _poly_gcd(num.shift(-nlo), den)
    if g is not None:
        num = num.shift(-nlo)
        num, den = _exact_div(num, g).shift(nlo), _exact_div(den, g)
        c = den.coeffs[0]
        if c != 1:
            num, den = num.scale(1 / c), den.scale(1 / c)
    return num, den


def _poly_gcd(a, b):
    g = a.to_ring().gcd(b.to_ring())
    if g.degree() <= 0:
        return None
    return LaurentPoly.from_ring(g)


def _exact_div(a, b):
    q, r = a.to_ring().div(b.to_ring())
    assert not r, "inexact division in canonical form"
    return LaurentPoly.from_ring(q)


def as_scalar(x) -> Scalar:
    if isinstance(x, Scalar):
        return x
    if isinstance(x, (int, Fraction)):
        return Scalar._lp(LaurentPoly({0: x}))
    if isinstance(x, LaurentPoly):
        return Scalar._lp(x)
    raise TypeError(f"cannot coerce {type(x).__name__} to Scalar")


ZERO = Scalar._lp(_ZERO_LP)
ONE = Scalar._lp(_ONE_LP)
S = Scalar.s_power(1)
Q = Scalar.s_power(2)


def q_pow(k) -> Scalar:
    """q^k; k may be a half-integer given as Fraction."""
    k2 = _frac(k) * 2
    if k2.denominator != 1:
        raise ValueError("only half-integer powers of q are representable")
    return Scalar.s_power(int(k2))


@lru_cache(maxsize=None)
def qint(n: int) -> Scalar:
    """[n]_q = (q^n - q^-n) / (q - q^-1), as the Laurent sum q^{n-1} + ... + q^{1-n}."""
    if n == 0:
        return ZERO
    sign = 1 if n > 0 else -1
    m = abs(n)
    lp = LaurentPoly({2 * (m - 1 - 2 * j): sign for j in range(m)})
    return Scalar._lp(lp)


def qint_by_quotient(n: int) -> Scalar:
    # the defining quotient, used as an independent oracle for qint
    return (Q ** n - Q ** (-n)) / (Q - Q.inv())


def evaluate_at(x: Scalar, s0) -> Fraction:
    return as_scalar(x).evaluate_at(s0)


def field_op(op: str, x, y=None):
    """Uniform entry point returning either a Scalar or an error string."""
    x = as_scalar(x)
    try:
        if op == "neg":
            return -x
        if op == "inv":
            return x.inv()
        y = as_scalar(y)
        return {"add": x.__add__, "sub": x.__sub__, "mul": x.__mul__,
                "div": x.__truediv__}[op](y)
    except ScalarError as exc:
        return f"error: {exc}"
