"""Free *-algebras modulo a quadratic rewrite system, with PBW normal forms.

Overlap (diamond lemma) checks and the expression parser live here as well.

Words are tuples of generator indices.  All rules have length-2 left-hand
sides, so the only ambiguities are overlaps xyz of two rules xy, yz.

Termination for the SU_q(2) rules: ordering rules permute letters and the
two unit rules strictly lower (length, #a + #a*), so rewriting terminates
under the well-founded order (length, #a + #a*, inversions).  The letter
order a < a* < c < c* matters: with a* placed last, words such as a c a*
are irreducible and the quadratic system is not confluent.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from itertools import product

from .printing import scalar_parts
from .scalar import ONE, ZERO, Q, Scalar, as_scalar, q_pow
from fractions import Fraction

Word = tuple


class Presentation:
    """Generators, star involution and rules xy -> sum c_i w_i."""

    def __init__(self, names, star=None, rules=None, name="custom"):
        self.names = list(names)
        self.index = {n: i for i, n in enumerate(self.names)}
        self.star_table = list(star) if star is not None else list(range(len(self.names)))
        self.rules = {}
        for lhs, rhs in (rules or {}).items():
            lhs = tuple(self.index[x] if isinstance(x, str) else x for x in lhs)
            assert len(lhs) == 2
            self.rules[lhs] = tuple((as_scalar(c), tuple(w)) for c, w in rhs)
        self.name = name
        self._nf = {}

    def __repr__(self):
        return f"Presentation({self.name}, {len(self.rules)} rules)"

    def is_irreducible(self, w: Word) -> bool:
        return all((w[i], w[i + 1]) not in self.rules for i in range(len(w) - 1))

    def nf_word(self, w: Word) -> dict:
        """Normal form of a single word as {word: Scalar} (memoised)."""
        got = self._nf.get(w)
        if got is not None:
            return got
        for i in range(len(w) - 1):
            rhs = self.rules.get((w[i], w[i + 1]))
            if rhs is None:
                continue
            out = {}
            pre, post = w[:i], w[i + 2:]
            for c, r in rhs:
                for u, d in self.nf_word(pre + r + post).items():
                    _acc(out, u, c * d)
            break
        else:
            out = {w: ONE}
        self._nf[w] = out
        return out

    def reduce_once(self, terms: dict, pick) -> dict | None:
        """One rewrite at a position chosen by pick(list of (word, pos)).
        Returns None when irreducible."""
        sites = [(w, i) for w in terms for i in range(len(w) - 1)
                 if (w[i], w[i + 1]) in self.rules]
        if not sites:
            return None
        w, i = pick(sites)
        out = dict(terms)
        c0 = out.pop(w)
        for c, r in self.rules[(w[i], w[i + 1])]:
            _acc(out, w[:i] + r + w[i + 2:], c0 * c)
        return out

    def words(self, length: int):
        return [w for w in product(range(len(self.names)), repeat=length)]

    def irreducible_words(self, length: int):
        return [w for w in self.words(length) if self.is_irreducible(w)]

    def word_str(self, w: Word) -> str:
        if not w:
            return ""
        out = []
        i = 0
        while i < len(w):
            j = i
            while j < len(w) and w[j] == w[i]:
                j += 1
            nm = self.names[w[i]]
            out.append(nm if j - i == 1 else f"{nm}^{j - i}")
            i = j
        return " ".join(out)


def _acc(d, w, c):
    if not c:
        return
    v = d.get(w)
    if v is None:
        d[w] = c
    else:
        v = v + c
        if v:
            d[w] = v
        else:
            del d[w]


def term_key(w: Word):
    # graded, then lexicographic in generator index
    return (len(w), w)


def su2_presentation() -> Presentation:
    """Generators ordered a, a*, c, c*; normal words a^k a*^p c^l c*^m, min(k, p) = 0."""
    qi = Q.inv()
    a, as_, c, cs = 0, 1, 2, 3
    rules = {
        (c, a): [(qi, (a, c))],
        (cs, a): [(qi, (a, cs))],
        (cs, c): [(ONE, (c, cs))],
        (c, as_): [(Q, (as_, c))],
        (cs, as_): [(Q, (as_, cs))],
        (as_, a): [(ONE, ()), (-ONE, (c, cs))],
        (a, as_): [(ONE, ()), (-(Q * Q), (c, cs))],
    }
    return Presentation(["a", "a*", "c", "c*"], star=[1, 0, 3, 2], rules=rules, name="SUq2")


SUQ2 = su2_presentation()


class Poly:
    """Normalised element of the algebra; terms {word: Scalar}."""

    __slots__ = ("terms", "pr", "_hash")

    def __init__(self, terms=None, pr: Presentation = SUQ2, normalized=False):
        self.pr = pr
        self._hash = None
        if not terms:
            self.terms = {}
        elif normalized:
            self.terms = terms
        else:
            out = {}
            for w, c in terms.items():
                c = as_scalar(c)
                if not c:
                    continue
                for u, d in pr.nf_word(tuple(w)).items():
                    _acc(out, u, c * d)
            self.terms = out

    # constructors
    @classmethod
    def const(cls, c, pr=SUQ2):
        return cls({(): as_scalar(c)}, pr)

    @classmethod
    def gen(cls, name, pr=SUQ2):
        return cls({(pr.index[name],): ONE}, pr, normalized=True)

    @classmethod
    def word(cls, w, pr=SUQ2):
        return cls({tuple(w): ONE}, pr)

    def is_zero(self):
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def _wrap(self, x):
        if isinstance(x, Poly):
            return x
        return Poly.const(x, self.pr)

    def __add__(self, o):
        o = self._wrap(o)
        out = dict(self.terms)
        for w, c in o.terms.items():
            _acc(out, w, c)
        return Poly(out, self.pr, normalized=True)

    __radd__ = __add__

    def __neg__(self):
        return Poly({w: -c for w, c in self.terms.items()}, self.pr, normalized=True)

    def __sub__(self, o):
        return self + (-self._wrap(o))

    def __rsub__(self, o):
        return self._wrap(o) - self

    def scale(self, c):
        c = as_scalar(c)
        if not c:
            return Poly({}, self.pr, normalized=True)
        return Poly({w: c * d for w, d in self.terms.items()}, self.pr, normalized=True)

    def __mul__(self, o):
        if not isinstance(o, Poly):
            return self.scale(o)
        nf = self.pr.nf_word
        out = {}
        for u, c in self.terms.items():
            for v, d in o.terms.items():
                cd = c * d
                for w, e in nf(u + v).items():
                    _acc(out, w, cd * e)
        return Poly(out, self.pr, normalized=True)

    def __rmul__(self, o):
        return self.scale(o)

    def __pow__(self, k):
        r = Poly.const(1, self.pr)
        for _ in range(k):
            r = r * self
        return r

    def __eq__(self, o):
        if not isinstance(o, Poly):
            o = self._wrap(o)
        return self.terms == o.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    def map_coeffs(self, f):
        out = {}
        for w, c in self.terms.items():
            _acc(out, w, f(w, c))
        return Poly(out, self.pr, normalized=True)

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda t: term_key(t[0]))

    def scalar_value(self):
        """Return the Scalar if this is a constant, else None."""
        if not self.terms:
            return ZERO
        if list(self.terms) == [()]:
            return self.terms[()]
        return None

    def __str__(self):
        return format_poly(self)

    def __repr__(self):
        return f"Poly({format_poly(self)})"


def normal_form(p: Poly, pr: Presentation | None = None) -> Poly:
    pr = pr or p.pr
    return Poly(dict(p.terms), pr)


def normal_form_by_strategy(p: Poly, rng: random.Random) -> Poly:
    """Rewrite to normal form choosing a random redex at every step,
    bypassing the memoised leftmost strategy."""
    terms = dict(p.terms)
    while True:
        nxt = p.pr.reduce_once(terms, rng.choice)
        if nxt is None:
            return Poly(terms, p.pr, normalized=True)
        terms = nxt


def star(p: Poly) -> Poly:
    st = p.pr.star_table
    out = {}
    for w, c in p.terms.items():
        out[tuple(st[x] for x in reversed(w))] = c
    return Poly(out, p.pr)


@dataclass
class OverlapReport:
    overlaps: list = field(default_factory=list)
    failures: list = field(default_factory=list)

    @property
    def count(self):
        return len(self.overlaps)

    @property
    def confluent(self):
        return not self.failures


def check_confluence(pr: Presentation) -> OverlapReport:
    rep = OverlapReport()
    for (x, y) in pr.rules:
        for (y2, z) in pr.rules:
            if y2 != y:
                continue
            w = (x, y, z)
            rep.overlaps.append(w)
            left = {}
            for c, r in pr.rules[(x, y)]:
                _acc(left, r + (z,), c)
            right = {}
            for c, r in pr.rules[(y, z)]:
                _acc(right, (x,) + r, c)
            lp, rp = Poly(left, pr), Poly(right, pr)
            if lp != rp:
                rep.failures.append((w, lp - rp))
    return rep


def format_poly(p: Poly) -> str:
    if not p.terms:
        return "0"
    parts = []
    for i, (w, c) in enumerate(p.sorted_terms()):
        neg, body = scalar_parts(c)
        ws = p.pr.word_str(w)
        if body and ws:
            t = f"{body} {ws}"
        else:
            t = body or ws or "1"
        if i == 0:
            parts.append(("-" if neg else "") + t)
        else:
            parts.append((" - " if neg else " + ") + t)
    return "".join(parts)


# ---------------------------------------------------------------- parser

class ParseError(ValueError):
    def __init__(self, msg, pos):
        super().__init__(f"{msg} at position {pos}")
        self.pos = pos


def _tokenize(text, pr):
    toks = []
    i, n = 0, len(text)
    names = sorted(pr.names, key=len, reverse=True)
    while i < n:
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        if ch.isdigit():
            j = i
            while j < n and text[j].isdigit():
                j += 1
            toks.append(("NUM", int(text[i:j]), i))
            i = j
            continue
        if ch in "+-()^{}/":
            toks.append((ch, ch, i))
            i += 1
            continue
        if ch == "q" and "q" not in pr.index:
            toks.append(("Q", "q", i))
            i += 1
            continue
        for nm in names:
            if text.startswith(nm, i):
                # the longest name wins, so 'a*' beats 'a'
                toks.append(("GEN", nm, i))
                i += len(nm)
                break
        else:
            j = i
            while j < n and (text[j].isalnum() or text[j] in "*_"):
                j += 1
            raise ParseError(f"unknown generator {text[i:max(j, i + 1)]!r}", i)
    toks.append(("END", None, n))
    return toks


def _tok(t):
    return "end of input" if t[1] is None else repr(t[1])


def _unexpected(t):
    return f"unexpected {_tok(t)}"


class _Parser:
    def __init__(self, text, pr):
        self.pr = pr
        self.toks = _tokenize(text, pr)
        self.k = 0

    def peek(self):
        return self.toks[self.k]

    def take(self, kind=None):
        t = self.toks[self.k]
        if kind is not None and t[0] != kind:
            raise ParseError(f"expected {kind!r}, found {_tok(t)}", t[2])
        self.k += 1
        return t

    def expr(self):
        sign = 1
        if self.peek()[0] in "+-":
            sign = -1 if self.take()[0] == "-" else 1
        acc = self.term().scale(sign)
        while self.peek()[0] in "+-":
            op = self.take()[0]
            t = self.term()
            acc = acc + t if op == "+" else acc - t
        return acc

    def _starts_factor(self):
        return self.peek()[0] in ("NUM", "Q", "GEN", "(")

    def term(self):
        if not self._starts_factor():
            t = self.peek()
            raise ParseError(_unexpected(t), t[2])
        acc = self.power()
        while True:
            if self.peek()[0] == "/":
                pos = self.take()[2]
                d = self.power().scalar_value()
                if d is None:
                    raise ParseError("can only divide by a scalar", pos)
                if not d:
                    raise ParseError("division by zero", pos)
                acc = acc.scale(d.inv())
            elif self._starts_factor():
                acc = acc * self.power()
            else:
                return acc

    def exponent(self, allow_half):
        brace = False
        if self.peek()[0] == "{":
            self.take()
            brace = True
        sign = 1
        if self.peek()[0] == "-":
            self.take()
            sign = -1
        t = self.take("NUM")
        e = Fraction(sign * t[1])
        if self.peek()[0] == "/":
            pos = self.peek()[2]
            if not allow_half:
                raise ParseError("fractional exponent", pos)
            # '/2' inside an exponent means a half power
            save = self.k
            self.take()
            if self.peek()[0] == "NUM" and self.peek()[1] == 2:
                self.take()
                e = e / 2
            elif brace:
                raise ParseError("only /2 is allowed in an exponent", pos)
            else:
                self.k = save
        if brace:
            self.take("}")
        return e

    def power(self):
        t = self.take()
        kind = t[0]
        if kind == "NUM":
            base = Poly.const(t[1], self.pr)
        elif kind == "Q":
            if self.peek()[0] == "^":
                self.take()
                return Poly.const(q_pow(self.exponent(True)), self.pr)
            return Poly.const(Q, self.pr)
        elif kind == "GEN":
            base = Poly.gen(t[1], self.pr)
        elif kind == "(":
            base = self.expr()
            self.take(")")
        else:
            raise ParseError(_unexpected(t), t[2])
        if self.peek()[0] == "^":
            pos = self.take()[2]
            e = self.exponent(False)
            if e < 0:
                s = base.scalar_value()
                if s is None or not s:
                    raise ParseError("negative power of a non-scalar", pos)
                return Poly.const(s ** int(e), self.pr)
            return base ** int(e)
        return base


def parse(text: str, pr: Presentation = SUQ2) -> Poly:
    p = _Parser(text, pr)
    out = p.expr()
    t = p.peek()
    if t[0] != "END":
        raise ParseError(_unexpected(t), t[2])
    return out


def parse_scalar(text: str) -> Scalar:
    v = parse(text).scalar_value()
    if v is None:
        raise ParseError("expression is not a scalar", 0)
    return v


def random_poly(rng: random.Random, maxlen=3, nterms=3, pr=SUQ2, coeffs=(-2, -1, 1, 2, 3)) -> Poly:
    """A seeded random element: a few words with small q-monomial coefficients."""
    terms = {}
    for _ in range(rng.randint(1, nterms)):
        L = rng.randint(0, maxlen)
        w = tuple(rng.randrange(len(pr.names)) for _ in range(L))
        c = Scalar.s_power(2 * rng.randint(-1, 1), rng.choice(coeffs))
        terms[w] = terms.get(w, ZERO) + c
    return Poly(terms, pr)
