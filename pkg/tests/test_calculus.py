from hypothesis import given

from conftest import seeds, weighted_of
from qcurve.calculus import (LAMBDA, W_MINUS, W_PLUS, Form, Tagged, check_homogeneous, d, dell, delbar, mu,
                             mu_inv, push_right, solve_wedge_constant, wedge)
from qcurve.ncalg import Poly, parse
from qcurve.scalar import Q


def fn(text):
    return Form.fn(parse(text))


def test_push_right():
    assert push_right([W_MINUS, fn("a c*")]) == Form(cm=parse("a c*"))
    # K^2 acts on a by q^-1
    assert push_right([W_MINUS, fn("a")]) == Form(cm=parse("q^-1 a"))
    assert push_right([W_PLUS, fn("1")]) == W_PLUS


def test_wedge_table():
    assert wedge(W_MINUS, W_PLUS) == Form(cmp=Poly.const(1))
    assert wedge(W_PLUS, W_MINUS) == Form(cmp=Poly.const(LAMBDA))
    assert wedge(W_MINUS, W_MINUS).is_zero()


def test_wedge_constant_is_recovered():
    assert LAMBDA == -(Q * Q)
    assert solve_wedge_constant() == LAMBDA


def test_derivative_examples():
    assert delbar(fn("a")).is_zero()
    assert dell(fn("a")) == Form(cp=parse("-q c*"))
    assert d(fn("1")).is_zero()
    assert d(d(fn("a c*"))).is_zero()


def test_mu():
    one = Tagged(("01", "10"), 0, Poly.const(1))
    assert mu(one).value == Poly.const(Q * Q)
    x = Tagged(("01", "10"), 0, parse("a c*"))
    assert mu(x).value == parse("q^2 a c*")


@given(seeds)
def test_mu_roundtrip(seed):
    for n in (-2, 0, 1):
        x = Tagged(("01", "10", "E"), n, weighted_of(seed, n))
        assert mu_inv(mu(x)) == x
        assert check_homogeneous(mu(x))


@given(seeds)
def test_d_squared(seed):
    f = Form.fn(weighted_of(seed, 0, 4))
    assert d(d(f)).is_zero()
    x = Form(cm=weighted_of(seed, -2), cp=weighted_of(seed + 1, 2))
    assert d(d(x)).is_zero()


@given(seeds, seeds)
def test_leibniz(s1, s2):
    f, g = Form.fn(weighted_of(s1, 0)), Form.fn(weighted_of(s2, 0))
    assert d(wedge(f, g)) == wedge(d(f), g) + wedge(f, d(g))
    x = Form(cm=weighted_of(s2, -2), cp=weighted_of(s1, 2))
    assert d(wedge(f, x)) == wedge(d(f), x) + wedge(f, d(x))


@given(seeds)
def test_bidegree(seed):
    f = Form.fn(weighted_of(seed, 0, 4))
    assert (dell(delbar(f)) + delbar(dell(f))).is_zero()
    db = delbar(f)
    assert db.cp.is_zero() and db.cmp.is_zero()
    assert d(f) == dell(f) + delbar(f)


@given(seeds, seeds, seeds)
def test_wedge_associative(s1, s2, s3):
    x = Form(c0=weighted_of(s1, 0), cm=weighted_of(s2, -2))
    y = Form(c0=weighted_of(s2, 0), cp=weighted_of(s3, 2))
    z = Form(c0=weighted_of(s3, 0))
    assert wedge(wedge(x, y), z) == wedge(x, wedge(y, z))
