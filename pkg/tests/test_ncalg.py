import pytest
from hypothesis import given

from conftest import poly_of, rng_of, seeds
from qcurve.ncalg import (SUQ2, ParseError, Poly, Presentation, check_confluence, normal_form_by_strategy,
                          parse, star)
from qcurve.scalar import ONE, Q, S


def test_rewrite_examples():
    assert str(parse("c a")) == "q^-1 a c"
    assert parse("a* a + c c*") == Poly.const(1)
    assert parse("1") == Poly.const(1)


def test_su2_presentation_is_confluent():
    r = check_confluence(SUQ2)
    assert len(SUQ2.rules) == 7
    assert r.count == 8 and r.confluent


def test_free_and_commuting_presentations():
    assert check_confluence(Presentation(["x", "y"])).count == 0
    comm = Presentation(["a", "b", "c"], rules={("b", "a"): [(1, (0, 1))], ("c", "b"): [(1, (1, 2))],
                                                 ("c", "a"): [(1, (0, 2))]})
    r = check_confluence(comm)
    assert r.count == 1 and r.confluent


def test_broken_presentation_is_caught():
    # cba -> ca one way and -> ba -> a the other
    bad = Presentation(["a", "b", "c"], rules={("b", "a"): [(1, (0,))], ("c", "b"): [(1, (1,))]})
    assert not check_confluence(bad).confluent


def test_star():
    assert star(parse("a")) == parse("a*")
    assert star(parse("q a c")) == parse("q^2 a* c*")
    x = parse("a c c*")
    assert star(star(x)) == x


def test_parse():
    assert len(parse("a* c - q^2 c a").terms) == 2
    assert parse("(a + c)^2") == parse("a a + a c + c a + c c")
    assert parse("q^{1/2} a") == Poly.gen("a").scale(S)
    assert parse("a / q") == Poly.gen("a").scale(Q.inv())


@pytest.mark.parametrize("text,pos", [("a +", 3), ("a b", 2), ("(a", 2), ("a ^ x", 4)])
def test_parse_errors_carry_position(text, pos):
    with pytest.raises(ParseError) as ex:
        parse(text)
    assert ex.value.pos == pos


@given(seeds, seeds, seeds)
def test_associativity(s1, s2, s3):
    x, y, z = poly_of(s1, 2), poly_of(s2, 2), poly_of(s3, 2)
    assert (x * y) * z == x * (y * z)


@given(seeds)
def test_normal_form_independent_of_strategy(seed):
    p = poly_of(seed, 4)
    assert normal_form_by_strategy(Poly(p.terms, normalized=True), rng_of(seed)) == p


@given(seeds, seeds)
def test_star_antimultiplicative(s1, s2):
    x, y = poly_of(s1, 2), poly_of(s2, 2)
    assert star(x * y) == star(y) * star(x)


@given(seeds)
def test_normal_words_are_irreducible(seed):
    for w in poly_of(seed, 4).terms:
        assert SUQ2.is_irreducible(w)


def test_determinant_relation():
    assert parse("a a* + q^2 c c*") == Poly.const(1)
    assert parse("a* a + c* c") == Poly.const(ONE)


def test_pbw_word_count():
    # a^k a*^p c^l c*^m with min(k, p) = 0, enumerated directly
    for L in range(5):
        direct = sum(1 for k in range(L + 1) for p in range(L + 1 - k) for l in range(L + 1 - k - p)
                     if min(k, p) == 0)
        assert len(list(SUQ2.irreducible_words(L))) == direct
