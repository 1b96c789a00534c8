import pytest
from hypothesis import given

from conftest import poly_of, seeds
from qcurve.ncalg import parse
from qcurve.scalar import Q, S
from qcurve.su2 import act, check_relations, is_homogeneous, k2, project_weight, weights_of, word_weight, xminus, xplus

# with K acting by s^weight and a, c of weight -1, E raises weight and sends a to
# -q c*; this is the pairing that makes the action respect the relations
TABLE = {
    ("E", "a"): "-q c*", ("E", "a*"): "0", ("E", "c"): "a*", ("E", "c*"): "0",
    ("F", "a"): "0", ("F", "a*"): "c", ("F", "c"): "0", ("F", "c*"): "-q^-1 a",
    ("K", "a"): "q^{-1/2} a", ("K", "a*"): "q^{1/2} a*", ("K", "c"): "q^{-1/2} c", ("K", "c*"): "q^{1/2} c*",
}


@pytest.mark.parametrize("key", sorted(TABLE))
def test_generator_table(key):
    h, g = key
    assert act(h, parse(g)) == parse(TABLE[key])


def test_action_respects_relations():
    assert check_relations() == []


def test_small_examples():
    assert act("K", parse("a c")) == parse("q^-1 a c")
    assert act("E", parse("1")) == parse("0")
    assert xplus(parse("a")) == parse("-q c*")
    assert xminus(parse("a")) == parse("0")
    assert xminus(parse("1")) == parse("0")


def test_weights():
    assert word_weight((0, 3)) == 0
    assert weights_of(parse("a a")) == {-2}
    assert project_weight(parse("a + a c*"), -1) == parse("a")
    assert is_homogeneous(parse("a c*"), 0)


@given(seeds, seeds)
def test_twisted_leibniz(s1, s2):
    x, y = poly_of(s1, 3), poly_of(s2, 3)
    for h in ("E", "F"):
        assert act(h, x * y) == act(h, x) * act("K", y) + act("Kinv", x) * act(h, y)


@given(seeds, seeds)
def test_k_multiplicative(s1, s2):
    x, y = poly_of(s1, 3), poly_of(s2, 3)
    assert act("K", x * y) == act("K", x) * act("K", y)
    assert act("Kinv", act("K", x)) == x


@given(seeds)
def test_commutator(seed):
    x = poly_of(seed, 3)
    lhs = act("E", act("F", x)) - act("F", act("E", x))
    rhs = (act("K", act("K", x)) - act("Kinv", act("Kinv", x))).scale((Q - Q.inv()).inv())
    assert lhs == rhs


@given(seeds)
def test_k2_is_q_to_the_weight(seed):
    x = poly_of(seed, 3)
    for w in weights_of(x):
        part = project_weight(x, w)
        assert k2(part) == part.scale(Q ** w)


@given(seeds)
def test_x_operators_shift_weight(seed):
    x = poly_of(seed, 3)
    for w in weights_of(x):
        part = project_weight(x, w)
        assert not xplus(part) or weights_of(xplus(part)) == {w + 2}
        assert not xminus(part) or weights_of(xminus(part)) == {w - 2}
