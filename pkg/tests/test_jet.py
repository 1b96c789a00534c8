import pytest
from hypothesis import given

from conftest import rng_of, seeds, weighted_of
from qcurve import jet as jt
from qcurve.bundles import DelConnection, DelbarConnection, nabla01_std, nabla10_canonical
from qcurve.ncalg import Poly, parse
from qcurve.scalar import Q, ZERO, qint, qint_by_quotient
from qcurve.printing import format_scalar

NS = range(-2, 3)


def jet_of(seed, n):
    return jt.JetElement(n, weighted_of(seed, n), weighted_of(seed + 7, n + 2, jt.eta_len(n, 3)))


def test_jet_element_weights():
    with pytest.raises(Exception):
        jt.JetElement(0, parse("a"))


@pytest.mark.parametrize("n", NS)
@given(seed=seeds)
def test_nabla_J_leibniz(n, seed):
    a, j = weighted_of(seed, 0), jet_of(seed, n)
    c01 = nabla01_std(n)
    assert jt.jet_leibniz_residual(c01, a, j).is_zero()
    assert jt.D_tilde_leibniz_residual(c01, a, j.eta).is_zero()
    assert jt.jet_left_action(Poly.const(1), j) == j


@pytest.mark.parametrize("n", NS)
@given(seed=seeds)
def test_perturbed_nabla_J_leibniz(n, seed):
    a, j = weighted_of(seed, 0), jet_of(seed, n)
    c01 = DelbarConnection(n, weighted_of(seed + 3, -2))
    assert jt.jet_leibniz_residual(c01, a, j).is_zero()


def test_nabla_J_at_eta_zero():
    c01 = nabla01_std(1)
    e = parse("a* c a*")
    assert jt.nabla_J(c01)(jt.JetElement(1, e)) == jt.JetForm(1, c01(e), jt.beta_tilde(c01, e))
    assert jt.D_tilde(c01, Poly()).is_zero()


@pytest.mark.parametrize("n", NS)
@given(seed=seeds)
def test_expansions(n, seed):
    a, e = weighted_of(seed, 0), weighted_of(seed + 1, n)
    c01 = nabla01_std(n)
    assert jt.D_E_expand_residual(c01, a, e).is_zero()
    assert jt.beta_expand_residual(c01, a, e).is_zero()


def test_beta_expansion_needs_the_extra_term():
    # dropping the dbar a ^ nabla_can e term breaks the expansion for non-constant data
    c01 = nabla01_std(0)
    assert not jt.beta_expand_residual(c01, parse("a c*"), parse("a* c"), corrected=False).is_zero()


@pytest.mark.parametrize("n", NS)
def test_exact_sequence(n):
    for r in jt.jet_sequence_check(n, 3):
        assert r.ok, (r.name, r.residual)


def test_pi_of_i_is_zero():
    assert jt.jet_pi(jt.jet_i(parse("a* c*"), 0)).is_zero()


@pytest.mark.parametrize("n", NS)
def test_functor(n):
    rng = rng_of(n + 100)
    samples = [(weighted_of(i, 0), jet_of(i, n)) for i in range(8)]
    phi = jt.RightMult(n, parse("a + 2 c"))
    psi = jt.RightMult(phi.m, parse("c"))
    for r in jt.functor_checks(phi, samples, psi):
        assert r.ok, (r.name, r.residual)
    for _, j in samples:
        assert jt.beta_identity_residual(phi, j.e).is_zero()
    for r in jt.functor_checks(jt.identity_map(n), samples):
        assert r.ok


def test_functor_rejects_non_holomorphic_map():
    phi = jt.RightMult(0, parse("a*"))
    assert not jt.intertwining_residual(phi, parse("a c*")).is_zero()


# [n]_q curvature of the canonical pair, read with forms on the left
@pytest.mark.parametrize("n", range(-4, 5))
def test_curvature_formula(n):
    kappa = jt.curvature_line_bundle(n)
    assert kappa == -(Q ** (1 - n)) * qint_by_quotient(n)
    assert (kappa == ZERO) == (n == 0)


def test_curvature_examples():
    assert format_scalar(jt.curvature_line_bundle(1)) == "-1"
    assert jt.curvature_line_bundle(2) == -(Q.inv() * qint(2))
    assert jt.curvature_line_bundle(0) == ZERO


def test_non_scalar_curvature_is_reported():
    with pytest.raises(jt.CurvatureError):
        jt.curvature_coefficient(DelConnection(1, parse("a* c*")), nabla01_std(1))


@pytest.mark.parametrize("n", NS)
@given(seed=seeds)
def test_two_routes_to_curvature(n, seed):
    e = weighted_of(seed, n)
    c10, c01 = DelConnection(n, weighted_of(seed + 1, 2)), nabla01_std(n)
    assert jt.total_curvature_expanded(c10, c01, e) == jt.total_curvature_direct(c10, c01, e)


@pytest.mark.parametrize("n", range(-3, 4))
def test_theorem_canonical(n):
    dz, tz = jt.theorem_instance(nabla10_canonical(n), nabla01_std(n), abs(n) + 2)
    assert dz == tz == (n == 0)


@given(seeds)
def test_theorem_perturbed(seed):
    g = weighted_of(seed, 2)
    dz, tz = jt.theorem_instance(DelConnection(0, g), nabla01_std(0), 3)
    assert dz == tz


@pytest.mark.parametrize("n", [-1, 0, 2])
def test_splitting(n):
    samples = [(weighted_of(i, 0), weighted_of(i + 50, n)) for i in range(6)]
    for r in jt.splitting_checks(DelConnection(n, parse("a* c*")), nabla01_std(n), samples):
        assert r.ok, (r.name, r.residual)
