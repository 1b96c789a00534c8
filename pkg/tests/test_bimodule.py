import pytest
from hypothesis import given

from conftest import seeds, weighted_of
from qcurve import bimodule as bm
from qcurve import jet as jt
from qcurve.bundles import DelConnection, DelbarConnection
from qcurve.ncalg import Poly, parse
from qcurve.scalar import ONE, Q
from qcurve.su2 import xminus, xplus

NS = range(-2, 3)


def samples(n, k=6, base=0):
    return [(weighted_of(base + i, n, abs(n) + 2), weighted_of(base + i + 90, 0)) for i in range(k)]


def nonholomorphic(seed, n):
    while True:
        e = weighted_of(seed, n, abs(n) + 2)
        if xminus(e):
            return e
        seed += 1


@pytest.mark.parametrize("n", NS)
def test_extraction(n):
    data = bm.extracted_data(n, samples(n), samples(n, base=40))
    assert data.sigmaBar.twist == ONE and data.sigmaE.twist == ONE
    assert data == bm.canonical_data(n)
    assert data.psi0.twist == Q ** (-n - 2)


@pytest.mark.parametrize("n", NS)
def test_extraction_rejects_non_bimodule_connections(n):
    with pytest.raises(bm.NotBimoduleError):
        bm.sigma_bar_from_connection(DelbarConnection(n, bm.non_bimodule_perturbation(n, -1)), samples(n))
    with pytest.raises(bm.NotBimoduleError):
        bm.sigma_from_connection(DelConnection(n, bm.non_bimodule_perturbation(n, +1)), samples(n))


@pytest.mark.parametrize("maxlen", [2, 3])
def test_delbar_surjective(maxlen):
    assert bm.delbar_surjective(maxlen)


@pytest.mark.parametrize("n", NS)
@given(seed=seeds)
def test_sigma_J(n, seed):
    data = bm.canonical_data(n)
    a, b, c = weighted_of(seed, 0), weighted_of(seed + 1, 0), weighted_of(seed + 2, 0)
    e = weighted_of(seed + 3, n)
    j = jt.JetElement(n, e, weighted_of(seed + 4, n + 2, abs(n + 2)))
    assert bm.sigma_left_residual(data, b, e, a).is_zero()
    assert bm.lift_residual(data, j, b).is_zero()
    assert bm.sigma_J_left_residual(data, a, j, b).is_zero()
    assert bm.sigma_J_right_residual(data, j, b, c).is_zero()
    # right-linearity in pair coordinates fails exactly where compatibility does
    assert bm.sigma_right_residual(data, e, a, b) == bm.compatibility_residual(data, e, a, b)


@pytest.mark.parametrize("n", NS)
def test_broken_sigma_E_is_detected(n):
    data = bm.canonical_data(n)
    broken = bm.BimoduleData(data.conn01, data.conn10, data.sigmaBar, data.sigmaE.perturbed(Q))
    j = jt.JetElement(n, nonholomorphic(n + 11, n))
    b = parse("a c*")
    assert not bm.lift_residual(broken, j, b).is_zero()
    # a holomorphic e cannot see the defect
    if n <= 0:
        h = parse("a") ** (-n) if n else Poly.const(1)
        assert bm.lift_residual(broken, jt.JetElement(n, h), b).is_zero()


@pytest.mark.parametrize("n", NS)
def test_compatibility_fails_for_canonical_data(n):
    # e (X+a X-b - q^2 X-a X+b) is the classical d a ^ dbar b - dbar a ^ d b up to sign
    data = bm.canonical_data(n)
    e = weighted_of(3, n)
    a, b = parse("a c*"), parse("c a*")
    r = bm.compatibility_residual(data, e, a, b)
    assert r == bm.compatibility_reduced(e, a, b, n).scale(Q ** (-n - 2))
    assert not r.is_zero()


@pytest.mark.parametrize("n", NS)
def test_psi_extension(n):
    data = bm.canonical_data(n)
    ps = [(weighted_of(i, 0), jt.JetElement(n, weighted_of(i + 1, n), weighted_of(i + 2, n + 2, abs(n + 2))),
           weighted_of(i + 3, -2)) for i in range(5)]
    for psi in (data.psi0, data.psi0.perturbed(0)):
        for r in bm.extend_psi_checks(psi, data, ps):
            assert r.ok, (r.name, r.residual)


@pytest.mark.parametrize("n", NS)
@given(seed=seeds)
def test_psi_nabla_leibniz(n, seed):
    data = bm.canonical_data(n)
    P, b = weighted_of(seed, n - 2, abs(n - 2)), weighted_of(seed + 1, 0)
    assert bm.psi_nabla_leibniz_residual(data.conn10, data.sigmaE, P, b).is_zero()


@pytest.mark.parametrize("n", NS)
def test_total_connection_right_leibniz(n):
    data = bm.canonical_data(n)
    assert bm.total_connection_checks(data.conn10, data.conn01, data.sigmaE, data.sigmaBar, samples(n)) == (True, True, True)
    pert = DelConnection(n, bm.non_bimodule_perturbation(n, +1))
    agree, h10, htot = bm.total_connection_checks(pert, data.conn01, data.sigmaE, data.sigmaBar, samples(n))
    assert agree and not h10 and not htot


@given(seeds)
def test_diagram(seed):
    data = bm.canonical_data(0)
    a, e = weighted_of(seed, 0), weighted_of(seed + 1, 0)
    assert bm.diagram_residual(data, e, a, corrected=True).is_zero()
    assert bm.diagram_residual(data, Poly.const(1), a).is_zero()
    assert bm.curvature_right_defect_residual(data, e, a).is_zero()


def test_diagram_fails_without_cross_terms():
    data = bm.canonical_data(0)
    e, a = parse("a* c"), parse("a c*")
    assert not bm.cross_terms(data, e, a).is_zero()
    assert not bm.diagram_residual(data, e, a).is_zero()


def test_phi2_normalisation():
    for n in NS:
        assert bm.phi2_twist(n) == Q * Q
        assert bm.wedge_pm(n) * bm.phi2_twist(n) == -jt.mu_factor(n)
