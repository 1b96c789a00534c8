import pytest
from hypothesis import given

from conftest import rng_of, seeds, weighted_of
from qcurve.bundles import (DelbarConnection, DelConnection, WeightError, collapse, direct_sum,
                            holomorphic_sections, leibniz01_residual, leibniz10_residual, nabla01_std,
                            nabla10_canonical, partition_of_unity, restrict_connection, total_curvature,
                            uncollapse, weight_basis)
from qcurve.linalg import kernel_polys
from qcurve.ncalg import Poly, parse

NS = range(-3, 4)


def test_connection_examples():
    assert nabla01_std(1)(parse("a*")) == parse("c")
    assert nabla01_std(-1)(parse("a")).is_zero()
    assert nabla01_std(0)(Poly.const(1)).is_zero()
    assert nabla10_canonical(-1)(parse("a")) == parse("-q c*")
    assert nabla10_canonical(1)(parse("a*")).is_zero()


def test_perturbation_weight_is_enforced():
    with pytest.raises(WeightError):
        DelbarConnection(0, parse("a*"))
    with pytest.raises(WeightError):
        DelConnection(0, parse("a c"))


@pytest.mark.parametrize("n", NS)
@given(seed=seeds)
def test_leibniz(n, seed):
    a, e = weighted_of(seed, 0), weighted_of(seed + 1, n)
    g01, g10 = weighted_of(seed + 2, -2), weighted_of(seed + 3, 2)
    for c in (nabla01_std(n), DelbarConnection(n, g01)):
        assert leibniz01_residual(c, a, e).is_zero()
    for c in (nabla10_canonical(n), DelConnection(n, g10)):
        assert leibniz10_residual(c, a, e).is_zero()


def test_constants_are_the_only_functions_in_the_kernel():
    H = holomorphic_sections(nabla01_std(0), 6)
    assert H == [Poly.const(1)]


# kernel dimensions at maxlen 4, computed by exact elimination and frozen
@pytest.mark.parametrize("n,dim", [(-2, 3), (-1, 2), (0, 1), (1, 0), (2, 0)])
def test_section_dimensions(n, dim):
    assert len(holomorphic_sections(nabla01_std(n), 4)) == dim


@pytest.mark.parametrize("n", [-2, -1, 0])
def test_sections_stable_in_maxlen(n):
    small = holomorphic_sections(nabla01_std(n), abs(n) + 1)
    big = holomorphic_sections(nabla01_std(n), abs(n) + 3)
    assert len(small) == len(big) == 1 - n
    # every small kernel vector is still in the big kernel
    assert all(nabla01_std(n)(h).is_zero() for h in small)


def test_zero_map_kernel_is_everything():
    basis = weight_basis(0, 2)
    assert len(kernel_polys(lambda p: Poly(), basis)) == len(basis)


def test_direct_sum():
    ds = direct_sum([(nabla01_std(1), nabla10_canonical(1)), (nabla01_std(-1), nabla10_canonical(-1))])
    es = (parse("a*"), parse("a"))
    assert ds.apply01(es) == (parse("c"), Poly())
    assert ds.apply10(es) == (Poly(), parse("-q c*"))
    for i, (c01, c10) in enumerate([(nabla01_std(1), nabla10_canonical(1)),
                                    (nabla01_std(-1), nabla10_canonical(-1))]):
        assert restrict_connection(ds, i) == (c01, c10)
    flat = direct_sum([(nabla01_std(0), nabla10_canonical(0))] * 2)
    assert all(t.is_zero() for t in flat.curvature((parse("a c*"), parse("c c*"))))
    with pytest.raises(IndexError):
        restrict_connection(ds, 2)


@given(seeds)
def test_curvature_left_linear(seed):
    for n in (-2, 0, 1):
        a, e = weighted_of(seed, 0), weighted_of(seed + 1, n)
        c10, c01 = DelConnection(n, weighted_of(seed + 2, 2)), nabla01_std(n)
        assert total_curvature(c10, c01, a * e) == a * total_curvature(c10, c01, e)


@pytest.mark.parametrize("n", NS)
def test_partition_of_unity(n):
    total = Poly()
    for u, v in partition_of_unity(n):
        total = total + u * v
    assert total == Poly.const(1)


@pytest.mark.parametrize("kind,shift", [("01", -2), ("10", 2), ("11", 0)])
@given(seed=seeds)
def test_collapse_roundtrip(kind, shift, seed):
    for n in (-2, 0, 1):
        P = weighted_of(seed, n + shift)
        assert collapse(uncollapse(P, n, kind), n, kind) == P


def test_random_weighted_widens():
    p = weighted_of(0, 4, maxlen=2)
    assert all(len(w) >= 4 for w in p.terms)
