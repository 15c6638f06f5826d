import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from nakajima_hall.dynkin import DynkinQuiver, build_module_category
from nakajima_hall.hallnum import complex_category
from nakajima_hall.twocomp import (
    ComplexCategory,
    PeriodicComplex,
    ext_space,
    hom_dim,
    middle_term,
)

A1 = DynkinQuiver.linear_a(1)
A2 = DynkinQuiver.from_arrows([(1, 2)])
A3 = DynkinQuiver.linear_a(3)
D4 = DynkinQuiver.from_arrows([(1, 2), (3, 2), (4, 2)])


@pytest.mark.parametrize("quiver,n,count", [
    (A2, 2, 10), (A2, 3, 15), (A3, 2, 18), (A3, 3, 27), (D4, 2, 32), (D4, 3, 48)])
def test_indecomposable_counts(quiver, n, count):
    ccat = ComplexCategory(build_module_category(quiver, 2), n)
    assert len(ccat) == count
    acyclic = [x for x in ccat.indecs if x.kind == "acyclic"]
    assert len(acyclic) == n * quiver.n


def test_a1_hom_and_ext_tables():
    ccat = complex_category(A1, 2, 3)
    assert [x.name for x in ccat.indecs] == ["P1", "ΣP1", "K1[0]", "K1[1]"]
    assert ccat.hom_matrix.tolist() == [[1, 0, 1, 0], [0, 1, 0, 1], [0, 1, 1, 1], [1, 0, 1, 1]]
    assert ccat.ext_matrix.tolist() == [[0, 1, 0, 0], [1, 0, 0, 0], [0, 0, 0, 0], [0, 0, 0, 0]]


def test_acyclics_have_no_self_extensions():
    ccat = complex_category(A2, 2, 3)
    for i, x in enumerate(ccat.indecs):
        if x.kind == "acyclic":
            assert not ccat.ext_matrix[i].any() and not ccat.ext_matrix[:, i].any()


def test_nonsplit_extension_is_acyclic():
    ccat = complex_category(A1, 2, 3)
    N, M = ccat.build([1, 0, 0, 0]), ccat.build([0, 1, 0, 0])
    ext = ext_space(M, N)
    assert ext.dim == 1
    L = middle_term(M, N, ext.representatives[0], ext.space)
    L.validate()
    mult = list(ccat.decompose(L))
    assert sum(mult[:2]) == 0 and sum(mult[2:]) == 1


def test_split_extension_is_direct_sum():
    ccat = complex_category(A2, 2, 3)
    N, M = ccat.build([1] + [0] * 9), ccat.build([0, 1] + [0] * 8)
    ext = ext_space(M, N)
    L = middle_term(M, N, np.zeros(ext.space.size, dtype=np.int64), ext.space)
    assert list(ccat.decompose(L)) == [1, 1] + [0] * 8


@settings(max_examples=25, deadline=None)
@given(st.lists(st.integers(0, 2), min_size=10, max_size=10))
def test_decomposition_roundtrip(mult):
    ccat = complex_category(A2, 2, 3)
    L = ccat.build(mult)
    assert list(ccat.decompose(L)) == mult


@settings(max_examples=25, deadline=None)
@given(st.lists(st.integers(0, 1), min_size=10, max_size=10),
       st.lists(st.integers(0, 1), min_size=10, max_size=10))
def test_hom_is_bilinear(a, b):
    ccat = complex_category(A2, 2, 3)
    H = ccat.hom_matrix
    assert hom_dim(ccat.build(a), ccat.build(b)) == np.array(a) @ H @ np.array(b)


def test_json_roundtrip():
    ccat = complex_category(A2, 2, 3)
    X = ccat.build([1, 0, 1, 0, 0, 0, 1, 0, 0, 0])
    Y = PeriodicComplex.from_json(A2, X.to_json())
    assert all(np.array_equal(X.d(i), Y.d(i)) for i in range(2))
