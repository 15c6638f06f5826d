import numpy as np
from hypothesis import given, settings
from hypothesis import strategies as st

from nakajima_hall import fp

matrices = st.integers(1, 5).flatmap(
    lambda r: st.integers(1, 5).flatmap(
        lambda c: st.lists(st.lists(st.integers(0, 6), min_size=c, max_size=c), min_size=r, max_size=r)))


def test_primes():
    assert [p for p in range(20) if fp.is_prime(p)] == [2, 3, 5, 7, 11, 13, 17, 19]
    gen = fp.primes_from(10)
    assert [next(gen) for _ in range(3)] == [11, 13, 17]


@settings(max_examples=60)
@given(matrices)
def test_rank_nullity(rows):
    a = np.array(rows) % 7
    ns = fp.nullspace(a, 7, ncols=a.shape[1])
    assert fp.rank(a, 7) + ns.shape[0] == a.shape[1]
    assert not np.any((a @ ns.T) % 7)


@settings(max_examples=60)
@given(matrices)
def test_solve_consistent(rows):
    a = np.array(rows) % 5
    x = np.arange(a.shape[1]) % 5
    b = (a @ x) % 5
    x0, _ = fp.solve(a, b, 5)
    assert np.array_equal((a @ x0) % 5, b)


def test_inverse_and_complement():
    a = np.array([[1, 2], [3, 4]])
    inv = fp.inverse(a, 7)
    assert np.array_equal((a @ inv) % 7, np.eye(2, dtype=np.int64))
    comp = fp.complement_basis(np.array([[1, 1, 0]]), 3, 3)
    assert comp.shape == (2, 3)
    assert fp.rank(np.concatenate([[[1, 1, 0]], comp]), 3) == 3


def test_batched_rank():
    stack = np.array([[[1, 0], [0, 1]], [[1, 1], [1, 1]], [[0, 0], [0, 0]]])
    assert list(fp.batched_rank(stack, 3)) == [2, 1, 0]


def test_rational_helpers():
    assert fp.rational_rank([[1, 2], [2, 4]]) == 1
    assert fp.rational_solve([[2, 0], [0, 3]], [1, 1]) == [__import__("fractions").Fraction(1, 2),
                                                          __import__("fractions").Fraction(1, 3)]
