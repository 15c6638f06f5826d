from fractions import Fraction

import pytest

from nakajima_hall.coeffs import LaurentPoly
from nakajima_hall.dynkin import DynkinQuiver
from nakajima_hall.hallnum import (
    BudgetExceeded,
    complex_category,
    hall_number,
    hall_numbers,
    hall_polynomial,
    hall_polynomials,
    oracle_hall_number,
)

A1 = DynkinQuiver.linear_a(1)
A2 = DynkinQuiver.from_arrows([(1, 2)])
q = LaurentPoly.monomial(1)

P1, SP1, K0, K1 = ([int(i == j) for i in range(4)] for j in range(4))


def test_a1_acyclic_middle_term_polynomial():
    assert hall_polynomial(A1, 2, SP1, P1, K1) == q - 1


def test_a1_split_term_polynomial():
    split = [1, 1, 0, 0]
    assert hall_polynomial(A1, 2, SP1, P1, split) == LaurentPoly.constant(1)


@pytest.mark.parametrize("p", [2, 3])
def test_a1_matches_oracle(p):
    ccat = complex_category(A1, 2, p)
    for N in (P1, SP1, K0, K1):
        for M in (P1, SP1, K0, K1):
            for L, val in hall_numbers(ccat, N, M).items():
                assert oracle_hall_number(ccat, N, M, list(L)) == val


def test_a2_matches_oracle():
    ccat = complex_category(A2, 2, 2)
    N = [int(i == 0) for i in range(10)]
    M = [int(i == 3) for i in range(10)]
    for L, val in hall_numbers(ccat, N, M).items():
        assert oracle_hall_number(ccat, N, M, list(L)) == val


@pytest.mark.parametrize("p", [2, 3, 5])
def test_total_mass(p):
    ccat = complex_category(A2, 2, p)
    N = [1, 0, 0, 1, 0, 0, 0, 0, 0, 0]
    M = [0, 1, 0, 0, 1, 0, 0, 0, 0, 0]
    counts, h, e = hall_numbers(ccat, N, M, return_counts=True)
    assert sum(counts.values()) == p ** e
    assert sum(hall_numbers(ccat, N, M).values()) == Fraction(p ** e, p ** h)


def test_absent_middle_term_is_zero():
    ccat = complex_category(A1, 2, 3)
    assert hall_number(ccat, SP1, P1, [2, 0, 0, 0]) == 0


def test_budget():
    ccat = complex_category(A1, 2, 3)
    with pytest.raises(BudgetExceeded):
        hall_numbers(ccat, SP1, P1, budget=1)


def test_held_out_prime_recorded():
    res = hall_polynomials(A1, 2, SP1, P1)
    assert res.held_out == res.primes[-1]
    assert res.to_json()["ext_dim"] == 1
