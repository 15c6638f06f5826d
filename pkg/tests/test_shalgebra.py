import numpy as np
import pytest

from nakajima_hall.coeffs import RatFunc
from nakajima_hall.dynkin import DynkinQuiver
from nakajima_hall.shalgebra import (
    HallAlgebra,
    a_matrix,
    cartan,
    localize,
    product,
    qg_generators,
    relations_report,
    specialize_q1,
    verify_relations,
)

A1 = DynkinQuiver.linear_a(1)
A2 = DynkinQuiver.from_arrows([(1, 2)])
P1, SP1 = (1, 0, 0, 0), (0, 1, 0, 0)


@pytest.fixture(scope="module")
def a1_generic():
    return HallAlgebra(A1, "generic")


@pytest.mark.parametrize("orientation,first,second", [
    ("quotient_first", P1, SP1), ("sub_first", SP1, P1)])
def test_a1_product_example(orientation, first, second):
    alg = HallAlgebra(A1, "generic", orientation=orientation, twisted=False, quotient=False)
    t = RatFunc.t()
    assert product(alg, first, second) == {(0, 0, 0, 1): t * t - 1, (1, 1, 0, 0): RatFunc.make(1)}


def test_cartan_and_ext_matrix():
    alg = HallAlgebra(A2, "fixed", p=3)
    assert cartan(A2).tolist() == [[2, -1], [-1, 2]]
    a = a_matrix(alg)
    assert int(a.sum()) == 1 and a.trace() == 0


def test_associativity_a1(a1_generic):
    alg = a1_generic
    x, y, z = (alg.class_element(v) for v in (P1, SP1, (1, 1, 0, 0)))
    assert (x * y) * z == x * (y * z)


def test_acyclic_word_inverse(a1_generic):
    alg = a1_generic
    k = alg.kword([1, 0])
    kinv = alg.kword([-1, 0])
    assert k * kinv == alg.one()


def test_quotient_identifies_shifted_acyclic(a1_generic):
    alg = a1_generic
    pair = alg.kword([1, 1])
    assert pair == alg.one()


@pytest.mark.parametrize("quiver", [A1, A2])
@pytest.mark.parametrize("p", [2, 3, 5, 7])
def test_relations_fixed_prime(quiver, p):
    rep = verify_relations(HallAlgebra(quiver, "fixed", p=p))
    assert all(r["pass"] for r in rep), [r["relation"] for r in rep if not r["pass"]]


@pytest.mark.parametrize("quiver", [A1, A2])
def test_relations_generic(quiver):
    assert relations_report(HallAlgebra(quiver, "generic"))["all_pass"]


@pytest.mark.parametrize("quiver", [A1, A2])
def test_exactly_one_sign_works(quiver):
    alg = HallAlgebra(quiver, "fixed", p=3)
    verdict = {s: all(r["pass"] for r in verify_relations(alg, f_sign=s)) for s in (1, -1)}
    assert verdict == {1: False, -1: True}


def test_commutator_fails_with_unscaled_e():
    alg = HallAlgebra(A1, "fixed", p=3)
    rep = verify_relations(alg, e_coeff="plain")
    assert not all(r["pass"] for r in rep)


def test_q1_specialization_integral(a1_generic):
    g = qg_generators(a1_generic)
    vals = specialize_q1(g[("K", 1)] * g[("Kinv", 1)])
    assert list(vals.values()) == [1]
    elem = localize(a1_generic, (1, 1, 0, 0))
    assert all(v == int(v) for v in specialize_q1(elem).values())


def test_bad_arguments():
    with pytest.raises(ValueError):
        HallAlgebra(A1, "symbolic")
    with pytest.raises(ValueError):
        HallAlgebra(A1, orientation="sideways")
    with pytest.raises(ValueError):
        qg_generators(HallAlgebra(A1, "fixed", p=2, n=3))
