import numpy as np
import pytest

from nakajima_hall.dynkin import DerivedObject
from nakajima_hall.smod import is_isomorphic, is_projective
from nakajima_hall.strat import Stratifier, is_indecomposable, random_module


@pytest.fixture(scope="module")
def st2(exa2_small):
    return Stratifier(exa2_small)


@pytest.fixture(scope="module")
def st1(exa1_small):
    return Stratifier(exa1_small)


@pytest.mark.parametrize("which", ["st2", "st1"])
def test_restriction_of_right_extension_is_identity(which, request):
    st = request.getfixturevalue(which)
    rng = np.random.default_rng(1)
    for _ in range(10):
        M = random_module(st.S, rng, st.p, gens=2)
        assert is_isomorphic(st.res(st.kan_right(M)), M)
        assert is_isomorphic(st.res(st.kan_left(M)), M)


def test_right_extension_of_restricted_representable(st2):
    for x in st2.plain:
        assert is_isomorphic(st2.kan_right(st2.res_rep(x)), st2.r_representable(x))


def test_ck_of_restricted_representables(st2):
    P = st2.P
    for x in st2.plain:
        assert st2.ck(st2.res_rep(x)) == tuple(int(k == P.local(x)) for k in range(P.n))
    for v in st2.sigma:
        assert st2.minimal(st2.res_rep(v))


def test_restricted_representables_are_gorenstein_projective(st2):
    for M in st2.gpr_indecomposables():
        assert is_indecomposable(M)
        assert st2.gorenstein_check(M)


def test_simple_at_sigma_vertex_not_gorenstein_projective(st2):
    cat = st2.oq.cat
    s = st2.s_simple(st2.sigma_local(DerivedObject(cat.simple(1), 0)))
    assert not st2.gorenstein_check(s)
    assert not is_projective(st2.kan_right(s))[0]


def test_strata_separate_restricted_representables(st2):
    labels = [st2.stratum(st2.res_rep(x)) for x in st2.plain]
    assert len(set(labels)) == len(labels)


def test_intermediate_extension_is_bistable(st2):
    rng = np.random.default_rng(3)
    for _ in range(5):
        M = random_module(st2.S, rng, st2.p)
        K = st2.klr(M)
        assert st2.stable(K) and st2.costable(K)


@pytest.mark.parametrize("i", [1, 2])
def test_qin_modules_and_cartan_filtration(st2, i):
    qd = st2.qin_data(i)
    assert qd.candidates == 1 and qd.candidates_prime == 1
    assert st2.cartan_filtration_check(i)


@pytest.mark.parametrize("i", [1, 2])
def test_generator_statements(st2, i):
    seq = st2.generators_sequence(i)
    assert seq["applicable"] and seq["middle_term_found"]
    assert all(v for k, v in st2.transversal_generator(i).items() if k != "vertex")


def test_cyclic_example_generators_not_applicable(st1):
    assert not any(st1.generators_sequence(i)["applicable"] for i in st1.oq.cat.quiver.vertices)


def test_gorenstein_crosscheck_agrees(st2):
    out = st2.gorenstein_crosscheck(count=20)
    assert out["pass"], out


def test_report_is_json_friendly(st2):
    import json
    rep = st2.report(st2.res_rep(st2.plain[0]), "x")
    json.dumps(rep)
    assert rep["gorenstein_projective"]
