import numpy as np

from nakajima_hall.nakajima import (
    NakajimaSetup,
    build_orbit_quiver,
    check_configuration,
    exa1,
    exa2,
    path_algebra_graded_dims,
)


def test_a2_s_presentation_shape(exa2_setup):
    S = exa2_setup.present("S")
    assert (S.n, len(S.arrows), len(S.relations)) == (4, 6, 6)
    assert sorted(S.vertex_names) == sorted(["σ(P2)", "σ(I1)", "σ(ΣP2)", "σ(ΣI1)"])


def test_a2_s_hom_table(exa2_setup):
    S = exa2_setup.present("S")
    table = S.hom_table()
    assert table.sum() == 12
    col = S.vertex_names.index("σ(I1)")
    assert table[:, col].sum() == 4
    assert all(table[i, i] == 1 for i in range(S.n))


def test_a2_r_presentation(exa2_setup):
    R = exa2_setup.present("R")
    assert R.n == 10
    assert len([v for v in exa2_setup.oq.vertices if v.sigma]) == 4


def test_cyclic_example_presentation(exa1_setup):
    S = exa1_setup.present("S")
    assert S.n == 3 and len(S.arrows) == 3
    assert all(len(r) == 1 for r in S.relations)


def test_configurations_valid():
    for fixture in (exa1, exa2):
        cat, F, C = fixture(3)
        ok, diag = check_configuration(cat, F, C)
        assert ok, diag


def test_presentation_independent_of_prime():
    tables = []
    for p in (3, 5):
        cat, F, C = exa2(p)
        tables.append(NakajimaSetup(build_orbit_quiver(cat, F, C), p=p).present("S").hom_table())
    assert np.array_equal(*tables)


def test_graded_dims_of_truncated_cycle():
    dims = path_algebra_graded_dims(2, [(0, 1), (1, 0)], [[(1, (0, 1))]], 3, 4)
    assert dims[(0, 0)] == [1, 0, 0, 0, 0]
    assert dims[(1, 1)] == [1, 0, 1, 0, 0]
    assert dims[(0, 1)] == [0, 1, 0, 0, 0]
