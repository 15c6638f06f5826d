"""Hall polynomials in 2-periodic complexes of projectives over A_1 and A_2."""

from __future__ import annotations

from nakajima_hall.dynkin import DynkinQuiver
from nakajima_hall.hallnum import complex_category, hall_polynomials


def names(ccat, mult):
    return " + ".join(f"{m}*{x.name}" if m > 1 else x.name for x, m in zip(ccat.indecs, mult) if m) or "0"


def table(quiver, pairs):
    ccat = complex_category(quiver, 2, 2)
    k = len(ccat.indecs)
    index = {x.name: x.index for x in ccat.indecs}
    for n_name, m_name in pairs:
        N = [int(i == index[n_name]) for i in range(k)]
        M = [int(i == index[m_name]) for i in range(k)]
        res = hall_polynomials(quiver, 2, N, M)
        print(f"N = {n_name}, M = {m_name}: dim Hom(M, N) = {res.hom_dim}, dim Ext(M, N) = {res.ext_dim},"
              f" checked at q = {res.held_out}")
        for L, poly in sorted(res.polys.items()):
            print(f"   L = {names(ccat, L):<16} F = {poly!r}")


if __name__ == "__main__":
    table(DynkinQuiver.linear_a(1), [("ΣP1", "P1"), ("P1", "ΣP1")])
    table(DynkinQuiver.from_arrows([(1, 2)]), [("P2", "ΣP2"), ("P2", "I1"), ("ΣP1", "P1")])
