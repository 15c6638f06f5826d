"""Strata, characteristic classes and the Gorenstein projective test for an A_2 example."""

from __future__ import annotations

from nakajima_hall.nakajima import NakajimaSetup, build_orbit_quiver, exa2
from nakajima_hall.strat import Stratifier


def main():
    cat, F, C = exa2(3)
    st = Stratifier(NakajimaSetup(build_orbit_quiver(cat, F, C), p=3))
    names = st.R.vertex_names
    print("restrictions of representables:")
    for x in range(st.R.n):
        M = st.res_rep(x)
        if not M.total_dim:
            continue
        r = st.report(M, f"res {names[x]}")
        print(f"  {r['module']:<14} stratum w={r['stratum']['w']} v={r['stratum']['v']}"
              f" CK={r['ck']} gorenstein={r['gorenstein_projective']}")
    print("simple S-modules:")
    for s in range(st.S.n):
        r = st.report(st.s_simple(s), f"simple {st.S.vertex_names[s]}")
        print(f"  {r['module']:<18} stratum w={r['stratum']['w']} v={r['stratum']['v']}"
              f" minimal={r['minimal']} gorenstein={r['gorenstein_projective']}")
    for i in cat.quiver.vertices:
        qd = st.qin_data(i)
        print(f"vertex {i}: bistable module of dimension {list(qd.module.dims)},"
              f" Cartan filtration {'holds' if st.cartan_filtration_check(i) else 'fails'}")


if __name__ == "__main__":
    main()
