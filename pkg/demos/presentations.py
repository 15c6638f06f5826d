"""Quivers with relations for the categories R and S of two A_2 examples."""

from __future__ import annotations

from nakajima_hall.nakajima import NakajimaSetup, build_orbit_quiver, exa1, exa2


def show(title, fixture):
    cat, F, C = fixture(3)
    setup = NakajimaSetup(build_orbit_quiver(cat, F, C))
    print(f"== {title}")
    for which in ("R", "S"):
        pres = setup.present(which)
        print(f"{which}: {pres.n} vertices, {len(pres.arrows)} arrows, {len(pres.relations)} relations")
        print("  vertices:", ", ".join(pres.vertex_names))
        mod = pres.ambient.p
        for rel in pres.relations:
            terms = " ".join(f"{(c if c <= mod // 2 else c - mod):+d}*" + ".".join(pres.arrows[a].name for a in path) for c, path in rel)
            print("  ", terms)
    S = setup.present("S")
    print("dim Hom table of S:")
    print(S.hom_table())


if __name__ == "__main__":
    show("A_2, arrow 1 -> 2, all shifted simples", exa2)
    show("A_2, arrow 2 -> 1, tau-orbit of S_1", exa1)
