"""The quantum group relations inside the localized Hall algebra, and the sign of F_i."""

from __future__ import annotations

from nakajima_hall.dynkin import DynkinQuiver
from nakajima_hall.shalgebra import HallAlgebra, verify_relations


def summary(quiver, mode, p=None):
    alg = HallAlgebra(quiver, mode, p=p or 3)
    label = f"{quiver.kind} {mode}" + (f" p={p}" if p else "")
    for sign in (-1, 1):
        rep = verify_relations(alg, f_sign=sign)
        bad = [r["relation"] for r in rep if not r["pass"]]
        verdict = "all pass" if not bad else f"{len(bad)} fail, e.g. {bad[0]}"
        print(f"{label:<18} F sign {'-' if sign < 0 else '+'}: {len(rep)} relations, {verdict}")


if __name__ == "__main__":
    for quiver in (DynkinQuiver.linear_a(1), DynkinQuiver.from_arrows([(1, 2)])):
        for p in (2, 3):
            summary(quiver, "fixed", p)
        summary(quiver, "generic")
