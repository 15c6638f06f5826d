"""Twisted Hall algebra of Comp_{Z/n}(proj kQ), its localization at acyclic
classes, and the quantum group relations.

Basis of the localized algebra: ``Kword(z) * [core]`` where ``Kword(z)`` is the
ordered product of powers of the acyclic classes and ``core`` has no acyclic
summands.  Acyclics are projective-injective, so every product involving them
is split and all reordering scalars are powers of ``t``: for such a pair
``[X] * [Y] = t^{e(X, Y)} [X + Y]`` with ``e`` bilinear in multiplicities.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property

import numpy as np

from .coeffs import LaurentPoly, RatFunc, SqrtQNumber
from .dynkin import DynkinQuiver
from .hallnum import DEFAULT_BUDGET, complex_category, hall_numbers, hall_polynomials

__all__ = [
    "HallAlgebra",
    "LocalizedElement",
    "HallElement",
    "qg_generators",
    "verify_relations",
    "specialize_q1",
    "product",
    "localize",
    "relations_report",
    "cartan",
    "a_matrix",
]


class HallAlgebra:
    """Structure data and coefficient ring for the (localized) Hall algebra.

    ``mode`` is ``"fixed"`` (a prime ``p``, coefficients a + b sqrt(p)) or
    ``"generic"`` (rational functions in t, q = t^2, from Hall polynomials).
    ``orientation="quotient_first"`` means ``[M] * [N]`` sums over extensions
    ``0 -> N -> L -> M -> 0``; ``"sub_first"`` is the opposite.
    """

    def __init__(self, quiver: DynkinQuiver, mode: str = "fixed", p: int = 3, n: int = 2,
                 orientation: str = "quotient_first", twist: str = "first_second",
                 twisted: bool = True, quotient: bool = True, budget: int = DEFAULT_BUDGET):
        if mode not in ("fixed", "generic"):
            raise ValueError(f"unknown mode {mode!r}")
        if orientation not in ("quotient_first", "sub_first"):
            raise ValueError(f"unknown orientation {orientation!r}")
        self.quiver, self.mode, self.n = quiver, mode, n
        self.p = p if mode == "fixed" else None
        self.orientation, self.twist, self.twisted = orientation, twist, twisted
        self.quotient = quotient and n == 2
        self.budget = budget
        self.ccat = complex_category(quiver, n, p if mode == "fixed" else 2)
        self.indecs = self.ccat.indecs
        self.k = len(self.indecs)
        self.acyclic = [x.index for x in self.indecs if x.kind == "acyclic"]
        # order K_i[0], K_i[1], K_i[2], ... per vertex so quotient pairs are adjacent
        self.acyclic.sort(key=lambda i: (quiver.index(self.indecs[i].module), self.indecs[i].degree))
        self._hall_cache: dict = {}

    # -- coefficients ----------------------------------------------------------
    def coeff(self, x):
        if self.mode == "fixed":
            return SqrtQNumber(Fraction(x), Fraction(0), self.p)
        return RatFunc.make(Fraction(x), 1, "t")

    @cached_property
    def t(self):
        return SqrtQNumber.t(self.p) if self.mode == "fixed" else RatFunc.t()

    def t_pow(self, k: int):
        return self.t ** k

    @property
    def q(self):
        return self.t_pow(2)

    def from_poly(self, poly: LaurentPoly):
        if self.mode == "fixed":
            return self.coeff(poly(self.p))
        return RatFunc.make(poly.substitute_power(2, "t"), 1, "t")

    # -- bilinear data -----------------------------------------------------------
    @cached_property
    def hom_matrix(self) -> np.ndarray:
        return self.ccat.hom_matrix

    @cached_property
    def classes(self) -> np.ndarray:
        """(indecomposable, degree, vertex) -> dimension vector of the component."""
        q = self.quiver
        pc = q.path_counts
        out = np.zeros((self.k, self.n, q.n), dtype=np.int64)
        for x in self.indecs:
            for i, comp in enumerate(x.complex.comps):
                for v in comp:
                    out[x.index, i] += pc[q.index(v)]
        return out

    def hom(self, a, b) -> int:
        return int(np.asarray(a) @ self.hom_matrix @ np.asarray(b))

    def tw(self, a, b) -> int:
        if not self.twisted:
            return 0
        ca = np.einsum("k,kiv->iv", np.asarray(a), self.classes)
        cb = np.einsum("k,kiv->iv", np.asarray(b), self.classes)
        if self.twist == "second_first":
            ca, cb = cb, ca
        e = self.quiver.euler_matrix
        return int(sum(ca[i] @ e @ cb[i] for i in range(self.n)))

    def split_exponent(self, a, b) -> int:
        """e(X, Y) with [X] * [Y] = t^e [X + Y] whenever the product is split."""
        h = self.hom(a, b) if self.orientation == "quotient_first" else self.hom(b, a)
        return self.tw(a, b) - 2 * h

    def unit(self, i: int) -> np.ndarray:
        v = np.zeros(self.k, dtype=np.int64)
        v[i] = 1
        return v

    # -- Hall products of classes ----------------------------------------------------
    def hall(self, a: tuple, b: tuple) -> dict[tuple, object]:
        """[A] * [B] as {L: coefficient}, twist included."""
        key = (a, b)
        if key not in self._hall_cache:
            sub, quot = (b, a) if self.orientation == "quotient_first" else (a, b)
            if self.mode == "fixed":
                dist = hall_numbers(self.ccat, list(sub), list(quot), self.budget)
                terms = {L: self.coeff(v) for L, v in dist.items()}
            else:
                res = hall_polynomials(self.quiver, self.n, list(sub), list(quot), self.budget)
                terms = {L: self.from_poly(v) for L, v in res.polys.items() if not v.is_zero()}
            tw = self.t_pow(self.tw(a, b))
            self._hall_cache[key] = {L: c * tw for L, c in terms.items()}
        return self._hall_cache[key]

    # -- normal form ---------------------------------------------------------------
    def kword_exponent(self, seq: list[tuple[int, int]]) -> int:
        """Sum of e over ordered pairs of a word of (acyclic index, power) blocks."""
        total = 0
        for j, (x, a) in enumerate(seq):
            total += a * (a - 1) // 2 * self.split_exponent(self.unit(x), self.unit(x))
            for y, b in seq[j + 1:]:
                total += a * b * self.split_exponent(self.unit(x), self.unit(y))
        return total

    def peel(self, L: tuple) -> tuple[int, tuple, tuple]:
        """[L] = t^s Kword(u) * [core]: returns (s, u, core)."""
        u = tuple(int(L[i]) for i in self.acyclic)
        core = list(L)
        for i in self.acyclic:
            core[i] = 0
        core = tuple(core)
        seq = [(x, a) for x, a in zip(self.acyclic, u) if a]
        s = self.kword_exponent(seq)
        core_vec = np.array(core, dtype=np.int64)
        for x, a in seq:
            s += a * self.split_exponent(self.unit(x), core_vec)
        return -s, u, core

    def reorder_exponent(self, z, w) -> int:
        """Kword(z) * Kword(w) = t^r Kword(z + w)."""
        r = 0
        m = len(self.acyclic)
        for i in range(m):
            for j in range(i + 1, m):
                if z[j] and w[i]:
                    ki, kj = self.unit(self.acyclic[i]), self.unit(self.acyclic[j])
                    r += z[j] * w[i] * (self.split_exponent(kj, ki) - self.split_exponent(ki, kj))
        return r

    def commute_exponent(self, core, w) -> int:
        """[core] * Kword(w) = t^c Kword(w) * [core]."""
        c = 0
        cv = np.array(core, dtype=np.int64)
        for x, a in zip(self.acyclic, w):
            if a:
                kx = self.unit(x)
                c += a * (self.split_exponent(cv, kx) - self.split_exponent(kx, cv))
        return c

    def reduce(self, z) -> tuple[int, tuple]:
        """Impose K_i[0] * K_i[1] = 1 on adjacent pairs: exponents (a, b) -> (a - b, 0)."""
        if not self.quotient:
            return 0, tuple(z)
        z = list(z)
        for j in range(0, len(z), 2):
            z[j] -= z[j + 1]
            z[j + 1] = 0
        return 0, tuple(z)

    def mul_basis(self, z, a, w, b) -> dict[tuple, object]:
        """(Kword(z) * [a]) * (Kword(w) * [b]) in normal form."""
        r = self.commute_exponent(a, w) + self.reorder_exponent(z, w)
        zw = tuple(x + y for x, y in zip(z, w))
        out: dict[tuple, object] = {}
        for L, c in self.hall(a, b).items():
            s, u, core = self.peel(L)
            r2 = self.reorder_exponent(zw, u)
            s0, zz = self.reduce(tuple(x + y for x, y in zip(zw, u)))
            key = (zz, core)
            val = c * self.t_pow(r + s + r2 + s0)
            out[key] = out[key] + val if key in out else val
        return {k: v for k, v in out.items() if not v.is_zero()}

    # -- element constructors --------------------------------------------------------
    def zero_core(self) -> tuple:
        return tuple([0] * self.k)

    def element(self, terms=None) -> "LocalizedElement":
        return LocalizedElement(self, dict(terms or {}))

    def one(self) -> "LocalizedElement":
        return self.element({(tuple([0] * len(self.acyclic)), self.zero_core()): self.coeff(1)})

    def class_element(self, mult) -> "LocalizedElement":
        """The localized image of [L] for a multiplicity vector L."""
        s, u, core = self.peel(tuple(int(x) for x in mult))
        _, z = self.reduce(u)
        return self.element({(z, core): self.t_pow(s)})

    def kword(self, z) -> "LocalizedElement":
        _, z = self.reduce(tuple(z))
        return self.element({(z, self.zero_core()): self.coeff(1)})

    def acyclic_slot(self, vertex: int, degree: int) -> int:
        for slot, x in enumerate(self.acyclic):
            ind = self.indecs[x]
            if ind.module == vertex and ind.degree == degree % self.n:
                return slot
        raise KeyError((vertex, degree))

    def res_index(self, vertex: int, degree: int) -> int:
        sid = self.ccat.cat.simple(vertex)
        for x in self.indecs:
            if x.kind == "res" and x.module == sid and x.degree == degree % self.n:
                return x.index
        raise KeyError((vertex, degree))


@dataclass
class LocalizedElement:
    alg: HallAlgebra
    terms: dict = field(default_factory=dict)

    def __post_init__(self):
        self.terms = {k: v for k, v in self.terms.items() if not v.is_zero()}

    def _lift(self, other):
        if isinstance(other, LocalizedElement):
            return other
        return self.alg.one() * other

    def __add__(self, other):
        other = self._lift(other)
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = out[k] + v if k in out else v
        return LocalizedElement(self.alg, out)

    def __neg__(self):
        return LocalizedElement(self.alg, {k: -v for k, v in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __mul__(self, other):
        if not isinstance(other, LocalizedElement):
            c = other if hasattr(other, "is_zero") else self.alg.coeff(other)
            return LocalizedElement(self.alg, {k: v * c for k, v in self.terms.items()})
        out: dict = {}
        for (z, a), c1 in self.terms.items():
            for (w, b), c2 in other.terms.items():
                for key, c in self.alg.mul_basis(z, a, w, b).items():
                    val = c * c1 * c2
                    out[key] = out[key] + val if key in out else val
        return LocalizedElement(self.alg, out)

    def __rmul__(self, other):
        return self * other

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other):
        return (self - other).is_zero()

    def describe(self) -> list[dict]:
        names = [x.name for x in self.alg.indecs]
        out = []
        for (z, core), c in sorted(self.terms.items(), key=lambda kv: repr(kv[0])):
            kw = {names[self.alg.acyclic[i]]: e for i, e in enumerate(z) if e}
            cr = {names[i]: m for i, m in enumerate(core) if m}
            out.append({"K": kw, "core": cr, "coeff": repr(c)})
        return out


# Unlocalized elements are stored the same way with z = 0 on every term.
HallElement = LocalizedElement


def cartan(quiver: DynkinQuiver) -> np.ndarray:
    n = quiver.n
    c = 2 * np.eye(n, dtype=np.int64)
    for s, t in quiver.arrows:
        i, j = quiver.index(s), quiver.index(t)
        c[i, j] -= 1
        c[j, i] -= 1
    return c


def a_matrix(alg: HallAlgebra) -> np.ndarray:
    """a_ij = dim Ext^1(S_i, S_j)."""
    cat = alg.ccat.cat
    q = alg.quiver
    return np.array([[cat.ext_dim(cat.simple(i), cat.simple(j)) for j in q.vertices] for i in q.vertices],
                    dtype=np.int64)


def qg_generators(alg: HallAlgebra, e_coeff: str = "inverse", f_sign: int = -1,
                  k_class: str = "root", kfactors: bool = True):
    """E_i, F_i, K_i, K_i^{-1} for the Bridgeland configuration with F = Sigma^2.

    ``e_coeff="inverse"`` puts (q-1)^{-1} in front of E_i, ``"plain"`` puts (q-1).
    ``k_class="root"`` takes K_i to be the acyclic class of the simple root,
    [sigma(S_i)] * prod_j [sigma(S_j)]^{-a_ij}; ``"projective"`` takes
    K_i = [sigma(S_i)] itself.  ``kfactors`` multiplies E_i and F_i by the
    products prod_j [sigma(S_j)]^{-a_ij} and prod_j [sigma(Sigma S_j)]^{-a_ij}.
    """
    if alg.n != 2:
        raise ValueError("quantum group generators need period 2")
    q = alg.quiver
    a = a_matrix(alg)
    m = len(alg.acyclic)
    qm1 = alg.q - alg.coeff(1)
    ce = qm1.inverse() if e_coeff == "inverse" else qm1
    cf = qm1.inverse() * alg.t * alg.coeff(f_sign)
    gens = {}
    for ii, i in enumerate(q.vertices):
        k0 = alg.acyclic_slot(i, 0)
        k1 = alg.acyclic_slot(i, 1)
        ze = [0] * m
        zf = [0] * m
        for jj, j in enumerate(q.vertices):
            ze[alg.acyclic_slot(j, 0)] -= int(a[ii, jj])
            zf[alg.acyclic_slot(j, 1)] -= int(a[ii, jj])
        z = list(ze) if k_class == "root" else [0] * m
        z[k0] += 1
        gens[("K", i)] = alg.kword(z)
        gens[("Kinv", i)] = alg.kword([-x for x in z])
        if not kfactors:
            ze, zf = [0] * m, [0] * m
        gens[("E", i)] = alg.kword(ze) * alg.class_element(alg.unit(alg.res_index(i, 0))) * ce
        gens[("F", i)] = alg.kword(zf) * alg.class_element(alg.unit(alg.res_index(i, 1))) * cf
    return gens


def verify_relations(alg: HallAlgebra, e_coeff: str = "inverse", f_sign: int = -1,
                     k_class: str = "root", kfactors: bool = True) -> list[dict]:
    """Check the simply-laced quantum group relations; one report entry per relation."""
    g = qg_generators(alg, e_coeff, f_sign, k_class, kfactors)
    q = alg.quiver
    C = cartan(q)
    t = alg.t
    one = alg.one()
    report = []

    def check(name, lhs, rhs):
        diff = lhs - rhs
        report.append({"relation": name, "pass": diff.is_zero(), "residual": diff.describe()})

    verts = list(q.vertices)
    for ii, i in enumerate(verts):
        K, Ki, E, F = g[("K", i)], g[("Kinv", i)], g[("E", i)], g[("F", i)]
        check(f"K{i}*K{i}^-1=1", K * Ki, one)
        check(f"K{i}^-1*K{i}=1", Ki * K, one)
        for jj, j in enumerate(verts):
            Kj, Ej, Fj = g[("K", j)], g[("E", j)], g[("F", j)]
            if jj > ii:
                check(f"K{i}K{j}=K{j}K{i}", K * Kj, Kj * K)
            cij = int(C[ii, jj])
            check(f"K{i}E{j}K{i}^-1=t^{cij}E{j}", K * Ej * Ki, Ej * alg.t_pow(cij))
            check(f"K{i}F{j}K{i}^-1=t^{-cij}F{j}", K * Fj * Ki, Fj * alg.t_pow(-cij))
            rhs = (K - Ki) * (t - t.inverse()).inverse() if i == j else alg.element()
            check(f"[E{i},F{j}]", E * Fj - Fj * E, rhs)
            if jj == ii:
                continue
            if cij == 0:
                check(f"E{i}E{j}=E{j}E{i}", E * Ej, Ej * E)
                check(f"F{i}F{j}=F{j}F{i}", F * Fj, Fj * F)
            elif cij == -1:
                tt = t + t.inverse()
                check(f"Serre E{i}E{i}E{j}", E * E * Ej - E * Ej * E * tt + Ej * E * E, alg.element())
                check(f"Serre F{i}F{i}F{j}", F * F * Fj - F * Fj * F * tt + Fj * F * F, alg.element())
    return report


def specialize_q1(elem: LocalizedElement) -> dict:
    """Evaluate generic coefficients at q = 1 (t = 1)."""
    if elem.alg.mode != "generic":
        raise ValueError("specialization needs generic coefficients")
    return {k: v(1) for k, v in elem.terms.items()}


def product(alg: HallAlgebra, a, b) -> dict[tuple, object]:
    """[A] * [B] in the (twisted if ``alg.twisted``) Hall algebra, before localization."""
    return dict(alg.hall(tuple(int(x) for x in a), tuple(int(x) for x in b)))


def localize(alg: HallAlgebra, mult) -> LocalizedElement:
    """The image of [L] in the localized algebra, acyclic summands peeled off."""
    return alg.class_element(mult)


def relations_report(alg: HallAlgebra, e_coeff: str = "inverse", f_sign: int = -1,
                     k_class: str = "root", kfactors: bool = True) -> dict:
    rep = verify_relations(alg, e_coeff, f_sign, k_class, kfactors)
    return {
        "quiver": alg.quiver.to_json(),
        "mode": alg.mode,
        "prime": alg.p,
        "orientation": alg.orientation,
        "twist": alg.twist,
        "e_coeff": e_coeff,
        "f_sign": "minus" if f_sign < 0 else "plus",
        "k_class": k_class,
        "kfactors": kfactors,
        "all_pass": all(r["pass"] for r in rep),
        "relations": rep,
    }
