"""Z/n-periodic complexes of projective kQ-modules.

A component is a tuple of vertices (one summand ``P_v`` per entry).  Since
``Hom(P_c, P_r)`` is spanned by the path ``r ~> c`` when it exists, a map between
components is a scalar matrix supported on the pattern ``has_path(r, c)``, and
composition is the matrix product.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property

import numpy as np

from . import fp
from .dynkin import DerivedObject, DynkinQuiver, ModuleCategory

__all__ = [
    "PeriodicComplex",
    "IndecomposableComplex",
    "GradedSpace",
    "list_indecomposables",
    "hom_space",
    "ext_space",
    "middle_term",
    "decompose",
    "ComplexCategory",
    "psi",
]


def pattern(quiver: DynkinQuiver, rows, cols) -> np.ndarray:
    return np.array([[quiver.has_path(r, c) for c in cols] for r in rows], dtype=bool).reshape(len(rows), len(cols))


@dataclass(frozen=True, eq=False)
class PeriodicComplex:
    """Components ``comps[i]`` and differentials ``diffs[i]: comps[i] -> comps[i+1]``."""

    quiver: DynkinQuiver
    comps: tuple[tuple[int, ...], ...]
    diffs: tuple[np.ndarray, ...]
    p: int

    @property
    def n(self) -> int:
        return len(self.comps)

    def d(self, i: int) -> np.ndarray:
        return self.diffs[i % self.n]

    def comp(self, i: int) -> tuple[int, ...]:
        return self.comps[i % self.n]

    def validate(self) -> None:
        n = self.n
        if n < 2:
            raise ValueError("period must be at least 2")
        for i in range(n):
            d = self.d(i)
            if d.shape != (len(self.comp(i + 1)), len(self.comp(i))):
                raise ValueError(f"differential {i} has shape {d.shape}")
            if np.any(d[~pattern(self.quiver, self.comp(i + 1), self.comp(i))] % self.p):
                raise ValueError(f"differential {i} is not a map of projectives")
            if np.any((self.d(i + 1) @ d) % self.p):
                raise ValueError(f"d_{i + 1} d_{i} != 0")

    @property
    def total_rank(self) -> int:
        return sum(len(c) for c in self.comps)

    def multiplicities(self) -> np.ndarray:
        """(period x |Q_0|) table of projective summand multiplicities."""
        q = self.quiver
        out = np.zeros((self.n, q.n), dtype=np.int64)
        for i, c in enumerate(self.comps):
            for v in c:
                out[i, q.index(v)] += 1
        return out

    def direct_sum(self, other: "PeriodicComplex") -> "PeriodicComplex":
        comps = tuple(a + b for a, b in zip(self.comps, other.comps))
        diffs = []
        for i in range(self.n):
            a, b = self.d(i), other.d(i)
            m = np.zeros((a.shape[0] + b.shape[0], a.shape[1] + b.shape[1]), dtype=np.int64)
            m[: a.shape[0], : a.shape[1]] = a
            m[a.shape[0]:, a.shape[1]:] = b
            diffs.append(m)
        return PeriodicComplex(self.quiver, comps, tuple(diffs), self.p)

    @classmethod
    def zero(cls, quiver, n, p) -> "PeriodicComplex":
        return cls(quiver, tuple(() for _ in range(n)), tuple(np.zeros((0, 0), dtype=np.int64) for _ in range(n)), p)

    def to_json(self) -> dict:
        return {"period": self.n, "p": self.p, "components": [list(c) for c in self.comps],
                "differentials": [(d % self.p).tolist() for d in self.diffs]}

    @classmethod
    def from_json(cls, quiver, data) -> "PeriodicComplex":
        comps = tuple(tuple(c) for c in data["components"])
        n = len(comps)
        diffs = tuple(np.array(d, dtype=np.int64).reshape(len(comps[(i + 1) % n]), len(comps[i]))
                      for i, d in enumerate(data["differentials"]))
        out = cls(quiver, comps, diffs, int(data["p"]))
        out.validate()
        return out


@dataclass(frozen=True)
class IndecomposableComplex:
    """An indecomposable with its label: ``kind`` is 'res' (resolution of a module)
    or 'acyclic'; ``degree`` is the degree of the target component."""

    index: int
    kind: str
    module: int          # module id for 'res', vertex for 'acyclic'
    degree: int
    complex: PeriodicComplex
    name: str


class GradedSpace:
    """Maps of degree k from M to N: f_i : M_i -> N_{i+k} supported on the path pattern."""

    def __init__(self, M: PeriodicComplex, N: PeriodicComplex, k: int):
        self.M, self.N, self.k = M, N, k
        self.entries: list[tuple[int, int, int]] = []
        self.masks = []
        for i in range(M.n):
            mask = pattern(M.quiver, N.comp(i + k), M.comp(i))
            self.masks.append(mask)
            self.entries.extend((i, r, c) for r, c in zip(*np.nonzero(mask)))
        self.index = {e: n for n, e in enumerate(self.entries)}

    @property
    def size(self) -> int:
        return len(self.entries)

    def to_maps(self, x) -> list[np.ndarray]:
        maps = [np.zeros(mk.shape, dtype=np.int64) for mk in self.masks]
        for (i, r, c), v in zip(self.entries, np.asarray(x).reshape(-1)):
            maps[i][r, c] = v
        return maps

    def from_maps(self, maps) -> np.ndarray:
        return np.array([maps[i][r, c] for i, r, c in self.entries], dtype=np.int64)


def chain_operator(M: PeriodicComplex, N: PeriodicComplex, k: int, sign: int,
                   dN=None) -> tuple[np.ndarray, GradedSpace, GradedSpace]:
    """Matrix of f -> (f_{i+1} dM_i + sign * dN_{i+k} f_i)_i, from degree k to degree k+1.

    ``dN`` overrides the differentials of N (used for batched middle terms).
    """
    src = GradedSpace(M, N, k)
    tgt = GradedSpace(M, N, k + 1)
    n = M.n
    dn = [N.d(i) for i in range(n)] if dN is None else dN
    op = np.zeros((tgt.size, src.size), dtype=np.int64)
    for col, (i, r, c) in enumerate(src.entries):
        # f_i has a single entry at (r, c): r indexes N_{i+k}, c indexes M_i
        # term f_i dM_{i-1}: contributes to output index i-1, row r, via row c of dM_{i-1}
        dm = M.d(i - 1)
        for cc in np.nonzero(dm[c])[0]:
            op[tgt.index[((i - 1) % n, r, cc)], col] += dm[c, cc]
        # term sign * dN_{i+k} f_i: output index i, rows from column r of dN_{i+k}
        d2 = dn[(i + k) % n]
        for rr in np.nonzero(d2[:, r])[0]:
            op[tgt.index[(i, rr, c)], col] += sign * d2[rr, r]
    return op % M.p, src, tgt


@dataclass
class HomSpace:
    space: GradedSpace
    basis: np.ndarray  # rows

    @property
    def dim(self) -> int:
        return self.basis.shape[0]

    def maps(self, k: int) -> list[np.ndarray]:
        return self.space.to_maps(self.basis[k])


def hom_space(M: PeriodicComplex, N: PeriodicComplex) -> HomSpace:
    _check_compatible(M, N)
    op, src, _ = chain_operator(M, N, 0, -1)
    return HomSpace(src, fp.nullspace(op, M.p, ncols=src.size))


def hom_dim(M: PeriodicComplex, N: PeriodicComplex) -> int:
    op, src, _ = chain_operator(M, N, 0, -1)
    return src.size - fp.rank(op, M.p)


@dataclass
class ExtSpace:
    space: GradedSpace       # degree-1 maps
    cocycles: np.ndarray     # rows spanning Z
    coboundaries: np.ndarray  # rows spanning B (a basis)

    @property
    def dim(self) -> int:
        return self.cocycles.shape[0] - self.coboundaries.shape[0]

    @cached_property
    def representatives(self) -> np.ndarray:
        """Rows completing a basis of B to one of Z: a section of Z -> Z/B."""
        p = self.space.M.p
        span = self.coboundaries
        cur = span.shape[0]
        reps = []
        for v in self.cocycles:
            trial = np.concatenate([span, v.reshape(1, -1)]) if span.size else v.reshape(1, -1)
            if fp.rank(trial, p) > cur:
                span, cur = trial, cur + 1
                reps.append(v)
        return np.array(reps, dtype=np.int64).reshape(len(reps), self.space.size)


def ext_space(M: PeriodicComplex, N: PeriodicComplex) -> ExtSpace:
    """Cocycles f (degree one, dN f + f dM = 0) and coboundaries h dM - dN h."""
    _check_compatible(M, N)
    p = M.p
    zop, zsrc, _ = chain_operator(M, N, 1, +1)
    Z = fp.nullspace(zop, p, ncols=zsrc.size)
    bop, _, btgt = chain_operator(M, N, 0, -1)
    assert btgt.entries == zsrc.entries
    if bop.size:
        B = fp.row_space_basis(bop.T, p)
    else:
        B = np.zeros((0, zsrc.size), dtype=np.int64)
    return ExtSpace(zsrc, _rows(Z, zsrc.size), _rows(B, zsrc.size))


def _rows(a: np.ndarray, ncols: int) -> np.ndarray:
    if a.size == 0:
        return np.zeros((0, ncols), dtype=np.int64)
    return a.reshape(-1, ncols)


def middle_term(M: PeriodicComplex, N: PeriodicComplex, f, space: GradedSpace | None = None) -> PeriodicComplex:
    """L with L_i = N_i + M_i and differential [[dN, f], [0, dM]]."""
    space = space or GradedSpace(M, N, 1)
    maps = space.to_maps(f) if not isinstance(f, list) else f
    n, p = M.n, M.p
    comps = tuple(N.comp(i) + M.comp(i) for i in range(n))
    diffs = []
    for i in range(n):
        dn, dm = N.d(i), M.d(i)
        d = np.zeros((dn.shape[0] + dm.shape[0], dn.shape[1] + dm.shape[1]), dtype=np.int64)
        d[: dn.shape[0], : dn.shape[1]] = dn
        d[: dn.shape[0], dn.shape[1]:] = maps[i]
        d[dn.shape[0]:, dn.shape[1]:] = dm
        diffs.append(d % p)
    L = PeriodicComplex(M.quiver, comps, tuple(diffs), p)
    for i in range(n):
        if np.any((L.d(i + 1) @ L.d(i)) % p):
            raise ValueError("f is not a cocycle")
    return L


def _check_compatible(M, N):
    if M.n != N.n or M.p != N.p or M.quiver != N.quiver:
        raise ValueError("complexes have different period, field or quiver")


def list_indecomposables(cat: ModuleCategory, n: int) -> list[IndecomposableComplex]:
    """Rotations of minimal resolutions, then rotations of the acyclics P_i =1= P_i."""
    if n < 2:
        raise ValueError("period must be at least 2")
    q, p = cat.quiver, cat.p
    out = []
    for m in cat.modules:
        p1, p0, d = cat.resolutions[m.id]
        for j in range(n):
            comps = [()] * n
            comps[j % n] = p0
            comps[(j - 1) % n] = p1
            diffs = [np.zeros((len(comps[(i + 1) % n]), len(comps[i])), dtype=np.int64) for i in range(n)]
            diffs[(j - 1) % n] = d.copy()
            X = PeriodicComplex(q, tuple(comps), tuple(diffs), p)
            out.append(IndecomposableComplex(len(out), "res", m.id, j % n, X,
                                             cat.name(DerivedObject(m.id, j % n))))
    for v in q.vertices:
        for j in range(n):
            comps = [()] * n
            comps[j % n] = (v,)
            comps[(j - 1) % n] = (v,)
            diffs = [np.zeros((len(comps[(i + 1) % n]), len(comps[i])), dtype=np.int64) for i in range(n)]
            diffs[(j - 1) % n] = np.ones((1, 1), dtype=np.int64)
            X = PeriodicComplex(q, tuple(comps), tuple(diffs), p)
            out.append(IndecomposableComplex(len(out), "acyclic", v, j % n, X, f"K{v}[{j % n}]"))
    for x in out:
        x.complex.validate()
    return out


class ComplexCategory:
    """Indecomposables of Comp_{Z/n}(proj kQ) with Hom tables and decomposition."""

    def __init__(self, cat: ModuleCategory, n: int):
        self.cat, self.n, self.p = cat, n, cat.p
        self.indecs = list_indecomposables(cat, n)
        self.quiver = cat.quiver

    def __len__(self):
        return len(self.indecs)

    @cached_property
    def hom_matrix(self) -> np.ndarray:
        """Entry (i, j) = dim Hom(X_i, X_j)."""
        k = len(self.indecs)
        out = np.zeros((k, k), dtype=np.int64)
        for i, x in enumerate(self.indecs):
            for j, y in enumerate(self.indecs):
                out[i, j] = hom_dim(x.complex, y.complex)
        return out

    @cached_property
    def ext_matrix(self) -> np.ndarray:
        k = len(self.indecs)
        out = np.zeros((k, k), dtype=np.int64)
        for i, x in enumerate(self.indecs):
            for j, y in enumerate(self.indecs):
                out[i, j] = ext_space(x.complex, y.complex).dim
        return out

    @cached_property
    def hom_matrix_invertible(self) -> bool:
        return fp.rational_rank(self.hom_matrix.tolist()) == len(self.indecs)

    def build(self, mult) -> PeriodicComplex:
        out = PeriodicComplex.zero(self.quiver, self.n, self.p)
        for x, m in zip(self.indecs, mult):
            for _ in range(int(m)):
                out = out.direct_sum(x.complex)
        return out

    def hom_vector(self, L: PeriodicComplex) -> np.ndarray:
        return np.array([hom_dim(x.complex, L) for x in self.indecs], dtype=np.int64)

    def solve_multiplicities(self, h) -> np.ndarray | None:
        """Solve h = C m for the multiplicity vector (C the Hom matrix, rows = sources)."""
        sol = fp.rational_solve(self.hom_matrix.tolist(), [int(v) for v in h])
        if sol is None or any(s.denominator != 1 or s < 0 for s in sol):
            return None
        return np.array([int(s) for s in sol], dtype=np.int64)

    def decompose(self, L: PeriodicComplex, method: str = "auto") -> np.ndarray:
        if L.total_rank == 0:
            return np.zeros(len(self.indecs), dtype=np.int64)
        if method in ("auto", "solve") and self.hom_matrix_invertible:
            m = self.solve_multiplicities(self.hom_vector(L))
            if m is not None:
                return m
            if method == "solve":
                raise ValueError("Hom vector is not a nonnegative integer combination")
        return self._decompose_pairing(L)

    def _decompose_pairing(self, L: PeriodicComplex) -> np.ndarray:
        """m_X = rank of Hom(L, X) x Hom(X, L) -> End(X)/rad = F_p."""
        p = self.p
        out = np.zeros(len(self.indecs), dtype=np.int64)
        for k, x in enumerate(self.indecs):
            X = x.complex
            to_x = hom_space(L, X)
            from_x = hom_space(X, L)
            if to_x.dim == 0 or from_x.dim == 0:
                continue
            pairing = np.zeros((to_x.dim, from_x.dim), dtype=np.int64)
            for a in range(to_x.dim):
                fa = to_x.maps(a)
                for b in range(from_x.dim):
                    gb = from_x.maps(b)
                    comp = [(fa[i] @ gb[i]) % p for i in range(X.n)]
                    pairing[a, b] = _top_scalar(X, comp, p)
            out[k] = fp.rank(pairing, p)
        return out


def _top_scalar(X: PeriodicComplex, endo, p: int) -> int:
    """The scalar mu with endo - mu * id non-invertible (End(X) is local)."""
    for mu in range(p):
        singular = False
        for i in range(X.n):
            m = (endo[i] - mu * np.eye(endo[i].shape[0], dtype=np.int64)) % p
            if m.shape[0] and fp.rank(m, p) < m.shape[0]:
                singular = True
                break
        if singular:
            return mu
    raise ArithmeticError("endomorphism ring is not local with residue field F_p")


def decompose(ccat: ComplexCategory, L: PeriodicComplex, method: str = "auto") -> np.ndarray:
    return ccat.decompose(L, method)


def psi_vertex(ccat: ComplexCategory, oq, x: IndecomposableComplex) -> int:
    """Vertex of the orbit quiver whose restricted representable is psi(x)."""
    cat = ccat.cat
    if oq.F.kind != "sigma_power" or oq.F.n != ccat.n:
        raise ValueError("psi needs F = Sigma^n with n the period")
    if x.kind == "res":
        return oq.vertex(DerivedObject(x.module, x.degree))
    return oq.vertex(DerivedObject(cat.simple(x.module), x.degree), sigma=True)


def psi(ccat: ComplexCategory, setup, x: IndecomposableComplex):
    """The Gorenstein projective S-module res(v^), v = psi_vertex(x)."""
    from .smod import res_representable

    return res_representable(setup, psi_vertex(ccat, setup.oq, x))
