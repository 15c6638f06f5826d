"""Hall numbers in Comp_{Z/n}(proj kQ) and Hall polynomials by interpolation.

``F^L_{N,M}`` counts the classes of ``Ext^1(M, N)`` whose middle term is
isomorphic to ``L`` and divides by ``|Hom(M, N)|``.  Middle terms are identified
in batches: ``dim Hom(X, L_f)`` is computed for every indecomposable X as one
stacked rank computation, then ``C m = h`` recovers the multiplicities.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

from . import fp
from .coeffs import LaurentPoly, laurent_interpolate
from .dynkin import DynkinQuiver, build_module_category
from .twocomp import (
    ComplexCategory,
    GradedSpace,
    PeriodicComplex,
    chain_operator,
    ext_space,
    hom_dim,
    middle_term,
)

__all__ = [
    "BudgetExceeded",
    "complex_category",
    "hall_numbers",
    "hall_number",
    "hall_polynomials",
    "hall_polynomial",
    "oracle_hall_number",
    "DEFAULT_BUDGET",
]

DEFAULT_BUDGET = 10**7
CHUNK = 2048


class BudgetExceeded(RuntimeError):
    """The number of Ext classes exceeds the enumeration budget."""


@lru_cache(maxsize=None)
def complex_category(quiver: DynkinQuiver, n: int, p: int) -> ComplexCategory:
    return ComplexCategory(build_module_category(quiver, p), n)


def _mult_key(m) -> tuple[int, ...]:
    return tuple(int(x) for x in m)


@lru_cache(maxsize=None)
def _inverse_hom_matrix(ccat: ComplexCategory):
    c = ccat.hom_matrix.tolist()
    k = len(c)
    if fp.rational_rank(c) != k:
        return None
    cols = []
    for j in range(k):
        e = [0] * k
        e[j] = 1
        cols.append(fp.rational_solve(c, e))
    den = 1
    for col in cols:
        for x in col:
            den = den * x.denominator // np.gcd(den, x.denominator)
    inv = np.array([[int(cols[j][i] * den) for j in range(k)] for i in range(k)], dtype=object)
    return inv, den


def _classify_batch(ccat, N, M, reps, coeffs, space) -> list[tuple[int, ...]]:
    """Multiplicity vectors of the middle terms for Ext classes ``coeffs @ reps``."""
    p = ccat.p
    L0 = middle_term(M, N, np.zeros(space.size, dtype=np.int64), space)
    n = L0.n
    nb = coeffs.shape[0]
    hs = np.zeros((nb, len(ccat.indecs)), dtype=np.int64)
    # unit differentials for each representative direction
    unit_diffs = []
    for r in reps:
        maps = space.to_maps(r)
        diffs = []
        for i in range(n):
            dn, dm = N.d(i), M.d(i)
            d = np.zeros((dn.shape[0] + dm.shape[0], dn.shape[1] + dm.shape[1]), dtype=np.int64)
            d[: dn.shape[0], dn.shape[1]:] = maps[i]
            diffs.append(d)
        unit_diffs.append(diffs)
    zero_diffs = [np.zeros_like(L0.d(i)) for i in range(n)]
    for x_idx, x in enumerate(ccat.indecs):
        X = x.complex
        base, src, _ = chain_operator(X, L0, 0, -1)
        if src.size == 0:
            continue
        lin0, _, _ = chain_operator(X, L0, 0, -1, dN=zero_diffs)
        deltas = []
        for ud in unit_diffs:
            op, _, _ = chain_operator(X, L0, 0, -1, dN=ud)
            deltas.append((op - lin0) % p)
        if deltas:
            stack = (base[None, :, :] + np.einsum("bk,kij->bij", coeffs, np.array(deltas))) % p
        else:
            stack = np.broadcast_to(base, (nb,) + base.shape)
        hs[:, x_idx] = src.size - fp.batched_rank(stack, p)
    inv = _inverse_hom_matrix(ccat)
    out = []
    for b in range(nb):
        m = None
        if inv is not None:
            mat, den = inv
            vals = mat.dot(hs[b].astype(object))
            if all(v % den == 0 and v >= 0 for v in vals):
                m = tuple(int(v // den) for v in vals)
        if m is None:
            L = middle_term(M, N, (coeffs[b] @ reps) % p if len(reps) else np.zeros(space.size, dtype=np.int64), space)
            m = _mult_key(ccat.decompose(L, method="pairing"))
        out.append(m)
    return out


def hall_numbers(ccat: ComplexCategory, N_mult, M_mult, budget: int = DEFAULT_BUDGET,
                 return_counts: bool = False):
    """Distribution {L: F^L_{N,M}} over all middle terms at the prime of ``ccat``."""
    p = ccat.p
    N, M = ccat.build(N_mult), ccat.build(M_mult)
    ext = ext_space(M, N)
    h = hom_dim(M, N)
    e = ext.dim
    if p ** e > budget:
        raise BudgetExceeded(f"{p}^{e} Ext classes exceed the budget {budget}")
    reps = ext.representatives
    counts: dict[tuple[int, ...], int] = {}
    allc = itertools.product(range(p), repeat=e)
    while True:
        chunk = list(itertools.islice(allc, CHUNK))
        if not chunk:
            break
        coeffs = np.array(chunk, dtype=np.int64).reshape(len(chunk), e)
        for m in _classify_batch(ccat, N, M, reps, coeffs, ext.space):
            counts[m] = counts.get(m, 0) + 1
    if return_counts:
        return counts, h, e
    return {m: Fraction(c, p ** h) for m, c in counts.items()}


def hall_number(ccat: ComplexCategory, N_mult, M_mult, L_mult, budget: int = DEFAULT_BUDGET) -> Fraction:
    dist = hall_numbers(ccat, N_mult, M_mult, budget)
    return dist.get(_mult_key(L_mult), Fraction(0))


@dataclass
class HallPolynomialResult:
    polys: dict[tuple[int, ...], LaurentPoly]
    samples: dict[int, dict[tuple[int, ...], Fraction]]
    primes: list[int]
    held_out: int
    hom_dim: int
    ext_dim: int

    def to_json(self) -> dict:
        return {
            "hom_dim": self.hom_dim,
            "ext_dim": self.ext_dim,
            "primes": self.primes,
            "held_out_prime": self.held_out,
            "polynomials": [{"L": list(k), "poly": repr(v), "coeffs": v.to_json()} for k, v in sorted(self.polys.items())],
            "samples": {str(q): {str(list(k)): str(v) for k, v in sorted(d.items())} for q, d in self.samples.items()},
        }


def hall_polynomials(quiver: DynkinQuiver, n: int, N_mult, M_mult, budget: int = DEFAULT_BUDGET,
                     max_prime: int | None = None) -> HallPolynomialResult:
    """Interpolate every F^L_{N,M} on the window [-dim Hom, dim Ext] and check one more prime."""
    c2 = complex_category(quiver, n, 2)
    N2, M2 = c2.build(N_mult), c2.build(M_mult)
    h, e = hom_dim(M2, N2), ext_space(M2, N2).dim
    gen = fp.primes_from(2)
    primes = [next(gen) for _ in range(h + e + 2)]
    if max_prime is not None and primes[-1] > max_prime:
        raise BudgetExceeded(f"needs primes up to {primes[-1]} > {max_prime}")
    samples = {}
    for q in primes:
        ccat = complex_category(quiver, n, q)
        samples[q] = hall_numbers(ccat, N_mult, M_mult, budget)
    fit, held = primes[:-1], primes[-1]
    keys = sorted(set().union(*[set(d) for d in samples.values()]))
    polys = {}
    for key in keys:
        pts = [(q, samples[q].get(key, Fraction(0))) for q in fit]
        poly = laurent_interpolate(pts, (-h, e))
        if poly(held) != samples[held].get(key, Fraction(0)):
            raise ArithmeticError(f"held-out prime {held} disagrees for L={key}")
        polys[key] = poly
    return HallPolynomialResult(polys, samples, primes, held, h, e)


def hall_polynomial(quiver, n, N_mult, M_mult, L_mult, budget: int = DEFAULT_BUDGET) -> LaurentPoly:
    res = hall_polynomials(quiver, n, N_mult, M_mult, budget)
    return res.polys.get(_mult_key(L_mult), LaurentPoly.constant(0))


# --- independent brute-force oracle ------------------------------------------

def _all_vectors(k: int, p: int):
    it = itertools.product(range(p), repeat=k)
    while True:
        chunk = list(itertools.islice(it, 1 << 14))
        if not chunk:
            return
        yield np.array(chunk, dtype=np.int64).reshape(len(chunk), k)


def _batch_maps(space: GradedSpace, vecs: np.ndarray) -> list[np.ndarray]:
    maps = [np.zeros((vecs.shape[0],) + mk.shape, dtype=np.int64) for mk in space.masks]
    for col, (i, r, c) in enumerate(space.entries):
        maps[i][:, r, c] = vecs[:, col]
    return maps


def brute_isomorphic(A: PeriodicComplex, B: PeriodicComplex) -> bool:
    """Search every degree-0 map for an invertible chain map A -> B."""
    p, n = A.p, A.n
    if any(len(A.comp(i)) != len(B.comp(i)) for i in range(n)):
        return False
    if any(sorted(A.comp(i)) != sorted(B.comp(i)) for i in range(n)):
        return False
    space = GradedSpace(A, B, 0)
    for vecs in _all_vectors(space.size, p):
        g = _batch_maps(space, vecs)
        ok = np.ones(vecs.shape[0], dtype=bool)
        for i in range(n):
            lhs = np.einsum("ij,bjk->bik", B.d(i), g[i]) % p
            rhs = np.einsum("bij,jk->bik", g[(i + 1) % n], A.d(i)) % p
            ok &= (lhs == rhs).all(axis=(1, 2))
            if g[i].shape[1]:
                ok &= fp.batched_rank(g[i], p) == g[i].shape[1]
        if ok.any():
            return True
    return False


def oracle_hall_number(ccat: ComplexCategory, N_mult, M_mult, L_mult) -> Fraction:
    """Count all degree-one maps f making [[dN, f], [0, dM]] a differential with
    middle term isomorphic to L, divided by the number of degree-zero maps M -> N."""
    p, n = ccat.p, ccat.n
    N, M, L = ccat.build(N_mult), ccat.build(M_mult), ccat.build(L_mult)
    space1 = GradedSpace(M, N, 1)
    space0 = GradedSpace(M, N, 0)
    count = 0
    for vecs in _all_vectors(space1.size, p):
        fs = _batch_maps(space1, vecs)
        for b in range(vecs.shape[0]):
            maps = [f[b] for f in fs]
            comps = tuple(N.comp(i) + M.comp(i) for i in range(n))
            diffs = []
            for i in range(n):
                dn, dm = N.d(i), M.d(i)
                d = np.zeros((dn.shape[0] + dm.shape[0], dn.shape[1] + dm.shape[1]), dtype=np.int64)
                d[: dn.shape[0], : dn.shape[1]] = dn
                d[: dn.shape[0], dn.shape[1]:] = maps[i]
                d[dn.shape[0]:, dn.shape[1]:] = dm
                diffs.append(d)
            if any(np.any((diffs[(i + 1) % n] @ diffs[i]) % p) for i in range(n)):
                continue
            if brute_isomorphic(PeriodicComplex(N.quiver, comps, tuple(diffs), p), L):
                count += 1
    return Fraction(count, p ** space0.size)
