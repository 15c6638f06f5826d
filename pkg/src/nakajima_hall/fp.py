"""Exact linear algebra over prime fields F_p on int64 numpy arrays."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from fractions import Fraction

import numpy as np


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def primes_from(start: int = 2):
    """Yield primes >= start in increasing order."""
    n = max(2, start)
    while True:
        if is_prime(n):
            yield n
        n += 1


@lru_cache(maxsize=None)
def inverse_table(p: int) -> np.ndarray:
    table = np.zeros(p, dtype=np.int64)
    for a in range(1, p):
        table[a] = pow(a, -1, p)
    return table


@dataclass(frozen=True)
class PrimeField:
    """The field of residues modulo a prime ``p``."""

    p: int

    def __post_init__(self):
        if not is_prime(self.p):
            raise ValueError(f"{self.p} is not prime")

    def __call__(self, a: int) -> int:
        return a % self.p

    def add(self, a: int, b: int) -> int:
        return (a + b) % self.p

    def mul(self, a: int, b: int) -> int:
        return (a * b) % self.p

    def neg(self, a: int) -> int:
        return (-a) % self.p

    def inv(self, a: int) -> int:
        if a % self.p == 0:
            raise ZeroDivisionError("inverse of zero in F_p")
        return pow(a, -1, self.p)

    def elements(self) -> range:
        return range(self.p)

    def symmetric(self, a: int) -> int:
        """Representative of ``a`` in (-p/2, p/2]."""
        a %= self.p
        return a - self.p if a > self.p // 2 else a


def as_matrix(a, p: int) -> np.ndarray:
    m = np.asarray(a, dtype=np.int64)
    if m.ndim == 1:
        m = m.reshape(1, -1) if m.size else m.reshape(0, 0)
    return np.mod(m, p)


def rref(a, p: int) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form over F_p and the pivot columns."""
    m = as_matrix(a, p).copy()
    rows, cols = m.shape
    inv = inverse_table(p)
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(m[r:, c])[0]
        if nz.size == 0:
            continue
        k = r + nz[0]
        if k != r:
            m[[r, k]] = m[[k, r]]
        m[r] = (m[r] * inv[m[r, c]]) % p
        col = m[:, c].copy()
        col[r] = 0
        nzr = np.nonzero(col)[0]
        if nzr.size:
            m[nzr] = (m[nzr] - np.outer(col[nzr], m[r])) % p
        pivots.append(c)
        r += 1
    return m, pivots


def rank(a, p: int) -> int:
    m = as_matrix(a, p)
    if m.size == 0:
        return 0
    return len(rref(m, p)[1])


def nullspace(a, p: int, ncols: int | None = None) -> np.ndarray:
    """Basis of {x : a x = 0}, returned as the rows of a matrix."""
    m = as_matrix(a, p)
    n = m.shape[1] if m.size or ncols is None else ncols
    if ncols is not None:
        n = ncols
        if m.size == 0:
            m = np.zeros((0, n), dtype=np.int64)
    if m.shape[0] == 0:
        return np.eye(n, dtype=np.int64)
    r, piv = rref(m, p)
    free = [c for c in range(n) if c not in set(piv)]
    basis = np.zeros((len(free), n), dtype=np.int64)
    for k, f in enumerate(free):
        basis[k, f] = 1
        for i, pc in enumerate(piv):
            basis[k, pc] = (-r[i, f]) % p
    return basis


def solve(a, b, p: int):
    """Affine solution set of ``a x = b``.

    Returns ``(x0, kernel)`` with kernel basis as rows, or ``None`` when the
    system is inconsistent.
    """
    m = as_matrix(a, p)
    rhs = np.mod(np.asarray(b, dtype=np.int64).reshape(-1), p)
    if m.shape[0] != rhs.shape[0]:
        raise ValueError(f"rhs length {rhs.shape[0]} does not match {m.shape[0]} rows")
    n = m.shape[1]
    aug = np.concatenate([m, rhs.reshape(-1, 1)], axis=1)
    r, piv = rref(aug, p)
    if n in piv:
        return None
    x0 = np.zeros(n, dtype=np.int64)
    for i, pc in enumerate(piv):
        x0[pc] = r[i, n]
    return x0, nullspace(m, p, ncols=n)


def inverse(a, p: int) -> np.ndarray:
    m = as_matrix(a, p)
    n = m.shape[0]
    if m.shape != (n, n):
        raise ValueError("inverse of a non-square matrix")
    r, piv = rref(np.concatenate([m, np.eye(n, dtype=np.int64)], axis=1), p)
    if [c for c in piv if c < n] != list(range(n)):
        raise ZeroDivisionError("matrix is singular over F_p")
    return r[:, n:]


def row_space_basis(a, p: int) -> np.ndarray:
    """Rows of the RREF spanning the row space of ``a``."""
    m = as_matrix(a, p)
    if m.shape[0] == 0:
        return m
    r, piv = rref(m, p)
    return r[: len(piv)]


def complement_basis(sub, ambient_dim: int, p: int) -> np.ndarray:
    """Standard basis vectors completing the row space of ``sub`` to F_p^n."""
    m = as_matrix(sub, p) if np.size(sub) else np.zeros((0, ambient_dim), dtype=np.int64)
    if m.shape[0] == 0:
        return np.eye(ambient_dim, dtype=np.int64)
    _, piv = rref(m, p)
    free = [c for c in range(ambient_dim) if c not in set(piv)]
    out = np.zeros((len(free), ambient_dim), dtype=np.int64)
    for k, f in enumerate(free):
        out[k, f] = 1
    return out


def batched_rank(stack: np.ndarray, p: int) -> np.ndarray:
    """Ranks of a stack of matrices of shape (batch, rows, cols) over F_p."""
    m = np.mod(np.array(stack, dtype=np.int64), p)
    batch, rows, cols = m.shape
    inv = inverse_table(p)
    ranks = np.zeros(batch, dtype=np.int64)
    if rows == 0 or cols == 0:
        return ranks
    idx = np.arange(batch)
    used = np.zeros((batch, rows), dtype=bool)
    for c in range(cols):
        col = m[:, :, c]
        cand = (col != 0) & ~used
        has = cand.any(axis=1)
        if not has.any():
            continue
        prow = np.argmax(cand, axis=1)
        b = idx[has]
        pr = prow[has]
        used[b, pr] = True
        ranks[has] += 1
        pivot_rows = m[b, pr, :]
        pivot_rows = (pivot_rows * inv[pivot_rows[:, c]][:, None]) % p
        m[b, pr, :] = pivot_rows
        factors = m[b, :, c].copy()
        factors[np.arange(b.size), pr] = 0
        m[b] = (m[b] - factors[:, :, None] * pivot_rows[:, None, :]) % p
    return ranks


def rational_rank(rows) -> int:
    """Rank of an integer or rational matrix over Q."""
    m = [[Fraction(x) for x in row] for row in rows]
    if not m:
        return 0
    ncols = len(m[0])
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c] / m[r][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        r += 1
        if r == len(m):
            break
    return r


def rational_solve(rows, rhs) -> list[Fraction] | None:
    """Unique solution of a square nonsingular rational system, else None."""
    n = len(rows)
    m = [[Fraction(x) for x in row] + [Fraction(b)] for row, b in zip(rows, rhs)]
    for c in range(n):
        piv = next((i for i in range(c, n) if m[i][c] != 0), None)
        if piv is None:
            return None
        m[c], m[piv] = m[piv], m[c]
        pv = m[c][c]
        m[c] = [x / pv for x in m[c]]
        for i in range(n):
            if i != c and m[i][c] != 0:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[c])]
    return [m[i][n] for i in range(n)]
