"""Graded path categories: a quiver modulo homogeneous quadratic relations.

Hom spaces are computed degree by degree from each source vertex x:
``A_d(x, y)`` is the quotient of ``(+)_{b: w -> y} A_{d-1}(x, w)`` by the image
of ``A_{d-2}(x, u) (x) r`` over the relations ``r: u -> y``.  Paths are tuples of
arrow indices read left to right (first arrow first).
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import fp

DEFAULT_PRIME = 1_000_003


class DegreeCapExceeded(RuntimeError):
    """Raised when Hom spaces do not vanish below the degree cap."""


@dataclass
class _Layer:
    basis: list[tuple[int, ...]]          # representative paths
    blocks: dict[int, tuple[int, int]]    # incoming arrow -> (offset, size)
    proj: np.ndarray                      # ambient coords -> basis coords

    @property
    def dim(self) -> int:
        return len(self.basis)


@dataclass
class GradedPathCategory:
    """Path category of a finite quiver modulo homogeneous degree-2 relations.

    ``relations`` is a list of ``(source, target, [(coef, path), ...])`` with
    every path of length two.
    """

    n_vertices: int
    arrows: list[tuple[int, int]]
    relations: list[tuple[int, int, list[tuple[int, tuple[int, ...]]]]]
    p: int = DEFAULT_PRIME
    degree_cap: int | None = None
    _layers: dict[int, list[dict[int, _Layer]]] = field(default_factory=dict, repr=False)

    def __post_init__(self):
        if self.degree_cap is None:
            self.degree_cap = 4 * max(self.n_vertices, 1)
        for s, t, terms in self.relations:
            for _, path in terms:
                if len(path) != 2:
                    raise ValueError("relations must be quadratic")
                a, b = path
                if self.arrows[a][0] != s or self.arrows[b][1] != t or self.arrows[a][1] != self.arrows[b][0]:
                    raise ValueError(f"relation path {path} is not a path {s} -> {t}")

    # -- construction ------------------------------------------------------
    def layers(self, x: int) -> list[dict[int, _Layer]]:
        if x not in self._layers:
            self._layers[x] = self._build(x)
        return self._layers[x]

    def _build(self, x: int) -> list[dict[int, _Layer]]:
        p = self.p
        one = np.ones((1, 1), dtype=np.int64)
        out: list[dict[int, _Layer]] = [{x: _Layer([()], {}, one)}]
        incoming = {y: [b for b, (_, t) in enumerate(self.arrows) if t == y] for y in range(self.n_vertices)}
        rels_into = {y: [r for r in self.relations if r[1] == y] for y in range(self.n_vertices)}
        d = 0
        while out[-1]:
            d += 1
            if d > self.degree_cap:
                raise DegreeCapExceeded(f"Hom spaces from vertex {x} nonzero beyond degree {self.degree_cap}")
            prev = out[-1]
            layer: dict[int, _Layer] = {}
            for y in range(self.n_vertices):
                blocks, off = {}, 0
                for b in incoming[y]:
                    w = self.arrows[b][0]
                    if w in prev:
                        blocks[b] = (off, prev[w].dim)
                        off += prev[w].dim
                if off == 0:
                    continue
                rows = []
                if d >= 2:
                    for u, _, terms in rels_into[y]:
                        if u not in out[d - 2]:
                            continue
                        for rep in out[d - 2][u].basis:
                            vec = np.zeros(off, dtype=np.int64)
                            for coef, (a1, a2) in terms:
                                if a2 not in blocks:
                                    continue
                                w = self.arrows[a1][1]
                                v1 = self._eval_from(x, rep + (a1,), out)
                                if v1 is None:
                                    continue
                                o, sz = blocks[a2]
                                vec[o:o + sz] += coef * v1[2]
                            rows.append(vec % p)
                proj, free = _quotient_projection(rows, off, p)
                if not free:
                    continue
                inv_blocks = sorted((o, b) for b, (o, _) in blocks.items())
                basis = []
                for c in free:
                    o, b = max(ob for ob in inv_blocks if ob[0] <= c)
                    w = self.arrows[b][0]
                    basis.append(prev[w].basis[c - o] + (b,))
                layer[y] = _Layer(basis, blocks, proj)
            out.append(layer)
        out.pop()
        return out

    def _eval_from(self, x, path, layers):
        """(target, degree, coords) of a path from x using partially built layers."""
        vec = np.ones(1, dtype=np.int64)
        y = x
        for d, b in enumerate(path, start=1):
            s, t = self.arrows[b]
            if s != y:
                raise ValueError(f"path {path} is not composable")
            if d >= len(layers) or t not in layers[d] or b not in layers[d][t].blocks:
                return None
            lay = layers[d][t]
            amb = np.zeros(lay.proj.shape[0], dtype=np.int64)
            o, sz = lay.blocks[b]
            amb[o:o + sz] = vec
            vec = (amb @ lay.proj) % self.p
            y = t
        return y, len(path), vec

    # -- queries -----------------------------------------------------------
    def path_target(self, x: int, path) -> int:
        y = x
        for b in path:
            if self.arrows[b][0] != y:
                raise ValueError(f"path {path} is not composable from {x}")
            y = self.arrows[b][1]
        return y

    def graded_dims(self, x: int, y: int) -> list[int]:
        return [lay[y].dim if y in lay else 0 for lay in self.layers(x)]

    def hom_dim(self, x: int, y: int) -> int:
        return sum(self.graded_dims(x, y))

    def hom_basis(self, x: int, y: int) -> list[tuple[int, tuple[int, ...]]]:
        """(degree, representative path) for a basis of Hom(x, y)."""
        out = []
        for d, lay in enumerate(self.layers(x)):
            if y in lay:
                out.extend((d, rep) for rep in lay[y].basis)
        return out

    def offsets(self, x: int, y: int) -> list[int]:
        offs, tot = [], 0
        for dim in self.graded_dims(x, y):
            offs.append(tot)
            tot += dim
        return offs

    def evaluate(self, x: int, path) -> tuple[int, np.ndarray]:
        """Target and coordinates of a path from x in the flat basis of Hom(x, target)."""
        y = self.path_target(x, path)
        flat = np.zeros(self.hom_dim(x, y), dtype=np.int64)
        res = self._eval_from(x, tuple(path), self.layers(x))
        if res is not None:
            d = len(path)
            o = self.offsets(x, y)[d]
            flat[o:o + res[2].size] = res[2]
        return y, flat

    def evaluate_combination(self, x: int, y: int, terms) -> np.ndarray:
        flat = np.zeros(self.hom_dim(x, y), dtype=np.int64)
        for coef, path in terms:
            t, v = self.evaluate(x, path)
            if t != y:
                raise ValueError("combination of paths with different targets")
            flat = (flat + coef * v) % self.p
        return flat

    def max_degree(self) -> int:
        return max(len(self.layers(x)) - 1 for x in range(self.n_vertices)) if self.n_vertices else 0


def _quotient_projection(rows, n, p):
    """Projection F_p^n -> F_p^n / span(rows) onto the non-pivot coordinates."""
    if rows:
        r, piv = fp.rref(np.array(rows, dtype=np.int64).reshape(-1, n), p)
        r = r[: len(piv)]
    else:
        r, piv = np.zeros((0, n), dtype=np.int64), []
    free = [c for c in range(n) if c not in set(piv)]
    red = np.eye(n, dtype=np.int64)
    for i, c in enumerate(piv):
        red[c] = (red[c] - r[i]) % p
    return red[:, free] % p, free
