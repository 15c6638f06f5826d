"""Finite-dimensional modules over a presented category (R, S or P).

Modules are contravariant: an arrow ``g: y -> y'`` acts by a matrix
``M(y') -> M(y)`` of shape ``(dim M(y), dim M(y'))``, and a path
``(a_1, ..., a_k)`` acts by the product ``M(a_1) @ ... @ M(a_k)``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import fp

__all__ = [
    "SModuleRep",
    "representable",
    "res_representable",
    "simple_module",
    "hom_space",
    "hom_dim",
    "ext1_smod",
    "is_isomorphic",
    "submodule",
    "quotient",
    "top_dims",
    "radical_dims",
    "is_projective",
]


@dataclass(eq=False)
class SModuleRep:
    pres: object
    dims: list[int]
    maps: dict[int, np.ndarray]
    p: int

    def __post_init__(self):
        self.dims = [int(d) for d in self.dims]
        for a, ar in enumerate(self.pres.arrows):
            m = self.maps.get(a)
            if m is None:
                m = np.zeros((self.dims[ar.src], self.dims[ar.tgt]), dtype=np.int64)
            self.maps[a] = np.asarray(m, dtype=np.int64).reshape(self.dims[ar.src], self.dims[ar.tgt]) % self.p

    @property
    def total_dim(self) -> int:
        return sum(self.dims)

    @property
    def dim_vector(self) -> tuple[int, ...]:
        return tuple(self.dims)

    def path_action(self, path, start: int | None = None) -> np.ndarray:
        if not path:
            if start is None:
                raise ValueError("empty path needs a start vertex")
            return np.eye(self.dims[start], dtype=np.int64)
        m = self.maps[path[0]]
        for a in path[1:]:
            m = (m @ self.maps[a]) % self.p
        return m

    def combo_action(self, i: int, j: int, terms) -> np.ndarray:
        """Action M(j) -> M(i) of a linear combination of paths i -> j."""
        out = np.zeros((self.dims[i], self.dims[j]), dtype=np.int64)
        for c, path in terms:
            out = (out + c * self.path_action(path, i)) % self.p
        return out

    def element_action(self, i: int, j: int, vec) -> np.ndarray:
        """Action of a morphism i -> j given in the presentation's Hom basis."""
        out = np.zeros((self.dims[i], self.dims[j]), dtype=np.int64)
        for coef, combo in zip(np.asarray(vec).reshape(-1), self.pres.basis_combos(i, j)):
            if coef % self.p:
                out = (out + int(coef) * self.combo_action(i, j, combo)) % self.p
        return out

    def relation_defects(self) -> list[int]:
        bad = []
        for k, rel in enumerate(self.pres.relations):
            s = self.pres.arrows[rel[0][1][0]].src
            t = self.pres.path_end(rel[0][1])
            if np.any(self.combo_action(s, t, rel)):
                bad.append(k)
        return bad

    def validate(self) -> None:
        bad = self.relation_defects()
        if bad:
            raise ValueError(f"relations {bad} do not hold")

    def direct_sum(self, other: "SModuleRep") -> "SModuleRep":
        maps = {}
        for a, ar in enumerate(self.pres.arrows):
            x, y = self.maps[a], other.maps[a]
            m = np.zeros((x.shape[0] + y.shape[0], x.shape[1] + y.shape[1]), dtype=np.int64)
            m[: x.shape[0], : x.shape[1]] = x
            m[x.shape[0]:, x.shape[1]:] = y
            maps[a] = m
        return SModuleRep(self.pres, [a + b for a, b in zip(self.dims, other.dims)], maps, self.p)

    @classmethod
    def zero(cls, pres, p) -> "SModuleRep":
        return cls(pres, [0] * pres.n, {}, p)

    def to_json(self) -> dict:
        return {"category": self.pres.which, "dims": list(self.dims),
                "arrows": {self.pres.arrows[a].name: m.tolist() for a, m in self.maps.items()}}


def representable(pres, x: int, p: int | None = None) -> SModuleRep:
    """x^ = Hom(?, x): arrows act by prepending."""
    amb = pres.ambient
    p = p or amb.p
    dims = [pres.hom_dim(y, x) for y in range(pres.n)]
    maps = {}
    for a, ar in enumerate(pres.arrows):
        mat = np.zeros((dims[ar.src], dims[ar.tgt]), dtype=np.int64)
        for col, (_, path) in enumerate(pres.hom_basis(ar.tgt, x)):
            _, vec = amb.evaluate(pres.vertex_ids[ar.src], ar.rpath + path)
            mat[:, col] = vec
        maps[a] = mat
    return SModuleRep(pres, dims, maps, p)


def res_representable(setup, x: int) -> SModuleRep:
    """res(x^) for a vertex x of R, as a module over the presented S."""
    S = setup.present("S")
    R = setup.R
    dims = [R.hom_dim(s, x) for s in S.vertex_ids]
    maps = {}
    for a, ar in enumerate(S.arrows):
        src, tgt = S.vertex_ids[ar.src], S.vertex_ids[ar.tgt]
        mat = np.zeros((dims[ar.src], dims[ar.tgt]), dtype=np.int64)
        for col, (_, path) in enumerate(R.hom_basis(tgt, x)):
            _, vec = R.evaluate(src, ar.rpath + path)
            mat[:, col] = vec
        maps[a] = mat
    return SModuleRep(S, dims, maps, R.p)


def simple_module(pres, x: int, p: int) -> SModuleRep:
    dims = [1 if y == x else 0 for y in range(pres.n)]
    return SModuleRep(pres, dims, {}, p)


def _hom_operator(M: SModuleRep, N: SModuleRep):
    offs, tot = [], 0
    for y in range(M.pres.n):
        offs.append(tot)
        tot += N.dims[y] * M.dims[y]
    blocks = []
    for a, ar in enumerate(M.pres.arrows):
        s, t = ar.src, ar.tgt
        rows = N.dims[s] * M.dims[t]
        blk = np.zeros((rows, tot), dtype=np.int64)
        if rows:
            # N_g f_t - f_s M_g
            if N.dims[t] * M.dims[t]:
                blk[:, offs[t]:offs[t] + N.dims[t] * M.dims[t]] += np.kron(N.maps[a], np.eye(M.dims[t], dtype=np.int64))
            if N.dims[s] * M.dims[s]:
                blk[:, offs[s]:offs[s] + N.dims[s] * M.dims[s]] -= np.kron(np.eye(N.dims[s], dtype=np.int64), M.maps[a].T)
        blocks.append(blk)
    op = np.concatenate(blocks, axis=0) if blocks else np.zeros((0, tot), dtype=np.int64)
    return op % M.p, offs, tot


def hom_space(M: SModuleRep, N: SModuleRep) -> list[list[np.ndarray]]:
    """Basis of Hom(M, N); each element is a list of matrices f_y: M(y) -> N(y)."""
    op, offs, tot = _hom_operator(M, N)
    basis = fp.nullspace(op, M.p, ncols=tot) if tot else np.zeros((0, 0), dtype=np.int64)
    return [_unflatten(v, M, N, offs) for v in basis]


def hom_dim(M: SModuleRep, N: SModuleRep) -> int:
    op, _, tot = _hom_operator(M, N)
    return tot - (fp.rank(op, M.p) if op.size else 0)


def _unflatten(v, M, N, offs):
    return [np.asarray(v[offs[y]:offs[y] + N.dims[y] * M.dims[y]]).reshape(N.dims[y], M.dims[y])
            for y in range(M.pres.n)]


@dataclass
class Ext1Space:
    M: SModuleRep
    N: SModuleRep
    offsets: list[int]          # per arrow, into the cochain vector
    cocycles: np.ndarray
    coboundaries: np.ndarray

    @property
    def dim(self) -> int:
        return self.cocycles.shape[0] - self.coboundaries.shape[0]

    def representatives(self) -> np.ndarray:
        p = self.M.p
        span, cur, reps = self.coboundaries, self.coboundaries.shape[0], []
        for v in self.cocycles:
            trial = np.concatenate([span, v.reshape(1, -1)]) if span.size else v.reshape(1, -1)
            if fp.rank(trial, p) > cur:
                span, cur = trial, cur + 1
                reps.append(v)
        return np.array(reps, dtype=np.int64).reshape(len(reps), self.cocycles.shape[1])

    def middle_term(self, d) -> SModuleRep:
        """L = N + M with L(g) = [[N_g, d_g], [0, M_g]]; N is the submodule."""
        M, N = self.M, self.N
        maps = {}
        for a, ar in enumerate(M.pres.arrows):
            s, t = ar.src, ar.tgt
            blk = np.asarray(d[self.offsets[a]:self.offsets[a] + N.dims[s] * M.dims[t]]).reshape(N.dims[s], M.dims[t])
            m = np.zeros((N.dims[s] + M.dims[s], N.dims[t] + M.dims[t]), dtype=np.int64)
            m[: N.dims[s], : N.dims[t]] = N.maps[a]
            m[: N.dims[s], N.dims[t]:] = blk
            m[N.dims[s]:, N.dims[t]:] = M.maps[a]
            maps[a] = m
        L = SModuleRep(M.pres, [a + b for a, b in zip(N.dims, M.dims)], maps, M.p)
        L.validate()
        return L


def ext1_smod(M: SModuleRep, N: SModuleRep) -> Ext1Space:
    """Ext^1(M, N) from the vertex -> arrow -> relation cochain complex."""
    pres, p = M.pres, M.p
    arrows = pres.arrows
    offs, tot = [], 0
    for ar in arrows:
        offs.append(tot)
        tot += N.dims[ar.src] * M.dims[ar.tgt]
    # delta_2
    rows = []
    for rel in pres.relations:
        s = arrows[rel[0][1][0]].src
        t = pres.path_end(rel[0][1])
        blk = np.zeros((N.dims[s] * M.dims[t], tot), dtype=np.int64)
        for c, path in rel:
            for j, a in enumerate(path):
                pre = N.path_action(path[:j], s)
                post = M.path_action(path[j + 1:], arrows[a].tgt)
                sz = N.dims[arrows[a].src] * M.dims[arrows[a].tgt]
                if sz and blk.shape[0]:
                    blk[:, offs[a]:offs[a] + sz] += c * np.kron(pre, post.T)
        rows.append(blk % p)
    d2 = np.concatenate(rows, axis=0) if rows else np.zeros((0, tot), dtype=np.int64)
    Z = fp.nullspace(d2, p, ncols=tot) if tot else np.zeros((0, 0), dtype=np.int64)
    # delta_1(h)_g = N_g h_t - h_s M_g
    op, _, htot = _hom_operator(M, N)
    B = fp.row_space_basis(op.T, p) if op.size and htot else np.zeros((0, tot), dtype=np.int64)
    Z = Z.reshape(-1, tot) if Z.size else np.zeros((0, tot), dtype=np.int64)
    B = B.reshape(-1, tot) if B.size else np.zeros((0, tot), dtype=np.int64)
    return Ext1Space(M, N, offs, Z, B)


def is_isomorphic(M: SModuleRep, N: SModuleRep, tries: int = 40, seed: int = 0) -> bool:
    """Search Hom(M, N) for an isomorphism (exhaustive when small, else random)."""
    if M.dims != N.dims:
        return False
    if M.total_dim == 0:
        return True
    basis = hom_space(M, N)
    if not basis:
        return False
    p = M.p

    def invertible(coeffs):
        for y in range(M.pres.n):
            if M.dims[y] == 0:
                continue
            f = sum(int(c) * b[y] for c, b in zip(coeffs, basis)) % p
            if fp.rank(f, p) < M.dims[y]:
                return False
        return True

    k = len(basis)
    if p ** k <= 4096:
        import itertools

        return any(invertible(c) for c in itertools.product(range(p), repeat=k))
    rng = np.random.default_rng(seed)
    return any(invertible(rng.integers(0, p, size=k)) for _ in range(tries))


def submodule(M: SModuleRep, gens: dict[int, np.ndarray]) -> dict[int, np.ndarray]:
    """Row bases of the submodule generated by vectors at each vertex."""
    p = M.p
    span = {y: fp.row_space_basis(np.asarray(gens.get(y, np.zeros((0, M.dims[y]), dtype=np.int64))).reshape(-1, M.dims[y]), p)
            if M.dims[y] else np.zeros((0, 0), dtype=np.int64) for y in range(M.pres.n)}
    changed = True
    while changed:
        changed = False
        for a, ar in enumerate(M.pres.arrows):
            src_span = span[ar.tgt]
            if src_span.shape[0] == 0 or M.dims[ar.src] == 0:
                continue
            img = (M.maps[a] @ src_span.T).T % p
            cur = span[ar.src]
            stacked = np.concatenate([cur, img]) if cur.size else img
            new = fp.row_space_basis(stacked, p)
            if new.shape[0] > cur.shape[0]:
                span[ar.src] = new
                changed = True
    return span


def quotient(M: SModuleRep, sub: dict[int, np.ndarray]) -> SModuleRep:
    """M / sub, using standard-basis complements of the sub spaces."""
    p = M.p
    comps, projs, dims = {}, {}, []
    for y in range(M.pres.n):
        d = M.dims[y]
        s = sub[y] if sub[y].size else np.zeros((0, d), dtype=np.int64)
        comp = fp.complement_basis(s, d, p) if d else np.zeros((0, 0), dtype=np.int64)
        comps[y] = comp
        # coordinates of a vector modulo s in the complement basis
        basis = np.concatenate([s, comp]) if d else np.zeros((0, 0), dtype=np.int64)
        if d:
            inv = fp.inverse(basis.T, p)
            projs[y] = inv[s.shape[0]:, :]
        else:
            projs[y] = np.zeros((0, 0), dtype=np.int64)
        dims.append(comp.shape[0])
    maps = {}
    for a, ar in enumerate(M.pres.arrows):
        if dims[ar.src] and dims[ar.tgt]:
            maps[a] = (projs[ar.src] @ M.maps[a] @ comps[ar.tgt].T) % p
    return SModuleRep(M.pres, dims, maps, p)


def radical_dims(M: SModuleRep) -> list[int]:
    """dim (rad M)(y), rad M(y) = sum of images of arrows out of y."""
    out = []
    for y in range(M.pres.n):
        imgs = [M.maps[a] for a, ar in enumerate(M.pres.arrows) if ar.src == y and M.dims[ar.tgt]]
        if not imgs or M.dims[y] == 0:
            out.append(0)
            continue
        out.append(fp.rank(np.concatenate(imgs, axis=1), M.p))
    return out


def top_dims(M: SModuleRep) -> list[int]:
    return [d - r for d, r in zip(M.dims, radical_dims(M))]


def is_projective(M: SModuleRep) -> tuple[bool, list[int]]:
    """Projective iff the projective cover of the top has the same dimension."""
    top = top_dims(M)
    pres = M.pres
    for y in range(pres.n):
        if sum(t * pres.hom_dim(y, x) for x, t in enumerate(top)) != M.dims[y]:
            return False, top
    return True, top
