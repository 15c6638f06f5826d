"""Dynkin quivers, their indecomposable modules, AR theory and ind D_Q.

Modules are representations over F_p built with BGP reflection functors.
Convention: an arrow ``i -> j`` acts by a matrix ``V_i -> V_j`` (shape
``dim V_j x dim V_i``), and ``P_i`` is spanned by the paths starting at ``i``,
so ``Hom(P_j, P_i)`` is the space of paths ``i ~> j`` and ``rad P_i`` is the sum
of ``P_j`` over arrows ``i -> j``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property, lru_cache

import numpy as np

from . import fp

__all__ = [
    "DynkinQuiver",
    "KQRep",
    "IndKQ",
    "DerivedObject",
    "AutoSpec",
    "ModuleCategory",
    "build_module_category",
    "derived_act",
    "derived_hom_dim",
    "ar_triangle_middle",
    "check_assumption",
    "canonical",
    "fundamental_domain",
    "orbit_window",
]


@dataclass(frozen=True)
class DynkinQuiver:
    """An orientation of a simply-laced Dynkin diagram on vertices ``1..n``."""

    vertices: tuple[int, ...]
    arrows: tuple[tuple[int, int], ...]
    kind: str = field(default="", compare=False)

    def __post_init__(self):
        verts = set(self.vertices)
        for s, t in self.arrows:
            if s not in verts or t not in verts or s == t:
                raise ValueError(f"bad arrow {(s, t)}")
        kind = _classify(self.vertices, self.arrows)
        if self.kind and self.kind != kind:
            raise ValueError(f"quiver has type {kind}, not {self.kind}")
        object.__setattr__(self, "kind", kind)

    @classmethod
    def from_arrows(cls, arrows, vertices=None, kind: str = "") -> "DynkinQuiver":
        arrows = tuple((int(s), int(t)) for s, t in arrows)
        if vertices is None:
            vertices = sorted({v for a in arrows for v in a}) or [1]
        return cls(tuple(int(v) for v in vertices), arrows, kind)

    @classmethod
    def linear_a(cls, n: int) -> "DynkinQuiver":
        """A_n with arrows ``i -> i+1``."""
        return cls(tuple(range(1, n + 1)), tuple((i, i + 1) for i in range(1, n)))

    @property
    def n(self) -> int:
        return len(self.vertices)

    def index(self, v: int) -> int:
        return self.vertices.index(v)

    @cached_property
    def path_counts(self) -> np.ndarray:
        """Entry (i, j) is the number of paths i ~> j (0 or 1 on a tree)."""
        n = self.n
        adj = np.zeros((n, n), dtype=np.int64)
        for s, t in self.arrows:
            adj[self.index(s), self.index(t)] += 1
        total = np.eye(n, dtype=np.int64)
        power = np.eye(n, dtype=np.int64)
        for _ in range(n):
            power = power @ adj
            total = total + power
        return total

    def has_path(self, i: int, j: int) -> bool:
        return bool(self.path_counts[self.index(i), self.index(j)])

    def path(self, i: int, j: int) -> list[int]:
        """Arrow indices along the unique path i ~> j."""
        if i == j:
            return []
        for k, (s, t) in enumerate(self.arrows):
            if s == i and self.has_path(t, j):
                return [k] + self.path(t, j)
        raise ValueError(f"no path {i} ~> {j}")

    @cached_property
    def euler_matrix(self) -> np.ndarray:
        n = self.n
        e = np.eye(n, dtype=np.int64)
        for s, t in self.arrows:
            e[self.index(s), self.index(t)] -= 1
        return e

    def euler(self, x, y) -> int:
        return int(np.asarray(x) @ self.euler_matrix @ np.asarray(y))

    @cached_property
    def coxeter(self) -> np.ndarray:
        # dim tau M = coxeter @ dim M for M non-projective
        return -self.path_counts @ self.euler_matrix.T

    @cached_property
    def coxeter_inverse(self) -> np.ndarray:
        return -self.path_counts.T @ self.euler_matrix

    def neighbors(self, v: int) -> list[int]:
        return [t for s, t in self.arrows if s == v] + [s for s, t in self.arrows if t == v]

    def sinks(self) -> list[int]:
        return [v for v in self.vertices if all(s != v for s, _ in self.arrows)]

    @property
    def num_positive_roots(self) -> int:
        kind, n = self.kind[0], self.n
        return {"A": n * (n + 1) // 2, "D": n * (n - 1)}.get(kind, {6: 36, 7: 63, 8: 120}.get(n, 0))

    def to_json(self) -> dict:
        return {"type": self.kind, "vertices": list(self.vertices), "arrows": [list(a) for a in self.arrows]}


def _classify(vertices, arrows) -> str:
    n = len(vertices)
    if len(arrows) != n - 1:
        raise ValueError("a Dynkin quiver is a tree: need n-1 arrows")
    nbrs = {v: set() for v in vertices}
    for s, t in arrows:
        nbrs[s].add(t)
        nbrs[t].add(s)
    seen, stack = set(), [vertices[0]]
    while stack:
        v = stack.pop()
        if v not in seen:
            seen.add(v)
            stack.extend(nbrs[v] - seen)
    if len(seen) != n or any(len(nbrs[s] & {t}) == 0 for s, t in arrows):
        raise ValueError("underlying graph is not a connected tree")
    if len({frozenset(a) for a in arrows}) != len(arrows):
        raise ValueError("multiple edges")
    degs = sorted((len(x) for x in nbrs.values()), reverse=True)
    if not degs or degs[0] <= 2:
        return f"A{n}"
    if degs[0] > 3 or (len(degs) > 1 and degs[1] > 2):
        raise ValueError("not a Dynkin diagram")
    center = next(v for v in vertices if len(nbrs[v]) == 3)
    branches = []
    for start in nbrs[center]:
        length, prev, cur = 1, center, start
        while len(nbrs[cur]) == 2:
            prev, cur = cur, next(iter(nbrs[cur] - {prev}))
            length += 1
        branches.append(length)
    branches.sort()
    if branches[:2] == [1, 1]:
        return f"D{n}"
    if branches[0] == 1 and branches[1] == 2 and branches[2] in (2, 3, 4):
        return f"E{n}"
    raise ValueError(f"not a Dynkin diagram (branches {branches})")


@dataclass
class KQRep:
    """A representation of a quiver (no relations) over F_p."""

    quiver_arrows: tuple[tuple[int, int], ...]
    dims: dict[int, int]
    maps: dict[int, np.ndarray]
    p: int

    @property
    def dim_vector(self) -> tuple[int, ...]:
        return tuple(self.dims[v] for v in sorted(self.dims))

    def path_map(self, arrow_ids) -> np.ndarray:
        if not arrow_ids:
            raise ValueError("empty path: use an identity of the right size")
        m = self.maps[arrow_ids[0]]
        for a in arrow_ids[1:]:
            m = (self.maps[a] @ m) % self.p
        return m


def _rep_hom_ext(quiver: DynkinQuiver, m: KQRep, n: KQRep, p: int) -> tuple[int, int]:
    """(dim Hom(M, N), dim Ext^1(M, N)) from the standard two-term complex."""
    verts = quiver.vertices
    offs, total = {}, 0
    for v in verts:
        offs[v] = total
        total += n.dims[v] * m.dims[v]
    blocks = []
    target = 0
    for k, (s, t) in enumerate(quiver.arrows):
        rows = n.dims[t] * m.dims[s]
        target += rows
        block = np.zeros((rows, total), dtype=np.int64)
        if rows:
            # N_a f_s - f_t M_a, row-major vec
            if n.dims[s] * m.dims[s]:
                block[:, offs[s]:offs[s] + n.dims[s] * m.dims[s]] = np.kron(
                    n.maps[k], np.eye(m.dims[s], dtype=np.int64))
            if n.dims[t] * m.dims[t]:
                block[:, offs[t]:offs[t] + n.dims[t] * m.dims[t]] -= np.kron(
                    np.eye(n.dims[t], dtype=np.int64), m.maps[k].T)
        blocks.append(block)
    mat = np.concatenate(blocks, axis=0) if blocks else np.zeros((0, total), dtype=np.int64)
    r = fp.rank(mat, p) if mat.size else 0
    return total - r, target - r


@dataclass(frozen=True)
class IndKQ:
    """An indecomposable kQ-module, identified by its dimension vector."""

    id: int
    dim: tuple[int, ...]
    projective_of: int | None = None
    injective_of: int | None = None
    simple_of: int | None = None

    @property
    def name(self) -> str:
        if self.projective_of is not None:
            return f"P{self.projective_of}"
        if self.injective_of is not None:
            return f"I{self.injective_of}"
        if self.simple_of is not None:
            return f"S{self.simple_of}"
        return "M" + "".join(str(d) for d in self.dim)

    @property
    def names(self) -> list[str]:
        out = []
        for tag, v in (("P", self.projective_of), ("I", self.injective_of), ("S", self.simple_of)):
            if v is not None:
                out.append(f"{tag}{v}")
        return out or [self.name]


@dataclass(frozen=True)
class DerivedObject:
    """Sigma^shift of an indecomposable module: an indecomposable of D_Q."""

    module: int
    shift: int = 0

    def __repr__(self):
        return f"({self.module},{self.shift})"


@dataclass(frozen=True)
class AutoSpec:
    """A triangle autoequivalence F: ``sigma_power`` (Sigma^n) or ``sigma_tau_inverse``."""

    kind: str
    n: int = 2

    def __post_init__(self):
        if self.kind not in ("sigma_power", "sigma_tau_inverse"):
            raise ValueError(f"unknown autoequivalence {self.kind}")
        if self.kind == "sigma_power" and self.n < 1:
            raise ValueError("Sigma^n needs n >= 1")

    @classmethod
    def parse(cls, text: str) -> "AutoSpec":
        text = text.strip().replace(" ", "")
        if text in ("sigma_tau_inverse", "Sigma*tau^-1", "Στ⁻¹"):
            return cls("sigma_tau_inverse")
        for prefix in ("sigma^", "Sigma^", "sigma_power:", "Σ^"):
            if text.startswith(prefix):
                return cls("sigma_power", int(text[len(prefix):]))
        raise ValueError(f"cannot parse autoequivalence {text!r}")

    def __str__(self):
        return f"Sigma^{self.n}" if self.kind == "sigma_power" else "Sigma tau^-1"


def _reflect_source(quiver_arrows, rep: KQRep, k: int) -> tuple[tuple, KQRep]:
    """BGP reflection S_k^- at a source k; returns the reflected quiver and rep."""
    p = rep.p
    out_arrows = [a for a, (s, t) in enumerate(quiver_arrows) if s == k]
    assert all(t != k for _, t in quiver_arrows), "k must be a source"
    targets = [quiver_arrows[a][1] for a in out_arrows]
    dk = rep.dims[k]
    total = sum(rep.dims[t] for t in targets)
    phi = np.zeros((total, dk), dtype=np.int64)
    off = []
    r = 0
    for a, t in zip(out_arrows, targets):
        off.append(r)
        phi[r:r + rep.dims[t], :] = rep.maps[a]
        r += rep.dims[t]
    quotient = fp.nullspace(phi.T, p, ncols=total) if total else np.zeros((0, 0), dtype=np.int64)
    new_arrows = list(quiver_arrows)
    new_maps = dict(rep.maps)
    for a, t, o in zip(out_arrows, targets, off):
        new_arrows[a] = (t, k)
        new_maps[a] = quotient[:, o:o + rep.dims[t]] % p
    dims = dict(rep.dims)
    dims[k] = quotient.shape[0]
    for a, t in zip(out_arrows, targets):
        new_maps[a] = new_maps[a].reshape(dims[k], rep.dims[t])
    return tuple(new_arrows), KQRep(tuple(new_arrows), dims, new_maps, p)


def _admissible_sinks(quiver: DynkinQuiver) -> list[int]:
    order, arrows = [], list(quiver.arrows)
    remaining = list(quiver.vertices)
    while remaining:
        k = next(v for v in remaining
                 if all(not (s == v and t in remaining) for s, t in arrows))
        order.append(k)
        remaining.remove(k)
    return order


@dataclass
class ModuleCategory:
    """mod kQ over F_p: indecomposables, Hom/Ext tables, AR data, resolutions."""

    quiver: DynkinQuiver
    p: int
    modules: list[IndKQ]
    reps: list[KQRep]
    hom: np.ndarray
    ext: np.ndarray
    resolutions: list[tuple[tuple[int, ...], tuple[int, ...], np.ndarray]]

    @cached_property
    def by_dim(self) -> dict[tuple[int, ...], int]:
        return {m.dim: m.id for m in self.modules}

    def projective(self, v: int) -> int:
        return next(m.id for m in self.modules if m.projective_of == v)

    def injective(self, v: int) -> int:
        return next(m.id for m in self.modules if m.injective_of == v)

    def simple(self, v: int) -> int:
        return next(m.id for m in self.modules if m.simple_of == v)

    def lookup(self, name: str) -> int:
        for m in self.modules:
            if name in m.names or name == m.name:
                return m.id
        raise KeyError(name)

    def is_projective(self, mid: int) -> bool:
        return self.modules[mid].projective_of is not None

    def is_injective(self, mid: int) -> bool:
        return self.modules[mid].injective_of is not None

    def tau(self, mid: int) -> int:
        if self.is_projective(mid):
            raise ValueError("tau of a projective is not a module")
        d = tuple(int(x) for x in self.quiver.coxeter @ np.array(self.modules[mid].dim))
        return self.by_dim[d]

    def tau_inverse(self, mid: int) -> int:
        if self.is_injective(mid):
            raise ValueError("tau^-1 of an injective is not a module")
        d = tuple(int(x) for x in self.quiver.coxeter_inverse @ np.array(self.modules[mid].dim))
        return self.by_dim[d]

    @cached_property
    def coordinates(self) -> dict[int, tuple[int, int]]:
        """Module id -> (n, i) with module = tau^{-n} P_i."""
        coords = {}
        for v in self.quiver.vertices:
            mid, n = self.projective(v), 0
            while True:
                coords[mid] = (n, v)
                if self.is_injective(mid):
                    break
                mid, n = self.tau_inverse(mid), n + 1
        return coords

    @cached_property
    def by_coordinate(self) -> dict[tuple[int, int], int]:
        return {c: m for m, c in self.coordinates.items()}

    def ar_middle(self, mid: int) -> list[int]:
        """Middle term summands of the AR sequence ending at a non-projective module."""
        if self.is_projective(mid):
            raise ValueError("no AR sequence ends at a projective")
        n, i = self.coordinates[mid]
        out = [self.by_coordinate[(n, t)] for s, t in self.quiver.arrows if s == i]
        out += [self.by_coordinate[(n - 1, s)] for s, t in self.quiver.arrows if t == i]
        return sorted(out)

    def dim_class(self, obj: DerivedObject) -> np.ndarray:
        """Class in K_0: (-1)^shift times the dimension vector."""
        return (-1) ** (obj.shift % 2) * np.array(self.modules[obj.module].dim, dtype=np.int64)

    def name(self, obj: DerivedObject) -> str:
        base = self.modules[obj.module].name
        if obj.shift == 0:
            return base
        return f"Σ{'' if obj.shift == 1 else obj.shift}{base}" if obj.shift > 0 else f"Σ{obj.shift}{base}"

    def hom_dim(self, a: int, b: int) -> int:
        return int(self.hom[a, b])

    def ext_dim(self, a: int, b: int) -> int:
        return int(self.ext[a, b])


def _minimal_resolution(quiver: DynkinQuiver, rep: KQRep, p: int):
    """(P1 vertices, P0 vertices, d) with 0 -> P1 -d-> P0 -> M -> 0 minimal."""
    verts = quiver.vertices
    top: list[tuple[int, np.ndarray]] = []
    for v in verts:
        dv = rep.dims[v]
        if dv == 0:
            continue
        imgs = [rep.maps[a] for a, (s, t) in enumerate(quiver.arrows) if t == v and rep.dims[s]]
        rad = np.concatenate([m.T for m in imgs], axis=0) if imgs else np.zeros((0, dv), dtype=np.int64)
        for g in fp.complement_basis(rad, dv, p):
            top.append((v, g))
    p0 = tuple(v for v, _ in top)

    def cover_at(w):
        cols = []
        for v, g in top:
            if quiver.has_path(v, w):
                path = quiver.path(v, w)
                vec = g if not path else (rep.path_map(path) @ g) % p
                cols.append(vec)
        return np.array(cols, dtype=np.int64).T.reshape(rep.dims[w], len(cols))

    def support(w):
        return [b for b, v in enumerate(p0) if quiver.has_path(v, w)]

    kernels = {w: fp.nullspace(cover_at(w), p, ncols=len(support(w))) for w in verts}
    p1, cols = [], []
    for w in verts:
        sup_w = support(w)
        k_w = kernels[w]
        if k_w.shape[0] == 0:
            continue
        rad_vecs = []
        for s, t in quiver.arrows:
            if t != w:
                continue
            sup_s = support(s)
            for vec in kernels[s]:
                full = np.zeros(len(p0), dtype=np.int64)
                full[sup_s] = vec
                rad_vecs.append(full[sup_w])
        span = np.array(rad_vecs, dtype=np.int64).reshape(-1, len(sup_w))
        current = fp.rank(span, p) if span.size else 0
        for vec in k_w:
            trial = np.concatenate([span, vec.reshape(1, -1)]) if span.size else vec.reshape(1, -1)
            if fp.rank(trial, p) > current:
                span, current = trial, current + 1
                full = np.zeros(len(p0), dtype=np.int64)
                full[sup_w] = vec
                p1.append(w)
                cols.append(full)
    d = np.array(cols, dtype=np.int64).T.reshape(len(p0), len(p1)) if cols else np.zeros((len(p0), 0), dtype=np.int64)
    return tuple(p1), p0, d % p


@lru_cache(maxsize=None)
def build_module_category(quiver: DynkinQuiver, p: int = 2) -> ModuleCategory:
    """Indecomposable kQ-modules over F_p with Hom/Ext tables and AR data."""
    sinks = _admissible_sinks(quiver)
    n = quiver.n
    expected = quiver.num_positive_roots
    reps: list[KQRep] = []
    seen: set[tuple[int, ...]] = set()
    word: list[int] = []
    step = 0
    while len(reps) < expected:
        if step > 4 * expected * n + 10:
            raise RuntimeError("reflection functor construction did not terminate")
        k = sinks[step % n]
        # dim vector: s_{w_1} ... s_{w_m} (alpha_k)
        x = np.zeros(n, dtype=np.int64)
        x[quiver.index(k)] = 1
        for w in reversed(word):
            iw = quiver.index(w)
            x[iw] = sum(x[quiver.index(u)] for u in quiver.neighbors(w)) - x[iw]
        if (x >= 0).all() and x.any() and tuple(x) not in seen:
            # reflected quiver after applying sigma_{w_1} ... sigma_{w_m}
            arrows_seq = [quiver.arrows]
            cur = quiver.arrows
            for w in word:
                cur = tuple((t, s) if w in (s, t) else (s, t) for s, t in cur)
                arrows_seq.append(cur)
            dims = {v: 0 for v in quiver.vertices}
            dims[k] = 1
            maps = {a: np.zeros((dims[t], dims[s]), dtype=np.int64) for a, (s, t) in enumerate(cur)}
            rep = KQRep(cur, dims, maps, p)
            for j in range(len(word) - 1, -1, -1):
                _, rep = _reflect_source(arrows_seq[j + 1], rep, word[j])
            assert rep.dim_vector == tuple(int(v) for v in x), (rep.dim_vector, x)
            seen.add(tuple(int(v) for v in x))
            reps.append(rep)
        word.append(k)
        step += 1
    pc = quiver.path_counts
    proj_dims = {tuple(int(x) for x in pc[quiver.index(v)]): v for v in quiver.vertices}
    inj_dims = {tuple(int(x) for x in pc[:, quiver.index(v)]): v for v in quiver.vertices}
    modules = []
    for idx, rep in enumerate(reps):
        d = rep.dim_vector
        simple = quiver.vertices[d.index(1)] if sum(d) == 1 else None
        modules.append(IndKQ(idx, d, proj_dims.get(d), inj_dims.get(d), simple))
    hom = np.zeros((len(reps), len(reps)), dtype=np.int64)
    ext = np.zeros_like(hom)
    for a, ra in enumerate(reps):
        for b, rb in enumerate(reps):
            hom[a, b], ext[a, b] = _rep_hom_ext(quiver, ra, rb, p)
    resolutions = [_minimal_resolution(quiver, r, p) for r in reps]
    return ModuleCategory(quiver, p, modules, reps, hom, ext, resolutions)


# --- the derived category D_Q -------------------------------------------------

def derived_act(cat: ModuleCategory, op, x: DerivedObject, power: int = 1) -> DerivedObject:
    """Apply tau, sigma, tau_inverse, sigma_inverse or an AutoSpec ``power`` times."""
    if power < 0:
        inverse = {"tau": "tau_inverse", "tau_inverse": "tau", "sigma": "sigma_inverse",
                   "sigma_inverse": "sigma"}
        if isinstance(op, AutoSpec):
            for _ in range(-power):
                x = _auto_inverse(cat, op, x)
            return x
        return derived_act(cat, inverse[op], x, -power)
    for _ in range(power):
        x = _act_once(cat, op, x)
    return x


def _act_once(cat: ModuleCategory, op, x: DerivedObject) -> DerivedObject:
    if isinstance(op, AutoSpec):
        if op.kind == "sigma_power":
            return DerivedObject(x.module, x.shift + op.n)
        return _act_once(cat, "sigma", _act_once(cat, "tau_inverse", x))
    if op == "sigma":
        return DerivedObject(x.module, x.shift + 1)
    if op == "sigma_inverse":
        return DerivedObject(x.module, x.shift - 1)
    m = cat.modules[x.module]
    if op == "tau":
        if m.projective_of is not None:
            return DerivedObject(cat.injective(m.projective_of), x.shift - 1)
        return DerivedObject(cat.tau(x.module), x.shift)
    if op == "tau_inverse":
        if m.injective_of is not None:
            return DerivedObject(cat.projective(m.injective_of), x.shift + 1)
        return DerivedObject(cat.tau_inverse(x.module), x.shift)
    raise ValueError(f"unknown operation {op!r}")


def _auto_inverse(cat, op: AutoSpec, x: DerivedObject) -> DerivedObject:
    if op.kind == "sigma_power":
        return DerivedObject(x.module, x.shift - op.n)
    return _act_once(cat, "tau", _act_once(cat, "sigma_inverse", x))


def derived_hom_dim(cat: ModuleCategory, x: DerivedObject, y: DerivedObject) -> int:
    if y.shift == x.shift:
        return cat.hom_dim(x.module, y.module)
    if y.shift == x.shift + 1:
        return cat.ext_dim(x.module, y.module)
    return 0


def ar_triangle_middle(cat: ModuleCategory, x: DerivedObject) -> list[DerivedObject]:
    """Summands of the middle term of the AR triangle ending at ``x``."""
    m = cat.modules[x.module]
    if m.projective_of is None:
        return [DerivedObject(k, x.shift) for k in cat.ar_middle(x.module)]
    i = m.projective_of
    out = [DerivedObject(cat.projective(t), x.shift) for s, t in cat.quiver.arrows if s == i]
    out += [DerivedObject(cat.injective(s), x.shift - 1) for s, t in cat.quiver.arrows if t == i]
    return sorted(out, key=lambda o: (o.shift, o.module))


def canonical(cat: ModuleCategory, F: AutoSpec, x: DerivedObject) -> DerivedObject:
    """The first element of the F-orbit of ``x`` with non-negative shift."""
    while x.shift < 0:
        x = derived_act(cat, F, x)
    while True:
        prev = derived_act(cat, F, x, -1)
        if prev.shift < 0:
            return x
        x = prev


def fundamental_domain(cat: ModuleCategory, F: AutoSpec) -> list[DerivedObject]:
    """Canonical representatives of ind D_Q / F, ordered by (shift, module)."""
    top = max(derived_act(cat, F, DerivedObject(m.id, 0)).shift for m in cat.modules)
    out = []
    for s in range(0, max(top, 1)):
        for m in cat.modules:
            x = DerivedObject(m.id, s)
            if canonical(cat, F, x) == x:
                out.append(x)
    return out


def orbit_window(cat, F: AutoSpec, x: DerivedObject, lo: int, hi: int) -> list[DerivedObject]:
    """All F-orbit elements of ``x`` with shift in [lo, hi]."""
    y = canonical(cat, F, x)
    while y.shift >= lo:
        y = derived_act(cat, F, y, -1)
    out = []
    while y.shift <= hi:
        if y.shift >= lo:
            out.append(y)
        y = derived_act(cat, F, y)
    return out


def check_assumption(cat: ModuleCategory, F: AutoSpec):
    """Whether Ext^1(x, F^i y) is nonzero for at most one i, for all x, y.

    Returns ``(True, None)`` or ``(False, (x, y, [i, ...]))``.
    """
    for m in cat.modules:
        x = DerivedObject(m.id, 0)
        for y in fundamental_domain(cat, F):
            hits = []
            z, i = y, 0
            while z.shift >= -1:
                z, i = derived_act(cat, F, z, -1), i - 1
            while z.shift <= 1:
                if derived_hom_dim(cat, x, DerivedObject(z.module, z.shift + 1)):
                    hits.append(i)
                z, i = derived_act(cat, F, z), i + 1
            if len(hits) > 1:
                return False, (x, y, hits)
    return True, None
