"""Orbit quivers ZQ_C/F with sigma vertices and the Nakajima categories R, S, P."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

import numpy as np

from . import fp
from .dynkin import (
    AutoSpec,
    DerivedObject,
    DynkinQuiver,
    ModuleCategory,
    ar_triangle_middle,
    build_module_category,
    canonical,
    derived_act,
    derived_hom_dim,
    fundamental_domain,
    orbit_window,
)
from .pathcat import DEFAULT_PRIME, DegreeCapExceeded, GradedPathCategory

__all__ = [
    "Configuration",
    "make_configuration",
    "check_configuration",
    "OrbitQuiver",
    "build_orbit_quiver",
    "CategoryPresentation",
    "present_category",
    "representable",
    "exa1",
    "exa2",
    "a1_bridgeland",
    "NakajimaSetup",
    "DegreeCapExceeded",
]


@dataclass(frozen=True)
class Configuration:
    """An F-invariant set C, stored as canonical representatives of its F-orbits."""

    seeds: tuple[DerivedObject, ...]
    closure: tuple[DerivedObject, ...]
    preset: str = "explicit"

    def __contains__(self, x) -> bool:
        return x in self.closure


def _close(cat, F, objs) -> tuple[DerivedObject, ...]:
    return tuple(sorted({canonical(cat, F, o) for o in objs}, key=lambda o: (o.shift, o.module)))


def make_configuration(cat: ModuleCategory, F: AutoSpec, preset: str = "bridgeland",
                       seeds=None) -> Configuration:
    """Presets: ``bridgeland`` (all Sigma^j S_i), ``tau-orbit`` (tau- and F-closure
    of the seeds) and ``explicit`` (F-closure of the seeds)."""
    seeds = tuple(seeds or ())
    if preset == "bridgeland":
        simples = [DerivedObject(cat.simple(v), 0) for v in cat.quiver.vertices]
        top = max(derived_act(cat, F, s).shift for s in simples) + 2
        objs = [DerivedObject(s.module, j) for s in simples for j in range(-top, top + 1)]
        return Configuration(tuple(simples), _close(cat, F, objs), "bridgeland")
    if preset == "tau-orbit":
        objs = set()
        for s in seeds:
            x = canonical(cat, F, s)
            while x not in objs:
                objs.add(x)
                x = canonical(cat, F, derived_act(cat, "tau", x))
        return Configuration(seeds, _close(cat, F, objs), "tau-orbit")
    if preset == "explicit":
        return Configuration(seeds, _close(cat, F, seeds), "explicit")
    raise ValueError(f"unknown configuration preset {preset!r}")


def check_configuration(cat: ModuleCategory, F: AutoSpec, C: Configuration):
    """Every x admits nonzero maps x -> c and c' -> x with c, c' in C.

    Returns ``(ok, diagnostics)``; diagnostics lists the failing objects.
    """
    failures = []
    for x in fundamental_domain(cat, F):
        out_ok = in_ok = False
        for c in C.closure:
            for y in orbit_window(cat, F, c, x.shift - 1, x.shift + 1):
                out_ok = out_ok or derived_hom_dim(cat, x, y) > 0
                in_ok = in_ok or derived_hom_dim(cat, y, x) > 0
        if not (out_ok and in_ok):
            failures.append({"object": cat.name(x), "maps_to_C": out_ok, "maps_from_C": in_ok})
    return not failures, {"failures": failures, "size": len(C.closure)}


@dataclass
class OrbitVertex:
    index: int
    label: DerivedObject
    sigma: bool
    name: str


@dataclass
class OrbitArrow:
    index: int
    src: int
    tgt: int
    kind: str      # "mesh", "in" (c -> sigma c) or "out" (sigma c -> tau^-1 c)
    name: str


@dataclass
class OrbitQuiver:
    """The quiver ZQ_C/F: F-orbits of ind D_Q plus one sigma vertex per orbit of C."""

    cat: ModuleCategory
    F: AutoSpec
    C: Configuration
    vertices: list[OrbitVertex]
    arrows: list[OrbitArrow]
    _vertex_of: dict = field(repr=False)
    _arrow_of: dict = field(repr=False)

    def vertex(self, x: DerivedObject, sigma: bool = False) -> int:
        return self._vertex_of[(canonical(self.cat, self.F, x), sigma)]

    def translate(self, src: DerivedObject, tgt: DerivedObject) -> tuple[DerivedObject, DerivedObject]:
        """Move a pair by a power of F so that the target is canonical."""
        cat, F = self.cat, self.F
        while tgt.shift < 0:
            src, tgt = derived_act(cat, F, src), derived_act(cat, F, tgt)
        while derived_act(cat, F, tgt, -1).shift >= 0:
            src, tgt = derived_act(cat, F, src, -1), derived_act(cat, F, tgt, -1)
        return src, tgt

    def mesh_arrow(self, src: DerivedObject, tgt: DerivedObject) -> int:
        return self._arrow_of[self.translate(src, tgt)]

    def sigma_vertices(self) -> list[int]:
        return [v.index for v in self.vertices if v.sigma]

    def plain_vertices(self) -> list[int]:
        return [v.index for v in self.vertices if not v.sigma]

    def mesh_relations(self, drop_sigma: bool = False):
        """Mesh relations r_z, one per non-sigma vertex z, as (src, tgt, terms)."""
        cat, F = self.cat, self.F
        rels = []
        for z in self.plain_vertices():
            zl = self.vertices[z].label
            tz = derived_act(cat, "tau", zl)
            terms = []
            for y in ar_triangle_middle(cat, zl):
                terms.append((1, (self.mesh_arrow(tz, y), self.mesh_arrow(y, zl))))
            ctz = canonical(cat, F, tz)
            if ctz in self.C and not drop_sigma:
                terms.append((1, (self._arrow_of[("in", ctz)], self._arrow_of[("out", ctz)])))
            if terms:
                rels.append((self.vertex(tz), z, terms))
        return rels

    def to_json(self) -> dict:
        return {
            "vertices": [{"index": v.index, "name": v.name, "sigma": v.sigma,
                          "module": v.label.module, "shift": v.label.shift} for v in self.vertices],
            "arrows": [{"index": a.index, "name": a.name, "src": a.src, "tgt": a.tgt, "kind": a.kind}
                       for a in self.arrows],
        }


def build_orbit_quiver(cat: ModuleCategory, F: AutoSpec, C: Configuration,
                       check: bool = True) -> OrbitQuiver:
    if check:
        ok, diag = check_configuration(cat, F, C)
        if not ok:
            raise ValueError(f"not a configuration: {diag['failures']}")
    vertices, vertex_of = [], {}
    for x in fundamental_domain(cat, F):
        vertex_of[(x, False)] = len(vertices)
        vertices.append(OrbitVertex(len(vertices), x, False, cat.name(x)))
    for c in C.closure:
        vertex_of[(c, True)] = len(vertices)
        vertices.append(OrbitVertex(len(vertices), c, True, f"σ({cat.name(c)})"))
    arrows, arrow_of = [], {}
    oq = OrbitQuiver(cat, F, C, vertices, arrows, vertex_of, arrow_of)
    for z in fundamental_domain(cat, F):
        for y in ar_triangle_middle(cat, z):
            key = (y, z)
            arrow_of[key] = len(arrows)
            arrows.append(OrbitArrow(len(arrows), oq.vertex(y), vertex_of[(z, False)], "mesh",
                                     f"{cat.name(y)}->{cat.name(z)}"))
    for c in C.closure:
        s = vertex_of[(c, True)]
        arrow_of[("in", c)] = len(arrows)
        arrows.append(OrbitArrow(len(arrows), vertex_of[(c, False)], s, "in", f"{cat.name(c)}->σ"))
        tc = derived_act(cat, "tau_inverse", c)
        arrow_of[("out", c)] = len(arrows)
        arrows.append(OrbitArrow(len(arrows), s, oq.vertex(tc), "out", f"σ->{cat.name(tc)}"))
    return oq


@dataclass
class PresentedArrow:
    name: str
    src: int          # index into the presentation's vertex list
    tgt: int
    degree: int
    rpath: tuple[int, ...]   # path in the ambient graded category


@dataclass
class CategoryPresentation:
    """A quiver with relations plus graded Hom bases computed in an ambient category.

    ``vertices`` are ambient vertex ids; Hom spaces are read off the ambient
    ``GradedPathCategory`` (for S this is R restricted to sigma vertices).
    """

    which: str
    vertex_ids: list[int]
    vertex_names: list[str]
    arrows: list[PresentedArrow]
    relations: list[list[tuple[int, tuple[int, ...]]]]
    ambient: GradedPathCategory
    _combos: dict = field(default_factory=dict, repr=False)

    @property
    def n(self) -> int:
        return len(self.vertex_ids)

    def local(self, ambient_vertex: int) -> int:
        return self.vertex_ids.index(ambient_vertex)

    def hom_basis(self, i: int, j: int):
        return self.ambient.hom_basis(self.vertex_ids[i], self.vertex_ids[j])

    def hom_dim(self, i: int, j: int) -> int:
        return self.ambient.hom_dim(self.vertex_ids[i], self.vertex_ids[j])

    def hom_table(self) -> np.ndarray:
        return np.array([[self.hom_dim(i, j) for j in range(self.n)] for i in range(self.n)], dtype=np.int64)

    def graded_table(self) -> dict[tuple[int, int], list[int]]:
        return {(i, j): self.ambient.graded_dims(self.vertex_ids[i], self.vertex_ids[j])
                for i in range(self.n) for j in range(self.n)}

    def path_end(self, path) -> int:
        return self.arrows[path[-1]].tgt

    def basis_combos(self, i: int, j: int) -> list[list[tuple[int, tuple[int, ...]]]]:
        """Each Hom basis element i -> j as a combination of presentation paths."""
        key = (i, j)
        if key not in self._combos:
            self._combos[key] = self._compute_combos(i, j)
        return self._combos[key]

    def _compute_combos(self, i, j):
        basis = self.hom_basis(i, j)
        if self.which != "S":
            return [[(1, rep)] for _, rep in basis]
        amb, p = self.ambient, self.ambient.p
        dim = len(basis)
        if dim == 0:
            return []
        max_deg = max(d for d, _ in basis)
        paths = [q for q in _presentation_paths(self, i, max_deg) if (self.path_end(q) if q else i) == j]
        vecs = [amb.evaluate(self.vertex_ids[i], self.arrow_path(q))[1] for q in paths]
        # choose spanning paths, then invert
        chosen, span, cur = [], np.zeros((0, dim), dtype=np.int64), 0
        for q, v in zip(paths, vecs):
            trial = np.concatenate([span, v.reshape(1, -1)])
            if fp.rank(trial, p) > cur:
                chosen.append(q)
                span, cur = trial, cur + 1
        if cur != dim:
            raise ArithmeticError("presentation paths do not span a Hom space")
        inv = fp.inverse(span, p)  # e_k = sum_m inv[k, m] * path_m
        return [[(int(inv[k, m]), chosen[m]) for m in range(dim) if inv[k, m] % p] for k in range(dim)]

    def arrow_path(self, path) -> tuple[int, ...]:
        return tuple(b for a in path for b in self.arrows[a].rpath)

    def to_json(self) -> dict:
        return {
            "category": self.which,
            "vertices": [{"index": i, "name": n} for i, n in enumerate(self.vertex_names)],
            "arrows": [{"name": a.name, "src": a.src, "tgt": a.tgt, "degree": a.degree} for a in self.arrows],
            "relations": [[[int(_sym(c, self.ambient.p)), list(path)] for c, path in rel]
                          for rel in self.relations],
            "hom_dims": self.hom_table().tolist(),
        }


def _presentation_paths(pres, i, max_deg):
    out, frontier = [], [((), i, 0)]
    while frontier:
        nxt = []
        for path, t, d in frontier:
            out.append(path)
            for a, ar in enumerate(pres.arrows):
                if ar.src == t and d + ar.degree <= max_deg:
                    nxt.append((path + (a,), ar.tgt, d + ar.degree))
        frontier = nxt
    return out


def _sym(c, p):
    c %= p
    return c - p if c > p // 2 else c


@dataclass
class NakajimaSetup:
    """An orbit quiver together with its category R (built lazily)."""

    oq: OrbitQuiver
    p: int = DEFAULT_PRIME
    degree_cap: int | None = None
    _R: GradedPathCategory | None = None
    _cache: dict = field(default_factory=dict)

    @property
    def R(self) -> GradedPathCategory:
        if self._R is None:
            oq = self.oq
            cap = self.degree_cap or 4 * len(oq.vertices)
            self._R = GradedPathCategory(len(oq.vertices), [(a.src, a.tgt) for a in oq.arrows],
                                         oq.mesh_relations(), self.p, cap)
        return self._R

    def present(self, which: str) -> CategoryPresentation:
        if which not in self._cache:
            self._cache[which] = present_category(self, which)
        return self._cache[which]


def present_category(setup, which: str) -> CategoryPresentation:
    if isinstance(setup, OrbitQuiver):
        setup = NakajimaSetup(setup)
    oq = setup.oq
    names = [v.name for v in oq.vertices]
    if which == "R":
        R = setup.R
        arrows = [PresentedArrow(a.name, a.src, a.tgt, 1, (a.index,)) for a in oq.arrows]
        rels = [terms for _, _, terms in oq.mesh_relations()]
        return CategoryPresentation("R", list(range(len(names))), names, arrows, rels, R)
    if which == "P":
        plain = oq.plain_vertices()
        keep = [a for a in oq.arrows if a.kind == "mesh"]
        renum = {a.index: k for k, a in enumerate(keep)}
        rels = []
        for s, t, terms in oq.mesh_relations(drop_sigma=True):
            rels.append((plain.index(s), plain.index(t),
                         [(c, tuple(renum[b] for b in path)) for c, path in terms]))
        cap = setup.degree_cap or 4 * len(oq.vertices)
        P = GradedPathCategory(len(plain), [(plain.index(a.src), plain.index(a.tgt)) for a in keep],
                               rels, setup.p, cap)
        arrows = [PresentedArrow(a.name, plain.index(a.src), plain.index(a.tgt), 1, (k,))
                  for k, a in enumerate(keep)]
        return CategoryPresentation("P", list(range(len(plain))), [names[v] for v in plain], arrows,
                                    [terms for _, _, terms in rels], P)
    if which == "S":
        return _present_s(setup)
    raise ValueError(f"unknown category {which!r}")


def _present_s(setup: NakajimaSetup) -> CategoryPresentation:
    R, oq, p = setup.R, setup.oq, setup.p
    sig = oq.sigma_vertices()
    k = len(sig)
    # graded pieces of S(i, j) inside R, flat coordinates per degree
    deg_dims = {(i, j): R.graded_dims(sig[i], sig[j]) for i in range(k) for j in range(k)}
    dmax = max((len(v) - 1 for v in deg_dims.values() if any(v)), default=0)

    def piece(i, j, d):
        dims = deg_dims[(i, j)]
        if d >= len(dims):
            return 0, 0
        return R.offsets(sig[i], sig[j])[d], dims[d]

    def eval_path(i, rpath):
        j_amb, vec = R.evaluate(sig[i], rpath)
        return vec

    # radical squared and Q_S arrows, degree by degree
    arrows: list[PresentedArrow] = []
    for i in range(k):
        for j in range(k):
            for d in range(1, len(deg_dims[(i, j)])):
                off, dim = piece(i, j, d)
                if dim == 0:
                    continue
                rows = []
                for m in range(k):
                    for d1 in range(1, d):
                        for _, b1 in [x for x in R.hom_basis(sig[i], sig[m]) if x[0] == d1]:
                            for _, b2 in [x for x in R.hom_basis(sig[m], sig[j]) if x[0] == d - d1]:
                                rows.append(eval_path(i, b1 + b2)[off:off + dim])
                basis_paths = [bp for dd, bp in R.hom_basis(sig[i], sig[j]) if dd == d]
                comp = fp.complement_basis(np.array(rows, dtype=np.int64).reshape(-1, dim), dim, p)
                for vec in comp:
                    idx = int(np.nonzero(vec)[0][0])
                    arrows.append(PresentedArrow(f"s{len(arrows)}", i, j, d, basis_paths[idx]))
    relations = _s_relations(R, sig, arrows, dmax, p)
    names = [oq.vertices[v].name for v in sig]
    return CategoryPresentation("S", sig, names, arrows, relations, R)


def _qs_paths(arrows, k, max_deg):
    """Paths in Q_S grouped by (src, tgt, degree), degree <= max_deg."""
    out: dict[tuple[int, int, int], list[tuple[int, ...]]] = {}
    frontier = [((), i, i, 0) for i in range(k)]
    while frontier:
        nxt = []
        for path, s, t, d in frontier:
            out.setdefault((s, t, d), []).append(path)
            for a, ar in enumerate(arrows):
                if ar.src == t and d + ar.degree <= max_deg:
                    nxt.append((path + (a,), s, ar.tgt, d + ar.degree))
        frontier = nxt
    return out


def _s_relations(R, sig, arrows, dmax, p):
    k = len(sig)
    maxarrow = max((a.degree for a in arrows), default=1)
    top = dmax + maxarrow
    paths = _qs_paths(arrows, k, top)
    relations: list[list[tuple[int, tuple[int, ...]]]] = []
    rel_meta: list[tuple[int, int, int]] = []
    for d in range(2, top + 1):
        for i in range(k):
            for j in range(k):
                plist = [q for q in paths.get((i, j, d), []) if len(q) >= 2]
                if not plist:
                    continue
                pindex = {q: n for n, q in enumerate(plist)}
                # ideal generated by lower relations
                ideal_rows = []
                for (ri, rj, rd), rel in zip(rel_meta, relations):
                    for d1 in range(0, d - rd + 1):
                        for u in paths.get((i, ri, d1), []):
                            for v in paths.get((rj, j, d - rd - d1), []):
                                row = np.zeros(len(plist), dtype=np.int64)
                                for c, q in rel:
                                    row[pindex[u + q + v]] += c
                                ideal_rows.append(row % p)
                ideal = np.array(ideal_rows, dtype=np.int64).reshape(-1, len(plist))
                r_ideal = fp.rank(ideal, p) if ideal.size else 0
                if r_ideal == len(plist):
                    continue
                ev = np.array([R.evaluate(sig[i], tuple(b for a in q for b in arrows[a].rpath))[1]
                               for q in plist], dtype=np.int64).reshape(len(plist), -1)
                kernel = fp.nullspace(ev.T, p, ncols=len(plist)) if ev.shape[1] else np.eye(len(plist), dtype=np.int64)
                span, cur = ideal, r_ideal
                for vec in kernel:
                    trial = np.concatenate([span, vec.reshape(1, -1)])
                    if fp.rank(trial, p) > cur:
                        span, cur = trial, cur + 1
                        relations.append([(int(c), plist[n]) for n, c in enumerate(vec) if c % p])
                        rel_meta.append((i, j, d))
    return relations


def representable(pres: CategoryPresentation, x: int):
    """x^ = Hom(?, x) as a module over the presentation."""
    from .smod import representable as _rep

    return _rep(pres, x)


# --- fixtures -----------------------------------------------------------------

def _setup(arrows, F, preset, seeds_fn=None, p=2):
    Q = DynkinQuiver.from_arrows(arrows)
    cat = build_module_category(Q, p)
    seeds = seeds_fn(cat) if seeds_fn else None
    C = make_configuration(cat, F, preset, seeds)
    return cat, F, C


def exa2(p: int = 2):
    """A_2 with arrow 1 -> 2, F = Sigma^2, C = all Sigma^j S_i."""
    return _setup([(1, 2)], AutoSpec("sigma_power", 2), "bridgeland", p=p)


def exa1(p: int = 2):
    """A_2 with arrow 2 -> 1, F = Sigma^2, C = the tau-orbit of S_1."""
    return _setup([(2, 1)], AutoSpec("sigma_power", 2), "tau-orbit",
                  lambda cat: [DerivedObject(cat.simple(1), 0)], p=p)


def a1_bridgeland(p: int = 2):
    Q = DynkinQuiver((1,), ())
    cat = build_module_category(Q, p)
    F = AutoSpec("sigma_power", 2)
    return cat, F, make_configuration(cat, F, "bridgeland")


def path_algebra_graded_dims(n: int, arrows, relations, p: int = DEFAULT_PRIME, max_len: int | None = None):
    """dim e_i (kQ/I)_l e_j graded by path length, for relations homogeneous in length.

    ``arrows`` are (src, tgt) pairs, ``relations`` lists of (coef, path) with
    paths read left to right.  Returns {(i, j): [dim in length 0, 1, ...]}.
    """
    max_len = max_len or 2 * n + 4
    by_len: list[dict[tuple[int, int], list[tuple[int, ...]]]] = [{(i, i): [()] for i in range(n)}]
    for _ in range(max_len):
        cur: dict[tuple[int, int], list[tuple[int, ...]]] = {}
        for (i, j), paths in by_len[-1].items():
            for a, (s, t) in enumerate(arrows):
                if s == j:
                    cur.setdefault((i, t), []).extend(q + (a,) for q in paths)
        by_len.append(cur)

    def ends(path):
        return arrows[path[0]][0], arrows[path[-1]][1]

    out = {(i, j): [] for i in range(n) for j in range(n)}
    for length, groups in enumerate(by_len):
        for (i, j) in out:
            paths = groups.get((i, j), [])
            if not paths:
                out[(i, j)].append(0)
                continue
            index = {q: k for k, q in enumerate(paths)}
            rows = []
            for rel in relations:
                rlen = len(rel[0][1])
                ri, rj = ends(rel[0][1])
                for l1 in range(length - rlen + 1):
                    for u in by_len[l1].get((i, ri), []):
                        for v in by_len[length - rlen - l1].get((rj, j), []):
                            row = np.zeros(len(paths), dtype=np.int64)
                            for c, q in rel:
                                row[index[u + tuple(q) + v]] += c
                            rows.append(row % p)
            r = fp.rank(np.array(rows, dtype=np.int64), p) if rows else 0
            out[(i, j)].append(len(paths) - r)
    return out
