"""Batch command line front-end.

Usage::

    nakajima-hall --config run.json --command qgroup --primes 2,3,5,7 --format json

The configuration is one JSON document; see the README for its fields.
Exit status: 0 all requested checks pass, 1 a check failed, 2 the
configuration is invalid, 3 the enumeration budget was exceeded.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from . import __version__
from .dynkin import AutoSpec, DerivedObject, DynkinQuiver, build_module_category, check_assumption
from .hallnum import DEFAULT_BUDGET, BudgetExceeded, complex_category, hall_numbers, hall_polynomials
from .nakajima import NakajimaSetup, build_orbit_quiver, check_configuration, make_configuration
from .pathcat import DEFAULT_PRIME
from .smod import SModuleRep

EXIT_OK, EXIT_FAIL, EXIT_CONFIG, EXIT_BUDGET = 0, 1, 2, 3
COMMANDS = ("present", "indecs", "hall", "qgroup", "stratify", "selftest")
SCHEMA_VERSION = 1


class ConfigError(ValueError):
    """The run configuration cannot be parsed or is not admissible."""


@dataclass
class RunConfig:
    raw: dict
    quiver: DynkinQuiver
    F: AutoSpec
    preset: str
    seeds: list = field(default_factory=list)
    prime: int = DEFAULT_PRIME
    primes: list[int] = field(default_factory=lambda: [2, 3, 5, 7])
    params: dict = field(default_factory=dict)

    @property
    def digest(self) -> str:
        return hashlib.sha256(json.dumps(self.raw, sort_keys=True, ensure_ascii=False).encode()).hexdigest()


def _parse_quiver(q) -> DynkinQuiver:
    if isinstance(q, str):
        q = {"type": q}
    arrows = [tuple(a) for a in q.get("arrows", [])]
    if arrows:
        return DynkinQuiver.from_arrows(arrows)
    typ = q.get("type", "")
    if typ.upper().startswith("A") and typ[1:].isdigit():
        return DynkinQuiver.linear_a(int(typ[1:]))
    raise ConfigError(f"quiver needs an arrow list or a type A_n: {q!r}")


def parse_config(raw: dict) -> RunConfig:
    try:
        Q = _parse_quiver(raw["quiver"])
        F = AutoSpec.parse(str(raw.get("F", "sigma^2")))
        conf = raw.get("configuration", {"preset": "bridgeland"})
        if isinstance(conf, str):
            conf = {"preset": conf}
        cfg = RunConfig(raw, Q, F, conf.get("preset", "bridgeland"), list(conf.get("seeds", [])),
                        int(raw.get("prime", DEFAULT_PRIME)), [int(p) for p in raw.get("primes", [2, 3, 5, 7])],
                        {k: v for k, v in raw.items() if k in COMMANDS})
    except ConfigError:
        raise
    except (KeyError, TypeError, ValueError) as exc:
        raise ConfigError(f"invalid configuration: {exc}") from exc
    return cfg


def _seed_objects(cat, seeds) -> list[DerivedObject]:
    out = []
    for s in seeds:
        if isinstance(s, str):
            s = {"module": s}
        try:
            out.append(DerivedObject(cat.lookup(s["module"]), int(s.get("shift", 0))))
        except KeyError as exc:
            raise ConfigError(f"unknown seed module {s!r}") from exc
    return out


def build_setup(cfg: RunConfig, p: int | None = None) -> NakajimaSetup:
    p = p or cfg.prime
    cat = build_module_category(cfg.quiver, p)
    ok, witness = check_assumption(cat, cfg.F)
    if not ok:
        raise ConfigError(f"Hom-finiteness assumption fails for {cfg.F}: {witness}")
    C = make_configuration(cat, cfg.F, cfg.preset, _seed_objects(cat, cfg.seeds))
    ok, diag = check_configuration(cat, cfg.F, C)
    if not ok:
        raise ConfigError(f"not a configuration: {diag['failures']}")
    return NakajimaSetup(build_orbit_quiver(cat, cfg.F, C), p=p)


# -- commands --------------------------------------------------------------------

def cmd_present(cfg: RunConfig, args) -> tuple[bool, dict]:
    setup = build_setup(cfg)
    which = cfg.params.get("present", {}).get("categories", ["R", "S", "P"])
    return True, {"orbit_quiver": setup.oq.to_json(), "presentations": {w: setup.present(w).to_json() for w in which}}


def cmd_indecs(cfg: RunConfig, args) -> tuple[bool, dict]:
    from .twocomp import psi_vertex

    n = cfg.F.n if cfg.F.kind == "sigma_power" else 2
    ccat = complex_category(cfg.quiver, n, 2)
    out = {"period": n, "complexes": [x.complex.to_json() | {"name": x.name, "kind": x.kind} for x in ccat.indecs]}
    if cfg.F.kind == "sigma_power":
        setup = build_setup(cfg, 2)
        names = [v.name for v in setup.oq.vertices]
        out["psi"] = {x.name: names[psi_vertex(ccat, setup.oq, x)] for x in ccat.indecs}
    return True, out


def _mult(ccat, spec) -> list[int]:
    k = len(ccat.indecs)
    if isinstance(spec, list):
        if len(spec) != k:
            raise ConfigError(f"multiplicity vector needs length {k}")
        return [int(x) for x in spec]
    names = {x.name: x.index for x in ccat.indecs}
    vec = [0] * k
    for name, m in dict(spec).items():
        if name not in names:
            raise ConfigError(f"unknown indecomposable {name!r}; known: {sorted(names)}")
        vec[names[name]] += int(m)
    return vec


def cmd_hall(cfg: RunConfig, args) -> tuple[bool, dict]:
    par = cfg.params.get("hall")
    if not par:
        raise ConfigError("the hall command needs a 'hall' section with N and M")
    n = int(par.get("period", 2))
    ccat = complex_category(cfg.quiver, n, 2)
    names = [x.name for x in ccat.indecs]
    N, M = _mult(ccat, par["N"]), _mult(ccat, par["M"])
    res = hall_polynomials(cfg.quiver, n, N, M, args.budget)
    polys = {}
    for L, poly in sorted(res.polys.items()):
        label = " + ".join(f"{m}*{names[i]}" if m > 1 else names[i] for i, m in enumerate(L) if m) or "0"
        polys[label] = {"L": list(L), "polynomial": repr(poly), "at_q_1": str(poly(1))}
    out = {"N": N, "M": M, "indecomposables": names, "hom_dim": res.hom_dim, "ext_dim": res.ext_dim,
           "interpolation_primes": res.primes[:-1], "held_out_prime": res.held_out, "polynomials": polys}
    if "L" in par:
        L = tuple(_mult(ccat, par["L"]))
        out["requested"] = repr(res.polys[L]) if L in res.polys else "0"
    fixed = {}
    for p in args.primes or cfg.primes:
        dist = hall_numbers(complex_category(cfg.quiver, n, p), N, M, args.budget)
        fixed[str(p)] = {str(list(k)): str(v) for k, v in sorted(dist.items())}
    out["fixed_prime_values"] = fixed
    return True, out


def _qgroup_job(job):
    from .shalgebra import HallAlgebra, relations_report

    arrows, vertices, mode, p, sign, e_coeff = job
    Q = DynkinQuiver.from_arrows(arrows) if arrows else DynkinQuiver(tuple(vertices), ())
    return relations_report(HallAlgebra(Q, mode, p or 2), e_coeff, sign)


def cmd_qgroup(cfg: RunConfig, args) -> tuple[bool, dict]:
    if cfg.F.kind != "sigma_power" or cfg.F.n != 2:
        raise ConfigError("the quantum group realization needs F = Sigma^2")
    par = cfg.params.get("qgroup", {})
    e_coeff = par.get("e_coeff", "inverse")
    generic = bool(par.get("generic", True))
    modes = [("fixed", p) for p in (args.primes or cfg.primes)] + ([("generic", None)] if generic else [])
    arrows = [list(a) for a in cfg.quiver.arrows]
    chosen = -1 if args.fi_sign == "minus" else 1
    jobs = [(arrows, list(cfg.quiver.vertices), m, p, s, e_coeff) for s in (chosen, -chosen) for m, p in modes]
    if args.jobs > 1:
        with ProcessPoolExecutor(args.jobs) as pool:
            reports = list(pool.map(_qgroup_job, jobs))
    else:
        reports = [_qgroup_job(j) for j in jobs]
    half = len(modes)
    mine, other = reports[:half], reports[half:]
    ok = all(r["all_pass"] for r in mine)
    other_ok = all(r["all_pass"] for r in other)
    passing = [s for s, v in ((args.fi_sign, ok), ("plus" if chosen < 0 else "minus", other_ok)) if v]
    for r in mine:
        if r["all_pass"]:
            r["relations"] = [{"relation": x["relation"], "pass": True} for x in r["relations"]]
    return ok, {"fi_sign": args.fi_sign, "passing_signs": passing, "reports": mine}


def _module_from_descriptor(st, desc) -> tuple[str, SModuleRep]:
    if isinstance(desc, dict):
        S = st.S
        names = [a.name for a in S.arrows]
        maps = {}
        for name, mat in desc.get("arrows", {}).items():
            if name not in names:
                raise ConfigError(f"unknown arrow {name!r} of the quiver of S")
            maps[names.index(name)] = np.array(mat, dtype=np.int64)
        M = SModuleRep(S, list(desc["dims"]), maps, st.p)
        if M.relation_defects():
            raise ConfigError("explicit module violates the relations of S")
        return desc.get("name", "explicit"), M
    text = str(desc).strip()
    kind, _, obj = text.partition(" ")
    obj = obj.replace("^wedge", "").replace("^", "").strip()
    R_names = [v.name for v in st.oq.vertices]
    if kind == "res":
        if obj not in R_names:
            raise ConfigError(f"unknown vertex {obj!r}; known: {R_names}")
        return text, st.res_rep(R_names.index(obj))
    if kind == "simple":
        S_names = st.S.vertex_names
        if obj not in S_names:
            raise ConfigError(f"unknown sigma vertex {obj!r}; known: {S_names}")
        return text, st.s_simple(S_names.index(obj))
    raise ConfigError(f"module descriptor {desc!r} must start with 'res' or 'simple' or be explicit")


def cmd_stratify(cfg: RunConfig, args) -> tuple[bool, dict]:
    from .strat import Stratifier

    par = cfg.params.get("stratify", {})
    setup = build_setup(cfg, int(par.get("prime", 3)))
    st = Stratifier(setup)
    descs = par.get("modules") or [f"res {setup.oq.vertices[x].name}" for x in range(len(setup.oq.vertices))]
    mods = [_module_from_descriptor(st, d) for d in descs]
    reports = [st.report(M, name) for name, M in mods]
    pairs = []
    for a, b in par.get("transversal", []):
        pairs.append({"pair": [a, b], "transversal": reports[a]["ck"] == reports[b]["ck"]})
    out = {"prime": st.p, "modules": reports, "transversal": pairs}
    if par.get("qin", False):
        out["qin"] = [st.qin_data(i).to_json() | {"cartan_filtration": st.cartan_filtration_check(i)}
                      for i in cfg.quiver.vertices]
    return True, out


def cmd_selftest(cfg: RunConfig, args) -> tuple[bool, dict]:
    from .acceptance import run_all

    numbers = cfg.params.get("selftest", {}).get("criteria")
    results = run_all(numbers)
    return all(r.passed for r in results), {"criteria": [r.to_json() for r in results]}


HANDLERS = {"present": cmd_present, "indecs": cmd_indecs, "hall": cmd_hall, "qgroup": cmd_qgroup,
            "stratify": cmd_stratify, "selftest": cmd_selftest}


# -- output ------------------------------------------------------------------------------

def _text(obj, indent: int = 0) -> list[str]:
    pad = "  " * indent
    lines = []
    if isinstance(obj, dict):
        for k, v in obj.items():
            if isinstance(v, (dict, list)) and v:
                lines.append(f"{pad}{k}:")
                lines.extend(_text(v, indent + 1))
            else:
                lines.append(f"{pad}{k}: {v}")
    elif isinstance(obj, list):
        for v in obj:
            if isinstance(v, (dict, list)):
                lines.append(f"{pad}-")
                lines.extend(_text(v, indent + 1))
            else:
                lines.append(f"{pad}- {v}")
    else:
        lines.append(f"{pad}{obj}")
    return lines


def render(report: dict, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(report, indent=2, sort_keys=True, ensure_ascii=False, default=str)
    return "\n".join(_text(report))


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="nakajima-hall", description=__doc__.splitlines()[0])
    ap.add_argument("--config", required=True, help="path to the JSON run configuration")
    ap.add_argument("--command", required=True, choices=COMMANDS)
    ap.add_argument("--primes", type=lambda s: [int(x) for x in s.split(",") if x], default=None,
                    help="comma separated primes, e.g. 2,3,5")
    ap.add_argument("--jobs", type=int, default=1, help="worker processes for independent runs")
    ap.add_argument("--format", choices=("json", "text"), default="json")
    ap.add_argument("--budget", type=int, default=DEFAULT_BUDGET, help="maximal number of Ext classes to enumerate")
    ap.add_argument("--fi-sign", choices=("plus", "minus"), default="minus", help="sign in front of F_i")
    ap.add_argument("--output", default=None, help="write the report here instead of stdout")
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        with open(args.config, encoding="utf-8") as fh:
            raw = json.load(fh)
        cfg = parse_config(raw)
        ok, body = HANDLERS[args.command](cfg, args)
        status = EXIT_OK if ok else EXIT_FAIL
    except (OSError, json.JSONDecodeError, ConfigError) as exc:
        body, status = {"error": str(exc)}, EXIT_CONFIG
        cfg = None
    except BudgetExceeded as exc:
        body, status = {"error": str(exc)}, EXIT_BUDGET
    report = {
        "schema_version": SCHEMA_VERSION,
        "version": __version__,
        "command": args.command,
        "config_sha256": cfg.digest if cfg is not None else None,
        "status": status,
        "result": body,
    }
    text = render(report, args.format)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    else:
        sys.stdout.write(text + "\n")
    return status


if __name__ == "__main__":
    raise SystemExit(main())
