"""Command line front end: config loading, task sweeps and reports.

    quiverhecke run --config cfg.yaml [--task verify] [--out report.json]
    quiverhecke verify --type G2 --weights exceptional --h0 1
    quiverhecke sl3
    quiverhecke typea --n 3 --weights 0,0,0 [--q 2]

Reports are deterministic: results are sorted by (task, weight) and timings
are only included with ``--timings``.
"""
from __future__ import annotations

import argparse
import itertools
import json
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from functools import lru_cache
from typing import Any, Optional, Sequence

import yaml

from .coeff_rings import CoeffRing
from .datum import (Datum, HeckeParams, ParameterError, check_conditions, splitting_family,
                    verify_splitting)
from .fields import convert, make_field, to_python
from .grading import DegreeRule, balance_shift, check_iota, loop_parity_check, verify_homogeneity
from .qhecke_core import Engine, hecke_isomorphism_check, verify_relations
from .root_datum import CartanError, from_cartan, gl, named
from .weyl_orbits import Orbit, Weight, WeylGroup

SCHEMA = "quiverhecke.report/1"
TASKS = ("verify", "pbw", "characters", "sl3", "typea", "splitting", "multiply")


class ConfigError(ValueError):
    def __init__(self, message: str, line: Optional[int] = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


# ---------------------------------------------------------------- config


@dataclass
class RunConfig:
    type: Optional[str] = None
    cartan: Optional[list] = None
    field: str = "Q"
    h0: Any = None  # None: 0, or 1 when the weights are the exceptional seeds
    c: Any = 1
    datum: str = "canonical"
    weights: Any = None  # list of entry lists, or "small" / "exceptional"
    tasks: list = dc_field(default_factory=lambda: ["verify"])
    fdegree: int = 2
    words: list = dc_field(default_factory=list)  # generator words for the multiply task
    typea: dict = dc_field(default_factory=dict)
    out: Optional[str] = None
    format: str = "json"
    lines: dict = dc_field(default_factory=dict, repr=False, compare=False)

    def line(self, key: str) -> Optional[int]:
        return self.lines.get(key)

    def to_json(self) -> dict:
        return {
            "type": self.type,
            "cartan": self.cartan,
            "field": self.field,
            "h0": str(self.h0),
            "c": self.c if isinstance(self.c, list) else str(self.c),
            "datum": self.datum,
            "weights": self.weights,
            "tasks": list(self.tasks),
            "fdegree": self.fdegree,
            "words": self.words,
            "typea": self.typea,
        }


_KEYS = {"type", "cartan", "field", "h0", "c", "datum", "weights", "tasks", "task",
         "fdegree", "words", "typea", "output", "out", "format"}


def _node_lines(node) -> dict:
    out = {}
    if isinstance(node, yaml.MappingNode):
        for k, _ in node.value:
            out[k.value] = k.start_mark.line + 1
    return out


def parse_config(text: str) -> RunConfig:
    """YAML (or JSON) text to a validated RunConfig; errors carry line numbers."""
    try:
        node = yaml.compose(text)
        data = yaml.safe_load(text)
    except yaml.MarkedYAMLError as e:
        line = e.problem_mark.line + 1 if e.problem_mark else None
        raise ConfigError(f"cannot parse config: {e.problem}", line) from None
    if data is None:
        data = {}
    if not isinstance(data, dict):
        raise ConfigError("config must be a mapping", 1)
    lines = _node_lines(node)
    for k in data:
        if k not in _KEYS:
            raise ConfigError(f"unknown key {k!r}", lines.get(k))
    cfg = RunConfig(lines=lines)
    for k in ("type", "cartan", "field", "h0", "c", "datum", "weights", "fdegree", "words", "typea", "format"):
        if k in data:
            setattr(cfg, k, data[k])
    if "task" in data:
        cfg.tasks = [data["task"]]
        lines["tasks"] = lines["task"]
    if "tasks" in data:
        cfg.tasks = list(data["tasks"]) if isinstance(data["tasks"], list) else [data["tasks"]]
    out = data.get("output", data.get("out"))
    if isinstance(out, dict):
        cfg.out = out.get("path")
        cfg.format = out.get("format", cfg.format)
        lines["format"] = lines.get("output", lines.get("out"))
    elif out is not None:
        cfg.out = str(out)
    validate(cfg)
    return cfg


def load_config(path: str) -> RunConfig:
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as e:
        raise ConfigError(f"cannot read {path}: {e.strerror}") from None
    return parse_config(text)


def _fraction(v, what: str, line) -> Fraction:
    try:
        return Fraction(str(v))
    except (ValueError, ZeroDivisionError):
        raise ConfigError(f"{what}: {v!r} is not a number", line) from None


def validate(cfg: RunConfig) -> None:
    for t in cfg.tasks:
        if t not in TASKS:
            raise ConfigError(f"unknown task {t!r}; expected one of {', '.join(TASKS)}", cfg.line("tasks"))
    if cfg.format not in ("json", "text"):
        raise ConfigError(f"format must be json or text, not {cfg.format!r}", cfg.line("format"))
    if cfg.datum not in ("canonical", "gradedH"):
        raise ConfigError(f"datum must be canonical or gradedH, not {cfg.datum!r}", cfg.line("datum"))
    if not isinstance(cfg.fdegree, int) or cfg.fdegree < 0:
        raise ConfigError("fdegree must be a nonnegative integer", cfg.line("fdegree"))
    try:
        dom = make_field(cfg.field)
    except ValueError as e:
        raise ConfigError(str(e), cfg.line("field")) from None
    if cfg.h0 is None:
        # exceptional weights only exist multiplicatively
        cfg.h0 = 1 if cfg.weights == "exceptional" else 0
    _fraction(cfg.h0, "h0", cfg.line("h0"))
    needs_datum = any(t in ("verify", "pbw", "characters", "splitting", "multiply") for t in cfg.tasks)
    if not needs_datum:
        if "typea" in cfg.tasks:
            _validate_typea(cfg)
        return
    if (cfg.type is None) == (cfg.cartan is None):
        raise ConfigError("give exactly one of 'type' and 'cartan'", cfg.line("type") or cfg.line("cartan"))
    try:
        d = _root_datum(cfg.type, cfg.cartan)
    except (CartanError, ValueError) as e:
        raise ConfigError(str(e), cfg.line("type") or cfg.line("cartan")) from None
    try:
        HeckeParams.make(d, dom, convert(dom, cfg.h0), _cs(cfg.c, dom))
    except ParameterError as e:
        raise ConfigError(str(e), cfg.line("c")) from None
    except (ValueError, ZeroDivisionError) as e:
        raise ConfigError(f"parameters not representable in {cfg.field}: {e}", cfg.line("c")) from None
    try:
        _, _, _, A = _base(cfg.type, None if cfg.cartan is None else tuple(map(tuple, cfg.cartan)),
                           cfg.field, str(_fraction(cfg.h0, "h0", None)))
    except ZeroDivisionError:
        raise ConfigError(f"h0 = {cfg.h0} does not exist in {cfg.field}", cfg.line("h0")) from None
    for i in range(d.rank):
        if A.is_zero(A.P_root(i)):
            raise ConfigError(f"simple root {i} of {d.name} vanishes in {cfg.field}",
                              cfg.line("field") or cfg.line("type"))
    multiplicative = not A.is_additive
    if cfg.weights is None:
        raise ConfigError("no weights given", None)
    if isinstance(cfg.weights, str):
        if cfg.weights not in ("small", "exceptional"):
            raise ConfigError(f"unknown weight set {cfg.weights!r}", cfg.line("weights"))
        return
    if not isinstance(cfg.weights, list) or not all(isinstance(w, list) for w in cfg.weights):
        raise ConfigError("weights must be a list of entry lists", cfg.line("weights"))
    for w in cfg.weights:
        if len(w) != d.dim:
            raise ConfigError(f"weight {w} needs {d.dim} entries", cfg.line("weights"))
        for v in w:
            try:
                x = convert(dom, _fraction(v, "weight entry", cfg.line("weights")))
            except ZeroDivisionError:
                raise ConfigError(f"weight entry {v} does not exist in {cfg.field}", cfg.line("weights")) from None
            if multiplicative and x == dom.zero:
                raise ConfigError(f"multiplicative weight entry {v} vanishes in {cfg.field}", cfg.line("weights"))
    if "typea" in cfg.tasks:
        _validate_typea(cfg)
    if "multiply" in cfg.tasks:
        if not cfg.words or not all(isinstance(w, list) for w in cfg.words):
            raise ConfigError("multiply needs a list of generator words", cfg.line("words"))
        for w in cfg.words:
            if not all(isinstance(a, int) and 0 <= a < d.rank for a in w):
                raise ConfigError(f"word {w} has a letter outside 0..{d.rank - 1}", cfg.line("words"))


def _validate_typea(cfg: RunConfig) -> None:
    t = cfg.typea or {}
    line = cfg.line("typea")
    if not isinstance(t, dict) or "n" not in t or "weights" not in t:
        raise ConfigError("typea needs n and weights", line)
    if t["n"] not in (2, 3):
        raise ConfigError("typea supports n = 2 or 3", line)
    for w in t["weights"]:
        if len(w) != t["n"]:
            raise ConfigError(f"typea weight {w} needs {t['n']} entries", line)


def _root_datum(kind, cartan):
    if cartan is not None:
        return from_cartan(cartan)
    return named(str(kind))


def _cs(c, dom):
    if isinstance(c, list):
        return [convert(dom, _fraction(x, "c", None)) for x in c]
    return convert(dom, _fraction(c, "c", None))


# ---------------------------------------------------------------- contexts


@lru_cache(maxsize=None)
def _base(kind, cartan, field_spec, h0):
    d = _root_datum(kind, None if cartan is None else [list(r) for r in cartan])
    dom = make_field(field_spec)
    W = WeylGroup(d)
    A = CoeffRing(d, W, dom, convert(dom, Fraction(h0)))
    return d, dom, W, A


def _frozen(cfg: dict):
    cart = cfg.get("cartan")
    return (cfg.get("type"), None if cart is None else tuple(tuple(r) for r in cart),
            cfg["field"], str(cfg["h0"]))


def make_weight(A: CoeffRing, values: Sequence, field_spec) -> Weight:
    vals = [Fraction(str(v)) for v in values]
    if A.is_additive:
        return Weight.additive(vals, field_spec)
    return Weight.multiplicative(vals, field_spec)


def seed_weights(A: CoeffRing, kind: str) -> list[list]:
    """Small weights, one per orbit.  ``small``: entries in {-1, 0, 1}
    (additive) or {-1, 1} (multiplicative).  ``exceptional``: those orbits
    containing an exceptional weight, or, additively, a weight that is not
    standard parabolic."""
    entries = (-1, 0, 1) if A.is_additive else (-1, 1)
    seen: set = set()
    out = []
    for vals in itertools.product(entries, repeat=A.n):
        w = make_weight(A, vals, A.domain)
        if w in seen:
            continue
        orb = Orbit(A.W, w)
        seen.update(orb.weights)
        if kind == "exceptional":
            if A.is_additive:
                if all(orb.is_standard_parabolic(mu) for mu in orb):
                    continue
            elif not any(orb.classify(mu).exceptional_roots for mu in orb):
                continue
        out.append(list(vals))
    return out


def _ctx(cfg: dict, values, kind=None):
    d, dom, W, A = _base(*_frozen(cfg))
    params = HeckeParams.make(d, dom, A.h0, _cs(cfg["c"], dom))
    lam = make_weight(A, values, cfg["field"])
    orb = Orbit(W, lam)
    D = Datum(A, orb, params, kind or cfg["datum"])
    return A, params, lam, orb, D


# ---------------------------------------------------------------- tasks


def _classification(orb: Orbit) -> dict:
    out = {}
    for mu in sorted(orb.weights, key=lambda m: m.key()):
        c = orb.classify(mu)
        out[str(mu)] = {"fixed": list(c.fixed_simple), "standard_parabolic": c.is_standard_parabolic,
                        "exceptional": sorted(c.exceptional_roots)}
    return out


def task_verify(cfg: dict, values) -> dict:
    A, params, lam, orb, D = _ctx(cfg, values)
    E = Engine(D)
    checks = {}
    cond = check_conditions(D)
    checks["conditions"] = {"ok": cond.ok, "checked": cond.checked, "failures": [list(f) for f in cond.failures]}
    sp = verify_splitting(E.F)
    checks["splitting"] = {"ok": sp.ok, "checked": sp.checked, "coincidences": sp.coincidences,
                           "conflicts": sp.conflicts}
    checks["relations"] = verify_relations(E, fdegree=cfg["fdegree"]).to_json()
    if D.kind == "canonical":
        iso = hecke_isomorphism_check(E, params, fdegree=min(cfg["fdegree"], 1))
        checks["hecke_isomorphism"] = {
            "ok": iso.ok, "relations_ok": iso.relations.ok, "composite_ok": iso.composite_ok,
            "fixed_match": iso.fixed_match, "gauge_ok": iso.gauge_ok, "gauge_required": iso.gauge_required,
            "gauge_units": iso.gauge_units,
        }
    if A.is_additive and D.kind == "gradedH":
        hom = verify_homogeneity(D, cfg["fdegree"])
        checks["homogeneity"] = {"ok": hom.ok, "checked": hom.checked, "degrees": hom.degrees,
                                 "failures": hom.failures}
        rule = DegreeRule.for_datum(D)
        loops = [loop_parity_check(rule, mu) for mu in orb]
        checks["loop_parity"] = {"ok": all(l.ok for l in loops),
                                 "degrees": {l.weight: l.degrees for l in sorted(loops, key=lambda l: l.weight)}}
        io = check_iota(E, min(cfg["fdegree"], 1))
        checks["iota"] = {"ok": io.ok, "involution": io.involution, "degree_preserving": io.degree_preserving}
    return {"orbit_size": len(orb), "classification": _classification(orb), "checks": checks,
            "ok": all(c["ok"] for c in checks.values())}


def task_pbw(cfg: dict, values) -> dict:
    A, params, lam, orb, D = _ctx(cfg, values)
    E = Engine(D)
    per = {str(mu): E.pbw_determinant(mu) for mu in sorted(orb.weights, key=lambda m: m.key())}
    return {"orbit_size": len(orb), "weights": per, "ok": all(v["ok"] for v in per.values())}


def task_multiply(cfg: dict, values) -> dict:
    """PBW normal forms of generator words (letters act left to right)."""
    A, params, lam, orb, D = _ctx(cfg, values)
    E = Engine(D)
    out = []
    for word in cfg["words"]:
        q = E.word(lam, [("r", a) for a in word])
        out.append({"word": list(word), "target": str(q.target), "normal_form": E.render(q)})
    return {"products": out, "ok": True}


def task_splitting(cfg: dict, values) -> dict:
    A, params, lam, orb, D = _ctx(cfg, values)
    S = splitting_family(D, strict=False)
    rep = verify_splitting(S)
    return {"orbit_size": len(orb), "checked": rep.checked, "coincidences": rep.coincidences,
            "conflicts": rep.conflicts, "failures": [list(f) for f in rep.failures], "ok": rep.ok}


def task_characters(cfg: dict, values) -> dict:
    from .repn import irreducible_quotient, irreducible_weight_module, weight_induce

    A, params, lam, orb, D = _ctx(cfg, values, "gradedH")
    if not orb.is_standard_parabolic(lam):
        return {"ok": False, "error": f"{lam} is not standard parabolic"}
    E = Engine(D)
    rule = DegreeRule.for_datum(D)
    res = irreducible_weight_module(E, lam)
    key = str(lam)
    ch1 = res.construction_one.character()
    ch2 = res.construction_two.character()
    ind = weight_induce(E, res.construction_one, rule)
    q = irreducible_quotient(ind, E, lam)
    Lch = q.module.character()
    ell, Lbal = balance_shift(Lch, key)
    order = sorted(orb.weights, key=lambda m: m.key())
    return {
        "weight_module": {"dimension": res.dims[0], "stabilizer_order": res.stabilizer_order,
                          "construction_one": ch1.render(key), "construction_two": ch2.render(key),
                          "isomorphic": res.intertwiner is not None, "simple": list(res.simple)},
        "irreducible": {str(mu): Lbal.render(str(mu)) for mu in order},
        "irreducible_unshifted": {str(mu): Lch.render(str(mu)) for mu in order},
        "shift": ell,
        "routes_agree": q.routes_agree,
        "simple": q.simple,
        "palindromic": Lbal.is_palindromic(),
        "ok": res.ok and q.routes_agree and q.simple and Lbal.is_palindromic(),
    }


def task_sl3(cfg: dict, values=None) -> dict:
    from .repn import sl3_example, sl3_middle_obstruction

    ex = sl3_example(cfg.get("field", "Q"))
    ex.pop("_objects", None)
    ob = sl3_middle_obstruction(cfg.get("field", "Q"))
    checks = {
        "construction_characters": ex["construction_one"] == "1 + v^2" and ex["construction_two"] == "v^-2 + 1",
        "balanced": ex["balanced"] == ["v^-1 + v", "v^-1 + v"],
        "irreducible_characters": ex["quotient"] == ["v^-1 + v", "1", "0"],
        "quotient_routes_agree": ex["quotient_routes_agree"],
        "quotient_simple": ex["quotient_simple"],
        "modules_satisfy_relations": ex["modules_satisfy_relations"],
        "anticommutator_equals_2": ob["anticommutator_equals_2"],
        "no_middle_only_irreducible": ob["no_middle_only_irreducible"],
    }
    return {"example": ex, "obstruction": ob, "checks": checks, "ok": all(checks.values())}


def task_typea(cfg: dict, values) -> dict:
    from .typea_bridge import degenerate_embedding, q_embedding

    t = cfg["typea"]
    q = t.get("q")
    field_spec = t.get("field", cfg.get("field", "Q"))
    vals = [Fraction(str(v)) for v in values]
    if q is None:
        rep = degenerate_embedding(len(vals), vals, field_spec)
    else:
        rep = q_embedding(len(vals), vals, Fraction(str(q)), field_spec)
    return rep.to_json()


_TASK_FN = {"verify": task_verify, "pbw": task_pbw, "splitting": task_splitting,
            "characters": task_characters, "sl3": task_sl3, "typea": task_typea,
            "multiply": task_multiply}


def _run_unit(unit):
    cfg, task, values, timings = unit
    t0 = time.perf_counter()
    try:
        res = _TASK_FN[task](cfg, values)
    except Exception as e:  # reported, not raised: one bad weight must not hide the others
        res = {"ok": False, "error": f"{type(e).__name__}: {e}"}
    if timings:
        res["seconds"] = round(time.perf_counter() - t0, 3)
    return task, values, res


def _units(cfg: RunConfig, timings: bool) -> list:
    plain = cfg.to_json()
    plain["h0"] = str(Fraction(str(cfg.h0)))
    plain["c"] = cfg.c
    units = []
    weights = cfg.weights
    if isinstance(weights, str):
        _, _, _, A = _base(*_frozen(plain))
        weights = seed_weights(A, weights)
        plain["weights"] = weights
    for task in cfg.tasks:
        if task == "sl3":
            units.append((plain, task, None, timings))
        elif task == "typea":
            for w in cfg.typea["weights"]:
                units.append((plain, task, [str(Fraction(str(v))) for v in w], timings))
        else:
            for w in weights:
                units.append((plain, task, [str(Fraction(str(v))) for v in w], timings))
    return units


def run(cfg: RunConfig, jobs: int = 1, timings: bool = False) -> dict:
    units = _units(cfg, timings)
    if jobs > 1 and len(units) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as ex:
            results = list(ex.map(_run_unit, units))
    else:
        results = [_run_unit(u) for u in units]
    entries = [{"task": t, "weight": v, "result": r} for t, v, r in results]
    entries.sort(key=lambda e: (TASKS.index(e["task"]), json.dumps(e["weight"])))
    return {"schema": SCHEMA, "config": cfg.to_json(), "results": entries,
            "ok": all(e["result"].get("ok", False) for e in entries)}


# ---------------------------------------------------------------- output


def render_text(report: dict) -> str:
    rows = []
    for e in report["results"]:
        r = e["result"]
        w = "-" if e["weight"] is None else "(" + ", ".join(e["weight"]) + ")"
        status = "ok" if r.get("ok") else "FAIL"
        detail = r.get("error", "")
        if not detail and e["task"] == "characters" and "irreducible" in r:
            detail = "; ".join(f"{k}: {v}" for k, v in r["irreducible"].items())
        if not detail and e["task"] == "sl3":
            detail = ", ".join(f"{k}={'yes' if v else 'no'}" for k, v in r["checks"].items())
        if not detail and "checks" in r:
            detail = ", ".join(f"{k}={'ok' if v['ok'] else 'FAIL'}" for k, v in r["checks"].items())
        if not detail and e["task"] == "multiply":
            detail = "; ".join(f"{p['word']}: {len(p['normal_form'])} terms" for p in r["products"])
        if not detail and e["task"] == "typea":
            rel = r["relations"]
            detail = f"relations {rel['passed']}/{rel['checked']}"
        rows.append((e["task"], w, status, detail))
    widths = [max([len(r[k]) for r in rows] + [len(h)]) for k, h in enumerate(("task", "weight", "status"))]
    head = f"{'task':<{widths[0]}}  {'weight':<{widths[1]}}  {'status':<{widths[2]}}  detail"
    lines = [head, "-" * len(head)]
    for t, w, s, d in rows:
        lines.append(f"{t:<{widths[0]}}  {w:<{widths[1]}}  {s:<{widths[2]}}  {d}")
    lines.append(f"overall: {'ok' if report['ok'] else 'FAIL'}")
    return "\n".join(lines) + "\n"


def dump(report: dict, fmt: str) -> str:
    if fmt == "text":
        return render_text(report)
    return json.dumps(report, indent=2, sort_keys=True, default=str) + "\n"


# ---------------------------------------------------------------- argparse


def _parse_weights(specs: Sequence[str]):
    if len(specs) == 1 and specs[0] in ("small", "exceptional"):
        return specs[0]
    out = []
    for s in specs:
        for part in s.split(";"):
            part = part.strip()
            if part:
                out.append([p.strip() for p in part.split(",")])
    return out


def _common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--config", help="YAML or JSON config file")
    p.add_argument("--task", choices=TASKS, help="run only this task")
    p.add_argument("--out", help="write the report here instead of stdout")
    p.add_argument("--format", choices=("json", "text"), help="report format (default json)")
    p.add_argument("--jobs", type=int, default=1, help="worker processes")
    p.add_argument("--timings", action="store_true", help="include wall-clock seconds (not deterministic)")


def _datum_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--type", help="named type such as A2, B2, G2, A3")
    p.add_argument("--field", help="Q or F<p>")
    p.add_argument("--h0", help="0 for the degenerate case")
    p.add_argument("--c", help="parameter c, one value or comma separated")
    p.add_argument("--datum", choices=("canonical", "gradedH"))
    p.add_argument("--weights", action="append",
                   help="entries separated by commas, weights by ';' (repeatable), or small/exceptional")
    p.add_argument("--fdegree", type=int)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="quiverhecke", description="Quiver Hecke algebra verification")
    sub = parser.add_subparsers(dest="command", required=True)
    p = sub.add_parser("run", help="run the tasks of a config file")
    _common(p)
    _datum_flags(p)
    for name in ("verify", "pbw", "characters", "splitting", "multiply"):
        p = sub.add_parser(name, help=f"run the {name} task")
        _common(p)
        _datum_flags(p)
        if name == "multiply":
            p.add_argument("--word", action="append", help="generator indices, comma separated (repeatable)")
    p = sub.add_parser("sl3", help="the SL3 example and the middle-weight computation")
    _common(p)
    p.add_argument("--field", default=None)
    p = sub.add_parser("typea", help="type-A embeddings of H_n(Gamma)")
    _common(p)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--weights", action="append", required=True)
    p.add_argument("--q", help="omit for the degenerate embedding")
    p.add_argument("--field", default=None)
    return parser


def config_from_args(args) -> RunConfig:
    if args.config:
        cfg = load_config(args.config)
    else:
        cfg = RunConfig(lines={})
    cmd = args.command
    if cmd in ("verify", "pbw", "characters", "splitting", "sl3", "typea", "multiply"):
        cfg.tasks = [cmd]
    if getattr(args, "task", None):
        cfg.tasks = [args.task]
    if cmd == "typea":
        ws = _parse_weights(args.weights)
        if isinstance(ws, str):
            raise ConfigError("typea needs explicit weights")
        cfg.typea = {"n": args.n, "weights": ws}
        if args.q is not None:
            cfg.typea["q"] = args.q
        if args.field:
            cfg.typea["field"] = args.field
    for k in ("type", "field", "h0", "datum", "fdegree"):
        v = getattr(args, k, None)
        if v is not None and not (cmd == "typea" and k == "field"):
            setattr(cfg, k, v)
    if getattr(args, "word", None):
        cfg.words = [[int(a) for a in w.split(",") if a.strip()] for w in args.word]
    if getattr(args, "c", None) is not None:
        parts = args.c.split(",")
        cfg.c = parts[0] if len(parts) == 1 else parts
    if getattr(args, "weights", None) and cmd != "typea":
        cfg.weights = _parse_weights(args.weights)
    if args.format:
        cfg.format = args.format
    if args.out:
        cfg.out = args.out
    validate(cfg)
    return cfg


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = config_from_args(args)
    except ConfigError as e:
        print(f"config error: {e}", file=sys.stderr)
        return 2
    report = run(cfg, jobs=max(1, args.jobs), timings=args.timings)
    text = dump(report, cfg.format)
    if cfg.out:
        with open(cfg.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0 if report["ok"] else 1


if __name__ == "__main__":
    sys.exit(main())
