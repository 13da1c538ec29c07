"""Degrees on the graded algebra, homogeneity of relations, the anti-involution
iota and graded characters.

Characters use the convention chi = sum over basis vectors of v^(-deg).
"""
from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

from .coeff_rings import CoeffRing, ModeError
from .datum import Datum
from .qhecke_core import Engine, Relation, relation_suite, verify_relations, RelationReport
from .weyl_orbits import Orbit, Weight


class ParityError(ArithmeticError):
    pass


@dataclass(frozen=True)
class DegreeRule:
    """deg tau_i^mu: -2 if fixed; otherwise 1 at <mu, a_i> = +-c_i (char != 2),
    2 at <mu, a_i> = c_i (char 2), else 0.  deg x = 2."""

    orbit: Orbit
    c: tuple
    char2: bool
    x_degree: int = 2

    @staticmethod
    def for_datum(D: Datum) -> "DegreeRule":
        if not D.A.is_additive:
            raise ModeError("the grading lives on the degenerate algebra")
        return DegreeRule(D.orbit, D.params.c, D.A.characteristic == 2)

    def __call__(self, mu: Weight, i: int) -> int:
        orb = self.orbit
        if orb.is_fixed(i, mu):
            return -2
        a = mu.pairing(orb.W.datum.simple_roots[i])
        c = self.c[i]
        if self.char2:
            return 2 if a == c else 0
        return 1 if a == c or a == -c else 0


def word_degree(rule: DegreeRule, mu: Weight, word: Sequence[int]) -> int:
    total = 0
    for a in word:
        total += rule(mu, a)
        mu = rule.orbit.s(a, mu)
    return total


def function_degree(A: CoeffRing, f, mu: Weight) -> Optional[int]:
    """Degree of f at mu after the shift psi_mu; None if not homogeneous, -1 for zero."""
    d = A.homogeneous_degree(A.psi_shift(f, mu))
    if d is None or d < 0:
        return d
    return 2 * d


def monomial_degree(rule: DegreeRule, A: CoeffRing, source: Weight, mono: Sequence) -> Optional[int]:
    """Degree of a relation monomial, -1 if it is zero, None if inhomogeneous."""
    mu = source
    total = 0
    for kind, val in mono:
        if kind == "r":
            total += rule(mu, val)
            mu = rule.orbit.s(val, mu)
        else:
            d = function_degree(A, val, mu)
            if d is None or d < 0:
                return d
            total += d
    return total


@dataclass
class HomogeneityReport:
    checked: int = 0
    failures: list = field(default_factory=list)
    degrees: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return self.checked > 0 and not self.failures


def relation_degrees(rule: DegreeRule, A: CoeffRing, rel: Relation) -> list:
    out = []
    for scalar, mono in list(rel.lhs) + list(rel.rhs):
        if A.domain.convert(scalar) == A.domain.zero:
            continue
        d = monomial_degree(rule, A, rel.source, mono)
        if d == -1:
            continue
        out.append(d)
    return out


def verify_homogeneity(D: Datum, fdegree: int = 2, relations: Optional[list] = None) -> HomogeneityReport:
    """Every defining relation (functions restricted to x-monomials) is homogeneous."""
    rule = DegreeRule.for_datum(D)
    rels = relation_suite(D, fdegree, localized=False) if relations is None else relations
    rep = HomogeneityReport()
    for rel in rels:
        degs = relation_degrees(rule, D.A, rel)
        rep.checked += 1
        kind = rel.name if "kind" not in rel.info else f"{rel.name}/{rel.info['kind']}"
        if None in degs or len(set(degs)) > 1:
            rep.failures.append({"relation": kind, "weight": str(rel.source), "info": dict(rel.info),
                                 "degrees": degs})
        elif degs:
            rep.degrees.setdefault(kind, set()).add(degs[0])
    rep.degrees = {k: sorted(v) for k, v in sorted(rep.degrees.items())}
    return rep


# ---------------------------------------------------------------- iota


def iota_monomial(orb: Orbit, source: Weight, mono: Sequence) -> tuple[Weight, tuple]:
    """Reverse the letters; the new source is the old target."""
    mu = source
    for kind, val in mono:
        if kind == "r":
            mu = orb.s(val, mu)
    return mu, tuple(reversed(tuple(mono)))


def iota_relation(orb: Orbit, rel: Relation) -> Relation:
    src = None
    lhs, rhs = [], []
    for side, out in ((rel.lhs, lhs), (rel.rhs, rhs)):
        for scalar, mono in side:
            t, m = iota_monomial(orb, rel.source, mono)
            if src is None:
                src = t
            elif t != src:
                raise ValueError("relation terms end at different weights")
            out.append((scalar, m))
    return Relation("iota:" + rel.name, src, lhs, rhs, dict(rel.info))


@dataclass
class IotaReport:
    relations: RelationReport
    involution: bool
    degree_preserving: bool

    @property
    def ok(self) -> bool:
        return self.relations.ok and self.involution and self.degree_preserving


def check_iota(E: Engine, fdegree: int = 2) -> IotaReport:
    """iota maps relations to relations (anti-homomorphism), squares to the
    identity and preserves degrees generator by generator."""
    D = E.D
    orb = D.orbit
    rels = relation_suite(D, fdegree, localized=False)
    images = [iota_relation(orb, r) for r in rels]
    rep = verify_relations(E, images)
    inv = all(
        iota_relation(orb, im).source == r.source
        and [m for _, m in iota_relation(orb, im).lhs] == [m for _, m in r.lhs]
        and [m for _, m in iota_relation(orb, im).rhs] == [m for _, m in r.rhs]
        for r, im in zip(rels, images)
    )
    deg_ok = True
    if D.A.is_additive:
        rule = DegreeRule.for_datum(D)
        for mu in orb:
            for i in range(D.rank):
                if rule(mu, i) != rule(orb.s(i, mu), i):
                    deg_ok = False
        for r, im in zip(rels, images):
            if relation_degrees(rule, D.A, r) != relation_degrees(rule, D.A, im):
                deg_ok = False
    return IotaReport(rep, inv, deg_ok)


# ---------------------------------------------------------------- loops


@dataclass
class LoopReport:
    weight: str
    max_length: int
    loops: int
    degrees: list
    ok: bool


def loop_parity_check(rule: DegreeRule, lam: Weight, max_length: Optional[int] = None) -> LoopReport:
    """All generator words of length <= max_length (default 2 l(w0)) that return
    to lam, counted by a transfer sweep over (weight, degree)."""
    orb = rule.orbit
    W = orb.W
    n = W.datum.rank
    L = 2 * W.lengths[W.longest] if max_length is None else max_length
    states = {(lam, 0): 1}
    loop_degrees: dict = defaultdict(int)
    loop_degrees[0] += 1
    for _ in range(L):
        nxt: dict = defaultdict(int)
        for (mu, d), cnt in states.items():
            for i in range(n):
                nxt[(orb.s(i, mu), d + rule(mu, i))] += cnt
        states = nxt
        for (mu, d), cnt in states.items():
            if mu == lam:
                loop_degrees[d] += cnt
    degs = sorted(loop_degrees)
    return LoopReport(str(lam), L, sum(loop_degrees.values()), degs, all(d % 2 == 0 for d in degs))


# ---------------------------------------------------------------- characters


class GradedChar:
    """Per-weight Laurent polynomials in v with nonnegative integer coefficients."""

    def __init__(self, components: Optional[dict] = None):
        self.components: dict[str, dict[int, int]] = {}
        for k, poly in (components or {}).items():
            self.components[k] = {e: c for e, c in poly.items() if c}

    @staticmethod
    def from_degrees(per_weight: dict) -> "GradedChar":
        comps = {}
        for k, degs in per_weight.items():
            poly: dict = defaultdict(int)
            for d in degs:
                poly[-d] += 1
            comps[k] = dict(poly)
        return GradedChar(comps)

    def __getitem__(self, key: str) -> dict:
        return self.components.get(key, {})

    def at_one(self) -> dict:
        return {k: sum(p.values()) for k, p in self.components.items()}

    def shifted(self, ell: int) -> "GradedChar":
        """Multiply by v^(-ell)."""
        return GradedChar({k: {e - ell: c for e, c in p.items()} for k, p in self.components.items()})

    def swapped(self) -> "GradedChar":
        return GradedChar({k: {-e: c for e, c in p.items()} for k, p in self.components.items()})

    def is_palindromic(self) -> bool:
        return all(p == {-e: c for e, c in p.items()} for p in self.components.values())

    def __eq__(self, other) -> bool:
        if not isinstance(other, GradedChar):
            return NotImplemented
        keys = set(self.components) | set(other.components)
        return all(self[k] == other[k] for k in keys)

    def render(self, key: str) -> str:
        return render_laurent(self[key])

    def to_json(self) -> dict:
        return {k: render_laurent(p) for k, p in sorted(self.components.items())}


def render_laurent(poly: dict) -> str:
    """e.g. "v^-1 + v"; "0" for the zero polynomial."""
    parts = []
    for e in sorted(poly):
        c = poly[e]
        if not c:
            continue
        mono = "1" if e == 0 else ("v" if e == 1 else f"v^{e}")
        if c == 1:
            parts.append(mono)
        elif e == 0:
            parts.append(str(c))
        else:
            parts.append(f"{c}*{mono}")
    return " + ".join(parts) if parts else "0"


def parse_laurent(text: str) -> dict:
    text = text.strip()
    if text == "0":
        return {}
    out: dict = defaultdict(int)
    for term in text.split("+"):
        term = term.strip()
        c = 1
        if "*" in term:
            cs, term = term.split("*")
            c = int(cs)
        if term == "1":
            e = 0
        elif term == "v":
            e = 1
        elif term.startswith("v^"):
            e = int(term[2:])
        else:
            c, e = int(term), 0
        out[e] += c
    return dict(out)


def balance_shift(ch: GradedChar, key: Optional[str] = None) -> tuple[int, GradedChar]:
    """Shift making the ``key`` component (default: the only or first) palindromic."""
    if key is None:
        key = sorted(ch.components)[0]
    poly = ch[key]
    if not poly:
        return 0, ch
    total = max(poly) + min(poly)
    if total % 2:
        raise ParityError(f"degrees of {key} have odd spread {total}")
    ell = total // 2
    return ell, ch.shifted(ell)
