"""Embeddings of the type-A quiver Hecke algebras H_n(Gamma) into the engine
for the GL_n datum, degenerate (h0 = 0) and q-deformed (h0 = q - 1).

Both are checked relation by relation.  Coefficient placement: the factor in
front of r at <lam, a> = +1 (resp. lam(a) = q) multiplies on the target side,
the generic factor on the source side, where it is regular at the anchor.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence

from .coeff_rings import CoeffRing
from .datum import (Datum, GradedDatum, HeckeParams, check_conditions, graded_H, ratio_datum,
                    splitting_family)
from .fields import convert, make_field
from .grading import DegreeRule, function_degree, verify_homogeneity
from .qhecke_core import Engine, Relation, RelationReport, SkewElem, check_relation
from .root_datum import gl
from .weyl_orbits import Orbit, Weight, WeylGroup


@dataclass
class TypeAContext:
    n: int
    lam: Weight
    q: Optional[object]
    A: CoeffRing
    orbit: Orbit
    params: HeckeParams
    datum: Datum
    engine: Engine

    @property
    def degenerate(self) -> bool:
        return self.q is None


def type_a_context(n: int, lam: Sequence, q=None, field_spec="Q") -> TypeAContext:
    if n < 2:
        raise ValueError("n must be at least 2")
    if len(lam) != n:
        raise ValueError(f"weight needs {n} entries, got {len(lam)}")
    dom = make_field(field_spec)
    datum = gl(n)
    W = WeylGroup(datum)
    if q is None:
        h0 = 0
        mu = Weight.additive(lam, field_spec)
    else:
        qd = convert(dom, q)
        if qd in (dom.zero, dom.one, -dom.one):
            raise ValueError("q must avoid 0 and +-1")
        q = qd
        h0 = q - dom.one
        mu = Weight.multiplicative(lam, field_spec)
    A = CoeffRing(datum, W, dom, h0)
    params = HeckeParams.make(datum, dom, h0, 1)
    orb = Orbit(W, mu)
    D = Datum(A, orb, params, "canonical")
    return TypeAContext(n, mu, q, A, orb, params, D, Engine(D))


def X(ctx: TypeAContext, k: int):
    e = [0] * ctx.n
    e[k] = 1
    return ctx.A.P(e) if ctx.degenerate else ctx.A.monomial(e)


def x_image(ctx: TypeAContext, mu: Weight, k: int):
    """x_k^mu: X_k - mu_k (degenerate) or X_k mu_k^-1 (q-case)."""
    v = ctx.A.K(mu.values[k])
    return X(ctx, k) - v if ctx.degenerate else X(ctx, k) / v


def _case(ctx: TypeAContext, mu: Weight, i: int) -> str:
    """fixed, up (lam_{i+1} = lam_i + 1 or q lam_i), down, or generic."""
    a, b = mu.values[i], mu.values[i + 1]
    dom = ctx.A.domain
    if a == b:
        return "fixed"
    if ctx.degenerate:
        if b == a + dom.one:
            return "up"
        if b == a - dom.one:
            return "down"
        return "generic"
    if b == a * ctx.q:
        return "up"
    if a == b * ctx.q:
        return "down"
    return "generic"


def tau_images(ctx: TypeAContext) -> Callable[[Weight, int], SkewElem]:
    E, A, orb = ctx.engine, ctx.A, ctx.orbit
    K = A.K

    def image(mu: Weight, i: int) -> SkewElem:
        r = E.generator_image(mu, i)
        case = _case(ctx, mu, i)
        if ctx.degenerate:
            pa = A.P_root(i)
            if case == "fixed":
                return r
            if case == "up":
                return E.left_mul(-pa, r)
            return E.right_mul(r, -pa / (A.one - pa))
        q = K(ctx.q)
        li = K(mu.values[i])
        if case == "fixed":
            return E.left_mul(li / ((q - A.one) * X(ctx, i + 1)), r)
        u = A.U_root(i, -1)
        if case == "up":
            return E.left_mul(X(ctx, i + 1) * (u - A.one) / (q * li), r)
        return E.right_mul(r, (u - A.one) / (q * u - A.one))

    return image


def hn_relations(ctx: TypeAContext) -> list[Relation]:
    """The defining relations of H_n(Gamma) on the orbit, written in the
    letters of the engine: ("r", i) stands for tau_i."""
    orb, n = ctx.orbit, ctx.n
    out = []
    for mu in orb:
        for k in range(n):
            for l in range(k + 1, n):
                xk, xl = ("f", x_image(ctx, mu, k)), ("f", x_image(ctx, mu, l))
                out.append(Relation("x-commute", mu, [(1, (xk, xl))], [(1, (xl, xk))], {"i": k, "j": l}))
        for i in range(n - 1):
            smu = orb.s(i, mu)
            case = _case(ctx, mu, i)
            for j in range(n):
                sj = i + 1 if j == i else (i if j == i + 1 else j)
                rhs = []
                if case == "fixed" and j == i:
                    rhs = [(-1, ())]
                elif case == "fixed" and j == i + 1:
                    rhs = [(1, ())]
                lhs = [(1, (("f", x_image(ctx, mu, j)), ("r", i))),
                       (-1, (("r", i), ("f", x_image(ctx, smu, sj))))]
                out.append(Relation("commutation", mu, lhs, rhs, {"i": i, "j": j}))
            xi, xj = ("f", x_image(ctx, mu, i)), ("f", x_image(ctx, mu, i + 1))
            rhs = {"fixed": [], "up": [(1, (xj,)), (-1, (xi,))],
                   "down": [(1, (xi,)), (-1, (xj,))], "generic": [(1, ())]}[case]
            out.append(Relation("quadratic", mu, [(1, (("r", i), ("r", i)))], rhs, {"i": i, "case": case}))
            for j in range(i + 2, n - 1):
                out.append(Relation("distant", mu, [(1, (("r", j), ("r", i)))],
                                    [(1, (("r", i), ("r", j)))], {"i": i, "j": j}))
            if i + 2 < n:
                a, c = mu.values[i], mu.values[i + 2]
                rhs = [(1, (("r", i + 1), ("r", i), ("r", i + 1)))]
                info = {"i": i}
                if a == c and case != "fixed":
                    # lam_i = lam_{i+2} != lam_{i+1}: the difference is +1, -1 or 0
                    sign = {"up": 1, "down": -1, "generic": 0}[case]
                    if sign:
                        rhs.append((sign, ()))
                    info["corrected"] = sign
                out.append(Relation("braid", mu, [(1, (("r", i), ("r", i + 1), ("r", i)))], rhs, info))
    return out


def _verify(E: Engine, rels: list[Relation]) -> RelationReport:
    rep = RelationReport()
    for rel in rels:
        ok, witness = check_relation(E, rel)
        rep.checked += 1
        slot = rep.by_kind.setdefault(rel.name, [0, 0])
        slot[0] += 1
        if ok:
            rep.passed += 1
            slot[1] += 1
        else:
            rep.failures.append({"relation": rel.name, "weight": str(rel.source),
                                 "info": dict(rel.info), "witness": witness})
    return rep


@dataclass
class EmbeddingReport:
    n: int
    weight: str
    q: Optional[object]
    relations: RelationReport
    images: dict
    parabolic: bool
    exceptional: list
    degrees: dict = field(default_factory=dict)
    degree_failures: list = field(default_factory=list)
    units: bool = True
    braid_comparison: list = field(default_factory=list)
    lemma_ratio: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return (self.relations.ok and self.parabolic and not self.exceptional
                and not self.degree_failures and self.units)

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "weight": self.weight,
            "q": self.q,
            "ok": self.ok,
            "relations": self.relations.to_json(),
            "images": self.images,
            "every_weight_conjugate_to_standard_parabolic": self.parabolic,
            "exceptional": self.exceptional,
            "degrees": self.degrees,
            "degree_failures": self.degree_failures,
            "recovers_generators": self.units,
            "braid_comparison": self.braid_comparison,
            "lemma_ratio": self.lemma_ratio,
        }


def _render_image(ctx: TypeAContext, x: SkewElem) -> dict:
    W = ctx.A.W
    return {"".join(f"s{a + 1}" for a in W.words[w]) or "e": ctx.A.to_text(c)
            for w, c in sorted(x.terms.items())}


def _structure(ctx: TypeAContext) -> tuple[bool, list]:
    orb = ctx.orbit
    parabolic = all(any(orb.is_standard_parabolic(orb.act(w, mu)) for w in range(len(orb.W)))
                    for mu in orb)
    exc = sorted({(str(mu), i) for mu in orb for i in range(ctx.n - 1) if orb.exceptional(i, mu)})
    return parabolic, [list(e) for e in exc]


def _report(ctx: TypeAContext) -> tuple[EmbeddingReport, Engine]:
    tau = tau_images(ctx)
    E_tau = Engine(ctx.datum, ctx.engine.F, generator=tau)
    rels = _verify(E_tau, hn_relations(ctx))
    images = {}
    for mu in sorted(ctx.orbit.weights, key=lambda m: m.key()):
        for i in range(ctx.n - 1):
            images[f"tau{i + 1} at {mu}"] = {"case": _case(ctx, mu, i), "image": _render_image(ctx, tau(mu, i))}
    parabolic, exc = _structure(ctx)
    qv = None if ctx.q is None else str(ctx.q)
    return EmbeddingReport(ctx.n, str(ctx.lam), qv, rels, images, parabolic, exc), E_tau


def expected_degree(ctx: TypeAContext, mu: Weight, i: int) -> int:
    return {"fixed": -2, "up": 1, "down": 1, "generic": 0}[_case(ctx, mu, i)]


def degenerate_embedding(n: int, lam: Sequence, field_spec="Q") -> EmbeddingReport:
    """x_i -> X_i - lam_i, tau_i -> r, (-a_i) r or r (-a_i/(1 - a_i)).

    Besides the relations of H_n(Gamma), the grading is checked: each non-fixed
    image is r F'_i^mu with F' a family of units at mu, the composites
    H'_i^mu = tau_i^{s mu} tau_i^mu form a polynomial datum satisfying the datum
    conditions, homogeneous of degree deg tau_i^mu + deg tau_i^{s mu}, and every
    relation is homogeneous for the -2 / 1 / 0 rule.  The images therefore are
    the generators of a graded form split by F'.  Their ratio to the generators
    r F(g) of the lemma splitting is recorded as ``lemma_ratio``.
    """
    ctx = type_a_context(n, lam, None, field_spec)
    rep, E_tau = _report(ctx)
    A, orb, E = ctx.A, ctx.orbit, ctx.engine
    rule = DegreeRule.for_datum(ctx.datum)
    tau = tau_images(ctx)
    composites = {}
    for mu in orb:
        for i in range(n - 1):
            key = f"tau{i + 1} at {mu}"
            smu = orb.s(i, mu)
            want = expected_degree(ctx, mu, i)
            got = rule(mu, i)
            rep.degrees[key] = got
            if got != want:
                rep.degree_failures.append({"generator": key, "degree": got, "expected": want})
            if smu == mu:
                if not E.equal(tau(mu, i), E.generator_image(mu, i)):
                    rep.degree_failures.append({"generator": key, "reason": "fixed image is not r"})
                continue
            s = A.W.simple(i)
            Fp = A.s(i, tau(mu, i).terms[s] / E.generator_image(mu, i).terms[s])
            if not A.is_unit_at(Fp, mu):
                rep.units = False
                rep.degree_failures.append({"generator": key, "reason": "F' is not a unit"})
            comp = E_tau.compose(tau(smu, i), tau(mu, i))
            h = comp.terms.get(0, A.zero) if set(comp.terms) <= {0} else None
            if h is None or not A.is_ring_element(h):
                rep.degree_failures.append({"generator": key, "reason": "composite is not a polynomial"})
                continue
            composites[(mu, i)] = h
            d = function_degree(A, h, mu)
            if d != got + rule(smu, i):
                rep.degree_failures.append({"generator": key, "reason": "composite degree",
                                            "degree": d, "expected": got + rule(smu, i)})
    if composites:
        Hp = Datum(A, orb, ctx.params, "custom",
                   rule=lambda mu, i: composites.get((mu, i), A.one))
        cond = check_conditions(Hp)
        if not cond.ok:
            rep.degree_failures.append({"reason": "composite datum conditions", "failures": cond.failures[:5]})
    homog = verify_homogeneity(ctx.datum, relations=hn_relations(ctx))
    for f in homog.failures:
        rep.degree_failures.append({"reason": "inhomogeneous relation", **f})
    # comparison with the lemma splitting (information only)
    gd: GradedDatum = graded_H(A, orb, ctx.params)
    Sg = splitting_family(ratio_datum(A, orb, ctx.params, gd.H, gd.G))
    for mu in orb:
        for i in range(n - 1):
            if orb.is_fixed(i, mu):
                continue
            s = A.W.simple(i)
            gen = E.right_mul(E.generator_image(mu, i), Sg(mu, i))
            rep.lemma_ratio[f"tau{i + 1} at {mu}"] = A.to_text(tau(mu, i).terms[s] / gen.terms[s])
    return rep


def q_embedding(n: int, lam: Sequence, q, field_spec="Q") -> EmbeddingReport:
    """x_i -> X_i lam_i^-1, tau_i by the U_{-a_i} formulas.  The braid relation of
    tau is checked where H_n(Gamma) imposes it; alongside, the plain braid
    relation of r at the same weight is recorded (it need not hold)."""
    ctx = type_a_context(n, lam, q, field_spec)
    rep, _ = _report(ctx)
    E = ctx.engine
    for rel in hn_relations(ctx):
        if rel.name != "braid":
            continue
        tau_ok = not any(f["relation"] == "braid" and f["weight"] == str(rel.source)
                         and f["info"] == rel.info for f in rep.relations.failures)
        r_ok, _ = check_relation(E, rel)
        rep.braid_comparison.append({"weight": str(rel.source), "i": rel.info["i"],
                                     "tau_braid": tau_ok, "r_braid": r_ok, "differs": tau_ok != r_ok})
    return rep
