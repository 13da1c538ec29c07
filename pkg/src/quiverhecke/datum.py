"""The quadratic datum G on an orbit, its conditions, splitting families, and
the graded datum H with its ratio to the canonical datum.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence

from .coeff_rings import CoeffRing
from .fields import convert, to_python
from .weyl_orbits import Orbit, Weight


class ParameterError(ValueError):
    pass


class SplittingConflict(RuntimeError):
    """Two propagation routes assigned different values to the same F."""


@dataclass(frozen=True)
class HeckeParams:
    """h0, one nonzero c per simple root, and q_i = 1 + h0 c_i."""

    h0: object
    c: tuple
    domain: object = field(compare=False, repr=False)

    @staticmethod
    def make(datum, domain, h0=0, c=1) -> "HeckeParams":
        cs = tuple(c) if isinstance(c, (list, tuple)) else (c,) * datum.rank
        if len(cs) != datum.rank:
            raise ParameterError(f"expected {datum.rank} parameters c, got {len(cs)}")
        p = HeckeParams(convert(domain, h0), tuple(convert(domain, x) for x in cs), domain)
        p.validate(datum)
        return p

    def validate(self, datum) -> None:
        zero = self.domain.zero
        for i, ci in enumerate(self.c):
            if ci == zero:
                raise ParameterError(f"c_{i} must be nonzero")
            if self.h0 != zero and self.q(i) == zero:
                raise ParameterError(f"q_{i} = 1 + h0 c_{i} vanishes")
        for (i, j), m in datum.coxeter_orders.items():
            if i != j and m % 2 == 1 and self.c[i] != self.c[j]:
                raise ParameterError(
                    f"c_{i} and c_{j} must agree since the order of s_{i} s_{j} is odd ({m})"
                )

    def q(self, i: int):
        return self.domain.one + self.h0 * self.c[i]

    def to_json(self) -> dict:
        return {
            "h0": to_python(self.domain, self.h0),
            "c": [to_python(self.domain, x) for x in self.c],
        }


class Datum:
    """A family G_i^mu of localized functions on one orbit, memoized.

    ``kind`` is "canonical", "gradedH", or "custom" (with ``rule``).
    """

    def __init__(self, A: CoeffRing, orbit: Orbit, params: HeckeParams, kind: str = "canonical",
                 rule: Optional[Callable[[Weight, int], object]] = None):
        if kind not in ("canonical", "gradedH", "custom"):
            raise ValueError(f"unknown datum {kind!r}")
        if kind == "gradedH" and not A.is_additive:
            raise ParameterError("the graded datum needs h0 = 0")
        if kind == "custom" and rule is None:
            raise ValueError("a custom datum needs a rule")
        for i in range(A.datum.rank):
            if A.is_zero(A.P_root(i)):
                raise ParameterError(f"simple root {i} vanishes in characteristic {A.characteristic}")
        self.A = A
        self.orbit = orbit
        self.params = params
        self.kind = kind
        self._rule = rule
        self._memo: dict[tuple[Weight, int], object] = {}

    @property
    def rank(self) -> int:
        return self.A.datum.rank

    def pairing(self, mu: Weight, i: int):
        return mu.pairing(self.A.datum.simple_roots[i])

    def G(self, mu: Weight, i: int):
        key = (mu, i)
        v = self._memo.get(key)
        if v is None:
            if self.kind == "canonical":
                v = canonical_G(self.A, self.orbit, self.params, mu, i)
            elif self.kind == "gradedH":
                v = graded_H_value(self.A, self.orbit, self.params, mu, i)
            else:
                v = self._rule(mu, i)
            self._memo[key] = v
        return v

    def is_polynomial(self) -> bool:
        return all(self.G(mu, i).denom.is_ground for mu in self.orbit for i in range(self.rank))


def canonical_G(A: CoeffRing, orbit: Orbit, params: HeckeParams, mu: Weight, i: int):
    """1 at fixed or exceptional weights, else (c + q P_{-a})(P_{-a} - c)(-P_{-a})^-2."""
    if orbit.is_fixed(i, mu) or orbit.exceptional(i, mu):
        return A.one
    c = A.K(params.c[i])
    q = A.K(params.q(i))
    pm = A.P_root(i, -1)
    return (c + q * pm) * (pm - c) / (pm * pm)


def graded_H_value(A: CoeffRing, orbit: Orbit, params: HeckeParams, mu: Weight, i: int):
    if orbit.is_fixed(i, mu):
        return A.one
    c = params.c[i]
    a = mu.pairing(A.datum.simple_roots[i])
    pa = A.P_root(i)
    cK = A.K(c)
    if A.characteristic == 2:
        return (cK - pa) ** 2 if a == c else A.one
    if a == c:
        return cK - pa
    if a == -c:
        return cK + pa
    return A.one


def graded_ratio(A: CoeffRing, orbit: Orbit, params: HeckeParams, mu: Weight, i: int):
    """g_i^mu by the closed formulas (cross-checked against H/G by ``graded_H``)."""
    if orbit.is_fixed(i, mu):
        return A.one
    c = params.c[i]
    a = mu.pairing(A.datum.simple_roots[i])
    pa = A.P_root(i)
    cK = A.K(c)
    if A.characteristic == 2:
        if a == c:
            return pa * pa
        return pa * pa / ((pa - cK) * (pa + cK))
    if a == c:
        # H = c - P, so the sign is negative
        return -pa * pa / (pa + cK)
    if a == -c:
        return pa * pa / (pa - cK)
    return pa * pa / ((pa - cK) * (pa + cK))


@dataclass
class GradedDatum:
    H: Datum
    G: Datum
    ratio: dict


def graded_H(A: CoeffRing, orbit: Orbit, params: HeckeParams) -> GradedDatum:
    """The graded datum H with g = H/G, each g checked to be a unit at its weight."""
    H = Datum(A, orbit, params, "gradedH")
    G = Datum(A, orbit, params, "canonical")
    ratio = {}
    for mu in orbit:
        for i in range(A.datum.rank):
            g = H.G(mu, i) / G.G(mu, i)
            if not A.is_unit_at(g, mu):
                raise ArithmeticError(f"ratio g_{i} is not a unit at {mu}")
            if not A.equal(g, graded_ratio(A, orbit, params, mu, i)):
                raise ArithmeticError(f"ratio g_{i} at {mu} disagrees with the closed formula")
            ratio[(mu, i)] = g
    return GradedDatum(H, G, ratio)


def ratio_datum(A: CoeffRing, orbit: Orbit, params: HeckeParams, num: Datum, den: Datum) -> Datum:
    return Datum(A, orbit, params, "custom", rule=lambda mu, i: num.G(mu, i) / den.G(mu, i))


# ---------------------------------------------------------------- conditions


@dataclass
class ConditionReport:
    checked: int = 0
    failures: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures


def braid_transport(A: CoeffRing, i: int, j: int) -> tuple[int, int]:
    """(w_{ij} s_i as a group element, index of the simple root w_{ij} s_i(alpha_i))."""
    W = A.W
    word, k = A.datum.dihedral_longest_image(i, j)
    u = W.mul(W.from_word(word), W.simple(i))
    return u, k


def check_conditions(D: Datum) -> ConditionReport:
    A, orb = D.A, D.orbit
    rep = ConditionReport()
    n = D.rank
    for mu in orb:
        for i in range(n):
            g = D.G(mu, i)
            smu = orb.s(i, mu)
            rep.checked += 1
            if not A.regular_at(g, mu):
                rep.failures.append(("regular", str(mu), i))
            if not A.equal(A.s(i, g), D.G(smu, i)):
                rep.failures.append(("associative", str(mu), i))
            rep.checked += 1
            if smu == mu and not A.equal(g, A.one):
                rep.failures.append(("fixed", str(mu), i))
            rep.checked += 1
            if orb.exceptional(i, mu) and not A.equal(g, A.one):
                rep.failures.append(("exceptional", str(mu), i))
            for j in range(n):
                if j == i:
                    continue
                u, k = braid_transport(A, i, j)
                rep.checked += 1
                if not A.equal(A.act(u, g), D.G(orb.act(u, mu), k)):
                    rep.failures.append(("braid", str(mu), i, j))
    return rep


# ---------------------------------------------------------------- splitting


@dataclass
class SplitFamily:
    F: dict
    coincidences: list
    datum: Datum

    def __call__(self, mu: Weight, i: int):
        return self.F[(mu, i)]


def splitting_family(D: Datum, strict: bool = True) -> SplitFamily:
    """Choose F with F_i^mu s_i(F_i^{s_i mu}) = G_i^mu, one factor 1, and
    F_k^{u nu} = u(F_i^nu) for u = w_{ij} s_i.  Double definitions are recorded;
    disagreeing ones raise ``SplittingConflict`` (or are recorded if not strict)."""
    A, orb = D.A, D.orbit
    n = D.rank
    F: dict = {}
    coincidences: list = []
    transports = {(i, j): braid_transport(A, i, j) for i in range(n) for j in range(n) if i != j}
    for mu in orb:
        for i in range(n):
            if orb.is_fixed(i, mu):
                F[(mu, i)] = A.one

    def assign(key, value, origin, queue):
        old = F.get(key)
        if old is None:
            F[key] = value
            queue.append(key)
            return
        agree = A.equal(old, value)
        coincidences.append({"pair": (str(key[0]), key[1]), "from": origin, "agree": agree})
        if not agree:
            if strict:
                raise SplittingConflict(f"F_{key[1]} at {key[0]} defined twice via {origin}")

    for mu in orb:
        for i in range(n):
            if (mu, i) in F:
                continue
            queue: deque = deque()
            assign((mu, i), D.G(mu, i), ("seed",), queue)
            assign((orb.s(i, mu), i), A.one, ("seed",), queue)
            while queue:
                nu, a = queue.popleft()
                val = F[(nu, a)]
                for b in range(n):
                    if b == a:
                        continue
                    u, k = transports[(a, b)]
                    assign((orb.act(u, nu), k), A.act(u, val), (str(nu), a, b, k), queue)
    return SplitFamily(F, coincidences, D)


@dataclass
class SplitReport:
    checked: int
    failures: list
    coincidences: int
    conflicts: int

    @property
    def ok(self) -> bool:
        return not self.failures and not self.conflicts


def verify_splitting(S: SplitFamily) -> SplitReport:
    D = S.datum
    A, orb = D.A, D.orbit
    n = D.rank
    failures = []
    checked = 0
    for mu in orb:
        for i in range(n):
            f = S(mu, i)
            smu = orb.s(i, mu)
            f2 = S(smu, i)
            checked += 1
            if not A.regular_at(f, mu):
                failures.append(("regular", str(mu), i))
            if not (A.equal(f, A.one) or A.equal(f2, A.one)):
                failures.append(("one-side", str(mu), i))
            if not A.equal(f * A.s(i, f2), D.G(mu, i)):
                failures.append(("split", str(mu), i))
            for j in range(n):
                if j == i:
                    continue
                u, k = braid_transport(A, i, j)
                checked += 1
                if not A.equal(S(orb.act(u, mu), k), A.act(u, f)):
                    failures.append(("transport", str(mu), i, j))
    conflicts = sum(1 for c in S.coincidences if not c["agree"])
    return SplitReport(checked, failures, len(S.coincidences), conflicts)
