"""Weyl group elements, reduced words, weights and their orbits.

Words are tuples of simple-root indices in application order: the word
``(a1, ..., ak)`` denotes s_ak ... s_a1, so ``a1`` acts first.  The group acts
on weights by (w.lam)(f) = lam(w^-1 . f).
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Optional, Sequence

from sympy.polys.domains.domain import Domain

from .fields import convert, make_field
from .root_datum import RootDatum, Vector

Matrix = tuple[tuple[int, ...], ...]

ADDITIVE = "additive"
MULTIPLICATIVE = "multiplicative"


def _matmul(a: Matrix, b: Matrix) -> Matrix:
    n = len(a)
    return tuple(tuple(sum(a[i][k] * b[k][j] for k in range(n)) for j in range(n)) for i in range(n))


def _matvec(a: Matrix, x: Sequence[int]) -> Vector:
    return tuple(sum(r * v for r, v in zip(row, x)) for row in a)


class WeylGroup:
    """The finite Weyl group of a root datum, enumerated as integer matrices on X.

    Elements are addressed by integer index; index 0 is the identity.
    """

    def __init__(self, datum: RootDatum):
        self.datum = datum
        n = datum.dim
        ident = tuple(tuple(int(i == j) for j in range(n)) for i in range(n))
        gens = [datum.reflection_matrix(i) for i in range(datum.rank)]
        self.gens = gens
        mats = [ident]
        index = {ident: 0}
        length = [0]
        frontier = [0]
        while frontier:
            new = []
            for w in frontier:
                for g in gens:
                    m = _matmul(g, mats[w])
                    if m not in index:
                        index[m] = len(mats)
                        mats.append(m)
                        length.append(length[w] + 1)
                        new.append(index[m])
            frontier = new
            if len(mats) > 100000:
                raise ValueError("Weyl group too large")
        self.matrices: list[Matrix] = mats
        self.index = index
        self.lengths: list[int] = length
        size = len(mats)
        # left/right multiplication by simple reflections
        self.lmul = [[index[_matmul(g, m)] for m in mats] for g in gens]
        self.rmul = [[index[_matmul(m, g)] for m in mats] for g in gens]
        self.inverse = [0] * size
        self._mul: dict[tuple[int, int], int] = {}
        self.words: list[tuple[int, ...]] = [()] * size
        for w in sorted(range(size), key=lambda k: length[k]):
            if w == 0:
                continue
            a = min(i for i in range(datum.rank) if length[self.rmul[i][w]] < length[w])
            self.words[w] = (a,) + self.words[self.rmul[a][w]]
        for w in range(size):
            inv = 0
            for a in self.words[w]:
                inv = self.rmul[a][inv]
            self.inverse[w] = inv

    def __len__(self) -> int:
        return len(self.matrices)

    @property
    def identity(self) -> int:
        return 0

    def mul(self, v: int, w: int) -> int:
        """Index of the product v*w (w acts first)."""
        key = (v, w)
        r = self._mul.get(key)
        if r is None:
            r = w
            # words[v] = (a1..ak) and v*w = s_ak ... s_a1 w
            for a in self.words[v]:
                r = self.lmul[a][r]
            self._mul[key] = r
        return r

    def from_word(self, word: Iterable[int]) -> int:
        w = 0
        for a in word:
            w = self.lmul[a][w]
        return w

    def simple(self, i: int) -> int:
        return self.lmul[i][0]

    def length(self, w: int) -> int:
        return self.lengths[w]

    def reduced_word(self, w: int) -> tuple[int, ...]:
        """Lexicographically least reduced word (application order)."""
        return self.words[w]

    def is_reduced(self, word: Sequence[int]) -> bool:
        return self.lengths[self.from_word(word)] == len(word)

    def act(self, w: int, x: Sequence[int]) -> Vector:
        return _matvec(self.matrices[w], x)

    def inversion_count(self, w: int) -> int:
        """#(R+ cap w^-1 R-), the number of positive roots sent negative."""
        pos = set(self.datum.positive_roots)
        return sum(1 for r in self.datum.positive_roots if self.act(w, r) not in pos)

    @cached_property
    def longest(self) -> int:
        return max(range(len(self)), key=lambda k: self.lengths[k])

    def subgroup(self, gens: Iterable[int]) -> list[int]:
        """Elements of the subgroup generated by the simple reflections ``gens``."""
        gens = list(gens)
        seen = {0}
        frontier = [0]
        while frontier:
            new = []
            for w in frontier:
                for i in gens:
                    v = self.lmul[i][w]
                    if v not in seen:
                        seen.add(v)
                        new.append(v)
            frontier = new
        return sorted(seen, key=lambda k: (self.lengths[k], self.words[k]))

    def elem(self, w: int) -> "WeylElem":
        return WeylElem(self, w)

    def minimal_coset_reps(self, sub: Sequence[int]) -> list[int]:
        """Minimal length representatives u of the left cosets u*W_sub."""
        reps = {}
        for w in range(len(self)):
            key = frozenset(self.mul(w, v) for v in sub)
            best = reps.get(key)
            if best is None or (self.lengths[w], self.words[w]) < (self.lengths[best], self.words[best]):
                reps[key] = w
        return sorted(reps.values(), key=lambda k: (self.lengths[k], self.words[k]))


@dataclass(frozen=True)
class WeylElem:
    group: WeylGroup = field(repr=False, compare=False)
    index: int

    @property
    def matrix(self) -> Matrix:
        return self.group.matrices[self.index]

    @property
    def word(self) -> tuple[int, ...]:
        return self.group.words[self.index]

    @property
    def length(self) -> int:
        return self.group.lengths[self.index]

    def __mul__(self, other: "WeylElem") -> "WeylElem":
        return WeylElem(self.group, self.group.mul(self.index, other.index))

    def inverse(self) -> "WeylElem":
        return WeylElem(self.group, self.group.inverse[self.index])


def reduced_word(W: WeylGroup, w: int) -> tuple[int, ...]:
    return W.reduced_word(w)


def is_reduced(W: WeylGroup, word: Sequence[int]) -> bool:
    return W.is_reduced(word)


def inversion_roots(datum: RootDatum, word: Sequence[int]) -> list[Vector]:
    """gamma_i = s_{a1} ... s_{a_{i-1}}(alpha_{a_i}) for the word (a1, ..., ak)."""
    out = []
    for i, a in enumerate(word):
        x = datum.simple_roots[a]
        for b in reversed(word[:i]):
            x = datum.reflect(b, x)
        out.append(x)
    return out


def inversion_bijection(W: WeylGroup, word1: Sequence[int], word2: Sequence[int]) -> list[int]:
    """Permutation p (0-based) with gamma_i(word1) = gamma_{p(i)}(word2)."""
    if not (W.is_reduced(word1) and W.is_reduced(word2)):
        raise ValueError("both words must be reduced")
    if W.from_word(word1) != W.from_word(word2):
        raise ValueError("words represent different elements")
    g1 = inversion_roots(W.datum, word1)
    g2 = inversion_roots(W.datum, word2)
    p = [g2.index(r) for r in g1]
    assert sorted(p) == list(range(len(p)))
    return p


# ---------------------------------------------------------------- weights


@dataclass(frozen=True)
class Weight:
    """A point of the torus (multiplicative) or of Y (x) k (additive).

    ``values[i]`` is lam(P_{b_i}) in additive mode and lam(U_{b_i}) in
    multiplicative mode, where b_i runs over the basis of X.  For data built
    from a Cartan matrix, b_i = omega_i and these are the coroot coefficients.
    """

    mode: str
    values: tuple
    domain: Domain = field(compare=False, repr=False)

    def __post_init__(self):
        if self.mode not in (ADDITIVE, MULTIPLICATIVE):
            raise ValueError(f"unknown weight mode {self.mode!r}")
        if self.mode == MULTIPLICATIVE and any(v == self.domain.zero for v in self.values):
            raise ValueError("multiplicative weight entries must be nonzero")

    @staticmethod
    def additive(values: Sequence, field_spec="Q") -> "Weight":
        dom = make_field(field_spec)
        return Weight(ADDITIVE, tuple(convert(dom, v) for v in values), dom)

    @staticmethod
    def multiplicative(values: Sequence, field_spec="Q") -> "Weight":
        dom = make_field(field_spec)
        return Weight(MULTIPLICATIVE, tuple(convert(dom, v) for v in values), dom)

    @property
    def is_additive(self) -> bool:
        return self.mode == ADDITIVE

    def pairing(self, x: Sequence[int]):
        """lam(P_x) in additive mode, lam(U_x) = lam(e^x) in multiplicative mode."""
        if self.is_additive:
            s = self.domain.zero
            for c, v in zip(x, self.values):
                if c:
                    s += self.domain.convert(c) * v
            return s
        s = self.domain.one
        for c, v in zip(x, self.values):
            if c:
                s *= v ** c
        return s

    def __str__(self) -> str:
        return "(" + ", ".join(str(_plain(self.domain, v)) for v in self.values) + ")"

    def key(self) -> tuple:
        """A sortable canonical key."""
        return tuple(_sortkey(self.domain, v) for v in self.values)


def _plain(dom, v):
    if dom.is_FiniteField:
        return int(dom.to_int(v)) % dom.characteristic()
    q = Fraction(int(v.numerator), int(v.denominator))
    return q


def _sortkey(dom, v):
    if dom.is_FiniteField:
        return (int(dom.to_int(v)) % dom.characteristic(),)
    return (Fraction(int(v.numerator), int(v.denominator)),)


def weight_from_root_pairings(datum: RootDatum, pairings: Sequence, field_spec="Q") -> Weight:
    """Additive weight with lam(P_{alpha_j}) = pairings[j], for Cartan-built data."""
    from sympy.polys.matrices import DomainMatrix

    dom = make_field(field_spec)
    n = datum.rank
    if datum.dim != n:
        raise ValueError("weight_from_root_pairings needs X spanned by fundamental weights")
    # lam(P_{alpha_j}) = sum_i alpha_j[i] v_i
    A = DomainMatrix([[dom.convert(datum.simple_roots[j][i]) for i in range(n)] for j in range(n)], (n, n), dom)
    b = DomainMatrix([[convert(dom, p)] for p in pairings], (n, 1), dom)
    sol = A.lu_solve(b)
    return Weight(ADDITIVE, tuple(sol[i, 0].element for i in range(n)), dom)


def act_on_weight(W: WeylGroup, w: int, lam: Weight) -> Weight:
    """(w.lam)(P_{b_i}) = lam(P_{w^-1 b_i})."""
    m = W.matrices[W.inverse[w]]
    n = len(m)
    return Weight(lam.mode, tuple(lam.pairing([m[j][i] for j in range(n)]) for i in range(n)), lam.domain)


@dataclass
class WeightClassification:
    stabilizer: list[int]
    is_standard_parabolic: bool
    fixed_simple: tuple[int, ...]
    exceptional_roots: frozenset[int]


class Orbit:
    """A W-orbit of weights, with transversal, stabilizers and classification."""

    def __init__(self, W: WeylGroup, lam: Weight):
        self.W = W
        self.seed = lam
        self.weights: list[Weight] = [lam]
        self.transversal: dict[Weight, int] = {lam: 0}
        frontier = [lam]
        while frontier:
            new = []
            for mu in frontier:
                for i in range(W.datum.rank):
                    nu = act_on_weight(W, W.simple(i), mu)
                    if nu not in self.transversal:
                        self.transversal[nu] = W.lmul[i][self.transversal[mu]]
                        self.weights.append(nu)
                        new.append(nu)
            frontier = new
        self._s: dict[tuple[Weight, int], Weight] = {}
        self._class: dict[Weight, WeightClassification] = {}

    def __len__(self) -> int:
        return len(self.weights)

    def __iter__(self):
        return iter(self.weights)

    def __contains__(self, mu: Weight) -> bool:
        return mu in self.transversal

    def s(self, i: int, mu: Weight) -> Weight:
        key = (mu, i)
        r = self._s.get(key)
        if r is None:
            r = act_on_weight(self.W, self.W.simple(i), mu)
            self._s[key] = r
        return r

    def act(self, w: int, mu: Weight) -> Weight:
        for a in self.W.words[w]:
            mu = self.s(a, mu)
        return mu

    def is_fixed(self, i: int, mu: Weight) -> bool:
        return self.s(i, mu) == mu

    def path(self, mu: Weight, word: Sequence[int]) -> list[Weight]:
        """Weights lam_1 = mu, lam_{j+1} = s_{a_j} lam_j along the word."""
        out = [mu]
        for a in word:
            out.append(self.s(a, out[-1]))
        return out

    def stabilizer(self, mu: Weight, sub: Optional[Sequence[int]] = None) -> list[int]:
        elems = range(len(self.W)) if sub is None else sub
        return [w for w in elems if self.act(w, mu) == mu]

    def is_standard_parabolic(self, mu: Weight, gens: Optional[Sequence[int]] = None) -> bool:
        gens = list(range(self.W.datum.rank)) if gens is None else list(gens)
        sub = None if len(gens) == self.W.datum.rank else self.W.subgroup(gens)
        stab = self.stabilizer(mu, sub)
        fixed = [i for i in gens if self.is_fixed(i, mu)]
        return len(stab) == len(self.W.subgroup(fixed))

    def is_parabolic_wrt(self, mu: Weight, gens: Sequence[int]) -> bool:
        """mu is conjugate under W_gens to a weight that is standard parabolic for W_gens."""
        sub = self.W.subgroup(gens)
        seen = {self.act(w, mu) for w in sub}
        return any(self.is_standard_parabolic(nu, gens) for nu in seen)

    def classify(self, mu: Weight) -> WeightClassification:
        c = self._class.get(mu)
        if c is None:
            rank = self.W.datum.rank
            fixed = tuple(i for i in range(rank) if self.is_fixed(i, mu))
            stab = self.stabilizer(mu)
            std = len(stab) == len(self.W.subgroup(fixed))
            exc = frozenset(
                i
                for i in range(rank)
                if i not in fixed
                and any(not self.is_parabolic_wrt(mu, (i, j)) for j in range(rank) if j != i)
            )
            c = WeightClassification(stab, std, fixed, exc)
            self._class[mu] = c
        return c

    def exceptional(self, i: int, mu: Weight) -> bool:
        return i in self.classify(mu).exceptional_roots


def orbit_and_stabilizer(W: WeylGroup, lam: Weight) -> tuple[Orbit, WeightClassification]:
    orb = Orbit(W, lam)
    return orb, orb.classify(lam)


def classify_exceptional(W: WeylGroup, lam: Weight, orbit: Optional[Orbit] = None) -> frozenset[int]:
    orb = orbit if orbit is not None else Orbit(W, lam)
    exc = orb.classify(lam).exceptional_roots
    if exc and W.datum.rank == 2 and W.datum.dim == 2:
        ok, why = corollary_orbit_check(orb, lam)
        assert ok, why
    return exc


def corollary_orbit_check(orb: Orbit, lam: Weight) -> tuple[bool, str]:
    """Rank-2 criterion: a weight with non-parabolic stabilizer has lam^2 = 1 and
    lam(e^alpha) = 1 for fixing simple roots, -1 for the others."""
    W = orb.W
    if orb.is_parabolic_wrt(lam, range(W.datum.rank)):
        return True, "parabolic stabilizer"
    if lam.is_additive:
        return False, "additive weight with non-parabolic stabilizer"
    one = lam.domain.one
    if any(v * v != one for v in lam.values):
        return False, "lam^2 != 1"
    for i, a in enumerate(W.datum.simple_roots):
        want = one if orb.is_fixed(i, lam) else -one
        if lam.pairing(a) != want:
            return False, f"pairing with simple root {i} is not {want}"
    return True, "non-parabolic, criterion satisfied"


def split_projection(datum: RootDatum, lam: Weight, target: RootDatum) -> Weight:
    """p(y) = sum_alpha omega_alpha(y) coroot_alpha, landing in the coroot-lattice
    datum ``target`` (a Cartan-built datum with the same Cartan matrix)."""
    if datum.fundamental is None:
        raise ValueError("datum does not record its fundamental weights")
    dom = lam.domain
    vals = []
    for om in datum.fundamental:
        if lam.is_additive:
            s = dom.zero
            for c, v in zip(om, lam.values):
                if c:
                    s += convert(dom, c) * v
            vals.append(s)
        else:
            if any(Fraction(c).denominator != 1 for c in om):
                raise ValueError("multiplicative projection needs integral fundamental weights")
            vals.append(lam.pairing([int(c) for c in om]))
    if target.rank != datum.rank:
        raise ValueError("target datum has a different rank")
    return Weight(lam.mode, tuple(vals), dom)
