"""Finite-dimensional modules: weight algebras, the irreducible weight module at a
standard parabolic weight, weight induction and irreducible quotients.
"""
from __future__ import annotations

import random
from collections import defaultdict
from dataclasses import dataclass, field
from itertools import combinations_with_replacement
from typing import Optional, Sequence

from sympy.polys.matrices import DomainMatrix

from . import linalg as la
from .coeff_rings import CoeffRing
from .datum import Datum, HeckeParams
from .grading import DegreeRule, GradedChar, balance_shift, function_degree, word_degree
from .qhecke_core import Engine, Relation, alternating, corrected_braid_data, relation_suite
from .weyl_orbits import Orbit, Weight


class NotStandardParabolic(ValueError):
    pass


class TruncationError(ValueError):
    pass


# ---------------------------------------------------------------- evaluation


def poly_at(A: CoeffRing, p, mats: Sequence[DomainMatrix], d: int) -> DomainMatrix:
    """Polynomial p in the ring generators evaluated at commuting matrices."""
    dom = A.domain
    out = la.zeros(d, d, dom)
    if d == 0:
        return out
    powers: dict = {}

    def pw(k, e):
        key = (k, e)
        M = powers.get(key)
        if M is None:
            M = la.eye(d, dom) if e == 0 else pw(k, e - 1) * mats[k]
            powers[key] = M
        return M

    for monom, coeff in p.terms():
        term = la.eye(d, dom) * coeff
        for k, e in enumerate(monom):
            if e:
                term = term * pw(k, e)
        out = out + term
    return out


def rational_at(A: CoeffRing, f, mats: Sequence[DomainMatrix], d: int) -> DomainMatrix:
    if d == 0:
        return la.zeros(0, 0, A.domain)
    num = poly_at(A, f.numer, mats, d)
    if f.denom.is_ground:
        return num * (A.domain.one / f.denom.LC)
    return num * poly_at(A, f.denom, mats, d).inv()


# ---------------------------------------------------------------- modules


@dataclass
class ModuleRelationReport:
    checked: int = 0
    skipped: int = 0
    failures: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.checked > 0 and not self.failures


@dataclass
class FiniteModule:
    """Action matrices on weight spaces.

    ``gens[mu][b]`` is the action of the ring generator P_b (or U_b) on the
    mu-space; ``r[(mu, i)]`` maps the mu-space to the s_i mu-space.  A block
    module (``block`` set) only carries the loops at one weight.
    """

    A: CoeffRing
    orbit: Orbit
    dims: dict
    gens: dict
    r: dict
    degrees: Optional[dict] = None
    block: Optional[Weight] = None
    labels: Optional[dict] = None

    @property
    def domain(self):
        return self.A.domain

    def dim(self, mu: Weight) -> int:
        return self.dims.get(mu, 0)

    def weights(self) -> list:
        return [mu for mu in self.orbit if self.dim(mu)]

    def total_dim(self) -> int:
        return sum(self.dims.values())

    def function(self, f, mu: Weight) -> DomainMatrix:
        return rational_at(self.A, f, self.gens[mu], self.dim(mu))

    def x_matrices(self, mu: Weight) -> list:
        d = self.dim(mu)
        return [g - la.eye(d, self.domain) * v for g, v in zip(self.gens[mu], mu.values)]

    def word_matrix(self, mu: Weight, word: Sequence[int]) -> tuple[Weight, DomainMatrix]:
        M = la.eye(self.dim(mu), self.domain)
        for a in word:
            M = self.r[(mu, a)] * M
            mu = self.orbit.s(a, mu)
        return mu, M

    def monomial(self, source: Weight, mono) -> tuple[Weight, DomainMatrix]:
        mu = source
        M = la.eye(self.dim(mu), self.domain)
        for kind, val in mono:
            if kind == "r":
                M = self.r[(mu, val)] * M
                mu = self.orbit.s(val, mu)
            else:
                M = self.function(val, mu) * M
        return mu, M

    def expression(self, source: Weight, expr) -> Optional[tuple[Weight, DomainMatrix]]:
        total = None
        tgt = None
        for scalar, mono in expr:
            tgt, M = self.monomial(source, mono)
            M = M * self.domain.convert(scalar)
            total = M if total is None else total + M
        return None if total is None else (tgt, total)

    def check_relations(self, relations: Sequence[Relation]) -> ModuleRelationReport:
        rep = ModuleRelationReport()
        for rel in relations:
            try:
                lt, L = self.expression(rel.source, rel.lhs)
                rhs = self.expression(rel.source, rel.rhs)
            except KeyError:
                rep.skipped += 1
                continue
            R = la.zeros(self.dim(lt), self.dim(rel.source), self.domain) if rhs is None else rhs[1]
            rep.checked += 1
            if not la.equal(L, R):
                rep.failures.append({"relation": rel.name, "weight": str(rel.source), "info": dict(rel.info)})
        return rep

    def commuting_nilpotent(self) -> bool:
        for mu in self.weights():
            xs = self.x_matrices(mu)
            d = self.dim(mu)
            for a in xs:
                for b in xs:
                    if not la.equal(a * b, b * a):
                        return False
                P = la.eye(d, self.domain)
                for _ in range(d):
                    P = P * a
                if not la.is_zero(P):
                    return False
        return True

    def is_homogeneous(self, rule: DegreeRule) -> bool:
        """Each r_i^mu shifts degrees by rule(mu, i) and each x by 2."""
        if self.degrees is None:
            return False

        def ok(M, src, tgt, shift):
            if la.is_zero(M):
                return True
            L = M.to_list()
            for a, row in enumerate(L):
                for b, e in enumerate(row):
                    if e and self.degrees[tgt][a] != self.degrees[src][b] + shift:
                        return False
            return True

        for (mu, i), M in self.r.items():
            if self.dim(mu) and self.dim(self.orbit.s(i, mu)):
                if not ok(M, mu, self.orbit.s(i, mu), rule(mu, i)):
                    return False
        for mu in self.weights():
            for X in self.x_matrices(mu):
                if not ok(X, mu, mu, rule.x_degree):
                    return False
        return True

    def character(self) -> GradedChar:
        if self.degrees is None:
            raise ValueError("module carries no grading")
        return GradedChar.from_degrees({str(mu): self.degrees[mu] for mu in self.orbit if mu in self.dims})

    def dual(self) -> "FiniteModule":
        """The iota-twisted dual: r_i^mu acts by the transpose of r_i^{s_i mu}."""
        gens = {mu: [g.transpose() for g in gs] for mu, gs in self.gens.items()}
        r = {}
        for (mu, i) in self.r:
            nu = self.orbit.s(i, mu)
            if (nu, i) in self.r:
                r[(mu, i)] = self.r[(nu, i)].transpose()
        degs = None if self.degrees is None else {mu: [-d for d in ds] for mu, ds in self.degrees.items()}
        return FiniteModule(self.A, self.orbit, dict(self.dims), gens, r, degs, self.block)

    def generators_at(self, mu: Weight) -> list:
        """Loop action matrices at mu (ring generators and fixed r's)."""
        out = list(self.gens[mu])
        for i in range(self.A.datum.rank):
            if (mu, i) in self.r and self.orbit.is_fixed(i, mu):
                out.append(self.r[(mu, i)])
        return out

    def restrict(self, mu: Weight) -> "FiniteModule":
        """The weight space at mu as a module over the loops at mu."""
        r = {(mu, i): self.r[(mu, i)] for i in range(self.A.datum.rank)
             if self.orbit.is_fixed(i, mu) and (mu, i) in self.r}
        degs = None if self.degrees is None else {mu: list(self.degrees[mu])}
        return FiniteModule(self.A, self.orbit, {mu: self.dim(mu)}, {mu: self.gens[mu]}, r, degs, mu)


def block_relations(D: Datum, lam: Weight, fdegree: int = 2) -> list:
    return relation_suite(D, fdegree, localized=False, weights=[lam])


def burnside_dimension(V: FiniteModule, mu: Weight) -> int:
    d = V.dim(mu)
    return len(la.algebra_span(V.generators_at(mu), d, V.domain))


def generated_subspace(gens: Sequence[DomainMatrix], vecs: DomainMatrix) -> DomainMatrix:
    """Smallest subspace containing the columns of ``vecs`` and stable under ``gens``."""
    n = vecs.shape[0]
    dom = vecs.domain
    ech = la.EchelonBasis(n, dom)
    basis = []
    frontier = la.columns(vecs)
    while frontier:
        new = []
        for v in frontier:
            if ech.add(v):
                basis.append(v)
                col = la.from_columns([v], n, dom)
                new.extend(la.columns(g * col)[0] for g in gens)
        frontier = new
    return la.from_columns(basis, n, dom)


def socle_test(V: FiniteModule, mu: Weight) -> bool:
    """Sufficient test for simplicity of a weight-space module: the common kernel
    K0 of the nilpotent x's is a line generating everything.  Every nonzero
    submodule meets K0, so it then contains the generator."""
    d = V.dim(mu)
    if d == 0:
        return False
    K0 = la.kernel(la.vstack(V.x_matrices(mu), d, V.domain))
    if K0.shape[1] != 1:
        return False
    return generated_subspace(V.generators_at(mu), K0).shape[1] == d


def intertwiner(V1: FiniteModule, V2: FiniteModule, mu: Weight, seed: int = 0) -> Optional[DomainMatrix]:
    """An invertible T with T g1 = g2 T for every loop generator at mu, if any."""
    g1, g2 = V1.generators_at(mu), V2.generators_at(mu)
    d1, d2 = V1.dim(mu), V2.dim(mu)
    if d1 != d2 or len(g1) != len(g2):
        return None
    dom = V1.domain
    d = d1
    rows = []
    for a, b in zip(g1, g2):
        A1, B2 = a.to_list(), b.to_list()
        for i in range(d):
            for j in range(d):
                row = [dom.zero] * (d * d)
                for k in range(d):
                    row[i * d + k] += A1[k][j]
                    row[k * d + j] -= B2[i][k]
                rows.append(row)
    M = DomainMatrix(rows, (len(rows), d * d), dom) if rows else la.zeros(0, d * d, dom)
    K = la.kernel(M)
    sols = [DomainMatrix([[c[i * d + j] for j in range(d)] for i in range(d)], (d, d), dom) for c in la.columns(K)]
    rng = random.Random(seed)
    cands = list(sols) + [la.random_combination(sols, rng, dom) for _ in range(10)] if sols else []
    for T in cands:
        if T is not None and la.rank(T) == d:
            return T
    return None


# ---------------------------------------------------------------- graded quotients of polynomial rings


def monomials_of_degree(n: int, d: int) -> list[tuple]:
    out = []
    for combo in combinations_with_replacement(range(n), d):
        e = [0] * n
        for k in combo:
            e[k] += 1
        out.append(tuple(e))
    return sorted(out, reverse=True)


class GradedQuotient:
    """k[x_1..x_n] / I for a homogeneous ideal I containing all monomials of
    degree >= top.  Polynomials are PolyElements of ``A.R`` read in shifted
    coordinates."""

    def __init__(self, A: CoeffRing, ideal: dict, top: int):
        self.A = A
        self.top = top
        self.monos = {d: monomials_of_degree(A.n, d) for d in range(top)}
        self.basis: dict = {}
        self._inv: dict = {}
        dom = A.domain
        for d in range(top):
            ms = self.monos[d]
            idx = {m: k for k, m in enumerate(ms)}
            gens = [self.vector(p, d, idx) for p in ideal.get(d, [])]
            J = la.column_basis(la.from_columns(gens, len(ms), dom)) if gens else la.zeros(len(ms), 0, dom)
            chosen = []
            cur = J
            for k, m in enumerate(ms):
                e = [dom.zero] * len(ms)
                e[k] = dom.one
                col = la.from_columns([e], len(ms), dom)
                if not la.span_contains(cur, col):
                    cur = la.hstack([cur, col], len(ms), dom)
                    chosen.append(m)
            self.basis[d] = chosen
            self._inv[d] = (cur.inv() if cur.shape[0] else cur, J.shape[1])

    def vector(self, p, d: int, idx: Optional[dict] = None) -> list:
        idx = idx if idx is not None else {m: k for k, m in enumerate(self.monos[d])}
        v = [self.A.domain.zero] * len(idx)
        for m, c in p.terms():
            if sum(m) == d:
                v[idx[m]] += c
        return v

    @property
    def flat_basis(self) -> list[tuple[int, tuple]]:
        return [(d, m) for d in range(self.top) for m in self.basis[d]]

    def dimension(self) -> int:
        return sum(len(b) for b in self.basis.values())

    def reduce(self, p) -> list:
        """Coordinates of p modulo I on ``flat_basis``."""
        out = []
        dom = self.A.domain
        for d in range(self.top):
            nb = len(self.basis[d])
            if not nb:
                continue
            v = self.vector(p, d)
            inv, nj = self._inv[d]
            col = la.from_columns([v], len(v), dom)
            coords = la.columns(inv * col)[0]
            out.extend(coords[nj:nj + nb])
        return out

    def element(self, k: int):
        d, m = self.flat_basis[k]
        return self.A.R({m: self.A.domain.one})


def invariant_space(A: CoeffRing, fixed: Sequence[int], e: int) -> list:
    """Homogeneous degree-e polynomials invariant under the simple reflections ``fixed``
    (in shifted coordinates at a weight they fix)."""
    ms = monomials_of_degree(A.n, e)
    idx = {m: k for k, m in enumerate(ms)}
    dom = A.domain
    blocks = []
    for i in fixed:
        cols = []
        for k, m in enumerate(ms):
            img = A.s(i, A.K(A.R({m: dom.one})))
            v = [dom.zero] * len(ms)
            for mm, c in img.numer.terms():
                v[idx[mm]] += c / img.denom.LC
            v[k] -= dom.one
            cols.append(v)
        blocks.append(la.from_columns(cols, len(ms), dom))
    M = la.vstack(blocks, len(ms), dom)
    K = la.kernel(M) if fixed else la.eye(len(ms), dom)
    return [A.R({m: c for m, c in zip(ms, col) if c}) for col in la.columns(K)]


def coinvariant_ideal(A: CoeffRing, fixed: Sequence[int], power: int = 1, cap: int = 64) -> tuple[dict, int]:
    """Degree pieces of J^power, J the ideal generated by positive-degree invariants."""
    inv: dict = {}
    J: dict = {}
    top = None
    for d in range(1, cap):
        inv[d] = invariant_space(A, fixed, d)
        gens = list(inv[d])
        for e in range(1, d):
            for f in inv[e]:
                for m in monomials_of_degree(A.n, d - e):
                    gens.append(f * A.R({m: A.domain.one}))
        J[d] = gens
        if la.rank(la.from_columns([_vec(A, p, d) for p in gens], len(monomials_of_degree(A.n, d)), A.domain)) == len(
                monomials_of_degree(A.n, d)):
            top = d
            break
    if top is None:
        raise TruncationError("invariant ideal does not contain a power of the maximal ideal")
    # J_d = everything for d >= top
    ideal = J
    cur_top = top
    for _ in range(power - 1):
        new: dict = {}
        new_top = cur_top + top
        for d in range(1, new_top + 1):
            gens = []
            for e in range(1, d):
                if e >= cur_top:
                    left = [A.R({m: A.domain.one}) for m in monomials_of_degree(A.n, e)]
                else:
                    left = ideal.get(e, [])
                jd = d - e
                right = [A.R({m: A.domain.one}) for m in monomials_of_degree(A.n, jd)] if jd >= top else J.get(jd, [])
                for a in left:
                    for b in right:
                        gens.append(a * b)
            new[d] = _span(A, gens, d)
        ideal = new
        cur_top = new_top
    return ideal, cur_top


def _vec(A: CoeffRing, p, d: int) -> list:
    ms = monomials_of_degree(A.n, d)
    idx = {m: k for k, m in enumerate(ms)}
    v = [A.domain.zero] * len(ms)
    for m, c in p.terms():
        if sum(m) == d:
            v[idx[m]] += c
    return v


def _span(A: CoeffRing, gens: list, d: int) -> list:
    ms = monomials_of_degree(A.n, d)
    if not gens:
        return []
    B = la.column_basis(la.from_columns([_vec(A, p, d) for p in gens], len(ms), A.domain))
    return [A.R({m: c for m, c in zip(ms, col) if c}) for col in la.columns(B)]


def truncated_series(A: CoeffRing, f, lam: Weight, order: int):
    """Taylor polynomial of f at lam, in shifted coordinates, of degree < order."""
    g = A.translate(f, lam.values)
    num, den = g.numer, g.denom
    d0 = den.get(A.R.zero_monom, A.domain.zero)
    if d0 == A.domain.zero:
        raise ZeroDivisionError("function is not regular at the weight")

    def trunc(p):
        return A.R({m: c for m, c in p.terms() if sum(m) < order})

    inv0 = A.domain.one / d0
    rest = trunc(A.R.one - den * inv0)
    s = A.R.one
    term = A.R.one
    for _ in range(1, order):
        term = trunc(term * rest)
        if not term:
            break
        s = s + term
    return trunc(trunc(num) * s * inv0)


# ---------------------------------------------------------------- weight algebra


@dataclass
class WeightAlgebra:
    """1_lam H 1_lam modulo the central ideal generated by the N-th power of the
    positive-degree W^lam-invariants at lam, on the basis b_w x^m."""

    lam: Weight
    N: int
    words: list
    quotient: GradedQuotient
    table: list  # table[a][b] = coordinate vector of e_a e_b

    @property
    def dim(self) -> int:
        return len(self.table)

    def multiply(self, u: list, v: list) -> list:
        dom = self.quotient.A.domain
        out = [dom.zero] * self.dim
        for a, ua in enumerate(u):
            if not ua:
                continue
            for b, vb in enumerate(v):
                if not vb:
                    continue
                for k, c in enumerate(self.table[a][b]):
                    if c:
                        out[k] += ua * vb * c
        return out

    def unit(self) -> list:
        dom = self.quotient.A.domain
        v = [dom.zero] * self.dim
        v[0] = dom.one
        return v

    def is_associative(self) -> bool:
        dom = self.quotient.A.domain
        n = self.dim
        basis = [[dom.one if k == a else dom.zero for k in range(n)] for a in range(n)]
        for a in range(n):
            for b in range(n):
                ab = self.table[a][b]
                for c in range(n):
                    if self.multiply(ab, basis[c]) != self.multiply(basis[a], self.table[b][c]):
                        return False
        return True


def weight_algebra(E: Engine, lam: Weight, N: int = 1) -> WeightAlgebra:
    if N < 1:
        raise ValueError("truncation order must be at least 1")
    A, orb, W = E.A, E.orbit, E.W
    stab = orb.stabilizer(lam)
    fixed = [i for i in range(A.datum.rank) if orb.is_fixed(i, lam)]
    if orb.is_standard_parabolic(lam):
        ideal, top = coinvariant_ideal(A, fixed, N)
    else:
        # only the maximal ideal is available as a central truncation
        ideal, top = {}, N
    Q = GradedQuotient(A, ideal, top)
    fb = Q.flat_basis
    elems = [(w, k) for w in stab for k in range(len(fb))]
    psi_inv = [-v for v in lam.values]

    def as_skew(w, k):
        p = A.translate(A.K(Q.element(k)), psi_inv)
        return E.right_mul(E.basis_image(lam, w), p)

    skews = [as_skew(w, k) for w, k in elems]
    pos = {(w, k): t for t, (w, k) in enumerate(elems)}
    table = []
    for a in range(len(elems)):
        row = []
        for b in range(len(elems)):
            nf = E.normal_form(E.compose(skews[a], skews[b]))
            vec = [A.domain.zero] * len(elems)
            for w, c in nf.coeffs.items():
                coords = Q.reduce(truncated_series(A, c, lam, top))
                for k, x in enumerate(coords):
                    if x:
                        vec[pos[(w, k)]] += x
            row.append(vec)
        table.append(row)
    return WeightAlgebra(lam, N, [W.words[w] for w in stab], Q, table)


@dataclass
class MatrixStructure:
    algebra_dim: int
    module_dim: int
    image_dim: int
    multiplicative: bool

    @property
    def full_matrix_algebra(self) -> bool:
        return self.multiplicative and self.image_dim == self.module_dim ** 2

    @property
    def bijective(self) -> bool:
        return self.full_matrix_algebra and self.algebra_dim == self.image_dim


def matrix_structure(wa: WeightAlgebra, E: Engine, V: FiniteModule) -> MatrixStructure:
    """The action of the truncated weight algebra on the lam-space of V: checks
    that it is an algebra map (against the structure constants) and measures
    the image inside End(V_lam)."""
    A, W = E.A, E.W
    lam = wa.lam
    dom = A.domain
    d = V.dim(lam)
    Q = wa.quotient
    stab = [W.from_word(w) for w in wa.words]
    psi_inv = [-v for v in lam.values]
    mats = []
    for w in stab:
        _, Mw = V.word_matrix(lam, W.words[w])
        for k in range(len(Q.flat_basis)):
            p = A.translate(A.K(Q.element(k)), psi_inv)
            mats.append(Mw * V.function(p, lam))

    def combo(vec):
        out = la.zeros(d, d, dom)
        for c, M in zip(vec, mats):
            if c:
                out = out + M * c
        return out

    mult = all(la.equal(mats[a] * mats[b], combo(wa.table[a][b]))
               for a in range(len(mats)) for b in range(len(mats)))
    ech = la.EchelonBasis(d * d, dom)
    for M in mats:
        ech.add(la.flatten(M))
    return MatrixStructure(wa.dim, d, len(ech), mult)


# ---------------------------------------------------------------- irreducible weight modules


def _stab_sorted(E: Engine, lam: Weight) -> list:
    return sorted(E.orbit.stabilizer(lam), key=lambda w: (E.W.lengths[w], E.W.words[w]))


def induced_from_trivial(E: Engine, lam: Weight, rule: Optional[DegreeRule] = None) -> FiniteModule:
    """1_lam H 1_lam tensored over A 1_lam with the trivial module k_lam."""
    A, orb = E.A, E.orbit
    stab = _stab_sorted(E, lam)
    idx = {w: k for k, w in enumerate(stab)}
    d = len(stab)
    dom = A.domain
    fixed = [i for i in range(A.datum.rank) if orb.is_fixed(i, lam)]

    def matrix_of(left):
        cols = []
        for w in stab:
            nf = E.normal_form(left(E.basis_image(lam, w)))
            v = [dom.zero] * d
            for u, c in nf.coeffs.items():
                v[idx[u]] += A.evaluate(c, lam)
            cols.append(v)
        return la.from_columns(cols, d, dom)

    r = {(lam, i): matrix_of(lambda x, i=i: E.compose(E.generator_image(lam, i), x)) for i in fixed}
    gens = [matrix_of(lambda x, b=b: E.left_mul(A.K(A.R.gens[b]), x)) for b in range(A.n)]
    degs = {lam: [word_degree(rule, lam, E.W.words[w]) for w in stab]} if rule else None
    labels = {lam: ["".join(f"r{a}" for a in reversed(E.W.words[w])) or "1" for w in stab]}
    return FiniteModule(A, orb, {lam: d}, {lam: gens}, r, degs, lam, labels)


def coinvariant_module(E: Engine, lam: Weight, rule: Optional[DegreeRule] = None) -> FiniteModule:
    """1_lam H 1_lam tensored over the finite nil-Hecke algebra with the module
    where every r acts by 0: the coinvariants of W^lam with r_i acting by hD_i."""
    A, orb = E.A, E.orbit
    dom = A.domain
    fixed = [i for i in range(A.datum.rank) if orb.is_fixed(i, lam)]
    ideal, top = coinvariant_ideal(A, fixed, 1)
    Q = GradedQuotient(A, ideal, top)
    fb = Q.flat_basis
    d = len(fb)

    def matrix_of(op):
        cols = []
        for k in range(d):
            img = op(A.K(Q.element(k)))
            if not img.denom.is_ground:
                raise ArithmeticError("operator left the polynomial ring")
            cols.append(Q.reduce(img.numer * (dom.one / img.denom.LC)))
        return la.from_columns(cols, d, dom)

    r = {(lam, i): matrix_of(lambda f, i=i: A.hD(i, f)) for i in fixed}
    gens = [matrix_of(lambda f, b=b: (A.K(A.R.gens[b]) + A.K(lam.values[b])) * f) for b in range(A.n)]
    degs = {lam: [2 * deg for deg, _ in fb]} if rule else None
    labels = {lam: [A.to_text(A.K(Q.element(k))) for k in range(d)]}
    return FiniteModule(A, orb, {lam: d}, {lam: gens}, r, degs, lam, labels)


@dataclass
class WeightModuleResult:
    lam: Weight
    construction_one: FiniteModule
    construction_two: FiniteModule
    intertwiner: Optional[DomainMatrix]
    burnside: Optional[tuple]
    simple: tuple
    stabilizer_order: int

    @property
    def dims(self) -> tuple:
        return (self.construction_one.dim(self.lam), self.construction_two.dim(self.lam))

    @property
    def ok(self) -> bool:
        d = self.stabilizer_order
        return (self.dims == (d, d) and self.intertwiner is not None and all(self.simple)
                and (self.burnside is None or self.burnside == (d * d, d * d)))


def irreducible_weight_module(E: Engine, lam: Weight, graded: bool = True,
                              burnside_limit: int = 8) -> WeightModuleResult:
    orb = E.orbit
    if not orb.is_standard_parabolic(lam):
        raise NotStandardParabolic(f"{lam} is not standard parabolic")
    rule = DegreeRule.for_datum(E.D) if graded and E.A.is_additive and E.D.kind == "gradedH" else None
    V1 = induced_from_trivial(E, lam, rule)
    V2 = coinvariant_module(E, lam, rule)
    T = intertwiner(V1, V2, lam)
    small = V1.dim(lam) <= burnside_limit
    b = (burnside_dimension(V1, lam), burnside_dimension(V2, lam)) if small else None
    simple = (socle_test(V1, lam), socle_test(V2, lam))
    return WeightModuleResult(lam, V1, V2, T, b, simple, len(orb.stabilizer(lam)))


# ---------------------------------------------------------------- weight induction


def weight_induce(E: Engine, V: FiniteModule, rule: Optional[DegreeRule] = None) -> FiniteModule:
    """H 1_lam tensored over 1_lam H 1_lam with V, on the basis b_u (x) v for
    minimal coset representatives u of W / W^lam."""
    if V.block is None:
        raise ValueError("weight induction needs a module over one weight algebra")
    A, orb, W = E.A, E.orbit, E.W
    lam = V.block
    dom = A.domain
    dV = V.dim(lam)
    stab = _stab_sorted(E, lam)
    reps = W.minimal_coset_reps(stab)
    u_of = {orb.act(u, lam): u for u in reps}
    factor = {}
    words = {}
    for u in reps:
        for z in stab:
            w = W.mul(u, z)
            factor[w] = (u, z)
            words[w] = W.words[z] + W.words[u]
    if len(words) != len(W):
        raise ArithmeticError("coset factorization is not a bijection")
    Rz = {z: V.word_matrix(lam, W.words[z])[1] for z in stab}

    def blocks(nf) -> dict:
        out: dict = {}
        for w, c in nf.coeffs.items():
            u, z = factor[w]
            M = Rz[z] * V.function(c, lam)
            out[u] = out[u] + M if u in out else M
        return out

    gens: dict = {}
    r: dict = {}
    for mu in orb:
        u = u_of[mu]
        img = E.custom_basis_image(lam, W.words[u])
        gl = []
        for b in range(A.n):
            nf = E.normal_form(E.left_mul(A.K(A.R.gens[b]), img), basis=words, name="factorized")
            bl = blocks(nf)
            gl.append(bl.get(u, la.zeros(dV, dV, dom)))
            if set(bl) - {u}:
                raise ArithmeticError("a function moved the weight")
        gens[mu] = gl
        for i in range(A.datum.rank):
            nu = orb.s(i, mu)
            nf = E.normal_form(E.compose(E.generator_image(mu, i), img), basis=words, name="factorized")
            bl = blocks(nf)
            if set(bl) - {u_of[nu]}:
                raise ArithmeticError("generator image left its target weight")
            r[(mu, i)] = bl.get(u_of[nu], la.zeros(dV, dV, dom))
    dims = {mu: dV for mu in orb}
    degs = None
    if rule is not None and V.degrees is not None:
        degs = {mu: [word_degree(rule, lam, W.words[u_of[mu]]) + dv for dv in V.degrees[lam]] for mu in orb}
    labels = {mu: [f"b{''.join(map(str, W.words[u_of[mu]]))}|{k}" for k in range(dV)] for mu in orb}
    return FiniteModule(A, orb, dims, gens, r, degs, None, labels)


# ---------------------------------------------------------------- irreducible quotients


@dataclass
class QuotientResult:
    module: FiniteModule
    kernel_dims: dict
    routes_agree: bool
    simple: bool


def _x_algebra(M: FiniteModule, mu: Weight) -> list:
    return la.algebra_span(M.x_matrices(mu), M.dim(mu), M.domain)


def kernel_to_weight(M: FiniteModule, E: Engine, lam: Weight) -> dict:
    """U_mu = vectors killed by every element of 1_lam H 1_mu (PBW words times functions)."""
    W, orb = E.W, E.orbit
    dom = M.domain
    out = {}
    for mu in orb:
        d = M.dim(mu)
        if mu == lam or d == 0:
            out[mu] = la.zeros(d, 0, dom)
            continue
        alg = _x_algebra(M, mu)
        ops = []
        for w in range(len(W)):
            if orb.act(w, mu) != lam:
                continue
            _, R = M.word_matrix(mu, W.words[w])
            ops.extend(R * X for X in alg)
        out[mu] = la.kernel(la.vstack(ops, d, dom))
    return out


def largest_submodule_avoiding(M: FiniteModule, lam: Weight) -> dict:
    """Iterate U <- {m in U : g m in U for every generator g} from the sum of the
    weight spaces other than lam."""
    orb = M.orbit
    dom = M.domain
    U = {mu: (la.zeros(M.dim(mu), 0, dom) if mu == lam else la.eye(M.dim(mu), dom)) for mu in orb}
    rank = M.A.datum.rank
    while True:
        ann = {}
        for mu in orb:
            B = U[mu]
            d = M.dim(mu)
            if B.shape[1] == 0:
                ann[mu] = la.eye(d, dom)
            else:
                ann[mu] = la.kernel(B.transpose()).transpose()
        new = {}
        changed = False
        for mu in orb:
            B = U[mu]
            if B.shape[1] == 0:
                new[mu] = B
                continue
            conds = []
            for i in range(rank):
                nu = orb.s(i, mu)
                conds.append(ann[nu] * M.r[(mu, i)] * B)
            for X in M.x_matrices(mu):
                conds.append(ann[mu] * X * B)
            K = la.kernel(la.vstack(conds, B.shape[1], dom))
            nb = B * K if K.shape[1] else la.zeros(B.shape[0], 0, dom)
            if nb.shape[1] != B.shape[1]:
                changed = True
            new[mu] = nb
        U = new
        if not changed:
            return U


def quotient_module(M: FiniteModule, U: dict) -> FiniteModule:
    """M / U with a complement made of standard basis vectors, degree by degree."""
    dom = M.domain
    orb = M.orbit
    comp: dict = {}
    change: dict = {}
    for mu in orb:
        d = M.dim(mu)
        B = U[mu]
        cur = B
        chosen = []
        order = range(d)
        if M.degrees is not None:
            order = sorted(range(d), key=lambda k: M.degrees[mu][k])
        for k in order:
            e = [dom.one if t == k else dom.zero for t in range(d)]
            col = la.from_columns([e], d, dom)
            if not la.span_contains(cur, col):
                cur = la.hstack([cur, col], d, dom)
                chosen.append(k)
        comp[mu] = chosen
        change[mu] = (cur.inv() if d else cur, B.shape[1])
    dims = {mu: len(comp[mu]) for mu in orb}

    def restrict(G, src, tgt):
        inv, nk = change[tgt]
        cols = []
        for k in comp[src]:
            col = G.extract(list(range(G.shape[0])), [k]) if G.shape[0] else la.zeros(0, 1, dom)
            coords = la.columns(inv * col)[0] if G.shape[0] else []
            cols.append(coords[nk:])
        return la.from_columns(cols, dims[tgt], dom)

    gens = {mu: [restrict(g, mu, mu) for g in M.gens[mu]] for mu in orb}
    r = {(mu, i): restrict(R, mu, orb.s(i, mu)) for (mu, i), R in M.r.items()}
    degs = None
    if M.degrees is not None:
        degs = {mu: [M.degrees[mu][k] for k in comp[mu]] for mu in orb}
    labels = None
    if M.labels is not None:
        labels = {mu: [M.labels[mu][k] for k in comp[mu]] for mu in orb}
    return FiniteModule(M.A, orb, dims, gens, r, degs, None, labels)


def _homogeneous(M: FiniteModule, U: dict) -> bool:
    """Check that each U_mu is spanned by its homogeneous components."""
    if M.degrees is None:
        return True
    dom = M.domain
    for mu, B in U.items():
        if B.shape[1] == 0:
            continue
        degs = M.degrees[mu]
        parts = []
        for dv in sorted(set(degs)):
            mask = [k for k in range(len(degs)) if degs[k] == dv]
            P = la.zeros(len(degs), len(degs), dom)
            rows = [[dom.one if (a == b and a in mask) else dom.zero for b in range(len(degs))] for a in range(len(degs))]
            P = DomainMatrix(rows, (len(degs), len(degs)), dom)
            parts.append(P * B)
        if not la.same_span(la.hstack(parts, len(degs), dom), B):
            return False
    return True


def irreducible_quotient(M: FiniteModule, E: Engine, lam: Weight) -> QuotientResult:
    U1 = kernel_to_weight(M, E, lam)
    U2 = largest_submodule_avoiding(M, lam)
    agree = all(la.same_span(U1[mu], U2[mu]) for mu in M.orbit)
    if not _homogeneous(M, U1):
        raise ArithmeticError("the maximal submodule avoiding lam is not graded")
    L = quotient_module(M, U1)
    simple = socle_test(L.restrict(lam), lam)
    return QuotientResult(L, {str(mu): U1[mu].shape[1] for mu in M.orbit}, agree, simple)


def graded_character(M: FiniteModule) -> GradedChar:
    return M.character()


# ---------------------------------------------------------------- the SL3 example


@dataclass
class SL3Context:
    D: Datum
    E: Engine
    lam: Weight
    rule: DegreeRule

    @property
    def orbit(self) -> Orbit:
        return self.D.orbit


def sl3_context(field_spec="Q") -> SL3Context:
    from .fields import make_field
    from .root_datum import named
    from .weyl_orbits import WeylGroup, weight_from_root_pairings

    d = named("A2")
    W = WeylGroup(d)
    dom = make_field(field_spec)
    A = CoeffRing(d, W, dom, 0)
    p = HeckeParams.make(d, dom, 0, 1)
    lam = weight_from_root_pairings(d, (0, 1), dom)
    orb = Orbit(W, lam)
    D = Datum(A, orb, p, "gradedH")
    return SL3Context(D, Engine(D), lam, DegreeRule.for_datum(D))


def sl3_example(field_spec="Q") -> dict:
    """Characters of the two constructions at lam, the balance shift, and the
    irreducible quotient of the induced module across the orbit."""
    ctx = sl3_context(field_spec)
    E, lam, orb = ctx.E, ctx.lam, ctx.orbit
    res = irreducible_weight_module(E, lam)
    ch1 = res.construction_one.character()
    ch2 = res.construction_two.character()
    ell1, bal1 = balance_shift(ch1, str(lam))
    ell2, bal2 = balance_shift(ch2, str(lam))
    ind = weight_induce(E, res.construction_one, ctx.rule)
    q = irreducible_quotient(ind, E, lam)
    Lch = q.module.character()
    ellL, Lbal = balance_shift(Lch, str(lam))
    path = [lam, orb.s(1, lam), orb.s(0, orb.s(1, lam))]
    rels = relation_suite(ctx.D, 2, localized=False)
    return {
        "weights": [str(mu) for mu in path],
        "construction_one": ch1.render(str(lam)),
        "construction_two": ch2.render(str(lam)),
        "balanced": [bal1.render(str(lam)), bal2.render(str(lam))],
        "shifts": [ell1, ell2],
        "intertwiner": res.intertwiner is not None,
        "induced_dims": [ind.dim(mu) for mu in path],
        "quotient": [Lbal.render(str(mu)) for mu in path],
        "quotient_unshifted": [Lch.render(str(mu)) for mu in path],
        "quotient_routes_agree": q.routes_agree,
        "quotient_simple": q.simple,
        "modules_satisfy_relations": all(
            m.check_relations(rels).ok for m in (ind, q.module)
        ) and all(m.check_relations(block_relations(ctx.D, lam)).ok
                  for m in (res.construction_one, res.construction_two)),
        "palindromic": Lbal.is_palindromic(),
        "_objects": {"result": res, "induced": ind, "quotient": q},
    }


def sl3_middle_obstruction(field_spec="Q") -> dict:
    """tau_g x_g + x_g tau_g at the middle weight mu = s_b(lam), with
    tau_g = tau_a tau_b tau_a (starting at mu) and x_g = x_{a+b}; plus the
    corrected braid relation at mu and the test module supported at mu alone."""
    ctx = sl3_context(field_spec)
    D, E, lam = ctx.D, ctx.E, ctx.lam
    A, orb = D.A, D.orbit
    mu = orb.s(1, lam)
    gamma = tuple(a + b for a, b in zip(A.datum.simple_roots[0], A.datum.simple_roots[1]))
    xg = A.x_root(gamma, mu)
    word = tuple(("r", a) for a in (0, 1, 0))
    anti = E.normal_form(E.evaluate(mu, [(1, (("f", xg),) + word), (1, word + (("f", xg),))]))
    two = {0: A.K(2)} if A.domain.convert(2) != A.domain.zero else {}
    equals_two = set(anti.coeffs) == set(two) and all(A.equal(anti.coeffs[w], two[w]) for w in two)
    anti_deg = sorted({function_degree(A, c, mu) for c in anti.coeffs.values()})
    tau_deg = word_degree(ctx.rule, mu, (0, 1, 0))
    first, second, t, corr = corrected_braid_data(D, mu, 0, 1)
    corr_const = corr.denom.is_ground and corr.numer.is_ground
    corr_unit = A.is_unit_at(corr, mu)
    # a module concentrated at mu: every tau leaves mu, so all r act by zero
    dom = A.domain
    dims = {nu: (1 if nu == mu else 0) for nu in orb}
    gens = {nu: [la.eye(dims[nu], dom) * v for v in nu.values] for nu in orb}
    r = {(nu, i): la.zeros(dims[orb.s(i, nu)], dims[nu], dom) for nu in orb for i in range(A.datum.rank)}
    test = FiniteModule(A, orb, dims, gens, r)
    rep = test.check_relations(relation_suite(D, 1, localized=False))
    squares = {
        "tau_a^2": A.to_text(A.psi_shift(D.G(mu, 0), mu)),
        "tau_b^2": A.to_text(A.psi_shift(D.G(mu, 1), mu)),
    }
    return {
        "field": field_spec,
        "middle_weight": str(mu),
        "anticommutator": [{"word": list(E.W.words[w]), "coeff": A.to_text(A.psi_shift(c, mu))}
                           for w, c in sorted(anti.coeffs.items())],
        "anticommutator_equals_2": equals_two,
        "anticommutator_degrees": anti_deg,
        "tau_gamma_degree": tau_deg,
        "quadratic_values_shifted": squares,
        "corrected_braid": {"first": first, "t": t, "correction": A.to_text(corr),
                            "constant": corr_const, "unit_at_mu": corr_unit},
        "middle_only_module_relations_fail": [f["relation"] + str(f["info"]) for f in rep.failures],
        "no_middle_only_irreducible": corr_unit and bool(rep.failures),
    }
