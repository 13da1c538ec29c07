"""Thin helpers over sympy's DomainMatrix for exact linear algebra over Q or F_p."""
from __future__ import annotations

import random
from typing import Iterable, Optional, Sequence

from sympy.polys.matrices import DomainMatrix


def zeros(r: int, c: int, dom) -> DomainMatrix:
    return DomainMatrix.zeros((r, c), dom)


def eye(n: int, dom) -> DomainMatrix:
    return DomainMatrix.eye(n, dom) if n else zeros(0, 0, dom)


def from_columns(cols: Sequence[Sequence], nrows: int, dom) -> DomainMatrix:
    rows = [[cols[j][i] for j in range(len(cols))] for i in range(nrows)]
    return DomainMatrix(rows, (nrows, len(cols)), dom) if cols else zeros(nrows, 0, dom)


def columns(M: DomainMatrix) -> list[list]:
    r, c = M.shape
    L = M.to_list() if r and c else [[] for _ in range(r)]
    return [[L[i][j] for i in range(r)] for j in range(c)]


def is_zero(M: DomainMatrix) -> bool:
    r, c = M.shape
    return r == 0 or c == 0 or M.is_zero_matrix


def equal(M: DomainMatrix, N: DomainMatrix) -> bool:
    return M.shape == N.shape and is_zero(M - N)


def kernel(M: DomainMatrix) -> DomainMatrix:
    """Columns spanning the right kernel of M."""
    r, c = M.shape
    dom = M.domain
    if c == 0:
        return zeros(0, 0, dom)
    if r == 0 or M.is_zero_matrix:
        return eye(c, dom)
    N = M.nullspace()
    if N.shape[0] == 0:
        return zeros(c, 0, dom)
    return N.transpose()


def rank(M: DomainMatrix) -> int:
    r, c = M.shape
    if r == 0 or c == 0:
        return 0
    return M.rank()


def column_basis(M: DomainMatrix) -> DomainMatrix:
    """An independent subset of the columns spanning the column space."""
    r, c = M.shape
    if r == 0 or c == 0 or M.is_zero_matrix:
        return zeros(r, 0, M.domain)
    _, pivots = M.rref()
    return M.extract(list(range(r)), list(pivots))


def vstack(mats: Sequence[DomainMatrix], ncols: int, dom) -> DomainMatrix:
    mats = [m for m in mats if m.shape[0]]
    if not mats:
        return zeros(0, ncols, dom)
    return mats[0].vstack(*mats[1:]) if len(mats) > 1 else mats[0]


def hstack(mats: Sequence[DomainMatrix], nrows: int, dom) -> DomainMatrix:
    mats = [m for m in mats if m.shape[1]]
    if not mats:
        return zeros(nrows, 0, dom)
    return mats[0].hstack(*mats[1:]) if len(mats) > 1 else mats[0]


def span_contains(B: DomainMatrix, v: DomainMatrix) -> bool:
    return rank(hstack([B, v], v.shape[0], v.domain)) == rank(B)


def same_span(B: DomainMatrix, C: DomainMatrix) -> bool:
    n = B.shape[0]
    rb, rc = rank(B), rank(C)
    return rb == rc and rank(hstack([B, C], n, B.domain)) == rb


def solve(M: DomainMatrix, b: DomainMatrix) -> DomainMatrix:
    return M.lu_solve(b)


def flatten(M: DomainMatrix) -> list:
    r, c = M.shape
    if not r or not c:
        return []
    return [x for row in M.to_list() for x in row]


class EchelonBasis:
    """Incrementally maintained reduced row-echelon basis of a subspace of dom^n."""

    def __init__(self, n: int, dom):
        self.n = n
        self.dom = dom
        self.rows: dict[int, list] = {}  # pivot -> row, 1 at the pivot, 0 at other pivots

    def __len__(self) -> int:
        return len(self.rows)

    def reduce(self, v: list) -> list:
        v = list(v)
        for p, row in self.rows.items():
            c = v[p]
            if c:
                for k in range(self.n):
                    if row[k]:
                        v[k] -= c * row[k]
        return v

    def add(self, v: list) -> bool:
        """Insert v; False if it was already in the span."""
        v = self.reduce(v)
        for p, c in enumerate(v):
            if c:
                inv = self.dom.one / c
                v = [x * inv for x in v]
                for q, row in self.rows.items():
                    f = row[p]
                    if f:
                        self.rows[q] = [a - f * b for a, b in zip(row, v)]
                self.rows[p] = v
                return True
        return False


def algebra_span(gens: Sequence[DomainMatrix], n: int, dom, limit: Optional[int] = None) -> list[DomainMatrix]:
    """A basis of the unital algebra generated by ``gens`` (n x n matrices)."""
    basis: list[DomainMatrix] = []
    ech = EchelonBasis(n * n, dom)
    frontier = [eye(n, dom)]
    cap = n * n if limit is None else limit
    while frontier and len(basis) < cap:
        new = []
        for M in frontier:
            if ech.add(flatten(M)):
                basis.append(M)
                new.extend(g * M for g in gens)
                if len(basis) >= cap:
                    break
        frontier = new
    return basis


def random_combination(mats: Sequence[DomainMatrix], rng: random.Random, dom) -> DomainMatrix:
    out = None
    for M in mats:
        t = M * dom.convert(rng.randint(-9, 9))
        out = t if out is None else out + t
    return out
