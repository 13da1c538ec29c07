"""Root data for finite-type Cartan matrices.

The default lattice convention puts X in the basis of fundamental weights and
Y in the basis of simple coroots, so the pairing is the identity matrix.  A
root datum can also be built directly from lattice data (used for GL_n), in
which case roots and coroots are arbitrary integer vectors and the pairing is
the dot product.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Optional, Sequence

Vector = tuple[int, ...]


class CartanError(ValueError):
    pass


def _dot(x: Sequence[int], y: Sequence[int]) -> int:
    return sum(a * b for a, b in zip(x, y))


def _coxeter_order(aij: int, aji: int) -> int:
    try:
        return {0: 2, 1: 3, 2: 4, 3: 6}[aij * aji]
    except KeyError:
        raise CartanError(f"product a_ij*a_ji = {aij * aji} is not of finite type") from None


def _positive_definite(mat: list[list[Fraction]]) -> bool:
    # leading principal minors by fraction-exact Gaussian elimination
    n = len(mat)
    a = [row[:] for row in mat]
    for k in range(n):
        if a[k][k] <= 0:
            return False
        for i in range(k + 1, n):
            f = a[i][k] / a[k][k]
            for j in range(k, n):
                a[i][j] -= f * a[k][j]
    return True


def validate_cartan(cartan: Sequence[Sequence[int]]) -> None:
    n = len(cartan)
    if n == 0 or any(len(row) != n for row in cartan):
        raise CartanError("Cartan matrix must be square and non-empty")
    for i in range(n):
        if cartan[i][i] != 2:
            raise CartanError(f"diagonal entry a_{i}{i} = {cartan[i][i]} is not 2")
        for j in range(n):
            if i == j:
                continue
            if cartan[i][j] > 0:
                raise CartanError(f"off-diagonal entry a_{i}{j} = {cartan[i][j]} is positive")
            if (cartan[i][j] == 0) != (cartan[j][i] == 0):
                raise CartanError(f"a_{i}{j} and a_{j}{i} are not simultaneously zero")
            _coxeter_order(cartan[i][j], cartan[j][i])
    # symmetrizer d_i with d_i a_ij = d_j a_ji, found along a spanning forest
    d: list[Optional[Fraction]] = [None] * n
    for start in range(n):
        if d[start] is not None:
            continue
        d[start] = Fraction(1)
        stack = [start]
        while stack:
            i = stack.pop()
            for j in range(n):
                if j != i and cartan[i][j] != 0:
                    val = d[i] * cartan[i][j] / cartan[j][i]
                    if d[j] is None:
                        d[j] = val
                        stack.append(j)
                    elif d[j] != val:
                        raise CartanError("Cartan matrix is not symmetrizable")
    sym = [[d[i] * cartan[i][j] for j in range(n)] for i in range(n)]
    if not _positive_definite(sym):
        raise CartanError("symmetrized Cartan matrix is not positive definite (not finite type)")


@dataclass(frozen=True)
class RootDatum:
    """Root datum with simple roots in X and simple coroots in Y.

    ``simple_roots[j]`` and ``simple_coroots[i]`` are integer vectors of length
    ``dim``; the pairing <x, y> is the dot product.
    """

    name: str
    simple_roots: tuple[Vector, ...]
    simple_coroots: tuple[Vector, ...]
    rho: Optional[Vector] = None
    # rational coordinates of the fundamental weights in X (x Q)
    fundamental: Optional[tuple[tuple[Fraction, ...], ...]] = None
    positive_roots: tuple[Vector, ...] = field(init=False)
    positive_coroots: tuple[Vector, ...] = field(init=False)
    root_heights: tuple[tuple[int, ...], ...] = field(init=False)

    def __post_init__(self):
        roots, coroots, coeffs = _enumerate_positive(self)
        object.__setattr__(self, "positive_roots", roots)
        object.__setattr__(self, "positive_coroots", coroots)
        object.__setattr__(self, "root_heights", coeffs)

    @property
    def rank(self) -> int:
        return len(self.simple_roots)

    @property
    def dim(self) -> int:
        return len(self.simple_roots[0])

    @property
    def cartan(self) -> tuple[tuple[int, ...], ...]:
        # a_ij = <alpha_j, coroot_i>
        return tuple(
            tuple(_dot(self.simple_roots[j], self.simple_coroots[i]) for j in range(self.rank))
            for i in range(self.rank)
        )

    def coxeter_order(self, i: int, j: int) -> int:
        if i == j:
            return 2
        c = self.cartan
        return _coxeter_order(c[i][j], c[j][i])

    @property
    def coxeter_orders(self) -> dict[tuple[int, int], int]:
        return {(i, j): self.coxeter_order(i, j) for i in range(self.rank) for j in range(self.rank)}

    def pair(self, x: Sequence[int], y: Sequence[int]) -> int:
        return _dot(x, y)

    def _check_index(self, i: int) -> None:
        if not 0 <= i < self.rank:
            raise IndexError(f"simple root index {i} out of range for rank {self.rank}")

    def reflect(self, i: int, x: Sequence[int]) -> Vector:
        """s_i(x) = x - <x, coroot_i> alpha_i on X."""
        self._check_index(i)
        k = _dot(x, self.simple_coroots[i])
        return tuple(a - k * b for a, b in zip(x, self.simple_roots[i]))

    def reflect_coweight(self, i: int, y: Sequence[int]) -> Vector:
        """s_i(y) = y - <alpha_i, y> coroot_i on Y."""
        self._check_index(i)
        k = _dot(self.simple_roots[i], y)
        return tuple(a - k * b for a, b in zip(y, self.simple_coroots[i]))

    def reflection_matrix(self, i: int) -> tuple[Vector, ...]:
        """Matrix of s_i on X (rows), acting on column vectors."""
        cols = [self.reflect(i, tuple(int(r == c) for r in range(self.dim))) for c in range(self.dim)]
        return tuple(tuple(cols[c][r] for c in range(self.dim)) for r in range(self.dim))

    def all_roots(self) -> tuple[Vector, ...]:
        return self.positive_roots + tuple(tuple(-a for a in r) for r in self.positive_roots)

    def is_root(self, x: Sequence[int]) -> bool:
        return tuple(x) in set(self.all_roots())

    def is_positive_root(self, x: Sequence[int]) -> bool:
        return tuple(x) in set(self.positive_roots)

    def coroot_of(self, root: Sequence[int]) -> Vector:
        root = tuple(root)
        for r, c in zip(self.positive_roots, self.positive_coroots):
            if r == root:
                return c
            if tuple(-a for a in r) == root:
                return tuple(-a for a in c)
        raise ValueError(f"{root} is not a root")

    def simple_index(self, root: Sequence[int]) -> Optional[int]:
        root = tuple(root)
        for i, a in enumerate(self.simple_roots):
            if a == root:
                return i
        return None

    def root_combination(self, coeffs: Sequence[int]) -> Vector:
        """The X-vector sum_j coeffs[j] alpha_j."""
        return tuple(
            sum(c * a[k] for c, a in zip(coeffs, self.simple_roots)) for k in range(self.dim)
        )

    def fundamental_weight(self, i: int) -> tuple[Fraction, ...]:
        if self.fundamental is None:
            raise ValueError("fundamental weights not available for this datum")
        return self.fundamental[i]

    def dihedral_longest_image(self, i: int, j: int) -> tuple[tuple[int, ...], int]:
        """Longest element of <s_i, s_j> as an alternating word, and the simple
        root index k with w_{ij} s_i(alpha_i) = alpha_k.

        Words are listed in application order: the first letter acts first.
        """
        self._check_index(i)
        self._check_index(j)
        if i == j:
            raise ValueError("dihedral_longest_image needs two distinct simple roots")
        m = self.coxeter_order(i, j)
        word = tuple(i if t % 2 == 0 else j for t in range(m))
        x = self.reflect(i, self.simple_roots[i])
        for a in word:
            x = self.reflect(a, x)
        k = self.simple_index(x)
        assert k is not None, "w s_alpha(alpha) must be simple"
        return word, k


def _enumerate_positive(d: RootDatum):
    """Positive roots (with coroots) by closure of the simple roots under the
    simple reflections, in simple-root coordinates; sorted by height then lex."""
    n = len(d.simple_roots)
    cartan = [[_dot(d.simple_roots[j], d.simple_coroots[i]) for j in range(n)] for i in range(n)]
    start = []
    for i in range(n):
        e = tuple(int(k == i) for k in range(n))
        start.append((e, e))
    seen = {r: c for r, c in start}
    frontier = list(start)
    while frontier:
        new = []
        for r, c in frontier:
            for i in range(n):
                # s_i on root coords uses <root, coroot_i>; on coroot coords <alpha_i, coroot>
                k = sum(r[j] * cartan[i][j] for j in range(n))
                r2 = tuple(r[j] - (k if j == i else 0) for j in range(n))
                k2 = sum(c[j] * cartan[j][i] for j in range(n))
                c2 = tuple(c[j] - (k2 if j == i else 0) for j in range(n))
                if all(a >= 0 for a in r2) and any(r2) and r2 not in seen:
                    seen[r2] = c2
                    new.append((r2, c2))
                if len(seen) > 200:
                    raise CartanError("root closure did not terminate (not finite type)")
        frontier = new
    keys = sorted(seen, key=lambda r: (sum(r), r))
    roots = tuple(d.root_combination(r) for r in keys)
    dimY = len(d.simple_coroots[0])
    coroots = tuple(
        tuple(sum(seen[r][j] * d.simple_coroots[j][k] for j in range(n)) for k in range(dimY))
        for r in keys
    )
    return roots, coroots, tuple(keys)


def from_cartan(cartan: Sequence[Sequence[int]], name: str = "") -> RootDatum:
    """Simply connected root datum: X in fundamental weights, Y in simple coroots."""
    cartan = [list(map(int, row)) for row in cartan]
    validate_cartan(cartan)
    n = len(cartan)
    roots = tuple(tuple(cartan[i][j] for i in range(n)) for j in range(n))
    coroots = tuple(tuple(int(i == k) for k in range(n)) for i in range(n))
    fundamental = tuple(tuple(Fraction(int(i == k)) for k in range(n)) for i in range(n))
    return RootDatum(name or "cartan", roots, coroots, rho=(1,) * n, fundamental=fundamental)


def cartan_matrix(kind: str) -> list[list[int]]:
    """Cartan matrix for a type label like "A3", "B2", "G2" or "A1xA1"
    (Bourbaki numbering, a_ij = <alpha_j, coroot_i>)."""
    kind = kind.strip().upper().replace("×", "X")
    if "X" in kind:
        blocks = [cartan_matrix(part) for part in kind.split("X")]
        n = sum(len(b) for b in blocks)
        out = [[0] * n for _ in range(n)]
        off = 0
        for b in blocks:
            for i, row in enumerate(b):
                for j, v in enumerate(row):
                    out[off + i][off + j] = v
            off += len(b)
        return out
    letter, num = kind[0], kind[1:]
    if not num.isdigit():
        raise CartanError(f"unknown type {kind!r}")
    n = int(num)
    if n < 1:
        raise CartanError(f"unknown type {kind!r}")
    mat = [[2 if i == j else (-1 if abs(i - j) == 1 else 0) for j in range(n)] for i in range(n)]
    if letter == "A":
        return mat
    if letter == "B" and n >= 2:
        mat[n - 1][n - 2] = -2
        return mat
    if letter == "C" and n >= 2:
        mat[n - 2][n - 1] = -2
        return mat
    if letter == "D" and n >= 3:
        mat = [[2 if i == j else 0 for j in range(n)] for i in range(n)]
        for i in range(n - 2):
            mat[i][i + 1] = mat[i + 1][i] = -1
        mat[n - 3][n - 1] = mat[n - 1][n - 3] = -1
        return mat
    if letter == "G" and n == 2:
        return [[2, -1], [-3, 2]]
    if letter == "F" and n == 4:
        return [[2, -1, 0, 0], [-1, 2, -2, 0], [0, -1, 2, -1], [0, 0, -1, 2]]
    raise CartanError(f"unknown type {kind!r}")


def named(kind: str) -> RootDatum:
    return from_cartan(cartan_matrix(kind), name=kind.upper())


def gl(n: int) -> RootDatum:
    """GL_n with X = Y = Z^n, alpha_i = e_{i+1} - e_i and the same coroots."""
    def e(i):
        return tuple(int(k == i) for k in range(n))

    roots = tuple(tuple(a - b for a, b in zip(e(i + 1), e(i))) for i in range(n - 1))
    # fundamental weights live in Q.R: omega_i has <omega_i, coroot_j> = delta_ij
    fund = []
    for i in range(n - 1):
        # omega_i = sum_j c_j alpha_j with C c = e_i, C the A_{n-1} Cartan matrix
        c = _solve_a(n - 1, i)
        fund.append(tuple(sum(c[j] * roots[j][k] for j in range(n - 1)) for k in range(n)))
    rho = tuple(range(n))
    return RootDatum(f"GL{n}", roots, roots, rho=rho, fundamental=tuple(fund))


def _solve_a(m: int, i: int) -> list[Fraction]:
    # inverse of the type A_m Cartan matrix, column i
    return [Fraction(min(j, i) + 1) * Fraction(m - max(j, i)) / (m + 1) for j in range(m)]


def words_up_to(rank: int, length: int):
    for k in range(length + 1):
        yield from product(range(rank), repeat=k)
