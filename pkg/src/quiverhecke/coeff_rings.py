"""The coefficient ring: polynomials in P_{b_i} (h0 = 0) or Laurent polynomials
in U_{b_i} (h0 != 0), their localizations at weights and their fraction field.

All elements are sympy fraction-field elements.  A ring element is one whose
denominator is a constant (additive mode) or a monomial (multiplicative mode);
a localized element at a weight is one whose denominator does not vanish
there.  Weyl group elements are given by index into a ``WeylGroup``.
"""
from __future__ import annotations

from itertools import product
from typing import Iterable, Optional, Sequence

from sympy.polys.fields import field as _frac_field
from sympy.polys.orderings import grlex

from .fields import characteristic, convert
from .root_datum import RootDatum
from .weyl_orbits import ADDITIVE, MULTIPLICATIVE, Weight, WeylGroup


class ExactDivisionError(ArithmeticError):
    """A division that should be exact left a remainder."""


class ModeError(ValueError):
    pass


class CoeffRing:
    """The ring A over a field, with P_x, U_x, the W-action and divided differences."""

    def __init__(self, datum: RootDatum, W: WeylGroup, domain, h0=0):
        self.datum = datum
        self.W = W
        self.domain = domain
        self.h0 = convert(domain, h0)
        self.mode = ADDITIVE if self.h0 == domain.zero else MULTIPLICATIVE
        n = datum.dim
        letter = "P" if self.mode == ADDITIVE else "U"
        names = [f"{letter}{i + 1}" for i in range(n)]
        self.K, *gens = _frac_field(",".join(names), domain, grlex)
        self.R = self.K.ring
        self.gens = gens
        self.n = n
        self._act_cache: dict[tuple[int, object], object] = {}
        self._lin_images: dict[int, list] = {}
        self.zero = self.K.zero
        self.one = self.K.one

    # ------------------------------------------------------------ elements
    @property
    def is_additive(self) -> bool:
        return self.mode == ADDITIVE

    @property
    def characteristic(self) -> int:
        return characteristic(self.domain)

    def const(self, c):
        return self.K(convert(self.domain, c))

    def monomial(self, x: Sequence[int]):
        """U_x = e^x (multiplicative mode)."""
        if self.is_additive:
            raise ModeError("U_x only exists in multiplicative mode")
        num = self.R.one
        den = self.R.one
        for g, e in zip(self.R.gens, x):
            if e > 0:
                num *= g ** e
            elif e < 0:
                den *= g ** (-e)
        return self.K.raw_new(num, den)

    U = monomial

    def P(self, x: Sequence[int]):
        """P_x: linear in additive mode, (U_x - 1)/h0 in multiplicative mode."""
        if self.is_additive:
            s = self.R.zero
            for g, c in zip(self.R.gens, x):
                if c:
                    s += g * c
            return self.K(s)
        return (self.monomial(x) - 1) / self.K(self.h0)

    def P_root(self, i: int, sign: int = 1):
        return self.P(tuple(sign * a for a in self.datum.simple_roots[i]))

    def U_root(self, i: int, sign: int = 1):
        return self.monomial(tuple(sign * a for a in self.datum.simple_roots[i]))

    def equal(self, f, g) -> bool:
        """Equality by cross-multiplication."""
        return f.numer * g.denom == g.numer * f.denom

    def is_zero(self, f) -> bool:
        return not f.numer

    def is_ring_element(self, f) -> bool:
        d = f.denom
        if self.is_additive:
            return d.is_ground
        return len(d.terms()) == 1

    # ------------------------------------------------------------ evaluation
    def evaluate(self, f, lam: Weight):
        """lam(f); raises ZeroDivisionError if the denominator vanishes at lam."""
        vals = lam.values
        den = f.denom(*vals) if self.n > 1 else f.denom(vals[0])
        if den == self.domain.zero:
            raise ZeroDivisionError("denominator vanishes at the weight")
        num = f.numer(*vals) if self.n > 1 else f.numer(vals[0])
        return num / den

    def eval_point(self, f, values: Sequence):
        """f at the point with generator values ``values``."""
        den = f.denom(*values) if self.n > 1 else f.denom(values[0])
        if den == self.domain.zero:
            raise ZeroDivisionError("denominator vanishes at the point")
        num = f.numer(*values) if self.n > 1 else f.numer(values[0])
        return num / den

    def regular_at(self, f, lam: Weight) -> bool:
        vals = lam.values
        den = f.denom(*vals) if self.n > 1 else f.denom(vals[0])
        return den != self.domain.zero

    def is_unit_at(self, f, lam: Weight) -> bool:
        if not self.regular_at(f, lam):
            return False
        vals = lam.values
        num = f.numer(*vals) if self.n > 1 else f.numer(vals[0])
        return num != self.domain.zero

    # ------------------------------------------------------------ W-action
    def _linear_images(self, w: int):
        imgs = self._lin_images.get(w)
        if imgs is None:
            m = self.W.matrices[w]
            # column i of m is w(b_i)
            imgs = []
            for i in range(self.n):
                s = self.R.zero
                for j, g in enumerate(self.R.gens):
                    if m[j][i]:
                        s += g * m[j][i]
                imgs.append(s)
            self._lin_images[w] = imgs
        return imgs

    def _act_poly_add(self, w: int, p):
        imgs = self._linear_images(w)
        return p.compose(list(zip(self.R.gens, imgs)))

    def _act_poly_mult(self, w: int, p):
        m = self.W.matrices[w]
        n = self.n
        terms = {}
        for mon, c in p.terms():
            e = tuple(sum(m[r][k] * mon[k] for k in range(n)) for r in range(n))
            terms[e] = c
        shift = tuple(min(e[r] for e in terms) for r in range(n))
        poly = self.R.from_dict({tuple(e[r] - shift[r] for r in range(n)): c for e, c in terms.items()})
        return poly, shift

    def act(self, w: int, f):
        """w(f), with w(P_x) = P_{w x}."""
        if w == 0:
            return f
        key = (w, f)
        r = self._act_cache.get(key)
        if r is not None:
            return r
        if self.is_additive:
            r = self.K.raw_new(self._act_poly_add(w, f.numer), self._act_poly_add(w, f.denom))
            if r.denom.is_ground:
                r = self.K(r.numer * (1 / r.denom.LC)) if r.denom != self.R.one else r
        else:
            if not f.numer:
                return f
            N, sN = self._act_poly_mult(w, f.numer)
            D, sD = self._act_poly_mult(w, f.denom)
            num, den = N, D
            for g, a, b in zip(self.R.gens, sN, sD):
                if a > b:
                    num = num * g ** (a - b)
                elif b > a:
                    den = den * g ** (b - a)
            r = self.K.raw_new(num, den)
        if len(self._act_cache) > 200000:
            self._act_cache.clear()
        self._act_cache[key] = r
        return r

    def s(self, i: int, f):
        return self.act(self.W.simple(i), f)

    # ------------------------------------------------------------ division
    def _laurent(self, f):
        """(poly, exponent shift) with f = poly * U^shift, poly free of monomial factors."""
        if not self.is_ring_element(f):
            raise ExactDivisionError("not a ring element")
        num = f.numer
        dterms = f.denom.terms()
        (dmon, dc), = dterms
        if not num:
            return self.R.zero, (0,) * self.n
        if self.is_additive:
            # only constants are units of the polynomial ring
            return self.R.from_dict({m: c / dc for m, c in num.terms()}), (0,) * self.n
        mins = tuple(min(m[r] for m, _ in num.terms()) for r in range(self.n))
        poly = self.R.from_dict({tuple(m[r] - mins[r] for r in range(self.n)): c / dc for m, c in num.terms()})
        shift = tuple(mins[r] - dmon[r] for r in range(self.n))
        return poly, shift

    def _from_laurent(self, poly, shift):
        num, den = poly, self.R.one
        for g, e in zip(self.R.gens, shift):
            if e > 0:
                num = num * g ** e
            elif e < 0:
                den = den * g ** (-e)
        return self.K.raw_new(num, den)

    def exact_div(self, a, b):
        """a / b for ring elements, by polynomial division with a remainder check."""
        if not b.numer:
            raise ZeroDivisionError("division by zero")
        pa, sa = self._laurent(a)
        pb, sb = self._laurent(b)
        if not pa:
            return self.zero
        q, r = pa.div(pb)
        if r:
            raise ExactDivisionError(f"{self.to_text(a)} is not divisible by {self.to_text(b)}")
        return self._from_laurent(q, tuple(x - y for x, y in zip(sa, sb)))

    def divide(self, a, b):
        """a / b: exact division on ring elements, field division otherwise."""
        if self.is_ring_element(a) and self.is_ring_element(b):
            return self.exact_div(a, b)
        return a / b

    # ------------------------------------------------------------ operators
    def hD(self, i: int, f):
        """(f - s_i f) / (-P_{-alpha_i}); equals Delta_i at h0 = 0 and h0 D_i otherwise."""
        return self.divide(f - self.s(i, f), -self.P_root(i, -1))

    def bgg_delta(self, i: int, f):
        """Delta_i f = (f - s_i f) / alpha_i (additive mode)."""
        if not self.is_additive:
            raise ModeError("Delta is defined in additive mode")
        return self.divide(f - self.s(i, f), self.P_root(i))

    def demazure(self, i: int, f):
        """D_i f = (f - s_i f) / (1 - e^{-alpha_i}) (multiplicative mode)."""
        if self.is_additive:
            raise ModeError("D is defined in multiplicative mode")
        return self.divide(f - self.s(i, f), 1 - self.U_root(i, -1))

    def classical_demazure(self, i: int, f):
        """(f - e^{-alpha_i} s_i f) / (1 - e^{-alpha_i})."""
        if self.is_additive:
            raise ModeError("the classical Demazure operator needs multiplicative mode")
        e = self.U_root(i, -1)
        return self.divide(f - e * self.s(i, f), 1 - e)

    def hD_localized(self, i: int, f, lam: Weight, s_lam: Weight):
        """Components of hD_i f for a localized f at lam with s_i lam != lam:
        ((-P_{-alpha})^-1 f at lam, -(-P_{-alpha})^-1 s_i(f) at s_i lam)."""
        if lam == s_lam:
            raise ValueError("anchor is fixed by s_i; use hD instead")
        d = -self.P_root(i, -1)
        if not self.regular_at(f, lam):
            raise ValueError("element is not regular at the anchor")
        return f / d, -self.s(i, f) / d

    def demazure_lusztig(self, i: int, f, c, q=None):
        """T_i f = q f + (c + q P_{-alpha}) hD_i f with q = 1 + h0 c."""
        c = convert(self.domain, c)
        q = self.domain.one + self.h0 * c if q is None else convert(self.domain, q)
        return self.K(q) * f + (self.K(c) + self.K(q) * self.P_root(i, -1)) * self.hD(i, f)

    # ------------------------------------------------------------ misc
    def monomials(self, degree: int) -> list:
        """All monomials of total degree <= ``degree``; in multiplicative mode the
        Laurent monomials with sum of |exponents| <= degree."""
        out = []
        n = self.n
        rng = range(0, degree + 1) if self.is_additive else range(-degree, degree + 1)
        for e in product(rng, repeat=n):
            if sum(abs(a) for a in e) > degree:
                continue
            if self.is_additive:
                out.append(self.K(self.R({e: self.domain.one})))
            else:
                out.append(self.monomial(e))
        out.sort(key=lambda f: self.to_text(f))
        return out

    def random_element(self, rng, degree: int = 3, terms: int = 4):
        f = self.zero
        pool = self.monomials(degree)
        for _ in range(terms):
            c = rng.randint(-5, 5)
            f += self.const(c) * pool[rng.randrange(len(pool))]
        return f

    def psi_shift(self, f, lam: Weight):
        """psi_lam: P_{b_i} -> x_i + lam(P_{b_i}), written in the same variables."""
        if not self.is_additive:
            raise ModeError("psi_shift needs additive mode")
        return self.translate(f, lam.values)

    def translate(self, f, values: Sequence):
        """Substitute each generator g_i by g_i + values[i] (moves a point to the origin)."""
        subs = [(g, g + v) for g, v in zip(self.R.gens, values)]
        return self.K.raw_new(f.numer.compose(subs), f.denom.compose(subs))

    def x_root(self, root: Sequence[int], lam: Weight):
        """x_root^lam = P_root - <lam, root> (additive mode)."""
        return self.P(root) - self.K(lam.pairing(root))

    def homogeneous_degree(self, f) -> Optional[int]:
        """Total degree if f is a homogeneous polynomial, -1 for zero, None otherwise."""
        if not f.numer:
            return -1
        if not f.denom.is_ground:
            return None
        degs = {sum(m) for m, _ in f.numer.terms()}
        return degs.pop() if len(degs) == 1 else None

    def to_text(self, f) -> str:
        """Canonical rendering; Laurent elements as sorted monomials with signed exponents."""
        if not f.numer:
            return "0"
        if self.is_ring_element(f):
            poly, shift = self._laurent(f) if not self.is_additive else (f.numer * (1 / f.denom.LC), (0,) * self.n)
            terms = sorted(
                ((tuple(m[r] + shift[r] for r in range(self.n)), c) for m, c in poly.terms()),
                key=lambda t: (sum(t[0]), t[0]),
                reverse=True,
            )
            return _render_terms(terms, self.R.symbols, self.domain)
        num = self.to_text(self.K(f.numer))
        den = self.to_text(self.K(f.denom))
        return f"({num})/({den})"


def _render_terms(terms, symbols, domain) -> str:
    parts = []
    for mon, c in terms:
        factors = []
        for s, e in zip(symbols, mon):
            if e == 1:
                factors.append(str(s))
            elif e != 0:
                factors.append(f"{s}^{e}")
        cs = _coeff_text(c, domain)
        neg = cs.startswith("-")
        mag = cs[1:] if neg else cs
        if factors:
            body = "*".join(factors) if mag == "1" else mag + "*" + "*".join(factors)
        else:
            body = mag
        parts.append(("-", body) if neg else ("+", body))
    out = ("-" if parts[0][0] == "-" else "") + parts[0][1]
    for sign, body in parts[1:]:
        out += f" {sign} {body}"
    return out


def _coeff_text(c, domain) -> str:
    if domain.is_FiniteField:
        return str(int(domain.to_int(c)) % domain.characteristic())
    num, den = int(c.numerator), int(c.denominator)
    return str(num) if den == 1 else f"{num}/{den}"
