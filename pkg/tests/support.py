"""Shared constructors for the test suite."""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

from quiverhecke.coeff_rings import CoeffRing
from quiverhecke.datum import Datum, HeckeParams
from quiverhecke.fields import make_field
from quiverhecke.qhecke_core import Engine
from quiverhecke.root_datum import named
from quiverhecke.weyl_orbits import Orbit, Weight, WeylGroup


@lru_cache(maxsize=None)
def ring(kind: str, h0=0, field="Q"):
    d = named(kind)
    W = WeylGroup(d)
    dom = make_field(field)
    return CoeffRing(d, W, dom, h0)


def weight(A: CoeffRing, values, field="Q") -> Weight:
    vals = [Fraction(v) if isinstance(v, (int, str)) else v for v in values]
    if A.is_additive:
        return Weight.additive(vals, field)
    return Weight.multiplicative(vals, field)


def setup(kind: str, h0, values, kind_of_datum="canonical", field="Q", c=1):
    """(A, params, lam, orbit, datum) for one orbit."""
    A = ring(kind, h0, field)
    params = HeckeParams.make(A.datum, A.domain, A.h0, c)
    lam = weight(A, values, field)
    orb = Orbit(A.W, lam)
    D = Datum(A, orb, params, kind_of_datum)
    return A, params, lam, orb, D


def engine(kind: str, h0, values, kind_of_datum="canonical", field="Q") -> Engine:
    return Engine(setup(kind, h0, values, kind_of_datum, field)[4])


# orbit seeds used across the suite: (type, h0, entries, note)
ORBITS = [
    ("A2", 0, (0, 0), "W-invariant"),
    ("A2", 0, (Fraction(1, 3), Fraction(2, 3)), "SL3 example orbit"),
    ("A2", 0, (0, 1), "regular integral"),
    ("A2", 0, (-1, 1), "contains a non-standard parabolic weight"),
    ("A2", 0, (Fraction(1, 3), Fraction(2, 7)), "regular"),
    ("A2", 1, (1, 1), "multiplicative invariant"),
    ("A2", 1, (-1, 1), "multiplicative torsion"),
    ("A2", 1, (2, 3), "multiplicative regular"),
    ("B2", 0, (0, 1), "contains a non-standard parabolic weight"),
    ("B2", 0, (1, 0), "mixed parabolic"),
    ("B2", 1, (-1, 1), "exceptional"),
    ("B2", 1, (1, -1), "multiplicative invariant torsion"),
    ("G2", 0, (1, 0), "contains a non-standard parabolic weight"),
    ("G2", 0, (0, 1), "mixed parabolic"),
    ("G2", 1, (-1, 1), "exceptional"),
    ("G2", 1, (2, 3), "multiplicative regular"),
    ("A3", 0, (0, 1, 0), "mixed parabolic"),
    ("A3", 0, (1, -1, 1), "regular integral"),
    ("A3", 1, (1, -1, 1), "multiplicative torsion"),
]
