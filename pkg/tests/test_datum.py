from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from quiverhecke.datum import (Datum, HeckeParams, ParameterError, check_conditions,
                               graded_H, graded_ratio, splitting_family, verify_splitting)
from quiverhecke.weyl_orbits import Orbit

from support import ORBITS, ring, setup, weight


def test_params_q():
    A = ring("B2", 2)
    p = HeckeParams.make(A.datum, A.domain, 2, [1, 3])
    assert p.q(0) == 3 and p.q(1) == 7
    assert p.to_json() == {"h0": 2, "c": [1, 3]}


@pytest.mark.parametrize("kind,h0,c", [
    ("A2", 0, [1, 2]),      # odd order forces equal parameters
    ("G2", 0, [0, 1]),      # c must be nonzero
    ("A2", 1, [-1, -1]),    # q = 0
    ("B2", 0, [1]),         # wrong count
])
def test_bad_params(kind, h0, c):
    A = ring(kind, h0)
    with pytest.raises(ParameterError):
        HeckeParams.make(A.datum, A.domain, h0, c)


def test_even_order_allows_distinct_params():
    A = ring("B2", 0)
    HeckeParams.make(A.datum, A.domain, 0, [1, 2])


def test_vanishing_root_rejected():
    A = ring("B2", 0, "F2")
    params = HeckeParams.make(A.datum, A.domain, 0, 1)
    lam = weight(A, [0, 1], "F2")
    with pytest.raises(ParameterError):
        Datum(A, Orbit(A.W, lam), params)


def test_canonical_G_additive_closed_form():
    # at h0 = 0, c = 1 the canonical datum is 1 - 1/P^2 away from fixed weights
    A, _, lam, orb, D = setup("A2", 0, (Fraction(1, 3), Fraction(2, 7)))
    P = A.P_root(0)
    assert A.equal(D.G(lam, 0), A.one - A.one / (P * P))


def test_canonical_G_multiplicative_closed_form():
    A, params, lam, orb, D = setup("A2", 1, (2, 3), c=2)
    U = A.U_root(0, -1)
    # P_{-a} = U - 1, q = 3, c = 2
    pm = U - A.one
    assert A.equal(D.G(lam, 0), (2 + 3 * pm) * (pm - 2) / (pm * pm))


def test_canonical_G_is_one_at_fixed_and_exceptional():
    # pairings (0, 1)
    A, _, lam, orb, D = setup("A2", 0, (Fraction(1, 3), Fraction(2, 3)))
    assert A.equal(D.G(lam, 0), A.one)
    assert not A.equal(D.G(lam, 1), A.one)
    A, _, lam, orb, D = setup("B2", 1, (-1, 1))
    assert A.equal(D.G(lam, 0), A.one)
    assert A.equal(D.G(lam, 1), A.one)  # exceptional root


@pytest.mark.parametrize("kind,h0,values,note", ORBITS, ids=[f"{o[0]}-{o[1]}-{o[3]}" for o in ORBITS])
def test_canonical_datum_conditions(kind, h0, values, note):
    D = setup(kind, h0, values)[4]
    rep = check_conditions(D)
    assert rep.ok, rep.failures
    assert rep.checked > 0


def test_non_invariant_datum_fails():
    A, params, lam, orb, _ = setup("A2", 0, (Fraction(1, 3), Fraction(2, 7)))
    bad = Datum(A, orb, params, "custom", rule=lambda mu, i: A.one if orb.is_fixed(i, mu) else A.P_root(i))
    rep = check_conditions(bad)
    assert not rep.ok
    assert {f[0] for f in rep.failures} >= {"associative"}


def test_fixed_violation_detected():
    A, params, lam, orb, _ = setup("A2", 0, (Fraction(1, 3), Fraction(2, 3)))
    bad = Datum(A, orb, params, "custom", rule=lambda mu, i: A.const(2))
    kinds = {f[0] for f in check_conditions(bad).failures}
    assert "fixed" in kinds


@pytest.mark.parametrize("kind,h0,values,note", ORBITS, ids=[f"{o[0]}-{o[1]}-{o[3]}" for o in ORBITS])
def test_splitting(kind, h0, values, note):
    D = setup(kind, h0, values)[4]
    S = splitting_family(D)
    rep = verify_splitting(S)
    assert rep.ok, rep.failures
    assert rep.conflicts == 0


def test_splitting_b3_torsion():
    A, _, lam, orb, D = setup("B3", 1, (5, 1, -1), field="F13")
    assert len(orb) == 12
    rep = verify_splitting(splitting_family(D))
    assert rep.ok
    assert rep.coincidences == 34


def test_bad_datum_fails_splitting_check():
    # G = P^2 is not s-associative, so the seeded factors cannot multiply back to G everywhere
    A, params, lam, orb, _ = setup("B3", 1, (5, 1, -1), field="F13")
    bad = Datum(A, orb, params, "custom",
                rule=lambda mu, i: A.one if orb.is_fixed(i, mu) else A.P_root(i) ** 2)
    rep = verify_splitting(splitting_family(bad, strict=False))
    assert not rep.ok
    assert {f[0] for f in rep.failures} == {"split"}


@pytest.mark.parametrize("values", [(0, 0), (0, 1), (1, 1), (-1, 1), (2, -1), (Fraction(1, 2), 3)])
def test_graded_H_conditions_and_ratio(values):
    A, params, lam, orb, D = setup("A2", 0, values)
    gd = graded_H(A, orb, params)
    assert check_conditions(gd.H).ok
    assert len(gd.ratio) == 2 * len(orb)


def test_graded_H_values():
    # pairings (1, -1)
    A, params, lam, orb, _ = setup("A2", 0, (Fraction(1, 3), Fraction(-1, 3)))
    gd = graded_H(A, orb, params)
    P = A.P_root(0)
    # pairing +1: H = c - P and the ratio carries a minus sign
    assert A.equal(gd.H.G(lam, 0), A.one - P)
    assert A.equal(gd.ratio[(lam, 0)], -P * P / (P + A.one))
    # pairing -1 on the second root: H = c + P
    P1 = A.P_root(1)
    assert A.equal(gd.H.G(lam, 1), A.one + P1)


def test_graded_H_char2():
    A, params, lam, orb, D = setup("A2", 0, (0, 1), "gradedH", field="F2")  # pairings (1, 0)
    P = A.P_root(0)
    assert A.equal(D.G(lam, 0), (A.one - P) ** 2)
    gd = graded_H(A, orb, params)
    assert check_conditions(gd.H).ok
    assert A.equal(gd.ratio[(lam, 0)], graded_ratio(A, orb, params, lam, 0))


def test_graded_needs_additive():
    A = ring("A2", 1)
    params = HeckeParams.make(A.datum, A.domain, 1, 1)
    lam = weight(A, [1, 1])
    with pytest.raises(ParameterError):
        Datum(A, Orbit(A.W, lam), params, "gradedH")


@settings(max_examples=20, deadline=None)
@given(st.sampled_from(["A2", "B2", "G2"]), st.sampled_from([0, 1]),
       st.lists(st.integers(-2, 2), min_size=2, max_size=2), st.integers(1, 3))
def test_random_orbits_satisfy_conditions(kind, h0, vals, c):
    if h0:
        vals = [v if v else 2 for v in vals]
    if kind == "A2" or c == 1:
        cs = c
    else:
        cs = [1, c]
    A = ring(kind, h0)
    try:
        params = HeckeParams.make(A.datum, A.domain, h0, cs)
    except ParameterError:
        return
    orb = Orbit(A.W, weight(A, vals))
    D = Datum(A, orb, params)
    assert check_conditions(D).ok
    assert verify_splitting(splitting_family(D)).ok
