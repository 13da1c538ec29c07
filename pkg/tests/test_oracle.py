"""The skew-group engine against the relation rewriter on small words."""
from fractions import Fraction
from itertools import product

import pytest

from quiverhecke.datum import Datum
from quiverhecke.qhecke_core import Engine

from rewriter import Rewriter
from support import setup

CASES = [
    ("A1", 0, (0,)), ("A1", 0, (1,)), ("A1", 0, (Fraction(1, 2),)),
    ("A1", 1, (1,)), ("A1", 1, (-1,)), ("A1", 1, (3,)),
    ("A2", 0, (0, 0)), ("A2", 0, (Fraction(1, 3), Fraction(2, 3))), ("A2", 0, (0, 1)), ("A2", 0, (-1, 1)),
    ("A2", 0, (Fraction(1, 3), Fraction(2, 7))),
    ("A2", 1, (1, 1)), ("A2", 1, (-1, 1)), ("A2", 1, (2, 1)), ("A2", 1, (2, 3)),
    ("B2", 0, (0, 1)), ("B2", 1, (-1, 1)), ("G2", 0, (1, 0)),
]


def as_words(A, nf):
    return {A.W.words[w]: c for w, c in nf.coeffs.items()}


def agree(A, eng, ref):
    return set(eng) == set(ref) and all(A.equal(eng[w], ref[w]) for w in eng)


def words(rank, max_len):
    for L in range(max_len + 1):
        yield from product(range(rank), repeat=L)


@pytest.mark.parametrize("kind,h0,values", CASES, ids=[f"{c[0]}-{c[1]}-{c[2]}" for c in CASES])
def test_generator_words(kind, h0, values):
    A, _, lam, orb, D = setup(kind, h0, values)
    E = Engine(D)
    R = Rewriter(A, orb)
    for mu in orb:
        for word in words(A.datum.rank, 3):
            toks = [("r", a) for a in word]
            assert agree(A, as_words(A, E.word(mu, toks)), R.normal_form(mu, toks)), (str(mu), word)


@pytest.mark.parametrize("kind,h0,values", [c for c in CASES if c[0] == "A2"][:8])
def test_words_with_a_function(kind, h0, values):
    A, _, lam, orb, D = setup(kind, h0, values)
    E = Engine(D)
    R = Rewriter(A, orb)
    f = A.P_root(0) * A.P_root(1) + A.P_root(1) if A.is_additive else A.U((1, -1)) + A.U((0, 2))
    for word in words(2, 2):
        for pos in range(len(word) + 1):
            toks = [("r", a) for a in word]
            toks.insert(pos, ("f", f))
            assert agree(A, as_words(A, E.word(lam, toks)), R.normal_form(lam, toks)), (word, pos)


def test_oracle_detects_a_wrong_datum():
    # the engine built on a different G must disagree with the rewriter somewhere
    A, params, lam, orb, D = setup("A2", 0, (Fraction(1, 3), Fraction(2, 7)))
    twisted = Datum(A, orb, params, "custom", rule=lambda mu, i: D.G(mu, i) * A.const(4))
    E = Engine(twisted)
    R = Rewriter(A, orb)
    toks = [("r", 0), ("r", 0)]
    assert not agree(A, as_words(A, E.word(lam, toks)), R.normal_form(lam, toks))
