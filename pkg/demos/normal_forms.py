"""Multiply generator words in the A2 algebra and print right PBW normal forms.

    python demos/normal_forms.py
"""
from fractions import Fraction

from quiverhecke.coeff_rings import CoeffRing
from quiverhecke.datum import Datum, HeckeParams
from quiverhecke.fields import make_field
from quiverhecke.qhecke_core import Engine, verify_relations
from quiverhecke.root_datum import named
from quiverhecke.weyl_orbits import Orbit, Weight, WeylGroup


def build(values, h0=0):
    d = named("A2")
    A = CoeffRing(d, WeylGroup(d), make_field("Q"), h0)
    params = HeckeParams.make(d, A.domain, h0, 1)
    lam = Weight.additive(values, "Q") if h0 == 0 else Weight.multiplicative(values, "Q")
    return Engine(Datum(A, Orbit(A.W, lam), params, "canonical")), lam


def main():
    E, lam = build([Fraction(1, 3), Fraction(2, 3)])
    print("orbit:", ", ".join(str(mu) for mu in E.orbit))
    for word in [(0,), (0, 0), (1, 1), (0, 1, 0), (1, 0, 1)]:
        nf = E.word(lam, [("r", i) for i in word])
        print(f"r{''.join(map(str, word))} at {lam}:")
        terms = E.render(nf)
        for term in terms:
            print("   ", term["word"], term["coeff"])
        if not terms:
            print("    0")
    rep = verify_relations(E, fdegree=1)
    print(f"relations at fdegree 1: {rep.passed}/{rep.checked} pass")
    print("by kind:", dict(sorted(rep.by_kind.items())))


if __name__ == "__main__":
    main()
