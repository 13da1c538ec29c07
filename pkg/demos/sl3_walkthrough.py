"""Graded characters of the SL3 weight modules, and the middle-weight computation.

    python demos/sl3_walkthrough.py
"""
from quiverhecke.repn import sl3_example, sl3_middle_obstruction


def main():
    ex = sl3_example()
    print("orbit path:", ", ".join(ex["weights"]))
    print("construction one:", ex["construction_one"])
    print("construction two:", ex["construction_two"])
    print("after balancing: ", " | ".join(ex["balanced"]), " shifts", ex["shifts"])
    print("irreducible quotient along the path:", " | ".join(ex["quotient"]))

    ob = sl3_middle_obstruction()
    print()
    print("middle weight", ob["middle_weight"])
    print("  degree of tau_gamma:", ob["tau_gamma_degree"])
    for term in ob["anticommutator"]:
        print(f"  anticommutator term: word {term['word']} coeff {term['coeff']}")
    print("  equals the scalar 2:", ob["anticommutator_equals_2"])
    print("  corrected braid:", ob["corrected_braid"])


if __name__ == "__main__":
    main()
