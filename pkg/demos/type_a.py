"""The degenerate and q-versions of the type-A embedding for small n.

    python demos/type_a.py
"""
from quiverhecke.typea_bridge import degenerate_embedding, q_embedding


def main():
    for lam in [(0, 1), (0, 0), (0, 1, 0), (1, 0, 1), (0, 1, 2)]:
        rep = degenerate_embedding(len(lam), lam)
        print(f"degenerate {lam}: {rep.relations.passed}/{rep.relations.checked} relations, degrees {rep.degrees}")
    for lam in [(1, 2), (1, 1), (1, 2, 1)]:
        rep = q_embedding(len(lam), lam, 2)
        print(f"q=2 {lam}: {rep.relations.passed}/{rep.relations.checked} relations, ok={rep.ok}")


if __name__ == "__main__":
    main()
