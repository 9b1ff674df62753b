"""Term closures in small structures and the laws they obey as projections.

Run: python3 demos/closure_tour.py
"""

from pathlib import Path

from shiftfree.sigma import load_structure, powerset_projection_laws, term_closure

DATA = Path(__file__).parent / "data"

for name, subsets in [("min3.json", [[2], [1, 2]]), ("f2_squared.json", [[], [1], [1, 2]])]:
    A = load_structure((DATA / name).read_text())
    print(name, "signature", [f"{n}/{k}" for n, k in A.signature])
    for X in subsets:
        print(f"    closure of {X}: {sorted(term_closure(A, X))}")
    for line in powerset_projection_laws(A).lines():
        print("   ", line)
