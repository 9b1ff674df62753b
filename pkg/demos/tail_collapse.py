"""Watch one dependence swallow the rest of an operator orbit.

Run: python3 demos/tail_collapse.py
"""

from fractions import Fraction

from shiftfree.ratlin import QMatrix, QVector
from shiftfree.shiftcheck import ShiftInstance, verify_tail_collapse

CASES = {
    "shift on Q^8": QMatrix.from_columns(
        [QVector.basis(k + 1) if k < 7 else QVector.zero() for k in range(8)], 8
    ),
    "3-cycle permutation": QMatrix.from_rows([[0, 0, 1], [1, 0, 0], [0, 1, 0]]),
    "Fibonacci companion": QMatrix.from_rows([[0, 1], [1, 1]]),
}

for name, T in CASES.items():
    e0 = QVector.from_dense([Fraction(1, 2)] + [0] * (T.ncols - 1))
    inst = ShiftInstance.orbit(T, e0, 7)
    print(f"{name}:")
    for line in verify_tail_collapse(inst).lines():
        print("   ", line)
