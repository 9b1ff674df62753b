"""A map with a full orbit behaves like the successor map.

Reindexing a family along the generator's trajectory turns
``T e_i = e_phi(i)`` into ``T f_n = f_(n+1)``, and freeness carries over.

Run: python3 demos/orbit_transfer.py
"""

from pathlib import Path

from shiftfree.ratlin import QMatrix, QVector
from shiftfree.selfmap import conjugacy_witness, find_generator, load_map, orbit_report
from shiftfree.shiftcheck import PhiShiftInstance, transfer_independence

phi = load_map((Path(__file__).parent / "data" / "relabeled.json").read_text())
print("map:", phi.describe())
print("generator:", find_generator(phi))
for row in orbit_report(phi, 1, 12).rows():
    print("   ", *row)

wit = conjugacy_witness(phi, 12)
print("alpha on [0, 12):", list(wit.alpha))

size = 8
inv = wit.inverse()
shift = QMatrix.from_columns(
    [QVector.basis(k + 1) if k + 1 < size else QVector.zero() for k in range(size)], size
)
rank_one = QMatrix.identity(1)
for label, T, fam in [
    ("basis family", shift, {i: QVector.basis(inv[i]) for i in range(size)}),
    ("constant family", rank_one, {i: QVector.basis(0) for i in range(size)}),
]:
    rep = transfer_independence(PhiShiftInstance(phi, fam, T), wit)
    print(f"{label}: free={rep.family_free}, reindexed free={rep.reindexed.free}, agree={rep.agree}")
