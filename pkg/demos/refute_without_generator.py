"""Without a full orbit, shift compatibility no longer forces freeness.

Builds a dependent family for two maps (one per construction), checks the
bundle and shows the instance file passing ``check-shift``.

Run: python3 demos/refute_without_generator.py
"""

import json
import tempfile
from pathlib import Path

from shiftfree.cli import main
from shiftfree.factory import bundle_to_data, check_bundle, refute_P
from shiftfree.selfmap import load_map

DATA = Path(__file__).parent / "data"

for name in ("plus_two.json", "merging.json"):
    phi = load_map((DATA / name).read_text())
    bundle = refute_P(phi, 20)
    chk = check_bundle(bundle)
    print(f"{phi.describe()}: {bundle.construction}, anchor {bundle.anchor}")
    print(f"    dependence {bundle.dependence.to_literal()}, rank {chk.window_rank} >= {chk.window} - {chk.K}: {chk.rank_ok}")
    with tempfile.TemporaryDirectory() as d:
        path = Path(d) / "bundle.json"
        path.write_text(json.dumps(bundle_to_data(bundle)))
        main(["check-shift", str(path)])
