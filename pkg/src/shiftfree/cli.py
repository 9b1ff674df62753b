"""Command-line entry point.

Every subcommand builds a :class:`RunReport` and renders it as text or as
one JSON object per line.  Exit status: 0 pass, 1 a check failed (the report
carries the witness), 2 the input could not be read or validated.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any

from . import factory, genprop, ordercore, selfmap, shiftcheck, sigma
from .ratlin import DependenceWitness, dependence_witness, rank

PASS, FAIL = "pass", "fail"


class InputError(Exception):
    pass


@dataclass
class RunReport:
    command: str
    seed: int | None = None
    details: list[tuple[str, str, Any]] = field(default_factory=list)

    def add(self, name: str, ok: bool | str, witness: Any = None) -> None:
        verdict = ok if isinstance(ok, str) else (PASS if ok else FAIL)
        self.details.append((name, verdict, witness))

    def note(self, name: str, value: Any) -> None:
        self.details.append((name, "info", value))

    @property
    def verdict(self) -> str:
        return FAIL if any(v == FAIL for _, v, _ in self.details) else PASS

    def render(self, fmt: str) -> str:
        if fmt == "lines":
            head = {"command": self.command, "verdict": self.verdict}
            if self.seed is not None:
                head["seed"] = self.seed
            rows = [json.dumps(head, sort_keys=True)]
            for name, v, w in self.details:
                rows.append(json.dumps({"check": name, "verdict": v, "witness": w}, sort_keys=True))
            return "\n".join(rows) + "\n"
        out = [f"{self.command}: {self.verdict}"]
        if self.seed is not None:
            out.append(f"seed: {self.seed}")
        for name, v, w in self.details:
            tag = "    " if v == "info" else f"[{v}]"
            if w is None:
                out.append(f"{tag} {name}")
            elif isinstance(w, str):
                out.append(f"{tag} {name}: {w}")
            else:
                out.append(f"{tag} {name}: {json.dumps(w, sort_keys=True)}")
        return "\n".join(out) + "\n"


def _read_json(path: str) -> Any:
    try:
        text = Path(path).read_text()
    except OSError as e:
        raise InputError(f"{path}: {e.strerror}") from e
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise InputError(f"{path}:{e.lineno}:{e.colno}: {e.msg}") from e


def _validated(path: str, build):
    data = _read_json(path)
    try:
        return build(data)
    except (ValueError, KeyError, TypeError) as e:
        raise InputError(f"{path}: {e}") from e


# subcommands


def cmd_analyze_map(args) -> RunReport:
    phi = _validated(args.map, selfmap.map_from_data)
    rep = RunReport("analyze-map")
    rep.note("map", phi.describe())
    window = max(args.window, phi.tau + phi.tail_offset + 1)
    for a in range(min(phi.tau, window - 1) + 1):
        o = selfmap.orbit_report(phi, a, window)
        rep.note(f"orbit of {a}", "; ".join(f"{k}: {v}" for k, v in o.rows()))
    g = selfmap.find_generator(phi)
    if g is None:
        rep.note("generator", f"no generator (searched every a <= tau = {phi.tau})")
        return rep
    wit = selfmap.conjugacy_witness(phi, window)
    rep.note("generator", f"generator {g}, conjugate to succ")
    rep.add("conjugacy witness", wit.validate(phi), list(wit.alpha))
    return rep


def _check_plain(rep: RunReport, inst: shiftcheck.ShiftInstance) -> None:
    rep.add("T e_n = e_(n+1) on the window", True, f"N = {inst.window}")
    tail = shiftcheck.verify_tail_collapse(inst)
    rep.add("tail collapse", tail.consistent, tail.lines())
    rep.note("verdict", "free on window" if tail.free else f"dependent from m = {tail.first_dependent}")


def _check_indexed(rep: RunReport, inst: shiftcheck.PhiShiftInstance, data: dict) -> None:
    w = data.get("window", inst.size)
    if isinstance(w, bool) or not isinstance(w, int) or not 0 < w <= inst.size:
        raise InputError(f"'window' must be an integer in [1, {inst.size}]")
    bad = inst.violations(upto=w)
    unchecked = [i for i in range(w) if selfmap.evaluate(inst.phi, i) >= inst.size]
    rep.add("T e_i = e_phi(i) on the window", not bad, {"violations": bad[:10]} if bad else f"w = {w}")
    if unchecked:
        rep.add("family covers phi(window)", False, {"missing images for": unchecked[:10]})
    vecs = inst.vectors(w)
    r = rank(vecs)
    if "dependence" in data:
        try:
            dep = DependenceWitness.from_literal(data["dependence"])
        except (ValueError, AttributeError) as e:
            raise InputError(f"bad dependence witness: {e}") from e
        ok = all(i < w for i in dep.indices) and dep.verify(inst.family)
        rep.add("dependence witness vanishes", ok, dep.to_literal())
        dependent = ok
    else:
        found = dependence_witness(vecs)
        dependent = found is not None
        rep.note("dependence", found.to_literal() if found else "none: family free on window")
    if "K" in data:
        K = data["K"]
        rep.add(f"rank >= window - K", r >= w - K, {"rank": r, "window": w, "K": K})
    else:
        rep.note("rank", r)
    wit = selfmap.conjugacy_witness(inst.phi, inst.size)
    if wit is not None and not bad and not unchecked:
        tr = shiftcheck.transfer_independence(inst, wit)
        rep.add("verdict preserved along conjugacy", tr.agree, {"covered": tr.covered})
    hyp = not bad and not unchecked
    summary = ("hypotheses hold" if hyp else "hypotheses fail") + (" + dependent" if dependent else " + free")
    rep.note("verdict", summary)


def cmd_check_shift(args) -> RunReport:
    rep = RunReport("check-shift")
    data = _read_json(args.instance)
    try:
        inst = shiftcheck.instance_from_data(data)
    except shiftcheck.ShiftViolation as e:
        rep.add("T e_n = e_(n+1) on the window", False, {"first violation": e.index})
        return rep
    except (ValueError, TypeError) as e:
        raise InputError(f"{args.instance}: {e}") from e
    if isinstance(inst, shiftcheck.ShiftInstance):
        _check_plain(rep, inst)
    else:
        _check_indexed(rep, inst, data)
    return rep


def cmd_falsify(args) -> RunReport:
    phi = _validated(args.map, selfmap.map_from_data)
    rep = RunReport("falsify")
    rep.note("map", phi.describe())
    try:
        bundle = factory.refute_P(phi, args.window)
    except factory.PreconditionError as e:
        g = selfmap.find_generator(phi)
        rep.add("refutation", False, {"reason": str(e), "generator": g})
        return rep
    chk = factory.check_bundle(bundle)
    rep.note("construction", bundle.construction)
    rep.note("anchor", bundle.anchor)
    rep.add("shift compatible on window", chk.shift_compatible, list(chk.shift_violations))
    rep.add("dependence exact", chk.dependence_exact, bundle.dependence.to_literal())
    rep.add("rank >= window - K", chk.rank_ok, {"rank": chk.window_rank, "window": chk.window, "K": chk.K})
    if args.out:
        Path(args.out).write_text(json.dumps(factory.bundle_to_data(bundle), sort_keys=True) + "\n")
        rep.note("instance file", args.out)
    return rep


def cmd_lemmas(args) -> RunReport:
    rep = RunReport("lemmas", seed=args.seed)
    if args.replay:
        data = _read_json(args.replay)
        try:
            inst = ordercore.instance_from_data(data)
            res = inst.check()
        except (ValueError, KeyError, TypeError) as e:
            raise InputError(f"{args.replay}: {e}") from e
        rep.add(f"{inst.lemma} instance", res.holds, {
            "hypotheses": res.hypotheses, "failed": list(res.failed),
            "conclusion fails at": res.counterexample,
        })
        return rep
    first_failure = None
    for lemma in ordercore.LEMMAS:
        b = ordercore.run_batch(lemma, args.seed, args.count)
        w = {"instances": b.count, "hypotheses hold": b.nonvacuous, "failures": len(b.failures)}
        if b.failures:
            k, inst, _ = b.failures[0]
            w["first failure"] = {"index": k, "instance": inst.to_data()}
            first_failure = first_failure or inst
        rep.add(f"{lemma} bound", b.passed, w)
    if first_failure is not None and args.witness_out:
        Path(args.witness_out).write_text(json.dumps(first_failure.to_data(), sort_keys=True) + "\n")
        rep.note("witness file", args.witness_out)
    return rep


def _parse_subset(text: str, size: int) -> list[int]:
    try:
        xs = sorted({int(t) for t in text.split(",") if t.strip()})
    except ValueError as e:
        raise InputError(f"bad subset {text!r}: expected comma-separated naturals") from e
    bad = [x for x in xs if not 0 <= x < size]
    if bad:
        raise InputError(f"subset elements {bad} are outside the carrier 0..{size - 1}")
    return xs


def cmd_closure(args) -> RunReport:
    A = _validated(args.structure, sigma.structure_from_data)
    X = _parse_subset(args.subset, A.size)
    rep = RunReport("closure", seed=args.seed)
    rep.note("signature", [f"{n}/{k}" for n, k in A.signature])
    rep.note("subset", X)
    rep.note("closure", sorted(sigma.term_closure(A, X)))
    laws = sigma.powerset_projection_laws(A, seed=args.seed)
    rep.add("closure laws", laws.ok, laws.lines())
    return rep


def cmd_check_general(args) -> RunReport:
    inst, witness = _validated(args.instance, genprop.instance_from_data)
    rep = RunReport("check-general")
    cr = genprop.check_conditions(inst)
    for k, ok in enumerate(cr.conditions, 1):
        related = [f for f in cr.failures if f.startswith(f"condition {k}")]
        rep.add(f"condition {k}", ok, related[:5] or None)
    reached = [n for n in cr.reach if n is not None]
    rep.note("reach steps", {"window": cr.j_window, "max": max(reached) if reached else None})
    rep.note("subsets", [
        {"subset": list(r.subset), "u": r.u, "rank": r.growth_rank, "D": r.D, "K4": r.K4}
        for r in cr.subsets
    ])
    if cr.all_pass:
        free = genprop.family_is_free(inst)
        rep.add("family free (all conditions pass)", free)
    if witness is not None:
        try:
            ir = genprop.verify_induction_claim(inst, witness)
        except (ValueError, genprop.ReachError) as e:
            raise InputError(f"{args.instance}: {e}") from e
        rep.note("induction", ir.lines())
        if cr.conditions[4]:
            rep.add("induction claim", ir.claim_holds)
        rep.add("endgame containment", ir.endgame_holds and ir.contained, list(ir.contradiction))
    return rep


COMMANDS = {
    "analyze-map": cmd_analyze_map,
    "check-shift": cmd_check_shift,
    "falsify": cmd_falsify,
    "lemmas": cmd_lemmas,
    "closure": cmd_closure,
    "check-general": cmd_check_general,
}


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="shiftfree", description="Exact checkers for shift-compatible vector families.")
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, help_):
        sp = sub.add_parser(name, help=help_)
        sp.add_argument("--format", choices=["text", "lines"], default="text")
        return sp

    sp = add("analyze-map", "orbit reports, generator and conjugacy witness for a map file")
    sp.add_argument("map")
    sp.add_argument("--window", type=int, default=20)

    sp = add("check-shift", "validate a shift instance file and report collapse or dependence")
    sp.add_argument("instance")

    sp = add("falsify", "build a dependent shift-compatible family for a map without a generator")
    sp.add_argument("--map", required=True)
    sp.add_argument("--window", type=int, default=50)
    sp.add_argument("--out", help="write the instance file here")

    sp = add("lemmas", "seeded batches of the order-theoretic bound checks")
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--count", type=int, default=1000)
    sp.add_argument("--witness-out", help="write the first failing instance here")
    sp.add_argument("--replay", help="check a single instance file instead of running batches")

    sp = add("closure", "term closure of a subset in a finite structure")
    sp.add_argument("structure")
    sp.add_argument("--subset", required=True, help="comma-separated elements, e.g. 1,2")
    sp.add_argument("--seed", type=int, default=0, help="subset sampling seed for large carriers")

    sp = add("check-general", "check the five conditions and replay the induction on a general instance")
    sp.add_argument("instance")
    return p


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    if getattr(args, "window", 1) < 1:
        print("shiftfree: error: --window must be positive", file=sys.stderr)
        return 2
    if getattr(args, "count", 1) < 0:
        print("shiftfree: error: --count must be nonnegative", file=sys.stderr)
        return 2
    try:
        rep = COMMANDS[args.command](args)
    except InputError as e:
        print(f"shiftfree: error: {e}", file=sys.stderr)
        return 2
    sys.stdout.write(rep.render(args.format))
    return 0 if rep.verdict == PASS else 1


if __name__ == "__main__":
    sys.exit(main())
