"""Finite-window checker for a relation-controlled freeness criterion.

Setting: a family ``e_i`` (``i`` in an index window), for each exercised
finite subset ``I*`` a distinguished element ``u(I*)`` and a superset
``G(I*)``, operators ``T(I*, j)`` for ``j`` in a window ``J = [0, Jw)``, a
control relation ``R`` on ``J`` with a base set ``J0``, and a subspace ``V``.
The five conditions checked are

1. ``u(I*) in I*`` and ``I* <= G(I*)``;
2. every ``T(I*, j)`` is defined on ``e_i`` for ``i in G(I*)``;
3. ``R[J0] <= J0`` and every ``j`` reaches ``J0``: ``R^n[j] <= J0`` for some n;
4. the growth surrogate below;
5. ``T(I*, j) e_i in span{T(I*, j') e_i' : j' in R[j], i' in G(I*)} + V``
   for every ``i in G(I*)`` other than ``u(I*)``.

Condition 4 asks for infinite dimension, which no window can show.  What a
window can show is the exact inequality the freeness argument contradicts:
put ``W = span{T(I*, j') e_i' : j' in J0, i' in G(I*)} + V`` and
``D = dim W``.  A dependence supported on ``I*`` forces
``span{T(I*, j) e_u : j in J} + V <= W``, so condition 4 is certified on the
window when ``dim(span{T(I*, j) e_u : j < Jw} + V) > D``.  ``K4`` reports how
far the window rank modulo ``V`` falls short of ``Jw``.

A relation image that cycles without entering ``J0`` is detected exactly,
since the sequence ``R^n[j]`` lives in the finite powerset of the window.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from typing import Iterable, Mapping

from .ratlin import (
    DependenceWitness,
    QMatrix,
    QVector,
    Subspace,
    dependence_witness,
    matrix_from_literal,
    matrix_to_literal,
    vector_from_literal,
    vector_to_literal,
)
from .selfmap import SelfMapPresentation, find_generator, iterate, trajectory

__all__ = [
    "ControlRelation",
    "WindowScheme",
    "GeneralInstance",
    "SubsetReport",
    "ConditionReport",
    "InductionReport",
    "ReachError",
    "relation_power_image",
    "compose_pairs",
    "reach_steps",
    "check_conditions",
    "verify_induction_claim",
    "scheme_from_selfmap",
    "max_scheme",
    "shift_relation",
    "orbit_instance",
    "shift_example_instance",
    "fibonacci_planted_instance",
    "selfmap_orbit_instance",
    "instance_to_data",
    "instance_from_data",
    "load_instance",
    "dump_instance",
    "family_is_free",
]

class ReachError(ValueError):
    pass


@dataclass(frozen=True)
class ControlRelation:
    """Relation ``R`` on ``J = [0, window)`` with base set ``J0``."""

    pairs: frozenset
    J0: frozenset
    window: int

    def __post_init__(self):
        pairs = frozenset((int(a), int(b)) for a, b in self.pairs)
        J0 = frozenset(int(j) for j in self.J0)
        for a, b in pairs:
            if not (0 <= a < self.window and 0 <= b < self.window):
                raise ValueError(f"pair ({a}, {b}) leaves the window [0, {self.window})")
        bad = [j for j in J0 if not 0 <= j < self.window]
        if bad:
            raise ValueError(f"J0 elements {sorted(bad)} leave the window")
        object.__setattr__(self, "pairs", pairs)
        object.__setattr__(self, "J0", J0)
        succ: dict[int, set[int]] = {}
        for a, b in pairs:
            succ.setdefault(a, set()).add(b)
        object.__setattr__(self, "_succ", {a: frozenset(bs) for a, bs in succ.items()})

    def image(self, S: Iterable[int]) -> frozenset:
        out: set[int] = set()
        for x in S:
            out |= self._succ.get(x, frozenset())
        return frozenset(out)

    def base_closed(self) -> bool:
        return self.image(self.J0) <= self.J0


def shift_relation(window: int) -> ControlRelation:
    """``{(0, 0)} | {(m, m - 1) : m >= 1}`` with ``J0 = {0}``."""
    pairs = {(0, 0)} | {(m, m - 1) for m in range(1, window)}
    return ControlRelation(frozenset(pairs), frozenset({0}), window)


def relation_power_image(R: ControlRelation, j: int, n: int) -> frozenset:
    if n < 0:
        raise ValueError("relation powers need n >= 0")
    S = frozenset({j})
    for _ in range(n):
        S = R.image(S)
    return S


def compose_pairs(R1: Iterable[tuple[int, int]], R2: Iterable[tuple[int, int]]) -> frozenset:
    """``{(x, z) : (x, y) in R1 and (y, z) in R2}`` by brute force over pairs."""
    R2 = list(R2)
    return frozenset((x, z) for x, y in R1 for y2, z in R2 if y == y2)


def reach_steps(R: ControlRelation, j: int) -> int:
    """Least ``n`` with ``R^n[j] <= J0``."""
    if not 0 <= j < R.window:
        raise ValueError(f"j={j} is outside the window [0, {R.window})")
    seen = set()
    S = frozenset({j})
    n = 0
    while not S <= R.J0:
        if S in seen:
            raise ReachError(f"condition 3 violated at j={j}: relation images cycle outside J0")
        seen.add(S)
        S = R.image(S)
        n += 1
    return n


@dataclass(frozen=True)
class WindowScheme:
    """Tables ``I* -> u(I*)`` and ``I* -> G(I*)`` on the exercised subsets."""

    u: Mapping[frozenset, int]
    G: Mapping[frozenset, frozenset]

    def __post_init__(self):
        u = {frozenset(k): int(v) for k, v in dict(self.u).items()}
        G = {frozenset(k): frozenset(v) for k, v in dict(self.G).items()}
        if set(u) != set(G):
            raise ValueError("u and G must be tabulated on the same subsets")
        if any(not k for k in u):
            raise ValueError("subsets must be nonempty")
        object.__setattr__(self, "u", u)
        object.__setattr__(self, "G", G)

    @property
    def subsets(self) -> list[frozenset]:
        return sorted(self.u, key=lambda s: (len(s), sorted(s)))

    def violations(self) -> list[str]:
        out = []
        for s in self.subsets:
            if self.u[s] not in s:
                out.append(f"u({sorted(s)}) = {self.u[s]} is not in the subset")
            if not s <= self.G[s]:
                out.append(f"{sorted(s)} is not contained in G = {sorted(self.G[s])}")
        return out

    def preservation_violations(self, phi: SelfMapPresentation) -> list[str]:
        """Subsets where ``phi(G \\ {u})`` leaves ``G``."""
        out = []
        for s in self.subsets:
            g = self.G[s]
            for i in sorted(g - {self.u[s]}):
                if phi(i) not in g:
                    out.append(f"phi({i}) = {phi(i)} leaves G({sorted(s)})")
        return out


def max_scheme(subsets: Iterable[Iterable[int]]) -> WindowScheme:
    """``u = max(I*)`` and ``G = [0, max(I*)]``."""
    u, G = {}, {}
    for s in subsets:
        s = frozenset(s)
        u[s] = max(s)
        G[s] = frozenset(range(max(s) + 1))
    return WindowScheme(u, G)


def scheme_from_selfmap(
    phi: SelfMapPresentation, window: int, subsets: Iterable[Iterable[int]] | None = None
) -> WindowScheme:
    """Scheme read off the orbit of a generator ``a``.

    ``n(I*)`` is the last step at which the orbit of ``a`` hits ``I*``;
    ``u = phi^n(a)`` and ``G`` is the orbit segment up to that step.  The
    default subsets are all nonempty subsets of ``[0, window)``.
    """
    a = find_generator(phi)
    if a is None:
        raise ValueError(f"no generator for {phi.describe()}")
    if subsets is None:
        subsets = _all_subsets(window)
    subsets = [frozenset(s) for s in subsets]
    reach = max([window, phi.tau] + [max(s) + 1 for s in subsets])
    # a full orbit lists [0, reach) within its first max(reach, tau) steps
    steps = {v: n for n, v in enumerate(trajectory(phi, a, reach))}
    u, G = {}, {}
    for s in subsets:
        n = max(steps[i] for i in s)
        u[s] = iterate(phi, a, n)
        G[s] = frozenset(trajectory(phi, a, n + 1))
    scheme = WindowScheme(u, G)
    problems = scheme.violations() + scheme.preservation_violations(phi)
    if problems:
        raise AssertionError(f"scheme from {phi.describe()} is invalid: {problems[0]}")
    return scheme


def _all_subsets(window: int) -> list[frozenset]:
    return [
        frozenset(c) for k in range(1, window + 1) for c in itertools.combinations(range(window), k)
    ]


@dataclass(frozen=True)
class GeneralInstance:
    family: Mapping[int, QVector]
    scheme: WindowScheme
    operators: Mapping[tuple[frozenset, int], QMatrix]
    control: ControlRelation
    V: Subspace = field(default_factory=Subspace.zero)

    def __post_init__(self):
        object.__setattr__(self, "family", dict(sorted(self.family.items())))
        ops = {(frozenset(s), int(j)): m for (s, j), m in dict(self.operators).items()}
        object.__setattr__(self, "operators", ops)
        object.__setattr__(self, "_images", {})

    @property
    def j_window(self) -> int:
        return self.control.window

    @property
    def subsets(self) -> list[frozenset]:
        return self.scheme.subsets

    def image(self, s: frozenset, j: int, i: int) -> QVector:
        """``T(I*, j) e_i``, cached."""
        key = (s, j, i)
        out = self._images.get(key)
        if out is None:
            out = self.operators[(s, j)].apply(self.family[i])
            self._images[key] = out
        return out

    def images_span(self, s: frozenset, js: Iterable[int], idx: Iterable[int]) -> Subspace:
        idx = sorted(idx)
        return Subspace.span(self.image(s, j, i) for j in sorted(js) for i in idx)


@dataclass(frozen=True)
class SubsetReport:
    subset: tuple[int, ...]
    u: int
    G: tuple[int, ...]
    growth_rank: int  # dim(span{T(I*, j) e_u : j} + V)
    D: int  # dim(span{T(I*, j') e_i' : J0 x G} + V)
    K4: int
    cond5_failures: tuple[tuple[int, int], ...] = ()

    @property
    def growth_ok(self) -> bool:
        return self.growth_rank > self.D


@dataclass(frozen=True)
class ConditionReport:
    conditions: tuple[bool, bool, bool, bool, bool]
    failures: tuple[str, ...]
    reach: tuple[int | None, ...]
    subsets: tuple[SubsetReport, ...]
    j_window: int
    dim_V: int

    @property
    def all_pass(self) -> bool:
        return all(self.conditions)

    def lines(self) -> list[str]:
        out = []
        for k, ok in enumerate(self.conditions, 1):
            out.append(f"condition {k}: {'pass' if ok else 'FAIL'}")
        reached = [n for n in self.reach if n is not None]
        out.append(f"reach steps: max {max(reached) if reached else '-'} over {self.j_window} indices")
        for r in self.subsets:
            out.append(
                f"I*={list(r.subset)} u={r.u} |G|={len(r.G)} rank={r.growth_rank} D={r.D} K4={r.K4}"
            )
        out.extend(f"failure: {f}" for f in self.failures)
        return out


def _check_subset(inst: GeneralInstance, s: frozenset, failures: list[str]) -> tuple[SubsetReport, bool]:
    """Conditions 4 and 5 for one subset, assuming condition 2 held."""
    R = inst.control
    u = inst.scheme.u[s]
    G = inst.scheme.G[s]
    rest = sorted(G - {u})
    V = inst.V
    base = inst.images_span(s, R.J0, G) + V
    growth = Subspace.span(inst.image(s, j, u) for j in range(R.window)) + V
    K4 = R.window - (growth.dim - V.dim)
    bad5 = []
    for j in range(R.window):
        target = inst.images_span(s, R.image({j}), G) + V
        for i in rest:
            if not target.contains(inst.image(s, j, i)):
                bad5.append((j, i))
    rep = SubsetReport(tuple(sorted(s)), u, tuple(sorted(G)), growth.dim, base.dim, K4, tuple(bad5))
    if not rep.growth_ok:
        failures.append(f"condition 4 at I*={sorted(s)}: rank {growth.dim} <= D = {base.dim}")
    if bad5:
        j, i = bad5[0]
        failures.append(f"condition 5 at I*={sorted(s)}, j={j}, i={i}")
    return rep, not bad5


def check_conditions(inst: GeneralInstance) -> ConditionReport:
    failures: list[str] = []
    R = inst.control

    problems = inst.scheme.violations()
    problems += [
        f"G({sorted(s)}) has indices outside the family"
        for s in inst.subsets
        if not inst.scheme.G[s] <= set(inst.family)
    ]
    c1 = not problems
    failures += [f"condition 1: {p}" for p in problems]

    c2 = True
    for s in inst.subsets:
        for j in range(R.window):
            if (s, j) not in inst.operators:
                c2 = False
                failures.append(f"condition 2: no operator for I*={sorted(s)}, j={j}")
                continue
            for i in sorted(inst.scheme.G[s] & set(inst.family)):
                try:
                    inst.image(s, j, i)
                except ValueError as e:
                    c2 = False
                    failures.append(f"condition 2: T(I*={sorted(s)}, {j}) e_{i}: {e}")

    c3 = R.base_closed()
    if not c3:
        failures.append(f"condition 3: R[J0] = {sorted(R.image(R.J0))} is not inside J0")
    reach: list[int | None] = []
    for j in range(R.window):
        try:
            reach.append(reach_steps(R, j))
        except ReachError as e:
            reach.append(None)
            c3 = False
            failures.append(str(e))

    reports = []
    c4 = c5 = c1 and c2
    if c1 and c2:
        for s in inst.subsets:
            rep, ok5 = _check_subset(inst, s, failures)
            reports.append(rep)
            c4 = c4 and rep.growth_ok
            c5 = c5 and ok5
    return ConditionReport(
        (c1, c2, c3, c4, c5), tuple(failures), tuple(reach), tuple(reports), R.window, inst.V.dim
    )


@dataclass(frozen=True)
class InductionReport:
    subset: tuple[int, ...]
    u: int
    rows: tuple[tuple[int, int, tuple[tuple[int, int], ...]], ...]  # (n, checked, failures)
    endgame_failures: tuple[int, ...]
    contradiction: tuple[int, int]  # (dim(span{T e_u} + V), D)
    growth_certified: bool

    @property
    def claim_holds(self) -> bool:
        return all(not f for _, _, f in self.rows)

    @property
    def endgame_holds(self) -> bool:
        return not self.endgame_failures

    @property
    def contained(self) -> bool:
        """The endgame containment forces the growth rank down to ``D``."""
        rank, D = self.contradiction
        return rank <= D

    def lines(self) -> list[str]:
        out = []
        for n, checked, bad in self.rows:
            status = "ok" if not bad else f"FAILED at (j, i) = {list(bad[:3])}"
            out.append(f"n={n}: {checked} memberships {status}")
        rank, D = self.contradiction
        eg = "ok" if self.endgame_holds else f"FAILED at j = {list(self.endgame_failures[:5])}"
        out.append(f"endgame: T(I*, j) e_{self.u} in J0 images + V for every j: {eg}")
        cert = "certified" if self.growth_certified else "not certified"
        out.append(f"rank pair: growth rank {rank} vs D = {D}; window growth {cert}")
        return out


def verify_induction_claim(
    inst: GeneralInstance, witness: DependenceWitness, n_max: int | None = None
) -> InductionReport:
    """Replay the induction over relation powers for the subset carrying ``witness``.

    Row ``n`` asserts, for every window ``j`` and every ``i`` in ``G \\ {u}``,
    ``T(I*, j) e_i in span{T(I*, j') e_i' : j' in R^n[j], i' in G} + V``.
    ``n_max`` defaults to the largest reach step on the window.
    """
    if not witness.verify(inst.family):
        raise ValueError("dependence witness does not vanish on the family")
    s = frozenset(witness.indices)
    if s not in inst.scheme.u:
        raise ValueError(f"the scheme does not tabulate the witness support {sorted(s)}")
    R = inst.control
    u = inst.scheme.u[s]
    G = inst.scheme.G[s]
    if u not in witness.coefficients:
        raise ValueError(f"u(I*) = {u} does not carry a coefficient of the witness")
    reach = [reach_steps(R, j) for j in range(R.window)]
    if n_max is None:
        n_max = max(reach)
    rest = sorted(G - {u})
    spans: dict[frozenset, Subspace] = {}

    def target(js: frozenset) -> Subspace:
        sp = spans.get(js)
        if sp is None:
            sp = inst.images_span(s, js, G) + inst.V
            spans[js] = sp
        return sp

    rows = []
    images = [frozenset({j}) for j in range(R.window)]
    for n in range(n_max + 1):
        bad = tuple(
            (j, i)
            for j in range(R.window)
            for i in rest
            if not target(images[j]).contains(inst.image(s, j, i))
        )
        rows.append((n, R.window * len(rest), bad))
        images = [R.image(S) for S in images]

    base = target(R.J0)
    end_bad = tuple(j for j in range(R.window) if not base.contains(inst.image(s, j, u)))
    growth = Subspace.span(inst.image(s, j, u) for j in range(R.window)) + inst.V
    return InductionReport(
        tuple(sorted(s)), u, tuple(rows), end_bad, (growth.dim, base.dim), growth.dim > base.dim
    )


# builders


def orbit_instance(
    operator: QMatrix,
    e0: QVector,
    index_window: int,
    j_window: int,
    subsets: Iterable[Iterable[int]] | None = None,
    V: Subspace | None = None,
) -> GeneralInstance:
    """``e_n = S^n e_0``, ``T(I*, m) = S^m``, ``u = max``, ``G = [0, max]``, shift relation."""
    family = {}
    v = e0
    for n in range(index_window):
        family[n] = v
        v = operator.apply(v)
    if subsets is None:
        subsets = _default_subsets(index_window)
    scheme = max_scheme(subsets)
    powers = [QMatrix.identity(operator.ncols)]
    for _ in range(1, j_window):
        powers.append(operator @ powers[-1])
    ops = {(s, m): powers[m] for s in scheme.subsets for m in range(j_window)}
    return GeneralInstance(family, scheme, ops, shift_relation(j_window), V or Subspace.zero())


def _default_subsets(window: int) -> list[frozenset]:
    if window <= 5:
        return _all_subsets(window)
    singles = [frozenset({i}) for i in range(window)]
    prefixes = [frozenset(range(k + 1)) for k in range(1, window)]
    return singles + prefixes


def _shift_matrix(dim: int) -> QMatrix:
    cols = [QVector.basis(k + 1) if k + 1 < dim else QVector.zero() for k in range(dim)]
    return QMatrix.from_columns(cols, dim)


def shift_example_instance(index_window: int = 5, j_window: int = 31) -> GeneralInstance:
    """Basis vectors moved by the coordinate shift on ``Q^(index_window + j_window)``."""
    S = _shift_matrix(index_window + j_window)
    return orbit_instance(S, QVector.basis(0), index_window, j_window)


def fibonacci_planted_instance(j_window: int = 8) -> tuple[GeneralInstance, DependenceWitness]:
    """Orbit of ``(1, 0)`` under ``(x, y) -> (y, x + y)``; ``e_2 = e_0 + e_1``."""
    S = QMatrix.from_rows([[0, 1], [1, 1]])
    inst = orbit_instance(S, QVector.basis(0), 3, j_window)
    return inst, DependenceWitness({0: 1, 1: 1, 2: -1})


def selfmap_orbit_instance(
    phi: SelfMapPresentation,
    index_window: int,
    j_window: int,
    subsets: Iterable[Iterable[int]] | None = None,
) -> GeneralInstance:
    """Family indexed along the orbit of a generator, ``T(I*, m) = S^m``.

    ``e_i`` is the basis vector numbered by the step at which the orbit of
    the generator reaches ``i``, so the coordinate shift ``S`` satisfies
    ``S e_i = e_phi(i)``.
    """
    a = find_generator(phi)
    if a is None:
        raise ValueError(f"no generator for {phi.describe()}")
    L = max(index_window, phi.tau)
    steps = {v: n for n, v in enumerate(trajectory(phi, a, L))}
    family = {i: QVector.basis(steps[i]) for i in range(index_window)}
    if subsets is None:
        subsets = _default_subsets(index_window)
    scheme = scheme_from_selfmap(phi, index_window, subsets)
    S = _shift_matrix(L + j_window)
    powers = [QMatrix.identity(S.ncols)]
    for _ in range(1, j_window):
        powers.append(S @ powers[-1])
    ops = {(s, m): powers[m] for s in scheme.subsets for m in range(j_window)}
    return GeneralInstance(family, scheme, ops, shift_relation(j_window))


# file format


def instance_to_data(inst: GeneralInstance, witness: DependenceWitness | None = None) -> dict:
    mats: list[QMatrix] = []
    index: dict[int, int] = {}
    ops = []
    for (s, j), m in sorted(inst.operators.items(), key=lambda kv: (sorted(kv[0][0]), kv[0][1])):
        k = index.get(id(m))
        if k is None:
            k = index[id(m)] = len(mats)
            mats.append(m)
        ops.append({"subset": sorted(s), "j": j, "matrix": k})
    data = {
        "family": [vector_to_literal(inst.family[i]) for i in sorted(inst.family)],
        "scheme": [
            {"subset": sorted(s), "u": inst.scheme.u[s], "G": sorted(inst.scheme.G[s])}
            for s in inst.subsets
        ],
        "matrices": [{"ncols": m.ncols, "rows": matrix_to_literal(m)} for m in mats],
        "operators": ops,
        "relation": {
            "pairs": sorted(list(p) for p in inst.control.pairs),
            "J0": sorted(inst.control.J0),
            "window": inst.control.window,
        },
        "V": [vector_to_literal(b) for b in inst.V.basis],
    }
    if witness is not None:
        data["witness"] = witness.to_literal()
    return data


def instance_from_data(data: Mapping) -> tuple[GeneralInstance, DependenceWitness | None]:
    try:
        family = {i: vector_from_literal(v) for i, v in enumerate(data["family"])}
        scheme = WindowScheme(
            {frozenset(e["subset"]): e["u"] for e in data["scheme"]},
            {frozenset(e["subset"]): e["G"] for e in data["scheme"]},
        )
        mats = [matrix_from_literal(m["rows"], m["ncols"]) for m in data["matrices"]]
        ops = {(frozenset(o["subset"]), o["j"]): mats[o["matrix"]] for o in data["operators"]}
        rel = data["relation"]
        control = ControlRelation(
            frozenset(tuple(p) for p in rel["pairs"]), frozenset(rel["J0"]), rel["window"]
        )
        V = Subspace.span(vector_from_literal(v) for v in data.get("V", []))
        witness = data.get("witness")
        witness = DependenceWitness.from_literal(witness) if witness is not None else None
    except (KeyError, TypeError, IndexError) as e:
        raise ValueError(f"malformed general instance: {e!r}") from e
    return GeneralInstance(family, scheme, ops, control, V), witness


def dump_instance(inst: GeneralInstance, witness: DependenceWitness | None = None) -> str:
    return json.dumps(instance_to_data(inst, witness), sort_keys=True)


def load_instance(text: str) -> tuple[GeneralInstance, DependenceWitness | None]:
    return instance_from_data(json.loads(text))


def family_is_free(inst: GeneralInstance) -> bool:
    return dependence_witness([inst.family[i] for i in sorted(inst.family)]) is None
