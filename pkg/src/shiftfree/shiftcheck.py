"""Tail collapse for operator-shifted vector families over the rationals.

For a window ``e_0..e_N`` with ``T e_n = e_{n+1}`` the certified finite
statement is:

    if ``e_m`` is the first vector lying in the span of its predecessors, then
    every ``e_{m+n}`` with ``m + n <= N`` lies in ``span(e_0..e_{m-1})``.

Consequently a rank profile that grows at every step of the window means no
index in the window collapses; "infinite dimensional span" is read as "the
rank keeps growing across the supplied window".
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Sequence

from .ratlin import (
    DependenceWitness,
    EchelonBuilder,
    QMatrix,
    QVector,
    dependence_witness,
    matrix_from_literal,
    matrix_to_literal,
    vector_from_literal,
    vector_to_literal,
)
from .selfmap import ConjugacyWitness, SelfMapPresentation, evaluate, map_from_data, map_to_data

__all__ = [
    "ShiftInstance",
    "ShiftViolation",
    "PhiShiftInstance",
    "TailReport",
    "TransferReport",
    "first_dependent_index",
    "verify_tail_collapse",
    "transfer_independence",
    "shift_instance_to_data",
    "phi_instance_to_data",
    "instance_from_data",
]


class ShiftViolation(ValueError):
    """``T e_n != e_{n+1}``; ``index`` is the first such ``n``."""

    def __init__(self, index: int):
        super().__init__(f"T e_{index} != e_{index + 1}")
        self.index = index


@dataclass(frozen=True)
class ShiftInstance:
    vectors: tuple[QVector, ...]
    operator: QMatrix

    def __post_init__(self):
        object.__setattr__(self, "vectors", tuple(self.vectors))
        if not self.vectors:
            raise ValueError("a shift instance needs at least e_0")
        bad = self.violation()
        if bad is not None:
            raise ShiftViolation(bad)

    @classmethod
    def orbit(cls, operator: QMatrix, e0: QVector, N: int) -> "ShiftInstance":
        """``e_n = T^n e_0`` for ``n <= N``."""
        vs = [e0]
        for _ in range(N):
            vs.append(operator.apply(vs[-1]))
        return cls(tuple(vs), operator)

    @property
    def window(self) -> int:
        return len(self.vectors) - 1

    def violation(self) -> int | None:
        for n in range(len(self.vectors) - 1):
            if self.operator.apply(self.vectors[n]) != self.vectors[n + 1]:
                return n
        return None


def _profile(vectors: Sequence[QVector]):
    """Rank profile ``r(k) = rank(e_0..e_{k-1})`` and first dependent index.

    Also returns the span of ``e_0..e_{m-1}`` frozen at the first collapse.
    """
    eb = EchelonBuilder()
    prof = [0]
    first = None
    frozen = None
    for m, v in enumerate(vectors):
        if first is None and v in eb:
            first = m
            frozen = eb.space
        eb.add(v)
        prof.append(eb.rank)
    return prof, first, frozen


def first_dependent_index(inst: ShiftInstance) -> int | None:
    return _profile(inst.vectors)[1]


@dataclass(frozen=True)
class TailReport:
    window: int
    first_dependent: int | None
    rank_profile: tuple[int, ...]
    tail_verified: bool
    tail_failures: tuple[int, ...] = ()

    @property
    def free(self) -> bool:
        return self.first_dependent is None

    @property
    def consistent(self) -> bool:
        steps_ok = all(
            self.rank_profile[k + 1] - self.rank_profile[k] in (0, 1)
            for k in range(len(self.rank_profile) - 1)
        )
        full_rank = self.rank_profile[-1] == self.window + 1
        return self.tail_verified and steps_ok and (not full_rank or self.free)

    def lines(self) -> list[str]:
        prof = " ".join(map(str, self.rank_profile))
        if self.free:
            head = f"no collapse; rank r(k)=k for k<={self.window + 1}"
        else:
            m = self.first_dependent
            status = "verified" if self.tail_verified else f"FAILED at {list(self.tail_failures)}"
            head = f"first dependent index m={m}; tail e_{m}..e_{self.window} in span(e_0..e_{m - 1}): {status}"
        return [head, f"rank profile: {prof}"]


def verify_tail_collapse(inst: ShiftInstance | Sequence[QVector]) -> TailReport:
    vectors = inst.vectors if isinstance(inst, ShiftInstance) else tuple(inst)
    prof, first, span = _profile(vectors)
    failures: tuple[int, ...] = ()
    if first is not None:
        failures = tuple(k for k in range(first, len(vectors)) if not span.contains(vectors[k]))
    return TailReport(len(vectors) - 1, first, tuple(prof), not failures, failures)


@dataclass(frozen=True)
class PhiShiftInstance:
    """Family indexed by ``0..L-1`` with ``T e_i = e_phi(i)`` where ``phi(i) < L``."""

    phi: SelfMapPresentation
    family: Mapping[int, QVector]
    operator: QMatrix

    def __post_init__(self):
        fam = dict(sorted(self.family.items()))
        if list(fam) != list(range(len(fam))):
            raise ValueError("family must be indexed by 0..L-1")
        object.__setattr__(self, "family", fam)

    @property
    def size(self) -> int:
        return len(self.family)

    def violations(self, upto: int | None = None) -> list[int]:
        """Indices ``i < upto`` whose image index stays in the family but
        ``T e_i != e_phi(i)``."""
        upto = self.size if upto is None else upto
        bad = []
        for i in range(min(upto, self.size)):
            j = evaluate(self.phi, i)
            if j < self.size and self.operator.apply(self.family[i]) != self.family[j]:
                bad.append(i)
        return bad

    def checked_indices(self, upto: int | None = None) -> list[int]:
        upto = self.size if upto is None else upto
        return [i for i in range(min(upto, self.size)) if evaluate(self.phi, i) < self.size]

    def vectors(self, upto: int | None = None) -> list[QVector]:
        upto = self.size if upto is None else upto
        return [self.family[i] for i in range(min(upto, self.size))]


@dataclass(frozen=True)
class TransferReport:
    family_free: bool
    family_witness: DependenceWitness | None
    reindexed: TailReport
    covered: int
    covers_family: bool

    @property
    def agree(self) -> bool:
        return self.family_free == self.reindexed.free


def transfer_independence(inst: PhiShiftInstance, witness: ConjugacyWitness) -> TransferReport:
    """Reindex the family along the conjugacy and compare verdicts.

    ``f_n = e_alpha(n)`` for the longest prefix of ``alpha`` that stays in the
    family; both verdicts are about the indices that prefix hits, which is the
    whole family whenever ``len(alpha) >= size >= tau``.
    """
    if not witness.validate(inst.phi):
        raise ValueError("conjugacy witness does not match phi")
    if inst.violations():
        raise ValueError(f"T e_i != e_phi(i) at {inst.violations()[:5]}")
    hit = []
    for v in witness.alpha:
        if v >= inst.size:
            break
        hit.append(v)
    if not hit:
        raise ValueError("conjugacy window does not reach into the family")
    reindexed = [inst.family[i] for i in hit]
    # T f_n = e_phi(alpha(n)) = e_alpha(n+1) = f_{n+1}
    tail = verify_tail_collapse(ShiftInstance(tuple(reindexed), inst.operator))
    sub = sorted(hit)
    w = dependence_witness([inst.family[i] for i in sub])
    if w is not None:
        w = DependenceWitness({sub[k]: c for k, c in w.coefficients.items()})
    covers = set(hit) == set(range(inst.size))
    return TransferReport(w is None, w, tail, len(hit), covers)


# instance files


def shift_instance_to_data(inst: ShiftInstance) -> dict:
    return {
        "dim": inst.operator.ncols,
        "operator": matrix_to_literal(inst.operator),
        "vectors": [vector_to_literal(v) for v in inst.vectors],
    }


def phi_instance_to_data(inst: PhiShiftInstance) -> dict:
    return {
        "dim": inst.operator.ncols,
        "map": map_to_data(inst.phi),
        "operator": matrix_to_literal(inst.operator),
        "family": [vector_to_literal(inst.family[i]) for i in range(inst.size)],
    }


def _operator(data: Mapping) -> QMatrix:
    dim = data.get("dim")
    if dim is not None and (isinstance(dim, bool) or not isinstance(dim, int) or dim < 0):
        raise ValueError("'dim' must be a natural number")
    return matrix_from_literal(data["operator"], dim)


def instance_from_data(data: Mapping) -> ShiftInstance | PhiShiftInstance:
    """Plain instances carry ``vectors``; indexed ones carry ``map`` and ``family``."""
    if not isinstance(data, Mapping):
        raise ValueError("instance file must hold a JSON object")
    try:
        op = _operator(data)
        if "map" in data:
            phi = map_from_data(data["map"])
            fam = {i: vector_from_literal(v) for i, v in enumerate(data["family"])}
            return PhiShiftInstance(phi, fam, op)
        return ShiftInstance(tuple(vector_from_literal(v) for v in data["vectors"]), op)
    except KeyError as e:
        raise ValueError(f"instance file is missing key {e}") from e
