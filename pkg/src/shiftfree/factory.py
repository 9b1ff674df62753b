"""Dependent families that still satisfy ``T e_i = e_phi(i)``.

When ``phi`` has no full orbit, a family over the naturals can satisfy the
shift relation and span an infinite-dimensional space while being dependent.
Two constructions produce one, on a finite window:

``zero-on-orbit``
    Some orbit ``Orb(a)`` has an infinite complement.  Put ``e_i = 0`` on the
    orbit and give the complement fresh basis vectors, enumerated in
    increasing order.  ``e_a = 0`` is the dependence.  The rank over the
    window ``[0, w)`` is exactly ``w - K`` with ``K = |Orb(a) ∩ [0, w)|``,
    and it grows without bound in ``w`` because the complement is infinite.

``graded-by-meeting``
    Every orbit is cofinite but none is everything.  Fix ``a`` with the
    smallest complement ``C``.  Each ``i`` meets the orbit of ``a``:
    ``phi^m(i) = phi^n(a)`` with ``(m, n)`` minimal, and ``n >= m``.  Put
    ``e_i`` equal to basis vector ``n - m`` and let ``T`` shift the basis.
    Any ``b`` in ``C`` then repeats the vector of ``phi^(n-m)(a)``.  Orbit
    indices receive pairwise distinct grades, so the window rank is at
    least ``w - K`` with ``K = |C|``.

In both cases the operator matrix is exact on every family index whose image
index is also in the stored family; the stored family extends past the
window far enough to contain ``phi(i)`` for each window index ``i``.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .ratlin import DependenceWitness, QMatrix, QVector, rank
from .selfmap import (
    MeetingIndices,
    SelfMapPresentation,
    evaluate,
    find_generator,
    iterate,
    meeting_indices,
    orbit_report,
)
from .shiftcheck import PhiShiftInstance, phi_instance_to_data

__all__ = [
    "ZERO_ON_ORBIT",
    "GRADED_BY_MEETING",
    "PreconditionError",
    "CounterexampleBundle",
    "BundleCheck",
    "build_zero_orbit",
    "build_graded",
    "refute_P",
    "check_bundle",
    "bundle_to_data",
]

ZERO_ON_ORBIT = "zero-on-orbit"
GRADED_BY_MEETING = "graded-by-meeting"


class PreconditionError(ValueError):
    pass


@dataclass(frozen=True)
class CounterexampleBundle:
    construction: str
    phi: SelfMapPresentation
    anchor: int
    family: dict[int, QVector]
    operator: QMatrix
    dependence: DependenceWitness
    window: int
    K: int
    meetings: dict[int, MeetingIndices] = field(default_factory=dict)

    def instance(self) -> PhiShiftInstance:
        return PhiShiftInstance(self.phi, self.family, self.operator)

    def grade(self, i: int) -> int:
        mi = self.meetings[i]
        return mi.n - mi.m


@dataclass(frozen=True)
class BundleCheck:
    window: int
    shift_violations: tuple[int, ...]
    dependence_exact: bool
    window_rank: int
    K: int

    @property
    def shift_compatible(self) -> bool:
        return not self.shift_violations

    @property
    def rank_ok(self) -> bool:
        return self.window_rank >= self.window - self.K

    @property
    def ok(self) -> bool:
        return self.shift_compatible and self.dependence_exact and self.rank_ok


def check_bundle(bundle: CounterexampleBundle) -> BundleCheck:
    """Shift compatibility on the window, exact dependence, rank >= w - K."""
    inst = bundle.instance()
    w = bundle.window
    bad = tuple(inst.violations(upto=w))
    unchecked = [i for i in range(w) if evaluate(bundle.phi, i) >= inst.size]
    if unchecked:
        raise AssertionError(f"stored family does not reach phi(i) for window indices {unchecked[:5]}")
    dep = all(i < w for i in bundle.dependence.indices) and bundle.dependence.verify(bundle.family)
    r = rank([bundle.family[i] for i in range(w)])
    return BundleCheck(w, bad, dep, r, bundle.K)


def _extent(phi: SelfMapPresentation, window: int, extra: int = 0) -> int:
    return max([window, extra] + [evaluate(phi, i) + 1 for i in range(window)])


def _report_window(phi: SelfMapPresentation, *bounds: int) -> int:
    return max((phi.tau + phi.tail_offset + 1,) + bounds)


def build_zero_orbit(phi: SelfMapPresentation, a: int, window: int) -> CounterexampleBundle:
    if a >= window:
        raise PreconditionError(f"anchor {a} must lie inside the window [0, {window})")
    extent = _extent(phi, window)
    rep = orbit_report(phi, a, _report_window(phi, extent))
    if rep.cofinite:
        raise PreconditionError(
            f"Orb({a}) has finite complement {list(rep.complement_window)}; zero-on-orbit needs an infinite one"
        )
    comp = [i for i in range(extent) if not rep.contains(i)]
    if not any(i < window for i in comp):
        raise PreconditionError(f"complement of Orb({a}) is empty within the window")
    u = {i: k for k, i in enumerate(comp)}
    family = {
        i: QVector.basis(u[i]) if i in u else QVector.zero() for i in range(extent)
    }
    columns = []
    for i in comp:
        j = evaluate(phi, i)
        # past the stored family the image is not represented; only indices
        # outside the window can hit this
        columns.append(family[j] if j < extent else QVector.zero())
    operator = QMatrix.from_columns(columns, len(comp))
    K = sum(1 for i in range(window) if rep.contains(i))
    return CounterexampleBundle(
        ZERO_ON_ORBIT, phi, a, family, operator, DependenceWitness({a: 1}), window, K
    )


def _all_orbits_cofinite(phi: SelfMapPresentation) -> bool:
    if phi.tail_offset != 1:
        return False
    w = _report_window(phi)
    return all(orbit_report(phi, a, w).cofinite for a in range(phi.tau + 1))


def _minimal_complement_anchor(phi: SelfMapPresentation) -> tuple[int, int]:
    w = _report_window(phi)
    sizes = [(orbit_report(phi, a, w).complement_size, a) for a in range(phi.tau + 1)]
    size, a = min(sizes)
    return a, size


def build_graded(phi: SelfMapPresentation, window: int) -> CounterexampleBundle:
    if not _all_orbits_cofinite(phi):
        raise PreconditionError("graded construction needs every orbit to be cofinite")
    if find_generator(phi) is not None:
        raise PreconditionError("phi has a full orbit; there is nothing to refute")
    a, K = _minimal_complement_anchor(phi)
    top = max([phi.tau] + list(phi.exceptions.values()))
    rep = orbit_report(phi, a, _report_window(phi, top + 1))
    comp = list(rep.complement_window)
    if not comp or comp[0] >= window:
        raise PreconditionError(f"no index outside Orb({a}) lies in the window [0, {window})")
    extent = _extent(phi, window)
    bound = 2 * (extent + top + phi.tau) + 4

    def meet(i: int) -> MeetingIndices:
        mi = meeting_indices(phi, a, i, bound)
        if mi is None:
            raise RuntimeError(f"no meeting of {i} with Orb({a}) within {bound} steps")
        if mi.n < mi.m:
            raise AssertionError(f"meeting of {i} has n < m: {mi}")
        return mi

    b = comp[0]
    mb = meet(b)
    # orbit index phi^k(a) carries grade k, so e_b repeats phi^(n-m)(a)
    target = iterate(phi, a, mb.n - mb.m)
    extent = max(extent, target + 1)
    meetings = {i: meet(i) for i in range(extent)}
    grades = {i: mi.n - mi.m for i, mi in meetings.items()}
    dim = max(grades.values()) + 1
    family = {i: QVector.basis(g) for i, g in grades.items()}
    operator = QMatrix.from_columns(
        [QVector.basis(k + 1) if k + 1 < dim else QVector.zero() for k in range(dim)], dim
    )
    dependence = DependenceWitness({b: 1, target: -1})
    return CounterexampleBundle(
        GRADED_BY_MEETING, phi, a, family, operator, dependence, window, K, meetings
    )


def refute_P(phi: SelfMapPresentation, window: int) -> CounterexampleBundle:
    """Finite-window refutation for a map without a full orbit.

    Raises ``PreconditionError`` when ``phi`` has a generator: then every
    shift-compatible family spanning an infinite-dimensional space is free
    and no refutation exists.
    """
    g = find_generator(phi)
    if g is not None:
        raise PreconditionError(f"P holds for this map: {g} generates every natural number")
    w = _report_window(phi)
    for a in range(phi.tau + 1):
        if not orbit_report(phi, a, w).cofinite:
            return build_zero_orbit(phi, a, window)
    return build_graded(phi, window)


def bundle_to_data(bundle: CounterexampleBundle) -> dict:
    """Instance file readable by ``check-shift``, plus the bundle bookkeeping."""
    data = phi_instance_to_data(bundle.instance())
    data.update(
        construction=bundle.construction,
        anchor=bundle.anchor,
        window=bundle.window,
        K=bundle.K,
        dependence=bundle.dependence.to_literal(),
    )
    return data
