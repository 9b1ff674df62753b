"""Eventually-affine self-maps of the naturals and their forward orbits.

A presentation consists of a finite exception table and a tail offset ``c``::

    phi(n) = exceptions[n]   if n is an exception
    phi(n) = n + c           otherwise

with ``tau`` one past the largest exception.  Every question asked here is
decided exactly for this class:

* Starting from ``a`` the trajectory either cycles among values below
  ``tau`` (finite orbit) or reaches some value ``v >= tau``.  From then on it
  is ``v, v + c, v + 2c, ...``, which is a fixed point when ``c == 0`` and
  infinite otherwise.
* An infinite orbit is cofinite iff ``c == 1``: with ``c == 1`` it contains
  ``[v, inf)``, with ``c >= 2`` it misses every other residue class mod ``c``
  above ``v``.  The complement is then the finite set of naturals below
  ``v`` that the pre-tail part of the trajectory never visits.
* A generator (an ``a`` with full orbit) must be ``0`` or ``< tau``: a start
  ``a >= tau`` never goes below ``a`` again, so it misses ``0`` unless
  ``a == 0``.  Scanning ``a <= tau`` is therefore a complete search.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Mapping

__all__ = [
    "SelfMapPresentation",
    "OrbitReport",
    "ConjugacyWitness",
    "MeetingIndices",
    "SUCC",
    "evaluate",
    "iterate",
    "trajectory",
    "orbit_report",
    "find_generator",
    "conjugacy_witness",
    "meeting_indices",
    "load_map",
    "map_from_data",
    "map_to_data",
    "dump_map",
]


@dataclass(frozen=True)
class SelfMapPresentation:
    exceptions: Mapping[int, int] = field(default_factory=dict)
    tail_offset: int = 1

    def __post_init__(self):
        exc = {}
        for k, v in dict(self.exceptions).items():
            k, v = int(k), int(v)
            if k < 0 or v < 0:
                raise ValueError(f"exception {k}->{v} is not a map on the naturals")
            exc[k] = v
        if self.tail_offset < 0:
            raise ValueError("tail_offset must be a natural number")
        object.__setattr__(self, "exceptions", dict(sorted(exc.items())))

    @property
    def tau(self) -> int:
        return max(self.exceptions) + 1 if self.exceptions else 0

    @property
    def c(self) -> int:
        return self.tail_offset

    def __call__(self, n: int) -> int:
        return evaluate(self, n)

    def __hash__(self):
        return hash((tuple(self.exceptions.items()), self.tail_offset))

    def describe(self) -> str:
        exc = ", ".join(f"{k}->{v}" for k, v in self.exceptions.items())
        return f"{{{exc}}} then n->n+{self.tail_offset} for n>={self.tau}"


SUCC = SelfMapPresentation({}, 1)


def evaluate(phi: SelfMapPresentation, n: int) -> int:
    if n < 0:
        raise ValueError("argument must be a natural number")
    if n in phi.exceptions:
        return phi.exceptions[n]
    return n + phi.tail_offset


def iterate(phi: SelfMapPresentation, a: int, k: int) -> int:
    """``phi`` applied ``k`` times to ``a``."""
    for _ in range(k):
        a = evaluate(phi, a)
    return a


def trajectory(phi: SelfMapPresentation, a: int, length: int) -> list[int]:
    out = []
    for _ in range(length):
        out.append(a)
        a = evaluate(phi, a)
    return out


@dataclass(frozen=True)
class OrbitReport:
    start: int
    kind: str  # "finite" or "infinite"
    period_entry: int | None
    period: int | None
    cofinite: bool
    complement_window: tuple[int, ...]
    full: bool
    window: int
    tail_start: int | None = None
    tail_index: int | None = None
    complement_size: int | None = None
    tail_step: int | None = None

    @property
    def finite(self) -> bool:
        return self.kind == "finite"

    def contains(self, n: int) -> bool:
        """Exact orbit membership (not limited to the window)."""
        if n < self.window:
            return n not in self.complement_window
        if self.kind == "finite":
            return False
        # n >= window > tau, so only the arithmetic tail can reach it
        return n >= self.tail_start and (n - self.tail_start) % self.tail_step == 0

    def rows(self) -> list[tuple[str, str]]:
        if self.kind == "finite":
            kind = f"finite (entry {self.period_entry}, period {self.period})"
        else:
            kind = "infinite"
        comp = ", ".join(map(str, self.complement_window)) or "-"
        return [
            ("start", str(self.start)),
            ("kind", kind),
            ("cofinite", "yes" if self.cofinite else "no"),
            ("full", "yes" if self.full else "no"),
            (f"missed below {self.window}", comp),
        ]


def _walk(phi: SelfMapPresentation, a: int):
    """Iterate until the trajectory cycles below tau or enters the tail.

    Returns ``(visited, cycle_entry)`` where ``visited`` is the trajectory
    prefix; ``cycle_entry`` is the index of the first repeated value or None
    when the last visited value is the tail start.
    """
    tau = phi.tau
    seen: dict[int, int] = {}
    visited: list[int] = []
    x = a
    while True:
        if x >= tau:
            visited.append(x)
            return visited, None
        if x in seen:
            return visited, seen[x]
        seen[x] = len(visited)
        visited.append(x)
        x = evaluate(phi, x)


def orbit_report(phi: SelfMapPresentation, a: int, window: int) -> OrbitReport:
    """Exact orbit classification; the complement is listed below ``window``."""
    tau, c = phi.tau, phi.tail_offset
    if window < tau + c + 1:
        raise ValueError(f"window {window} is below tau + c + 1 = {tau + c + 1}")
    visited, entry = _walk(phi, a)
    if entry is not None:
        orbit = set(visited)
        comp = tuple(n for n in range(window) if n not in orbit)
        return OrbitReport(a, "finite", entry, len(visited) - entry, False, comp, False, window)
    v = visited[-1]
    head = set(visited[:-1])
    if c == 0:
        # tail value is a fixed point
        orbit = head | {v}
        comp = tuple(n for n in range(window) if n not in orbit)
        return OrbitReport(a, "finite", len(visited) - 1, 1, False, comp, False, window)

    def member(n: int) -> bool:
        return n in head or (n >= v and (n - v) % c == 0)

    comp = tuple(n for n in range(window) if not member(n))
    cofinite = c == 1
    size = sum(1 for n in range(v) if n not in head) if cofinite else None
    return OrbitReport(
        a, "infinite", None, None, cofinite, comp, cofinite and size == 0, window,
        tail_start=v, tail_index=len(visited) - 1, complement_size=size, tail_step=c,
    )


def _min_window(phi: SelfMapPresentation) -> int:
    return phi.tau + phi.tail_offset + 1


def find_generator(phi: SelfMapPresentation, search_bound: int | None = None) -> int | None:
    """Least ``a <= search_bound`` whose orbit is all of the naturals.

    ``search_bound`` defaults to ``tau``; since any generator is ``<= tau``
    (see module docstring), a None answer with that bound is a proof that
    no generator exists.
    """
    tau = phi.tau
    if search_bound is None:
        search_bound = tau
    if search_bound < tau:
        raise ValueError(f"search_bound {search_bound} is below tau = {tau}")
    w = _min_window(phi)
    for a in range(search_bound + 1):
        if orbit_report(phi, a, w).full:
            return a
    return None


@dataclass(frozen=True)
class ConjugacyWitness:
    """``alpha(n) = phi^n(generator)`` on ``n < len(alpha)``."""

    generator: int
    alpha: tuple[int, ...]

    def covered_prefix(self) -> int:
        """Largest ``k`` with ``{0..k-1}`` contained in the listed values."""
        vals = set(self.alpha)
        k = 0
        while k in vals:
            k += 1
        return k

    def validate(self, phi: SelfMapPresentation) -> bool:
        """Injective, intertwines successor with ``phi``, onto an initial segment.

        For a full orbit the trajectory visits exactly ``{0..tau-1}`` during
        its first ``tau`` steps and continues by ``+1`` afterwards, so on a
        window ``W >= tau`` the values are exactly ``{0..W-1}``.
        """
        a = self.alpha
        if not a or a[0] != self.generator:
            return False
        if len(set(a)) != len(a):
            return False
        if any(evaluate(phi, a[n]) != a[n + 1] for n in range(len(a) - 1)):
            return False
        if len(a) >= phi.tau:
            return self.covered_prefix() == len(a)
        return max(a) < phi.tau

    def inverse(self) -> dict[int, int]:
        return {v: n for n, v in enumerate(self.alpha)}


def conjugacy_witness(phi: SelfMapPresentation, W: int) -> ConjugacyWitness | None:
    if W < 1:
        raise ValueError("W must be at least 1")
    a = find_generator(phi)
    if a is None:
        return None
    wit = ConjugacyWitness(a, tuple(trajectory(phi, a, W)))
    if not wit.validate(phi):
        raise AssertionError(f"conjugacy witness failed validation for {phi.describe()}")
    return wit


@dataclass(frozen=True)
class MeetingIndices:
    """``phi^m(b) == phi^n(a)`` with ``m + n`` minimal, then ``m`` minimal."""

    m: int
    n: int


def meeting_indices(
    phi: SelfMapPresentation, a: int, b: int, bound: int
) -> MeetingIndices | None:
    """Minimal pair with ``phi^m(b) == phi^n(a)`` and ``m + n <= bound``."""
    first_seen: dict[int, int] = {}
    for n, x in enumerate(trajectory(phi, a, bound + 1)):
        first_seen.setdefault(x, n)
    best: tuple[int, int] | None = None
    y = b
    for m in range(bound + 1):
        if best is not None and m > best[0]:
            break
        n = first_seen.get(y)
        if n is not None and m + n <= bound:
            key = (m + n, m)
            if best is None or key < best:
                best = key
        y = evaluate(phi, y)
    if best is None:
        return None
    s, m = best
    return MeetingIndices(m, s - m)


def load_map(text: str) -> SelfMapPresentation:
    """Parse ``{"exceptions": {"0": 0, "5": 2}, "tail_offset": 1}``."""
    return map_from_data(json.loads(text))


def map_from_data(data) -> SelfMapPresentation:
    if not isinstance(data, dict):
        raise ValueError("map file must hold a JSON object")
    unknown = set(data) - {"exceptions", "tail_offset"}
    if unknown:
        raise ValueError(f"unknown keys in map file: {sorted(unknown)}")
    exc = data.get("exceptions", {})
    if not isinstance(exc, dict):
        raise ValueError("'exceptions' must be an object")
    c = data.get("tail_offset", 1)
    if isinstance(c, bool) or not isinstance(c, int):
        raise ValueError("'tail_offset' must be an integer")
    parsed = {}
    for k, v in exc.items():
        try:
            key = int(k)
        except ValueError as e:
            raise ValueError(f"exception key {k!r} is not a natural number") from e
        if isinstance(v, bool) or not isinstance(v, int):
            raise ValueError(f"exception value {v!r} is not a natural number")
        parsed[key] = v
    return SelfMapPresentation(parsed, c)


def map_to_data(phi: SelfMapPresentation) -> dict:
    return {
        "exceptions": {str(k): v for k, v in phi.exceptions.items()},
        "tail_offset": phi.tail_offset,
    }


def dump_map(phi: SelfMapPresentation) -> str:
    return json.dumps(map_to_data(phi), sort_keys=True)
