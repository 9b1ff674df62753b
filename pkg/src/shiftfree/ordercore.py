"""Finite preorders, join-semilattices, projections, and the three
order-theoretic lemmas as executable checks.

Elements of every carrier are ``0..size-1``.  Sequences over a carrier are
given as eventually periodic presentations (a prefix followed by a repeated
cycle); a property relating consecutive terms then holds for *all* ``n`` iff
it holds for ``n`` below ``len(prefix) + len(cycle)``, because from the
prefix on the pair ``(x[n], x[n+1])`` is itself periodic.  Joint properties
of two sequences are checked up to ``max(prefixes) + lcm(cycles)``.  So the
``for all n`` quantifiers in the lemmas are decided exactly, not sampled.
"""

from __future__ import annotations

import hashlib
import json
import random
from dataclasses import dataclass, field
from functools import reduce
from math import lcm
from typing import Callable, Sequence

__all__ = [
    "FinitePreorder",
    "JoinSemilattice",
    "Projection",
    "EventuallyPeriodicSeq",
    "DoubleSequence",
    "CheckResult",
    "validate_monotone",
    "check_orbit_bound",
    "check_double_bound",
    "check_tail_bound",
    "random_preorder",
    "random_semilattice",
    "random_projection",
    "random_monotone",
    "structure_hash",
    "LemmaInstance",
    "generate_instance",
    "run_batch",
    "LEMMAS",
    "BatchReport",
]


class FinitePreorder:
    """Reflexive, transitive relation on ``range(size)`` given as a table."""

    def __init__(self, leq: Sequence[Sequence[bool]]):
        self.leq = tuple(tuple(bool(x) for x in row) for row in leq)
        self.size = len(self.leq)
        if any(len(row) != self.size for row in self.leq):
            raise ValueError("leq table must be square")
        for a in range(self.size):
            if not self.leq[a][a]:
                raise ValueError(f"not reflexive at {a}")
        for a in range(self.size):
            for b in range(self.size):
                if self.leq[a][b]:
                    for c in range(self.size):
                        if self.leq[b][c] and not self.leq[a][c]:
                            raise ValueError(f"not transitive: {a}<={b}<={c} but not {a}<={c}")

    @classmethod
    def from_pairs(cls, size: int, pairs) -> "FinitePreorder":
        """Reflexive-transitive closure of the given ``(a, b)`` pairs."""
        t = [[a == b for b in range(size)] for a in range(size)]
        for a, b in pairs:
            t[a][b] = True
        for k in range(size):
            for i in range(size):
                if t[i][k]:
                    for j in range(size):
                        if t[k][j]:
                            t[i][j] = True
        return cls(t)

    def le(self, a: int, b: int) -> bool:
        return self.leq[a][b]

    def elements(self) -> range:
        return range(self.size)

    def below(self, x: int) -> list[int]:
        return [y for y in range(self.size) if self.leq[y][x]]

    def above(self, x: int) -> list[int]:
        return [y for y in range(self.size) if self.leq[x][y]]

    def is_antisymmetric(self) -> bool:
        return all(
            a == b or not (self.leq[a][b] and self.leq[b][a])
            for a in range(self.size) for b in range(self.size)
        )

    def pairs(self) -> list[list[int]]:
        return [[a, b] for a in range(self.size) for b in range(self.size) if self.leq[a][b]]


class JoinSemilattice(FinitePreorder):
    """Partial order in which every pair has a least upper bound."""

    def __init__(self, leq: Sequence[Sequence[bool]], join: Sequence[Sequence[int]] | None = None):
        super().__init__(leq)
        if not self.is_antisymmetric():
            raise ValueError("leq is not antisymmetric")
        n = self.size
        if join is None:
            join = [[self._lub(x, y) for y in range(n)] for x in range(n)]
        self.join_table = tuple(tuple(int(v) for v in row) for row in join)
        for x in range(n):
            for y in range(n):
                if self.join_table[x][y] != self._lub(x, y):
                    raise ValueError(f"join[{x}][{y}] is not the least upper bound")

    def _lub(self, x: int, y: int) -> int:
        ups = [z for z in range(self.size) if self.leq[x][z] and self.leq[y][z]]
        least = [z for z in ups if all(self.leq[z][w] for w in ups)]
        if not least:
            raise ValueError(f"{x} and {y} have no least upper bound")
        return least[0]

    def join(self, x: int, y: int) -> int:
        return self.join_table[x][y]

    def join_all(self, xs) -> int:
        return reduce(self.join, xs)


class Projection:
    """Monotone idempotent self-map of a preorder."""

    def __init__(self, table: Sequence[int], order: FinitePreorder):
        self.table = tuple(int(v) for v in table)
        if len(self.table) != order.size or any(not 0 <= v < order.size for v in self.table):
            raise ValueError("projection table does not map the carrier into itself")
        bad = _monotone_violation(self.table, order)
        if bad:
            raise ValueError(f"projection is not monotone at {bad}")
        for a in range(order.size):
            if self.table[self.table[a]] != self.table[a]:
                raise ValueError(f"projection is not idempotent at {a}")

    def __call__(self, x: int) -> int:
        return self.table[x]


def _monotone_violation(table: Sequence[int], order: FinitePreorder):
    for a in range(order.size):
        for b in range(order.size):
            if order.le(a, b) and not order.le(table[a], table[b]):
                return (a, b)
    return None


def validate_monotone(table: Sequence[int], order: FinitePreorder) -> tuple[int, ...]:
    table = tuple(int(v) for v in table)
    if len(table) != order.size or any(not 0 <= v < order.size for v in table):
        raise ValueError("map table does not map the carrier into itself")
    bad = _monotone_violation(table, order)
    if bad:
        raise ValueError(f"map is not monotone: {bad[0]} <= {bad[1]} but images are not ordered")
    return table


@dataclass(frozen=True)
class EventuallyPeriodicSeq:
    prefix: tuple[int, ...]
    cycle: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "prefix", tuple(self.prefix))
        object.__setattr__(self, "cycle", tuple(self.cycle))
        if not self.cycle:
            raise ValueError("cycle must be nonempty")

    @classmethod
    def constant(cls, x: int) -> "EventuallyPeriodicSeq":
        return cls((), (x,))

    def __call__(self, n: int) -> int:
        if n < len(self.prefix):
            return self.prefix[n]
        return self.cycle[(n - len(self.prefix)) % len(self.cycle)]

    @property
    def horizon(self) -> int:
        return len(self.prefix) + len(self.cycle)

    def shifted(self, k: int) -> "EventuallyPeriodicSeq":
        """The sequence ``n -> self(n + k)``."""
        if k <= len(self.prefix):
            return EventuallyPeriodicSeq(self.prefix[k:], self.cycle)
        r = (k - len(self.prefix)) % len(self.cycle)
        return EventuallyPeriodicSeq((), self.cycle[r:] + self.cycle[:r])

    def elements(self) -> list[int]:
        return list(self.prefix + self.cycle)

    def to_data(self) -> dict:
        return {"prefix": list(self.prefix), "cycle": list(self.cycle)}


def _joint_horizon(*seqs: EventuallyPeriodicSeq) -> int:
    return max(len(s.prefix) for s in seqs) + lcm(*(len(s.cycle) for s in seqs))


@dataclass(frozen=True)
class DoubleSequence:
    """``a(m, n)``: rows indexed by ``m`` form an eventually periodic list of
    eventually periodic sequences in ``n``."""

    prefix_rows: tuple[EventuallyPeriodicSeq, ...]
    cycle_rows: tuple[EventuallyPeriodicSeq, ...]

    def __post_init__(self):
        object.__setattr__(self, "prefix_rows", tuple(self.prefix_rows))
        object.__setattr__(self, "cycle_rows", tuple(self.cycle_rows))
        if not self.cycle_rows:
            raise ValueError("cycle_rows must be nonempty")

    @classmethod
    def from_single(cls, e: EventuallyPeriodicSeq) -> "DoubleSequence":
        """``a(m, n) = e(m + n)``."""
        p = len(e.prefix)
        return cls(
            tuple(e.shifted(m) for m in range(p)),
            tuple(e.shifted(p + k) for k in range(len(e.cycle))),
        )

    def row(self, m: int) -> EventuallyPeriodicSeq:
        if m < len(self.prefix_rows):
            return self.prefix_rows[m]
        return self.cycle_rows[(m - len(self.prefix_rows)) % len(self.cycle_rows)]

    def __call__(self, m: int, n: int) -> int:
        return self.row(m)(n)

    def distinct_rows(self) -> tuple[EventuallyPeriodicSeq, ...]:
        return self.prefix_rows + self.cycle_rows

    def to_data(self) -> dict:
        return {
            "prefix_rows": [r.to_data() for r in self.prefix_rows],
            "cycle_rows": [r.to_data() for r in self.cycle_rows],
        }


@dataclass(frozen=True)
class CheckResult:
    hypotheses: bool
    conclusion: bool
    failed: tuple[str, ...] = ()
    counterexample: int | None = None

    @property
    def holds(self) -> bool:
        """The implication hypotheses => conclusion."""
        return not self.hypotheses or self.conclusion


def _all(pred: Callable[[int], bool], n: int) -> bool:
    return all(pred(k) for k in range(n))


def _first_failure(pred: Callable[[int], bool], n: int) -> int | None:
    return next((k for k in range(n) if not pred(k)), None)


def _result(hyps: dict[str, bool], concl_fail: int | None) -> CheckResult:
    failed = tuple(k for k, ok in hyps.items() if not ok)
    return CheckResult(not failed, concl_fail is None, failed, concl_fail)


def _check_increasing(order: FinitePreorder, b: EventuallyPeriodicSeq) -> None:
    if not _all(lambda n: order.le(b(n), b(n + 1)), b.horizon):
        raise ValueError("b is not increasing")


def check_orbit_bound(
    P: FinitePreorder, p: Projection, f: Sequence[int], a: EventuallyPeriodicSeq, b: int
) -> CheckResult:
    """Bounding a sequence by ``p(b)`` along a monotone map (preorder version)."""
    f = validate_monotone(f, P)
    le = P.le
    pb = p(b)
    hyps = {
        "f(p(b)) <= p(f(b))": le(f[pb], p(f[b])),
        "a(n+1) <= f(a(n)) for all n": _all(lambda n: le(a(n + 1), f[a(n)]), a.horizon),
        "f(b) <= a(0)": le(f[b], a(0)),
        "a(0) <= p(b)": le(a(0), pb),
    }
    return _result(hyps, _first_failure(lambda n: le(a(n), pb), a.horizon))


def check_double_bound(
    S: JoinSemilattice,
    p: Projection,
    f: Sequence[int],
    a: DoubleSequence,
    b: EventuallyPeriodicSeq,
    m_star: int,
) -> CheckResult:
    """Double-sequence version: bound row ``m_star`` by ``p(b(m_star))``."""
    f = validate_monotone(f, S)
    _check_increasing(S, b)
    le = S.le
    bm = b(m_star)
    pbm = p(bm)
    rows = a.distinct_rows()
    # (a(m, 0), b(m + 1)) is periodic in m once past both prefixes
    col0 = EventuallyPeriodicSeq(
        tuple(r(0) for r in a.prefix_rows), tuple(r(0) for r in a.cycle_rows)
    )
    hm = _joint_horizon(col0, b)
    row_star = a.row(m_star)
    hyps = {
        "a(m,0) <= p(b(m+1)) for all m": _all(lambda m: le(a(m, 0), p(b(m + 1))), hm),
        "f(p(b(m*))) <= p(f(b(m*)))": le(f[pbm], p(f[bm])),
        "a(m,n+1) <= f(a(m,n)) for all m, n": all(
            _all(lambda n, r=r: le(r(n + 1), f[r(n)]), r.horizon) for r in rows
        ),
        "f(b(m*)) <= join a(i,0), i <= m*": le(f[bm], S.join_all(a(i, 0) for i in range(m_star + 1))),
        "a(m*,0) <= p(b(m*))": le(row_star(0), pbm),
    }
    return _result(hyps, _first_failure(lambda n: le(row_star(n), pbm), row_star.horizon))


def check_tail_bound(
    S: JoinSemilattice,
    p: Projection,
    f: Sequence[int],
    e: EventuallyPeriodicSeq,
    b: EventuallyPeriodicSeq,
    m_star: int,
) -> CheckResult:
    """Once ``e(m*)`` falls below ``p(b(m*))``, the whole tail stays there."""
    f = validate_monotone(f, S)
    _check_increasing(S, b)
    le = S.le
    bm = b(m_star)
    pbm = p(bm)
    h = _joint_horizon(e, b)
    hyps = {
        "e(n) <= p(b(n+1)) for all n": _all(lambda n: le(e(n), p(b(n + 1))), h),
        "f(p(b(m*))) <= p(f(b(m*)))": le(f[pbm], p(f[bm])),
        "e(n+1) <= f(e(n)) for all n": _all(lambda n: le(e(n + 1), f[e(n)]), e.horizon),
        "f(b(m*)) <= join e(i), i <= m*": le(f[bm], S.join_all(e(i) for i in range(m_star + 1))),
        "e(m*) <= p(b(m*))": le(e(m_star), pbm),
    }
    return _result(hyps, _first_failure(lambda n: le(e(m_star + n), pbm), e.horizon))


# ---------------------------------------------------------------------------
# seeded generators


def random_preorder(rng: random.Random, size_bound: int = 6) -> FinitePreorder:
    """Closure of random pairs, with a top element so upper bounds exist."""
    n = rng.randint(1, size_bound)
    top = n - 1
    pairs = [(a, top) for a in range(n)]
    density = rng.choice([0.1, 0.25, 0.4])
    pairs += [(a, b) for a in range(n - 1) for b in range(n - 1) if a != b and rng.random() < density]
    return FinitePreorder.from_pairs(n, pairs)


def _union_closed(rng: random.Random, size_bound: int) -> list[frozenset]:
    """Add random subsets of a small ground set while the union closure fits."""
    ground = rng.randint(2, 4)
    target = rng.randint(min(2, size_bound), size_bound)
    fam = {frozenset(x for x in range(ground) if rng.random() < 0.5)}
    for _ in range(4 * size_bound):
        if len(fam) >= target:
            break
        g = frozenset(x for x in range(ground) if rng.random() < 0.5)
        grown = fam | {g} | {g | x for x in fam}
        if len(grown) <= size_bound:
            fam = grown
    return sorted(fam, key=lambda s: (len(s), sorted(s)))


def random_semilattice(seed, size_bound: int = 6) -> JoinSemilattice:
    """A union-closed family of small sets ordered by inclusion.

    Every finite join-semilattice arises this way up to isomorphism, and the
    union is the join, so the tables are correct by construction (they are
    still re-validated by the constructor).
    """
    rng = seed if isinstance(seed, random.Random) else random.Random(seed)
    fam = _union_closed(rng, size_bound)
    idx = {s: i for i, s in enumerate(fam)}
    leq = [[x <= y for y in fam] for x in fam]
    join = [[idx[x | y] for y in fam] for x in fam]
    return JoinSemilattice(leq, join)


def random_monotone(rng: random.Random, order: FinitePreorder) -> tuple[int, ...]:
    """Random map, repaired upward until monotone.

    A violation ``x <= y`` with ``f(x) !<= f(y)`` is fixed by moving ``f(y)``
    to a common upper bound, which strictly raises it; the carrier is finite
    so the loop terminates.  Carriers from the generators above always have
    a top element, so a common upper bound exists.
    """
    n = order.size
    f = [rng.randrange(n) for _ in range(n)]
    while True:
        bad = _monotone_violation(f, order)
        if bad is None:
            return tuple(f)
        x, y = bad
        ups = [z for z in range(n) if order.le(f[x], z) and order.le(f[y], z)]
        f[y] = rng.choice(ups)


def random_projection(seed, S: FinitePreorder) -> Projection:
    """Random monotone idempotent map; deterministic per seed."""
    rng = seed if isinstance(seed, random.Random) else random.Random(seed)
    n = S.size
    for _ in range(40):
        strategy = rng.random()
        if strategy < 0.1:
            k = rng.randrange(n)
            table = [k] * n
        elif strategy < 0.15:
            table = list(range(n))
        else:
            image = {x for x in range(n) if rng.random() < 0.5}
            image |= {max(range(n), key=lambda z: sum(S.le(w, z) for w in range(n)))}
            upward = strategy < 0.75
            table = []
            for x in range(n):
                if upward:
                    cands = [k for k in image if S.le(x, k)]
                    best = [k for k in cands if all(S.le(k, w) for w in cands)]
                else:
                    cands = [k for k in image if S.le(k, x)]
                    best = [k for k in cands if all(S.le(w, k) for w in cands)]
                if not best:
                    break
                table.append(min(best))
            if len(table) < n:
                continue
        try:
            return Projection(table, S)
        except ValueError:
            continue
    return Projection(list(range(n)), S)


def structure_hash(S: FinitePreorder) -> str:
    data = {"leq": [[int(x) for x in row] for row in S.leq]}
    if isinstance(S, JoinSemilattice):
        data["join"] = [list(row) for row in S.join_table]
    return hashlib.sha256(json.dumps(data, sort_keys=True).encode()).hexdigest()[:16]


def _rho(step: Callable[[int], int], x0: int) -> EventuallyPeriodicSeq:
    """Eventually periodic presentation of ``x0, step(x0), ...`` on a finite set."""
    seen: dict[int, int] = {}
    out: list[int] = []
    x = x0
    while x not in seen:
        seen[x] = len(out)
        out.append(x)
        x = step(x)
    k = seen[x]
    return EventuallyPeriodicSeq(tuple(out[:k]), tuple(out[k:]))


def _random_seq(rng: random.Random, n: int) -> EventuallyPeriodicSeq:
    return EventuallyPeriodicSeq(
        tuple(rng.randrange(n) for _ in range(rng.randint(0, 3))),
        tuple(rng.randrange(n) for _ in range(rng.randint(1, 3))),
    )


def _step_function(rng: random.Random, choices: Callable[[int], list[int]], n: int):
    """A fixed random choice per state, so iterating it gives a rho shape."""
    table = {}
    for x in range(n):
        c = choices(x)
        if not c:
            return None
        table[x] = rng.choice(c)
    return table.__getitem__


def _increasing_seq(rng: random.Random, S: JoinSemilattice) -> EventuallyPeriodicSeq:
    x = rng.randrange(S.size)
    out = [x]
    for _ in range(rng.randint(0, 3)):
        x = S.join(x, rng.randrange(S.size))
        out.append(x)
    return EventuallyPeriodicSeq(tuple(out[:-1]), (out[-1],))


@dataclass
class LemmaInstance:
    lemma: str
    order: FinitePreorder
    p: Projection
    f: tuple[int, ...]
    args: dict = field(default_factory=dict)
    constructive: bool = False

    def check(self) -> CheckResult:
        if self.lemma == "orbit":
            return check_orbit_bound(self.order, self.p, self.f, self.args["a"], self.args["b"])
        if self.lemma == "double":
            return check_double_bound(
                self.order, self.p, self.f, self.args["a"], self.args["b"], self.args["m_star"]
            )
        return check_tail_bound(
            self.order, self.p, self.f, self.args["e"], self.args["b"], self.args["m_star"]
        )

    def to_data(self) -> dict:
        data = {
            "lemma": self.lemma,
            "size": self.order.size,
            "leq": self.order.pairs(),
            "projection": list(self.p.table),
            "map": list(self.f),
        }
        for k, v in self.args.items():
            data[k] = v.to_data() if hasattr(v, "to_data") else v
        return data


def instance_from_data(data: dict) -> LemmaInstance:
    lemma = str(data["lemma"])
    size = int(data["size"])
    base = FinitePreorder.from_pairs(size, [tuple(p) for p in data["leq"]])
    order = base if lemma == "orbit" else JoinSemilattice(base.leq)
    p = Projection(data["projection"], order)
    f = validate_monotone(data["map"], order)

    def seq(d):
        return EventuallyPeriodicSeq(tuple(d["prefix"]), tuple(d["cycle"]))

    if lemma == "orbit":
        args = {"a": seq(data["a"]), "b": int(data["b"])}
    elif lemma == "double":
        a = DoubleSequence(
            tuple(seq(r) for r in data["a"]["prefix_rows"]),
            tuple(seq(r) for r in data["a"]["cycle_rows"]),
        )
        args = {"a": a, "b": seq(data["b"]), "m_star": int(data["m_star"])}
    elif lemma == "tail":
        args = {"e": seq(data["e"]), "b": seq(data["b"]), "m_star": int(data["m_star"])}
    else:
        raise ValueError(f"unknown lemma {lemma!r}")
    return LemmaInstance(lemma, order, p, f, args)


def _gen_orbit(rng: random.Random, constructive: bool) -> LemmaInstance:
    for _ in range(60):
        P = random_semilattice(rng) if rng.random() < 0.5 else random_preorder(rng)
        p = random_projection(rng, P)
        f = random_monotone(rng, P)
        n = P.size
        b = rng.randrange(n)
        if not constructive:
            return LemmaInstance("orbit", P, p, f, {"a": _random_seq(rng, n), "b": b})
        if not P.le(f[p(b)], p(f[b])):
            continue
        starts = [x for x in range(n) if P.le(f[b], x) and P.le(x, p(b))]
        if not starts:
            continue
        step = _step_function(rng, P.below, n)
        a = _rho(lambda x: step(f[x]), rng.choice(starts))
        return LemmaInstance("orbit", P, p, f, {"a": a, "b": b}, constructive=True)
    return _gen_orbit(rng, False)


def _grow_e(rng, S, p, f, b: EventuallyPeriodicSeq) -> EventuallyPeriodicSeq | None:
    """Terms with ``e(n) <= p(b(n+1))`` and ``e(n+1) <= f(e(n))``."""
    le = S.le
    n = S.size
    settle = len(b.prefix)  # b(n + 1) is constant for n >= settle
    first = [x for x in range(n) if le(x, p(b(1)))]
    if not first:
        return None
    terms = [rng.choice(first)]
    while len(terms) <= settle:
        k = len(terms)
        c = [y for y in range(n) if le(y, f[terms[-1]]) and le(y, p(b(k + 1)))]
        if not c:
            return None
        terms.append(rng.choice(c))
    cap = p(b(settle + 1))
    step = _step_function(rng, lambda x: [y for y in range(n) if le(y, f[x]) and le(y, cap)], n)
    if step is None:
        return None
    tail = _rho(step, step(terms[-1]))
    return EventuallyPeriodicSeq(tuple(terms) + tail.prefix, tail.cycle)


def _gen_tail(rng: random.Random, constructive: bool) -> LemmaInstance:
    for _ in range(200):
        S = random_semilattice(rng)
        p = random_projection(rng, S)
        f = random_monotone(rng, S)
        b = _increasing_seq(rng, S)
        m_star = rng.randint(0, len(b.prefix) + 1)
        if not constructive:
            e = _random_seq(rng, S.size)
            return LemmaInstance("tail", S, p, f, {"e": e, "b": b, "m_star": m_star})
        bm = b(m_star)
        if not S.le(f[p(bm)], p(f[bm])):
            continue
        e = _grow_e(rng, S, p, f, b)
        if e is None:
            continue
        inst = LemmaInstance("tail", S, p, f, {"e": e, "b": b, "m_star": m_star}, constructive=True)
        if inst.check().hypotheses:
            return inst
    return _gen_tail(rng, False)


def _gen_double(rng: random.Random, constructive: bool) -> LemmaInstance:
    if rng.random() < 0.5:
        inst = _gen_tail(rng, constructive)
        a = DoubleSequence.from_single(inst.args["e"])
        return LemmaInstance(
            "double", inst.order, inst.p, inst.f,
            {"a": a, "b": inst.args["b"], "m_star": inst.args["m_star"]},
            constructive=inst.constructive,
        )
    for _ in range(200):
        S = random_semilattice(rng)
        p = random_projection(rng, S)
        f = random_monotone(rng, S)
        b = _increasing_seq(rng, S)
        n = S.size
        n_pre = len(b.prefix) + rng.randint(0, 1)
        n_cyc = rng.randint(1, 2)
        m_star = rng.randint(0, n_pre + n_cyc - 1)
        if not constructive:
            rows = [_random_seq(rng, n) for _ in range(n_pre + n_cyc)]
            a = DoubleSequence(tuple(rows[:n_pre]), tuple(rows[n_pre:]))
            return LemmaInstance("double", S, p, f, {"a": a, "b": b, "m_star": m_star})
        rows = []
        for m in range(n_pre + n_cyc):
            starts = [x for x in range(n) if S.le(x, p(b(m + 1)))]
            step = _step_function(rng, lambda x: S.below(f[x]), n)
            rows.append(_rho(step, rng.choice(starts)))
        a = DoubleSequence(tuple(rows[:n_pre]), tuple(rows[n_pre:]))
        inst = LemmaInstance("double", S, p, f, {"a": a, "b": b, "m_star": m_star}, constructive=True)
        if inst.check().hypotheses:
            return inst
    return _gen_double(rng, False)


_GENERATORS = {"orbit": _gen_orbit, "double": _gen_double, "tail": _gen_tail}
LEMMAS = tuple(_GENERATORS)


def generate_instance(lemma: str, seed) -> LemmaInstance:
    """Seeded instance; about two thirds are synthesized to meet the hypotheses."""
    rng = random.Random(seed)
    return _GENERATORS[lemma](rng, rng.random() < 0.65)


@dataclass
class BatchReport:
    lemma: str
    seed: int
    count: int
    nonvacuous: int
    failures: list[tuple[int, LemmaInstance, CheckResult]]

    @property
    def passed(self) -> bool:
        return not self.failures


def run_batch(lemma: str, seed: int, count: int) -> BatchReport:
    nonvacuous = 0
    failures = []
    for k in range(count):
        inst = generate_instance(lemma, f"{lemma}:{seed}:{k}")
        res = inst.check()
        nonvacuous += res.hypotheses
        if not res.holds:
            failures.append((k, inst, res))
    return BatchReport(lemma, seed, count, nonvacuous, failures)
