"""Finite algebraic structures, term closure and endomorphisms.

The closure of a subset ``X`` (every value of a term built from elements of
``X``, constants and the operations) is computed semantically as a least
fixpoint: start from ``X`` plus the constants and keep applying operations to
tuples that involve at least one newly added element until nothing changes.
On the powerset ordered by inclusion this map is monotone, extensive and
idempotent, and it commutes with the direct image of any endomorphism; those
laws are what :func:`powerset_projection_laws` checks.
"""

from __future__ import annotations

import itertools
import json
import random
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

__all__ = [
    "Symbol",
    "FiniteStructure",
    "term_closure",
    "verify_endomorphism",
    "endomorphisms",
    "ModelPropReport",
    "check_model_prop",
    "LawReport",
    "powerset_projection_laws",
    "structure_from_data",
    "structure_to_data",
    "load_structure",
    "dump_structure",
    "f2_squared",
    "cyclic_group",
    "min_lattice",
    "structure_corpus",
]

EXHAUSTIVE_LIMIT = 12


@dataclass(frozen=True)
class Symbol:
    name: str
    arity: int
    table: Mapping[tuple[int, ...], int]

    def __call__(self, *args: int) -> int:
        return self.table[args]


class FiniteStructure:
    """Carrier ``range(size)`` with total operation tables."""

    def __init__(self, size: int, symbols: Iterable[Symbol]):
        self.size = int(size)
        if self.size < 1:
            raise ValueError("carrier must be nonempty")
        self.symbols: dict[str, Symbol] = {}
        for s in symbols:
            if s.name in self.symbols:
                raise ValueError(f"duplicate symbol {s.name!r}")
            if s.arity < 0:
                raise ValueError(f"negative arity for {s.name!r}")
            for args in itertools.product(range(self.size), repeat=s.arity):
                v = s.table.get(args)
                if v is None:
                    raise ValueError(f"{s.name} undefined at {args}")
                if not 0 <= v < self.size:
                    raise ValueError(f"{s.name}{args} = {v} is outside the carrier")
            self.symbols[s.name] = s

    @classmethod
    def from_functions(cls, size: int, ops: Mapping[str, tuple[int, object]]) -> "FiniteStructure":
        """Build tables from ``{name: (arity, python callable or constant)}``."""
        syms = []
        for name, (arity, fn) in ops.items():
            if arity == 0:
                table = {(): int(fn() if callable(fn) else fn)}
            else:
                table = {
                    args: int(fn(*args)) for args in itertools.product(range(size), repeat=arity)
                }
            syms.append(Symbol(name, arity, table))
        return cls(size, syms)

    @property
    def signature(self) -> list[tuple[str, int]]:
        return [(s.name, s.arity) for s in self.symbols.values()]

    def constants(self) -> set[int]:
        return {s.table[()] for s in self.symbols.values() if s.arity == 0}

    def __repr__(self) -> str:
        return f"FiniteStructure(size={self.size}, signature={self.signature})"


def _check_subset(A: FiniteStructure, X: Iterable[int]) -> set[int]:
    X = set(X)
    bad = [x for x in X if not (isinstance(x, int) and 0 <= x < A.size)]
    if bad:
        raise ValueError(f"elements outside the carrier: {sorted(bad)}")
    return X


def term_closure(A: FiniteStructure, X: Iterable[int]) -> frozenset[int]:
    closed = _check_subset(A, X) | A.constants()
    frontier = set(closed)
    ops = [s for s in A.symbols.values() if s.arity > 0]
    while frontier:
        new: set[int] = set()
        current = sorted(closed)
        for s in ops:
            for args in itertools.product(current, repeat=s.arity):
                if frontier.isdisjoint(args):
                    continue
                v = s.table[args]
                if v not in closed:
                    new.add(v)
        closed |= new
        frontier = new
    return frozenset(closed)


def verify_endomorphism(A: FiniteStructure, f: Sequence[int]):
    """``(True, None)`` or ``(False, (symbol, args))`` at the first violation."""
    f = tuple(f)
    if len(f) != A.size or any(not 0 <= v < A.size for v in f):
        raise ValueError("map table must be total on the carrier")
    for s in A.symbols.values():
        for args in itertools.product(range(A.size), repeat=s.arity):
            if f[s.table[args]] != s.table[tuple(f[x] for x in args)]:
                return False, (s.name, args)
    return True, None


def endomorphisms(A: FiniteStructure) -> list[tuple[int, ...]]:
    """All endomorphisms, by backtracking over partial assignments."""
    n = A.size
    syms = list(A.symbols.values())
    # a constraint becomes checkable once every element it mentions is assigned
    checks: list[list[tuple[Symbol, tuple[int, ...]]]] = [[] for _ in range(n)]
    for s in syms:
        for args in itertools.product(range(n), repeat=s.arity):
            last = max(args + (s.table[args],))
            checks[last].append((s, args))
    out = []
    f: list[int] = []

    def ok(k: int) -> bool:
        for s, args in checks[k]:
            mapped = tuple(f[x] for x in args)
            if f[s.table[args]] != s.table[mapped]:
                return False
        return True

    def extend():
        k = len(f)
        if k == n:
            out.append(tuple(f))
            return
        for v in range(n):
            f.append(v)
            if ok(k):
                extend()
            f.pop()

    extend()
    return out


@dataclass(frozen=True)
class ModelPropReport:
    first_collapse: int | None
    tail_verified: bool
    escape_everywhere: bool
    window: int

    @property
    def consistent(self) -> bool:
        """No collapse may leave the tail outside the closure, and if every
        prefix closure is escaped later on, no index may collapse."""
        return (self.first_collapse is None or self.tail_verified) and (
            not self.escape_everywhere or self.first_collapse is None
        )


def check_model_prop(A: FiniteStructure, f: Sequence[int], e: Sequence[int]) -> ModelPropReport:
    """Check the tail-collapse implication on ``e[0..N]`` with ``f(e[n]) == e[n+1]``."""
    f = tuple(f)
    ok, bad = verify_endomorphism(A, f)
    if not ok:
        raise ValueError(f"not an endomorphism: violation at {bad}")
    e = list(e)
    _check_subset(A, e)
    for n in range(len(e) - 1):
        if f[e[n]] != e[n + 1]:
            raise ValueError(f"shift compatibility fails at n={n}: f(e[{n}]) != e[{n + 1}]")
    N = len(e) - 1
    closures = [term_closure(A, e[:m]) for m in range(N + 1)]
    first = next((m for m in range(N + 1) if e[m] in closures[m]), None)
    tail = True
    if first is not None:
        tail = all(e[k] in closures[first] for k in range(first, N + 1))
    escape = all(any(e[k] not in closures[m] for k in range(m, N + 1)) for m in range(N + 1))
    return ModelPropReport(first, tail, escape, N)


@dataclass(frozen=True)
class LawReport:
    subsets_checked: int
    exhaustive: bool
    monotone: bool
    idempotent: bool
    extensive: bool
    commutes: bool
    endomorphisms_checked: int
    violation: tuple | None = None

    @property
    def ok(self) -> bool:
        return self.monotone and self.idempotent and self.extensive and self.commutes

    def lines(self) -> list[str]:
        how = "all" if self.exhaustive else "sampled"
        out = [
            f"{self.subsets_checked} subsets ({how}), {self.endomorphisms_checked} endomorphisms",
            " ".join(
                f"{k}={'ok' if v else 'FAIL'}"
                for k, v in [
                    ("monotone", self.monotone),
                    ("idempotent", self.idempotent),
                    ("extensive", self.extensive),
                    ("commutes", self.commutes),
                ]
            ),
        ]
        if self.violation is not None:
            out.append(f"first violation: {self.violation}")
        return out


def _subsets(A: FiniteStructure, seed: int, samples: int) -> tuple[list[frozenset[int]], bool]:
    if A.size <= EXHAUSTIVE_LIMIT:
        return [
            frozenset(x for x in range(A.size) if mask >> x & 1) for mask in range(1 << A.size)
        ], True
    rng = random.Random(seed)
    return [
        frozenset(x for x in range(A.size) if rng.random() < 0.5) for _ in range(samples)
    ], False


def powerset_projection_laws(
    A: FiniteStructure,
    endos: Sequence[Sequence[int]] | None = None,
    seed: int = 0,
    samples: int = 512,
) -> LawReport:
    """Closure laws on subsets: exhaustive up to 12 elements, sampled above.

    ``endos`` defaults to every endomorphism when the carrier is small, and
    to the identity otherwise.
    """
    subsets, exhaustive = _subsets(A, seed, samples)
    if endos is None:
        endos = endomorphisms(A) if A.size <= 6 else [tuple(range(A.size))]
    endos = [tuple(f) for f in endos]
    for f in endos:
        ok, bad = verify_endomorphism(A, f)
        if not ok:
            raise ValueError(f"{f} is not an endomorphism: {bad}")
    clo = {X: term_closure(A, X) for X in subsets}

    def p(X):
        if X not in clo:
            clo[X] = term_closure(A, X)
        return clo[X]

    mono = idem = ext = comm = True
    violation = None
    for X in subsets:
        pX = p(X)
        if not X <= pX:
            ext, violation = False, violation or ("extensive", sorted(X))
        if p(pX) != pX:
            idem, violation = False, violation or ("idempotent", sorted(X))
        for f in endos:
            if frozenset(f[x] for x in pX) != p(frozenset(f[x] for x in X)):
                comm, violation = False, violation or ("commutes", sorted(X), f)
    for X in subsets:
        for Y in subsets:
            if X <= Y and not p(X) <= p(Y):
                mono, violation = False, violation or ("monotone", sorted(X), sorted(Y))
    return LawReport(len(subsets), exhaustive, mono, idem, ext, comm, len(endos), violation)


# ---------------------------------------------------------------------------
# file format: {"size": k, "symbols": [{"name", "arity", "table": nested lists}]}


def _flatten(table, arity: int, size: int, name: str) -> dict[tuple[int, ...], int]:
    if arity == 0:
        if isinstance(table, list):
            raise ValueError(f"constant {name!r} must have a scalar table")
        return {(): int(table)}
    out = {}

    def walk(node, prefix):
        if len(prefix) == arity:
            if isinstance(node, list) or isinstance(node, bool) or not isinstance(node, int):
                raise ValueError(f"{name}{tuple(prefix)}: expected an integer")
            out[tuple(prefix)] = node
            return
        if not isinstance(node, list) or len(node) != size:
            raise ValueError(f"{name}: table level {len(prefix)} must be a list of length {size}")
        for i, child in enumerate(node):
            walk(child, prefix + [i])

    walk(table, [])
    return out


def _nest(sym: Symbol, size: int):
    if sym.arity == 0:
        return sym.table[()]

    def build(prefix):
        if len(prefix) == sym.arity:
            return sym.table[tuple(prefix)]
        return [build(prefix + [i]) for i in range(size)]

    return build([])


def structure_from_data(data: dict) -> FiniteStructure:
    if not isinstance(data, dict) or "size" not in data:
        raise ValueError("structure must be an object with 'size' and 'symbols'")
    size = int(data["size"])
    syms = []
    for entry in data.get("symbols", []):
        name, arity = str(entry["name"]), int(entry["arity"])
        syms.append(Symbol(name, arity, _flatten(entry["table"], arity, size, name)))
    return FiniteStructure(size, syms)


def structure_to_data(A: FiniteStructure) -> dict:
    return {
        "size": A.size,
        "symbols": [
            {"name": s.name, "arity": s.arity, "table": _nest(s, A.size)}
            for s in A.symbols.values()
        ],
    }


def load_structure(text: str) -> FiniteStructure:
    return structure_from_data(json.loads(text))


def dump_structure(A: FiniteStructure) -> str:
    return json.dumps(structure_to_data(A), sort_keys=True)


# ---------------------------------------------------------------------------
# named structures


def f2_squared() -> FiniteStructure:
    """The vector space F_2^2: element ``2*x + y`` encodes ``(x, y)``.

    Symbols: ``add`` (binary), ``zero`` (constant), ``scale0`` and
    ``scale1`` (unary scalar multiplications).
    """
    return FiniteStructure.from_functions(
        4,
        {
            "add": (2, lambda u, v: u ^ v),
            "zero": (0, 0),
            "scale0": (1, lambda u: 0),
            "scale1": (1, lambda u: u),
        },
    )


def f2_pair(x: int, y: int) -> int:
    return 2 * x + y


def cyclic_group(n: int, with_zero: bool = False) -> FiniteStructure:
    ops = {"add": (2, lambda a, b: (a + b) % n)}
    if with_zero:
        ops["zero"] = (0, 0)
        ops["neg"] = (1, lambda a: (-a) % n)
    return FiniteStructure.from_functions(n, ops)


def min_lattice(n: int) -> FiniteStructure:
    return FiniteStructure.from_functions(n, {"min": (2, min)})


def structure_corpus(seed: int = 2024) -> list[tuple[str, FiniteStructure]]:
    """Fixed corpus of small structures (all carriers have at most 6 elements)."""
    c: list[tuple[str, FiniteStructure]] = [
        ("empty-signature-3", FiniteStructure(3, [])),
        ("f2^2", f2_squared()),
        ("z4-add", cyclic_group(4)),
        ("z4-group", cyclic_group(4, with_zero=True)),
        ("z5-add", cyclic_group(5)),
        ("z6-group", cyclic_group(6, with_zero=True)),
        ("min-3", min_lattice(3)),
        ("min-5", min_lattice(5)),
        ("max-4", FiniteStructure.from_functions(4, {"max": (2, max)})),
        ("z6-mul", FiniteStructure.from_functions(6, {"mul": (2, lambda a, b: a * b % 6)})),
        ("z5-ring", FiniteStructure.from_functions(5, {
            "add": (2, lambda a, b: (a + b) % 5),
            "mul": (2, lambda a, b: a * b % 5),
            "one": (0, 1),
        })),
        ("succ-mod-6", FiniteStructure.from_functions(6, {"s": (1, lambda a: (a + 1) % 6)})),
        ("succ-capped-5", FiniteStructure.from_functions(5, {"s": (1, lambda a: min(a + 1, 4))})),
        ("powerset-2-union", FiniteStructure.from_functions(4, {"or": (2, lambda a, b: a | b), "bot": (0, 0)})),
        ("powerset-2-bool", FiniteStructure.from_functions(4, {
            "or": (2, lambda a, b: a | b),
            "and": (2, lambda a, b: a & b),
            "not": (1, lambda a: 3 - a),
        })),
        ("left-zero-3", FiniteStructure.from_functions(3, {"l": (2, lambda a, b: a)})),
        ("s3-like-perm", FiniteStructure.from_functions(6, {"r": (1, lambda a: [1, 2, 0, 4, 5, 3][a])})),
        ("const-only-4", FiniteStructure.from_functions(4, {"c": (0, 2)})),
        ("midpoint-5", FiniteStructure.from_functions(5, {"mid": (2, lambda a, b: (a + b) // 2)})),
    ]
    rng = random.Random(seed)
    while len(c) < 24:
        n = rng.randint(2, 4)
        table = {args: rng.randrange(n) for args in itertools.product(range(n), repeat=2)}
        syms = [Symbol("op", 2, table)]
        if rng.random() < 0.5:
            syms.append(Symbol("u", 1, {(x,): rng.randrange(n) for x in range(n)}))
        if rng.random() < 0.3:
            syms.append(Symbol("k", 0, {(): rng.randrange(n)}))
        c.append((f"random-{len(c)}", FiniteStructure(n, syms)))
    return c
