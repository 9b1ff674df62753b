"""Exact linear algebra over the rationals.

Vectors are sparse maps from a natural coordinate index to a nonzero
:class:`fractions.Fraction`.  Rank, span membership and dependence witnesses
are all computed by fraction-free (Bareiss) elimination on integer rows; the
canonical rational form is only produced at the boundary, when a
:class:`Subspace` stores its reduced row-echelon basis.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Mapping, Sequence

Rational = Fraction

__all__ = [
    "Rational",
    "parse_rational",
    "format_rational",
    "QVector",
    "QMatrix",
    "Subspace",
    "DependenceWitness",
    "EchelonBuilder",
    "rank",
    "in_span",
    "in_span_plus",
    "dependence_witness",
    "vector_from_literal",
    "vector_to_literal",
    "matrix_from_literal",
    "matrix_to_literal",
]


def parse_rational(text) -> Fraction:
    """Parse ``"num/den"`` or an integer literal into a Fraction.

    Accepts the unicode minus sign.  Floats are rejected: they would smuggle
    binary rounding into an exact computation.
    """
    if isinstance(text, bool):
        raise ValueError(f"not a rational literal: {text!r}")
    if isinstance(text, int):
        return Fraction(text)
    if not isinstance(text, str):
        raise ValueError(f"not a rational literal: {text!r}")
    s = text.strip().replace("−", "-")
    if "." in s or "e" in s.lower():
        raise ValueError(f"not an exact rational literal: {text!r}")
    try:
        value = Fraction(s)
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"not a rational literal: {text!r}") from exc
    return value


def format_rational(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


class QVector:
    """Finite-support vector with exact rational entries.

    Zero entries are never stored, so two vectors are equal exactly when
    their entry maps are equal.
    """

    __slots__ = ("_entries", "_hash")

    def __init__(self, entries: Mapping[int, object] | Iterable[tuple[int, object]] = ()):
        items = entries.items() if isinstance(entries, Mapping) else entries
        clean: dict[int, Fraction] = {}
        for idx, val in items:
            if isinstance(idx, bool) or not isinstance(idx, int) or idx < 0:
                raise ValueError(f"coordinate index must be a natural number, got {idx!r}")
            q = val if isinstance(val, Fraction) else parse_rational(val)
            if q:
                clean[idx] = clean.get(idx, Fraction(0)) + q
                if not clean[idx]:
                    del clean[idx]
        self._entries = dict(sorted(clean.items()))
        self._hash = None

    @classmethod
    def from_dense(cls, values: Sequence[object]) -> "QVector":
        return cls(enumerate(values))

    @classmethod
    def basis(cls, index: int) -> "QVector":
        return cls({index: Fraction(1)})

    @classmethod
    def zero(cls) -> "QVector":
        return cls()

    def __getitem__(self, idx: int) -> Fraction:
        return self._entries.get(idx, Fraction(0))

    def items(self):
        return self._entries.items()

    @property
    def support(self) -> tuple[int, ...]:
        return tuple(self._entries)

    def bound(self) -> int:
        """One past the largest coordinate in the support (0 for the zero vector)."""
        return max(self._entries) + 1 if self._entries else 0

    def is_zero(self) -> bool:
        return not self._entries

    def dense(self, n: int) -> list[Fraction]:
        if self.bound() > n:
            raise ValueError(f"vector support exceeds dimension {n}")
        return [self[i] for i in range(n)]

    def __add__(self, other: "QVector") -> "QVector":
        out = dict(self._entries)
        for i, v in other.items():
            out[i] = out.get(i, Fraction(0)) + v
        return QVector(out)

    def __neg__(self) -> "QVector":
        return QVector({i: -v for i, v in self.items()})

    def __sub__(self, other: "QVector") -> "QVector":
        return self + (-other)

    def scale(self, c) -> "QVector":
        c = Fraction(c)
        return QVector({i: c * v for i, v in self.items()})

    def __rmul__(self, c) -> "QVector":
        return self.scale(c)

    def __eq__(self, other) -> bool:
        return isinstance(other, QVector) and self._entries == other._entries

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(tuple(self._entries.items()))
        return self._hash

    def __bool__(self) -> bool:
        return bool(self._entries)

    def __repr__(self) -> str:
        inner = ", ".join(f"{i}: {format_rational(v)}" for i, v in self.items())
        return f"QVector({{{inner}}})"


def _combine(vectors: Iterable[tuple[Fraction, QVector]]) -> QVector:
    acc: dict[int, Fraction] = {}
    for c, v in vectors:
        if not c:
            continue
        for i, x in v.items():
            acc[i] = acc.get(i, Fraction(0)) + c * x
    return QVector(acc)


@dataclass(frozen=True)
class QMatrix:
    """Matrix stored as sparse rows.

    As an operator it acts on column vectors: ``(M v)[r] = sum_c M[r, c] v[c]``.
    """

    rows: tuple[QVector, ...]
    ncols: int

    def __post_init__(self):
        object.__setattr__(self, "rows", tuple(self.rows))
        for r in self.rows:
            if r.bound() > self.ncols:
                raise ValueError(f"row support {r.support} exceeds ncols={self.ncols}")

    @classmethod
    def from_rows(cls, rows: Sequence[QVector | Sequence[object]], ncols: int | None = None) -> "QMatrix":
        vecs = [r if isinstance(r, QVector) else QVector.from_dense(r) for r in rows]
        if ncols is None:
            dense = [len(r) for r in rows if not isinstance(r, QVector)]
            ncols = max([v.bound() for v in vecs] + dense, default=0)
        return cls(tuple(vecs), ncols)

    @classmethod
    def identity(cls, n: int) -> "QMatrix":
        return cls(tuple(QVector.basis(i) for i in range(n)), n)

    @classmethod
    def from_columns(cls, columns: Sequence[QVector], nrows: int) -> "QMatrix":
        """Build the operator that sends basis vector ``c`` to ``columns[c]``."""
        acc: list[dict[int, Fraction]] = [dict() for _ in range(nrows)]
        for c, col in enumerate(columns):
            for r, v in col.items():
                if r >= nrows:
                    raise ValueError(f"column {c} has entry in row {r} >= nrows={nrows}")
                acc[r][c] = v
        return cls(tuple(QVector(a) for a in acc), len(columns))

    @property
    def nrows(self) -> int:
        return len(self.rows)

    def __matmul__(self, other):
        if isinstance(other, QVector):
            return self.apply(other)
        if isinstance(other, QMatrix):
            if other.nrows != self.ncols:
                raise ValueError("shape mismatch")
            cols = [other.apply(QVector.basis(c)) for c in range(other.ncols)]
            return QMatrix.from_columns([self.apply(c) for c in cols], self.nrows)
        return NotImplemented

    def apply(self, v: QVector) -> QVector:
        if v.bound() > self.ncols:
            raise ValueError(f"vector support {v.support} outside operator domain of dimension {self.ncols}")
        out = {}
        for r, row in enumerate(self.rows):
            s = sum((x * v[c] for c, x in row.items()), Fraction(0))
            if s:
                out[r] = s
        return QVector(out)

    def power(self, k: int) -> "QMatrix":
        if self.nrows != self.ncols:
            raise ValueError("power of a non-square matrix")
        out = QMatrix.identity(self.ncols)
        for _ in range(k):
            out = self @ out
        return out


def _as_rows(m: QMatrix | Sequence[QVector]) -> list[QVector]:
    return list(m.rows) if isinstance(m, QMatrix) else list(m)


def _integer_rows(rows: Sequence[QVector]) -> list[dict[int, int]]:
    """Scale each row by the lcm of its denominators; row space is unchanged."""
    out = []
    for r in rows:
        d = 1
        for _, v in r.items():
            d = lcm(d, v.denominator)
        out.append({i: int(v * d) for i, v in r.items()})
    return out


def _bareiss(int_rows: list[dict[int, int]], track: bool = False):
    """Fraction-free forward elimination on sparse integer rows.

    Returns ``(rows, pivots, transforms)`` where the first ``len(pivots)``
    rows form an echelon basis and the remaining rows are zero.  With
    ``track`` each row carries the integer combination of the input rows
    that produced it, so a zero row's transform is a dependence.
    """
    rows = [dict(r) for r in int_rows]
    n = len(rows)
    trans = [{k: 1} for k in range(n)] if track else None
    cols = sorted({c for r in rows for c in r})
    pivots: list[int] = []
    prev = 1
    r = 0
    for c in cols:
        if r >= n:
            break
        piv = next((k for k in range(r, n) if rows[k].get(c)), None)
        if piv is None:
            continue
        if piv != r:
            rows[r], rows[piv] = rows[piv], rows[r]
            if track:
                trans[r], trans[piv] = trans[piv], trans[r]
        p = rows[r][c]
        for k in range(r + 1, n):
            a = rows[k].get(c, 0)
            # every row below gets multiplied by p; the division by the previous
            # pivot is exact (each entry is a minor of the input)
            new = {}
            for col in set(rows[k]) | set(rows[r]):
                val = p * rows[k].get(col, 0) - a * rows[r].get(col, 0)
                if val:
                    q, rem = divmod(val, prev)
                    assert rem == 0
                    new[col] = q
            rows[k] = new
            if track:
                t = {}
                for idx in set(trans[k]) | set(trans[r]):
                    val = p * trans[k].get(idx, 0) - a * trans[r].get(idx, 0)
                    if val:
                        q, rem = divmod(val, prev)
                        assert rem == 0
                        t[idx] = q
                trans[k] = t
        pivots.append(c)
        prev = p
        r += 1
    return rows, pivots, trans


def rank(m: QMatrix | Sequence[QVector]) -> int:
    """Row rank by exact fraction-free elimination."""
    rows = _as_rows(m)
    if not rows:
        return 0
    _, pivots, _ = _bareiss(_integer_rows(rows))
    return len(pivots)


def _rref(rows: Sequence[QVector]) -> tuple[QVector, ...]:
    ech, pivots, _ = _bareiss(_integer_rows(rows))
    basis = [
        {c: Fraction(v) for c, v in ech[k].items()} for k in range(len(pivots))
    ]
    # normalise pivots and clear above, bottom-up
    for k in range(len(pivots) - 1, -1, -1):
        pc = pivots[k]
        p = basis[k][pc]
        basis[k] = {c: v / p for c, v in basis[k].items()}
        for above in range(k):
            f = basis[above].get(pc)
            if f:
                row = basis[above]
                for c, v in basis[k].items():
                    nv = row.get(c, Fraction(0)) - f * v
                    if nv:
                        row[c] = nv
                    else:
                        row.pop(c, None)
    return tuple(QVector(b) for b in basis)


class Subspace:
    """Finite-dimensional subspace held as its reduced row-echelon basis.

    Two subspaces are equal exactly when their reduced bases are equal.
    """

    __slots__ = ("basis", "pivots")

    def __init__(self, basis: Iterable[QVector] = ()):
        self.basis = _rref(list(basis))
        self.pivots = tuple(b.support[0] for b in self.basis)

    @classmethod
    def span(cls, vectors: Iterable[QVector]) -> "Subspace":
        return cls(vectors)

    @classmethod
    def zero(cls) -> "Subspace":
        return cls(())

    @property
    def dim(self) -> int:
        return len(self.basis)

    def reduce(self, v: QVector) -> QVector:
        """Remainder of ``v`` after subtracting its component along the pivots."""
        out = dict(v.items())
        for b, pc in zip(self.basis, self.pivots):
            f = out.get(pc)
            if f:
                for c, x in b.items():
                    nv = out.get(c, Fraction(0)) - f * x
                    if nv:
                        out[c] = nv
                    else:
                        out.pop(c, None)
        return QVector(out)

    def contains(self, v: QVector) -> bool:
        return self.reduce(v).is_zero()

    __contains__ = contains

    def __add__(self, other: "Subspace") -> "Subspace":
        return Subspace(self.basis + other.basis)

    def __eq__(self, other) -> bool:
        return isinstance(other, Subspace) and self.basis == other.basis

    def __hash__(self) -> int:
        return hash(self.basis)

    def __repr__(self) -> str:
        return f"Subspace(dim={self.dim}, basis={list(self.basis)!r})"


def in_span(v: QVector, s: Subspace) -> bool:
    return s.contains(v)


def in_span_plus(v: QVector, s: Subspace, vsub: Subspace) -> bool:
    """Membership of ``v`` in the subspace sum ``s + vsub``."""
    return (s + vsub).contains(v)


@dataclass(frozen=True)
class DependenceWitness:
    """Nonzero rational coefficients with ``sum c_i * row_i == 0``."""

    coefficients: Mapping[int, Fraction]

    def __post_init__(self):
        coeffs = {int(i): Fraction(c) for i, c in dict(self.coefficients).items()}
        if not coeffs:
            raise ValueError("empty dependence witness")
        if any(not c for c in coeffs.values()):
            raise ValueError("dependence witness coefficients must be nonzero")
        object.__setattr__(self, "coefficients", dict(sorted(coeffs.items())))

    @property
    def indices(self) -> tuple[int, ...]:
        return tuple(self.coefficients)

    def combination(self, family: Mapping[int, QVector] | Sequence[QVector]) -> QVector:
        return _combine((c, family[i]) for i, c in self.coefficients.items())

    def verify(self, family: Mapping[int, QVector] | Sequence[QVector]) -> bool:
        try:
            return self.combination(family).is_zero()
        except (KeyError, IndexError):
            return False

    def to_literal(self) -> dict[str, str]:
        return {str(i): format_rational(c) for i, c in self.coefficients.items()}

    @classmethod
    def from_literal(cls, data: Mapping[str, object]) -> "DependenceWitness":
        return cls({int(i): parse_rational(c) for i, c in data.items()})


def dependence_witness(rows: QMatrix | Sequence[QVector]) -> DependenceWitness | None:
    """Exhibit a linear dependence among ``rows``, or None if they are free.

    Coefficients are integers with gcd 1 and a positive leading coefficient.
    """
    rows = _as_rows(rows)
    if not rows:
        return None
    int_rows = _integer_rows(rows)
    ech, pivots, trans = _bareiss(int_rows, track=True)
    if len(pivots) == len(rows):
        return None
    t = trans[len(pivots)]
    # sum t_i * (d_i * row_i) == 0, with d_i the scale applied by _integer_rows
    scaled = {}
    for i, v in t.items():
        d = 1
        for _, x in rows[i].items():
            d = lcm(d, x.denominator)
        scaled[i] = v * d
    g = 0
    for v in scaled.values():
        g = gcd(g, v)
    if scaled[min(scaled)] < 0:
        g = -g
    coeffs = {i: Fraction(v // g) for i, v in scaled.items()}
    w = DependenceWitness(coeffs)
    assert w.verify(rows)
    return w


class EchelonBuilder:
    """Incrementally grown span; ``add`` reports whether the rank went up."""

    def __init__(self):
        self._space = Subspace()

    @property
    def rank(self) -> int:
        return self._space.dim

    @property
    def space(self) -> Subspace:
        return self._space

    def add(self, v: QVector) -> bool:
        r = self._space.reduce(v)
        if r.is_zero():
            return False
        self._space = Subspace(self._space.basis + (r,))
        return True

    def __contains__(self, v: QVector) -> bool:
        return self._space.contains(v)


# literal formats used in instance files


def vector_from_literal(data) -> QVector:
    """``[[index, "num/den"], ...]`` -> QVector."""
    if not isinstance(data, list):
        raise ValueError(f"vector literal must be a list of [index, value] pairs, got {data!r}")
    pairs = []
    for item in data:
        if not (isinstance(item, list) and len(item) == 2):
            raise ValueError(f"bad vector entry {item!r}")
        pairs.append((item[0], parse_rational(item[1])))
    return QVector(pairs)


def vector_to_literal(v: QVector) -> list:
    return [[i, format_rational(x)] for i, x in v.items()]


def matrix_from_literal(data, ncols: int | None = None) -> QMatrix:
    if not isinstance(data, list):
        raise ValueError("matrix literal must be a list of vectors")
    rows = [vector_from_literal(r) for r in data]
    if ncols is None:
        ncols = max([len(rows)] + [r.bound() for r in rows])
    return QMatrix(tuple(rows), ncols)


def matrix_to_literal(m: QMatrix) -> list:
    return [vector_to_literal(r) for r in m.rows]

