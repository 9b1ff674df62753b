"""Small independent reference implementations used by the tests."""

from fractions import Fraction
from itertools import combinations


def dense_rank(rows, ncols):
    """Plain Gaussian elimination on dense Fraction rows."""
    m = [[Fraction(x) for x in r] + [Fraction(0)] * (ncols - len(r)) for r in rows]
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c] / m[r][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        r += 1
    return r


def closure_by_intersection(size, ops, X):
    """Intersection of every operation-closed subset containing X."""
    X = frozenset(X)
    best = frozenset(range(size))
    for k in range(size + 1):
        for c in combinations(range(size), k):
            S = frozenset(c)
            if X <= S and all(closed(S, op) for op in ops):
                best &= S
    return best


def closed(S, op):
    arity, f = op
    if arity == 0:
        return f(()) in S
    from itertools import product

    return all(f(args) in S for args in product(sorted(S), repeat=arity))


def relation_power_pairs(pairs, window, n):
    """``R^n`` as a set of pairs, by repeated pair composition."""
    acc = {(j, j) for j in range(window)}
    for _ in range(n):
        acc = {(x, z) for x, y in pairs for y2, z in acc if y == y2}
    return acc
