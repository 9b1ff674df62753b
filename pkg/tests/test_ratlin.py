from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from oracles import dense_rank
from shiftfree.ratlin import (
    DependenceWitness,
    EchelonBuilder,
    QMatrix,
    QVector,
    Subspace,
    dependence_witness,
    format_rational,
    in_span,
    in_span_plus,
    matrix_from_literal,
    matrix_to_literal,
    parse_rational,
    rank,
    vector_from_literal,
    vector_to_literal,
)

V = QVector.from_dense
span = Subspace.span


def test_parse_rational_forms():
    assert parse_rational("5") == 5
    assert parse_rational("−3/7") == Fraction(-3, 7)
    assert parse_rational("6/4") == Fraction(3, 2)
    assert parse_rational(4) == 4
    for bad in ["1.5", 1.5, True, "1/0", "x"]:
        with pytest.raises((ValueError, ZeroDivisionError)):
            parse_rational(bad)
    assert format_rational(Fraction(-3, 7)) == "-3/7"
    assert format_rational(Fraction(4)) == "4"


def test_vector_drops_zeros_and_compares_by_value():
    v = QVector({0: 1, 3: 0, 5: Fraction(1, 2)})
    assert v.support == (0, 5)
    assert v.bound() == 6
    assert v == V([1, 0, 0, 0, 0, Fraction(1, 2)])
    assert (v - v).is_zero()
    assert hash(v) == hash(V([1, 0, 0, 0, 0, Fraction(1, 2)]))


def test_rank_examples():
    assert rank(QMatrix.identity(2)) == 2
    assert rank([V([1, 0]), V([0, 1]), V([1, 1])]) == 2
    S = QMatrix.from_rows([[0, 0, 0], [1, 0, 0], [0, 1, 0]])
    e = [V([1, 0, 0])]
    for _ in range(3):
        e.append(S.apply(e[-1]))
    assert rank(e[:3]) == 3
    assert e[3].is_zero()
    assert rank(e) == 3
    assert rank([]) == 0


def test_rank_of_classic_singular_matrix():
    assert rank([V([1, 2, 3]), V([4, 5, 6]), V([7, 8, 9])]) == 2


def test_in_span_examples():
    assert in_span(V([1, 1]), span([V([1, 0]), V([0, 1])]))
    assert not in_span(V([0, 0, 1]), span([V([1, 0, 0]), V([0, 1, 0])]))
    assert in_span(V([Fraction(3, 2), 1]), span([V([3, 2])]))
    # (1/2, 1/3) is (1/6) * (3, 2)
    assert in_span(V([Fraction(1, 2), Fraction(1, 3)]), span([V([3, 2])]))
    assert not in_span(V([Fraction(1, 2), Fraction(1, 4)]), span([V([3, 2])]))


def test_in_span_plus_examples():
    assert in_span_plus(V([0, 1]), Subspace.zero(), span([V([0, 1])]))
    assert in_span_plus(V([1, 1, 1]), span([V([1, 0, 0])]), span([V([0, 1, 1])]))
    assert not in_span_plus(V([0, 0, 1]), span([V([1, 0, 0])]), span([V([0, 1, 0])]))


def test_dependence_witness_examples():
    assert dependence_witness([V([1, 0]), V([0, 1])]) is None
    w = dependence_witness([V([1, 2]), V([2, 4])])
    assert w.coefficients == {0: 2, 1: -1}
    w = dependence_witness([V([1, 0]), V([0, 1]), V([1, 1])])
    assert w.coefficients == {0: 1, 1: 1, 2: -1}


def test_dependence_witness_rejects_zero_coefficients():
    with pytest.raises(ValueError):
        DependenceWitness({0: 1, 1: 0})
    with pytest.raises(ValueError):
        DependenceWitness({})


def test_witness_literal_round_trip():
    w = DependenceWitness({0: Fraction(-3, 7), 4: 2})
    assert DependenceWitness.from_literal(w.to_literal()) == w


def test_subspace_is_canonical():
    a = span([V([1, 1, 0]), V([0, 1, 1])])
    b = span([V([1, 2, 1]), V([1, 0, -1]), V([2, 2, 0])])
    assert a == b
    assert a.dim == 2
    assert list(a.pivots) == sorted(a.pivots)


def test_matrix_apply_and_power():
    S = QMatrix.from_rows([[0, 1], [1, 1]])
    assert S.apply(V([1, 0])) == V([0, 1])
    assert S.power(5).apply(V([1, 0])) == V([3, 5])
    with pytest.raises(ValueError):
        S.apply(V([0, 0, 1]))


def test_from_columns_sends_basis_to_columns():
    cols = [V([0, 1]), V([2, 0])]
    M = QMatrix.from_columns(cols, 2)
    assert [M.apply(QVector.basis(c)) for c in range(2)] == cols


def test_literals_round_trip():
    v = QVector({2: Fraction(-3, 7), 0: 5})
    assert vector_from_literal(vector_to_literal(v)) == v
    assert vector_from_literal([[0, "−3/7"]]) == QVector({0: Fraction(-3, 7)})
    M = QMatrix.from_rows([[1, 0], [Fraction(1, 2), 3]])
    assert matrix_from_literal(matrix_to_literal(M), 2) == M
    with pytest.raises(ValueError):
        vector_from_literal([[0]])


def test_echelon_builder_tracks_rank():
    eb = EchelonBuilder()
    assert eb.add(V([1, 0]))
    assert not eb.add(V([2, 0]))
    assert V([3, 0]) in eb
    assert eb.add(V([1, 1]))
    assert eb.rank == 2


rationals = st.fractions(min_value=-5, max_value=5, max_denominator=4)
sparse_rationals = st.one_of(st.just(Fraction(0)), st.just(Fraction(0)), rationals)
rows5 = st.lists(st.lists(sparse_rationals, min_size=5, max_size=5), min_size=1, max_size=6)


@given(rows5)
def test_rank_matches_dense_oracle(rows):
    assert rank([V(r) for r in rows]) == dense_rank(rows, 5)


@given(rows5, st.randoms(use_true_random=False), st.lists(rationals.filter(bool), min_size=6, max_size=6))
def test_rank_invariant_under_permutation_and_scaling(rows, rnd, scales):
    vs = [V(r) for r in rows]
    perm = vs[:]
    rnd.shuffle(perm)
    scaled = [v.scale(c) for v, c in zip(perm, scales)]
    assert rank(vs) == rank(perm) == rank(scaled)


@given(rows5, st.lists(sparse_rationals, min_size=5, max_size=5))
def test_in_span_iff_rank_unchanged(rows, v):
    basis = [V(r) for r in rows]
    v = V(v)
    assert in_span(v, span(basis)) == (rank(basis + [v]) == rank(basis))


@given(rows5)
def test_witness_verifies_and_exists_iff_rank_deficient(rows):
    vs = [V(r) for r in rows]
    w = dependence_witness(vs)
    assert (w is None) == (rank(vs) == len(vs))
    if w is not None:
        assert all(c != 0 for c in w.coefficients.values())
        assert w.verify(vs)
