from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from shiftfree.ratlin import QMatrix, QVector, Subspace
from shiftfree.selfmap import SUCC, SelfMapPresentation, conjugacy_witness, trajectory
from shiftfree.shiftcheck import (
    PhiShiftInstance,
    ShiftInstance,
    ShiftViolation,
    first_dependent_index,
    instance_from_data,
    phi_instance_to_data,
    shift_instance_to_data,
    transfer_independence,
    verify_tail_collapse,
)

V = QVector.from_dense
RELABELED = SelfMapPresentation({1: 0, 0: 2})


def shift(dim):
    return QMatrix.from_columns([QVector.basis(k + 1) if k + 1 < dim else QVector.zero() for k in range(dim)], dim)


CYCLIC3 = QMatrix.from_rows([[0, 0, 1], [1, 0, 0], [0, 1, 0]])
NILPOTENT3 = shift(3)
FIB = QMatrix.from_rows([[0, 1], [1, 1]])


def test_independent_basis_has_no_collapse():
    inst = ShiftInstance.orbit(shift(8), QVector.basis(0), 7)
    assert first_dependent_index(inst) is None
    rep = verify_tail_collapse(inst)
    assert rep.free and rep.rank_profile == tuple(range(9))
    assert rep.lines()[0] == "no collapse; rank r(k)=k for k<=8"


def test_cyclic_permutation_collapses_at_three():
    inst = ShiftInstance.orbit(CYCLIC3, V([1, 0, 0]), 9)
    assert inst.vectors[3] == inst.vectors[0]
    rep = verify_tail_collapse(inst)
    assert rep.first_dependent == 3 and rep.tail_verified and rep.consistent


def test_nilpotent_shift_collapses_at_three():
    inst = ShiftInstance.orbit(NILPOTENT3, V([1, 0, 0]), 5)
    assert inst.vectors[3].is_zero()
    assert first_dependent_index(inst) == 3


def test_fibonacci_companion_collapses_at_two():
    inst = ShiftInstance.orbit(FIB, V([1, 0]), 10)
    assert inst.vectors[2] == inst.vectors[0] + inst.vectors[1]
    rep = verify_tail_collapse(inst)
    assert rep.first_dependent == 2 and rep.tail_verified


def test_violation_is_reported_with_index():
    with pytest.raises(ShiftViolation) as exc:
        ShiftInstance((V([1, 0]), V([0, 1]), V([1, 0])), FIB)
    assert exc.value.index == 1


def test_plain_file_round_trip():
    inst = ShiftInstance.orbit(FIB, V([Fraction(1, 3), 0]), 6)
    back = instance_from_data(shift_instance_to_data(inst))
    assert back == inst


def orbit_family(phi, size):
    """``e_i`` = basis vector numbered by the step at which the generator reaches ``i``."""
    wit = conjugacy_witness(phi, max(size, phi.tau))
    inv = wit.inverse()
    fam = {i: QVector.basis(inv[i]) for i in range(size)}
    return PhiShiftInstance(phi, fam, shift(size + 1)), wit


def test_transfer_succ_identity():
    inst, wit = orbit_family(SUCC, 6)
    rep = transfer_independence(inst, wit)
    assert rep.agree and rep.family_free and rep.covers_family


def test_transfer_relabeled_independent():
    inst, wit = orbit_family(RELABELED, 6)
    assert inst.violations() == []
    rep = transfer_independence(inst, wit)
    assert rep.agree and rep.family_free and rep.reindexed.free


def test_transfer_relabeled_collapsed():
    fam = {i: QVector.basis(0) for i in range(6)}
    inst = PhiShiftInstance(RELABELED, fam, QMatrix.identity(1))
    rep = transfer_independence(inst, conjugacy_witness(RELABELED, 6))
    assert rep.agree and not rep.family_free
    assert rep.reindexed.first_dependent == 1
    assert rep.family_witness.verify(inst.family)


def test_phi_file_round_trip():
    inst, _ = orbit_family(RELABELED, 5)
    back = instance_from_data(phi_instance_to_data(inst))
    assert back.phi == inst.phi and back.family == inst.family and back.operator == inst.operator


small = st.fractions(min_value=-2, max_value=2, max_denominator=2)


@st.composite
def shift_instances(draw):
    kind = draw(st.sampled_from(["random", "cyclic", "nilpotent", "companion"]))
    d = draw(st.integers(1, 6))
    if kind == "random":
        M = QMatrix.from_rows([[draw(small) for _ in range(d)] for _ in range(d)], d)
    elif kind == "cyclic":
        M = QMatrix.from_columns([QVector.basis((k + 1) % d) for k in range(d)], d)
    elif kind == "nilpotent":
        M = shift(d)
    else:
        coeffs = [draw(small) for _ in range(d)]
        cols = [QVector.basis(k + 1) for k in range(d - 1)] + [V(coeffs)]
        M = QMatrix.from_columns(cols, d)
    e0 = V([draw(small) for _ in range(d)])
    return ShiftInstance.orbit(M, e0, draw(st.integers(0, 14)))


@given(shift_instances())
def test_collapse_forces_the_whole_tail(inst):
    rep = verify_tail_collapse(inst)
    assert rep.consistent
    if rep.first_dependent is not None:
        m = rep.first_dependent
        S = Subspace.span(inst.vectors[:m])
        assert all(S.contains(v) for v in inst.vectors[m:])


@given(shift_instances())
def test_rank_profile_steps_by_zero_or_one(inst):
    prof = verify_tail_collapse(inst).rank_profile
    assert prof[0] == 0
    assert all(b - a in (0, 1) for a, b in zip(prof, prof[1:]))
    if prof[-1] == inst.window + 1:
        assert first_dependent_index(inst) is None


gen_maps = st.sampled_from([
    SUCC,
    RELABELED,
    SelfMapPresentation({0: 3, 3: 1, 1: 2, 2: 4}),
    SelfMapPresentation({2: 0, 0: 1, 1: 3}),
])


@given(gen_maps, st.integers(4, 9), st.integers(0, 3))
def test_transfer_verdict_does_not_depend_on_witness_length(phi, size, extra):
    inst, _ = orbit_family(phi, size)
    verdicts = {
        transfer_independence(inst, conjugacy_witness(phi, size + k)).reindexed.free
        for k in range(extra + 1)
    }
    assert len(verdicts) == 1
