import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from shiftfree.ordercore import (
    LEMMAS,
    DoubleSequence,
    EventuallyPeriodicSeq,
    FinitePreorder,
    JoinSemilattice,
    Projection,
    check_double_bound,
    check_orbit_bound,
    check_tail_bound,
    generate_instance,
    instance_from_data,
    random_monotone,
    random_preorder,
    random_projection,
    random_semilattice,
    run_batch,
    structure_hash,
    validate_monotone,
)

E = EventuallyPeriodicSeq


def chain(n):
    return JoinSemilattice([[a <= b for b in range(n)] for a in range(n)])


def powerset2():
    # 0 = {}, 1 = {x}, 2 = {y}, 3 = {x, y}
    sets = [set(), {"x"}, {"y"}, {"x", "y"}]
    return JoinSemilattice([[a <= b for b in sets] for a in sets])


def test_preorder_validation():
    with pytest.raises(ValueError):
        FinitePreorder([[True, False], [False, False]])
    with pytest.raises(ValueError):
        FinitePreorder([[1, 1, 0], [0, 1, 1], [0, 0, 1]])
    P = FinitePreorder.from_pairs(3, [(0, 1), (1, 2)])
    assert P.le(0, 2)
    with pytest.raises(ValueError):
        JoinSemilattice(FinitePreorder.from_pairs(2, [(0, 1), (1, 0)]).leq)
    with pytest.raises(ValueError):
        # two maximal elements, no join
        JoinSemilattice(FinitePreorder.from_pairs(3, [(0, 1), (0, 2)]).leq)


def test_projection_validation():
    C = chain(3)
    Projection([0, 2, 2], C)
    with pytest.raises(ValueError):
        Projection([1, 2, 2], C)  # 1 -> 2 but 2 -> 2 while 0 -> 1 -> 2: not idempotent
    with pytest.raises(ValueError):
        Projection([2, 0, 2], C)
    with pytest.raises(ValueError):
        validate_monotone([2, 1, 0], C)


def test_orbit_bound_identity_case():
    C = chain(3)
    ident = Projection([0, 1, 2], C)
    r = check_orbit_bound(C, ident, [0, 1, 2], E.constant(1), 1)
    assert r.hypotheses and r.conclusion


def test_orbit_bound_chain_example():
    C = chain(3)
    r = check_orbit_bound(C, Projection([0, 2, 2], C), [0, 1, 2], E.constant(1), 1)
    assert r.hypotheses and r.conclusion


def test_orbit_bound_vacuous_when_start_not_below():
    C = chain(3)
    r = check_orbit_bound(C, Projection([0, 1, 2], C), [0, 1, 2], E.constant(2), 1)
    assert not r.hypotheses and "a(0) <= p(b)" in r.failed
    assert r.holds


def test_orbit_bound_rejects_non_monotone_map():
    C = chain(3)
    with pytest.raises(ValueError):
        check_orbit_bound(C, Projection([0, 1, 2], C), [2, 1, 0], E.constant(1), 1)


def test_tail_bound_trivial_lattice():
    S = chain(1)
    r = check_tail_bound(S, Projection([0], S), [0], E.constant(0), E.constant(0), 0)
    assert r.hypotheses and r.conclusion


def test_tail_bound_powerset_example():
    S = powerset2()
    ident = Projection([0, 1, 2, 3], S)
    r = check_tail_bound(S, ident, [0, 1, 2, 3], E.constant(1), E.constant(3), 0)
    # f(b(0)) = {x, y} is not below e(0) = {x}
    assert r.failed == ("f(b(m*)) <= join e(i), i <= m*",)
    assert r.conclusion and r.holds


def test_tail_bound_needs_the_standing_hypothesis():
    # every other hypothesis holds, yet the tail escapes at n = 1
    S = JoinSemilattice(FinitePreorder.from_pairs(3, [(0, 2), (1, 2)]).leq)
    p = Projection([0, 1, 2], S)
    e, b = E((), (0, 1)), E((0, 0, 0), (0,))
    r = check_tail_bound(S, p, [1, 0, 2], e, b, 2)
    assert r.failed == ("e(n) <= p(b(n+1)) for all n",)
    assert not r.conclusion and r.counterexample == 1
    r2 = check_double_bound(S, p, [1, 0, 2], DoubleSequence.from_single(e), b, 2)
    assert r2.failed == ("a(m,0) <= p(b(m+1)) for all m",)
    assert not r2.conclusion


def test_double_bound_constant_two_chain():
    C = chain(2)
    a = DoubleSequence((), (E.constant(1),))
    r = check_double_bound(C, Projection([0, 1], C), [0, 1], a, E.constant(1), 0)
    assert r.hypotheses and r.conclusion


def test_bounds_require_increasing_b():
    C = chain(2)
    with pytest.raises(ValueError):
        check_tail_bound(C, Projection([0, 1], C), [0, 1], E.constant(0), E((1,), (0,)), 0)


def test_sequences_and_shifts():
    e = E((5, 6), (1, 2, 3))
    assert [e(n) for n in range(8)] == [5, 6, 1, 2, 3, 1, 2, 3]
    for k in range(7):
        s = e.shifted(k)
        assert [s(n) for n in range(10)] == [e(n + k) for n in range(10)]
    a = DoubleSequence.from_single(e)
    assert all(a(m, n) == e(m + n) for m in range(8) for n in range(8))


@given(st.integers(0, 10_000))
def test_double_reduction_reproduces_tail_verdicts(seed):
    inst = generate_instance("tail", seed)
    e, b, m = inst.args["e"], inst.args["b"], inst.args["m_star"]
    r1 = check_tail_bound(inst.order, inst.p, inst.f, e, b, m)
    r2 = check_double_bound(inst.order, inst.p, inst.f, DoubleSequence.from_single(e), b, m)
    assert (r1.hypotheses, r1.conclusion) == (r2.hypotheses, r2.conclusion)


@given(st.integers(0, 10_000))
def test_semilattice_axioms(seed):
    S = random_semilattice(seed)
    n = range(S.size)
    for x in n:
        assert S.join(x, x) == x
        for y in n:
            assert S.join(x, y) == S.join(y, x)
            assert S.le(x, S.join(x, y))
            for z in n:
                assert S.join(S.join(x, y), z) == S.join(x, S.join(y, z))


@given(st.integers(0, 10_000))
def test_monotone_maps_are_subadditive(seed):
    rng = random.Random(seed)
    S = random_semilattice(rng)
    f = random_monotone(rng, S)
    for x in range(S.size):
        for y in range(S.size):
            assert S.le(S.join(f[x], f[y]), f[S.join(x, y)])


@given(st.integers(0, 10_000))
def test_generated_projections_are_valid(seed):
    S = random_semilattice(seed)
    p = random_projection(seed, S)
    assert all(p(p(x)) == p(x) for x in range(S.size))
    P = random_preorder(random.Random(seed))
    q = random_projection(seed, P)
    assert all(q(q(x)) == q(x) for x in range(P.size))


def test_generators_are_deterministic_and_pinned():
    pinned = {7: "b6b7c46f6d43d67b", 11: "c743e1131d17ea49", 13: "ac2702926045ec27"}
    for seed, h in pinned.items():
        assert structure_hash(random_semilattice(seed)) == h
        assert random_projection(seed, random_semilattice(seed)).table == random_projection(
            seed, random_semilattice(seed)
        ).table


@pytest.mark.parametrize("lemma", LEMMAS)
def test_instance_files_round_trip(lemma):
    for k in range(30):
        inst = generate_instance(lemma, k)
        back = instance_from_data(inst.to_data())
        assert back.check() == inst.check()


@pytest.mark.parametrize("lemma", LEMMAS)
def test_small_batches_hold(lemma):
    rep = run_batch(lemma, 1, 200)
    assert rep.passed and rep.nonvacuous >= 40
