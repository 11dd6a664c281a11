import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from partlog.analysis import (Direction, LogBehaviorError, Verdict, check_bounds_12,
                              check_condition_13, classify_pairs, condition_report,
                              extend_a_sequence, find_d_M, find_min_k, in_theorem_region,
                              log_violations, scan_log_behavior, verify_telescoping,
                              verify_theorem_11)
from partlog.examples import ExampleFamily, example_values
from partlog.partitions import ExactSequence, PartitionFamily, generate


def test_thresholds(p_seq, pd_seq):
    assert scan_log_behavior(p_seq, Direction.CONCAVE, 200).candidate_N == 25
    pbar = generate(PartitionFamily.overpartition(), 201)
    rep = scan_log_behavior(pbar, Direction.CONCAVE, 200)
    assert rep.candidate_N == 0 and rep.violations == ()
    rep = scan_log_behavior(pd_seq, Direction.CONCAVE, 500)
    assert rep.candidate_N <= 32 and rep.eventually_holds
    # every odd n up to 25 is a violation for p
    assert scan_log_behavior(p_seq, horizon=200).violations == tuple(range(1, 26, 2))


def test_threshold_power2():
    seq = generate(PartitionFamily.power(2), 3001)
    assert scan_log_behavior(seq, Direction.CONCAVE, 3000).candidate_N == 1041


def test_scan_rejects_nonpositive_values():
    with pytest.raises(ValueError):
        scan_log_behavior(generate(PartitionFamily.fractional(1), 40), horizon=30)


def test_condition_13(p_seq, pd_seq):
    assert check_condition_13(p_seq, 25, 0)
    assert check_condition_13(pd_seq, 32, 0)
    geo = example_values(ExampleFamily.GEOM_MINUS_HALF, 60)
    assert not any(check_condition_13(geo, 0, k) for k in range(51))
    assert find_min_k(p_seq, 25, 10) == 0
    assert find_min_k(geo, 0, 50) is None


def test_find_d_M(p_seq, pd_seq):
    assert find_d_M(p_seq, 25, 0, 25) == 2
    assert find_d_M(pd_seq, 32, 0, 32) == 3
    rep = condition_report(p_seq, 25, 0, 25)
    assert rep.condition13_holds and rep.d == 2 and rep.witness_failures == (1,)
    with pytest.raises(ValueError):
        find_d_M(p_seq, 25, 0, 20)


def test_bounds_examples(p_seq, pbar_seq):
    assert check_bounds_12(p_seq, 25, 30, 5) == (True, True)
    assert check_bounds_12(p_seq, 25, 26, 0) == (True, True)
    assert check_bounds_12(pbar_seq, 0, 10, 7) == (True, True)
    with pytest.raises(LogBehaviorError):
        check_bounds_12(p_seq, 20, 30, 5)


def test_bounds_random_pairs(p_seq, pd_seq, pbar_seq):
    rng = random.Random(12)
    for seq, N in [(p_seq, 25), (pd_seq, 32), (pbar_seq, 0)]:
        for _ in range(150):
            n = rng.randint(N + 1, 299)
            m = rng.randint(0, 300 - n)
            assert check_bounds_12(seq, N, n, m) == (True, True)


def test_bound_soundness_whenever_hypothesis_holds():
    for fam in [PartitionFamily.fractional(-2), PartitionFamily.fractional(Fraction(-3, 2)),
                PartitionFamily.power(2)]:
        seq = generate(fam, 300)
        N = scan_log_behavior(seq, horizon=299).candidate_N
        if N >= 290:
            continue
        for n in range(N + 1, 300, 7):
            for m in range(0, 300 - n + 1, 11):
                assert check_bounds_12(seq, N, n, m) == (True, True)


@pytest.mark.parametrize("N,n,m,value", [(0, 3, 4, Fraction(4, 7)), (25, 30, 1, Fraction(1, 6)),
                                         (2, 10, 17, Fraction(17, 25))])
def test_telescoping_examples(N, n, m, value):
    assert verify_telescoping(N, n, m) == value


def test_telescoping_identity_all():
    for L in range(1, 201):
        for m in range(1, 201):
            assert verify_telescoping(0, L, m) == Fraction(m, L + m)


def test_a_sequence(p_seq, pd_seq):
    a = extend_a_sequence(p_seq, 25, 0)
    assert a[0] == Fraction(1958 ** 26, 2436 ** 25)
    assert a[0] >= 1
    assert not log_violations(a, 1, a.stop - 1)
    assert all(a[j] == p_seq[j] for j in range(25, 300))
    b = extend_a_sequence(pd_seq, 32, 0)
    assert b[0] >= 1
    flat = ExactSequence("flat", 0, (5, 3, 3, 4))
    assert list(extend_a_sequence(flat, 1, 0))[:2] == [3, 3]


@settings(max_examples=30, deadline=None)
@given(st.sampled_from(["unrestricted", "distinct", "overpartition", "fractional(-2)"]),
       st.integers(0, 40))
def test_a_sequence_properties(family, extra):
    seq = generate(PartitionFamily.parse(family), 300)
    N = scan_log_behavior(seq, horizon=299).candidate_N
    k = extra
    a = extend_a_sequence(seq, N, k)
    assert not log_violations(a, 1, a.stop - 1)
    if check_condition_13(seq, N, k):
        assert a[0] >= 1


def test_classify_pairs(p_seq, pbar_seq):
    grid = classify_pairs(p_seq, (2, 26))
    assert grid.failures == [(2, 2), (2, 3), (2, 4), (2, 5), (3, 3), (3, 5)]
    assert grid.equalities == [(2, 6), (2, 7), (3, 4)]
    assert grid[(6, 2)] is Verdict.EQUAL
    over = classify_pairs(pbar_seq, (1, 50))
    assert over.equalities == [(1, 1), (1, 2)] and over.failures == []


def test_fibonacci_is_deficient():
    F = example_values(ExampleFamily.FIBONACCI, 70)
    grid = classify_pairs(F, (1, 30), mode=Direction.CONVEX)
    assert grid.failures == [] and grid.equalities == [(1, 1)]
    assert classify_pairs(F, (2, 30), mode=Direction.CONVEX).equalities == []


def test_parallel_merge_is_deterministic(p_seq):
    one = classify_pairs(p_seq, (1, 40))
    three = classify_pairs(p_seq, (1, 40), workers=3)
    assert list(one.verdicts.items()) == list(three.verdicts.items())


def test_duality(p_seq, pd_seq):
    for seq in (p_seq, pd_seq):
        inv = seq.reciprocal()
        conc = classify_pairs(seq, (1, 40))
        conv = classify_pairs(inv, (1, 40), mode=Direction.CONVEX)
        assert conc.verdicts == conv.verdicts
        assert scan_log_behavior(seq, horizon=300).violations == \
            scan_log_behavior(inv, Direction.CONVEX, 300).violations
        for N, k in [(25, 0), (32, 0), (3, 4)]:
            assert check_condition_13(seq, N, k) == check_condition_13(inv, N, k, Direction.CONVEX)
            assert find_d_M(seq, N, k, N + k + 2) == find_d_M(inv, N, k, N + k + 2,
                                                               Direction.CONVEX)
        assert check_bounds_12(seq, 40, 60, 30) == check_bounds_12(inv, 40, 60, 30,
                                                                   Direction.CONVEX)


@pytest.mark.parametrize("family,N,k,M,box", [("unrestricted", 25, 0, 25, 80),
                                              ("distinct", 32, 0, 32, 120),
                                              ("overpartition", 0, 0, 0, 60)])
def test_theorem_examples(family, N, k, M, box):
    seq = generate(PartitionFamily.parse(family), 2 * box)
    rep = verify_theorem_11(seq, N, k, M, box)
    assert rep.passed, rep.notes
    assert all(in_theorem_region(p, rep.d, N, k, M) for p in rep.failures)
    if family == "overpartition":
        assert [p for p in rep.failures if min(p) >= 1] == []


def test_theorem_detects_missing_hypothesis(p_seq):
    rep = verify_theorem_11(p_seq, 20, 0, 20, 40)
    assert not rep.passed and rep.log_violations_above_N


THEOREM_FAMILIES = ["unrestricted", "distinct", "overpartition", "fractional(-2)",
                    "fractional(-3/2)", "fractional(-5/2)"]


@pytest.mark.parametrize("family", THEOREM_FAMILIES)
def test_theorem_soundness(family):
    box = 150
    seq = generate(PartitionFamily.parse(family), 2 * box)
    N = scan_log_behavior(seq, horizon=2 * box - 1).candidate_N
    k = find_min_k(seq, N, 20)
    assert k is not None
    checked = 0
    for M in range(N + k, N + k + 6):
        d = find_d_M(seq, N, k, M)
        if d is None:
            continue
        rep = verify_theorem_11(seq, N, k, M, box)
        assert rep.passed
        assert rep.outside_region == []
        checked += 1
    assert checked
