"""Acceptance criteria, one test each.

Every test prints a single ``ACCEPTANCE <n> PASS|FAIL <summary>`` line
(shown even under capture) before asserting.  Time limits are part of the
criterion where one is stated.
"""
import random
import time
from fractions import Fraction

import pytest

from partlog.analysis import (Direction, Verdict, check_bounds_12, classify_pairs,
                              scan_log_behavior, verify_telescoping, verify_theorem_11)
from partlog.exactnum import Method, Ordering, compare_powers
from partlog.examples import (ExampleFamily, LogConcavity, SubMultiplicative, Condition13,
                              example_values, fibonacci_identities, sqrt_family_compare,
                              verify_example4, verify_example5, verify_fibonacci,
                              verify_periodic, verify_remark1)
from partlog.logpoly import (empirical_log_behavior, logpoly_data, random_domain,
                             theorem42_abundance_check)
from partlog.partitions import PartitionFamily, generate, is_generalized_pentagonal, oracle_generate
from partlog.tables import TableId, reproduce_table, verify_mary_table

LOGPOLY_SEED = 20240601


@pytest.fixture
def report(capsys):
    def _report(n: int, ok: bool, summary: str):
        with capsys.disabled():
            print(f"\nACCEPTANCE {n:>2} {'PASS' if ok else 'FAIL'} {summary}")
        assert ok, summary
    return _report


def test_01_bessenrodt_ono(report):
    t0 = time.perf_counter()
    seq = generate(PartitionFamily.unrestricted(), 52)
    grid = classify_pairs(seq, (2, 26), (2, 26))
    elapsed = time.perf_counter() - t0
    fails = set(grid.failures)
    eqs = set(grid.equalities)
    ok = (fails == {(2, 2), (2, 3), (2, 4), (2, 5), (3, 3), (3, 5)}
          and eqs == {(2, 6), (2, 7), (3, 4)} and elapsed < 1.0)
    report(1, ok, f"p on [2,26]^2: failures={sorted(fails)} equalities={sorted(eqs)} "
                  f"({elapsed:.2f}s)")


def test_02_condition_witnesses(report):
    t0 = time.perf_counter()
    a = compare_powers(1958, 26, 2436, 25, prefilter=False)
    b = compare_powers(390, 33, 448, 32, prefilter=False)
    elapsed = time.perf_counter() - t0
    ok = (a.ordering is b.ordering is Ordering.GREATER
          and a.method is b.method is Method.EXACT_BIG_POWER and elapsed < 1.0)
    report(2, ok, f"1958^26 vs 2436^25 -> {a.ordering.name}, 390^33 vs 448^32 -> "
                  f"{b.ordering.name} via {a.method.value}")


def test_03_thresholds(report):
    p = scan_log_behavior(generate(PartitionFamily.unrestricted(), 201), Direction.CONCAVE, 200)
    pbar = scan_log_behavior(generate(PartitionFamily.overpartition(), 2001),
                             Direction.CONCAVE, 2000)
    pd = scan_log_behavior(generate(PartitionFamily.distinct(), 2001), Direction.CONCAVE, 2000)
    t0 = time.perf_counter()
    # the time limit covers generation as well as the scan
    p2 = scan_log_behavior(generate(PartitionFamily.power(2), 3001), Direction.CONCAVE, 3000)
    elapsed = time.perf_counter() - t0
    pd_ok = pd.candidate_N <= 32 and all(v <= 32 for v in pd.violations)
    ok = p.candidate_N == 25 and pbar.candidate_N == 0 and pd_ok and p2.candidate_N == 1041 \
        and elapsed < 60
    report(3, ok, f"candidate_N: p={p.candidate_N} pbar={pbar.candidate_N} "
                  f"pd={pd.candidate_N} (last violation) p2={p2.candidate_N} ({elapsed:.1f}s)")


def test_04_table1(report):
    t0 = time.perf_counter()
    d = reproduce_table(TableId.TABLE1_PD, ((1, 60), (1, 60)))
    elapsed = time.perf_counter() - t0
    missing = sum(len(v) for v in d.missing_in_computed.values())
    extra = sum(len(v) for v in d.extra_in_computed.values())
    ok = missing == 0 and extra == 0 and elapsed < 5
    report(4, ok, f"Table1_Pd on [1,60]^2: missing={missing} extra={extra} ({elapsed:.2f}s)")


def test_05_overpartition(report):
    t0 = time.perf_counter()
    grid = classify_pairs(generate(PartitionFamily.overpartition(), 100), (1, 50))
    elapsed = time.perf_counter() - t0
    ok = grid.equalities == [(1, 1), (1, 2)] and grid.failures == [] and elapsed < 5
    report(5, ok, f"pbar on [1,50]^2: equalities={grid.equalities} "
                  f"failures={len(grid.failures)}")


def test_06_mary_table(report):
    t0 = time.perf_counter()
    results = {m: verify_mary_table(m, 300) for m in (2, 3, 4, 5, 6, 7)}
    elapsed = time.perf_counter() - t0
    bad = {m: {"missing": {k: v for k, v in d.missing_in_computed.items() if v},
               "extra": {k: v for k, v in d.extra_in_computed.items() if v}}
           for m, d in results.items() if not d.passed}
    ok = not bad and elapsed < 60
    report(6, ok, f"m-ary tables, beta <= 300: mismatches {bad or 'none'} ({elapsed:.1f}s)")


ORACLE_FAMILIES = [
    "unrestricted", "distinct", "overpartition", "power2", "power3", "mary2", "mary3",
    "mary5", "fractional(-1)", "fractional(1)", "fractional(-1/2)", "fractional(2/3)",
    "multiset(1,2,2,5)",
]


def test_07_oracle_equivalence(report):
    mismatched = [f for f in ORACLE_FAMILIES
                  if generate(PartitionFamily.parse(f), 300).values
                  != oracle_generate(PartitionFamily.parse(f), 300).values]
    minus_one = generate(PartitionFamily.fractional(-1), 300).values == \
        generate(PartitionFamily.unrestricted(), 300).values
    plus_one = generate(PartitionFamily.fractional(1), 300)
    support = all((v != 0) == is_generalized_pentagonal(n) and v in (-1, 0, 1)
                  for n, v in plus_one.items())
    ok = not mismatched and minus_one and support
    report(7, ok, f"oracle mismatches={mismatched or 'none'}, alpha=-1 is p: {minus_one}, "
                  f"alpha=+1 pentagonal support: {support}")


def test_08_theorem_suite(report):
    rng = random.Random(8)
    lines = []
    ok = True
    for family, N, k, M, box in [("unrestricted", 25, 0, 25, 80), ("distinct", 32, 0, 32, 120),
                                 ("overpartition", 0, 0, 0, 60)]:
        seq = generate(PartitionFamily.parse(family), max(2 * box, 300))
        rep = verify_theorem_11(seq, N, k, M, box)
        bounds_ok = True
        for _ in range(500):
            n = rng.randint(N + 1, 299)
            m = rng.randint(0, 300 - n)
            bounds_ok &= check_bounds_12(seq, N, n, m) == (True, True)
        ok &= rep.passed and bounds_ok
        lines.append(f"{family}: theorem={rep.passed} d={rep.d} "
                     f"failures={len(rep.failures)} outside={len(rep.outside_region)} "
                     f"bounds={bounds_ok}")
    report(8, ok, "; ".join(lines))


def test_09_telescoping(report):
    wrong = [(L, m) for L in range(1, 201) for m in range(1, 201)
             if verify_telescoping(7, 7 + L, m) != Fraction(m, L + m)]
    report(9, not wrong, f"telescoping exponent equals m/(n-N+m) on 200x200: "
                         f"{len(wrong)} mismatches")


def test_10_counterexamples(report):
    checks = {
        "remark1": verify_remark1(20).passed,
        "remark1-reciprocal": verify_remark1(20, reciprocal=True).passed,
        "example4": verify_example4().passed,
        "example4-cond13(0,1)": sqrt_family_compare(Condition13(0, 1)).ordering is Ordering.GREATER,
        "example4-logconc(5)": sqrt_family_compare(LogConcavity(5)).ordering is Ordering.GREATER,
        "example4-submult(2,2)": sqrt_family_compare(SubMultiplicative(2, 2)).ordering is Ordering.LESS,
        "example5": verify_example5().passed,
        "periodic2343": verify_periodic(100).passed,
        "fibonacci": verify_fibonacci(200).passed,
    }
    F = example_values(ExampleFamily.FIBONACCI, 402)
    checks["fibonacci-identities"] = all(
        fibonacci_identities(n, m, F) == ((-1) ** n, True)
        for n in range(1, 201) for m in range(1, 201))
    failed = [k for k, v in checks.items() if not v]
    report(10, not failed, f"{len(checks) - len(failed)}/{len(checks)} example checks pass"
                           + (f"; failed: {failed}" if failed else ""))


def test_11_logpoly(report):
    disagree = []
    for r, s, t in random_domain(50, seed=LOGPOLY_SEED):
        kappa = logpoly_data(r, s, t).kappa
        emp = empirical_log_behavior(r, s, t, (100, 5000))
        if emp.asymptotic_sign != kappa:
            disagree.append((str(r), str(s), str(t)))
    exp_rep = theorem42_abundance_check(0, 1, 1, ((1, 40), (1, 40)))
    equal_everywhere = set(exp_rep.verdicts.values()) == {Verdict.EQUAL}
    ok = not disagree and equal_everywhere
    report(11, ok, f"kappa vs empirical sign: {50 - len(disagree)}/50 agree; "
                   f"(r,s)=(0,1) all Equal: {equal_everywhere}")
