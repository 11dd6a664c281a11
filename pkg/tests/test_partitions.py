from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from partlog.partitions import (ExactSequence, Kind, PartitionFamily, dumps_sequence,
                                enumerate_partitions, extend, generate, is_generalized_pentagonal,
                                loads_sequence, oracle_generate)

ALL_FAMILIES = [
    PartitionFamily.unrestricted(),
    PartitionFamily.distinct(),
    PartitionFamily.overpartition(),
    PartitionFamily.power(2),
    PartitionFamily.power(3),
    PartitionFamily.mary(2),
    PartitionFamily.mary(3),
    PartitionFamily.mary(7),
    PartitionFamily.fractional(-1),
    PartitionFamily.fractional(1),
    PartitionFamily.fractional(Fraction(-1, 2)),
    PartitionFamily.fractional(Fraction(3, 2)),
    PartitionFamily.multiset((1, 2, 2, 5)),
    PartitionFamily.multiset((3, 4)),
]


def test_printed_values():
    assert list(generate(PartitionFamily.unrestricted(), 4)) == [1, 1, 2, 3, 5]
    assert generate(PartitionFamily.overpartition(), 4)[4] == 14
    pd = generate(PartitionFamily.distinct(), 33)
    assert (pd[32], pd[33]) == (390, 448)
    assert generate(PartitionFamily.power(2), 4)[4] == 2
    assert generate(PartitionFamily.power(3), 4)[4] == 1
    assert [generate(PartitionFamily.mary(m), 4)[4] for m in (2, 3, 4, 5, 9)] == [4, 2, 2, 1, 1]
    p = oracle_generate(PartitionFamily.unrestricted(), 26)
    assert (p[25], p[26]) == (1958, 2436)
    assert oracle_generate(PartitionFamily.distinct(), 8)[8] == 6
    assert oracle_generate(PartitionFamily.mary(4), 4)[4] == 2


def test_multiset_small():
    assert generate(PartitionFamily.multiset((1, 2)), 4)[4] == 3
    assert generate(PartitionFamily.multiset((1, 2)), 4)[4] == sum(1 for _ in enumerate_partitions(4, [1, 2]))
    # repeated entries are different part types: 1/(1-q)(1-q^2)^2 at q^2 is 3
    assert generate(PartitionFamily.multiset((1, 2, 2)), 2)[2] == 3


@pytest.mark.parametrize("family", ALL_FAMILIES, ids=str)
def test_oracle_equivalence(family):
    assert generate(family, 300).values == oracle_generate(family, 300).values


@pytest.mark.parametrize("family", ALL_FAMILIES, ids=str)
def test_extend_matches_fresh_generation(family):
    assert extend(generate(family, 120), 300).values == generate(family, 300).values


def test_brute_force_agrees_for_small_n():
    p = generate(PartitionFamily.unrestricted(), 20)
    pd = generate(PartitionFamily.distinct(), 20)
    for n in range(21):
        parts = range(1, n + 1)
        assert sum(1 for _ in enumerate_partitions(n, parts)) == p[n]
        assert sum(1 for _ in enumerate_partitions(n, parts, distinct=True)) == pd[n]


def test_fractional_minus_one_is_p():
    assert generate(PartitionFamily.fractional(-1), 300).values == \
        generate(PartitionFamily.unrestricted(), 300).values


def test_fractional_plus_one_support():
    seq = generate(PartitionFamily.fractional(1), 300)
    for n, v in seq.items():
        assert v in (-1, 0, 1)
        assert (v != 0) == is_generalized_pentagonal(n)
    assert list(generate(PartitionFamily.fractional(1), 15)) == \
        [1, -1, -1, 0, 0, 1, 0, 1, 0, 0, 0, 0, -1, 0, 0, -1]


def _convolve(a, b, upto):
    return [sum(a[i] * b[n - i] for i in range(n + 1)) for n in range(upto + 1)]


@pytest.mark.parametrize("k", [2, 3, 4])
def test_fractional_negative_integer_is_colored_partitions(k):
    upto = 300
    p = list(generate(PartitionFamily.unrestricted(), upto))
    acc = p
    for _ in range(k - 1):
        acc = _convolve(acc, p, upto)
    assert list(generate(PartitionFamily.fractional(-k), upto)) == acc


def test_half_powers_square_back():
    upto = 120
    half = list(generate(PartitionFamily.fractional(Fraction(-1, 2)), upto))
    assert _convolve(half, half, upto) == list(generate(PartitionFamily.unrestricted(), upto))


def test_euler_odd_parts():
    upto = 500
    odd = PartitionFamily.multiset(tuple(range(1, upto + 1, 2)))
    assert generate(odd, upto).values == generate(PartitionFamily.distinct(), upto).values


def test_monotonicity():
    p = generate(PartitionFamily.unrestricted(), 400)
    pbar = generate(PartitionFamily.overpartition(), 400)
    pd = generate(PartitionFamily.distinct(), 400)
    assert all(p[n] < p[n + 1] for n in range(1, 400))
    assert all(pbar[n] < pbar[n + 1] for n in range(1, 400))
    assert all(pd[n] <= pd[n + 1] for n in range(400))


@pytest.mark.parametrize("text", ["unrestricted", "distinct", "overpartition", "power2",
                                  "mary3", "fractional(-1/2)", "fractional(2)",
                                  "multiset(1,2,2,5)"])
def test_canonical_round_trip(text):
    fam = PartitionFamily.parse(text)
    assert fam.canonical() == text
    assert PartitionFamily.parse(fam.canonical()) == fam


def test_aliases_and_bad_families():
    assert PartitionFamily.parse("p").kind is Kind.UNRESTRICTED
    assert PartitionFamily.parse("pd") == PartitionFamily.distinct()
    for bad in ["power0", "mary1", "multiset()", "multiset(2,1)", "nonsense", "fractional(0.5)"]:
        with pytest.raises(ValueError):
            PartitionFamily.parse(bad)


def test_sequence_file_round_trip():
    seq = generate(PartitionFamily.fractional(Fraction(-1, 3)), 40)
    text = dumps_sequence(seq)
    back = loads_sequence(text)
    assert back.values == seq.values and back.family == seq.family
    assert dumps_sequence(back) == text
    assert text.splitlines()[0] == "partlog-seq v1 family=fractional(-1/3) start=0 count=41"


def test_sequence_indexing():
    seq = ExactSequence("demo", 5, (1, 2, 3))
    assert seq[5] == 1 and seq.stop == 7
    with pytest.raises(IndexError):
        seq[8]
    with pytest.raises(IndexError):
        seq.require(4, 7)
    with pytest.raises(TypeError):
        ExactSequence("demo", 0, (1.5,))


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 200), st.integers(0, 200))
def test_extend_is_prefix_stable(a, b):
    lo, hi = sorted((a, b))
    fam = PartitionFamily.power(2)
    assert extend(generate(fam, lo), hi).values == generate(fam, hi).values
