"""Hand-built sequences that probe the edges of the log-concavity criteria.

Everything is exact.  The ``2**sqrt(n)`` family has no rational values, so
it is only available through :func:`sqrt_family_compare`, which decides each
comparison by exact sign analysis of sums of square roots in the exponent.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Optional, Tuple, Union

from .analysis import (Direction, check_condition_13, classify_pairs,
                       find_d_M, log_violations, verify_theorem_11)
from .exactnum import Method, Ordering, PowerComparison, compare_powers, compare_products
from .partitions import ExactSequence, PartitionFamily, generate


class ExampleFamily(enum.Enum):
    GEOM_MINUS_HALF = "geom-minus-half"
    GEOM_MINUS_HALF_RECIPROCAL = "geom-minus-half-reciprocal"
    PERIODIC_2343 = "periodic2343"
    FIBONACCI = "fibonacci"
    TWO_POW_SQRT = "two-pow-sqrt"
    SPLICED_RATIO = "spliced-ratio"

    def canonical(self) -> str:
        return self.value


SPLICE_INDEX = 25
SPLICE_RATIO = Fraction(31, 25)
SPLICE_OFFSET = Fraction(1, 10 ** 6)


def example_values(kind: ExampleFamily, upto: int) -> ExactSequence:
    """Exact values ``x_0 .. x_upto`` of a constructed sequence."""
    if upto < 0:
        raise ValueError("upto must be nonnegative")
    if kind is ExampleFamily.TWO_POW_SQRT:
        raise ValueError("2**sqrt(n) has no rational values; use sqrt_family_compare")
    if kind is ExampleFamily.GEOM_MINUS_HALF:
        values = [Fraction(2 ** n) - Fraction(1, 2) for n in range(upto + 1)]
    elif kind is ExampleFamily.GEOM_MINUS_HALF_RECIPROCAL:
        values = [1 / (Fraction(2 ** n) - Fraction(1, 2)) for n in range(upto + 1)]
    elif kind is ExampleFamily.PERIODIC_2343:
        values = [(2, 3, 4, 3)[n % 4] for n in range(upto + 1)]
    elif kind is ExampleFamily.FIBONACCI:
        values = [0, 1]
        while len(values) <= upto:
            values.append(values[-1] + values[-2])
        values = values[:upto + 1]
    elif kind is ExampleFamily.SPLICED_RATIO:
        head = [SPLICE_RATIO ** n + SPLICE_OFFSET for n in range(min(upto, SPLICE_INDEX - 1) + 1)]
        tail = []
        if upto >= SPLICE_INDEX:
            p = generate(PartitionFamily.unrestricted(), upto)
            tail = [p[n] for n in range(SPLICE_INDEX, upto + 1)]
        values = head + tail
    else:  # pragma: no cover
        raise ValueError(kind)
    return ExactSequence(kind, 0, tuple(values))


# ---------------------------------------------------------------------------
# exact signs of sums of square roots

Radicals = Dict[int, Fraction]


def _square_split(r: int) -> Tuple[int, int]:
    """Write ``r = s*s*f`` with ``f`` free of small square factors; return (s, f)."""
    root = math.isqrt(r)
    if root * root == r:
        return root, 1
    s = 1
    p = 2
    while p * p <= r and p < 1000:
        while r % (p * p) == 0:
            r //= p * p
            s *= p
        p += 1
    return s, r


def _normalize(expr: Radicals) -> Radicals:
    out: Radicals = {}
    for r, c in expr.items():
        if c == 0 or r == 0:
            continue
        if r < 0:
            raise ValueError("negative radicand")
        s, f = _square_split(r)
        out[f] = out.get(f, Fraction(0)) + c * s
    return {r: c for r, c in out.items() if c != 0}


def _square(terms: Radicals) -> Radicals:
    items = list(terms.items())
    out: Radicals = {}
    for i, (r1, c1) in enumerate(items):
        out[r1 * r1] = out.get(r1 * r1, Fraction(0)) + c1 * c1
        for r2, c2 in items[i + 1:]:
            out[r1 * r2] = out.get(r1 * r2, Fraction(0)) + 2 * c1 * c2
    return out


def radical_sign(expr: Radicals, depth: int = 0) -> int:
    """Exact sign of ``sum(c * sqrt(r))`` over the mapping ``{r: c}``.

    Positive and negative parts are separated and squared until at most one
    radical remains.  Shapes that do not terminate within a few rounds
    are rejected.
    """
    expr = _normalize(expr)
    if not expr:
        return 0
    if len(expr) == 1:
        (c,) = expr.values()
        return 1 if c > 0 else -1
    pos = {r: c for r, c in expr.items() if c > 0}
    neg = {r: -c for r, c in expr.items() if c < 0}
    if not neg:
        return 1
    if not pos:
        return -1
    if depth > 8:
        raise ValueError("unsupported comparison shape")
    diff = _square(pos)
    for r, c in _square(neg).items():
        diff[r] = diff.get(r, Fraction(0)) - c
    return radical_sign(diff, depth + 1)


def _two_pow_sqrt_exponent(i: int) -> Radicals:
    """log2 of the i-th term: -1 at index 0, sqrt(i) above."""
    if i < 0:
        raise ValueError("negative index")
    if i == 0:
        return {1: Fraction(-1)}
    return {i: Fraction(1)}


def _add(*parts: Tuple[int, Radicals]) -> Radicals:
    out: Radicals = {}
    for scale, expr in parts:
        for r, c in expr.items():
            out[r] = out.get(r, Fraction(0)) + scale * c
    return out


@dataclass(frozen=True)
class LogConcavity:
    """``a_{n+1}**2`` versus ``a_n * a_{n+2}``."""
    n: int


@dataclass(frozen=True)
class SubMultiplicative:
    """``a_{n+m}`` versus ``a_n * a_m``."""
    n: int
    m: int


@dataclass(frozen=True)
class Condition13:
    """``a_{N+k}**(N+k+1)`` versus ``a_{N+k+1}**(N+k)``."""
    N: int
    k: int


SqrtCheck = Union[LogConcavity, SubMultiplicative, Condition13]


def sqrt_family_compare(check: SqrtCheck) -> PowerComparison:
    """Decide a comparison on ``a_0 = 1/2, a_n = 2**sqrt(n)`` exactly.

    Since ``2**x`` is increasing, each comparison reduces to the sign of a
    difference of exponents, which is a small sum of square roots.
    """
    e = _two_pow_sqrt_exponent
    if isinstance(check, LogConcavity):
        n = check.n
        diff = _add((2, e(n + 1)), (-1, e(n)), (-1, e(n + 2)))
    elif isinstance(check, SubMultiplicative):
        diff = _add((1, e(check.n + check.m)), (-1, e(check.n)), (-1, e(check.m)))
    elif isinstance(check, Condition13):
        j = check.N + check.k
        diff = _add((j + 1, e(j)), (-j, e(j + 1)))
    else:
        raise TypeError(f"unsupported comparison shape: {check!r}")
    return PowerComparison(Ordering(radical_sign(diff)), Method.EXPONENT_ALGEBRA)


# ---------------------------------------------------------------------------
# reports


@dataclass
class ExampleReport:
    name: str
    checks: Dict[str, bool] = field(default_factory=dict)
    details: Dict[str, object] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return bool(self.checks) and all(self.checks.values())


def fibonacci_identities(n: int, m: int, seq: Optional[ExactSequence] = None
                         ) -> Tuple[int, bool]:
    """Cassini's value ``F_{n+1}F_{n-1} - F_n**2`` and the addition identity
    ``F_{n+m} = F_{m+1}F_n + F_m F_{n-1}``."""
    if n < 1 or m < 1:
        raise ValueError("need n, m >= 1")
    if seq is None:
        seq = example_values(ExampleFamily.FIBONACCI, n + m + 1)
    seq.require(0, max(n + m, m + 1, n + 1))
    F = seq.__getitem__
    cassini = F(n + 1) * F(n - 1) - F(n) ** 2
    if cassini not in (1, -1):
        raise ArithmeticError(f"Cassini value {cassini} at n={n}")
    return cassini, F(n + m) == F(m + 1) * F(n) + F(m) * F(n - 1)


def verify_remark1(upto: int = 20, reciprocal: bool = False) -> ExampleReport:
    """``2**n - 1/2``: log-concave, no root condition, and deficient instead of abundant.

    With ``reciprocal`` the same statements are checked on ``1/(2**n - 1/2)``
    with every inequality reversed.
    """
    if upto < 4:
        raise ValueError("upto must be at least 4")
    kind = (ExampleFamily.GEOM_MINUS_HALF_RECIPROCAL if reciprocal
            else ExampleFamily.GEOM_MINUS_HALF)
    a = example_values(kind, upto)
    mode = Direction.CONVEX if reciprocal else Direction.CONCAVE
    report = ExampleReport(kind.value)

    strict_log = all(
        Ordering.of(a[n] * a[n], a[n - 1] * a[n + 1]) == mode.orient(Ordering.GREATER)
        for n in range(1, upto))
    report.checks[f"strictly log-{mode.value}"] = strict_log

    report.checks["root condition fails for every N+k"] = not any(
        check_condition_13(a, j, 0, mode) for j in range(upto))

    # abundance on the wrong side: a_n a_m < a_{n+m} (reciprocal: >)
    wrong_side = mode.orient(Ordering.LESS)
    report.checks["products strictly on the deficient side" if not reciprocal
                  else "products strictly on the abundant side"] = all(
        Ordering.of(a[n] * a[m], a[n + m]) == wrong_side
        for n in range(upto + 1) for m in range(upto + 1 - n))

    # n-th roots strictly increasing (reciprocal: decreasing)
    report.checks["n-th roots strictly monotone"] = all(
        compare_powers(a[n], n + 1, a[n + 1], n).ordering == wrong_side
        for n in range(1, upto))
    return report


def verify_example4(limit: int = 60) -> ExampleReport:
    report = ExampleReport(ExampleFamily.TWO_POW_SQRT.value)
    report.checks["a_1^2 > a_0 a_2"] = (
        sqrt_family_compare(LogConcavity(0)).ordering is Ordering.GREATER)
    report.checks["strictly log-concave for n >= 1"] = all(
        sqrt_family_compare(LogConcavity(n)).ordering is Ordering.GREATER
        for n in range(1, limit))
    report.checks["a_{n+m} < a_n a_m for n, m >= 1"] = all(
        sqrt_family_compare(SubMultiplicative(n, m)).ordering is Ordering.LESS
        for n in range(1, limit) for m in range(1, limit))
    report.checks["root condition at N=0 fails, at (N, k) = (0, 1) holds"] = (
        sqrt_family_compare(Condition13(0, 0)).ordering is Ordering.LESS
        and sqrt_family_compare(Condition13(0, 1)).ordering is Ordering.GREATER)
    return report


def verify_example5(box: int = 100) -> ExampleReport:
    """The spliced ``(31/25)**n + 10**-6`` / ``p(n)`` sequence needs ``M > N + k``."""
    a = example_values(ExampleFamily.SPLICED_RATIO, max(2 * box, 201))
    report = ExampleReport(ExampleFamily.SPLICED_RATIO.value)
    report.checks["log-concave for 25 <= n <= 200"] = not log_violations(a, 25, 200)
    report.checks["a_n^(1/n) < a_26/a_25 for 1 <= n <= 24"] = all(
        compare_products([(a[n], 1), (a[25], n)], [(a[26], n)]).ordering is Ordering.LESS
        for n in range(1, 25))
    report.checks["a_26/a_25 < a_25/a_24"] = a[26] * a[24] < a[25] * a[25]
    report.checks["a_n^(1/n) > a_27/a_26 for 1 <= n <= 25"] = all(
        compare_products([(a[n], 1), (a[26], n)], [(a[27], n)]).ordering is Ordering.GREATER
        for n in range(1, 26))
    N = 24
    report.checks["root condition holds at (N, k) = (24, 1)"] = check_condition_13(a, N, 1)
    report.checks["no d works with (N, k, M) = (24, 0, 24)"] = find_d_M(a, N, 0, 24) is None
    report.checks["d = 1 with M = 26"] = find_d_M(a, N, 1, 26) == 1
    theorem = verify_theorem_11(a, N, 1, 26, box)
    report.checks["theorem hypotheses certified, failures in region"] = theorem.passed
    report.checks["failures confined to [1,25]^2"] = all(
        max(pair) <= 25 for pair in theorem.failures)
    report.details["failures"] = theorem.failures
    report.details["equalities"] = theorem.equalities
    return report


def verify_periodic(upto: int = 100) -> ExampleReport:
    """2,3,4,3,... is neither log-concave nor log-convex, yet abundant."""
    a = example_values(ExampleFamily.PERIODIC_2343, 2 * upto + 2)
    report = ExampleReport(ExampleFamily.PERIODIC_2343.value)
    concave_bad = set(log_violations(a, 1, 2 * upto, Direction.CONCAVE))
    convex_bad = set(log_violations(a, 1, 2 * upto, Direction.CONVEX))
    report.checks["log-concavity fails exactly at n = 0 mod 4"] = concave_bad == {
        n for n in range(1, 2 * upto + 1) if n % 4 == 0}
    # convexity also fails at odd n (9 > 8); only the n = 2 mod 4 failures are claimed
    report.checks["log-convexity fails at every n = 2 mod 4"] = {
        n for n in range(1, 2 * upto + 1) if n % 4 == 2} <= convex_bad
    grid = classify_pairs(a, (0, upto), (0, upto), Direction.CONCAVE)
    report.checks["abundant: no failures on [0, upto]^2"] = not grid.failures

    def root_rises(n: int) -> bool:
        return compare_powers(a[n + 1], n + 2, a[n + 2], n + 1).holds_le

    report.checks["roots rise exactly when n = 0, 3 mod 4 (n >= 1)"] = all(
        root_rises(n) == (n % 4 in (0, 3)) for n in range(1, upto + 1))
    return report


def verify_fibonacci(limit: int = 200) -> ExampleReport:
    F = example_values(ExampleFamily.FIBONACCI, 2 * limit + 2)
    report = ExampleReport(ExampleFamily.FIBONACCI.value)
    cassini_ok = True
    addition_ok = True
    for n in range(1, limit + 1):
        for m in range(1, limit + 1):
            sign, holds = fibonacci_identities(n, m, F)
            cassini_ok &= sign == (-1) ** n
            addition_ok &= holds
    report.checks["Cassini sign is (-1)^n"] = cassini_ok
    report.checks["addition identity"] = addition_ok
    grid = classify_pairs(F, (1, limit), (1, limit), Direction.CONVEX)
    report.checks["deficient with the single equality (1,1)"] = (
        not grid.failures and grid.equalities == [(1, 1)])
    report.checks["n-th roots strictly increase for n >= 2"] = all(
        compare_powers(F[n], n + 1, F[n + 1], n).ordering is Ordering.LESS
        for n in range(2, limit + 1))
    return report


def fibonacci_condition_grid(n_max: int = 30, k_max: int = 5) -> Dict[Tuple[int, int], bool]:
    """Convex-side root condition on the Fibonacci numbers for ``1 <= N <= n_max``."""
    F = example_values(ExampleFamily.FIBONACCI, n_max + k_max + 2)
    return {(N, k): check_condition_13(F, N, k, Direction.CONVEX)
            for N in range(1, n_max + 1) for k in range(k_max + 1)}


EXAMPLE_CHECKS = {
    "remark1": lambda: verify_remark1(20),
    "remark1-reciprocal": lambda: verify_remark1(20, reciprocal=True),
    "two-pow-sqrt": verify_example4,
    "spliced-ratio": verify_example5,
    "periodic2343": verify_periodic,
    "fibonacci": verify_fibonacci,
}
