"""Log-concavity scans, root conditions and pair classification for exact sequences.

All checks are exact.  ``Direction.CONCAVE`` is the abundance side
(``x_n x_m >= x_{n+m}``); ``Direction.CONVEX`` reverses every comparison.
"""
from __future__ import annotations

import enum
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from .exactnum import Ordering, PowerComparison, compare_powers, compare_products
from .partitions import ExactSequence

Range = Tuple[int, int]
Pair = Tuple[int, int]


class Direction(enum.Enum):
    CONCAVE = "concave"
    CONVEX = "convex"

    def holds(self, ordering: Ordering) -> bool:
        """Whether ``lhs ? rhs`` holds, where ``?`` is >= (concave) or <= (convex)."""
        if self is Direction.CONCAVE:
            return ordering >= Ordering.EQUAL
        return ordering <= Ordering.EQUAL

    def orient(self, ordering: Ordering) -> Ordering:
        return ordering if self is Direction.CONCAVE else ordering.reverse()

    @classmethod
    def parse(cls, text: str) -> "Direction":
        return cls(text.strip().lower())


class Verdict(enum.Enum):
    STRICT = "strict"
    EQUAL = "equal"
    FAILURE = "failure"


class LogBehaviorError(ValueError):
    """A log-concavity (or log-convexity) precondition does not hold."""


def _check_positive(seq: ExactSequence, lo: int, hi: int) -> None:
    for i in range(lo, hi + 1):
        if seq[i] <= 0:
            raise ValueError(f"{seq.label}: value at index {i} is not positive ({seq[i]})")


# ---------------------------------------------------------------------------
# log behaviour


@dataclass(frozen=True)
class ThresholdReport:
    label: str
    mode: Direction
    first: int
    horizon: int
    violations: Tuple[int, ...]
    candidate_N: int

    @property
    def eventually_holds(self) -> bool:
        """True when the last index checked is not a violation."""
        return self.candidate_N < self.horizon


def log_violations(seq: ExactSequence, lo: int, hi: int,
                   mode: Direction = Direction.CONCAVE) -> List[int]:
    """Indices ``n`` in ``[lo, hi]`` where ``x_n**2 >= x_{n-1} x_{n+1}`` fails.

    Convex mode looks for ``x_n**2 > x_{n-1} x_{n+1}`` instead.
    """
    if hi < lo:
        return []
    seq.require(lo - 1, hi + 1)
    start = seq.start_index
    vals = np.array(seq.values[lo - 1 - start: hi + 2 - start], dtype=object)
    mid = vals[1:-1]
    square = mid * mid
    outer = vals[:-2] * vals[2:]
    bad = square < outer if mode is Direction.CONCAVE else square > outer
    return [int(i) + lo for i in np.nonzero(bad)[0]]


def scan_log_behavior(seq: ExactSequence, mode: Direction = Direction.CONCAVE,
                      horizon: Optional[int] = None,
                      first: Optional[int] = None) -> ThresholdReport:
    """Find every violation of log-concavity (log-convexity) up to ``horizon``.

    Indices ``n`` from ``first + 1`` to ``horizon`` are checked, so ``x_first``
    is the lowest value that takes part (default: the sequence start).
    ``candidate_N`` is the largest violation, or ``first`` when there is none;
    in both cases the sequence is verified log-concave on ``(candidate_N, horizon]``.
    """
    first = seq.start_index if first is None else first
    horizon = seq.stop - 1 if horizon is None else horizon
    if horizon < first + 1:
        raise ValueError("horizon must exceed the first index")
    seq.require(first, horizon + 1)
    _check_positive(seq, first, horizon + 1)
    violations = tuple(log_violations(seq, first + 1, horizon, mode))
    candidate = violations[-1] if violations else first
    return ThresholdReport(seq.label, mode, first, horizon, violations, candidate)


# ---------------------------------------------------------------------------
# root conditions


def condition13_comparison(seq: ExactSequence, N: int, k: int,
                           prefilter: bool = True) -> PowerComparison:
    """Order of ``x_{N+k}**(N+k+1)`` versus ``x_{N+k+1}**(N+k)``."""
    j = N + k
    seq.require(j, j + 1)
    _check_positive(seq, j, j + 1)
    return compare_powers(seq[j], j + 1, seq[j + 1], j, prefilter=prefilter)


def check_condition_13(seq: ExactSequence, N: int, k: int,
                       mode: Direction = Direction.CONCAVE) -> bool:
    if k < 0:
        raise ValueError("k must be nonnegative")
    return mode.holds(condition13_comparison(seq, N, k).ordering)


def find_min_k(seq: ExactSequence, N: int, k_max: int,
               mode: Direction = Direction.CONCAVE) -> Optional[int]:
    seq.require(N, N + k_max + 1)
    for k in range(k_max + 1):
        if check_condition_13(seq, N, k, mode):
            return k
    return None


def ratio_condition(seq: ExactSequence, M: int, m: int,
                    mode: Direction = Direction.CONCAVE) -> bool:
    """``(x_{M+1}/x_M)**m <= x_m`` (``>=`` in convex mode), cross-multiplied."""
    comparison = compare_products([(seq[m], 1), (seq[M], m)], [(seq[M + 1], m)])
    return mode.holds(comparison.ordering)


def _d_floor(seq: ExactSequence, top: int) -> int:
    # d ranges over positive integers; when N + k = 0 the only candidate is 0
    return max(seq.start_index, min(1, top))


def find_d_M(seq: ExactSequence, N: int, k: int, M: int,
             mode: Direction = Direction.CONCAVE) -> Optional[int]:
    """Smallest ``d <= N+k`` with the ratio condition for every ``m`` in ``[d, N+k]``."""
    top = N + k
    if M < top:
        raise ValueError("M must be at least N + k")
    seq.require(_d_floor(seq, top), M + 1)
    _check_positive(seq, _d_floor(seq, top), M + 1)
    d = None
    for m in range(top, _d_floor(seq, top) - 1, -1):
        if not ratio_condition(seq, M, m, mode):
            break
        d = m
    return d


@dataclass(frozen=True)
class ConditionReport:
    label: str
    mode: Direction
    N: int
    k: int
    condition13_holds: bool
    d: Optional[int] = None
    M: Optional[int] = None
    witness_failures: Tuple[int, ...] = ()


def condition_report(seq: ExactSequence, N: int, k: int, M: Optional[int] = None,
                     mode: Direction = Direction.CONCAVE) -> ConditionReport:
    """Condition (root) check plus, if ``M`` is given, the ratio condition search.

    ``witness_failures`` lists every ``m`` in ``[1, N+k]`` that violates the
    ratio condition.
    """
    holds = check_condition_13(seq, N, k, mode)
    if M is None:
        return ConditionReport(seq.label, mode, N, k, holds)
    d = find_d_M(seq, N, k, M, mode)
    lo = _d_floor(seq, N + k)
    failures = tuple(m for m in range(lo, N + k + 1) if not ratio_condition(seq, M, m, mode))
    return ConditionReport(seq.label, mode, N, k, holds, d, M, failures)


# ---------------------------------------------------------------------------
# bounds and the proof's auxiliary sequence


def check_bounds_12(seq: ExactSequence, N: int, n: int, m: int,
                    mode: Direction = Direction.CONCAVE) -> Tuple[bool, bool]:
    """Both sides of the two-sided bound on ``x_n``, with exponents cleared.

    lower: ``x_N**m * x_{n+m}**(n-N) <= x_n**(n-N+m)``
    upper: ``x_n * x_N**(n-N-1) <= x_{N+1}**(n-N)``

    The bounds use log-concavity at every index from ``N+1`` to
    ``max(n, n+m) - 1``; a violation there raises :class:`LogBehaviorError`.
    """
    if n <= N or m < 0:
        raise ValueError("need n > N and m >= 0")
    seq.require(N, n + m)
    _check_positive(seq, N, n + m)
    window_top = max(n, n + m) - 1
    bad = log_violations(seq, N + 1, window_top, mode)
    if bad:
        raise LogBehaviorError(
            f"{seq.label} is not log-{mode.value} at {bad[:5]} inside ({N}, {window_top}]")
    L = n - N
    lower = compare_products([(seq[N], m), (seq[n + m], L)], [(seq[n], L + m)])
    upper = compare_products([(seq[n], 1), (seq[N], L - 1)], [(seq[N + 1], L)])
    # both are "lhs <= rhs" statements on the concave side
    return (mode.holds(lower.ordering.reverse()), mode.holds(upper.ordering.reverse()))


def verify_telescoping(N: int, n: int, m: int) -> Fraction:
    """Sum the exponent series of ``x_N`` term by term.

    ``1/(L+1) + sum_{j=2..m} L/((L+j-1)(L+j))`` with ``L = n - N``; it
    telescopes to ``m/(L+m)``.
    """
    L = n - N
    if L < 1 or m < 1:
        raise ValueError("need n > N and m >= 1")
    total = Fraction(1, L + 1)
    for j in range(2, m + 1):
        total += Fraction(L, (L + j - 1) * (L + j))
    return total


def extend_a_sequence(seq: ExactSequence, N: int, k: int) -> ExactSequence:
    """The sequence equal to ``x`` from ``N+k`` on and geometric-by-ratio below it.

    Going down, ``a_{j-1} = a_j**2 / a_{j+1}``, which makes every term below
    ``N+k`` an exact rational and ends at
    ``a_0 = x_{N+k}**(N+k+1) / x_{N+k+1}**(N+k)``.
    """
    top = N + k
    seq.require(top, top + 1)
    _check_positive(seq, top, top + 1)
    below: List = []
    hi, nxt = Fraction(seq[top]), Fraction(seq[top + 1])
    for _ in range(top):
        lo = hi * hi / nxt
        below.append(lo)
        hi, nxt = lo, hi
    values = list(reversed(below)) + [seq[i] for i in range(top, seq.stop + 1)]
    return ExactSequence(f"aux({seq.label};N={N},k={k})", 0, tuple(values),
                         seq.generator_version)


# ---------------------------------------------------------------------------
# pair classification


def _verdict(lhs, rhs, mode: Direction) -> Verdict:
    if lhs == rhs:
        return Verdict.EQUAL
    if (lhs > rhs) == (mode is Direction.CONCAVE):
        return Verdict.STRICT
    return Verdict.FAILURE


def _classify_rows(values: Sequence, start: int, rows: Sequence[int],
                   b_range: Range, mode: Direction) -> List[Tuple[Pair, Verdict]]:
    out = []
    b_lo, b_hi = b_range
    for a in rows:
        xa = values[a - start]
        for b in range(b_lo, b_hi + 1):
            out.append(((a, b), _verdict(xa * values[b - start], values[a + b - start], mode)))
    return out


@dataclass
class PairClassification:
    label: str
    a_range: Range
    b_range: Range
    mode: Direction
    verdicts: Dict[Pair, Verdict] = field(repr=False)

    def cells(self, verdict: Verdict, unordered: bool = True) -> List[Pair]:
        pairs = [p for p, v in self.verdicts.items() if v is verdict]
        if unordered:
            pairs = {(min(a, b), max(a, b)) for a, b in pairs}
        return sorted(pairs)

    @property
    def failures(self) -> List[Pair]:
        return self.cells(Verdict.FAILURE)

    @property
    def equalities(self) -> List[Pair]:
        return self.cells(Verdict.EQUAL)

    def __getitem__(self, pair: Pair) -> Verdict:
        return self.verdicts[pair]


def classify_pairs(seq: ExactSequence, a_range: Range, b_range: Optional[Range] = None,
                   mode: Direction = Direction.CONCAVE, workers: int = 1) -> PairClassification:
    """Verdict on ``x_a x_b`` versus ``x_{a+b}`` for every ``(a, b)`` in the box.

    With ``workers > 1`` rows are farmed out to processes; results are merged
    in row-major order, so the output does not depend on the worker count.
    """
    b_range = a_range if b_range is None else b_range
    (a_lo, a_hi), (b_lo, b_hi) = a_range, b_range
    if a_lo > a_hi or b_lo > b_hi:
        raise ValueError("empty index range")
    seq.require(min(a_lo, b_lo), a_hi + b_hi)
    rows = list(range(a_lo, a_hi + 1))
    if workers > 1 and len(rows) > 1:
        chunks = [rows[i::workers] for i in range(workers)]
        with ProcessPoolExecutor(max_workers=workers) as pool:
            futures = [pool.submit(_classify_rows, seq.values, seq.start_index, chunk,
                                   b_range, mode) for chunk in chunks if chunk]
            merged = [item for fut in futures for item in fut.result()]
        merged.sort(key=lambda item: item[0])
    else:
        merged = _classify_rows(seq.values, seq.start_index, rows, b_range, mode)
    return PairClassification(seq.label, a_range, b_range, mode, dict(merged))


def in_theorem_region(pair: Pair, d: int, N: int, k: int, M: int) -> bool:
    """Membership in ``[d, M+1] x [d, N+k]`` or its transpose."""
    a, b = pair
    top = N + k
    return ((d <= a <= M + 1 and d <= b <= top)
            or (d <= a <= top and d <= b <= M + 1))


@dataclass
class TheoremReport:
    label: str
    mode: Direction
    N: int
    k: int
    M: int
    scan_box: int
    log_violations_above_N: Tuple[int, ...]
    condition13_holds: bool
    d: Optional[int]
    failures: List[Pair] = field(default_factory=list)
    equalities: List[Pair] = field(default_factory=list)
    outside_region: List[Pair] = field(default_factory=list)
    notes: List[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return (not self.log_violations_above_N and self.condition13_holds
                and self.d is not None and not self.outside_region)


def verify_theorem_11(seq: ExactSequence, N: int, k: int, M: int, scan_box: int,
                      mode: Direction = Direction.CONCAVE, workers: int = 1) -> TheoremReport:
    """Check every hypothesis on ``seq`` and that failures stay in the predicted region.

    Log behaviour is verified on ``(N, 2*scan_box - 1]``, i.e. on every index
    any pair in the scanned box depends on.  A failure outside the region on
    a fully certified instance is reported in ``outside_region``; it would
    indicate a bug here, not in the theorem.
    """
    top_needed = 2 * scan_box
    seq.require(max(seq.start_index, 0), top_needed)
    horizon = max(N + 1, top_needed - 1)
    above = tuple(log_violations(seq, N + 1, horizon, mode))
    holds = check_condition_13(seq, N, k, mode)
    d = find_d_M(seq, N, k, M, mode)
    report = TheoremReport(seq.label, mode, N, k, M, scan_box, above, holds, d)
    if above:
        report.notes.append(f"log-{mode.value} fails above N at {list(above[:5])}")
    if not holds:
        report.notes.append("root condition fails at this (N, k)")
    if d is None:
        report.notes.append("no d satisfies the ratio condition for this M")
        return report
    grid = classify_pairs(seq, (d, scan_box), (d, scan_box), mode, workers=workers)
    report.failures = grid.failures
    report.equalities = grid.equalities
    report.outside_region = [p for p in report.failures
                             if not in_theorem_region(p, d, N, k, M)]
    if report.outside_region and not above and holds:
        report.notes.append("failure outside the predicted region on a certified "
                            "instance; flag for review")
    return report


def verify_mary_table(m: int, beta_horizon: int, workers: int = 1):
    """Classify ``b^m`` pairs and diff them against the embedded m-ary table."""
    from .tables import verify_mary_table as _verify

    return _verify(m, beta_horizon, workers=workers)
