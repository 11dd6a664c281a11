"""Sign checks for a(n) = n^r exp(t n^s).

This is the one approximate corner of the package: a(n) is transcendental, so
signs are decided in floating point, with a move to mpmath whenever a value
is too close to zero for double precision to be trusted.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

import mpmath
import numpy as np

from .analysis import Verdict

EPS = np.finfo(float).eps
#: generous multiple of eps per evaluated term; below this a sign is a near-tie
TIE_ULPS = 64
PRECISIONS = (30, 60, 120, 240, 480)


def _q(x) -> Fraction:
    if isinstance(x, float):
        return Fraction(x).limit_denominator(10 ** 12)
    return Fraction(x)


def _sign(x) -> int:
    return (x > 0) - (x < 0)


@dataclass(frozen=True)
class LogPolyData:
    r: Fraction
    s: Fraction
    t: Fraction
    kappa: int

    def A_of_n(self, n: float) -> float:
        r, s, t = float(self.r), float(self.s), float(self.t)
        return -r / n + s * t * n ** (s - 1)

    def kappa_delta_sq_of_n(self, n: float) -> float:
        r, s, t = float(self.r), float(self.s), float(self.t)
        return -r / (2 * n * n) + s * (s - 1) * t / (2 * n ** (2 - s))

    def log_a(self, n: float) -> float:
        return float(self.r) * math.log(n) + float(self.t) * n ** float(self.s)


def _check_domain(r: Fraction, s: Fraction, t: Fraction) -> None:
    if not 0 < s < 2:
        raise ValueError("s must satisfy 0 < s < 2")
    if r == 0 and t == 0:
        raise ValueError("r and t cannot both be zero")


def logpoly_data(r, s, t) -> LogPolyData:
    r, s, t = _q(r), _q(s), _q(t)
    _check_domain(r, s, t)
    lead = s * (s - 1) * t
    if lead == 0:
        raise ValueError("s(s-1)t must be nonzero")
    return LogPolyData(r, s, t, _sign(lead))


def _mp_second_difference(r: Fraction, s: Fraction, t: Fraction, n: int, dps: int):
    with mpmath.workdps(dps):
        rr = mpmath.mpf(r.numerator) / r.denominator
        ss = mpmath.mpf(s.numerator) / s.denominator
        tt = mpmath.mpf(t.numerator) / t.denominator

        def f(x):
            return rr * mpmath.log(x) + tt * mpmath.power(x, ss)

        value = f(n + 1) - 2 * f(n) + f(n - 1)
        scale = abs(rr) * mpmath.log(n + 1) + abs(tt) * mpmath.power(n + 1, ss)
        return value, scale


def _escalate(r, s, t, n: int) -> Tuple[int, int]:
    for dps in PRECISIONS:
        value, scale = _mp_second_difference(r, s, t, n, dps)
        if abs(value) > scale * mpmath.mpf(10) ** (10 - dps):
            return _sign(value), dps
    return 0, PRECISIONS[-1]


def second_differences(r, s, t, ns: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    """Second difference of log a at each n, and a per-point rounding bound."""
    r, s, t = float(r), float(s), float(t)
    inv = 1.0 / ns
    # r (log(n+1) - 2 log n + log(n-1)) == r log(1 - 1/n^2)
    rpart = r * np.log1p(-inv * inv)
    # t n^s ((1+1/n)^s - 2 + (1-1/n)^s) with the two expm1 terms combined first
    bracket = np.expm1(s * np.log1p(inv)) + np.expm1(s * np.log1p(-inv))
    tpart = t * ns ** s * bracket
    # bracket is a cancellation of two O(1/n) terms down to O(1/n^2)
    bound = TIE_ULPS * EPS * (np.abs(rpart) + np.abs(t) * ns ** s * s * inv * 2 + np.abs(tpart))
    return rpart + tpart, bound


@dataclass
class EmpiricalReport:
    r: Fraction
    s: Fraction
    t: Fraction
    n_range: Tuple[int, int]
    kappa: int
    onset: Optional[int]
    disagreements: List[int]
    escalated: Dict[int, int] = field(default_factory=dict)

    @property
    def asymptotic_sign(self) -> int:
        return self.kappa if self.onset is not None else -self.kappa

    @property
    def passed(self) -> bool:
        return self.onset is not None


def empirical_log_behavior(r, s, t, n_range: Sequence[int] = (10, 1000)) -> EmpiricalReport:
    """Compare the sign of the second difference of log a(n) with kappa over ``n_range``.

    ``onset`` is the smallest n in range past which every second difference
    has the sign kappa.  It is None when even the last point disagrees.
    """
    data = logpoly_data(r, s, t)
    lo, hi = int(n_range[0]), int(n_range[1])
    if lo < 2 or hi < lo:
        raise ValueError("n_range must satisfy 2 <= lo <= hi")
    ns = np.arange(lo, hi + 1, dtype=float)
    values, bound = second_differences(data.r, data.s, data.t, ns)
    signs = np.sign(values).astype(int)
    escalated = {}
    for i in np.flatnonzero(np.abs(values) <= bound):
        n = lo + int(i)
        signs[i], escalated[n] = _escalate(data.r, data.s, data.t, n)
    bad = [lo + int(i) for i in np.flatnonzero(signs != data.kappa)]
    if bad and bad[-1] == hi:
        onset = None
    else:
        onset = bad[-1] + 1 if bad else lo
    return EmpiricalReport(data.r, data.s, data.t, (lo, hi), data.kappa, onset, bad, escalated)


@dataclass
class AbundanceReport:
    r: Fraction
    s: Fraction
    t: Fraction
    box: Tuple[Tuple[int, int], Tuple[int, int]]
    verdicts: Dict[Tuple[int, int], Verdict]
    onset: int
    symbolic: bool = False

    def cells(self, verdict: Verdict) -> List[Tuple[int, int]]:
        return sorted(p for p, v in self.verdicts.items() if v is verdict and p[0] <= p[1])

    @property
    def failures(self):
        return self.cells(Verdict.FAILURE)

    @property
    def equalities(self):
        return self.cells(Verdict.EQUAL)

    @property
    def passed(self) -> bool:
        # finitely many failures, all below the onset, is what can be checked on a box
        (_, a_hi), (_, b_hi) = self.box
        return self.onset <= min(a_hi, b_hi)


def _abundance_sign(r, s, t, n: int, m: int) -> int:
    """Sign of log a(n) + log a(m) - log a(n+m), with widening precision."""
    for dps in PRECISIONS:
        with mpmath.workdps(dps):
            rr = mpmath.mpf(r.numerator) / r.denominator
            ss = mpmath.mpf(s.numerator) / s.denominator
            tt = mpmath.mpf(t.numerator) / t.denominator
            g = lambda x: rr * mpmath.log(x) + tt * mpmath.power(x, ss)
            value = g(n) + g(m) - g(n + m)
            scale = abs(rr) * mpmath.log(n + m + 1) + abs(tt) * mpmath.power(n + m, ss) + 1
            if abs(value) > scale * mpmath.mpf(10) ** (10 - dps):
                return _sign(value)
    return 0


def theorem42_abundance_check(r, s, t, box=((1, 50), (1, 50))) -> AbundanceReport:
    """Classify a(n)a(m) against a(n+m) over ``box``.

    STRICT means a(n)a(m) > a(n+m).  ``onset`` is the smallest index such that
    no failure has both coordinates at or above it.
    """
    r, s, t = _q(r), _q(s), _q(t)
    _check_domain(r, s, t)
    if not 0 < s <= 1:
        raise ValueError("the abundance statement needs 0 < s <= 1")
    if s < 1 and s * (s - 1) * t >= 0:
        raise ValueError("the abundance statement needs kappa = -1 (t > 0 when s < 1)")
    (a_lo, a_hi), (b_lo, b_hi) = box
    if min(a_lo, b_lo) < 1:
        raise ValueError("box indices start at 1 (log n is undefined at 0)")
    symbolic = s == 1 and r == 0
    verdicts = {}
    for a in range(a_lo, a_hi + 1):
        for b in range(b_lo, b_hi + 1):
            key = (min(a, b), max(a, b))
            if key in verdicts:
                continue
            # e^{tn} e^{tm} = e^{t(n+m)} exactly
            sign = 0 if symbolic else _abundance_sign(r, s, t, a, b)
            verdicts[key] = (Verdict.STRICT, Verdict.EQUAL, Verdict.FAILURE)[[1, 0, -1].index(sign)]
    fails = [p for p, v in verdicts.items() if v is Verdict.FAILURE]
    onset = max((p[0] for p in fails), default=min(a_lo, b_lo) - 1) + 1
    return AbundanceReport(r, s, t, box, verdicts, onset, symbolic)


def random_domain(count: int, seed: int = 0) -> List[Tuple[Fraction, Fraction, Fraction]]:
    """Seeded (r, s, t) with r in [-1,1], s in [0.3,0.7] or [1.3,1.9], |t| in [1,3]."""
    rng = np.random.default_rng(seed)
    out = []
    for _ in range(count):
        r = _q(round(rng.uniform(-1, 1), 6))
        s = _q(round(rng.uniform(0.3, 0.7) if rng.random() < 0.5 else rng.uniform(1.3, 1.9), 6))
        t = _q(round(rng.choice([-1, 1]) * rng.uniform(1, 3), 6))
        out.append((r, s, t))
    return out
