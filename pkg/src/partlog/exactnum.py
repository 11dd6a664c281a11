"""Exact rational scalars and certified comparisons of products of powers.

Scalars are plain ``int`` or :class:`fractions.Fraction` objects; both are
exact and canonical (``Fraction`` always stores a reduced fraction with a
positive denominator).  Comparisons of the form ``a**p`` against ``b**q``
first try a floating-point log comparison with an explicit error bound and
fall back to exact big-integer arithmetic when that bound cannot separate
the two sides.
"""
from __future__ import annotations

import enum
import math
import sys
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational
from typing import Iterable, Sequence, Tuple, Union

Scalar = Union[int, Fraction]
Factor = Tuple[Scalar, int]

_EPS = sys.float_info.epsilon

# Per-operation error budget, in units of machine epsilon relative to the
# magnitude of the operand.  math.log on an int goes through frexp plus one
# fused log/multiply-add, so we allow 4 ulps per logarithm and 1 ulp per
# multiplication or addition.
LOG_ULPS = 4
ARITH_ULPS = 1


class Ordering(enum.IntEnum):
    LESS = -1
    EQUAL = 0
    GREATER = 1

    def reverse(self) -> "Ordering":
        return Ordering(-int(self))

    @classmethod
    def of(cls, lhs, rhs) -> "Ordering":
        if lhs < rhs:
            return cls.LESS
        if lhs > rhs:
            return cls.GREATER
        return cls.EQUAL


class Method(enum.Enum):
    LOG_PREFILTER = "LogPrefilter"
    EXACT_BIG_POWER = "ExactBigPower"
    #: decided by exact algebra on exponents (used for 2**sqrt(n) style values)
    EXPONENT_ALGEBRA = "ExponentAlgebra"


@dataclass(frozen=True)
class PowerComparison:
    ordering: Ordering
    method: Method
    prefilter_margin: float = math.nan

    @property
    def holds_ge(self) -> bool:
        return self.ordering >= Ordering.EQUAL

    @property
    def holds_le(self) -> bool:
        return self.ordering <= Ordering.EQUAL

    def reverse(self) -> "PowerComparison":
        return PowerComparison(self.ordering.reverse(), self.method,
                               -self.prefilter_margin)


def as_scalar(value) -> Scalar:
    """Coerce ``value`` to an exact scalar, rejecting floats.

    Strings such as ``"3/4"`` or ``"-12"`` are accepted.
    """
    if isinstance(value, bool):
        raise TypeError("booleans are not scalars")
    if isinstance(value, int):
        return value
    if isinstance(value, Fraction):
        return value.numerator if value.denominator == 1 else value
    if isinstance(value, Rational):
        return as_scalar(Fraction(value.numerator, value.denominator))
    if isinstance(value, str):
        text = value.strip()
        if "." in text or "e" in text.lower():
            raise ValueError(f"not an exact rational literal: {value!r}")
        return as_scalar(Fraction(text))
    raise TypeError(f"cannot use {type(value).__name__} as an exact scalar")


def format_scalar(value: Scalar) -> str:
    """Canonical decimal text: ``<num>`` or ``<num>/<den>``."""
    value = as_scalar(value)
    if isinstance(value, int):
        return str(value)
    return f"{value.numerator}/{value.denominator}"


def parse_scalar(text: str) -> Scalar:
    return as_scalar(text)


def _split(value: Scalar) -> Tuple[int, int]:
    if isinstance(value, int):
        return value, 1
    return value.numerator, value.denominator


def _check_factors(factors: Sequence[Factor], side: str) -> list:
    out = []
    for base, exponent in factors:
        base = as_scalar(base)
        if base <= 0:
            raise ValueError(f"{side} base must be positive, got {base}")
        if not isinstance(exponent, int) or isinstance(exponent, bool) or exponent < 0:
            raise ValueError(f"{side} exponent must be a nonnegative int, got {exponent!r}")
        out.append((base, exponent))
    return out


def _log_side(factors) -> Tuple[float, float]:
    """Return (approximate log, absolute error bound) of a product of powers."""
    total = 0.0
    err = 0.0
    for base, exponent in factors:
        if exponent == 0:
            continue
        num, den = _split(base)
        ln_num = math.log(num)
        ln_den = math.log(den) if den != 1 else 0.0
        ln_base = ln_num - ln_den
        term = exponent * ln_base
        # error of each log, of the subtraction, then of the multiplication
        err += exponent * (LOG_ULPS * _EPS * (abs(ln_num) + abs(ln_den) + 1.0)
                           + ARITH_ULPS * _EPS * abs(ln_base))
        err += ARITH_ULPS * _EPS * abs(term)
        total += term
        err += ARITH_ULPS * _EPS * abs(total)
    return total, err


def _exact_side(factors) -> Tuple[int, int]:
    num = 1
    den = 1
    for base, exponent in factors:
        if exponent == 0:
            continue
        n, d = _split(base)
        num *= n ** exponent
        if d != 1:
            den *= d ** exponent
    return num, den


def compare_products(lhs: Iterable[Factor], rhs: Iterable[Factor],
                     prefilter: bool = True) -> PowerComparison:
    """Order ``prod(a**p for a, p in lhs)`` against the same product over ``rhs``.

    Every base must be a positive exact rational and every exponent a
    nonnegative int.  With ``prefilter`` the comparison is first attempted in
    floating point; the answer is only trusted when the gap between the two
    log sums exceeds the accumulated error bound.
    """
    lhs = _check_factors(list(lhs), "lhs")
    rhs = _check_factors(list(rhs), "rhs")
    margin = math.nan
    if prefilter:
        left, left_err = _log_side(lhs)
        right, right_err = _log_side(rhs)
        margin = left - right
        bound = left_err + right_err + ARITH_ULPS * _EPS * (abs(left) + abs(right))
        if abs(margin) > bound:
            ordering = Ordering.GREATER if margin > 0 else Ordering.LESS
            return PowerComparison(ordering, Method.LOG_PREFILTER, margin)
    ln, ld = _exact_side(lhs)
    rn, rd = _exact_side(rhs)
    return PowerComparison(Ordering.of(ln * rd, rn * ld), Method.EXACT_BIG_POWER, margin)


def compare_powers(a: Scalar, p: int, b: Scalar, q: int,
                   prefilter: bool = True) -> PowerComparison:
    """Exact order of ``a**p`` versus ``b**q`` for positive rationals.

    >>> compare_powers(1958, 26, 2436, 25).ordering.name
    'GREATER'
    """
    if p == 0 and q == 0:
        raise ValueError("vacuous comparison: both exponents are zero")
    return compare_products([(a, p)], [(b, q)], prefilter=prefilter)


def root_compare(a: Scalar, p: int, b: Scalar, q: int,
                 prefilter: bool = True) -> PowerComparison:
    """Order ``a**(1/p)`` against ``b**(1/q)`` by cross-multiplying exponents."""
    if p <= 0 or q <= 0:
        raise ValueError("root orders must be positive")
    return compare_powers(a, q, b, p, prefilter=prefilter)
