"""Exact coefficient runs for restricted partition generating functions.

Every family here is a product ``prod_j (1 - q**j)**(-e_j)`` for some
exponent pattern ``e_j``; :func:`generate` picks a fast method per family and
:func:`oracle_generate` recomputes the same coefficients by naive truncated
polynomial multiplication so the two can be checked against each other.
"""
from __future__ import annotations

import enum
import math
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterator, List, Optional, Sequence, Tuple, Union

import numpy as np

from .exactnum import Scalar, as_scalar, format_scalar

GENERATOR_VERSION = "1"


class Kind(enum.Enum):
    UNRESTRICTED = "unrestricted"
    DISTINCT = "distinct"
    OVERPARTITION = "overpartition"
    POWER = "power"
    MARY = "mary"
    FRACTIONAL = "fractional"
    MULTISET = "multiset"


_ALIASES = {
    "p": "unrestricted",
    "partition": "unrestricted",
    "partitions": "unrestricted",
    "pd": "distinct",
    "overpartitions": "overpartition",
    "pbar": "overpartition",
}


@dataclass(frozen=True)
class PartitionFamily:
    """One restricted-partition generating function.

    ``param`` is the power ``k`` for ``POWER``, the base ``m`` for ``MARY``,
    the exponent ``alpha`` for ``FRACTIONAL`` (coefficients of
    ``(q;q)_inf**alpha``, so ``alpha = -1`` is the ordinary partition
    function), and the sorted part list for ``MULTISET``.
    """

    kind: Kind
    param: Union[None, int, Scalar, Tuple[int, ...]] = None

    def __post_init__(self):
        kind = self.kind
        if kind in (Kind.UNRESTRICTED, Kind.DISTINCT, Kind.OVERPARTITION):
            if self.param is not None:
                raise ValueError(f"{kind.value} takes no parameter")
        elif kind is Kind.POWER:
            if not isinstance(self.param, int) or self.param < 1:
                raise ValueError("power partitions need an integer k >= 1")
        elif kind is Kind.MARY:
            if not isinstance(self.param, int) or self.param < 2:
                raise ValueError("m-ary partitions need an integer m >= 2")
        elif kind is Kind.FRACTIONAL:
            if isinstance(self.param, float):
                raise ValueError("fractional partitions need an exact rational alpha")
            object.__setattr__(self, "param", as_scalar(self.param))
        elif kind is Kind.MULTISET:
            parts = tuple(self.param or ())
            if not parts:
                raise ValueError("a multiset family needs at least one part")
            if any(not isinstance(a, int) or a < 1 for a in parts):
                raise ValueError("multiset parts must be positive integers")
            if list(parts) != sorted(parts):
                raise ValueError("multiset parts must be nondecreasing")
            object.__setattr__(self, "param", parts)

    @classmethod
    def unrestricted(cls):
        return cls(Kind.UNRESTRICTED)

    @classmethod
    def distinct(cls):
        return cls(Kind.DISTINCT)

    @classmethod
    def overpartition(cls):
        return cls(Kind.OVERPARTITION)

    @classmethod
    def power(cls, k: int):
        return cls(Kind.POWER, k)

    @classmethod
    def mary(cls, m: int):
        return cls(Kind.MARY, m)

    @classmethod
    def fractional(cls, alpha):
        return cls(Kind.FRACTIONAL, alpha)

    @classmethod
    def multiset(cls, parts: Sequence[int]):
        return cls(Kind.MULTISET, tuple(parts))

    @property
    def is_integral(self) -> bool:
        return self.kind is not Kind.FRACTIONAL or isinstance(self.param, int)

    def canonical(self) -> str:
        kind = self.kind
        if kind in (Kind.POWER, Kind.MARY):
            return f"{kind.value}{self.param}"
        if kind is Kind.FRACTIONAL:
            return f"fractional({format_scalar(self.param)})"
        if kind is Kind.MULTISET:
            return "multiset(" + ",".join(map(str, self.param)) + ")"
        return kind.value

    __str__ = canonical

    @classmethod
    def parse(cls, text: str) -> "PartitionFamily":
        """Inverse of :meth:`canonical`.  A few short aliases are accepted."""
        raw = text.strip().lower().replace(" ", "")
        raw = _ALIASES.get(raw, raw)
        for simple in (Kind.UNRESTRICTED, Kind.DISTINCT, Kind.OVERPARTITION):
            if raw == simple.value:
                return cls(simple)
        match = re.fullmatch(r"(power|mary)(\d+)", raw)
        if match:
            kind = Kind.POWER if match.group(1) == "power" else Kind.MARY
            return cls(kind, int(match.group(2)))
        match = re.fullmatch(r"fractional\((-?\d+(?:/\d+)?)\)", raw)
        if match:
            return cls(Kind.FRACTIONAL, as_scalar(match.group(1)))
        match = re.fullmatch(r"multiset\((\d+(?:,\d+)*)\)", raw)
        if match:
            return cls(Kind.MULTISET, tuple(int(a) for a in match.group(1).split(",")))
        raise ValueError(f"unknown partition family: {text!r}")

    def allowed_parts(self, upto: int) -> List[int]:
        """Part sizes, with multiplicity, usable in partitions of ``n <= upto``.

        Only meaningful for the coin-style families.
        """
        kind = self.kind
        if kind is Kind.UNRESTRICTED:
            return list(range(1, upto + 1))
        if kind is Kind.POWER:
            k = self.param
            parts = []
            j = 1
            while j ** k <= upto:
                parts.append(j ** k)
                j += 1
            return parts
        if kind is Kind.MARY:
            parts = []
            power = 1
            while power <= upto:
                parts.append(power)
                power *= self.param
            return parts
        if kind is Kind.MULTISET:
            return [a for a in self.param if a <= upto]
        raise ValueError(f"{self.canonical()} is not a coin-style family")

    def euler_exponents(self, upto: int) -> Dict[int, Scalar]:
        """Map ``j -> e_j`` with ``family = prod_j (1 - q**j)**(-e_j)`` truncated at ``upto``."""
        kind = self.kind
        exps: Dict[int, Scalar] = {}
        if kind is Kind.DISTINCT:
            # prod (1+q^j) = prod (1-q^{2j}) / (1-q^j)
            for j in range(1, upto + 1):
                exps[j] = exps.get(j, 0) + 1
                if 2 * j <= upto:
                    exps[2 * j] = exps.get(2 * j, 0) - 1
        elif kind is Kind.OVERPARTITION:
            for j in range(1, upto + 1):
                exps[j] = exps.get(j, 0) + 2
                if 2 * j <= upto:
                    exps[2 * j] = exps.get(2 * j, 0) - 1
        elif kind is Kind.FRACTIONAL:
            for j in range(1, upto + 1):
                exps[j] = -self.param
        else:
            for a in self.allowed_parts(upto):
                exps[a] = exps.get(a, 0) + 1
        return {j: e for j, e in exps.items() if e != 0}


@dataclass(frozen=True)
class ExactSequence:
    """A contiguous run ``values[i] = x_{start_index + i}`` of exact values.

    ``family`` is a :class:`PartitionFamily`, an example family, or a plain
    label string for derived sequences.
    """

    family: object
    start_index: int
    values: Tuple[Scalar, ...]
    generator_version: str = GENERATOR_VERSION

    def __post_init__(self):
        if not self.values:
            raise ValueError("an exact sequence needs at least one value")
        object.__setattr__(self, "values", tuple(as_scalar(v) for v in self.values))

    @property
    def stop(self) -> int:
        """Largest index held."""
        return self.start_index + len(self.values) - 1

    @property
    def label(self) -> str:
        fam = self.family
        return fam.canonical() if hasattr(fam, "canonical") else str(fam)

    def covers(self, lo: int, hi: Optional[int] = None) -> bool:
        hi = lo if hi is None else hi
        return self.start_index <= lo and hi <= self.stop

    def require(self, lo: int, hi: Optional[int] = None) -> None:
        hi = lo if hi is None else hi
        if not self.covers(lo, hi):
            raise IndexError(
                f"{self.label} holds indices {self.start_index}..{self.stop}, "
                f"need {lo}..{hi}")

    def __getitem__(self, index: int) -> Scalar:
        if not self.start_index <= index <= self.stop:
            raise IndexError(f"index {index} outside {self.start_index}..{self.stop}")
        return self.values[index - self.start_index]

    def __len__(self) -> int:
        return len(self.values)

    def __iter__(self) -> Iterator[Scalar]:
        return iter(self.values)

    def items(self) -> Iterator[Tuple[int, Scalar]]:
        return enumerate(self.values, start=self.start_index)

    def reciprocal(self) -> "ExactSequence":
        if any(v <= 0 for v in self.values):
            raise ValueError("reciprocal needs strictly positive values")
        return ExactSequence(f"reciprocal({self.label})", self.start_index,
                             tuple(1 / Fraction(v) for v in self.values),
                             self.generator_version)


# ---------------------------------------------------------------------------
# fast generators


def _pentagonal_offsets(upto: int) -> List[Tuple[int, int]]:
    """(offset, sign) pairs for generalized pentagonal numbers <= upto."""
    out = []
    j = 1
    while True:
        g1 = j * (3 * j - 1) // 2
        if g1 > upto:
            break
        sign = 1 if j % 2 else -1
        out.append((g1, sign))
        g2 = j * (3 * j + 1) // 2
        if g2 <= upto:
            out.append((g2, sign))
        j += 1
    return out


def _extend_pentagonal(values: List[int], upto: int) -> None:
    offsets = _pentagonal_offsets(upto)
    for n in range(len(values), upto + 1):
        total = 0
        for g, sign in offsets:
            if g > n:
                break
            if sign > 0:
                total += values[n - g]
            else:
                total -= values[n - g]
        values.append(total)


def _zeros(n: int) -> np.ndarray:
    arr = np.empty(n, dtype=object)
    arr.fill(0)
    return arr


def _coin_dp(parts: Sequence[int], upto: int) -> List[int]:
    """Unbounded-knapsack counts, one vectorized prefix sum per part.

    For a part ``a`` the update ``c[n] += c[n - a]`` (ascending ``n``) is a
    running sum along each residue class mod ``a``; laying the array out as
    rows of width ``a`` turns that into a cumulative sum down the columns.
    """
    n = upto + 1
    c = _zeros(n)
    c[0] = 1
    for a in parts:
        rows = -(-n // a)
        if rows <= 1:
            continue
        buf = _zeros(rows * a)
        buf[:n] = c
        c = np.cumsum(buf.reshape(rows, a), axis=0).reshape(-1)[:n]
    return [int(v) for v in c]


def _distinct_dp(upto: int, c: Optional[np.ndarray] = None) -> np.ndarray:
    """Multiply by ``prod_{j<=upto} (1 + q**j)`` in place (0/1 knapsack order)."""
    if c is None:
        c = _zeros(upto + 1)
        c[0] = 1
    for j in range(1, upto + 1):
        c[j:] = c[j:] + c[:-j]
    return c


def sigma1_table(upto: int) -> List[int]:
    """Divisor sums sigma_1(k) for 0 <= k <= upto (entry 0 unused)."""
    sig = [0] * (upto + 1)
    for d in range(1, upto + 1):
        for multiple in range(d, upto + 1, d):
            sig[multiple] += d
    return sig


def _extend_fractional(values: List[Scalar], alpha: Scalar, upto: int) -> None:
    # n c_n = -alpha * sum_{k=1..n} sigma_1(k) c_{n-k}
    sig = sigma1_table(upto)
    alpha = Fraction(alpha)
    for n in range(len(values), upto + 1):
        acc = Fraction(0)
        for k in range(1, n + 1):
            acc += sig[k] * values[n - k]
        values.append(as_scalar(-alpha * acc / n))


def _weighted_divisor_sums(exps: Dict[int, Scalar], upto: int) -> List[Scalar]:
    s: List[Scalar] = [0] * (upto + 1)
    for j, e in exps.items():
        for multiple in range(j, upto + 1, j):
            s[multiple] += j * e
    return s


def _extend_euler(values: List[Scalar], exps: Dict[int, Scalar], upto: int) -> None:
    """Continue ``prod (1-q^j)^(-e_j)`` coefficients: ``n c_n = sum s(k) c_{n-k}``."""
    s = _weighted_divisor_sums(exps, upto)
    integral = all(isinstance(v, int) for v in values) and all(isinstance(v, int) for v in s)
    for n in range(len(values), upto + 1):
        acc = 0
        for k in range(1, n + 1):
            acc += s[k] * values[n - k]
        if integral:
            q, r = divmod(acc, n)
            if r:
                raise ArithmeticError("non-integral coefficient in integral family")
            values.append(q)
        else:
            values.append(as_scalar(Fraction(acc) / n))


def generate(family: PartitionFamily, upto: int) -> ExactSequence:
    """Coefficients of ``q**0 .. q**upto`` of the family's generating function."""
    if upto < 0:
        raise ValueError("upto must be nonnegative")
    kind = family.kind
    if kind is Kind.UNRESTRICTED:
        values: List[Scalar] = [1]
        _extend_pentagonal(values, upto)
    elif kind is Kind.DISTINCT:
        values = [int(v) for v in _distinct_dp(upto)]
    elif kind is Kind.OVERPARTITION:
        c = _distinct_dp(upto)
        for a in range(1, upto + 1):
            rows = -(-(upto + 1) // a)
            buf = _zeros(rows * a)
            buf[:upto + 1] = c
            c = np.cumsum(buf.reshape(rows, a), axis=0).reshape(-1)[:upto + 1]
        values = [int(v) for v in c]
    elif kind is Kind.FRACTIONAL:
        values = [1]
        _extend_fractional(values, family.param, upto)
    else:
        values = _coin_dp(family.allowed_parts(upto), upto)
    return ExactSequence(family, 0, tuple(values))


def extend(seq: ExactSequence, upto: int) -> ExactSequence:
    """Return ``seq`` continued to index ``upto`` without recomputing its prefix.

    The continuation runs the family's own recurrence from the stored values
    (pentagonal recurrence, log-derivative recurrence, or the Euler transform
    ``n c_n = sum_k s(k) c_{n-k}`` for the other product families).
    """
    family = seq.family
    if not isinstance(family, PartitionFamily) or seq.start_index != 0:
        raise ValueError("only generated partition sequences starting at 0 can be extended")
    if upto <= seq.stop:
        return seq
    values = list(seq.values)
    if family.kind is Kind.UNRESTRICTED:
        _extend_pentagonal(values, upto)
    elif family.kind is Kind.FRACTIONAL:
        _extend_fractional(values, family.param, upto)
    else:
        _extend_euler(values, family.euler_exponents(upto), upto)
    return ExactSequence(family, 0, tuple(values), seq.generator_version)


# ---------------------------------------------------------------------------
# independent oracle: truncated polynomial products


def _poly_mul(a: List[Scalar], b: List[Scalar], upto: int) -> List[Scalar]:
    out: List[Scalar] = [0] * (upto + 1)
    for i, ai in enumerate(a):
        if ai == 0:
            continue
        for j in range(0, upto + 1 - i):
            bj = b[j] if j < len(b) else 0
            if bj:
                out[i + j] += ai * bj
    return out


def _geometric(a: int, upto: int) -> List[int]:
    """Truncated ``1/(1 - q**a)``."""
    poly = [0] * (upto + 1)
    for n in range(0, upto + 1, a):
        poly[n] = 1
    return poly


def _binomial_series(alpha: Fraction, j: int, upto: int) -> List[Scalar]:
    """Truncated ``(1 - q**j)**alpha`` by the generalized binomial theorem."""
    poly: List[Scalar] = [0] * (upto + 1)
    coeff = Fraction(1)
    i = 0
    while i * j <= upto:
        poly[i * j] = coeff
        # binom(alpha, i+1) (-1)^(i+1) from binom(alpha, i) (-1)^i
        coeff = -coeff * (alpha - i) / (i + 1)
        i += 1
    return poly


def _sparse_mul(acc: List[Scalar], factor: List[Scalar], upto: int) -> List[Scalar]:
    terms = [(i, c) for i, c in enumerate(factor) if c]
    out: List[Scalar] = [0] * (upto + 1)
    for n in range(upto + 1):
        total = 0
        for i, c in terms:
            if i > n:
                break
            total += c * acc[n - i]
        out[n] = total
    return out


def oracle_generate(family: PartitionFamily, upto: int) -> ExactSequence:
    """Recompute :func:`generate` by multiplying out truncated factors one at a time.

    Quadratic-or-worse; intended for certifying :func:`generate` in tests.
    """
    if upto < 0:
        raise ValueError("upto must be nonnegative")
    kind = family.kind
    acc: List[Scalar] = [1] + [0] * upto
    if kind is Kind.DISTINCT:
        for j in range(1, upto + 1):
            factor = [0] * (upto + 1)
            factor[0] = 1
            factor[j] = 1
            acc = _sparse_mul(acc, factor, upto)
    elif kind is Kind.OVERPARTITION:
        for j in range(1, upto + 1):
            # (1 + q^j)/(1 - q^j) = 1 + 2q^j + 2q^{2j} + ...
            factor = [0] * (upto + 1)
            factor[0] = 1
            for n in range(j, upto + 1, j):
                factor[n] = 2
            acc = _sparse_mul(acc, factor, upto)
    elif kind is Kind.FRACTIONAL:
        alpha = Fraction(family.param)
        for j in range(1, upto + 1):
            acc = _sparse_mul(acc, _binomial_series(alpha, j, upto), upto)
    else:
        for a in family.allowed_parts(upto):
            acc = _sparse_mul(acc, _geometric(a, upto), upto)
    return ExactSequence(family, 0, tuple(acc), "oracle")


def enumerate_partitions(n: int, parts: Sequence[int], distinct: bool = False
                         ) -> Iterator[Tuple[int, ...]]:
    """Yield every partition of ``n`` into the (multi)set ``parts``.

    Repeated entries of ``parts`` are treated as distinct part types, so the
    yielded tuples are index tuples into the sorted part list.
    """
    parts = sorted(parts)

    def rec(remaining: int, max_idx: int) -> Iterator[Tuple[int, ...]]:
        if remaining == 0:
            yield ()
            return
        for idx in range(max_idx, -1, -1):
            a = parts[idx]
            if a > remaining:
                continue
            next_max = idx - 1 if distinct else idx
            for rest in rec(remaining - a, next_max):
                yield (idx,) + rest

    yield from rec(n, len(parts) - 1)


def is_generalized_pentagonal(n: int) -> bool:
    """True when ``n = j(3j-1)/2`` for some integer ``j`` (including n = 0)."""
    disc = 1 + 24 * n
    root = math.isqrt(disc)
    if root * root != disc:
        return False
    # 24n + 1 = (6j - 1)**2
    return root % 6 in (1, 5)


# ---------------------------------------------------------------------------
# sequence files

HEADER_RE = re.compile(
    r"^partlog-seq v1 family=(?P<family>\S+) start=(?P<start>-?\d+) count=(?P<count>\d+)$")


def dumps_sequence(seq: ExactSequence) -> str:
    lines = [f"partlog-seq v1 family={seq.label} start={seq.start_index} count={len(seq)}"]
    lines.extend(format_scalar(v) for v in seq.values)
    return "\n".join(lines) + "\n"


def loads_sequence(text: str, version: str = GENERATOR_VERSION) -> ExactSequence:
    lines = text.splitlines()
    if not lines:
        raise ValueError("empty sequence file")
    match = HEADER_RE.match(lines[0])
    if not match:
        raise ValueError(f"bad sequence header: {lines[0]!r}")
    count = int(match.group("count"))
    body = lines[1:]
    if len(body) != count:
        raise ValueError(f"header says {count} values, file has {len(body)}")
    label = match.group("family")
    try:
        family: object = PartitionFamily.parse(label)
    except ValueError:
        family = label
    values = tuple(as_scalar(line) for line in body)
    return ExactSequence(family, int(match.group("start")), values, version)
