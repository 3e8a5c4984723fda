"""Exact arithmetic for the polybasic Q*_s numeration system.

The infinite stochastic matrix ``||q_in||`` is presented finitely as a list of
prefix columns followed by a list of columns repeated periodically.  All
values are :class:`fractions.Fraction`; nothing here touches floating point.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .digits import DigitSeq, combined_layout
from .errors import DomainError


@dataclass(frozen=True)
class StochasticColumn:
    probs: tuple[Fraction, ...]

    def __post_init__(self):
        probs = tuple(Fraction(p) for p in self.probs)
        object.__setattr__(self, "probs", probs)
        if len(probs) < 2:
            raise DomainError("column needs at least two entries")
        for p in probs:
            if not 0 < p < 1:
                raise DomainError(f"entry not in (0,1): {p}")
        if sum(probs) != 1:
            raise DomainError(f"column sum ≠ 1: sum is {sum(probs)}")

    @property
    def s(self) -> int:
        return len(self.probs)

    def beta(self, d: int) -> Fraction:
        return sum(self.probs[:d], Fraction(0))

    def __getitem__(self, i: int) -> Fraction:
        return self.probs[i]


@dataclass(frozen=True)
class QStarSystem:
    """A Q*_s system: base ``s`` and eventually periodic columns.

    Column ``n`` (1-indexed) is ``prefix[n-1]`` for ``n <= len(prefix)``
    and cycles through ``period`` afterwards.  Because every entry is
    strictly below 1 and the tail is periodic, the product of column maxima
    diverges to zero, so every digit sequence decodes to a point.
    """

    s: int
    prefix: tuple[StochasticColumn, ...]
    period: tuple[StochasticColumn, ...]

    def __post_init__(self):
        object.__setattr__(self, "prefix", tuple(_as_column(c) for c in self.prefix))
        object.__setattr__(self, "period", tuple(_as_column(c) for c in self.period))
        if self.s < 2:
            raise DomainError(f"base must be at least 2, got {self.s}")
        if not self.period:
            raise DomainError("period columns must be nonempty")
        for col in (*self.prefix, *self.period):
            if col.s != self.s:
                raise DomainError(f"column has {col.s} entries, expected {self.s}")

    @classmethod
    def uniform(cls, s: int) -> QStarSystem:
        """The classical s-adic system."""
        return cls(s, (), (StochasticColumn((Fraction(1, s),) * s),))

    @classmethod
    def self_similar(cls, probs: Sequence) -> QStarSystem:
        col = _as_column(probs)
        return cls(col.s, (), (col,))

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.prefix), len(self.period)

    @property
    def is_self_similar(self) -> bool:
        cols = set(self.prefix) | set(self.period)
        return len(cols) == 1

    def column(self, n: int) -> StochasticColumn:
        if n < 1:
            raise DomainError(f"column index must be >= 1, got {n}")
        k = len(self.prefix)
        if n <= k:
            return self.prefix[n - 1]
        return self.period[(n - k - 1) % len(self.period)]

    def q(self, n: int, d: int) -> Fraction:
        _check_digit(self.s, d)
        return self.column(n)[d]

    def entry_bounds(self) -> tuple[Fraction, Fraction]:
        """Smallest and largest matrix entry.

        These are uniform bounds ``eps <= q_in <= delta`` with ``0 < eps`` and
        ``delta < 1``, which a finitely presented matrix always has.
        """
        entries = [p for col in (*self.prefix, *self.period) for p in col.probs]
        return min(entries), max(entries)


def _as_column(c) -> StochasticColumn:
    return c if isinstance(c, StochasticColumn) else StochasticColumn(tuple(c))


def _check_digit(s: int, d: int) -> None:
    if not 0 <= d < s:
        raise DomainError(f"digit {d} not in alphabet of base {s}")


def _check_base(sys: QStarSystem, seq: DigitSeq) -> None:
    if sys.s != seq.s:
        raise DomainError(f"base mismatch: system has s={sys.s}, sequence has s={seq.s}")


@dataclass(frozen=True)
class CylinderInterval:
    base: tuple[int, ...]
    left: Fraction
    right: Fraction

    @property
    def length(self) -> Fraction:
        return self.right - self.left

    def __contains__(self, x) -> bool:
        return self.left <= x <= self.right


@dataclass(frozen=True)
class EncodeResult:
    """Outcome of greedy digit extraction.

    ``exact`` results carry the full eventually periodic sequence in ``seq``.
    Inexact ones only know ``digits`` (a finite prefix) and the enclosing
    cylinder; ``seq`` is then that prefix followed by the (0) tail.
    """

    digits: tuple[int, ...]
    seq: DigitSeq
    exact: bool
    enclosure: CylinderInterval | None = None


def column(sys: QStarSystem, n: int) -> StochasticColumn:
    return sys.column(n)


def beta(sys: QStarSystem, n: int, d: int) -> Fraction:
    """Left offset of digit ``d`` at rank ``n``: sum of ``q_in`` for ``i < d``."""
    _check_digit(sys.s, d)
    return sys.column(n).beta(d)


def decode(sys: QStarSystem, seq: DigitSeq) -> Fraction:
    """Exact value of an eventually periodic digit sequence.

    After the joint preperiod of the sequence and the matrix, the tail value
    ``y`` satisfies ``y = c + r*y`` over one joint period, hence
    ``y = c / (1 - r)``.
    """
    _check_base(sys, seq)
    pre, per = combined_layout(seq.shape, sys.shape)
    total, scale = Fraction(0), Fraction(1)
    for n in range(1, pre + 1):
        col, d = sys.column(n), seq.digit(n)
        total += scale * col.beta(d)
        scale *= col[d]
    c, r = Fraction(0), Fraction(1)
    for n in range(pre + 1, pre + per + 1):
        col, d = sys.column(n), seq.digit(n)
        c += r * col.beta(d)
        r *= col[d]
    return total + scale * c / (1 - r)


def cylinder(sys: QStarSystem, base: Sequence[int]) -> CylinderInterval:
    left, length = Fraction(0), Fraction(1)
    for n, d in enumerate(base, start=1):
        col = sys.column(n)
        _check_digit(sys.s, d)
        left += length * col.beta(d)
        length *= col[d]
    return CylinderInterval(tuple(base), left, left + length)


def encode(sys: QStarSystem, x, max_rank: int = 64) -> EncodeResult:
    """Greedy Q*_s expansion of a rational ``x`` in [0, 1].

    Digit ``d`` is chosen with ``beta_d <= t < beta_{d+1}``, so left cylinder
    endpoints come out with the (0) tail.  The state ``(remainder, column
    phase)`` determines all later digits, so a repeated state closes the
    period.  Without a repeat within ``max_rank`` digits the result is
    inexact and carries the enclosing cylinder.
    """
    x = Fraction(x)
    if not 0 <= x <= 1:
        raise DomainError(f"x must lie in [0,1], got {x}")
    s = sys.s
    if x == 1:
        return EncodeResult((), DigitSeq.constant(s, s - 1), True)
    k, p = sys.shape
    digits: list[int] = []
    seen: dict[tuple[Fraction, int], int] = {}
    t = x
    while True:
        if t == 0:
            seq = DigitSeq(s, tuple(digits), (0,))
            return EncodeResult(tuple(digits), seq, True)
        n = len(digits) + 1
        if n > k:
            state = (t, (n - k - 1) % p)
            if state in seen:
                i = seen[state]
                seq = DigitSeq(s, tuple(digits[:i]), tuple(digits[i:]))
                return EncodeResult(tuple(digits), seq, True)
            seen[state] = len(digits)
        if len(digits) >= max_rank:
            break
        col = sys.column(n)
        d, acc = 0, col[0]
        while acc <= t:
            d += 1
            acc += col[d]
        digits.append(d)
        t = (t - col.beta(d)) / col[d]
    seq = DigitSeq(s, tuple(digits), (0,))
    return EncodeResult(tuple(digits), seq, False, cylinder(sys, digits))


def is_binary(seq: DigitSeq) -> bool:
    """True for points with two expansions: a (0) or (s-1) tail after a break.

    The constants (0) and ((s-1)), i.e. the numbers 0 and 1, are unary.
    """
    return bool(seq.preperiod) and (seq.tail_is(0) or seq.tail_is(seq.s - 1))


def canonicalize(seq: DigitSeq) -> DigitSeq:
    """Rewrite a (s-1)-tailed binary expansion to its (0)-tailed twin."""
    if seq.preperiod and seq.tail_is(seq.s - 1):
        pre = seq.preperiod[:-1] + (seq.preperiod[-1] + 1,)
        return DigitSeq(seq.s, pre, (0,))
    return seq


def twin(seq: DigitSeq) -> DigitSeq | None:
    """The other expansion of a binary point, or None for unary points."""
    if not is_binary(seq):
        return None
    if seq.tail_is(0):
        pre = seq.preperiod[:-1] + (seq.preperiod[-1] - 1,)
        return DigitSeq(seq.s, pre, (seq.s - 1,))
    return canonicalize(seq)
