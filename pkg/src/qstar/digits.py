"""Eventually periodic digit sequences over the alphabet {0, ..., s-1}.

A sequence is stored as ``preperiod`` followed by ``period`` repeated forever
and is always kept in normal form (minimal period, minimal preperiod), so
plain ``==`` compares the infinite sequences themselves.
"""
from __future__ import annotations

import math
import re
from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import DomainError


def _minimal_period(period: tuple[int, ...]) -> tuple[int, ...]:
    p = len(period)
    for d in range(1, p + 1):
        if p % d == 0 and period == period[:d] * (p // d):
            return period[:d]
    return period


def normalize(preperiod: Sequence[int], period: Sequence[int]) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """Return the minimal ``(preperiod, period)`` presentation of a sequence."""
    pre = list(preperiod)
    per = _minimal_period(tuple(period))
    # roll the period backwards while it absorbs the last preperiod digit
    while pre and pre[-1] == per[-1]:
        pre.pop()
        per = (per[-1],) + per[:-1]
    return tuple(pre), per


def combined_layout(*shapes: tuple[int, int]) -> tuple[int, int]:
    """Common preperiod length and period length of several periodic objects.

    Each shape is ``(preperiod_length, period_length)``.  Beyond the returned
    preperiod every object repeats with the returned period.
    """
    pre = max(p for p, _ in shapes)
    per = 1
    for _, q in shapes:
        per = math.lcm(per, q)
    return pre, per


@dataclass(frozen=True)
class DigitSeq:
    s: int
    preperiod: tuple[int, ...]
    period: tuple[int, ...]

    def __post_init__(self):
        if self.s < 2:
            raise DomainError(f"base must be at least 2, got {self.s}")
        if not self.period:
            raise DomainError("period must be nonempty")
        for d in (*self.preperiod, *self.period):
            if not 0 <= d < self.s:
                raise DomainError(f"digit {d} not in alphabet of base {self.s}")
        pre, per = normalize(tuple(self.preperiod), tuple(self.period))
        object.__setattr__(self, "preperiod", pre)
        object.__setattr__(self, "period", per)

    @classmethod
    def constant(cls, s: int, digit: int) -> DigitSeq:
        return cls(s, (), (digit,))

    @classmethod
    def terminating(cls, s: int, digits: Iterable[int]) -> DigitSeq:
        """The sequence ``digits`` followed by the (0) tail."""
        return cls(s, tuple(digits), (0,))

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.preperiod), len(self.period)

    def digit(self, n: int) -> int:
        """The n-th digit, 1-indexed."""
        if n < 1:
            raise DomainError(f"digit index must be >= 1, got {n}")
        k = len(self.preperiod)
        if n <= k:
            return self.preperiod[n - 1]
        return self.period[(n - k - 1) % len(self.period)]

    def prefix(self, m: int) -> tuple[int, ...]:
        return tuple(self.digit(n) for n in range(1, m + 1))

    def tail_is(self, digit: int) -> bool:
        return self.period == (digit,)

    def map_digits(self, fn) -> DigitSeq:
        return DigitSeq(self.s, tuple(fn(d) for d in self.preperiod), tuple(fn(d) for d in self.period))

    def __str__(self) -> str:
        return render(self)


def zip_digits(fn, *seqs: DigitSeq, s: int | None = None) -> DigitSeq:
    """Combine sequences position-wise: output digit n is ``fn(x_n, y_n, ...)``."""
    pre, per = combined_layout(*(q.shape for q in seqs))
    s = seqs[0].s if s is None else s
    out = [fn(*(q.digit(n) for q in seqs)) for n in range(1, pre + per + 1)]
    return DigitSeq(s, tuple(out[:pre]), tuple(out[pre:]))


_SEQ_RE = re.compile(r"^([0-9,]*)\(([0-9,]+)\)$")


def parse_digits(text: str, s: int) -> tuple[int, ...]:
    """Parse a finite digit word: bare characters, or comma-separated integers."""
    text = "".join(text.split())
    if not text:
        return ()
    if "," in text or s > 10:
        parts = text.split(",")
        if any(not p.isdigit() for p in parts):
            raise DomainError(f"malformed digit list {text!r}")
        out = tuple(int(p) for p in parts)
    else:
        if not text.isdigit():
            raise DomainError(f"malformed digit word {text!r}")
        out = tuple(int(c) for c in text)
    for d in out:
        if d >= s:
            raise DomainError(f"digit {d} not in alphabet of base {s}")
    return out


def parse_seq(text: str, s: int) -> DigitSeq:
    """Parse ``pre(period)``, e.g. ``"31(40)"`` or ``"3,1(4,0)"``."""
    compact = "".join(text.split())
    m = _SEQ_RE.match(compact)
    if m is None:
        raise DomainError(f"malformed digit sequence {text!r}; expected pre(period)")
    pre, per = m.group(1), m.group(2)
    if pre.endswith(","):
        pre = pre[:-1]
    return DigitSeq(s, parse_digits(pre, s), parse_digits(per, s))


def render_digits(digits: Sequence[int], s: int) -> str:
    if s > 10:
        return ",".join(str(d) for d in digits)
    return "".join(str(d) for d in digits)


def render(seq: DigitSeq) -> str:
    pre = render_digits(seq.preperiod, seq.s)
    per = render_digits(seq.period, seq.s)
    return f"{pre}({per})"
