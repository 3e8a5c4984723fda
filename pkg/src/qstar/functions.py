"""The function class F: ``f_a`` maps digits ``alpha_n`` to ``|a_n - alpha_n|``.

The parameter ``a`` is read through its plain s-adic digits.  Binary points
are evaluated through their (0)-tailed expansion; the (s-1)-tailed expansion
only shows up in :func:`jump` as a one-sided limit.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .digits import DigitSeq, combined_layout, zip_digits
from .errors import DomainError
from .numeration import QStarSystem, canonicalize, decode, encode


@dataclass(frozen=True)
class SAdicParam:
    digits: DigitSeq

    @classmethod
    def of(cls, s: int, preperiod: Sequence[int], period: Sequence[int]) -> SAdicParam:
        return cls(DigitSeq(s, tuple(preperiod), tuple(period)))

    @property
    def s(self) -> int:
        return self.digits.s

    def digit(self, n: int) -> int:
        return self.digits.digit(n)

    def value(self) -> Fraction:
        """The number ``a`` itself, read in base ``s``."""
        return decode(QStarSystem.uniform(self.s), self.digits)

    def __str__(self) -> str:
        return str(self.digits)


@dataclass(frozen=True)
class JumpReport:
    point: Fraction
    value_canonical: Fraction
    limit_other: Fraction
    gap: Fraction


def _param(a) -> SAdicParam:
    return a if isinstance(a, SAdicParam) else SAdicParam(a)


def _same_base(a: SAdicParam, x: DigitSeq) -> None:
    if a.s != x.s:
        raise DomainError(f"base mismatch: parameter has s={a.s}, argument has s={x.s}")


def apply_digits(a, x: DigitSeq) -> DigitSeq:
    """Image digits ``|a_n - alpha_n|``, taken literally from ``x``."""
    a = _param(a)
    _same_base(a, x)
    return zip_digits(lambda ad, xd: abs(ad - xd), a.digits, x)


def evaluate(sys: QStarSystem, a, x: DigitSeq) -> Fraction:
    """``f_a(x)`` with ``x`` given by digits (canonicalized first)."""
    return decode(sys, apply_digits(a, canonicalize(x)))


def image_cylinder_length(sys: QStarSystem, a, digits: Sequence[int]) -> Fraction:
    a = _param(a)
    length = Fraction(1)
    for n, d in enumerate(digits, start=1):
        length *= sys.q(n, abs(a.digit(n) - d))
    return length


def eval_at_point(sys: QStarSystem, a, x, rank: int = 64) -> tuple[Fraction, Fraction]:
    """``f_a(x)`` at a rational point, with an error bound.

    When the expansion of ``x`` does not close within ``rank`` digits, the
    truncated digits are completed by the (0) tail; the true and reported
    values then share the image cylinder of that rank, whose length is
    returned as the bound.
    """
    a = _param(a)
    if sys.s != a.s:
        raise DomainError(f"base mismatch: system has s={sys.s}, parameter has s={a.s}")
    enc = encode(sys, x, rank)
    value = evaluate(sys, a, enc.seq)
    if enc.exact:
        return value, Fraction(0)
    return value, image_cylinder_length(sys, a, enc.digits)


def inversor(x: DigitSeq) -> DigitSeq:
    """Digit inversion ``alpha -> s-1-alpha``, i.e. ``f_a`` for ``a = ((s-1))``."""
    return apply_digits(DigitSeq.constant(x.s, x.s - 1), x)


def jump(sys: QStarSystem, a, binary_base: Sequence[int]) -> JumpReport:
    """Compare both expansions of the binary point ``base(0) = base'(s-1)``."""
    a = _param(a)
    base = tuple(binary_base)
    s = sys.s
    if a.s != s:
        raise DomainError(f"base mismatch: system has s={s}, parameter has s={a.s}")
    if not base or base[-1] == 0:
        raise DomainError("binary point base must end in a nonzero digit")
    canonical = DigitSeq(s, base, (0,))
    other = DigitSeq(s, base[:-1] + (base[-1] - 1,), (s - 1,))
    value = evaluate(sys, a, canonical)
    limit = decode(sys, apply_digits(a, other))
    return JumpReport(decode(sys, canonical), value, limit, value - limit)


def jump_vanishes(a, binary_base: Sequence[int]) -> bool:
    """Exact digit criterion for a zero jump at ``base(0)``.

    The two image sequences differ by one at rank ``m`` and have mutually
    complementary tails, so their values agree only when they form a (0)/(s-1)
    pair: the tail of ``a`` after rank ``m`` is constantly 0 when
    ``a_m < alpha_m``, or constantly ``s-1`` when ``a_m >= alpha_m``.
    """
    a = _param(a)
    base = tuple(binary_base)
    m = len(base)
    if not base or base[-1] == 0:
        raise DomainError("binary point base must end in a nonzero digit")
    seq = a.digits
    pre, per = combined_layout(seq.shape)
    tail = {seq.digit(n) for n in range(m + 1, max(m, pre) + per + 1)}
    want = 0 if a.digit(m) < base[-1] else a.s - 1
    return tail == {want}


def continuity_modulus(sys: QStarSystem, a, shared_digits: Sequence[int]) -> Fraction:
    """Length of the image cylinder shared by all points with these leading digits.

    Any two points whose canonical expansions start with ``shared_digits``
    have ``f_a`` values at most this far apart.
    """
    return image_cylinder_length(sys, a, shared_digits)


def lemma1_partner(a, b) -> DigitSeq | None:
    """A point where ``f_a`` and ``f_b`` agree: digits ``(a_n + b_n) / 2``.

    Returns None when some ``a_n + b_n`` is odd, and also when the midpoint
    sequence has a (s-1) tail whose canonical twin separates the two images.
    """
    a, b = _param(a), _param(b)
    if a.s != b.s:
        raise DomainError(f"base mismatch: {a.s} vs {b.s}")
    pre, per = combined_layout(a.digits.shape, b.digits.shape)
    sums = [a.digit(n) + b.digit(n) for n in range(1, pre + per + 1)]
    if any(t % 2 for t in sums):
        return None
    c = DigitSeq(a.s, tuple(t // 2 for t in sums[:pre]), tuple(t // 2 for t in sums[pre:]))
    cc = canonicalize(c)
    if apply_digits(a, cc) != apply_digits(b, cc):
        return None
    return c
