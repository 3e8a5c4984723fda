"""Similarity dimension of self-similar Cantor-type sets.

For a single repeated column ``q`` and allowed digits ``V`` the dimension is
the root of ``sum(q_i**x for i in V) == 1``.  This is the only floating-point
computation in the package.
"""
from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable

from .digits import DigitSeq
from .errors import DomainError
from .functions import _param
from .numeration import StochasticColumn


def moran_sum(column: StochasticColumn, digits: Iterable[int], x: float) -> float:
    return math.fsum(float(column[i]) ** x for i in digits)


def moran_dimension(column: StochasticColumn, digits: Iterable[int], tol=Fraction(1, 10**12)) -> float:
    """Root in [0, 1] of ``sum q_i**x = 1`` over ``digits``, by bisection.

    The map is strictly decreasing, equal to ``|V|`` at 0 and to
    ``sum q_i <= 1`` at 1, so the root is bracketed.  The returned value is
    within ``tol`` of the root.
    """
    v = sorted(set(digits))
    if not v:
        raise DomainError("digit set must be nonempty")
    if not all(0 <= i < column.s for i in v):
        raise DomainError(f"digit set {v} not within base {column.s}")
    tol = float(tol)
    if not tol > 0:
        raise DomainError("tolerance must be positive")
    if len(v) == column.s:
        return 1.0
    if len(v) == 1:
        return 0.0
    lo, hi = 0.0, 1.0
    while hi - lo > 2 * tol:
        mid = (lo + hi) / 2
        if moran_sum(column, v, mid) > 1:
            lo = mid
        else:
            hi = mid
    return (lo + hi) / 2


def level_set_dimension(column: StochasticColumn, a, y0: DigitSeq, tol=Fraction(1, 10**12)) -> float:
    """Dimension of the level set ``f_a = y0`` when ``a`` and ``y0`` are constant digits."""
    a = _param(a)
    s = column.s
    if a.s != s or y0.s != s:
        raise DomainError("base mismatch between column, parameter and level")
    if a.digits.preperiod or len(a.digits.period) != 1:
        raise DomainError("parameter must have a single repeated digit")
    if y0.preperiod or len(y0.period) != 1:
        raise DomainError("level must have a single repeated digit")
    an, bn = a.digits.period[0], y0.period[0]
    sols = {d for d in (an - bn, an + bn) if 0 <= d < s}
    if not sols:
        raise DomainError("level set is empty")
    return moran_dimension(column, sols, tol)
