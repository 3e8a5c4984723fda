"""Value sets and level sets of ``f_a``.

Both are digit-restricted sets: the value set allows digit ``n`` to range over
``V_n = {0, ..., max(s-1-a_n, a_n)}``; the level set of ``y0`` allows
``S_n = {a_n - b_n, a_n + b_n}`` intersected with the alphabet.  For
eventually periodic inputs "infinitely many n" means "some position of the
joint period", which makes every classification exactly decidable.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from math import prod

from .digits import DigitSeq, combined_layout
from .errors import BudgetError, DomainError
from .functions import SAdicParam, _param, evaluate
from .numeration import CylinderInterval, QStarSystem, canonicalize, cylinder, decode, twin

DigitSet = frozenset


class ValueSetKind(str, Enum):
    FULL_INTERVAL = "FullInterval"
    FINITE_UNION = "FiniteUnionOfIntervals"
    CANTOR = "CantorNowhereDense"


class LevelKind(str, Enum):
    EMPTY = "Empty"
    FINITE = "Finite"
    CONTINUUM = "Continuum"


@dataclass(frozen=True)
class PeriodicSets:
    """Eventually periodic list of digit subsets, 1-indexed like DigitSeq."""

    preperiod: tuple[DigitSet, ...]
    period: tuple[DigitSet, ...]

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.preperiod), len(self.period)

    def at(self, n: int) -> DigitSet:
        k = len(self.preperiod)
        if n <= k:
            return self.preperiod[n - 1]
        return self.period[(n - k - 1) % len(self.period)]


@dataclass(frozen=True)
class CantorSpec:
    """The set C[Q*_s; V_n] of points whose n-th digit lies in ``V_n``."""

    sys: QStarSystem
    vsets: PeriodicSets

    def __post_init__(self):
        for v in (*self.vsets.preperiod, *self.vsets.period):
            if not v:
                raise DomainError("digit sets must be nonempty")
            if not v <= set(range(self.sys.s)):
                raise DomainError(f"digit set {sorted(v)} not within base {self.sys.s}")

    def contains_digits(self, digits) -> bool:
        return all(d in self.vsets.at(n) for n, d in enumerate(digits, start=1))

    def measure(self) -> Fraction:
        return measure(self.sys, self.vsets)


@dataclass(frozen=True)
class ValueSetSpec:
    s: int
    vsets: PeriodicSets
    classification: ValueSetKind
    measure: Fraction | None = None
    sup_point: Fraction | None = None


@dataclass(frozen=True)
class LevelProfile:
    s: int
    solsets: PeriodicSets
    classification: LevelKind
    count: int | None = None


def _value_digits(s: int, an: int) -> DigitSet:
    return frozenset(range(max(s - 1 - an, an) + 1))


def value_set(a, s: int | None = None, sys: QStarSystem | None = None) -> ValueSetSpec:
    """Digit restrictions and topological type of the range of ``f_a``.

    Measure and the right end of the enclosing interval need matrix weights
    and are filled in only when ``sys`` is given.
    """
    a = _param(a)
    s = a.s if s is None else s
    if s != a.s or (sys is not None and sys.s != s):
        raise DomainError("base mismatch between parameter, base and system")
    seq = a.digits
    vsets = PeriodicSets(
        tuple(_value_digits(s, d) for d in seq.preperiod),
        tuple(_value_digits(s, d) for d in seq.period),
    )
    if s == 2:
        kind = ValueSetKind.FULL_INTERVAL
    elif any(0 < d < s - 1 for d in seq.period):
        kind = ValueSetKind.CANTOR
    else:
        kind = ValueSetKind.FINITE_UNION
    spec = ValueSetSpec(s, vsets, kind)
    if sys is None:
        return spec
    sup_digits = seq.map_digits(lambda d: max(s - 1 - d, d))
    return ValueSetSpec(s, vsets, kind, value_set_measure(sys, spec), decode(sys, sup_digits))


def _mass(sys: QStarSystem, n: int, v: DigitSet) -> Fraction:
    col = sys.column(n)
    return sum((col[i] for i in v), Fraction(0))


def measure(sys: QStarSystem, vsets: PeriodicSets) -> Fraction:
    """Lebesgue measure of the digit-restricted set, as the limit of ``prod sigma_n``."""
    pre, per = combined_layout(vsets.shape, sys.shape)
    if any(_mass(sys, n, vsets.at(n)) < 1 for n in range(pre + 1, pre + per + 1)):
        return Fraction(0)
    return prod((_mass(sys, n, vsets.at(n)) for n in range(1, pre + 1)), start=Fraction(1))


def partial_measures(sys: QStarSystem, vsets: PeriodicSets, m: int) -> list[Fraction]:
    """Measures of the rank-1..m cylinder approximations of the set."""
    out, acc = [], Fraction(1)
    for n in range(1, m + 1):
        acc *= _mass(sys, n, vsets.at(n))
        out.append(acc)
    return out


def value_set_measure(sys: QStarSystem, spec: ValueSetSpec) -> Fraction:
    if spec.s != sys.s:
        raise DomainError("base mismatch between value set and system")
    return measure(sys, spec.vsets)


def value_set_intervals(sys: QStarSystem, a, spec: ValueSetSpec | None = None) -> list[CylinderInterval]:
    """The value set as a sorted list of disjoint closed intervals.

    Only defined when finitely many ranks restrict the digits.  Merged runs
    are reported with the base of their first cylinder.
    """
    a = _param(a)
    if spec is None:
        spec = value_set(a, sys.s)
    if spec.classification is ValueSetKind.CANTOR:
        raise DomainError("value set is a Cantor-type set, not a finite union of intervals")
    full = frozenset(range(sys.s))
    restricted = [n for n in range(1, len(spec.vsets.preperiod) + 1) if spec.vsets.at(n) != full]
    if not restricted:
        return [cylinder(sys, ())]
    rank = restricted[-1]
    choices = [sorted(spec.vsets.at(n)) for n in range(1, rank + 1)]
    merged: list[CylinderInterval] = []
    for word in itertools.product(*choices):
        cyl = cylinder(sys, word)
        if merged and merged[-1].right == cyl.left:
            last = merged[-1]
            merged[-1] = CylinderInterval(last.base, last.left, cyl.right)
        else:
            merged.append(cyl)
    return merged


def _solutions(s: int, an: int, bn: int) -> DigitSet:
    return frozenset(d for d in (an - bn, an + bn) if 0 <= d < s)


def level_profile(a, y0: DigitSeq) -> LevelProfile:
    """Per-digit solution sets of ``|a_n - alpha_n| = b_n`` and their verdict.

    ``y0`` is read through its canonical (0)-tailed digits.
    """
    return _profile(_param(a), canonicalize(y0))


def _profile(a: SAdicParam, y0: DigitSeq) -> LevelProfile:
    if a.s != y0.s:
        raise DomainError(f"base mismatch: parameter has s={a.s}, level has s={y0.s}")
    s = a.s
    pre, per = combined_layout(a.digits.shape, y0.shape)
    sets = [_solutions(s, a.digit(n), y0.digit(n)) for n in range(1, pre + per + 1)]
    solsets = PeriodicSets(tuple(sets[:pre]), tuple(sets[pre:]))
    if any(not v for v in sets):
        return LevelProfile(s, solsets, LevelKind.EMPTY, 0)
    if any(len(v) == 2 for v in sets[pre:]):
        return LevelProfile(s, solsets, LevelKind.CONTINUUM)
    return LevelProfile(s, solsets, LevelKind.FINITE, prod(len(v) for v in sets[:pre]))


def _candidates(profile: LevelProfile):
    forced = tuple(next(iter(v)) for v in profile.solsets.period)
    for word in itertools.product(*(sorted(v) for v in profile.solsets.preperiod)):
        yield DigitSeq(profile.s, word, forced)


def level_enumerate(sys: QStarSystem, a, y0: DigitSeq, cap: int = 4096) -> list[Fraction]:
    """All points of a finite level set, ascending.

    Candidates come from the digit system for every expansion of ``y0``;
    each is kept only if ``f_a`` (under the (0)-tail convention) really
    maps it to ``y0``.
    """
    a = _param(a)
    if sys.s != a.s:
        raise DomainError(f"base mismatch: system has s={sys.s}, parameter has s={a.s}")
    y0 = canonicalize(y0)
    profile = level_profile(a, y0)
    if profile.classification is not LevelKind.FINITE:
        raise DomainError(f"level set is {profile.classification.value}, not finite")
    profiles = [profile]
    alt = twin(y0)
    if alt is not None:
        alt_profile = _profile(a, alt)
        if alt_profile.classification is LevelKind.FINITE:
            profiles.append(alt_profile)
    total = sum(p.count for p in profiles)
    if total > cap:
        raise BudgetError(f"level set has up to {total} points, cap is {cap}")
    target = decode(sys, y0)
    points = set()
    for p in profiles:
        for x in _candidates(p):
            if evaluate(sys, a, x) == target:
                points.add(decode(sys, x))
    return sorted(points)


def count_prefix_solutions(a, y0: DigitSeq, m: int) -> int:
    """Number of rank-m digit words solving the first m equations, from the profile."""
    sets = level_profile(a, y0).solsets
    return prod(len(sets.at(n)) for n in range(1, m + 1))
