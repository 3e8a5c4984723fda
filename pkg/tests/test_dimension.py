from fractions import Fraction as F
import math

from hypothesis import given, strategies as st
import pytest

from qstar import DomainError, SAdicParam, StochasticColumn, parse_seq
from qstar import level_set_dimension, moran_dimension
from qstar.dimension import moran_sum

from strategies import columns

THIRDS = StochasticColumn((F(1, 3),) * 3)
HALF_QUARTERS = StochasticColumn((F(1, 2), F(1, 4), F(1, 4)))
LOG3_2 = math.log(2) / math.log(3)
# (1/2)^x + (1/4)^x = 1  <=>  u + u^2 = 1 with u = 2^-x
LOG2_PHI = math.log2((1 + math.sqrt(5)) / 2)


def test_equal_weights():
    assert moran_dimension(THIRDS, {0, 1}, 1e-9) == pytest.approx(LOG3_2, abs=1e-9)


def test_golden_ratio_case():
    assert moran_dimension(HALF_QUARTERS, {0, 1}, 1e-9) == pytest.approx(LOG2_PHI, abs=1e-9)


def test_trivial_sets():
    assert moran_dimension(HALF_QUARTERS, {0, 1, 2}) == 1
    assert moran_dimension(HALF_QUARTERS, {2}) == 0


@pytest.mark.parametrize("digits,tol", [(set(), 1e-9), ({0, 3}, 1e-9), ({0, 1}, 0)])
def test_rejects(digits, tol):
    with pytest.raises(DomainError):
        moran_dimension(THIRDS, digits, tol)


@given(st.integers(3, 6).flatmap(lambda s: st.tuples(columns(s), st.sets(st.integers(0, s - 1), min_size=2, max_size=s - 1))),
       st.sampled_from([1e-6, 1e-9, 1e-12]))
def test_residual_within_induced_tolerance(t, tol):
    col, v = t
    x = moran_dimension(col, v, tol)
    slope = sum(-math.log(float(col[i])) for i in v)
    assert abs(moran_sum(col, v, x) - 1) <= 10 * tol * slope


@given(st.integers(3, 6).flatmap(lambda s: st.tuples(columns(s), st.sets(st.integers(0, s - 1), min_size=1, max_size=s - 1))))
def test_monotone_in_digit_set(t):
    col, v = t
    extra = min(set(range(col.s)) - v)
    tol = 1e-10
    assert moran_dimension(col, v | {extra}, tol) >= moran_dimension(col, v, tol) - 2 * tol


class TestLevelSetDimension:
    def test_middle_digit(self):
        a, y0 = SAdicParam(parse_seq("(1)", 3)), parse_seq("(1)", 3)
        assert level_set_dimension(THIRDS, a, y0, 1e-9) == pytest.approx(LOG3_2, abs=1e-9)
        # solution digits {0, 2} give q_0^x + q_2^x = 1
        assert level_set_dimension(HALF_QUARTERS, a, y0, 1e-9) == pytest.approx(LOG2_PHI, abs=1e-9)

    def test_singleton_level(self):
        a = SAdicParam(parse_seq("(1)", 3))
        assert level_set_dimension(THIRDS, a, parse_seq("(0)", 3)) == 0

    def test_refusals(self):
        a = SAdicParam(parse_seq("(1)", 3))
        with pytest.raises(DomainError):
            level_set_dimension(THIRDS, SAdicParam(parse_seq("(12)", 3)), parse_seq("(1)", 3))
        with pytest.raises(DomainError):
            level_set_dimension(THIRDS, a, parse_seq("1(0)", 3))
        with pytest.raises(DomainError):
            level_set_dimension(THIRDS, a, parse_seq("(2)", 3))
