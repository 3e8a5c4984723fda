from fractions import Fraction as F

from hypothesis import assume, given, settings, strategies as st
import pytest

from qstar import (
    DigitSeq,
    DomainError,
    QStarSystem,
    SAdicParam,
    apply_digits,
    canonicalize,
    continuity_modulus,
    cylinder,
    decode,
    eval_at_point,
    evaluate,
    inversor,
    is_binary,
    jump,
    jump_vanishes,
    lemma1_partner,
    parse_seq,
)

from qstar.digits import zip_digits

from strategies import seqs, system_param_seq, systems

U2, U3, U5 = (QStarSystem.uniform(s) for s in (2, 3, 5))
THIRD = QStarSystem.self_similar([F(1, 3), F(2, 3)])


def P(text, s):
    return SAdicParam(parse_seq(text, s))


class TestApplyDigits:
    def test_inversor_pattern(self):
        assert apply_digits(P("(4)", 5), parse_seq("(012)", 5)) == parse_seq("(432)", 5)

    def test_identity_parameter(self):
        x = parse_seq("21(0120)", 3)
        assert apply_digits(P("(0)", 3), x) == x

    def test_corollary_example(self):
        assert apply_digits(P("(2)", 5), parse_seq("(1)", 5)) == parse_seq("(1)", 5)

    def test_layout(self):
        out = apply_digits(P("1(01)", 3), parse_seq("(012)", 3))
        # a: 1 0 1 0 1 0 1 ...   x: 0 1 2 0 1 2 0 ...
        assert out.prefix(7) == (1, 1, 1, 0, 0, 2, 1)
        assert len(out.preperiod) <= 1 and len(out.period) in (1, 2, 3, 6)

    def test_base_mismatch(self):
        with pytest.raises(DomainError):
            apply_digits(P("(1)", 3), parse_seq("(1)", 2))

    def test_alternating_inversion(self):
        # a = ((s-1) 0): odd positions inverted, even positions fixed
        x = parse_seq("(0123)", 5)
        out = apply_digits(P("(40)", 5), x)
        for n in range(1, 13):
            expect = 4 - x.digit(n) if n % 2 else x.digit(n)
            assert out.digit(n) == expect


class TestEvaluate:
    def test_uniform_inversion(self):
        # sum 1/9^k = 1/8, so f = 1 - 1/8
        assert evaluate(U3, P("(2)", 3), parse_seq("(01)", 3)) == F(7, 8)

    def test_single_point_level(self):
        assert evaluate(U5, P("(314)", 5), parse_seq("(314)", 5)) == 0

    @given(system_param_seq())
    def test_f0_is_identity(self, t):
        sys, _, x = t
        assert evaluate(sys, SAdicParam(DigitSeq.constant(sys.s, 0)), x) == decode(sys, x)

    @given(system_param_seq())
    def test_binary_points_use_zero_tail(self, t):
        sys, a, x = t
        assert evaluate(sys, a, x) == decode(sys, apply_digits(a, canonicalize(x)))

    @given(st.integers(2, 6).flatmap(lambda s: st.tuples(st.just(s), seqs(s))))
    def test_uniform_inversor_is_reflection(self, t):
        s, x = t
        sys = QStarSystem.uniform(s)
        x = canonicalize(x)
        assume(not is_binary(x))
        assert decode(sys, inversor(x)) == 1 - decode(sys, x)


class TestEvalAtPoint:
    def test_exact_point(self):
        assert eval_at_point(U2, P("(1)", 2), F(1, 3), 8) == (F(2, 3), 0)

    def test_identity_at_first_breakpoint(self):
        q01 = THIRD.q(1, 0)
        assert eval_at_point(THIRD, P("(0)", 2), q01, 3) == (q01, 0)

    def test_truncated_bound(self):
        value, bound = eval_at_point(U3, P("(1)", 3), F(1, 100), 4)
        assert bound == F(1, 81)
        # the full-precision value sits in the same image cylinder
        exact, zero = eval_at_point(U3, P("(1)", 3), F(1, 100), 100)
        assert zero == 0
        assert abs(exact - value) <= bound

    def test_outside_unit_interval(self):
        with pytest.raises(DomainError):
            eval_at_point(U3, P("(1)", 3), F(3, 2), 4)


class TestInversor:
    def test_examples(self):
        assert inversor(parse_seq("(0)", 3)) == parse_seq("(2)", 3)
        assert inversor(parse_seq("31(40)", 5)) == parse_seq("13(04)", 5)

    @given(st.integers(2, 10).flatmap(seqs))
    def test_involution(self, x):
        assert inversor(inversor(x)) == x

    @settings(max_examples=200)
    @given(systems(), st.data())
    def test_strictly_decreasing(self, sys, data):
        x = canonicalize(data.draw(seqs(sys.s)))
        y = canonicalize(data.draw(seqs(sys.s)))
        assume(not is_binary(x) and not is_binary(y))
        vx, vy = decode(sys, x), decode(sys, y)
        assume(vx != vy)
        fx, fy = decode(sys, inversor(x)), decode(sys, inversor(y))
        assert (fx - fy) * (vx - vy) < 0


class TestJump:
    def test_worked_example(self):
        # image of 1(0) is 1 1 (01) -> 3/4 + (1/16)/(3/4); image of 0(1) is 00(10) -> (1/8)/(3/4)
        r = jump(U2, P("(01)", 2), [1])
        assert r.point == F(1, 2)
        assert r.value_canonical == F(5, 6)
        assert r.limit_other == F(1, 6)
        assert r.gap == F(2, 3)

    @given(systems(), st.data())
    def test_continuous_parameters(self, sys, data):
        base = data.draw(st.lists(st.integers(0, sys.s - 1), min_size=1, max_size=6))
        assume(base[-1] >= 1)
        for d in (0, sys.s - 1):
            assert jump(sys, SAdicParam(DigitSeq.constant(sys.s, d)), base).gap == 0

    def test_trailing_zero_rejected(self):
        with pytest.raises(DomainError):
            jump(U3, P("(1)", 3), [1, 0])
        with pytest.raises(DomainError):
            jump(U3, P("(1)", 3), [])

    def test_middle_digit_can_still_vanish(self):
        # a_1 = 1 with tail (2): images 0(2) and 1(0) are the two expansions of one point
        assert jump(U3, P("1(2)", 3), [1]).gap == 0
        assert jump_vanishes(P("1(2)", 3), [1])

    @settings(max_examples=300)
    @given(systems(), st.data())
    def test_vanishing_criterion(self, sys, data):
        s = sys.s
        # tails built from {0, s-1} make the zero-gap cases frequent
        tail_digits = data.draw(st.sampled_from([[0], [s - 1], [0, s - 1], list(range(s))]))
        pre = data.draw(st.lists(st.integers(0, s - 1), max_size=4))
        per = data.draw(st.lists(st.sampled_from(tail_digits), min_size=1, max_size=3))
        a = SAdicParam(DigitSeq(s, tuple(pre), tuple(per)))
        base = data.draw(st.lists(st.integers(0, s - 1), min_size=1, max_size=6))
        assume(base[-1] >= 1)
        gap = jump(sys, a, base).gap
        assert (gap == 0) == jump_vanishes(a, base)
        if gap == 0:
            m = len(base)
            assert all(a.digit(n) in (0, s - 1) for n in range(m + 1, m + 20))


class TestModulus:
    def test_examples(self):
        a = P("(1)", 3)
        assert continuity_modulus(U3, a, [0, 2, 1, 1]) == F(1, 81)
        assert continuity_modulus(U3, a, []) == 1
        assert continuity_modulus(THIRD, P("(0)", 2), [0, 0]) == F(1, 9)

    @settings(max_examples=200)
    @given(system_param_seq(), st.data())
    def test_bound(self, t, data):
        sys, a, x0 = t
        x0 = canonicalize(x0)
        n = data.draw(st.integers(1, 16))
        shared = x0.prefix(n - 1)
        rest = data.draw(seqs(sys.s))
        x = canonicalize(DigitSeq(sys.s, shared + rest.preperiod, rest.period))
        assume(x.prefix(n - 1) == shared)
        bound = continuity_modulus(sys, a, shared)
        assert abs(evaluate(sys, a, x) - evaluate(sys, a, x0)) <= bound
        assert bound == cylinder(sys, apply_digits(a, x0).prefix(n - 1)).length


class TestLemma1:
    def test_examples(self):
        assert lemma1_partner(P("(314)", 5), P("(130)", 5)) == parse_seq("(2)", 5)
        assert lemma1_partner(P("(1)", 3), P("(2)", 3)) is None
        a = P("2(01)", 3)
        assert lemma1_partner(a, a) == a.digits
        assert evaluate(U3, a, a.digits) == 0

    @given(system_param_seq(), st.data())
    def test_agreement(self, t, data):
        sys, a, _ = t
        # b_n = a_n + 2k or a_n - 2k keeps every sum even
        b = a.digits.map_digits(lambda d: data.draw(
            st.sampled_from([e for e in range(sys.s) if (e - d) % 2 == 0])))
        b = SAdicParam(b)
        c = lemma1_partner(a, b)
        if c is None:
            # only possible when the midpoint is a (s-1)-tailed binary point
            mid = zip_digits(lambda u, v: (u + v) // 2, a.digits, b.digits)
            assert is_binary(mid) and mid.tail_is(sys.s - 1)
            assert apply_digits(a, canonicalize(mid)) != apply_digits(b, canonicalize(mid))
            return
        assert evaluate(sys, a, c) == evaluate(sys, b, c)

    def test_rejects_binary_mismatch(self):
        # midpoint 1(2) canonicalizes to 2(0), where |0-2| != |2-2|
        assert lemma1_partner(P("0(2)", 3), P("2(2)", 3)) is None

    @given(st.integers(2, 7).flatmap(lambda s: st.tuples(systems(s), seqs(s))))
    def test_corollary_fixed_point(self, t):
        sys, d = t
        s = sys.s
        d = d.map_digits(lambda x: x % ((s - 1) // 2 + 1))
        a = SAdicParam(d.map_digits(lambda x: 2 * x))
        assert evaluate(sys, a, d) == decode(sys, d)
