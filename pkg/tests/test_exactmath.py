import math
from decimal import Decimal, getcontext
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from heckecat.exactmath import LaurentPoly, QuadScalar, cos_pi_over, laurent_bar, laurent_mul, quad_sign

v = LaurentPoly.v()

polys = st.dictionaries(st.integers(-5, 5), st.integers(-4, 4), max_size=5).map(LaurentPoly)
small = st.fractions(min_value=-5, max_value=5, max_denominator=4)
quads = st.lists(small, min_size=8, max_size=8).map(QuadScalar)


def decimal_value(x: QuadScalar) -> Decimal:
    """Independent evaluation at 80 digits."""
    getcontext().prec = 80
    roots = [Decimal(1)] + [Decimal(n).sqrt() for n in (2, 3, 5, 6, 10, 15, 30)]
    return sum((Decimal(c.numerator) / Decimal(c.denominator) * r
                for c, r in zip(map(Fraction, x.coords), roots)), Decimal(0))


class TestLaurent:
    def test_zero_coefficients_dropped(self):
        p = LaurentPoly({0: 0, 2: 3, -1: 0})
        assert p.coeffs == {2: 3}
        assert (v - v).coeffs == {}

    def test_products(self):
        assert laurent_mul(v + v ** -1, LaurentPoly()) == 0
        assert laurent_mul(v, v ** -1) == 1
        assert laurent_mul(1 + v, 1 + v) == LaurentPoly({0: 1, 1: 2, 2: 1})

    def test_bar_examples(self):
        assert laurent_bar(v) == v ** -1
        assert laurent_bar(LaurentPoly.const(1)) == 1
        assert laurent_bar(v ** 2 - 3 + v ** -1) == v ** -2 - 3 + v

    def test_str(self):
        assert str(v ** -2 - 3 + v) == "v^-2 - 3 + v"
        assert str(LaurentPoly({-1: 1, 0: 2, 3: 1})) == "v^-1 + 2 + v^3"
        assert str(LaurentPoly()) == "0"

    def test_json(self):
        p = v ** -1 + v
        assert p.to_json() == {"-1": 1, "1": 1}
        assert LaurentPoly.from_json({"-1": 1, "1": 1}) == p

    @pytest.mark.parametrize("bad", [{"1": 0}, {"x": 1}, {"1": 1.5}, {"1": True}])
    def test_json_rejects(self, bad):
        with pytest.raises((ValueError, TypeError)):
            LaurentPoly.from_json(bad)

    @given(polys, polys, polys)
    def test_ring_axioms(self, a, b, c):
        assert (a + b) + c == a + (b + c)
        assert a * (b + c) == a * b + a * c
        assert a * b == b * a
        assert (a * b) * c == a * (b * c)
        assert a * 1 == a

    @given(polys, polys)
    def test_bar_is_involutive_automorphism(self, a, b):
        assert a.bar().bar() == a
        assert (a * b).bar() == a.bar() * b.bar()
        assert (a + b).bar() == a.bar() + b.bar()

    @given(polys)
    def test_json_round_trip(self, a):
        assert LaurentPoly.from_json(a.to_json()) == a

    @given(polys)
    def test_hash_matches_equality(self, a):
        b = LaurentPoly(dict(a.coeffs))
        assert a == b and hash(a) == hash(b)


class TestQuad:
    def test_sign_examples(self):
        assert quad_sign(QuadScalar()) == 0
        assert quad_sign(QuadScalar([-1, 1, 0, 0, 0, 0, 0, 0])) == 1
        # 3 - sqrt2 - sqrt3 = -0.1462...
        assert quad_sign(QuadScalar([3, -1, -1, 0, 0, 0, 0, 0])) == -1

    def test_sign_near_cancellation(self):
        # (sqrt2 + sqrt3)^2 = 5 + 2 sqrt6 and sqrt6 is slightly below 2.4495
        x = QuadScalar([5, 0, 0, 0, 2, 0, 0, 0]) - QuadScalar([Fraction(97980, 10000), 0, 0, 0, 0, 0, 0, 0])
        assert quad_sign(x) == (1 if decimal_value(x) > 0 else -1)

    def test_cosines(self):
        assert cos_pi_over(2) == 0
        assert cos_pi_over(3) == Fraction(1, 2)
        assert cos_pi_over(4) * cos_pi_over(4) == Fraction(1, 2)
        c5 = cos_pi_over(5)
        assert c5 * c5 * 4 - c5 * 2 - 1 == 0  # 4c^2 - 2c - 1 = 0
        assert cos_pi_over(6) * cos_pi_over(6) == Fraction(3, 4)
        assert cos_pi_over(0) == 1
        for m in (2, 3, 4, 5, 6):
            assert abs(float(cos_pi_over(m)) - math.cos(math.pi / m)) < 1e-12

    def test_sqrt_products(self):
        s2, s3, s5 = QuadScalar.sqrt(2), QuadScalar.sqrt(3), QuadScalar.sqrt(5)
        assert s2 * s2 == 2
        assert s2 * s3 * s5 * (s2 * s3 * s5) == 30
        assert (s2 * s3).coords[4] == 1

    @settings(max_examples=200)
    @given(quads)
    def test_sign_matches_decimal(self, x):
        d = decimal_value(x)
        expected = 0 if all(c == 0 for c in x.coords) else (1 if d > 0 else -1)
        assert quad_sign(x) == expected

    @given(quads, quads)
    def test_sign_multiplicative(self, x, y):
        assert quad_sign(x * y) == quad_sign(x) * quad_sign(y)
        if quad_sign(x) == 1 and quad_sign(y) == 1:
            assert quad_sign(x + y) == 1

    @given(quads, quads, quads)
    def test_field_axioms(self, a, b, c):
        assert (a + b) + c == a + (b + c)
        assert a * (b + c) == a * b + a * c
        assert a * b == b * a
        assert (a * b) * c == a * (b * c)

    @settings(max_examples=60)
    @given(quads)
    def test_inverse(self, x):
        if all(c == 0 for c in x.coords):
            with pytest.raises(ZeroDivisionError):
                x.inverse()
        else:
            assert x * x.inverse() == 1
