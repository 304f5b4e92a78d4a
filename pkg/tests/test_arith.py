import math
import random
from fractions import Fraction

import pytest

from gfunkit import arith
from gfunkit.errors import InputError, UnsupportedFieldError
from gfunkit.intervals import Interval, exp_interval
from gfunkit.numberfield import QQ, NumberField


def test_padic_valuation_examples():
    assert arith.padic_valuation(Fraction(1, 3), 3) == -1
    assert arith.padic_valuation(12, 2) == 2
    assert arith.padic_valuation(0, 5) == arith.INFINITY


def test_padic_valuation_rejects_composite():
    with pytest.raises(InputError):
        arith.padic_valuation(Fraction(1, 2), 6)


def test_valuation_is_additive_and_ultrametric():
    rng = random.Random(7)
    for _ in range(200):
        p = rng.choice([2, 3, 5, 7])
        a = Fraction(rng.randint(-50, 50) or 1, rng.randint(1, 50))
        b = Fraction(rng.randint(-50, 50) or 1, rng.randint(1, 50))
        va, vb = arith.padic_valuation(a, p), arith.padic_valuation(b, p)
        assert arith.padic_valuation(a * b, p) == va + vb
        if a + b != 0:
            assert arith.padic_valuation(a + b, p) >= min(va, vb)


def test_abs_value_rational_places():
    v3 = arith.finite_places(QQ, 3)[0]
    assert arith.abs_value(Fraction(2, 3), v3) == Interval(3)
    vinf = arith.archimedean_places(QQ)[0]
    assert arith.abs_value(Fraction(2, 3), vinf) == Interval(Fraction(2, 3))


def test_abs_value_sqrt2_archimedean():
    # both real places carry local degree 1 over global degree 2, so the
    # normalized value is sqrt(2)^(1/2) = 2^(1/4)
    K = NumberField([-2, 0, 1])
    sqrt2 = K.generator()
    for place in arith.archimedean_places(K):
        iv = arith.abs_value(sqrt2, place, precision=80)
        assert iv.lo <= Fraction(2) ** Fraction(1) / 4 + 2  # sanity bounds
        mid = float(iv)
        assert abs(mid - 2 ** 0.25) < 1e-12
    # the product of |sqrt2|_v over all places is 1
    total = arith.product_formula_sum(sqrt2).enclosure()
    assert total.contains_zero()
    assert total.width < Fraction(1, 10 ** 12)


def test_log_plus():
    assert arith.log_plus(Fraction(1, 2)) == Interval(0)
    assert arith.log_plus(Fraction(1)) == Interval(0)
    e_sq = exp_interval(Interval(2), precision=96)  # enclosure of e^2
    got = arith.log_plus(e_sq, precision=96)
    assert got.contains(2)
    assert got.width < Fraction(1, 10 ** 20)


def test_weil_height_rationals():
    assert float(arith.weil_height(Fraction(2, 3))) == pytest.approx(math.log(3))
    assert arith.weil_height(Fraction(1)).is_exact_zero()
    h = arith.weil_height(Fraction(-7, 5))
    assert float(h) == pytest.approx(math.log(7))


def test_weil_height_sqrt2_matches_mahler_oracle():
    K = NumberField([-2, 0, 1])
    h = arith.weil_height(K.generator(), precision=96).enclosure(96)
    oracle = arith.mahler_height(K, precision=96).enclosure(96)
    assert h.overlaps(oracle)
    assert h.width < Fraction(1, 10 ** 20)
    assert abs(float(h) - 0.5 * math.log(2)) < 1e-20


def test_weil_height_functional_equations():
    rng = random.Random(11)
    for _ in range(50):
        x = Fraction(rng.randint(1, 40), rng.randint(1, 40))
        if x in (0, 1):
            continue
        h = arith.weil_height(x)
        h_inv = arith.weil_height(1 / x)
        assert h.terms == h_inv.terms
        h3 = arith.weil_height(x ** 3)
        assert h3.terms == h.scale(3).terms


def test_product_formula_thousand_rationals():
    rng = random.Random(2024)
    for _ in range(1000):
        num = rng.randint(-10 ** 6, 10 ** 6)
        den = rng.randint(1, 10 ** 6)
        if num == 0:
            num = 1
        total = arith.product_formula_sum(Fraction(num, den))
        assert total.is_exact_zero(), (num, den)


def test_number_field_places_split_inert_ramified():
    Ki = NumberField([1, 0, 1])  # Q(i)
    assert [(p.e, p.f) for p in arith.finite_places(Ki, 2)] == [(2, 1)]
    assert [(p.e, p.f) for p in arith.finite_places(Ki, 5)] == [(1, 1), (1, 1)]
    assert [(p.e, p.f) for p in arith.finite_places(Ki, 3)] == [(1, 2)]
    two_plus_i = Ki.element([2, 1])
    vals = sorted(
        arith.valuation(two_plus_i, p) for p in arith.finite_places(Ki, 5)
    )
    assert vals == [0, 1]
    p2 = arith.finite_places(Ki, 2)[0]
    assert arith.valuation(Ki.element([1, 1]), p2) == 1  # 1+i uniformizes


def test_index_divisible_prime_is_refused():
    K = NumberField([7, 0, 1])  # Z[sqrt(-7)] has index 2 in the maximal order
    with pytest.raises(UnsupportedFieldError):
        arith.finite_places(K, 2)


def test_product_formula_number_field_elements():
    K = NumberField([-2, 0, 1])
    rng = random.Random(5)
    for _ in range(10):
        x = K.element(
            [Fraction(rng.randint(-9, 9), rng.randint(1, 9)) for _ in range(2)]
        )
        if x.is_zero():
            continue
        enc = arith.product_formula_sum(x, precision=80).enclosure(80)
        assert enc.contains_zero()
        assert enc.width < Fraction(1, 10 ** 15)


def test_minpoly_validation():
    with pytest.raises(InputError):
        NumberField([1, 1, 1, 1])  # x^3+x^2+x+1 = (x+1)(x^2+1), reducible
    with pytest.raises(InputError):
        NumberField([Fraction(1, 2), 0, 1])  # non-integral coefficients
    with pytest.raises(UnsupportedFieldError):
        NumberField([2] + [0] * 8 + [1])  # degree 9


def test_field_element_arithmetic():
    K = NumberField([-2, 0, 1])
    s = K.generator()
    assert s * s == K.from_rational(2)
    assert (1 / s) * s == K.one()
    assert (s + 1) * (s - 1) == K.one()  # (sqrt2+1)(sqrt2-1) = 1
    assert s ** 4 == K.from_rational(4)
