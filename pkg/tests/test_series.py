import math
import random
from fractions import Fraction

import pytest

from gfunkit.errors import InputError
from gfunkit.numberfield import QQ, NumberField
from gfunkit.series import (
    MultiSeries,
    UniSeries,
    compose,
    expand_rational,
    identity_tuple,
    mu_diagonal,
    parse_series,
    serialize_series,
)


def poly(nvars, order, terms):
    return MultiSeries(nvars, order, terms)


def rand_series(rng, nvars, order, density=0.5, bound=5):
    coeffs = {}
    for d in range(order + 1):
        for exps in _monomials(nvars, d):
            if sum(exps) == d and rng.random() < density:
                coeffs[exps] = Fraction(rng.randint(-bound, bound))
    return MultiSeries(nvars, order, coeffs)


def _monomials(nvars, d):
    if nvars == 1:
        return [(d,)]
    out = []
    for e in range(d + 1):
        out.extend((e,) + rest for rest in _monomials(nvars - 1, d - e))
    return out


def test_ring_ops_basic():
    one_plus = poly(1, 5, {(0,): 1, (1,): 1})
    one_minus = poly(1, 5, {(0,): 1, (1,): -1})
    prod = one_plus * one_minus
    assert prod == poly(1, 5, {(0,): 1, (2,): -1})

    f = poly(2, 5, {(1, 2): 1})  # z1*z2^2
    assert f.derivative(1) == poly(2, 4, {(1, 1): 2})


def test_mul_truncates_to_min_order():
    a = poly(1, 10, {(n,): 1 for n in range(11)})  # geometric series
    b = poly(1, 12, {(0,): 1, (1,): -1})
    prod = a * b
    assert prod.order == 10
    assert prod == poly(1, 10, {(0,): 1})


def test_mismatch_errors():
    a = poly(1, 5, {(1,): 1})
    b = poly(2, 5, {(1, 0): 1})
    with pytest.raises(InputError):
        a + b
    K = NumberField([-2, 0, 1])
    c = MultiSeries(1, 5, {(1,): 1}, field=K)
    with pytest.raises(InputError):
        a * c


def test_expand_rational_binomial_oracle():
    # 1/(1 - z1 - z2): the coefficient of z1^i z2^j is C(i+j, i)
    one = poly(2, 4, {(0, 0): 1})
    q = poly(2, 4, {(0, 0): 1, (1, 0): -1, (0, 1): -1})
    r = expand_rational(one, q, 4)
    for i in range(5):
        for j in range(5 - i):
            assert r.coefficient((i, j)) == QQ.from_rational(math.comb(i + j, i))


def test_expand_rational_trivial_cases():
    z1 = poly(2, 6, {(1, 0): 1})
    one = poly(2, 6, {(0, 0): 1})
    assert expand_rational(z1, one, 6) == z1.as_polynomial_at_order(6)
    geo = expand_rational(
        poly(1, 3, {(0,): 1}), poly(1, 3, {(0,): 1, (1,): -1}), 3
    )
    assert geo == poly(1, 3, {(0,): 1, (1,): 1, (2,): 1, (3,): 1})


def test_expand_rational_rejects_zero_constant():
    z1 = poly(2, 4, {(1, 0): 1})
    with pytest.raises(InputError):
        expand_rational(z1, z1, 4)


def test_expand_rational_round_trip_random():
    rng = random.Random(3)
    for _ in range(20):
        nvars = rng.choice([1, 2, 3])
        p = rand_series(rng, nvars, 3)
        q = rand_series(rng, nvars, 3)
        q = q + MultiSeries.constant(
            rng.choice([1, 2, -1]), nvars, 3
        ) - MultiSeries.constant(q.constant_term(), nvars, 3)
        r = expand_rational(p, q, 6)
        # multiplying back is asserted inside expand_rational; spot check order
        assert r.order == 6


def test_compose_examples():
    f = poly(1, 6, {(2,): 1})  # z1^2
    a = poly(2, 6, {(1, 0): 1, (0, 1): 1})  # z1 + z2
    got = compose(f, (a,), 6)
    assert got == poly(2, 6, {(2, 0): 1, (1, 1): 2, (0, 2): 1})


def test_compose_identity():
    rng = random.Random(5)
    for nvars in (1, 2, 3):
        f = rand_series(rng, nvars, 5)
        f = f - MultiSeries.constant(f.constant_term(), nvars, 5)
        ident = identity_tuple(nvars, 5)
        assert compose(f, ident, 5) == f


def test_compose_geometric_catalan_like():
    # F = 1/(1-z), A = z + z^2: F(A) = 1 + z + 2z^2 + 3z^3 + 5z^4 + ...
    f = expand_rational(
        poly(1, 4, {(0,): 1}), poly(1, 4, {(0,): 1, (1,): -1}), 4
    )
    a = poly(1, 4, {(1,): 1, (2,): 1})
    got = compose(f, (a,), 4)
    assert got == poly(1, 4, {(0,): 1, (1,): 1, (2,): 2, (3,): 3, (4,): 5})


def test_compose_requires_zero_constant_term():
    f = poly(1, 4, {(1,): 1})
    a = poly(1, 4, {(0,): 1, (1,): 1})
    with pytest.raises(InputError):
        compose(f, (a,), 4)


def test_compose_associativity_random():
    rng = random.Random(9)
    for _ in range(10):
        f = rand_series(rng, 1, 5)
        a = rand_series(rng, 1, 5)
        a = a - MultiSeries.constant(a.constant_term(), 1, 5)
        b = rand_series(rng, 1, 5)
        b = b - MultiSeries.constant(b.constant_term(), 1, 5)
        left = compose(compose(f, (a,), 5), (b,), 5)
        right = compose(f, (compose(a, (b,), 5),), 5)
        assert left == right


def test_mu_diagonal_central_binomials():
    one = poly(2, 8, {(0, 0): 1})
    q = poly(2, 8, {(0, 0): 1, (1, 0): -1, (0, 1): -1})
    h = expand_rational(one, q, 8)
    diag = mu_diagonal(h, 2)
    assert diag.order == 4
    assert diag.coefficient_list() == [
        QQ.from_rational(math.comb(2 * n, n)) for n in range(5)
    ]


def test_mu_diagonal_identity_and_balanced():
    h = poly(1, 7, {(n,): n + 1 for n in range(8)})
    assert mu_diagonal(h, 1).coefficient_list() == [
        QQ.from_rational(n + 1) for n in range(8)
    ]
    h2 = poly(2, 6, {(1, 1): 1, (2, 1): 1})
    assert mu_diagonal(h2, 2) == UniSeries(3, {1: 1})


def test_mu_diagonal_is_linear():
    rng = random.Random(13)
    for _ in range(20):
        f = rand_series(rng, 2, 6)
        g = rand_series(rng, 2, 6)
        a, b = Fraction(rng.randint(-4, 4)), Fraction(rng.randint(-4, 4))
        lhs = mu_diagonal(f.scalar_mul(a) + g.scalar_mul(b), 2)
        rhs = mu_diagonal(f, 2).scalar_mul(a) + mu_diagonal(g, 2).scalar_mul(b)
        assert lhs == rhs


def test_mu_diagonal_shift_property():
    # multiplying by z1*...*zmu shifts the diagonal by one power of t
    rng = random.Random(17)
    for _ in range(20):
        f = rand_series(rng, 2, 6)
        s = poly(2, 6, {(1, 1): 1})
        lhs = mu_diagonal(f * s, 2)
        d = mu_diagonal(f, 2)
        upto = min(lhs.order, d.order + 1)
        for n in range(upto + 1):
            expected = d.coefficient(n - 1) if n >= 1 else QQ.zero()
            assert lhs.coefficient(n) == expected


def test_serialization_round_trip():
    rng = random.Random(21)
    for _ in range(5):
        f = rand_series(rng, 3, 4)
        text = serialize_series(f)
        again = parse_series(text)
        assert again == f
        assert serialize_series(again) == text  # byte-stable


def test_serialization_number_field():
    K = NumberField([1, 0, 1])
    f = MultiSeries(2, 3, {(1, 0): K.generator(), (0, 2): K.element([1, 1])}, K)
    text = serialize_series(f)
    assert parse_series(text) == f
