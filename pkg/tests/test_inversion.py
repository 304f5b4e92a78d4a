import random
from fractions import Fraction

import pytest

from gfunkit.errors import InputError
from gfunkit.inversion import (
    EtaleGerm,
    bad_primes,
    formal_inverse,
    invert,
    parse_germ,
    rescale_series,
    scaling_integer,
    serialize_germ,
    serialize_inversion,
)
from gfunkit.series import MultiSeries, compose, identity_tuple
from oracle_faadibruno import compose_coefficient, inverse_coefficient_from_sum


def poly(nvars, order, terms):
    return MultiSeries(nvars, order, terms)


def univariate_germ(coeff_pairs, order=6):
    g = poly(1, order, {(d,): c for d, c in coeff_pairs})
    return EtaleGerm([g])


def test_signed_catalan_inverse():
    germ = univariate_germ([(1, 1), (2, 1)])  # g(x) = x + x^2
    a = formal_inverse(germ, 5)[0]
    expected = poly(1, 5, {(1,): 1, (2,): -1, (3,): 2, (4,): -5, (5,): 14})
    assert a == expected


def test_linear_germ_inverts_exactly():
    # g = M x for invertible M: the inverse is M^{-1} t with no higher terms
    g1 = poly(2, 4, {(1, 0): 1, (0, 1): 2})
    g2 = poly(2, 4, {(1, 0): 3, (0, 1): 4})
    germ = EtaleGerm([g1, g2])
    a = formal_inverse(germ, 4)
    # M = [[1,2],[3,4]], M^{-1} = [[-2,1],[3/2,-1/2]]
    assert a[0] == poly(2, 4, {(1, 0): -2, (0, 1): 1})
    assert a[1] == poly(2, 4, {(1, 0): Fraction(3, 2), (0, 1): Fraction(-1, 2)})


def test_triangular_two_variable_example():
    # g = (x1 + x2^2, x2)  ->  A = (t1 - t2^2, t2)
    g1 = poly(2, 4, {(1, 0): 1, (0, 2): 1})
    g2 = poly(2, 4, {(0, 1): 1})
    germ = EtaleGerm([g1, g2])
    a = formal_inverse(germ, 4)
    assert a[0] == poly(2, 4, {(1, 0): 1, (0, 2): -1})
    assert a[1] == poly(2, 4, {(0, 1): 1})


def test_constrained_germ_parabola():
    # variety y2 = y1^2 embedded in 2-space, coordinate g = y1
    g = poly(2, 6, {(1, 0): 1})
    p = poly(2, 6, {(0, 1): 1, (2, 0): -1})
    germ = EtaleGerm([g], [p])
    a = formal_inverse(germ, 6)
    assert a[0] == poly(1, 6, {(1,): 1})
    assert a[1] == poly(1, 6, {(2,): 1})


def test_germ_validation():
    with pytest.raises(InputError):  # singular Jacobian
        EtaleGerm([poly(1, 3, {(2,): 1})])
    with pytest.raises(InputError):  # nonzero constant term
        EtaleGerm([poly(1, 3, {(0,): 1, (1,): 1})])
    with pytest.raises(InputError):  # sigma != nu + ell
        EtaleGerm([poly(2, 3, {(1, 0): 1})])


def rand_germ(rng, nvars, max_extra_degree=3, coeff_bound=10):
    while True:
        terms = [dict() for _ in range(nvars)]
        for i in range(nvars):
            for j in range(nvars):
                unit = tuple(1 if k == j else 0 for k in range(nvars))
                c = rng.randint(-coeff_bound, coeff_bound)
                if c:
                    terms[i][unit] = Fraction(c)
        try:
            polys = [poly(nvars, max_extra_degree, t) for t in terms]
            for i in range(nvars):
                extra = {}
                for _ in range(rng.randint(1, 4)):
                    exps = tuple(
                        rng.randint(0, max_extra_degree) for _ in range(nvars)
                    )
                    if 2 <= sum(exps) <= max_extra_degree:
                        extra[exps] = Fraction(rng.randint(-coeff_bound, coeff_bound))
                polys[i] = polys[i] + poly(nvars, max_extra_degree, extra)
            return EtaleGerm(polys)
        except InputError:
            continue


def test_round_trip_random_germs():
    rng = random.Random(47)
    for _ in range(12):
        nvars = rng.choice([1, 1, 2, 2, 3])
        germ = rand_germ(rng, nvars)
        order = 8
        a = formal_inverse(germ, order)
        ident = identity_tuple(nvars, order)
        for i, g in enumerate(germ.components):
            assert compose(g, tuple(a), order) == ident[i]


def test_faa_di_bruno_oracle_agrees():
    rng = random.Random(53)
    for _ in range(6):
        coeffs = [(1, Fraction(rng.randint(1, 5)))]
        for d in range(2, 5):
            c = rng.randint(-4, 4)
            if c:
                coeffs.append((d, Fraction(c)))
        germ = univariate_germ(coeffs, order=7)
        a = formal_inverse(germ, 6)[0]
        g_list = [Fraction(0)] * 8
        for (d,), v in germ.components[0].coeffs.items():
            g_list[d] = v.as_fraction()
        a_list = [a.coefficient((n,)).as_fraction() for n in range(7)]
        # the composition recovers the identity coefficient by coefficient
        for n in range(1, 7):
            got = compose_coefficient(g_list, a_list, n)
            assert got == (1 if n == 1 else 0)
        # and the rearranged sum reproduces each solver coefficient
        for n in range(1, 7):
            assert inverse_coefficient_from_sum(g_list, a_list, n) == a_list[n]


def test_bad_primes_examples():
    germ2 = univariate_germ([(1, 2), (2, 1)], order=9)  # 2x + x^2
    a2 = formal_inverse(germ2, 8)
    assert bad_primes(germ2, a2) == {2}

    germ_cat = univariate_germ([(1, 1), (2, 1)], order=13)
    a_cat = formal_inverse(germ_cat, 12)
    assert bad_primes(germ_cat, a_cat) == frozenset()

    germ3 = univariate_germ([(1, 3)], order=5)
    a3 = formal_inverse(germ3, 4)
    assert bad_primes(germ3, a3) == {3}


def test_bad_primes_monotone_and_stable():
    rng = random.Random(59)
    for _ in range(8):
        germ = rand_germ(rng, rng.choice([1, 2]))
        sets = []
        for order in (4, 8, 12):
            a = formal_inverse(germ, order)
            sets.append(bad_primes(germ, a))
        assert sets[0] <= sets[1] <= sets[2]
        a12 = formal_inverse(germ, 12)
        a14 = formal_inverse(germ, 14)
        assert bad_primes(germ, a12) == bad_primes(germ, a14)


def test_scaling_integer_examples():
    # Sigma = {2}, g = 2x + x^2: scaling makes every coefficient 2-integral
    germ = univariate_germ([(1, 2), (2, 1)], order=9)
    a = formal_inverse(germ, 8)
    primes = bad_primes(germ, a)
    n_scale = scaling_integer(primes, a)
    rescaled = [rescale_series(s, n_scale) for s in a]
    for s in rescaled:
        for v in s.coeffs.values():
            assert v.as_fraction().denominator % 2 != 0
    # minimality: dividing out one factor of 2 breaks integrality
    smaller = [rescale_series(s, n_scale // 2) for s in a]
    assert any(
        v.as_fraction().denominator % 2 == 0
        for s in smaller
        for v in s.coeffs.values()
    )

    assert scaling_integer(frozenset(), a) == 1

    germ3 = univariate_germ([(1, 3)], order=5)
    a3 = formal_inverse(germ3, 4)
    assert scaling_integer({3}, a3) == 3


def test_divisibility_monotonicity_of_scaling():
    # any multiple supported on the bad primes also clears denominators
    germ = univariate_germ([(1, 2), (2, 1)], order=9)
    result = invert(germ, 8)
    bigger = result.scaling * 2
    for s in result.series:
        for exps, v in rescale_series(s, bigger).coeffs.items():
            assert v.as_fraction().denominator % 2 != 0


def test_invert_pipeline_and_serialization():
    germ = univariate_germ([(1, 2), (2, 1)], order=13)
    result = invert(germ, 12)
    assert result.bad_primes == {2}
    text = serialize_inversion(result)
    assert "badprimes=2" in text
    assert f"nscale={result.scaling}" in text
    germ_text = serialize_germ(germ)
    again = parse_germ(germ_text)
    assert again.components[0].coeffs == germ.components[0].coeffs
    assert serialize_germ(again) == germ_text
