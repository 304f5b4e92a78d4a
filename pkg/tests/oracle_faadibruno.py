"""Combinatorial Faa di Bruno sum, used as a low-order inversion oracle.

Computes the coefficient of x^n in B(A(x)) for univariate power series with
A(0) = 0 by explicit enumeration of the tuples (s; k_1..k_s; l_1 < ... < l_s)
with sum k_j = lambda and sum k_j*l_j = n, i.e. partitions of n recorded as
distinct parts with multiplicities.  Entirely independent of the series and
inversion code.
"""

from fractions import Fraction
from math import factorial


def _partitions_distinct_parts(n):
    """Yield partitions of n as tuples ((l_1, k_1), ..., (l_s, k_s)), l's increasing."""

    def rec(remaining, min_part):
        if remaining == 0:
            yield ()
            return
        for part in range(min_part, remaining + 1):
            max_mult = remaining // part
            for mult in range(1, max_mult + 1):
                for rest in rec(remaining - part * mult, part + 1):
                    yield ((part, mult),) + rest

    yield from rec(n, 1)


def compose_coefficient(b_coeffs, a_coeffs, n):
    """Coefficient of x^n in B(A(x)), from the Faa di Bruno sum.

    ``b_coeffs[k]`` is the coefficient of y^k in B, ``a_coeffs[l]`` of x^l in
    A (``a_coeffs[0]`` must be 0).  Uses c_n = sum over partitions of
    lambda! * b_lambda * prod a_{l_j}^{k_j} / k_j!.
    """
    if n == 0:
        return Fraction(b_coeffs[0]) if b_coeffs else Fraction(0)
    total = Fraction(0)
    for partition in _partitions_distinct_parts(n):
        lam = sum(k for _, k in partition)
        if lam >= len(b_coeffs):
            continue
        b = Fraction(b_coeffs[lam])
        if b == 0:
            continue
        term = b * factorial(lam)
        for part, mult in partition:
            a = Fraction(a_coeffs[part]) if part < len(a_coeffs) else Fraction(0)
            term *= a ** mult / factorial(mult)
        total += term
    return total


def inverse_coefficient_from_sum(g_coeffs, a_coeffs, n):
    """Solve the degree-n Faa di Bruno equation of g(A) = x for a_n.

    ``a_coeffs`` must hold the inverse's coefficients below degree n; the
    linear coefficient g_1 must be nonzero.
    """
    padded = list(a_coeffs[:n]) + [Fraction(0)]
    with_zero = compose_coefficient(g_coeffs, padded, n)
    target = Fraction(1) if n == 1 else Fraction(0)
    g1 = Fraction(g_coeffs[1])
    return (target - with_zero) / g1
