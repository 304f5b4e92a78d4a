import random
from fractions import Fraction

import pytest

from gfunkit.errors import InputError
from gfunkit.linalg import mat_mul
from gfunkit.mpoly import MPoly
from gfunkit.numberfield import QQ, NumberField
from gfunkit.relations import (
    EndoMatrix,
    HodgeNumbers,
    endo_field_degree_bound,
    galois_conjugate_product,
    hodge_invariant_bound,
    linear_factor_relations,
    minor_relation,
    parse_matrix,
    relation_vars,
    serialize_matrix,
)


def y_term(m, assignments, coeff=1):
    exps = [0] * (m + 2)
    for i, e in assignments.items():
        exps[i + 1] = e  # i = 0 is y0, i >= 1 is y_i; x sits at slot 0
    return {tuple(exps): coeff}


def ypoly(m, monomials, field=QQ):
    terms = {}
    for assignments, coeff in monomials:
        exps = [0] * (m + 2)
        for i, e in assignments.items():
            exps[i + 1] = e
        terms[tuple(exps)] = coeff
    return MPoly(relation_vars(m), terms, field)


def test_hodge_invariant_bound():
    assert hodge_invariant_bound(HodgeNumbers([1, 1])) == 1
    assert hodge_invariant_bound(HodgeNumbers([2, 3, 2])) == 2
    assert hodge_invariant_bound([5, 5]) == 5
    with pytest.raises(InputError):
        HodgeNumbers([])
    with pytest.raises(InputError):
        HodgeNumbers([1, 2], total=5)


def test_minor_relation_diagonal_example():
    tau = EndoMatrix.from_rationals([[1, 0, 0], [0, 2, 0], [0, 0, 3]])
    minors = minor_relation(tau, 1)
    got = {p.pretty() for p in minors}
    assert got == {"y1*y2", "2*y1*y3", "y2*y3"}


def test_minor_relation_nilpotent_example():
    tau = EndoMatrix.from_rationals([[0, 1], [0, 0]])
    minors = minor_relation(tau, 1)
    assert len(minors) == 1
    assert minors[0].pretty() == "y1^2"


def test_minor_relation_preconditions():
    identity = EndoMatrix.from_rationals([[1, 0], [0, 1]])
    with pytest.raises(InputError, match="no relation guaranteed"):
        minor_relation(identity, 1)
    tau = EndoMatrix.from_rationals([[1, 0], [0, 2]])
    with pytest.raises(InputError):
        minor_relation(tau, 0)
    with pytest.raises(InputError, match="no relation guaranteed"):
        minor_relation(tau, 2)


def companion(coeffs):
    """Companion matrix of x^m + c_{m-1}x^{m-1} + ... + c_0."""
    m = len(coeffs)
    rows = [[Fraction(0)] * m for _ in range(m)]
    for i in range(1, m):
        rows[i][i - 1] = Fraction(1)
    for i in range(m):
        rows[i][m - 1] = Fraction(-coeffs[i])
    return rows


def rand_invertible(rng, m):
    from gfunkit.linalg import det

    while True:
        s = [[Fraction(rng.randint(-3, 3)) for _ in range(m)] for _ in range(m)]
        if det(s) != 0:
            return s


def rand_inverse(matrix):
    from gfunkit.linalg import rref, identity_matrix

    m = len(matrix)
    aug = [list(r) + list(i) for r, i in zip(matrix, identity_matrix(m))]
    red, piv = rref(aug)
    assert piv == list(range(m))
    return [row[m:] for row in red]


def invariant_span_functional(rng, m, k):
    """(tau, gamma) with gamma inside a k-dim invariant span of tau-transpose.

    Built from a block-lower-triangular matrix conjugated by a random basis
    change; the invariant subspace is the image of the first k dual vectors.
    """
    while True:
        a = companion([rng.randint(-4, 4) for _ in range(k)])
        c = companion([rng.randint(-4, 4) for _ in range(m - k)])
        rows = [[Fraction(0)] * m for _ in range(m)]
        for i in range(k):
            for j in range(k):
                rows[i][j] = a[i][j]
        for i in range(m - k):
            for j in range(m - k):
                rows[k + i][k + j] = c[i][j]
        for i in range(m - k):
            for j in range(k):
                rows[k + i][j] = Fraction(rng.randint(-2, 2))
        s = rand_invertible(rng, m)
        s_inv = rand_inverse(s)
        tau = EndoMatrix(mat_mul(mat_mul(s_inv, rows), s))
        deg = len(tau.minpoly()) - 1
        if deg <= k:
            continue
        gamma0 = [Fraction(rng.randint(-5, 5)) for _ in range(k)] + [
            Fraction(0)
        ] * (m - k)
        if all(g == 0 for g in gamma0):
            continue
        gamma = [
            sum(gamma0[i] * s[i][j] for i in range(m)) for j in range(m)
        ]
        return tau, gamma


def evaluate_at_functional(poly, gamma):
    assignment = {"x": Fraction(0), "y0": Fraction(1)}
    for i, g in enumerate(gamma, start=1):
        assignment[f"y{i}"] = g
    needed = {n: QQ.from_rational(assignment.get(n, Fraction(0)))
              for n in poly.variables}
    return poly.evaluate(needed)


def test_minor_relation_soundness_random():
    rng = random.Random(71)
    for _ in range(25):
        m = rng.choice([2, 3, 4, 5])
        k = rng.randint(1, m - 1)
        tau, gamma = invariant_span_functional(rng, m, k)
        minors = minor_relation(tau, k)
        for poly in minors:
            assert evaluate_at_functional(poly, gamma).is_zero()
        # generic functionals break at least one minor (retry degenerate draws)
        for _ in range(10):
            generic = [Fraction(rng.randint(-9, 9)) for _ in range(m)]
            values = [evaluate_at_functional(p, generic) for p in minors]
            if any(not v.is_zero() for v in values):
                break
        else:
            raise AssertionError("all minors vanished on ten generic draws")


def test_minor_relation_homogeneous_degree():
    tau = EndoMatrix.from_rationals([[1, 1, 0], [0, 1, 1], [0, 0, 2]])
    for k in (1, 2):
        for poly in minor_relation(tau, k):
            assert poly.total_degree() == k + 1
            names = [f"y{i}" for i in range(1, 4)]
            assert poly.is_homogeneous_in(names)


def test_linear_factors_diagonal():
    tau = EndoMatrix.from_rationals([[1, 0], [0, 2]])
    blocks, product = linear_factor_relations(tau)
    forms = [f.pretty() for b in blocks for f in b.forms]
    assert forms == ["y1", "y2"]
    assert product.pretty() == "y1*y2"


def test_linear_factors_rotation():
    tau = EndoMatrix.from_rationals([[0, -1], [1, 0]])
    blocks, product = linear_factor_relations(tau)
    assert len(blocks) == 1
    block = blocks[0]
    assert block.field.minpoly == (Fraction(1), Fraction(0), Fraction(1))
    assert len(block.forms) == 2
    i_gen = block.field.generator()
    y1 = ypoly(2, [({1: 1}, 1)], block.field)
    y2 = ypoly(2, [({2: 1}, 1)], block.field)
    expected = {y1 + y2 * i_gen, y1 - y2 * i_gen}
    assert set(block.forms) == expected
    assert product == ypoly(2, [({1: 2}, 1), ({2: 2}, 1)])


def test_linear_factors_jordan_block():
    tau = EndoMatrix.from_rationals([[1, 1], [0, 1]])
    blocks, product = linear_factor_relations(tau)
    forms = [f.pretty() for b in blocks for f in b.forms]
    assert forms == ["y2"]
    assert product.pretty() == "y2"


def test_linear_factors_reject_derogatory():
    tau = EndoMatrix.from_rationals([[1, 0], [0, 1]])
    with pytest.raises(InputError, match="derogatory"):
        linear_factor_relations(tau)


def test_linear_factors_product_vanishes_on_eigenvectors():
    raw = [[Fraction(2), Fraction(1)], [Fraction(0), Fraction(3)]]
    tau = EndoMatrix.from_rationals(raw)
    _, product = linear_factor_relations(tau)
    from gfunkit.linalg import nullspace

    for lam in (2, 3):
        # transpose minus lambda, over plain rationals
        tt = [
            [raw[j][i] - (Fraction(lam) if i == j else 0) for j in range(2)]
            for i in range(2)
        ]
        vecs = nullspace(tt)
        assert len(vecs) == 1
        assert evaluate_at_functional(product, vecs[0]).is_zero()


def test_galois_product_examples():
    Ki = NumberField([1, 0, 1])
    i_gen = Ki.generator()
    p = ypoly(2, [({1: 1}, 1)], Ki) - ypoly(2, [({2: 1}, 1)], Ki) * i_gen
    result = galois_conjugate_product(p)
    assert result == ypoly(2, [({1: 2}, 1), ({2: 2}, 1)])

    K2 = NumberField([-2, 0, 1])
    s_gen = K2.generator()
    q = ypoly(2, [({1: 1}, 1)], K2) - ypoly(2, [({2: 1}, 1)], K2) * s_gen
    result = galois_conjugate_product(q)
    assert result == ypoly(2, [({1: 2}, 1), ({2: 2}, -2)])

    plain = ypoly(2, [({1: 1}, 1), ({2: 3}, 5)])
    assert galois_conjugate_product(plain) == plain


def test_galois_product_degree_and_rationality():
    rng = random.Random(83)
    K = NumberField([1, -1, 0, 1])  # x^3 - x + 1
    gen = K.generator()
    for _ in range(5):
        coeffs = [
            K.from_rational(rng.randint(-3, 3))
            + gen * rng.randint(-2, 2)
            for _ in range(3)
        ]
        p = (
            ypoly(2, [({1: 1}, 1)], K) * coeffs[0]
            + ypoly(2, [({2: 1}, 1)], K) * coeffs[1]
            + ypoly(2, [({0: 1}, 1)], K) * coeffs[2]
        )
        if p.is_zero():
            continue
        result = galois_conjugate_product(p)
        assert result.field.is_rationals
        assert result.total_degree() <= 3 * p.total_degree()


def test_endo_field_degree_bound_policy():
    assert endo_field_degree_bound(1) == (2, "default-policy")
    assert endo_field_degree_bound(2) == (8, "default-policy")
    assert endo_field_degree_bound(4, override=99) == (99, "user-override")


def test_matrix_serialization_round_trip():
    tau = EndoMatrix.from_rationals([[0, -1], [1, 0]])
    text = serialize_matrix(tau)
    again = parse_matrix(text)
    assert again.rows == tau.rows
    assert serialize_matrix(again) == text
