"""Algebraic relations on dual coordinates induced by an endomorphism.

Given an m x m matrix tau acting on a cohomology-like space with a
distinguished functional gamma*, the coordinate rows of gamma*, gamma*.tau,
..., gamma*.tau^k are generically independent but collapse whenever gamma*
lies in a k-dimensional invariant subspace.  Writing the unknown coordinates
as y_1, ..., y_m, every (k+1) x (k+1) minor of the stacked symbolic rows is a
homogeneous degree-(k+1) relation that vanishes on such functionals.

When the characteristic polynomial of tau equals its minimal polynomial the
relation can be taken to be a product of linear forms: one eigenvector of the
transpose per eigenvalue, each defined over the field generated by that
eigenvalue, with the full product falling back into the base field.  Products
of Galois conjugates are computed as norms (the determinant of a
multiplication matrix), which never requires constructing automorphisms.

The provenance of tau and gamma* (Galois equivariance, admissibility) is a
contract on the inputs, not something matrix data could certify.
"""

from __future__ import annotations

import math
from fractions import Fraction

import sympy

from .errors import InputError, UnsupportedFieldError
from .linalg import charpoly, mat_mul, minpoly, nullspace, transpose
from .mpoly import MPoly
from .numberfield import (
    QQ,
    NumberField,
    NumberFieldElement,
    format_element,
    parse_element,
    parse_field,
    poly_trim,
)


class EndoMatrix:
    """Square matrix over a number field, acting on the basis w_1..w_m."""

    __slots__ = ("field", "m", "rows", "labels")

    def __init__(self, rows, field=None, labels=None):
        rows = [list(r) for r in rows]
        if not rows or any(len(r) != len(rows) for r in rows):
            raise InputError("endomorphism matrix must be square")
        self.m = len(rows)
        if field is None:
            probe = rows[0][0]
            field = probe.field if isinstance(probe, NumberFieldElement) else QQ
        self.field = field
        self.rows = [[field.coerce(v) for v in r] for r in rows]
        self.labels = tuple(labels) if labels else tuple(
            f"w{i}" for i in range(1, self.m + 1)
        )

    @classmethod
    def from_rationals(cls, rows):
        return cls([[Fraction(v) for v in r] for r in rows])

    def __repr__(self):
        return f"EndoMatrix(m={self.m}, field={self.field!r})"

    def power(self, j):
        out = [[self.field.one() if a == b else self.field.zero()
                for b in range(self.m)] for a in range(self.m)]
        for _ in range(j):
            out = mat_mul(out, self.rows)
        return out

    def charpoly(self):
        return charpoly(self.rows)

    def minpoly(self):
        return minpoly(self.rows)

    def is_nonderogatory(self):
        return len(self.minpoly()) == self.m + 1


class HodgeNumbers:
    """Dimensions of the graded pieces, smallest filtration step first."""

    __slots__ = ("values",)

    def __init__(self, values, total=None):
        values = [int(v) for v in values]
        if not values:
            raise InputError("Hodge numbers must be a nonempty list")
        if any(v < 0 for v in values):
            raise InputError("Hodge numbers are non-negative")
        if total is not None and sum(values) != total:
            raise InputError(
                f"Hodge numbers sum to {sum(values)}, expected {total}"
            )
        self.values = tuple(values)

    def __repr__(self):
        return f"HodgeNumbers({list(self.values)})"


def hodge_invariant_bound(hodge):
    """The first Hodge number: it bounds the invariant-subspace dimension."""
    if isinstance(hodge, HodgeNumbers):
        return hodge.values[0]
    hodge = list(hodge)
    if not hodge:
        raise InputError("Hodge numbers must be a nonempty list")
    return int(hodge[0])


def relation_vars(m):
    return ("x",) + tuple(f"y{i}" for i in range(m + 1))


def symbolic_pullback_rows(tau, k):
    """Rows of coordinates of gamma*, gamma*.tau, ..., gamma*.tau^k.

    Row j has entries sum_i y_i * (tau^j)_{i, col}: linear forms in y_1..y_m
    over tau's field.
    """
    m = tau.m
    variables = relation_vars(m)
    rows = []
    power = tau.power(0)
    for j in range(k + 1):
        row = []
        for col in range(m):
            terms = {}
            for i in range(m):
                c = power[i][col]
                if not c.is_zero():
                    exps = [0] * (m + 2)
                    exps[i + 2] = 1  # y_{i+1}
                    terms[tuple(exps)] = c
            row.append(MPoly(variables, terms, tau.field))
        rows.append(row)
        if j < k:
            power = mat_mul(power, tau.rows)
    return rows


def _mpoly_det(matrix):
    """Determinant of a small matrix of MPoly entries (cofactor recursion)."""
    n = len(matrix)
    if n == 1:
        return matrix[0][0]
    variables = matrix[0][0].variables
    field = matrix[0][0].field
    acc = MPoly.zero(variables, field)
    for j in range(n):
        entry = matrix[0][j]
        if entry.is_zero():
            continue
        minor = [row[:j] + row[j + 1:] for row in matrix[1:]]
        sub = _mpoly_det(minor)
        term = entry * sub
        acc = acc + (term if j % 2 == 0 else -term)
    return acc


def minor_relation(tau, k):
    """All nonzero (k+1)x(k+1) minors of the symbolic pullback rows.

    Each minor is homogeneous of degree k+1 in y_1..y_m and vanishes on the
    coordinates of any functional whose pullback orbit stays inside a
    k-dimensional invariant subspace.  Requires 1 <= k < deg minpoly(tau).
    """
    if k <= 0:
        raise InputError("k must be positive")
    mp = tau.minpoly()
    deg = len(mp) - 1
    if k >= deg:
        raise InputError(
            f"no relation guaranteed: k = {k} must satisfy "
            f"1 <= k < deg(minpoly) = {deg}"
        )
    rows = symbolic_pullback_rows(tau, k)
    minors = []
    import itertools

    for cols in itertools.combinations(range(tau.m), k + 1):
        sub = [[row[c] for c in cols] for row in rows]
        d = _mpoly_det(sub)
        if not d.is_zero():
            minors.append(d)
    if not minors:
        raise AssertionError(
            "every minor vanished symbolically; minimal polynomial bookkeeping is wrong"
        )
    return minors


# ---------------------------------------------------------------------------
# linear factors for nonderogatory endomorphisms
# ---------------------------------------------------------------------------


def _rational_coeff_list(coeffs):
    out = []
    for c in coeffs:
        if isinstance(c, NumberFieldElement):
            if not c.is_rational():
                raise UnsupportedFieldError(
                    "eigenvalue analysis is supported over the rationals only"
                )
            out.append(c.as_fraction())
        else:
            out.append(Fraction(c))
    return out


def _factor_over_q(coeffs):
    """Irreducible monic factors (with multiplicity) of a rational polynomial."""
    x = sympy.Symbol("x")
    expr = sum(sympy.Rational(c.numerator, c.denominator) * x ** i
               for i, c in enumerate(coeffs))
    _, factors = sympy.factor_list(expr, x)
    out = []
    for poly, mult in factors:
        p = sympy.Poly(poly, x)
        cs = [Fraction(c.p, c.q) for c in reversed(p.all_coeffs())]
        lead = cs[-1]
        cs = [c / lead for c in cs]
        out.append((cs, mult))
    # degree first, then rational roots ascending (-c0 for monic linears)
    out.sort(key=lambda fm: (len(fm[0]), tuple(-c for c in fm[0])))
    return out


def _field_from_monic_rational(coeffs):
    """Number field for a monic irreducible rational polynomial.

    The generator is scaled by the denominator lcm so the minimal polynomial
    has integer coefficients: returns (field, eigenvalue) where eigenvalue =
    generator / scale is a root of the original polynomial.
    """
    scale = 1
    for c in coeffs[:-1]:
        scale = scale * c.denominator // math.gcd(scale, c.denominator)
    d = len(coeffs) - 1
    scaled = [coeffs[i] * Fraction(scale) ** (d - i) for i in range(d)] + [
        Fraction(1)
    ]
    field = NumberField(scaled)
    eigen = field.generator() * Fraction(1, scale)
    return field, eigen


def _transpose_eigenform(tau, field, eigen):
    """The 1-dim kernel of (tau^T - eigen) as a linear form in y, over field."""
    m = tau.m
    lifted = [[field.coerce(v.as_fraction() if isinstance(v, NumberFieldElement)
                            else v) for v in row] for row in tau.rows]
    tt = transpose(lifted)
    for i in range(m):
        tt[i][i] = tt[i][i] - eigen
    kernel = nullspace(tt)
    if len(kernel) != 1:
        raise AssertionError(
            "nonderogatory endomorphism must have one eigenvector per eigenvalue"
        )
    vec = kernel[0]
    # normalize: first nonzero coordinate = 1
    lead = next(v for v in vec if not v.is_zero())
    inv = lead.inverse()
    vec = [v * inv for v in vec]
    variables = relation_vars(m)
    terms = {}
    for i, v in enumerate(vec):
        if not v.is_zero():
            exps = [0] * (m + 2)
            exps[i + 2] = 1
            terms[tuple(exps)] = v
    return MPoly(variables, terms, field)


class LinearFactorBlock:
    """Eigenforms attached to one irreducible factor of the char polynomial."""

    __slots__ = ("factor", "field", "forms", "orbit_size")

    def __init__(self, factor, field, forms, orbit_size):
        self.factor = factor          # monic rational coefficient list
        self.field = field            # QQ or the field generated by one root
        self.forms = forms            # explicit eigenforms over `field`
        self.orbit_size = orbit_size  # conjugates represented per form


def linear_factor_relations(tau):
    """Eigenvector linear forms of tau^T and their product over the base field.

    Requires tau nonderogatory (charpoly = minpoly); derogatory input is
    directed to :func:`minor_relation`.  Rational and quadratic eigenvalues
    get every conjugate form listed explicitly; higher-degree factors are
    represented by one form over the field of a single root (its conjugates
    enter the product through the norm).  Returns (blocks, product).
    """
    cp = _rational_coeff_list(tau.charpoly())
    mp = _rational_coeff_list(tau.minpoly())
    if cp != mp:
        raise InputError(
            "endomorphism is derogatory (charpoly != minpoly); "
            "use minor_relation with the invariant-dimension bound instead"
        )
    blocks = []
    product = MPoly.constant(1, relation_vars(tau.m), QQ)
    for factor, _mult in _factor_over_q(cp):
        d = len(factor) - 1
        if d == 1:
            eigen = -factor[0]
            form = _transpose_eigenform(tau, QQ, QQ.from_rational(eigen))
            blocks.append(LinearFactorBlock(factor, QQ, [form], 1))
            product = product * form
            continue
        field, eigen = _field_from_monic_rational(factor)
        form = _transpose_eigenform(tau, field, eigen)
        forms = [form]
        orbit = d
        if d == 2:
            # the other root -b - eigen lives in the same quadratic field
            other = field.from_rational(-factor[1]) - eigen
            forms.append(_transpose_eigenform(tau, field, other))
            orbit = 1
        blocks.append(LinearFactorBlock(factor, field, forms, orbit))
        block_product = galois_conjugate_product(form)
        product = product * block_product
    return blocks, product


def galois_conjugate_product(poly):
    """Product of a polynomial with all its conjugates over the rationals.

    Computed as the norm: the determinant of the multiplication-by-poly
    matrix on the field viewed as a Q[y]-module.  A polynomial over Q is
    returned unchanged.  The result always has rational coefficients, which
    is verified coordinate by coordinate.
    """
    field = poly.field
    if field.is_rationals:
        return poly
    d = field.degree
    variables = poly.variables
    # multiplication matrix: column j holds the coordinates of poly * theta^j
    columns = [[MPoly.zero(variables, QQ) for _ in range(d)] for _ in range(d)]
    theta_power = field.one()
    for j in range(d):
        for exps, coeff in poly.terms.items():
            shifted = coeff * theta_power
            for i, coord in enumerate(shifted.coords):
                if coord != 0:
                    columns[j][i] = columns[j][i] + MPoly(
                        variables, {exps: coord}, QQ
                    )
        theta_power = theta_power * field.generator()
    matrix = [[columns[j][i] for j in range(d)] for i in range(d)]
    result = _mpoly_det(matrix)
    return result


def endo_field_degree_bound(m, override=None):
    """Degree bound for the field of definition of the endomorphism algebra.

    The sharp bound lives in external work; by default this returns the
    placeholder policy m! * 2^m, and every consumer labels it as a policy
    value rather than a derived one.  ``override`` is passed through.
    """
    if m < 1:
        raise InputError("dimension must be positive")
    if override is not None:
        return int(override), "user-override"
    return math.factorial(m) * 2 ** m, "default-policy"


# ---------------------------------------------------------------------------
# matrix file format: "m=<size> field=<minpoly>" then "i j : coeff" (1-based)
# ---------------------------------------------------------------------------


def serialize_matrix(tau):
    lines = [f"m={tau.m} field={tau.field.minpoly_string()}"]
    for i, row in enumerate(tau.rows, start=1):
        for j, v in enumerate(row, start=1):
            if not v.is_zero():
                lines.append(f"{i} {j} : {format_element(v)}")
    return "\n".join(lines) + "\n"


def parse_matrix(text):
    lines = [ln for ln in text.splitlines() if ln.strip() and not ln.startswith("#")]
    if not lines:
        raise InputError("empty matrix file")
    header = {}
    for part in lines[0].split():
        key, _, value = part.partition("=")
        header[key] = value
    try:
        m = int(header["m"])
        field = parse_field(header["field"])
    except KeyError as missing:
        raise InputError(f"matrix header is missing {missing}") from None
    rows = [[field.zero() for _ in range(m)] for _ in range(m)]
    for ln in lines[1:]:
        head, c_text = ln.rsplit(":", 1)
        tokens = head.split()
        if len(tokens) != 2:
            raise InputError(f"malformed matrix line {ln!r}")
        i, j = int(tokens[0]) - 1, int(tokens[1]) - 1
        if not (0 <= i < m and 0 <= j < m):
            raise InputError(f"matrix index out of range in {ln!r}")
        rows[i][j] = parse_element(c_text, field)
    return EndoMatrix(rows, field)
