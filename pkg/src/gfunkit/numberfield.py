"""Exact arithmetic in Q and in small number fields Q[x]/(m(x)).

A :class:`NumberField` is described by a monic irreducible polynomial with
integer coefficients; its elements are coordinate vectors of rationals in the
power basis 1, theta, ..., theta^(d-1).  The degree-1 field (minimal
polynomial x) is the rationals themselves and gets fast paths throughout.

Fields are supported natively up to degree 8.  Irreducibility over Q is
verified exactly at construction (the check is cheap at these degrees); the
``irreducibility_verified`` attribute records that the check ran.

Everything here is immutable and arithmetic is exact, so values are safe to
share between threads.
"""

from __future__ import annotations

from fractions import Fraction

import sympy

from .errors import InputError, UnsupportedFieldError

MAX_DEGREE = 8

# ---------------------------------------------------------------------------
# univariate polynomial helpers (dense lists of Fraction, low degree first)
# ---------------------------------------------------------------------------


def poly_trim(c):
    c = list(c)
    while c and c[-1] == 0:
        c.pop()
    return c


def poly_add(a, b):
    n = max(len(a), len(b))
    out = [Fraction(0)] * n
    for i, x in enumerate(a):
        out[i] += x
    for i, x in enumerate(b):
        out[i] += x
    return poly_trim(out)


def poly_neg(a):
    return [-x for x in a]


def poly_scale(a, s):
    if s == 0:
        return []
    return [x * s for x in a]


def poly_mul(a, b):
    if not a or not b:
        return []
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x == 0:
            continue
        for j, y in enumerate(b):
            out[i + j] += x * y
    return poly_trim(out)


def poly_divmod(a, b):
    """Quotient and remainder of dense rational polynomials."""
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    a = list(a)
    q = [Fraction(0)] * max(0, len(a) - len(b) + 1)
    inv_lead = Fraction(1) / Fraction(b[-1])
    while len(a) >= len(b) and poly_trim(a):
        a = poly_trim(a)
        if len(a) < len(b):
            break
        shift = len(a) - len(b)
        coef = a[-1] * inv_lead
        q[shift] = coef
        for i, y in enumerate(b):
            a[i + shift] -= coef * y
        a.pop()
    return poly_trim(q), poly_trim(a)


def poly_mod(a, b):
    return poly_divmod(a, b)[1]


def poly_eval(c, x):
    acc = 0
    for coef in reversed(c):
        acc = acc * x + coef
    return acc


def poly_derivative(c):
    return poly_trim([i * c[i] for i in range(1, len(c))])


def poly_xgcd(a, b):
    """Extended gcd: returns (g, u, v) with u*a + v*b = g, g monic or zero."""
    r0, r1 = poly_trim(a), poly_trim(b)
    s0, s1 = [Fraction(1)], []
    t0, t1 = [], [Fraction(1)]
    while r1:
        q, r = poly_divmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, poly_add(s0, poly_neg(poly_mul(q, s1)))
        t0, t1 = t1, poly_add(t0, poly_neg(poly_mul(q, t1)))
    if r0:
        lead = r0[-1]
        r0 = poly_scale(r0, Fraction(1) / lead)
        s0 = poly_scale(s0, Fraction(1) / lead)
        t0 = poly_scale(t0, Fraction(1) / lead)
    return r0, s0, t0


def poly_resultant_int(a, b):
    """Resultant of two integer polynomials, computed exactly over Z.

    Uses the subresultant-free fraction path: plain Euclid over Q with degree
    and leading-coefficient bookkeeping.  Sizes here are tiny (degree <= 8).
    """
    a = poly_trim([Fraction(x) for x in a])
    b = poly_trim([Fraction(x) for x in b])
    if not a or not b:
        return 0
    res = Fraction(1)
    while True:
        da, db = len(a) - 1, len(b) - 1
        if db == 0:
            res *= b[0] ** da
            break
        _, r = poly_divmod(a, b)
        if not r:
            return 0
        dr = len(r) - 1
        res *= Fraction((-1) ** (da * db)) * b[-1] ** (da - dr)
        a, b = b, r
    num, den = res.numerator, res.denominator
    if den != 1:
        raise AssertionError("resultant of integer polynomials must be integral")
    return num


def _coerce_coeffs(coeffs):
    out = []
    for c in coeffs:
        out.append(c if isinstance(c, Fraction) else Fraction(c))
    return out


# ---------------------------------------------------------------------------
# number fields
# ---------------------------------------------------------------------------


class NumberField:
    """The field Q[x]/(m(x)) for a monic irreducible integer polynomial m.

    ``minpoly`` is given low-degree-first; the degree-1 field Q is encoded by
    the polynomial x (coefficients ``[0, 1]``).
    """

    __slots__ = ("minpoly", "degree", "irreducibility_verified", "_hash")

    def __init__(self, minpoly, verify_irreducible=True):
        coeffs = poly_trim(_coerce_coeffs(minpoly))
        if len(coeffs) < 2:
            raise InputError("minimal polynomial must have degree >= 1")
        if coeffs[-1] != 1:
            raise InputError("minimal polynomial must be monic")
        for c in coeffs:
            if c.denominator != 1:
                raise InputError(
                    "minimal polynomial must have integer coefficients; "
                    "rescale the generator first"
                )
        degree = len(coeffs) - 1
        if degree > MAX_DEGREE:
            raise UnsupportedFieldError(
                f"number fields of degree > {MAX_DEGREE} are not supported "
                f"(got degree {degree})"
            )
        self.minpoly = tuple(coeffs)
        self.degree = degree
        if verify_irreducible and degree > 1:
            x = sympy.Symbol("x")
            poly = sympy.Poly([int(c) for c in reversed(coeffs)], x)
            _, factors = poly.factor_list()
            if len(factors) != 1 or factors[0][1] != 1:
                raise InputError(
                    f"minimal polynomial {self.minpoly_string()} is reducible over Q"
                )
        self.irreducibility_verified = verify_irreducible or degree == 1
        self._hash = hash(self.minpoly)

    # -- basic protocol ----------------------------------------------------

    def __eq__(self, other):
        return isinstance(other, NumberField) and self.minpoly == other.minpoly

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"NumberField({self.minpoly_string()})"

    @property
    def is_rationals(self):
        return self.degree == 1

    def minpoly_string(self):
        return ",".join(format_fraction(c) for c in self.minpoly)

    # -- element constructors ----------------------------------------------

    def element(self, coords):
        coords = _coerce_coeffs(coords)
        if len(coords) > self.degree:
            raise InputError(
                f"coordinate vector of length {len(coords)} in a degree "
                f"{self.degree} field"
            )
        coords += [Fraction(0)] * (self.degree - len(coords))
        return NumberFieldElement(self, tuple(coords))

    def from_rational(self, q):
        q = q if isinstance(q, Fraction) else Fraction(q)
        return NumberFieldElement(
            self, (q,) + (Fraction(0),) * (self.degree - 1)
        )

    def zero(self):
        return self.from_rational(0)

    def one(self):
        return self.from_rational(1)

    def generator(self):
        """The class of x (for the rationals this is 0)."""
        if self.degree == 1:
            return self.from_rational(-self.minpoly[0])
        coords = [Fraction(0)] * self.degree
        coords[1] = Fraction(1)
        return NumberFieldElement(self, tuple(coords))

    def coerce(self, value):
        if isinstance(value, NumberFieldElement):
            if value.field != self:
                if value.is_rational():
                    return self.from_rational(value.as_fraction())
                raise InputError("element belongs to a different number field")
            return value
        if isinstance(value, (int, Fraction)):
            return self.from_rational(value)
        raise InputError(f"cannot coerce {value!r} into {self!r}")


class NumberFieldElement:
    """An element of a :class:`NumberField`, as exact power-basis coordinates."""

    __slots__ = ("field", "coords")

    def __init__(self, field, coords):
        self.field = field
        self.coords = coords

    def __repr__(self):
        return f"NFE({format_element(self)})"

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self.field.from_rational(other)
        return (
            isinstance(other, NumberFieldElement)
            and self.field == other.field
            and self.coords == other.coords
        )

    def __hash__(self):
        return hash((self.field, self.coords))

    def __bool__(self):
        return any(c != 0 for c in self.coords)

    def is_zero(self):
        return not self

    def is_rational(self):
        return all(c == 0 for c in self.coords[1:])

    def as_fraction(self):
        if not self.is_rational():
            raise InputError("element is not rational")
        return self.coords[0]

    def as_polynomial(self):
        """Coordinates as a trimmed dense polynomial in the generator."""
        return poly_trim(list(self.coords))

    # -- arithmetic ----------------------------------------------------------

    def _coerce(self, other):
        return self.field.coerce(other)

    def __add__(self, other):
        other = self._coerce(other)
        return NumberFieldElement(
            self.field, tuple(a + b for a, b in zip(self.coords, other.coords))
        )

    __radd__ = __add__

    def __neg__(self):
        return NumberFieldElement(self.field, tuple(-a for a in self.coords))

    def __sub__(self, other):
        other = self._coerce(other)
        return NumberFieldElement(
            self.field, tuple(a - b for a, b in zip(self.coords, other.coords))
        )

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        d = self.field.degree
        if d == 1:
            return NumberFieldElement(
                self.field, (self.coords[0] * other.coords[0],)
            )
        prod = poly_mul(list(self.coords), list(other.coords))
        prod = poly_mod(prod, list(self.field.minpoly))
        prod = list(prod) + [Fraction(0)] * (d - len(prod))
        return NumberFieldElement(self.field, tuple(prod))

    __rmul__ = __mul__

    def inverse(self):
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero field element")
        d = self.field.degree
        if d == 1:
            return NumberFieldElement(self.field, (Fraction(1) / self.coords[0],))
        g, u, _ = poly_xgcd(self.as_polynomial(), list(self.field.minpoly))
        if len(g) != 1:
            raise InputError("minimal polynomial is not irreducible")
        u = poly_scale(u, Fraction(1) / g[0])
        u = poly_mod(u, list(self.field.minpoly))
        u = list(u) + [Fraction(0)] * (d - len(u))
        return NumberFieldElement(self.field, tuple(u))

    def __truediv__(self, other):
        other = self._coerce(other)
        return self * other.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, n):
        if n < 0:
            return self.inverse() ** (-n)
        result = self.field.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def denominator_lcm(self):
        """Least common multiple of coordinate denominators."""
        lcm = 1
        for c in self.coords:
            d = c.denominator
            g = gcd_int(lcm, d)
            lcm = lcm // g * d
        return lcm


def gcd_int(a, b):
    a, b = abs(a), abs(b)
    while b:
        a, b = b, a % b
    return a


# canonical degree-1 field: Q presented as Q[x]/(x)
QQ = NumberField([0, 1])


# ---------------------------------------------------------------------------
# serialization helpers shared by the file formats
# ---------------------------------------------------------------------------


def format_fraction(q):
    """Serialize a rational as the "num/den" string used in all file formats."""
    q = q if isinstance(q, Fraction) else Fraction(q)
    return f"{q.numerator}/{q.denominator}"


def parse_fraction(text):
    text = text.strip()
    if "/" in text:
        num, den = text.split("/")
        return Fraction(int(num), int(den))
    return Fraction(int(text))


def format_element(x):
    """Serialize an element as its comma-joined coordinate vector."""
    if isinstance(x, (int, Fraction)):
        return format_fraction(x)
    return ",".join(format_fraction(c) for c in x.coords)


def parse_element(text, field):
    parts = text.strip().split(",")
    coords = [parse_fraction(p) for p in parts]
    if len(coords) != field.degree and not (len(coords) == 1):
        raise InputError(
            f"element has {len(coords)} coordinates, field degree is {field.degree}"
        )
    if len(coords) == 1:
        return field.from_rational(coords[0])
    return field.element(coords)


def parse_field(text):
    """Parse the "field=" header payload: comma-joined minpoly coefficients."""
    coeffs = [parse_fraction(p) for p in text.strip().split(",")]
    return NumberField(coeffs)
