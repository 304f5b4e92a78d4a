"""Sparse truncated multivariate power series with exact coefficients.

A :class:`MultiSeries` stores finitely many coefficients indexed by exponent
vectors of total degree at most the truncation order N; everything of higher
degree is unknown, not zero.  Binary ring operations truncate to the smaller
of the two orders.  Truncation is by total degree, which keeps composition
well defined and makes the diagonal operator's output order floor(N/mu).

The diagonal operator keeps exactly the monomials  a * z_1^n ... z_mu^n
(with exponent zero in every remaining variable) and reads them as a*t^n.
Residual terms involving z_{mu+1}, ..., z_nu are discarded by definition;
inputs produced by the de Rham reduction never contain them.

Coefficients are :class:`NumberFieldElement` values over a common field;
plain ints and Fractions are coerced.  All series are immutable.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import InputError
from .numberfield import (
    QQ,
    NumberField,
    NumberFieldElement,
    format_element,
    parse_element,
    parse_field,
)


def _coerce_coeff(field, value):
    if isinstance(value, NumberFieldElement):
        if value.field != field:
            if value.is_rational():
                return field.from_rational(value.as_fraction())
            raise InputError("coefficient from a different number field")
        return value
    return field.from_rational(Fraction(value))


def grlex_key(exps):
    return (sum(exps), exps)


class MultiSeries:
    """Truncated power series in nvars variables over a number field."""

    __slots__ = ("nvars", "order", "field", "coeffs")

    def __init__(self, nvars, order, coeffs=None, field=QQ):
        if nvars < 1:
            raise InputError("a series needs at least one variable")
        if order < 0:
            raise InputError("truncation order must be non-negative")
        self.nvars = nvars
        self.order = order
        self.field = field
        clean = {}
        for exps, value in (coeffs or {}).items():
            exps = tuple(int(e) for e in exps)
            if len(exps) != nvars:
                raise InputError(
                    f"exponent vector {exps} has wrong length for {nvars} variables"
                )
            if any(e < 0 for e in exps):
                raise InputError(f"negative exponent in {exps}")
            if sum(exps) > order:
                continue  # beyond the truncation order: unknown, not stored
            value = _coerce_coeff(field, value)
            if not value.is_zero():
                clean[exps] = value
        self.coeffs = clean

    # -- constructors --------------------------------------------------------

    @classmethod
    def zero(cls, nvars, order, field=QQ):
        return cls(nvars, order, {}, field)

    @classmethod
    def constant(cls, value, nvars, order, field=QQ):
        return cls(nvars, order, {(0,) * nvars: value}, field)

    @classmethod
    def variable(cls, index, nvars, order, field=QQ):
        if not 0 <= index < nvars:
            raise InputError(f"variable index {index} out of range")
        exps = tuple(1 if i == index else 0 for i in range(nvars))
        return cls(nvars, order, {exps: 1}, field)

    # -- basics ----------------------------------------------------------------

    def __repr__(self):
        n = len(self.coeffs)
        return f"MultiSeries(nvars={self.nvars}, order={self.order}, terms={n})"

    def __eq__(self, other):
        return (
            isinstance(other, MultiSeries)
            and self.nvars == other.nvars
            and self.order == other.order
            and self.field == other.field
            and self.coeffs == other.coeffs
        )

    def __hash__(self):
        return hash(
            (self.nvars, self.order, self.field, frozenset(self.coeffs.items()))
        )

    def is_zero(self):
        return not self.coeffs

    def coefficient(self, exps):
        exps = tuple(exps)
        return self.coeffs.get(exps, self.field.zero())

    def constant_term(self):
        return self.coefficient((0,) * self.nvars)

    def total_degree(self):
        """Largest stored total degree (0 for the zero series)."""
        return max((sum(e) for e in self.coeffs), default=0)

    def terms(self):
        """Stored terms in graded lexicographic order."""
        return sorted(self.coeffs.items(), key=lambda kv: grlex_key(kv[0]))

    def _check_compatible(self, other):
        if self.nvars != other.nvars:
            raise InputError(
                f"variable count mismatch: {self.nvars} vs {other.nvars}"
            )
        if self.field != other.field:
            raise InputError("coefficient field mismatch")

    # -- ring operations --------------------------------------------------------

    def __add__(self, other):
        if isinstance(other, (int, Fraction, NumberFieldElement)):
            other = MultiSeries.constant(other, self.nvars, self.order, self.field)
        self._check_compatible(other)
        order = min(self.order, other.order)
        out = dict(self.coeffs)
        for exps, v in other.coeffs.items():
            out[exps] = out.get(exps, self.field.zero()) + v
        return MultiSeries(self.nvars, order, out, self.field)

    __radd__ = __add__

    def __neg__(self):
        return MultiSeries(
            self.nvars,
            self.order,
            {e: -v for e, v in self.coeffs.items()},
            self.field,
        )

    def __sub__(self, other):
        if isinstance(other, (int, Fraction, NumberFieldElement)):
            other = MultiSeries.constant(other, self.nvars, self.order, self.field)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scalar_mul(self, scalar):
        scalar = _coerce_coeff(self.field, scalar)
        return MultiSeries(
            self.nvars,
            self.order,
            {e: scalar * v for e, v in self.coeffs.items()},
            self.field,
        )

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, NumberFieldElement)):
            return self.scalar_mul(other)
        self._check_compatible(other)
        order = min(self.order, other.order)
        out = {}
        zero = self.field.zero()
        for e1, v1 in self.coeffs.items():
            d1 = sum(e1)
            if d1 > order:
                continue
            for e2, v2 in other.coeffs.items():
                if d1 + sum(e2) > order:
                    continue
                key = tuple(a + b for a, b in zip(e1, e2))
                out[key] = out.get(key, zero) + v1 * v2
        return MultiSeries(self.nvars, order, out, self.field)

    __rmul__ = __mul__

    def __pow__(self, n):
        if n < 0:
            raise InputError("negative powers of series are not defined here")
        result = MultiSeries.constant(1, self.nvars, self.order, self.field)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base if n > 1 else base
            n >>= 1
        return result

    def derivative(self, var):
        """Partial derivative; the truncation order drops by one."""
        if not 0 <= var < self.nvars:
            raise InputError(f"variable index {var} out of range")
        out = {}
        for exps, v in self.coeffs.items():
            e = exps[var]
            if e == 0:
                continue
            key = tuple(
                x - 1 if i == var else x for i, x in enumerate(exps)
            )
            out[key] = v * Fraction(e)
        return MultiSeries(self.nvars, max(self.order - 1, 0), out, self.field)

    def truncate(self, order):
        """Forget terms beyond `order`; cannot extend knowledge upward."""
        return MultiSeries(self.nvars, min(order, self.order), self.coeffs, self.field)

    def as_polynomial_at_order(self, order):
        """Re-wrap at a higher order, treating the stored terms as exact.

        Only meaningful when the series is a polynomial known exactly (all
        of its terms are stored); expand_rational and compose use this.
        """
        return MultiSeries(self.nvars, order, self.coeffs, self.field)


# ---------------------------------------------------------------------------
# univariate series
# ---------------------------------------------------------------------------


class UniSeries:
    """Truncated power series in one variable t."""

    __slots__ = ("order", "field", "coeffs")

    def __init__(self, order, coeffs=None, field=QQ):
        if order < 0:
            raise InputError("truncation order must be non-negative")
        self.order = order
        self.field = field
        clean = {}
        for n, value in (coeffs or {}).items():
            n = int(n)
            if n < 0:
                raise InputError("negative degree in a power series")
            if n > order:
                continue
            value = _coerce_coeff(field, value)
            if not value.is_zero():
                clean[n] = value
        self.coeffs = clean

    @classmethod
    def zero(cls, order, field=QQ):
        return cls(order, {}, field)

    @classmethod
    def from_list(cls, values, field=QQ):
        return cls(len(values) - 1, dict(enumerate(values)), field)

    def __repr__(self):
        return f"UniSeries(order={self.order}, terms={len(self.coeffs)})"

    def __eq__(self, other):
        return (
            isinstance(other, UniSeries)
            and self.order == other.order
            and self.field == other.field
            and self.coeffs == other.coeffs
        )

    def __hash__(self):
        return hash((self.order, self.field, frozenset(self.coeffs.items())))

    def is_zero(self):
        return not self.coeffs

    def coefficient(self, n):
        return self.coeffs.get(n, self.field.zero())

    def coefficient_list(self, upto=None):
        upto = self.order if upto is None else upto
        return [self.coefficient(n) for n in range(upto + 1)]

    def nonzero_degrees(self):
        return sorted(self.coeffs)

    def _check_compatible(self, other):
        if self.field != other.field:
            raise InputError("coefficient field mismatch")

    def __add__(self, other):
        if isinstance(other, (int, Fraction, NumberFieldElement)):
            other = UniSeries(self.order, {0: other}, self.field)
        self._check_compatible(other)
        order = min(self.order, other.order)
        out = dict(self.coeffs)
        for n, v in other.coeffs.items():
            out[n] = out.get(n, self.field.zero()) + v
        return UniSeries(order, out, self.field)

    __radd__ = __add__

    def __neg__(self):
        return UniSeries(self.order, {n: -v for n, v in self.coeffs.items()}, self.field)

    def __sub__(self, other):
        if isinstance(other, (int, Fraction, NumberFieldElement)):
            other = UniSeries(self.order, {0: other}, self.field)
        return self + (-other)

    def scalar_mul(self, scalar):
        scalar = _coerce_coeff(self.field, scalar)
        return UniSeries(
            self.order, {n: scalar * v for n, v in self.coeffs.items()}, self.field
        )

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, NumberFieldElement)):
            return self.scalar_mul(other)
        self._check_compatible(other)
        order = min(self.order, other.order)
        out = {}
        zero = self.field.zero()
        for n1, v1 in self.coeffs.items():
            for n2, v2 in other.coeffs.items():
                n = n1 + n2
                if n > order:
                    continue
                out[n] = out.get(n, zero) + v1 * v2
        return UniSeries(order, out, self.field)

    __rmul__ = __mul__

    def truncate(self, order):
        return UniSeries(min(order, self.order), self.coeffs, self.field)

    def evaluate_truncated(self, point):
        """The truncated value sum_{n<=N} a_n * point^n (a field element)."""
        point = self.field.coerce(point)
        acc = self.field.zero()
        power = self.field.one()
        last = 0
        for n in sorted(self.coeffs):
            power = power * point ** (n - last)
            last = n
            acc = acc + self.coeffs[n] * power
        return acc

    def to_multiseries(self):
        return MultiSeries(
            1, self.order, {(n,): v for n, v in self.coeffs.items()}, self.field
        )


# ---------------------------------------------------------------------------
# the three named operations
# ---------------------------------------------------------------------------


def expand_rational(p, q, order):
    """Truncation of the rational function p/q, with q(0) invertible.

    p and q are polynomials presented as MultiSeries whose stored terms are
    exact.  The result r satisfies r*q = p up to the truncation order, which
    is verified before returning.
    """
    p._check_compatible(q)
    q0 = q.constant_term()
    if q0.is_zero():
        raise InputError("expand_rational requires q(0) != 0")
    nvars, field = p.nvars, p.field
    zero = field.zero()
    inv_q0 = q0.inverse()
    p = p.as_polynomial_at_order(order)
    q = q.as_polynomial_at_order(order)
    # graded sweep: coefficient of m in r is (p_m - sum_k q_k r_{m-k}) / q_0
    q_terms = [(e, v) for e, v in q.coeffs.items() if sum(e) > 0]
    out = {}
    for exps in _monomials(nvars, order):
        acc = p.coeffs.get(exps, zero)
        for qe, qv in q_terms:
            re = tuple(a - b for a, b in zip(exps, qe))
            if any(x < 0 for x in re):
                continue
            rv = out.get(re)
            if rv is not None:
                acc = acc - qv * rv
        if not acc.is_zero():
            out[exps] = acc * inv_q0
    result = MultiSeries(nvars, order, out, field)
    if (result * q) != p.truncate(order):
        raise AssertionError("expand_rational failed to verify r*q = p")
    return result


def _compositions(total, slots):
    if slots == 1:
        yield (total,)
        return
    for e in range(total + 1):
        for rest in _compositions(total - e, slots - 1):
            yield (e,) + rest


def _monomials(nvars, order):
    """All exponent vectors of total degree <= order, in graded lex order."""
    result = []
    for d in range(order + 1):
        result.extend(sorted(_compositions(d, nvars)))
    return result


def compose(f, tuple_a, order):
    """Truncation of f(A_1, ..., A_nu) to total degree `order`.

    Every component A_i must have zero constant term (otherwise composition
    of truncations is not well defined).
    """
    if len(tuple_a) != f.nvars:
        raise InputError(
            f"composition needs {f.nvars} inner series, got {len(tuple_a)}"
        )
    if not tuple_a:
        raise InputError("empty composition")
    inner_vars = tuple_a[0].nvars
    field = f.field
    for a in tuple_a:
        if a.nvars != inner_vars:
            raise InputError("inner series must share one variable set")
        if a.field != field:
            raise InputError("coefficient field mismatch")
        if not a.constant_term().is_zero():
            raise InputError("inner series must have zero constant term")
    one = MultiSeries.constant(1, inner_vars, order, field)
    # cache powers of each inner series
    powers = []
    for a in tuple_a:
        powers.append({0: one, 1: a.truncate(order)})
    acc = MultiSeries.zero(inner_vars, order, field)
    for exps, coeff in sorted(f.coeffs.items(), key=lambda kv: grlex_key(kv[0])):
        # inner series vanish at 0, so this term starts at total degree sum(exps)
        if sum(exps) > order:
            continue
        term = one.scalar_mul(coeff)
        for i, e in enumerate(exps):
            if e == 0:
                continue
            cache = powers[i]
            if e not in cache:
                highest = max(cache)
                cur = cache[highest]
                for k in range(highest + 1, e + 1):
                    cur = cur * cache[1]
                    cache[k] = cur
            term = term * cache[e]
        acc = acc + term
    return acc


def identity_tuple(nvars, order, field=QQ):
    return tuple(
        MultiSeries.variable(i, nvars, order, field) for i in range(nvars)
    )


def mu_diagonal(h, mu):
    """The diagonal reading z_1^n ... z_mu^n -> t^n, discarding other terms.

    Terms with any exponent in the variables beyond mu are dropped; callers
    that need them handled must reduce first.  Output order is floor(N/mu).
    """
    if not 1 <= mu <= h.nvars:
        raise InputError(f"mu must lie in [1, {h.nvars}], got {mu}")
    out_order = h.order // mu
    out = {}
    for exps, v in h.coeffs.items():
        head = exps[:mu]
        n = head[0]
        if any(e != n for e in head):
            continue
        if any(e != 0 for e in exps[mu:]):
            continue
        if n <= out_order:
            out[n] = v
    return UniSeries(out_order, out, h.field)


# ---------------------------------------------------------------------------
# file format: "vars=nu order=N field=<minpoly coeffs>" then one term per line
# ---------------------------------------------------------------------------


def serialize_series(series):
    if isinstance(series, UniSeries):
        series = series.to_multiseries()
    lines = [
        f"vars={series.nvars} order={series.order} field={series.field.minpoly_string()}"
    ]
    for exps, v in series.terms():
        e_text = " ".join(str(e) for e in exps)
        lines.append(f"{e_text} : {format_element(v)}")
    return "\n".join(lines) + "\n"


def parse_series_header(line):
    fields = {}
    for part in line.strip().split():
        if "=" not in part:
            raise InputError(f"malformed series header part {part!r}")
        key, value = part.split("=", 1)
        fields[key] = value
    try:
        nvars = int(fields["vars"])
        order = int(fields["order"])
        field = parse_field(fields["field"])
    except KeyError as missing:
        raise InputError(f"series header is missing {missing}") from None
    return nvars, order, field


def parse_series(text):
    lines = [ln for ln in text.splitlines() if ln.strip() and not ln.startswith("#")]
    if not lines:
        raise InputError("empty series file")
    nvars, order, field = parse_series_header(lines[0])
    coeffs = {}
    for ln in lines[1:]:
        if ":" not in ln:
            raise InputError(f"malformed series term line {ln!r}")
        e_text, c_text = ln.rsplit(":", 1)
        exps = tuple(int(tok) for tok in e_text.split())
        if len(exps) != nvars:
            raise InputError(f"term {ln!r} has wrong exponent count")
        coeffs[exps] = parse_element(c_text, field)
    return MultiSeries(nvars, order, coeffs, field)


def parse_uniseries(text):
    ms = parse_series(text)
    if ms.nvars != 1:
        raise InputError("expected a univariate series file")
    return UniSeries(
        ms.order, {e[0]: v for e, v in ms.coeffs.items()}, ms.field
    )
