"""Order-by-order formal inversion of etale coordinate maps.

The input is a germ at the origin: component polynomials g_1, ..., g_nu in
sigma ambient variables, together with optional embedding relations
p_1, ..., p_ell cutting out the source variety (sigma = nu + ell).  The
formal inverse is the unique tuple A = (A_1, ..., A_sigma) of power series
with zero constant term satisfying

    g_i(A) = x_i   and   p_k(A) = 0     up to the requested order.

The coefficients of total degree n satisfy a linear system whose matrix is
the Jacobian of (g, p) at 0, independent of n; the right-hand side collects
the contributions of lower-order coefficients.  The solver therefore factors
the Jacobian once and walks up degree by degree, recomposing as it goes.

Denominators can only enter through that fixed Jacobian and through the
coefficients of the defining polynomials; the bad prime set records where
they do, and the scaling integer is the least integer supported on those
primes whose substitution x -> N*x clears every computed denominator.
"""

from __future__ import annotations

from fractions import Fraction

import sympy

from .arith import padic_valuation
from .errors import InputError
from .linalg import det, rref, identity_matrix
from .numberfield import QQ, NumberFieldElement, format_element
from .series import MultiSeries, compose, serialize_series, parse_series, _monomials


class EtaleGerm:
    """Polynomial coordinate germ (g, p) at the origin, etale onto nu-space."""

    __slots__ = ("sigma", "nvars", "field", "components", "constraints")

    def __init__(self, components, constraints=(), field=None):
        if not components:
            raise InputError("a germ needs at least one component polynomial")
        self.components = tuple(components)
        self.constraints = tuple(constraints)
        self.sigma = self.components[0].nvars
        self.nvars = len(self.components)
        self.field = field if field is not None else self.components[0].field
        for poly in self.components + self.constraints:
            if poly.nvars != self.sigma:
                raise InputError("all defining polynomials share the ambient variables")
            if poly.field != self.field:
                raise InputError("coefficient field mismatch in germ data")
            if not poly.constant_term().is_zero():
                raise InputError("defining polynomials must vanish at the origin")
        if self.sigma != self.nvars + len(self.constraints):
            raise InputError(
                f"ambient dimension {self.sigma} must equal "
                f"{self.nvars} components + {len(self.constraints)} constraints"
            )
        if det(self.jacobian()).is_zero():
            raise InputError("Jacobian of (g, p) at the origin is singular")

    def jacobian(self):
        """The (nu+ell) x sigma matrix of linear coefficients at the origin."""
        rows = []
        for poly in self.components + self.constraints:
            row = []
            for c in range(self.sigma):
                unit = tuple(1 if k == c else 0 for k in range(self.sigma))
                row.append(poly.coefficient(unit))
            rows.append(row)
        return rows

    def __repr__(self):
        return (
            f"EtaleGerm(sigma={self.sigma}, nu={self.nvars}, "
            f"constraints={len(self.constraints)})"
        )


class InversionResult:
    """Formal inverse plus its arithmetic bookkeeping."""

    __slots__ = ("germ", "order", "series", "bad_primes", "scaling")

    def __init__(self, germ, order, series, bad_primes, scaling):
        self.germ = germ
        self.order = order
        self.series = tuple(series)
        self.bad_primes = frozenset(bad_primes)
        self.scaling = scaling

    def rescaled(self):
        """The inverse after x -> scaling * x; certified integral at bad primes."""
        return tuple(rescale_series(a, self.scaling) for a in self.series)

    def __repr__(self):
        primes = ",".join(str(p) for p in sorted(self.bad_primes)) or "-"
        return (
            f"InversionResult(order={self.order}, badprimes={{{primes}}}, "
            f"scaling={self.scaling})"
        )


def _matrix_inverse(matrix, field):
    n = len(matrix)
    aug = [list(row) + list(ident_row) for row, ident_row in
           zip(matrix, identity_matrix(n, field.one(), field.zero()))]
    red, pivots = rref(aug)
    if pivots != list(range(n)):
        raise InputError("degree-1 system is singular")
    return [row[n:] for row in red]


def formal_inverse(germ, order):
    """The unique zero-constant inverse tuple to the requested order."""
    if order < 1:
        raise InputError("inversion order must be at least 1")
    field = germ.field
    sigma = germ.sigma
    funcs = germ.components + germ.constraints
    m_inv = _matrix_inverse(germ.jacobian(), field)
    series = [MultiSeries.zero(germ.nvars, order, field) for _ in range(sigma)]
    zero = field.zero()
    one = field.one()
    for n in range(1, order + 1):
        composed = [compose(f, tuple(series), n) for f in funcs]
        new_coeffs = [dict(a.coeffs) for a in series]
        for exps in _monomials(germ.nvars, n):
            if sum(exps) != n:
                continue
            rhs = []
            for r, comp in enumerate(composed):
                target = zero
                if r < germ.nvars and n == 1 and exps[r] == 1:
                    target = one
                rhs.append(target - comp.coefficient(exps))
            if all(v.is_zero() for v in rhs):
                continue
            for i in range(sigma):
                acc = zero
                for j, v in enumerate(rhs):
                    if not v.is_zero():
                        acc = acc + m_inv[i][j] * v
                if not acc.is_zero():
                    new_coeffs[i][exps] = acc
        series = [
            MultiSeries(germ.nvars, order, c, field) for c in new_coeffs
        ]
    _verify_inverse(germ, series, order)
    return series


def _verify_inverse(germ, series, order):
    for i, g in enumerate(germ.components):
        check = compose(g, tuple(series), order)
        expected = MultiSeries.variable(i, germ.nvars, order, germ.field)
        if check != expected:
            raise AssertionError("formal inverse failed to verify g(A) = x")
    for p in germ.constraints:
        if not compose(p, tuple(series), order).is_zero():
            raise AssertionError("formal inverse failed to verify p(A) = 0")


# ---------------------------------------------------------------------------
# bad primes and the scaling integer
# ---------------------------------------------------------------------------


def _denominator_primes(value):
    if isinstance(value, NumberFieldElement):
        den = value.denominator_lcm()
    else:
        den = Fraction(value).denominator
    return set(sympy.factorint(den)) if den > 1 else set()


def _element_primes(value):
    """Primes at which a field element could fail to be a unit (support)."""
    if isinstance(value, NumberFieldElement) and not value.is_rational():
        from .arith import _support_primes

        return set(_support_primes(value))
    q = value.as_fraction() if isinstance(value, NumberFieldElement) else Fraction(value)
    primes = set()
    for n in (abs(q.numerator), q.denominator):
        if n > 1:
            primes.update(sympy.factorint(n))
    return primes


def bad_primes(germ, series):
    """Observed denominator primes united with the structural prime set.

    Structural primes are those dividing the determinant of the degree-1
    system or appearing in denominators of the defining polynomials; they are
    a conservative over-approximation of where unit-ball convergence can fail.
    """
    primes = set()
    for a in series:
        for v in a.coeffs.values():
            primes |= _denominator_primes(v)
    d = det(germ.jacobian())
    primes |= _element_primes(d)
    for poly in germ.components + germ.constraints:
        for v in poly.coeffs.values():
            primes |= _denominator_primes(v)
    return frozenset(primes)


def _coeff_valuation(value, p):
    if isinstance(value, NumberFieldElement):
        return min(padic_valuation(c, p) for c in value.coords if c != 0)
    return padic_valuation(Fraction(value), p)


def scaling_integer(primes, series):
    """Smallest N supported on the given primes making x -> N*x integral.

    For each prime the exponent is  max over stored coefficients of
    ceil(-v_p(coeff) / |J|): after substituting x -> N*x the coefficient at
    multi-index J picks up N^{|J|}.
    """
    n_scale = 1
    for p in sorted(primes):
        exponent = 0
        for a in series:
            for exps, v in a.coeffs.items():
                val = _coeff_valuation(v, p)
                if val < 0:
                    need = -int(val)
                    deg = sum(exps)
                    exponent = max(exponent, -(-need // deg))
        n_scale *= p ** exponent
    return n_scale


def rescale_series(a, n_scale):
    """Substitute x_j -> n_scale * x_j in every variable."""
    if n_scale == 1:
        return a
    out = {}
    for exps, v in a.coeffs.items():
        out[exps] = v * Fraction(n_scale) ** sum(exps)
    return MultiSeries(a.nvars, a.order, out, a.field)


def invert(germ, order):
    """Full pipeline: inverse series, bad primes, scaling integer."""
    series = formal_inverse(germ, order)
    primes = bad_primes(germ, series)
    scaling = scaling_integer(primes, series)
    for a in rescale_series_tuple(series, scaling):
        for exps, v in a.coeffs.items():
            for p in primes:
                if _coeff_valuation(v, p) < 0:
                    raise AssertionError(
                        "rescaled coefficient not integral at a bad prime"
                    )
    return InversionResult(germ, order, series, primes, scaling)


def rescale_series_tuple(series, n_scale):
    return tuple(rescale_series(a, n_scale) for a in series)


# ---------------------------------------------------------------------------
# file formats
# ---------------------------------------------------------------------------


def serialize_germ(germ):
    lines = [
        f"sigma={germ.sigma} nu={germ.nvars} ell={len(germ.constraints)} "
        f"field={germ.field.minpoly_string()}"
    ]
    for tag, polys in (("g", germ.components), ("p", germ.constraints)):
        for idx, poly in enumerate(polys, start=1):
            for exps, v in poly.terms():
                e_text = " ".join(str(e) for e in exps)
                lines.append(f"{tag}{idx} {e_text} : {format_element(v)}")
    return "\n".join(lines) + "\n"


def parse_germ(text):
    from .numberfield import parse_element, parse_field

    lines = [ln for ln in text.splitlines() if ln.strip() and not ln.startswith("#")]
    if not lines:
        raise InputError("empty germ file")
    header = {}
    for part in lines[0].split():
        key, _, value = part.partition("=")
        header[key] = value
    try:
        sigma = int(header["sigma"])
        nu = int(header["nu"])
        ell = int(header["ell"])
        field = parse_field(header["field"])
    except KeyError as missing:
        raise InputError(f"germ header is missing {missing}") from None
    buckets = {}
    max_deg = 0
    for ln in lines[1:]:
        head, c_text = ln.rsplit(":", 1)
        tokens = head.split()
        tag = tokens[0]
        exps = tuple(int(tok) for tok in tokens[1:])
        if len(exps) != sigma:
            raise InputError(f"term {ln!r} has wrong exponent count")
        buckets.setdefault(tag, {})[exps] = parse_element(c_text, field)
        max_deg = max(max_deg, sum(exps))
    components = []
    for idx in range(1, nu + 1):
        coeffs = buckets.get(f"g{idx}")
        if coeffs is None:
            raise InputError(f"germ file is missing component g{idx}")
        components.append(MultiSeries(sigma, max_deg, coeffs, field))
    constraints = []
    for idx in range(1, ell + 1):
        coeffs = buckets.get(f"p{idx}")
        if coeffs is None:
            raise InputError(f"germ file is missing constraint p{idx}")
        constraints.append(MultiSeries(sigma, max_deg, coeffs, field))
    return EtaleGerm(components, constraints, field)


def serialize_inversion(result):
    chunks = []
    for idx, a in enumerate(result.series, start=1):
        chunks.append(f"# inverse component A{idx}")
        chunks.append(serialize_series(a).rstrip("\n"))
    primes = ",".join(str(p) for p in sorted(result.bad_primes)) or "-"
    chunks.append(f"badprimes={primes}")
    chunks.append(f"nscale={result.scaling}")
    chunks.append(f"order={result.order}")
    return "\n".join(chunks) + "\n"
