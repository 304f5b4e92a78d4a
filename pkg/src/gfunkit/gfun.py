"""Place-wise diagnostics for vectors of power series over a number field.

Four questions about a tuple G = (G_1, ..., G_m) of series in K[[x]]:

* size: the partial sums  sigma_n = (1/n) sum_v max_{i, j<=n} log^+ |G_ij|_v,
  whose boundedness is the defining growth condition for this class of
  series.  Finite places are summed exactly from valuations; archimedean
  contributions of rational data stay exact as well.
* radius: a windowed estimate of the v-adic convergence radius
  liminf |a_n|_v^{-1/n}.  An estimate with a declared window, never a
  certificate: a liminf cannot be computed from a truncation.
* relevance: |xi|_v < 1 together with every radius estimate exceeding
  |xi|_v.  Verdicts are "yes" / "no" / "unknown"; estimate-based answers are
  flagged as such and an inconclusive radius never silently becomes "no".
* relations: exact null-space search for polynomial relations
  P(x, 1, G_1, ..., G_m) = O(x^{N+1}), homogeneous in (y_0, ..., y_m) after
  adjoining the constant series y_0 = 1, and point-wise verification of a
  relation at xi up to the certification order.
"""

from __future__ import annotations

import math
from fractions import Fraction

from .arith import (
    INFINITY,
    LogSum,
    Place,
    abs_value,
    archimedean_places,
    finite_places,
    log_plus,
    padic_valuation,
    valuation,
)
from .errors import InputError, OrderInsufficientError, PrecisionError
from .intervals import DEFAULT_PRECISION, Interval, exp_interval, hull_min, log_interval
from .linalg import nullspace
from .mpoly import MPoly
from .numberfield import NumberFieldElement
from .series import UniSeries


class GVector:
    """A tuple of univariate series over one field, truncated at one order."""

    __slots__ = ("entries", "field", "order")

    def __init__(self, entries):
        entries = tuple(entries)
        if not entries:
            raise InputError("a series vector needs at least one entry")
        field = entries[0].field
        order = min(e.order for e in entries)
        for e in entries:
            if e.field != field:
                raise InputError("entries live over different fields")
        self.entries = tuple(e.truncate(order) if e.order != order else e
                             for e in entries)
        self.field = field
        self.order = order

    @property
    def m(self):
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    def __getitem__(self, i):
        return self.entries[i]

    def __repr__(self):
        return f"GVector(m={self.m}, order={self.order})"


# ---------------------------------------------------------------------------
# size
# ---------------------------------------------------------------------------


def _coefficients_upto(g, n):
    return [g.coefficient(j) for j in range(min(n, g.order) + 1)]


def size_partial(gvec, n):
    """sigma_n = (1/n) * sum_v max_{i, j<=n} log^+ |G_ij|_v, as a LogSum.

    Exact whenever all coefficients are rational.
    """
    if n < 1:
        raise InputError("size index n must be at least 1")
    if n > gvec.order:
        raise OrderInsufficientError(
            f"size_partial needs coefficients up to degree {n}, "
            f"series are truncated at {gvec.order}",
            required_order=n,
        )
    field = gvec.field
    coeffs = []
    for g in gvec:
        coeffs.extend(_coefficients_upto(g, n))
    total = LogSum.zero()
    # finite places: only primes dividing some coefficient denominator matter
    support = set()
    for c in coeffs:
        den = c.denominator_lcm()
        if den > 1:
            import sympy

            support.update(sympy.factorint(den))
    for p in sorted(support):
        for place in finite_places(field, p):
            worst = Fraction(0)
            for c in coeffs:
                if c.is_zero():
                    continue
                v = valuation(c, place)
                if v < 0:
                    weighted = -Fraction(place.f, field.degree) * Fraction(v)
                    if weighted > worst:
                        worst = weighted
            if worst > 0:
                total = total + LogSum({p: worst})
    for place in archimedean_places(field):
        if field.is_rationals:
            biggest = max(abs(c.as_fraction()) for c in coeffs)
            if biggest > 1:
                total = total + LogSum.from_log_of_rational(biggest).scale(
                    place.weight
                )
        else:
            from .arith import _arch_abs

            enclosures = [
                _arch_abs(c, place, DEFAULT_PRECISION)
                for c in coeffs
                if not c.is_zero()
            ]
            top = enclosures[0]
            for iv in enclosures[1:]:
                top = Interval(max(top.lo, iv.lo), max(top.hi, iv.hi))
            lp = log_plus(top) * Interval(place.weight)
            total = total + LogSum.from_interval(lp)
    return total.scale(Fraction(1, n))


def size_sequence(gvec, indices):
    return [(n, size_partial(gvec, n)) for n in indices]


def size_trend(gvec, indices, precision=DEFAULT_PRECISION):
    """Least-squares slope of sigma_n against log n.  A labeled heuristic:
    positive slope suggests divergence, near-zero suggests boundedness."""
    points = [
        (math.log(n), float(size_partial(gvec, n).enclosure(precision)))
        for n in indices
        if n >= 1
    ]
    if len(points) < 2:
        raise InputError("size_trend needs at least two indices")
    mean_x = sum(x for x, _ in points) / len(points)
    mean_y = sum(y for _, y in points) / len(points)
    num = sum((x - mean_x) * (y - mean_y) for x, y in points)
    den = sum((x - mean_x) ** 2 for x, y in points)
    slope = num / den
    label = "divergent-looking" if slope > 0.05 else "bounded-looking"
    return slope, label


# ---------------------------------------------------------------------------
# radius
# ---------------------------------------------------------------------------


class RadiusEstimate:
    """Windowed estimate of a v-adic radius; exact exponent at finite places.

    ``kind`` is "finite" (radius = p**exponent with exact rational exponent),
    "interval" (archimedean enclosure) or "inconclusive".
    """

    __slots__ = ("place", "window", "kind", "exponent", "interval", "used")

    def __init__(self, place, window, kind, exponent=None, interval=None, used=0):
        self.place = place
        self.window = window
        self.kind = kind
        self.exponent = exponent
        self.interval = interval
        self.used = used

    @property
    def inconclusive(self):
        return self.kind == "inconclusive"

    def enclosure(self, precision=DEFAULT_PRECISION):
        if self.kind == "finite":
            from .intervals import power_interval

            return power_interval(Fraction(self.place.p), self.exponent, precision)
        if self.kind == "interval":
            return self.interval
        raise PrecisionError("inconclusive radius estimate has no value")

    def __float__(self):
        return float(self.enclosure())

    def describe(self):
        if self.inconclusive:
            return f"inconclusive(window={self.window})"
        return f"{float(self):.6g} (estimate window={self.window})"

    def exceeds(self, abs_val):
        """Rigorously compare the estimate against an absolute value.

        ``abs_val`` comes from :func:`point_abs` at the same place.  Raises
        PrecisionError when the comparison cannot be decided.
        """
        if self.inconclusive:
            raise PrecisionError("inconclusive radius estimate")
        if self.kind == "finite":
            kind2, data = abs_val
            assert kind2 == "finite_exponent"
            return self.exponent > data
        kind2, data = abs_val
        assert kind2 == "interval"
        if data.hi < self.interval.lo:
            return True
        if data.lo >= self.interval.hi:
            return False
        raise PrecisionError("radius estimate overlaps |xi|_v")


def v_radius(series, place, window):
    """min over the trailing window of |a_n|_v^(-1/n}, as an estimate."""
    if window < 1:
        raise InputError("window must be positive")
    if window > series.order:
        raise InputError(
            f"window {window} exceeds the series order {series.order}"
        )
    degrees = [n for n in series.nonzero_degrees() if n >= 1]
    tail = degrees[-window:]
    if len(tail) < 2:
        return RadiusEstimate(place, window, "inconclusive", used=len(tail))
    if place.is_finite:
        d = place.field.degree
        exponent = None
        for n in tail:
            v = valuation(series.coefficient(n), place)
            q = Fraction(place.f, d) * Fraction(v, n)
            if exponent is None or q < exponent:
                exponent = q
        return RadiusEstimate(
            place, window, "finite", exponent=exponent, used=len(tail)
        )
    from .arith import _arch_abs

    enclosures = []
    for n in tail:
        mag = _arch_abs(series.coefficient(n), place, DEFAULT_PRECISION)
        if mag.lo <= 0:
            return RadiusEstimate(place, window, "inconclusive", used=len(tail))
        log_mag = log_interval(mag, DEFAULT_PRECISION)
        w = Interval(place.weight)
        r = exp_interval(-(log_mag * w) * Interval(Fraction(1, n)), DEFAULT_PRECISION)
        enclosures.append(r)
    return RadiusEstimate(
        place, window, "interval", interval=hull_min(enclosures), used=len(tail)
    )


# ---------------------------------------------------------------------------
# relevance
# ---------------------------------------------------------------------------


def point_abs(xi, place, precision=DEFAULT_PRECISION):
    """|xi|_v in the comparable representation used by RadiusEstimate.

    Finite places return ("finite_exponent", q) with |xi|_v = p**q exactly;
    archimedean places return ("interval", enclosure).
    """
    xi = place.field.coerce(xi)
    if place.is_finite:
        if xi.is_zero():
            return ("finite_exponent", Fraction(-(10 ** 9)))  # effectively 0
        v = valuation(xi, place)
        q = -Fraction(place.f, place.field.degree) * Fraction(v)
        return ("finite_exponent", q)
    return ("interval", abs_value(xi, place, precision))


def _abs_below_one(abs_repr):
    kind, data = abs_repr
    if kind == "finite_exponent":
        return data < 0
    if data.hi < 1:
        return True
    if data.lo >= 1:
        return False
    raise PrecisionError("|xi|_v cannot be separated from 1")


class RelevanceRecord:
    __slots__ = ("place", "abs_repr", "radii", "verdict")

    def __init__(self, place, abs_repr, radii, verdict):
        self.place = place
        self.abs_repr = abs_repr
        self.radii = radii
        self.verdict = verdict  # "yes" | "no" | "unknown"

    def abs_text(self):
        kind, data = self.abs_repr
        if kind == "finite_exponent":
            if data <= -(10 ** 9):
                return "0 (exact)"
            p = self.place.p
            if data.denominator == 1:
                value = Fraction(p) ** data.numerator
                return f"{value} (exact)"
            return f"{p}^({data}) (exact exponent)"
        if data.is_exact():
            return f"{data.lo} (exact)"
        return f"{float(data):.6g} (interval)"

    def radius_text(self):
        if not self.radii:
            return "-"
        worst = min(
            (r for r in self.radii if not r.inconclusive),
            key=lambda r: float(r),
            default=None,
        )
        if worst is None:
            return "inconclusive"
        return worst.describe()


class RelevanceReport:
    """Point plus one record per examined place."""

    __slots__ = ("point", "records")

    def __init__(self, point, records):
        self.point = point
        self.records = list(records)

    def table(self):
        lines = ["place | abs | radius | relevant"]
        for rec in self.records:
            lines.append(
                f"{rec.place.label()} | {rec.abs_text()} | "
                f"{rec.radius_text()} | {rec.verdict}"
            )
        return "\n".join(lines)


def is_relevant(xi, place, gvec, window, precision=DEFAULT_PRECISION):
    """Whether |xi|_v < 1 and every radius estimate exceeds |xi|_v.

    Returns (verdict, record) with verdict in {"yes", "no", "unknown"}.
    """
    xi = gvec.field.coerce(xi)
    if place.field != gvec.field:
        raise InputError("place and series vector live over different fields")
    abs_repr = point_abs(xi, place, precision)
    radii = [v_radius(g, place, window) for g in gvec]
    try:
        below_one = _abs_below_one(abs_repr)
    except PrecisionError:
        return "unknown", RelevanceRecord(place, abs_repr, radii, "unknown")
    if not below_one:
        return "no", RelevanceRecord(place, abs_repr, radii, "no")
    verdict = "yes"
    for est in radii:
        if est.inconclusive:
            verdict = "unknown"
            continue
        try:
            if not est.exceeds(abs_repr):
                verdict = "no"
                break
        except PrecisionError:
            verdict = "unknown"
    return verdict, RelevanceRecord(place, abs_repr, radii, verdict)


def relevance_report(xi, places, gvec, window, precision=DEFAULT_PRECISION):
    records = []
    for place in places:
        _, rec = is_relevant(xi, place, gvec, window, precision)
        records.append(rec)
    return RelevanceReport(xi, records)


# ---------------------------------------------------------------------------
# functional relations
# ---------------------------------------------------------------------------

MARGIN_NUM, MARGIN_DEN = 5, 4  # require 25% more equations than unknowns


def relation_variables(m):
    return ("x",) + tuple(f"y{i}" for i in range(m + 1))


def _y_monomials(m, delta):
    """Exponent tuples (e_0, ..., e_m) with sum = delta, graded-lex order."""

    def rec(slots, total):
        if slots == 1:
            yield (total,)
            return
        for e in range(total + 1):
            for rest in rec(slots - 1, total - e):
                yield (e,) + rest

    return sorted(rec(m + 1, delta))


def functional_relations(gvec, delta, xdegree=0):
    """Canonical basis of relations P(x, y_0..y_m) with P(x, 1, G) = O(x^{N+1}).

    P runs over polynomials homogeneous of degree delta in (y_0, ..., y_m)
    (y_0 stands for the constant series 1) with x-degree at most xdegree.
    An empty basis certifies "no relation detected at this truncation order",
    nothing stronger.  Requires 25% more equations than unknowns.
    """
    if delta < 1:
        raise InputError("relation degree must be at least 1")
    if xdegree < 0:
        raise InputError("x-degree bound must be non-negative")
    m = gvec.m
    order = gvec.order
    monos = _y_monomials(m, delta)
    unknowns = len(monos) * (xdegree + 1)
    needed = -(-unknowns * MARGIN_NUM // MARGIN_DEN)  # ceil
    if order + 1 < needed:
        raise OrderInsufficientError(
            f"{unknowns} unknowns need at least {needed} series coefficients "
            f"(25% margin), have {order + 1}",
            required_order=needed - 1,
        )
    field = gvec.field
    one = UniSeries(order, {0: 1}, field)
    entries = (one,) + gvec.entries
    # cache powers and products of the series
    power_cache = [{0: one} for _ in range(m + 1)]

    def power(i, e):
        cache = power_cache[i]
        if e not in cache:
            cache[e] = power(i, e - 1) * entries[i]
        return cache[e]

    columns = []
    for y_exps in monos:
        prod = one
        for i, e in enumerate(y_exps):
            if e:
                prod = prod * power(i, e)
        for xd in range(xdegree + 1):
            # multiplication by x^xd shifts coefficients
            col = [field.zero()] * (order + 1)
            for n, v in prod.coeffs.items():
                if n + xd <= order:
                    col[n + xd] = v
            columns.append(col)
    matrix = [[columns[j][k] for j in range(len(columns))]
              for k in range(order + 1)]
    basis_vectors = nullspace(matrix)
    variables = relation_variables(m)
    basis = []
    for vec in basis_vectors:
        terms = {}
        idx = 0
        for y_exps in monos:
            for xd in range(xdegree + 1):
                v = vec[idx]
                idx += 1
                if not v.is_zero():
                    terms[(xd,) + y_exps] = v
        poly = MPoly(variables, terms, field).normalized()
        basis.append(poly)
    for poly in basis:
        _verify_relation_recomposes(poly, gvec)
    basis.sort(key=lambda p: sorted(p.terms))
    return basis


def _verify_relation_recomposes(poly, gvec):
    """Exact check: substituting the series back gives O(x^{N+1})."""
    order = gvec.order
    field = gvec.field
    one = UniSeries(order, {0: 1}, field)
    entries = (one,) + gvec.entries
    acc = UniSeries.zero(order, field)
    for exps, coeff in poly.sorted_terms():
        xd = exps[0]
        term = UniSeries(order, {xd: coeff}, field)
        for i, e in enumerate(exps[1:]):
            for _ in range(e):
                term = term * entries[i]
        acc = acc + term
    if not acc.is_zero():
        raise AssertionError("relation basis vector fails to recompose to 0")


# ---------------------------------------------------------------------------
# point-wise verification
# ---------------------------------------------------------------------------


class RelationVerdict:
    __slots__ = ("holds", "vacuous", "place", "order", "threshold_text", "value_text")

    def __init__(self, holds, vacuous, place, order, threshold_text, value_text):
        self.holds = holds
        self.vacuous = vacuous
        self.place = place
        self.order = order
        self.threshold_text = threshold_text
        self.value_text = value_text

    def describe(self):
        tag = "holds" if self.holds else "fails"
        extra = " [vacuous: place not relevant]" if self.vacuous else ""
        return (
            f"{tag} at certification order {self.order} "
            f"({self.value_text} vs {self.threshold_text}){extra}"
        )


def relation_holds_at(poly, xi, place, gvec, precision=DEFAULT_PRECISION,
                      relevant_hint=None):
    """Test P(xi, 1, G_1(xi), ..., G_m(xi)) = 0 at the given place.

    The series are evaluated as truncations at the common order N, so the
    verdict certifies vanishing up to the truncation residue: the computed
    value must be v-small compared to |xi|_v^((N+1)/2).  With xi = 0 the
    evaluation is exact.  When the place is not relevant for xi the verdict
    is flagged vacuous.
    """
    field = gvec.field
    xi = field.coerce(xi)
    if set(poly.variables) - set(relation_variables(gvec.m)):
        raise InputError("relation polynomial has unexpected variables")
    assignment = {"x": xi, "y0": field.one()}
    for i, g in enumerate(gvec.entries, start=1):
        assignment[f"y{i}"] = g.evaluate_truncated(xi)
    value = poly.evaluate(
        {name: assignment[name] for name in poly.variables}
    )
    order = gvec.order
    vacuous = False
    if relevant_hint is None:
        verdict, _ = is_relevant(xi, place, gvec, min(8, order), precision)
        vacuous = verdict != "yes"
    else:
        vacuous = not relevant_hint

    if xi.is_zero():
        holds = value.is_zero()
        return RelationVerdict(
            holds, vacuous, place, order, "exact at xi = 0",
            "0" if holds else "nonzero",
        )

    half = (order + 1) // 2
    if place.is_finite:
        if value.is_zero():
            return RelationVerdict(
                True, vacuous, place, order, "exact zero", "0"
            )
        v_val = valuation(value, place)
        v_xi = valuation(xi, place)
        threshold = half * max(v_xi, 0) if v_xi is not INFINITY else 0
        holds = v_val >= threshold and threshold > 0
        if threshold == 0:
            # |xi|_v >= 1: no decay to compare against; only exact zero counts
            holds = False
        return RelationVerdict(
            holds, vacuous, place, order,
            f"valuation >= {threshold}", f"valuation = {v_val}",
        )
    abs_iv = abs_value(value, place, precision) if not value.is_zero() else Interval(0)
    xi_abs = abs_value(xi, place, precision)
    threshold_iv = Interval(1)
    for _ in range(half):
        threshold_iv = threshold_iv * xi_abs
    if value.is_zero():
        return RelationVerdict(True, vacuous, place, order, "exact zero", "0")
    try:
        holds = abs_iv.strictly_less(threshold_iv)
    except PrecisionError:
        raise PrecisionError(
            "relation verdict needs more precision: value and threshold overlap"
        )
    return RelationVerdict(
        holds, vacuous, place, order,
        f"|value| < {float(threshold_iv):.3g}", f"|value| = {float(abs_iv):.3g}",
    )
