"""Rigorous real intervals with exact rational endpoints.

All archimedean quantities in the library are tracked as closed intervals
[lo, hi] with Fraction endpoints.  Ring operations are exact; only the
transcendental enclosures (log, exp) round outward, via mpmath's interval
context at a caller-chosen binary precision.  Comparisons against thresholds
either decide rigorously or raise :class:`PrecisionError` so the caller can
retry with more precision.
"""

from __future__ import annotations

from fractions import Fraction

import mpmath

from .errors import PrecisionError

DEFAULT_PRECISION = 64


def _to_fraction(x):
    return x if isinstance(x, Fraction) else Fraction(x)


def _ivmpf_to_fractions(x):
    """Exact rational endpoints of an mpmath interval value."""
    from mpmath.libmp import to_rational

    lo_raw, hi_raw = x._mpi_
    lo_n, lo_d = to_rational(lo_raw)
    hi_n, hi_d = to_rational(hi_raw)
    return Fraction(int(lo_n), int(lo_d)), Fraction(int(hi_n), int(hi_d))


class Interval:
    """Closed interval with exact rational endpoints."""

    __slots__ = ("lo", "hi")

    def __init__(self, lo, hi=None):
        lo = _to_fraction(lo)
        hi = lo if hi is None else _to_fraction(hi)
        if lo > hi:
            raise ValueError(f"empty interval [{lo}, {hi}]")
        self.lo = lo
        self.hi = hi

    @classmethod
    def exact(cls, q):
        return cls(q)

    def __repr__(self):
        if self.lo == self.hi:
            return f"Interval({self.lo})"
        return f"Interval({self.lo}, {self.hi})"

    def __float__(self):
        return float((self.lo + self.hi) / 2)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Interval(other)
        return (
            isinstance(other, Interval)
            and self.lo == other.lo
            and self.hi == other.hi
        )

    def __hash__(self):
        return hash((self.lo, self.hi))

    @property
    def width(self):
        return self.hi - self.lo

    def is_exact(self):
        return self.lo == self.hi

    # -- arithmetic ----------------------------------------------------------

    def __add__(self, other):
        other = as_interval(other)
        return Interval(self.lo + other.lo, self.hi + other.hi)

    __radd__ = __add__

    def __neg__(self):
        return Interval(-self.hi, -self.lo)

    def __sub__(self, other):
        return self + (-as_interval(other))

    def __rsub__(self, other):
        return as_interval(other) + (-self)

    def __mul__(self, other):
        other = as_interval(other)
        products = (
            self.lo * other.lo,
            self.lo * other.hi,
            self.hi * other.lo,
            self.hi * other.hi,
        )
        return Interval(min(products), max(products))

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = as_interval(other)
        if other.contains_zero():
            raise ZeroDivisionError("interval division by interval containing 0")
        inv = Interval(Fraction(1) / other.hi, Fraction(1) / other.lo)
        return self * inv

    def abs(self):
        if self.lo >= 0:
            return self
        if self.hi <= 0:
            return -self
        return Interval(Fraction(0), max(-self.lo, self.hi))

    def square(self):
        a = self.abs()
        return Interval(a.lo * a.lo, a.hi * a.hi)

    # -- predicates ----------------------------------------------------------

    def contains_zero(self):
        return self.lo <= 0 <= self.hi

    def contains(self, q):
        q = _to_fraction(q)
        return self.lo <= q <= self.hi

    def overlaps(self, other):
        other = as_interval(other)
        return self.lo <= other.hi and other.lo <= self.hi

    def compare(self, threshold):
        """Rigorous three-way comparison against an exact rational.

        Returns -1, 0 (only when the interval is the exact point) or +1;
        raises PrecisionError when the interval straddles the threshold.
        """
        t = _to_fraction(threshold)
        if self.hi < t:
            return -1
        if self.lo > t:
            return 1
        if self.lo == self.hi == t:
            return 0
        raise PrecisionError(
            f"interval [{self.lo}, {self.hi}] cannot be separated from {t}"
        )

    def strictly_less(self, other):
        other = as_interval(other)
        if self.hi < other.lo:
            return True
        if self.lo >= other.hi:
            return False
        raise PrecisionError("overlapping intervals cannot be ordered")

    def hull(self, other):
        other = as_interval(other)
        return Interval(min(self.lo, other.lo), max(self.hi, other.hi))


ZERO = Interval(0)
ONE = Interval(1)


def as_interval(x):
    if isinstance(x, Interval):
        return x
    return Interval(_to_fraction(x))


def hull_min(intervals):
    """Sound enclosure of min(x_1, ..., x_k) given enclosures of the x_i."""
    items = list(intervals)
    if not items:
        raise ValueError("hull_min of no intervals")
    return Interval(min(i.lo for i in items), min(i.hi for i in items))


# ---------------------------------------------------------------------------
# complex boxes (used when evaluating elements at complex embeddings)
# ---------------------------------------------------------------------------


class Box:
    """Axis-aligned complex box re + i*im with interval components."""

    __slots__ = ("re", "im")

    def __init__(self, re, im):
        self.re = as_interval(re)
        self.im = as_interval(im)

    def __repr__(self):
        return f"Box({self.re!r}, {self.im!r})"

    def __add__(self, other):
        other = as_box(other)
        return Box(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __mul__(self, other):
        other = as_box(other)
        return Box(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    __rmul__ = __mul__

    def abs_squared(self):
        return self.re.square() + self.im.square()


def as_box(x):
    if isinstance(x, Box):
        return x
    return Box(as_interval(x), ZERO)


def sqrt_interval(x, precision=DEFAULT_PRECISION):
    """Enclosure of sqrt over a non-negative interval, via integer isqrt."""
    if x.lo < 0:
        raise ValueError("sqrt of interval with negative endpoint")
    scale = 1 << (2 * precision)

    def lower(q):
        n = (q.numerator * scale) // q.denominator
        return Fraction(_isqrt(n), 1 << precision)

    def upper(q):
        n = -((-q.numerator * scale) // q.denominator)  # ceil
        r = _isqrt(n)
        if r * r < n:
            r += 1
        return Fraction(r, 1 << precision)

    return Interval(lower(x.lo), upper(x.hi))


def _isqrt(n):
    import math

    return math.isqrt(n)


# ---------------------------------------------------------------------------
# transcendental enclosures (mpmath.iv does the outward rounding)
# ---------------------------------------------------------------------------


def _iv_from_fraction(ctx, q):
    return ctx.mpf(q.numerator) / ctx.mpf(q.denominator)


def _with_iv(precision):
    ctx = mpmath.iv
    ctx.prec = max(precision, 8)
    return ctx


def log_interval(x, precision=DEFAULT_PRECISION):
    """Enclosure of log over a strictly positive interval."""
    x = as_interval(x)
    if x.lo <= 0:
        raise ValueError("log of interval touching 0")
    ctx = _with_iv(precision)
    if x.lo == x.hi == 1:
        return Interval(0)
    lo = _ivmpf_to_fractions(ctx.log(_iv_from_fraction(ctx, x.lo)))[0]
    hi = _ivmpf_to_fractions(ctx.log(_iv_from_fraction(ctx, x.hi)))[1]
    return Interval(lo, hi)


def exp_interval(x, precision=DEFAULT_PRECISION):
    x = as_interval(x)
    ctx = _with_iv(precision)
    lo = _ivmpf_to_fractions(ctx.exp(_iv_from_fraction(ctx, x.lo)))[0]
    hi = _ivmpf_to_fractions(ctx.exp(_iv_from_fraction(ctx, x.hi)))[1]
    return Interval(lo, hi)


def power_interval(base, exponent, precision=DEFAULT_PRECISION):
    """Enclosure of base**exponent for positive rational base, rational exponent."""
    base = _to_fraction(base)
    exponent = _to_fraction(exponent)
    if base <= 0:
        raise ValueError("power_interval needs a positive base")
    if exponent == 0:
        return Interval(1)
    if exponent.denominator == 1:
        return Interval(base ** exponent.numerator)
    log_b = log_interval(Interval(base), precision)
    return exp_interval(log_b * Interval(exponent), precision)
