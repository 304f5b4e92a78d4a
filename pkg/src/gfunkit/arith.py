"""Places, valuations, absolute values and logarithmic Weil heights.

Normalization.  For a field K of degree d over Q the absolute values are
product-formula normalized:

* at a finite place P over p with residue degree f:  log|x|_P = -(f/d) * v_P(x) * log p,
  where v_P is the valuation with v_P(uniformizer) = 1;
* at an archimedean place given by an embedding s with local degree
  d_v (1 for a real embedding, 2 for a conjugate pair):
  log|x|_v = (d_v/d) * log|s(x)|.

With these weights  sum_v log|x|_v = 0  for nonzero x, and the logarithmic
Weil height is  h(x) = sum_v max(0, log|x|_v).

Finite places are represented by the chosen irreducible factor of the minimal
polynomial m modulo p.  This model is exact whenever p does not divide the
index [O_K : Z[theta]], which is checked with the Dedekind criterion; the
rare index-divisible primes raise :class:`UnsupportedFieldError` rather than
silently producing wrong splitting data.

Finite-place quantities are exact rational bookkeeping (a multiple of log p);
archimedean quantities are rigorous intervals with on-demand precision.
"""

from __future__ import annotations

import math
from fractions import Fraction

import sympy

from .errors import InputError, UnsupportedFieldError
from .intervals import (
    DEFAULT_PRECISION,
    Box,
    Interval,
    ZERO,
    log_interval,
    power_interval,
    sqrt_interval,
)
from .numberfield import (
    QQ,
    NumberField,
    NumberFieldElement,
    gcd_int,
    poly_eval,
    poly_resultant_int,
    poly_trim,
)

INFINITY = math.inf


def is_prime(p):
    return sympy.isprime(p)


def padic_valuation(q, p):
    """v_p(q) for a rational q, with v_p(0) = +infinity.

    >>> padic_valuation(Fraction(1, 3), 3)
    -1
    >>> padic_valuation(12, 2)
    2
    >>> padic_valuation(0, 5)
    inf
    """
    if not is_prime(p):
        raise InputError(f"{p} is not prime")
    q = q if isinstance(q, Fraction) else Fraction(q)
    if q == 0:
        return INFINITY
    v = 0
    num = q.numerator
    while num % p == 0:
        num //= p
        v += 1
    den = q.denominator
    while den % p == 0:
        den //= p
        v -= 1
    return v


# ---------------------------------------------------------------------------
# exact sums of logarithms of primes
# ---------------------------------------------------------------------------


class LogSum:
    """An exact linear combination  sum_p c_p * log(p)  plus an interval rest.

    The dictionary keys are primes, the coefficients are Fractions; whatever
    cannot be kept symbolic (archimedean values of irrational elements) is
    accumulated in ``rest``.  The sum is exact iff ``rest`` is the point 0.
    """

    __slots__ = ("terms", "rest")

    def __init__(self, terms=None, rest=ZERO):
        self.terms = {p: c for p, c in (terms or {}).items() if c != 0}
        self.rest = rest

    @classmethod
    def zero(cls):
        return cls()

    @classmethod
    def from_log_of_rational(cls, q, coeff=Fraction(1)):
        """coeff * log(q) for a positive rational q, split over primes."""
        q = q if isinstance(q, Fraction) else Fraction(q)
        if q <= 0:
            raise InputError("logarithm of a non-positive rational")
        terms = {}
        for n, sign in ((q.numerator, 1), (q.denominator, -1)):
            if n == 1:
                continue
            for p, e in sympy.factorint(n).items():
                terms[p] = terms.get(p, Fraction(0)) + sign * e * coeff
        return cls(terms)

    @classmethod
    def from_interval(cls, iv):
        return cls({}, iv)

    def __add__(self, other):
        terms = dict(self.terms)
        for p, c in other.terms.items():
            terms[p] = terms.get(p, Fraction(0)) + c
        return LogSum(terms, self.rest + other.rest)

    def scale(self, c):
        c = c if isinstance(c, Fraction) else Fraction(c)
        return LogSum({p: v * c for p, v in self.terms.items()}, self.rest * c)

    def is_exact_zero(self):
        return not self.terms and self.rest.lo == self.rest.hi == 0

    def is_exact(self):
        return self.rest.is_exact()

    def enclosure(self, precision=DEFAULT_PRECISION):
        total = self.rest
        for p, c in sorted(self.terms.items()):
            total = total + log_interval(Interval(p), precision) * Interval(c)
        return total

    def __float__(self):
        return float(self.enclosure())

    def __repr__(self):
        parts = [f"{c}*log({p})" for p, c in sorted(self.terms.items())]
        if not self.rest.contains_zero() or not self.rest.is_exact():
            parts.append(f"[{self.rest.lo}, {self.rest.hi}]")
        return "LogSum(" + (" + ".join(parts) if parts else "0") + ")"


def log_plus(t, precision=DEFAULT_PRECISION):
    """log max(1, t) as a rigorous interval; exact zero for t <= 1.

    Accepts a rational or an :class:`Interval`.
    """
    if isinstance(t, Interval):
        if t.lo < 0:
            raise InputError("log_plus of a negative quantity")
        lo = ZERO if t.lo <= 1 else log_interval(Interval(t.lo), precision)
        hi = ZERO if t.hi <= 1 else log_interval(Interval(t.hi), precision)
        return Interval(lo.lo, hi.hi)
    t = t if isinstance(t, Fraction) else Fraction(t)
    if t < 0:
        raise InputError("log_plus of a negative quantity")
    if t <= 1:
        return Interval(0)
    return log_interval(Interval(t), precision)


def log_plus_sum_of_rational(q):
    """Exact LogSum for log max(1, |q|)."""
    q = abs(q if isinstance(q, Fraction) else Fraction(q))
    if q <= 1:
        return LogSum.zero()
    return LogSum.from_log_of_rational(q)


# ---------------------------------------------------------------------------
# places
# ---------------------------------------------------------------------------


class Place:
    """An archimedean embedding or a finite prime of a number field."""

    __slots__ = ("field", "kind", "p", "factor", "e", "f", "root_index", "is_real")

    def __init__(self, field, kind, p=None, factor=None, e=None, f=None,
                 root_index=None, is_real=None):
        self.field = field
        self.kind = kind  # "arch" | "finite"
        self.p = p
        self.factor = factor  # monic factor of m mod p, tuple of ints in [0, p)
        self.e = e
        self.f = f
        self.root_index = root_index
        self.is_real = is_real

    @property
    def is_finite(self):
        return self.kind == "finite"

    @property
    def local_degree(self):
        if self.is_finite:
            return self.e * self.f
        return 1 if self.is_real else 2

    @property
    def weight(self):
        """Local degree over global degree; the product-formula weight."""
        return Fraction(self.local_degree, self.field.degree)

    def label(self):
        if self.is_finite:
            if self.field.is_rationals:
                return str(self.p)
            return f"{self.p}#{_factor_tag(self.factor)}"
        if self.field.is_rationals:
            return "inf"
        return f"inf{self.root_index}"

    def __repr__(self):
        return f"Place({self.label()} of {self.field!r})"

    def __eq__(self, other):
        return (
            isinstance(other, Place)
            and self.field == other.field
            and self.kind == other.kind
            and self.p == other.p
            and self.factor == other.factor
            and self.root_index == other.root_index
        )

    def __hash__(self):
        return hash((self.field, self.kind, self.p, self.factor, self.root_index))


def _factor_tag(factor):
    return "x".join(str(c) for c in factor)


def archimedean_places(field):
    """All archimedean places, canonically ordered.

    Real embeddings come first (in increasing root order), then one place per
    conjugate pair of complex embeddings.
    """
    if field.is_rationals:
        return [Place(field, "arch", root_index=0, is_real=True)]
    roots = _field_roots(field)
    places = []
    for idx, r in enumerate(roots):
        if r.is_real:
            places.append(Place(field, "arch", root_index=idx, is_real=True))
    n_real = sum(1 for r in roots if r.is_real)
    for k in range(n_real, len(roots)):
        # conjugate pairs are adjacent; keep the representative with Im > 0
        if (k - n_real) % 2 == 1:
            places.append(Place(field, "arch", root_index=k, is_real=False))
    return places


def finite_places(field, p):
    """The places of K over the rational prime p, canonically ordered."""
    if not is_prime(p):
        raise InputError(f"{p} is not prime")
    if field.is_rationals:
        return [Place(field, "finite", p=p, factor=(0, 1), e=1, f=1)]
    factors = _factor_mod_p(field, p)
    _check_dedekind(field, p, factors)
    places = []
    for fac, mult in factors:
        places.append(
            Place(field, "finite", p=p, factor=fac, e=mult, f=len(fac) - 1)
        )
    return places


def place_from_label(field, label):
    label = label.strip()
    if label in ("inf", "oo", "infinity"):
        places = archimedean_places(field)
        return places[0]
    if label.startswith("inf"):
        idx = int(label[3:])
        for pl in archimedean_places(field):
            if pl.root_index == idx:
                return pl
        raise InputError(f"no archimedean place with index {idx}")
    if "#" in label:
        p_text, tag = label.split("#")
        for pl in finite_places(field, int(p_text)):
            if _factor_tag(pl.factor) == tag:
                return pl
        raise InputError(f"no finite place with label {label}")
    p = int(label)
    places = finite_places(field, p)
    if len(places) > 1:
        raise InputError(
            f"prime {p} splits; use one of "
            + ", ".join(pl.label() for pl in places)
        )
    return places[0]


# -- factorization of m mod p and the Dedekind index criterion ----------------


def _factor_mod_p(field, p):
    import warnings

    x = sympy.Symbol("x")
    poly = sympy.Poly([int(c) for c in reversed(field.minpoly)], x, modulus=p)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        _, raw = poly.factor_list()
    factors = []
    for fac, mult in raw:
        coeffs = [int(c) % p for c in reversed(fac.all_coeffs())]
        factors.append((tuple(coeffs), mult))
    factors.sort(key=lambda fm: (len(fm[0]), fm[0]))
    return factors


def _modp_mul(a, b, p):
    out = [0] * (len(a) + len(b) - 1) if a and b else []
    for i, x in enumerate(a):
        if x == 0:
            continue
        for j, y in enumerate(b):
            out[i + j] = (out[i + j] + x * y) % p
    while out and out[-1] == 0:
        out.pop()
    return out


def _modp_divmod(a, b, p):
    a = list(a)
    while a and a[-1] % p == 0:
        a.pop()
    b = list(b)
    while b and b[-1] % p == 0:
        b.pop()
    if not b:
        raise ZeroDivisionError
    inv = pow(b[-1], -1, p)
    q = [0] * max(0, len(a) - len(b) + 1)
    while len(a) >= len(b):
        c = a[-1] * inv % p
        shift = len(a) - len(b)
        q[shift] = c
        for i, y in enumerate(b):
            a[i + shift] = (a[i + shift] - c * y) % p
        a.pop()
        while a and a[-1] % p == 0:
            a.pop()
    return q, a


def _modp_gcd(a, b, p):
    a, b = list(a), list(b)
    while b:
        _, r = _modp_divmod(a, b, p)
        a, b = b, r
    if a:
        inv = pow(a[-1], -1, p)
        a = [c * inv % p for c in a]
    return a


def _int_poly_mul(a, b):
    out = [0] * (len(a) + len(b) - 1) if a and b else []
    for i, x in enumerate(a):
        if x == 0:
            continue
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out


def _check_dedekind(field, p, factors):
    """Raise unless p is prime to the index of Z[theta] in O_K.

    Standard criterion: with m = prod g_i^{e_i} mod p, take integer lifts of
    g = prod g_i and h = prod g_i^{e_i - 1}; then p does not divide the index
    iff gcd((g*h - m)/p, g, h) = 1 over F_p.  Lifts are multiplied over Z.
    """
    m_int = [int(c) for c in field.minpoly]
    g_bar = [1]
    h_bar = [1]
    for fac, mult in factors:
        g_bar = _int_poly_mul(g_bar, list(fac))
        for _ in range(mult - 1):
            h_bar = _int_poly_mul(h_bar, list(fac))
    repeated = _modp_gcd([c % p for c in g_bar], [c % p for c in h_bar], p)
    if len(repeated) <= 1:
        return
    gh = _int_poly_mul(g_bar, h_bar)
    diff = [0] * max(len(gh), len(m_int))
    for i, c in enumerate(gh):
        diff[i] += c
    for i, c in enumerate(m_int):
        diff[i] -= c
    if any(c % p for c in diff):
        raise AssertionError("factorization mod p does not multiply back")
    f_bar = [(c // p) % p for c in diff]
    while f_bar and f_bar[-1] == 0:
        f_bar.pop()
    if len(_modp_gcd(f_bar, repeated, p)) > 1:
        raise UnsupportedFieldError(
            f"prime {p} divides the index of Z[theta] for "
            f"{field!r}; places over {p} are outside the supported model"
        )


# -- Hensel lifting of the block factorization --------------------------------


def _modq_divmod(a, b, q):
    """Division with remainder modulo q for monic divisor b."""
    a = [c % q for c in a]
    while a and a[-1] == 0:
        a.pop()
    b = [c % q for c in b]
    assert b and b[-1] == 1, "divisor must be monic"
    quo = [0] * max(0, len(a) - len(b) + 1)
    while len(a) >= len(b):
        c = a[-1] % q
        shift = len(a) - len(b)
        quo[shift] = c
        for i, y in enumerate(b):
            a[i + shift] = (a[i + shift] - c * y) % q
        a.pop()
        while a and a[-1] == 0:
            a.pop()
    return quo, a


def _modq_mul(a, b, q):
    out = [0] * (len(a) + len(b) - 1) if a and b else []
    for i, x in enumerate(a):
        if x == 0:
            continue
        for j, y in enumerate(b):
            out[i + j] = (out[i + j] + x * y) % q
    while out and out[-1] == 0:
        out.pop()
    return out


def _modq_add(a, b, q):
    out = [0] * max(len(a), len(b))
    for i, c in enumerate(a):
        out[i] = (out[i] + c) % q
    for i, c in enumerate(b):
        out[i] = (out[i] + c) % q
    while out and out[-1] == 0:
        out.pop()
    return out


def _modq_sub(a, b, q):
    return _modq_add(a, [(-c) % q for c in b], q)


def _modp_xgcd(a, b, p):
    r0, r1 = list(a), list(b)
    s0, s1 = [1], []
    t0, t1 = [], [1]
    while r1:
        quo, rem = _modp_divmod(r0, r1, p)
        r0, r1 = r1, rem
        s0, s1 = s1, _modq_sub(s0, _modq_mul(quo, s1, p), p)
        t0, t1 = t1, _modq_sub(t0, _modq_mul(quo, t1, p), p)
    inv = pow(r0[-1], -1, p)
    return (
        [c * inv % p for c in r0],
        [c * inv % p for c in s0],
        [c * inv % p for c in t0],
    )


def _hensel_pair(f, g, h, s, t, p, target_exp):
    """Lift f = g*h from mod p to mod p**target_exp (quadratically)."""
    exp = 1
    while exp < target_exp:
        exp = min(2 * exp, target_exp)
        q = p ** exp
        e = _modq_sub([c % q for c in f], _modq_mul(g, h, q), q)
        te = _modq_mul(t, e, q)
        _, r = _modq_divmod(te, g, q)
        g = _modq_add(g, r, q)
        quo, rem = _modq_divmod([c % q for c in f], g, q)
        assert not rem, "Hensel step lost the factorization"
        h = quo
        b = _modq_sub(
            _modq_add(_modq_mul(s, g, q), _modq_mul(t, h, q), q), [1], q
        )
        one_minus_b = _modq_sub([1], b, q)
        t_new_full = _modq_mul(t, one_minus_b, q)
        quo2, t_new = _modq_divmod(t_new_full, g, q)
        s_new = _modq_add(
            _modq_mul(s, one_minus_b, q), _modq_mul(quo2, h, q), q
        )
        s, t = s_new, t_new
    return g, h


def _hensel_blocks(m_int, blocks, p, target_exp):
    """Lift m = prod(blocks) from mod p to mod p**target_exp, blockwise."""
    q = p ** target_exp
    if len(blocks) == 1:
        return [[c % q for c in m_int]]
    g = list(blocks[0])
    h = [1]
    for blk in blocks[1:]:
        h = _modp_mul(h, list(blk), p)
    gcd, s_h, t_g = _modp_xgcd(h, g, p)
    assert len(gcd) == 1, "blocks are not coprime mod p"
    # s_h * h + t_g * g = 1; map to (s, t) with s*g + t*h = 1
    g_lift, h_lift = _hensel_pair(m_int, g, h, t_g, s_h, p, target_exp)
    return [g_lift] + _hensel_blocks(h_lift, blocks[1:], p, target_exp)


# -- valuations ----------------------------------------------------------------


def valuation(x, place):
    """The valuation v_P(x) at a finite place, with v_P(0) = +infinity."""
    if not place.is_finite:
        raise InputError("valuation is defined at finite places only")
    if isinstance(x, (int, Fraction)):
        x = place.field.from_rational(x)
    if x.field != place.field:
        raise InputError("element and place live over different fields")
    if x.is_zero():
        return INFINITY
    p = place.p
    if place.field.is_rationals:
        return padic_valuation(x.as_fraction(), p)
    if x.is_rational():
        return place.e * padic_valuation(x.as_fraction(), p)
    coeffs = x.as_polynomial()
    c = 1
    for q in coeffs:
        d = q.denominator
        g = gcd_int(c, d)
        c = c // g * d
    y_int = [int(q * c) for q in coeffs]
    v_c = padic_valuation(Fraction(c), p)
    v_y = _integral_valuation(y_int, place)
    return v_y - place.e * v_c


def _integral_valuation(y_int, place):
    field, p = place.field, place.p
    m_int = [int(c) for c in field.minpoly]
    res_total = poly_resultant_int(m_int, y_int)
    assert res_total != 0, "nonzero element with vanishing norm"
    t_total = padic_valuation(Fraction(abs(res_total)), p)
    if t_total == 0:
        return 0
    factors = _factor_mod_p(field, p)
    _check_dedekind(field, p, factors)
    target_exp = t_total + 4
    blocks = []
    for fac, mult in factors:
        blk = list(fac)
        for _ in range(mult - 1):
            blk = _modp_mul(blk, list(fac), p)
        blocks.append(blk)
    lifted = _hensel_blocks(m_int, blocks, p, target_exp)
    q = p ** target_exp
    vals = []
    for blk in lifted:
        if len(blk) == 1:
            vals.append(0)
            continue
        res = poly_resultant_int(blk, [c % q for c in y_int])
        v = padic_valuation(Fraction(abs(res % q) if res % q else 0), p) \
            if res % q else INFINITY
        if v is INFINITY or v >= target_exp:
            raise AssertionError("insufficient Hensel precision for valuation")
        vals.append(v)
    if sum(vals) != t_total:
        raise AssertionError("blockwise valuations do not sum to the norm valuation")
    this_idx = None
    for i, (fac, mult) in enumerate(factors):
        if fac == place.factor:
            this_idx = i
    assert this_idx is not None, "place factor not found in factorization"
    v_block = vals[this_idx]
    if v_block % place.f:
        raise AssertionError("norm valuation not divisible by residue degree")
    return v_block // place.f


# -- embeddings and archimedean data -------------------------------------------

_ROOT_CACHE = {}


def _field_roots(field):
    if field in _ROOT_CACHE:
        return _ROOT_CACHE[field]
    x = sympy.Symbol("x")
    expr = sum(
        int(c) * x ** i for i, c in enumerate(field.minpoly)
    )
    roots = [
        sympy.rootof(expr, i, radicals=False) for i in range(field.degree)
    ]
    _ROOT_CACHE[field] = roots
    return roots


def root_box(field, root_index, precision=DEFAULT_PRECISION):
    """Certified box around the root_index-th root of the minimal polynomial."""
    if field.is_rationals:
        q = -field.minpoly[0]
        return Box(Interval(q), ZERO)
    root = _field_roots(field)[root_index]
    tol = sympy.Rational(1, 2 ** precision)
    if root.is_real:
        c = root.eval_rational(tol)
        c = Fraction(c.p, c.q)
        eps = Fraction(1, 2 ** precision)
        return Box(Interval(c - eps, c + eps), ZERO)
    approx = root.eval_rational(tol, tol)
    re = sympy.re(approx)
    im = sympy.im(approx)
    re = Fraction(re.p, re.q)
    im = Fraction(im.p, im.q)
    eps = Fraction(1, 2 ** precision)
    return Box(Interval(re - eps, re + eps), Interval(im - eps, im + eps))


def embed(x, place, precision=DEFAULT_PRECISION):
    """Box enclosure of the image of x under an archimedean place's embedding."""
    if place.is_finite:
        raise InputError("embed expects an archimedean place")
    if isinstance(x, (int, Fraction)):
        x = place.field.from_rational(x)
    if x.is_rational():
        return Box(Interval(x.as_fraction()), ZERO)
    box = root_box(place.field, place.root_index, precision)
    acc = Box(ZERO, ZERO)
    for coef in reversed(x.coords):
        acc = acc * box + Box(Interval(coef), ZERO)
    return acc


def _arch_abs(x, place, precision):
    """Interval for |s(x)| at an archimedean place (unweighted)."""
    if isinstance(x, (int, Fraction)):
        return Interval(abs(Fraction(x)))
    if x.is_rational():
        return Interval(abs(x.as_fraction()))
    prec = precision
    for _ in range(6):
        box = embed(x, place, prec)
        sq = box.abs_squared()
        if not x.is_zero() and sq.lo <= 0:
            prec *= 2
            continue
        return sqrt_interval(sq, prec)
    box = embed(x, place, prec)
    return sqrt_interval(box.abs_squared(), prec)


def log_abs(x, place, precision=DEFAULT_PRECISION):
    """Normalized log|x|_v as a LogSum (exact at finite places)."""
    if isinstance(x, (int, Fraction)):
        x = place.field.coerce(Fraction(x))
    if x.is_zero():
        raise InputError("log|0| is -infinity; test for zero first")
    if place.is_finite:
        v = valuation(x, place)
        coeff = -Fraction(place.f, place.field.degree) * Fraction(v)
        return LogSum({place.p: coeff}) if coeff else LogSum.zero()
    w = place.weight
    if x.is_rational():
        q = abs(x.as_fraction())
        return LogSum.from_log_of_rational(q).scale(w)
    mag = _arch_abs(x, place, precision)
    return LogSum.from_interval(log_interval(mag, precision) * Interval(w))


def abs_value(x, place, precision=DEFAULT_PRECISION):
    """The normalized absolute value |x|_v as a rigorous interval.

    Exact (a point interval) whenever the value is rational: at finite places
    with integral exponent, and at archimedean places for rational x of a
    degree-1 field.
    """
    if isinstance(x, (int, Fraction)):
        x = place.field.coerce(Fraction(x))
    if x.field != place.field:
        raise InputError("element and place live over different fields")
    if x.is_zero():
        return Interval(0)
    if place.is_finite:
        v = valuation(x, place)
        exponent = -Fraction(place.f, place.field.degree) * Fraction(v)
        return power_interval(Fraction(place.p), exponent, precision)
    w = place.weight
    mag = _arch_abs(x, place, precision)
    if w == 1:
        return mag
    if mag.is_exact() and mag.lo > 0:
        return power_interval(mag.lo, w, precision)
    if mag.lo <= 0:
        return Interval(0, power_interval(mag.hi, w, precision).hi)
    lo = power_interval(mag.lo, w, precision)
    hi = power_interval(mag.hi, w, precision)
    return Interval(lo.lo, hi.hi)


# -- heights and the product formula -------------------------------------------


def _support_primes(x):
    """Primes p at which some finite place can see |x|_v != 1."""
    field = x.field
    if field.is_rationals:
        q = x.as_fraction()
        support = set()
        for n in (abs(q.numerator), q.denominator):
            if n > 1:
                support.update(sympy.factorint(n))
        return sorted(support)
    coeffs = x.as_polynomial()
    c = 1
    for qq in coeffs:
        d = qq.denominator
        g = gcd_int(c, d)
        c = c // g * d
    y_int = [int(qq * c) for qq in coeffs]
    m_int = [int(v) for v in field.minpoly]
    res = abs(poly_resultant_int(m_int, y_int))
    support = set()
    for n in (c, res):
        if n > 1:
            support.update(sympy.factorint(n))
    return sorted(support)


def all_places_for(x):
    """Archimedean places plus every finite place in the support of x."""
    field = x.field
    places = list(archimedean_places(field))
    for p in _support_primes(x):
        places.extend(finite_places(field, p))
    return places


def product_formula_sum(x, precision=DEFAULT_PRECISION):
    """sum_v log|x|_v over all places; exactly zero for nonzero x."""
    if isinstance(x, (int, Fraction)):
        x = QQ.from_rational(Fraction(x))
    if x.is_zero():
        raise InputError("the product formula concerns nonzero elements")
    total = LogSum.zero()
    for place in all_places_for(x):
        total = total + log_abs(x, place, precision)
    return total


def weil_height(x, precision=DEFAULT_PRECISION):
    """Logarithmic Weil height h(x) = sum_v log^+ |x|_v as a LogSum.

    Exact for rational x; for number field elements the finite part is exact
    and the archimedean part is a rigorous interval.

    >>> float(weil_height(Fraction(2, 3)))  # doctest: +ELLIPSIS
    1.09861...
    """
    if isinstance(x, (int, Fraction)):
        x = QQ.from_rational(Fraction(x))
    if x.is_zero():
        return LogSum.zero()
    total = LogSum.zero()
    field = x.field
    for p in _support_primes(x):
        for place in finite_places(field, p):
            v = valuation(x, place)
            if v is not INFINITY and v < 0:
                coeff = -Fraction(place.f, field.degree) * Fraction(v)
                total = total + LogSum({p: coeff})
    for place in archimedean_places(field):
        if x.is_rational():
            q = abs(x.as_fraction())
            if q > 1:
                total = total + LogSum.from_log_of_rational(q).scale(place.weight)
        else:
            mag = _arch_abs(x, place, precision)
            lp = log_plus(mag, precision) * Interval(place.weight)
            total = total + LogSum.from_interval(lp)
    return total


def mahler_height(field, precision=DEFAULT_PRECISION):
    """h(theta) computed from the Mahler measure of the minimal polynomial.

    Independent route used as an oracle for :func:`weil_height` on field
    generators: h = (1/d) * (log|lead| + sum_roots log^+ |root|).
    """
    d = field.degree
    if d == 1:
        return weil_height(Fraction(-field.minpoly[0]), precision)
    total = Interval(0)
    for idx in range(d):
        box = root_box(field, idx, precision)
        mag = sqrt_interval(box.abs_squared(), precision)
        total = total + log_plus(mag, precision)
    return LogSum.from_interval(total * Interval(Fraction(1, d)))
