"""Truncated relative logarithmic de Rham complex and its normal form.

Setting: formal power series A = K[[z_1, ..., z_nu]] over B = K[[s]] with
s = z_1 * ... * z_mu.  The relation dz_1/z_1 + ... + dz_mu/z_mu = 0 is applied
eagerly, so the relative complex is presented on the generators

    dz_2/z_2, ..., dz_mu/z_mu,  dz_{mu+1}, ..., dz_nu

(the generator dz_1/z_1 is never stored).  On coefficients the differential
acts through the commuting operators

    D_i = z_i d/dz_i - z_1 d/dz_1   for 2 <= i <= mu   (diagonal on monomials),
    D_i = d/dz_i                    for i > mu,

assembled Koszul-style with alternating signs.

Every closed form of degree w = mu - 1 equals  h(s) * (dz_2...dz_mu)/(z_2...z_mu)
plus an exact form, for a unique h in K[[s]]; :func:`relative_reduce` extracts
h.  The proof-driven reduction is cheap: terms carrying a dz_i generator or a
z_{>mu} exponent integrate away, monomials with D_j-weight nonzero for some
log index j are exact, and what survives is precisely the mu-diagonal.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import InputError, OrderInsufficientError
from .numberfield import QQ, format_element, parse_element
from .series import MultiSeries, UniSeries, mu_diagonal, parse_series_header, grlex_key


class LogForm:
    """A form of pure degree in the truncated relative log de Rham complex.

    ``comps`` maps sorted tuples of generator indices (variable indices in
    [2, nu]; index i <= mu means dz_i/z_i, index i > mu means dz_i) to
    coefficient series in nu variables.
    """

    __slots__ = ("nvars", "mu", "order", "field", "degree", "comps")

    def __init__(self, nvars, mu, order, degree, comps=None, field=QQ):
        if not 1 <= mu <= nvars:
            raise InputError(f"mu must lie in [1, {nvars}], got {mu}")
        n_gens = nvars - 1
        if not 0 <= degree <= n_gens:
            raise InputError(
                f"form degree {degree} out of range [0, {n_gens}]"
            )
        self.nvars = nvars
        self.mu = mu
        self.order = order
        self.field = field
        self.degree = degree
        clean = {}
        for gens, series in (comps or {}).items():
            gens = tuple(sorted(int(g) for g in gens))
            if len(gens) != degree:
                raise InputError(
                    f"generator subset {gens} has size {len(gens)}, "
                    f"form degree is {degree}"
                )
            if len(set(gens)) != len(gens):
                raise InputError(f"repeated generator in {gens}")
            for g in gens:
                if not 2 <= g <= nvars:
                    raise InputError(
                        f"generator index {g} out of range [2, {nvars}]"
                    )
            if series.nvars != nvars:
                raise InputError("coefficient series has wrong variable count")
            if series.field != field:
                raise InputError("coefficient field mismatch")
            series = series.truncate(order)
            if not series.is_zero():
                clean[gens] = series
        self.comps = clean

    @classmethod
    def zero(cls, nvars, mu, order, degree, field=QQ):
        return cls(nvars, mu, order, degree, {}, field)

    @classmethod
    def function(cls, series, mu):
        """Degree-0 form from a coefficient series."""
        return cls(series.nvars, mu, series.order, 0, {(): series}, series.field)

    def __repr__(self):
        return (
            f"LogForm(nvars={self.nvars}, mu={self.mu}, order={self.order}, "
            f"degree={self.degree}, comps={len(self.comps)})"
        )

    def __eq__(self, other):
        return (
            isinstance(other, LogForm)
            and (self.nvars, self.mu, self.order, self.degree) ==
                (other.nvars, other.mu, other.order, other.degree)
            and self.field == other.field
            and self.comps == other.comps
        )

    def is_zero(self):
        return not self.comps

    def component(self, gens):
        gens = tuple(sorted(gens))
        return self.comps.get(
            gens, MultiSeries.zero(self.nvars, self.order, self.field)
        )

    def __add__(self, other):
        if (self.nvars, self.mu, self.degree) != (other.nvars, other.mu, other.degree):
            raise InputError("cannot add forms of different shapes")
        if self.field != other.field:
            raise InputError("coefficient field mismatch")
        order = min(self.order, other.order)
        comps = dict(self.comps)
        for gens, series in other.comps.items():
            if gens in comps:
                comps[gens] = comps[gens] + series
            else:
                comps[gens] = series
        return LogForm(self.nvars, self.mu, order, self.degree, comps, self.field)

    def __neg__(self):
        return LogForm(
            self.nvars, self.mu, self.order, self.degree,
            {g: -s for g, s in self.comps.items()}, self.field,
        )

    def __sub__(self, other):
        return self + (-other)

    def scalar_mul(self, scalar):
        return LogForm(
            self.nvars, self.mu, self.order, self.degree,
            {g: s.scalar_mul(scalar) for g, s in self.comps.items()}, self.field,
        )

    def generators(self):
        """All generator indices: log part [2, mu], plain part (mu, nu]."""
        return list(range(2, self.nvars + 1))


def apply_operator(series, i, mu):
    """Apply D_i to a coefficient series (1-based variable index i >= 2)."""
    if i <= mu:
        out = {}
        for exps, v in series.coeffs.items():
            weight = exps[i - 1] - exps[0]
            if weight:
                out[exps] = v * Fraction(weight)
        # the diagonal operator preserves total degree but the Koszul
        # differential contract truncates uniformly to order-1
        return MultiSeries(series.nvars, series.order, out, series.field)
    return series.derivative(i - 1)


def d_rel(form):
    """Koszul differential of the relative complex; output order drops by one."""
    nvars, mu = form.nvars, form.mu
    if form.degree >= nvars - 1:
        raise InputError("d_rel of a top-degree form")
    out_order = max(form.order - 1, 0)
    comps = {}
    zero_series = MultiSeries.zero(nvars, out_order, form.field)
    for gens, series in form.comps.items():
        for i in range(2, nvars + 1):
            if i in gens:
                continue
            image = apply_operator(series, i, mu).truncate(out_order)
            if image.is_zero():
                continue
            sign = (-1) ** sum(1 for g in gens if g < i)
            new_gens = tuple(sorted(gens + (i,)))
            prev = comps.get(new_gens, zero_series)
            comps[new_gens] = prev + (image if sign > 0 else -image)
    return LogForm(nvars, mu, out_order, form.degree + 1, comps, form.field)


def _first_nonclosed_witness(form):
    d = d_rel(form)
    if d.is_zero():
        return None
    gens = min(d.comps)
    series = d.comps[gens]
    exps = min(series.coeffs, key=grlex_key)
    return gens, exps, series.coeffs[exps]


def relative_reduce(form, order=None):
    """The unique h in K[[s]] with  form = h * (dz_2...dz_mu)/(z_2...z_mu) + exact.

    The input must be closed up to truncation and of degree mu - 1.  The
    output is truncated at floor(N/mu); asking for more raises
    OrderInsufficientError with the input order that would be needed.
    """
    w = form.mu - 1
    if form.degree != w:
        raise InputError(
            f"reduction expects a form of degree mu-1 = {w}, got {form.degree}"
        )
    max_order = form.order // form.mu
    if order is None:
        order = max_order
    elif order > max_order:
        raise OrderInsufficientError(
            f"order {order} in s needs input order {order * form.mu}, "
            f"form is truncated at {form.order}",
            required_order=order * form.mu,
        )
    if w < form.nvars - 1:
        witness = _first_nonclosed_witness(form)
        if witness is not None:
            gens, exps, coeff = witness
            raise InputError(
                "form is not closed up to truncation: d(form) has "
                f"coefficient {format_element(coeff)} on generators {gens} "
                f"at exponents {exps}"
            )
    # closed forms: components carrying a dz_i generator or a z_{>mu}
    # exponent are exact, and so are non-diagonal monomials; the class is
    # read off the log component's mu-diagonal
    log_gens = tuple(range(2, form.mu + 1))
    h = mu_diagonal(form.component(log_gens), form.mu)
    return UniSeries(order, {n: v for n, v in h.coeffs.items() if n <= order},
                     form.field)


def compute_gfunction(form, mu):
    """Pipeline name for :func:`relative_reduce` (same contract)."""
    if mu != form.mu:
        raise InputError(
            f"form was built with mu={form.mu}, reduction requested mu={mu}"
        )
    return relative_reduce(form)


def diagonal_form(h, nvars, mu, order, field=QQ):
    """The form h(s) * (dz_2...dz_mu)/(z_2...z_mu) for h in K[[t]]."""
    coeffs = {}
    for n, v in h.coeffs.items():
        if n * mu > order:
            continue
        exps = tuple(n if i < mu else 0 for i in range(nvars))
        coeffs[exps] = v
    series = MultiSeries(nvars, order, coeffs, field)
    gens = tuple(range(2, mu + 1))
    return LogForm(nvars, mu, order, mu - 1, {gens: series}, field)


# ---------------------------------------------------------------------------
# file format: series header extended with "degree=r mu=m"; one line per
# (generator subset, term): "2,3 | e_1 ... e_nu : coeff", "-" for no generators
# ---------------------------------------------------------------------------


def serialize_form(form):
    lines = [
        f"vars={form.nvars} order={form.order} "
        f"field={form.field.minpoly_string()} degree={form.degree} mu={form.mu}"
    ]
    for gens in sorted(form.comps):
        series = form.comps[gens]
        gen_text = ",".join(str(g) for g in gens) if gens else "-"
        for exps, v in series.terms():
            e_text = " ".join(str(e) for e in exps)
            lines.append(f"{gen_text} | {e_text} : {format_element(v)}")
    return "\n".join(lines) + "\n"


def parse_form(text):
    lines = [ln for ln in text.splitlines() if ln.strip() and not ln.startswith("#")]
    if not lines:
        raise InputError("empty form file")
    header = {}
    for part in lines[0].strip().split():
        key, _, value = part.partition("=")
        header[key] = value
    try:
        nvars = int(header["vars"])
        order = int(header["order"])
        degree = int(header["degree"])
        mu = int(header["mu"])
    except KeyError as missing:
        raise InputError(f"form header is missing {missing}") from None
    _, _, field = parse_series_header(
        f"vars={header['vars']} order={header['order']} field={header['field']}"
    )
    comps = {}
    for ln in lines[1:]:
        if "|" not in ln or ":" not in ln:
            raise InputError(f"malformed form line {ln!r}")
        gen_text, rest = ln.split("|", 1)
        e_text, c_text = rest.rsplit(":", 1)
        gen_text = gen_text.strip()
        gens = () if gen_text == "-" else tuple(
            int(tok) for tok in gen_text.split(",")
        )
        exps = tuple(int(tok) for tok in e_text.split())
        coeff = parse_element(c_text, field)
        comps.setdefault(gens, {})[exps] = coeff
    built = {
        gens: MultiSeries(nvars, order, coeffs, field)
        for gens, coeffs in comps.items()
    }
    return LogForm(nvars, mu, order, degree, built, field)
