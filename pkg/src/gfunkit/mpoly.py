"""Sparse multivariate polynomials over a number field, with named variables.

These carry the algebraic relations produced by the relation-construction and
relation-search modules: polynomials in the dual coordinates y_1..y_m,
optionally with the adjoined constant coordinate y_0 and the base variable x.
Terms are kept in graded lexicographic order for deterministic output.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import InputError
from .numberfield import (
    QQ,
    NumberFieldElement,
    format_element,
    parse_element,
    parse_field,
)
from .series import grlex_key


class MPoly:
    """A polynomial in the given ordered variables, coefficients in a field."""

    __slots__ = ("variables", "field", "terms")

    def __init__(self, variables, terms=None, field=QQ):
        self.variables = tuple(variables)
        if len(set(self.variables)) != len(self.variables):
            raise InputError("repeated variable names")
        self.field = field
        clean = {}
        nvars = len(self.variables)
        for exps, value in (terms or {}).items():
            exps = tuple(int(e) for e in exps)
            if len(exps) != nvars:
                raise InputError(
                    f"exponent vector {exps} does not match {nvars} variables"
                )
            if any(e < 0 for e in exps):
                raise InputError("negative exponent")
            if isinstance(value, NumberFieldElement):
                if value.field != field:
                    if value.is_rational():
                        value = field.from_rational(value.as_fraction())
                    else:
                        raise InputError("coefficient from a different field")
            else:
                value = field.from_rational(Fraction(value))
            if not value.is_zero():
                clean[exps] = clean.get(exps, field.zero()) + value
                if clean[exps].is_zero():
                    del clean[exps]
        self.terms = clean

    @classmethod
    def zero(cls, variables, field=QQ):
        return cls(variables, {}, field)

    @classmethod
    def constant(cls, value, variables, field=QQ):
        return cls(variables, {(0,) * len(variables): value}, field)

    @classmethod
    def variable(cls, name, variables, field=QQ):
        variables = tuple(variables)
        idx = variables.index(name)
        exps = tuple(1 if i == idx else 0 for i in range(len(variables)))
        return cls(variables, {exps: 1}, field)

    # -- basics ------------------------------------------------------------

    def __repr__(self):
        return f"MPoly({self.to_text()!r})"

    def __eq__(self, other):
        return (
            isinstance(other, MPoly)
            and self.variables == other.variables
            and self.field == other.field
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash((self.variables, self.field, frozenset(self.terms.items())))

    def is_zero(self):
        return not self.terms

    def total_degree(self):
        return max((sum(e) for e in self.terms), default=0)

    def degree_in(self, name):
        idx = self.variables.index(name)
        return max((e[idx] for e in self.terms), default=0)

    def is_homogeneous_in(self, names):
        idxs = [self.variables.index(n) for n in names]
        degrees = {sum(e[i] for i in idxs) for e in self.terms}
        return len(degrees) <= 1

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda kv: grlex_key(kv[0]))

    def _check(self, other):
        if self.variables != other.variables:
            raise InputError("variable sets differ")
        if self.field != other.field:
            raise InputError("coefficient field mismatch")

    # -- arithmetic ----------------------------------------------------------

    def __add__(self, other):
        if isinstance(other, (int, Fraction, NumberFieldElement)):
            other = MPoly.constant(other, self.variables, self.field)
        self._check(other)
        out = dict(self.terms)
        for e, v in other.terms.items():
            out[e] = out.get(e, self.field.zero()) + v
        return MPoly(self.variables, out, self.field)

    __radd__ = __add__

    def __neg__(self):
        return MPoly(
            self.variables, {e: -v for e, v in self.terms.items()}, self.field
        )

    def __sub__(self, other):
        if isinstance(other, (int, Fraction, NumberFieldElement)):
            other = MPoly.constant(other, self.variables, self.field)
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, NumberFieldElement)):
            scalar = other
            return MPoly(
                self.variables,
                {e: v * scalar for e, v in self.terms.items()},
                self.field,
            )
        self._check(other)
        out = {}
        zero = self.field.zero()
        for e1, v1 in self.terms.items():
            for e2, v2 in other.terms.items():
                key = tuple(a + b for a, b in zip(e1, e2))
                out[key] = out.get(key, zero) + v1 * v2
        return MPoly(self.variables, out, self.field)

    __rmul__ = __mul__

    def __pow__(self, n):
        result = MPoly.constant(1, self.variables, self.field)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base if n > 1 else base
            n >>= 1
        return result

    def evaluate(self, assignment):
        """Evaluate at a dict {variable name: field element}."""
        for name in self.variables:
            if name not in assignment:
                raise InputError(f"no value for variable {name}")
        values = [self.field.coerce(assignment[n]) for n in self.variables]
        acc = self.field.zero()
        for exps, coeff in self.terms.items():
            term = coeff
            for v, e in zip(values, exps):
                if e:
                    term = term * v ** e
            acc = acc + term
        return acc

    def map_coefficients(self, fn, field=None):
        field = field or self.field
        return MPoly(
            self.variables, {e: fn(v) for e, v in self.terms.items()}, field
        )

    def normalized(self):
        """Canonical scaling: rational content cleared, leading coeff positive.

        Over a number field the leading (graded-lex largest) coefficient is
        scaled to 1.  Deterministic representative of the scaling class.
        """
        if self.is_zero():
            return self
        lead = max(self.terms, key=grlex_key)
        if self.field.is_rationals:
            from math import gcd

            nums = [v.as_fraction() for v in self.terms.values()]
            lcm_den = 1
            for q in nums:
                lcm_den = lcm_den * q.denominator // gcd(lcm_den, q.denominator)
            ints = [q * lcm_den for q in nums]
            g = 0
            for q in ints:
                g = gcd(g, int(q))
            scale = Fraction(lcm_den, g if g else 1)
            if self.terms[lead].as_fraction() < 0:
                scale = -scale
            return self * scale
        inv = self.terms[lead].inverse()
        return self * inv

    # -- serialization ---------------------------------------------------------

    def to_text(self):
        lines = [
            f"vars={','.join(self.variables)} field={self.field.minpoly_string()}"
        ]
        for exps, v in self.sorted_terms():
            e_text = " ".join(str(e) for e in exps)
            lines.append(f"{e_text} : {format_element(v)}")
        return "\n".join(lines) + "\n"

    def pretty(self):
        """Human-readable rendering, e.g. "y1^2 - y0*y2"."""
        if self.is_zero():
            return "0"
        chunks = []
        for exps, v in self.sorted_terms():
            factors = []
            for name, e in zip(self.variables, exps):
                if e == 1:
                    factors.append(name)
                elif e > 1:
                    factors.append(f"{name}^{e}")
            mono = "*".join(factors) if factors else "1"
            if v.is_rational():
                q = v.as_fraction()
                sign = "-" if q < 0 else "+"
                mag = abs(q)
                coeff = "" if (mag == 1 and factors) else f"{mag}*" if factors else f"{mag}"
                chunks.append((sign, f"{coeff}{mono}"))
            else:
                chunks.append(("+", f"({format_element(v)})*{mono}"))
        first_sign, first = chunks[0]
        text = (first if first_sign == "+" else f"-{first}")
        for sign, chunk in chunks[1:]:
            text += f" {sign} {chunk}"
        return text


def parse_mpoly(text):
    lines = [ln for ln in text.splitlines() if ln.strip() and not ln.startswith("#")]
    if not lines:
        raise InputError("empty polynomial file")
    header = {}
    for part in lines[0].split():
        key, _, value = part.partition("=")
        header[key] = value
    try:
        variables = tuple(header["vars"].split(","))
        field = parse_field(header["field"])
    except KeyError as missing:
        raise InputError(f"polynomial header is missing {missing}") from None
    terms = {}
    for ln in lines[1:]:
        e_text, c_text = ln.rsplit(":", 1)
        exps = tuple(int(tok) for tok in e_text.split())
        terms[exps] = parse_element(c_text, field)
    return MPoly(variables, terms, field)
