"""Sparse multivariate polynomials with graded, super and Laurent variables.

A monomial is a tuple of ``(Variable, exponent)`` pairs sorted by variable
name.  Odd variables occur with exponent one and their sorted order is the
Grassmann word of the term; reordering a product applies the Koszul sign.
Negative exponents are only accepted on parameter variables.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cmp_to_key
from itertools import product as cartesian
from typing import Iterable, Mapping, Union

from .scalars import (
    Cyclotomic,
    GaussianRational,
    conjugate_scalar,
    lcm,
    simplify_scalar,
)

EVEN, ODD = "even", "odd"
BASE, FIBER, PARAMETER = "base", "fiber", "parameter"


class ParityError(ValueError):
    pass


class LaurentError(ValueError):
    pass


class UnboundVariableError(KeyError):
    pass


@dataclass(frozen=True)
class Variable:
    name: str
    weight: int = field(default=0, compare=False)
    parity: str = EVEN
    kind: str = field(default=FIBER, compare=False)
    conjugate_of: str | None = field(default=None, compare=False)

    def __post_init__(self):
        if self.parity not in (EVEN, ODD):
            raise ValueError(f"bad parity {self.parity!r}")
        if self.kind not in (BASE, FIBER, PARAMETER):
            raise ValueError(f"bad kind {self.kind!r}")
        if self.kind == PARAMETER and self.weight:
            raise ValueError("parameter variables carry weight 0")

    def __repr__(self):
        return self.name

    def __lt__(self, other: "Variable"):
        return (self.name, self.parity) < (other.name, other.parity)

    @property
    def odd(self) -> bool:
        return self.parity == ODD

    @property
    def is_parameter(self) -> bool:
        return self.kind == PARAMETER

    @property
    def is_conjugated(self) -> bool:
        return self.name.startswith("conj(")

    def conj(self) -> "Variable":
        """The formal conjugate partner (x <-> conj(x))."""
        if self.is_conjugated:
            name = self.name[5:-1]
        else:
            name = f"conj({self.name})"
        return Variable(name, self.weight, self.parity, self.kind, self.name)

    def with_weight(self, weight: int) -> "Variable":
        return Variable(self.name, weight, self.parity, self.kind, self.conjugate_of)

    def renamed(self, name: str) -> "Variable":
        return Variable(name, self.weight, self.parity, self.kind, self.conjugate_of)


Monomial = tuple  # tuple[tuple[Variable, int], ...]
ONE: Monomial = ()


def _mono_mul(m1: Monomial, m2: Monomial):
    """Product of two monomials: (sign, monomial) or (0, None) if it vanishes."""
    if not m1:
        return 1, m2
    if not m2:
        return 1, m1
    merged: dict[Variable, int] = dict(m1)
    for v, e in m2:
        if v in merged:
            if v.odd:
                return 0, None
            e = merged[v] + e
            if e:
                merged[v] = e
            else:
                del merged[v]
        else:
            merged[v] = e
    sign = 1
    odd1 = [v.name for v, _ in m1 if v.odd]
    if odd1:
        for v, _ in m2:
            if v.odd:
                # moving v left past every larger letter of the first word
                if sum(1 for n in odd1 if n > v.name) % 2:
                    sign = -sign
    return sign, tuple(sorted(merged.items(), key=lambda it: it[0].name))


def _check_scalar(c):
    if isinstance(c, int):
        return Fraction(c)
    return c


class Polynomial:
    """Immutable sparse polynomial; ``terms`` maps monomials to scalars."""

    __slots__ = ("terms", "_hash")

    def __init__(self, terms: Mapping | None = None):
        clean = {}
        if terms:
            for m, c in terms.items():
                c = simplify_scalar(_check_scalar(c))
                if c:
                    clean[m] = c
        self.terms: dict = clean
        self._hash = None

    # constructors -----------------------------------------------------
    @classmethod
    def const(cls, c) -> "Polynomial":
        return cls({ONE: c})

    @classmethod
    def var(cls, v: Variable, exponent: int = 1) -> "Polynomial":
        if exponent == 0:
            return cls.const(1)
        if exponent < 0 and not v.is_parameter:
            raise LaurentError(f"negative exponent on non-parameter {v.name}")
        if v.odd and exponent > 1:
            return cls()
        return cls({((v, exponent),): 1})

    @classmethod
    def coerce(cls, value) -> "Polynomial":
        if isinstance(value, Polynomial):
            return value
        if isinstance(value, Variable):
            return cls.var(value)
        return cls.const(value)

    # basic protocol ---------------------------------------------------
    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.terms == other.terms
        if isinstance(other, (int, Fraction, GaussianRational, Cyclotomic)):
            return self.terms == Polynomial.const(other).terms
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    def __repr__(self):
        return f"Polynomial({self})"

    def __str__(self):
        return format_polynomial(self)

    # arithmetic ---------------------------------------------------------
    def __neg__(self):
        return Polynomial({m: -c for m, c in self.terms.items()})

    def __add__(self, other):
        if isinstance(other, RationalExpr):
            return NotImplemented
        other = Polynomial.coerce(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = out[m] + c if m in out else c
        return Polynomial(out)

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, RationalExpr):
            return NotImplemented
        return self + (-Polynomial.coerce(other))

    def __rsub__(self, other):
        return Polynomial.coerce(other) - self

    def __mul__(self, other):
        if isinstance(other, RationalExpr):
            return NotImplemented
        other = Polynomial.coerce(other)
        out: dict = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                sign, m = _mono_mul(m1, m2)
                if not sign:
                    continue
                c = c1 * c2 if sign > 0 else -(c1 * c2)
                out[m] = out[m] + c if m in out else c
        return Polynomial(out)

    def __rmul__(self, other):
        # scalars commute with everything
        return Polynomial.coerce(other) * self

    def __pow__(self, n: int):
        if n < 0:
            if len(self.terms) == 1:
                (m, c), = self.terms.items()
                if all(v.is_parameter for v, _ in m):
                    return Polynomial({tuple((v, e * n) for v, e in m): c ** n})
            raise LaurentError("only parameter monomials may be inverted")
        result = Polynomial.const(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __truediv__(self, other):
        if isinstance(other, (Polynomial, RationalExpr, Variable)):
            return RationalExpr(self, Polynomial.coerce(other) if not isinstance(other, RationalExpr) else other)
        return self * (Fraction(1) / other if isinstance(other, (int, Fraction)) else 1 / other)

    def __rtruediv__(self, other):
        return RationalExpr(Polynomial.coerce(other), self)

    # structure ------------------------------------------------------------
    def variables(self) -> set[Variable]:
        return {v for m in self.terms for v, _ in m}

    def is_constant(self) -> bool:
        return all(m == ONE for m in self.terms)

    def constant_term(self):
        return self.terms.get(ONE, Fraction(0))

    def degree_in(self, variables: Iterable[Variable]) -> int:
        vs = set(variables)
        return max((sum(e for v, e in m if v in vs) for m in self.terms), default=-1)

    def is_odd(self) -> bool:
        """True iff every term carries an odd number of odd letters."""
        return all(sum(1 for v, _ in m if v.odd) % 2 == 1 for m in self.terms)

    def is_even(self) -> bool:
        return all(sum(1 for v, _ in m if v.odd) % 2 == 0 for m in self.terms)

    def map_coefficients(self, fn) -> "Polynomial":
        return Polynomial({m: fn(c) for m, c in self.terms.items()})

    def filter_terms(self, keep) -> "Polynomial":
        return Polynomial({m: c for m, c in self.terms.items() if keep(m)})

    def diff(self, v: Variable) -> "Polynomial":
        """Left derivative with respect to ``v``."""
        out: dict = {}
        for m, c in self.terms.items():
            for idx, (u, e) in enumerate(m):
                if u != v:
                    continue
                rest = list(m)
                sign = 1
                if v.odd:
                    before = sum(1 for w, _ in m[:idx] if w.odd)
                    sign = -1 if before % 2 else 1
                    del rest[idx]
                    coeff = c if sign > 0 else -c
                else:
                    if e == 1:
                        del rest[idx]
                    else:
                        rest[idx] = (u, e - 1)
                    coeff = c * e
                key = tuple(rest)
                out[key] = out[key] + coeff if key in out else coeff
        return Polynomial(out)

    def conjugate(self) -> "Polynomial":
        """Formal conjugation: x <-> conj(x) on variables, i -> -i on scalars."""
        out: dict = {}
        for m, c in self.terms.items():
            p = Polynomial.const(conjugate_scalar(c))
            for v, e in m:
                p = p * Polynomial.var(v.conj(), e)
            for mm, cc in p.terms.items():
                out[mm] = out[mm] + cc if mm in out else cc
        return Polynomial(out)


Scalarish = Union[int, Fraction, GaussianRational, Cyclotomic]


def var(name: str, weight: int = 0, parity: str = EVEN, kind: str = FIBER) -> Polynomial:
    return Polynomial.var(Variable(name, weight, parity, kind))


# ---------------------------------------------------------------------------
# rational expressions with base-variable denominators


class RationalExpr:
    """A quotient ``num / den`` of polynomials, kept in a light canonical form.

    No polynomial gcd is attempted: the form divides out the monomial content
    and rational content, cancels exact divisors, and makes the leading
    denominator coefficient equal to one.  Equality is decided by
    cross-multiplication so it never depends on the canonical form.
    """

    __slots__ = ("num", "den")

    def __init__(self, num, den=None):
        num = Polynomial.coerce(num)
        den = Polynomial.const(1) if den is None else Polynomial.coerce(den)
        if not den:
            raise ZeroDivisionError("RationalExpr with zero denominator")
        self.num, self.den = _canonical_pair(num, den)

    @classmethod
    def coerce(cls, value) -> "RationalExpr":
        if isinstance(value, RationalExpr):
            return value
        return cls(value)

    @property
    def is_polynomial(self) -> bool:
        return self.den == Polynomial.const(1)

    def as_polynomial(self) -> Polynomial:
        if not self.is_polynomial:
            raise ValueError(f"not a polynomial: {self}")
        return self.num

    def __bool__(self):
        return bool(self.num)

    def __eq__(self, other):
        if isinstance(other, (RationalExpr, Polynomial, int, Fraction, GaussianRational)):
            o = RationalExpr.coerce(other)
            return self.num * o.den == o.num * self.den
        return NotImplemented

    def __hash__(self):
        if self.is_polynomial:
            return hash(self.num)
        raise TypeError("non-polynomial RationalExpr is unhashable")

    def __repr__(self):
        return f"RationalExpr({self})"

    def __str__(self):
        if self.is_polynomial:
            return str(self.num)
        return f"({self.num})/({self.den})"

    def __neg__(self):
        return RationalExpr(-self.num, self.den)

    def __add__(self, other):
        o = RationalExpr.coerce(other)
        if self.den == o.den:
            return RationalExpr(self.num + o.num, self.den)
        return RationalExpr(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __sub__(self, other):
        return self + (-RationalExpr.coerce(other))

    def __rsub__(self, other):
        return RationalExpr.coerce(other) - self

    def __mul__(self, other):
        o = RationalExpr.coerce(other)
        return RationalExpr(self.num * o.num, self.den * o.den)

    def __rmul__(self, other):
        return RationalExpr.coerce(other) * self

    def __truediv__(self, other):
        o = RationalExpr.coerce(other)
        if not o.num:
            raise ZeroDivisionError("division by zero expression")
        return RationalExpr(self.num * o.den, self.den * o.num)

    def __rtruediv__(self, other):
        return RationalExpr.coerce(other) / self

    def __pow__(self, n: int):
        if n < 0:
            return RationalExpr(self.den ** -n, self.num ** -n)
        return RationalExpr(self.num ** n, self.den ** n)

    def variables(self) -> set[Variable]:
        return self.num.variables() | self.den.variables()

    def conjugate(self) -> "RationalExpr":
        return RationalExpr(self.num.conjugate(), self.den.conjugate())

    def map_numerator(self, fn) -> "RationalExpr":
        return RationalExpr(fn(self.num), self.den)


Expr = Union[Polynomial, RationalExpr]


def to_expr(value) -> Expr:
    if isinstance(value, (Polynomial, RationalExpr)):
        return value
    return Polynomial.coerce(value)


def simplify_expr(value: Expr) -> Expr:
    if isinstance(value, RationalExpr) and value.is_polynomial:
        return value.num
    return value


def _lex_cmp(m1: Monomial, m2: Monomial) -> int:
    # pure lex, alphabetically first variable most significant
    d1 = {v.name: e for v, e in m1}
    d2 = {v.name: e for v, e in m2}
    for name in sorted(set(d1) | set(d2)):
        a, b = d1.get(name, 0), d2.get(name, 0)
        if a != b:
            return 1 if a > b else -1
    return 0


_lex_key = cmp_to_key(_lex_cmp)


def _leading(p: Polynomial):
    m = max(p.terms, key=_lex_key)
    return m, p.terms[m]


def _monomial_gcd(p: Polynomial) -> dict[Variable, int]:
    common: dict[Variable, int] | None = None
    for m in p.terms:
        d = {v: e for v, e in m if not v.odd}
        if common is None:
            common = d
        else:
            common = {v: min(e, d[v]) for v, e in common.items() if v in d}
        if not common:
            return {}
    return common or {}


def _shift(p: Polynomial, mono: dict[Variable, int]) -> Polynomial:
    if not mono:
        return p
    out = {}
    for m, c in p.terms.items():
        d = dict(m)
        for v, e in mono.items():
            d[v] = d[v] - e
            if not d[v]:
                del d[v]
        out[tuple(sorted(d.items(), key=lambda it: it[0].name))] = c
    return Polynomial(out)


def _canonical_pair(num: Polynomial, den: Polynomial):
    if not num:
        return Polynomial(), Polynomial.const(1)
    if den.is_constant():
        c = den.constant_term()
        return num * (1 / c if not isinstance(c, Fraction) else Fraction(1) / c), Polynomial.const(1)
    # common monomial factor
    gn, gd = _monomial_gcd(num), _monomial_gcd(den)
    common = {v: min(e, gd[v]) for v, e in gn.items() if v in gd}
    num, den = _shift(num, common), _shift(den, common)
    q = exact_divide(num, den)
    if q is not None:
        return q, Polynomial.const(1)
    # normalise leading denominator coefficient
    _, lc = _leading(den)
    inv = Fraction(1) / lc if isinstance(lc, Fraction) else 1 / lc
    return num * inv, den * inv


def exact_divide(p: Polynomial, q: Polynomial) -> Polynomial | None:
    """Quotient p/q when q divides p exactly (even variables only), else None."""
    if not q:
        raise ZeroDivisionError
    if any(v.odd for v in q.variables()):
        return None
    if any(e < 0 for m in q.terms for _, e in m) or any(e < 0 for m in p.terms for _, e in m):
        return None
    lm_q, lc_q = _leading(q)
    rem = p
    quotient = Polynomial()
    steps = 0
    while rem:
        steps += 1
        if steps > 500:
            return None
        lm_r, lc_r = _leading(rem)
        dq = dict(lm_q)
        dr = dict(lm_r)
        if any(v.odd for v in dq):
            return None
        factor = {}
        for v, e in dq.items():
            if dr.get(v, 0) < e:
                return None
        for v, e in dr.items():
            r = e - dq.get(v, 0)
            if r:
                factor[v] = r
        mono = tuple(sorted(factor.items(), key=lambda it: it[0].name))
        t = Polynomial({mono: lc_r / lc_q})
        quotient = quotient + t
        rem = rem - t * q
    return quotient


# ---------------------------------------------------------------------------
# substitution


def _image_power(image, e: int, cache: dict, key):
    ck = (key, e)
    if ck in cache:
        return cache[ck]
    if e >= 0:
        val = image ** e
    else:
        if isinstance(image, Polynomial):
            try:
                val = image ** e
            except LaurentError:
                val = RationalExpr(1, image ** -e)
        else:
            val = image ** e
    cache[ck] = val
    return val


def substitute(f, sigma: Mapping[Variable, object], strict: bool = False,
               check_parity: bool = True) -> Expr:
    """Simultaneous substitution of variables by polynomials or rational expressions.

    Variables missing from ``sigma`` are left in place unless ``strict`` is
    set, in which case they raise :class:`UnboundVariableError`.
    """
    if isinstance(f, RationalExpr):
        num = substitute(f.num, sigma, strict, check_parity)
        den = substitute(f.den, sigma, strict, check_parity)
        return simplify_expr(RationalExpr.coerce(num) / RationalExpr.coerce(den))
    f = Polynomial.coerce(f)
    images: dict[Variable, Expr] = {}
    for v, img in sigma.items():
        img = to_expr(img)
        if check_parity:
            num = img.num if isinstance(img, RationalExpr) else img
            if v.odd and num and not num.is_odd():
                raise ParityError(f"odd variable {v.name} mapped to non-odd {img}")
            if not v.odd and not num.is_even():
                raise ParityError(f"even variable {v.name} mapped to non-even {img}")
        images[v] = img
    rational = any(isinstance(img, RationalExpr) for img in images.values())
    cache: dict = {}
    total = RationalExpr(0) if rational else Polynomial()
    acc: dict = {}
    for m, c in f.terms.items():
        term = Polynomial.const(c)
        if rational:
            term = RationalExpr(term)
        for v, e in m:
            if v in images:
                term = term * _image_power(images[v], e, cache, v)
            else:
                if strict and not v.is_parameter:
                    raise UnboundVariableError(v.name)
                term = term * Polynomial.var(v, e)
            if not term:
                break
        if rational:
            total = total + term
        else:
            for mm, cc in term.terms.items():
                acc[mm] = acc[mm] + cc if mm in acc else cc
    if rational:
        return simplify_expr(total)
    return Polynomial(acc)


def compose_maps(outer: Mapping[Variable, Expr], inner: Mapping[Variable, Expr]) -> dict:
    """Pullback composition: result[v] = outer[v] with inner substituted."""
    return {v: substitute(e, inner) for v, e in outer.items()}


# ---------------------------------------------------------------------------
# gradings and coefficient extraction


def monomial_weight(m: Monomial, weights: Mapping[str, int] | None = None) -> int:
    if weights is None:
        return sum(v.weight * e for v, e in m if not v.is_parameter)
    return sum(weights.get(v.name, 0) * e for v, e in m if not v.is_parameter)


def weight_decompose(f: Polynomial, weights: Mapping[str, int] | None = None) -> dict[int, Polynomial]:
    """Split f into weight-homogeneous components keyed by weight."""
    parts: dict[int, dict] = {}
    for m, c in f.terms.items():
        parts.setdefault(monomial_weight(m, weights), {})[m] = c
    if not parts:
        return {}
    return {w: Polynomial(parts[w]) for w in sorted(parts)}


def is_weight_homogeneous(f: Polynomial, w: int, weights: Mapping[str, int] | None = None) -> bool:
    return all(monomial_weight(m, weights) == w for m in f.terms)


def coeff_extract(f, p: Variable, k: int) -> Expr:
    """Exact coefficient of p^k (k may be negative)."""
    if isinstance(f, RationalExpr):
        if p in f.den.variables():
            raise ValueError(f"{p.name} occurs in a denominator")
        return simplify_expr(RationalExpr(coeff_extract(f.num, p, k), f.den))
    out = {}
    for m, c in f.terms.items():
        e = dict(m).get(p, 0)
        if e == k:
            out[tuple(it for it in m if it[0] != p)] = c
    return Polynomial(out)


def laurent_min_exponent(f, p: Variable) -> int | None:
    """Smallest exponent of p in f; None for the zero polynomial."""
    if isinstance(f, RationalExpr):
        if p in f.den.variables():
            raise ValueError(f"{p.name} occurs in a denominator")
        f = f.num
    if not f:
        return None
    return min(dict(m).get(p, 0) for m in f.terms)


def max_exponent(f, p: Variable) -> int:
    if isinstance(f, RationalExpr):
        f = f.num
    return max((dict(m).get(p, 0) for m in f.terms), default=0)


def truncate(f: Polynomial, variables: Iterable[Variable], max_degree: int) -> Polynomial:
    vs = set(variables)
    return f.filter_terms(lambda m: sum(e for v, e in m if v in vs) <= max_degree)


def reduce_mod_odd(f, power: int = 1) -> Expr:
    """Reduce modulo J^power, J the ideal generated by odd variables."""
    if isinstance(f, RationalExpr):
        return simplify_expr(RationalExpr(reduce_mod_odd(f.num, power), f.den))
    return f.filter_terms(lambda m: sum(1 for v, _ in m if v.odd) < power)


def set_to_zero(f, variables: Iterable[Variable]) -> Expr:
    return substitute(f, {v: Polynomial() for v in variables}, check_parity=False)


# ---------------------------------------------------------------------------
# cyclotomic evaluation


def cyclo_eval(f: Polynomial, xi: Variable, m: int) -> Polynomial:
    """Evaluate xi at the primitive m-th root of unity, conj(xi) at its inverse.

    The result has :class:`Cyclotomic` coefficients.  If f has non-real
    Gaussian coefficients the ambient order is lcm(m, 4), so that the
    imaginary unit is represented inside the same cyclotomic field.
    """
    if m <= 0:
        raise ValueError("root-of-unity order must be positive")
    if isinstance(f, RationalExpr):
        raise TypeError("cyclo_eval expects a polynomial")
    gaussian = any(isinstance(c, GaussianRational) and c.im for c in f.terms.values())
    order = lcm(m, 4) if gaussian else m
    step = order // m
    xbar = xi.conj()
    out: dict = {}
    for mono, c in f.terms.items():
        power = 0
        rest = []
        for v, e in mono:
            if v == xi:
                power += e
            elif v == xbar:
                power -= e
            else:
                rest.append((v, e))
        value = Cyclotomic.zeta(order, power * step) * Cyclotomic.coerce(c, order)
        key = tuple(rest)
        out[key] = out[key] + value if key in out else value
    return Polynomial(out)


# ---------------------------------------------------------------------------
# printing


def _format_scalar(c) -> str:
    if isinstance(c, Fraction):
        return str(c)
    return str(c)


def _needs_parens(s: str) -> bool:
    return ("+" in s[1:] or "-" in s[1:]) and not (s.startswith("(") and s.endswith(")"))


def format_monomial(m: Monomial) -> str:
    parts = []
    for v, e in m:
        parts.append(v.name if e == 1 else f"{v.name}^{e}")
    return "*".join(parts)


def term_sort_key(m: Monomial):
    return (-sum(abs(e) for _, e in m), tuple((v.name, -e) for v, e in m))


def format_polynomial(p: Polynomial) -> str:
    if not p.terms:
        return "0"
    pieces = []
    for m in sorted(p.terms, key=term_sort_key):
        c = p.terms[m]
        mono = format_monomial(m)
        negative = False
        if isinstance(c, Fraction) and c < 0:
            negative, c = True, -c
        elif isinstance(c, GaussianRational) and not c.re and c.im < 0:
            negative, c = True, -c
        cs = _format_scalar(c)
        if _needs_parens(cs):
            cs = f"({cs})"
        if not mono:
            body = cs
        elif cs == "1":
            body = mono
        else:
            body = f"{cs}*{mono}"
        pieces.append(("-" if negative else "+", body))
    first_sign, first = pieces[0]
    out = ("-" if first_sign == "-" else "") + first
    for sign, body in pieces[1:]:
        out += f" {sign} {body}"
    return out


def format_expr(e) -> str:
    return str(e)


def polynomial_from_terms(items: Iterable[tuple[dict, object]]) -> Polynomial:
    """Build a polynomial from (variable->exponent dict, coefficient) pairs."""
    total = Polynomial()
    for exps, c in items:
        t = Polynomial.const(c)
        for v, e in exps.items():
            t = t * Polynomial.var(v, e)
        total = total + t
    return total


def all_monomials(variables: list[Variable], max_degree: int) -> list[Polynomial]:
    """Every monomial (odd letters at most once) of total degree <= max_degree."""
    out = []
    ranges = [range(0, 2) if v.odd else range(0, max_degree + 1) for v in variables]
    for exps in cartesian(*ranges):
        if sum(exps) > max_degree:
            continue
        t = Polynomial.const(1)
        for v, e in zip(variables, exps):
            if e:
                t = t * Polynomial.var(v, e)
        out.append(t)
    return out
