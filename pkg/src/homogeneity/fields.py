"""Vector fields as first-order derivations: brackets, weights and nilpotent flows."""

from __future__ import annotations

from fractions import Fraction
from math import factorial
from typing import Mapping

from .polynomial import (
    Polynomial,
    RationalExpr,
    Variable,
    simplify_expr,
    substitute,
    to_expr,
)
from .structures import ActionFamily, CheckResult, GradedSignature, reals


def diff_expr(e, v: Variable):
    """Derivative of a polynomial or rational expression."""
    if isinstance(e, RationalExpr):
        dn, dd = e.num.diff(v), e.den.diff(v)
        if not dd:
            return simplify_expr(RationalExpr(dn, e.den))
        return simplify_expr(RationalExpr(dn * e.den - e.num * dd, e.den * e.den))
    return to_expr(e).diff(v)


class VectorField:
    """Keyed coordinate -> coefficient; missing coordinates have coefficient 0."""

    __slots__ = ("components",)

    def __init__(self, components: Mapping[Variable, object] | None = None):
        comps = {}
        for v, e in (components or {}).items():
            e = simplify_expr(to_expr(e))
            if e:
                comps[v] = e
        self.components: dict[Variable, object] = dict(sorted(comps.items(), key=lambda it: it[0].name))

    def __getitem__(self, v: Variable):
        return self.components.get(v, Polynomial())

    def __bool__(self):
        return bool(self.components)

    def __eq__(self, other):
        if not isinstance(other, VectorField):
            return NotImplemented
        keys = set(self.components) | set(other.components)
        return all(to_expr(self[k]) == to_expr(other[k]) for k in keys)

    def __add__(self, other: "VectorField") -> "VectorField":
        keys = set(self.components) | set(other.components)
        return VectorField({k: to_expr(self[k]) + to_expr(other[k]) for k in keys})

    def __sub__(self, other: "VectorField") -> "VectorField":
        return self + other.scale(-1)

    def __neg__(self):
        return self.scale(-1)

    def scale(self, c) -> "VectorField":
        return VectorField({k: to_expr(e) * c for k, e in self.components.items()})

    def __call__(self, f):
        """Apply the derivation to a function."""
        out = Polynomial()
        for v, e in self.components.items():
            d = diff_expr(f, v)
            if d:
                out = to_expr(out) + to_expr(e) * d
        return simplify_expr(to_expr(out))

    def __str__(self):
        if not self.components:
            return "0"
        out = ""
        for v, e in self.components.items():
            s = str(e)
            sign = "+"
            if " " in s:
                s = f"({s})"
            elif s.startswith("-"):
                sign, s = "-", s[1:]
            term = f"d/d{v.name}" if s == "1" else f"{s}*d/d{v.name}"
            if not out:
                out = term if sign == "+" else "-" + term
            else:
                out += f" {sign} {term}"
        return out

    def __repr__(self):
        return f"VectorField({self})"

    def to_strings(self) -> dict[str, str]:
        return {v.name: str(e) for v, e in self.components.items()}


def lie_bracket(X: VectorField, Y: VectorField) -> VectorField:
    """[X, Y] = XY - YX as a first-order operator."""
    keys = set(X.components) | set(Y.components)
    return VectorField({k: to_expr(X(Y[k])) - to_expr(Y(X[k])) for k in keys})


def field_weight(X: VectorField, delta: VectorField):
    """The integer w with [delta, X] = w X, or None when X is not homogeneous."""
    if not X:
        return 0
    br = lie_bracket(delta, X)
    k, xk = next(iter(X.components.items()))
    ratio = simplify_expr(RationalExpr.coerce(br[k]) / RationalExpr.coerce(xk))
    if not isinstance(ratio, Polynomial) or not ratio.is_constant():
        return None
    w = ratio.constant_term()
    if br != X.scale(w):
        return None
    if isinstance(w, Fraction) and w.denominator == 1:
        return int(w)
    return None


def euler_field(sig: GradedSignature) -> VectorField:
    """sum w * y d/dy over the coordinates of ``sig``."""
    return VectorField({v: Polynomial.var(v) * v.weight for v in sig if v.weight})


def derivative_at(h: ActionFamily, p: Variable, point: Mapping[Variable, object]) -> VectorField:
    """d/dp of the family's components, evaluated at ``point`` (parameter values)."""
    sigma = {q: to_expr(x) for q, x in point.items()}
    return VectorField({v: substitute(diff_expr(e, p), sigma, check_parity=False)
                        for v, e in h.components.items()})


def weight_field(h: ActionFamily) -> VectorField:
    """Infinitesimal generator d/dt|_{t=1} of a real action family."""
    if h.monoid.name not in ("reals",):
        raise ValueError("weight_field expects a family over the reals")
    t = h.params[0]
    for v, e in h.components.items():
        num = e.num if isinstance(e, RationalExpr) else e
        if isinstance(e, RationalExpr) and t in e.den.variables():
            raise ValueError(f"non-polynomial dependence on {t.name} in {v.name}")
        if any(dict(m).get(t, 0) < 0 for m in num.terms):
            raise ValueError(f"non-polynomial dependence on {t.name} in {v.name}")
    return derivative_at(h, t, {t: 1})


class FlowError(ValueError):
    pass


def iterate_field(X: VectorField, f, limit: int) -> list:
    """[f, X f, X^2 f, ...] up to the first zero; FlowError past ``limit`` steps."""
    out = [to_expr(f)]
    while out[-1]:
        if len(out) > limit:
            raise FlowError("vector field is not nilpotent on this function")
        out.append(to_expr(X(out[-1])))
    out.pop()
    return out


def flow_nilpotent(X: VectorField, delta: VectorField, sig: GradedSignature,
                   s_name: str = "s") -> ActionFamily:
    """Exact flow y -> sum_j s^j/j! X^j(y) of a weight -1 field (an R-family in s)."""
    w = field_weight(X, delta)
    if X and w != -1:
        raise FlowError(f"flow needs a field of weight -1, got {w}")
    mon = reals(s_name)
    s = Polynomial.var(mon.params[0])
    limit = sig.degree + 1
    comps = {}
    for v in sig:
        total = Polynomial()
        for j, term in enumerate(iterate_field(X, Polynomial.var(v), limit)):
            total = to_expr(total) + to_expr(term) * (s ** j) * Fraction(1, factorial(j))
        comps[v] = total
    # the parameter composes additively; see verify_flow_group_law
    return ActionFamily(sig, mon, comps)


def verify_flow_group_law(flow: ActionFamily) -> CheckResult:
    """X^s o X^r = X^{s+r} symbolically, and X^0 = id."""
    r1, r2 = Variable("r_1", kind="parameter"), Variable("r_2", kind="parameter")
    F1 = flow.at([Polynomial.var(r1)])
    F2 = flow.at([Polynomial.var(r2)])
    F12 = flow.at([Polynomial.var(r1) + Polynomial.var(r2)])
    for v in flow.signature:
        lhs = substitute(F2[v], F1)
        diff = simplify_expr(to_expr(lhs) - to_expr(F12[v]))
        if diff:
            return CheckResult(False, v.name, str(diff), {"law": "flow"})
    zero = flow.at([0])
    for v in flow.signature:
        if to_expr(zero[v]) != Polynomial.var(v):
            return CheckResult(False, v.name, str(zero[v]), {"law": "identity"})
    return CheckResult(True)
