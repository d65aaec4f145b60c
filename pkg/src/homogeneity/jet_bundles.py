"""Higher tangent bundles in adapted coordinates and the canonical G_k actions.

Level-a coordinate of a base variable ``x`` is named ``x_d{a}`` and equals
a! times the t^a Taylor coefficient of a curve, so x_d1 is the velocity and
x_d2 the acceleration.
"""

from __future__ import annotations

from fractions import Fraction
from math import factorial
from typing import Mapping, Sequence

from .jets import _compose_series
from .polynomial import (
    BASE,
    FIBER,
    PARAMETER,
    Polynomial,
    Variable,
    coeff_extract,
    substitute,
)
from .structures import ActionFamily, GradedSignature, gk_monoid

_CURVE = Variable("__curve_t", 0, kind=PARAMETER)


def level_name(name: str, a: int) -> str:
    return name if a == 0 else f"{name}_d{a}"


def level_var(x: Variable, a: int) -> Variable:
    if a == 0:
        return Variable(x.name, 0, x.parity, BASE)
    return Variable(level_name(x.name, a), a, x.parity, FIBER)


def adapted_signature(base: Sequence[Variable], k: int) -> GradedSignature:
    """x^(a) for a = 0..k, base first and then level by level."""
    return GradedSignature([level_var(x, a) for a in range(k + 1) for x in base])


def base_variables(m: int, prefix: str = "x") -> list[Variable]:
    if m == 1:
        return [Variable(prefix, 0, kind=BASE)]
    return [Variable(f"{prefix}{i}", 0, kind=BASE) for i in range(1, m + 1)]


def _curve(x: Variable, k: int, t: Polynomial) -> Polynomial:
    return sum((Polynomial.var(level_var(x, a)) * t ** a * Fraction(1, factorial(a))
                for a in range(k + 1)), Polynomial())


def tk_lift(phi: Mapping[Variable, object], source: Sequence[Variable],
            target: Sequence[Variable], k: int) -> dict:
    """The T^k prolongation of a polynomial map, as a substitution.

    ``phi`` maps each target variable to a polynomial in the source
    variables; the result maps each adapted target coordinate to a
    polynomial in the adapted source coordinates.
    """
    t = Polynomial.var(_CURVE)
    curve = {x: _curve(x, k, t) for x in source}
    out = {}
    for y in target:
        composed = substitute(phi[y], curve)
        for a in range(k + 1):
            out[level_var(y, a)] = coeff_extract(composed, _CURVE, a) * factorial(a)
    return out


def tk_right_action(base: Sequence[Variable] | int, k: int) -> ActionFamily:
    """gamma . [phi] = [gamma o phi] on T^k, over the right G_k monoid."""
    if isinstance(base, int):
        base = base_variables(base)
    sig = adapted_signature(base, k)
    mon = gk_monoid(k, "right")
    a = [Polynomial.var(p) for p in mon.params]
    phi = [Polynomial()] + [a[j - 1] * Fraction(1, factorial(j)) for j in range(1, k + 1)]
    comps = {}
    for x in base:
        curve = [Polynomial.var(level_var(x, j)) * Fraction(1, factorial(j)) for j in range(k + 1)]
        series = _compose_series(curve, phi, k)
        comps[level_var(x, 0)] = Polynomial.var(level_var(x, 0))
        for j in range(1, k + 1):
            comps[level_var(x, j)] = series[j] * factorial(j)
    return ActionFamily(sig, mon, comps)


def tkstar_names(m: int) -> tuple[list[str], list[tuple[int, int, str]]]:
    firsts = [f"p{i}" for i in range(1, m + 1)]
    seconds = [(i, j, f"p{i}_{j}") for i in range(1, m + 1) for j in range(i, m + 1)]
    return firsts, seconds


def tkstar_signature(m: int) -> GradedSignature:
    firsts, seconds = tkstar_names(m)
    base = base_variables(m)
    return GradedSignature(list(base) + [Variable(n, 1) for n in firsts]
                           + [Variable(n, 1) for _, _, n in seconds])


def resolve_symmetric(name: str) -> str:
    """p{j}_{i} -> p{i}_{j} for i < j (the stored upper triangle)."""
    if name.startswith("p") and "_" in name:
        i, j = name[1:].split("_", 1)
        if i.isdigit() and j.isdigit() and int(i) > int(j):
            return f"p{j}_{i}"
    return name


def tkstar_left_action(m: int) -> ActionFamily:
    """(a, b).(p_i, p_ij) = (a p_i, a p_ij + b p_i p_j) on T^{2*}, left G_2."""
    sig = tkstar_signature(m)
    mon = gk_monoid(2, "left")
    a, b = (Polynomial.var(p) for p in mon.params)
    firsts, seconds = tkstar_names(m)
    comps = {}
    for n in firsts:
        comps[sig[n]] = a * Polynomial.var(sig[n])
    for i, j, n in seconds:
        comps[sig[n]] = a * Polynomial.var(sig[n]) + b * Polynomial.var(sig[f"p{i}"]) * Polynomial.var(sig[f"p{j}"])
    return ActionFamily(sig, mon, comps)
