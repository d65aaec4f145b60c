"""Graded-space operations: towers, cores, morphisms and the real homogenizer."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping

from .linalg import Matrix, SingularMatrixError, independent_rows
from .polynomial import (
    BASE,
    FIBER,
    Polynomial,
    RationalExpr,
    Variable,
    coeff_extract,
    is_weight_homogeneous,
    laurent_min_exponent,
    max_exponent,
    reduce_mod_odd,
    simplify_expr,
    substitute,
    to_expr,
)
from .fields import diff_expr
from .structures import (
    ActionFamily,
    CheckResult,
    GradedSignature,
    expr_parity_ok,
    reals,
    standard_homothety,
    verify_action,
)


class NotGradedError(ValueError):
    pass


class HomogenizeError(ValueError):
    def __init__(self, message: str, witness: str | None = None):
        super().__init__(message)
        self.witness = witness


def _vars_of(e) -> set[Variable]:
    return to_expr(e).variables()


def pullback_is_homogeneous(f, h: ActionFamily, w: int) -> bool:
    """h_t^* f == t^w f for a real family."""
    t = Polynomial.var(h.params[0])
    return to_expr(substitute(f, h.components)) == to_expr(f) * t ** w


# ---------------------------------------------------------------------------
# tower and core


def tower_truncate(sig: GradedSignature, h: ActionFamily, j: int):
    """Drop fiber coordinates of weight > j; the action must descend."""
    if not 0 <= j <= sig.degree:
        raise ValueError(f"level {j} outside 0..{sig.degree}")
    kept = [v for v in sig if v.weight <= j]
    dropped = {v for v in sig if v.weight > j}
    new_sig = GradedSignature(kept)
    comps = {}
    for v in kept:
        e = h.components[v]
        bad = _vars_of(e) & dropped
        if bad:
            raise NotGradedError(
                f"action does not descend: {v.name} depends on {sorted(b.name for b in bad)}")
        comps[v] = e
    return new_sig, ActionFamily(new_sig, h.monoid, comps, h.params)


def core_restriction(sig: GradedSignature, h: ActionFamily):
    """Top-weight coordinates with all lower fiber coordinates set to zero.

    Returns the core signature (original weights) and the restricted family.
    """
    k = sig.degree
    if k < 1:
        raise ValueError("the core needs degree at least 1")
    lower = [v for v in sig.fiber if v.weight < k]
    zero = {v: Polynomial() for v in lower}
    keep = [v for v in sig if v.kind == BASE or v.weight == k]
    core_sig = GradedSignature(keep)
    comps = {v: substitute(h.components[v], zero, check_parity=False) for v in keep}
    return core_sig, ActionFamily(core_sig, h.monoid, comps, h.params)


def core_extract(sig: GradedSignature, h: ActionFamily):
    """The core as a vector bundle: weight-k coordinates rescaled to weight 1."""
    core_sig, restricted = core_restriction(sig, h)
    k = sig.degree
    t = Polynomial.var(h.params[0])
    for v in core_sig.fiber:
        expected = t ** k * Polynomial.var(v)
        if to_expr(restricted.components[v]) != expected:
            raise NotGradedError(
                f"core coordinate {v.name} is not scaled by t^{k}: {restricted.components[v]}")
    rescaled = GradedSignature(v.with_weight(1) if v.kind == FIBER else v for v in core_sig)
    return rescaled, standard_homothety(rescaled, h.monoid)


# ---------------------------------------------------------------------------
# morphisms


def check_morphism(phi: Mapping[Variable, object], src: GradedSignature,
                   dst: GradedSignature) -> CheckResult:
    """Weight- and parity-homogeneity of every component, cross-checked by homotheties."""
    missing = [v.name for v in dst if v not in phi]
    if missing:
        raise ValueError(f"morphism not total: missing {missing}")
    weights = src.weights()
    syntactic: CheckResult = CheckResult(True)
    for v in dst:
        e = to_expr(phi[v])
        if not expr_parity_ok(v, e):
            syntactic = CheckResult(False, v.name, f"parity of {e}", {"reason": "parity"})
            break
        num = e.num if isinstance(e, RationalExpr) else e
        if isinstance(e, RationalExpr) and any(weights.get(u.name, 0) for u in e.den.variables()):
            syntactic = CheckResult(False, v.name, str(e), {"reason": "fiber denominator"})
            break
        if not is_weight_homogeneous(num, v.weight, weights):
            syntactic = CheckResult(False, v.name, str(e), {"reason": "weight"})
            break
    # semantic: phi o h^src_t == h^dst_t o phi
    hs = standard_homothety(src)
    t = Polynomial.var(hs.params[0])
    semantic: CheckResult = CheckResult(True)
    for v in dst:
        lhs = to_expr(substitute(phi[v], hs.components))
        rhs = to_expr(phi[v]) * t ** v.weight
        if lhs != rhs:
            semantic = CheckResult(False, v.name, str(simplify_expr(lhs - rhs)),
                                   {"reason": "does not intertwine homotheties"})
            break
    if bool(syntactic) != bool(semantic) and syntactic.data.get("reason") != "parity":
        raise AssertionError("syntactic and semantic morphism checks disagree")
    return syntactic if not syntactic else semantic


# ---------------------------------------------------------------------------
# the homogenizer


@dataclass
class Homogenization:
    signature: GradedSignature
    forward: dict          # new coordinate -> expression in old coordinates
    inverse: dict          # old coordinate -> expression in new coordinates
    family: ActionFamily   # standard homothety on ``signature``
    projectors: dict = field(default_factory=dict)

    def is_identity(self) -> bool:
        return all(to_expr(e) == Polynomial.var(v) for v, e in self.forward.items())

    def forward_strings(self) -> dict[str, str]:
        return {v.name: str(e) for v, e in self.forward.items()}


def jacobian_row(f, fibers: list[Variable], zero_section: dict) -> list:
    """Fiber derivatives along the zero section, reduced modulo odd variables."""
    row = []
    for y in fibers:
        d = diff_expr(f, y)
        d = substitute(d, zero_section, check_parity=False) if zero_section else d
        row.append(reduce_mod_odd(d))
    return row


def _fiber_denominator_check(e, fibers: set, where: str):
    if isinstance(e, RationalExpr) and e.den.variables() & fibers:
        raise HomogenizeError(f"{where}: fiber variable in a denominator", str(e))


def homogenize(h: ActionFamily, check: bool = True) -> Homogenization:
    """Coordinates in which a real (possibly super) action is a diagonal t^w action.

    The linear part A(t) of the action along the zero section splits into
    complementary idempotents P_w; a basis of each image is lifted to exactly
    homogeneous functions by taking the t^w coefficient of the pullback.
    """
    if h.monoid.name != "reals":
        raise HomogenizeError("homogenize expects a family over the reals")
    if check:
        ok = verify_action(h)
        if not ok:
            raise HomogenizeError(f"not an action (coordinate {ok.location})", ok.witness)
    sig = h.signature
    t = h.params[0]
    fibers = sig.fiber
    fiber_set = set(fibers)
    for v in sig.base:
        if to_expr(h.components[v]) != Polynomial.var(v):
            raise HomogenizeError(f"base coordinate {v.name} is not fixed by the action",
                                  str(h.components[v]))
    degree = 0
    for v, e in h.components.items():
        _fiber_denominator_check(e, fiber_set, v.name)
        if isinstance(e, RationalExpr) and t in e.den.variables():
            raise HomogenizeError(f"non-polynomial dependence on {t.name} in {v.name}", str(e))
        m = laurent_min_exponent(e, t)
        if m is not None and m < 0:
            raise HomogenizeError(f"negative power of {t.name} in {v.name}", str(e))
        degree = max(degree, max_exponent(e, t))

    # zero section y = h_0^* y, which must be a function of the base
    zero_section = {}
    for y in fibers:
        c = coeff_extract(h.components[y], t, 0)
        if _vars_of(c) & fiber_set:
            raise HomogenizeError(f"h_0 does not project {y.name} to the base", str(c))
        zero_section[y] = c

    # candidates f^[w] and the projector rows
    extracted = {(y, w): simplify_expr(coeff_extract(h.components[y], t, w))
                 for y in fibers for w in range(0, degree + 1)}
    P = {w: Matrix([jacobian_row(extracted[(y, w)], fibers, zero_section) for y in fibers])
         for w in range(0, degree + 1)} if fibers else {}
    n = len(fibers)
    if fibers:
        total = Matrix.zeros(n)
        for w, Pw in P.items():
            total = total + Pw
        if total != Matrix.identity(n):
            raise HomogenizeError("linear parts do not sum to the identity", repr(total))
        for v_, Pv in P.items():
            for w, Pw in P.items():
                prod = Pv * Pw
                expected = Pw if v_ == w else Matrix.zeros(n)
                if prod != expected:
                    raise HomogenizeError(
                        f"P_{v_} P_{w} violates the idempotent relations", repr(prod))
        if not P[0].is_zero():
            raise HomogenizeError("fiber coordinates with a weight-0 linear part", repr(P[0]))

    # greedy choice of independent rows, weight by weight
    chosen: list[tuple[Variable, int]] = []
    for w in range(1, degree + 1):
        rows = [P[w].rows[i] for i in range(n)]
        for idx in independent_rows(rows):
            chosen.append((fibers[idx], w))
    if len(chosen) != n:
        raise HomogenizeError("could not complete a coordinate system", str(chosen))

    counts: dict[Variable, int] = {}
    for y, _ in chosen:
        counts[y] = counts.get(y, 0) + 1
    used_names = {v.name for v in sig}
    new_fibers = []
    for y, w in chosen:
        name = y.name if counts[y] == 1 else f"{y.name}_w{w}"
        if name != y.name and name in used_names:
            raise HomogenizeError(f"name clash for new coordinate {name}")
        new_fibers.append(Variable(name, w, y.parity, FIBER))
    forward_internal = [extracted[c] for c in chosen]

    # internal names avoid collisions between old and new coordinates
    internal = [Variable(f"__z{i}", v.weight, v.parity, FIBER) for i, v in enumerate(new_fibers)]
    inverse = invert_coordinates(forward_internal, internal, fibers, zero_section, degree,
                                 sum(1 for v in sig if v.odd))
    rename = {z: Polynomial.var(v) for z, v in zip(internal, new_fibers)}
    new_sig = GradedSignature(list(sig.base) + new_fibers)
    forward = {v: f for v, f in zip(new_fibers, forward_internal)}
    inverse_named = {y: substitute(e, rename, check_parity=False) for y, e in inverse.items()}

    for v, f in forward.items():
        if not pullback_is_homogeneous(f, h, v.weight):
            raise HomogenizeError(f"{v.name} is not homogeneous of weight {v.weight}", str(f))

    for v in sig.base:
        forward[v] = Polynomial.var(v)
        inverse_named[v] = Polynomial.var(v)
    ordered_forward = {v: forward[v] for v in new_sig}
    family = standard_homothety(new_sig, reals(t.name))
    return Homogenization(new_sig, ordered_forward, inverse_named, family,
                          {w: P[w] for w in P if not P[w].is_zero()})


def invert_coordinates(forward: list, new_vars: list[Variable], fibers: list[Variable],
                       zero_section: dict, degree: int, n_odd: int = 0) -> dict:
    """Polynomial inverse of fiber coordinates new_vars[i] = forward[i](x, y).

    Both compositions are checked exactly; failure raises HomogenizeError.
    """
    L0 = Matrix([jacobian_row(f, fibers, zero_section) for f in forward])
    try:
        L0inv = L0.inverse()
    except SingularMatrixError as exc:
        raise HomogenizeError("chosen coordinates are not independent", repr(L0)) from exc
    inverse = _solve_inverse(forward, fibers, zero_section, L0, L0inv, new_vars, degree, n_odd)
    for z, f in zip(new_vars, forward):
        if to_expr(substitute(f, inverse)) != Polynomial.var(z):
            raise HomogenizeError("computed inverse does not invert the new coordinates", z.name)
    fwd = dict(zip(new_vars, forward))
    for y, e in inverse.items():
        if to_expr(substitute(e, fwd)) != Polynomial.var(y):
            raise HomogenizeError("computed inverse is only a one-sided inverse", y.name)
    return inverse


def _truncate_expr(e, variables, max_weight: int):
    weights = {v.name: v.weight for v in variables}
    vs = set(variables)

    def cut(p: Polynomial) -> Polynomial:
        return p.filter_terms(lambda m: sum(weights[v.name] * k for v, k in m if v in vs) <= max_weight)

    if isinstance(e, RationalExpr):
        return simplify_expr(RationalExpr(cut(e.num), e.den))
    return cut(to_expr(e))


def _solve_inverse(forward, fibers, zero_section, L0, L0inv, internal, degree, n_odd):
    """Fixed-point iteration y = c + L0^{-1}(z - R(y)) truncated by weight."""
    n = len(fibers)
    c = [to_expr(zero_section[y]) for y in fibers]
    # R(y) = forward(y) - L0 (y - c)
    R = []
    for i in range(n):
        lin = Polynomial()
        for j, y in enumerate(fibers):
            a = L0.rows[i][j]
            if a:
                lin = to_expr(lin) + to_expr(simplify_expr(a)) * (Polynomial.var(y) - c[j])
        R.append(simplify_expr(to_expr(forward[i]) - to_expr(lin)))
    Z = [Polynomial.var(z) for z in internal]
    psi = {y: c[j] for j, y in enumerate(fibers)}
    for _ in range(degree + n_odd + 2):
        rhs = [simplify_expr(to_expr(Z[i]) - to_expr(substitute(R[i], psi))) for i in range(n)]
        new = {}
        for j, y in enumerate(fibers):
            acc = c[j]
            for i in range(n):
                a = L0inv.rows[j][i]
                if a and rhs[i]:
                    acc = to_expr(acc) + to_expr(simplify_expr(a)) * to_expr(rhs[i])
            new[y] = _truncate_expr(simplify_expr(to_expr(acc)), internal, degree)
        if all(to_expr(new[y]) == to_expr(psi[y]) for y in fibers):
            psi = new
            break
        psi = new
    return psi


def homogenize_real(h: ActionFamily) -> Homogenization:
    if any(v.odd for v in h.signature):
        raise HomogenizeError("odd coordinates present; use super_homogenize")
    return homogenize(h)


def transform_family(h: ActionFamily, result: Homogenization) -> ActionFamily:
    """The family rewritten in the new coordinates: z -> (h^* z) expressed in z."""
    comps = {}
    for v, f in result.forward.items():
        pulled = substitute(f, h.components)
        comps[v] = substitute(pulled, result.inverse)
    return ActionFamily(result.signature, h.monoid, comps, h.params)
