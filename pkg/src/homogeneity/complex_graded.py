"""Actions of (C, .) given as polynomials in the formal pair (xi, conj(xi)).

Components are written for the holomorphic-looking coordinates; the
conjugate coordinates get the formally conjugated components, which encodes
that the underlying smooth action is real.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping

from .graded import (
    HomogenizeError,
    Homogenization,
    homogenize,
    invert_coordinates,
    jacobian_row,
)
from .linalg import independent_rows
from .polynomial import (
    BASE,
    FIBER,
    Polynomial,
    RationalExpr,
    Variable,
    coeff_extract,
    cyclo_eval,
    is_weight_homogeneous,
    max_exponent,
    simplify_expr,
    substitute,
    to_expr,
)
from .structures import (
    ActionFamily,
    CheckResult,
    GradedSignature,
    complexes,
    reals,
    standard_homothety,
    verify_action,
)


class NotNiceError(ValueError):
    def __init__(self, message: str, level: int | None = None, witness: str | None = None):
        super().__init__(message)
        self.level = level
        self.witness = witness


def complex_family(sig: GradedSignature, components: Mapping[Variable, object]) -> ActionFamily:
    """A (C, .) family completed with conjugate coordinates and components."""
    fam = ActionFamily(sig, complexes(), components)
    return fam.with_conjugates()


def _completed(fam: ActionFamily) -> ActionFamily:
    return fam.with_conjugates()


def verify_c_action(fam: ActionFamily) -> CheckResult:
    """h_xi o h_theta = h_{xi theta} (with the conjugate pair) and h_1 = id."""
    fam = _completed(fam)
    result = verify_action(fam)
    if result:
        # reality: conjugating a component gives the conjugate coordinate's component
        for v in fam.signature:
            if v.is_conjugated:
                continue
            partner = v.conj()
            if to_expr(fam.components[v]).conjugate() != to_expr(fam.components[partner]):
                return CheckResult(False, v.name, "component is not compatible with conjugation",
                                   {"law": "reality"})
    return result


def is_holomorphic(fam: ActionFamily) -> CheckResult:
    """No component of a holomorphic coordinate involves a conjugated variable."""
    for v in fam.signature:
        if v.is_conjugated:
            continue
        e = to_expr(fam.components[v])
        parts = [e.num, e.den] if isinstance(e, RationalExpr) else [e]
        for part in parts:
            for m, c in sorted(part.terms.items(), key=lambda it: str(it[0])):
                bad = [u.name for u, _ in m if u.is_conjugated]
                if bad:
                    term = Polynomial({m: c})
                    return CheckResult(False, v.name, str(term), {"conjugated": bad})
    return CheckResult(True)


def real_restriction(fam: ActionFamily, t_name: str = "t") -> ActionFamily:
    """The family along real parameters xi = conj(xi) = t."""
    fam = _completed(fam)
    mon = reals(t_name)
    t = Polynomial.var(mon.params[0])
    comps = fam.at([t, t])
    return ActionFamily(fam.signature, mon, comps)


def _pullback(f, fam: ActionFamily):
    return substitute(f, fam.components)


def fourier_weight_project(f, fam: ActionFamily, w: int):
    """Circle average of xi^{-w} f(h_xi(v)): the xi^w Laurent coefficient after conj(xi) -> 1/xi."""
    fam = _completed(fam)
    xi, xibar = fam.params
    pulled = _pullback(f, fam)
    on_circle = substitute(pulled, {xibar: Polynomial.var(xi) ** -1}, check_parity=False)
    return simplify_expr(coeff_extract(on_circle, xi, w))


def bidegree_part(f, fam: ActionFamily, p: int, q: int):
    """The xi^p conj(xi)^q coefficient of h_xi^* f; it is of type (p, q)."""
    fam = _completed(fam)
    xi, xibar = fam.params
    pulled = _pullback(f, fam)
    return simplify_expr(coeff_extract(coeff_extract(pulled, xi, p), xibar, q))


def is_c_homogeneous(f, fam: ActionFamily, w: int) -> bool:
    """h_xi^* f == xi^w f as a formal identity in (xi, conj(xi))."""
    fam = _completed(fam)
    xi = Polynomial.var(fam.params[0])
    return to_expr(_pullback(f, fam)) == to_expr(f) * xi ** w


# ---------------------------------------------------------------------------
# niceness


@dataclass
class NicenessReport:
    nice: bool
    levels: dict = field(default_factory=dict)   # j -> CheckResult
    failed_level: int | None = None
    homogenization: Homogenization | None = None

    def __bool__(self):
        return self.nice


def _cyclo_equal(value, target, xi: Variable, m: int) -> tuple[bool, str]:
    """cyclo_eval(value) == target, with denominators free of xi."""
    value = to_expr(value)
    if isinstance(value, RationalExpr):
        num = cyclo_eval(value.num, xi, m)
        rhs = cyclo_eval(to_expr(target) * value.den, xi, m)
        diff = num - rhs
    else:
        ev = cyclo_eval(value, xi, m)
        rhs = cyclo_eval(to_expr(target), xi, m)
        diff = ev - rhs
    return not diff, str(diff) if diff else ""


def niceness_check(fam: ActionFamily) -> NicenessReport:
    """For each level j, does the primitive 2j-th root of unity act as -id on the level-j core?"""
    fam = _completed(fam)
    ok = verify_c_action(fam)
    if not ok:
        raise NotNiceError(f"not a C-action (coordinate {ok.location})", witness=ok.witness)
    real = real_restriction(fam)
    try:
        hom = homogenize(real)
    except HomogenizeError as exc:
        raise NotNiceError(f"real restriction is not a graded action: {exc}",
                           witness=exc.witness) from exc
    xi = fam.params[0]
    sig = hom.signature
    levels = {}
    failed = None
    for j in range(1, sig.degree + 1):
        lower = {v: Polynomial() for v in sig.fiber if v.weight < j}
        result = CheckResult(True)
        for z in [v for v in sig.fiber if v.weight == j]:
            pulled = _pullback(hom.forward[z], fam)
            in_new = substitute(pulled, hom.inverse)
            on_core = substitute(in_new, lower, check_parity=False)
            same, diff = _cyclo_equal(on_core, -Polynomial.var(z), xi, 2 * j)
            if not same:
                result = CheckResult(False, z.name, diff, {"level": j, "action": str(on_core)})
                break
        levels[j] = result
        if not result and failed is None:
            failed = j
    return NicenessReport(failed is None, levels, failed, hom)


# ---------------------------------------------------------------------------
# complex homogenization


@dataclass
class ComplexHomogenization:
    signature: GradedSignature
    forward: dict    # new coordinate -> expression in the old coordinates
    inverse: dict
    family: ActionFamily


def specialize_base(fam: ActionFamily, values: Mapping[str, object]) -> ActionFamily:
    """Fix base coordinates at scalar values (conjugates get conjugated values)."""
    fam = _completed(fam)
    sigma = {}
    for v in fam.signature.base:
        if v.name in values:
            sigma[v] = to_expr(values[v.name])
            sigma[v.conj()] = to_expr(values[v.name]).conjugate()
    fibers = [v for v in fam.signature if v.kind != BASE]
    sig = GradedSignature(fibers)
    comps = {v: simplify_expr(to_expr(substitute(fam.components[v], sigma, check_parity=False)))
             for v in fibers}
    return ActionFamily(sig, fam.monoid, comps, fam.params)


def complex_homogenize(fam: ActionFamily, base_values: Mapping[str, object] | None = None
                       ) -> ComplexHomogenization:
    """Coordinates z with h_xi^* z = xi^w z, fiberwise over fixed base values."""
    fam = _completed(fam)
    if base_values is not None or fam.signature.base:
        fam = specialize_base(fam, base_values or {})
    report = niceness_check(fam)
    if not report:
        lvl = report.failed_level
        raise NotNiceError(f"the action is not nice at level {lvl}", lvl,
                           report.levels[lvl].witness)
    real_sig = report.homogenization.signature
    degree = real_sig.degree
    holo = [v for v in fam.signature.fiber if not v.is_conjugated]
    fibers = fam.signature.fiber
    xi, xibar = fam.params
    zero = {y: coeff_extract(coeff_extract(fam.components[y], xi, 0), xibar, 0) for y in fibers}

    chosen: list[tuple[Variable, int, object]] = []
    rows: list = []
    for w in range(1, degree + 1):
        for y in holo:
            cand = bidegree_part(Polynomial.var(y), fam, w, 0)
            if not cand:
                continue
            r1 = jacobian_row(cand, fibers, zero)
            r2 = jacobian_row(to_expr(cand).conjugate(), fibers, zero)
            if len(independent_rows([r1, r2], rows)) == 2:
                rows += [r1, r2]
                chosen.append((y, w, cand))
    if 2 * len(chosen) != len(fibers):
        raise NotNiceError("could not find enough complex homogeneous coordinates",
                           witness=str([(y.name, w) for y, w, _ in chosen]))
    counts: dict = {}
    for y, _, _ in chosen:
        counts[y] = counts.get(y, 0) + 1
    new_vars, forward_list = [], []
    for y, w, cand in chosen:
        name = y.name if counts[y] == 1 else f"{y.name}_w{w}"
        new_vars.append(Variable(name, w, y.parity, FIBER))
        forward_list.append(cand)
    for v, cand in list(zip(new_vars, forward_list)):
        new_vars.append(v.conj())
        forward_list.append(to_expr(cand).conjugate())
    internal = [Variable(f"__c{i}", v.weight, v.parity, FIBER) for i, v in enumerate(new_vars)]
    inverse = invert_coordinates(forward_list, internal, fibers, zero, degree)
    rename = {z: Polynomial.var(v) for z, v in zip(internal, new_vars)}
    inverse = {y: substitute(e, rename, check_parity=False) for y, e in inverse.items()}
    forward = dict(zip(new_vars, forward_list))
    for v, f in forward.items():
        target = Polynomial.var(fam.params[1] if v.is_conjugated else xi) ** v.weight
        if to_expr(_pullback(f, fam)) != to_expr(f) * target:
            raise NotNiceError(f"{v.name} is not xi-homogeneous", witness=str(f))
    new_sig = GradedSignature(new_vars)
    return ComplexHomogenization(new_sig, forward, inverse,
                                 standard_homothety(new_sig, complexes(xi.name)))


def homogeneous_iff_holomorphic(f, sig: GradedSignature, w: int) -> bool:
    """For the standard complex homothety: homogeneous of weight w iff conj-free of weight w."""
    fam = standard_homothety(sig.with_conjugates(), complexes())
    homogeneous = is_c_homogeneous(f, fam, w)
    e = to_expr(f)
    conj_free = not any(u.is_conjugated for u in e.variables())
    weights = {v.name: v.weight for v in fam.signature}
    syntactic = conj_free and is_weight_homogeneous(e, w, weights)
    return homogeneous == syntactic


def max_xi_degree(fam: ActionFamily) -> int:
    xi = fam.params[0]
    return max((max_exponent(e, xi) for e in fam.components.values()), default=0)
