"""Super graded spaces: parity-aware actions, the f^[k] homogenizer and body reduction."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping

from .fields import diff_expr
from .graded import HomogenizeError, Homogenization, check_morphism, homogenize
from .linalg import Matrix, SingularMatrixError
from .polynomial import (
    EVEN,
    Polynomial,
    RationalExpr,
    Variable,
    coeff_extract,
    max_exponent,
    reduce_mod_odd,
    simplify_expr,
    substitute,
    to_expr,
    weight_decompose,
)
from .structures import (
    ActionFamily,
    CheckResult,
    GradedSignature,
    expr_parity_ok,
    reals,
    standard_homothety,
    verify_action,
)


def verify_super_action(fam: ActionFamily) -> CheckResult:
    """Parity of every component, then h_t^* o h_s^* = h_{ts}^* and h_1 = id."""
    for v in fam.signature:
        if not expr_parity_ok(v, to_expr(fam.components[v])):
            return CheckResult(False, v.name, str(fam.components[v]), {"law": "parity"})
    return verify_action(fam)


def super_rank(sig: GradedSignature) -> dict[int, tuple[int, int]]:
    """weight -> (even count, odd count), weight 0 included."""
    out: dict[int, tuple[int, int]] = {}
    for v in sig:
        e, o = out.get(v.weight, (0, 0))
        out[v.weight] = (e, o + 1) if v.odd else (e + 1, o)
    return dict(sorted(out.items()))


@dataclass
class SuperHomogenization:
    signature: GradedSignature
    forward: dict
    inverse: dict
    family: ActionFamily
    method: str                      # "normal-form" or "projector"
    weights_read: dict = field(default_factory=dict)
    domain: list = field(default_factory=list)


def _normal_form_weight(v: Variable, comp, t: Variable):
    """w with h_t^* v = t^w v mod J (even) or mod J^2 (odd), else None."""
    reduced = to_expr(reduce_mod_odd(comp, 2 if v.odd else 1))
    if isinstance(reduced, RationalExpr):
        return None
    target = Polynomial.var(v)
    for w in range(0, max_exponent(reduced, t) + 1):
        if reduced == target * Polynomial.var(t) ** w:
            return w
    return None


def _denominators(exprs) -> list[str]:
    out = set()
    for e in exprs:
        if isinstance(e, RationalExpr) and not e.is_polynomial:
            out.add(str(e.den))
    return sorted(out)


def _nilpotent_inverse(forward: Mapping[Variable, object], coords: list[Variable],
                       n_odd: int) -> dict:
    """Invert y' = y + N(y) with N in the odd ideal by y = y' - N(y) iteration."""
    internal = {v: Variable(f"__s{i}", v.weight, v.parity, v.kind) for i, v in enumerate(coords)}
    Y = {v: Polynomial.var(internal[v]) for v in coords}
    N = {v: to_expr(forward[v]) - Polynomial.var(v) for v in coords}
    guess = dict(Y)
    for _ in range(n_odd + 2):
        nxt = {v: simplify_expr(to_expr(Y[v]) - to_expr(substitute(N[v], guess))) for v in coords}
        if all(to_expr(nxt[v]) == to_expr(guess[v]) for v in coords):
            break
        guess = nxt
    back = {internal[v]: Polynomial.var(v) for v in coords}
    return {v: substitute(e, back, check_parity=False) for v, e in guess.items()}


def super_homogenize(fam: ActionFamily, fallback: bool = True) -> SuperHomogenization:
    """New coordinates y^[w] = t^w coefficient of h_t^* y, each exactly homogeneous.

    Applies when the family is in normal form (diagonal t^w modulo J for
    even and modulo J^2 for odd coordinates).  Otherwise, with ``fallback``,
    the projector homogenizer is used on the whole super family.
    """
    ok = verify_super_action(fam)
    if not ok:
        raise HomogenizeError(f"not a super action (coordinate {ok.location})", ok.witness)
    t = fam.params[0]
    weights = {}
    for v in fam.signature:
        w = _normal_form_weight(v, fam.components[v], t)
        if w is None:
            if not fallback:
                raise HomogenizeError(f"{v.name} is not in normal form", str(fam.components[v]))
            res = homogenize(fam, check=False)
            return SuperHomogenization(res.signature, res.forward, res.inverse, res.family,
                                       "projector", {}, _denominators(
                                           list(res.forward.values()) + list(res.inverse.values())))
        weights[v] = w
    new_vars = {v: Variable(v.name, weights[v], v.parity, v.kind) for v in fam.signature}
    forward = {}
    for v in fam.signature:
        f = simplify_expr(coeff_extract(fam.components[v], t, weights[v]))
        forward[v] = f
    # blocks are identity modulo the odd ideal
    coords = list(fam.signature)
    for block in parity_blocks(forward, coords):
        for i, row in enumerate(block.rows):
            for j, entry in enumerate(row):
                if simplify_expr(entry) != Polynomial.const(1 if i == j else 0):
                    raise HomogenizeError("a Jacobian block is not identity modulo J", str(entry))
    n_odd = sum(1 for v in coords if v.odd)
    inverse = _nilpotent_inverse(forward, coords, n_odd)
    for v in coords:
        if to_expr(substitute(forward[v], inverse)) != Polynomial.var(v):
            raise HomogenizeError("nilpotent inverse failed", v.name)
        if to_expr(substitute(inverse[v], forward)) != Polynomial.var(v):
            raise HomogenizeError("nilpotent inverse is one-sided", v.name)
    tp = Polynomial.var(t)
    for v in coords:
        pulled = to_expr(substitute(forward[v], fam.components))
        if pulled != to_expr(forward[v]) * tp ** weights[v]:
            raise HomogenizeError(f"{v.name}^[{weights[v]}] is not homogeneous", str(forward[v]))
    sig = GradedSignature(new_vars[v] for v in coords)
    fwd = {new_vars[v]: forward[v] for v in coords}
    inv = {v: substitute(inverse[v], {}, check_parity=False) for v in coords}
    return SuperHomogenization(sig, fwd, inv, standard_homothety(sig, reals(t.name)),
                               "normal-form", {v.name: w for v, w in weights.items()},
                               _denominators(list(fwd.values())))


def f_bracket(fam: ActionFamily, f, k: int):
    """f^[k]: the t^k coefficient of h_t^* f."""
    t = fam.params[0]
    return simplify_expr(coeff_extract(substitute(f, fam.components), t, k))


def parity_blocks(forward: Mapping[Variable, object], coords: list[Variable]) -> list[Matrix]:
    """Even and odd Jacobian blocks of new-in-old coordinates, reduced modulo J."""
    out = []
    for block in ([v for v in coords if not v.odd], [v for v in coords if v.odd]):
        out.append(Matrix([[reduce_mod_odd(diff_expr(forward[v], u)) for u in block]
                           for v in block]))
    return out


def block_locus(forward: Mapping[Variable, object], coords: list[Variable]) -> list[str]:
    """Body denominators of the inverse blocks: the coordinates are valid where these are nonzero."""
    dens = []
    for M in parity_blocks(forward, coords):
        if not M.rows:
            continue
        try:
            inv = M.inverse()
        except SingularMatrixError as exc:
            raise HomogenizeError("singular Jacobian block", repr(M)) from exc
        dens.extend(e for row in inv.rows for e in row)
    return _denominators(simplify_expr(e) for e in dens)


# ---------------------------------------------------------------------------
# body reduction


@dataclass
class BodyReduction:
    body: ActionFamily          # even coordinates, everything mod J
    tilde: ActionFamily         # body plus even stand-ins Y for the odd coordinates
    alpha: Matrix               # alpha[A][B](t, x, y)
    odd: list
    multiplicative: CheckResult

    def alpha_strings(self) -> list[list[str]]:
        return [[str(simplify_expr(e)) for e in row] for row in self.alpha.rows]


def stand_in(v: Variable) -> Variable:
    return Variable(f"Y_{v.name}", v.weight, EVEN, v.kind)


def body_reduce(fam: ActionFamily) -> BodyReduction:
    """The body action (mod J) and the even first-order model h~ (mod J^2)."""
    evens = [v for v in fam.signature if not v.odd]
    odds = [v for v in fam.signature if v.odd]
    body_sig = GradedSignature(evens)
    body_comps = {v: reduce_mod_odd(fam.components[v]) for v in evens}
    body = ActionFamily(body_sig, fam.monoid, body_comps, fam.params)
    rows = []
    for A in odds:
        comp = reduce_mod_odd(fam.components[A], 2)
        rows.append([reduce_mod_odd(diff_expr(comp, B)) for B in odds])
    alpha = Matrix(rows) if rows else Matrix([])
    stand = [stand_in(v) for v in odds]
    tilde_sig = GradedSignature(evens + stand)
    tilde_comps = dict(body_comps)
    for i, A in enumerate(odds):
        acc = Polynomial()
        for j, B in enumerate(odds):
            a = simplify_expr(alpha.rows[i][j])
            if a:
                acc = to_expr(acc) + to_expr(a) * Polynomial.var(stand[j])
        tilde_comps[stand[i]] = acc
    tilde = ActionFamily(tilde_sig, fam.monoid, tilde_comps, fam.params)
    return BodyReduction(body, tilde, alpha, odds, verify_action(tilde))


def super_morphism_check(phi: Mapping[Variable, object], src: GradedSignature,
                         dst: GradedSignature) -> CheckResult:
    """Every component weight- and parity-homogeneous."""
    return check_morphism(phi, src, dst)


def homogeneous_iff_single_weight(f, sig: GradedSignature, w: int) -> bool:
    """Under the standard super homothety: h_t^* f = t^w f iff f has the single weight w."""
    fam = standard_homothety(sig)
    t = Polynomial.var(fam.params[0])
    homogeneous = to_expr(substitute(f, fam.components)) == to_expr(f) * t ** w
    parts = weight_decompose(to_expr(f), sig.weights())
    single = not parts or set(parts) == {w}
    return homogeneous == single


def homogenization_summary(res: Homogenization | SuperHomogenization) -> dict[str, str]:
    return {v.name: str(e) for v, e in res.forward.items()}
