"""Right and left actions of G_2 built from infinitesimal data.

A right action is recovered from its weight field Delta and a weight -1
field X as p.(a, b) = X^{b/a}(h_a(p)); the result is a Laurent family in a,
and the action extends to a = 0 exactly when no negative power of a
survives.  Left actions on vector bundles come from bullet products.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product as cartesian
from typing import Sequence

from .fields import (
    VectorField,
    derivative_at,
    euler_field,
    field_weight,
    flow_nilpotent,
    lie_bracket,
)
from .polynomial import (
    FIBER,
    Polynomial,
    Variable,
    laurent_min_exponent,
    simplify_expr,
    substitute,
    to_expr,
)
from .structures import (
    ActionFamily,
    CheckResult,
    GradedSignature,
    gk_monoid,
    param,
    verify_action,
)


class G2Error(ValueError):
    pass


def infinitesimal_pair(fam: ActionFamily) -> tuple[VectorField, VectorField]:
    """(Delta, X): d/da and d/db of a G_2 family at the identity (1, 0)."""
    a, b = fam.params
    point = {a: 1, b: 0}
    return derivative_at(fam, a, point), derivative_at(fam, b, point)


def homothety_of(fam: ActionFamily) -> dict:
    """The (a, 0) restriction as pullback formulas in a."""
    a, b = fam.params
    return {v: substitute(e, {b: Polynomial()}, check_parity=False) for v, e in fam.components.items()}


def right_family(delta: VectorField, X: VectorField, sig: GradedSignature) -> ActionFamily:
    """p.(a, b) = X^{b/a}(h_a(p)) as a Laurent family; both orderings must agree."""
    if X and field_weight(X, delta) != -1:
        raise G2Error("X must have weight -1 with respect to delta")
    if delta != euler_field(sig):
        raise G2Error("delta must be the weight field of the signature")
    mon = gk_monoid(2, "right")
    a, b = (Polynomial.var(p) for p in mon.params)
    flow = flow_nilpotent(X, delta, sig)
    s = flow.params[0]
    homothety = {v: a ** v.weight * Polynomial.var(v) for v in sig}
    # pullback of X^{b/a} o h_a: substitute h_a into the flow at s = b/a
    flow1 = {v: substitute(e, {s: b * a ** -1}, check_parity=False) for v, e in flow.components.items()}
    first = {v: substitute(e, homothety) for v, e in flow1.items()}
    # pullback of h_a o X^{b/a^2}
    flow2 = {v: substitute(e, {s: b * a ** -2}, check_parity=False) for v, e in flow.components.items()}
    second = {v: substitute(e, flow2) for v, e in homothety.items()}
    for v in sig:
        if to_expr(first[v]) != to_expr(second[v]):
            raise AssertionError(f"orderings disagree on {v.name}")
    return ActionFamily(sig, mon, first)


@dataclass
class Extendability:
    ok: bool
    coordinate: str | None = None
    exponent: int | None = None
    family: ActionFamily | None = None

    def __bool__(self):
        return self.ok


def extendable_to_zero(fam: ActionFamily) -> Extendability:
    """ok iff no component carries a negative power of the parameter a."""
    a = fam.params[0]
    for v in fam.signature:
        m = laurent_min_exponent(fam.components[v], a)
        if m is not None and m < 0:
            return Extendability(False, v.name, m)
    return Extendability(True, family=fam)


# ---------------------------------------------------------------------------
# degree <= 3 block fields


@dataclass
class WeightMinusOneField:
    """X = F d/dy1 + G y1 d/dy2 + (H y2 + 1/2 I y1 y1) d/dy3 in block form.

    F has length d1, G is d2 x d1, H is d3 x d2 and I is d3 x d1 x d1
    (symmetric in the last two indices).  Entries are rationals or base
    polynomials.
    """

    F: Sequence
    G: Sequence[Sequence]
    H: Sequence[Sequence]
    I: Sequence[Sequence[Sequence]]
    base: Sequence[Variable] = ()

    @property
    def ranks(self) -> tuple[int, int, int]:
        return len(self.F), len(self.G), len(self.H)

    def signature(self) -> GradedSignature:
        d1, d2, d3 = self.ranks
        names = lambda w, d: [f"y{w}" if d == 1 else f"y{w}_{i}" for i in range(1, d + 1)]
        out = list(self.base)
        for w, d in ((1, d1), (2, d2), (3, d3)):
            out += [Variable(n, w, kind=FIBER) for n in names(w, d)]
        return GradedSignature(out)

    def levels(self, sig: GradedSignature):
        return [[v for v in sig.fiber if v.weight == w] for w in (1, 2, 3)]

    def field(self) -> VectorField:
        sig = self.signature()
        y1, y2, y3 = self.levels(sig)
        Y1 = [Polynomial.var(v) for v in y1]
        Y2 = [Polynomial.var(v) for v in y2]
        comps = {}
        for s, v in enumerate(y1):
            comps[v] = to_expr(self.F[s])
        for S, v in enumerate(y2):
            comps[v] = sum((to_expr(self.G[S][s]) * Y1[s] for s in range(len(y1))), Polynomial())
        for sig_i, v in enumerate(y3):
            e = sum((to_expr(self.H[sig_i][S]) * Y2[S] for S in range(len(y2))), Polynomial())
            for s in range(len(y1)):
                for r in range(len(y1)):
                    e = e + to_expr(self.I[sig_i][s][r]) * Y1[s] * Y1[r] * Fraction(1, 2)
            comps[v] = e
        return VectorField(comps)


def criterion_deg_le3(X: WeightMinusOneField) -> bool:
    """F = 0 and the contraction H G vanishes."""
    if any(to_expr(f) for f in X.F):
        return False
    d1, d2, d3 = X.ranks
    for sig_i in range(d3):
        for s in range(d1):
            c = sum((to_expr(X.H[sig_i][S]) * to_expr(X.G[S][s]) for S in range(d2)), Polynomial())
            if c:
                return False
    return True


def block_right_family(X: WeightMinusOneField) -> ActionFamily:
    sig = X.signature()
    return right_family(euler_field(sig), X.field(), sig)


def sweep_degree3(values=(-1, 0, 1)) -> list[dict]:
    """Compare the criterion with the Laurent check on all scalar (F, G, H, I)."""
    rows = []
    for F, G, H, I in cartesian(values, repeat=4):
        X = WeightMinusOneField([F], [[G]], [[H]], [[[I]]])
        crit = criterion_deg_le3(X)
        ext = extendable_to_zero(block_right_family(X))
        rows.append({"F": F, "G": G, "H": H, "I": I, "criterion": crit,
                     "extendable": ext.ok, "coordinate": ext.coordinate,
                     "exponent": ext.exponent})
    return rows


def check_sign_symmetry(fam: ActionFamily) -> CheckResult:
    """(-a, b) = (a, b)(-1, 0) = (-1, 0)(a, -b) on a right G_2 family."""
    a, b = fam.params
    A, B = Polynomial.var(a), Polynomial.var(b)
    target = fam.at([-A, B])
    ab = fam.at([A, B])
    m10 = fam.at([-1, 0])
    a_mb = fam.at([A, -B])
    # right action: H(g g') = H(g') with coordinates replaced by H(g)
    first = {v: substitute(e, ab) for v, e in m10.items()}
    second = {v: substitute(e, m10) for v, e in a_mb.items()}
    for v in fam.signature:
        for label, got in (("(a,b)(-1,0)", first[v]), ("(-1,0)(a,-b)", second[v])):
            if to_expr(got) != to_expr(target[v]):
                return CheckResult(False, v.name, str(simplify_expr(to_expr(got) - to_expr(target[v]))),
                                   {"product": label})
    return CheckResult(True)


# ---------------------------------------------------------------------------
# bullet products and left actions


class BulletProduct:
    """Symmetric bilinear v.w with structure constants F[k][i][j]."""

    def __init__(self, n: int, tensor: dict | None = None):
        self.n = n
        self.F = [[[Fraction(0)] * n for _ in range(n)] for _ in range(n)]
        for (k, i, j), c in (tensor or {}).items():
            self.F[k][i][j] = Fraction(c)
            self.F[k][j][i] = Fraction(c)

    @classmethod
    def from_products(cls, n: int, products: dict) -> "BulletProduct":
        """products[(i, j)] = coefficient vector of e_i . e_j (0-based)."""
        tensor = {}
        for (i, j), vec in products.items():
            for k, c in enumerate(vec):
                if c:
                    tensor[(k, i, j)] = c
        return cls(n, tensor)

    def apply(self, v: Sequence, w: Sequence) -> list:
        out = []
        for k in range(self.n):
            acc = Polynomial()
            for i in range(self.n):
                if not v[i]:
                    continue
                for j in range(self.n):
                    c = self.F[k][i][j]
                    if c and w[j]:
                        acc = acc + to_expr(v[i]) * to_expr(w[j]) * c
            out.append(acc)
        return out

    def signature(self, prefix: str = "v") -> GradedSignature:
        return GradedSignature([Variable(f"{prefix}{i}", 1) for i in range(1, self.n + 1)])

    def formal(self, prefix: str = "v") -> list[Polynomial]:
        return [Polynomial.var(v) for v in self.signature(prefix)]

    def cube(self) -> list:
        v = self.formal()
        return self.apply(v, self.apply(v, v))

    def admissible(self) -> bool:
        return not any(self.cube())


def _vec_str(vec) -> str:
    return "(" + ", ".join(str(x) for x in vec) + ")"


def bullet_obstruction(B: BulletProduct) -> list:
    """2 A b B v.(v.v) + b B^2 (v.v).(v.v), the defect of the left action law."""
    A, Bp, b = (Polynomial.var(param(n)) for n in ("A", "B", "b"))
    v = B.formal()
    vv = B.apply(v, v)
    t1 = B.apply(v, vv)
    t2 = B.apply(vv, vv)
    return [to_expr(x) * A * b * Bp * 2 + to_expr(y) * b * Bp * Bp for x, y in zip(t1, t2)]


def left_family_from_bullet(B: BulletProduct) -> ActionFamily:
    """(a, b).v = a v + b v.v; raises with the obstruction if B is inadmissible."""
    obstruction = bullet_obstruction(B)
    if any(obstruction):
        raise G2Error("bullet product is not admissible: " + _vec_str(obstruction))
    sig = B.signature()
    mon = gk_monoid(2, "left")
    a, b = (Polynomial.var(p) for p in mon.params)
    v = B.formal()
    vv = B.apply(v, v)
    comps = {var: a * v[k] + b * to_expr(vv[k]) for k, var in enumerate(sig)}
    return ActionFamily(sig, mon, comps)


def bullet_polarize(B: BulletProduct) -> dict:
    """Residuals of w.(v.v) + 2 v.(v.w) and (v.v).(v.v) in formal v, w."""
    v = B.formal("v")
    w = B.formal("w")
    vv = B.apply(v, v)
    pol = [to_expr(x) + to_expr(y) * 2 for x, y in zip(B.apply(w, vv), B.apply(v, B.apply(v, w)))]
    square = B.apply(vv, vv)
    return {"polarization": pol, "square": square}


def straight_line_check(B: BulletProduct) -> CheckResult:
    """Integral curves of Y = (v.v) d/dv are lines: the flow is v + s v.v."""
    sig = B.signature()
    v = B.formal()
    Y = VectorField({var: e for var, e in zip(sig, B.apply(v, v))})
    for var in sig:
        second = Y(Y(Polynomial.var(var)))
        if to_expr(second):
            return CheckResult(False, var.name, str(second))
    return CheckResult(True)


__all__ = [
    "BulletProduct", "Extendability", "G2Error", "WeightMinusOneField",
    "block_right_family", "bullet_obstruction", "bullet_polarize", "check_sign_symmetry",
    "criterion_deg_le3", "extendable_to_zero", "infinitesimal_pair", "left_family_from_bullet",
    "right_family", "straight_line_check", "sweep_degree3", "lie_bracket", "verify_action",
]
