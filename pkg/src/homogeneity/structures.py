"""Signatures, monoids, action families and check reports."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Iterable, Mapping, Sequence

from .jets import JetElement, gk_compose
from .polynomial import (
    BASE,
    EVEN,
    FIBER,
    ODD,
    PARAMETER,
    Polynomial,
    RationalExpr,
    Variable,
    simplify_expr,
    substitute,
    to_expr,
)


@dataclass
class CheckResult:
    """Outcome of a decidable check; ``witness`` explains a violation."""

    ok: bool
    location: str | None = None
    witness: str | None = None
    data: dict = field(default_factory=dict)

    def __bool__(self):
        return self.ok


class SignatureError(ValueError):
    pass


class GradedSignature:
    """Ordered coordinates of a graded (super) space or bundle chart."""

    def __init__(self, variables: Iterable[Variable]):
        self.variables: list[Variable] = list(variables)
        names = [v.name for v in self.variables]
        if len(set(names)) != len(names):
            raise SignatureError(f"duplicate variable names in {names}")
        for v in self.variables:
            if v.kind == PARAMETER:
                raise SignatureError(f"{v.name} is a parameter, not a coordinate")
            if v.kind == BASE and v.weight:
                raise SignatureError(f"base variable {v.name} must have weight 0")
            if v.weight < 0:
                raise SignatureError(f"negative weight on {v.name}")
        self._by_name = {v.name: v for v in self.variables}

    def __iter__(self):
        return iter(self.variables)

    def __len__(self):
        return len(self.variables)

    def __contains__(self, v):
        return (v.name if isinstance(v, Variable) else v) in self._by_name

    def __getitem__(self, name: str) -> Variable:
        return self._by_name[name]

    def __eq__(self, other):
        if not isinstance(other, GradedSignature):
            return NotImplemented
        return [(v.name, v.weight, v.parity, v.kind) for v in self] == \
            [(v.name, v.weight, v.parity, v.kind) for v in other]

    def __repr__(self):
        return "GradedSignature(" + ", ".join(
            f"{v.name}:{v.weight}{'o' if v.odd else ''}" for v in self) + ")"

    @property
    def base(self) -> list[Variable]:
        return [v for v in self.variables if v.kind == BASE]

    @property
    def fiber(self) -> list[Variable]:
        return [v for v in self.variables if v.kind == FIBER]

    @property
    def degree(self) -> int:
        return max((v.weight for v in self.variables), default=0)

    @property
    def is_super(self) -> bool:
        return any(v.odd for v in self.variables)

    def weights(self) -> dict[str, int]:
        return {v.name: v.weight for v in self.variables}

    def rank(self) -> tuple:
        """(d_1, ..., d_k); in super mode a tuple of (even, odd) pairs."""
        out = []
        for w in range(1, self.degree + 1):
            if self.is_super:
                out.append((sum(1 for v in self.fiber if v.weight == w and not v.odd),
                            sum(1 for v in self.fiber if v.weight == w and v.odd)))
            else:
                out.append(sum(1 for v in self.fiber if v.weight == w))
        return tuple(out)

    def with_conjugates(self) -> "GradedSignature":
        """Append conj(x) partners for every coordinate lacking one."""
        out = list(self.variables)
        names = {v.name for v in out}
        for v in self.variables:
            c = v.conj()
            if c.name not in names:
                out.append(c)
                names.add(c.name)
        return GradedSignature(out)


# ---------------------------------------------------------------------------
# monoids


def param(name: str) -> Variable:
    return Variable(name, 0, EVEN, PARAMETER)


class Monoid:
    """A parameterised monoid: parameter names, identity and product."""

    name: str = ""
    side: str = "commutative"  # or "left" / "right"

    def __init__(self, params: Sequence[Variable], identity: Sequence,
                 product: Callable[[list, list], list], name: str, side: str,
                 conjugate_pairs: bool = False):
        self.params = list(params)
        self.identity = list(identity)
        self._product = product
        self.name = name
        self.side = side
        self.conjugate_pairs = conjugate_pairs

    def __repr__(self):
        return f"Monoid({self.name}, {self.side})"

    def fresh(self, suffix: str) -> list[Variable]:
        out = []
        for p in self.params:
            if p.is_conjugated:
                base = p.name[5:-1]
                out.append(param(f"conj({base}_{suffix})"))
            else:
                out.append(param(f"{p.name}_{suffix}"))
        return out

    def product(self, g: list, h: list) -> list:
        return self._product(g, h)


def reals(t: str = "t") -> Monoid:
    return Monoid([param(t)], [1], lambda g, h: [g[0] * h[0]], "reals", "commutative")


def complexes(xi: str = "xi") -> Monoid:
    p = param(xi)
    return Monoid([p, p.conj()], [1, 1],
                  lambda g, h: [g[0] * h[0], g[1] * h[1]],
                  "complexes", "commutative", conjugate_pairs=True)


def gk_monoid(k: int, side: str) -> Monoid:
    names = ["a", "b"] if k == 2 else [f"a{j}" for j in range(1, k + 1)]

    def prod(g, h):
        return list(gk_compose(JetElement(tuple(map(to_expr, g))),
                               JetElement(tuple(map(to_expr, h)))).coeffs)

    return Monoid([param(n) for n in names], [1] + [0] * (k - 1), prod,
                  f"G{k}-{side}", side)


def m2_monoid(side: str = "right") -> Monoid:
    def prod(g, h):
        a, b, c, d = g
        A, B, C, D = h
        return [a * A + b * C, a * B + b * D, c * A + d * C, c * B + d * D]

    return Monoid([param(n) for n in "abcd"], [1, 0, 0, 1], prod, f"M2-{side}", side)


def monoid_by_name(name: str) -> Monoid:
    if name == "reals":
        return reals()
    if name == "complexes":
        return complexes()
    if name == "M2" or name == "M2-right":
        return m2_monoid("right")
    if name == "M2-left":
        return m2_monoid("left")
    for side in ("left", "right"):
        if name.startswith("G") and name.endswith("-" + side):
            return gk_monoid(int(name[1:-len(side) - 1]), side)
    raise ValueError(f"unknown monoid {name!r}")


# ---------------------------------------------------------------------------
# action families


class ActionFamily:
    """Pullback formulas h_g^* y for every coordinate y of ``signature``."""

    def __init__(self, signature: GradedSignature, monoid: Monoid,
                 components: Mapping[Variable, object], params: Sequence[Variable] | None = None):
        self.signature = signature
        self.monoid = monoid
        self.params = list(params) if params is not None else list(monoid.params)
        comps = {}
        for v in signature:
            comps[v] = simplify_expr(to_expr(components[v])) if v in components else Polynomial.var(v)
        extra = [v.name for v in components if v not in signature]
        if extra:
            raise SignatureError(f"components for undeclared coordinates {extra}")
        self.components: dict[Variable, object] = comps

    def __getitem__(self, v: Variable):
        return self.components[v]

    def __repr__(self):
        body = ", ".join(f"{v.name} -> {e}" for v, e in self.components.items())
        return f"ActionFamily[{self.monoid.name}]({body})"

    def at(self, values: Sequence) -> dict:
        """Components with the parameters replaced by ``values``."""
        sigma = dict(zip(self.params, [to_expr(x) for x in values]))
        return {v: substitute(e, sigma, check_parity=False) for v, e in self.components.items()}

    def renamed_params(self, new: Sequence[Variable]) -> dict:
        return self.at([Polynomial.var(p) for p in new])

    def map_components(self, fn) -> "ActionFamily":
        return ActionFamily(self.signature, self.monoid,
                            {v: fn(e) for v, e in self.components.items()}, self.params)

    def with_conjugates(self) -> "ActionFamily":
        """Complete a complex family by conjugating components (formal reality)."""
        sig = self.signature.with_conjugates()
        comps = dict(self.components)
        for v in self.signature:
            c = v.conj()
            if c not in self.signature:
                comps[c] = self.components[v].conjugate()
        return ActionFamily(sig, self.monoid, comps, self.params)


def _difference(a, b):
    return simplify_expr(to_expr(a) - to_expr(b))


def compose_pullbacks(outer: Mapping[Variable, object], inner: Mapping[Variable, object]) -> dict:
    """(outer then inner) on functions: y -> outer[y] with coordinates replaced by inner."""
    return {v: substitute(e, inner) for v, e in outer.items()}


def verify_action(h: ActionFamily) -> CheckResult:
    """Symbolic check of the action law and of the identity axiom."""
    mon = h.monoid
    g1, g2 = mon.fresh("1"), mon.fresh("2")
    H1 = h.renamed_params(g1)
    H2 = h.renamed_params(g2)
    prod = mon.product([Polynomial.var(p) for p in g1], [Polynomial.var(p) for p in g2])
    H12 = h.at(prod)
    if mon.side == "left":
        lhs = compose_pullbacks(H1, H2)
    else:
        lhs = compose_pullbacks(H2, H1)
    for v in h.signature:
        diff = _difference(lhs[v], H12[v])
        if diff:
            return CheckResult(False, v.name, str(diff),
                               {"law": "composition", "lhs": str(lhs[v]), "rhs": str(H12[v])})
    ident = h.at(mon.identity)
    for v in h.signature:
        diff = _difference(ident[v], Polynomial.var(v))
        if diff:
            return CheckResult(False, v.name, str(diff), {"law": "identity"})
    return CheckResult(True)


def standard_homothety(sig: GradedSignature, monoid: Monoid | None = None) -> ActionFamily:
    """y -> t^w y for every coordinate (xi^w in the complex monoid)."""
    monoid = monoid or reals()
    p = Polynomial.var(monoid.params[0])
    comps = {v: p ** v.weight * Polynomial.var(v) for v in sig}
    if monoid.conjugate_pairs:
        pbar = Polynomial.var(monoid.params[1])
        for v in sig:
            if v.is_conjugated:
                comps[v] = pbar ** v.weight * Polynomial.var(v)
    return ActionFamily(sig, monoid, comps)


def family_max_degree(h: ActionFamily, p: Variable) -> int:
    from .polynomial import max_exponent
    return max((max_exponent(e, p) for e in h.components.values()), default=0)


def expr_parity_ok(v: Variable, e) -> bool:
    num = e.num if isinstance(e, RationalExpr) else e
    return num.is_odd() or not num if v.odd else num.is_even()


__all__ = [
    "ActionFamily", "CheckResult", "GradedSignature", "Monoid", "SignatureError",
    "complexes", "gk_monoid", "m2_monoid", "monoid_by_name", "param", "reals",
    "standard_homothety", "verify_action", "compose_pullbacks", "ODD", "EVEN",
]
