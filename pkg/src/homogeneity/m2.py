"""Actions of the matrix monoid M_2 and the induced double grading."""

from __future__ import annotations

from dataclasses import dataclass

from .fields import VectorField, derivative_at, lie_bracket
from .jets import JetElement
from .polynomial import BASE, FIBER, Polynomial, Variable
from .structures import ActionFamily, GradedSignature, gk_monoid, m2_monoid

INDICES = ("00", "10", "01", "20", "11", "02")


def m2_embed(j: JetElement) -> list[list]:
    """(a, b) -> [[a, b], [0, a^2]], a monoid map G_2 -> M_2."""
    if j.order != 2:
        raise ValueError("m2_embed expects a 2-jet")
    a, b = j.coeffs
    return [[a, b], [0, a * a]]


def matmul(A, B) -> list[list]:
    return [[A[i][0] * B[0][j] + A[i][1] * B[1][j] for j in range(2)] for i in range(2)]


def _name(j: int, idx: str, m: int) -> str:
    return f"x{idx}" if m == 1 else f"x{j}_{idx}"


def j2_signature(m: int) -> GradedSignature:
    """Second jets at (0,0) of maps R^2 -> R^m; weights record total order."""
    out = []
    for idx in INDICES:
        for j in range(1, m + 1):
            w = int(idx[0]) + int(idx[1])
            out.append(Variable(_name(j, idx, m), w, kind=BASE if w == 0 else FIBER))
    return GradedSignature(out)


def bi_weights(sig: GradedSignature) -> dict[str, tuple[int, int]]:
    out = {}
    for v in sig:
        idx = v.name.rsplit("_", 1)[-1] if "_" in v.name else v.name[1:]
        out[v.name] = (int(idx[0]), int(idx[1]))
    return out


def j2_velocities_action(m: int = 1) -> ActionFamily:
    """[gamma] . A = [gamma(a t + b s, c t + d s)], a right M_2 action."""
    sig = j2_signature(m)
    mon = m2_monoid("right")
    a, b, c, d = (Polynomial.var(p) for p in mon.params)
    comps = {}
    for j in range(1, m + 1):
        x = {idx: Polynomial.var(sig[_name(j, idx, m)]) for idx in INDICES}
        images = {
            "00": x["00"],
            "10": a * x["10"] + c * x["01"],
            "01": b * x["10"] + d * x["01"],
            "20": a * a * x["20"] + a * c * x["11"] * 2 + c * c * x["02"],
            "11": a * b * x["20"] + (a * d + b * c) * x["11"] + c * d * x["02"],
            "02": b * b * x["20"] + b * d * x["11"] * 2 + d * d * x["02"],
        }
        for idx in INDICES:
            comps[sig[_name(j, idx, m)]] = images[idx]
    return ActionFamily(sig, mon, comps)


@dataclass
class DoubleWeightReport:
    delta1: VectorField
    delta2: VectorField
    X: VectorField
    Y: VectorField
    brackets: dict

    def bracket_strings(self) -> dict[str, str]:
        return {k: str(v) for k, v in self.brackets.items()}

    def coefficient(self, name: str, field: VectorField):
        """c with brackets[name] == c * field, or None."""
        br = self.brackets[name]
        for c in (1, -1, 0, 2, -2):
            if br == field.scale(c):
                return c
        return None


def double_weight_analysis(fam: ActionFamily) -> DoubleWeightReport:
    """Infinitesimal generators of the diagonal and unipotent subgroups and their brackets."""
    a, b, c, d = fam.params
    ident = {a: 1, b: 0, c: 0, d: 1}
    delta1 = derivative_at(fam, a, ident)
    delta2 = derivative_at(fam, d, ident)
    X = derivative_at(fam, b, ident)
    Y = derivative_at(fam, c, ident)
    XY = lie_bracket(X, Y)
    brackets = {
        "[D1,D2]": lie_bracket(delta1, delta2),
        "[D1,X]": lie_bracket(delta1, X),
        "[D2,X]": lie_bracket(delta2, X),
        "[D1,Y]": lie_bracket(delta1, Y),
        "[D2,Y]": lie_bracket(delta2, Y),
        "[X,Y]": XY,
        "[X,Y]-(D1-D2)": XY - (delta1 - delta2),
    }
    return DoubleWeightReport(delta1, delta2, X, Y, brackets)


def restrict_to_g2(fam: ActionFamily) -> ActionFamily:
    """Pull a right M_2 family back along the embedding (a, b) -> [[a, b], [0, a^2]]."""
    mon = gk_monoid(2, "right")
    a, b = (Polynomial.var(p) for p in mon.params)
    comps = fam.at([a, b, Polynomial(), a * a])
    return ActionFamily(fam.signature, mon, comps)
