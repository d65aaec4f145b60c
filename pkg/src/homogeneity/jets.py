"""The monoid G_k of k-jets of maps (R,0) -> (R,0) and its Weil-algebra picture.

A jet is stored by its scaled Taylor coefficients (a_1, ..., a_k), where
phi(t) = a_1 t + a_2 t^2/2! + ... + a_k t^k/k!.  Coefficients may be any ring
elements (rationals or symbolic polynomials), which lets the same code build
the symbolic product used when verifying actions.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial


class JetOrderError(ValueError):
    pass


class NonInvertibleJetError(ValueError):
    pass


def _series_mul(p: list, q: list, k: int) -> list:
    """Product of truncated power series (index = power of t, 0..k)."""
    out = [0] * (k + 1)
    for i, a in enumerate(p):
        if not a:
            continue
        for j in range(0, k + 1 - i):
            b = q[j]
            if b:
                out[i + j] = out[i + j] + a * b
    return out


def _compose_series(phi: list, psi: list, k: int) -> list:
    """Series of phi(psi(t)) truncated at t^k; both have zero constant term."""
    out = [0] * (k + 1)
    power = [1] + [0] * k  # psi^0
    for n in range(1, k + 1):
        power = _series_mul(power, psi, k)
        c = phi[n]
        if c:
            for j in range(k + 1):
                if power[j]:
                    out[j] = out[j] + c * power[j]
    return out


@dataclass(frozen=True)
class JetElement:
    coeffs: tuple

    def __post_init__(self):
        if not self.coeffs:
            raise JetOrderError("jets have order at least 1")
        object.__setattr__(self, "coeffs", tuple(
            Fraction(c) if isinstance(c, int) else c for c in self.coeffs))

    @property
    def order(self) -> int:
        return len(self.coeffs)

    @classmethod
    def identity(cls, k: int) -> "JetElement":
        return cls((1,) + (0,) * (k - 1))

    def series(self) -> list:
        """Plain power-series coefficients (index = power of t)."""
        return [0] + [c * Fraction(1, factorial(j)) for j, c in enumerate(self.coeffs, start=1)]

    @classmethod
    def from_series(cls, series: list) -> "JetElement":
        return cls(tuple(series[j] * factorial(j) for j in range(1, len(series))))

    def __mul__(self, other: "JetElement") -> "JetElement":
        return gk_compose(self, other)

    @property
    def invertible(self) -> bool:
        return bool(self.coeffs[0])

    def __str__(self):
        return "(" + ", ".join(str(c) for c in self.coeffs) + ")"


def gk_compose(p: JetElement, q: JetElement) -> JetElement:
    """The G_k product [phi]*[psi] = [phi o psi]."""
    if p.order != q.order:
        raise JetOrderError(f"order mismatch {p.order} != {q.order}")
    k = p.order
    return JetElement.from_series(_compose_series(p.series(), q.series(), k))


def gk_inverse(p: JetElement) -> JetElement:
    """Two-sided inverse, solved order by order."""
    if not p.invertible:
        raise NonInvertibleJetError("jet with a_1 = 0 is not invertible")
    k = p.order
    phi = p.series()
    a1 = phi[1]
    # psi with phi(psi(t)) = t, fixing psi's t^n coefficient at step n
    psi = [0] * (k + 1)
    psi[1] = Fraction(1) / a1 if isinstance(a1, (int, Fraction)) else 1 / a1
    for n in range(2, k + 1):
        current = _compose_series(phi, psi, n)
        psi[n] = -current[n] * psi[1]
    return JetElement.from_series(psi)


class WeilEndomorphism:
    """Algebra endomorphism eps -> a_1 eps + ... + a_k eps^k/k! of R[eps]/(eps^(k+1)).

    Represented by the image of eps as a truncated series; ``f @ g`` means
    "apply g first, then f", i.e. ordinary composition of maps.
    """

    __slots__ = ("k", "image")

    def __init__(self, k: int, image: list):
        self.k = k
        self.image = list(image) + [0] * (k + 1 - len(image))

    def __call__(self, element: list) -> list:
        """Apply to an algebra element given by its eps-coefficients."""
        out = [0] * (self.k + 1)
        power = [1] + [0] * self.k
        for n, c in enumerate(element[: self.k + 1]):
            if n:
                power = _series_mul(power, self.image, self.k)
            if c:
                for j in range(self.k + 1):
                    if power[j]:
                        out[j] = out[j] + c * power[j]
        return out

    def __matmul__(self, other: "WeilEndomorphism") -> "WeilEndomorphism":
        if self.k != other.k:
            raise JetOrderError("order mismatch")
        # (f o g)(eps) = f(g(eps))
        return WeilEndomorphism(self.k, self(other.image))

    def __eq__(self, other):
        if not isinstance(other, WeilEndomorphism):
            return NotImplemented
        return self.k == other.k and all(
            a == b for a, b in zip(self.image, other.image))

    def __repr__(self):
        return f"WeilEndomorphism(k={self.k}, eps -> {self.image[1:]})"


def weil_endo(p: JetElement) -> WeilEndomorphism:
    return WeilEndomorphism(p.order, p.series())


NON_COMMUTING_WITNESS = (JetElement((1, 1)), JetElement((2, 0)))
