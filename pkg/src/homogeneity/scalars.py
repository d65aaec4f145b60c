"""Exact scalars: rationals, Gaussian rationals and cyclotomic numbers.

Rationals are plain :class:`fractions.Fraction`.  Gaussian rationals carry
an exact real and imaginary part.  Cyclotomic numbers are elements of the
field Q(zeta_m), stored as a rational coefficient vector reduced modulo the
m-th cyclotomic polynomial; the imaginary unit lives inside Q(zeta_m)
whenever 4 divides m.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import gcd


class CyclotomicOrderError(ValueError):
    """Raised when two cyclotomic numbers of different orders meet."""


def as_fraction(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    raise TypeError(f"not a rational scalar: {value!r}")


class GaussianRational:
    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        self.re = as_fraction(re)
        self.im = as_fraction(im)

    @classmethod
    def coerce(cls, value) -> "GaussianRational":
        if isinstance(value, GaussianRational):
            return value
        return cls(as_fraction(value), 0)

    def __repr__(self):
        return f"GaussianRational({self.re}, {self.im})"

    def __str__(self):
        if not self.im:
            return str(self.re)
        im = "i" if self.im == 1 else "-i" if self.im == -1 else f"{self.im}*i"
        if not self.re:
            return im
        sign = "" if im.startswith("-") else "+"
        return f"({self.re}{sign}{im})"

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __eq__(self, other):
        if isinstance(other, GaussianRational):
            return self.re == other.re and self.im == other.im
        if isinstance(other, (int, Fraction)):
            return self.im == 0 and self.re == other
        return NotImplemented

    def __hash__(self):
        if not self.im:
            return hash(self.re)
        return hash((self.re, self.im))

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def __add__(self, other):
        if isinstance(other, Cyclotomic):
            return NotImplemented
        o = GaussianRational.coerce(other)
        return GaussianRational(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, Cyclotomic):
            return NotImplemented
        o = GaussianRational.coerce(other)
        return GaussianRational(self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        return GaussianRational.coerce(other) - self

    def __mul__(self, other):
        if isinstance(other, Cyclotomic):
            return NotImplemented
        o = GaussianRational.coerce(other)
        return GaussianRational(self.re * o.re - self.im * o.im,
                                self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, Cyclotomic):
            return NotImplemented
        o = GaussianRational.coerce(other)
        norm = o.re * o.re + o.im * o.im
        if not norm:
            raise ZeroDivisionError("GaussianRational division by zero")
        return self * GaussianRational(o.re / norm, -o.im / norm)

    def __rtruediv__(self, other):
        return GaussianRational.coerce(other) / self

    def __pow__(self, n: int):
        if n < 0:
            return GaussianRational(1) / self ** (-n)
        result = GaussianRational(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def conjugate(self) -> "GaussianRational":
        return GaussianRational(self.re, -self.im)

    def simplify(self):
        """Collapse to a Fraction when the imaginary part vanishes."""
        return self.re if not self.im else self


I = GaussianRational(0, 1)


def conjugate_scalar(value):
    if isinstance(value, (GaussianRational, Cyclotomic)):
        return value.conjugate()
    return value


def simplify_scalar(value):
    if isinstance(value, GaussianRational):
        return value.simplify()
    if isinstance(value, int):
        return Fraction(value)
    return value


@lru_cache(maxsize=None)
def cyclotomic_polynomial(m: int) -> tuple[int, ...]:
    """Integer coefficients of Phi_m, lowest degree first."""
    if m <= 0:
        raise ValueError("cyclotomic order must be positive")
    # x^m - 1 divided by Phi_d for every proper divisor d
    num = [-1] + [0] * (m - 1) + [1]
    for d in range(1, m):
        if m % d == 0:
            num = _exact_int_division(num, list(cyclotomic_polynomial(d)))
    return tuple(num)


def _exact_int_division(num: list[int], den: list[int]) -> list[int]:
    num = num[:]
    out = [0] * (len(num) - len(den) + 1)
    lead = den[-1]
    for i in range(len(out) - 1, -1, -1):
        q, r = divmod(num[i + len(den) - 1], lead)
        assert r == 0
        out[i] = q
        for j, c in enumerate(den):
            num[i + j] -= q * c
    assert not any(num[: len(den) - 1])
    return out


def euler_phi(m: int) -> int:
    return len(cyclotomic_polynomial(m)) - 1


class Cyclotomic:
    """Element of Q(zeta_m) in the power basis 1, zeta, ..., zeta^(phi(m)-1)."""

    __slots__ = ("order", "coeffs")

    def __init__(self, order: int, coeffs):
        if order <= 0:
            raise ValueError("cyclotomic order must be positive")
        self.order = order
        self.coeffs = _reduce(order, [as_fraction(c) for c in coeffs])

    @classmethod
    def zeta(cls, order: int, power: int = 1) -> "Cyclotomic":
        power %= order
        return cls(order, [0] * power + [1])

    @classmethod
    def coerce(cls, value, order: int) -> "Cyclotomic":
        if isinstance(value, Cyclotomic):
            if value.order != order:
                raise CyclotomicOrderError(
                    f"cannot mix cyclotomic orders {value.order} and {order}")
            return value
        if isinstance(value, GaussianRational):
            if not value.im:
                return cls(order, [value.re])
            if order % 4:
                raise CyclotomicOrderError(
                    f"the imaginary unit is not in Q(zeta_{order})")
            i = cls.zeta(order, order // 4)
            return cls(order, [value.re]) + i * cls(order, [value.im])
        return cls(order, [as_fraction(value)])

    def __repr__(self):
        return f"Cyclotomic({self.order}, {list(map(str, self.coeffs))})"

    def __str__(self):
        terms = []
        for k, c in enumerate(self.coeffs):
            if not c:
                continue
            z = "" if k == 0 else f"zeta{self.order}" + (f"^{k}" if k > 1 else "")
            if not z:
                terms.append(str(c))
            elif c == 1:
                terms.append(z)
            elif c == -1:
                terms.append("-" + z)
            else:
                terms.append(f"{c}*{z}")
        if not terms:
            return "0"
        body = " + ".join(terms).replace("+ -", "- ")
        return body if len(terms) == 1 else f"({body})"

    def __bool__(self):
        return any(self.coeffs)

    def __eq__(self, other):
        try:
            o = Cyclotomic.coerce(other, self.order)
        except (TypeError, CyclotomicOrderError):
            return NotImplemented
        return self.coeffs == o.coeffs

    def __hash__(self):
        if all(not c for c in self.coeffs[1:]):
            return hash(self.coeffs[0] if self.coeffs else Fraction(0))
        return hash((self.order, tuple(self.coeffs)))

    def __neg__(self):
        return Cyclotomic(self.order, [-c for c in self.coeffs])

    def __add__(self, other):
        o = Cyclotomic.coerce(other, self.order)
        n = max(len(self.coeffs), len(o.coeffs))
        a = self.coeffs + [Fraction(0)] * (n - len(self.coeffs))
        b = o.coeffs + [Fraction(0)] * (n - len(o.coeffs))
        return Cyclotomic(self.order, [x + y for x, y in zip(a, b)])

    __radd__ = __add__

    def __sub__(self, other):
        return self + (-Cyclotomic.coerce(other, self.order))

    def __rsub__(self, other):
        return Cyclotomic.coerce(other, self.order) - self

    def __mul__(self, other):
        o = Cyclotomic.coerce(other, self.order)
        if not self.coeffs or not o.coeffs:
            return Cyclotomic(self.order, [])
        prod = [Fraction(0)] * (len(self.coeffs) + len(o.coeffs) - 1)
        for i, x in enumerate(self.coeffs):
            if x:
                for j, y in enumerate(o.coeffs):
                    prod[i + j] += x * y
        return Cyclotomic(self.order, prod)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative powers of cyclotomic numbers are not supported")
        result = Cyclotomic(self.order, [1])
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def conjugate(self) -> "Cyclotomic":
        # zeta -> zeta^(m-1)
        out = Cyclotomic(self.order, [])
        zbar = Cyclotomic.zeta(self.order, self.order - 1)
        for k, c in enumerate(self.coeffs):
            if c:
                out = out + zbar ** k * c
        return out


def _reduce(order: int, coeffs: list[Fraction]) -> list[Fraction]:
    phi = cyclotomic_polynomial(order)
    deg = len(phi) - 1
    coeffs = coeffs[:]
    # Phi_m is monic
    for top in range(len(coeffs) - 1, deg - 1, -1):
        c = coeffs[top]
        if c:
            shift = top - deg
            for j, p in enumerate(phi):
                coeffs[shift + j] -= c * p
    coeffs = coeffs[:deg] + [Fraction(0)] * max(0, deg - len(coeffs))
    return coeffs


def lcm(a: int, b: int) -> int:
    return a * b // gcd(a, b)
