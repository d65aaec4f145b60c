"""Dense matrices over polynomials and rational expressions.

Entries are stored as :class:`RationalExpr`, so elimination is exact over the
field of fractions of the base coordinate ring.
"""

from __future__ import annotations

from typing import Sequence

from .polynomial import RationalExpr, simplify_expr


class SingularMatrixError(ValueError):
    pass


def _r(x) -> RationalExpr:
    return RationalExpr.coerce(x)


class Matrix:
    __slots__ = ("rows",)

    def __init__(self, rows: Sequence[Sequence]):
        self.rows = [[_r(x) for x in row] for row in rows]
        if self.rows and len({len(r) for r in self.rows}) != 1:
            raise ValueError("ragged matrix")

    @classmethod
    def identity(cls, n: int) -> "Matrix":
        return cls([[1 if i == j else 0 for j in range(n)] for i in range(n)])

    @classmethod
    def zeros(cls, n: int, m: int | None = None) -> "Matrix":
        return cls([[0] * (n if m is None else m) for _ in range(n)])

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.rows), len(self.rows[0]) if self.rows else 0

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def __eq__(self, other):
        if not isinstance(other, Matrix) or self.shape != other.shape:
            return NotImplemented
        return all(a == b for ra, rb in zip(self.rows, other.rows) for a, b in zip(ra, rb))

    def __add__(self, other: "Matrix") -> "Matrix":
        return Matrix([[a + b for a, b in zip(ra, rb)] for ra, rb in zip(self.rows, other.rows)])

    def __sub__(self, other: "Matrix") -> "Matrix":
        return Matrix([[a - b for a, b in zip(ra, rb)] for ra, rb in zip(self.rows, other.rows)])

    def __mul__(self, other):
        if isinstance(other, Matrix):
            n, k = self.shape
            k2, m = other.shape
            if k != k2:
                raise ValueError("shape mismatch")
            out = []
            for i in range(n):
                row = []
                for j in range(m):
                    acc = RationalExpr(0)
                    for t in range(k):
                        a = self.rows[i][t]
                        if a:
                            b = other.rows[t][j]
                            if b:
                                acc = acc + a * b
                    row.append(acc)
                out.append(row)
            return Matrix(out)
        return Matrix([[a * other for a in row] for row in self.rows])

    def is_zero(self) -> bool:
        return not any(x for row in self.rows for x in row)

    def transpose(self) -> "Matrix":
        n, m = self.shape
        return Matrix([[self.rows[i][j] for i in range(n)] for j in range(m)])

    def entries(self):
        return [[simplify_expr(x) for x in row] for row in self.rows]

    def __repr__(self):
        return "Matrix(" + "; ".join(", ".join(str(x) for x in row) for row in self.rows) + ")"

    def inverse(self) -> "Matrix":
        n, m = self.shape
        if n != m:
            raise ValueError("inverse of a non-square matrix")
        aug = [row[:] + [_r(1 if i == j else 0) for j in range(n)] for i, row in enumerate(self.rows)]
        for col in range(n):
            piv = next((r for r in range(col, n) if aug[r][col]), None)
            if piv is None:
                raise SingularMatrixError("matrix is singular")
            aug[col], aug[piv] = aug[piv], aug[col]
            p = aug[col][col]
            aug[col] = [x / p for x in aug[col]]
            for r in range(n):
                if r != col and aug[r][col]:
                    f = aug[r][col]
                    aug[r] = [x - f * y for x, y in zip(aug[r], aug[col])]
        return Matrix([row[n:] for row in aug])


def independent_rows(rows: Sequence[Sequence], base: Sequence[Sequence] = ()) -> list[int]:
    """Indices of a greedy, first-come maximal independent subset of ``rows``.

    Rows already in ``base`` count as chosen; only indices into ``rows`` are
    returned.
    """
    echelon: list[tuple[int, list[RationalExpr]]] = []

    def reduce(vec):
        vec = [_r(x) for x in vec]
        for pc, prow in echelon:
            if vec[pc]:
                f = vec[pc] / prow[pc]
                vec = [a - f * b for a, b in zip(vec, prow)]
        return vec

    def add(vec) -> bool:
        vec = reduce(vec)
        pc = next((k for k, x in enumerate(vec) if x), None)
        if pc is None:
            return False
        echelon.append((pc, vec))
        return True

    for vec in base:
        add(vec)
    return [i for i, vec in enumerate(rows) if add(vec)]


def rank(rows: Sequence[Sequence]) -> int:
    return len(independent_rows(rows))
