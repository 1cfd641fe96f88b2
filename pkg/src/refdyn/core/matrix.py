"""Exact rational matrices, characteristic and minimal polynomials.

The characteristic polynomial is computed by the Faddeev-LeVerrier recursion,
which only ever divides by integers so every step stays exact; the minimal
polynomial comes from Krylov sequences (first linear dependence among the
iterates of each basis vector, lcm over the basis).
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from .rationals import RationalLike, as_rational
from .unipoly import UniPoly


class RatMatrix:
    __slots__ = ("rows", "cols", "entries")

    def __init__(self, entries: Sequence[Sequence[RationalLike]]):
        rows = [tuple(as_rational(x) for x in row) for row in entries]
        if not rows or not rows[0]:
            raise ValueError("matrix dimensions must be at least 1x1")
        ncols = len(rows[0])
        if any(len(r) != ncols for r in rows):
            raise ValueError("ragged rows")
        self.rows = len(rows)
        self.cols = ncols
        self.entries: tuple[tuple[Fraction, ...], ...] = tuple(rows)

    @classmethod
    def identity(cls, n: int) -> "RatMatrix":
        return cls([[1 if i == j else 0 for j in range(n)] for i in range(n)])

    @classmethod
    def zero(cls, rows: int, cols: int) -> "RatMatrix":
        return cls([[0] * cols for _ in range(rows)])

    def __getitem__(self, ij: tuple[int, int]) -> Fraction:
        i, j = ij
        return self.entries[i][j]

    def is_square(self) -> bool:
        return self.rows == self.cols

    def is_integer(self) -> bool:
        return all(x.denominator == 1 for row in self.entries for x in row)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, RatMatrix) and self.entries == other.entries

    def __hash__(self) -> int:
        return hash(self.entries)

    def __add__(self, other: "RatMatrix") -> "RatMatrix":
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError("shape mismatch")
        return RatMatrix(
            [
                [a + b for a, b in zip(r1, r2)]
                for r1, r2 in zip(self.entries, other.entries)
            ]
        )

    def __sub__(self, other: "RatMatrix") -> "RatMatrix":
        return self + other.scale(-1)

    def scale(self, c: RationalLike) -> "RatMatrix":
        c = as_rational(c)
        return RatMatrix([[c * x for x in row] for row in self.entries])

    def __mul__(self, other: "RatMatrix") -> "RatMatrix":
        if self.cols != other.rows:
            raise ValueError("shape mismatch")
        bt = list(zip(*other.entries))
        return RatMatrix(
            [
                [sum(a * b for a, b in zip(row, col)) for col in bt]
                for row in self.entries
            ]
        )

    def __pow__(self, n: int) -> "RatMatrix":
        if not self.is_square():
            raise ValueError("non-square matrix")
        if n < 0:
            raise ValueError("negative power")
        result = RatMatrix.identity(self.rows)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def matvec(self, v: Sequence[RationalLike]) -> tuple[Fraction, ...]:
        if len(v) != self.cols:
            raise ValueError("vector length mismatch")
        vv = [as_rational(x) for x in v]
        return tuple(sum(a * b for a, b in zip(row, vv)) for row in self.entries)

    def transpose(self) -> "RatMatrix":
        return RatMatrix(list(zip(*self.entries)))

    def trace(self) -> Fraction:
        if not self.is_square():
            raise ValueError("non-square matrix")
        return sum((self.entries[i][i] for i in range(self.rows)), Fraction(0))

    def column(self, j: int) -> tuple[Fraction, ...]:
        return tuple(row[j] for row in self.entries)

    def to_int_lists(self) -> list[list[int]]:
        if not self.is_integer():
            raise ValueError("matrix has non-integer entries")
        return [[int(x) for x in row] for row in self.entries]

    def __repr__(self) -> str:
        return "RatMatrix(" + "; ".join(
            " ".join(str(x) for x in row) for row in self.entries
        ) + ")"


def char_poly(m: RatMatrix) -> UniPoly:
    """det(xI - m) by Faddeev-LeVerrier; monic of degree = dimension."""
    if not m.is_square():
        raise ValueError("characteristic polynomial of a non-square matrix")
    n = m.rows
    coeffs = [Fraction(0)] * (n + 1)
    coeffs[n] = Fraction(1)
    mk = m
    ident = RatMatrix.identity(n)
    for k in range(1, n + 1):
        if k > 1:
            mk = m * (mk + ident.scale(coeffs[n - k + 1]))
        c = -mk.trace() / k
        coeffs[n - k] = c
    return UniPoly(coeffs)


def minimal_poly(m: RatMatrix) -> UniPoly:
    """Monic polynomial of least degree annihilating m.

    For each standard basis vector e, the Krylov sequence e, m e, m^2 e, ...
    is extended until the first exact linear dependence; the recorded
    combination is the minimal polynomial of m relative to e, and the lcm
    over the basis is the minimal polynomial of m.
    """
    if not m.is_square():
        raise ValueError("minimal polynomial of a non-square matrix")
    n = m.rows
    result = UniPoly.one()
    for start in range(n):
        vec = [Fraction(1) if i == start else Fraction(0) for i in range(n)]
        local = _krylov_minimal(m, vec)
        result = UniPoly.lcm(result, local)
        if result.degree == n:
            break
    return result.monic()


def _krylov_minimal(m: RatMatrix, v: list[Fraction]) -> UniPoly:
    """Least monic p with p(m) v = 0, via incremental row reduction.

    ``echelon`` holds reduced Krylov vectors together with the coordinates
    expressing them in terms of m^k v, so the first vanishing reduction
    yields the dependence coefficients directly.
    """
    n = m.rows
    echelon: list[tuple[list[Fraction], int, list[Fraction]]] = []
    cur = list(v)
    k = 0
    while True:
        combo = [Fraction(0)] * (k + 1)
        combo[k] = Fraction(1)
        red = list(cur)
        for row, pivot, row_combo in echelon:
            f = red[pivot]
            if f:
                for i in range(n):
                    red[i] -= f * row[i]
                for i, c in enumerate(row_combo):
                    if c:
                        combo[i] -= f * c
        pivot = next((i for i, x in enumerate(red) if x), None)
        if pivot is None:
            return UniPoly(combo).monic()
        inv = 1 / red[pivot]
        red = [x * inv for x in red]
        combo = [x * inv for x in combo]
        combo.extend(Fraction(0) for _ in range(n + 1 - len(combo)))
        echelon.append((red, pivot, combo))
        cur = list(m.matvec(cur))
        k += 1


def matrix_from_int_rows(rows: Sequence[Sequence[int]]) -> RatMatrix:
    return RatMatrix(rows)
