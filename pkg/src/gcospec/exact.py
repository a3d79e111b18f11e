"""Exact matrix arithmetic over the rationals.

Entries are :class:`fractions.Fraction`, which keeps values in lowest terms
with a positive denominator, so equality of matrices is plain tuple equality.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm
from typing import Sequence, Union

Number = Union[int, Fraction]


class DimensionError(ValueError):
    pass


class NullityError(ValueError):
    """Raised when a kernel is not one-dimensional."""


@dataclass(frozen=True)
class RationalMatrix:
    rows: tuple[tuple[Fraction, ...], ...]
    ncols: int

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[Number]], ncols: int | None = None) -> RationalMatrix:
        data = tuple(tuple(Fraction(x) for x in r) for r in rows)
        if ncols is None:
            ncols = len(data[0]) if data else 0
        if any(len(r) != ncols for r in data):
            raise DimensionError("ragged rows")
        return cls(data, ncols)

    @classmethod
    def identity(cls, n: int) -> RationalMatrix:
        return cls.from_rows([[int(i == j) for j in range(n)] for i in range(n)], n)

    @classmethod
    def zeros(cls, nrows: int, ncols: int) -> RationalMatrix:
        return cls.from_rows([[0] * ncols for _ in range(nrows)], ncols)

    @classmethod
    def column(cls, v: Sequence[Number]) -> RationalMatrix:
        return cls.from_rows([[x] for x in v], 1)

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.rows), self.ncols

    @property
    def T(self) -> RationalMatrix:
        nrows = len(self.rows)
        return RationalMatrix(tuple(tuple(self.rows[i][j] for i in range(nrows)) for j in range(self.ncols)), nrows)

    def __getitem__(self, ij: tuple[int, int]) -> Fraction:
        i, j = ij
        return self.rows[i][j]

    def _check_same_shape(self, other: RationalMatrix):
        if self.shape != other.shape:
            raise DimensionError(f"shape mismatch {self.shape} vs {other.shape}")

    def __add__(self, other: RationalMatrix) -> RationalMatrix:
        self._check_same_shape(other)
        return RationalMatrix(tuple(tuple(a + b for a, b in zip(r, s)) for r, s in zip(self.rows, other.rows)),
                              self.ncols)

    def __sub__(self, other: RationalMatrix) -> RationalMatrix:
        self._check_same_shape(other)
        return RationalMatrix(tuple(tuple(a - b for a, b in zip(r, s)) for r, s in zip(self.rows, other.rows)),
                              self.ncols)

    def __neg__(self) -> RationalMatrix:
        return self.scale(-1)

    def scale(self, c: Number) -> RationalMatrix:
        c = Fraction(c)
        return RationalMatrix(tuple(tuple(c * a for a in r) for r in self.rows), self.ncols)

    def __mul__(self, c: Number) -> RationalMatrix:
        if isinstance(c, RationalMatrix):
            return NotImplemented
        return self.scale(c)

    __rmul__ = __mul__

    def __matmul__(self, other: RationalMatrix) -> RationalMatrix:
        if self.ncols != len(other.rows):
            raise DimensionError(f"cannot multiply {self.shape} by {other.shape}")
        cols = list(zip(*other.rows)) if other.rows else []
        out = tuple(tuple(sum((a * b for a, b in zip(r, c)), Fraction(0)) for c in cols) for r in self.rows)
        if not cols:
            out = tuple(() for _ in self.rows)
        return RationalMatrix(out, other.ncols)

    def apply(self, v: Sequence[Number]) -> tuple[Fraction, ...]:
        """Matrix-vector product."""
        if len(v) != self.ncols:
            raise DimensionError(f"vector of length {len(v)} for {self.shape} matrix")
        return tuple(sum((a * Fraction(x) for a, x in zip(r, v)), Fraction(0)) for r in self.rows)

    def is_square(self) -> bool:
        return len(self.rows) == self.ncols

    def is_integral(self) -> bool:
        return all(a.denominator == 1 for r in self.rows for a in r)

    def tolist(self) -> list[list[Fraction]]:
        return [list(r) for r in self.rows]


def as_matrix(m) -> RationalMatrix:
    return m if isinstance(m, RationalMatrix) else RationalMatrix.from_rows(m)


@dataclass(frozen=True)
class IntPolynomial:
    """Integer polynomial, coefficients in ascending degree order.

    The zero polynomial has ``coeffs == ()``.
    """

    coeffs: tuple[int, ...]

    def __post_init__(self):
        if self.coeffs and self.coeffs[-1] == 0:
            raise ValueError("leading coefficient must be nonzero")

    @classmethod
    def from_coeffs(cls, coeffs: Sequence[Number]) -> IntPolynomial:
        c = []
        for x in coeffs:
            x = Fraction(x)
            if x.denominator != 1:
                raise ValueError(f"non-integer coefficient {x}")
            c.append(int(x))
        while c and c[-1] == 0:
            c.pop()
        return cls(tuple(c))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __call__(self, x):
        acc = 0 * x
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __str__(self):
        if not self.coeffs:
            return "0"
        terms = []
        for k in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[k]
            if c == 0:
                continue
            mag = abs(c)
            body = "x" if k == 1 else f"x^{k}" if k else ""
            coef = "" if mag == 1 and k else str(mag)
            sign = "-" if c < 0 else "+"
            terms.append((sign, coef + body))
        out = ("-" if terms[0][0] == "-" else "") + terms[0][1]
        for sign, t in terms[1:]:
            out += f" {sign} {t}"
        return out


def _faddeev_leverrier(a: list[list], n: int, exact_div) -> list:
    # M_k = A M_{k-1} + c_{n-k+1} I,  c_{n-k} = -tr(A M_k) / k
    coeffs = [0] * (n + 1)
    coeffs[n] = 1
    m = [[0] * n for _ in range(n)]
    for k in range(1, n + 1):
        am = [[sum(a[i][t] * m[t][j] for t in range(n)) for j in range(n)] for i in range(n)]
        c_prev = coeffs[n - k + 1]
        for i in range(n):
            am[i][i] += c_prev
        m = am
        tr = sum(sum(a[i][t] * m[t][i] for t in range(n)) for i in range(n))
        coeffs[n - k] = exact_div(-tr, k)
    return coeffs


def _int_div(num: int, k: int) -> int:
    q, r = divmod(num, k)
    if r:
        raise ArithmeticError("Faddeev-LeVerrier trace not divisible; input is not integral")
    return q


def charpoly_exact(m) -> tuple[Fraction, ...]:
    """Coefficients of det(xI - m), ascending."""
    m = as_matrix(m)
    if not m.is_square():
        raise DimensionError(f"characteristic polynomial of non-square {m.shape} matrix")
    n = m.ncols
    if m.is_integral():
        a = [[int(x) for x in r] for r in m.rows]
        return tuple(Fraction(c) for c in _faddeev_leverrier(a, n, _int_div))
    a = [list(r) for r in m.rows]
    return tuple(Fraction(c) for c in _faddeev_leverrier(a, n, lambda num, k: Fraction(num) / k))


def int_charpoly(adj: Sequence[Sequence[int]]) -> IntPolynomial:
    """det(xI - A) for an integer matrix given as nested lists."""
    n = len(adj)
    if any(len(r) != n for r in adj):
        raise DimensionError("characteristic polynomial of non-square matrix")
    return IntPolynomial(tuple(_faddeev_leverrier([list(map(int, r)) for r in adj], n, _int_div)))


def _integer_rows(m: RationalMatrix) -> list[list[int]]:
    out = []
    for r in m.rows:
        d = lcm(*(a.denominator for a in r)) if r else 1
        out.append([int(a * d) for a in r])
    return out


def rank_exact(m) -> int:
    """Rank over Q by fraction-free (Bareiss) elimination."""
    m = as_matrix(m)
    a = _integer_rows(m)
    nrows, ncols = m.shape
    rank = 0
    prev = 1
    for col in range(ncols):
        piv = next((r for r in range(rank, nrows) if a[r][col] != 0), None)
        if piv is None:
            continue
        a[rank], a[piv] = a[piv], a[rank]
        p = a[rank][col]
        for r in range(rank + 1, nrows):
            for c in range(col + 1, ncols):
                a[r][c], rem = divmod(p * a[r][c] - a[r][col] * a[rank][c], prev)
                assert rem == 0
            a[r][col] = 0
        prev = p
        rank += 1
    return rank


def rref(m) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form and pivot columns."""
    m = as_matrix(m)
    a = m.tolist()
    nrows, ncols = m.shape
    pivots = []
    r = 0
    for col in range(ncols):
        piv = next((i for i in range(r, nrows) if a[i][col] != 0), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        p = a[r][col]
        a[r] = [x / p for x in a[r]]
        for i in range(nrows):
            if i != r and a[i][col] != 0:
                f = a[i][col]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(col)
        r += 1
        if r == nrows:
            break
    return a, pivots


def integer_kernel_vector(m) -> tuple[int, ...]:
    """Primitive integer generator of a one-dimensional kernel.

    The gcd of the entries is 1 and the first nonzero entry is positive.
    """
    m = as_matrix(m)
    ncols = m.ncols
    a, pivots = rref(m)
    free = [c for c in range(ncols) if c not in pivots]
    if len(free) != 1:
        raise NullityError(f"kernel has dimension {len(free)}, expected 1")
    f = free[0]
    x = [Fraction(0)] * ncols
    x[f] = Fraction(1)
    for row, pc in zip(a, pivots):
        x[pc] = -row[f]
    d = lcm(*(v.denominator for v in x))
    ints = [int(v * d) for v in x]
    g = 0
    for v in ints:
        g = gcd(g, v)
    ints = [v // g for v in ints]
    lead = next(v for v in ints if v)
    if lead < 0:
        ints = [-v for v in ints]
    return tuple(ints)
