"""Exact scalars and dense matrices over Q or F_p.

Matrices are immutable; entries are ``Fraction`` over Q and reduced ``int`` over F_p.
Kronecker products order the basis lexicographically, left factor most significant.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from typing import Iterable, Sequence


class LinalgError(ValueError):
    pass


class SingularMatrix(LinalgError):
    pass


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    k = 2
    while k * k <= p:
        if p % k == 0:
            return False
        k += 1
    return True


@dataclass(frozen=True)
class Field:
    """Q when ``p == 0``, otherwise the prime field F_p."""

    p: int = 0

    def __post_init__(self) -> None:
        if self.p and not _is_prime(self.p):
            raise LinalgError(f"{self.p} is not prime")

    @property
    def name(self) -> str:
        return "Q" if self.p == 0 else f"Fp:{self.p}"

    def __call__(self, x) -> Fraction | int:
        """Coerce an int, Fraction or "p/q" string into the field."""
        if isinstance(x, str):
            x = Fraction(x.strip())
        if self.p == 0:
            return Fraction(x)
        if isinstance(x, Fraction):
            if x.denominator % self.p == 0:
                raise LinalgError(f"{x} has no image in F_{self.p}")
            return x.numerator * pow(x.denominator, -1, self.p) % self.p
        if isinstance(x, bool) or not isinstance(x, int):
            raise LinalgError(f"cannot coerce {x!r} into {self.name}")
        return x % self.p

    def reduce(self, x):
        return x % self.p if self.p else x

    def inv(self, x):
        if not x:
            raise ZeroDivisionError(f"division by zero in {self.name}")
        if self.p:
            return pow(x, -1, self.p)
        return 1 / x

    def fmt(self, x) -> str:
        if self.p:
            return str(x)
        x = Fraction(x)
        return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"

    @classmethod
    def parse(cls, text: str) -> "Field":
        """Parse ``Q`` or ``Fp:<p>``."""
        text = text.strip()
        if text == "Q":
            return cls(0)
        if text.startswith("Fp:"):
            try:
                return cls(int(text[3:]))
            except ValueError as exc:
                raise LinalgError(f"bad field {text!r}") from exc
        raise LinalgError(f"bad field {text!r}; expected Q or Fp:<p>")


QQ = Field(0)


class Matrix:
    __slots__ = ("field", "rows", "cols", "_data", "_hash")

    def __init__(self, field: Field, data: Sequence[Sequence], *, _trusted: bool = False):
        self.field = field
        if _trusted:
            rows = data
        else:
            rows = tuple(tuple(field(x) for x in row) for row in data)
        if rows and any(len(r) != len(rows[0]) for r in rows):
            raise LinalgError("ragged matrix")
        self._data = rows
        self.rows = len(rows)
        self.cols = len(rows[0]) if rows else 0
        self._hash = None

    # constructors
    @classmethod
    def identity(cls, field: Field, n: int) -> "Matrix":
        one, zero = field(1), field(0)
        return cls(field, tuple(tuple(one if i == j else zero for j in range(n)) for i in range(n)), _trusted=True)

    @classmethod
    def zeros(cls, field: Field, rows: int, cols: int) -> "Matrix":
        zero = field(0)
        return cls(field, tuple((zero,) * cols for _ in range(rows)), _trusted=True)

    @classmethod
    def scalar(cls, field: Field, n: int, c) -> "Matrix":
        c, zero = field(c), field(0)
        return cls(field, tuple(tuple(c if i == j else zero for j in range(n)) for i in range(n)), _trusted=True)

    @classmethod
    def diag(cls, field: Field, entries: Iterable) -> "Matrix":
        entries = [field(x) for x in entries]
        zero = field(0)
        n = len(entries)
        return cls(field, tuple(tuple(entries[i] if i == j else zero for j in range(n)) for i in range(n)), _trusted=True)

    @classmethod
    def permutation(cls, field: Field, images: Sequence[int], signs: Sequence | None = None) -> "Matrix":
        """Matrix sending basis vector j to ``signs[j] * e_{images[j]}``."""
        n = len(images)
        zero = field(0)
        data = [[zero] * n for _ in range(n)]
        for j, i in enumerate(images):
            data[i][j] = field(1 if signs is None else signs[j])
        return cls(field, tuple(map(tuple, data)), _trusted=True)

    # access
    def __getitem__(self, ij):
        i, j = ij
        return self._data[i][j]

    def tolist(self) -> list[list]:
        return [list(r) for r in self._data]

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    def __eq__(self, other) -> bool:
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.field == other.field and self._data == other._data

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.field, self._data))
        return self._hash

    def __repr__(self) -> str:
        body = "; ".join(" ".join(self.field.fmt(x) for x in r) for r in self._data)
        return f"Matrix[{self.field.name}]({self.rows}x{self.cols}: {body})"

    def first_difference(self, other: "Matrix") -> tuple[int, int] | None:
        """Row-major index of the first differing entry, or None if equal."""
        if self.shape != other.shape:
            return (-1, -1)
        for i, (ra, rb) in enumerate(zip(self._data, other._data)):
            if ra != rb:
                for j, (a, b) in enumerate(zip(ra, rb)):
                    if a != b:
                        return (i, j)
        return None

    # arithmetic
    def _check(self, other: "Matrix") -> None:
        if self.field != other.field:
            raise LinalgError(f"field mismatch {self.field.name} vs {other.field.name}")

    def __add__(self, other: "Matrix") -> "Matrix":
        self._check(other)
        if self.shape != other.shape:
            raise LinalgError("shape mismatch in addition")
        red = self.field.reduce
        return Matrix(self.field, tuple(tuple(red(a + b) for a, b in zip(ra, rb)) for ra, rb in zip(self._data, other._data)), _trusted=True)

    def __neg__(self) -> "Matrix":
        red = self.field.reduce
        return Matrix(self.field, tuple(tuple(red(-a) for a in r) for r in self._data), _trusted=True)

    def __sub__(self, other: "Matrix") -> "Matrix":
        return self + (-other)

    def scale(self, c) -> "Matrix":
        c = self.field(c)
        red = self.field.reduce
        return Matrix(self.field, tuple(tuple(red(c * a) for a in r) for r in self._data), _trusted=True)

    def __matmul__(self, other: "Matrix") -> "Matrix":
        self._check(other)
        if self.cols != other.rows:
            raise LinalgError(f"cannot multiply {self.shape} by {other.shape}")
        zero = self.field(0)
        red = self.field.reduce
        brows = other._data
        ncols = other.cols
        out = []
        for row in self._data:
            acc = [zero] * ncols
            for k, a in enumerate(row):
                if a:
                    brow = brows[k]
                    for j in range(ncols):
                        b = brow[j]
                        if b:
                            acc[j] += a * b
            out.append(tuple(red(x) for x in acc) if self.field.p else tuple(acc))
        return Matrix(self.field, tuple(out), _trusted=True)

    def transpose(self) -> "Matrix":
        return Matrix(self.field, tuple(zip(*self._data)) if self._data else (), _trusted=True)

    def kron(self, other: "Matrix") -> "Matrix":
        self._check(other)
        red = self.field.reduce
        out = []
        for ra in self._data:
            for rb in other._data:
                out.append(tuple(red(a * b) for a in ra for b in rb))
        return Matrix(self.field, tuple(out), _trusted=True)

    def is_identity(self) -> bool:
        return self.is_square and self == Matrix.identity(self.field, self.rows)

    def rank(self) -> int:
        return len(_row_reduce([list(r) for r in self._data], self.field)[1])

    def inverse(self) -> "Matrix":
        if not self.is_square:
            raise LinalgError("inverse of non-square matrix")
        n = self.rows
        one, zero = self.field(1), self.field(0)
        aug = [list(r) + [one if i == j else zero for j in range(n)] for i, r in enumerate(self._data)]
        red, pivots = _row_reduce(aug, self.field, ncols=n)
        if len(pivots) < n:
            raise SingularMatrix("matrix is singular")
        return Matrix(self.field, tuple(tuple(r[n:]) for r in red), _trusted=True)

    def is_invertible(self) -> bool:
        return self.is_square and self.rank() == self.rows

    def nullspace(self) -> list[list]:
        """Basis of the right kernel, as lists of field elements."""
        red, pivots = _row_reduce([list(r) for r in self._data], self.field)
        free = [j for j in range(self.cols) if j not in pivots]
        zero, one = self.field(0), self.field(1)
        basis = []
        for f in free:
            v = [zero] * self.cols
            v[f] = one
            for row, pc in zip(red, pivots):
                v[pc] = self.field.reduce(-row[f])
            basis.append(v)
        return basis


def _row_reduce(rows: list[list], field: Field, ncols: int | None = None) -> tuple[list[list], list[int]]:
    """Reduced row echelon form; pivots searched in the first ``ncols`` columns."""
    ncols = len(rows[0]) if ncols is None and rows else (ncols or 0)
    red = field.reduce
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(rows)) if rows[i][c]), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = field.inv(rows[r][c])
        rows[r] = [red(x * inv) for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c]:
                f = rows[i][c]
                rows[i] = [red(a - f * b) for a, b in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return rows[: len(pivots)], pivots


def kron_all(field: Field, factors: Iterable[Matrix]) -> Matrix:
    return reduce(lambda a, b: a.kron(b), factors, Matrix.identity(field, 1))


def mat_product(field: Field, n: int, factors: Iterable[Matrix]) -> Matrix:
    return reduce(lambda a, b: a @ b, factors, Matrix.identity(field, n))


def commutant_basis(mats: Sequence[Matrix]) -> list[Matrix]:
    """Basis of {X : X A = A X for every A in ``mats``} (all square, same size)."""
    field = mats[0].field
    n = mats[0].rows
    rows = []
    # unknown X[i][j] at index i*n + j; equation (XA - AX)[i][j] = 0
    for A in mats:
        for i in range(n):
            for j in range(n):
                eq = [field(0)] * (n * n)
                for k in range(n):
                    eq[i * n + k] = field.reduce(eq[i * n + k] + A[k, j])
                    eq[k * n + j] = field.reduce(eq[k * n + j] - A[i, k])
                rows.append(eq)
    kernel = Matrix(field, tuple(map(tuple, rows)), _trusted=True).nullspace()
    return [Matrix(field, tuple(tuple(v[i * n:(i + 1) * n]) for i in range(n)), _trusted=True) for v in kernel]
