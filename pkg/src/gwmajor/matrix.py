"""Dense immutable matrices over the rationals.

Entries are :class:`fractions.Fraction`; all arithmetic is exact.  Vectors are
plain tuples of fractions.
"""

from __future__ import annotations

from fractions import Fraction
from numbers import Rational
from typing import Iterable, Sequence, Tuple, Union

Vector = Tuple[Fraction, ...]
Scalar = Union[int, Fraction, str]


def to_fraction(value) -> Fraction:
    """Convert ``value`` to an exact fraction.

    Floats are refused: a float literal rarely means the rational the caller
    had in mind.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not matrix entries")
    if isinstance(value, (int, Rational)):
        return Fraction(value)
    if isinstance(value, str):
        text = value.strip()
        if not text:
            raise ValueError("empty rational literal")
        return Fraction(text)
    raise TypeError(f"cannot use {type(value).__name__} as an exact rational")


def vector(values: Iterable) -> Vector:
    return tuple(to_fraction(v) for v in values)


def dot(u: Sequence[Fraction], v: Sequence[Fraction]) -> Fraction:
    if len(u) != len(v):
        raise ValueError(f"length mismatch: {len(u)} vs {len(v)}")
    return sum((a * b for a, b in zip(u, v)), Fraction(0))


class RationalMatrix:
    """An immutable ``rows x cols`` matrix of exact rationals.

    Construct from a nested sequence of entries (ints, fractions or strings
    such as ``"3/4"``).  ``shape`` is only needed for matrices with a zero
    dimension, where the nested data cannot carry it.
    """

    __slots__ = ("_data", "_rows", "_cols", "_hash")

    def __init__(self, data: Iterable[Iterable], shape: Tuple[int, int] | None = None):
        rows = tuple(tuple(to_fraction(x) for x in row) for row in data)
        if shape is None:
            if not rows or not rows[0]:
                raise ValueError("empty matrix needs an explicit shape")
            shape = (len(rows), len(rows[0]))
        nrows, ncols = shape
        if nrows < 0 or ncols < 0:
            raise ValueError(f"invalid shape {shape}")
        if ncols == 0:
            rows = rows or tuple(() for _ in range(nrows))
        if len(rows) != nrows or any(len(r) != ncols for r in rows):
            raise ValueError(f"ragged or mis-shaped data for shape {shape}")
        self._data = rows
        self._rows = nrows
        self._cols = ncols
        self._hash = None

    # construction -------------------------------------------------------

    @classmethod
    def zeros(cls, rows: int, cols: int) -> RationalMatrix:
        return cls([[0] * cols for _ in range(rows)], shape=(rows, cols))

    @classmethod
    def identity(cls, n: int) -> RationalMatrix:
        return cls([[int(i == j) for j in range(n)] for i in range(n)], shape=(n, n))

    @classmethod
    def ones(cls, rows: int, cols: int) -> RationalMatrix:
        return cls([[1] * cols for _ in range(rows)], shape=(rows, cols))

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence], rows: int | None = None) -> RationalMatrix:
        if not columns:
            if rows is None:
                raise ValueError("need row count for a matrix with no columns")
            return cls([], shape=(rows, 0))
        n = len(columns[0])
        return cls([[col[i] for col in columns] for i in range(n)], shape=(n, len(columns)))

    @classmethod
    def column(cls, values: Sequence) -> RationalMatrix:
        return cls([[v] for v in values], shape=(len(values), 1))

    @classmethod
    def row_vector(cls, values: Sequence) -> RationalMatrix:
        return cls([list(values)], shape=(1, len(values)))

    # access ---------------------------------------------------------------

    @property
    def shape(self) -> Tuple[int, int]:
        return (self._rows, self._cols)

    @property
    def nrows(self) -> int:
        return self._rows

    @property
    def ncols(self) -> int:
        return self._cols

    @property
    def is_square(self) -> bool:
        return self._rows == self._cols

    def __getitem__(self, index: Tuple[int, int]) -> Fraction:
        i, j = index
        return self._data[i][j]

    def row(self, i: int) -> Vector:
        return self._data[i]

    def col(self, j: int) -> Vector:
        return tuple(r[j] for r in self._data)

    def rows(self) -> Tuple[Vector, ...]:
        return self._data

    def columns(self) -> Tuple[Vector, ...]:
        return tuple(self.col(j) for j in range(self._cols))

    def entries(self) -> Iterable[Fraction]:
        for r in self._data:
            yield from r

    def is_zero(self) -> bool:
        return all(x == 0 for x in self.entries())

    def submatrix(self, row_idx: Sequence[int], col_idx: Sequence[int]) -> RationalMatrix:
        return RationalMatrix(
            [[self._data[i][j] for j in col_idx] for i in row_idx],
            shape=(len(row_idx), len(col_idx)),
        )

    # algebra --------------------------------------------------------------

    @property
    def T(self) -> RationalMatrix:
        return RationalMatrix(
            [[self._data[i][j] for i in range(self._rows)] for j in range(self._cols)],
            shape=(self._cols, self._rows),
        )

    def transpose(self) -> RationalMatrix:
        return self.T

    def _check_same_shape(self, other: RationalMatrix) -> None:
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch: {self.shape} vs {other.shape}")

    def __add__(self, other: RationalMatrix) -> RationalMatrix:
        if not isinstance(other, RationalMatrix):
            return NotImplemented
        self._check_same_shape(other)
        return RationalMatrix(
            [[a + b for a, b in zip(r, s)] for r, s in zip(self._data, other._data)],
            shape=self.shape,
        )

    def __sub__(self, other: RationalMatrix) -> RationalMatrix:
        if not isinstance(other, RationalMatrix):
            return NotImplemented
        self._check_same_shape(other)
        return RationalMatrix(
            [[a - b for a, b in zip(r, s)] for r, s in zip(self._data, other._data)],
            shape=self.shape,
        )

    def __neg__(self) -> RationalMatrix:
        return RationalMatrix([[-a for a in r] for r in self._data], shape=self.shape)

    def scale(self, c) -> RationalMatrix:
        c = to_fraction(c)
        return RationalMatrix([[c * a for a in r] for r in self._data], shape=self.shape)

    def __mul__(self, c) -> RationalMatrix:
        if isinstance(c, RationalMatrix):
            raise TypeError("use @ for matrix products")
        return self.scale(c)

    __rmul__ = __mul__

    def __truediv__(self, c) -> RationalMatrix:
        c = to_fraction(c)
        if c == 0:
            raise ZeroDivisionError("matrix divided by zero")
        return self.scale(1 / c)

    def __matmul__(self, other):
        if isinstance(other, RationalMatrix):
            if self._cols != other._rows:
                raise ValueError(f"cannot multiply {self.shape} by {other.shape}")
            cols = other.columns()
            return RationalMatrix(
                [[dot(r, c) for c in cols] for r in self._data],
                shape=(self._rows, other._cols),
            )
        v = vector(other)
        if len(v) != self._cols:
            raise ValueError(f"cannot multiply {self.shape} by vector of length {len(v)}")
        return tuple(dot(r, v) for r in self._data)

    def __rmatmul__(self, other) -> Vector:
        # row vector times matrix
        v = vector(other)
        if len(v) != self._rows:
            raise ValueError(f"cannot multiply vector of length {len(v)} by {self.shape}")
        return tuple(dot(v, c) for c in self.columns())

    def kron(self, other: RationalMatrix) -> RationalMatrix:
        """Kronecker product ``self (x) other``."""
        p, q = other.shape
        out = [[Fraction(0)] * (self._cols * q) for _ in range(self._rows * p)]
        for i, r in enumerate(self._data):
            for j, a in enumerate(r):
                if a == 0:
                    continue
                for k in range(p):
                    orow = out[i * p + k]
                    for l, b in enumerate(other._data[k]):
                        orow[j * q + l] = a * b
        return RationalMatrix(out, shape=(self._rows * p, self._cols * q))

    def hstack(self, other: RationalMatrix) -> RationalMatrix:
        if self._rows != other._rows:
            raise ValueError(f"cannot hstack {self.shape} and {other.shape}")
        return RationalMatrix(
            [r + s for r, s in zip(self._data, other._data)],
            shape=(self._rows, self._cols + other._cols),
        )

    def vstack(self, other: RationalMatrix) -> RationalMatrix:
        if self._cols != other._cols:
            raise ValueError(f"cannot vstack {self.shape} and {other.shape}")
        return RationalMatrix(self._data + other._data, shape=(self._rows + other._rows, self._cols))

    # comparison / display -----------------------------------------------

    def __eq__(self, other) -> bool:
        if not isinstance(other, RationalMatrix):
            return NotImplemented
        return self.shape == other.shape and self._data == other._data

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.shape, self._data))
        return self._hash

    def tolist(self) -> list:
        return [list(r) for r in self._data]

    def to_strings(self) -> list:
        return [[str(x) for x in r] for r in self._data]

    def __repr__(self) -> str:
        return f"RationalMatrix({self.to_strings()!r})"

    def __str__(self) -> str:
        cells = self.to_strings()
        if not cells or not cells[0]:
            return f"[{self._rows}x{self._cols} empty]"
        width = max(len(c) for r in cells for c in r)
        return "\n".join("[" + " ".join(c.rjust(width) for c in r) + "]" for r in cells)
