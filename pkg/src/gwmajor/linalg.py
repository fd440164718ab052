"""Gauss-Jordan elimination over the rationals and the routines built on it."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import List, NamedTuple, Optional, Sequence, Tuple

from .matrix import RationalMatrix, Vector, vector


class Singular(ArithmeticError):
    """Raised when an inverse is requested for a rank-deficient matrix."""


class RrefResult(NamedTuple):
    R: RationalMatrix
    rank: int
    pivot_columns: Tuple[int, ...]


def _rref_rows(rows: List[List[Fraction]], ncols: int) -> List[int]:
    """Reduce ``rows`` in place; return pivot columns.

    Pivot choice is the first nonzero entry at or below the current row.
    """
    pivots = []
    r = 0
    nrows = len(rows)
    for c in range(ncols):
        if r == nrows:
            break
        p = next((i for i in range(r, nrows) if rows[i][c] != 0), None)
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        piv = rows[r][c]
        if piv != 1:
            rows[r] = [x / piv for x in rows[r]]
        prow = rows[r]
        for i in range(nrows):
            f = rows[i][c]
            if i != r and f != 0:
                rows[i] = [a - f * b for a, b in zip(rows[i], prow)]
        pivots.append(c)
        r += 1
    return pivots


def rref(M: RationalMatrix) -> RrefResult:
    """Reduced row echelon form of ``M`` with its rank and pivot columns."""
    rows = [list(r) for r in M.rows()]
    pivots = _rref_rows(rows, M.ncols)
    return RrefResult(RationalMatrix(rows, shape=M.shape), len(pivots), tuple(pivots))


def rank(M: RationalMatrix) -> int:
    return rref(M).rank


def _kernel_from_rref(rows: Sequence[Sequence[Fraction]], pivots: Sequence[int], ncols: int) -> List[Vector]:
    free = [c for c in range(ncols) if c not in set(pivots)]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for i, p in enumerate(pivots):
            v[p] = -rows[i][f]
        # sign convention: first nonzero entry positive
        lead = next(x for x in v if x != 0)
        if lead < 0:
            v = [-x for x in v]
        basis.append(tuple(v))
    return basis


def kernel_basis(M: RationalMatrix) -> List[Vector]:
    """Basis of the right null space ``{v : M v = 0}``.

    One vector per free column of the RREF, sign-normalized so that its first
    nonzero entry is positive.
    """
    res = rref(M)
    return _kernel_from_rref(res.R.rows(), res.pivot_columns, M.ncols)


def inverse(M: RationalMatrix) -> RationalMatrix:
    if not M.is_square:
        raise ValueError(f"inverse of non-square {M.shape} matrix")
    n = M.nrows
    rows = [list(r) + [Fraction(int(i == j)) for j in range(n)] for i, r in enumerate(M.rows())]
    pivots = _rref_rows(rows, n)
    if len(pivots) < n:
        raise Singular(f"matrix has rank {len(pivots)} < {n}")
    return RationalMatrix([r[n:] for r in rows], shape=(n, n))


def is_invertible(M: RationalMatrix) -> bool:
    return M.is_square and rank(M) == M.nrows


def image_contains(M: RationalMatrix, v: Sequence) -> bool:
    """True iff ``v`` is a linear combination of the columns of ``M``."""
    v = vector(v)
    if len(v) != M.nrows:
        raise ValueError(f"vector of length {len(v)} against {M.shape} matrix")
    return rank(M.hstack(RationalMatrix.column(v))) == rank(M)


@dataclass(frozen=True)
class AffineSolutionSet:
    """All solutions of a linear system: ``particular + span(kernel_basis)``.

    ``particular`` is ``None`` when the system is inconsistent.
    """

    particular: Optional[Vector]
    kernel_basis: Tuple[Vector, ...]

    @property
    def feasible(self) -> bool:
        return self.particular is not None

    def point(self, coefficients: Sequence = ()) -> Vector:
        if self.particular is None:
            raise ValueError("system has no solution")
        coefficients = vector(coefficients)
        if len(coefficients) > len(self.kernel_basis):
            raise ValueError("more coefficients than kernel vectors")
        out = list(self.particular)
        for c, b in zip(coefficients, self.kernel_basis):
            out = [x + c * y for x, y in zip(out, b)]
        return tuple(out)


def solve_right(M: RationalMatrix, b: Sequence) -> AffineSolutionSet:
    """All ``x`` with ``M x = b``; free variables of the particular solution are zero."""
    b = vector(b)
    if len(b) != M.nrows:
        raise ValueError(f"right-hand side of length {len(b)} for {M.shape} system")
    k = M.ncols
    rows = [list(r) + [rhs] for r, rhs in zip(M.rows(), b)]
    pivots = _rref_rows(rows, k + 1)
    kernel = tuple(_kernel_from_rref(rows, [p for p in pivots if p < k], k))
    if pivots and pivots[-1] == k:
        return AffineSolutionSet(None, kernel)
    x = [Fraction(0)] * k
    for i, p in enumerate(pivots):
        x[p] = rows[i][k]
    return AffineSolutionSet(tuple(x), kernel)


def solve_left(M: RationalMatrix, c: Sequence) -> AffineSolutionSet:
    """All row vectors ``r`` with ``r M = c``."""
    c = vector(c)
    if len(c) != M.ncols:
        raise ValueError(f"target of length {len(c)} for {M.shape} system")
    return solve_right(M.T, c)
