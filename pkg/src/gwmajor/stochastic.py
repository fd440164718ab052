"""Stochastic matrix classes: predicates, random generators and the affine
decomposition of a g-row stochastic matrix into row stochastic parts.

A g-row stochastic matrix is any square ``R`` with ``R e = e`` (rows sum to
one, entries of any sign).  The set ``GR_n`` of such matrices is closed under
products and inverses.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Tuple

from .linalg import rank
from .matrix import RationalMatrix, Vector

MAX_RETRIES = 1000


class GenerationFailed(RuntimeError):
    """A rejection-sampling loop hit its retry cap."""


def all_ones(n: int) -> Vector:
    """The all-ones vector ``e`` of length ``n``."""
    return (Fraction(1),) * n


def J(n: int, m: int | None = None) -> RationalMatrix:
    """All-ones matrix: ``e e^t`` when square, ``J_{n,m}`` otherwise."""
    return RationalMatrix.ones(n, n if m is None else m)


def _require_square(M: RationalMatrix) -> None:
    if not M.is_square:
        raise ValueError(f"expected a square matrix, got {M.shape}")


def _rows_sum_to_one(M: RationalMatrix) -> bool:
    return all(sum(r) == 1 for r in M.rows())


def is_g_row_stochastic(M: RationalMatrix) -> bool:
    _require_square(M)
    return _rows_sum_to_one(M)


def is_row_stochastic(M: RationalMatrix) -> bool:
    _require_square(M)
    return all(x >= 0 for x in M.entries()) and _rows_sum_to_one(M)


def is_g_doubly_stochastic(M: RationalMatrix) -> bool:
    _require_square(M)
    return _rows_sum_to_one(M) and _rows_sum_to_one(M.T)


def is_permutation(M: RationalMatrix) -> bool:
    _require_square(M)
    if any(x not in (0, 1) for x in M.entries()):
        return False
    return _rows_sum_to_one(M) and _rows_sum_to_one(M.T)


# random generation ----------------------------------------------------------


def random_rational(rng: random.Random, lo: int = -9, hi: int = 9) -> Fraction:
    """Numerator uniform in ``[lo, hi]``, denominator uniform in ``[1, 9]``."""
    return Fraction(rng.randint(lo, hi), rng.randint(1, 9))


def random_matrix(rows: int, cols: int, rng: random.Random) -> RationalMatrix:
    return RationalMatrix(
        [[random_rational(rng) for _ in range(cols)] for _ in range(rows)],
        shape=(rows, cols),
    )


def random_invertible(n: int, rng: random.Random) -> RationalMatrix:
    for _ in range(MAX_RETRIES):
        M = random_matrix(n, n, rng)
        if rank(M) == n:
            return M
    raise GenerationFailed(f"no invertible {n}x{n} matrix after {MAX_RETRIES} draws")


def random_g_row_stochastic(n: int, rng: random.Random) -> RationalMatrix:
    rows = []
    for _ in range(n):
        head = [random_rational(rng) for _ in range(n - 1)]
        rows.append(head + [1 - sum(head, Fraction(0))])
    return RationalMatrix(rows, shape=(n, n))


def random_row_stochastic(n: int, rng: random.Random) -> RationalMatrix:
    rows = []
    for _ in range(n):
        for _ in range(MAX_RETRIES):
            draw = [random_rational(rng, 0, 9) for _ in range(n)]
            total = sum(draw, Fraction(0))
            if total != 0:
                break
        else:
            raise GenerationFailed("all-zero row drawn repeatedly")
        rows.append([x / total for x in draw])
    return RationalMatrix(rows, shape=(n, n))


def random_invertible_g_row_stochastic(n: int, rng: random.Random) -> RationalMatrix:
    for _ in range(MAX_RETRIES):
        R = random_g_row_stochastic(n, rng)
        if rank(R) == n:
            return R
    raise GenerationFailed(f"no invertible g-row stochastic {n}x{n} matrix after {MAX_RETRIES} draws")


# affine decomposition -------------------------------------------------------


@dataclass(frozen=True)
class AffineCombination:
    """``sum(c * S for c, S in terms)`` with coefficients summing to one and
    every ``S`` row stochastic."""

    terms: Tuple[Tuple[Fraction, RationalMatrix], ...]

    def combine(self) -> RationalMatrix:
        total = None
        for c, S in self.terms:
            total = S * c if total is None else total + S * c
        return total

    @property
    def coefficients(self) -> Tuple[Fraction, ...]:
        return tuple(c for c, _ in self.terms)

    def is_valid(self) -> bool:
        return sum(self.coefficients) == 1 and all(is_row_stochastic(S) for _, S in self.terms)


def affine_decompose(R: RationalMatrix) -> AffineCombination:
    """Write a g-row stochastic ``R`` as an affine combination of row
    stochastic matrices.

    With ``t = -n * min(R)`` the matrix ``S1 = (R + t J/n) / (1 + t)`` is
    entrywise nonnegative, and ``R = (1 + t) S1 - t J/n``.
    """
    if not is_g_row_stochastic(R):
        raise ValueError("input is not g-row stochastic")
    n = R.nrows
    if all(x >= 0 for x in R.entries()):
        return AffineCombination(((Fraction(1), R),))
    t = -n * min(R.entries())
    anchor = J(n) / n
    S1 = (R + anchor * t) / (1 + t)
    return AffineCombination(((1 + t, S1), (-t, anchor)))
