"""Decision procedures for the three majorization relations on n x m matrices.

For ``A`` and ``B`` of the same shape:

* ``A >_gw B``  iff ``B = R A`` with ``R e = e``;
* ``A > B``     iff ``B = R A`` with ``R`` row stochastic (nonnegative);
* ``A >_gs B``  iff ``B = D A`` with ``D e = e`` and ``D^t e = e``.

Every positive answer carries the witness matrix.  Negative answers for the
matrix relation carry a Farkas certificate for the first infeasible row.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence, Tuple

from .linalg import solve_left
from .lp import FarkasCertificate, Feasible, FeasibilityProblem, solve_feasibility
from .matrix import RationalMatrix, vector
from .stochastic import (
    all_ones,
    is_g_doubly_stochastic,
    is_g_row_stochastic,
    is_row_stochastic,
)

RELATIONS = ("gw", "matrix", "gs")


class NoWitnessExists(ValueError):
    """No g-row stochastic ``R`` maps ``x`` to ``y``."""


@dataclass(frozen=True)
class MajorizationVerdict:
    relation: str
    holds: bool
    witness: Optional[RationalMatrix] = None
    # (row index, certificate); matrix relation only
    evidence: Optional[Tuple[int, FarkasCertificate]] = None

    def __bool__(self) -> bool:
        return self.holds


def _check_shapes(A: RationalMatrix, B: RationalMatrix) -> None:
    if A.shape != B.shape:
        raise ValueError(f"shape mismatch: {A.shape} vs {B.shape}")


def row_system(A: RationalMatrix, b: Sequence) -> Tuple[RationalMatrix, Tuple[Fraction, ...]]:
    """The witness-row equations ``r [A | e] = [b | 1]``."""
    n = A.nrows
    M = A.hstack(RationalMatrix.column(all_ones(n)))
    return M, vector(b) + (Fraction(1),)


def gw_majorizes(A: RationalMatrix, B: RationalMatrix) -> MajorizationVerdict:
    """Decide ``A >_gw B``.  Rows of the witness are independent systems."""
    _check_shapes(A, B)
    rows = []
    for i in range(B.nrows):
        M, target = row_system(A, B.row(i))
        sol = solve_left(M, target)
        if not sol.feasible:
            return MajorizationVerdict("gw", False)
        rows.append(sol.particular)
    return MajorizationVerdict("gw", True, RationalMatrix(rows, shape=(A.nrows, A.nrows)))


def matrix_majorizes(A: RationalMatrix, B: RationalMatrix) -> MajorizationVerdict:
    """Decide ``A > B`` (row stochastic witness), one LP per row of ``B``."""
    _check_shapes(A, B)
    rows = []
    for i in range(B.nrows):
        M, target = row_system(A, B.row(i))
        outcome = solve_feasibility(FeasibilityProblem(M, target))
        if not isinstance(outcome, Feasible):
            return MajorizationVerdict("matrix", False, evidence=(i, outcome.certificate))
        rows.append(outcome.point)
    return MajorizationVerdict("matrix", True, RationalMatrix(rows, shape=(A.nrows, A.nrows)))


def gs_majorizes(A: RationalMatrix, B: RationalMatrix) -> MajorizationVerdict:
    """Decide ``A >_gs B``.

    Column-sum constraints couple the rows of ``D``, so the ``n^2`` unknowns
    (``D`` flattened row-major) are solved as a single system.
    """
    _check_shapes(A, B)
    n, m = A.shape
    unknowns = n * n
    columns = []
    target = []
    # D A = B
    for i in range(n):
        for k in range(m):
            col = [Fraction(0)] * unknowns
            for j in range(n):
                col[i * n + j] = A[j, k]
            columns.append(col)
            target.append(B[i, k])
    # D e = e
    for i in range(n):
        col = [Fraction(0)] * unknowns
        for j in range(n):
            col[i * n + j] = Fraction(1)
        columns.append(col)
        target.append(Fraction(1))
    # D^t e = e
    for j in range(n):
        col = [Fraction(0)] * unknowns
        for i in range(n):
            col[i * n + j] = Fraction(1)
        columns.append(col)
        target.append(Fraction(1))
    sol = solve_left(RationalMatrix.from_columns(columns), target)
    if not sol.feasible:
        return MajorizationVerdict("gs", False)
    d = sol.particular
    D = RationalMatrix([d[i * n:(i + 1) * n] for i in range(n)], shape=(n, n))
    return MajorizationVerdict("gs", True, D)


DECIDERS = {"gw": gw_majorizes, "matrix": matrix_majorizes, "gs": gs_majorizes}
WITNESS_CLASS = {"gw": is_g_row_stochastic, "matrix": is_row_stochastic, "gs": is_g_doubly_stochastic}


def majorizes(relation: str, A: RationalMatrix, B: RationalMatrix) -> MajorizationVerdict:
    try:
        decide = DECIDERS[relation]
    except KeyError:
        raise ValueError(f"unknown relation {relation!r}; expected one of {RELATIONS}") from None
    return decide(A, B)


# vector-level results -------------------------------------------------------


def gw_dominates_all(x: Sequence) -> bool:
    """True iff ``x`` gw-majorizes every vector, i.e. ``x`` is not constant."""
    x = vector(x)
    return any(v != x[0] for v in x)


def vector_gw_witness(x: Sequence, y: Sequence) -> RationalMatrix:
    """An explicit g-row stochastic ``R`` with ``R x = y``.

    Uses the first index pair ``k < l`` with ``x_k != x_l``; row ``i`` of ``R``
    is supported on columns ``k`` and ``l`` with weights
    ``(y_i - x_l) / (x_k - x_l)`` and ``(x_k - y_i) / (x_k - x_l)``.
    """
    x, y = vector(x), vector(y)
    n = len(x)
    if len(y) != n:
        raise ValueError(f"length mismatch: {n} vs {len(y)}")
    pair = next(((k, l) for k in range(n) for l in range(k + 1, n) if x[k] != x[l]), None)
    if pair is None:
        if x == y:
            return RationalMatrix.identity(n)
        raise NoWitnessExists("x is constant, so R x = x for every g-row stochastic R")
    k, l = pair
    gap = x[k] - x[l]
    rows = []
    for yi in y:
        row = [Fraction(0)] * n
        row[k] = (yi - x[l]) / gap
        row[l] = (x[k] - yi) / gap
        rows.append(row)
    return RationalMatrix(rows, shape=(n, n))
