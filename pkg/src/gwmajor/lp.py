"""Exact feasibility of ``{r : r M = c, r >= 0}``.

:func:`solve_feasibility` runs a phase-one simplex with Bland's rule on
rationals and returns either a nonnegative solution or a Farkas vector ``y``
with ``M y >= 0`` and ``c . y < 0``.  Either answer can be re-checked with
nothing more than matrix-vector products.

:func:`enumerate_basic_solutions` is a brute-force oracle that shares no code
with the simplex: it tries every linearly independent subset of rows of ``M``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Optional, Sequence, Union

from .linalg import rank, solve_left
from .matrix import RationalMatrix, Vector, dot, vector


@dataclass(frozen=True)
class FeasibilityProblem:
    """Row-vector system ``r @ constraint_matrix == target`` with ``r >= 0``.

    ``constraint_matrix`` is ``p x q``: ``p`` unknowns, ``q`` equations.
    """

    constraint_matrix: RationalMatrix
    target: Vector

    def __post_init__(self):
        object.__setattr__(self, "target", vector(self.target))
        if len(self.target) != self.constraint_matrix.ncols:
            raise ValueError(
                f"target has length {len(self.target)}, "
                f"constraint matrix has {self.constraint_matrix.ncols} columns"
            )

    @property
    def num_unknowns(self) -> int:
        return self.constraint_matrix.nrows

    def is_solution(self, r: Sequence) -> bool:
        r = vector(r)
        return (
            len(r) == self.num_unknowns
            and all(x >= 0 for x in r)
            and (r @ self.constraint_matrix) == self.target
        )


@dataclass(frozen=True)
class FarkasCertificate:
    y: Vector

    def verify(self, problem: FeasibilityProblem) -> bool:
        y = vector(self.y)
        M = problem.constraint_matrix
        if len(y) != M.ncols:
            return False
        return all(v >= 0 for v in M @ y) and dot(problem.target, y) < 0


@dataclass(frozen=True)
class Feasible:
    point: Vector

    def verify(self, problem: FeasibilityProblem) -> bool:
        return problem.is_solution(self.point)


@dataclass(frozen=True)
class Infeasible:
    certificate: FarkasCertificate

    def verify(self, problem: FeasibilityProblem) -> bool:
        return self.certificate.verify(problem)


FeasibilityOutcome = Union[Feasible, Infeasible]


def solve_feasibility(problem: FeasibilityProblem) -> FeasibilityOutcome:
    M = problem.constraint_matrix
    p, q = M.shape
    c = problem.target
    signs = [Fraction(-1) if cj < 0 else Fraction(1) for cj in c]

    # tableau rows: [unknowns (p) | artificials (q) | rhs]
    tab = []
    for j in range(q):
        s = signs[j]
        row = [s * M[k, j] for k in range(p)]
        row += [Fraction(int(i == j)) for i in range(q)]
        row.append(s * c[j])
        tab.append(row)
    basis = [p + j for j in range(q)]
    width = p + q

    reduced = [-sum((tab[j][k] for j in range(q)), Fraction(0)) for k in range(p)]
    reduced += [Fraction(0)] * q
    objective = sum((row[-1] for row in tab), Fraction(0))

    while True:
        entering = next((k for k in range(width) if reduced[k] < 0), None)
        if entering is None:
            break
        leaving = None
        best = None
        for j in range(q):
            a = tab[j][entering]
            if a <= 0:
                continue
            ratio = tab[j][-1] / a
            if best is None or ratio < best or (ratio == best and basis[j] < basis[leaving]):
                best, leaving = ratio, j
        # phase one is bounded below by zero, so some row always qualifies
        assert leaving is not None
        piv = tab[leaving][entering]
        prow = [x / piv for x in tab[leaving]]
        tab[leaving] = prow
        for j in range(q):
            f = tab[j][entering]
            if j != leaving and f != 0:
                tab[j] = [a - f * b for a, b in zip(tab[j], prow)]
        f = reduced[entering]
        reduced = [a - f * b for a, b in zip(reduced, prow[:width])]
        objective += f * prow[-1]
        basis[leaving] = entering

    if objective == 0:
        point = [Fraction(0)] * p
        for j, b in enumerate(basis):
            if b < p:
                point[b] = tab[j][-1]
        return Feasible(tuple(point))

    # phase-one duals are w_j = 1 - (reduced cost of artificial j)
    w = [1 - reduced[p + j] for j in range(q)]
    y = tuple(-signs[j] * w[j] / objective for j in range(q))
    return Infeasible(FarkasCertificate(y))


def enumerate_basic_solutions(problem: FeasibilityProblem) -> Optional[Vector]:
    """Brute-force oracle: return a nonnegative basic solution, or ``None``.

    A feasible system always has a basic feasible solution, supported on a
    set of linearly independent rows of the constraint matrix.
    """
    M = problem.constraint_matrix
    p, q = M.shape
    all_cols = list(range(q))
    for size in range(min(p, q) + 1):
        for support in combinations(range(p), size):
            if size == 0:
                if all(x == 0 for x in problem.target):
                    return (Fraction(0),) * p
                continue
            sub = M.submatrix(support, all_cols)
            if rank(sub) != size:
                continue
            sol = solve_left(sub, problem.target)
            if not sol.feasible or any(x < 0 for x in sol.particular):
                continue
            point = [Fraction(0)] * p
            for k, x in zip(support, sol.particular):
                point[k] = x
            return tuple(point)
    return None
