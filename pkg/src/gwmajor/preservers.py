"""Linear operators on n x m matrices and their strong preservers.

An operator ``T`` is stored as an ``nm x nm`` matrix acting on column-stacked
vectorizations: ``vec(X)[j*n + i] = X[i, j]`` and ``T(X) = unvec(M vec(X))``.
Under this convention ``T(X) = A X B`` exactly when ``M = kron(B^t, A)``, and
the ``(i, j)`` block of ``M`` is the map sending column ``j`` of ``X`` to its
contribution to column ``i`` of ``T(X)``.

``T`` strongly preserves gw-majorization iff ``T(X) = A X B`` with ``A``
g-row stochastic and both factors invertible.  On square matrices ``T``
strongly preserves matrix majorization iff ``A`` can be taken to be a
permutation.
"""

from __future__ import annotations

import enum
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Optional, Tuple, Union

from .linalg import inverse, is_invertible, kernel_basis, image_contains, rank
from .matrix import RationalMatrix, Vector
from .relations import gw_majorizes, matrix_majorizes
from .stochastic import (
    GenerationFailed,
    MAX_RETRIES,
    all_ones,
    is_g_row_stochastic,
    is_permutation,
    random_g_row_stochastic,
    random_invertible,
    random_invertible_g_row_stochastic,
    random_matrix,
    random_rational,
    random_row_stochastic,
)


def _as_rng(rng) -> random.Random:
    if isinstance(rng, random.Random):
        return rng
    return random.Random(rng)


def vec(X: RationalMatrix) -> Vector:
    """Stack the columns of ``X``."""
    return tuple(x for col in X.columns() for x in col)


def unvec(v, n: int, m: int) -> RationalMatrix:
    if len(v) != n * m:
        raise ValueError(f"vector of length {len(v)} cannot be reshaped to {n}x{m}")
    return RationalMatrix([[v[j * n + i] for j in range(m)] for i in range(n)], shape=(n, m))


@dataclass(frozen=True)
class OperatorOnMatrices:
    n: int
    m: int
    matrix: RationalMatrix

    def __post_init__(self):
        size = self.n * self.m
        if self.n < 1 or self.m < 1:
            raise ValueError(f"invalid operator domain {self.n}x{self.m}")
        if self.matrix.shape != (size, size):
            raise ValueError(f"operator on {self.n}x{self.m} matrices needs a {size}x{size} matrix, got {self.matrix.shape}")

    @classmethod
    def from_kronecker(cls, A: RationalMatrix, B: RationalMatrix) -> OperatorOnMatrices:
        """The operator ``X -> A X B``."""
        if not (A.is_square and B.is_square):
            raise ValueError("Kronecker factors must be square")
        return cls(A.nrows, B.nrows, B.T.kron(A))

    @classmethod
    def from_function(cls, n: int, m: int, f: Callable[[RationalMatrix], RationalMatrix]) -> OperatorOnMatrices:
        columns = []
        for j in range(m):
            for i in range(n):
                E = [[int(a == i and b == j) for b in range(m)] for a in range(n)]
                columns.append(vec(f(RationalMatrix(E, shape=(n, m)))))
        return cls(n, m, RationalMatrix.from_columns(columns))

    @classmethod
    def identity(cls, n: int, m: int) -> OperatorOnMatrices:
        return cls(n, m, RationalMatrix.identity(n * m))

    @classmethod
    def zero(cls, n: int, m: int) -> OperatorOnMatrices:
        return cls(n, m, RationalMatrix.zeros(n * m, n * m))

    def __call__(self, X: RationalMatrix) -> RationalMatrix:
        if X.shape != (self.n, self.m):
            raise ValueError(f"operator acts on {self.n}x{self.m} matrices, got {X.shape}")
        return unvec(self.matrix @ vec(X), self.n, self.m)

    def __add__(self, other: OperatorOnMatrices) -> OperatorOnMatrices:
        if (self.n, self.m) != (other.n, other.m):
            raise ValueError("operators act on different spaces")
        return OperatorOnMatrices(self.n, self.m, self.matrix + other.matrix)

    def is_invertible(self) -> bool:
        return is_invertible(self.matrix)

    def inverse(self) -> OperatorOnMatrices:
        return OperatorOnMatrices(self.n, self.m, inverse(self.matrix))


# block structure ------------------------------------------------------------


@dataclass(frozen=True)
class BlockGrid:
    """``blocks[i][j]`` is the ``n x n`` map from column ``j`` of ``X`` into
    column ``i`` of ``T(X)``."""

    n: int
    m: int
    blocks: Tuple[Tuple[RationalMatrix, ...], ...]

    def __getitem__(self, index: Tuple[int, int]) -> RationalMatrix:
        i, j = index
        return self.blocks[i][j]

    def apply(self, X: RationalMatrix) -> RationalMatrix:
        cols = X.columns()
        out = []
        for i in range(self.m):
            acc = [Fraction(0)] * self.n
            for j in range(self.m):
                acc = [a + b for a, b in zip(acc, self.blocks[i][j] @ cols[j])]
            out.append(acc)
        return RationalMatrix.from_columns(out)


def block_decompose(T: OperatorOnMatrices) -> BlockGrid:
    n, m = T.n, T.m
    idx = [list(range(k * n, (k + 1) * n)) for k in range(m)]
    blocks = tuple(
        tuple(T.matrix.submatrix(idx[i], idx[j]) for j in range(m)) for i in range(m)
    )
    return BlockGrid(n, m, blocks)


def kron_factorize(T: OperatorOnMatrices) -> Optional[Tuple[RationalMatrix, RationalMatrix]]:
    """Find ``(A, B)`` with ``T(X) = A X B``, or ``None`` if there is none.

    Every block must be a multiple of one nonzero block.  The scalar freedom
    ``(cA, B/c)`` is fixed by ``A e = e`` when ``A e`` is a nonzero multiple of
    ``e``; otherwise the first nonzero entry of ``A`` is set to one.
    """
    grid = block_decompose(T)
    n, m = T.n, T.m
    cells = [(i, j) for i in range(m) for j in range(m)]
    ref = next((grid[c] for c in cells if not grid[c].is_zero()), None)
    if ref is None:
        return None
    flat = list(ref.entries())
    pos = next(k for k, x in enumerate(flat) if x != 0)
    pos = divmod(pos, n)
    B = [[Fraction(0)] * m for _ in range(m)]
    for i, j in cells:
        block = grid[i, j]
        beta = block[pos] / ref[pos]
        if block != ref * beta:
            return None
        B[j][i] = beta
    sums = ref @ all_ones(n)
    if sums[0] != 0 and all(s == sums[0] for s in sums):
        gauge = sums[0]
    else:
        gauge = ref[pos]
    return ref / gauge, RationalMatrix(B, shape=(m, m)) * gauge


# classification -------------------------------------------------------------


class Reason(enum.Enum):
    ZERO_OPERATOR = "zero operator is not invertible"
    SINGULAR_OPERATOR = "operator is not invertible"
    NOT_KRONECKER = "operator is not of the form X -> AXB"
    A_NOT_G_ROW_STOCHASTIC = "left factor A does not satisfy Ae = ce with c != 0"
    A_NOT_PERMUTATION = "left factor A is not a permutation matrix"
    A_SINGULAR = "left factor A is singular"
    B_SINGULAR = "right factor B is singular"
    E_NOT_FIXED = "T^-1 e is not a multiple of e"
    KERNEL_NOT_E = "kernel is not span{e}, or e lies in the image"


class VectorKind(enum.Enum):
    INVERTIBLE_G_ROW = "invertible-g-row"
    SINGULAR_KERNEL_E = "singular-kernel-e"
    ZERO = "zero"


@dataclass(frozen=True)
class Counterexample:
    """``X`` and ``Y`` witnessing a failure of strong preservation.

    ``direction == "forward"``: ``X > Y`` but not ``T(X) > T(Y)``.
    ``direction == "reverse"``: ``T(X) > T(Y)`` but not ``X > Y``.
    """

    X: RationalMatrix
    Y: RationalMatrix
    direction: str
    trial: int = 0


@dataclass(frozen=True)
class StrongGwPreserver:
    A: RationalMatrix
    B: RationalMatrix
    is_strong = True

    def check(self) -> bool:
        return is_g_row_stochastic(self.A) and is_invertible(self.A) and is_invertible(self.B)

    def operator(self) -> OperatorOnMatrices:
        return OperatorOnMatrices.from_kronecker(self.A, self.B)


@dataclass(frozen=True)
class StrongMatrixPreserver:
    P: RationalMatrix
    L: RationalMatrix
    is_strong = True

    def check(self) -> bool:
        return is_permutation(self.P) and is_invertible(self.L)

    def operator(self) -> OperatorOnMatrices:
        return OperatorOnMatrices.from_kronecker(self.P, self.L)


@dataclass(frozen=True)
class VectorPreserver:
    """``T(x) = alpha R x`` for a (not necessarily strong) gw preserver on vectors."""

    alpha: Fraction
    R: RationalMatrix
    kind: VectorKind
    is_strong = False

    def check(self) -> bool:
        n = self.R.nrows
        e = all_ones(n)
        if self.kind is VectorKind.ZERO:
            return self.alpha == 0 and self.R.is_zero()
        if self.kind is VectorKind.INVERTIBLE_G_ROW:
            return self.alpha != 0 and is_g_row_stochastic(self.R) and is_invertible(self.R)
        ker = kernel_basis(self.R)
        return (
            len(ker) == 1
            and len(set(ker[0])) == 1
            and not image_contains(self.R, e)
        )


@dataclass(frozen=True)
class NotPreserver:
    reason: Reason
    counterexample: Optional[Counterexample] = None
    is_strong = False

    def check(self) -> bool:
        return True


PreserverClassification = Union[StrongGwPreserver, StrongMatrixPreserver, VectorPreserver, NotPreserver]


def classify_vector_preserver(T: RationalMatrix) -> PreserverClassification:
    """Classify ``T`` on column vectors as a gw-majorization preserver.

    Preservers are exactly ``x -> alpha R x`` where either ``R`` is an
    invertible g-row stochastic matrix, or ``ker R = span{e}`` and ``e`` is not
    in the image of ``R``.
    """
    if not T.is_square:
        raise ValueError(f"vector operator must be square, got {T.shape}")
    n = T.nrows
    e = all_ones(n)
    if T.is_zero():
        return VectorPreserver(Fraction(0), T, VectorKind.ZERO)
    if is_invertible(T):
        v = inverse(T) @ e
        if any(x != v[0] for x in v):
            return NotPreserver(Reason.E_NOT_FIXED)
        r = v[0]
        return VectorPreserver(1 / r, T * r, VectorKind.INVERTIBLE_G_ROW)
    ker = kernel_basis(T)
    if len(ker) == 1 and len(set(ker[0])) == 1 and not image_contains(T, e):
        return VectorPreserver(Fraction(1), T, VectorKind.SINGULAR_KERNEL_E)
    return NotPreserver(Reason.KERNEL_NOT_E)


def is_strong_gw_preserver(T: OperatorOnMatrices) -> PreserverClassification:
    if T.matrix.is_zero():
        return NotPreserver(Reason.ZERO_OPERATOR)
    if T.m == 1:
        vc = classify_vector_preserver(T.matrix)
        if isinstance(vc, NotPreserver):
            return vc
        if vc.kind is VectorKind.INVERTIBLE_G_ROW:
            return StrongGwPreserver(vc.R, RationalMatrix([[vc.alpha]]))
        return NotPreserver(Reason.SINGULAR_OPERATOR)
    factors = kron_factorize(T)
    if factors is None:
        return NotPreserver(Reason.NOT_KRONECKER)
    A, B = factors
    if not is_g_row_stochastic(A):
        return NotPreserver(Reason.A_NOT_G_ROW_STOCHASTIC)
    if rank(A) < T.n:
        return NotPreserver(Reason.A_SINGULAR)
    if rank(B) < T.m:
        return NotPreserver(Reason.B_SINGULAR)
    return StrongGwPreserver(A, B)


def is_strong_matrix_majorization_preserver(T: OperatorOnMatrices) -> PreserverClassification:
    """Decide strong preservation of matrix majorization on square matrices."""
    if T.n != T.m:
        raise ValueError(f"matrix-majorization preservers are decided on square matrices, got {T.n}x{T.m}")
    if T.matrix.is_zero():
        return NotPreserver(Reason.ZERO_OPERATOR)
    factors = kron_factorize(T)
    if factors is None:
        return NotPreserver(Reason.NOT_KRONECKER)
    P, L = factors
    if not is_g_row_stochastic(P):
        return NotPreserver(Reason.A_NOT_G_ROW_STOCHASTIC)
    if not is_permutation(P):
        return NotPreserver(Reason.A_NOT_PERMUTATION)
    if rank(L) < T.m:
        return NotPreserver(Reason.B_SINGULAR)
    return StrongMatrixPreserver(P, L)


# synthesis and falsification ------------------------------------------------


def synth_strong_gw_preserver(n: int, m: int, rng) -> Tuple[OperatorOnMatrices, RationalMatrix, RationalMatrix]:
    rng = _as_rng(rng)
    A = random_invertible_g_row_stochastic(n, rng)
    B = random_invertible(m, rng)
    return OperatorOnMatrices.from_kronecker(A, B), A, B


def synth_two_term_operator(n: int, m: int, rng) -> OperatorOnMatrices:
    """An invertible ``X -> A1 X B1 + A2 X B2`` with ``{A1, A2}`` and
    ``{B1, B2}`` linearly independent, so it has no single AXB form."""
    rng = _as_rng(rng)
    if n < 2 and m < 2:
        raise ValueError("a two-term operator needs n >= 2 or m >= 2")
    for _ in range(MAX_RETRIES):
        A1, A2 = random_matrix(n, n, rng), random_matrix(n, n, rng)
        B1, B2 = random_matrix(m, m, rng), random_matrix(m, m, rng)
        if rank(RationalMatrix([list(A1.entries()), list(A2.entries())])) < 2:
            continue
        if rank(RationalMatrix([list(B1.entries()), list(B2.entries())])) < 2:
            continue
        T = OperatorOnMatrices.from_kronecker(A1, B1) + OperatorOnMatrices.from_kronecker(A2, B2)
        if T.is_invertible():
            return T
    raise GenerationFailed(f"no invertible two-term operator on {n}x{m} after {MAX_RETRIES} draws")


def _structured_matrix(n: int, m: int, rng: random.Random) -> RationalMatrix:
    """Random ``X`` whose rows lie in an affine subspace of dimension < m.

    Such ``X`` does not gw-majorize every matrix, unlike a generic ``X`` when
    ``n > m``.
    """
    u = [random_rational(rng) for _ in range(m)]
    X = RationalMatrix.ones(n, 1) @ RationalMatrix.row_vector(u)
    for _ in range(rng.randint(0, m - 1)):
        v = RationalMatrix.column([random_rational(rng) for _ in range(n)])
        w = RationalMatrix.row_vector([random_rational(rng) for _ in range(m)])
        X = X + v @ w
    return X


def falsify_strong_preservation(
    T: OperatorOnMatrices,
    relation: str,
    trials: int,
    rng,
) -> Optional[Counterexample]:
    """Randomized search for a pair showing ``T`` is not a strong preserver.

    Trials rotate through three ways of drawing ``X``: generic; with rows in
    a low-dimensional affine subspace; and (for invertible ``T``) the preimage
    of such a matrix.  Each trial checks ``X > RX`` forward through ``T`` and,
    when ``T`` is invertible, ``T(X) > R' T(X)`` back through ``T^-1``.
    """
    if relation == "gw":
        decide, draw_witness = gw_majorizes, random_g_row_stochastic
    elif relation == "matrix":
        decide, draw_witness = matrix_majorizes, random_row_stochastic
    else:
        raise ValueError(f"relation must be 'gw' or 'matrix', got {relation!r}")
    if trials < 1:
        raise ValueError("trials must be >= 1")
    rng = _as_rng(rng)
    n, m = T.n, T.m
    T_inv = T.inverse() if T.is_invertible() else None
    seeds = [rng.getrandbits(64) for _ in range(trials)]
    for t, seed in enumerate(seeds):
        sub = random.Random(seed)
        strategy = t % 3
        if strategy == 0:
            X = random_matrix(n, m, sub)
        elif strategy == 1 or T_inv is None:
            X = _structured_matrix(n, m, sub)
        else:
            X = T_inv(_structured_matrix(n, m, sub))
        TX = T(X)
        Y = draw_witness(n, sub) @ X
        if not decide(TX, T(Y)).holds:
            return Counterexample(X, Y, "forward", t)
        if T_inv is not None:
            Y = T_inv(draw_witness(n, sub) @ TX)
            if not decide(X, Y).holds:
                return Counterexample(X, Y, "reverse", t)
    return None


def gr_spanning_set(n: int):
    """Finitely many g-row stochastic matrices whose affine span is ``GR_n``."""
    I = RationalMatrix.identity(n)
    yield I
    for i in range(n):
        for j in range(n):
            for k in range(n):
                if j == k:
                    continue
                D = [[0] * n for _ in range(n)]
                D[i][j] += 1
                D[i][k] -= 1
                yield I + RationalMatrix(D)
    for j in range(n):
        yield RationalMatrix([[int(c == j) for c in range(n)] for _ in range(n)])


def is_in_gr_commutant(A: RationalMatrix) -> bool:
    """True iff ``A`` commutes with every g-row stochastic matrix (so ``A = I``)."""
    if not is_g_row_stochastic(A):
        raise ValueError("input is not g-row stochastic")
    return all(A @ G == G @ A for G in gr_spanning_set(A.nrows))
