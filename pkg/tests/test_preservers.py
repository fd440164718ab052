import random
from fractions import Fraction

import pytest

from gwmajor.linalg import rank
from gwmajor.matrix import RationalMatrix
from gwmajor.preservers import (
    Counterexample,
    NotPreserver,
    OperatorOnMatrices,
    Reason,
    StrongGwPreserver,
    StrongMatrixPreserver,
    VectorKind,
    VectorPreserver,
    block_decompose,
    classify_vector_preserver,
    falsify_strong_preservation,
    gr_spanning_set,
    is_in_gr_commutant,
    is_strong_gw_preserver,
    is_strong_matrix_majorization_preserver,
    kron_factorize,
    synth_strong_gw_preserver,
    synth_two_term_operator,
    unvec,
    vec,
)
from gwmajor.relations import gw_majorizes, matrix_majorizes
from gwmajor.stochastic import (
    J,
    is_g_row_stochastic,
    random_g_row_stochastic,
    random_invertible,
    random_invertible_g_row_stochastic,
    random_matrix,
)

I2 = RationalMatrix.identity(2)
EXAMPLE_A = RationalMatrix([[1, 0], [-1, 2]])
EXAMPLE_T = OperatorOnMatrices.from_kronecker(EXAMPLE_A, I2)


def test_vec_is_column_stacking():
    X = RationalMatrix([[1, 2, 3], [4, 5, 6]])
    assert vec(X) == (1, 4, 2, 5, 3, 6)
    assert unvec(vec(X), 2, 3) == X


def test_kronecker_convention_matches_axb():
    rng = random.Random(1)
    for n, m in [(1, 1), (2, 3), (3, 2)]:
        A, B = random_matrix(n, n, rng), random_matrix(m, m, rng)
        X = random_matrix(n, m, rng)
        assert OperatorOnMatrices.from_kronecker(A, B)(X) == A @ X @ B


def test_from_function_agrees_with_kronecker():
    A = RationalMatrix([[1, 2], [3, 4]])
    B = RationalMatrix([[0, 1, 1], [1, 0, 2], [5, 1, 1]])
    T = OperatorOnMatrices.from_function(2, 3, lambda X: A @ X @ B)
    assert T == OperatorOnMatrices.from_kronecker(A, B)


def test_operator_shape_validation():
    with pytest.raises(ValueError):
        OperatorOnMatrices(2, 2, RationalMatrix.identity(3))


# block decomposition ---------------------------------------------------------


def test_blocks_identity_and_zero():
    grid = block_decompose(OperatorOnMatrices.identity(2, 3))
    Z = RationalMatrix.zeros(2, 2)
    for i in range(3):
        for j in range(3):
            assert grid[i, j] == (I2 if i == j else Z)
    zgrid = block_decompose(OperatorOnMatrices.zero(2, 2))
    assert all(b.is_zero() for row in zgrid.blocks for b in row)


def test_blocks_of_axb():
    A = RationalMatrix([[1, 2], [3, 4]])
    B = RationalMatrix([[5, 6], [7, 8]])
    grid = block_decompose(OperatorOnMatrices.from_kronecker(A, B))
    for i in range(2):
        for j in range(2):
            assert grid[i, j] == A * B[j, i]


def test_block_reconstruction_on_basis():
    rng = random.Random(2)
    for n, m in [(1, 3), (2, 2), (3, 2)]:
        T = OperatorOnMatrices(n, m, random_matrix(n * m, n * m, rng))
        grid = block_decompose(T)
        for j in range(m):
            for i in range(n):
                E = RationalMatrix([[int((a, b) == (i, j)) for b in range(m)] for a in range(n)], shape=(n, m))
                assert grid.apply(E) == T(E)


# factorization ---------------------------------------------------------------


def test_factorize_identity():
    assert kron_factorize(OperatorOnMatrices.identity(2, 2)) == (I2, I2)


def test_factorize_example_operator():
    assert kron_factorize(EXAMPLE_T) == (EXAMPLE_A, I2)


def test_factorize_gauge_scales_to_row_sums_one():
    T = OperatorOnMatrices.from_kronecker(EXAMPLE_A * 3, I2 / 5)
    assert kron_factorize(T) == (EXAMPLE_A, I2 * Fraction(3, 5))


def test_factorize_gauge_without_e_eigenvector():
    A = RationalMatrix([[0, 2], [4, 1]])
    B = RationalMatrix([[1, 1], [0, 3]])
    got = kron_factorize(OperatorOnMatrices.from_kronecker(A, B))
    assert got == (A / 2, B * 2)


def test_factorize_rejects_two_terms_and_zero():
    A1, A2 = I2, RationalMatrix([[0, 1], [0, 0]])
    B1, B2 = I2, RationalMatrix([[0, 0], [1, 0]])
    T = OperatorOnMatrices.from_kronecker(A1, B1) + OperatorOnMatrices.from_kronecker(A2, B2)
    assert kron_factorize(T) is None
    assert kron_factorize(OperatorOnMatrices.zero(2, 3)) is None


# vector classification -----------------------------------------------------


def test_classify_vector_identity():
    c = classify_vector_preserver(I2)
    assert c == VectorPreserver(Fraction(1), I2, VectorKind.INVERTIBLE_G_ROW)


def test_classify_vector_centering():
    C = RationalMatrix([["1/2", "-1/2"], ["-1/2", "1/2"]])
    c = classify_vector_preserver(C)
    assert c == VectorPreserver(Fraction(1), C, VectorKind.SINGULAR_KERNEL_E)
    assert c.check()


def test_classify_vector_all_ones_rejected():
    assert classify_vector_preserver(J(2)) == NotPreserver(Reason.KERNEL_NOT_E)


def test_classify_vector_scaled_grs():
    R = RationalMatrix([[2, -1], [3, -2]])
    c = classify_vector_preserver(R * 4)
    assert c == VectorPreserver(Fraction(4), R, VectorKind.INVERTIBLE_G_ROW)


def test_classify_vector_zero_and_bad():
    assert classify_vector_preserver(RationalMatrix.zeros(3, 3)).kind is VectorKind.ZERO
    assert classify_vector_preserver(RationalMatrix([[1, 2], [3, 4]])) == NotPreserver(Reason.E_NOT_FIXED)
    with pytest.raises(ValueError):
        classify_vector_preserver(RationalMatrix([[1, 2]]))


# strong preservers ---------------------------------------------------------


def test_example_is_strong_gw_not_matrix():
    assert is_strong_gw_preserver(EXAMPLE_T) == StrongGwPreserver(EXAMPLE_A, I2)
    c = is_strong_matrix_majorization_preserver(EXAMPLE_T)
    assert c == NotPreserver(Reason.A_NOT_PERMUTATION)


def test_zero_operator_rejected():
    for n, m in [(1, 1), (2, 1), (2, 3)]:
        c = is_strong_gw_preserver(OperatorOnMatrices.zero(n, m))
        assert c == NotPreserver(Reason.ZERO_OPERATOR)
        assert "not invertible" in c.reason.value


def test_singular_left_factor():
    T = OperatorOnMatrices.from_kronecker(J(2) / 2, I2)
    assert is_strong_gw_preserver(T) == NotPreserver(Reason.A_SINGULAR)


def test_singular_right_factor():
    T = OperatorOnMatrices.from_kronecker(EXAMPLE_A, RationalMatrix([[1, 2], [2, 4]]))
    assert is_strong_gw_preserver(T) == NotPreserver(Reason.B_SINGULAR)


def test_non_grs_left_factor():
    T = OperatorOnMatrices.from_kronecker(RationalMatrix([[1, 2], [3, 4]]), I2)
    assert is_strong_gw_preserver(T) == NotPreserver(Reason.A_NOT_G_ROW_STOCHASTIC)


def test_vector_case_m1():
    R = RationalMatrix([[2, -1], [3, -2]])
    T = OperatorOnMatrices(2, 1, R * 5)
    assert is_strong_gw_preserver(T) == StrongGwPreserver(R, RationalMatrix([[5]]))
    C = RationalMatrix([["1/2", "-1/2"], ["-1/2", "1/2"]])
    assert is_strong_gw_preserver(OperatorOnMatrices(2, 1, C)) == NotPreserver(Reason.SINGULAR_OPERATOR)


def test_scalar_operator():
    T, A, B = synth_strong_gw_preserver(1, 1, 5)
    assert A == RationalMatrix([[1]]) and B[0, 0] != 0
    assert T.matrix == B
    assert is_strong_gw_preserver(T) == StrongGwPreserver(A, B)


def test_pxl_recovered():
    P = RationalMatrix([[0, 1], [1, 0]])
    L = RationalMatrix([[1, 1], [0, 1]])
    T = OperatorOnMatrices.from_kronecker(P, L)
    assert is_strong_matrix_majorization_preserver(T) == StrongMatrixPreserver(P, L)
    assert is_strong_gw_preserver(T) == StrongGwPreserver(P, L)


def test_identity_matrix_preserver():
    T = OperatorOnMatrices.identity(3, 3)
    assert is_strong_matrix_majorization_preserver(T) == StrongMatrixPreserver(
        RationalMatrix.identity(3), RationalMatrix.identity(3)
    )


def test_matrix_preserver_needs_square_domain():
    with pytest.raises(ValueError):
        is_strong_matrix_majorization_preserver(OperatorOnMatrices.identity(2, 3))


def test_synth_round_trip_and_invertibility():
    rng = random.Random(3)
    for n in range(1, 5):
        for m in range(1, 5):
            T, A, B = synth_strong_gw_preserver(n, m, rng)
            c = is_strong_gw_preserver(T)
            assert c == StrongGwPreserver(A, B) and c.check()
            assert rank(T.matrix) == n * m


def test_synth_fixture():
    T, A, B = synth_strong_gw_preserver(2, 2, 42)
    assert A == RationalMatrix([[-6, 7], ["-1/4", "5/4"]])
    assert B == RationalMatrix([["-2/3", "-2/3"], [-1, -8]])


# falsifier -----------------------------------------------------------------


def test_falsifier_finds_matrix_counterexample_for_example():
    ce = falsify_strong_preservation(EXAMPLE_T, "matrix", 100, random.Random(0))
    assert isinstance(ce, Counterexample)
    if ce.direction == "forward":
        assert matrix_majorizes(ce.X, ce.Y).holds
        assert not matrix_majorizes(EXAMPLE_T(ce.X), EXAMPLE_T(ce.Y)).holds
    else:
        assert matrix_majorizes(EXAMPLE_T(ce.X), EXAMPLE_T(ce.Y)).holds
        assert not matrix_majorizes(ce.X, ce.Y).holds


def test_documented_matrix_counterexample():
    X1 = RationalMatrix([[1, 0], [0, 0]])
    X2 = RationalMatrix([[0, 0], [1, 0]])
    assert matrix_majorizes(X1, X2).holds
    assert not matrix_majorizes(EXAMPLE_T(X1), EXAMPLE_T(X2)).holds


def test_falsifier_silent_on_genuine_preservers():
    assert falsify_strong_preservation(EXAMPLE_T, "gw", 500, random.Random(1)) is None
    for rel in ("gw", "matrix"):
        assert falsify_strong_preservation(OperatorOnMatrices.identity(2, 3), rel, 100, random.Random(2)) is None


def test_falsifier_catches_two_term_operators():
    rng = random.Random(4)
    for n, m in [(2, 2), (3, 2), (2, 3), (4, 2)]:
        T = synth_two_term_operator(n, m, rng)
        ce = falsify_strong_preservation(T, "gw", 500, rng)
        assert ce is not None
        if ce.direction == "forward":
            assert gw_majorizes(ce.X, ce.Y).holds and not gw_majorizes(T(ce.X), T(ce.Y)).holds
        else:
            assert gw_majorizes(T(ce.X), T(ce.Y)).holds and not gw_majorizes(ce.X, ce.Y).holds


def test_falsifier_deterministic():
    T = synth_two_term_operator(2, 2, 9)
    assert falsify_strong_preservation(T, "gw", 50, 7) == falsify_strong_preservation(T, "gw", 50, 7)


def test_singular_vector_preserver_is_not_strong():
    # preserves gw on vectors but not strongly: e -> 0
    C = RationalMatrix([["1/2", "-1/2"], ["-1/2", "1/2"]])
    T = OperatorOnMatrices(2, 1, C)
    assert not T.is_invertible()
    assert is_strong_gw_preserver(T).is_strong is False


def test_falsifier_argument_validation():
    with pytest.raises(ValueError):
        falsify_strong_preservation(EXAMPLE_T, "gs", 10, 0)
    with pytest.raises(ValueError):
        falsify_strong_preservation(EXAMPLE_T, "gw", 0, 0)


# commutant -----------------------------------------------------------------


def test_spanning_set_is_grs():
    assert all(is_g_row_stochastic(G) for G in gr_spanning_set(3))


def test_commutant_examples():
    assert is_in_gr_commutant(RationalMatrix.identity(3))
    for n in (2, 3):
        assert not is_in_gr_commutant(J(n) / n)


def test_commutant_random():
    rng = random.Random(5)
    for k in range(100):
        n = 2 + k % 3
        A = random_invertible_g_row_stochastic(n, rng)
        assert is_in_gr_commutant(A) == (A == RationalMatrix.identity(n))


def test_commutant_precondition():
    with pytest.raises(ValueError):
        is_in_gr_commutant(RationalMatrix([[1, 1], [0, 1]]))


def test_forward_direction_no_false_alarms():
    rng = random.Random(6)
    for k in range(100):
        n, m = 1 + k % 4, 1 + (k // 4) % 4
        T, A, B = synth_strong_gw_preserver(n, m, rng)
        assert falsify_strong_preservation(T, "gw", 100, rng) is None


def test_permutation_forms_are_gw_preservers():
    rng = random.Random(7)
    for n in range(1, 5):
        perm = list(range(n))
        rng.shuffle(perm)
        P = RationalMatrix([[int(j == perm[i]) for j in range(n)] for i in range(n)], shape=(n, n))
        L = random_invertible(n, rng)
        T = OperatorOnMatrices.from_kronecker(P, L)
        assert is_strong_matrix_majorization_preserver(T) == StrongMatrixPreserver(P, L)
        assert is_strong_gw_preserver(T) == StrongGwPreserver(P, L)
