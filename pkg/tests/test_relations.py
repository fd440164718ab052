import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import small_rationals
from gwmajor.linalg import rank
from gwmajor.lp import FeasibilityProblem, enumerate_basic_solutions
from gwmajor.matrix import RationalMatrix
from gwmajor.relations import (
    NoWitnessExists,
    gs_majorizes,
    gw_dominates_all,
    gw_majorizes,
    matrix_majorizes,
    row_system,
    vector_gw_witness,
)
from gwmajor.stochastic import (
    J,
    is_g_doubly_stochastic,
    is_g_row_stochastic,
    is_row_stochastic,
    random_g_row_stochastic,
    random_invertible,
    random_invertible_g_row_stochastic,
    random_matrix,
    random_rational,
    random_row_stochastic,
)

I2 = RationalMatrix.identity(2)
X1 = RationalMatrix([[1, 0], [0, 0]])
X2 = RationalMatrix([[0, 0], [1, 0]])
EXAMPLE_A = RationalMatrix([[1, 0], [-1, 2]])


@pytest.mark.parametrize("decide", [gw_majorizes, matrix_majorizes, gs_majorizes])
def test_reflexive_with_identity_witness(decide):
    A = RationalMatrix([[1, 2, 3], [0, 1, 5], [2, 2, 1]])
    v = decide(A, A)
    assert v.holds and v.witness == RationalMatrix.identity(3)


def test_gw_constant_vector_fixed():
    assert not gw_majorizes(RationalMatrix([[1], [1]]), RationalMatrix([[2], [3]])).holds


def test_gw_witness_is_target():
    B = RationalMatrix([[2, -1], [0, 1]])
    v = gw_majorizes(I2, B)
    assert v.holds and v.witness == B


def test_matrix_example_pair():
    v = matrix_majorizes(X1, X2)
    assert v.holds and v.witness == RationalMatrix([[0, 1], [1, 0]])


def test_matrix_example_images_fail_with_certificate():
    A1, A2 = EXAMPLE_A @ X1, EXAMPLE_A @ X2
    assert (A1, A2) == (RationalMatrix([[1, 0], [-1, 0]]), RationalMatrix([[0, 0], [2, 0]]))
    v = matrix_majorizes(A1, A2)
    assert not v.holds
    row, cert = v.evidence
    assert row == 1
    assert cert.verify(FeasibilityProblem(*row_system(A1, A2.row(row))))


def test_gs_examples():
    B = RationalMatrix([[2, -1], [-1, 2]])
    v = gs_majorizes(I2, B)
    assert v.holds and v.witness == B
    assert not gs_majorizes(I2, RationalMatrix([[2, -1], [0, 1]])).holds


def test_shape_mismatch():
    with pytest.raises(ValueError):
        gw_majorizes(I2, RationalMatrix([[1, 2, 3], [4, 5, 6]]))


def test_vector_witness_examples():
    R = vector_gw_witness((1, 0), (3, -2))
    assert R == RationalMatrix([[3, -2], [-2, 3]])
    assert R @ (1, 0) == (3, -2) and is_g_row_stochastic(R)
    assert vector_gw_witness((5, 5), (5, 5)) == I2
    with pytest.raises(NoWitnessExists):
        vector_gw_witness((5, 5), (1, 2))


def test_vector_witness_uses_first_distinct_pair():
    R = vector_gw_witness((4, 4, 1), (0, 7, 4))
    # columns 0 and 2 carry the weights; column 1 stays zero
    assert R.col(1) == (0, 0, 0)
    assert R @ (4, 4, 1) == (0, 7, 4)


@pytest.mark.parametrize("x, expected", [((1, 2), True), ((3, 3), False), ((7,), False)])
def test_dominates_all(x, expected):
    assert gw_dominates_all(x) is expected


def test_n1_relations_reduce_to_equality():
    a, b = RationalMatrix([[2, 3]]), RationalMatrix([[2, 4]])
    for decide in (gw_majorizes, matrix_majorizes, gs_majorizes):
        assert decide(a, a).holds
        assert not decide(a, b).holds


def _sizes(k):
    return 1 + k % 4, 1 + (k // 4) % 4


def test_witness_soundness_all_relations():
    rng = random.Random(21)
    for k in range(200):
        n, m = _sizes(k)
        A = random_matrix(n, m, rng)
        for decide, draw, pred in (
            (gw_majorizes, random_g_row_stochastic, is_g_row_stochastic),
            (matrix_majorizes, random_row_stochastic, is_row_stochastic),
            (gs_majorizes, random_g_row_stochastic, is_g_doubly_stochastic),
        ):
            B = (draw(n, rng) if k % 3 else random_matrix(n, n, rng)) @ A
            v = decide(A, B)
            if v.holds:
                assert v.witness @ A == B and pred(v.witness)


def test_gw_construction_completeness():
    rng = random.Random(22)
    for k in range(100):
        n, m = _sizes(k)
        A = random_matrix(n, m, rng)
        assert gw_majorizes(A, random_g_row_stochastic(n, rng) @ A).holds


def test_matrix_relation_matches_oracle():
    rng = random.Random(23)
    for k in range(150):
        n, m = 1 + k % 3, 1 + (k // 3) % 3
        A = random_matrix(n, m, rng)
        B = (random_row_stochastic(n, rng) if k % 2 else random_matrix(n, n, rng)) @ A
        expected = all(
            enumerate_basic_solutions(FeasibilityProblem(*row_system(A, B.row(i)))) is not None
            for i in range(n)
        )
        assert matrix_majorizes(A, B).holds == expected


def test_hierarchy():
    rng = random.Random(24)
    for k in range(200):
        n, m = _sizes(k)
        A = random_matrix(n, m, rng)
        B = (random_row_stochastic(n, rng) if k % 2 else random_matrix(n, n, rng)) @ A
        gw = gw_majorizes(A, B).holds
        if matrix_majorizes(A, B).holds or gs_majorizes(A, B).holds:
            assert gw


@st.composite
def equivalence_instance(draw):
    n = draw(st.integers(1, 4))
    m = draw(st.integers(1, 4))
    seed = draw(st.integers(0, 2**32))
    return n, m, random.Random(seed), draw(small_rationals.filter(bool)), draw(small_rationals), draw(st.booleans())


@settings(max_examples=100, deadline=None)
@given(equivalence_instance())
def test_equivalence_properties(inst):
    n, m, rng, alpha, beta, related = inst
    X = random_matrix(n, m, rng)
    Y = (random_g_row_stochastic(n, rng) if related else random_matrix(n, n, rng)) @ X
    A = random_invertible_g_row_stochastic(n, rng)
    B = random_invertible_g_row_stochastic(n, rng)
    C = random_invertible(m, rng)
    Jnm = J(n, m)
    base = gw_majorizes(X, Y).holds
    assert gw_majorizes(A @ X, B @ Y).holds == base
    assert gw_majorizes(X * alpha + Jnm * beta, Y * alpha + Jnm * beta).holds == base
    assert gw_majorizes(X @ C, Y @ C).holds == base


def test_lemma_nonconstant_vector_dominates():
    rng = random.Random(25)
    for k in range(50):
        n = 2 + k % 4
        x = [random_rational(rng) for _ in range(n)]
        if not gw_dominates_all(x):
            x[-1] += 1
        y = [random_rational(rng) for _ in range(n)]
        R = vector_gw_witness(x, y)
        assert R @ x == tuple(y) and is_g_row_stochastic(R)
        assert gw_majorizes(RationalMatrix.column(x), RationalMatrix.column(y)).holds
