"""Exact decision procedures for matrix majorization relations and their
strong linear preservers on n-by-m rational matrices."""

from fractions import Fraction

from .matrix import RationalMatrix
from .linalg import (
    AffineSolutionSet,
    Singular,
    image_contains,
    inverse,
    kernel_basis,
    rank,
    rref,
    solve_left,
)
from .stochastic import (
    AffineCombination,
    GenerationFailed,
    affine_decompose,
    is_g_doubly_stochastic,
    is_g_row_stochastic,
    is_permutation,
    is_row_stochastic,
)
from .lp import (
    FarkasCertificate,
    Feasible,
    FeasibilityProblem,
    Infeasible,
    solve_feasibility,
)
from .relations import (
    MajorizationVerdict,
    NoWitnessExists,
    gs_majorizes,
    gw_dominates_all,
    gw_majorizes,
    matrix_majorizes,
    vector_gw_witness,
)
from .preservers import (
    BlockGrid,
    Counterexample,
    NotPreserver,
    OperatorOnMatrices,
    StrongGwPreserver,
    StrongMatrixPreserver,
    VectorPreserver,
    block_decompose,
    classify_vector_preserver,
    falsify_strong_preservation,
    is_in_gr_commutant,
    is_strong_gw_preserver,
    is_strong_matrix_majorization_preserver,
    kron_factorize,
    synth_strong_gw_preserver,
)

__all__ = [name for name in dir() if not name.startswith("_")]
