"""Randomized property suites behind ``gwmajor verify``.

Each property draws its instances from its own substream of the master seed,
so a report is reproducible from ``(suite, seed, trials, max_n, max_m)``.
Properties marked soft are statistical and reported without failing the run.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Dict, List

from . import linalg, lp, preservers as pv, relations as rel, stochastic as st
from .matrix import RationalMatrix

SUITES = ("lp", "relations", "theorems")


@dataclass
class PropertyResult:
    name: str
    passed: int
    total: int
    hard: bool = True
    note: str = ""

    @property
    def ok(self) -> bool:
        return self.passed == self.total

    def line(self) -> str:
        status = "PASS" if self.ok else ("FAIL" if self.hard else "WARN")
        text = f"{status}  {self.name}  {self.passed}/{self.total}"
        return f"{text}  {self.note}" if self.note else text


@dataclass(frozen=True)
class Config:
    trials: int
    max_n: int
    max_m: int


def _sizes(cfg: Config, k: int, lo: int = 1):
    n_range = list(range(lo, max(lo, cfg.max_n) + 1))
    m_range = list(range(lo, max(lo, cfg.max_m) + 1))
    return n_range[k % len(n_range)], m_range[(k // len(n_range)) % len(m_range)]


def random_feasibility_problem(rng: random.Random, max_dim: int = 4) -> lp.FeasibilityProblem:
    """Half the draws are feasible by construction (target = r0 M, r0 >= 0)."""
    p, q = rng.randint(1, max_dim), rng.randint(1, max_dim)
    M = st.random_matrix(p, q, rng)
    if rng.random() < 0.5:
        r0 = [st.random_rational(rng, 0, 9) if rng.random() < 0.6 else Fraction(0) for _ in range(p)]
        target = r0 @ M
    else:
        target = tuple(st.random_rational(rng) for _ in range(q))
    return lp.FeasibilityProblem(M, target)


# lp -------------------------------------------------------------------------


def prop_lp_soundness(cfg, rng):
    ok = 0
    for _ in range(cfg.trials):
        prob = random_feasibility_problem(rng)
        ok += lp.solve_feasibility(prob).verify(prob)
    return ok


def prop_lp_oracle(cfg, rng):
    ok = 0
    for _ in range(cfg.trials):
        prob = random_feasibility_problem(rng)
        outcome = lp.solve_feasibility(prob)
        oracle = lp.enumerate_basic_solutions(prob)
        agree = isinstance(outcome, lp.Feasible) == (oracle is not None)
        ok += agree and (oracle is None or prob.is_solution(oracle))
    return ok


def prop_lp_determinism(cfg, rng):
    ok = 0
    for _ in range(cfg.trials):
        prob = random_feasibility_problem(rng)
        ok += lp.solve_feasibility(prob) == lp.solve_feasibility(prob)
    return ok


# linear algebra and stochastic classes --------------------------------------


def prop_solve_left(cfg, rng):
    ok = 0
    for k in range(cfg.trials):
        rows, cols = _sizes(cfg, k)
        M = st.random_matrix(rows, cols, rng)
        c = tuple(rng.randint(0, 1) * st.random_rational(rng) for _ in range(rows)) @ M
        sol = linalg.solve_left(M, c)
        coeffs = [st.random_rational(rng) for _ in sol.kernel_basis]
        ok += sol.feasible and (sol.point(coeffs) @ M) == c
    return ok


def prop_inverse(cfg, rng):
    ok = 0
    for k in range(cfg.trials):
        n, _ = _sizes(cfg, k)
        M = st.random_invertible(n, rng)
        Mi = linalg.inverse(M)
        I = RationalMatrix.identity(n)
        ok += Mi @ M == I and M @ Mi == I
    return ok


def prop_rank_rref(cfg, rng):
    ok = 0
    for k in range(cfg.trials):
        n, m = _sizes(cfg, k)
        M = st.random_matrix(n, m, rng)
        R = linalg.rref(M).R
        ok += linalg.rank(M) == linalg.rank(M.T) and linalg.rref(R).R == R
    return ok


def prop_generators(cfg, rng):
    ok = 0
    for k in range(cfg.trials):
        n, _ = _sizes(cfg, k)
        ok += (
            st.is_g_row_stochastic(st.random_g_row_stochastic(n, rng))
            and st.is_row_stochastic(st.random_row_stochastic(n, rng))
            and linalg.rank(st.random_invertible_g_row_stochastic(n, rng)) == n
        )
    return ok


def prop_closure(cfg, rng):
    ok = 0
    for k in range(cfg.trials):
        n, _ = _sizes(cfg, k)
        A = st.random_invertible_g_row_stochastic(n, rng)
        B = st.random_g_row_stochastic(n, rng)
        ok += st.is_g_row_stochastic(A @ B) and st.is_g_row_stochastic(linalg.inverse(A))
    return ok


def prop_affine_decompose(cfg, rng):
    ok = 0
    for k in range(cfg.trials):
        n = 1 + k % 6
        R = st.random_g_row_stochastic(n, rng)
        combo = st.affine_decompose(R)
        ok += combo.is_valid() and combo.combine() == R
    return ok


# relations ------------------------------------------------------------------


def prop_witness_soundness(cfg, rng):
    ok = 0
    for k in range(cfg.trials):
        n, m = _sizes(cfg, k)
        A = st.random_matrix(n, m, rng)
        good = True
        for name, draw in (("gw", st.random_g_row_stochastic), ("matrix", st.random_row_stochastic), ("gs", None)):
            if name == "gs":
                # D = I + (zero row and column sums)
                Z = st.random_matrix(n, n, rng)
                Z = Z - (Z @ st.J(n)) / n - (st.J(n) @ Z) / n + (st.J(n) @ Z @ st.J(n)) / (n * n)
                B = (RationalMatrix.identity(n) + Z) @ A
            else:
                B = (draw(n, rng) if rng.random() < 0.7 else st.random_matrix(n, n, rng)) @ A
            v = rel.majorizes(name, A, B)
            if v.holds:
                good &= v.witness @ A == B and rel.WITNESS_CLASS[name](v.witness)
            elif name == "matrix":
                i, cert = v.evidence
                M, target = rel.row_system(A, B.row(i))
                good &= cert.verify(lp.FeasibilityProblem(M, target))
            elif name == "gs":
                good = False
        ok += good
    return ok


def prop_gw_completeness(cfg, rng):
    ok = 0
    for k in range(cfg.trials):
        n, m = _sizes(cfg, k)
        A = st.random_matrix(n, m, rng)
        ok += rel.gw_majorizes(A, st.random_g_row_stochastic(n, rng) @ A).holds
    return ok


def prop_hierarchy(cfg, rng):
    ok = 0
    for k in range(cfg.trials):
        n, m = _sizes(cfg, k)
        A = st.random_matrix(n, m, rng)
        B = (st.random_row_stochastic(n, rng) if k % 2 else st.random_matrix(n, n, rng)) @ A
        gw = rel.gw_majorizes(A, B).holds
        ok += (not rel.matrix_majorizes(A, B).holds or gw) and (not rel.gs_majorizes(A, B).holds or gw)
    return ok


def prop_equivalence(cfg, rng):
    ok = 0
    for k in range(cfg.trials):
        n, m = _sizes(cfg, k)
        X = st.random_matrix(n, m, rng)
        Y = (st.random_g_row_stochastic(n, rng) if k % 2 else st.random_matrix(n, n, rng)) @ X
        A = st.random_invertible_g_row_stochastic(n, rng)
        B = st.random_invertible_g_row_stochastic(n, rng)
        C = st.random_invertible(m, rng)
        alpha = st.random_rational(rng) or Fraction(1)
        beta = st.random_rational(rng)
        Jnm = st.J(n, m)
        base = rel.gw_majorizes(X, Y).holds
        ok += (
            rel.gw_majorizes(A @ X, B @ Y).holds == base
            and rel.gw_majorizes(X * alpha + Jnm * beta, Y * alpha + Jnm * beta).holds == base
            and rel.gw_majorizes(X @ C, Y @ C).holds == base
        )
    return ok


def prop_vector_lemma(cfg, rng):
    ok = 0
    for k in range(cfg.trials):
        n = 2 + k % max(1, cfg.max_n - 1)
        x = [st.random_rational(rng) for _ in range(n)]
        if not rel.gw_dominates_all(x):
            x[0] += 1
        y = [st.random_rational(rng) for _ in range(n)]
        R = rel.vector_gw_witness(x, y)
        X, Y = RationalMatrix.column(x), RationalMatrix.column(y)
        ok += R @ x == tuple(y) and st.is_g_row_stochastic(R) and rel.gw_majorizes(X, Y).holds
    return ok


def prop_matrix_oracle(cfg, rng):
    ok = 0
    for k in range(cfg.trials):
        n, m = _sizes(cfg, k)
        n, m = min(n, 3), min(m, 3)
        A = st.random_matrix(n, m, rng)
        B = (st.random_row_stochastic(n, rng) if k % 2 else st.random_matrix(n, n, rng)) @ A
        expected = all(
            lp.enumerate_basic_solutions(lp.FeasibilityProblem(*rel.row_system(A, B.row(i)))) is not None
            for i in range(n)
        )
        ok += rel.matrix_majorizes(A, B).holds == expected
    return ok


# theorems -------------------------------------------------------------------


EXAMPLE_A = RationalMatrix([[1, 0], [-1, 2]])
EXAMPLE_X1 = RationalMatrix([[1, 0], [0, 0]])
EXAMPLE_X2 = RationalMatrix([[0, 0], [1, 0]])


def prop_example(cfg, rng):
    I2 = RationalMatrix.identity(2)
    T = pv.OperatorOnMatrices.from_kronecker(EXAMPLE_A, I2)
    gw = pv.is_strong_gw_preserver(T)
    mm = pv.is_strong_matrix_majorization_preserver(T)
    fwd = rel.matrix_majorizes(EXAMPLE_X1, EXAMPLE_X2)
    img = rel.matrix_majorizes(T(EXAMPLE_X1), T(EXAMPLE_X2))
    cert_ok = False
    if not img.holds:
        i, cert = img.evidence
        cert_ok = cert.verify(lp.FeasibilityProblem(*rel.row_system(T(EXAMPLE_X1), T(EXAMPLE_X2).row(i))))
    return int(
        isinstance(gw, pv.StrongGwPreserver)
        and (gw.A, gw.B) == (EXAMPLE_A, I2)
        and isinstance(mm, pv.NotPreserver)
        and fwd.holds
        and fwd.witness == RationalMatrix([[0, 1], [1, 0]])
        and cert_ok
    )


def prop_roundtrip(cfg, rng):
    ok = 0
    for k in range(cfg.trials):
        n, m = _sizes(cfg, k)
        T, A, B = pv.synth_strong_gw_preserver(n, m, rng)
        c = pv.is_strong_gw_preserver(T)
        ok += (
            isinstance(c, pv.StrongGwPreserver)
            and (c.A, c.B) == (A, B)
            and linalg.rank(T.matrix) == n * m
            and pv.falsify_strong_preservation(T, "gw", 5, rng) is None
        )
    return ok


def prop_pxl(cfg, rng):
    ok = 0
    for k in range(cfg.trials):
        n, _ = _sizes(cfg, k)
        perm = list(range(n))
        rng.shuffle(perm)
        P = RationalMatrix([[int(j == perm[i]) for j in range(n)] for i in range(n)], shape=(n, n))
        L = st.random_invertible(n, rng)
        T = pv.OperatorOnMatrices.from_kronecker(P, L)
        mm = pv.is_strong_matrix_majorization_preserver(T)
        ok += (
            isinstance(mm, pv.StrongMatrixPreserver)
            and (mm.P, mm.L) == (P, L)
            and isinstance(pv.is_strong_gw_preserver(T), pv.StrongGwPreserver)
        )
    return ok


def prop_structural_rejection(cfg, rng):
    ok = 0
    for k in range(cfg.trials):
        n, m = _sizes(cfg, k, lo=2)
        T = pv.synth_two_term_operator(n, m, rng)
        ok += isinstance(pv.is_strong_gw_preserver(T), pv.NotPreserver)
    return ok


def prop_falsifier_hits(cfg, rng):
    ok = 0
    for k in range(cfg.trials):
        n, m = _sizes(cfg, k, lo=2)
        T = pv.synth_two_term_operator(n, m, rng)
        ok += pv.falsify_strong_preservation(T, "gw", 500, rng) is not None
    return ok


def prop_commutant(cfg, rng):
    ok = 0
    for k in range(cfg.trials):
        n, _ = _sizes(cfg, k)
        A = st.random_g_row_stochastic(n, rng)
        I = RationalMatrix.identity(n)
        ok += pv.is_in_gr_commutant(A) == (A == I) and pv.is_in_gr_commutant(I)
    return ok


def prop_block_reconstruction(cfg, rng):
    ok = 0
    for k in range(cfg.trials):
        n, m = _sizes(cfg, k)
        T = pv.OperatorOnMatrices(n, m, st.random_matrix(n * m, n * m, rng))
        grid = pv.block_decompose(T)
        good = True
        for j in range(m):
            for i in range(n):
                E = RationalMatrix([[int(a == i and b == j) for b in range(m)] for a in range(n)], shape=(n, m))
                good &= grid.apply(E) == T(E)
        ok += good
    return ok


Property = Callable[[Config, random.Random], int]

REGISTRY: Dict[str, List[tuple]] = {
    "lp": [
        ("lp.soundness", prop_lp_soundness, True),
        ("lp.oracle_agreement", prop_lp_oracle, True),
        ("lp.determinism", prop_lp_determinism, True),
    ],
    "relations": [
        ("linalg.solve_left", prop_solve_left, True),
        ("linalg.inverse", prop_inverse, True),
        ("linalg.rank_rref", prop_rank_rref, True),
        ("stochastic.generators", prop_generators, True),
        ("stochastic.closure", prop_closure, True),
        ("stochastic.affine_decompose", prop_affine_decompose, True),
        ("relations.witness_soundness", prop_witness_soundness, True),
        ("relations.gw_completeness", prop_gw_completeness, True),
        ("relations.hierarchy", prop_hierarchy, True),
        ("relations.equivalence", prop_equivalence, True),
        ("relations.vector_lemma", prop_vector_lemma, True),
        ("relations.matrix_oracle", prop_matrix_oracle, True),
    ],
    "theorems": [
        ("theorems.example", prop_example, True),
        ("theorems.roundtrip", prop_roundtrip, True),
        ("theorems.pxl_is_gw_preserver", prop_pxl, True),
        ("theorems.structural_rejection", prop_structural_rejection, True),
        ("theorems.falsifier_hits", prop_falsifier_hits, False),
        ("theorems.commutant", prop_commutant, True),
        ("theorems.block_reconstruction", prop_block_reconstruction, True),
    ],
}


def run_suite(suite: str, trials: int, max_n: int, max_m: int, seed: int) -> List[PropertyResult]:
    names = SUITES if suite == "all" else (suite,)
    cfg = Config(trials, max_n, max_m)
    master = random.Random(seed)
    results = []
    for s in names:
        for name, prop, hard in REGISTRY[s]:
            rng = random.Random(master.getrandbits(64))
            total = 1 if prop is prop_example else trials
            results.append(PropertyResult(name, prop(cfg, rng), total, hard))
    return results
