"""Command-line front end.

Exit codes: 0 relation holds / operator accepted / all properties pass,
3 relation fails / operator rejected, 2 usage or input error.
"""

from __future__ import annotations

import argparse
import random
import sys
import time
from pathlib import Path
from typing import Optional, Sequence

from . import preservers as pv
from .matrix import RationalMatrix, dot
from .matrix_io import (
    MatrixFileError,
    dumps,
    load_matrix,
    matrix_from_doc,
    matrix_to_doc,
    parse_entry,
    read_json,
    save_matrix,
)
from .relations import RELATIONS, majorizes, row_system
from .stochastic import (
    affine_decompose,
    is_g_doubly_stochastic,
    is_g_row_stochastic,
    is_row_stochastic,
)
from .verification import SUITES, run_suite

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_NO = 3

VEC_CONVENTION = "column-stacking: vec(X)[j*n+i] = X[i][j]; T(X) = unvec(M vec(X)); AXB <-> M = kron(B^t, A)"


class UsageError(Exception):
    pass


def _emit(doc: dict) -> None:
    sys.stdout.write(dumps(doc))


def _vector_strings(v) -> list:
    return [str(x) for x in v]


# check ----------------------------------------------------------------------


def cmd_check(args) -> int:
    A = load_matrix(args.A)
    B = load_matrix(args.B)
    if A.shape != B.shape:
        raise UsageError(f"shape mismatch: {args.A} is {A.shape}, {args.B} is {B.shape}")
    start = time.perf_counter()
    verdict = majorizes(args.relation, A, B)
    elapsed = time.perf_counter() - start
    report = {"relation": args.relation, "holds": verdict.holds}
    if verdict.holds:
        report["witness"] = matrix_to_doc(verdict.witness)
        if args.witness:
            save_matrix(verdict.witness, args.witness)
    elif verdict.evidence is not None:
        row, cert = verdict.evidence
        report["row"] = row
        report["certificate"] = _vector_strings(cert.y)
    report["seconds"] = round(elapsed, 6)
    _emit(report)
    return EXIT_OK if verdict.holds else EXIT_NO


# verify-witness ---------------------------------------------------------------

_CLASS_CHECK = {"gw": is_g_row_stochastic, "matrix": is_row_stochastic, "gs": is_g_doubly_stochastic}


def recheck_witness(relation: str, A: RationalMatrix, B: RationalMatrix, W: RationalMatrix) -> bool:
    """Independent check of a positive verdict: class predicate and ``W A = B``."""
    return W.shape == (A.nrows, A.nrows) and _CLASS_CHECK[relation](W) and W @ A == B


def recheck_certificate(A: RationalMatrix, B: RationalMatrix, row: int, y) -> bool:
    """Independent check that row ``row`` of ``B`` is not a convex combination
    of rows of ``A``: ``[A | e] y >= 0`` and ``[b_row | 1] . y < 0``."""
    if not 0 <= row < B.nrows:
        return False
    M, target = row_system(A, B.row(row))
    if len(y) != M.ncols:
        return False
    return all(v >= 0 for v in M @ y) and dot(target, y) < 0


def cmd_verify_witness(args) -> int:
    A = load_matrix(args.A)
    B = load_matrix(args.B)
    if A.shape != B.shape:
        raise UsageError(f"shape mismatch: {args.A} is {A.shape}, {args.B} is {B.shape}")
    if args.witness:
        W = load_matrix(args.witness)
        ok = recheck_witness(args.relation, A, B, W)
        kind = "witness"
    else:
        report = read_json(args.report)
        if not isinstance(report, dict) or "holds" not in report:
            raise UsageError(f"{args.report}: not a check report")
        if report.get("relation", args.relation) != args.relation:
            raise UsageError(f"{args.report}: report is for relation {report.get('relation')!r}")
        if report["holds"]:
            ok = recheck_witness(args.relation, A, B, matrix_from_doc(report.get("witness"), "witness"))
            kind = "witness"
        elif "certificate" in report:
            y = tuple(parse_entry(x, f"certificate[{k}]") for k, x in enumerate(report["certificate"]))
            ok = recheck_certificate(A, B, int(report["row"]), y)
            kind = "certificate"
        else:
            raise UsageError(f"{args.report}: negative report carries no certificate")
    _emit({"relation": args.relation, "checked": kind, "valid": ok})
    return EXIT_OK if ok else EXIT_NO


# classify -------------------------------------------------------------------


def _load_operator(path: str, n: Optional[int], m: Optional[int]) -> pv.OperatorOnMatrices:
    doc = read_json(path)
    if isinstance(doc, dict) and "operator" in doc:
        n = n if n is not None else doc.get("n")
        m = m if m is not None else doc.get("m")
        M = matrix_from_doc(doc["operator"], f"{path}: operator")
    else:
        M = matrix_from_doc(doc, path)
    if n is None or m is None:
        raise UsageError("--n and --m are required for a bare operator matrix")
    if M.shape != (n * m, n * m):
        raise UsageError(f"operator is {M.shape[0]}x{M.shape[1]}, expected {n * m}x{n * m} for n={n}, m={m}")
    return pv.OperatorOnMatrices(n, m, M)


def classification_doc(c) -> dict:
    if isinstance(c, pv.StrongGwPreserver):
        return {"strong": True, "form": "AXB", "A": matrix_to_doc(c.A), "B": matrix_to_doc(c.B)}
    if isinstance(c, pv.StrongMatrixPreserver):
        return {"strong": True, "form": "PXL", "P": matrix_to_doc(c.P), "L": matrix_to_doc(c.L)}
    if isinstance(c, pv.VectorPreserver):
        return {"strong": False, "form": "alpha*R", "alpha": str(c.alpha), "R": matrix_to_doc(c.R), "kind": c.kind.value}
    return {"strong": False, "reason_code": c.reason.name, "reason": c.reason.value}


def cmd_classify(args) -> int:
    T = _load_operator(args.T, args.n, args.m)
    if args.relation == "gw":
        c = pv.is_strong_gw_preserver(T)
    else:
        if T.n != T.m:
            raise UsageError("matrix-majorization classification needs n == m")
        c = pv.is_strong_matrix_majorization_preserver(T)
    doc = {"relation": args.relation, "n": T.n, "m": T.m, "convention": VEC_CONVENTION}
    doc.update(classification_doc(c))
    _emit(doc)
    return EXIT_OK if c.is_strong else EXIT_NO


# synth / decompose / verify ---------------------------------------------------


def cmd_synth(args) -> int:
    T, A, B = pv.synth_strong_gw_preserver(args.n, args.m, random.Random(args.seed))
    doc = {
        "n": args.n,
        "m": args.m,
        "seed": args.seed,
        "convention": VEC_CONVENTION,
        "operator": matrix_to_doc(T.matrix),
        "A": matrix_to_doc(A),
        "B": matrix_to_doc(B),
    }
    if args.out:
        Path(args.out).write_text(dumps(doc))
    else:
        _emit(doc)
    return EXIT_OK


def cmd_decompose_grs(args) -> int:
    R = load_matrix(args.R)
    if not R.is_square or not is_g_row_stochastic(R):
        raise UsageError(f"{args.R}: matrix is not square g-row stochastic (rows must sum to 1)")
    combo = affine_decompose(R)
    _emit({
        "coefficients": [str(c) for c in combo.coefficients],
        "parts": [matrix_to_doc(S) for _, S in combo.terms],
    })
    return EXIT_OK


def cmd_verify(args) -> int:
    results = run_suite(args.suite, args.trials, args.max_n, args.max_m, args.seed)
    print(f"suite={args.suite} seed={args.seed} trials={args.trials} max_n={args.max_n} max_m={args.max_m}")
    for r in results:
        print(r.line())
    failed = [r for r in results if r.hard and not r.ok]
    print(f"{'OK' if not failed else 'FAILED'}: {len(results) - len(failed)}/{len(results)} hard properties hold")
    return EXIT_OK if not failed else EXIT_NO


# parser ---------------------------------------------------------------------


def _positive(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return value


def _bounded(text: str) -> int:
    value = _positive(text)
    if value > 6:
        raise argparse.ArgumentTypeError(f"size bound must be at most 6, got {text}")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="gwmajor", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", help="decide A > B for one relation")
    p.add_argument("A")
    p.add_argument("B")
    p.add_argument("--relation", choices=RELATIONS, default="gw")
    p.add_argument("--witness", metavar="PATH", help="write the witness matrix here when the relation holds")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("verify-witness", help="re-check a witness or certificate without the solvers")
    p.add_argument("A")
    p.add_argument("B")
    p.add_argument("--relation", choices=RELATIONS, default="gw")
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--witness", metavar="PATH")
    group.add_argument("--report", metavar="PATH", help="JSON report printed by `check`")
    p.set_defaults(func=cmd_verify_witness)

    p = sub.add_parser("classify", help="decide whether an operator is a strong preserver")
    p.add_argument("T", help="nm x nm operator matrix, or a `synth` document")
    p.add_argument("--n", type=_positive)
    p.add_argument("--m", type=_positive)
    p.add_argument("--relation", choices=("gw", "matrix"), default="gw")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("synth", help="draw a strong gw preserver X -> AXB")
    p.add_argument("--n", type=_bounded, required=True)
    p.add_argument("--m", type=_bounded, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", metavar="PATH")
    p.set_defaults(func=cmd_synth)

    p = sub.add_parser("decompose-grs", help="affine decomposition of a g-row stochastic matrix")
    p.add_argument("R")
    p.set_defaults(func=cmd_decompose_grs)

    p = sub.add_parser("verify", help="run randomized property suites")
    p.add_argument("--suite", choices=SUITES + ("all",), default="all")
    p.add_argument("--max-n", "--n", dest="max_n", type=_bounded, default=3)
    p.add_argument("--max-m", "--m", dest="max_m", type=_bounded, default=3)
    p.add_argument("--trials", type=_positive, default=50)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        return args.func(args)
    except (MatrixFileError, UsageError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
