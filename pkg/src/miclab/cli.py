"""Command-line surface.

Four subcommands: gen constructs a MIC and writes its document, analyze
re-reads a document and runs invariant checks, spectra runs the randomized
Gram-spectra study, verify drives the theorem / conjecture / acceptance
suites.  `example` is shorthand for `gen example7`.

Exit codes are a stable contract: 0 success, 1 invariant failure,
2 usage or parse error, 3 construction or sampling failure.

Given --seed, every command's output is byte-identical across runs and
worker counts.
"""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction
from math import sqrt

import numpy as np
from numpy.random import SeedSequence, default_rng

from .analysis import (
    dual_indefiniteness,
    frobenius_orthogonality_gap,
    group_covariance_check,
    inv_gram_distance,
    orthogonal_pairs,
    phi_matrix,
    unbiased_equivalence_report,
)
from .config import ToleranceConfig, tolerances_from_env
from .constructions import (
    appleby_mic,
    eigenprojector_basis,
    equiangular_mic,
    example_seven_orthogonal,
    near_orthogonal_family,
    orthocross_mic,
    sic_mic,
    tensorhedron_mic,
)
from .ensembles import MicKind, plateau_metric, random_mic, spectra_study
from .errors import (
    BetaOutOfRange,
    BetaZero,
    BiasedMic,
    EnvelopeExceeded,
    EvenDimension,
    MicLabError,
    WrongDimension,
)
from .povm import Mic
from .serialize import (
    dumps,
    histogram_to_table,
    mic_from_document,
    mic_to_document,
    parse_fraction,
    read_document,
    write_document,
)

# parameter mistakes the caller can fix; everything else MicLabError is a
# genuine construction/sampling failure (exit 3)
USAGE_ERRORS = (BetaOutOfRange, BetaZero, EnvelopeExceeded, EvenDimension,
                WrongDimension)

GEN_KINDS = ("sic", "wh", "orthocross", "equiangular", "appleby",
             "tensorhedron", "example7", "near-orthogonal")

ANALYZE_CHECKS = ("unbiased-equivalence", "dual-indefiniteness", "ortho-pairs",
                  "frobenius-gap", "inv-gram-distance", "covariance", "phi")


def _fail(message: str) -> None:
    print(f"error: {message}", file=sys.stderr)


def _emit(doc: dict, out_path: str | None) -> None:
    if out_path:
        write_document(out_path, doc)
    else:
        print(dumps(doc))


# ---------------------------------------------------------------- gen

def _near_orthogonal_basis(d: int) -> list:
    """Zero-padded eigenprojectors with projector m placed at slot m*d.

    Slot m*d pairs P_m with the (m, 0) element of a WH-ordered MIC, so the
    d partners carry distinct shift indices.  Pairing all projectors with
    equal-shift effects (slots 0..d-1) collapses the operator span well
    before t reaches 0.99 for d >= 3; this placement keeps the family a
    MIC at least to t = 0.999 for d up to 5.
    """
    projs = eigenprojector_basis(np.diag(np.arange(d, dtype=float)))[:d]
    slots = [np.zeros((d, d), dtype=complex) for _ in range(d * d)]
    for m, p in enumerate(projs):
        slots[m * d] = p
    return slots


def cmd_gen(args, tol: ToleranceConfig) -> int:
    kind = args.kind
    d = args.d
    if kind.startswith("random:"):
        try:
            mic_kind = MicKind(kind.split(":", 1)[1])
        except ValueError:
            _fail(f"unknown random kind {kind!r}; "
                  f"valid: {', '.join('random:' + k.value for k in MicKind)}")
            return 2
        rng = default_rng(SeedSequence(args.seed))
        mic = random_mic(mic_kind, d, rng, tol)
    elif kind == "sic":
        mic = sic_mic(d, tol)
    elif kind == "wh":
        rng = default_rng(SeedSequence(args.seed))
        mic = random_mic(MicKind.WH_GENERIC, d, rng, tol)
    elif kind == "orthocross":
        mic = orthocross_mic(d, tol)
    elif kind == "equiangular":
        if args.beta is None:
            _fail("equiangular requires --beta")
            return 2
        mic = equiangular_mic(sic_mic(d, tol), args.beta, tol)
    elif kind == "appleby":
        mic = appleby_mic(d, tol)
    elif kind == "tensorhedron":
        mic = tensorhedron_mic(sic_mic(d, tol), args.n, tol)
    elif kind == "example7":
        mic = example_seven_orthogonal(tol)
    elif kind == "near-orthogonal":
        if args.t is None:
            _fail("near-orthogonal requires --t")
            return 2
        mic = near_orthogonal_family(_near_orthogonal_basis(d), sic_mic(d, tol),
                                     args.t, tol)
    else:
        _fail(f"unknown construction {kind!r}; "
              f"valid: {', '.join(GEN_KINDS)} or random:<kind>")
        return 2
    _emit(mic_to_document(mic), args.out)
    return 0


def cmd_example(args, tol: ToleranceConfig) -> int:
    _emit(mic_to_document(example_seven_orthogonal(tol)), args.out)
    return 0


# ------------------------------------------------------------- analyze

def _check_unbiased_equivalence(mic: Mic, tol):
    rep = unbiased_equivalence_report(mic, tol)
    entry = {
        "weights_uniform": rep.weights_uniform,
        "doubly_stochastic": rep.doubly_stochastic,
        "max_eigenvalue_pinned": rep.max_eigenvalue_pinned,
        "max_weight_deviation": rep.max_weight_deviation,
        "max_sum_deviation": rep.max_sum_deviation,
        "max_eigenvalue_gap": rep.max_eigenvalue_gap,
    }
    # the three predicates are provably equivalent; disagreement is failure
    return entry, rep.consistent


def _check_dual_indefiniteness(mic: Mic, tol):
    all_indefinite, ranges = dual_indefiniteness(mic, tol)
    entry = {
        "all_indefinite": all_indefinite,
        "min_eigenvalue": min(r[0] for r in ranges),
        "max_eigenvalue": max(r[1] for r in ranges),
    }
    return entry, all_indefinite


def _check_ortho_pairs(mic: Mic, tol):
    rep = orthogonal_pairs(mic.gram, tol.zero_tol)
    entry = {
        "count": rep.count,
        "pairs": [list(p) for p in rep.pairs],
        "min_offdiagonal": rep.min_offdiagonal,
    }
    # d = 2 rules out orthogonal pairs entirely; higher d only reports
    ok = rep.count == 0 if mic.dim == 2 else True
    return entry, ok


def _check_frobenius_gap(mic: Mic, tol):
    try:
        scores = frobenius_orthogonality_gap(mic, tol)
    except BiasedMic:
        return {"status": "not-applicable", "reason": "biased MIC"}, True
    gap, bound = scores.frobenius_gap, scores.bound
    entry = {
        "gap": gap,
        "bound": bound,
        "saturates_bound": bool(abs(gap - bound) <= 1e-9),
    }
    return entry, gap >= bound - 1e-9


def _check_inv_gram_distance(mic: Mic, tol):
    try:
        value = inv_gram_distance(mic, "frobenius", tol)
    except BiasedMic:
        return {"status": "not-applicable", "reason": "biased MIC"}, True
    d = mic.dim
    entry = {"distance": value, "sic_value": d * sqrt(d * d - 1.0)}
    return entry, True


def _check_covariance(mic: Mic, tol):
    return {"group_covariant": group_covariance_check(mic.gram)}, True


def _check_phi(mic: Mic, tol):
    # conditional states: the MIC's own effects, trace-normalized
    posts = [e.matrix / e.weight for e in mic.effects]
    rep = phi_matrix(mic, posts, tol)
    col_dev = float(np.abs(rep.matrix.sum(axis=0) - 1.0).max())
    min_entry = float(rep.matrix.min())
    entry = {
        "condition_number": rep.condition_number,
        "column_sum_deviation": col_dev,
        "min_entry": min_entry,
    }
    return entry, col_dev <= 1e-8 and min_entry < 0.0


_ANALYZE_DISPATCH = {
    "unbiased-equivalence": _check_unbiased_equivalence,
    "dual-indefiniteness": _check_dual_indefiniteness,
    "ortho-pairs": _check_ortho_pairs,
    "frobenius-gap": _check_frobenius_gap,
    "inv-gram-distance": _check_inv_gram_distance,
    "covariance": _check_covariance,
    "phi": _check_phi,
}


def cmd_analyze(args, tol: ToleranceConfig) -> int:
    if args.checks:
        requested = [c.strip() for c in args.checks.split(",") if c.strip()]
        unknown = [c for c in requested if c not in _ANALYZE_DISPATCH]
        if unknown:
            _fail(f"unknown checks {unknown}; valid: {', '.join(ANALYZE_CHECKS)}")
            return 2
    else:
        requested = list(ANALYZE_CHECKS)
    try:
        mic = mic_from_document(read_document(args.path), tol)
    except (OSError, ValueError, KeyError) as exc:
        _fail(f"cannot load MIC document: {exc}")
        return 2
    except MicLabError as exc:
        _fail(f"document does not describe a valid MIC: {exc}")
        return 2
    report: dict = {"dimension": mic.dim, "checks": {}}
    failures = []
    for name in requested:
        try:
            entry, ok = _ANALYZE_DISPATCH[name](mic, tol)
            entry.setdefault("status", "ok" if ok else "failed")
        except MicLabError as exc:
            entry, ok = {"status": "failed", "message": str(exc)}, False
        report["checks"][name] = entry
        if not ok:
            failures.append(name)
    report["failures"] = failures
    _emit(report, args.out)
    if failures:
        _fail(f"checks failed: {', '.join(failures)}")
        return 1
    return 0


# ------------------------------------------------------------- spectra

def cmd_spectra(args, tol: ToleranceConfig) -> int:
    kind = MicKind(args.kind)
    if not 2 <= args.d <= 8:
        _fail(f"--d must lie in [2, 8], got {args.d}")
        return 2
    if args.bin is not None:
        bin_width = parse_fraction(args.bin)
    else:
        bin_width = Fraction(1, 198) if args.d == 3 else Fraction(1, 200)
    hist = spectra_study(kind, args.d, args.n, bin_width, args.seed,
                         workers=args.workers)
    table = histogram_to_table(hist)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(table)
        summary_stream = sys.stdout
    else:
        sys.stdout.write(table)
        summary_stream = sys.stderr
    if args.d == 3:
        print(f"plateau_metric = {plateau_metric(hist)}", file=summary_stream)
    return 0


# -------------------------------------------------------------- verify

def cmd_verify(args, tol: ToleranceConfig) -> int:
    from .acceptance import run_conjectures, run_criteria, run_theorems

    if args.suite == "theorems":
        results = run_theorems(seed=args.seed)
        for name, ok, detail in results:
            print(f"{'ok  ' if ok else 'FAIL'} {name}: {detail}")
        return 0 if all(ok for _, ok, _ in results) else 1
    if args.suite == "conjectures":
        for report in run_conjectures(seed=args.seed):
            print(f"[{report['probe']}]")
            for key, value in report.items():
                if key != "probe":
                    print(f"  {key} = {value}")
        return 0
    results = run_criteria()
    for res in results:
        print(f"{'PASS' if res.passed else 'FAIL'} criterion {res.number:02d} "
              f"{res.title}: {res.detail}")
    return 0 if all(res.passed for res in results) else 1


# -------------------------------------------------------------- parser

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="miclab",
        description="Construct, validate, and analyze minimal "
                    "informationally complete quantum measurements.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_gen = sub.add_parser("gen", help="construct a MIC and write its document")
    p_gen.add_argument("kind",
                       help=f"one of {', '.join(GEN_KINDS)} or random:<kind>")
    p_gen.add_argument("--d", type=int, default=2, help="Hilbert space dimension")
    p_gen.add_argument("--n", type=int, default=2,
                       help="tensor power (tensorhedron only)")
    p_gen.add_argument("--seed", type=int, default=0,
                       help="RNG seed for randomized kinds")
    p_gen.add_argument("--beta", type=float, default=None,
                       help="equiangular mixing parameter")
    p_gen.add_argument("--t", type=float, default=None,
                       help="near-orthogonal interpolation parameter in (0, 1)")
    p_gen.add_argument("--out", default=None, help="output path (default stdout)")
    p_gen.set_defaults(func=cmd_gen)

    p_ex = sub.add_parser("example",
                          help="write the seven-orthogonal-pair example MIC")
    p_ex.add_argument("--out", default=None)
    p_ex.set_defaults(func=cmd_example)

    p_an = sub.add_parser("analyze", help="run invariant checks on a MIC document")
    p_an.add_argument("path", help="MIC document to analyze")
    p_an.add_argument("--checks", default=None,
                      help=f"comma-separated subset of {', '.join(ANALYZE_CHECKS)}")
    p_an.add_argument("--out", default=None, help="report path (default stdout)")
    p_an.set_defaults(func=cmd_analyze)

    p_sp = sub.add_parser("spectra", help="random Gram-spectra histogram study")
    p_sp.add_argument("kind", choices=[k.value for k in MicKind])
    p_sp.add_argument("--d", type=int, required=True)
    p_sp.add_argument("--n", type=int, default=1000, help="number of samples")
    p_sp.add_argument("--bin", default=None,
                      help="bin width as a fraction, e.g. 1/198 "
                           "(default 1/198 for d=3, else 1/200)")
    p_sp.add_argument("--seed", type=int, default=0)
    p_sp.add_argument("--workers", type=int, default=1,
                      help="parallel sampling processes (output-invariant)")
    p_sp.add_argument("--out", default=None, help="table path (default stdout)")
    p_sp.set_defaults(func=cmd_spectra)

    p_ve = sub.add_parser("verify", help="run an invariant suite")
    p_ve.add_argument("suite", choices=("theorems", "conjectures", "acceptance"))
    p_ve.add_argument("--seed", type=int, default=42)
    p_ve.set_defaults(func=cmd_verify)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse already printed its message; fold exits into the contract
        return 0 if exc.code == 0 else 2
    tol = tolerances_from_env()
    try:
        return args.func(args, tol)
    except USAGE_ERRORS as exc:
        _fail(str(exc))
        return 2
    except ValueError as exc:
        # bad fractions, malformed documents, out-of-range parameters
        _fail(str(exc))
        return 2
    except MicLabError as exc:
        _fail(str(exc))
        return 3
