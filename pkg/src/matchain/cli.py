"""Command-line front end.

Subcommands: verify (dominance report for a factor chain), table (the
skew-symmetric image-dimension table with computed ranks), decompose (fit
a chain to a matrix file), companion (structured coefficient solve),
bounds (dimension-count arithmetic for one family), sample (draw a random
family member).  JSON goes to stdout, diagnostics to stderr.

Exit codes: 0 success, 1 usage error, 2 I/O or parse error, 3 dominance
not observed, 4 fit did not converge, 5 companion solve not unique.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import families as fam
from .companion import STATUS_UNIQUE, decompose_companion
from .dominance import (
    DEFAULT_RANK_TOL,
    DEFAULT_TRIALS,
    SKEW_TABLE,
    TARGET_CENTRO,
    TARGET_DET,
    TARGET_FULL,
    estimate_image_dimension,
    lower_bound_cone,
    problem,
    skew_dimension_row,
    surjectivity_bound,
    target_space,
)
from .errors import MatChainError, MatrixParseError, ParameterRangeError
from .io import matrix_to_dict, read_matrix, report_to_dict, chain_to_dict
from .solver import FitOptions, fit_chain

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_IO = 2
EXIT_NOT_DOMINANT = 3
EXIT_NOT_CONVERGED = 4
EXIT_NOT_UNIQUE = 5

_ALIASES = {
    "skew": fam.SKEW_SYMMETRIC,
    "upper": fam.TRIANGULAR_UPPER,
    "lower": fam.TRIANGULAR_LOWER,
    "top": fam.ANTI_TRIANGULAR_TOP,
    "bottom": fam.ANTI_TRIANGULAR_BOTTOM,
}


class _Parser(argparse.ArgumentParser):
    """argparse flavor whose usage failures exit with code 1."""

    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def _parse_family(text: str, n: int, seed: int = 0) -> fam.FamilyKind:
    """One family token: a tag, an alias, or tag:arg for parameterized
    families (k-diagonal bandwidths, vandermonde types, subspace size)."""
    token = text.strip().lower()
    base, _, arg = token.partition(":")
    base = _ALIASES.get(base, base)
    try:
        if base in (fam.K_DIAGONAL, fam.K_DIAGONAL_UPPER, fam.K_DIAGONAL_LOWER):
            if not arg:
                raise ParameterRangeError(f"family {base!r} needs a bandwidth, e.g. {base}:2")
            return fam.FamilyKind(base, k=int(arg))
        if base in (fam.VANDERMONDE, fam.VANDERMONDE_T):
            return fam.FamilyKind(base, s=int(arg) if arg else 0)
        if base == fam.SUBSPACE:
            if not arg:
                raise ParameterRangeError("family 'subspace' needs a dimension, e.g. subspace:7")
            return fam.random_subspace(n, int(arg), rng_seed=seed)
        if arg:
            raise ParameterRangeError(f"family {base!r} takes no argument")
        return fam.kind_from_tag(base)
    except ValueError as exc:
        if isinstance(exc, MatChainError):
            raise
        raise ParameterRangeError(f"bad family token {text!r}: {exc}") from None


def _emit(doc: dict):
    print(json.dumps(doc, indent=2))


# ---------------------------------------------------------------------------
# subcommands

def _cmd_verify(args) -> int:
    kind = _parse_family(args.family, args.n, seed=args.seed)
    prob = problem([kind] * args.r, args.n, args.target)
    report = estimate_image_dimension(
        prob, trials=args.trials, rel_tol=args.tol, seed=args.seed)
    _emit(report_to_dict(report))
    return EXIT_OK if report.dominant else EXIT_NOT_DOMINANT


def _cmd_table(args) -> int:
    rows = []
    all_match = True
    for n, r, expected in SKEW_TABLE:
        computed = skew_dimension_row(n, r, trials=args.trials,
                                      rel_tol=args.tol, seed=args.seed)
        match = computed == expected
        all_match = all_match and match
        rows.append((n, r, expected, computed, match))
    print(f"{'n':>3} {'r':>3} {'expected':>9} {'computed':>9}  match")
    for n, r, expected, computed, match in rows:
        print(f"{n:>3} {r:>3} {expected:>9} {computed:>9}  {'yes' if match else 'NO'}")
    good = sum(1 for row in rows if row[4])
    print(f"{good}/{len(rows)} rows match")
    return EXIT_OK if all_match else EXIT_NOT_DOMINANT


def _read_options(path) -> FitOptions:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            doc = json.load(fh)
    except json.JSONDecodeError as exc:
        raise MatrixParseError(f"invalid JSON: {exc.msg}", line=exc.lineno,
                               column=exc.colno) from None
    if not isinstance(doc, dict):
        raise MatrixParseError("options file must hold a JSON object")
    allowed = {"max_iterations", "residual_tol", "damping_init", "restarts", "seed"}
    unknown = set(doc) - allowed
    if unknown:
        raise MatrixParseError(f"unknown option fields: {sorted(unknown)}")
    return FitOptions(**doc)


def _cmd_decompose(args) -> int:
    T = read_matrix(args.infile)
    n = T.shape[0]
    kinds = [_parse_family(tok, n, seed=args.seed) for tok in args.chain.split(",") if tok.strip()]
    if not kinds:
        raise ParameterRangeError("--chain must list at least one family")
    opts = _read_options(args.opts) if args.opts else FitOptions(seed=args.seed)
    prob = problem(kinds, n, args.target)
    chain = fit_chain(T, prob, opts)
    _emit(chain_to_dict(chain))
    if not chain.converged:
        print(f"did not converge: residual {chain.residual:.3e}", file=sys.stderr)
        return EXIT_NOT_CONVERGED
    return EXIT_OK


def _cmd_companion(args) -> int:
    A = read_matrix(args.infile)
    result = decompose_companion(A, pivot_tol=args.tol)
    doc = {
        "schema_version": "1",
        "n": int(A.shape[0]),
        "status": result.status,
        "failed_column": result.failed_column,
        "coefficients": None,
    }
    if result.coefficients is not None:
        doc["coefficients"] = [
            [[float(z.real), float(z.imag)] for z in col]
            for col in result.coefficients.columns
        ]
    _emit(doc)
    return EXIT_OK if result.status == STATUS_UNIQUE else EXIT_NOT_UNIQUE


def _bounds_doc(kind: fam.FamilyKind, n: int) -> dict:
    spec = fam.family_spec(kind, n)
    m = spec.param_dim
    tag = kind.tag
    if tag == fam.SYMMETRIC_TOEPLITZ or tag == fam.PERSYMMETRIC_HANKEL:
        tgt = target_space(TARGET_CENTRO, n)
    elif tag == fam.SKEW_SYMMETRIC and n % 2 == 1:
        tgt = target_space(TARGET_DET, n)
    else:
        tgt = target_space(TARGET_FULL, n)
    is_cone = tag in fam._LINEAR_TAGS
    if is_cone and m >= 2:
        lower = lower_bound_cone(m, tgt.dim)
        rule = f"ceil(({tgt.dim} - 1) / ({m} - 1))"
    else:
        lower = -(-tgt.dim // m)
        rule = f"ceil({tgt.dim} / {m})"
    known_generic = {
        fam.BIDIAGONAL: 2 * n,
        fam.SKEW_SYMMETRIC: 3 if (n >= 8 and n % 2 == 0) else None,
        fam.SYMMETRIC_TOEPLITZ: (n + 1) // 2,
        fam.PERSYMMETRIC_HANKEL: (n + 1) // 2,
        fam.COMPANION: n,
        fam.VANDERMONDE: 2 * n,
        fam.VANDERMONDE_T: 2 * n,
    }.get(tag)
    doc = {
        "family": kind.label(),
        "n": n,
        "family_dim": m,
        "target": {"tag": tgt.tag, "dim": tgt.dim},
        "cone": bool(is_cone),
        "lower_bound": int(lower),
        "lower_bound_rule": rule,
    }
    doc["generic_r"] = known_generic
    doc["surjective_r"] = surjectivity_bound(known_generic) if known_generic else None
    return doc


def _cmd_bounds(args) -> int:
    kind = _parse_family(args.family, args.n, seed=0)
    _emit(_bounds_doc(kind, args.n))
    return EXIT_OK


def _cmd_sample(args) -> int:
    kind = _parse_family(args.family, args.n, seed=args.seed)
    spec = fam.family_spec(kind, args.n)
    _params, M = fam.sample_point(spec, rng_seed=args.seed)
    _emit(matrix_to_dict(M))
    return EXIT_OK


# ---------------------------------------------------------------------------

def _build_parser() -> _Parser:
    parser = _Parser(prog="matchain",
                     description="structured matrix chain decompositions")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify", parents=[], help="estimate the image dimension of a chain")
    p.add_argument("--family", required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--trials", type=int, default=DEFAULT_TRIALS)
    p.add_argument("--tol", type=float, default=DEFAULT_RANK_TOL)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--target", choices=[TARGET_FULL, TARGET_DET, TARGET_CENTRO],
                   default=TARGET_FULL)
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("table", help="skew-symmetric image dimensions against known values")
    p.add_argument("--trials", type=int, default=DEFAULT_TRIALS)
    p.add_argument("--tol", type=float, default=DEFAULT_RANK_TOL)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=_cmd_table)

    p = sub.add_parser("decompose", help="fit a factor chain to a matrix file")
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--chain", required=True, help="comma-separated family tokens")
    p.add_argument("--opts", default=None, help="JSON file with fit options")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--target", choices=[TARGET_FULL, TARGET_DET, TARGET_CENTRO],
                   default=TARGET_FULL)
    p.set_defaults(func=_cmd_decompose)

    p = sub.add_parser("companion", help="solve for companion factors column by column")
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--tol", type=float, default=1e-10)
    p.set_defaults(func=_cmd_companion)

    p = sub.add_parser("bounds", help="dimension-count arithmetic for one family")
    p.add_argument("--family", required=True)
    p.add_argument("--n", type=int, required=True)
    p.set_defaults(func=_cmd_bounds)

    p = sub.add_parser("sample", help="draw a random member of a family")
    p.add_argument("--family", required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=_cmd_sample)

    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (MatrixParseError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    except MatChainError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
