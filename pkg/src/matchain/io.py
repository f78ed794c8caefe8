"""File formats for matrices, fitted chains, and dominance reports.

Matrices travel as JSON ({"n": ..., "entries": n x n array of [re, im]
pairs}) or as CSV with one row per line and entries like "1.5", "2i", or
"0.25-1.5i".  Chains and reports are JSON documents stamped with
schema_version "1".  All floats are written by Python's shortest
round-trip repr, so reading back what was written reproduces the exact
binary64 values.
"""

from __future__ import annotations

import json
import math
import re as _re

import numpy as np

from . import families as fam
from .dominance import (
    DecompositionProblem,
    DominanceReport,
    target_space,
)
from .errors import MatrixParseError, ParameterRangeError
from .solver import FactorChain

SCHEMA_VERSION = "1"

FORMAT_JSON = "json"
FORMAT_CSV = "csv"


def _read_text(source) -> str:
    if hasattr(source, "read"):
        return source.read()
    with open(source, "r", encoding="utf-8") as fh:
        return fh.read()


def _write_text(target, text: str):
    if hasattr(target, "write"):
        target.write(text)
        return
    with open(target, "w", encoding="utf-8") as fh:
        fh.write(text)


def _guess_format(source, fmt):
    if fmt is not None:
        f = fmt.lower()
        if f not in (FORMAT_JSON, FORMAT_CSV):
            raise ParameterRangeError(f"unknown matrix format {fmt!r}")
        return f
    name = getattr(source, "name", source if isinstance(source, str) else "")
    if isinstance(name, str) and name.lower().endswith(".csv"):
        return FORMAT_CSV
    return FORMAT_JSON


_TOKEN_RE = _re.compile(
    r"""^\s*(?P<body>
        [+-]?(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?(?:[+-](?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)?[iI]
        | [+-]?(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?
        | [+-]?[iI]
    )\s*$""",
    _re.VERBOSE,
)


def _parse_scalar(token: str, line: int, column: int) -> complex:
    m = _TOKEN_RE.match(token)
    if m is None:
        raise MatrixParseError(f"cannot parse entry {token.strip()!r}", line=line, column=column)
    body = m.group("body").replace("i", "j").replace("I", "j")
    try:
        z = complex(body)
    except ValueError:
        raise MatrixParseError(
            f"cannot parse entry {token.strip()!r}", line=line, column=column) from None
    if not (math.isfinite(z.real) and math.isfinite(z.imag)):
        raise MatrixParseError(f"non-finite entry {token.strip()!r}", line=line, column=column)
    return z


def _pair_to_complex(pair, line=None) -> complex:
    if (not isinstance(pair, (list, tuple)) or len(pair) != 2
            or not all(isinstance(x, (int, float)) and not isinstance(x, bool) for x in pair)):
        raise MatrixParseError(f"entry {pair!r} is not an [re, im] pair", line=line)
    z = complex(float(pair[0]), float(pair[1]))
    if not (math.isfinite(z.real) and math.isfinite(z.imag)):
        raise MatrixParseError(f"non-finite entry {pair!r}", line=line)
    return z


def _matrix_from_pairs(n, entries) -> np.ndarray:
    if not isinstance(n, int) or isinstance(n, bool) or n < 1:
        raise MatrixParseError(f"matrix size {n!r} is not a positive integer")
    if not isinstance(entries, list) or len(entries) != n:
        raise MatrixParseError(f"expected {n} rows, found {len(entries) if isinstance(entries, list) else type(entries).__name__}")
    M = np.empty((n, n), dtype=complex)
    for i, row in enumerate(entries):
        if not isinstance(row, list) or len(row) != n:
            raise MatrixParseError(f"row {i + 1} does not have {n} entries", line=i + 1)
        for j, pair in enumerate(row):
            M[i, j] = _pair_to_complex(pair, line=i + 1)
    return M


def read_matrix(source, format: str | None = None) -> np.ndarray:
    """Read a square complex matrix from a path or open stream.

    format is "json" or "csv"; when omitted it is guessed from the file
    name (csv only for a .csv suffix).  CSV rows are lines, entries are
    comma-separated, and each entry is a real or an a+bi token.
    """
    fmt = _guess_format(source, format)
    text = _read_text(source)
    if fmt == FORMAT_JSON:
        try:
            doc = json.loads(text)
        except json.JSONDecodeError as exc:
            raise MatrixParseError(
                f"invalid JSON: {exc.msg}", line=exc.lineno, column=exc.colno) from None
        if not isinstance(doc, dict) or "entries" not in doc:
            raise MatrixParseError("matrix JSON must be an object with an 'entries' field")
        n = doc.get("n", len(doc["entries"]) if isinstance(doc["entries"], list) else 0)
        return _matrix_from_pairs(n, doc["entries"])
    rows = []
    lines = [ln for ln in text.splitlines()]
    for lineno, ln in enumerate(lines, start=1):
        if not ln.strip():
            continue
        row = []
        for col, token in enumerate(ln.split(","), start=1):
            row.append(_parse_scalar(token, lineno, col))
        rows.append((lineno, row))
    if not rows:
        raise MatrixParseError("no matrix rows found")
    n = len(rows)
    for lineno, row in rows:
        if len(row) != n:
            raise MatrixParseError(
                f"row has {len(row)} entries but the matrix has {n} rows", line=lineno)
    return np.array([row for _, row in rows], dtype=complex)


def _complex_pairs(M) -> list:
    M = np.asarray(M, dtype=complex)
    return [[[float(z.real), float(z.imag)] for z in row] for row in M]


def matrix_to_dict(M) -> dict:
    M = np.asarray(M, dtype=complex)
    if M.ndim != 2 or M.shape[0] != M.shape[1]:
        raise ParameterRangeError("only square matrices are serialized")
    return {"n": int(M.shape[0]), "entries": _complex_pairs(M)}


def write_matrix(M, target, format: str | None = None):
    """Write a matrix as JSON (default) or CSV to a path or stream."""
    fmt = _guess_format(target, format)
    M = np.asarray(M, dtype=complex)
    if fmt == FORMAT_JSON:
        _write_text(target, json.dumps(matrix_to_dict(M), indent=2) + "\n")
        return
    lines = []
    for row in M:
        toks = []
        for z in row:
            re_, im_ = float(z.real), float(z.imag)
            if im_ == 0.0:
                toks.append(repr(re_))
            elif re_ == 0.0:
                toks.append(f"{im_!r}i")
            else:
                toks.append(f"{re_!r}{'+' if im_ >= 0 else '-'}{abs(im_)!r}i")
        lines.append(",".join(toks))
    _write_text(target, "\n".join(lines) + "\n")


# ---------------------------------------------------------------------------
# family kinds

def kind_to_dict(kind: fam.FamilyKind) -> dict:
    out = {"tag": kind.tag}
    if kind.k is not None:
        out["k"] = int(kind.k)
    if kind.s is not None:
        out["s"] = int(kind.s)
    if kind.basis is not None:
        out["basis"] = [_complex_pairs(B) for B in kind.basis]
    return out


def kind_from_dict(doc: dict) -> fam.FamilyKind:
    if not isinstance(doc, dict) or "tag" not in doc:
        raise MatrixParseError("family kind must be an object with a 'tag' field")
    tag = doc["tag"]
    if "basis" in doc:
        mats = []
        for B in doc["basis"]:
            n = len(B)
            mats.append(_matrix_from_pairs(n, B))
        basis = np.stack(mats)
        return fam.FamilyKind(tag=tag, k=basis.shape[0], basis=basis)
    if tag not in fam.ALL_TAGS:
        raise MatrixParseError(f"unknown family tag {tag!r}")
    k = int(doc["k"]) if "k" in doc else None
    s = int(doc["s"]) if "s" in doc else None
    return fam.FamilyKind(tag=tag, k=k, s=s)


def _problem_to_dict(prob: DecompositionProblem) -> dict:
    return {
        "n": prob.n,
        "r": prob.r,
        "target": prob.target.tag,
        "factors": [kind_to_dict(spec.kind) for spec in prob.factors],
    }


def _problem_from_dict(doc: dict) -> DecompositionProblem:
    n = doc["n"]
    kinds = [kind_from_dict(d) for d in doc["factors"]]
    return DecompositionProblem(
        n=n,
        factors=tuple(fam.family_spec(kind, n) for kind in kinds),
        target=target_space(doc["target"], n),
    )


# ---------------------------------------------------------------------------
# chains

def chain_to_dict(chain: FactorChain) -> dict:
    if len(chain.factors) == 0:
        raise ParameterRangeError("refusing to serialize an empty factor chain")
    return {
        "schema_version": SCHEMA_VERSION,
        "problem": _problem_to_dict(chain.problem),
        "params": [[[float(z.real), float(z.imag)] for z in u] for u in chain.params],
        "factors": [_complex_pairs(A) for A in chain.factors],
        "residual": float(chain.residual),
        "iterations": int(chain.iterations),
        "converged": bool(chain.converged),
        "target": _complex_pairs(chain.target),
    }


def write_chain(chain: FactorChain, target):
    """Serialize a fitted chain as JSON.  Numbers keep full binary64
    precision, so a read-back compares equal to the original."""
    _write_text(target, json.dumps(chain_to_dict(chain), indent=2) + "\n")


def chain_from_dict(doc: dict) -> FactorChain:
    if doc.get("schema_version") != SCHEMA_VERSION:
        raise MatrixParseError(
            f"unsupported schema_version {doc.get('schema_version')!r}")
    prob = _problem_from_dict(doc["problem"])
    n = prob.n
    if len(doc["factors"]) == 0:
        raise MatrixParseError("chain has no factors")
    params = [np.array([_pair_to_complex(p) for p in u], dtype=complex)
              for u in doc["params"]]
    factors = [_matrix_from_pairs(n, F) for F in doc["factors"]]
    return FactorChain(
        problem=prob,
        params=params,
        factors=factors,
        residual=float(doc["residual"]),
        iterations=int(doc["iterations"]),
        converged=bool(doc["converged"]),
        target=_matrix_from_pairs(n, doc["target"]),
    )


def read_chain(source) -> FactorChain:
    try:
        doc = json.loads(_read_text(source))
    except json.JSONDecodeError as exc:
        raise MatrixParseError(
            f"invalid JSON: {exc.msg}", line=exc.lineno, column=exc.colno) from None
    return chain_from_dict(doc)


# ---------------------------------------------------------------------------
# dominance reports

def report_to_dict(report: DominanceReport) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "problem": dict(report.problem),
        "trials": int(report.trials),
        "ranks": [int(v) for v in report.ranks],
        "d_estimate": int(report.d_estimate),
        "target_dim": int(report.target_dim),
        "dominant": bool(report.dominant),
        "tolerance": float(report.tolerance),
        "seed": int(report.seed),
    }


def write_report(report: DominanceReport, target):
    _write_text(target, json.dumps(report_to_dict(report), indent=2) + "\n")


def report_from_dict(doc: dict) -> DominanceReport:
    if doc.get("schema_version") != SCHEMA_VERSION:
        raise MatrixParseError(
            f"unsupported schema_version {doc.get('schema_version')!r}")
    return DominanceReport(
        problem=dict(doc["problem"]),
        trials=int(doc["trials"]),
        ranks=[int(v) for v in doc["ranks"]],
        d_estimate=int(doc["d_estimate"]),
        target_dim=int(doc["target_dim"]),
        dominant=bool(doc["dominant"]),
        tolerance=float(doc["tolerance"]),
        seed=int(doc["seed"]),
    )


def read_report(source) -> DominanceReport:
    try:
        doc = json.loads(_read_text(source))
    except json.JSONDecodeError as exc:
        raise MatrixParseError(
            f"invalid JSON: {exc.msg}", line=exc.lineno, column=exc.colno) from None
    return report_from_dict(doc)
