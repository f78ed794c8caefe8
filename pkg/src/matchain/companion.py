"""Exact decomposition of a matrix into a product of companion matrices.

A companion matrix here has ones on the subdiagonal, zeros elsewhere, and a
free last column.  A = C_1 * ... * C_n is solved column by column: the q-th
column of A yields n linear equations for the n coefficients of C_q, of which
the first q-1 form a square subsystem (the leading (q-1) x (q-1) block of A
with its columns reversed) and the rest are direct read-offs.  The whole
procedure is rational in the entries of A and needs no iteration.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ParameterRangeError

STATUS_UNIQUE = "unique"
STATUS_NO_SOLUTION = "no-solution"
STATUS_NON_UNIQUE = "non-unique"

DEFAULT_PIVOT_TOL = 1e-10


def companion_matrix(c) -> np.ndarray:
    """Build the n x n companion matrix with last column c.

    Entry (p+1, p) is 1 for p = 1 .. n-1, column n equals c, and every other
    entry is zero.  For n = 1 the matrix is just [[c_1]].
    """
    c = np.asarray(c, dtype=complex)
    if c.ndim != 1 or c.size == 0:
        raise ParameterRangeError("companion coefficients must be a nonempty vector")
    n = c.size
    C = np.zeros((n, n), dtype=complex)
    for p in range(n - 1):
        C[p + 1, p] = 1.0
    C[:, n - 1] = c
    return C


@dataclass
class CompanionCoefficients:
    """Last columns c_1 .. c_n of the companion factors C_1 .. C_n."""

    n: int
    columns: list  # list of n complex vectors, each of length n

    def matrices(self) -> list:
        return [companion_matrix(c) for c in self.columns]


@dataclass
class CompanionResult:
    """Outcome of decompose_companion.

    status is one of "unique", "no-solution", "non-unique".  coefficients is
    set only for "unique"; failed_column records the 1-based column q at
    which a singular subsystem stopped the solve.
    """

    status: str
    coefficients: CompanionCoefficients | None = None
    failed_column: int | None = None


def decompose_companion(A, pivot_tol: float = DEFAULT_PIVOT_TOL) -> CompanionResult:
    """Solve A = C_1 * ... * C_n for companion matrices C_q.

    For each q the unknowns are the n entries of C_q's last column.  Rows
    p < q of column q of A give a (q-1) x (q-1) linear system whose matrix is
    the leading (q-1) block of A with reversed column order; its solution
    fixes the q-1 trailing coefficients, after which rows p >= q are direct
    read-offs.  The decomposition is unique exactly when every leading
    principal block of order 1 .. n-1 is nonsingular.

    A subsystem counts as singular when its smallest singular value is at
    most pivot_tol times its largest (the 0 x 0 system is vacuously
    nonsingular).  A singular but consistent subsystem yields "non-unique",
    an inconsistent one "no-solution"; both report the failing column.
    """
    A = np.asarray(A, dtype=complex)
    if A.ndim != 2 or A.shape[0] != A.shape[1] or A.shape[0] == 0:
        raise ParameterRangeError("input must be a square matrix")
    if not np.all(np.isfinite(A.view(float))):
        raise ParameterRangeError("input matrix must have finite entries")
    n = A.shape[0]

    columns = []
    for q0 in range(n):  # q0 = q - 1
        m = q0  # size of the square subsystem
        rhs = A[:m, q0]
        M = A[:m, :m][:, ::-1]
        if m == 0:
            h = np.zeros(0, dtype=complex)
        else:
            sv = np.linalg.svd(M, compute_uv=False)
            if not sv[-1] > pivot_tol * sv[0]:
                # Singular subsystem: consistency decides the failure mode.
                h, *_ = np.linalg.lstsq(M, rhs, rcond=None)
                residual = np.linalg.norm(M @ h - rhs)
                status = STATUS_NON_UNIQUE if residual <= pivot_tol * (1.0 + np.linalg.norm(rhs)) else STATUS_NO_SOLUTION
                return CompanionResult(status=status, failed_column=q0 + 1)
            h = np.linalg.solve(M, rhs)
        c = np.zeros(n, dtype=complex)
        if m > 0:
            # h_j = c_{q, n-j+1} for j = 1 .. q-1
            c[n - m:] = h[::-1]
        # rows p >= q read off c_{q, p-q+1}
        c[: n - q0] = A[q0:, q0] - A[q0:, :m][:, ::-1] @ h
        columns.append(c)

    return CompanionResult(
        status=STATUS_UNIQUE,
        coefficients=CompanionCoefficients(n=n, columns=columns),
    )


def reconstruct_prefix(coeffs: CompanionCoefficients, k: int) -> np.ndarray:
    """Partial product C_1 * ... * C_k, built by recurrence instead of
    multiplication.

    Columns q < n-k+1 carry the shift pattern (entry 1 where p - q = k),
    and columns q >= n-k+1 satisfy

        X_{p,q} = sum_{j=1}^{q+k-n-1} X_{p,q-j} c_{q+k-n, n-j+1}
                  + c_{q+k-n, n+1+p-q-k}

    with coefficients of nonpositive index read as zero.  For k = n this is
    exactly the equation system the decomposition solves, so the recurrence
    doubles as an independent check on the factorization.
    """
    n = coeffs.n
    if not 1 <= k <= n:
        raise ParameterRangeError(f"prefix length k={k} out of range 1..{n}")
    X = np.zeros((n, n), dtype=complex)
    # base pattern: 1 where p - q = k (1-based), for q < n-k+1
    for q0 in range(n - k):
        X[q0 + k, q0] = 1.0
    for q0 in range(n - k, n):
        ci = np.asarray(coeffs.columns[q0 + k - n], dtype=complex)
        jmax = q0 + k - n  # q + k - n - 1 in 1-based terms
        col = np.zeros(n, dtype=complex)
        if jmax > 0:
            # sum_j X[:, q-j] c_{i, n-j+1}, j = 1 .. jmax
            col += X[:, q0 - jmax:q0] @ ci[n - jmax:n]
        offset = q0 + k - n  # direct term exists for p0 >= offset
        col[offset:] += ci[: n - offset]
        X[:, q0] = col
    return X
