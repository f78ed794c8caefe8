"""Products of generalized Vandermonde matrices at the unit-root base point.

A generalized Vandermonde matrix of type s has entries x_q^(s+p-1).  For a
type list (s_1, ..., s_n) the chain of pairs

    (transpose factor of type s_i) * (fixed unit-root factor of type s_i)

covers the generic n x n matrix provided the s_i are pairwise distinct
modulo n and their sum is nonzero.  The certificate is fully explicit: the
Jacobian at the unit-root base point is column-permuted block diagonal with
n blocks M_p whose entries are closed-form geometric sums, and each block's
determinant reduces to a scaled Vandermonde determinant times sum(s_i).
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass

import numpy as np

from .dominance import (
    DEFAULT_RANK_TOL,
    DominanceReport,
    numerical_rank,
)
from .errors import DegeneratePointError, ParameterRangeError


@dataclass(frozen=True)
class VandTypeList:
    """A size n together with the types (s_1, ..., s_n) of the factors.

    Validity has two independent parts: the types must be pairwise distinct
    modulo n (so the unit-root nodes w^{-s_j} are distinct) and their sum
    must be nonzero (so the block determinants do not vanish).
    """

    n: int
    s: tuple

    def __post_init__(self):
        if self.n < 1:
            raise ParameterRangeError(f"matrix size n={self.n} must be positive")
        if len(self.s) != self.n:
            raise ParameterRangeError(f"need exactly {self.n} types, got {len(self.s)}")

    @property
    def distinct_mod_n(self) -> bool:
        residues = {s % self.n for s in self.s}
        return len(residues) == self.n

    @property
    def nonzero_sum(self) -> bool:
        return sum(self.s) != 0

    @property
    def is_valid(self) -> bool:
        return self.distinct_mod_n and self.nonzero_sum


def type_list(n: int, s) -> VandTypeList:
    return VandTypeList(n=int(n), s=tuple(int(v) for v in s))


def vand(n: int, s: int, nodes) -> np.ndarray:
    """Generalized Vandermonde matrix: entry (p, q) is x_q^(s+p-1)."""
    nodes = np.asarray(nodes, dtype=complex).reshape(-1)
    if nodes.size != n:
        raise ParameterRangeError(f"need {n} nodes, got {nodes.size}")
    exps = s + np.arange(n)
    if np.any(exps < 0) and np.any(nodes == 0):
        raise DegeneratePointError("zero node with a negative exponent")
    return np.power(nodes[None, :], exps[:, None])


def unit_root(n: int) -> complex:
    """Primitive n-th root of unity exp(2 pi i / n)."""
    if n < 1:
        raise ParameterRangeError(f"n={n} must be positive")
    return cmath.exp(2j * cmath.pi / n)


def unit_root_factor(n: int, s_i: int) -> np.ndarray:
    """The fixed factor A_i with entries w^{-q(p-1+s_i)}, w = exp(2 pi i/n).

    Column q is the node w^{-q} raised to the powers s_i .. s_i+n-1, so the
    factor is itself a generalized Vandermonde matrix of type s_i."""
    w = unit_root(n)
    p = np.arange(1, n + 1)[:, None]
    q = np.arange(1, n + 1)[None, :]
    return w ** (-q * (p - 1 + s_i))


def unit_root_inverse_pair(n: int, s_i: int) -> np.ndarray:
    """The transposed-Vandermonde partner B_i with entries w^{p(q-1+s_i)};
    B_i @ unit_root_factor(n, s_i) equals n * I."""
    w = unit_root(n)
    p = np.arange(1, n + 1)[:, None]
    q = np.arange(1, n + 1)[None, :]
    return w ** (p * (q - 1 + s_i))


def mp_block(n: int, types: VandTypeList, p: int) -> np.ndarray:
    """The p-th Jacobian block M_p at the unit-root base point.

    Row q, column j holds the coefficient of the j-th factor's p-th node
    variable in the (p, q) output entry:

        q != p:  -(n w^{p-q} / (1 - w^{p-q})) * w^{(p-q) s_j - 2p + q}
        q == p:  (2 s_j + n - 1) n w^{-p} / 2

    These are the geometric sums sum_k (k + s_j - 1) w^{(p-q)k} carried out
    in closed form and multiplied by w^{p(s_j-2) - q(s_j-1)}."""
    if not 1 <= p <= n:
        raise ParameterRangeError(f"block index p={p} out of range 1..{n}")
    if types.n != n:
        raise ParameterRangeError("type list size does not match n")
    w = unit_root(n)
    M = np.zeros((n, n), dtype=complex)
    for q in range(1, n + 1):
        for j, sj in enumerate(types.s, start=1):
            if q == p:
                M[q - 1, j - 1] = (2 * sj + n - 1) * n * w ** (-p) / 2.0
            else:
                v = w ** (p - q)
                M[q - 1, j - 1] = -(n * v / (1.0 - v)) * w ** ((p - q) * sj - 2 * p + q)
    return M


def det_tilde(n: int, types: VandTypeList, p: int, alphas):
    """Determinant of the reduced block, directly and in closed form.

    The reduced block replaces row p of the node-power matrix
    (w^{-(a-1) s_j})_{a,j} with (alpha_j w^{-(p-1) s_j})_j.  Its determinant
    equals (V / n) * sum(alpha_j) where V is the Vandermonde determinant of
    the nodes w^{-s_j}, independently of p.  Returns (direct, formula).
    """
    if not 1 <= p <= n:
        raise ParameterRangeError(f"row index p={p} out of range 1..{n}")
    if types.n != n:
        raise ParameterRangeError("type list size does not match n")
    alphas = np.asarray(alphas, dtype=complex).reshape(-1)
    if alphas.size != n:
        raise ParameterRangeError(f"need {n} alphas, got {alphas.size}")
    w = unit_root(n)
    nodes = np.array([w ** (-sj) for sj in types.s])
    for a in range(n):
        for b in range(a + 1, n):
            if abs(nodes[a] - nodes[b]) <= 1e-12:
                raise DegeneratePointError("repeated nodes: types coincide modulo n")
    M = np.power(nodes[None, :], np.arange(n)[:, None])
    M[p - 1, :] = alphas * nodes ** (p - 1)
    direct = complex(np.linalg.det(M))
    V = complex(np.prod([nodes[b] - nodes[a] for a in range(n) for b in range(a + 1, n)]))
    formula = V / n * complex(np.sum(alphas))
    return direct, formula


def jacobian_blocks(types: VandTypeList):
    """All n blocks M_p, p = 1 .. n."""
    return [mp_block(types.n, types, p) for p in range(1, types.n + 1)]


def full_jacobian(types: VandTypeList) -> np.ndarray:
    """The n^2 x n^2 Jacobian at the unit-root base point.

    Row (p-1)n + (q-1) is the output entry (p, q); column (j-1)n + (p'-1)
    is the p'-th node variable of the j-th factor pair.  Output entry (p, q)
    depends only on the p-th node variables, so permuting columns to group
    by p turns the matrix into blockdiag(M_1, ..., M_n)."""
    n = types.n
    M = np.zeros((n * n, n * n), dtype=complex)
    for p in range(1, n + 1):
        Mp = mp_block(n, types, p)
        rows = slice((p - 1) * n, p * n)
        for j in range(1, n + 1):
            M[rows, (j - 1) * n + (p - 1)] = Mp[:, j - 1]
    return M


def vandermonde_dominance(n: int, s, rel_tol: float = DEFAULT_RANK_TOL) -> DominanceReport:
    """Rank of the explicit unit-root-point Jacobian for the type list s.

    Validity flags travel in the report rather than being raised, and the
    rank is whatever the Jacobian gives.  The two can disagree: repeated
    residues do collapse the rank, but the determinant of each block works
    out to (V/n) (sum s_j + n(n-1)/2), so the rank at this base point drops
    exactly when sum s_j = -n(n-1)/2.  A nonzero sum is therefore not what
    keeps the blocks nonsingular, and a type list flagged invalid for its
    zero sum can still certify dominance here."""
    types = type_list(n, s)
    J = full_jacobian(types)
    rank = numerical_rank(J, rel_tol)
    summary = {
        "n": n,
        "r": 2 * n,
        "families": [f"vandermonde-pair({si})" for si in types.s],
        "target": "full",
        "types_distinct_mod_n": types.distinct_mod_n,
        "types_nonzero_sum": types.nonzero_sum,
    }
    return DominanceReport(
        problem=summary,
        trials=1,
        ranks=[rank],
        d_estimate=rank,
        target_dim=n * n,
        dominant=rank == n * n,
        tolerance=rel_tol,
        seed=0,
    )
