"""Rank certificates for products of structured matrix families.

The product map rho_r sends a tuple (A_1, ..., A_r) of family members to
A_1 * ... * A_r.  Its differential at a base tuple is

    d rho_r (X_1, ..., X_r) = sum_i A_1 .. A_{i-1} X_i A_{i+1} .. A_r,

and the image of rho_r fills out a d-dimensional set where d is the rank of
that differential at a generic base point.  Everything here reduces to
assembling the Jacobian of rho_r against the families' tangent frames and
reading off numerical ranks: a full-rank Jacobian at a single point
certifies that generic matrices of the target space admit the decomposition.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import families as fam
from .errors import (
    DegeneratePointError,
    NonMemberError,
    ParameterRangeError,
)

TARGET_FULL = "full"
TARGET_DET = "det"
TARGET_CENTRO = "centro"

DEFAULT_RANK_TOL = 1e-8
DEFAULT_TRIALS = 5


@dataclass(frozen=True)
class TargetSpace:
    """The ambient space a product is measured against.

    full: all n x n matrices (dimension n^2)
    det: the determinant hypersurface (dimension n^2 - 1); used for chains
        that are structurally confined to singular matrices, such as an odd
        number of odd-size skew-symmetric factors
    centro: the centrosymmetric matrices (dimension ceil(n^2/2)), with
        coordinates the first ceil(n^2/2) row-major entries
    """

    tag: str
    n: int

    @property
    def dim(self) -> int:
        n = self.n
        if self.tag == TARGET_FULL:
            return n * n
        if self.tag == TARGET_DET:
            return n * n - 1
        if self.tag == TARGET_CENTRO:
            return (n * n + 1) // 2
        raise ParameterRangeError(f"unknown target tag {self.tag!r}")


def target_space(tag: str, n: int) -> TargetSpace:
    if tag not in (TARGET_FULL, TARGET_DET, TARGET_CENTRO):
        raise ParameterRangeError(f"unknown target tag {tag!r}")
    if n < 1:
        raise ParameterRangeError(f"matrix size n={n} must be positive")
    return TargetSpace(tag=tag, n=n)


@dataclass(frozen=True)
class DecompositionProblem:
    """r structured families whose product should cover a target space."""

    n: int
    factors: tuple
    target: TargetSpace

    def __post_init__(self):
        if len(self.factors) == 0:
            raise ParameterRangeError("a problem needs at least one factor family")
        for spec in self.factors:
            if spec.n != self.n:
                raise ParameterRangeError("all families must share the problem size n")
        if self.target.n != self.n:
            raise ParameterRangeError("target size must match the problem size")

    @property
    def r(self) -> int:
        return len(self.factors)

    @property
    def param_dim(self) -> int:
        return sum(spec.param_dim for spec in self.factors)

    def summary(self) -> dict:
        return {
            "n": self.n,
            "r": self.r,
            "families": [spec.kind.label() for spec in self.factors],
            "target": self.target.tag,
        }


def problem(kinds, n: int, target: str = TARGET_FULL) -> DecompositionProblem:
    """Convenience constructor: a chain of family kinds at size n."""
    specs = tuple(fam.family_spec(k, n) for k in kinds)
    return DecompositionProblem(n=n, factors=specs, target=target_space(target, n))


@dataclass
class DominanceReport:
    """Jacobian ranks over several random base points, merged by trial order."""

    problem: dict
    trials: int
    ranks: list
    d_estimate: int
    target_dim: int
    dominant: bool
    tolerance: float
    seed: int


# ---------------------------------------------------------------------------
# products and differentials

def chain_product(factors) -> np.ndarray:
    """Left-to-right product of a nonempty list of conformable matrices."""
    if len(factors) == 0:
        raise ParameterRangeError("empty factor chain")
    out = np.asarray(factors[0], dtype=complex)
    for A in factors[1:]:
        A = np.asarray(A, dtype=complex)
        if out.shape[1] != A.shape[0]:
            raise ParameterRangeError("factor shapes are not conformable")
        out = out @ A
    return out


def _prefixes_suffixes(base):
    """prefix[i] = A_1..A_i (prefix[0] = I), suffix[i] = A_{i+1}..A_r."""
    r = len(base)
    n = base[0].shape[0]
    eye = np.eye(n, dtype=complex)
    prefix = [eye]
    for A in base[:-1]:
        prefix.append(prefix[-1] @ A)
    suffix = [eye]
    for A in reversed(base[1:]):
        suffix.append(A @ suffix[-1])
    suffix.reverse()  # suffix[i] multiplies on the right of slot i+1
    return prefix, suffix


def differential_apply(base, tangents) -> np.ndarray:
    """Differential of the product map at base, applied to one tangent per
    slot.  Uses cached prefix and suffix products, so the whole evaluation
    costs 2r - 2 multiplications for the caches plus two per term."""
    if len(base) != len(tangents) or len(base) == 0:
        raise ParameterRangeError("base and tangent lists must be nonempty and equal length")
    base = [np.asarray(A, dtype=complex) for A in base]
    prefix, suffix = _prefixes_suffixes(base)
    n = base[0].shape[0]
    out = np.zeros((n, base[-1].shape[1]), dtype=complex)
    for i, X in enumerate(tangents):
        out += prefix[i] @ np.asarray(X, dtype=complex) @ suffix[i]
    return out


def _target_rows(target: TargetSpace, vec: np.ndarray) -> np.ndarray:
    """Project a row-major vectorized matrix onto the target coordinates."""
    if target.tag == TARGET_CENTRO:
        return vec[: target.dim]
    return vec


def jacobian(prob: DecompositionProblem, base_params) -> np.ndarray:
    """Jacobian of the product map against the stacked tangent frames.

    base_params is one parameter vector per factor.  Column j is the
    vectorized image under the differential of the j-th frame direction
    (frames stacked family by family); rows are the target coordinates.
    """
    if len(base_params) != prob.r:
        raise ParameterRangeError("need one parameter vector per factor")
    frames = [fam.tangent_basis(spec, p) for spec, p in zip(prob.factors, base_params)]
    base = [f.base_point for f in frames]
    prefix, suffix = _prefixes_suffixes(base)
    cols = []
    for i, frame in enumerate(frames):
        P, S = prefix[i], suffix[i]
        for X in frame.basis:
            cols.append(_target_rows(prob.target, (P @ X @ S).reshape(-1)))
    return np.stack(cols, axis=1)


def numerical_rank(M, rel_tol: float = DEFAULT_RANK_TOL) -> int:
    """Number of singular values above rel_tol times the largest."""
    M = np.asarray(M, dtype=complex)
    if M.size == 0:
        return 0
    sv = np.linalg.svd(M, compute_uv=False)
    if sv[0] == 0.0:
        return 0
    return int(np.count_nonzero(sv > rel_tol * sv[0]))


def estimate_image_dimension(
    prob: DecompositionProblem,
    trials: int = DEFAULT_TRIALS,
    rel_tol: float = DEFAULT_RANK_TOL,
    seed: int = 0,
) -> DominanceReport:
    """Jacobian rank of the product map at random base points.

    Each trial t draws its base parameters from seed + t (trials are
    independent and could run in parallel; results are merged in trial
    order).  The dimension estimate is the maximum rank seen, and the chain
    is reported dominant when it reaches the target dimension.
    """
    if trials < 1:
        raise ParameterRangeError("need at least one trial")
    ranks = []
    for t in range(trials):
        rng = np.random.default_rng(seed + t)
        for _ in range(100):
            params = [fam.sample_point(spec, rng)[0] for spec in prob.factors]
            try:
                J = jacobian(prob, params)
            except DegeneratePointError:
                continue
            break
        else:
            raise DegeneratePointError("all sampled base points were degenerate")
        ranks.append(numerical_rank(J, rel_tol))
    d_estimate = max(ranks)
    return DominanceReport(
        problem=prob.summary(),
        trials=trials,
        ranks=ranks,
        d_estimate=d_estimate,
        target_dim=prob.target.dim,
        dominant=d_estimate == prob.target.dim,
        tolerance=rel_tol,
        seed=seed,
    )


def two_factor_tangent_test(
    spec1: fam.FamilySpec,
    spec2: fam.FamilySpec,
    base,
    rel_tol: float = DEFAULT_RANK_TOL,
) -> bool:
    """Do the tangent spaces of two families at given base points jointly
    span the full matrix space?

    The test stacks both tangent frames as columns and checks for rank n^2.
    At base points (I, I) this is exactly the rank of the two-factor product
    map's differential, the classical certificate that generic matrices
    factor through the pair; at other common base points (such as the
    anti-identity) it is the tangent-sum criterion itself.  Base points must
    be members of their families.
    """
    if spec1.n != spec2.n:
        raise ParameterRangeError("families must share the matrix size")
    if len(base) != 2:
        raise ParameterRangeError("base must be a pair of matrices")
    n = spec1.n
    frames = []
    for spec, pt in zip((spec1, spec2), base):
        pt = np.asarray(pt, dtype=complex)
        if pt.shape != (n, n):
            raise ParameterRangeError("base points must be n x n matrices")
        if not fam.is_member(spec, pt, 1e-8):
            raise NonMemberError(f"base point is not in {spec.kind.label()}")
        frames.append(fam.tangent_basis(spec, pt))
    cols = [X.reshape(-1) for f in frames for X in f.basis]
    return numerical_rank(np.stack(cols, axis=1), rel_tol) == n * n


# ---------------------------------------------------------------------------
# counting bounds

def lower_bound_linear(dims, target_dim: int) -> bool:
    """Necessary condition: the family dimensions must sum to at least the
    target dimension for the product map to dominate."""
    if target_dim < 0:
        raise ParameterRangeError("target dimension must be nonnegative")
    return sum(dims) >= target_dim


def lower_bound_cone(m: int, target_dim: int) -> int:
    """Least r compatible with dominance for r cones of dimension m.

    Scaling one factor up and another down leaves the product fixed, so the
    fibers are at least (r-1)-dimensional and r m - (r - 1) >= target_dim is
    needed, i.e. r >= ceil((target_dim - 1) / (m - 1))."""
    if m <= 1:
        raise ParameterRangeError("cone dimension must be at least 2")
    if target_dim < 1:
        raise ParameterRangeError("target dimension must be positive")
    return max(1, math.ceil((target_dim - 1) / (m - 1)))


def surjectivity_bound(r: int) -> int:
    """If r factors from a linear family containing all diagonal matrices
    cover a dense subset, 4r + 1 factors cover everything."""
    if r < 1:
        raise ParameterRangeError("r must be positive")
    return 4 * r + 1


# ---------------------------------------------------------------------------
# reference table

# (n, r, d): image dimension of r-fold products of n x n skew-symmetric
# matrices.  For n = 2 every chain stays inside the scalar multiples of a
# single rank-2 matrix; odd n with odd r is capped by the determinant
# hypersurface; large even n reaches the full n^2.
SKEW_TABLE = (
    (2, 2, 1), (2, 3, 1), (2, 4, 1),
    (3, 3, 7), (3, 4, 8),
    (4, 3, 13), (4, 4, 15), (4, 5, 16),
    (5, 3, 24),
    (6, 3, 35), (6, 4, 36),
    (7, 3, 48),
    (8, 3, 64),
    (10, 3, 100),
)


def skew_dimension_row(n: int, r: int, trials: int = DEFAULT_TRIALS,
                       rel_tol: float = DEFAULT_RANK_TOL, seed: int = 0) -> int:
    """Computed image dimension for r-fold products of skew factors,
    measured in full matrix-space coordinates."""
    prob = problem([fam.SKEW_SYMMETRIC] * r, n, TARGET_FULL)
    return estimate_image_dimension(prob, trials=trials, rel_tol=rel_tol, seed=seed).d_estimate
