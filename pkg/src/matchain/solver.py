"""Numerical decomposition of a concrete matrix into structured factors.

fit_chain runs a Levenberg-damped Gauss-Newton iteration on the stacked
factor parameters, minimizing || A_1(u_1) .. A_r(u_r) - T ||_F.  The
residual is holomorphic in the parameters, so the normal equations use the
plain complex Jacobian with conjugate transposes.  Restarts draw fresh
initial chains from per-restart seeds and the best residual wins.

decompose_bidiagonal splits a generic matrix into lower times upper
triangular by elimination without pivoting, then fits each triangle with n
bidiagonal factors.  decompose_centrosymmetric fits a chain of symmetric
Toeplitz factors (optionally twisted into persymmetric Hankel form by the
anti-identity, whose parity rule decides whether the twisted chain
multiplies to the target or to its row-reversal).
"""

from __future__ import annotations

from dataclasses import dataclass, replace

import numpy as np

from . import families as fam
from .dominance import (
    DecompositionProblem,
    TARGET_CENTRO,
    TARGET_FULL,
    chain_product,
    jacobian,
    lower_bound_linear,
    target_space,
)
from .errors import (
    DegeneratePointError,
    InfeasibleProblemError,
    NonGenericMatrixError,
    NonMemberError,
    ParameterRangeError,
)

DAMPING_FLOOR = 1e-12
DAMPING_CEIL = 1e12
LU_PIVOT_TOL = 1e-10


@dataclass(frozen=True)
class FitOptions:
    max_iterations: int = 200
    residual_tol: float = 1e-8
    damping_init: float = 1e-3
    restarts: int = 8
    seed: int = 0

    def __post_init__(self):
        if self.max_iterations < 1 or self.restarts < 1:
            raise ParameterRangeError("iteration and restart counts must be positive")
        if not 0 < self.residual_tol < 1:
            raise ParameterRangeError("residual tolerance must lie in (0, 1)")
        if self.damping_init <= 0:
            raise ParameterRangeError("initial damping must be positive")


@dataclass
class FactorChain:
    """A fitted chain: parameters, factor matrices, and the fit certificate.

    residual is relative: ||product - target||_F / max(1, ||target||_F),
    recomputable from factors and target alone.  converged means the
    residual met the requested tolerance.
    """

    problem: DecompositionProblem
    params: list
    factors: list
    residual: float
    iterations: int
    converged: bool
    target: np.ndarray

    def product(self) -> np.ndarray:
        return chain_product(self.factors)


def _as_target(T, n=None) -> np.ndarray:
    T = np.asarray(T, dtype=complex)
    if T.ndim != 2 or T.shape[0] != T.shape[1]:
        raise ParameterRangeError("target must be a square matrix")
    if n is not None and T.shape[0] != n:
        raise ParameterRangeError("target size does not match the problem")
    if not np.all(np.isfinite(T.view(float))):
        raise ParameterRangeError("target must have finite entries")
    return T


def _initial_params(prob: DecompositionProblem, T: np.ndarray, rng: np.random.Generator):
    """One starting chain.  Family-aware centers, then a common rescale so
    every factor's norm is about ||T||_F^(1/r)."""
    n, r = prob.n, prob.r
    goal = max(float(np.linalg.norm(T)), 1e-2) ** (1.0 / r)
    out = []
    for i, spec in enumerate(prob.factors, start=1):
        tag = spec.kind.tag
        d = spec.param_dim
        g = fam.complex_gaussian(rng, d)
        if tag == fam.SYMMETRIC_TOEPLITZ and n >= 2:
            # identity plus one excited mode, the classic full-rank points
            u = np.zeros(d, dtype=complex)
            u[0] = 1.0
            idx = n - 1 - ((i - 1) % (n - 1))
            u[idx] = fam.complex_gaussian(rng, 1)[0]
        elif tag == fam.PERSYMMETRIC_HANKEL:
            u = np.zeros(d, dtype=complex)
            u[0] = 1.0
            u += 0.1 * g
        elif tag == fam.COMPANION:
            u = np.zeros(d, dtype=complex)
            u[0] = 1.0  # the cycle matrix
            u += 0.1 * g
        elif tag == fam.ORTHOGONAL:
            u = 0.1 * g
        elif tag in (fam.VANDERMONDE, fam.VANDERMONDE_T):
            w = np.exp(-2j * np.pi * np.arange(1, n + 1) / n)
            u = w * (1.0 + 0.1 * fam.complex_gaussian(rng, n))
        elif tag == fam.SKEW_SYMMETRIC or tag == fam.SUBSPACE:
            u = g
        elif tag in (fam.ANTI_TRIANGULAR_TOP, fam.ANTI_TRIANGULAR_BOTTOM):
            u = fam.coordinates_of(spec, fam.exchange_matrix(n)) + 0.1 * g
        else:
            # families containing the identity
            u = fam.coordinates_of(spec, np.eye(n, dtype=complex)) + 0.1 * g
        if tag in fam._LINEAR_TAGS:
            # balance the factor norms; only linear families scale with
            # their coefficients, so leave the others at their centers
            A = fam.parameterize(spec, u)
            nrm = float(np.linalg.norm(A))
            if nrm > 0:
                u = u * (goal / nrm)
        out.append(u)
    return out


def _warm_start(prob: DecompositionProblem, T: np.ndarray):
    """If the target already lies in the first family and every other
    factor can sit at the identity, start from that exact chain."""
    first = prob.factors[0]
    if first.kind.tag not in fam._LINEAR_TAGS:
        return None
    if not fam.is_member(first, T, 1e-12):
        return None
    rest = prob.factors[1:]
    if not all(fam.contains_identity(spec) for spec in rest):
        return None
    out = [fam.coordinates_of(first, T)]
    eye = np.eye(prob.n, dtype=complex)
    out.extend(fam.coordinates_of(spec, eye) for spec in rest)
    return out


def _split(prob: DecompositionProblem, theta: np.ndarray):
    out = []
    pos = 0
    for spec in prob.factors:
        out.append(theta[pos:pos + spec.param_dim])
        pos += spec.param_dim
    return out


def _evaluate(prob: DecompositionProblem, params_list):
    factors = [fam.parameterize(spec, u) for spec, u in zip(prob.factors, params_list)]
    return factors, chain_product(factors)


def fit_chain(T, prob: DecompositionProblem, opts: FitOptions | None = None,
              init_params=None) -> FactorChain:
    """Fit a chain of structured factors to the target matrix T.

    Gauss-Newton with multiplicative Levenberg damping: the step solves
    (J^H J + lambda I) delta = -J^H res; damping is divided by 10 after an
    accepted step and multiplied by 10 after a rejected one (floored at
    1e-12, and a restart is abandoned once it exceeds 1e12 without
    improvement).  Restart k draws its initial chain from seed + k;
    init_params, when given, replaces the draw of restart 0.  The best
    restart by residual (ties to the earlier one) is returned.

    Raises InfeasibleProblemError when the parameter count cannot cover the
    target dimension.
    """
    opts = opts or FitOptions()
    T = _as_target(T, prob.n)
    warm = _warm_start(prob, T)
    if warm is None and not lower_bound_linear(
            [s.param_dim for s in prob.factors], prob.target.dim):
        # too few parameters to reach a generic target, and no structural
        # shortcut puts this particular target inside the chain
        raise InfeasibleProblemError(
            f"{prob.param_dim} parameters cannot cover a {prob.target.dim}-dimensional target")
    full_prob = DecompositionProblem(
        n=prob.n, factors=prob.factors, target=target_space(TARGET_FULL, prob.n))
    tscale = max(1.0, float(np.linalg.norm(T)))
    tvec = T.reshape(-1)
    best = None
    for restart in range(opts.restarts):
        rng = np.random.default_rng(opts.seed + restart)
        if restart == 0 and init_params is not None:
            params_list = [np.asarray(u, dtype=complex).reshape(-1).copy() for u in init_params]
        elif restart == 0 and warm is not None:
            params_list = warm
        else:
            params_list = _initial_params(prob, T, rng)
        theta = np.concatenate(params_list)

        try:
            factors, prod = _evaluate(prob, _split(prob, theta))
        except DegeneratePointError:
            continue
        res = prod.reshape(-1) - tvec
        res_norm = float(np.linalg.norm(res))
        lam = opts.damping_init
        iterations = 0
        for _ in range(opts.max_iterations):
            if res_norm / tscale <= opts.residual_tol:
                break
            iterations += 1
            try:
                J = jacobian(full_prob, _split(prob, theta))
            except DegeneratePointError:
                break
            # damped step through the SVD: delta = -V sig/(sig^2+lam) U^H res,
            # which keeps the conditioning of J instead of squaring it
            U, sig, Vh = np.linalg.svd(J, full_matrices=False)
            coef = U.conj().T @ res
            improved = False
            while lam <= DAMPING_CEIL:
                delta = -(Vh.conj().T @ (sig / (sig * sig + lam) * coef))
                cand = theta + delta
                try:
                    cand_factors, cand_prod = _evaluate(prob, _split(prob, cand))
                except DegeneratePointError:
                    lam *= 10.0
                    continue
                cand_res = cand_prod.reshape(-1) - tvec
                cand_norm = float(np.linalg.norm(cand_res))
                if cand_norm < res_norm:
                    theta, res, res_norm = cand, cand_res, cand_norm
                    factors, prod = cand_factors, cand_prod
                    lam = max(lam / 10.0, DAMPING_FLOOR)
                    improved = True
                    break
                lam *= 10.0
            if not improved:
                break  # stalled
        rel = res_norm / tscale
        converged = rel <= opts.residual_tol
        candidate = FactorChain(
            problem=prob,
            params=_split(prob, theta),
            factors=factors,
            residual=rel,
            iterations=iterations,
            converged=converged,
            target=T.copy(),
        )
        if best is None or candidate.residual < best.residual:
            best = candidate
        if best.converged:
            break
    if best is None:
        raise DegeneratePointError("every restart drew a degenerate initial chain")
    return best


# ---------------------------------------------------------------------------
# pipelines

def lu_nopivot(A, pivot_tol: float = LU_PIVOT_TOL):
    """Doolittle elimination without pivoting: A = L U with unit-diagonal L.

    Raises NonGenericMatrixError when a pivot is tiny relative to the input
    (a vanishing leading principal minor)."""
    A = _as_target(A)
    n = A.shape[0]
    U = A.copy()
    L = np.eye(n, dtype=complex)
    scale = 1.0 + float(np.linalg.norm(A))
    for j in range(n - 1):
        if abs(U[j, j]) <= pivot_tol * scale:
            raise NonGenericMatrixError(
                f"pivot {j + 1} vanishes; elimination without pivoting breaks down")
        mult = U[j + 1:, j] / U[j, j]
        L[j + 1:, j] = mult
        U[j + 1:, j:] -= np.outer(mult, U[j, j:])
        U[j + 1:, j] = 0.0
    if n >= 1 and abs(U[n - 1, n - 1]) <= pivot_tol * scale:
        raise NonGenericMatrixError("trailing pivot vanishes; the matrix is not generic")
    return L, U


def decompose_bidiagonal(T, opts: FitOptions | None = None) -> FactorChain:
    """Write a generic matrix as a product of 2n bidiagonal factors.

    Elimination without pivoting gives T = L U; each triangle is then fit
    with n bidiagonal factors of the matching orientation, and the two
    fitted chains are concatenated."""
    opts = opts or FitOptions()
    T = _as_target(T)
    n = T.shape[0]
    L, U = lu_nopivot(T)
    prob_l = DecompositionProblem(
        n=n,
        factors=tuple(fam.family_spec(fam.BIDIAGONAL_LOWER, n) for _ in range(n)),
        target=target_space(TARGET_FULL, n),
    )
    prob_u = DecompositionProblem(
        n=n,
        factors=tuple(fam.family_spec(fam.BIDIAGONAL_UPPER, n) for _ in range(n)),
        target=target_space(TARGET_FULL, n),
    )
    # the triangle fits must overshoot the requested tolerance because their
    # errors get multiplied by the other triangle's norm in the product
    sub_opts = replace(opts, residual_tol=max(opts.residual_tol * 1e-3, 1e-14))
    fit_l = fit_chain(L, prob_l, sub_opts)
    fit_u = fit_chain(U, prob_u, sub_opts)
    combined_prob = DecompositionProblem(
        n=n, factors=prob_l.factors + prob_u.factors, target=target_space(TARGET_FULL, n))
    params = list(fit_l.params) + list(fit_u.params)
    factors = list(fit_l.factors) + list(fit_u.factors)
    resid = float(np.linalg.norm(chain_product(factors) - T)) / max(1.0, float(np.linalg.norm(T)))
    iterations = fit_l.iterations + fit_u.iterations
    if resid > opts.residual_tol:
        # a short joint pass over all 2n factors cleans up the residual
        polish = fit_chain(T, combined_prob, replace(opts, restarts=1), init_params=params)
        if polish.residual < resid:
            params, factors = polish.params, polish.factors
            resid = polish.residual
            iterations += polish.iterations
    return FactorChain(
        problem=combined_prob,
        params=params,
        factors=factors,
        residual=resid,
        iterations=iterations,
        converged=resid <= opts.residual_tol,
        target=T.copy(),
    )


def decompose_centrosymmetric(T, use_hankel: bool = False,
                              opts: FitOptions | None = None,
                              r: int | None = None) -> FactorChain:
    """Fit a centrosymmetric matrix with a chain of symmetric Toeplitz
    factors, optionally re-expressed as persymmetric Hankel factors.

    The default chain length is floor((n+1)/2).  In Hankel mode each fitted
    Toeplitz factor A is replaced by J A (a persymmetric Hankel matrix);
    since J commutes with all the factors and squares to the identity, the
    twisted chain multiplies to J * target for odd chain length and to the
    target itself for even length, and the returned chain records that
    effective target."""
    opts = opts or FitOptions()
    T = _as_target(T)
    n = T.shape[0]
    if n < 3:
        raise ParameterRangeError("centrosymmetric pipeline needs n >= 3")
    if float(np.max(np.abs(T - T[::-1, ::-1]))) > 1e-10 * (1.0 + float(np.linalg.norm(T))):
        raise NonMemberError("target is not centrosymmetric")
    if r is None:
        r = (n + 1) // 2
    if r < 1:
        raise ParameterRangeError("chain length must be positive")
    prob = DecompositionProblem(
        n=n,
        factors=tuple(fam.family_spec(fam.SYMMETRIC_TOEPLITZ, n) for _ in range(r)),
        target=target_space(TARGET_CENTRO, n),
    )
    chain = fit_chain(T, prob, opts)
    if not use_hankel:
        return chain
    J = fam.exchange_matrix(n)
    hankel_prob = DecompositionProblem(
        n=n,
        factors=tuple(fam.family_spec(fam.PERSYMMETRIC_HANKEL, n) for _ in range(r)),
        target=target_space(TARGET_CENTRO, n),
    )
    factors = [J @ A for A in chain.factors]
    effective_target = (J @ T) if r % 2 == 1 else T
    resid = float(np.linalg.norm(chain_product(factors) - effective_target))
    resid /= max(1.0, float(np.linalg.norm(effective_target)))
    return FactorChain(
        problem=hankel_prob,
        params=[u.copy() for u in chain.params],  # same coefficients in the J S_k basis
        factors=factors,
        residual=resid,
        iterations=chain.iterations,
        converged=chain.converged and resid <= opts.residual_tol,
        target=effective_target,
    )
