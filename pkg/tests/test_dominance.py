"""Jacobians of multiplication maps and dimension arithmetic."""

import numpy as np
import pytest

import matchain.families as fam
import matchain.dominance as dom
from matchain.errors import ParameterRangeError


def test_target_space_dimensions():
    assert dom.target_space("full", 5).dim == 25
    assert dom.target_space("det", 5).dim == 24
    assert dom.target_space("centro", 5).dim == 13
    assert dom.target_space("centro", 4).dim == 8
    with pytest.raises(ParameterRangeError):
        dom.target_space("banana", 4)


def test_chain_product():
    rng = np.random.default_rng(0)
    mats = [fam.complex_gaussian(rng, 9).reshape(3, 3) for _ in range(4)]
    expect = mats[0] @ mats[1] @ mats[2] @ mats[3]
    np.testing.assert_allclose(dom.chain_product(mats), expect, rtol=1e-14)


def test_differential_is_derivative_of_product():
    """Product rule: the differential matches finite differences of the chain."""
    rng = np.random.default_rng(1)
    base = [fam.complex_gaussian(rng, 16).reshape(4, 4) for _ in range(3)]
    tangents = [fam.complex_gaussian(rng, 16).reshape(4, 4) for _ in range(3)]
    D = dom.differential_apply(base, tangents)
    h = 1e-7
    plus = dom.chain_product([B + h * X for B, X in zip(base, tangents)])
    minus = dom.chain_product([B - h * X for B, X in zip(base, tangents)])
    fd = (plus - minus) / (2 * h)
    np.testing.assert_allclose(D, fd, atol=1e-6)


def test_differential_single_factor_is_identity_map():
    X = np.arange(9.0).reshape(3, 3) + 0j
    np.testing.assert_array_equal(dom.differential_apply([np.eye(3, dtype=complex)], [X]), X)


def test_problem_summary_and_param_dim():
    prob = dom.problem(["skew-symmetric", "toeplitz-sym", "diagonal"], 4)
    assert prob.r == 3
    assert prob.param_dim == 6 + 4 + 4
    s = prob.summary()
    assert s == {
        "n": 4,
        "r": 3,
        "families": ["skew-symmetric", "toeplitz-sym", "diagonal"],
        "target": "full",
    }


def test_jacobian_shape_and_column_content():
    prob = dom.problem(["toeplitz-sym", "toeplitz-sym"], 3)
    base = [np.array([1.0, 0.2, 0.0], dtype=complex),
            np.array([1.0, 0.0, 0.5], dtype=complex)]
    J = dom.jacobian(prob, base)
    assert J.shape == (9, 6)
    # column 0 perturbs the first coordinate of the first factor
    mats = [fam.parameterize(s, p) for s, p in zip(prob.factors, base)]
    E0 = fam.linear_basis(prob.factors[0])[0]
    np.testing.assert_allclose(J[:, 0], (E0 @ mats[1]).reshape(-1), atol=1e-14)


def test_jacobian_centro_target_rows():
    prob = dom.problem(["toeplitz-sym", "toeplitz-sym"], 4, target="centro")
    base = [np.array([1, 0.3, 0, 0.1], dtype=complex),
            np.array([1, 0, 0.2, 0], dtype=complex)]
    J = dom.jacobian(prob, base)
    assert J.shape == (8, 8)


def test_numerical_rank_thresholds():
    M = np.diag([1.0, 1e-2, 1e-9, 0.0])
    assert dom.numerical_rank(M, rel_tol=1e-8) == 2
    assert dom.numerical_rank(M, rel_tol=1e-10) == 3
    assert dom.numerical_rank(np.zeros((3, 3)), rel_tol=1e-8) == 0
    assert dom.numerical_rank(np.eye(7)[:5], rel_tol=1e-8) == 5


def test_estimate_image_dimension_report():
    prob = dom.problem(["skew-symmetric"] * 3, 4)
    rep = dom.estimate_image_dimension(prob, trials=4, seed=3)
    assert rep.trials == 4
    assert len(rep.ranks) == 4
    assert rep.d_estimate == max(rep.ranks) == 13
    assert rep.target_dim == 16
    assert not rep.dominant
    assert rep.seed == 3
    assert rep.problem["families"] == ["skew-symmetric"] * 3

    again = dom.estimate_image_dimension(prob, trials=4, seed=3)
    assert rep == again  # same seed, same report


def test_estimate_image_dimension_dominant_case():
    prob = dom.problem(["skew-symmetric"] * 5, 4)
    rep = dom.estimate_image_dimension(prob, trials=3, seed=0)
    assert rep.dominant
    assert rep.d_estimate == 16


def test_skew_dimension_row_matches_table():
    for n, r, d in dom.SKEW_TABLE[:6]:
        assert dom.skew_dimension_row(n, r, trials=3, seed=1) == d


def test_lower_bound_linear():
    assert dom.lower_bound_linear([6, 6, 6], 16)
    assert not dom.lower_bound_linear([6, 6], 16)
    assert dom.lower_bound_linear([16], 16)
    assert not dom.lower_bound_linear([], 16)


def test_lower_bound_cone():
    # r factors from an m-dimensional cone reach at most rm - (r - 1)
    assert dom.lower_bound_cone(6, 16) == 3
    assert dom.lower_bound_cone(28, 64) == 3
    assert dom.lower_bound_cone(5, 13) == 3
    assert dom.lower_bound_cone(4, 8) == 3
    assert dom.lower_bound_cone(16, 16) == 1
    with pytest.raises(ParameterRangeError):
        dom.lower_bound_cone(1, 9)


def test_lower_bound_cone_is_sharp_necessary_count():
    for m in (3, 5, 9):
        for D in (7, 16, 25, 49):
            r = dom.lower_bound_cone(m, D)
            assert r * m - (r - 1) >= D
            if r > 1:
                assert (r - 1) * m - (r - 2) < D


def test_surjectivity_bound():
    assert dom.surjectivity_bound(3) == 13
    assert dom.surjectivity_bound(5) == 21
    assert dom.surjectivity_bound(1) == 5


def test_two_factor_tangent_test_qr_like_pairs():
    I = np.eye(3, dtype=complex)
    up = fam.family_spec(fam.kind_from_tag("triangular-upper"), 3)
    lo = fam.family_spec(fam.kind_from_tag("triangular-lower"), 3)
    orth = fam.family_spec(fam.kind_from_tag("orthogonal"), 3)
    assert dom.two_factor_tangent_test(lo, up, (I, I))
    assert dom.two_factor_tangent_test(orth, up, (I, I))
    assert not dom.two_factor_tangent_test(up, up, (I, I))


def test_two_factor_tangent_test_rejects_bad_base():
    up = fam.family_spec(fam.kind_from_tag("triangular-upper"), 3)
    lo = fam.family_spec(fam.kind_from_tag("triangular-lower"), 3)
    bad = np.ones((3, 3), dtype=complex)  # not lower triangular
    from matchain.errors import NonMemberError
    with pytest.raises(NonMemberError):
        dom.two_factor_tangent_test(lo, up, (bad, np.eye(3, dtype=complex)))


def test_companion_chain_dominance_small():
    """n companion factors reach the full n x n space for small n."""
    prob = dom.problem(["companion"] * 3, 3)
    rep = dom.estimate_image_dimension(prob, trials=3, seed=2)
    assert rep.dominant
