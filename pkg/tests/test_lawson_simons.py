import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from pinchkit import oracles
from pinchkit._linalg import random_orthogonal
from pinchkit.curvature import PointData, mean_curvature_sq
from pinchkit.errors import DomainError, HypothesisNotMet
from pinchkit.lawson_simons import (
    OptimizerConfig,
    SubspaceSplit,
    Verdict,
    homology_verdict,
    maximize_theta,
    maximize_theta_many,
    random_pinched_point,
    theta_q_basis,
    theta_q_subspace,
    verify_lemma_chain,
)
from pinchkit.models import clifford_minimal, einstein_torus, umbilical_sphere
from pinchkit.rigidity import equality_case_detect

from conftest import random_point


def test_umbilical_theta_any_split(rng):
    n, q, lam = 7, 3, 1.5
    P = umbilical_sphere(n, 2, 0.0, lam)
    for _ in range(3):
        B = random_orthogonal(n, rng)
        assert theta_q_basis(P, SubspaceSplit(q, B)) == pytest.approx(-q * (n - q) * lam**2)
        assert theta_q_subspace(P, B[:, :q] @ B[:, :q].T) == pytest.approx(-q * (n - q) * lam**2)


def test_zero_sff_theta():
    P = umbilical_sphere(6, 1, 1.0, 0.0)
    assert theta_q_basis(P, SubspaceSplit(2, np.eye(6))) == 0


def test_theta_matches_four_index_loop(rng):
    P = random_point(rng, 6, 3)
    B = random_orthogonal(6, rng)
    got = theta_q_basis(P, SubspaceSplit(2, B))
    assert got == pytest.approx(oracles.theta_loop(P.shape_ops.tolist(), B, 2), abs=1e-12)


def test_coordinate_projector_on_diagonal_family(rng):
    d = rng.standard_normal((2, 6))
    ops = np.array([np.diag(x) for x in d])
    P = PointData(6, 2, 0.0, ops)
    V = np.diag([1.0, 1.0, 1.0, 0, 0, 0])
    expected = -sum(x[:3].sum() * x[3:].sum() for x in d)
    assert theta_q_subspace(P, V) == pytest.approx(expected, abs=1e-13)


@given(st.integers(4, 8), st.integers(1, 3), st.integers(0, 2**31))
def test_subspace_form_matches_gram_schmidt_completion(n, q, seed):
    g = np.random.default_rng(seed)
    P = random_point(g, n, 2)
    U = np.linalg.qr(g.standard_normal((n, q)))[0]
    basis = oracles.gram_schmidt_complete(U, n)
    assert theta_q_subspace(P, U @ U.T) == pytest.approx(theta_q_basis(P, SubspaceSplit(q, basis)),
                                                         abs=1e-10, rel=1e-10)


@given(st.integers(0, 2**31))
def test_theta_depends_only_on_the_plane(seed):
    g = np.random.default_rng(seed)
    n, q = 6, 2
    P = random_point(g, n, 3)
    B = random_orthogonal(n, g)
    R = np.eye(n)
    R[:q, :q] = random_orthogonal(q, g)
    R[q:, q:] = random_orthogonal(n - q, g)
    a = theta_q_basis(P, SubspaceSplit(q, B))
    b = theta_q_basis(P, SubspaceSplit(q, B @ R))
    assert a == pytest.approx(b, abs=1e-11)


def test_optimizer_umbilical_is_certified():
    P = umbilical_sphere(6, 2, 0.0, 2.0)
    res = maximize_theta(P, 2)
    assert res.value == pytest.approx(-2 * 4 * 4.0)
    assert res.global_certified and res.verdict is Verdict.STRICT


def test_commuting_family_beats_coordinate_subsets():
    # Coordinate planes of a common eigenframe are not maximizers in general:
    # mixing one in-plane axis with one out-of-plane axis can raise Theta_q.
    d = np.array([[3.0, -1.0, 0.5, 0.2, -0.4, 1.0]])
    P = PointData(6, 1, 0.0, np.diag(d[0])[None])
    best_subset, subset = oracles.diagonal_subset_max(d, 2)
    assert best_subset == pytest.approx(max(oracles.subset_theta_values(P.shape_ops, np.eye(6), 2).values()))
    res = maximize_theta(P, 2)
    assert res.value > best_subset + 1e-3
    assert res.value == pytest.approx(oracles.theta_loop(P.shape_ops.tolist(), res.split.basis, 2), abs=1e-10)


def test_rotated_plane_gain_n2_formula():
    d1, d2 = 2.0, -0.5
    P = PointData(2, 1, 0.0, np.diag([d1, d2])[None])
    B = np.array([[1, -1], [1, 1]]) / math.sqrt(2)
    gain = theta_q_basis(P, SubspaceSplit(1, B)) - theta_q_basis(P, SubspaceSplit(1, np.eye(2)))
    assert gain == pytest.approx((d1 - d2) ** 2 / 4)


@pytest.mark.parametrize("n,k", [(6, 3), (7, 3), (8, 3), (9, 4)])
def test_torus_attains_threshold(n, k):
    c = 0.25
    P, _ = einstein_torus(n, k, 1.0, c)
    res = homology_verdict(P, k)
    assert res.value == pytest.approx(k * (n - k) * c, abs=1e-9)
    assert res.verdict is Verdict.EQUALITY and res.global_certified
    chain = verify_lemma_chain(P, k, k, res.split)
    assert all(abs(v) <= 1e-9 for v in chain.slacks.values())
    assert equality_case_detect(P, k) is not None


def test_torus_subset_oracle_agrees():
    P, _ = einstein_torus(7, 3, 1.0, 0.0)
    best = max(oracles.subset_theta_values(P.shape_ops, np.eye(7), 3).values())
    assert best == pytest.approx(0.0, abs=1e-12)


def test_umbilical_strict_and_chain_slack():
    n, k, q, lam, c = 8, 4, 3, 1.2, 0.5
    P = umbilical_sphere(n, 2, c, lam)
    res = homology_verdict(P, q)
    assert res.verdict is Verdict.STRICT
    chain = verify_lemma_chain(P, k, q, SubspaceSplit(q, np.eye(n)))
    assert chain.slacks["final"] == pytest.approx(q * (n - q) * (c + lam**2))
    assert chain.min_slack >= -1e-12


@given(st.integers(0, 2**31))
def test_random_pinched_is_strict_with_valid_chain(seed):
    g = np.random.default_rng(seed)
    n = int(g.integers(5, 9))
    k = int(g.integers(2, n // 2 + 1))
    P = random_pinched_point(n, int(g.integers(1, 4)), float(g.integers(0, 2)), k, g, margin=0.05)
    res = maximize_theta(P, k, OptimizerConfig(starts=8, subset_limit=0))
    assert res.verdict is Verdict.STRICT
    chain = verify_lemma_chain(P, k, k, res.split)
    assert chain.min_slack >= -1e-10
    assert all(abs(v) < 1e-9 * (1 + abs(chain.theta)) for v in chain.residuals.values())


def test_chain_hypothesis_not_met(rng):
    P = random_point(rng, 6, 2, c=0.0, scale=2.0)
    with pytest.raises(HypothesisNotMet) as info:
        verify_lemma_chain(P, 3, 2, SubspaceSplit(2, np.eye(6)))
    assert info.value.record is not None and not info.value.record.hypothesis_holds
    record = verify_lemma_chain(P, 3, 2, SubspaceSplit(2, np.eye(6)), strict=False)
    assert record.pinching_margin < 0


def test_chain_domain():
    P = umbilical_sphere(6, 1, 1.0, 0.0)
    with pytest.raises(DomainError):
        verify_lemma_chain(P, 3, 1, SubspaceSplit(1, np.eye(6)))
    with pytest.raises(DomainError):
        maximize_theta(P, 6)


def test_many_matches_single(rng):
    pts = [random_point(rng, 6, m) for m in (1, 2, 3)]
    many = maximize_theta_many(pts, 2, keys=[(i,) for i in range(3)])
    for i, P in enumerate(pts):
        single = maximize_theta(P, 2, key=(i,))
        assert many[i].value == pytest.approx(single.value, abs=1e-10)


def test_seeded_determinism_and_more_starts_never_worse(rng):
    P = random_point(rng, 7, 3)
    a = maximize_theta(P, 3, OptimizerConfig(starts=8, seed=5, subset_limit=0))
    b = maximize_theta(P, 3, OptimizerConfig(starts=8, seed=5, subset_limit=0))
    assert a.value == b.value and np.array_equal(a.split.basis, b.split.basis)
    more = maximize_theta(P, 3, OptimizerConfig(starts=32, seed=5, subset_limit=0))
    assert more.value >= a.value - 1e-10


def test_optimizer_beats_subsets_on_generic_family(rng):
    P = random_point(rng, 6, 2)
    best = max(oracles.subset_theta_values(P.shape_ops, np.eye(6), 2).values())
    assert maximize_theta(P, 2).value >= best - 1e-9


def test_clifford_equality_and_mean_curvature():
    P, spec = clifford_minimal(3, 1, 0)
    assert math.sqrt(mean_curvature_sq(P)) == pytest.approx(1.0)
    assert homology_verdict(P, 3).verdict is Verdict.EQUALITY
