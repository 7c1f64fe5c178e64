from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from pinchkit import oracles
from pinchkit._linalg import random_orthogonal
from pinchkit.curvature import (
    PointData,
    mean_curvature_sq,
    mean_curvature_vector,
    ricci_min,
    ricci_tensor,
    scalar_curvature,
    sff_norm_sq,
    summarize,
)
from pinchkit.errors import DimensionError, InternalInconsistency, SymmetryError
from pinchkit.models import clifford_minimal, einstein_torus, umbilical_sphere

from conftest import random_point


def test_umbilical_mean_curvature():
    P = umbilical_sphere(5, 3, 0.5, 1.5)
    cvec, H = mean_curvature_vector(P)
    np.testing.assert_allclose(cvec, [1.5, 0, 0])
    assert H == pytest.approx(1.5)


def test_clifford_mean_curvature_components():
    P, _ = clifford_minimal(3, 1, 0, 2)
    cvec, H = mean_curvature_vector(P)
    assert abs(cvec[0]) < 1e-15
    assert cvec[1] == pytest.approx(1.0, abs=1e-15)
    assert H == pytest.approx(1.0, abs=1e-15)


def test_mean_vector_matches_loop_exactly(rng):
    P = random_point(rng, 5, 3)
    assert list(mean_curvature_vector(P)[0]) == oracles.mean_vector_loop(P.shape_ops.tolist())


@pytest.mark.parametrize("n,m", [(6, 2), (5, 3)])
def test_ricci_matches_triple_loop(rng, n, m):
    P = random_point(rng, n, m, c=0.7)
    np.testing.assert_allclose(ricci_tensor(P), oracles.ricci_loop(P.shape_ops.tolist(), 0.7),
                               rtol=1e-13, atol=1e-13)


def test_exact_ricci_matches_rational_loop():
    mats = [[[Fraction(i + j, 3) if i != j else Fraction(i, 2) for j in range(5)] for i in range(5)],
            [[Fraction((i * j) % 4, 5) for j in range(5)] for i in range(5)]]
    P = PointData.from_exact(5, 2, Fraction(1, 4), mats)
    ric = ricci_tensor(P, exact=True)
    ref = oracles.ricci_loop(mats, Fraction(1, 4))
    assert all(ric[i, j] == ref[i][j] for i in range(5) for j in range(5))


@pytest.mark.parametrize("lam,c", [(0.0, 1.0), (2.0, 0.0), (1.0, -0.5)])
def test_umbilical_ricci_scalar_sff(lam, c):
    n = 6
    P = umbilical_sphere(n, 2, c, lam)
    np.testing.assert_allclose(ricci_tensor(P), (n - 1) * (c + lam**2) * np.eye(n), atol=1e-13)
    assert scalar_curvature(P) == pytest.approx(n * (n - 1) * (c + lam**2))
    assert sff_norm_sq(P) == pytest.approx(n * lam**2)
    assert ricci_min(P)[0] == pytest.approx((n - 1) * (c + lam**2))


def test_zero_sff():
    P = umbilical_sphere(5, 2, 1, 0)
    assert sff_norm_sq(P) == 0
    np.testing.assert_array_equal(ricci_tensor(P), 4 * np.eye(5))


def test_torus_ricci_and_scalar_exact():
    n, k, r = 7, 3, Fraction(2)
    P, _ = einstein_torus(n, k, r, Fraction(1, 8))
    assert scalar_curvature(P, exact=True) == Fraction(n * (n - 2)) / (r * r)
    val, vec = ricci_min(P)
    assert val == pytest.approx((n - 2) / 4, abs=1e-12)
    assert np.linalg.norm(vec) == pytest.approx(1.0)


def test_sff_matches_entrywise_oracle(rng):
    P = random_point(rng, 6, 3)
    assert sff_norm_sq(P) == pytest.approx(oracles.sff_loop(P.shape_ops.tolist()), rel=1e-14)


def test_ricci_min_against_sampling(rng):
    # Sampling only ever approaches the minimum from above: check the bound
    # and that the returned direction attains the value.
    P = random_point(rng, 5, 2)
    val, vec = ricci_min(P)
    ric = ricci_tensor(P)
    sampled = oracles.ricci_min_sampled(ric, rng, 10_000)
    assert val <= sampled + 1e-8
    assert sampled - val < 0.5
    assert vec @ ric @ vec == pytest.approx(val, abs=1e-8)
    assert val <= scalar_curvature(P) / P.n + 1e-12


@given(st.integers(5, 8), st.integers(1, 4), st.integers(0, 2**31))
def test_scalar_dual_path_and_frame_invariance(n, m, seed):
    g = np.random.default_rng(seed)
    P = random_point(g, n, m, c=float(g.uniform(-1, 1)))
    rho = scalar_curvature(P, rtol=1e-12)
    Q, O = random_orthogonal(n, g), random_orthogonal(m, g)
    R = P.rotated(Q, O)
    assert scalar_curvature(R) == pytest.approx(rho, rel=1e-11, abs=1e-11)
    assert mean_curvature_sq(R) == pytest.approx(mean_curvature_sq(P), rel=1e-11, abs=1e-12)
    np.testing.assert_allclose(np.linalg.eigvalsh(ricci_tensor(R)), np.linalg.eigvalsh(ricci_tensor(P)),
                               atol=1e-10)


def test_summary_fields(rng):
    P = random_point(rng, 5, 2)
    s = summarize(P)
    assert s.ric_min == pytest.approx(ricci_min(P)[0])
    assert set(s.as_dict()) == {"mean_vector", "H", "S", "ric", "rho", "ric_min"}


def test_symmetry_error_names_entry():
    ops = np.zeros((2, 5, 5))
    ops[1, 1, 3] = 1.0
    with pytest.raises(SymmetryError, match=r"\(1, 1, 3\)"):
        PointData(5, 2, 0.0, ops)


def test_dimension_errors():
    with pytest.raises(DimensionError):
        PointData(5, 2, 0.0, np.zeros((1, 5, 5)))
    with pytest.raises(DimensionError):
        PointData(5, 1, 0.0, np.zeros((1, 4, 4)))
    with pytest.raises(DimensionError):
        PointData(5, 1, 0.0, np.full((1, 5, 5), np.nan))


def test_exact_mode_requires_rational_form(rng):
    from pinchkit.errors import DomainError

    with pytest.raises(DomainError):
        ricci_tensor(random_point(rng, 5, 1), exact=True)


def test_inconsistent_scalar_paths_are_detected(rng, monkeypatch):
    import pinchkit.curvature as curv

    P = random_point(rng, 5, 1)
    monkeypatch.setattr(curv, "sff_norm_sq", lambda P, exact=False: 1e6)
    with pytest.raises(InternalInconsistency):
        curv.scalar_curvature(P)
