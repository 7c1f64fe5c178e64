import math
from fractions import Fraction

import numpy as np
import pytest

from pinchkit.curvature import mean_curvature_sq, mean_curvature_vector, ricci_tensor
from pinchkit.errors import CurvatureMismatch, DomainError
from pinchkit.lawson_simons import Verdict, homology_verdict
from pinchkit.models import (
    clifford_minimal,
    compose_umbilical,
    einstein_torus,
    principal_values_closed_form,
    torus_hypersurface,
    umbilical_sphere,
)
from pinchkit.pinching import alpha
from pinchkit.surd import QuadSurd


def test_umbilical_zero_and_ricci():
    P = umbilical_sphere(5, 2, 1, 0)
    assert not P.shape_ops.any()
    np.testing.assert_array_equal(ricci_tensor(P), 4 * np.eye(5))
    Q = umbilical_sphere(5, 1, 0, 1)
    assert all(ricci_tensor(Q, exact=True)[i, j] == (4 if i == j else 0) for i in range(5) for j in range(5))


@pytest.mark.parametrize("n,k,r,c", [(5, 2, Fraction(1), Fraction(0)), (9, 3, Fraction(3, 2), Fraction(1, 5)),
                                     (10, 5, Fraction(2), Fraction(1, 4)), (8, 3, QuadSurd.sqrt(2), Fraction(0))])
def test_einstein_torus_exact(n, k, r, c):
    P, spec = einstein_torus(n, k, r, c)
    r2 = spec.squares["r2"]
    ric = ricci_tensor(P, exact=True)
    assert all(ric[i, j] == (Fraction(n - 2) / r2 if i == j else 0) for i in range(n) for j in range(n))
    assert mean_curvature_sq(P, exact=True) == spec.squares["H_g2"] + spec.squares["H_u2"]
    assert alpha(n, k, QuadSurd.sqrt(spec.squares["H2"]), c) == Fraction(n - 2) / r2
    hg = (n - 2 * k) / (math.sqrt(r2) * n * math.sqrt((k - 1) * (n - k - 1)))
    assert mean_curvature_vector(P)[0][0] == pytest.approx(hg, abs=1e-12)
    assert spec.H_g == pytest.approx(hg, abs=1e-12)


def test_n_equal_2k_is_minimal_clifford():
    P, spec = einstein_torus(6, 3, 1.0, 0.5)
    Q, _ = clifford_minimal(3, 1.0, 0.5)
    assert spec.H_g == pytest.approx(0.0, abs=1e-15)
    np.testing.assert_allclose(P.shape_ops, Q.shape_ops)


def test_clifford_radius_formula():
    P, spec = clifford_minimal(3, 1, 0)
    assert spec.H == pytest.approx(1.0) and float(spec.squares["H2"]) == 1
    np.testing.assert_allclose(ricci_tensor(P), 4 * np.eye(6), atol=1e-13)
    # r = 1/sqrt(c + H^2) for any c
    P2, spec2 = clifford_minimal(3, Fraction(1, 2), Fraction(3))
    assert spec2.squares["r2"] == 1 / (spec2.squares["c"] + spec2.squares["H2"])


def test_clifford_in_unit_sphere_is_minimal():
    P, spec = clifford_minimal(3, 1, 1)
    assert spec.H == 0.0
    np.testing.assert_allclose(ricci_tensor(P), 4 * np.eye(6), atol=1e-13)


@pytest.mark.parametrize("k", [3, 4])
def test_clifford_verdict_equality(k):
    P, _ = clifford_minimal(k, 1.0, 0.2)
    assert homology_verdict(P, k).verdict is Verdict.EQUALITY


def test_compose_matches_einstein_torus():
    inner = torus_hypersurface(7, 3, 1.0)
    np.testing.assert_allclose(compose_umbilical(inner, 1.0, 0.0, 2).shape_ops,
                               einstein_torus(7, 3, 1.0, 0.0)[0].shape_ops, atol=1e-15)


def test_compose_totally_geodesic_inner():
    inner = umbilical_sphere(5, 1, 0.25, 0)
    out = compose_umbilical(inner, 2.0, 0.0, 2)
    _, H = mean_curvature_vector(out)
    assert H == pytest.approx(0.5)


def test_compose_rejects_mismatch():
    inner = torus_hypersurface(7, 3, 1.0)
    with pytest.raises(CurvatureMismatch):
        compose_umbilical(inner, 2.0, 0.0, 2)
    with pytest.raises(DomainError):
        compose_umbilical(inner, 1.0, 2.0, 2)


def test_closed_form_principal_values():
    assert principal_values_closed_form(8, 4, 1.5, 0.1) == (1.5, 1.5)
    for n, k in [(7, 3), (9, 2), (11, 5)]:
        P, spec = einstein_torus(n, k, 1.3, 0.2)
        lam, mu = principal_values_closed_form(n, k, spec.H, 0.2)
        assert lam == pytest.approx(spec.lambda1, abs=1e-12) and mu == pytest.approx(spec.mu1, abs=1e-12)
        # rotate the normal frame onto the mean-curvature direction and read off eta_1, eta_2
        e = np.array([spec.H_g, spec.H_u]) / spec.H
        assert e @ P.shape_ops[:, 0, 0] == pytest.approx(lam, abs=1e-12)
        assert e @ P.shape_ops[:, n - 1, n - 1] == pytest.approx(mu, abs=1e-12)
    with pytest.raises(DomainError):
        principal_values_closed_form(7, 3, 0, 1)


def test_spec_sidecar_is_serializable():
    import json

    _, spec = einstein_torus(7, 3, Fraction(1), Fraction(1, 4))
    doc = json.loads(json.dumps(spec.as_dict()))
    assert doc["squares"]["ric_value"] == "5"


def test_torus_domain():
    with pytest.raises(DomainError):
        einstein_torus(7, 3, 1.0, 0.0, m=1)
    with pytest.raises(DomainError):
        einstein_torus(7, 3, 1.0, -1.0)
