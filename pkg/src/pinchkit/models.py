"""Second fundamental form data of the model immersions.

* umbilical spheres, ``H_1 = H I``;
* the Einstein torus ``S^k(rho1) x S^{n-k}(rho2) -> S^{n+1}(r) -> F^{n+m}(c)``
  with ``rho1^2 = (k-1) r^2/(n-2)``, ``rho2^2 = (n-k-1) r^2/(n-2)``, Einstein
  with ``Ric = (n-2)/r^2``;
* the minimal Clifford hypersurface, its ``n = 2k`` case.

Every identity of these models is polynomial in squared quantities
(``r^2``, ``c``, ``a^2``, ``b^2``, ``H_u^2``), so for rational ``r^2`` and ``c``
the constructors attach an exact form (``H_alpha = sqrt(s_alpha) M_alpha``
with rational ``s_alpha``, ``M_alpha``) and curvature checks run exactly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import rng as rngmod
from ._linalg import random_orthogonal
from .curvature import PointData, mean_curvature_sq, ricci_tensor
from .errors import CurvatureMismatch, DimensionMismatch, DomainError, InternalInconsistency
from .pinching import phi
from .surd import QuadSurd, is_exact

__all__ = [
    "ModelSpec",
    "SyntheticTruth",
    "umbilical_sphere",
    "torus_hypersurface",
    "einstein_torus",
    "clifford_minimal",
    "compose_umbilical",
    "principal_values_closed_form",
    "equality_case_synthetic",
]

_KEY_SYNTH_TANGENT = 5
_KEY_SYNTH_NORMAL = 6
_KEY_SYNTH_NOISE = 7


@dataclass(frozen=True)
class ModelSpec:
    """Analytic ground truth of an Einstein torus model.

    Float fields are always set. ``squares`` holds exact Fractions (``r2``,
    ``c``, ``c_bar``, ``H_u2``, ``H_g2``, ``H2``, ``a2``, ``b2``, ``rho1_2``,
    ``rho2_2``, ``ric_value``) when ``r^2`` and ``c`` are rational.
    """

    n: int
    k: int
    r: float
    c: float
    m: int
    H_u: float
    c_bar: float
    H_g: float
    H: float
    lambda1: float
    mu1: float
    rho1: float
    rho2: float
    a: float
    b: float
    ric_value: float
    squares: dict | None = None

    def as_dict(self):
        out = {
            key: getattr(self, key)
            for key in ("n", "k", "r", "c", "m", "H_u", "c_bar", "H_g", "H", "lambda1", "mu1",
                        "rho1", "rho2", "a", "b", "ric_value")
        }
        if self.squares is not None:
            out["squares"] = {key: str(val) for key, val in self.squares.items()}
        return out


def _as_rational(x):
    if isinstance(x, QuadSurd):
        return x.as_rational()
    return Fraction(x)


def _radius_sq(r):
    """``r^2`` as a Fraction when exact (QuadSurd r with rational square is allowed)."""
    if is_exact(r):
        r2 = r * r
        return _as_rational(r2)
    return None


def umbilical_sphere(n: int, m: int, c, H) -> PointData:
    """``H_1 = H I``, ``H_alpha = 0`` for ``alpha >= 2``. Exact for rational ``H`` and ``c``."""
    if n < 2 or m < 1:
        raise DomainError(f"need n >= 2 and m >= 1, got n={n}, m={m}")
    if H < 0:
        raise DomainError(f"H must be non-negative, got {H}")
    if is_exact(H) and is_exact(c):
        h2 = _as_rational(H * H)
        eye = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
        zero = [[Fraction(0)] * n for _ in range(n)]
        scales = [h2] + [Fraction(1)] * (m - 1)
        mats = [eye] + [zero] * (m - 1)
        return PointData.from_exact(n, m, _as_rational(c), mats, scales, label=f"umbilical n={n} H={H}")
    ops = np.zeros((m, n, n))
    ops[0] = float(H) * np.eye(n)
    return PointData(n, m, float(c), ops, label=f"umbilical n={n} H={H}")


def _diag_block(n, k, top, bottom):
    return [[(top if i < k else bottom) if i == j else Fraction(0) for j in range(n)] for i in range(n)]


def torus_hypersurface(n: int, k: int, r, allow_small=False) -> PointData:
    """The Einstein torus as a hypersurface of ``S^{n+1}(r)`` (``m = 1``, ambient ``c = 1/r^2``).

    ``H_1 = diag(a I_k, -b I_{n-k})`` with ``a^2 = (n-k-1)/((k-1) r^2)`` and
    ``b^2 = (k-1)/((n-k-1) r^2)``; the normal is oriented so ``a > 0``.
    """
    if not allow_small and n < 5:
        raise DomainError(f"n must be >= 5, got {n}")
    if n < 4 or not 2 <= k <= n // 2:
        raise DomainError(f"need 2 <= k <= floor(n/2), got n={n}, k={k}")
    if r <= 0:
        raise DomainError(f"r must be positive, got {r}")
    r2 = _radius_sq(r)
    if r2 is not None:
        # H_1 = sqrt(s) diag(I/(k-1), -I/(n-k-1)),  s = (k-1)(n-k-1)/r^2
        s = Fraction((k - 1) * (n - k - 1)) / r2
        mat = _diag_block(n, k, Fraction(1, k - 1), Fraction(-1, n - k - 1))
        return PointData.from_exact(n, 1, 1 / r2, [mat], [s], label=f"torus hypersurface n={n} k={k}")
    r = float(r)
    a = math.sqrt((n - k - 1) / ((k - 1) * r * r))
    b = math.sqrt((k - 1) / ((n - k - 1) * r * r))
    ops = np.diag([a] * k + [-b] * (n - k))[None]
    return PointData(n, 1, 1.0 / (r * r), ops, label=f"torus hypersurface n={n} k={k}")


def compose_umbilical(inner: PointData, r, c_outer, m_outer: int, rtol: float = 1e-12) -> PointData:
    """Push data from ``S^{n+p}(r)`` into ``F^{n+m_outer}(c_outer)`` through the umbilical sphere.

    Keeps the inner shape operators, appends ``H_u I`` with
    ``H_u = sqrt(1/r^2 - c_outer)``, and pads with zero operators up to
    ``m_outer``.
    """
    n = inner.n
    if m_outer < inner.m + 1:
        raise DomainError(f"m_outer must be >= {inner.m + 1}, got {m_outer}")
    if r <= 0:
        raise DomainError(f"r must be positive, got {r}")
    r2 = _radius_sq(r)
    exact = r2 is not None and is_exact(c_outer) and inner.is_exact
    if exact:
        c_outer = _as_rational(c_outer)
        if inner.exact.c != 1 / r2:
            raise CurvatureMismatch(f"inner ambient curvature {inner.exact.c} != 1/r^2 = {1 / r2}")
        hu2 = 1 / r2 - c_outer
        if hu2 < 0:
            raise DomainError(f"1/r^2 = {1 / r2} is below the outer curvature {c_outer}")
        eye = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
        zero = [[Fraction(0)] * n for _ in range(n)]
        mats = list(inner.exact.mats) + [eye] + [zero] * (m_outer - inner.m - 1)
        scales = list(inner.exact.sq_scales) + [hu2] + [Fraction(1)] * (m_outer - inner.m - 1)
        return PointData.from_exact(n, m_outer, c_outer, mats, scales, label=inner.label)
    r = float(r)
    c_outer = float(c_outer)
    cbar = 1.0 / (r * r)
    if abs(inner.c - cbar) > rtol * (1.0 + abs(cbar)):
        raise CurvatureMismatch(f"inner ambient curvature {inner.c!r} != 1/r^2 = {cbar!r}")
    hu2 = cbar - c_outer
    if hu2 < -rtol * (1.0 + abs(cbar)):
        raise DomainError(f"1/r^2 = {cbar!r} is below the outer curvature {c_outer!r}")
    ops = np.zeros((m_outer, n, n))
    ops[: inner.m] = inner.shape_ops
    ops[inner.m] = math.sqrt(max(hu2, 0.0)) * np.eye(n)
    return PointData(n, m_outer, c_outer, ops, label=inner.label)


def principal_values_closed_form(n: int, k: int, H, c):
    """``(lambda1, mu1)``: the k-block and (n-k)-block curvatures along the mean curvature direction.

    ``lambda1 = H + (n-2k) phi(k)(c+H^2)/(kH)``,
    ``mu1 = H - (n-2k) phi(k)(c+H^2)/((n-k)H)``. For ``n = 2k`` both equal ``H``
    (no division). Exact for exact ``H`` (Fraction or QuadSurd) and ``c``.
    """
    if not 2 <= k <= n // 2:
        raise DomainError(f"need 2 <= k <= floor(n/2), got n={n}, k={k}")
    if H < 0:
        raise DomainError(f"H must be non-negative, got {H}")
    if n == 2 * k:
        return H, H
    if H == 0:
        raise DomainError("the closed forms are singular at H = 0 unless n = 2k")
    exact = is_exact(H) and is_exact(c)
    f = phi(n, Fraction(k) if exact else float(k)).value
    h2 = _as_rational(H * H) if exact else float(H) ** 2
    cc = _as_rational(c) if exact else float(c)
    if cc + h2 <= 0:
        raise DomainError("need c + H^2 > 0")
    shift = (n - 2 * k) * f * (cc + h2)
    if not exact:
        H = float(H)
    return H + shift / (k * H), H - shift / ((n - k) * H)


def einstein_torus(n: int, k: int, r, c, m: int = 2, allow_small=False):
    """Einstein torus ``S^k(rho1) x S^{n-k}(rho2)`` in ``F^{n+m}(c)`` and its ground truth.

    Normal frame: ``xi_1`` the hypersurface normal inside ``S^{n+1}(r)``
    (oriented so the k-block curvature is positive), ``xi_2`` the umbilical
    normal of ``S^{n+1}(r)``, further normals totally geodesic. Exact when
    ``r^2`` and ``c`` are rational. The construction is checked against
    ``Ric = (n-2)/r^2`` and against the closed forms for ``(lambda1, mu1)``;
    a mismatch raises :class:`InternalInconsistency`.
    """
    if m < 2:
        raise DomainError(f"m must be >= 2, got {m}")
    if c < 0:
        raise DomainError(f"c must be non-negative, got {c}")
    inner = torus_hypersurface(n, k, r, allow_small=allow_small)
    P = compose_umbilical(inner, r, c, m)
    r2 = _radius_sq(r) if is_exact(c) else None
    if r2 is not None:
        c = _as_rational(c)
        sq = {
            "r2": r2,
            "c": c,
            "c_bar": 1 / r2,
            "H_u2": 1 / r2 - c,
            "a2": Fraction(n - k - 1, k - 1) / r2,
            "b2": Fraction(k - 1, n - k - 1) / r2,
            "H_g2": Fraction((n - 2 * k) ** 2, n * n * (k - 1) * (n - k - 1)) / r2,
            "rho1_2": Fraction(k - 1, n - 2) * r2,
            "rho2_2": Fraction(n - k - 1, n - 2) * r2,
            "ric_value": Fraction(n - 2) / r2,
        }
        sq["H2"] = sq["H_g2"] + sq["H_u2"]
        ric = ricci_tensor(P, exact=True)
        target = sq["ric_value"]
        if any(ric[i, j] != (target if i == j else 0) for i in range(n) for j in range(n)):
            raise InternalInconsistency("torus Ricci tensor is not (n-2)/r^2 times the identity")
        if mean_curvature_sq(P, exact=True) != sq["H2"]:
            raise InternalInconsistency("torus H^2 differs from H_g^2 + H_u^2")
        vals = {key: float(val) for key, val in sq.items()}
        a, b = math.sqrt(vals["a2"]), math.sqrt(vals["b2"])
        hg, hu = math.sqrt(vals["H_g2"]), math.sqrt(vals["H_u2"])
        rf, cf = math.sqrt(vals["r2"]), float(c)
    else:
        sq = None
        rf, cf = float(r), float(c)
        a = math.sqrt((n - k - 1) / ((k - 1) * rf * rf))
        b = math.sqrt((k - 1) / ((n - k - 1) * rf * rf))
        hg = (k * a - (n - k) * b) / n
        hu = math.sqrt(max(1.0 / (rf * rf) - cf, 0.0))
        ric = ricci_tensor(P)
        target = (n - 2) / (rf * rf)
        if np.abs(ric - target * np.eye(n)).max() > 1e-10 * (1.0 + abs(target)):
            raise InternalInconsistency("torus Ricci tensor is not (n-2)/r^2 times the identity")
    H = math.hypot(hg, hu)
    if H > 0:
        lambda1 = (a * hg + hu * hu) / H
        mu1 = (-b * hg + hu * hu) / H
    else:
        lambda1 = mu1 = 0.0
    if H > 0:
        lam_cf, mu_cf = principal_values_closed_form(n, k, H, cf)
        if max(abs(lam_cf - lambda1), abs(mu_cf - mu1)) > 1e-12 * (1.0 + abs(lambda1) + abs(mu1)):
            raise InternalInconsistency("mean-direction principal values differ from the closed forms")
    spec = ModelSpec(
        n=n,
        k=k,
        r=rf,
        c=cf,
        m=m,
        H_u=hu,
        c_bar=1.0 / (rf * rf),
        H_g=hg,
        H=H,
        lambda1=lambda1,
        mu1=mu1,
        rho1=math.sqrt((k - 1) / (n - 2)) * rf,
        rho2=math.sqrt((n - k - 1) / (n - 2)) * rf,
        a=a,
        b=b,
        ric_value=(n - 2) / (rf * rf),
        squares=sq,
    )
    label = f"einstein torus n={n} k={k} r={r} c={c}"
    P = PointData(P.n, P.m, P.c, P.shape_ops, P.exact, label)
    return P, spec


def clifford_minimal(k: int, r, c, m: int = 2):
    """Minimal Clifford hypersurface ``S^k(r/sqrt 2) x S^k(r/sqrt 2)`` pushed into ``F^{2k+m}(c)``.

    ``k = 2`` (n = 4) is allowed for tables; the pinching results need ``k >= 3``.
    """
    if k < 2:
        raise DomainError(f"k must be >= 2, got {k}")
    P, spec = einstein_torus(2 * k, k, r, c, m, allow_small=True)
    P = PointData(P.n, P.m, P.c, P.shape_ops, P.exact, f"clifford minimal k={k} r={r} c={c}")
    return P, spec


@dataclass(frozen=True, eq=False)
class SyntheticTruth:
    """Frames and block data behind an :func:`equality_case_synthetic` point."""

    k: int
    tangent: np.ndarray
    normal: np.ndarray
    lambdas: np.ndarray
    mus: np.ndarray

    @property
    def projector_lambda(self):
        e = self.tangent[:, : self.k]
        return e @ e.T

    @property
    def projector_mu(self):
        e = self.tangent[:, self.k:]
        return e @ e.T


def equality_case_synthetic(n, k, m, lambdas, mus, c, seed, noise=0.0, return_truth=False):
    """Random-frame data ``O . diag(lambda_alpha I_k, mu_alpha I_{n-k})`` conjugated by ``Q``.

    ``Q`` (tangent) and ``O`` (normal mixing) are seeded Haar draws. With
    ``noise > 0`` a symmetric perturbation with entries of that size is added.
    The true mixed coefficients are ``O lambdas`` and ``O mus``; the tangent
    frame's first ``k`` columns span the lambda block.
    """
    if n < 5 or not 2 <= k <= n // 2:
        raise DomainError(f"need n >= 5 and 2 <= k <= floor(n/2), got n={n}, k={k}")
    lambdas = np.asarray(lambdas, dtype=float)
    mus = np.asarray(mus, dtype=float)
    if lambdas.shape != (m,) or mus.shape != (m,):
        raise DimensionMismatch(f"lambdas and mus must have length m = {m}")
    Q = random_orthogonal(n, rngmod.stream(seed, _KEY_SYNTH_TANGENT))
    O = random_orthogonal(m, rngmod.stream(seed, _KEY_SYNTH_NORMAL))
    diag = np.zeros((m, n, n))
    idx = np.arange(n)
    diag[:, idx[:k], idx[:k]] = lambdas[:, None]
    diag[:, idx[k:], idx[k:]] = mus[:, None]
    ops = np.einsum("ab,bij->aij", O, np.einsum("ik,akl,jl->aij", Q, diag, Q))
    if noise:
        z = rngmod.stream(seed, _KEY_SYNTH_NOISE).standard_normal((m, n, n)) * noise
        ops = ops + 0.5 * (z + z.transpose(0, 2, 1))
    P = PointData(n, m, c, ops, label=f"synthetic equality n={n} k={k} seed={seed}")
    if return_truth:
        return P, SyntheticTruth(k, Q, O, O @ lambdas, O @ mus)
    return P
