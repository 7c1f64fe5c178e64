"""Pointwise rigidity analysis under Ricci pinching.

At a point satisfying ``Ric >= alpha(n, k, H, c)`` the vanishing condition
``Theta_k <= k(n-k)c`` holds; when it is attained, every shape operator takes
the block form ``diag(lambda_alpha I_k, mu_alpha I_{n-k})`` in one common
basis. This module checks the hypothesis, detects that block structure,
extracts the two principal normals, and combines everything into a
pointwise verdict.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from . import rng as rngmod
from ._linalg import max_commutator, normalize_signs
from .curvature import PointData, mean_curvature_sq, ricci_min, ricci_tensor
from .errors import ClassificationInconsistent, DomainError, InternalInconsistency, InvalidStructure
from .lawson_simons import OptimizerConfig, ThetaResult, Verdict, homology_verdict, pinching_tolerance
from .pinching import alpha

__all__ = [
    "BlockStructure",
    "PointVerdict",
    "Classification",
    "DETECT_TOL",
    "EINSTEIN_TOL",
    "check_pinching",
    "equality_case_detect",
    "principal_normals",
    "reconstruction_residual",
    "first_normal_rank",
    "normal_flatness",
    "classify_point",
]

DETECT_TOL = 1e-8
EINSTEIN_TOL = 1e-9
GAP_RATIO = 10.0
MAX_TRIES = 5

_KEY_DETECT = 3
_KEY_RECONSTRUCT = 4


class Classification(enum.Enum):
    STRICT_PINCHED_VANISHING = "STRICT_PINCHED_VANISHING"
    EQUALITY_TORUS_STRUCTURE = "EQUALITY_TORUS_STRUCTURE"
    NOT_PINCHED = "NOT_PINCHED"


@dataclass(frozen=True, eq=False)
class BlockStructure:
    """Simultaneous block-scalar form ``diag(lambda_alpha I_k, mu_alpha I_{n-k})``.

    ``basis`` is orthogonal; its first ``k`` columns span the lambda block.
    ``eta1``/``eta2`` are the principal normals written in the normal frame of
    the input (equal to ``lambdas``/``mus``). ``degenerate`` marks umbilical
    input, where every split works and ``k`` carries no information.
    """

    k: int
    basis: np.ndarray
    lambdas: np.ndarray
    mus: np.ndarray
    eta1: np.ndarray
    eta2: np.ndarray
    residual: float
    degenerate: bool = False

    @property
    def n(self) -> int:
        return self.basis.shape[0]

    @property
    def projector_lambda(self) -> np.ndarray:
        e = self.basis[:, : self.k]
        return e @ e.T

    @property
    def projector_mu(self) -> np.ndarray:
        e = self.basis[:, self.k:]
        return e @ e.T

    def as_dict(self):
        return {
            "k": self.k,
            "basis": self.basis.tolist(),
            "lambdas": self.lambdas.tolist(),
            "mus": self.mus.tolist(),
            "residual": self.residual,
            "degenerate": self.degenerate,
        }


@dataclass(frozen=True, eq=False)
class PointVerdict:
    k: int
    pinching_margin: float
    verdict: Classification
    structure: BlockStructure | None
    einstein_residual: float
    theta: ThetaResult | None = None
    tolerances: dict | None = None

    def as_dict(self):
        return {
            "k": self.k,
            "verdict": self.verdict.value,
            "pinching_margin": self.pinching_margin,
            "einstein_residual": self.einstein_residual,
            "structure": None if self.structure is None else self.structure.as_dict(),
            "theta": None if self.theta is None else self.theta.as_dict(),
            "tolerances": self.tolerances,
        }


def _check_nk(n, k):
    if n < 5 or not isinstance(k, (int, np.integer)) or not 2 <= k <= n // 2:
        raise DomainError(f"need n >= 5 and 2 <= k <= floor(n/2); got n={n}, k={k!r}")


def _alpha_at(P, k):
    return alpha(P.n, int(k), math.sqrt(mean_curvature_sq(P)), P.c)


def check_pinching(P: PointData, k: int) -> float:
    """Margin ``Ric_min - alpha(n, k, H, c)``.

    The hypothesis holds iff the margin is at least ``-pinching_tolerance(alpha)``.
    """
    _check_nk(P.n, k)
    return ricci_min(P)[0] - _alpha_at(P, k)


def _scale(ops):
    return 1.0 + float(np.abs(ops).max()) if ops.size else 1.0


def _split_index(evals, k):
    """Cluster boundary honoring sizes (k, n-k): returns (size, gap ratio)."""
    n = len(evals)
    gaps = np.diff(evals)
    allowed = sorted({k, n - k})
    best = max(allowed, key=lambda s: gaps[s - 1])
    inner = np.delete(gaps, best - 1)
    spread = float(inner.max()) if inner.size else 0.0
    ratio = gaps[best - 1] / spread if spread > 0 else math.inf
    return best, ratio


def _block(ops, basis, k):
    conj = np.einsum("ki,akl,lj->aij", basis, ops, basis)
    n = ops.shape[1]
    lambdas = np.trace(conj[:, :k, :k], axis1=1, axis2=2) / k
    mus = np.trace(conj[:, k:, k:], axis1=1, axis2=2) / (n - k)
    model = np.zeros_like(conj)
    idx = np.arange(n)
    model[:, idx[:k], idx[:k]] = lambdas[:, None]
    model[:, idx[k:], idx[k:]] = mus[:, None]
    return lambdas, mus, float(np.abs(conj - model).max())


def _orient_equal_blocks(first, second):
    """For n = 2k: the lambda block is the one weighing most on the lowest-index axis."""
    p1 = first @ first.T
    p2 = second @ second.T
    for i in range(p1.shape[0]):
        d = p1[i, i] - p2[i, i]
        if abs(d) > 1e-12:
            return (first, second) if d > 0 else (second, first)
    return first, second


def equality_case_detect(P: PointData, k: int, tol: float = DETECT_TOL, seed: int = 0):
    """Find one orthogonal basis putting every ``H_alpha`` into ``diag(lambda I_k, mu I_{n-k})``.

    Procedure: reject if some commutator exceeds ``tol * (1 + S)``;
    diagonalize a seeded generic combination ``sum w_alpha H_alpha``; split its
    sorted spectrum at the gap giving cluster sizes ``k`` and ``n-k`` (new
    weights, up to five draws, while the chosen gap is less than ten times
    every other gap); accept if the conjugated operators are block-scalar to
    ``tol * (1 + max|h|)``. Returns None on failure. Umbilical input returns
    a structure with ``degenerate=True``.
    """
    n, ops = P.n, P.shape_ops
    if not isinstance(k, (int, np.integer)) or not 1 <= k <= n // 2:
        raise DomainError(f"k must be in [1, {n // 2}], got {k!r}")
    k = int(k)
    S = float(np.sum(ops * ops))
    bound = tol * _scale(ops)
    if max_commutator(ops) > tol * (1.0 + S):
        return None

    cvec = np.trace(ops, axis1=1, axis2=2) / n
    if float(np.abs(ops - cvec[:, None, None] * np.eye(n)).max()) <= bound:
        basis = np.eye(n)
        lambdas, mus, residual = _block(ops, basis, k)
        return BlockStructure(k, basis, lambdas, mus, lambdas.copy(), mus.copy(), residual, True)

    best = None
    for attempt in range(MAX_TRIES):
        w = rngmod.stream(seed, _KEY_DETECT, attempt).standard_normal(P.m)
        w /= np.linalg.norm(w)
        evals, evecs = np.linalg.eigh(np.einsum("a,aij->ij", w, ops))
        size, ratio = _split_index(evals, k)
        if best is None or ratio > best[0]:
            best = (ratio, size, evecs)
        if ratio >= GAP_RATIO:
            break
    _, size, evecs = best
    low, high = evecs[:, :size], evecs[:, size:]
    if size == k and n - k != k:
        first, second = low, high
    elif size != k:
        first, second = high, low
    else:
        first, second = _orient_equal_blocks(low, high)
    basis = np.hstack([normalize_signs(first), normalize_signs(second)])
    lambdas, mus, residual = _block(ops, basis, k)
    if residual > bound:
        return None
    return BlockStructure(k, basis, lambdas, mus, lambdas.copy(), mus.copy(), residual, False)


def reconstruction_residual(P: PointData, s: BlockStructure, samples: int = 100, seed: int = 0) -> float:
    """Largest ``|II(X, Y) - <X1, Y1> eta1 - <X2, Y2> eta2|`` over random unit ``X, Y``.

    ``X1, X2`` are the components of ``X`` in the two blocks of ``s``.
    """
    g = rngmod.stream(seed, _KEY_RECONSTRUCT)
    X = g.standard_normal((samples, P.n))
    Y = g.standard_normal((samples, P.n))
    X /= np.linalg.norm(X, axis=1, keepdims=True)
    Y /= np.linalg.norm(Y, axis=1, keepdims=True)
    direct = np.einsum("si,aij,sj->sa", X, P.shape_ops, Y)
    xb, yb = X @ s.basis, Y @ s.basis
    inner1 = np.sum(xb[:, : s.k] * yb[:, : s.k], axis=1)
    inner2 = np.sum(xb[:, s.k:] * yb[:, s.k:], axis=1)
    model = inner1[:, None] * s.eta1[None] + inner2[:, None] * s.eta2[None]
    return float(np.abs(direct - model).max())


def principal_normals(P: PointData, s: BlockStructure, tol: float = DETECT_TOL):
    """Principal normals ``(eta1, eta2, distinct)`` of a detected structure.

    The bilinear reconstruction ``II(X, Y) = <X1, Y1> eta1 + <X2, Y2> eta2`` is
    checked on random vectors; a residual above ``tol * (1 + max|h|)`` raises
    :class:`InvalidStructure`.
    """
    n = P.n
    basis = np.asarray(s.basis, dtype=float)
    if basis.shape != (n, n) or len(s.eta1) != P.m or len(s.eta2) != P.m:
        raise InvalidStructure("structure dimensions do not match the point")
    if not 1 <= s.k <= n - 1 or np.abs(basis.T @ basis - np.eye(n)).max() > 1e-10:
        raise InvalidStructure("structure basis is not orthogonal or k is out of range")
    bound = tol * _scale(P.shape_ops)
    res = reconstruction_residual(P, s)
    if res > bound:
        raise InvalidStructure(f"bilinear reconstruction residual {res:.3e} exceeds {bound:.3e}")
    distinct = float(np.linalg.norm(s.eta1 - s.eta2)) > bound
    return s.eta1.copy(), s.eta2.copy(), distinct


def first_normal_rank(P: PointData, tol: float = 1e-10) -> int:
    """Dimension of the first normal space ``span{II(X, Y)}``.

    Numerical rank of the m x n(n+1)/2 matrix of half-vectorized shape
    operators (off-diagonal entries weighted by sqrt(2), so row inner products
    are Frobenius inner products).
    """
    n = P.n
    iu = np.triu_indices(n)
    weights = np.where(iu[0] == iu[1], 1.0, math.sqrt(2.0))
    rows = P.shape_ops[:, iu[0], iu[1]] * weights
    sv = np.linalg.svd(rows, compute_uv=False)
    if sv.size == 0 or sv[0] == 0.0:
        return 0
    return int(np.sum(sv > tol * sv[0]))


def normal_flatness(P: PointData, tol: float = 1e-10) -> bool:
    """True iff every commutator ``[H_alpha, H_beta]`` is below ``tol * (1 + S)``."""
    S = float(np.sum(P.shape_ops * P.shape_ops))
    return max_commutator(P.shape_ops) <= tol * (1.0 + S)


def classify_point(
    P: PointData,
    k: int,
    cfg: OptimizerConfig | None = None,
    detect_tol: float = DETECT_TOL,
    einstein_tol: float = EINSTEIN_TOL,
    key=(),
) -> PointVerdict:
    """Pointwise verdict under the Ricci pinching hypothesis at ``k``.

    NOT_PINCHED when the margin is below ``-pinching_tolerance``. Otherwise
    ``Theta_k`` is maximized: STRICT gives STRICT_PINCHED_VANISHING; EQUALITY
    requires the block structure and ``Ric = alpha * I`` within
    ``einstein_tol * (1 + |alpha|)`` and gives EQUALITY_TORUS_STRUCTURE. A
    failed detection raises :class:`ClassificationInconsistent`; a violated
    vanishing condition at a pinched point raises
    :class:`InternalInconsistency`. ``key`` prefixes the optimizer's random
    streams (batch runners pass the point index).
    """
    _check_nk(P.n, k)
    k = int(k)
    a = _alpha_at(P, k)
    ric = ricci_tensor(P)
    margin = float(np.linalg.eigvalsh(ric)[0]) - a
    ein = float(np.abs(ric - a * np.eye(P.n)).max())
    tols = {
        "pinching": pinching_tolerance(a),
        "detect": detect_tol,
        "einstein": einstein_tol * (1.0 + abs(a)),
    }
    if margin < -tols["pinching"]:
        return PointVerdict(k, margin, Classification.NOT_PINCHED, None, ein, None, tols)
    theta = homology_verdict(P, k, cfg, key)
    tols["equality"] = theta.tolerance
    if theta.verdict is Verdict.STRICT:
        return PointVerdict(k, margin, Classification.STRICT_PINCHED_VANISHING, None, ein, theta, tols)
    if theta.verdict is Verdict.VIOLATED:
        raise InternalInconsistency(
            f"pinched point (margin {margin:.3e}) has Theta_{k} = {theta.value!r} "
            f"above {theta.threshold!r}"
        )
    seed = cfg.seed if cfg is not None else 0
    structure = equality_case_detect(P, k, detect_tol, seed=seed)
    if structure is None:
        raise ClassificationInconsistent(
            f"Theta_{k} attains its bound but no block structure was detected at tol {detect_tol}"
        )
    if ein > tols["einstein"]:
        raise ClassificationInconsistent(
            f"block structure found but max |Ric - alpha I| = {ein:.3e} exceeds {tols['einstein']:.3e}"
        )
    return PointVerdict(k, margin, Classification.EQUALITY_TORUS_STRUCTURE, structure, ein, theta, tols)
