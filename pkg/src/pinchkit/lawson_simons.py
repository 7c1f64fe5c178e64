"""The Lawson-Simons functional and its maximization over q-planes.

For an orthonormal tangent basis whose first ``q`` vectors span ``V``::

    Theta_q = sum_{i<=q<j} ( 2 |II(e_i, e_j)|^2 - <II(e_i, e_i), II(e_j, e_j)> )

depends only on ``V``. Homology vanishing needs ``Theta_q <= q(n-q)c`` for
every basis, so the verdict needs the maximum over the Grassmannian
``Gr(q, n)``. The maximizer here is a batched multistart Riemannian ascent; it
returns a certified lower bound for the maximum and marks the result
``global_certified`` only when a separate argument shows nothing larger
exists (see :func:`maximize_theta`).
"""

from __future__ import annotations

import enum
import itertools
import math
from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import brentq

from . import rng as rngmod
from ._linalg import complete_basis, is_orthonormal, max_commutator, sym_eigh
from .curvature import PointData, mean_curvature_sq, ricci_min, ricci_tensor
from .errors import DimensionMismatch, DomainError, HypothesisNotMet, InternalInconsistency, NotAProjection
from .pinching import alpha, alpha_coefficient, phi

__all__ = [
    "Verdict",
    "SubspaceSplit",
    "OptimizerConfig",
    "ThetaResult",
    "ChainRecord",
    "equality_tolerance",
    "pinching_tolerance",
    "theta_q_basis",
    "theta_q_subspace",
    "maximize_theta",
    "maximize_theta_many",
    "homology_verdict",
    "verify_lemma_chain",
    "random_pinched_point",
]

_KEY_RANDOM_START = 1
_KEY_GENERIC_WEIGHTS = 2
_MAX_STEP = 1.0


class Verdict(enum.Enum):
    STRICT = "STRICT"
    EQUALITY = "EQUALITY"
    VIOLATED = "VIOLATED"


def equality_tolerance(threshold):
    return 1e-8 * (1.0 + abs(threshold))


def pinching_tolerance(alpha_value):
    return 1e-9 * (1.0 + abs(alpha_value))


@dataclass(frozen=True, eq=False)
class SubspaceSplit:
    """Orthogonal basis whose first ``q`` columns span the plane V."""

    q: int
    basis: np.ndarray

    def __post_init__(self):
        b = np.array(self.basis, dtype=float)
        if b.ndim != 2 or b.shape[0] != b.shape[1]:
            raise DimensionMismatch(f"basis must be square, got shape {b.shape}")
        if not 1 <= self.q <= b.shape[0] - 1:
            raise DomainError(f"q must lie in [1, n-1], got {self.q}")
        if not is_orthonormal(b, 1e-10):
            raise DomainError("split basis is not orthonormal to 1e-10")
        b.setflags(write=False)
        object.__setattr__(self, "basis", b)

    @property
    def n(self):
        return self.basis.shape[0]

    @property
    def projector(self):
        u = self.basis[:, : self.q]
        return u @ u.T

    @classmethod
    def from_columns(cls, u):
        u = np.asarray(u, dtype=float)
        return cls(u.shape[1], complete_basis(u))


@dataclass(frozen=True)
class OptimizerConfig:
    """Settings for the multistart Grassmannian ascent.

    ``starts`` random starts are added to every coordinate-subset start (in the
    input frame and in the eigenframe of a generic combination of the shape
    operators) as long as ``C(n, q) <= subset_limit``.
    """

    starts: int = 32
    seed: int = 0
    max_iters: int = 500
    tol: float = 1e-10
    subset_limit: int = 10_000
    armijo: float = 1e-4
    backtrack: float = 0.5
    max_backtracks: int = 40


@dataclass(frozen=True, eq=False)
class ThetaResult:
    value: float
    split: SubspaceSplit
    threshold: float
    verdict: Verdict
    tolerance: float
    global_certified: bool
    commuting: bool = False
    n_starts: int = 0
    best_start: int = 0
    certificate: str = ""

    def as_dict(self):
        return {
            "value": self.value,
            "threshold": self.threshold,
            "verdict": self.verdict.value,
            "tolerance": self.tolerance,
            "global_certified": self.global_certified,
            "certificate": self.certificate,
            "commuting": self.commuting,
            "n_starts": self.n_starts,
            "best_start": self.best_start,
            "q": self.split.q,
            "plane": self.split.basis[:, : self.split.q].tolist(),
        }


@dataclass(frozen=True)
class ChainRecord:
    """Intermediate values of the two estimates for Theta_q and their combination.

    ``slacks`` holds right-minus-left for each inequality and must be
    non-negative (up to round-off) whenever ``hypothesis_holds``; ``residuals``
    holds the defects of the steps that are identities.
    """

    n: int
    k: int
    q: int
    theta: float
    threshold: float
    pinching_margin: float
    hypothesis_holds: bool
    lines: dict = field(default_factory=dict)
    slacks: dict = field(default_factory=dict)
    residuals: dict = field(default_factory=dict)

    @property
    def min_slack(self):
        return min(self.slacks.values())


# -- objective ---------------------------------------------------------------


def _check_dims(P, n):
    if n != P.n:
        raise DimensionMismatch(f"split has dimension {n} but the point has n = {P.n}")


def theta_q_basis(P: PointData, split: SubspaceSplit) -> float:
    """Theta_q in the frame given by the split's basis columns."""
    _check_dims(P, split.n)
    q, b = split.q, split.basis
    ht = np.einsum("ki,akl,lj->aij", b, P.shape_ops, b)
    off = ht[:, :q, q:]
    inner = np.trace(ht[:, :q, :q], axis1=1, axis2=2)
    outer = np.trace(ht[:, q:, q:], axis1=1, axis2=2)
    return float(2.0 * np.sum(off * off) - np.dot(inner, outer))


def theta_q_subspace(P: PointData, V) -> float:
    """Basis-free Theta_q for the plane with orthogonal projector ``V``.

    ``sum_alpha 2 ||(I-V) H V||_F^2 - tr(V H) tr((I-V) H)``.
    """
    V = np.asarray(V, dtype=float)
    if V.shape != (P.n, P.n):
        raise DimensionMismatch(f"projector has shape {V.shape}, expected ({P.n}, {P.n})")
    if np.abs(V - V.T).max() > 1e-9 or np.abs(V @ V - V).max() > 1e-9:
        raise NotAProjection("V is not an orthogonal projection to 1e-9")
    rank = np.trace(V)
    q = int(round(rank))
    if abs(rank - q) > 1e-9 or not 1 <= q <= P.n - 1:
        raise NotAProjection(f"projection rank {rank} is not an integer in [1, n-1]")
    W = np.eye(P.n) - V
    total = 0.0
    for h in P.shape_ops:
        cross = W @ h @ V
        total += 2.0 * np.sum(cross * cross) - np.trace(V @ h) * np.trace(W @ h)
    return float(total)


class _Objective:
    """Batched Theta_q with Riemannian gradient and Hessian on ``Gr(q, n)``.

    ``ops`` has shape (R, m, n, n): one operator family per start, so starts
    from different points can share a batch (zero-padded families are fine,
    a zero operator contributes nothing). Methods take the indices of the
    starts they evaluate.

    Planes are handled through full orthogonal frames ``Q = [U, U_perp]``.
    With ``Q^T H_alpha Q = [[M, B^T], [B, C]]``, tangent vectors are
    ``U_perp X`` for ``X`` of shape (n-q, q), and gradient and Hessian are
    returned in these coordinates (``X`` flattened row-major).
    """

    def __init__(self, ops):
        self.ops = ops
        self.tr = np.trace(ops, axis1=2, axis2=3)

    def value(self, U, idx):
        HU = self.ops[idx] @ U[:, None]  # (r, m, n, q)
        UHU = np.swapaxes(U, 1, 2)[:, None] @ HU  # (r, m, q, q)
        T = np.trace(UHU, axis1=2, axis2=3)
        cross = np.sum(HU * HU, axis=(1, 2, 3)) - np.sum(UHU * UHU, axis=(1, 2, 3))
        return 2.0 * cross - np.sum(T * (self.tr[idx] - T), axis=1)

    def model(self, Q, q, idx):
        r, n, _ = Q.shape
        p = n - q
        tr = self.tr[idx]
        A = np.swapaxes(Q, 1, 2)[:, None] @ self.ops[idx] @ Q[:, None]  # (r, m, n, n)
        K = np.sum(A @ A, axis=1)
        M, B, C = A[..., :q, :q], A[..., q:, :q], A[..., q:, q:]
        T = np.trace(M, axis1=2, axis2=3)
        w = tr - 2.0 * T
        f = 2.0 * np.sum(B * B, axis=(1, 2, 3)) - np.sum(T * (tr - T), axis=1)
        g = 4.0 * K[:, q:, :q] - 8.0 * np.sum(B @ M, axis=1) - 2.0 * np.einsum("ra,raij->rij", w, B)
        N = 4.0 * K[:, :q, :q] - 8.0 * np.sum(M @ M, axis=1) - 2.0 * np.einsum("ra,raij->rij", w, M)
        BBt = np.sum(B @ np.swapaxes(B, 2, 3), axis=1)
        lin = 4.0 * K[:, q:, q:] - 8.0 * BBt - 2.0 * np.einsum("ra,rail->ril", w, C)
        # entry [(i, j), (l, k)] is d g_ij / d X_lk
        hess = np.einsum("ril,jk->rijlk", lin, np.eye(q))
        hess -= np.einsum("il,rkj->rijlk", np.eye(p), N)
        hess -= 8.0 * np.einsum("rail,rajk->rijlk", C, M)
        hess -= 8.0 * np.einsum("raik,ralj->rijlk", B, B)
        hess += 8.0 * np.einsum("raij,ralk->rijlk", B, B)
        d = p * q
        hess = hess.reshape(r, d, d)
        return f, g.reshape(r, d), 0.5 * (hess + np.swapaxes(hess, 1, 2))


def _retract(X):
    Q, _ = np.linalg.qr(X)
    return Q


def _frames(U):
    """Complete orthogonal frames whose first q columns span the columns of ``U``."""
    return np.linalg.qr(U, mode="complete")[0]


def _ascend(obj, U, cfg, scale):
    """Independent monotone ascents for every start in the stack ``U``.

    Each step is a saddle-free Newton step: the Hessian's eigenvalues are
    replaced by ``-max(|lambda|, 1e-10 * scale)``, which gives an ascent
    direction everywhere and the Newton step near a nondegenerate maximum.
    Steps longer than ``_MAX_STEP`` are shortened, and Armijo backtracking
    starts at the full step. A start stops when its gradient norm falls below
    ``cfg.tol * scale``, when a line search fails, or when an accepted step
    improves the value by less than round-off. ``scale`` is per start.
    """
    r, n, q = U.shape
    p = n - q
    scale = np.broadcast_to(np.asarray(scale, dtype=float), (r,))
    Q = _frames(U)
    f = obj.value(U, np.arange(r))
    active = np.ones(r, dtype=bool)
    for _ in range(cfg.max_iters):
        idx = np.flatnonzero(active)
        if idx.size == 0:
            break
        fa, g, hess = obj.model(Q[idx], q, idx)
        conv = np.linalg.norm(g, axis=1) < cfg.tol * scale[idx]
        active[idx[conv]] = False
        idx, fa, g, hess = idx[~conv], fa[~conv], g[~conv], hess[~conv]
        if idx.size == 0:
            break
        lam, V = np.linalg.eigh(hess)
        mag = np.maximum(np.abs(lam), 1e-10 * scale[idx, None])
        x = (V @ ((np.swapaxes(V, 1, 2) @ g[..., None])[..., 0] / mag)[..., None])[..., 0]
        x *= np.minimum(1.0, _MAX_STEP / np.maximum(np.linalg.norm(x, axis=1), 1e-300))[:, None]
        slope = np.sum(x * g, axis=1)
        Ua = Q[idx, :, :q]
        X = Q[idx, :, q:] @ x.reshape(-1, p, q)
        t = np.ones(idx.size)
        pending = np.ones(idx.size, dtype=bool)
        for _ in range(cfg.max_backtracks):
            pp = np.flatnonzero(pending)
            if pp.size == 0:
                break
            trial = _frames(Ua[pp] + t[pp, None, None] * X[pp])
            ft = obj.value(trial[..., :q], idx[pp])
            ok = (ft >= fa[pp] + cfg.armijo * t[pp] * slope[pp]) & (ft > fa[pp])
            gain = ft[ok] - fa[pp[ok]]
            moved = idx[pp[ok]]
            Q[moved] = trial[ok]
            f[moved] = ft[ok]
            active[moved[gain <= 1e-14 * (1.0 + np.abs(ft[ok]))]] = False
            pending[pp[ok]] = False
            t[pp[~ok]] *= cfg.backtrack
        active[idx[pending]] = False
    return Q[..., :q].copy(), f


def _coordinate_starts(bases, n, q):
    starts = []
    for b in bases:
        for subset in itertools.combinations(range(n), q):
            starts.append(b[:, subset])
    return starts


def _is_umbilical_family(ops, tol):
    n = ops.shape[1]
    scalar = np.trace(ops, axis1=1, axis2=2) / n
    dev = ops - scalar[:, None, None] * np.eye(n)[None]
    return float(np.abs(dev).max()) <= tol * (1.0 + float(np.abs(ops).max()))


def _pinching_certificate(P, q):
    """Return k if the point is pinched at k = max(q', 2) with q' = min(q, n-q)."""
    qq = min(q, P.n - q)
    k = max(qq, 2)
    if P.n < 5 or k > P.n // 2:
        return None
    a = alpha(P.n, k, math.sqrt(mean_curvature_sq(P)), P.c)
    margin = ricci_min(P)[0] - a
    return k if margin >= -pinching_tolerance(a) else None


def _classify(value, threshold):
    tol = equality_tolerance(threshold)
    if value < threshold - tol:
        return Verdict.STRICT, tol
    if value <= threshold + tol:
        return Verdict.EQUALITY, tol
    return Verdict.VIOLATED, tol


def maximize_theta(P: PointData, q: int, cfg: OptimizerConfig | None = None, key=()) -> ThetaResult:
    """Largest Theta_q found over ``Gr(q, n)`` by multistart Riemannian ascent.

    Starts: every coordinate q-subset of the input frame and of the eigenframe
    of a seeded generic combination ``sum w_alpha H_alpha`` (a common
    eigenframe when the family commutes), followed by ``cfg.starts`` random
    planes. Each start climbs independently by damped Newton steps until the
    Riemannian gradient norm drops below ``cfg.tol * (1 + S)``, progress
    stalls at round-off, or ``cfg.max_iters`` is reached. The best plane wins,
    ties going to the lowest start index. Random streams are keyed by ``key``
    followed by the start index, so batch runners can give every point its
    own streams.

    The value is always attained by the returned plane, hence a lower bound
    for the maximum. ``global_certified`` is set only when an upper bound
    matches it: the objective is constant (all shape operators are multiples
    of the identity), or the point satisfies the Ricci pinching hypothesis
    with ``k >= q`` so that ``q(n-q)c`` bounds every plane and the optimum
    reaches it. Commuting families are *not* certified by subset search
    alone: coordinate planes of a common eigenframe are generally not
    maximal.
    """
    cfg = cfg or OptimizerConfig()
    U0 = _starts(P, q, cfg, tuple(key))
    S = float(np.sum(P.shape_ops * P.shape_ops))
    ops = np.broadcast_to(P.shape_ops, (len(U0),) + P.shape_ops.shape)
    U, f = _ascend(_Objective(ops), U0, cfg, 1.0 + S)
    return _finish(P, q, U, f)


def maximize_theta_many(points, q: int, cfg: OptimizerConfig | None = None, keys=None) -> list:
    """:func:`maximize_theta` for many points of one dimension in a single batch.

    Every start climbs exactly as it would alone; batching only amortizes
    per-iteration overhead. ``keys[i]`` is the stream key prefix of
    ``points[i]`` (default ``(i,)``).
    """
    points = list(points)
    if not points:
        return []
    cfg = cfg or OptimizerConfig()
    n = points[0].n
    if any(P.n != n for P in points):
        raise DimensionMismatch("maximize_theta_many needs points of a single dimension n")
    keys = [(i,) for i in range(len(points))] if keys is None else [tuple(k) for k in keys]
    m = max(P.m for P in points)
    starts, owner, scale = [], [], []
    for i, (P, key) in enumerate(zip(points, keys)):
        U0 = _starts(P, q, cfg, key)
        starts.append(U0)
        owner += [i] * len(U0)
        scale += [1.0 + float(np.sum(P.shape_ops * P.shape_ops))] * len(U0)
    padded = np.zeros((len(points), m, n, n))
    for i, P in enumerate(points):
        padded[i, : P.m] = P.shape_ops
    owner = np.array(owner)
    U, f = _ascend(_Objective(padded[owner]), np.concatenate(starts), cfg, np.array(scale))
    results = []
    for i, P in enumerate(points):
        sel = owner == i
        results.append(_finish(P, q, U[sel], f[sel]))
    return results


def _starts(P, q, cfg, key):
    n = P.n
    if not isinstance(q, (int, np.integer)) or not 1 <= q <= n - 1:
        raise DomainError(f"q must be an integer in [1, {n - 1}], got {q!r}")
    bases = [np.eye(n)]
    w = rngmod.stream(cfg.seed, *key, _KEY_GENERIC_WEIGHTS).standard_normal(P.m)
    w /= np.linalg.norm(w)
    _, eigframe = sym_eigh(np.einsum("a,aij->ij", w, P.shape_ops))
    if not np.allclose(np.abs(eigframe), np.eye(n), atol=1e-12):
        bases.append(eigframe)
    starts = _coordinate_starts(bases, n, q) if math.comb(n, q) <= cfg.subset_limit else []
    for i in range(cfg.starts):
        g = rngmod.stream(cfg.seed, *key, _KEY_RANDOM_START, i)
        starts.append(_retract(g.standard_normal((n, q))))
    return np.array(starts)


def _finish(P, q, U, f):
    n, ops = P.n, P.shape_ops
    threshold = q * (n - q) * P.c
    S = float(np.sum(ops * ops))
    best = int(np.argmax(f))  # first index among ties
    split = SubspaceSplit.from_columns(_retract(U[best]))
    value = theta_q_basis(P, split)
    verdict, tol = _classify(value, threshold)

    certificate = ""
    if _is_umbilical_family(ops, 1e-12):
        certificate = "constant objective"
    elif verdict is Verdict.EQUALITY and _pinching_certificate(P, q) is not None:
        certificate = "pinching upper bound attained"
    elif verdict is Verdict.VIOLATED:
        certificate = "witness plane exceeds threshold"
    return ThetaResult(
        value=value,
        split=split,
        threshold=threshold,
        verdict=verdict,
        tolerance=tol,
        global_certified=certificate in ("constant objective", "pinching upper bound attained"),
        commuting=max_commutator(ops) <= 1e-10 * (1.0 + S),
        n_starts=len(U),
        best_start=best,
        certificate=certificate,
    )


def homology_verdict(P: PointData, q: int, cfg: OptimizerConfig | None = None, key=()) -> ThetaResult:
    """Compare ``max Theta_q`` with ``q(n-q)c``.

    STRICT below ``threshold - tol``, EQUALITY within ``tol = 1e-8 (1 + |threshold|)``,
    VIOLATED above. A VIOLATED verdict is always backed by its witness plane;
    STRICT and EQUALITY are as reliable as the maximization, which is flagged
    by ``global_certified``.
    """
    return maximize_theta(P, q, cfg, key)


# -- the two estimates and their combination ---------------------------------


def verify_lemma_chain(P: PointData, k: int, q: int, split: SubspaceSplit, strict=True) -> ChainRecord:
    """Evaluate both upper estimates of Theta_q in the frame ``split`` and combine them.

    Requires ``n >= 5`` and ``2 <= q <= k <= floor(n/2)``. If the point fails the
    pinching hypothesis ``Ric >= alpha(n, k, H, c)`` the record is still built
    but :class:`HypothesisNotMet` is raised (carrying it) unless ``strict`` is False.
    """
    n = P.n
    if n < 5:
        raise DomainError(f"the chain needs n >= 5, got {n}")
    if not (2 <= q <= k <= n // 2):
        raise DomainError(f"need 2 <= q <= k <= floor(n/2); got q={q}, k={k}, n={n}")
    _check_dims(P, split.n)
    if split.q != q:
        raise DimensionMismatch(f"split has q = {split.q}, expected {q}")

    c = P.c
    b = split.basis
    ht = np.einsum("ki,akl,lj->aij", b, P.shape_ops, b)
    cvec = np.trace(ht, axis1=1, axis2=2) / n
    H2 = float(np.dot(cvec, cvec))
    S = float(np.sum(ht * ht))
    diag = np.diagonal(ht, axis1=1, axis2=2)  # (m, n)
    A = diag[:, :q].sum(axis=1)  # sum_{i<=q} h_ii
    B = diag[:, q:].sum(axis=1)
    off = float(np.sum(ht[:, :q, q:] ** 2))  # sum_{i<=q<j} h_ij^2
    diag_in_sq = diag[:, :q] ** 2
    diag_out_sq = diag[:, q:] ** 2

    ric = ricci_tensor(P.with_ops(ht))
    ric_diag = np.diag(ric)
    ric_min = ricci_min(P)[0]
    a_val = alpha(n, k, math.sqrt(H2), c)
    margin = ric_min - a_val
    holds = margin >= -pinching_tolerance(a_val)
    dev = float(np.sum(cvec * (A - q * cvec)))  # sum_alpha sum_{i<=q} c_alpha (h_ii - c_alpha)
    base = (n - 1) * (c + H2) - ric_min

    theta = 2 * off - float(np.dot(A, B))
    # first estimate
    s1_expand = float(np.sum(2 * np.sum(ht[:, :q, q:] ** 2, axis=(1, 2)) - A * (n * cvec - A)))
    s1_cauchy = float(np.sum(2 * np.sum(ht[:, :q, q:] ** 2, axis=(1, 2)) - n * cvec * A + q * diag_in_sq.sum(axis=1)))
    s1_ricci = q * float(np.sum((n - 1) * c - ric_diag[:q])) + n * (q - 1) * float(np.dot(cvec, A))
    s1_ricmin = q * q * base - q * (n - q) * H2 + n * (q - 1) * dev
    # second estimate
    s2_expand = float(np.sum(
        2 * np.sum(ht[:, :q, q:] ** 2, axis=(1, 2))
        - (n - q) / n * A * (n * cvec - A)
        - q / n * B * (n * cvec - B)
    ))
    s2_cauchy = float(np.sum(
        2 * np.sum(ht[:, :q, q:] ** 2, axis=(1, 2))
        - (n - q) * cvec * A + q * (n - q) / n * diag_in_sq.sum(axis=1)
        - q * cvec * B + q * (n - q) / n * diag_out_sq.sum(axis=1)
    ))
    s2_sff = q * (n - q) / n * S - float(np.sum(q * n * cvec ** 2 + (n - 2 * q) * cvec * A))
    s2_ricmin = q * (n - q) * base - q * (n - q) * H2 - (n - 2 * q) * dev
    # convex combination
    w1 = (n - 2 * q) / (q * (n - 2))
    w2 = n * (q - 1) / (q * (n - 2))
    combination = w1 * s1_ricmin + w2 * s2_ricmin
    Qq = q * (n - 2 * q) + n * (q - 1) * (n - q)
    combined = Qq / (n - 2) * base - q * (n - q) * H2
    phik = float(phi(n, k).value)
    pinched = Qq * phik * (c + H2) - q * (n - q) * H2
    threshold = q * (n - q) * c

    lines = {
        "theta": theta,
        "s1_expand": s1_expand,
        "s1_cauchy": s1_cauchy,
        "s1_ricci": s1_ricci,
        "s1_ricmin": s1_ricmin,
        "s2_expand": s2_expand,
        "s2_cauchy": s2_cauchy,
        "s2_sff": s2_sff,
        "s2_ricmin": s2_ricmin,
        "combination": combination,
        "combined": combined,
        "pinched": pinched,
        "threshold": threshold,
    }
    slacks = {
        "s1_cauchy": s1_cauchy - s1_expand,
        "s1_ricci": s1_ricci - s1_cauchy,
        "s1_ricmin": s1_ricmin - s1_ricci,
        "s2_cauchy": s2_cauchy - s2_expand,
        "s2_sff": s2_sff - s2_cauchy,
        "s2_ricmin": s2_ricmin - s2_sff,
        "combination": combination - theta,
        "pinched": pinched - combined,
        "monotone": threshold - pinched,
        "final": threshold - theta,
    }
    residuals = {
        "s1_expand": s1_expand - theta,
        "s2_expand": s2_expand - theta,
        "combined": combined - combination,
    }
    record = ChainRecord(n, k, q, theta, threshold, margin, bool(holds), lines, slacks, residuals)
    if not holds:
        if strict:
            raise HypothesisNotMet(
                f"Ric_min - alpha = {margin:.3e} < 0 at the point (k = {k})", record
            )
        return record
    scale = 1.0 + abs(threshold) + S + n * n * H2
    if slacks["final"] < -1e-9 * scale:
        raise InternalInconsistency(
            f"pinched point violates Theta_q <= q(n-q)c: slack {slacks['final']:.3e}"
        )
    return record


# -- random pinched instances ------------------------------------------------


def random_pinched_point(n, m, c, k, rng, margin=0.05, scale=0.5, t_max=10.0, max_tries=100):
    """Random point satisfying ``Ric_min = alpha(n, k, H, c) + margin``.

    Shape operators get i.i.d. normal entries (std ``scale``), are symmetrized,
    and the first one is shifted by ``t * I``; ``t`` in ``[0, t_max]`` solves the
    margin equation by Brent's method. Draws without a sign change on that
    interval are rejected and redrawn.
    """
    if n < 5 or not 2 <= k <= n // 2:
        raise DomainError(f"need n >= 5 and 2 <= k <= floor(n/2); got n={n}, k={k}")
    eye = np.eye(n)
    coeff = float(alpha_coefficient(n, k))
    for _ in range(max_tries):
        raw = rng.standard_normal((m, n, n)) * scale
        ops = 0.5 * (raw + raw.transpose(0, 2, 1))

        base = PointData(n, m, c, ops)
        ric0, h2_0 = ricci_tensor(base), mean_curvature_sq(base)
        h0, tr0 = ops[0], float(np.trace(ops[0]))

        # H_1 -> H_1 + tI adds t(n-2)H_1 + (t tr H_1 + (n-1)t^2) I to Ric.
        def excess(t):
            ric = ric0 + t * (n - 2) * h0 + (t * tr0 + (n - 1) * t * t) * eye
            h2 = h2_0 + 2 * t * tr0 / n + t * t
            return float(np.linalg.eigvalsh(ric)[0]) - coeff * (c + h2) - margin

        lo, hi = excess(0.0), excess(t_max)
        if lo < 0.0 < hi:
            t = brentq(excess, 0.0, t_max, xtol=1e-14, rtol=1e-14)
            ops[0] += t * eye
            return PointData(n, m, c, ops)
    raise DomainError(f"no pinched instance found in {max_tries} draws")
