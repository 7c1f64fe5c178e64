"""Gauss-equation curvature quantities from pointwise second fundamental form data.

A point of an immersion ``M^n -> F^{n+m}(c)`` is described by the ambient
curvature ``c`` and ``m`` symmetric shape operators ``H_alpha = (h_ij^alpha)``
written in orthonormal tangent and normal frames. Everything intrinsic at the
point (Ricci tensor, scalar curvature) follows from the Gauss equation.

All routines work in floating point. Points built with :meth:`PointData.from_exact`
additionally carry a rational description ``H_alpha = sqrt(s_alpha) * M_alpha``
(``M_alpha`` rational, ``s_alpha`` a rational "scale square"); pass
``exact=True`` to evaluate on that description. Every Gauss quantity is a
sum of products of entries from the same shape operator, so the results are
rational even when the entries themselves are not.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from ._linalg import sym_eigh
from .errors import DimensionError, DomainError, InternalInconsistency, SymmetryError
from .surd import QuadSurd

__all__ = [
    "ExactForm",
    "PointData",
    "CurvatureSummary",
    "SYMMETRY_RTOL",
    "mean_curvature_vector",
    "mean_curvature_sq",
    "ricci_tensor",
    "scalar_curvature",
    "sff_norm_sq",
    "ricci_min",
    "summarize",
]

SYMMETRY_RTOL = 1e-9


def _frac_matrix(rows, n, alpha):
    mat = np.empty((n, n), dtype=object)
    rows = list(rows)
    if len(rows) != n:
        raise DimensionError(f"shape_operators[{alpha}] has {len(rows)} rows, expected {n}")
    for i, row in enumerate(rows):
        row = list(row)
        if len(row) != n:
            raise DimensionError(
                f"shape_operators[{alpha}][{i}] has {len(row)} entries, expected {n}"
            )
        for j, x in enumerate(row):
            mat[i, j] = Fraction(x) if not isinstance(x, str) else Fraction(x.strip())
    return mat


@dataclass(frozen=True, eq=False)
class ExactForm:
    """Rational description ``H_alpha = sqrt(sq_scales[alpha]) * mats[alpha]``."""

    c: Fraction
    mats: tuple
    sq_scales: tuple

    def __eq__(self, other):
        if not isinstance(other, ExactForm):
            return NotImplemented
        return (
            self.c == other.c
            and self.sq_scales == other.sq_scales
            and all((a == b).all() for a, b in zip(self.mats, other.mats))
        )


@dataclass(frozen=True, eq=False)
class PointData:
    """Second fundamental form data at one point.

    Parameters
    ----------
    n, m : int
        Tangent dimension and codimension.
    c : float
        Sectional curvature of the ambient space form.
    shape_ops : array_like, shape (m, n, n)
        Symmetric shape operators in an orthonormal frame. Matrices that are
        symmetric up to ``1e-9 * (1 + max|entry|)`` are symmetrized; larger
        asymmetry raises :class:`SymmetryError`.
    """

    n: int
    m: int
    c: float
    shape_ops: np.ndarray
    exact: ExactForm | None = None
    label: str | None = None

    def __post_init__(self):
        n, m = self.n, self.m
        if not isinstance(n, (int, np.integer)) or n < 2:
            raise DimensionError(f"n must be an integer >= 2, got {n!r}")
        if not isinstance(m, (int, np.integer)) or m < 1:
            raise DimensionError(f"m must be an integer >= 1, got {m!r}")
        ops = self.shape_ops
        if len(ops) != m:
            raise DimensionError(f"expected {m} shape operators, got {len(ops)}")
        arrs = []
        for a, h in enumerate(ops):
            h = np.array(h, dtype=float)
            if h.shape != (n, n):
                raise DimensionError(f"shape_operators[{a}] has shape {h.shape}, expected ({n}, {n})")
            if not np.isfinite(h).all():
                raise DimensionError(f"shape_operators[{a}] has non-finite entries")
            asym = np.abs(h - h.T)
            worst = asym.max()
            if worst > SYMMETRY_RTOL * (1.0 + np.abs(h).max()):
                i, j = np.unravel_index(np.argmax(asym), asym.shape)
                raise SymmetryError(
                    f"shape_operators[{a}] is not symmetric at ({a}, {i}, {j}): "
                    f"|h_ij - h_ji| = {worst:.3e}"
                )
            arrs.append(0.5 * (h + h.T))
        stack = np.array(arrs, dtype=float).reshape(m, n, n)
        stack.setflags(write=False)
        object.__setattr__(self, "shape_ops", stack)
        object.__setattr__(self, "n", int(n))
        object.__setattr__(self, "m", int(m))
        object.__setattr__(self, "c", float(self.c))

    @classmethod
    def from_exact(cls, n, m, c, mats, sq_scales=None, label=None):
        """Build a point from rational matrices (and optional scale squares)."""
        c = Fraction(c)
        if len(mats) != m:
            raise DimensionError(f"expected {m} shape operators, got {len(mats)}")
        fmats = []
        for a, rows in enumerate(mats):
            mat = _frac_matrix(rows, n, a)
            for i in range(n):
                for j in range(i + 1, n):
                    if mat[i, j] != mat[j, i]:
                        raise SymmetryError(
                            f"shape_operators[{a}] is not symmetric at ({a}, {i}, {j})"
                        )
            mat.setflags(write=False)
            fmats.append(mat)
        if sq_scales is None:
            sq_scales = [Fraction(1)] * m
        sq_scales = tuple(Fraction(s) for s in sq_scales)
        if len(sq_scales) != m or any(s < 0 for s in sq_scales):
            raise DimensionError("sq_scales must be m non-negative rationals")
        floats = [
            float(QuadSurd.sqrt(s)) * mat.astype(float) for s, mat in zip(sq_scales, fmats)
        ]
        return cls(n, m, float(c), floats, ExactForm(c, tuple(fmats), sq_scales), label)

    @property
    def is_exact(self) -> bool:
        return self.exact is not None

    def with_ops(self, shape_ops, c=None):
        """Float copy with replaced shape operators (drops any exact form)."""
        shape_ops = np.asarray(shape_ops, dtype=float)
        return PointData(self.n, len(shape_ops), self.c if c is None else c, shape_ops,
                         label=self.label)

    def rotated(self, q=None, o=None):
        """Change frames: tangent by orthogonal ``q`` (n x n), normal by orthogonal ``o`` (m x m)."""
        ops = self.shape_ops
        if q is not None:
            ops = np.einsum("ki,akl,lj->aij", q, ops, q)
        if o is not None:
            ops = np.einsum("ab,bij->aij", o, ops)
        return self.with_ops(ops)


@dataclass(frozen=True)
class CurvatureSummary:
    mean_vector: np.ndarray
    H: float
    S: float
    ric: np.ndarray = field(repr=False)
    rho: float
    ric_min: float

    def as_dict(self):
        return {
            "mean_vector": self.mean_vector.tolist(),
            "H": self.H,
            "S": self.S,
            "ric": self.ric.tolist(),
            "rho": self.rho,
            "ric_min": self.ric_min,
        }


def _need_exact(P):
    if P.exact is None:
        raise DomainError("exact evaluation requested but the point has no rational form")
    return P.exact


def mean_curvature_vector(P: PointData, exact=False):
    """Mean curvature vector components ``c_alpha = tr(H_alpha)/n`` and its length H.

    In exact mode the components are QuadSurds and H is ``QuadSurd.sqrt(H^2)``.
    """
    if exact:
        ex = _need_exact(P)
        comps = [
            QuadSurd(0, Fraction(np.trace(mat)) / P.n, s) for mat, s in zip(ex.mats, ex.sq_scales)
        ]
        return comps, QuadSurd.sqrt(mean_curvature_sq(P, exact=True))
    cvec = np.trace(P.shape_ops, axis1=1, axis2=2) / P.n
    return cvec, float(np.sqrt(np.dot(cvec, cvec)))


def mean_curvature_sq(P: PointData, exact=False):
    """``H^2 = sum_alpha c_alpha^2``; a Fraction in exact mode."""
    if exact:
        ex = _need_exact(P)
        return sum(
            (s * (Fraction(np.trace(mat)) / P.n) ** 2 for mat, s in zip(ex.mats, ex.sq_scales)),
            Fraction(0),
        )
    cvec = np.trace(P.shape_ops, axis1=1, axis2=2) / P.n
    return float(np.dot(cvec, cvec))


def ricci_tensor(P: PointData, exact=False):
    """Ricci matrix from the Gauss equation.

    ``Ric_ij = (n-1) c delta_ij + sum_alpha (n c_alpha h_ij - sum_k h_ik h_jk)``.
    The float result is exactly symmetric; the exact result is an object array
    of Fractions.
    """
    n = P.n
    if exact:
        ex = _need_exact(P)
        ric = np.empty((n, n), dtype=object)
        ric[...] = Fraction(0)
        for i in range(n):
            ric[i, i] = (n - 1) * ex.c
        for mat, s in zip(ex.mats, ex.sq_scales):
            if s == 0:
                continue
            # n c_alpha h_ij = s * tr(M) * M_ij
            ric = ric + s * (Fraction(np.trace(mat)) * mat - mat.dot(mat))
        return ric
    ops = P.shape_ops
    tr = np.trace(ops, axis1=1, axis2=2)
    ric = (n - 1) * P.c * np.eye(n)
    ric = ric + np.einsum("a,aij->ij", tr, ops) - np.einsum("aik,ajk->ij", ops, ops)
    return 0.5 * (ric + ric.T)


def sff_norm_sq(P: PointData, exact=False):
    """Squared length ``S = sum_alpha ||H_alpha||_F^2``."""
    if exact:
        ex = _need_exact(P)
        return sum(
            (s * sum((x * x for x in mat.flat), Fraction(0)) for mat, s in zip(ex.mats, ex.sq_scales)),
            Fraction(0),
        )
    return float(np.sum(P.shape_ops * P.shape_ops))


def scalar_curvature(P: PointData, exact=False, rtol=1e-10):
    """Scalar curvature computed as ``trace(Ric)`` and as ``n(n-1)c + n^2 H^2 - S``.

    The two routes must agree (exactly in exact mode, to ``rtol`` relative to
    the size of the individual terms in float mode); otherwise
    :class:`InternalInconsistency` is raised.
    """
    n = P.n
    ric = ricci_tensor(P, exact=exact)
    h2 = mean_curvature_sq(P, exact=exact)
    s = sff_norm_sq(P, exact=exact)
    if exact:
        c = P.exact.c
        by_trace = sum((ric[i, i] for i in range(n)), Fraction(0))
        by_identity = n * (n - 1) * c + n * n * h2 - s
        if by_trace != by_identity:
            raise InternalInconsistency(f"trace(Ric)={by_trace} but identity gives {by_identity}")
        return by_trace
    by_trace = float(np.trace(ric))
    by_identity = n * (n - 1) * P.c + n * n * h2 - s
    scale = abs(n * (n - 1) * P.c) + n * n * h2 + s + 1.0
    if abs(by_trace - by_identity) > rtol * scale:
        raise InternalInconsistency(
            f"trace(Ric)={by_trace!r} but identity gives {by_identity!r}"
        )
    return by_trace


def ricci_min(P: PointData):
    """Smallest Ricci eigenvalue and a unit direction attaining it."""
    w, v = sym_eigh(ricci_tensor(P))
    return float(w[0]), v[:, 0]


def summarize(P: PointData) -> CurvatureSummary:
    cvec, H = mean_curvature_vector(P)
    ric = ricci_tensor(P)
    w, _ = sym_eigh(ric)
    return CurvatureSummary(
        mean_vector=cvec,
        H=H,
        S=sff_norm_sq(P),
        ric=ric,
        rho=scalar_curvature(P),
        ric_min=float(w[0]),
    )
