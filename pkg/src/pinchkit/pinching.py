"""Ricci pinching bound functions and their comparison.

``alpha(n, k, H, c) = (n - 1 - (n - 2) phi(k)) (c + H^2)`` with
``phi(s) = s(n-s) / (s(n-2s) + n(s-1)(n-s))`` is the pinching threshold
attained by the Einstein torus. ``b(n, k, H)`` is the older unit-sphere bound
built from the standard torus; its square root makes exact comparison a
problem in a quadratic field, handled with :class:`~pinchkit.surd.QuadSurd`.

Every function runs exactly when its arguments are ints/Fractions and in
floating point otherwise.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import AmbiguousComparison, DomainError, InternalInconsistency
from .surd import QuadSurd, is_exact

__all__ = [
    "Comparison",
    "PhiValue",
    "BoundReport",
    "AlphaRange",
    "phi",
    "alpha_coefficient",
    "alpha",
    "b_vlachos",
    "xu_gu_bound",
    "gamma",
    "compare_alpha_b",
    "alpha_range_check",
    "crossover_h",
    "FLOAT_BAND",
]

FLOAT_BAND = 1e-12


class Comparison(enum.Enum):
    ALPHA_GREATER = "ALPHA_GREATER"
    EQUAL = "EQUAL"
    B_GREATER = "B_GREATER"


@dataclass(frozen=True)
class PhiValue:
    s: object
    value: object
    derivative: object


@dataclass(frozen=True)
class BoundReport:
    """Bound values at fixed ``(n, k, H)`` on the unit sphere (``c = 1``)."""

    n: int
    k: int
    H: object
    c: object
    alpha: object
    b: object
    xu_gu: object
    gamma_k: int
    comparison: Comparison
    difference: object

    def as_row(self):
        return {
            "n": self.n,
            "k": self.k,
            "H": _fmt(self.H),
            "c": _fmt(self.c),
            "alpha": _fmt(self.alpha),
            "b": _fmt(self.b),
            "xu_gu": _fmt(self.xu_gu),
            "gamma_k": self.gamma_k,
            "b_minus_alpha": _fmt(self.difference),
            "comparison": self.comparison.value,
        }


@dataclass(frozen=True)
class AlphaRange:
    lower_strict: bool
    upper: bool
    upper_equality_iff_2k: bool

    def __bool__(self):
        return self.lower_strict and self.upper and self.upper_equality_iff_2k


def _fmt(x):
    if isinstance(x, (QuadSurd, Fraction)):
        return repr(float(x))
    if isinstance(x, float):
        return repr(x)
    return str(x)


def _num(x, exact):
    return Fraction(x) if exact else float(x)


def _check_nk(n, k, n_min=5):
    if not isinstance(n, int) or not isinstance(k, int):
        raise DomainError("n and k must be integers")
    if n < n_min:
        raise DomainError(f"n must be >= {n_min}, got {n}")
    if not 2 <= k <= n // 2:
        raise DomainError(f"k must satisfy 2 <= k <= floor(n/2) = {n // 2}, got {k}")


def _square(H):
    h2 = H * H
    if isinstance(h2, QuadSurd):
        return h2.as_rational()
    return h2


def phi(n: int, s) -> PhiValue:
    """``phi(s)`` and its derivative ``-n^2 (n-2s) / den^2`` on ``[2, n/2]``."""
    if not isinstance(n, int) or n < 5:
        raise DomainError(f"phi needs an integer n >= 5, got {n!r}")
    exact = is_exact(s)
    s = _num(s, exact)
    if s < 2 or 2 * s > n:
        raise DomainError(f"s = {s} outside [2, {n}/2]")
    den = s * (n - 2 * s) + n * (s - 1) * (n - s)
    if den <= 0:
        raise DomainError(f"phi denominator {den} is not positive")
    return PhiValue(s, s * (n - s) / den, -n * n * (n - 2 * s) / (den * den))


def alpha_coefficient(n: int, k: int) -> Fraction:
    """``alpha(n, k, H, c) / (c + H^2)``, exactly."""
    _check_nk(n, k)
    return n - 1 - (n - 2) * phi(n, Fraction(k)).value


def alpha(n: int, k: int, H, c):
    """Pinching threshold ``(n - 1 - (n-2) phi(k)) (c + H^2)``.

    ``H`` may be a QuadSurd with rational square (e.g. a model's mean curvature).
    """
    coeff = alpha_coefficient(n, k)
    exact = is_exact(H) and is_exact(c)
    if exact:
        c = c.as_rational() if isinstance(c, QuadSurd) else Fraction(c)
        return coeff * (c + _square(H))
    return float(coeff) * (float(c) + float(H) ** 2)


def gamma(n: int, k: int) -> int:
    return k * (n - k) - n


def b_vlachos(n: int, k: int, H):
    """Unit-sphere bound ``n(k-1)/k + n(k-1)H/(2k^2) (nH + sqrt(n^2 H^2 + 4k(n-k)))``.

    Returns a QuadSurd for rational ``H``.
    """
    _check_nk(n, k, n_min=4)
    if H < 0:
        raise DomainError(f"H must be non-negative, got {H}")
    if is_exact(H):
        H = Fraction(H)
        root = QuadSurd.sqrt(n * n * H * H + 4 * k * (n - k))
        return Fraction(n * (k - 1), k) + Fraction(n * (k - 1), 2 * k * k) * H * (n * H + root)
    H = float(H)
    root = math.sqrt(n * n * H * H + 4 * k * (n - k))
    return n * (k - 1) / k + n * (k - 1) * H / (2 * k * k) * (n * H + root)


def xu_gu_bound(n: int, H, c):
    """``n(n-1)(c + H^2)/(n+2)``, the q = 1 vanishing threshold."""
    if not isinstance(n, int) or n < 4:
        raise DomainError(f"n must be an integer >= 4, got {n!r}")
    if is_exact(H) and is_exact(c):
        return Fraction(n * (n - 1), n + 2) * (Fraction(c) + _square(H))
    return n * (n - 1) / (n + 2) * (float(c) + float(H) ** 2)


def _difference_gamma_form(n, k, H):
    """``b - alpha(., 1)`` written through ``gamma(k)``."""
    g = gamma(n, k)
    lead = Fraction(n * (k - 1), 2 * k * k)
    tail = Fraction(n * (k - 1) * (n - 2 * k), k * ((n + 2) * g + 2 * n))
    if isinstance(H, Fraction):
        root = QuadSurd.sqrt(n * n * H * H + 4 * k * (n - k))
        return lead * H * root + tail * (Fraction(n, 2 * k) * g * H * H - (n - k))
    root = math.sqrt(n * n * H * H + 4 * k * (n - k))
    return float(lead) * H * root + float(tail) * (n / (2 * k) * g * H * H - (n - k))


def compare_alpha_b(n: int, k: int, H, exact=None) -> BoundReport:
    """Compare ``alpha(n, k, H, 1)`` with ``b(n, k, H)``.

    The ambient curvature is fixed to 1: ``b`` is only defined on the unit
    sphere. The difference ``b - alpha`` is computed by direct subtraction and
    through the gamma-form; both must agree. In exact mode (default for
    int/Fraction ``H``) the sign is decided in the quadratic field; in float
    mode a difference within ``FLOAT_BAND`` of zero raises AmbiguousComparison.
    """
    _check_nk(n, k)
    if H < 0:
        raise DomainError(f"H must be non-negative, got {H}")
    if exact is None:
        exact = is_exact(H)
    H = Fraction(H) if exact else float(H)
    c = Fraction(1) if exact else 1.0
    a = alpha(n, k, H, c)
    b = b_vlachos(n, k, H)
    direct = b - a
    via_gamma = _difference_gamma_form(n, k, H)
    if exact:
        if direct != via_gamma:
            raise InternalInconsistency(f"b - alpha: direct {direct} vs gamma-form {via_gamma}")
        sign = direct.sign()
    else:
        if abs(direct - via_gamma) > 1e-10 * (1.0 + abs(b) + abs(a)):
            raise InternalInconsistency(f"b - alpha: direct {direct!r} vs gamma-form {via_gamma!r}")
        if abs(direct) <= FLOAT_BAND * (1.0 + abs(b)):
            raise AmbiguousComparison(
                f"b - alpha = {direct!r} is inside the round-off band at n={n}, k={k}, H={H!r}"
            )
        sign = 1 if direct > 0 else -1
    comparison = {1: Comparison.B_GREATER, 0: Comparison.EQUAL, -1: Comparison.ALPHA_GREATER}[sign]
    return BoundReport(n, k, H, c, a, b, xu_gu_bound(n, H, c), gamma(n, k), comparison, direct)


def alpha_range_check(n: int, k: int) -> AlphaRange:
    """Exact check of ``(n-3) < alpha/(c+H^2) <= (n-2)`` with equality iff ``n = 2k``."""
    coeff = alpha_coefficient(n, k)
    return AlphaRange(
        lower_strict=coeff > n - 3,
        upper=coeff <= n - 2,
        upper_equality_iff_2k=(coeff == n - 2) == (n == 2 * k),
    )


def crossover_h(n: int, k: int, width=Fraction(1, 10**12)):
    """Bracket ``(lo, hi)`` around the H where ``b`` overtakes ``alpha`` (``c = 1``).

    Bisection in exact arithmetic: ``lo`` is never B_GREATER, ``hi`` always is,
    and ``hi - lo <= width``. For ``n = 2k`` the crossover is ``H = 0`` and
    ``(0, 0)`` is returned.
    """
    _check_nk(n, k)
    if n == 2 * k:
        return Fraction(0), Fraction(0)

    def b_wins(h):
        return compare_alpha_b(n, k, h, exact=True).comparison is Comparison.B_GREATER

    lo, hi = Fraction(0), Fraction(1)
    while not b_wins(hi):
        lo, hi = hi, 2 * hi
    width = Fraction(width)
    while hi - lo > width:
        mid = (lo + hi) / 2
        if b_wins(mid):
            hi = mid
        else:
            lo = mid
    return lo, hi
