"""Exact arithmetic in a real quadratic field.

A :class:`QuadSurd` is a number ``p + q*sqrt(d)`` with rational ``p``, ``q``
and a non-negative rational radicand ``d``. Sums and products are closed as
long as the operands share the radicand (or one of them is rational), which
is all the bound comparisons and the model-space identities need. Signs are
decided without any floating point.
"""

from __future__ import annotations

import math
from fractions import Fraction
from numbers import Rational

__all__ = ["QuadSurd", "as_fraction", "is_exact", "rational_sqrt"]


def as_fraction(x) -> Fraction:
    """Convert an int, Fraction, ``"p/q"`` string or rational QuadSurd to Fraction."""
    if isinstance(x, QuadSurd):
        return x.as_rational()
    if isinstance(x, str):
        return Fraction(x.strip())
    if isinstance(x, Rational):
        return Fraction(x)
    raise TypeError(f"not an exact rational: {x!r}")


def is_exact(x) -> bool:
    return isinstance(x, (Rational, QuadSurd)) and not isinstance(x, bool)


def rational_sqrt(x: Fraction) -> Fraction | None:
    """Return the rational square root of ``x`` if there is one, else None."""
    x = Fraction(x)
    if x < 0:
        return None
    num, den = x.numerator, x.denominator
    rn, rd = math.isqrt(num), math.isqrt(den)
    if rn * rn == num and rd * rd == den:
        return Fraction(rn, rd)
    return None


def _sign(x) -> int:
    return (x > 0) - (x < 0)


class QuadSurd:
    """The real number ``p + q*sqrt(d)``."""

    __slots__ = ("p", "q", "d")

    def __init__(self, p=0, q=0, d=0):
        p, q, d = Fraction(p), Fraction(q), Fraction(d)
        if d < 0:
            raise ValueError("radicand must be non-negative")
        root = rational_sqrt(d)
        if root is not None:
            p, q, d = p + q * root, Fraction(0), Fraction(0)
        elif q == 0:
            d = Fraction(0)
        self.p, self.q, self.d = p, q, d

    @classmethod
    def sqrt(cls, d) -> "QuadSurd":
        return cls(0, 1, d)

    # -- structure -------------------------------------------------------
    @property
    def is_rational(self) -> bool:
        return self.q == 0

    def as_rational(self) -> Fraction:
        if self.q != 0:
            raise ValueError(f"{self!r} is irrational")
        return self.p

    def conjugate(self) -> "QuadSurd":
        return QuadSurd(self.p, -self.q, self.d)

    def _common(self, other):
        if isinstance(other, QuadSurd):
            if self.q != 0 and other.q != 0 and self.d != other.d:
                raise ValueError(
                    f"cannot combine surds with radicands {self.d} and {other.d}"
                )
            d = self.d if self.q != 0 else other.d
            return other.p, other.q, d
        if isinstance(other, Rational):
            return Fraction(other), Fraction(0), self.d
        return None

    # -- arithmetic ------------------------------------------------------
    def __add__(self, other):
        c = self._common(other)
        if c is None:
            return NotImplemented
        p, q, d = c
        return QuadSurd(self.p + p, self.q + q, d)

    __radd__ = __add__

    def __neg__(self):
        return QuadSurd(-self.p, -self.q, self.d)

    def __sub__(self, other):
        c = self._common(other)
        if c is None:
            return NotImplemented
        p, q, d = c
        return QuadSurd(self.p - p, self.q - q, d)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        c = self._common(other)
        if c is None:
            return NotImplemented
        p, q, d = c
        return QuadSurd(self.p * p + self.q * q * d, self.p * q + self.q * p, d)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, QuadSurd):
            if other.is_rational:
                other = other.p
            else:
                # multiply through by the conjugate
                norm = other.p * other.p - other.q * other.q * other.d
                return self * other.conjugate() / norm
        if isinstance(other, Rational):
            other = Fraction(other)
            if other == 0:
                raise ZeroDivisionError("QuadSurd division by zero")
            return QuadSurd(self.p / other, self.q / other, self.d)
        return NotImplemented

    def __rtruediv__(self, other):
        if isinstance(other, Rational):
            return QuadSurd(other) / self
        return NotImplemented

    def __pow__(self, e: int):
        if not isinstance(e, int) or e < 0:
            return NotImplemented
        out = QuadSurd(1)
        for _ in range(e):
            out = out * self
        return out

    # -- order -----------------------------------------------------------
    def sign(self) -> int:
        """Exact sign of ``p + q*sqrt(d)``."""
        sp, sq = _sign(self.p), _sign(self.q)
        if sq == 0:
            return sp
        if sp == 0 or sp == sq:
            return sq
        lhs, rhs = self.p * self.p, self.q * self.q * self.d
        if lhs > rhs:
            return sp
        if lhs < rhs:
            return sq
        return 0

    def _cmp(self, other) -> int:
        diff = self - other
        if diff is NotImplemented:
            raise TypeError(f"cannot compare QuadSurd with {type(other).__name__}")
        return diff.sign()

    def __eq__(self, other):
        if isinstance(other, (QuadSurd, Rational)):
            try:
                return self._cmp(other) == 0
            except ValueError:
                return False
        if isinstance(other, float):
            return float(self) == other
        return NotImplemented

    def __hash__(self):
        if self.q == 0:
            return hash(self.p)
        return hash((self.p, self.q, self.d))

    def __lt__(self, other):
        return self._cmp(other) < 0

    def __le__(self, other):
        return self._cmp(other) <= 0

    def __gt__(self, other):
        return self._cmp(other) > 0

    def __ge__(self, other):
        return self._cmp(other) >= 0

    def __abs__(self):
        return -self if self.sign() < 0 else self

    def __float__(self):
        return float(self.p) + float(self.q) * math.sqrt(self.d)

    def __repr__(self):
        if self.q == 0:
            return f"QuadSurd({self.p})"
        return f"QuadSurd({self.p} + {self.q}*sqrt({self.d}))"

    def __str__(self):
        if self.q == 0:
            return str(self.p)
        return f"{self.p} + {self.q}*sqrt({self.d})"
