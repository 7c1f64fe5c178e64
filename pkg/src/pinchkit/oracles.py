"""Slow, independent reference implementations used to cross-check the fast paths.

Everything here is written as plain loops over indices or enumerations, with
no shared code with the vectorized implementations it checks.
"""

from __future__ import annotations

import itertools
from decimal import Decimal, localcontext
from fractions import Fraction

import numpy as np


def mean_vector_loop(ops):
    m, n = len(ops), len(ops[0])
    return [sum(ops[a][i][i] for i in range(n)) / n for a in range(m)]


def ricci_loop(ops, c):
    """Gauss-equation Ricci matrix by explicit summation (works on floats or Fractions)."""
    m, n = len(ops), len(ops[0])
    zero = ops[0][0][0] * 0
    ric = [[zero for _ in range(n)] for _ in range(n)]
    for i in range(n):
        for j in range(n):
            total = (n - 1) * c if i == j else zero
            for a in range(m):
                trace = sum((ops[a][l][l] for l in range(n)), zero)
                total += trace * ops[a][i][j]
                for l in range(n):
                    total -= ops[a][i][l] * ops[a][j][l]
            ric[i][j] = total
    return ric


def sff_loop(ops):
    return sum(x * x for mat in ops for row in mat for x in row)


def theta_loop(ops, basis, q):
    """``sum_{i<=q<j} sum_alpha 2 h~_ij^2 - h~_ii h~_jj`` with ``h~ = basis^T H basis``."""
    m, n = len(ops), len(ops[0])
    e = [[basis[r][col] for r in range(n)] for col in range(n)]

    def form(a, u, v):
        return sum(u[r] * ops[a][r][s] * v[s] for r in range(n) for s in range(n))

    total = 0.0
    for i in range(q):
        for j in range(q, n):
            for a in range(m):
                hij = form(a, e[i], e[j])
                total += 2.0 * hij * hij - form(a, e[i], e[i]) * form(a, e[j], e[j])
    return total


def subset_theta_values(ops, frame, q):
    """Theta_q of every coordinate q-subset of ``frame``: dict subset -> value."""
    ops = np.asarray(ops, dtype=float)
    frame = np.asarray(frame, dtype=float)
    n = frame.shape[0]
    out = {}
    for subset in itertools.combinations(range(n), q):
        rest = [i for i in range(n) if i not in subset]
        basis = frame[:, list(subset) + rest]
        out[subset] = theta_loop(ops, basis, q)
    return out


def diagonal_subset_max(diagonals, q):
    """Best coordinate subset for simultaneously diagonal operators.

    ``diagonals[alpha]`` lists the eigenvalues of ``H_alpha`` in a common
    eigenframe; a coordinate subset ``S`` has
    ``Theta = -sum_alpha (sum_S d) (sum_{not S} d)``.
    """
    diagonals = [list(map(float, d)) for d in diagonals]
    n = len(diagonals[0])
    best, arg = None, None
    for subset in itertools.combinations(range(n), q):
        val = 0.0
        for d in diagonals:
            inside = sum(d[i] for i in subset)
            outside = sum(d[i] for i in range(n) if i not in subset)
            val -= inside * outside
        if best is None or val > best:
            best, arg = val, subset
    return best, arg


def gram_schmidt_complete(cols, n):
    """Orthonormal completion of the columns ``cols`` by Gram-Schmidt on the standard basis."""
    vecs = [np.array(c, dtype=float) for c in np.asarray(cols, dtype=float).T]
    basis = []
    for v in vecs + [np.eye(n)[i] for i in range(n)]:
        w = v.copy()
        for b in basis:
            w -= np.dot(b, w) * b
        for b in basis:
            w -= np.dot(b, w) * b
        norm = np.linalg.norm(w)
        if norm > 1e-8:
            basis.append(w / norm)
        if len(basis) == n:
            break
    return np.array(basis).T


def phi_direct(n, s):
    s = Fraction(s)
    return s * (n - s) / (s * (n - 2 * s) + n * (s - 1) * (n - s))


def alpha_direct(n, k, H2, c):
    """``(n - 1 - k(n-k)(n-2)/(k(n-2k) + n(k-1)(n-k))) (c + H^2)`` from the threshold's original form."""
    frac = Fraction(k * (n - k) * (n - 2), k * (n - 2 * k) + n * (k - 1) * (n - k))
    return (n - 1 - frac) * (Fraction(c) + Fraction(H2))


def b_decimal(n, k, H, digits=50):
    """High-precision evaluation of the unit-sphere bound with the decimal module."""
    with localcontext() as ctx:
        ctx.prec = digits
        H = Decimal(str(H)) if not isinstance(H, Fraction) else Decimal(H.numerator) / Decimal(H.denominator)
        root = (Decimal(n * n) * H * H + Decimal(4 * k * (n - k))).sqrt()
        return Decimal(n * (k - 1)) / Decimal(k) + Decimal(n * (k - 1)) * H / Decimal(2 * k * k) * (
            Decimal(n) * H + root
        )


def ricci_min_sampled(ric, rng, samples=10_000):
    """Minimum of the Rayleigh quotient over random unit vectors."""
    ric = np.asarray(ric, dtype=float)
    x = rng.standard_normal((samples, ric.shape[0]))
    x /= np.linalg.norm(x, axis=1, keepdims=True)
    return float(np.min(np.einsum("si,ij,sj->s", x, ric, x)))
