"""Small dense linear-algebra helpers with reproducible output conventions."""

import numpy as np


def normalize_signs(vecs, eps=1e-12):
    """Flip columns so the first component with magnitude above ``eps`` is positive."""
    vecs = np.array(vecs, dtype=float, copy=True)
    for j in range(vecs.shape[1]):
        col = vecs[:, j]
        nz = np.flatnonzero(np.abs(col) > eps * max(1.0, np.abs(col).max()))
        if nz.size and col[nz[0]] < 0:
            vecs[:, j] = -col
    return vecs


def sym_eigh(a):
    """Eigen-decomposition of the symmetrized matrix, ascending, sign-normalized."""
    a = np.asarray(a, dtype=float)
    w, v = np.linalg.eigh(0.5 * (a + a.T))
    return w, normalize_signs(v)


def random_orthogonal(n, rng):
    """Haar-distributed orthogonal matrix drawn from ``rng``."""
    z = rng.standard_normal((n, n))
    q, r = np.linalg.qr(z)
    return q * np.sign(np.diag(r))


def complete_basis(u):
    """Extend orthonormal columns ``u`` (n x q) to an orthogonal n x n matrix.

    The first q columns of the result equal ``u``.
    """
    u = np.asarray(u, dtype=float)
    n, q = u.shape
    if q == n:
        return u.copy()
    full, _ = np.linalg.qr(np.hstack([u, np.eye(n)]), mode="complete")
    rest = full[:, q:n]
    # project out u again to kill round-off leakage
    rest = rest - u @ (u.T @ rest)
    rest, _ = np.linalg.qr(rest)
    return np.hstack([u, rest])


def max_commutator(ops):
    """Largest Frobenius norm of a pairwise commutator ``[A, B]``."""
    worst = 0.0
    for a in range(len(ops)):
        for b in range(a + 1, len(ops)):
            comm = ops[a] @ ops[b] - ops[b] @ ops[a]
            worst = max(worst, float(np.linalg.norm(comm)))
    return worst


def is_orthonormal(b, tol=1e-10):
    b = np.asarray(b, dtype=float)
    return bool(np.abs(b.T @ b - np.eye(b.shape[1])).max() <= tol)
