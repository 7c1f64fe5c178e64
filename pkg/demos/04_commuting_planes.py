"""Coordinate planes of a common eigenframe need not maximize Theta_q.

For one diagonal shape operator diag(d1, d2) in dimension 2, the line at 45
degrees beats both coordinate lines by (d1 - d2)^2 / 4. The same effect shows
up in higher dimension, where the optimizer finds planes above every
coordinate subset.
"""

import math

import numpy as np

from pinchkit import oracles
from pinchkit.curvature import PointData
from pinchkit.lawson_simons import SubspaceSplit, maximize_theta, theta_q_basis


def main():
    d1, d2 = 2.0, -0.5
    P = PointData(2, 1, 0.0, np.diag([d1, d2])[None])
    rot = np.array([[1, -1], [1, 1]]) / math.sqrt(2)
    axis = theta_q_basis(P, SubspaceSplit(1, np.eye(2)))
    diag = theta_q_basis(P, SubspaceSplit(1, rot))
    print(f"n=2: coordinate line {axis:.4f}, 45-degree line {diag:.4f}, gain {diag - axis:.4f} "
          f"= (d1-d2)^2/4 = {(d1 - d2) ** 2 / 4:.4f}")

    g = np.random.default_rng(7)
    d = g.standard_normal((2, 6))
    Q = np.linalg.qr(g.standard_normal((6, 6)))[0]
    ops = np.einsum("ik,ak,jk->aij", Q, d, Q)
    best, subset = oracles.diagonal_subset_max(d, 2)
    res = maximize_theta(PointData(6, 2, 0.0, ops), 2)
    print(f"n=6, q=2: best coordinate subset {subset} gives {best:.4f}; optimizer reaches {res.value:.4f}")


if __name__ == "__main__":
    main()
