"""Random pinched points: the two Theta_q estimates and the vanishing condition.

Draws points with Ric_min = alpha + margin, maximizes Theta_q and prints the
slack of every step in the chain of estimates at the maximizing plane.
"""

import numpy as np

from pinchkit.lawson_simons import OptimizerConfig, maximize_theta, random_pinched_point, verify_lemma_chain


def main():
    g = np.random.default_rng(2024)
    cfg = OptimizerConfig(starts=8, subset_limit=0)
    for trial in range(4):
        n = int(g.integers(5, 9))
        k = int(g.integers(2, n // 2 + 1))
        P = random_pinched_point(n, 2, 1.0, k, g, margin=0.05)
        res = maximize_theta(P, k, cfg)
        chain = verify_lemma_chain(P, k, k, res.split)
        print(f"n={n} k={k}: max Theta_k = {res.value:9.4f} <= {res.threshold:6.1f} ({res.verdict.value})")
        for name, value in chain.slacks.items():
            print(f"    {name:<12} slack {value:12.6f}")


if __name__ == "__main__":
    main()
