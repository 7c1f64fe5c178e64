"""Where does the Ricci threshold alpha sit relative to the unit-sphere bound b?

Tabulates alpha(n, k, H, 1) and b(n, k, H) for a few dimensions, decides each
comparison exactly, and brackets the mean curvature at which b overtakes alpha.
"""

from fractions import Fraction

from pinchkit.pinching import alpha_coefficient, compare_alpha_b, crossover_h


def main():
    print("alpha / (c + H^2) for k = floor((n-1)/2):")
    for n in (5, 7, 9, 11):
        k = (n - 1) // 2
        print(f"  n={n:>2} k={k}: {alpha_coefficient(n, k)}  (n - 2 = {n - 2})")

    print("\nexact comparison of alpha and b at c = 1:")
    for n, k in ((7, 2), (7, 3), (8, 4)):
        for H in (Fraction(0), Fraction(1, 4), Fraction(2)):
            rep = compare_alpha_b(n, k, H)
            print(f"  n={n} k={k} H={str(H):>4}: alpha={float(rep.alpha):8.4f} b={float(rep.b):8.4f} "
                  f"-> {rep.comparison.value}")

    print("\ncrossover brackets (b > alpha above hi):")
    for n, k in ((7, 2), (7, 3), (10, 3)):
        lo, hi = crossover_h(n, k)
        print(f"  n={n} k={k}: H* in [{float(lo):.12f}, {float(hi):.12f}]")


if __name__ == "__main__":
    main()
