"""The Einstein torus attains every inequality with equality.

Builds the torus S^3 x S^4 inside a space form in exact rational-square mode,
checks Ric = (n-2)/r^2 = alpha, maximizes Theta_3, and recovers the
two-eigenspace structure and the principal normals.
"""

from fractions import Fraction

from pinchkit.curvature import mean_curvature_sq, ricci_tensor
from pinchkit.lawson_simons import homology_verdict, verify_lemma_chain
from pinchkit.models import einstein_torus
from pinchkit.pinching import alpha
from pinchkit.rigidity import classify_point, equality_case_detect, principal_normals
from pinchkit.surd import QuadSurd


def main():
    n, k, r, c = 7, 3, Fraction(1), Fraction(1, 4)
    P, spec = einstein_torus(n, k, r, c)
    ric = ricci_tensor(P, exact=True)
    h2 = mean_curvature_sq(P, exact=True)
    print(f"Ric diagonal (exact): {sorted({str(ric[i, i]) for i in range(n)})}")
    print(f"H^2 = {h2} = H_g^2 + H_u^2 = {spec.squares['H_g2']} + {spec.squares['H_u2']}")
    print(f"alpha(n, k, H, c) = {alpha(n, k, QuadSurd.sqrt(h2), c)}")

    res = homology_verdict(P, k)
    print(f"\nmax Theta_{k} = {res.value:.12f}, threshold {res.threshold}, verdict {res.verdict.value}")
    chain = verify_lemma_chain(P, k, k, res.split)
    print(f"largest |slack| along both estimates: {max(abs(v) for v in chain.slacks.values()):.2e}")

    s = equality_case_detect(P, k)
    eta1, eta2, distinct = principal_normals(P, s)
    print(f"\nlambda block size {s.k}, eta1 = {eta1.round(6)}, eta2 = {eta2.round(6)}, distinct: {distinct}")
    print(f"classification: {classify_point(P, k).verdict.value}")


if __name__ == "__main__":
    main()
