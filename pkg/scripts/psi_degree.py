"""Compute psi = phi' o f o phi^-1 as polynomials and compare with the lattice prediction."""
import argparse
import time

from cremona_lab.pipeline import ConstructionConfig, construct
from cremona_lab.plane import CONIC_Q, apply_map, jacobian, pullback, pure_power_exponent


def main():
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--n", type=int, default=2)
    args = p.parse_args()
    start = time.perf_counter()
    r = construct(ConstructionConfig(n=args.n, psi_poly=True))
    psi = r.psi.psi
    print(f"n = {args.n}: predicted {r.psi.predicted_degree}, computed {psi.degree}, "
          f"common factor of the raw composite of degree {r.psi.cancelled_degree}")
    C = r.curves.C.equation
    rest = pullback(psi, CONIC_Q).exact_div(CONIC_Q.equation)
    print(f"pullback of the conic = conic * C^{pure_power_exponent(rest, C)}")
    print(f"jacobian = C^{pure_power_exponent(jacobian(psi), C)}")
    agree = all(apply_map(psi, s.phi_r) == s.rhs for s in r.psi.samples)
    print(f"agrees with the pointwise samples: {agree}  ({time.perf_counter() - start:.1f}s)")


if __name__ == "__main__":
    main()
