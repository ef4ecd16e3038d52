"""Lattice data for a range of n: homaloidal class, Noether identities, predicted degrees."""
import argparse
import time

from cremona_lab.blowup import (
    QLABEL,
    build_tower,
    contraction_sequence,
    dual_graph,
    homaloidal_class,
    matches_expected,
    noether_identities,
    predicted_psi_degree,
    strict_transform_classes,
)
from cremona_lab.pipeline import default_a


def row(n: int) -> dict:
    t = build_tower(n, default_a(n))
    classes = strict_transform_classes(t)
    seq = contraction_sequence(classes, keep=f"E{t.length}")
    contraction_sequence(classes, keep=QLABEL)
    hom = homaloidal_class(classes, seq)
    return {
        "n": n,
        "points": t.length,
        "class": hom.text(),
        "noether": all(noether_identities(hom)),
        "graph": matches_expected(dual_graph(classes), n),
        "deg_C": hom.degree,
        "deg_psi": predicted_psi_degree(n),
    }


def main():
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--max-n", type=int, default=8)
    args = p.parse_args()
    start = time.perf_counter()
    print(f"{'n':>3} {'m':>3} {'deg C':>6} {'deg psi':>8} noether graph  class")
    for n in range(1, args.max_n + 1):
        r = row(n)
        print(f"{r['n']:>3} {r['points']:>3} {r['deg_C']:>6} {r['deg_psi']:>8} {str(r['noether']):7s} {str(r['graph']):6s} {r['class']}")
    print(f"({time.perf_counter() - start:.2f}s)")


if __name__ == "__main__":
    main()
