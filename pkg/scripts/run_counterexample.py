"""Build a curve pair, print its summary and write the JSON report."""
import argparse
import sys
import time

from cremona_lab.cli import build_report, dumps
from cremona_lab.pipeline import ConfigError, ConstructionConfig, run_construction


def main():
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--n", type=int, default=2)
    p.add_argument("--lambda", dest="lam", default="2")
    p.add_argument("--mu", default="1")
    p.add_argument("--psi-poly", action="store_true")
    p.add_argument("--out", default=None)
    args = p.parse_args()
    try:
        cfg = ConstructionConfig(n=args.n, lam=args.lam, mu=args.mu, psi_poly=args.psi_poly)
    except ConfigError as exc:
        sys.exit(f"invalid config: {exc}")
    start = time.perf_counter()
    result = run_construction(cfg)
    elapsed = time.perf_counter() - start
    print(f"n = {cfg.n}, lambda = {cfg.lam}, mu = {cfg.mu}, a = {[str(v) for v in cfg.a]}")
    print(f"deg C = {result.curves.C.degree}, deg D = {result.curves.D.degree}, cusp at {result.curves.q1_C.text()}")
    print(f"C: {result.curves.C.text()}")
    print(f"D: {result.curves.D.text()}")
    for c in result.certificates:
        print(f"  {c.verdict:13s} {c.name}")
    print(f"verdict: {result.verdict}  ({elapsed:.1f}s)")
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(dumps(build_report(result)))


if __name__ == "__main__":
    main()
