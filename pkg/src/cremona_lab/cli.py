"""Command-line front end: ``construct``, ``graph`` and ``recheck``."""
from __future__ import annotations

import argparse
import json
import sys
import time
from pathlib import Path

from . import __version__
from .blowup import build_tower, dual_graph, strict_transform_classes
from .certify import CLUSTER_NOTE, Certificate, recheck_certificate
from .exactcore import StructuralError
from .pipeline import (
    ConfigError,
    ConstructionConfig,
    ConstructionResult,
    default_a,
    read_config_file,
    run_construction,
    verdict_for,
)

SCHEMA = "cremona-lab/1"


def build_report(result: ConstructionResult, timings: dict | None = None) -> dict:
    cfg = result.config
    psi = result.psi.psi
    report = {
        "schema": SCHEMA,
        "tool_version": __version__,
        "config": cfg.as_dict(),
        "seed": cfg.seed,
        "cluster_size": 4 + 2 * cfg.n,
        "verdict": result.verdict,
        "curves": {
            "C": result.curves.C.text(),
            "D": result.curves.D.text(),
            "degree": result.curves.C.degree,
            "cusp_C": [str(c) for c in result.curves.q1_C.coords],
            "cusp_D": [str(c) for c in result.curves.q1_D.coords],
        },
        "maps": {
            "f": result.f.lines(),
            "phi": result.phi.lines(),
            "phi_prime": result.phi_prime.lines(),
            "psi": psi.lines() if psi is not None else None,
            "psi_degree_predicted": result.psi.predicted_degree,
        },
        "graph": {
            "source": dual_graph(result.source.classes).to_dot(),
            "target": dual_graph(result.target.classes).to_dot(),
        },
        "erratum_note": CLUSTER_NOTE,
        "certificates": [c.to_json() for c in result.certificates],
    }
    if timings is not None:
        report["timings"] = timings
    return report


def dumps(report: dict) -> str:
    return json.dumps(report, sort_keys=True, indent=1) + "\n"


def _config_from_args(args) -> ConstructionConfig:
    data = read_config_file(args.config) if args.config else {}
    for flag, key in (("n", "n"), ("lam", "lambda"), ("mu", "mu"), ("a", "a"), ("seed", "seed")):
        v = getattr(args, flag)
        if v is not None:
            data[key] = v
    if args.psi_poly:
        data["psi_poly"] = True
    if args.modular:
        data["modular"] = True
    if args.n is not None and args.a is None and len(data.get("a") or []) not in (0, args.n):
        data.pop("a")
    return ConstructionConfig.from_mapping(data)


def cmd_construct(args) -> int:
    try:
        cfg = _config_from_args(args)
    except ConfigError as exc:
        print(f"invalid config: {exc}", file=sys.stderr)
        return 2
    start = time.perf_counter()
    try:
        result = run_construction(cfg)
    except StructuralError as exc:
        print(f"construction failed: {exc}", file=sys.stderr)
        return 3
    timings = {"total_seconds": round(time.perf_counter() - start, 3)} if args.timings else None
    text = dumps(build_report(result, timings))
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    print(f"verdict: {result.verdict}", file=sys.stderr)
    return 0


def cmd_graph(args) -> int:
    if args.n < 1:
        print("graph: n must be >= 1", file=sys.stderr)
        return 2
    t = build_tower(args.n, default_a(args.n))
    sys.stdout.write(dual_graph(strict_transform_classes(t)).to_dot())
    return 0


def _report_consistency(report: dict, certs: list[Certificate]) -> list[str]:
    """Report-level fields must agree with the copies inside the certificates."""
    problems = []
    by_name = {c.name: c for c in certs}
    deg = by_name.get("Degree:C,D")
    if deg is None:
        return ["missing Degree certificate"]
    ev = deg.evidence
    curves, maps = report["curves"], report["maps"]
    pairs = [
        ("curves.C", curves["C"], ev["C"]),
        ("curves.D", curves["D"], ev["D"]),
        ("maps.phi", maps["phi"], ev["phi"]),
        ("maps.phi_prime", maps["phi_prime"], ev["phi_prime"]),
    ]
    for subject, key in (("C", "C"), ("D", "D")):
        u = by_name.get(f"Unicuspidal:{subject}")
        if u is not None:
            pairs.append((f"Unicuspidal:{subject}", u.evidence["equation"], curves[key]))
    ci = by_name.get("ComplementIso:psi")
    if ci is not None:
        pairs += [("maps.f", maps["f"], ci.evidence["f"]), ("ComplementIso.phi", ci.evidence["phi"], maps["phi"]),
                  ("ComplementIso.phi_prime", ci.evidence["phi_prime"], maps["phi_prime"])]
        if "psi" in ci.evidence:
            pairs.append(("maps.psi", maps["psi"], ci.evidence["psi"]["lines"]))
    for name, got, want in pairs:
        if got != want:
            problems.append(f"{name} disagrees with certificate evidence")
    for side in ("source", "target"):
        g = by_name.get(f"GraphMatch:{side}")
        if g is not None and g.evidence["dot"] != report["graph"][side]:
            problems.append(f"graph.{side} disagrees with certificate evidence")
    return problems


def recheck_report(report: dict) -> tuple[int, list[str]]:
    """(exit code, message lines) for a parsed report."""
    if not isinstance(report, dict) or report.get("schema") != SCHEMA:
        return 2, [f"not a {SCHEMA} report"]
    try:
        certs = [Certificate.from_json(c) for c in report["certificates"]]
        cfg = ConstructionConfig.from_mapping(report["config"])
        report["curves"], report["maps"], report["graph"]
    except (KeyError, TypeError, ValueError) as exc:
        return 2, [f"malformed report: {exc}"]
    lines, failed = [], False
    for c in certs:
        ok, msg = recheck_certificate(c)
        lines.append(f"{'ok  ' if ok else 'FAIL'} {c.name}: {msg}")
        failed |= not ok
    for p in _report_consistency(report, certs):
        lines.append(f"FAIL report: {p}")
        failed = True
    expected = verdict_for(cfg, certs)
    if expected != report.get("verdict"):
        lines.append(f"FAIL report: verdict {report.get('verdict')!r}, certificates give {expected!r}")
        failed = True
    return (1 if failed else 0), lines


def cmd_recheck(args) -> int:
    try:
        report = json.loads(Path(args.report).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        print(f"cannot read report: {exc}", file=sys.stderr)
        return 2
    code, lines = recheck_report(report)
    for line in lines:
        print(line)
    return code


def make_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="cremona-lab", description="Curve pairs with isomorphic complements, with certificates.")
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("construct", help="build the pair (C, D) and write a JSON report")
    c.add_argument("--config", help="key = value file (n, lambda, mu, a, modular, psi_poly, seed)")
    c.add_argument("--n", type=int)
    c.add_argument("--lambda", dest="lam")
    c.add_argument("--mu")
    c.add_argument("--a", help="comma-separated rationals a_1,...,a_n")
    c.add_argument("--seed", type=int)
    c.add_argument("--psi-poly", action="store_true", help="also compute psi as polynomials")
    c.add_argument("--modular", action="store_true", help="check heavy identities modulo primes")
    c.add_argument("--out", help="write the report here instead of stdout")
    c.add_argument("--timings", action="store_true", help="include wall-clock timings (breaks byte-determinism)")
    c.set_defaults(func=cmd_construct)

    g = sub.add_parser("graph", help="print the dual graph in DOT")
    g.add_argument("--n", type=int, required=True)
    g.set_defaults(func=cmd_graph)

    r = sub.add_parser("recheck", help="re-validate every certificate in a report")
    r.add_argument("report")
    r.set_defaults(func=cmd_recheck)
    return p


def main(argv=None) -> int:
    args = make_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
