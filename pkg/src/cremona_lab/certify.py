"""Certificates for the construction, each re-checkable from its stored evidence."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Sequence

from .blowup import (
    QLABEL,
    ChartStep,
    ChartTower,
    DivisorClass,
    NoSequence,
    affine_f,
    chain_reflection,
    dual_graph,
    is_automorphism,
    is_minus_one_tower_resolution,
    lift_through_tower,
    matches_expected,
    noether_identities,
    resolve_branch,
    simulate_contractions,
    strict_transform_classes,
    transport_class,
    contraction_sequence,
)
from .exactcore import (
    XYZ,
    MPoly,
    RatFunc,
    StructuralError,
    as_rational,
    modular_power_check,
    resultant_univar,
)
from .linsys import G_Q, NoContractedConic, find_contracted_conic
from .plane import (
    CONIC_Q,
    LINE_L,
    LINE_L_PARAM,
    P1,
    PlaneCurve,
    ProjAut,
    ProjPoint,
    RationalMap,
    apply_map,
    jacobian,
    map_param,
    point_multiplicity,
    pullback,
    pure_power_exponent,
    singular_points,
)

PASS, FAIL, INCONCLUSIVE = "pass", "fail", "inconclusive"
KINDS = ("GraphMatch", "TowerResolution", "Degree", "Unicuspidal", "ComplementIso", "NonEquivalence")
CLUSTER_NOTE = ("p5 is the point where the strict transform of the conic meets E4, so the conic "
                "passes through p1, ..., p5 and has class 2H - E1 - E2 - E3 - E4 - E5")


@dataclass
class Certificate:
    kind: str
    subject: str
    verdict: str
    evidence: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown certificate kind {self.kind!r}")
        if self.verdict not in (PASS, FAIL, INCONCLUSIVE):
            raise ValueError(f"unknown verdict {self.verdict!r}")

    @property
    def name(self) -> str:
        return f"{self.kind}:{self.subject}"

    def to_json(self) -> dict:
        return {"kind": self.kind, "subject": self.subject, "verdict": self.verdict, "evidence": self.evidence}

    @classmethod
    def from_json(cls, data: dict) -> "Certificate":
        return cls(data["kind"], data["subject"], data["verdict"], data["evidence"])


def _verdict(ok: bool) -> str:
    return PASS if ok else FAIL


# serialization helpers ----------------------------------------------------------------

def _q(v) -> str:
    return str(as_rational(v))


def _pt(p: ProjPoint) -> list[str]:
    return [str(c) for c in p.coords]


def _unpt(v) -> ProjPoint:
    return ProjPoint(tuple(Fraction(c) for c in v))


def _tower_json(t: ChartTower) -> list[dict]:
    return [{"label": s.label, "kind": s.kind, "center": [_q(c) for c in s.center]} for s in t.steps]


def _tower_from_json(data, n=None, a=None) -> ChartTower:
    return ChartTower(tuple(ChartStep(int(s["label"]), s["kind"], tuple(Fraction(c) for c in s["center"])) for s in data), n, a)


def _classes_json(classes) -> dict:
    return {k: list(v.coeffs) for k, v in classes.items()}


def _classes_from_json(data) -> dict:
    return {k: DivisorClass(tuple(v)) for k, v in data.items()}


def _map_from(lines) -> RationalMap:
    return RationalMap.from_lines(lines)


def _curve_from(text) -> PlaneCurve:
    return PlaneCurve(MPoly.parse(text, XYZ))


# automorphism family ----------------------------------------------------------------

PARAM = "k"


@dataclass(frozen=True)
class AutFamily:
    """Matrices in one parameter acting on column vectors (x, y, z)."""

    param: str
    matrix: tuple[tuple[MPoly, ...], ...]

    def at(self, k) -> ProjAut:
        k = as_rational(k)
        if k == 0:
            raise ValueError("the family parameter must be nonzero")
        return ProjAut([[e.evaluate({self.param: k}) for e in row] for row in self.matrix])

    def affine(self, ring: Sequence[str]) -> tuple[MPoly, MPoly]:
        """The action in the chart z = 1 (the last row is (0, 0, 1) for this family)."""
        x, y = MPoly.var("x", ring), MPoly.var("y", ring)
        m = [[e.in_vars(ring) for e in row] for row in self.matrix]
        return m[0][0] * x + m[0][1] * y + m[0][2], m[1][0] * x + m[1][1] * y + m[1][2]

    def texts(self) -> list[list[str]]:
        return [[e.text() for e in row] for row in self.matrix]

    @classmethod
    def from_texts(cls, param: str, rows) -> "AutFamily":
        return cls(param, tuple(tuple(MPoly.parse(e, (param,)) for e in row) for row in rows))


_UNKNOWNS = tuple(f"m{i}{j}" for i in range(3) for j in range(3)) + ("s",)


def _solve_polynomial_system(eqs: list[MPoly], unknowns: Sequence[str]) -> dict[str, MPoly]:
    """Triangular elimination: solve equations linear in some unknown with constant coefficient,
    and set to zero any unknown whose power is an equation."""
    ring = tuple(unknowns)
    subs: dict[str, MPoly] = {}
    eqs = [e.in_vars(ring) for e in eqs]
    while True:
        eqs = [e for e in eqs if not e.is_zero()]
        if any(e.is_constant() for e in eqs):
            raise StructuralError("inconsistent conditions on the automorphism")
        chosen = None
        for e in eqs:
            terms = e.terms()
            if len(terms) == 1:
                exp = next(iter(terms))
                used = [v for v, d in zip(ring, exp) if d]
                if len(used) == 1:
                    chosen = (used[0], MPoly.zero(ring))
                    break
            for v in ring:
                if e.degree(v) != 1:
                    continue
                coeff = e.derivative(v)
                if coeff.is_constant():
                    chosen = (v, -(e - coeff * MPoly.var(v, ring)) / coeff.constant_term())
                    break
            if chosen:
                break
        if chosen is None:
            break
        v, val = chosen
        subs = {k: w.substitute({v: val} | _ident(ring, v), ring) for k, w in subs.items()}
        subs[v] = val
        eqs = [e.substitute({v: val} | _ident(ring, v), ring) for e in eqs]
    if eqs:
        raise StructuralError("conditions are not triangular")
    return subs


def _ident(ring, skip):
    return {v: MPoly.var(v, ring) for v in ring if v != skip}


def automorphism_family(L: PlaneCurve = LINE_L, Q: PlaneCurve = CONIC_Q, p1: ProjPoint = P1) -> AutFamily:
    """Automorphisms preserving L, Q and p1, as an explicit one-parameter family."""
    ring = _UNKNOWNS
    M = [[MPoly.var(f"m{i}{j}", ring) for j in range(3)] for i in range(3)]
    eqs = []
    ell = [L.equation.derivative(v).evaluate((0, 0, 0)) for v in XYZ]
    row = [sum((ell[i] * M[i][j] for i in range(3)), MPoly.zero(ring)) for j in range(3)]
    eqs += [row[a] * ell[b] - row[b] * ell[a] for a, b in ((0, 1), (0, 2), (1, 2))]
    img = [sum((M[i][j] * p1.coords[j] for j in range(3)), MPoly.zero(ring)) for i in range(3)]
    eqs += [img[a] * p1.coords[b] - img[b] * p1.coords[a] for a, b in ((0, 1), (0, 2), (1, 2))]
    eqs = [e for e in eqs if not e.is_zero()]
    # for L: z = 0 and p1 = (0:0:1) the last row is (0, 0, m22); fix the scale there
    eqs.append(M[2][2] - 1)
    big = ring + XYZ
    v = [MPoly.var(c, big) for c in XYZ]
    Mv = [sum((M[i][j].in_vars(big) * v[j] for j in range(3)), MPoly.zero(big)) for i in range(3)]
    G = Q.equation.in_vars(big)
    diff = G.substitute({"x": Mv[0], "y": Mv[1], "z": Mv[2]} | {u: MPoly.var(u, big) for u in ring}, big) \
        - MPoly.var("s", big) * G
    by_mono: dict = {}
    for exp, c in diff.terms().items():
        key = exp[len(ring):]
        by_mono.setdefault(key, {})[exp[:len(ring)]] = c
    eqs += [MPoly.from_terms(ring, t) for t in by_mono.values()]
    subs = _solve_polynomial_system(eqs, ring)
    entries = {f"m{i}{j}" for i in range(3) for j in range(3)}
    used = set()
    for u in entries:
        val = subs.get(u, MPoly.var(u, ring))
        used |= set(val.used_vars())
    used -= {"s"}
    if len(used) != 1:
        raise StructuralError(f"automorphism family has dimension {len(used)}, expected 1")
    (pvar,) = used
    pr = (PARAM,)
    rename = {u: (MPoly.var(PARAM, pr) if u == pvar else MPoly.zero(pr)) for u in ring}
    mat = tuple(tuple(subs.get(f"m{i}{j}", MPoly.var(f"m{i}{j}", ring)).substitute(rename, pr) for j in range(3)) for i in range(3))
    fam = AutFamily(PARAM, mat)
    checks = family_checks(fam, L, Q, p1)
    if not all(checks.values()):
        raise StructuralError(f"family fails its defining properties: {checks}")
    return fam


def family_checks(fam: AutFamily, L: PlaneCurve = LINE_L, Q: PlaneCurve = CONIC_Q, p1: ProjPoint = P1) -> dict[str, bool]:
    """Symbolic checks in the parameter: the family preserves L, Q (up to scalar), p1, and is a group."""
    k = fam.param
    ring = (k,) + XYZ
    M = [[e.in_vars(ring) for e in row] for row in fam.matrix]
    v = [MPoly.var(c, ring) for c in XYZ]
    Mv = [sum((M[i][j] * v[j] for j in range(3)), MPoly.zero(ring)) for i in range(3)]
    sub = {"x": Mv[0], "y": Mv[1], "z": Mv[2], k: MPoly.var(k, ring)}

    def preserved(F: MPoly) -> bool:
        return _proportional(F.in_vars(ring).substitute(sub, ring), F.in_vars(ring), k)

    img_p = [sum((fam.matrix[i][j] * p1.coords[j] for j in range(3)), MPoly.zero((k,))) for i in range(3)]
    fixes_p = all((img_p[a] * p1.coords[b] - img_p[b] * p1.coords[a]).is_zero() for a in range(3) for b in range(3))
    two = (k, "kk")
    A = [[e.in_vars(two) for e in row] for row in fam.matrix]
    B = [[e.substitute({k: MPoly.var("kk", two)}, two) for e in row] for row in fam.matrix]
    prod = [[sum((A[i][l] * B[l][j] for l in range(3)), MPoly.zero(two)) for j in range(3)] for i in range(3)]
    kk = MPoly.var(k, two) * MPoly.var("kk", two)
    target = [[e.substitute({k: kk}, two) for e in row] for row in fam.matrix]
    group = all(prod[i][j] == target[i][j] for i in range(3) for j in range(3))
    identity = fam.at(1) == ProjAut.identity()
    return {"preserves_L": preserved(L.equation), "preserves_Q": preserved(Q.equation), "fixes_p1": fixes_p,
            "group_law": group, "identity_at_1": identity}


def _proportional(img: MPoly, F: MPoly, k: str) -> bool:
    """img = c(k) * F for a polynomial c(k), with c nonzero."""
    q, r = img.divmod(F)
    return r.is_zero() and not q.is_zero() and set(q.used_vars()) <= {k}


# chart constraints ------------------------------------------------------------------

@dataclass(frozen=True)
class ChartConstraint:
    label: int
    index: int | None
    coordinate: int
    poly: MPoly


def _centers_ratfunc(centers, ring):
    out = []
    for c in centers:
        tup = []
        for v in c:
            if isinstance(v, RatFunc):
                tup.append(RatFunc(v.num.in_vars(ring), v.den.in_vars(ring)))
            else:
                tup.append(RatFunc(MPoly.constant(as_rational(v), ring)))
        out.append(tuple(tup))
    return out


def transported_centers(source: ChartTower, lam, mu, params: Sequence[str] = ()):
    """Centers of the image cluster under the quadratic map (symbolic when lam, mu are names)."""
    ring = ("x", "y") + tuple(params)
    lam_v = MPoly.var(lam, ring) if isinstance(lam, str) else as_rational(lam)
    mu_v = MPoly.var(mu, ring) if isinstance(mu, str) else as_rational(mu)
    return lift_through_tower(source, affine_f(lam_v, mu_v, ring), params).centers


def chart_constraints(family: AutFamily, source: ChartTower, target, params: Sequence[str] = ()) -> list[ChartConstraint]:
    """Polynomials in k that vanish iff the lifted family member sends each p_i to p'_i.

    ``target`` is a ChartTower or a list of (possibly symbolic) centers over ``params``.
    The index attached to a constraint at step 4+n+j is i = n+1-j, the position of the
    corresponding coefficient a_i.
    """
    ring = (family.param,) + tuple(p for p in params if p != family.param)
    lift = lift_through_tower(source, family.affine(("x", "y") + ring), ring)
    tcenters = target.centers() if isinstance(target, ChartTower) else list(target)
    got = _centers_ratfunc(lift.centers, ring)
    want = _centers_ratfunc(tcenters, ring)
    n = source.n
    out = []
    for step, gc, wc in zip(source.steps, got, want):
        for coord in range(2):
            d = gc[coord] - wc[coord]
            if d.is_zero():
                continue
            idx = None
            if n is not None and step.label > 4 + n:
                idx = n + 1 - (step.label - 4 - n)
            out.append(ChartConstraint(step.label, idx, coord, d.num.normalized()))
    return out


def closed_form_constraints(n: int, a: Sequence, lam, mu) -> dict[int, MPoly]:
    """k^(2i-1) b_i - a_i with b_i = a_i lam^-i mu^-(2i-1), for the nonzero a_i (numerators)."""
    ring = (PARAM,)
    k = MPoly.var(PARAM, ring)
    lam, mu = as_rational(lam), as_rational(mu)
    out = {}
    for i, ai in enumerate(a, start=1):
        ai = as_rational(ai)
        if ai == 0:
            continue
        bi = ai / (lam ** i * mu ** (2 * i - 1))
        out[i] = (k ** (2 * i - 1) * bi - ai).normalized()
    return out


# Euclid chains ----------------------------------------------------------------------

def euclid_chain(p: MPoly, q: MPoly) -> list[dict]:
    """Steps (dividend, divisor, quotient, remainder) of the univariate Euclidean algorithm."""
    if p.is_zero() or q.is_zero():
        raise ValueError("Euclid chain needs nonzero inputs")
    a, b = (p, q) if p.total_degree() >= q.total_degree() else (q, p)
    steps = []
    while not b.is_zero():
        quo, rem = a.divmod(b)
        steps.append({"dividend": a.text(), "divisor": b.text(), "quotient": quo.text(), "remainder": rem.text()})
        a, b = b, rem
    return steps


def chain_gcd(steps: list[dict], var: str = PARAM) -> MPoly:
    return MPoly.parse(steps[-1]["divisor"], (var,)).normalized()


def verify_euclid_chain(steps: list[dict], first: MPoly, second: MPoly, var: str = PARAM) -> bool:
    ring = (var,)
    P = lambda s: MPoly.parse(s, ring)
    if not steps:
        return False
    if {P(steps[0]["dividend"]), P(steps[0]["divisor"])} != {first.in_vars(ring), second.in_vars(ring)}:
        return False
    for i, st in enumerate(steps):
        a, b, q, r = P(st["dividend"]), P(st["divisor"]), P(st["quotient"]), P(st["remainder"])
        if a != q * b + r:
            return False
        if not r.is_zero() and r.total_degree() >= b.total_degree():
            return False
        if i + 1 < len(steps):
            nxt = steps[i + 1]
            if P(nxt["dividend"]) != b or P(nxt["divisor"]) != r:
                return False
        elif not r.is_zero():
            return False
    return True


# symbolic escape analysis -----------------------------------------------------------

def symbolic_escape(source: ChartTower, family: AutFamily | None = None) -> dict:
    """With lam, mu symbolic, eliminate k from the two decisive constraints and factor."""
    family = family or automorphism_family()
    params = ("lam", "mu")
    target = transported_centers(source, "lam", "mu", params)
    cons = chart_constraints(family, source, target, params)
    n = source.n
    pick = {c.index: c.poly for c in cons if c.index in (n, n - 1)}
    if len(pick) != 2:
        return {"available": False, "reason": "fewer than two decisive constraints"}
    ring = (PARAM,) + params
    P, Qp = pick[n].in_vars(ring), pick[n - 1].in_vars(ring)
    R = resultant_univar(P, Qp, PARAM)
    _, factors = R._p.factor()
    facs = []
    for f, e in factors:
        fp = MPoly(R.vars, f).normalized()
        if not fp.is_constant():
            facs.append((fp, e))
    lam = MPoly.var("lam", R.vars)
    allowed = {lam.normalized(), MPoly.var("mu", R.vars).normalized(), (lam - 1).normalized()}
    only = all(f in allowed for f, _ in facs)
    return {
        "available": True,
        "constraints": {str(i): pick[i].text() for i in (n - 1, n)},
        "resultant_factors": [[f.text(), e] for f, e in facs],
        "only_escape_lambda_1_or_mu_0": only,
    }


# the certificates -------------------------------------------------------------------

def _constraint_json(c: ChartConstraint) -> dict:
    return {"label": c.label, "index": c.index, "coordinate": c.coordinate, "poly": c.poly.text()}


def nonequivalence_certificate(cfg, result, with_symbolic: bool = True) -> Certificate:
    fam = automorphism_family()
    source, target = result.source.tower, result.target.tower
    cons = chart_constraints(fam, source, target)
    n = cfg.n
    closed = closed_form_constraints(n, cfg.a, cfg.lam, cfg.mu)
    evidence: dict[str, Any] = {
        "n": n,
        "a": [_q(v) for v in cfg.a],
        "lambda": _q(cfg.lam),
        "mu": _q(cfg.mu),
        "family": {"param": fam.param, "matrix": fam.texts(), "checks": family_checks(fam)},
        "source_tower": _tower_json(source),
        "target_tower": _tower_json(target),
        "constraints": [_constraint_json(c) for c in cons],
        "relies_on": [
            "an automorphism carrying C to D preserves L and Q and fixes p1, so it lies in the family",
            "such an automorphism carries the cluster p_1..p_m onto p'_1..p'_m",
        ],
        "field_independence": "a constant gcd over Q excludes common roots in every extension field",
    }
    early = [c for c in cons if c.label <= 4 + n]
    evidence["first_4_plus_n_unconstrained"] = not early
    if n < 2 or cfg.a[-2] == 0:
        evidence["reason"] = "n < 2" if n < 2 else "a_{n-1} = 0"
        return Certificate("NonEquivalence", "C,D", INCONCLUSIVE, evidence)
    pick = {c.index: c.poly for c in cons if c.index in (n, n - 1)}
    if len(pick) != 2:
        evidence["reason"] = "missing decisive constraint"
        return Certificate("NonEquivalence", "C,D", FAIL, evidence)
    chain = euclid_chain(pick[n], pick[n - 1])
    g = chain_gcd(chain)
    evidence["decisive"] = {str(n): pick[n].text(), str(n - 1): pick[n - 1].text()}
    evidence["euclid_chain"] = chain
    evidence["gcd"] = g.text()
    if n in closed and n - 1 in closed:
        cchain = euclid_chain(closed[n], closed[n - 1])
        evidence["closed_form_check"] = {
            "constraints": {str(i): closed[i].text() for i in (n - 1, n)},
            "euclid_chain": cchain,
            "gcd": chain_gcd(cchain).text(),
        }
    if with_symbolic:
        evidence["symbolic_escape"] = symbolic_escape(source, fam)
    ok = g.is_constant() and not g.is_zero() and not early
    return Certificate("NonEquivalence", "C,D", _verdict(ok), evidence)


def unicuspidal_certificate(c: PlaneCurve, subject: str = "C", param=None, samples: int = 20) -> Certificate:
    locus = singular_points(c)
    evidence: dict[str, Any] = {
        "equation": c.text(),
        "degree": c.degree,
        "singular_points": [_pt(p) for p in locus.rational_points],
        "singular_count": locus.total_count,
    }
    if locus.total_count != 1 or len(locus.rational_points) != 1:
        return Certificate("Unicuspidal", subject, FAIL, evidence)
    p = locus.rational_points[0]
    branch = resolve_branch(c.equation, p)
    d = c.degree
    evidence.update({
        "multiplicity": point_multiplicity(c.equation, p),
        "multiplicity_sequence": list(branch.multiplicities),
        "single_branch": branch.single_branch,
        "delta_sum": branch.delta_sum(),
        "rational_curve_bound": (d - 1) * (d - 2),
        "on_conic": CONIC_Q.contains(p),
    })
    if param is not None:
        pts = [param.at(Fraction(t), 1) for t in range(1, 2 * samples + 1)]
        evidence["injective_on_samples"] = len(set(pts)) == len(pts)
        evidence["complement_affine_line"] = "supported, not fully certified"
    return Certificate("Unicuspidal", subject, PASS, evidence)


def complement_iso_certificate(result) -> Certificate:
    cfg = result.config
    phi, phip, f = result.phi, result.phi_prime, result.f
    samples = result.psi.samples
    evidence: dict[str, Any] = {
        "f": f.lines(),
        "phi": phi.lines(),
        "phi_prime": phip.lines(),
        "seed": result.psi.seed,
        "samples": [
            {"r": _pt(s.r), "phi_r": _pt(s.phi_r), "preimage": _pt(s.preimage), "lhs": _pt(s.lhs), "rhs": _pt(s.rhs)}
            for s in samples
        ],
    }
    failures = []
    if not (len(samples) == cfg.samples and all(s.holds for s in samples)):
        failures.append("(i) sampled identity psi(phi(r)) = phi'(f(r))")
    checks = {}
    for name, m in (("phi", phi), ("phi_prime", phip)):
        try:
            conic = find_contracted_conic(m).equation
            checks[f"{name}_contracted_conic"] = conic.text()
            if conic != G_Q:
                failures.append(f"(ii) contracted conic of {name} is not xz - y^2")
        except (NoContractedConic, StructuralError) as exc:
            checks[f"{name}_contracted_conic"] = f"error: {exc}"
            failures.append(f"(ii) {name} contracts no conic")
        e = pure_power_exponent(pullback(m, CONIC_Q), G_Q)
        checks[f"{name}_pullback_exponent"] = e
        if e != m.degree:
            failures.append(f"(iii) pullback of the conic under {name} is not a pure power")
    evidence["checks"] = checks
    psi = result.psi.psi
    if psi is not None:
        pairs = [(s.phi_r, s.rhs) for s in samples]
        evidence["psi"] = _psi_evidence(psi, result.curves.C, pairs, cfg.modular)
        if not evidence["psi"]["ok"]:
            failures.append("(iv) polynomial psi identities")
    evidence["failures"] = failures
    return Certificate("ComplementIso", "psi", _verdict(not failures), evidence)


def _psi_evidence(psi: RationalMap, C: PlaneCurve, pairs, modular: bool) -> dict:
    """Polynomial checks on psi; ``pairs`` are (phi(r), phi'(f(r))) sample pairs."""
    d = C.degree
    deg = psi.degree
    w, e = (2 * deg - 2) // d, 3 * (deg - 1) // d
    out: dict[str, Any] = {"lines": psi.lines(), "C": C.text(), "degree": deg, "w": w, "e": e,
                           "mode": "probabilistic identity check" if modular else "exact division"}
    pb = pullback(psi, CONIC_Q)
    J = jacobian(psi)
    if modular:
        ok_pb = modular_power_check(pb, [(G_Q, 1), (C.equation, w)])
        ok_j = modular_power_check(J, [(C.equation, e)])
    else:
        rest, r = pb.divmod(G_Q)
        ok_pb = r.is_zero() and pure_power_exponent(rest, C.equation) == w
        ok_j = pure_power_exponent(J, C.equation) == e
    ok_deg = 2 * deg == 2 + d * w and 3 * (deg - 1) == d * e
    ok_samples = all(apply_map(psi, src) == dst for src, dst in pairs)
    out.update({"pullback_conic": ok_pb, "jacobian": ok_j, "degree_bookkeeping": ok_deg, "samples": ok_samples})
    out["ok"] = ok_pb and ok_j and ok_deg and ok_samples
    return out


def _graph_certificate(t: ChartTower, subject: str) -> Certificate:
    classes = strict_transform_classes(t)
    g = dual_graph(classes)
    n = t.n
    match = matches_expected(g, n)
    sym = is_automorphism(g, chain_reflection(n))
    ev = {
        "n": n,
        "classes": _classes_json(classes),
        "self_intersections": dict(g.vertices),
        "edges": [[u, v, k] for u, v, k in g.edges],
        "dot": g.to_dot(),
        "is_tree": g.is_tree(),
        "chain_reflection_automorphism": sym,
        "erratum_note": CLUSTER_NOTE,
    }
    return Certificate("GraphMatch", subject, _verdict(match and sym and g.is_tree()), ev)


def _tower_certificate(t: ChartTower, subject: str) -> Certificate:
    classes = strict_transform_classes(t)
    m = t.length
    ev: dict[str, Any] = {"n": t.n, "tower": _tower_json(t), "classes": _classes_json(classes)}
    ok = True
    for name, keep in (("keep_last", f"E{m}"), ("keep_conic", QLABEL)):
        try:
            seq = contraction_sequence(classes, keep=keep)
            final = simulate_contractions(classes, seq)[keep]
            ev[name] = {"sequence": seq, "kept_self_intersection": final.self_intersection()}
        except NoSequence as exc:
            ev[name] = {"error": str(exc)}
            ok = False
    ev["conic_minus_one_tower"] = is_minus_one_tower_resolution(t, G_Q)
    ev["conic_self_intersection"] = classes[QLABEL].self_intersection()
    ok = ok and ev["conic_minus_one_tower"] and t.is_chain()
    ev["is_chain"] = t.is_chain()
    return Certificate("TowerResolution", subject, _verdict(ok), ev)


def _degree_certificate(result) -> Certificate:
    n = result.config.n
    hom = result.source.homaloidal
    hom_t = result.target.homaloidal
    L_class = DivisorClass((1,) + (0,) * (hom.rank - 1))
    ev = {
        "n": n,
        "expected": 4 * n + 1,
        "homaloidal": list(hom.coeffs),
        "homaloidal_target": list(hom_t.coeffs),
        "noether": list(noether_identities(hom)),
        "line_transport": transport_class(L_class, [hom]),
        "phi": result.phi.lines(),
        "phi_prime": result.phi_prime.lines(),
        "C": result.curves.C.text(),
        "D": result.curves.D.text(),
        "degree_C": result.curves.C.degree,
        "degree_D": result.curves.D.degree,
        "distinct": result.curves.C != result.curves.D,
    }
    ok = _degree_ok(ev)
    return Certificate("Degree", "C,D", _verdict(ok), ev)


def _degree_ok(ev: dict) -> bool:
    e = ev["expected"]
    return (ev["degree_C"] == e and ev["degree_D"] == e and ev["homaloidal"][0] == e
            and ev["line_transport"] == e and all(ev["noether"]) and ev["homaloidal"] == ev["homaloidal_target"])


def tower_certificates(result) -> list[Certificate]:
    out = []
    for subject, data in (("source", result.source), ("target", result.target)):
        out.append(_graph_certificate(data.tower, subject))
        out.append(_tower_certificate(data.tower, subject))
    out.append(_degree_certificate(result))
    return out


def all_certificates(result) -> list[Certificate]:
    certs = tower_certificates(result)
    C, D = result.curves.C, result.curves.D
    certs.append(unicuspidal_certificate(C, "C", map_param(result.phi, LINE_L_PARAM)))
    certs.append(unicuspidal_certificate(D, "D", map_param(result.phi_prime, LINE_L_PARAM)))
    certs.append(complement_iso_certificate(result))
    certs.append(nonequivalence_certificate(result.config, result))
    return certs


# re-checking from evidence ----------------------------------------------------------

class RecheckError(Exception):
    pass


def _require(cond: bool, msg: str):
    if not cond:
        raise RecheckError(msg)


def _recheck_graph(cert: Certificate) -> str:
    ev = cert.evidence
    classes = _classes_from_json(ev["classes"])
    g = dual_graph(classes)
    _require(dict(g.vertices) == {k: int(v) for k, v in ev["self_intersections"].items()}, "self-intersections differ")
    _require([[u, v, k] for u, v, k in g.edges] == ev["edges"], "edges differ")
    _require(g.to_dot() == ev["dot"], "DOT text differs")
    n = int(ev["n"])
    ok = matches_expected(g, n) and is_automorphism(g, chain_reflection(n)) and g.is_tree()
    return _verdict(ok)


def _recheck_tower(cert: Certificate) -> str:
    ev = cert.evidence
    n = ev["n"]
    t = _tower_from_json(ev["tower"], n)
    classes = _classes_from_json(ev["classes"])
    _require(strict_transform_classes(t) == classes, "classes do not match the stored tower")
    ok = True
    for name, keep in (("keep_last", f"E{t.length}"), ("keep_conic", QLABEL)):
        part = ev[name]
        if "sequence" not in part:
            ok = False
            continue
        seq = part["sequence"]
        _require(keep not in seq and sorted(seq) == sorted(k for k in classes if k != keep), f"{name}: wrong targets")
        final = simulate_contractions(classes, seq)
        _require(len(final) == 1, f"{name}: lattice rank is not 1")
        _require(final[keep].self_intersection() == part["kept_self_intersection"], f"{name}: kept class differs")
    pred = is_minus_one_tower_resolution(t, G_Q)
    _require(pred == ev["conic_minus_one_tower"], "tower predicate differs")
    _require(classes[QLABEL].self_intersection() == ev["conic_self_intersection"], "conic self-intersection differs")
    return _verdict(ok and pred and t.is_chain())


def _recheck_degree(cert: Certificate) -> str:
    ev = cert.evidence
    phi, phip = _map_from(ev["phi"]), _map_from(ev["phi_prime"])
    C, D = _curve_from(ev["C"]), _curve_from(ev["D"])
    _require(C.degree == ev["degree_C"] and D.degree == ev["degree_D"], "stored degrees differ")
    for name, m, c in (("C", phi, C), ("D", phip, D)):
        image = map_param(m, LINE_L_PARAM)
        val = c.equation.substitute(dict(zip(XYZ, image.coords)), ("t", "u"))
        _require(val.is_zero(), f"{name} does not contain the image of L")
        _, factors = c.equation._p.factor()
        _require(len(factors) == 1 and factors[0][1] == 1, f"{name} is not irreducible")
    hom = DivisorClass(tuple(ev["homaloidal"]))
    _require(list(noether_identities(hom)) == ev["noether"], "Noether data differs")
    _require(transport_class(DivisorClass((1,) + (0,) * (hom.rank - 1)), [hom]) == ev["line_transport"], "line transport differs")
    _require((C != D) == ev["distinct"], "distinctness differs")
    return _verdict(_degree_ok(ev))


def _recheck_unicuspidal(cert: Certificate) -> str:
    ev = cert.evidence
    c = _curve_from(ev["equation"])
    _require(c.degree == ev["degree"], "degree differs")
    locus = singular_points(c)
    _require(locus.total_count == ev["singular_count"], "singular point count differs")
    _require([_pt(p) for p in locus.rational_points] == ev["singular_points"], "singular points differ")
    if locus.total_count != 1 or len(locus.rational_points) != 1:
        return FAIL
    p = locus.rational_points[0]
    _require(point_multiplicity(c.equation, p) == ev["multiplicity"], "multiplicity differs")
    branch = resolve_branch(c.equation, p)
    _require(list(branch.multiplicities) == ev["multiplicity_sequence"], "multiplicity sequence differs")
    _require(branch.single_branch == ev["single_branch"], "branch data differs")
    _require(CONIC_Q.contains(p) == ev["on_conic"], "conic incidence differs")
    return PASS


def _recheck_complement(cert: Certificate) -> str:
    ev = cert.evidence
    f, phi, phip = _map_from(ev["f"]), _map_from(ev["phi"]), _map_from(ev["phi_prime"])
    failures = []
    ok_samples = bool(ev["samples"])
    for s in ev["samples"]:
        r, s_img, back = _unpt(s["r"]), _unpt(s["phi_r"]), _unpt(s["preimage"])
        _require(apply_map(phi, r) == s_img, "phi(r) differs from the stored sample")
        _require(apply_map(phi, back) == s_img, "stored preimage does not map to phi(r)")
        lhs, rhs = apply_map(phip, apply_map(f, back)), apply_map(phip, apply_map(f, r))
        _require(_pt(lhs) == s["lhs"] and _pt(rhs) == s["rhs"], "sample images differ")
        ok_samples = ok_samples and lhs == rhs
    if not ok_samples:
        failures.append("(i) sampled identity psi(phi(r)) = phi'(f(r))")
    for name, m in (("phi", phi), ("phi_prime", phip)):
        try:
            conic = find_contracted_conic(m).equation
        except (NoContractedConic, StructuralError):
            conic = None
        if conic != G_Q:
            failures.append(f"(ii) contracted conic of {name} is not xz - y^2")
        e = pure_power_exponent(pullback(m, CONIC_Q), G_Q)
        _require(e == ev["checks"][f"{name}_pullback_exponent"], f"pullback exponent of {name} differs")
        if e != m.degree:
            failures.append(f"(iii) pullback of the conic under {name} is not a pure power")
    if "psi" in ev:
        p = ev["psi"]
        psi = _map_from(p["lines"])
        pairs = [(_unpt(s["phi_r"]), _unpt(s["rhs"])) for s in ev["samples"]]
        fresh = _psi_evidence(psi, _curve_from(p["C"]), pairs, p["mode"] != "exact division")
        _require(fresh["ok"] == p["ok"], "polynomial psi checks differ")
        if not p["ok"]:
            failures.append("(iv) polynomial psi identities")
    _require(failures == ev["failures"], "failure list differs")
    return _verdict(not failures)


def _recheck_nonequivalence(cert: Certificate) -> str:
    ev = cert.evidence
    n = int(ev["n"])
    a = tuple(Fraction(v) for v in ev["a"])
    fam = AutFamily.from_texts(ev["family"]["param"], ev["family"]["matrix"])
    checks = family_checks(fam)
    _require(checks == ev["family"]["checks"] and all(checks.values()), "family checks differ")
    source = _tower_from_json(ev["source_tower"], n, a)
    target = _tower_from_json(ev["target_tower"], n)
    _require(list(target.centers()) == list(transported_centers(source, Fraction(ev["lambda"]), Fraction(ev["mu"]))),
             "stored target cluster is not the transport of the source cluster")
    cons = chart_constraints(fam, source, target)
    _require([_constraint_json(c) for c in cons] == ev["constraints"], "constraints differ")
    early = [c for c in cons if c.label <= 4 + n]
    if n < 2 or a[-2] == 0:
        return INCONCLUSIVE
    pick = {c.index: c.poly for c in cons if c.index in (n, n - 1)}
    if len(pick) != 2:
        return FAIL
    chain = ev["euclid_chain"]
    _require(verify_euclid_chain(chain, pick[n], pick[n - 1]), "Euclid chain does not verify")
    g = chain_gcd(chain)
    _require(g.text() == ev["gcd"], "gcd differs")
    return _verdict(g.is_constant() and not g.is_zero() and not early)


_RECHECKERS = {
    "GraphMatch": _recheck_graph,
    "TowerResolution": _recheck_tower,
    "Degree": _recheck_degree,
    "Unicuspidal": _recheck_unicuspidal,
    "ComplementIso": _recheck_complement,
    "NonEquivalence": _recheck_nonequivalence,
}


def recheck_certificate(cert: Certificate) -> tuple[bool, str]:
    """Recompute the verdict from the evidence alone; (ok, message)."""
    try:
        verdict = _RECHECKERS[cert.kind](cert)
    except RecheckError as exc:
        return False, str(exc)
    except (KeyError, TypeError, ValueError, ArithmeticError, StructuralError) as exc:
        return False, f"evidence unusable: {type(exc).__name__}: {exc}"
    if verdict != cert.verdict:
        return False, f"stored verdict {cert.verdict}, recomputed {verdict}"
    return True, verdict
