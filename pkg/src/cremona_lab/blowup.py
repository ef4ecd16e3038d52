"""Towers of point blow-ups in affine charts, the Picard lattice, dual graphs and contractions.

A tower is a chain of elementary blow-ups written in affine coordinates.  The
plane chart is z = 1, and each step records the blown-up center in the previous
chart together with which new coordinate cuts out the exceptional curve:

    kind "x":  (x, y) -> (x + c0, x*y + c1)     exceptional curve  x = 0
    kind "y":  (x, y) -> (x*y + c0, y + c1)     exceptional curve  y = 0
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .exactcore import MPoly, RatFunc, StructuralError, XYZ, as_rational, solve_exact
from .plane import ProjPoint, singular_points, PlaneCurve

AFF = ("x", "y")
KINDS = ("x", "y")


class NoSequence(StructuralError):
    """No admissible order of (-1)-contractions exists for the requested targets."""


# chart helpers ----------------------------------------------------------------------

def _aff_gens(ring=AFF):
    return MPoly.var("x", ring), MPoly.var("y", ring)


def dehomogenize(F: MPoly, point: ProjPoint | None = None) -> tuple[MPoly, tuple[Fraction, Fraction]]:
    """Affine equation and coordinates of ``point`` in a chart where the point is finite.

    Chart z = 1 uses (x, y); chart y = 1 uses (x, z) renamed to (x, y); chart x = 1
    uses (y, z) renamed to (x, y).
    """
    x, y = _aff_gens()
    if point is None or point.coords[2] != 0:
        local = F.substitute({"x": x, "y": y, "z": 1}, AFF)
        pc = (point.coords[0], point.coords[1]) if point is not None else (Fraction(0), Fraction(0))
    elif point.coords[1] != 0:
        local = F.substitute({"x": x, "y": 1, "z": y}, AFF)
        pc = (point.coords[0], point.coords[2])
    else:
        local = F.substitute({"x": 1, "y": x, "z": y}, AFF)
        pc = (point.coords[1], point.coords[2])
    return local, pc


def translate(F: MPoly, center) -> MPoly:
    x, y = _aff_gens(F.vars)
    return F.substitute({"x": x + center[0], "y": y + center[1]} | _keep(F.vars), F.vars)


def order_at_origin(F: MPoly) -> int:
    return F.min_degree_in(AFF) if not F.is_zero() else -1


def _keep(ring) -> dict:
    return {v: MPoly.var(v, ring) for v in ring if v not in AFF}


def chart_substitution(kind: str, center, ring=AFF) -> dict:
    x, y = _aff_gens(ring)
    c0, c1 = center
    if kind == "x":
        sub = {"x": x + c0, "y": x * y + c1}
    elif kind == "y":
        sub = {"x": x * y + c0, "y": y + c1}
    else:
        raise ValueError(f"unknown chart kind {kind!r}")
    return sub | _keep(ring)


def strict_transform(F: MPoly, kind: str, center) -> tuple[MPoly, int]:
    """Strict transform of an affine curve under one elementary blow-up, and its multiplicity."""
    m = order_at_origin(translate(F, center))
    pulled = F.substitute(chart_substitution(kind, center, F.vars), F.vars)
    e = MPoly.var(kind, F.vars)
    return (pulled.exact_div(e ** m) if m > 0 else pulled), m


# towers -----------------------------------------------------------------------------

@dataclass(frozen=True)
class ChartStep:
    label: int
    kind: str
    center: tuple[Fraction, Fraction]

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown chart kind {self.kind!r}")
        object.__setattr__(self, "center", tuple(as_rational(c) for c in self.center))

    def chart_map(self, ring=AFF) -> tuple[MPoly, MPoly]:
        sub = chart_substitution(self.kind, self.center, ring)
        return sub["x"], sub["y"]


@dataclass(frozen=True)
class ChartTower:
    """Chain of blow-ups starting at the point (c0 : c1 : 1) of the first center."""

    steps: tuple[ChartStep, ...]
    n: int | None = None
    a: tuple[Fraction, ...] | None = None

    def __post_init__(self):
        object.__setattr__(self, "steps", tuple(self.steps))
        for i, s in enumerate(self.steps, start=1):
            if s.label != i:
                raise ValueError("chart steps must be labelled 1, 2, ... in order")

    @property
    def length(self) -> int:
        return len(self.steps)

    def __len__(self):
        return len(self.steps)

    @property
    def anchor(self) -> ProjPoint:
        c0, c1 = self.steps[0].center
        return ProjPoint((c0, c1, 1))

    def centers(self) -> list[tuple[Fraction, Fraction]]:
        return [s.center for s in self.steps]

    def truncated(self, k: int) -> "ChartTower":
        return ChartTower(self.steps[:k], self.n, self.a)

    def composed_chart(self, k: int, base: int = 0) -> tuple[MPoly, MPoly]:
        """Coordinates of chart ``base`` (0 = the plane chart z = 1) as polynomials in chart k."""
        X, Y = _aff_gens()
        for step in self.steps[base:k]:
            sx, sy = step.chart_map()
            X, Y = X.substitute({"x": sx, "y": sy}, AFF), Y.substitute({"x": sx, "y": sy}, AFF)
        return X, Y

    def is_chain(self) -> bool:
        """Every center after the first lies on the exceptional curve of the previous blow-up."""
        for prev, step in zip(self.steps, self.steps[1:]):
            coord = step.center[0] if prev.kind == "x" else step.center[1]
            if coord != 0:
                return False
        return True


def build_tower(n: int, a: Sequence) -> ChartTower:
    """The cluster p_1, ..., p_{4+2n} at (0:0:1).

    Four free steps of kind "y" resolve the contact with the conic xz = y^2 and
    reach the chart (x y^4 + y^2, y); n steps at the chart origins produce
    (x, x^n y); the last n steps have centers (0, a_n), (0, a_{n-1}), ..., (0, a_1),
    so the final chart is (x, x^n y + a_1 x^{n-1} + ... + a_n).
    """
    if int(n) != n or n < 1:
        raise ValueError("n must be a positive integer")
    a = tuple(as_rational(v) for v in a)
    if len(a) != n:
        raise ValueError(f"expected {n} coefficients, got {len(a)}")
    if a[-1] == 0:
        raise ValueError("the last coefficient a_n must be nonzero")
    steps = [ChartStep(1, "y", (0, 0)), ChartStep(2, "y", (0, 0)), ChartStep(3, "y", (1, 0)), ChartStep(4, "y", (0, 0))]
    steps += [ChartStep(4 + i, "x", (0, 0)) for i in range(1, n + 1)]
    steps += [ChartStep(4 + n + j, "x", (0, a[n - j])) for j in range(1, n + 1)]
    return ChartTower(tuple(steps), n, a)


def free_centers(t: ChartTower) -> tuple[Fraction, ...]:
    """Second coordinates of the last n centers (c_1, ..., c_n), so c_j = a_{n+1-j}."""
    return tuple(s.center[1] for s in t.steps[4 + t.n:])


# lifting maps through towers --------------------------------------------------------

def _as_ratfunc(v, ring) -> RatFunc:
    if isinstance(v, RatFunc):
        return RatFunc(v.num.in_vars(ring), v.den.in_vars(ring))
    if isinstance(v, MPoly):
        return RatFunc(v.in_vars(ring))
    return RatFunc(MPoly.constant(as_rational(v), ring))


def _rf_sub(r: RatFunc, sub: Mapping[str, MPoly], ring) -> RatFunc:
    full = {v: MPoly.var(v, ring) for v in ring} | dict(sub)
    return RatFunc(r.num.substitute(full, ring), r.den.substitute(full, ring))


def _rf_eval_xy(r: RatFunc, point, ring) -> RatFunc:
    sub = {"x": _as_ratfunc(point[0], ring), "y": _as_ratfunc(point[1], ring)}
    num = _rf_compose(r.num, sub, ring)
    den = _rf_compose(r.den, sub, ring)
    if den.is_zero():
        raise StructuralError("lifted map is not defined at the next center")
    return num / den


def _rf_compose(p: MPoly, sub: Mapping[str, RatFunc], ring) -> RatFunc:
    """Substitute rational functions for x, y into a polynomial (other variables kept)."""
    dx = sub["x"].den
    dy = sub["y"].den
    ex, ey = p.degree("x"), p.degree("y")
    ex, ey = max(ex, 0), max(ey, 0)
    nx, ny = sub["x"].num, sub["y"].num
    total = MPoly.zero(ring)
    for exp, c in p.terms().items():
        idx = {v: e for v, e in zip(p.vars, exp)}
        term = MPoly.constant(c, ring)
        for v in ring:
            if v not in AFF and idx.get(v, 0):
                term = term * MPoly.var(v, ring) ** idx[v]
        i, j = idx.get("x", 0), idx.get("y", 0)
        term = term * nx ** i * dx ** (ex - i) * ny ** j * dy ** (ey - j)
        total = total + term
    return RatFunc(total, dx ** ex * dy ** ey)


def _to_scalar(r: RatFunc):
    return r.to_rational() if r.is_constant() else r


@dataclass(frozen=True)
class TowerLift:
    """Images of the tower centers under an affine map lifted through every chart."""

    centers: tuple[tuple, ...]
    kinds: tuple[str, ...]
    final_map: tuple[RatFunc, RatFunc]


def lift_through_tower(t: ChartTower, g: Sequence, params: Sequence[str] = ()) -> TowerLift:
    """Lift the affine map (x, y) -> g(x, y) through the charts of ``t``.

    ``g`` is a pair of MPoly or RatFunc in x, y and the symbols ``params``.  The target
    tower uses the same chart kinds; the lift at level k is
    (target chart k)^-1 o (lift at level k-1) o (source chart k).
    """
    ring = AFF + tuple(params)
    cur = tuple(_as_ratfunc(c, ring) for c in g)
    out_centers = []
    for step in t.steps:
        tc = tuple(_rf_eval_xy(c, step.center, ring) for c in cur)
        out_centers.append(tc)
        sub = chart_substitution(step.kind, step.center, ring)
        U, V = (_rf_sub(c, sub, ring) for c in cur)
        U = U - tc[0]
        V = V - tc[1]
        if step.kind == "x":
            if U.is_zero():
                raise StructuralError("lift collapses the exceptional curve")
            cur = (U, V / U)
        else:
            if V.is_zero():
                raise StructuralError("lift collapses the exceptional curve")
            cur = (U / V, V)
    centers = tuple(tuple(_to_scalar(c) for c in tc) for tc in out_centers)
    return TowerLift(centers, tuple(s.kind for s in t.steps), cur)


def affine_f(lam, mu, ring=AFF):
    """The quadratic map (mu^2 (lam x z + (1 - lam) y^2) : mu y z : z^2) in the chart z = 1."""
    x, y = MPoly.var("x", ring), MPoly.var("y", ring)
    lam = lam if isinstance(lam, MPoly) else MPoly.constant(as_rational(lam), ring)
    mu = mu if isinstance(mu, MPoly) else MPoly.constant(as_rational(mu), ring)
    return (mu ** 2 * (lam * x + (1 - lam) * y ** 2), mu * y)


def transport_tower(t: ChartTower, lam, mu) -> ChartTower:
    """Image tower of ``t`` under the quadratic map with parameters lam, mu."""
    lam, mu = as_rational(lam), as_rational(mu)
    if lam in (0, 1):
        raise ValueError("lambda must differ from 0 and 1")
    if mu == 0:
        raise ValueError("mu must be nonzero")
    lift = lift_through_tower(t, affine_f(lam, mu))
    steps = tuple(ChartStep(s.label, s.kind, c) for s, c in zip(t.steps, lift.centers))
    b = None
    if t.n is not None:
        tail = [c[1] for c in lift.centers[4 + t.n:]]
        b = tuple(reversed(tail))
    out = ChartTower(steps, t.n, b)
    if t.n is not None and out.steps[: 4 + t.n] != t.steps[: 4 + t.n]:
        raise StructuralError("transport moved one of the first 4+n points")
    if not out.is_chain():
        raise StructuralError("transported tower is not a chain")
    return out


# curves through towers --------------------------------------------------------------

@dataclass(frozen=True)
class TrackedCurve:
    multiplicities: tuple[int, ...]
    final: MPoly


def track_curve(t: ChartTower, F_affine: MPoly) -> TrackedCurve:
    mults = []
    cur = F_affine.in_vars(AFF)
    for step in t.steps:
        if cur.is_constant():
            mults.append(0)
            continue
        cur, m = strict_transform(cur, step.kind, step.center)
        mults.append(m)
    return TrackedCurve(tuple(mults), cur)


def plane_curve_multiplicities(t: ChartTower, F: MPoly) -> tuple[int, ...]:
    """Multiplicities of a plane curve (homogeneous F) at the cluster points."""
    local = F.substitute({"x": MPoly.var("x", AFF), "y": MPoly.var("y", AFF), "z": 1}, AFF)
    return track_curve(t, local).multiplicities


def proximity_matrix(t: ChartTower) -> list[list[int]]:
    """P[i][j] = multiplicity of the strict transform of E_{i+1} at p_{j+1} (j > i)."""
    m = t.length
    P = [[0] * m for _ in range(m)]
    for i, step in enumerate(t.steps):
        cur = MPoly.var(step.kind, AFF)
        for j in range(i + 1, m):
            if cur.is_constant():
                break
            nxt = t.steps[j]
            cur, mult = strict_transform(cur, nxt.kind, nxt.center)
            P[i][j] = mult
    return P


# lattice ----------------------------------------------------------------------------

@dataclass(frozen=True)
class DivisorClass:
    """d H - sum m_i E_i, stored as (d; m_1, ..., m_k)."""

    coeffs: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "coeffs", tuple(int(c) for c in self.coeffs))

    @classmethod
    def line(cls, k: int) -> "DivisorClass":
        return cls((1,) + (0,) * k)

    @classmethod
    def exceptional(cls, i: int, k: int) -> "DivisorClass":
        c = [0] * (k + 1)
        c[i] = -1
        return cls(tuple(c))

    @classmethod
    def canonical(cls, k: int) -> "DivisorClass":
        return cls((-3,) + (-1,) * k)

    @property
    def degree(self) -> int:
        return self.coeffs[0]

    @property
    def multiplicities(self) -> tuple[int, ...]:
        return self.coeffs[1:]

    @property
    def rank(self) -> int:
        return len(self.coeffs)

    def dot(self, other: "DivisorClass") -> int:
        if self.rank != other.rank:
            raise ValueError("classes live in lattices of different rank")
        a, b = self.coeffs, other.coeffs
        return a[0] * b[0] - sum(x * y for x, y in zip(a[1:], b[1:]))

    def self_intersection(self) -> int:
        return self.dot(self)

    def canonical_pairing(self) -> int:
        return self.dot(DivisorClass.canonical(self.rank - 1))

    def __add__(self, other):
        return DivisorClass(tuple(x + y for x, y in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other):
        return DivisorClass(tuple(x - y for x, y in zip(self.coeffs, other.coeffs)))

    def __neg__(self):
        return DivisorClass(tuple(-x for x in self.coeffs))

    def __mul__(self, k: int):
        return DivisorClass(tuple(k * x for x in self.coeffs))

    __rmul__ = __mul__

    def text(self) -> str:
        return f"({self.coeffs[0]}; " + ",".join(str(m) for m in self.coeffs[1:]) + ")"


QLABEL = "Qtilde"


def label_order(label: str) -> tuple[int, int]:
    if label == QLABEL:
        return (0, 0)
    return (1, int(label[1:]))


def strict_transform_classes(t: ChartTower, conic: MPoly | None = None) -> dict[str, DivisorClass]:
    """Classes of the strict transforms of the conic xz = y^2 and of E_1, ..., E_m."""
    m = t.length
    conic = conic if conic is not None else MPoly.parse("x z - y^2", XYZ)
    qm = plane_curve_multiplicities(t, conic)
    classes = {QLABEL: DivisorClass((conic.total_degree(),) + qm)}
    P = proximity_matrix(t)
    for i in range(m):
        c = [0] * (m + 1)
        c[i + 1] = -1
        for j in range(i + 1, m):
            c[j + 1] += P[i][j]
        classes[f"E{i + 1}"] = DivisorClass(tuple(c))
    return classes


# dual graphs ------------------------------------------------------------------------

@dataclass(frozen=True)
class DualGraph:
    vertices: tuple[tuple[str, int], ...]
    edges: tuple[tuple[str, str, int], ...]

    def self_intersections(self) -> dict[str, int]:
        return dict(self.vertices)

    def edge_set(self) -> set[frozenset]:
        return {frozenset((u, v)) for u, v, _ in self.edges}

    def is_tree(self) -> bool:
        names = [v for v, _ in self.vertices]
        if len(self.edges) != len(names) - 1:
            return False
        adj = {v: set() for v in names}
        for u, v, _ in self.edges:
            adj[u].add(v)
            adj[v].add(u)
        seen, stack = set(), [names[0]]
        while stack:
            v = stack.pop()
            if v not in seen:
                seen.add(v)
                stack.extend(adj[v] - seen)
        return len(seen) == len(names)

    def to_dot(self) -> str:
        lines = ["graph dual {"]
        for v, s in self.vertices:
            name = "Qtilde" if v == QLABEL else f"Etilde_{v[1:]}"
            lines.append(f'  {v} [label="{name} [{s}]"];')
        for u, v, mult in self.edges:
            suffix = "" if mult == 1 else f' [label="{mult}"]'
            lines.append(f"  {u} -- {v}{suffix};")
        lines.append("}")
        return "\n".join(lines) + "\n"


def dual_graph(classes: Mapping[str, DivisorClass]) -> DualGraph:
    labels = sorted(classes, key=label_order)
    vertices = tuple((v, classes[v].self_intersection()) for v in labels)
    edges = []
    for i, u in enumerate(labels):
        for v in labels[i + 1:]:
            k = classes[u].dot(classes[v])
            if k >= 1:
                edges.append((u, v, k))
    return DualGraph(vertices, tuple(edges))


def expected_graph(n: int) -> DualGraph:
    """The reference tree: chain Qtilde - E5 - ... - E_{4+2n}, and E4 - E3 - E2 - E1 hanging at E_{4+n}."""
    m = 4 + 2 * n
    selfs = {QLABEL: -1, "E4": -(n + 1), f"E{m}": -1}
    vertices = [(QLABEL, -1)] + [(f"E{i}", selfs.get(f"E{i}", -2)) for i in range(1, m + 1)]
    horizontal = [QLABEL] + [f"E{i}" for i in range(5, m + 1)]
    edges = [(horizontal[i], horizontal[i + 1]) for i in range(len(horizontal) - 1)]
    edges += [("E1", "E2"), ("E2", "E3"), ("E3", "E4"), ("E4", f"E{4 + n}")]
    ordered = []
    for u, v in edges:
        u, v = sorted((u, v), key=label_order)
        ordered.append((u, v, 1))
    ordered.sort(key=lambda e: (label_order(e[0]), label_order(e[1])))
    return DualGraph(tuple(vertices), tuple(ordered))


def matches_expected(g: DualGraph, n: int) -> bool:
    ref = expected_graph(n)
    return (g.self_intersections() == ref.self_intersections()
            and g.edge_set() == ref.edge_set()
            and all(mult == 1 for _, _, mult in g.edges))


def chain_reflection(n: int) -> dict[str, str]:
    """Vertex permutation reversing the horizontal chain and fixing everything else."""
    m = 4 + 2 * n
    horizontal = [QLABEL] + [f"E{i}" for i in range(5, m + 1)]
    perm = {v: v for v in [QLABEL] + [f"E{i}" for i in range(1, m + 1)]}
    for i, v in enumerate(horizontal):
        perm[v] = horizontal[len(horizontal) - 1 - i]
    return perm


def is_automorphism(g: DualGraph, perm: Mapping[str, str]) -> bool:
    s = g.self_intersections()
    if any(s[v] != s[perm[v]] for v in s):
        return False
    edges = {frozenset((u, v)): k for u, v, k in g.edges}
    moved = {frozenset((perm[u], perm[v])): k for u, v, k in g.edges}
    return edges == moved


# contractions -----------------------------------------------------------------------

def simulate_contractions(classes: Mapping[str, DivisorClass], order: Sequence[str]) -> dict[str, DivisorClass]:
    """Push classes through the given contractions; each must be a (-1)-class at its turn."""
    cur = dict(classes)
    for label in order:
        if label not in cur:
            raise NoSequence(f"{label} is not an available class")
        c = cur.pop(label)
        if c.self_intersection() != -1:
            raise NoSequence(f"{label} has self-intersection {c.self_intersection()} at its turn")
        cur = {k: d + c * d.dot(c) for k, d in cur.items()}
    return cur


def _lattice_rank_after(classes: Mapping[str, DivisorClass], contracted: int) -> int:
    rank = next(iter(classes.values())).rank
    return rank - contracted


def contraction_sequence(classes: Mapping[str, DivisorClass], keep: str | None = None,
                         targets: Iterable[str] | None = None) -> list[str]:
    """Order in which the target classes can be contracted one (-1)-curve at a time.

    Ties are broken by contracting the lowest label first (Qtilde, then E1, E2, ...).
    The remaining lattice must have rank one.
    """
    if targets is None:
        targets = [k for k in classes if k != keep]
    targets = set(targets)
    missing = targets - set(classes)
    if missing:
        raise NoSequence(f"unknown classes {sorted(missing)}")
    cur = dict(classes)
    order = []
    while targets:
        ready = sorted((k for k in targets if cur[k].self_intersection() == -1), key=label_order)
        if not ready:
            raise NoSequence(f"no (-1)-class among {sorted(targets, key=label_order)}")
        label = ready[0]
        order.append(label)
        targets.discard(label)
        c = cur.pop(label)
        cur = {k: d + c * d.dot(c) for k, d in cur.items()}
    if _lattice_rank_after(classes, len(order)) != 1:
        raise NoSequence(f"lattice rank {_lattice_rank_after(classes, len(order))} after contractions, expected 1")
    return order


def homaloidal_class(classes: Mapping[str, DivisorClass], contracted: Iterable[str]) -> DivisorClass:
    """The class of degree d > 0 orthogonal to the contracted curves with D^2 = 1 and K.D = -3."""
    rows = []
    for label in contracted:
        c = classes[label].coeffs
        rows.append([c[0]] + [-v for v in c[1:]])
    sol = solve_exact(rows, ncols=len(rows[0]))
    if sol.free_dimension != 1:
        raise StructuralError(f"orthogonal complement has dimension {sol.free_dimension}, expected 1")
    v = sol.basis[0]
    # K.D = -3 d + sum m_i must equal -3
    pairing = -3 * v[0] + sum(v[1:])
    if pairing == 0:
        raise StructuralError("orthogonal class has zero canonical pairing")
    scaled = [Fraction(-3) * c / pairing for c in v]
    if any(c.denominator != 1 for c in scaled):
        raise StructuralError("homaloidal class is not integral")
    D = DivisorClass(tuple(int(c) for c in scaled))
    if D.degree <= 0 or D.self_intersection() != 1:
        raise StructuralError(f"class {D.text()} is not homaloidal")
    return D


def homaloidal_data(n: int) -> DivisorClass:
    """Expected class (4n+1; 2n, 2n, 2n, 2n, 2, ..., 2)."""
    return DivisorClass((4 * n + 1,) + (2 * n,) * 4 + (2,) * (2 * n))


def noether_identities(D: DivisorClass) -> tuple[bool, bool]:
    d, m = D.degree, D.multiplicities
    return sum(m) == 3 * d - 3, sum(x * x for x in m) == d * d - 1


def transport_class(source: DivisorClass, through: Sequence[DivisorClass]) -> int:
    """Degree of the image of a curve class under a chain of Cremona maps.

    For a single map with homaloidal class (delta; nu) the image degree is
    d*delta - sum m_i nu_i.  For a chain, element k of ``through`` after the first is a
    pair (homaloidal class, multiplicities of the current image at that map's cluster).
    """
    d = source.degree
    mults = source.multiplicities
    for k, item in enumerate(through):
        if isinstance(item, tuple):
            hom, mults = item
        else:
            hom = item
            if k > 0:
                mults = (0,) * (hom.rank - 1)
        if len(mults) != hom.rank - 1:
            raise ValueError("multiplicity vector does not match the cluster size")
        d = d * hom.degree - sum(a * b for a, b in zip(mults, hom.multiplicities))
        if d < 0:
            raise StructuralError("negative image degree")
    return d


def predicted_psi_degree(n: int) -> int:
    """Degree of phi' o f o phi^-1 from the lattice data.

    A general line pulls back under phi^-1 to a member of the homaloidal net of phi;
    f avoids its own base point on that member and carries the p-cluster onto the
    p'-cluster, so the image has degree 2d with the same multiplicities there.
    """
    hom = homaloidal_data(n)
    net_member = DivisorClass((hom.degree,) + hom.multiplicities)
    quad = DivisorClass((2,) + (0,) * (hom.rank - 1))
    after_f = transport_class(net_member, [quad])
    return transport_class(DivisorClass((after_f,) + hom.multiplicities), [hom])


# resolution predicates --------------------------------------------------------------

def is_minus_one_tower_resolution(t: ChartTower, curve: MPoly) -> bool:
    """Chain tower after which the strict transform of a smooth rational curve has self-intersection -1."""
    if not t.is_chain():
        return False
    mults = plane_curve_multiplicities(t, curve)
    if any(m > 1 for m in mults):
        return False
    d = curve.total_degree()
    if d > 2:
        return False
    try:
        if singular_points(PlaneCurve(curve)).total_count:
            return False
    except ValueError:
        return False
    return d * d - sum(m * m for m in mults) == -1


# resolving a singular point ----------------------------------------------------------

@dataclass(frozen=True)
class BranchResolution:
    """Multiplicity sequence of a singular point followed through a single tangent each time."""

    multiplicities: tuple[int, ...]
    single_branch: bool
    steps: tuple[ChartStep, ...] = field(default=())

    def delta_sum(self) -> int:
        return sum(m * (m - 1) for m in self.multiplicities)


def _tangent_direction(G: MPoly, m: int):
    """Return ('x', slope) or ('y', 0) for a tangent cone (alpha x + beta y)^m; None otherwise."""
    cone = MPoly.from_terms(G.vars, {e: c for e, c in G.terms().items() if sum(e) == m})
    _, factors = cone._p.factor()
    lin = [(MPoly(G.vars, f), e) for f, e in factors if MPoly(G.vars, f).total_degree() > 0]
    if len(lin) != 1 or lin[0][0].total_degree() != 1 or lin[0][1] != m:
        return None
    f = lin[0][0]
    alpha = f.coefficient_of((1, 0))
    beta = f.coefficient_of((0, 1))
    if beta != 0:
        return ("x", -alpha / beta)
    return ("y", Fraction(0))


def resolve_branch(F: MPoly, point: ProjPoint, max_steps: int = 200) -> BranchResolution:
    local, c = dehomogenize(F, point)
    mults = []
    steps = []
    center = c
    for k in range(max_steps):
        G = translate(local, center)
        m = order_at_origin(G)
        if m <= 1:
            return BranchResolution(tuple(mults), True, tuple(steps))
        direction = _tangent_direction(G, m)
        if direction is None:
            return BranchResolution(tuple(mults + [m]), False, tuple(steps))
        kind, slope = direction
        mults.append(m)
        step = ChartStep(k + 1, kind, center)
        steps.append(step)
        local, _ = strict_transform(local, kind, center)
        center = (0, slope) if kind == "x" else (0, 0)
    raise StructuralError("resolution did not terminate")
