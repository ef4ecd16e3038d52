"""Linear systems of plane curves through an infinitely near cluster, and the Cremona map of a net."""
from __future__ import annotations

import csv
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .blowup import AFF, ChartTower, plane_curve_multiplicities
from .exactcore import XYZ, MPoly, StructuralError, monomials, primitive_integer_vector, rref, solve_exact
from .plane import (
    CONIC_Q,
    CONIC_Q_PARAM,
    DegenerateError,
    PlaneCurve,
    ProjAut,
    ProjPoint,
    RationalMap,
    apply_map,
    compose,
    inverse_map,
    jacobian,
    pullback,
    pure_power_exponent,
)

G_Q = CONIC_Q.equation


class NoContractedConic(StructuralError):
    pass


class AmbiguousConic(StructuralError):
    pass


@dataclass(frozen=True)
class BaseConditions:
    degree: int
    tower: ChartTower
    multiplicities: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "multiplicities", tuple(int(m) for m in self.multiplicities))
        if len(self.multiplicities) != self.tower.length:
            raise ValueError("one multiplicity per cluster point is required")
        if any(m < 0 for m in self.multiplicities):
            raise ValueError("multiplicities must be nonnegative")
        if self.degree < 0:
            raise ValueError("degree must be nonnegative")


@dataclass(frozen=True)
class LinearSystem:
    conditions: BaseConditions
    basis: tuple[MPoly, ...]

    @property
    def dimension(self) -> int:
        return len(self.basis)

    def lines(self) -> list[str]:
        return [p.text() for p in self.basis]


def vanishing_order(F: MPoly, t: ChartTower, i: int) -> int:
    """Multiplicity at p_i of the successive strict transforms of F (i is 1-based)."""
    if F.is_zero():
        raise ValueError("the zero form has no vanishing order")
    return plane_curve_multiplicities(t, F)[i - 1]


@lru_cache(maxsize=None)
def _coeff_ring(N: int) -> tuple[str, ...]:
    return AFF + tuple(f"c{k}" for k in range(N))


def _linear_row(coef: MPoly, ring: tuple[str, ...], N: int) -> list[Fraction]:
    row = [Fraction(0)] * N
    for exp, c in coef.terms().items():
        k = next(i for i, e in enumerate(exp) if e)
        row[k - 2] = c
    return row


def condition_matrix(cond: BaseConditions) -> tuple[list[list[Fraction]], list[tuple[int, ...]]]:
    """Linear conditions on the coefficients of a degree-d form, with the monomial order used.

    The generic form is carried through the charts as a virtual transform: at each
    center its Taylor coefficients of order below m_i must vanish, and the remaining
    terms, pulled back and divided by the m_i-th power of the exceptional coordinate,
    give the form on the next chart.
    """
    monos = monomials(cond.degree)
    N = len(monos)
    ring = _coeff_ring(N)
    x, y = MPoly.var("x", ring), MPoly.var("y", ring)
    F = MPoly.from_terms(ring, {(e[0], e[1]) + tuple(1 if j == k else 0 for j in range(N)): 1 for k, e in enumerate(monos)})
    rows: list[list[Fraction]] = []
    keep = {f"c{k}": MPoly.var(f"c{k}", ring) for k in range(N)}
    for step, m in zip(cond.tower.steps, cond.multiplicities):
        c0, c1 = step.center
        G = F.substitute({"x": x + c0, "y": y + c1} | keep, ring)
        grouped: dict[tuple[int, int], dict] = {}
        for exp, c in G.terms().items():
            grouped.setdefault(exp[:2], {})[exp] = c
        shifted = {}
        for (a, b), terms in grouped.items():
            if a + b < m:
                coef = MPoly.from_terms(ring, {(0, 0) + e[2:]: c for e, c in terms.items()})
                rows.append(_linear_row(coef, ring, N))
                continue
            na, nb = (a + b - m, b) if step.kind == "x" else (a, a + b - m)
            for e, c in terms.items():
                shifted[(na, nb) + e[2:]] = c
        F = MPoly.from_terms(ring, shifted)
    return rows, monos


def linear_system(cond: BaseConditions) -> LinearSystem:
    rows, monos = condition_matrix(cond)
    N = len(monos)
    if rows:
        sol = solve_exact(rows, ncols=N)
        vectors = sol.basis
    else:
        vectors = [[Fraction(int(i == k)) for i in range(N)] for k in range(N)]
    if vectors:
        ech, pivots = rref(vectors, ncols=N)
        vectors = [r for r in ech if any(r)]
    basis = []
    for v in vectors:
        ints = primitive_integer_vector(v)
        poly = MPoly.from_terms(XYZ, {e: c for e, c in zip(monos, ints) if c})
        basis.append(poly)
    return LinearSystem(cond, tuple(basis))


def export_conditions_csv(cond: BaseConditions, path) -> None:
    rows, monos = condition_matrix(cond)
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["x^%d y^%d z^%d" % e for e in monos])
        for r in rows:
            w.writerow([str(v) for v in r])


def cremona_from_net(sys: LinearSystem, check_inverse: bool = True) -> RationalMap:
    if sys.dimension != 3:
        raise StructuralError(f"net has dimension {sys.dimension}, expected 3")
    m = RationalMap(list(sys.basis))
    if m.degree != sys.conditions.degree:
        raise StructuralError("net members share a common component")
    J = jacobian(m)
    e = pure_power_exponent(J, G_Q)
    expected = (3 * m.degree - 3) // 2
    if e != expected:
        raise StructuralError(f"Jacobian is not a constant times (xz - y^2)^{expected}")
    if check_inverse:
        inverse_map(m)
    return m


# normalization ----------------------------------------------------------------------

def contracted_image(m: RationalMap, curve_param=CONIC_Q_PARAM, samples: int = 6) -> ProjPoint | None:
    """The single image point of the conic xz = y^2, or None when it is not contracted."""
    images = set()
    t = 1
    while len(images) <= 1 and t <= samples + 20:
        try:
            images.add(apply_map(m, curve_param.at(Fraction(t), 1)))
            if t >= samples and len(images) == 1:
                return next(iter(images))
        except ValueError:
            pass
        t += 1
    return next(iter(images)) if len(images) == 1 else None


def find_contracted_conic(m: RationalMap) -> PlaneCurve:
    """The conic Q* with pullback(m, Q*) = s (xz - y^2)^deg m, for a map contracting xz = y^2."""
    if contracted_image(m) is None:
        raise NoContractedConic("the map does not contract the conic xz = y^2")
    conic_monos = monomials(2)
    big = monomials(2 * m.degree)
    index = {e: i for i, e in enumerate(big)}
    cols = []
    for e in conic_monos:
        cols.append(pullback(m, MPoly.monomial(e, XYZ)).terms())
    cols.append((-(G_Q ** m.degree)).terms())
    matrix = [[Fraction(0)] * len(cols) for _ in big]
    for j, col in enumerate(cols):
        for e, c in col.items():
            matrix[index[e]][j] = c
    matrix = [r for r in matrix if any(r)]
    sol = solve_exact(matrix, ncols=len(cols))
    vecs = [v for v in sol.basis if any(v[:-1])]
    if not vecs:
        raise NoContractedConic("no conic pulls back to a power of xz - y^2")
    if sol.free_dimension > 1:
        raise AmbiguousConic(f"{sol.free_dimension}-dimensional family of candidate conics")
    v = vecs[0]
    return PlaneCurve(MPoly.from_terms(XYZ, {e: c for e, c in zip(conic_monos, v[:-1]) if c}))


def _polar(G: MPoly, u, v) -> Fraction:
    s = tuple(a + b for a, b in zip(u, v))
    return (G.evaluate(s) - G.evaluate(u) - G.evaluate(v)) / 2


def _residual(G: MPoly, q, P) -> ProjPoint | None:
    """Second intersection of the conic G with the line through its point q and P."""
    gp = G.evaluate(P)
    b = _polar(G, q, P)
    coords = tuple(gp * a - 2 * b * c for a, c in zip(q, P))
    if not any(coords):
        return None
    r = ProjPoint(coords)
    return None if r == ProjPoint(q) else r


def _cross(u, v):
    return (u[1] * v[2] - u[2] * v[1], u[2] * v[0] - u[0] * v[2], u[0] * v[1] - u[1] * v[0])


_AUX = [(0, 0, 1), (1, 0, 0), (0, 1, 0), (1, 0, 1), (1, 1, 0), (0, 1, 1), (1, 2, 3), (3, 1, 2), (2, 3, 1)]
_TARGET = [ProjPoint.of(0, 0, 1), ProjPoint.of(1, 0, 0), ProjPoint.of(1, 1, 1), ProjPoint.of(0, 1, 0)]


def conic_frame(conic: PlaneCurve, q: ProjPoint) -> tuple[ProjPoint, ProjPoint, ProjPoint, ProjPoint]:
    """Canonical frame (A, B, q, T) on a conic through q; T is the pole of the chord AB."""
    G = conic.equation
    if G.evaluate(q.coords) != 0:
        raise StructuralError(f"{q.text()} is not on the conic {conic.text()}")
    found = []
    for P in _AUX:
        if _cross(q.coords, P) == (0, 0, 0):
            continue
        r = _residual(G, q.coords, P)
        if r is not None and r not in found:
            found.append(r)
        if len(found) == 2:
            break
    if len(found) < 2:
        raise DegenerateError("could not build a frame on the conic")
    A, B = found
    ta = [G.derivative(v).evaluate(A.coords) for v in XYZ]
    tb = [G.derivative(v).evaluate(B.coords) for v in XYZ]
    T = ProjPoint(_cross(ta, tb))
    return A, B, q, T


def normalizing_automorphism(conic: PlaneCurve, q: ProjPoint) -> ProjAut:
    """The automorphism taking (A, B, q, T) to ((0:0:1), (1:0:0), (1:1:1), (0:1:0)); it maps the conic to xz = y^2."""
    frame = conic_frame(conic, q)
    alpha = ProjAut.from_frames(frame, _TARGET)
    image = pullback(alpha.inverse().as_map(), conic)
    if image.normalized() != G_Q:
        raise StructuralError("frame automorphism does not carry the conic onto xz = y^2")
    return alpha


def normalize_to_Q(m: RationalMap) -> RationalMap:
    conic = find_contracted_conic(m)
    q = contracted_image(m)
    alpha = normalizing_automorphism(conic, q)
    out = compose(alpha.as_map(), m)
    if pure_power_exponent(pullback(out, CONIC_Q), G_Q) != out.degree:
        raise StructuralError("normalized map does not pull the conic back to a pure power")
    return out
