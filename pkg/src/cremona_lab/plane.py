"""Projective plane geometry over the rationals: points, curves, automorphisms and rational maps."""
from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import flint

from .exactcore import (
    TU,
    XYZ,
    MPoly,
    StructuralError,
    as_rational,
    gcd_many,
    gcd_poly,
    monomials,
    primitive_integer_vector,
    resultant_univar,
    solve_exact,
)

X, Y, Z = MPoly.gens(XYZ)
T, U = MPoly.gens(TU)


class BasePointError(ValueError):
    """All coordinates of a map vanish at the point."""


class NotBirationalError(ValueError):
    pass


class NonGenericError(ValueError):
    """The requested point or configuration is not in general position."""


class DegenerateError(ValueError):
    pass


# points -----------------------------------------------------------------------------

@dataclass(frozen=True)
class ProjPoint:
    """Point of P^2 normalized so that its last nonzero coordinate is 1."""

    coords: tuple[Fraction, Fraction, Fraction]

    def __post_init__(self):
        qs = tuple(as_rational(c) for c in self.coords)
        if len(qs) != 3:
            raise ValueError("a plane point has three coordinates")
        last = next((c for c in reversed(qs) if c), None)
        if last is None:
            raise ValueError("(0:0:0) is not a projective point")
        object.__setattr__(self, "coords", tuple(c / last for c in qs))

    @classmethod
    def of(cls, *coords) -> "ProjPoint":
        if len(coords) == 1:
            coords = tuple(coords[0])
        return cls(tuple(coords))

    def integer_coords(self) -> list[int]:
        return primitive_integer_vector(self.coords)

    def text(self) -> str:
        return "(" + ":".join(str(c) for c in self.coords) + ")"

    def __iter__(self):
        return iter(self.coords)

    def __getitem__(self, i):
        return self.coords[i]


# curves -----------------------------------------------------------------------------

class PlaneCurve:
    """Curve given by a homogeneous equation in x, y, z, stored in canonical normalization."""

    __slots__ = ("equation", "degree")

    def __init__(self, equation: MPoly):
        equation = equation.in_vars(XYZ) if equation.vars != XYZ else equation
        if equation.is_zero() or equation.is_constant():
            raise ValueError("a plane curve needs a non-constant equation")
        if not equation.is_homogeneous():
            raise ValueError(f"equation {equation} is not homogeneous")
        self.equation = equation.normalized()
        self.degree = equation.total_degree()

    def __eq__(self, other):
        return isinstance(other, PlaneCurve) and self.equation == other.equation

    def __hash__(self):
        return hash(self.equation)

    def contains(self, p: ProjPoint) -> bool:
        return self.equation.evaluate(p.coords) == 0

    def text(self) -> str:
        return self.equation.text()

    def __repr__(self):
        return f"PlaneCurve({self.text()!r})"


CONIC_Q = PlaneCurve(X * Z - Y ** 2)
LINE_L = PlaneCurve(Z)
P1 = ProjPoint.of(0, 0, 1)


# automorphisms ----------------------------------------------------------------------

def _mat_mul(a, b):
    return [[sum(a[i][k] * b[k][j] for k in range(3)) for j in range(3)] for i in range(3)]


def _det3(m) -> Fraction:
    return (m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
            - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
            + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]))


def _adjugate(m):
    cof = [[None] * 3 for _ in range(3)]
    for i in range(3):
        for j in range(3):
            rows = [r for r in range(3) if r != i]
            cols = [c for c in range(3) if c != j]
            minor = m[rows[0]][cols[0]] * m[rows[1]][cols[1]] - m[rows[0]][cols[1]] * m[rows[1]][cols[0]]
            cof[i][j] = minor if (i + j) % 2 == 0 else -minor
    return [[cof[j][i] for j in range(3)] for i in range(3)]


class ProjAut:
    """Invertible 3x3 rational matrix up to scalar (first nonzero entry scaled to 1)."""

    __slots__ = ("matrix",)

    def __init__(self, matrix: Sequence[Sequence]):
        m = [[as_rational(v) for v in row] for row in matrix]
        if len(m) != 3 or any(len(r) != 3 for r in m):
            raise ValueError("automorphism matrix must be 3x3")
        if _det3(m) == 0:
            raise ValueError("singular matrix")
        first = next(v for row in m for v in row if v)
        self.matrix = tuple(tuple(v / first for v in row) for row in m)

    @classmethod
    def identity(cls) -> "ProjAut":
        return cls([[1, 0, 0], [0, 1, 0], [0, 0, 1]])

    @classmethod
    def from_frames(cls, src: Sequence[ProjPoint], dst: Sequence[ProjPoint]) -> "ProjAut":
        """The unique automorphism sending four points in general position to four others."""
        a = _frame_matrix(src)
        b = _frame_matrix(dst)
        return cls(_mat_mul(b, _adjugate(a)))

    def determinant(self) -> Fraction:
        return _det3(self.matrix)

    def apply(self, p: ProjPoint) -> ProjPoint:
        return ProjPoint(tuple(sum(self.matrix[i][j] * p.coords[j] for j in range(3)) for i in range(3)))

    def inverse(self) -> "ProjAut":
        return ProjAut(_adjugate(self.matrix))

    def __matmul__(self, other: "ProjAut") -> "ProjAut":
        return ProjAut(_mat_mul(self.matrix, other.matrix))

    def as_map(self) -> "RationalMap":
        gens = (X, Y, Z)
        return RationalMap([sum((self.matrix[i][j] * gens[j] for j in range(3)), MPoly.zero()) for i in range(3)])

    def __eq__(self, other):
        return isinstance(other, ProjAut) and self.matrix == other.matrix

    def __hash__(self):
        return hash(self.matrix)

    def __repr__(self):
        return f"ProjAut({[list(map(str, r)) for r in self.matrix]})"


def _frame_matrix(points: Sequence[ProjPoint]):
    """Matrix sending e1, e2, e3, (1:1:1) to the four given points."""
    p = [list(pt.coords) for pt in points]
    cols = [[p[j][i] for j in range(3)] for i in range(3)]
    sol = solve_exact(cols, p[3])
    if not sol.consistent or sol.free_dimension or any(c == 0 for c in sol.particular):
        raise DegenerateError("points are not in general position")
    lam = sol.particular
    return [[p[j][i] * lam[j] for j in range(3)] for i in range(3)]


# rational maps ----------------------------------------------------------------------

class RationalMap:
    """Rational self-map of P^2 given by three forms of equal degree without common factor.

    The stored coordinates are scaled so that their joint content is 1 and the first
    nonzero coordinate has positive leading coefficient, so equality is map equality.
    """

    __slots__ = ("coords", "degree")

    def __init__(self, coords: Sequence[MPoly], cancel: bool = True):
        cs = [c.in_vars(XYZ) if isinstance(c, MPoly) else MPoly.constant(c) for c in coords]
        if len(cs) != 3:
            raise ValueError("a plane map has three coordinates")
        if all(c.is_zero() for c in cs):
            raise DegenerateError("all coordinates vanish identically")
        degs = {c.total_degree() for c in cs if not c.is_zero()}
        if len(degs) != 1 or not all(c.is_homogeneous() for c in cs):
            raise ValueError("coordinates must be homogeneous of a common degree")
        if cancel:
            g = gcd_many(cs)
            if not g.is_constant():
                cs = [c.exact_div(g) for c in cs]
        scale = _joint_scale(cs)
        self.coords = tuple(c / scale for c in cs)
        self.degree = next(c.total_degree() for c in self.coords if not c.is_zero())

    @classmethod
    def identity(cls) -> "RationalMap":
        return cls([X, Y, Z])

    def __eq__(self, other):
        return isinstance(other, RationalMap) and self.coords == other.coords

    def __hash__(self):
        return hash(self.coords)

    def __call__(self, p: ProjPoint) -> ProjPoint:
        return apply_map(self, p)

    def lines(self) -> list[str]:
        return [f"F{i}: {c.text()}" for i, c in enumerate(self.coords)]

    @classmethod
    def from_lines(cls, lines: Sequence[str]) -> "RationalMap":
        coords = []
        for i, line in enumerate(lines):
            tag, _, body = line.partition(":")
            if tag.strip() != f"F{i}":
                raise ValueError(f"expected F{i}: prefix in {line!r}")
            coords.append(MPoly.parse(body.strip(), XYZ))
        return cls(coords, cancel=False)

    def __repr__(self):
        return f"RationalMap(degree={self.degree})"


def _joint_scale(cs: Sequence[MPoly]) -> Fraction:
    from math import gcd, lcm

    num, den = 0, 1
    for c in cs:
        if c.is_zero():
            continue
        q = c.content()
        num = gcd(num, q.numerator)
        den = lcm(den, q.denominator)
    scale = Fraction(num, den)
    lead = next(c for c in cs if not c.is_zero()).leading_coefficient()
    return -scale if lead < 0 else scale


class CurveParam:
    """Parametrization (P0 : P1 : P2) of a plane curve by binary forms in t, u."""

    __slots__ = ("coords", "degree")

    def __init__(self, coords: Sequence[MPoly]):
        cs = [c.in_vars(TU) if isinstance(c, MPoly) else MPoly.constant(c, TU) for c in coords]
        if all(c.is_zero() for c in cs):
            raise DegenerateError("parametrization is identically zero")
        degs = {c.total_degree() for c in cs if not c.is_zero()}
        if len(degs) != 1 or not all(c.is_homogeneous() for c in cs):
            raise ValueError("parametrization must use binary forms of a common degree")
        g = gcd_many(cs)
        if not g.is_constant():
            cs = [c.exact_div(g) for c in cs]
        self.coords = tuple(cs)
        self.degree = next(c.total_degree() for c in cs if not c.is_zero())

    def at(self, t, u=1) -> ProjPoint:
        return ProjPoint(tuple(c.evaluate((t, u)) for c in self.coords))


LINE_L_PARAM = CurveParam([T, U, MPoly.zero(TU)])
CONIC_Q_PARAM = CurveParam([T ** 2, T * U, U ** 2])


def map_param(m: RationalMap, par: CurveParam) -> CurveParam:
    """The parametrization m o par (common factors removed)."""
    images = [c.substitute(dict(zip(XYZ, par.coords)), TU) for c in m.coords]
    return CurveParam(images)


# operations -------------------------------------------------------------------------

def apply_map(m: RationalMap, p: ProjPoint) -> ProjPoint:
    vals = tuple(c.evaluate(p.coords) for c in m.coords)
    if not any(vals):
        raise BasePointError(f"{p.text()} is a base point of the map")
    return ProjPoint(vals)


def compose(g: RationalMap, h: RationalMap) -> RationalMap:
    """g o h with the common factor of the composed coordinates removed."""
    subs = dict(zip(XYZ, h.coords))
    raw = [c.substitute(subs, XYZ) for c in g.coords]
    if all(c.is_zero() for c in raw):
        raise DegenerateError("composite is identically zero")
    return RationalMap(raw)


def compose_raw(g: RationalMap, h: RationalMap) -> list[MPoly]:
    subs = dict(zip(XYZ, h.coords))
    return [c.substitute(subs, XYZ) for c in g.coords]


def is_identity_composite(raw: Sequence[MPoly]) -> bool:
    """True when the forms satisfy raw_i * x_j == raw_j * x_i, i.e. define the identity map."""
    if all(c.is_zero() for c in raw):
        return False
    gens = (X, Y, Z)
    for i in range(3):
        for j in range(i + 1, 3):
            if raw[i] * gens[j] != raw[j] * gens[i]:
                return False
    return True


def jacobian(m: RationalMap) -> MPoly:
    d = [[c.derivative(v) for v in XYZ] for c in m.coords]
    det = (d[0][0] * (d[1][1] * d[2][2] - d[1][2] * d[2][1])
           - d[0][1] * (d[1][0] * d[2][2] - d[1][2] * d[2][0])
           + d[0][2] * (d[1][0] * d[2][1] - d[1][1] * d[2][0]))
    return det.normalized()


def pullback(m: RationalMap, c: PlaneCurve | MPoly) -> MPoly:
    """Equation of ``c`` composed with the coordinates of ``m``; nothing is divided out."""
    eq = c.equation if isinstance(c, PlaneCurve) else c
    return eq.substitute(dict(zip(XYZ, m.coords)), XYZ)


def tangent_line(c: PlaneCurve, p: ProjPoint) -> PlaneCurve:
    if not c.contains(p):
        raise ValueError(f"{p.text()} is not on the curve")
    grad = [c.equation.derivative(v).evaluate(p.coords) for v in XYZ]
    if not any(grad):
        raise ValueError(f"{p.text()} is a singular point of the curve")
    return PlaneCurve(grad[0] * X + grad[1] * Y + grad[2] * Z)


def pure_power_exponent(p: MPoly, base: MPoly) -> int | None:
    """e such that p = constant * base^e, or None."""
    if p.is_zero():
        return None
    e = 0
    rest = p
    while not rest.is_constant():
        q, r = rest.divmod(base)
        if not r.is_zero():
            return None
        rest = q
        e += 1
    return e


def divisibility_exponent(p: MPoly, base: MPoly) -> int:
    """Largest e with base^e dividing p (p nonzero)."""
    e = 0
    rest = p
    while True:
        q, r = rest.divmod(base)
        if not r.is_zero():
            return e
        rest = q
        e += 1


# inversion --------------------------------------------------------------------------

def _sample_points(rng: random.Random, count: int, bound: int, avoid=lambda r: False):
    seen = set()
    out = []
    tries = 0
    while len(out) < count:
        tries += 1
        if tries > 200 * count:
            bound += 1
            tries = 0
        r = tuple(rng.randint(-bound, bound) for _ in range(3))
        if not any(r):
            continue
        r = tuple(primitive_integer_vector(r))
        if r in seen or avoid(r):
            continue
        seen.add(r)
        out.append(r)
    return out


def _eval_int(forms: Sequence[MPoly], r) -> list[int]:
    vals = [f.evaluate(r) for f in forms]
    return primitive_integer_vector(vals)


def inverse_map(m: RationalMap, max_degree: int | None = None, seed: int = 0) -> RationalMap:
    """Inverse of a birational map.

    Unknown coordinates g_i of degree d' (starting at deg m) must satisfy
    (g o m)_i x_j - (g o m)_j x_i = 0.  These linear conditions are imposed at sample
    points, the kernel is computed exactly, and a candidate is accepted only after the
    composite is checked to be the identity as a polynomial identity.
    """
    if jacobian(m).is_zero():
        raise NotBirationalError("Jacobian vanishes identically")
    d = m.degree
    max_degree = max_degree if max_degree is not None else max(d, 1) + 2
    rng = random.Random(seed)
    for dp in range(max(d, 1), max_degree + 1):
        monos = monomials(dp)
        nm = len(monos)
        npts = (3 * nm) // 2 + 6
        rows: list[list[int]] = []

        def add_points(k):
            pts = _sample_points(rng, k, 3 + dp // 3, avoid=lambda r: not any(c.evaluate(r) for c in m.coords))
            for r in pts:
                s = _eval_int(m.coords, r)
                powers = [_mono_value(s, e) for e in monos]
                zero = [0] * nm
                for i, j in ((0, 1), (0, 2), (1, 2)):
                    blocks = [zero, zero, zero]
                    blocks[i] = [v * r[j] for v in powers]
                    blocks[j] = [-v * r[i] for v in powers]
                    rows.append(blocks[0] + blocks[1] + blocks[2])

        add_points(npts)
        for _ in range(4):
            sol = solve_exact(rows, ncols=3 * nm, backend="flint")
            if sol.free_dimension == 0:
                break
            if sol.free_dimension == 1:
                vec = sol.basis[0]
                coords = [MPoly.from_terms(XYZ, {e: vec[k * nm + i] for i, e in enumerate(monos)}) for k in range(3)]
                try:
                    g = RationalMap(coords)
                except (DegenerateError, ValueError):
                    break
                if is_identity_composite(compose_raw(g, m)):
                    return g
                add_points(npts // 2)
                continue
            add_points(npts)
    raise NotBirationalError(f"no inverse of degree <= {max_degree}")


def _mono_value(s, exp) -> int:
    v = 1
    for a, e in zip(s, exp):
        if e:
            v *= a ** e
    return v


# elimination ------------------------------------------------------------------------

def _linear_roots_binary(form: MPoly, a: str, b: str) -> tuple[list[tuple[Fraction, Fraction]], int]:
    """Rational roots (a0 : b0) of a binary form and the number of distinct roots over Q-bar."""
    roots = []
    total = 0
    _, factors = form._p.factor()
    ring = form.vars
    for fac, _mult in factors:
        f = MPoly(ring, fac)
        deg = f.degree_in((a, b))
        if deg <= 0:
            continue
        total += deg
        if deg == 1:
            ca = f.coefficient_of(tuple(1 if v == a else 0 for v in ring))
            cb = f.coefficient_of(tuple(1 if v == b else 0 for v in ring))
            # ca*a + cb*b = 0  ->  (a : b) = (-cb : ca)
            roots.append((-cb, ca))
    return roots, total


def implicitize(par: CurveParam, samples: int = 5) -> PlaneCurve:
    """Reduced equation of the image of a parametrized curve, by resultant elimination.

    Candidate factors of the resultant are kept only when they vanish at ``samples``
    rational parameter values; exactly one irreducible factor must survive.
    """
    pts = []
    tval = 1
    while len(pts) < samples:
        try:
            pts.append(par.at(Fraction(tval), 1))
        except ValueError:
            pass
        tval += 1
    if len(set(pts)) == 1:
        raise DegenerateError("the parametrization is constant")
    k = next(c for c in (2, 0, 1) if not par.coords[c].is_zero())
    i, j = [v for v in range(3) if v != k]
    ring = ("t",) + XYZ
    dehom = {"t": MPoly.var("t", ring), "u": 1}
    P = [c.substitute(dehom, ring) for c in par.coords]
    g = MPoly.gens(ring)[1:]
    A = g[i] * P[k] - g[k] * P[i]
    B = g[j] * P[k] - g[k] * P[j]
    if A.degree("t") <= 0 or B.degree("t") <= 0:
        raise DegenerateError("degenerate parametrization")
    R = resultant_univar(A, B, "t").in_vars(ring)
    R = R.substitute({v: MPoly.var(v, XYZ) for v in XYZ}, XYZ)
    if R.is_zero():
        raise DegenerateError("resultant vanished identically")
    _, factors = R._p.factor()
    keep = []
    for fac, _mult in factors:
        f = MPoly(XYZ, fac)
        if f.is_constant():
            continue
        if all(f.evaluate(p.coords) == 0 for p in pts):
            keep.append(f)
    if len(keep) != 1:
        raise DegenerateError(f"expected one image component, found {len(keep)}")
    curve = PlaneCurve(keep[0])
    if par.degree % curve.degree:
        raise StructuralError("image degree does not divide the parametrization degree")
    return curve


def pointwise_preimage(m: RationalMap, s: ProjPoint) -> ProjPoint:
    """Unique residual intersection of the pencil {m_i s_j - m_j s_i = 0} off the base locus."""
    k = max(range(3), key=lambda c: (s.coords[c] != 0, -c))
    i, j = [v for v in range(3) if v != k]
    sv = s.coords
    A = m.coords[i] * sv[k] - m.coords[k] * sv[i]
    B = m.coords[j] * sv[k] - m.coords[k] * sv[j]
    if A.is_zero() or B.is_zero() or not gcd_poly(A, B).is_constant():
        raise NonGenericError(f"{s.text()} lies on the image of a contracted curve")
    candidates: list[ProjPoint] = []
    R = resultant_univar(A, B, "y")
    if R.is_zero():
        raise NonGenericError("pencil members share a component")
    roots, _ = _linear_roots_binary(R, "x", "z")
    for x0, z0 in roots:
        fa = A.substitute({"x": x0, "y": Y, "z": z0}, XYZ)
        fb = B.substitute({"x": x0, "y": Y, "z": z0}, XYZ)
        h = gcd_poly(fa, fb)
        if h.is_zero():
            raise NonGenericError("pencil members share a fibre")
        ys, _ = _linear_roots_binary(_homog_y(h), "y", "w")
        for y0, w0 in ys:
            if w0 == 0:
                continue
            pt = ProjPoint((x0, y0 / w0, z0))
            if not any(c.evaluate(pt.coords) for c in m.coords):
                continue
            candidates.append(pt)
    inf = ProjPoint.of(0, 1, 0)
    if A.evaluate(inf.coords) == 0 and B.evaluate(inf.coords) == 0 and any(c.evaluate(inf.coords) for c in m.coords):
        candidates.append(inf)
    candidates = list(dict.fromkeys(candidates))
    hits = [p for p in candidates if apply_map(m, p) == s]
    if len(hits) != 1:
        raise NonGenericError(f"expected a single residual point, found {len(hits)}")
    return hits[0]


def _homog_y(h: MPoly) -> MPoly:
    """Homogenize a univariate polynomial in y with a new variable w."""
    h = h.in_vars(XYZ)
    deg = h.degree("y")
    terms = {}
    for exp, c in h.terms().items():
        terms[(exp[1], deg - exp[1])] = c
    return MPoly.from_terms(("y", "w"), terms)


# singular locus ---------------------------------------------------------------------

@dataclass(frozen=True)
class SingularLocus:
    """Singular points: the rational ones explicitly, and the total count over Q-bar."""

    rational_points: tuple[ProjPoint, ...]
    total_count: int


def _nf_poly_gcd(polys, modulus):
    """gcd of univariate polynomials over K = Q[theta]/modulus; coefficients as fmpq_poly."""

    def trim(a):
        while a and a[-1] == 0:
            a.pop()
        return a

    def inv(c):
        g, s, _ = c.xgcd(modulus)
        if g.degree() != 0:
            raise StructuralError("modulus is not irreducible")
        return (s * (1 / g.coeffs()[0])) % modulus

    def monic(a):
        li = inv(a[-1])
        return [(c * li) % modulus for c in a]

    def rem(a, b):
        a = list(a)
        b = monic(b)
        while len(a) >= len(b) and a:
            f = a[-1]
            shift = len(a) - len(b)
            for t in range(len(b)):
                a[shift + t] = (a[shift + t] - f * b[t]) % modulus
            trim(a)
        return a

    g = []
    for p in polys:
        p = trim([c % modulus for c in p])
        if not g:
            g = p
            continue
        a, b = g, p
        while b:
            a, b = b, rem(a, b)
        g = a
    return monic(g) if g else g


def _nf_derivative(a):
    return [a[i] * i for i in range(1, len(a))]


def singular_points(c: PlaneCurve) -> SingularLocus:
    """Common zeros of the three partial derivatives, computed by exact elimination."""
    grads = [c.equation.derivative(v) for v in XYZ]
    rational: list[ProjPoint] = []
    total = 0
    # points at infinity z = 0
    at_inf = [g.substitute({"x": X, "y": Y, "z": 0}, XYZ) for g in grads]
    h = gcd_many(at_inf) if any(not g.is_zero() for g in at_inf) else None
    if h is None:
        raise DegenerateError("the line z=0 is singular on the curve")
    if not h.is_constant():
        roots, count = _linear_roots_binary(h, "x", "y")
        total += count
        rational += [ProjPoint((a, b, 0)) for a, b in roots]
    # affine chart z = 1
    aff = [g.substitute({"x": X, "y": Y, "z": 1}, XYZ) for g in grads]
    res = []
    for a, b in ((0, 1), (0, 2), (1, 2)):
        if aff[a].degree("y") > 0 and aff[b].degree("y") > 0:
            r = resultant_univar(aff[a], aff[b], "y")
            if not r.is_zero():
                res.append(r)
        else:
            prod = aff[a] if aff[a].degree("y") <= 0 else aff[b]
            if not prod.is_zero():
                res.append(prod)
    if not res:
        raise DegenerateError("partial derivatives share a component")
    R = gcd_many(res)
    if R.is_constant():
        return SingularLocus(tuple(rational), total)
    _, factors = R._p.factor()
    for fac, _mult in factors:
        phi = MPoly(XYZ, fac)
        if phi.degree("x") <= 0:
            continue
        coeffs_x = [phi.coefficient_of((e, 0, 0)) for e in range(phi.degree("x") + 1)]
        modulus = flint.fmpq_poly([flint.fmpq(q.numerator, q.denominator) for q in coeffs_x])
        fibre = []
        for g in aff:
            by_y = {}
            for exp, q in g.terms().items():
                by_y.setdefault(exp[1], {})[exp[0]] = q
            deg_y = max(by_y, default=0)
            poly = []
            for e in range(deg_y + 1):
                cx = by_y.get(e, {})
                top = max(cx, default=0)
                poly.append(flint.fmpq_poly([flint.fmpq(cx.get(k, Fraction(0)).numerator, cx.get(k, Fraction(0)).denominator) for k in range(top + 1)]))
            fibre.append(poly)
        gy = _nf_poly_gcd(fibre, modulus)
        if len(gy) <= 1:
            continue
        sq = _nf_poly_gcd([gy, _nf_derivative(gy)], modulus)
        distinct = (len(gy) - 1) - (len(sq) - 1 if sq else 0)
        total += modulus.degree() * distinct
        if modulus.degree() == 1:
            x0 = -Fraction(int(modulus.coeffs()[0].p), int(modulus.coeffs()[0].q)) / Fraction(int(modulus.coeffs()[1].p), int(modulus.coeffs()[1].q))
            hy = gcd_many([g.substitute({"x": x0, "y": Y, "z": 1}, XYZ) for g in aff])
            ys, _ = _linear_roots_binary(_homog_y(hy), "y", "w")
            rational += [ProjPoint((x0, y0 / w0, 1)) for y0, w0 in ys if w0 != 0]
    return SingularLocus(tuple(rational), total)


def point_multiplicity(F: MPoly, p: ProjPoint) -> int:
    """Order of vanishing of a form at a rational point (lowest degree of the local expansion)."""
    k = max(i for i in range(3) if p.coords[i] != 0)
    others = [i for i in range(3) if i != k]
    local = {XYZ[k]: 1}
    for i in others:
        local[XYZ[i]] = MPoly.var(XYZ[i], XYZ) + p.coords[i]
    G = F.substitute(local, XYZ)
    return G.min_degree_in(XYZ)
