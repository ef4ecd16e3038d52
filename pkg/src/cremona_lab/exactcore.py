"""Exact arithmetic: rationals, sparse multivariate polynomials, linear algebra, resultants.

Polynomials are immutable wrappers around FLINT ``fmpq_mpoly`` objects carrying an
explicit ordered tuple of variable names.  Term order is graded lexicographic in the
order the variables are listed, so ``("x", "y", "z")`` gives x > y > z.
"""
from __future__ import annotations

import random
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd, lcm
from typing import Iterable, Mapping, Sequence

import flint

Rational = Fraction

XYZ = ("x", "y", "z")
TU = ("t", "u")


class StructuralError(Exception):
    """A construction step produced data inconsistent with its contract."""


def as_rational(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, (flint.fmpq, flint.fmpz)):
        return Fraction(int(value.p), int(value.q)) if isinstance(value, flint.fmpq) else Fraction(int(value))
    if isinstance(value, str):
        return Fraction(value)
    if isinstance(value, MPoly):
        if not value.is_constant():
            raise TypeError(f"non-constant polynomial {value} used as a scalar")
        return value.constant_term()
    raise TypeError(f"cannot interpret {value!r} as an exact rational")


def _to_fmpq(value) -> flint.fmpq:
    q = as_rational(value)
    return flint.fmpq(q.numerator, q.denominator)


def _from_fmpq(c) -> Fraction:
    return Fraction(int(c.p), int(c.q))


@lru_cache(maxsize=None)
def _ctx(names: tuple[str, ...]):
    return flint.fmpq_mpoly_ctx.get(names, "deglex")


def _merge_vars(a: tuple[str, ...], b: tuple[str, ...]) -> tuple[str, ...]:
    if a == b:
        return a
    return a + tuple(v for v in b if v not in a)


class MPoly:
    """Sparse multivariate polynomial with exact rational coefficients."""

    __slots__ = ("vars", "_p")

    def __init__(self, vars: Sequence[str], raw):
        self.vars = tuple(vars)
        self._p = raw

    # construction -----------------------------------------------------------------
    @classmethod
    def from_terms(cls, vars: Sequence[str], terms: Mapping[tuple[int, ...], object]) -> "MPoly":
        vars = tuple(vars)
        ctx = _ctx(vars)
        data = {}
        for exp, c in terms.items():
            if len(exp) != len(vars):
                raise ValueError(f"exponent {exp} does not match variables {vars}")
            q = as_rational(c)
            if q:
                data[tuple(int(e) for e in exp)] = flint.fmpq(q.numerator, q.denominator)
        return cls(vars, ctx.from_dict(data))

    @classmethod
    def constant(cls, c, vars: Sequence[str] = XYZ) -> "MPoly":
        vars = tuple(vars)
        return cls(vars, _ctx(vars).constant(_to_fmpq(c)))

    @classmethod
    def zero(cls, vars: Sequence[str] = XYZ) -> "MPoly":
        return cls.constant(0, vars)

    @classmethod
    def var(cls, name: str, vars: Sequence[str] | None = None) -> "MPoly":
        vars = tuple(vars) if vars is not None else (name,)
        if name not in vars:
            vars = vars + (name,)
        return cls(vars, _ctx(vars).gen(vars.index(name)))

    @classmethod
    def gens(cls, vars: Sequence[str] = XYZ) -> tuple["MPoly", ...]:
        vars = tuple(vars)
        return tuple(cls(vars, g) for g in _ctx(vars).gens())

    @classmethod
    def monomial(cls, exp: Sequence[int], vars: Sequence[str] = XYZ, coeff=1) -> "MPoly":
        return cls.from_terms(vars, {tuple(exp): coeff})

    @classmethod
    def parse(cls, text: str, vars: Sequence[str] = XYZ) -> "MPoly":
        """Parse the canonical text format produced by :meth:`text`."""
        return parse_poly(text, vars)

    # conversion -------------------------------------------------------------------
    def in_vars(self, vars: Sequence[str]) -> "MPoly":
        """Re-express in a different (super)set of variables."""
        vars = tuple(vars)
        if vars == self.vars:
            return self
        index = {v: i for i, v in enumerate(vars)}
        terms = {}
        for exp, c in self._p.to_dict().items():
            new = [0] * len(vars)
            for v, e in zip(self.vars, exp):
                if e:
                    if v not in index:
                        raise ValueError(f"variable {v} is used but missing from {vars}")
                    new[index[v]] = e
            terms[tuple(new)] = c
        return MPoly(vars, _ctx(vars).from_dict(terms))

    def used_vars(self) -> tuple[str, ...]:
        degs = self._p.degrees()
        return tuple(v for v, d in zip(self.vars, degs) if d > 0)

    def _coerce(self, other) -> tuple["MPoly", "MPoly"]:
        if isinstance(other, MPoly):
            if other.vars == self.vars:
                return self, other
            vars = _merge_vars(self.vars, other.vars)
            return self.in_vars(vars), other.in_vars(vars)
        return self, MPoly.constant(other, self.vars)

    # inspection -------------------------------------------------------------------
    def terms(self) -> dict[tuple[int, ...], Fraction]:
        """Terms in canonical (graded lex) order, leading term first."""
        return {exp: _from_fmpq(c) for exp, c in self._p.to_dict().items()}

    def __len__(self) -> int:
        return len(self._p)

    def is_zero(self) -> bool:
        return self._p.is_zero()

    def __bool__(self) -> bool:
        return not self._p.is_zero()

    def is_constant(self) -> bool:
        return self._p.is_constant()

    def constant_term(self) -> Fraction:
        return self.terms().get((0,) * len(self.vars), Fraction(0))

    def total_degree(self) -> int:
        if self.is_zero():
            return -1
        return int(self._p.total_degree())

    def degree(self, var: str) -> int:
        if var not in self.vars:
            return 0 if self else -1
        if self.is_zero():
            return -1
        return int(self._p.degrees()[self.vars.index(var)])

    def degree_in(self, vars: Iterable[str]) -> int:
        """Largest total degree of a term when only ``vars`` are counted."""
        idx = [self.vars.index(v) for v in vars if v in self.vars]
        return max((int(sum(exp[i] for i in idx)) for exp in self._p.monoms()), default=-1)

    def min_degree_in(self, vars: Iterable[str]) -> int:
        idx = [self.vars.index(v) for v in vars if v in self.vars]
        return min((int(sum(exp[i] for i in idx)) for exp in self._p.monoms()), default=-1)

    def is_homogeneous(self, vars: Iterable[str] | None = None) -> bool:
        vars = self.vars if vars is None else tuple(vars)
        if self.is_zero():
            return True
        return self.degree_in(vars) == self.min_degree_in(vars)

    def leading_coefficient(self) -> Fraction:
        if self.is_zero():
            return Fraction(0)
        return _from_fmpq(next(iter(self._p.coeffs())))

    def content(self) -> Fraction:
        """Positive rational c with self / c having coprime integer coefficients."""
        coeffs = [as_rational(c) for c in self._p.coeffs()]
        if not coeffs:
            return Fraction(0)
        num = 0
        den = 1
        for c in coeffs:
            num = gcd(num, c.numerator)
            den = lcm(den, c.denominator)
        return Fraction(num, den)

    def normalized(self) -> "MPoly":
        """Primitive integer part with positive leading coefficient (canonical form)."""
        if self.is_zero():
            return self
        c = self.content()
        if self.leading_coefficient() < 0:
            c = -c
        return self / c

    def coefficient_of(self, exp: Sequence[int]) -> Fraction:
        return self.terms().get(tuple(exp), Fraction(0))

    # arithmetic -------------------------------------------------------------------
    def __add__(self, other):
        a, b = self._coerce(other)
        return MPoly(a.vars, a._p + b._p)

    __radd__ = __add__

    def __sub__(self, other):
        a, b = self._coerce(other)
        return MPoly(a.vars, a._p - b._p)

    def __rsub__(self, other):
        a, b = self._coerce(other)
        return MPoly(a.vars, b._p - a._p)

    def __neg__(self):
        return MPoly(self.vars, -self._p)

    def __mul__(self, other):
        a, b = self._coerce(other)
        return MPoly(a.vars, a._p * b._p)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, MPoly):
            if not other.is_constant():
                return self.exact_div(other)
            other = other.constant_term()
        q = as_rational(other)
        if not q:
            raise ZeroDivisionError("division of a polynomial by zero")
        return MPoly(self.vars, self._p * flint.fmpq(q.denominator, q.numerator))

    def __pow__(self, e: int):
        if e < 0:
            raise ValueError("negative power")
        return MPoly(self.vars, self._p ** e)

    def divmod(self, other: "MPoly") -> tuple["MPoly", "MPoly"]:
        a, b = self._coerce(other)
        q, r = divmod(a._p, b._p)
        return MPoly(a.vars, q), MPoly(a.vars, r)

    def exact_div(self, other: "MPoly") -> "MPoly":
        q, r = self.divmod(other)
        if not r.is_zero():
            raise ArithmeticError("inexact polynomial division")
        return q

    def divides(self, other: "MPoly") -> bool:
        """True when ``self`` divides ``other`` exactly."""
        if self.is_zero():
            return other.is_zero()
        return other.divmod(self)[1].is_zero()

    def __eq__(self, other):
        if isinstance(other, MPoly):
            a, b = self._coerce(other)
            return a._p == b._p
        try:
            return self.is_constant() and self.constant_term() == as_rational(other)
        except TypeError:
            return NotImplemented

    def __hash__(self):
        used = self.used_vars()
        return hash((used, tuple(sorted(self.in_vars(used).terms().items())) if used else self.constant_term()))

    # calculus / evaluation ------------------------------------------------------------
    def derivative(self, var: str) -> "MPoly":
        if var not in self.vars:
            return MPoly.zero(self.vars)
        return MPoly(self.vars, self._p.derivative(var))

    def evaluate(self, point: Mapping[str, object] | Sequence) -> Fraction:
        """Evaluate at a full assignment of rational values."""
        if not isinstance(point, Mapping):
            point = dict(zip(self.vars, point))
        missing = [v for v in self.used_vars() if v not in point]
        if missing:
            raise KeyError(f"no value for variables {missing}")
        vals = [_to_fmpq(point.get(v, 0)) for v in self.vars]
        return _from_fmpq(self._p(*vals)) if self.vars else self.constant_term()

    def substitute(self, assignments: Mapping[str, object], vars: Sequence[str] | None = None) -> "MPoly":
        return poly_substitute(self, assignments, vars)

    # printing ---------------------------------------------------------------------
    def text(self) -> str:
        return poly_text(self)

    def __str__(self):
        return self.text()

    def __repr__(self):
        return f"MPoly({self.text()!r}, vars={self.vars})"


# text format ----------------------------------------------------------------------

def _monomial_text(vars, exp) -> str:
    parts = []
    for v, e in zip(vars, exp):
        if e == 1:
            parts.append(v)
        elif e > 1:
            parts.append(f"{v}^{e}")
    return " ".join(parts)


def poly_text(p: MPoly) -> str:
    """Canonical text: ``c x^i y^j z^k`` terms in graded lex order joined by ``+``/``-``."""
    if p.is_zero():
        return "0"
    out = []
    for exp, c in p.terms().items():
        mono = _monomial_text(p.vars, exp)
        mag = abs(c)
        if mono and mag == 1:
            body = mono
        elif mono:
            body = f"{mag} {mono}"
        else:
            body = str(mag)
        if not out:
            out.append(body if c > 0 else f"-{body}")
        else:
            out.append(("+ " if c > 0 else "- ") + body)
    return " ".join(out)


_TERM_SPLIT = re.compile(r"\s+([+-])\s+")


def parse_poly(text: str, vars: Sequence[str] = XYZ) -> MPoly:
    vars = tuple(vars)
    text = text.strip()
    if text == "0":
        return MPoly.zero(vars)
    pieces = _TERM_SPLIT.split(text)
    signs = ["+"] + pieces[1::2]
    bodies = pieces[0::2]
    index = {v: i for i, v in enumerate(vars)}
    terms: dict[tuple[int, ...], Fraction] = {}
    for sign, body in zip(signs, bodies):
        body = body.strip()
        neg = sign == "-"
        if body.startswith("-"):
            neg = not neg
            body = body[1:].strip()
        tokens = body.split()
        coeff = Fraction(1)
        if tokens and re.fullmatch(r"\d+(/\d+)?", tokens[0]):
            coeff = Fraction(tokens.pop(0))
        exp = [0] * len(vars)
        for tok in tokens:
            name, _, power = tok.partition("^")
            if name not in index:
                raise ValueError(f"unknown variable {name!r} in {text!r}")
            exp[index[name]] += int(power) if power else 1
        key = tuple(exp)
        terms[key] = terms.get(key, Fraction(0)) + (-coeff if neg else coeff)
    return MPoly.from_terms(vars, terms)


# operations -----------------------------------------------------------------------

def poly_substitute(target: MPoly, assignments: Mapping[str, object], vars: Sequence[str] | None = None) -> MPoly:
    """Formal substitution ``v -> assignments[v]`` for every variable used by ``target``.

    The result lives in ``vars`` if given, otherwise in the union of the variables of
    the assigned polynomials (in first-seen order).
    """
    missing = [v for v in target.used_vars() if v not in assignments]
    if missing:
        raise KeyError(f"missing assignment for {missing}")
    images = {}
    out_vars: tuple[str, ...] = tuple(vars) if vars is not None else ()
    for v in target.vars:
        val = assignments.get(v, 0)
        images[v] = val
        if vars is None and isinstance(val, MPoly):
            out_vars = _merge_vars(out_vars, val.vars)
    ctx = _ctx(out_vars)
    args = []
    for v in target.vars:
        val = images[v]
        if isinstance(val, MPoly):
            args.append(val.in_vars(out_vars)._p)
        else:
            args.append(ctx.constant(_to_fmpq(val)))
    if not target.vars:
        return MPoly.constant(target.constant_term(), out_vars)
    return MPoly(out_vars, target._p.compose(*args, ctx=ctx))


def gcd_poly(p: MPoly, q: MPoly) -> MPoly:
    """Normalized gcd (primitive, positive leading coefficient); gcd(0, 0) = 0."""
    a, b = p._coerce(q)
    if a.is_zero() and b.is_zero():
        return a
    g = MPoly(a.vars, a._p.gcd(b._p))
    return g.normalized()


def gcd_many(polys: Iterable[MPoly]) -> MPoly:
    polys = list(polys)
    g = polys[0]
    for p in polys[1:]:
        g = gcd_poly(g, p)
        if g.is_constant() and not g.is_zero():
            break
    return g.normalized()


def resultant_univar(p: MPoly, q: MPoly, var: str) -> MPoly:
    """Sylvester resultant of ``p`` and ``q`` eliminating ``var``."""
    a, b = p._coerce(q)
    if a.is_zero() or b.is_zero():
        raise ValueError("resultant of a zero polynomial")
    if a.degree(var) <= 0 and b.degree(var) <= 0:
        raise ValueError(f"neither polynomial involves {var}")
    if var not in a.vars:
        raise ValueError(f"unknown variable {var}")
    return MPoly(a.vars, a._p.resultant(b._p, var))


def coefficients_in(p: MPoly, var: str) -> list[MPoly]:
    """Coefficients of ``p`` viewed as a univariate polynomial in ``var``, low degree first."""
    if var not in p.vars:
        return [p]
    i = p.vars.index(var)
    buckets: dict[int, dict] = {}
    for exp, c in p._p.to_dict().items():
        e = list(exp)
        k = e[i]
        e[i] = 0
        buckets.setdefault(k, {})[tuple(e)] = c
    deg = max(buckets, default=0)
    ctx = _ctx(p.vars)
    return [MPoly(p.vars, ctx.from_dict(buckets.get(k, {}))) for k in range(deg + 1)]


def sylvester_matrix(p: MPoly, q: MPoly, var: str) -> list[list[MPoly]]:
    a, b = p._coerce(q)
    ca = coefficients_in(a, var)[::-1]
    cb = coefficients_in(b, var)[::-1]
    m, n = len(ca) - 1, len(cb) - 1
    size = m + n
    zero = MPoly.zero(a.vars)
    rows = []
    for i in range(n):
        rows.append([zero] * i + ca + [zero] * (size - m - 1 - i))
    for i in range(m):
        rows.append([zero] * i + cb + [zero] * (size - n - 1 - i))
    return rows


def det_bareiss(matrix: Sequence[Sequence]) -> object:
    """Fraction-free (Bareiss) determinant over a domain of exact values or MPoly."""
    m = [list(r) for r in matrix]
    n = len(m)
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if _is_zero(m[k][k]):
            for r in range(k + 1, n):
                if not _is_zero(m[r][k]):
                    m[k], m[r] = m[r], m[k]
                    sign = -sign
                    break
            else:
                return 0 * m[0][0]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = m[i][j] * m[k][k] - m[i][k] * m[k][j]
                m[i][j] = num.exact_div(prev) if isinstance(prev, MPoly) else num / prev
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


def _is_zero(v) -> bool:
    if isinstance(v, MPoly):
        return v.is_zero()
    return v == 0


# linear algebra --------------------------------------------------------------------

@dataclass(frozen=True)
class LinSystemSolution:
    """Exact solution set of ``A v = b`` (or ``A v = 0``).

    ``basis`` spans the kernel, one vector per free column (leftmost-pivot RREF), so the
    basis is echelonized.  ``particular`` is the solution with all free variables zero,
    or None when the system is homogeneous or inconsistent.
    """

    basis: list[list[Fraction]]
    rank: int
    free_dimension: int
    pivots: tuple[int, ...] = ()
    particular: list[Fraction] | None = None
    consistent: bool = True

    @property
    def dimension(self) -> int:
        return self.free_dimension


def _integer_rows(matrix) -> list[list[int]]:
    rows = []
    for row in matrix:
        qs = [as_rational(v) for v in row]
        den = 1
        for q in qs:
            den = lcm(den, q.denominator)
        rows.append([int(q * den) for q in qs])
    return rows


def _rref_python(rows: list[list[int]], ncols: int) -> tuple[list[list[Fraction]], list[int]]:
    """Fraction-free forward elimination, then exact back substitution to RREF."""
    m = [list(r) for r in rows]
    pivots: list[int] = []
    r = 0
    prev = 1
    nrows = len(m)
    for c in range(ncols):
        if r == nrows:
            break
        piv = next((i for i in range(r, nrows) if m[i][c] != 0), None)
        if piv is None:
            continue
        if piv != r:
            m[r], m[piv] = m[piv], m[r]
        p = m[r][c]
        for i in range(r + 1, nrows):
            mi = m[i]
            f = mi[c]
            mr = m[r]
            new = [0] * ncols
            for j in range(ncols):
                if j < c:
                    continue
                new[j] = (p * mi[j] - f * mr[j]) // prev
            m[i] = new
        prev = p
        pivots.append(c)
        r += 1
    ech = [[Fraction(v) for v in row] for row in m[:r]]
    for i in range(r - 1, -1, -1):
        c = pivots[i]
        p = ech[i][c]
        ech[i] = [v / p for v in ech[i]]
        for k in range(i):
            f = ech[k][c]
            if f:
                ech[k] = [a - f * b for a, b in zip(ech[k], ech[i])]
    return ech, pivots


def _rref_flint(rows: list[list[int]], ncols: int) -> tuple[list[list[Fraction]], list[int]]:
    mat = flint.fmpz_mat(rows) if rows else flint.fmpz_mat(0, ncols)
    red, den, rank = mat.rref()
    ech = []
    pivots = []
    d = int(den)
    for i in range(rank):
        row = [Fraction(int(red[i, j]), d) for j in range(ncols)]
        c = next(j for j, v in enumerate(row) if v)
        p = row[c]
        ech.append([v / p for v in row])
        pivots.append(c)
    return ech, pivots


def rref(matrix: Sequence[Sequence], ncols: int | None = None, backend: str = "auto"):
    """Reduced row echelon form with leftmost pivots; returns (rows, pivot columns)."""
    rows = _integer_rows(matrix)
    if ncols is None:
        ncols = len(rows[0]) if rows else 0
    if backend == "auto":
        backend = "python" if len(rows) * ncols <= 4000 else "flint"
    if backend == "python":
        return _rref_python(rows, ncols)
    if backend == "flint":
        if not rows:
            return [], []
        return _rref_flint(rows, ncols)
    raise ValueError(f"unknown backend {backend!r}")


def solve_exact(matrix: Sequence[Sequence], rhs: Sequence | None = None, ncols: int | None = None,
                backend: str = "auto") -> LinSystemSolution:
    """Exact solution of ``matrix @ v = rhs`` (homogeneous when ``rhs`` is None).

    Inconsistent systems are reported with ``consistent=False``; they are not errors.
    """
    matrix = [list(r) for r in matrix]
    if ncols is None:
        if not matrix:
            raise ValueError("ncols required for an empty matrix")
        ncols = len(matrix[0])
    if any(len(r) != ncols for r in matrix):
        raise ValueError("ragged matrix")
    if rhs is not None:
        if len(rhs) != len(matrix):
            raise ValueError("rhs length does not match the number of rows")
        aug = [r + [as_rational(b)] for r, b in zip(matrix, rhs)]
        ech, pivots = rref(aug, ncols + 1, backend) if aug else ([], [])
        if ncols in pivots:
            return LinSystemSolution([], len(pivots) - 1, ncols - len(pivots) + 1,
                                     tuple(p for p in pivots if p != ncols), None, False)
        particular = [Fraction(0)] * ncols
        for row, c in zip(ech, pivots):
            particular[c] = row[ncols]
        basis = _kernel_from_rref([r[:ncols] for r in ech], pivots, ncols)
        return LinSystemSolution(basis, len(pivots), ncols - len(pivots), tuple(pivots), particular, True)
    ech, pivots = rref(matrix, ncols, backend) if matrix else ([], [])
    basis = _kernel_from_rref(ech, pivots, ncols)
    return LinSystemSolution(basis, len(pivots), ncols - len(pivots), tuple(pivots))


def _kernel_from_rref(ech, pivots, ncols) -> list[list[Fraction]]:
    pivset = set(pivots)
    basis = []
    for f in range(ncols):
        if f in pivset:
            continue
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for row, c in zip(ech, pivots):
            v[c] = -row[f]
        basis.append(v)
    return basis


def primitive_integer_vector(v: Sequence) -> list[int]:
    """Scale a rational vector to coprime integers with positive first nonzero entry."""
    qs = [as_rational(c) for c in v]
    den = 1
    for q in qs:
        den = lcm(den, q.denominator)
    ints = [int(q * den) for q in qs]
    g = 0
    for i in ints:
        g = gcd(g, i)
    if g == 0:
        return ints
    ints = [i // g for i in ints]
    first = next((i for i in ints if i), 0)
    if first < 0:
        ints = [-i for i in ints]
    return ints


# monomials --------------------------------------------------------------------------

def monomials(degree: int, nvars: int = 3) -> list[tuple[int, ...]]:
    """Exponent vectors of total degree ``degree`` in canonical (graded lex) order."""
    if nvars == 1:
        return [(degree,)]
    out = []
    for first in range(degree, -1, -1):
        for rest in monomials(degree - first, nvars - 1):
            out.append((first,) + rest)
    return out


# probabilistic identity checks ------------------------------------------------------

WORD_PRIMES = (2147483647, 2147483629, 2147483587, 1000000007, 998244353)


def eval_mod(poly: MPoly, point: Mapping[str, int] | Sequence[int], p: int) -> int | None:
    """Value of ``poly`` at an integer point modulo ``p``; None if a denominator vanishes mod p."""
    if not isinstance(point, Mapping):
        point = dict(zip(poly.vars, point))
    vals = [point.get(v, 0) % p for v in poly.vars]
    acc = 0
    for exp, c in poly._p.to_dict().items():
        den = int(c.q) % p
        if den == 0:
            return None
        term = int(c.p) * pow(den, -1, p)
        for x, e in zip(vals, exp):
            if e:
                term = term * pow(x, e, p)
        acc = (acc + term) % p
    return acc


def modular_identity_check(lhs: MPoly, rhs: MPoly, primes: Sequence[int] = WORD_PRIMES[:3],
                           trials: int = 4, seed: int = 0) -> bool:
    """Probabilistic identity test: compare ``lhs`` and ``rhs`` at random points mod primes.

    Neither side is expanded against the other.  A ``True`` answer is a probabilistic
    identity check, not a proof.
    """
    a, b = lhs._coerce(rhs)
    rng = random.Random(seed)
    for p in primes:
        for _ in range(trials):
            point = [rng.randrange(1, p) for _ in a.vars]
            va, vb = eval_mod(a, point, p), eval_mod(b, point, p)
            if va is None or vb is None:
                continue
            if va != vb:
                return False
    return True


def modular_power_check(target: MPoly, factors: Sequence[tuple[MPoly, int]], primes: Sequence[int] = WORD_PRIMES[:3],
                        trials: int = 4, seed: int = 0) -> bool:
    """Probabilistic test of ``target = c * prod(f^e)`` for an unknown nonzero constant c."""
    if target.is_zero():
        return False
    rng = random.Random(seed)
    vars_ = target.vars
    for f, _ in factors:
        vars_ = _merge_vars(vars_, f.vars)
    for p in primes:
        ref = None
        for _ in range(trials + 1):
            point = {v: rng.randrange(1, p) for v in vars_}
            t = eval_mod(target, point, p)
            prod = 1
            for f, e in factors:
                v = eval_mod(f, point, p)
                prod = None if (v is None or prod is None) else prod * pow(v, e, p) % p
            if t is None or prod is None:
                continue
            if ref is None:
                ref = (t, prod)
                if prod == 0:
                    return False
                continue
            if t * ref[1] % p != ref[0] * prod % p:
                return False
    return True


# rational functions -----------------------------------------------------------------

class RatFunc:
    """Quotient of two MPoly, kept reduced with a monic-normalized denominator."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=None, reduce: bool = True):
        if not isinstance(num, MPoly):
            num = MPoly.constant(num, den.vars if isinstance(den, MPoly) else ())
        if den is None:
            den = MPoly.constant(1, num.vars)
        elif not isinstance(den, MPoly):
            den = MPoly.constant(den, num.vars)
        num, den = num._coerce(den)
        if den.is_zero():
            raise ZeroDivisionError("rational function with zero denominator")
        if reduce:
            if num.is_zero():
                den = MPoly.constant(1, num.vars)
            elif not den.is_constant():
                g = gcd_poly(num, den)
                if not g.is_constant():
                    num, den = num.exact_div(g), den.exact_div(g)
            lc = den.leading_coefficient()
            num, den = num / lc, den / lc
        self.num = num
        self.den = den

    @classmethod
    def of(cls, value) -> "RatFunc":
        if isinstance(value, RatFunc):
            return value
        if isinstance(value, MPoly):
            return cls(value)
        return cls(MPoly.constant(value, ()))

    def is_constant(self) -> bool:
        return self.num.is_constant() and self.den.is_constant()

    def to_rational(self) -> Fraction:
        if not self.is_constant():
            raise TypeError(f"{self} is not constant")
        return self.num.constant_term() / self.den.constant_term()

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def __add__(self, other):
        o = RatFunc.of(other)
        return RatFunc(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __sub__(self, other):
        o = RatFunc.of(other)
        return RatFunc(self.num * o.den - o.num * self.den, self.den * o.den)

    def __rsub__(self, other):
        return RatFunc.of(other) - self

    def __neg__(self):
        return RatFunc(-self.num, self.den, reduce=False)

    def __mul__(self, other):
        o = RatFunc.of(other)
        return RatFunc(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = RatFunc.of(other)
        if o.is_zero():
            raise ZeroDivisionError("division by zero rational function")
        return RatFunc(self.num * o.den, self.den * o.num)

    def __rtruediv__(self, other):
        return RatFunc.of(other) / self

    def __pow__(self, e: int):
        if e < 0:
            return RatFunc(self.den ** (-e), self.num ** (-e))
        return RatFunc(self.num ** e, self.den ** e, reduce=False)

    def __eq__(self, other):
        try:
            o = RatFunc.of(other)
        except TypeError:
            return NotImplemented
        return (self.num * o.den - o.num * self.den).is_zero()

    def __hash__(self):
        return hash((self.num, self.den))

    def substitute(self, assignments, vars=None) -> "RatFunc":
        return RatFunc(poly_substitute(self.num, assignments, vars), poly_substitute(self.den, assignments, vars))

    def text(self) -> str:
        if self.den == 1:
            return self.num.text()
        return f"({self.num.text()}) / ({self.den.text()})"

    __str__ = text

    def __repr__(self):
        return f"RatFunc({self.text()!r})"
