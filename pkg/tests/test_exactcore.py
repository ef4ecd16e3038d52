from fractions import Fraction

import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from cremona_lab.exactcore import (
    XYZ,
    MPoly,
    RatFunc,
    coefficients_in,
    det_bareiss,
    eval_mod,
    gcd_many,
    gcd_poly,
    modular_identity_check,
    modular_power_check,
    monomials,
    parse_poly,
    poly_text,
    primitive_integer_vector,
    resultant_univar,
    rref,
    solve_exact,
    sylvester_matrix,
)

x, y, z = MPoly.gens(XYZ)

small_int = st.integers(-6, 6)
exps = st.tuples(st.integers(0, 3), st.integers(0, 3), st.integers(0, 2))
polys = st.dictionaries(exps, small_int, max_size=6).map(lambda d: MPoly.from_terms(XYZ, d))
nonzero = polys.filter(lambda p: not p.is_zero())
xy_polys = st.dictionaries(st.tuples(st.integers(0, 3), st.integers(0, 3), st.just(0)), small_int, max_size=5).map(
    lambda d: MPoly.from_terms(XYZ, d))
rationals = st.fractions(min_value=-5, max_value=5, max_denominator=6)
matrices = st.integers(1, 5).flatmap(
    lambda c: st.lists(st.lists(small_int, min_size=c, max_size=c), min_size=0, max_size=5).map(lambda m: (m, c)))


def test_text_format_is_canonical():
    p = 3 * x ** 2 - y * z + Fraction(1, 2) * z ** 2 - 7
    assert p.text() == "3 x^2 - y z + 1/2 z^2 - 7"
    assert poly_text(MPoly.zero(XYZ)) == "0"
    assert (-x).text() == "-x"


def test_parse_errors():
    with pytest.raises(ValueError):
        parse_poly("x^2 + w", XYZ)


@given(polys)
def test_text_round_trip(p):
    assert parse_poly(p.text(), XYZ) == p
    assert MPoly.parse(poly_text(p), XYZ) == p


@given(polys, polys, polys)
def test_ring_axioms(a, b, c):
    assert (a + b) * c == a * c + b * c
    assert a * b == b * a
    assert (a - a).is_zero()


@given(polys, polys, st.fixed_dictionaries({"x": polys, "y": polys, "z": polys}))
def test_substitution_is_a_ring_homomorphism(a, b, sub):
    s = lambda p: p.substitute(sub, XYZ)
    assert s(a * b) == s(a) * s(b)
    assert s(a + b) == s(a) + s(b)


@given(polys, st.tuples(rationals, rationals, rationals))
def test_evaluate_matches_substitution(p, pt):
    sub = {v: MPoly.constant(c, XYZ) for v, c in zip(XYZ, pt)}
    assert p.substitute(sub, XYZ).constant_term() == p.evaluate(pt)


@given(nonzero, nonzero)
def test_gcd_divides_both(a, b):
    g = gcd_poly(a, b)
    assert g.divides(a) and g.divides(b)


@given(nonzero, nonzero, nonzero)
def test_gcd_contains_common_factor(a, b, h):
    g = gcd_poly(a * h, b * h)
    assert h.divides(g)


def test_gcd_many_and_zero():
    assert gcd_many([x * y, x * z, x ** 2]) == x
    assert gcd_poly(MPoly.zero(XYZ), MPoly.zero(XYZ)).is_zero()


@given(nonzero, nonzero)
def test_divmod_identity(a, b):
    q, r = a.divmod(b)
    assert q * b + r == a


@given(xy_polys, xy_polys, xy_polys)
def test_resultant_vanishes_on_common_factor(a, b, h):
    assume(h.degree("x") > 0 and not a.is_zero() and not b.is_zero())
    assert resultant_univar(a * h, b * h, "x").is_zero()


def test_resultant_matches_sylvester_determinant():
    p = x ** 2 * y + 3 * x - y ** 2
    q = 2 * x ** 3 - x * y + 5
    R = resultant_univar(p, q, "x")
    S = det_bareiss(sylvester_matrix(p, q, "x"))
    assert R == S or R == -S
    assert not R.is_zero()
    assert resultant_univar(x - 2, x ** 2 - 4, "x").is_zero()


def test_coefficients_in():
    p = 3 * x ** 2 * y + x - y
    c = coefficients_in(p, "x")
    assert c == [-y, MPoly.constant(1, XYZ), 3 * y]


@given(matrices)
def test_kernel_vectors_annihilate(mc):
    m, ncols = mc
    sol = solve_exact(m, ncols=ncols)
    for v in sol.basis:
        assert all(sum(Fraction(a) * b for a, b in zip(row, v)) == 0 for row in m)
    assert sol.rank + sol.free_dimension == ncols


@given(matrices)
def test_rref_backends_agree(mc):
    m, ncols = mc
    assume(m)
    assert rref(m, ncols, backend="python") == rref(m, ncols, backend="flint")


@given(matrices, st.lists(small_int, min_size=5, max_size=5))
def test_inhomogeneous_solution_or_report(mc, rhs):
    m, ncols = mc
    assume(m)
    b = rhs[: len(m)]
    sol = solve_exact(m, b, ncols=ncols)
    if sol.consistent:
        assert [sum(Fraction(a) * v for a, v in zip(row, sol.particular)) for row in m] == [Fraction(v) for v in b]
    else:
        assert sol.particular is None


def test_inconsistent_system_is_reported():
    sol = solve_exact([[1, 1], [1, 1]], [0, 1])
    assert not sol.consistent


def test_det_bareiss():
    assert det_bareiss([[2, 1], [4, 3]]) == 2
    assert det_bareiss([[1, 2, 3], [4, 5, 6], [7, 8, 9]]) == 0


def test_primitive_integer_vector():
    assert primitive_integer_vector([Fraction(-1, 2), Fraction(3, 4), 0]) == [2, -3, 0]


def test_monomials_order():
    assert monomials(2) == [(2, 0, 0), (1, 1, 0), (1, 0, 1), (0, 2, 0), (0, 1, 1), (0, 0, 2)]
    assert len(monomials(9)) == 55


def test_ratfunc_arithmetic():
    r = RatFunc(x ** 2 - y ** 2, x - y)
    assert r == RatFunc(x + y)
    s = RatFunc(MPoly.constant(1, XYZ), x)
    assert (s * RatFunc(x)).to_rational() == 1
    assert (r / r).is_constant()
    with pytest.raises(ZeroDivisionError):
        RatFunc(x, MPoly.zero(XYZ))


@given(nonzero, nonzero)
def test_ratfunc_field_inverse(a, b):
    r = RatFunc(a, b)
    assert (r * (1 / r)).to_rational() == 1
    assert (r - r).is_zero()


def test_modular_checks():
    lhs = (x + y) ** 6
    rhs = sum((MPoly.constant(c, XYZ) * x ** k * y ** (6 - k) for k, c in enumerate([1, 6, 15, 20, 15, 6, 1])), MPoly.zero(XYZ))
    assert modular_identity_check(lhs, rhs)
    assert not modular_identity_check(lhs, rhs + x * y ** 5)
    G = x * z - y ** 2
    assert modular_power_check(-3 * G ** 4 * x ** 2, [(G, 4), (x, 2)])
    assert not modular_power_check(G ** 4 * x, [(G, 4), (x, 2)])
    assert eval_mod(x + Fraction(1, 7) * y, (1, 1, 1), 7) is None
