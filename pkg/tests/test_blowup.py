from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from cremona_lab.blowup import (
    AFF,
    QLABEL,
    DivisorClass,
    NoSequence,
    build_tower,
    chain_reflection,
    contraction_sequence,
    dual_graph,
    expected_graph,
    free_centers,
    homaloidal_class,
    homaloidal_data,
    is_automorphism,
    is_minus_one_tower_resolution,
    matches_expected,
    noether_identities,
    predicted_psi_degree,
    proximity_matrix,
    resolve_branch,
    simulate_contractions,
    strict_transform,
    strict_transform_classes,
    transport_class,
    transport_tower,
)
from cremona_lab.exactcore import XYZ, MPoly
from cremona_lab.linsys import G_Q
from cremona_lab.pipeline import default_a
from cremona_lab.plane import ProjPoint

x, y = MPoly.gens(AFF)


def test_tower_shape():
    t = build_tower(2, (3, 5))
    assert t.length == 8
    assert [s.kind for s in t.steps] == ["y"] * 4 + ["x"] * 4
    assert t.centers()[2] == (1, 0)
    assert t.centers()[6:] == [(0, 5), (0, 3)]
    assert free_centers(t) == (Fraction(5), Fraction(3))
    assert t.is_chain()
    with pytest.raises(ValueError):
        build_tower(2, (1,))


def test_chart_formulas():
    t = build_tower(3, (2, 3, 5))
    assert t.composed_chart(4) == (x * y ** 4 + y ** 2, y)
    assert t.composed_chart(7, base=4) == (x, x ** 3 * y)
    assert t.composed_chart(10, base=7) == (x, x ** 3 * y + 2 * x ** 2 + 3 * x + 5)


def test_strict_transform():
    F = y ** 2 - x ** 3
    G, m = strict_transform(F, "x", (0, 0))
    assert m == 2 and G == y ** 2 - x


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_classes_and_graph(n):
    t = build_tower(n, default_a(n))
    classes = strict_transform_classes(t)
    assert classes[QLABEL].coeffs == (2,) + (1,) * 5 + (0,) * (2 * n - 1)
    assert classes["E4"].self_intersection() == -(n + 1)
    g = dual_graph(classes)
    assert g.is_tree() and matches_expected(g, n)
    assert is_automorphism(g, chain_reflection(n))
    assert len(g.vertices) == 5 + 2 * n
    assert g.edge_set() == expected_graph(n).edge_set()


def test_dot_labels():
    dot = dual_graph(strict_transform_classes(build_tower(2, default_a(2)))).to_dot()
    assert 'Qtilde [label="Qtilde [-1]"]' in dot and 'label="Etilde_4 [-3]"' in dot
    assert dot.count("--") == 8


def test_proximity_matches_self_intersections():
    t = build_tower(2, default_a(2))
    P = proximity_matrix(t)
    assert all(P[i][i + 1] == 1 for i in range(7))
    classes = strict_transform_classes(t)
    for i in range(8):
        assert classes[f"E{i + 1}"].self_intersection() == -1 - sum(P[i])


@pytest.mark.parametrize("n", [1, 2, 3, 5])
def test_contractions_and_homaloidal(n):
    t = build_tower(n, default_a(n))
    classes = strict_transform_classes(t)
    m = t.length
    seq = contraction_sequence(classes, keep=f"E{m}")
    assert seq[:2] == [QLABEL, "E5"]
    seq2 = contraction_sequence(classes, keep=QLABEL)
    assert seq2[:2] == [f"E{m}", f"E{m - 1}"]
    hom = homaloidal_class(classes, seq)
    assert hom == homaloidal_data(n)
    assert all(noether_identities(hom))
    final = simulate_contractions(classes, seq)[f"E{m}"]
    assert final.self_intersection() == 4


def test_bad_contraction_order():
    classes = strict_transform_classes(build_tower(2, default_a(2)))
    with pytest.raises(NoSequence):
        simulate_contractions(classes, ["E1"])


def test_transport_and_psi_degree():
    hom = homaloidal_data(2)
    L = DivisorClass.line(8)
    assert transport_class(L, [hom]) == 9
    assert [predicted_psi_degree(n) for n in (1, 2, 3)] == [26, 82, 170]


def test_transport_tower_values():
    t = build_tower(2, (1, 1))
    assert transport_tower(t, 2, 1).centers()[6:] == [(0, Fraction(1, 4)), (0, Fraction(1, 8))]
    assert transport_tower(t, 3, 1).centers()[6:] == [(0, Fraction(1, 9)), (0, Fraction(1, 27))]
    assert transport_tower(t, 2, 3).centers()[6:] == [(0, Fraction(243, 4)), (0, Fraction(2187, 8))]
    t3 = build_tower(3, (0, 0, 1))
    assert transport_tower(t3, 2, 1).centers()[7:] == [(0, Fraction(1, 8)), (0, 0), (0, 0)]


def test_minus_one_tower_predicate():
    t = build_tower(2, default_a(2))
    assert is_minus_one_tower_resolution(t, G_Q)
    assert not is_minus_one_tower_resolution(t.truncated(4), G_Q)


def test_resolve_cusp():
    X, Y, Z = MPoly.gens(XYZ)
    b = resolve_branch(Y ** 2 * Z ** 3 - X ** 5, ProjPoint.of(0, 0, 1))
    assert b.multiplicities == (2, 2) and b.single_branch
    node = resolve_branch(Y ** 2 * Z - X ** 2 * (X + Z), ProjPoint.of(0, 0, 1))
    assert not node.single_branch


small = st.integers(-5, 5)
classes9 = st.lists(small, min_size=9, max_size=9).map(lambda v: DivisorClass(tuple(v)))


@given(classes9, classes9, classes9)
def test_intersection_form_bilinear_symmetric(a, b, c):
    assert a.dot(b) == b.dot(a)
    assert (a + b).dot(c) == a.dot(c) + b.dot(c)
    assert (a * 3).dot(b) == 3 * a.dot(b)


@given(classes9)
def test_adjunction_parity(a):
    assert (a.self_intersection() + a.canonical_pairing()) % 2 == 0
