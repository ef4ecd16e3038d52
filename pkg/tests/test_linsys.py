import csv

import pytest

from cremona_lab.blowup import build_tower, homaloidal_data
from cremona_lab.exactcore import XYZ, MPoly, StructuralError
from cremona_lab.linsys import (
    G_Q,
    BaseConditions,
    NoContractedConic,
    condition_matrix,
    contracted_image,
    cremona_from_net,
    export_conditions_csv,
    find_contracted_conic,
    linear_system,
    normalize_to_Q,
    normalizing_automorphism,
    vanishing_order,
)
from cremona_lab.pipeline import default_a
from cremona_lab.plane import CONIC_Q, PlaneCurve, ProjPoint, RationalMap, pullback, pure_power_exponent

x, y, z = MPoly.gens(XYZ)


def _conditions(n):
    hom = homaloidal_data(n)
    return BaseConditions(hom.degree, build_tower(n, default_a(n)), hom.multiplicities)


def test_condition_count_matches_virtual_dimension():
    for n in (1, 2):
        rows, monos = condition_matrix(_conditions(n))
        d = 4 * n + 1
        assert len(monos) == (d + 1) * (d + 2) // 2
        expected = sum(m * (m + 1) // 2 for m in homaloidal_data(n).multiplicities)
        assert len(rows) == expected


def test_net_members_have_assigned_multiplicities():
    cond = _conditions(2)
    sys = linear_system(cond)
    assert sys.dimension == 3
    assert all(F.is_homogeneous() and F.total_degree() == 9 for F in sys.basis)
    F0, F1, F2 = sys.basis
    generic = 3 * F0 - 5 * F1 + 7 * F2
    orders = [vanishing_order(generic, cond.tower, i) for i in range(1, 9)]
    assert tuple(orders) == cond.multiplicities


def test_empty_system():
    t = build_tower(1, default_a(1))
    sys = linear_system(BaseConditions(1, t, (1,) * 6))
    assert sys.dimension == 0


def test_bad_conditions():
    t = build_tower(1, default_a(1))
    with pytest.raises(ValueError):
        BaseConditions(2, t, (1, 1))
    with pytest.raises(ValueError):
        BaseConditions(2, t, (-1,) * 6)


def test_csv_export(tmp_path):
    p = tmp_path / "cond.csv"
    export_conditions_csv(_conditions(1), p)
    rows = list(csv.reader(open(p)))
    assert rows[0][0] == "x^5 y^0 z^0" and len(rows[0]) == 21


def test_cremona_from_net_and_normalization():
    raw = cremona_from_net(linear_system(_conditions(1)))
    assert raw.degree == 5
    Qs = find_contracted_conic(raw)
    assert Qs.degree == 2
    phi = normalize_to_Q(raw)
    assert find_contracted_conic(phi) == CONIC_Q
    assert contracted_image(phi) == ProjPoint.of(1, 1, 1)
    assert normalize_to_Q(phi) == phi
    assert pure_power_exponent(pullback(phi, CONIC_Q), G_Q) == 5


def test_net_of_wrong_dimension():
    t = build_tower(1, default_a(1))
    with pytest.raises(StructuralError):
        cremona_from_net(linear_system(BaseConditions(2, t, (1,) * 6)))


def test_identity_contracts_nothing():
    with pytest.raises(NoContractedConic):
        find_contracted_conic(RationalMap.identity())


def test_normalizing_automorphism_on_other_conic():
    conic = PlaneCurve(x * x + y * y - z * z)
    q = ProjPoint.of(3, 4, 5)
    a = normalizing_automorphism(conic, q)
    assert a.apply(q) == ProjPoint.of(1, 1, 1)
    assert pullback(a.inverse().as_map(), conic).normalized() == G_Q
