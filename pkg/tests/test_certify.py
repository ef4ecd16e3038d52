import copy

import pytest

from cremona_lab.blowup import build_tower
from cremona_lab.certify import (
    AutFamily,
    Certificate,
    automorphism_family,
    chain_gcd,
    chart_constraints,
    euclid_chain,
    family_checks,
    recheck_certificate,
    symbolic_escape,
    transported_centers,
    unicuspidal_certificate,
    verify_euclid_chain,
)
from cremona_lab.exactcore import XYZ, MPoly
from cremona_lab.pipeline import default_a
from cremona_lab.plane import PlaneCurve, ProjAut

k = MPoly.var("k", ("k",))
x, y, z = MPoly.gens(XYZ)


def test_family_is_diagonal():
    fam = automorphism_family()
    assert fam.texts() == [["k^2", "0", "0"], ["0", "k", "0"], ["0", "0", "1"]]
    assert all(family_checks(fam).values())
    assert fam.at(3) == ProjAut([[9, 0, 0], [0, 3, 0], [0, 0, 1]])
    with pytest.raises(ValueError):
        fam.at(0)


def test_family_checks_detect_wrong_family():
    bad = AutFamily.from_texts("k", [["k", "0", "0"], ["0", "k", "0"], ["0", "0", "1"]])
    checks = family_checks(bad)
    assert not checks["preserves_Q"] and checks["preserves_L"] and checks["fixes_p1"]


def test_constraints_n2():
    t = build_tower(2, default_a(2))
    cons = chart_constraints(automorphism_family(), t, transported_centers(t, 2, 1))
    assert {(c.label, c.index): c.poly.text() for c in cons} == {(7, 2): "4 k^5 - 1", (8, 1): "8 k^7 - 1"}


def test_source_equals_target_gives_identity_root():
    t = build_tower(2, default_a(2))
    cons = chart_constraints(automorphism_family(), t, t)
    assert all(c.poly.evaluate({"k": 1}) == 0 for c in cons)


def test_euclid_chain():
    chain = euclid_chain(k - 2, k ** 3 - 4)
    assert verify_euclid_chain(chain, k ** 3 - 4, k - 2)
    assert chain_gcd(chain).is_constant()
    common = euclid_chain((k - 1) * (k + 3), (k - 1) * (k ** 2 + 1))
    assert chain_gcd(common) == k - 1
    broken = copy.deepcopy(chain)
    broken[0]["quotient"] = "k^2 + 2 k + 5"
    assert not verify_euclid_chain(broken, k ** 3 - 4, k - 2)


def test_parameter_one_shares_root():
    t = build_tower(2, default_a(2))
    fam = automorphism_family()
    cons = chart_constraints(fam, t, transported_centers(t, 1, 1))
    assert all(c.poly.evaluate({"k": 1}) == 0 for c in cons)


def test_symbolic_escape():
    esc = symbolic_escape(build_tower(2, default_a(2)))
    assert sorted(f for f, _ in esc["resultant_factors"]) == ["lam", "lam - 1", "mu"]
    assert esc["only_escape_lambda_1_or_mu_0"]


def test_unicuspidal_certificate():
    cusp = unicuspidal_certificate(PlaneCurve(y ** 2 * z - x ** 3), "cubic")
    assert cusp.verdict == "pass" and cusp.evidence["multiplicity_sequence"] == [2]
    assert recheck_certificate(cusp) == (True, "pass")
    nodal = unicuspidal_certificate(PlaneCurve(x ** 2 * y ** 2 + y ** 2 * z ** 2 + z ** 2 * x ** 2), "quartic")
    assert nodal.verdict == "fail"


def test_certificate_validation():
    with pytest.raises(ValueError):
        Certificate("Bogus", "s", "pass", {})
    with pytest.raises(ValueError):
        Certificate("Degree", "s", "maybe", {})


def test_every_certificate_rechecks(construction):
    for n in (1, 2):
        for cert in construction(n).certificates:
            ok, msg = recheck_certificate(Certificate.from_json(cert.to_json()))
            assert ok, (cert.name, msg)


def test_tampered_certificates_fail(construction):
    certs = {c.name: c for c in construction(2).certificates}
    deg = copy.deepcopy(certs["Degree:C,D"].to_json())
    deg["evidence"]["C"] = deg["evidence"]["C"].replace(" - 18 x^8 y ", " - 19 x^8 y ", 1)
    assert not recheck_certificate(Certificate.from_json(deg))[0]
    ne = copy.deepcopy(certs["NonEquivalence:C,D"].to_json())
    ne["evidence"]["target_tower"][-1]["center"][1] = "1/7"
    assert not recheck_certificate(Certificate.from_json(ne))[0]
    ne = copy.deepcopy(certs["NonEquivalence:C,D"].to_json())
    ne["verdict"] = "fail"
    assert not recheck_certificate(Certificate.from_json(ne))[0]
    gm = copy.deepcopy(certs["GraphMatch:source"].to_json())
    gm["evidence"]["classes"]["E4"][0] = 1
    assert not recheck_certificate(Certificate.from_json(gm))[0]
    tr = copy.deepcopy(certs["TowerResolution:source"].to_json())
    tr["evidence"]["keep_last"]["sequence"].reverse()
    assert not recheck_certificate(Certificate.from_json(tr))[0]
    ci = copy.deepcopy(certs["ComplementIso:psi"].to_json())
    ci["evidence"]["samples"][0]["rhs"][0] = "12345"
    assert not recheck_certificate(Certificate.from_json(ci))[0]


def test_nonequivalence_evidence(construction):
    cert = next(c for c in construction(2).certificates if c.kind == "NonEquivalence")
    ev = cert.evidence
    assert ev["first_4_plus_n_unconstrained"]
    assert ev["gcd"] == "1"
    assert len(ev["relies_on"]) == 2
    assert ev["closed_form_check"]["gcd"] == "1"
