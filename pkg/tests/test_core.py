import pytest

from rigidset.core import CurveLabel, DetectCert, NoCertificate, RigidSet, find_detect_cert
from rigidset.simplicial import SurfaceSig
from rigidset.sphere import build_rigid_set_sphere

A, B, C = (CurveLabel("c", (i,)) for i in range(3))


def test_label_parse_round_trip():
    for lab in (CurveLabel("bp", (0, 3, "+")), CurveLabel("beta"), CurveLabel("tb", (7, 1, 4, "-"))):
        assert CurveLabel.parse(str(lab)) == lab


def test_matrix_validation():
    sig = SurfaceSig(0, 5)
    with pytest.raises(ValueError):
        RigidSet(sig, (A, B), ((0, 1), (2, 0)))
    with pytest.raises(ValueError):
        RigidSet(sig, (A, B), ((1, 0), (0, 0)))
    with pytest.raises(ValueError):
        RigidSet(sig, (A, A), ((0, 0), (0, 0)))


def test_json_and_csv():
    rs = build_rigid_set_sphere(6)
    again = RigidSet.from_json(rs.to_json())
    assert again == rs and again.to_json() == rs.to_json()
    lines = rs.to_csv().splitlines()
    assert len(lines) == len(rs.labels) + 1


def test_aliases_resolve():
    rs = RigidSet(SurfaceSig(0, 5), (A, B), ((0, 2), (2, 0)), {C: A})
    assert rs.i(C, B) == 2 and C in rs and rs.resolve(C) == A
    assert RigidSet.from_json(rs.to_json()).aliases == {C: A}


def test_search_certificate():
    rs = build_rigid_set_sphere(5)
    a, b = rs.labels[0], next(x for x in rs.labels if rs.i(rs.labels[0], x))
    cert = find_detect_cert(rs, a, b)
    assert cert.is_valid(rs) and len(cert.p_a) == 2
    bad = DetectCert(a, b, frozenset({a}), frozenset({b}))
    assert "P_a has 1 curves, expected 2" in bad.problems(rs)


def test_search_certificate_fails_on_disjoint_pair():
    rs = build_rigid_set_sphere(5)
    a = rs.labels[0]
    b = next(x for x in rs.labels if x != a and not rs.i(a, x))
    with pytest.raises((NoCertificate, ValueError)):
        find_detect_cert(rs, a, b)
