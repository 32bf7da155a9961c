from itertools import combinations

import pytest

from rigidset.core import CurveLabel
from rigidset.dynnikov import BraidWord, geometric_intersection
from rigidset.sphere import (PunctureInterval, ReconstructFailed, base_configuration, build_rigid_set_sphere,
                             chain_curves, chord_intersection, determining_set, is_consecutive, reconstruct,
                             round_trip, sphere_cert, verify_lee_sphere, verify_unique_determination)

CATALAN = {5: 5, 6: 14, 7: 42, 8: 132, 9: 429}


def test_interval_normal_form():
    assert PunctureInterval(7, 6, 5).label == CurveLabel("interval", (4, 2))    # {6,7,1,2,3} ~ {4,5}
    assert PunctureInterval(6, 4, 3).label == CurveLabel("interval", (1, 3))
    assert PunctureInterval(6, 1, 3).label == CurveLabel("interval", (1, 3))
    with pytest.raises(ValueError):
        PunctureInterval(6, 1, 5)


@pytest.mark.parametrize("n", [5, 6, 7, 8, 9])
def test_structure(n):
    rs = build_rigid_set_sphere(n)
    assert len(rs.labels) == n * (n - 3) // 2
    lee = verify_lee_sphere(n)
    assert lee["passed"]
    assert lee["facets"] == CATALAN[n]         # triangulations of the n-gon
    assert lee["euler_characteristic"] == 1 + (-1) ** (n - 4)


def test_chord_rule_examples():
    n = 7
    a, b, c = (PunctureInterval(n, s, L).label for s, L in ((1, 2), (2, 2), (1, 3)))
    assert chord_intersection(n, a, b) == 2
    assert chord_intersection(n, a, c) == 0     # nested
    assert chord_intersection(n, a, PunctureInterval(n, 4, 2).label) == 0


def test_coordinates_agree_with_chords():
    n = 7
    rs = build_rigid_set_sphere(n)
    base = base_configuration(n)
    for x, y in combinations(rs.labels, 2):
        assert geometric_intersection(base[x], base[y]) == rs.i(x, y)


def test_chain_helpers():
    n = 6
    ch = chain_curves(n)
    assert is_consecutive(n, ch[4:] + ch[:1])
    assert not is_consecutive(n, [ch[0], ch[2]])
    lab = PunctureInterval(n, 2, 3).label
    assert len(determining_set(n, lab)) == n - 2
    with pytest.raises(ValueError):
        determining_set(n, ch[0])


@pytest.mark.parametrize("n", [5, 6])
def test_every_intersecting_pair_detectable(n):
    rs = build_rigid_set_sphere(n)
    for x, y in combinations(rs.labels, 2):
        if rs.i(x, y):
            assert sphere_cert(rs, x, y).is_valid(rs)


def test_bounded_determination():
    n = 6
    lab = PunctureInterval(n, 1, 3).label
    assert verify_unique_determination(n, lab, 8)


def test_reconstruct_frozen_word():
    n = 6
    base = base_configuration(n)
    w = BraidWord(n, (1, 2, -3, 4, 4, -1))
    rec = reconstruct(n, {x: c.act(w) for x, c in base.items()})
    assert all(rec.act(c) == c.act(w) for c in base.values())
    assert not rec.reflected


def test_reconstruct_rejects_non_images():
    n = 6
    base = base_configuration(n)
    w = BraidWord(n, (2, -1, 3))
    bogus = {x: c.act(w) for x, c in base.items()}
    lab = PunctureInterval(n, 1, 3).label
    bogus[lab] = bogus[lab].act(BraidWord(n, (2, 2)))     # chain images stay consistent
    with pytest.raises(ReconstructFailed):
        reconstruct(n, bogus)


def test_round_trip_small():
    rep = round_trip(5, 10, 12, seed=4)
    assert rep["passed"], rep
