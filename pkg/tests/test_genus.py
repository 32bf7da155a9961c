from fractions import Fraction as F

import pytest

from rigidset import genus as G
from rigidset.flat import curve_word


def neighbours_only(rs, g, lab, s, L, value):
    m = 2 * g + 2
    ends = {(s - 1) % m, (s + L) % m}
    for i in range(m):
        assert rs.i(lab, G.alpha(i)) == (value if i in ends else 0), (lab, i)


def test_intervals():
    assert G.interval(3, 1, 2) == [1, 2]
    assert G.interval(3, 6, 3) == [6, 7, 0]
    assert G.complement_interval(3, 1, 2) == (4, 4)


@pytest.mark.parametrize("g,counts", [
    (2, {"alpha": 6, "sep": 3, "bp": 0, "tb": 0}),
    (3, {"alpha": 8, "sep": 8, "bp": 8, "tb": 16}),
])
def test_closed_family_sizes(g, counts):
    rs = G.build_rigid_set_closed(g)
    assert {f: len(rs.family(f)) for f in counts} == counts
    assert G.build_rigid_set_closed(4).surface.complexity() == 9


@pytest.mark.parametrize("g", [2, 3])
def test_closed_chain_pattern(g):
    rs = G.build_rigid_set_closed(g)
    m = 2 * g + 2
    for i in range(m):
        for j in range(m):
            if i != j:
                assert rs.i(G.alpha(i), G.alpha(j)) == (1 if (i - j) % m in (1, m - 1) else 0)


def test_closed_outer_curves_meet_only_the_ends():
    g = 3
    rs = G.build_rigid_set_closed(g)
    for lab in rs.family("sep"):
        neighbours_only(rs, g, lab, *lab.index, 2)
    for lab in rs.family("bp"):
        neighbours_only(rs, g, lab, *lab.index[:2], 1)
        s, L, sign = lab.index
        assert rs.i(lab, G.bp(s, L, G._flip(sign))) == 0


def test_closed_homology_types():
    model = G.closed_model(3)
    grp = model.surface.group
    for lab in (G.sep(0, 2), G.sep(1, 4)):
        assert grp.is_separating(curve_word(model.surface, model.curves[lab]))
    for lab in (G.bp(0, 3, "+"), G.alpha(7)):
        assert not grp.is_separating(curve_word(model.surface, model.curves[lab]))


def test_aliases_point_to_canonical_labels():
    rs = G.build_rigid_set_closed(3)
    assert rs.resolve(G.sep(1, 4)) == G.sep(6, 2)        # same curve, shorter interval
    for a, c in rs.aliases.items():
        assert c in rs.labels and a not in rs.labels


def test_stabilizer():
    rep = G.stabilizer_check_closed(3)
    assert rep["passed"] and rep["order"] == 4 and rep["commute"]
    with pytest.raises(ValueError):
        G.stabilizer_check_closed(2)


def test_partition_sizes():
    parts = G.partition_bounding_pairs(G.build_rigid_set_closed(3))
    assert sorted(parts) == ["e+", "e-", "o+", "o-"]
    assert sum(map(len, parts.values())) == 8


@pytest.mark.parametrize("g", [2, 3])
def test_closed_pants_and_detect(g):
    rs = G.build_rigid_set_closed(g)
    xi = rs.surface.complexity()
    for i in range(2 * g + 2):
        assert len(G.proof_pants_closed(rs, i)) == xi - 1
    rep = G.detect_report_genus(rs)
    assert rep["passed"] and not rep["failed"]


def test_punctured_counts_frozen():
    rs = G.build_rigid_set_punctured(2, 1)
    assert len(rs.labels) == 17 and len(rs.aliases) == 12
    rs = G.build_rigid_set_punctured(2, 2)
    assert len(rs.labels) == 31 and len(rs.family("outer")) == 1


def test_punctured_overlaps():
    rs = G.build_rigid_set_punctured(2, 2)
    assert rs.resolve(G.sep(0, 2)) == rs.resolve(G.sep_t(1, 1, 1))
    assert rs.resolve(G.bp(0, 3, "+")) == rs.resolve(G.bp_t(1, 1, "+"))
    # coincidences forced in genus two
    assert rs.resolve(G.bp_t(1, 2, "-")) == G.alpha(4)
    assert rs.resolve(G.bp(2, 3, "+")) == G.alpha0(0)
    assert rs.resolve(G.bp(2, 3, "-")) == G.alpha0(2)


@pytest.mark.parametrize("l", [1, 5])
def test_left_piece_is_torus_rigid_set(l):
    rep = G.s_left_check(2, 2, l)
    assert rep["passed"] and rep["mismatches"] == 0


def test_punctured_pants_have_size_xi():
    rs = G.build_rigid_set_punctured(2, 2)
    xi = rs.surface.complexity()
    for a, b in [(G.alpha(1), G.alpha(2)), (G.alpha0(0), G.alpha(1)), (G.alpha0(2), G.alpha(5))]:
        P = G.proof_pants(rs, a, b)
        assert len(P) + 1 == xi
        assert all(rs.i(x, y) == 0 for x in P for y in P + [a, b] if x != y)


def test_punctured_detect():
    rep = G.detect_report_genus(G.build_rigid_set_punctured(2, 2))
    assert rep["passed"] and rep["pairs"]["bridge"] == 6


def test_redraw_closed():
    rs = G.build_rigid_set_closed(2)
    assert G.redraw_matrix(G.closed_model(2), F(1, 997), F(-1, 1013)) == [list(r) for r in rs.matrix]


def test_rejects_small_genus():
    with pytest.raises(ValueError):
        G.build_rigid_set_genus(1, 0)
