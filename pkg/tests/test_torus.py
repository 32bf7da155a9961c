from fractions import Fraction as F

import pytest

from rigidset import torus as T


@pytest.mark.parametrize("n", [3, 4, 5])
def test_chain_and_outer_pattern(n):
    rs = T.build_rigid_set_torus(n)
    assert len(rs.labels) == n + 1 + n * (n - 1)
    for j in range(1, n + 1):
        assert rs.i(T.alpha(j), T.beta()) == 1
        for k in range(1, n + 1):
            assert rs.i(T.alpha(j), T.alpha(k)) == 0
    for s in range(1, n + 1):
        for L in range(2, n + 1):
            o = T.outer(s, L)
            assert rs.i(o, T.beta()) == 0
            inner = {(s + t - 1) % n + 1 for t in range(1, L)}
            for j in range(1, n + 1):
                assert rs.i(o, T.alpha(j)) == (2 if j in inner else 0), (o, j)


def test_outer_levels():
    rs = T.build_rigid_set_torus(4)
    parts = T.outer_partition(rs)
    assert sorted(parts) == [2, 3, 4]
    assert all(len(v) == 4 for v in parts.values())


def test_outer_outer_frozen():
    rs = T.build_rigid_set_torus(4)
    assert rs.i(T.outer(1, 2), T.outer(2, 2)) == 2      # overlapping runs
    assert rs.i(T.outer(1, 2), T.outer(3, 2)) == 0      # disjoint runs
    assert rs.i(T.outer(1, 2), T.outer(1, 3)) == 0      # nested runs
    assert rs.i(T.outer(1, 3), T.outer(2, 3)) == 2
    assert rs.i(T.outer(1, 3), T.outer(3, 3)) == 4      # runs overlap at both ends


def test_small_n_rejected():
    with pytest.raises(ValueError):
        T.torus_model(2)
    assert len(T.drawn_torus(2).curves) == 1 + 2 + 2


@pytest.mark.parametrize("n", [3, 4])
def test_detectability(n):
    rep = T.detect_report(T.build_rigid_set_torus(n))
    assert rep["passed"] and rep["pairs"] == rep["recipe"] + rep["fallback"]


def test_certificate_rejects_far_pairs():
    rs = T.build_rigid_set_torus(3)
    with pytest.raises(ValueError):
        T.find_detect_cert_torus(rs, T.alpha(1), T.alpha(2))


def test_determination():
    rs = T.build_rigid_set_torus(4)
    rep = T.verify_determination_chain(rs, 12)
    assert rep["passed"], rep["problems"]
    assert T.determining_set(rs, T.outer(1, 2)) == [T.alpha(1), T.alpha(3), T.alpha(4), T.beta()]
    with pytest.raises(ValueError):
        T.verify_determination_chain(rs, 0)


def test_redraw():
    rs = T.build_rigid_set_torus(3)
    assert T.redraw_matrix(3, F(1, 997), F(-1, 1013)) == [list(r) for r in rs.matrix]
