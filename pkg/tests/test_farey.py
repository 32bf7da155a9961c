import math
import random

import pytest

from rigidset.farey import (BASE_TRIANGLE, FareyTag, MoebiusClass, Slope, are_farey_neighbors,
                            are_nearly_farey_neighbors, brute_force_rigidity, extend_triangle,
                            farey_ball, farey_triangles, slope_intersection, triangle_stabilizer, twist)
from rigidset.harness import bfs_triangle_count

T, S = FareyTag.TORUS, FareyTag.SPHERE


def test_slope_normalisation():
    assert Slope(-2, -4) == Slope(1, 2)
    assert Slope(-1, 0) == Slope(1, 0)
    assert str(Slope.parse("3/-6")) == "-1/2"
    with pytest.raises(ValueError):
        Slope(0, 0)


def test_intersection_scales():
    a, b = Slope(1, 2), Slope(2, 3)
    assert slope_intersection(a, b, T) == 1
    assert slope_intersection(a, b, S) == 2
    assert slope_intersection(Slope(0, 1), Slope(1, 0), S) == 2
    assert slope_intersection(Slope(1, 3), Slope(1, 0), T) == 3


def test_twists():
    # T_{1/0} shifts p/q by the scale
    assert twist(Slope(1, 0), Slope(0, 1), T) == Slope(-1, 1)
    assert twist(Slope(1, 0), Slope(0, 1), S) == Slope(-2, 1)
    v = Slope(3, 5)
    assert twist(Slope(1, 1), twist(Slope(1, 1), v, T, 1), T, -1) == v


def test_nearly_neighbours():
    assert are_farey_neighbors(Slope(0, 1), Slope(1, 1), T)
    assert not are_nearly_farey_neighbors(Slope(0, 1), Slope(1, 0), T)
    # 1/2 is T_{0/1}^2(1/0) on the torus, two twists too many
    assert not are_nearly_farey_neighbors(Slope(1, 0), Slope(1, 2), T)
    # on the four-punctured sphere one half twist suffices
    assert twist(Slope(0, 1), Slope(1, 0), S) == Slope(1, 2)
    assert are_nearly_farey_neighbors(Slope(1, 0), Slope(1, 2), S)
    assert not are_nearly_farey_neighbors(Slope(1, 0), Slope(1, 3), S)


def test_nearly_neighbours_symmetric():
    rng = random.Random(7)
    pool = [Slope(p, q) for p in range(-6, 7) for q in range(0, 7) if (p, q) != (0, 0)
            and math.gcd(p, q) == 1 and (q or p > 0)]
    hits = 0
    for _ in range(1000):
        a, b = rng.choice(pool), rng.choice(pool)
        tag = rng.choice(list(FareyTag))
        x = are_nearly_farey_neighbors(a, b, tag)
        assert x == are_nearly_farey_neighbors(b, a, tag)
        hits += x
    assert hits


def test_stabiliser_is_trivial():
    assert triangle_stabilizer() == [MoebiusClass.identity()]


def test_extension_is_unique():
    tri = (Slope(1, 2), Slope(2, 3), Slope(1, 1))
    ms = extend_triangle(tri)
    assert len(ms) == 1
    assert tuple(ms[0].apply(x) for x in BASE_TRIANGLE) == tri
    with pytest.raises(ValueError):
        extend_triangle((Slope(0, 1), Slope(1, 2), Slope(1, 0)))


@pytest.mark.parametrize("radius,count", [(0, 1), (1, 4), (2, 10), (3, 22), (4, 46)])
def test_triangle_counts_frozen(radius, count):
    # the dual graph is the trivalent tree: 1 + 3 (2^r - 1)
    assert len(farey_triangles(radius)) == count
    assert bfs_triangle_count(radius) == count


def test_ball_is_a_disk():
    ball = farey_ball(radius=2)
    assert ball.vertex_count == 12
    assert len(ball.faces(2)) == 10
    assert ball.euler_characteristic() == 1


@pytest.mark.parametrize("tag", list(FareyTag))
def test_brute_force_small(tag):
    r = brute_force_rigidity(2, tag)
    assert r["all_extended"] and r["maps_checked"] == 60 and r["stabilizer_order"] == 1


def test_moebius_products():
    m = MoebiusClass(2, 1, 1, 1)
    assert m @ m.inverse() == MoebiusClass.identity()
    assert MoebiusClass(-1, 0, 0, -1) == MoebiusClass.identity()
    with pytest.raises(ValueError):
        MoebiusClass(2, 0, 0, 1)
