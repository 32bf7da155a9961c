from fractions import Fraction as F

import pytest

from rigidset.flat import (Curve, DegenerateDrawing, Origami, Point, crossings, curve_word, cyclic_reduce,
                           free_reduce, intersection_number, is_rotation, neighborhood_boundary, same_side,
                           translate_all)
from rigidset.genus import staircase

THIRD = F(1, 3)


def hline(y, x0=F(1, 11)):
    return Curve(Point(0, x0, y), ((1, 0),))


def vline(x, y0=F(1, 13)):
    return Curve(Point(0, x, y0), ((0, 1),))


def slope_one_two(x0=F(1, 17), y0=F(1, 19)):
    return Curve(Point(0, x0, y0), ((THIRD, 0), (0, 2 * THIRD)) * 3)


def test_word_helpers():
    assert free_reduce([1, 2, -2, -1, 3]) == [3]
    assert cyclic_reduce([-1, 2, 3, 1]) == [2, 3]
    assert is_rotation([1, 2, 3], [3, 1, 2]) and not is_rotation([1, 2, 3], [1, 3, 2])


def test_torus_topology():
    t = Origami.torus()
    assert t.genus == 1 and t.euler_characteristic == 0
    s = staircase(3)
    assert s.squares == 6 and s.genus == 3


def test_rejects_bad_gluings():
    with pytest.raises(ValueError):
        Origami((0, 0), (0, 1))
    with pytest.raises(ValueError):
        Origami.torus([Point(0, 0, F(1, 2))])
    with pytest.raises(ValueError):
        Curve(Point(0, F(1, 2), F(1, 2)), ((1, 1),))


def test_torus_intersections_are_determinants():
    t = Origami.torus()
    a, b, c = hline(F(2, 5)), vline(F(3, 7)), slope_one_two()
    assert intersection_number(t, a, b) == 1
    assert intersection_number(t, c, a) == 2       # |det((1, 2), (1, 0))|
    assert intersection_number(t, c, b) == 1
    assert intersection_number(t, a, hline(F(3, 5))) == 0


def test_bigons_are_removed():
    # a vertical line wiggling across a horizontal one, it can be pulled off
    t = Origami.torus([Point(0, F(1, 2), F(1, 2))])
    wig = Curve(Point(0, F(1, 5), F(1, 7)),
                ((0, F(1, 2)), (F(1, 10), 0), (0, F(-1, 5)), (F(1, 10), 0), (0, F(7, 10)), (F(-1, 5), 0)))
    h = hline(F(1, 2) - F(1, 20))
    assert len(crossings(t, wig, h)) == 3
    assert intersection_number(t, wig, h) == 1
    assert intersection_number(t, wig, h, reverse=True) == 1


def test_puncture_blocks_bigon():
    # a wider wiggle with a puncture in each bigon: nothing can be removed
    t = Origami.torus([Point(0, F(3, 10), F(19, 40)), Point(0, F(1, 2), F(447, 1000))])
    wig = Curve(Point(0, F(1, 5), F(1, 7)),
                ((0, F(1, 2)), (F(1, 5), 0), (0, F(-1, 5)), (F(1, 5), 0), (0, F(7, 10)), (F(-2, 5), 0)))
    h = hline(F(1, 2) - F(1, 20))
    assert len(crossings(t, wig, h)) == 3
    assert intersection_number(t, wig, h) == 3
    one = Origami.torus([Point(0, F(3, 10), F(19, 40))])
    assert intersection_number(one, wig, h) == 1


def test_neighbourhood_of_chain_pair():
    pts = [Point(0, F(1, 4), F(1, 2)), Point(0, F(3, 4), F(1, 2))]
    t = Origami.torus(pts)
    a, b = vline(F(1, 8)), hline(F(1, 3), F(1, 16))
    out = neighborhood_boundary(t, [a, b], F(1, 1 << 10))
    assert len(out) == 1 and out[0].separating
    d = out[0].curve
    assert intersection_number(t, d, a) == 0 and intersection_number(t, d, b) == 0
    assert same_side(t, d, pts[0], pts[1])
    assert not same_side(t, d, pts[0], b.start)


def test_one_puncture_boundary_is_peripheral():
    t = Origami.torus([Point(0, F(1, 2), F(1, 2))])
    assert neighborhood_boundary(t, [vline(F(1, 8)), hline(F(1, 3))], F(1, 1 << 10)) == []


def test_group_words():
    t = Origami.torus([Point(0, F(1, 2), F(1, 2))])
    g = t.group
    a, b = hline(F(1, 3)), hline(F(2, 3))
    # one puncture leaves an empty annulus between parallel lines
    assert g.conjugate(curve_word(t, a), curve_word(t, b))
    t2 = Origami.torus([Point(0, F(1, 2), F(1, 2)), Point(0, F(1, 2), F(9, 10))])
    assert not t2.group.conjugate(curve_word(t2, a), curve_word(t2, b))
    assert t2.group.conjugate(curve_word(t2, a), curve_word(t2, hline(F(1, 4))))
    assert not g.is_separating(curve_word(t, a))


def test_translation_keeps_numbers():
    t = Origami.torus([Point(0, F(1, 2), F(1, 2))])
    cs = [hline(F(1, 3)), vline(F(1, 8)), slope_one_two()]
    moved = translate_all(t, cs, F(1, 97), F(-1, 89))
    for i in range(3):
        for j in range(i + 1, 3):
            assert intersection_number(t, cs[i], cs[j]) == intersection_number(t, moved[i], moved[j])


def test_degenerate_drawings_rejected():
    t = Origami.torus()
    with pytest.raises(DegenerateDrawing):
        crossings(t, hline(F(1, 3)), Curve(Point(0, F(1, 2), F(1, 3)), ((1, 0),)))
