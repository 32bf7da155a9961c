import pytest

from rigidset.simplicial import (SimplicialComplex, SurfaceSig, VertexMap, flag_complex, homology,
                                 is_locally_injective, simplex_boundary_complex, smith_invariants)


def cycle(n):
    return SimplicialComplex(tuple(range(n)), tuple((i, (i + 1) % n) for i in range(n)))


def test_surface_complexity():
    assert SurfaceSig(0, 5).complexity() == 2
    assert SurfaceSig(2, 0).complexity() == 3
    assert SurfaceSig(3, 2).complexity() == 8
    assert SurfaceSig(1, 1).farey_case() and not SurfaceSig(1, 2).farey_case()
    with pytest.raises(ValueError):
        SurfaceSig(-1, 0)


def test_facets_are_normalised():
    cx = SimplicialComplex(("a", "b", "c"), ((1, 0), (2, 1), (0, 1)))
    assert cx.facets == ((0, 1), (1, 2))
    assert cx.face_counts() == [3, 2]
    assert cx.is_pure() and cx.dimension() == 1


def test_rejects_nested_facets_and_stray_vertices():
    with pytest.raises(ValueError):
        SimplicialComplex((0, 1, 2), ((0, 1, 2), (0, 1)))
    with pytest.raises(ValueError):
        SimplicialComplex((0, 1, 2), ((0, 1),))


@pytest.mark.parametrize("dim", range(1, 6))
def test_boundary_of_simplex_is_sphere(dim):
    h = homology(simplex_boundary_complex(dim))
    assert h.is_sphere(dim - 1)


def test_circle_and_disk():
    assert homology(cycle(5)).is_sphere(1)
    assert homology(cycle(5).cone()).is_acyclic()
    assert cycle(5).euler_characteristic() == 0


def test_projective_plane_has_torsion():
    # six vertex triangulation of RP^2
    faces = [(0, 1, 2), (0, 2, 3), (0, 3, 4), (0, 4, 5), (0, 5, 1),
             (1, 2, 4), (2, 3, 5), (3, 4, 1), (4, 5, 2), (5, 1, 3)]
    h = homology(SimplicialComplex(tuple(range(6)), tuple(faces)))
    assert h.betti(1) == 0 and h.torsion(1) == (2,)
    assert h.betti(2) == 0


def test_smith_invariants_frozen():
    assert smith_invariants([[2, 4, 4], [-6, 6, 12], [10, -4, -16]]) == [2, 6, 12]
    assert smith_invariants([[0, 0], [0, 0]]) == []


def test_flag_complex_of_square_is_circle():
    adj = {(0, 1), (1, 2), (2, 3), (0, 3)}
    cx = flag_complex(range(4), lambda x, y: (min(x, y), max(x, y)) in adj)
    assert cx.facets == ((0, 1), (0, 3), (1, 2), (2, 3))
    assert homology(cx).is_sphere(1)


def test_link_and_star():
    cx = simplex_boundary_complex(3)
    assert cx.link(0).labels == (1, 2, 3)
    assert homology(cx.link(0)).is_sphere(1)
    assert cx.star(0) == {0, 1, 2, 3}
    assert cycle(5).star(0) == {4, 0, 1}


def test_json_round_trip():
    cx = cycle(4)
    assert SimplicialComplex.from_json(cx.to_json()) == cx


def test_local_injectivity():
    c6, c3 = cycle(6), cycle(3)
    wrap = VertexMap(c6, c3, {i: i % 3 for i in range(6)})
    assert wrap.is_simplicial() and is_locally_injective(wrap)
    fold = VertexMap(c6, c6, {0: 0, 1: 1, 2: 0, 3: 1, 4: 0, 5: 1})
    assert fold.is_simplicial() and not is_locally_injective(fold)
