"""Curve complexes of complexity one: the Farey complex.

For ``S_{1,1}`` and ``S_{1,0}`` a curve is a reduced slope ``p/q``; two curves
meet ``|p q' - p' q|`` times.  For ``S_{0,4}`` we use the standard dictionary in
which the slope ``p/q`` is the image of the line of that slope under the
pillowcase quotient of the torus; intersection numbers double.  The
automorphism group of the Farey complex is PGL(2, Z) in both cases.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from itertools import permutations, product
from math import gcd

from .simplicial import SimplicialComplex, flag_complex


class FareyTag(enum.Enum):
    TORUS = "torus"       # S_{1,1} and S_{1,0}
    SPHERE = "sphere4"    # S_{0,4}

    @property
    def scale(self) -> int:
        return 1 if self is FareyTag.TORUS else 2


@dataclass(frozen=True, order=True)
class Slope:
    """A reduced extended rational ``p/q`` with ``q >= 0`` (``1/0`` for infinity)."""

    p: int
    q: int

    def __post_init__(self) -> None:
        p, q = self.p, self.q
        if (p, q) == (0, 0):
            raise ValueError("0/0 is not a slope")
        if q < 0 or (q == 0 and p < 0):
            p, q = -p, -q
        g = gcd(p, q)
        object.__setattr__(self, "p", p // g)
        object.__setattr__(self, "q", q // g)

    @classmethod
    def parse(cls, text: str) -> "Slope":
        p, _, q = text.partition("/")
        return cls(int(p), int(q or 1))

    def __str__(self) -> str:
        return f"{self.p}/{self.q}"

    def to_json(self) -> str:
        return str(self)

    @property
    def vector(self) -> tuple[int, int]:
        return self.p, self.q


def det(a: Slope, b: Slope) -> int:
    return a.p * b.q - a.q * b.p


def slope_intersection(a: Slope, b: Slope, tag: FareyTag) -> int:
    return tag.scale * abs(det(a, b))


def are_farey_neighbors(a: Slope, b: Slope, tag: FareyTag) -> bool:
    return slope_intersection(a, b, tag) == tag.scale


def twist(gamma: Slope, v: Slope, tag: FareyTag, power: int = 1) -> Slope:
    """Image of ``v`` under the ``power``-th Dehn twist along ``gamma``."""
    d = gamma.p * v.q - gamma.q * v.p
    k = tag.scale * d * power
    return Slope(v.p - k * gamma.p, v.q - k * gamma.q)


def are_nearly_farey_neighbors(a: Slope, b: Slope, tag: FareyTag) -> bool:
    """Not neighbours, but ``a = T_gamma^{+-1}(b)`` for a common neighbour ``gamma``."""
    if a == b or are_farey_neighbors(a, b, tag):
        return False
    s = tag.scale
    for sa, m in product((1, -1), (s, -s)):
        x, y = sa * a.p - b.p, sa * a.q - b.q
        if x % m or y % m:
            continue
        x, y = x // m, y // m
        if (x, y) == (0, 0) or gcd(x, y) != 1:
            continue
        gamma = Slope(x, y)
        if not (are_farey_neighbors(gamma, a, tag) and are_farey_neighbors(gamma, b, tag)):
            continue
        if a in (twist(gamma, b, tag, 1), twist(gamma, b, tag, -1)):
            return True
    return False


@dataclass(frozen=True)
class MoebiusClass:
    """An element of PGL(2, Z): ``[[a, b], [c, d]]`` up to sign."""

    a: int
    b: int
    c: int
    d: int

    def __post_init__(self) -> None:
        if abs(self.a * self.d - self.b * self.c) != 1:
            raise ValueError("determinant must be +-1")
        entries = (self.a, self.b, self.c, self.d)
        first = next(x for x in entries if x)
        if first < 0:
            for name, x in zip("abcd", entries):
                object.__setattr__(self, name, -x)

    @classmethod
    def identity(cls) -> "MoebiusClass":
        return cls(1, 0, 0, 1)

    @property
    def determinant(self) -> int:
        return self.a * self.d - self.b * self.c

    def apply(self, s: Slope) -> Slope:
        return Slope(self.a * s.p + self.b * s.q, self.c * s.p + self.d * s.q)

    def __matmul__(self, other: "MoebiusClass") -> "MoebiusClass":
        return MoebiusClass(self.a * other.a + self.b * other.c, self.a * other.b + self.b * other.d,
                            self.c * other.a + self.d * other.c, self.c * other.b + self.d * other.d)

    def inverse(self) -> "MoebiusClass":
        e = self.determinant
        return MoebiusClass(e * self.d, -e * self.b, -e * self.c, e * self.a)


def apply(m: MoebiusClass, s: Slope) -> Slope:
    return m.apply(s)


BASE_TRIANGLE = (Slope(0, 1), Slope(1, 1), Slope(1, 0))


def is_triangle(tri, tag: FareyTag = FareyTag.TORUS) -> bool:
    return len(set(tri)) == 3 and all(
        are_farey_neighbors(x, y, tag) for x, y in ((tri[0], tri[1]), (tri[1], tri[2]), (tri[0], tri[2])))


def extend_triangle(image, base=BASE_TRIANGLE) -> list[MoebiusClass]:
    """All classes carrying ``base`` to ``image`` vertex by vertex."""
    if not is_triangle(image) or not is_triangle(base):
        raise ValueError(f"{[str(x) for x in image]} is not a Farey triangle")
    # solve M u_i = +-v_i for the first two base vectors, then test the third
    (u0, v0), (u1, v1), (u2, v2) = ((b.vector, i.vector) for b, i in zip(base, image))
    du = u0[0] * u1[1] - u0[1] * u1[0]
    found = set()
    for s0, s1 in product((1, -1), repeat=2):
        w0 = (s0 * v0[0], s0 * v0[1])
        w1 = (s1 * v1[0], s1 * v1[1])
        # M [u0 u1] = [w0 w1]  =>  M = [w0 w1] [u0 u1]^{-1}
        inv = ((u1[1] * du, -u1[0] * du), (-u0[1] * du, u0[0] * du))
        a = w0[0] * inv[0][0] + w1[0] * inv[1][0]
        b = w0[0] * inv[0][1] + w1[0] * inv[1][1]
        c = w0[1] * inv[0][0] + w1[1] * inv[1][0]
        d = w0[1] * inv[0][1] + w1[1] * inv[1][1]
        if abs(a * d - b * c) != 1:
            continue
        m = MoebiusClass(a, b, c, d)
        if all(m.apply(x) == y for x, y in zip(base, image)):
            found.add(m)
    return sorted(found, key=lambda m: (m.a, m.b, m.c, m.d))


def triangle_stabilizer(base=BASE_TRIANGLE) -> list[MoebiusClass]:
    """Point-wise stabiliser of an ordered Farey triangle."""
    return extend_triangle(base, base)


def _third_vertices(x: Slope, y: Slope) -> tuple[Slope, Slope]:
    """The two Farey triangles on the edge ``xy`` have these apexes."""
    return Slope(x.p + y.p, x.q + y.q), Slope(x.p - y.p, x.q - y.q)


def farey_triangles(radius: int, base=BASE_TRIANGLE) -> list[tuple[Slope, Slope, Slope]]:
    """Triangles at dual-tree distance ``<= radius`` from ``base``, in BFS order."""
    if radius < 0:
        raise ValueError("radius must be non-negative")
    if not is_triangle(base):
        raise ValueError("base is not a Farey triangle")
    start = tuple(sorted(base))
    seen = {start}
    order = [start]
    frontier = [start]
    for _ in range(radius):
        nxt = []
        for tri in frontier:
            for x, y in ((tri[0], tri[1]), (tri[0], tri[2]), (tri[1], tri[2])):
                for z in _third_vertices(x, y):
                    t = tuple(sorted((x, y, z)))
                    if t not in seen:
                        seen.add(t)
                        order.append(t)
                        nxt.append(t)
        frontier = nxt
    return order


def farey_ball(base=BASE_TRIANGLE, radius: int = 1, tag: FareyTag = FareyTag.TORUS) -> SimplicialComplex:
    """Finite window on the Farey complex around a base triangle.

    The window is the union of triangles within dual-tree distance ``radius``.
    Its vertices are in convex position, so the union is the full subcomplex
    on them and the flag closure reproduces it.
    """
    verts: list[Slope] = []
    for tri in farey_triangles(radius, base):
        for v in tri:
            if v not in verts:
                verts.append(v)
    return flag_complex(verts, lambda x, y: x != y and are_farey_neighbors(x, y, tag))


def brute_force_rigidity(radius: int, tag: FareyTag = FareyTag.TORUS) -> dict:
    """Extend every locally injective map of the base triangle into the ball."""
    if radius < 1:
        raise ValueError("radius must be at least 1")
    ball = farey_ball(BASE_TRIANGLE, radius, tag)
    stabilizer = set(triangle_stabilizer())
    triangles = [f for f in ball.faces(2)]
    dets = [[abs(det(x, y)) for y in ball.labels] for x in ball.labels]
    checked = 0
    extended = 0
    for f in triangles:
        for order in permutations(f):
            image = tuple(ball.labels[i] for i in order)
            checked += 1
            classes = extend_triangle(image)
            # uniqueness modulo the point-wise stabiliser
            orbits = {frozenset(m @ s for s in stabilizer) for m in classes}
            if len(orbits) != 1:
                continue
            moved = [classes[0].apply(x) for x in ball.labels]
            extended += all(
                abs(det(moved[i], moved[j])) == dets[i][j]
                for i in range(len(moved)) for j in range(i + 1, len(moved)))
    return {
        "case": tag.value,
        "radius": radius,
        "vertices": ball.vertex_count,
        "triangles": len(triangles),
        "maps_checked": checked,
        "stabilizer_order": len(stabilizer),
        "all_extended": extended == checked,
    }
