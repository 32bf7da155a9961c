"""Square-tiled surfaces carrying rectilinear closed curves.

A surface is a finite set of unit squares glued by two permutations (the
right and upper neighbours), possibly with punctures in square interiors.
Curves are closed paths made of horizontal and vertical moves, with exact
rational coordinates.  Homotopy questions are answered in the fundamental
group presented by the dual of a cut system (square edges plus one slit from
each puncture to a corner); intersection numbers come from removing innermost
bigons until none is left.
"""

from __future__ import annotations

import bisect
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Sequence

F = Fraction
ZERO, ONE = F(0), F(1)


class DegenerateDrawing(ValueError):
    """Curves touch non-transversally, run along a cut, or hit a corner."""


@dataclass(frozen=True)
class Point:
    square: int
    x: Fraction
    y: Fraction

    def __post_init__(self) -> None:
        object.__setattr__(self, "x", F(self.x))
        object.__setattr__(self, "y", F(self.y))


@dataclass(frozen=True)
class Curve:
    """Closed rectilinear path: a start point and horizontal/vertical moves."""

    start: Point
    moves: tuple[tuple[Fraction, Fraction], ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "moves", tuple((F(dx), F(dy)) for dx, dy in self.moves))
        for dx, dy in self.moves:
            if (dx == 0) == (dy == 0):
                raise ValueError(f"move ({dx}, {dy}) is not axis-aligned")

    def reversed(self) -> "Curve":
        return Curve(self.start, tuple((-dx, -dy) for dx, dy in reversed(self.moves)))


def _unit(m) -> tuple[int, int]:
    dx, dy = m
    return ((dx > 0) - (dx < 0), (dy > 0) - (dy < 0))


def _length(m) -> Fraction:
    return abs(m[0]) + abs(m[1])


def merge_moves(moves: Sequence, cyclic: bool = True) -> list[tuple[Fraction, Fraction]]:
    """Join consecutive moves in the same direction."""
    out: list[list[Fraction]] = []
    for m in moves:
        if out and _unit(out[-1]) == _unit(m):
            out[-1] = [out[-1][0] + m[0], out[-1][1] + m[1]]
        elif out and _unit(out[-1]) == tuple(-c for c in _unit(m)):
            raise DegenerateDrawing("path doubles back on itself")
        else:
            out.append([F(m[0]), F(m[1])])
    while cyclic and len(out) > 1 and _unit(out[0]) == _unit(out[-1]):
        last = out.pop()
        out[0] = [out[0][0] + last[0], out[0][1] + last[1]]
    return [tuple(m) for m in out]


@dataclass
class Piece:
    square: int
    x0: Fraction
    y0: Fraction
    x1: Fraction
    y1: Fraction
    s0: Fraction          # arc length at the start of the piece

    @property
    def horizontal(self) -> bool:
        return self.y0 == self.y1


@dataclass
class Developed:
    pieces: list[Piece]
    events: list[tuple[Fraction, int]]   # (arc length, signed generator) for cut crossings
    length: Fraction


class Origami:
    """Unit squares glued by ``right`` and ``up`` permutations."""

    def __init__(self, right: Sequence[int], up: Sequence[int],
                 punctures: Iterable[Point] = ()) -> None:
        self.right = tuple(right)
        self.up = tuple(up)
        n = len(self.right)
        if sorted(self.right) != list(range(n)) or sorted(self.up) != list(range(n)):
            raise ValueError("gluings must be permutations of the squares")
        self.left = tuple(sorted(range(n), key=lambda s: self.right[s]))
        self.down = tuple(sorted(range(n), key=lambda s: self.up[s]))
        self.punctures = tuple(punctures)
        for p in self.punctures:
            if not (0 < p.x < 1 and 0 < p.y < 1):
                raise ValueError(f"puncture {p} must lie inside its square")
        slopes = [(p.square, F(p.y) / F(p.x)) for p in self.punctures]
        if len(set(slopes)) != len(slopes):
            raise ValueError("two slits of one square would overlap")
        self._check_connected()
        self._dev_cache: dict[Curve, Developed] = {}

    @classmethod
    def torus(cls, punctures: Iterable[Point] = ()) -> "Origami":
        return cls((0,), (0,), punctures)

    @property
    def squares(self) -> int:
        return len(self.right)

    def _check_connected(self) -> None:
        seen, todo = {0}, [0]
        while todo:
            s = todo.pop()
            for t in (self.right[s], self.up[s], self.left[s], self.down[s]):
                if t not in seen:
                    seen.add(t)
                    todo.append(t)
        if len(seen) != self.squares:
            raise ValueError("squares do not form a connected surface")

    @cached_property
    def vertex_of(self) -> tuple[int, ...]:
        """Vertex id of the upper-right corner of each square."""
        ids = [-1] * self.squares
        k = 0
        for s in range(self.squares):
            if ids[s] >= 0:
                continue
            t = s
            while ids[t] < 0:
                ids[t] = k
                t = self._turn(t)
            k += 1
        return tuple(ids)

    def _turn(self, s: int) -> int:
        return self.down[self.left[self.up[self.right[s]]]]

    @property
    def vertex_count(self) -> int:
        return max(self.vertex_of) + 1

    @property
    def euler_characteristic(self) -> int:
        """Of the closed surface obtained by filling in the punctures."""
        return self.vertex_count - self.squares

    @property
    def genus(self) -> int:
        chi = self.euler_characteristic
        if chi % 2:
            raise ValueError("odd Euler characteristic")
        return (2 - chi) // 2

    # generators of the dual presentation
    def gen_right(self, s: int) -> int:
        return 2 * s

    def gen_up(self, s: int) -> int:
        return 2 * s + 1

    def gen_slit(self, k: int) -> int:
        return 2 * self.squares + k

    @property
    def generator_count(self) -> int:
        return 2 * self.squares + len(self.punctures)

    @cached_property
    def group(self) -> "Presentation":
        return Presentation(self)

    def slits_in(self, s: int) -> list[int]:
        return [k for k, p in enumerate(self.punctures) if p.square == s]

    # development of curves

    def develop(self, c: Curve) -> Developed:
        hit = self._dev_cache.get(c)
        if hit is None:
            hit = self._dev_cache[c] = self._develop(c.start, c.moves, closed=True)[0]
        return hit

    def _develop(self, start: Point, moves, closed: bool) -> tuple[Developed, Point]:
        s, x, y = start.square, F(start.x), F(start.y)
        if not (0 < x < 1 and 0 < y < 1):
            raise DegenerateDrawing(f"start point {start} is on a square edge")
        pieces: list[Piece] = []
        events: list[tuple[Fraction, int]] = []
        arc = ZERO
        for dx, dy in moves:
            horizontal = dx != 0
            rem = abs(dx) if horizontal else abs(dy)
            sign = 1 if (dx > 0 or dy > 0) else -1
            if horizontal and not 0 < y < 1 or not horizontal and not 0 < x < 1:
                raise DegenerateDrawing("curve runs along a square edge")
            while rem > 0:
                cur = x if horizontal else y
                to_edge = (1 - cur) if sign > 0 else cur
                step = min(rem, to_edge)
                nx, ny = (x + sign * step, y) if horizontal else (x, y + sign * step)
                pieces.append(Piece(s, x, y, nx, ny, arc))
                arc += step
                rem -= step
                x, y = nx, ny
                if step == to_edge:
                    if rem == 0:
                        # a turn on an edge would make the drawing ambiguous
                        raise DegenerateDrawing("corner of a curve lies on a square edge")
                    if horizontal:
                        if sign > 0:
                            events.append((arc, self.gen_right(s) + 1))
                            s, x = self.right[s], ZERO
                        else:
                            s, x = self.left[s], ONE
                            events.append((arc, -(self.gen_right(s) + 1)))
                    else:
                        if sign > 0:
                            events.append((arc, self.gen_up(s) + 1))
                            s, y = self.up[s], ZERO
                        else:
                            s, y = self.down[s], ONE
                            events.append((arc, -(self.gen_up(s) + 1)))
        end = Point(s, x, y)
        if closed and (end.square, end.x, end.y) != (start.square, F(start.x), F(start.y)):
            raise ValueError(f"curve does not close up: ends at {end}")
        for p in pieces:
            for pos, letter in self._slit_hits(p):
                events.append((pos, letter))
        events.sort()
        for a, b in zip(events, events[1:]):
            if a[0] == b[0]:
                raise DegenerateDrawing("curve meets a slit at its corner")
        return Developed(pieces, events, arc), end

    def _slit_hits(self, p: Piece):
        """Crossings of a piece with the slits of its square (corner to puncture)."""
        for k in self.slits_in(p.square):
            q = self.punctures[k]
            if p.horizontal:
                c = p.y0
                if not 0 < c < q.y:
                    continue
                t = c / q.y
                xs = t * q.x
                lo, hi = sorted((p.x0, p.x1))
                if xs in (lo, hi):
                    raise DegenerateDrawing("curve corner on a slit")
                if lo < xs < hi:
                    sign = 1 if p.x1 < p.x0 else -1
                    yield p.s0 + abs(xs - p.x0), sign * (self.gen_slit(k) + 1)
            else:
                c = p.x0
                if not 0 < c < q.x:
                    continue
                t = c / q.x
                ys = t * q.y
                lo, hi = sorted((p.y0, p.y1))
                if ys in (lo, hi):
                    raise DegenerateDrawing("curve corner on a slit")
                if lo < ys < hi:
                    sign = 1 if p.y1 > p.y0 else -1
                    yield p.s0 + abs(ys - p.y0), sign * (self.gen_slit(k) + 1)

    def point_at(self, c: Curve, t: Fraction) -> Point:
        """Point of ``c`` at arc length ``t`` (not on a square edge)."""
        dev = self.develop(c)
        t = t % dev.length
        for p in dev.pieces:
            ln = abs(p.x1 - p.x0) + abs(p.y1 - p.y0)
            if p.s0 <= t < p.s0 + ln:
                u = t - p.s0
                if p.horizontal:
                    return Point(p.square, p.x0 + (u if p.x1 > p.x0 else -u), p.y0)
                return Point(p.square, p.x0, p.y0 + (u if p.y1 > p.y0 else -u))
        raise AssertionError("arc length outside the curve")

    def translate(self, c: Curve, dx: Fraction, dy: Fraction) -> Curve:
        """The same moves started from the start point pushed by ``(dx, dy)``."""
        return Curve(self.push(c.start, dx, dy), c.moves)

    def push(self, p: Point, dx: Fraction, dy: Fraction) -> Point:
        moves = [m for m in ((F(dx), ZERO), (ZERO, F(dy))) if m != (0, 0)]
        if not moves:
            return p
        return self._develop(p, moves, closed=False)[1]


# ---------------------------------------------------------------------------
# words in the fundamental group

Word = tuple[int, ...]


def free_reduce(word: Iterable[int]) -> list[int]:
    out: list[int] = []
    for x in word:
        if out and out[-1] == -x:
            out.pop()
        else:
            out.append(x)
    return out


def inverse(word: Sequence[int]) -> list[int]:
    return [-x for x in reversed(word)]


def cyclic_reduce(word: Sequence[int]) -> list[int]:
    w = free_reduce(word)
    i, j = 0, len(w)
    while j - i > 1 and w[i] == -w[j - 1]:
        i, j = i + 1, j - 1
    return w[i:j]


def is_rotation(u: Sequence[int], v: Sequence[int]) -> bool:
    if len(u) != len(v):
        return False
    if not u:
        return True
    doubled = list(u) + list(u)
    n = len(u)
    return any(doubled[i:i + n] == list(v) for i in range(n) if doubled[i] == v[0])


class Presentation:
    """Fundamental group of an origami, from the dual of its cut system.

    Generators are crossings of square edges and slits.  Edges of a spanning
    tree of the primal cut graph are solved for from their vertex relations,
    edges of a dual spanning tree are trivial.  With a puncture the result is
    free; without one a single relator of length ``4g`` survives and words
    are decided by Dehn's algorithm (pieces have length one because the
    reduced polygon has one vertex).
    """

    def __init__(self, surf: Origami) -> None:
        self.surf = surf
        N = surf.squares
        r, u, lf, dn = surf.right, surf.up, surf.left, surf.down
        vx = surf.vertex_of
        V = surf.vertex_count
        # relations around each vertex
        rel: list[list[int]] = [[] for _ in range(V)]
        done = [False] * N
        for s0 in range(N):
            if done[s0]:
                continue
            s = s0
            v = vx[s0]
            while not done[s]:
                done[s] = True
                t1 = u[r[s]]
                word = [surf.gen_right(s) + 1, surf.gen_up(r[s]) + 1]
                slits = sorted(surf.slits_in(t1),
                               key=lambda k: surf.punctures[k].y / surf.punctures[k].x)
                word += [surf.gen_slit(k) + 1 for k in slits]
                word += [-(surf.gen_right(lf[t1]) + 1), -(surf.gen_up(dn[lf[t1]]) + 1)]
                rel[v] += word
                s = surf._turn(s)
        # primal cut graph: edge -> endpoints
        ends: dict[int, tuple[int, int]] = {}
        for s in range(N):
            ends[surf.gen_right(s)] = (vx[s], vx[dn[s]])
            ends[surf.gen_up(s)] = (vx[s], vx[lf[s]])
        incident: list[list[tuple[int, int]]] = [[] for _ in range(V)]
        for g, (a, b) in sorted(ends.items()):
            if a != b:
                incident[a].append((g, b))
                incident[b].append((g, a))
        parent: dict[int, int] = {}
        if surf.punctures:
            q = surf.punctures[0].square
            root = vx[dn[lf[q]]]
            parent[root] = surf.gen_slit(0)
        else:
            root = 0
        order = [root]
        seen = {root}
        for v in order:
            for g, w in incident[v]:
                if w not in seen:
                    seen.add(w)
                    parent[w] = g
                    order.append(w)
        if len(seen) != V:
            raise AssertionError("cut graph is disconnected")
        tree = set(parent.values())
        # dual spanning tree on squares, avoiding primal tree edges
        cotree: set[int] = set()
        sq_seen = {0}
        todo = [0]
        while todo:
            s = todo.pop(0)
            for g, t in ((surf.gen_right(s), r[s]), (surf.gen_up(s), u[s]),
                         (surf.gen_right(lf[s]), lf[s]), (surf.gen_up(dn[s]), dn[s])):
                if g not in tree and t not in sq_seen:
                    sq_seen.add(t)
                    cotree.add(g)
                    todo.append(t)
        self.tree, self.cotree = tree, cotree
        self.expand: list[list[int] | None] = [None] * surf.generator_count
        for g in cotree:
            self.expand[g] = []
        for v in reversed(order):
            if v not in parent:
                continue
            e = parent[v]
            w = self._sub(rel[v])
            idx = [i for i, x in enumerate(w) if abs(x) == e + 1]
            if len(idx) != 1:
                raise AssertionError("tree edge must occur once in its relation")
            i = idx[0]
            eps = 1 if w[i] > 0 else -1
            rest = w[i + 1:] + w[:i]
            self.expand[e] = free_reduce(inverse(rest) if eps > 0 else rest)
        for g in range(surf.generator_count):
            if self.expand[g] is None:
                self.expand[g] = [g + 1]
        self.free = bool(surf.punctures)
        self.relator: list[int] = [] if self.free else cyclic_reduce(self.rewrite(rel[root]))
        kept = {abs(x) for g in range(surf.generator_count) for x in self.expand[g]}
        self.rank = len(kept)
        if not self.free:
            L = len(self.relator)
            if L != 2 * self.rank or any(self.relator.count(x) + self.relator.count(-x) != 2 for x in kept):
                raise AssertionError("relator is not a surface word")
            self._table = self._dehn_table()

    def _sub(self, word: Sequence[int]) -> list[int]:
        out: list[int] = []
        for x in word:
            g = abs(x) - 1
            ex = self.expand[g] if 0 <= g < len(self.expand) else None
            if ex is None:
                out.append(x)
            else:
                out += ex if x > 0 else inverse(ex)
        return free_reduce(out)

    def rewrite(self, word: Sequence[int]) -> list[int]:
        return self._sub(word)

    def _dehn_table(self) -> dict[tuple[int, ...], list[int]]:
        r = self.relator
        L = len(r)
        h = L // 2 + 1
        table: dict[tuple[int, ...], list[int]] = {}
        for base in (r, inverse(r)):
            for i in range(L):
                rho = base[i:] + base[:i]
                table[tuple(rho[:h])] = inverse(rho[h:])
        return table

    def _dehn(self, w: list[int]) -> list[int]:
        h = len(self.relator) // 2 + 1
        changed = True
        while changed:
            changed = False
            for i in range(len(w) - h + 1):
                rep = self._table.get(tuple(w[i:i + h]))
                if rep is not None:
                    w = free_reduce(w[:i] + rep + w[i + h:])
                    changed = True
                    break
        return w

    def is_trivial(self, word: Sequence[int]) -> bool:
        w = self.rewrite(word)
        if self.free or not w:
            return not w
        return not self._dehn(w)

    def _cyclic_normal(self, word: Sequence[int]) -> list[int]:
        w = cyclic_reduce(self.rewrite(word))
        if self.free:
            return w
        h = len(self.relator) // 2 + 1
        changed = True
        while changed and len(w) >= h:
            changed = False
            for i in range(len(w)):
                rot = w[i:] + w[:i]
                rep = self._table.get(tuple(rot[:h]))
                if rep is not None:
                    w = cyclic_reduce(rep + rot[h:])
                    changed = True
                    break
        return w

    def conjugate(self, u: Sequence[int], v: Sequence[int], allow_inverse: bool = True) -> bool:
        """Whether ``u`` is conjugate to ``v`` (or to its inverse).

        Exact for free groups.  For a closed surface a True answer is always
        right; cyclic words that differ by a half-relator swap are missed.
        """
        a, b = self._cyclic_normal(u), self._cyclic_normal(v)
        return is_rotation(a, b) or (allow_inverse and is_rotation(a, inverse(b)))

    def puncture_loop(self, k: int) -> list[int]:
        return [self.surf.gen_slit(k) + 1]

    def is_peripheral(self, word: Sequence[int]) -> bool:
        return any(self.conjugate(word, self.puncture_loop(k)) for k in range(len(self.surf.punctures)))

    @cached_property
    def _stars(self) -> list[int]:
        """Row-reduced mod-2 coboundaries of the vertices, as bit masks."""
        surf = self.surf
        vx = surf.vertex_of
        masks = [0] * surf.vertex_count
        for s in range(surf.squares):
            for g, (a, b) in ((surf.gen_right(s), (vx[s], vx[surf.down[s]])),
                              (surf.gen_up(s), (vx[s], vx[surf.left[s]]))):
                if a != b:
                    masks[a] ^= 1 << g
                    masks[b] ^= 1 << g
        basis: list[int] = []
        for m in masks:
            for b in basis:
                m = min(m, m ^ b)
            if m:
                basis.append(m)
                basis.sort(reverse=True)
        return basis

    def homology_mod2(self, word: Sequence[int]) -> int:
        """Class of a closed dual path in ``H_1`` of the filled surface, mod 2."""
        m = 0
        for x in word:
            g = abs(x) - 1
            if g < 2 * self.surf.squares:
                m ^= 1 << g
        for b in self._stars:
            m = min(m, m ^ b)
        return m

    def is_separating(self, word: Sequence[int]) -> bool:
        return self.homology_mod2(word) == 0


# ---------------------------------------------------------------------------
# crossings and intersection numbers

@dataclass(frozen=True)
class Crossing:
    point: Point
    ta: Fraction          # arc length along the first curve
    tb: Fraction          # arc length along the second curve
    a_horizontal: bool


def crossings(surf: Origami, a: Curve, b: Curve) -> list[Crossing]:
    """Transverse crossings of two drawn curves; tangencies are refused."""
    return _piece_crossings(surf.develop(a), surf.develop(b))


def _piece_crossings(da: Developed, db: Developed) -> list[Crossing]:
    by_square: dict[int, list[Piece]] = {}
    for p in db.pieces:
        by_square.setdefault(p.square, []).append(p)
    out = []
    for p in da.pieces:
        for q in by_square.get(p.square, ()):
            if p.horizontal == q.horizontal:
                if p.horizontal and p.y0 == q.y0 or not p.horizontal and p.x0 == q.x0:
                    lo1, hi1 = sorted((p.x0, p.x1) if p.horizontal else (p.y0, p.y1))
                    lo2, hi2 = sorted((q.x0, q.x1) if q.horizontal else (q.y0, q.y1))
                    if lo1 <= hi2 and lo2 <= hi1:
                        raise DegenerateDrawing(f"curves overlap in square {p.square}")
                continue
            h, v = (p, q) if p.horizontal else (q, p)
            x, y = v.x0, h.y0
            xlo, xhi = sorted((h.x0, h.x1))
            ylo, yhi = sorted((v.y0, v.y1))
            if xlo < x < xhi and ylo < y < yhi:
                ta = p.s0 + abs(x - p.x0) + abs(y - p.y0)
                tb = q.s0 + abs(x - q.x0) + abs(y - q.y0)
                out.append(Crossing(Point(p.square, x, y), ta, tb, p.horizontal))
            elif xlo <= x <= xhi and ylo <= y <= yhi:
                raise DegenerateDrawing(f"curves touch at ({x}, {y}) in square {p.square}")
    return out


def _arc_words(dev: Developed, stops: Sequence[Fraction]) -> list[list[int]]:
    """Letters met between consecutive stops (cyclically); ``stops`` sorted."""
    m = len(stops)
    words: list[list[int]] = [[] for _ in range(m)]
    stop_set = set(stops)
    head: list[int] = []
    for pos, letter in dev.events:
        if pos in stop_set:
            raise DegenerateDrawing("crossing lies on a cut")
        k = bisect.bisect_right(stops, pos) - 1
        (head if k < 0 else words[k]).append(letter)
    words[-1] += head
    return words


class _Cyclic:
    """Crossings along one curve as a cyclic linked list with arc words."""

    def __init__(self, order: Sequence[int], words: Sequence[list[int]]) -> None:
        m = len(order)
        self.next = {order[k]: order[(k + 1) % m] for k in range(m)}
        self.prev = {order[(k + 1) % m]: order[k] for k in range(m)}
        self.word = {order[k]: list(words[k]) for k in range(m)}

    def remove_pair(self, p: int, q: int) -> None:
        """Drop consecutive crossings ``p -> q`` and merge the arcs around them."""
        x, y = self.prev[p], self.next[q]
        if x == q:
            self.next.clear(), self.prev.clear(), self.word.clear()
            return
        self.word[x] = self.word[x] + self.word[p] + self.word[q]
        self.next[x], self.prev[y] = y, x
        for z in (p, q):
            del self.next[z], self.prev[z], self.word[z]


def intersection_number(surf: Origami, a: Curve, b: Curve, reverse: bool = False) -> int:
    """Geometric intersection number, by removing empty bigons one at a time.

    Two crossings consecutive along both curves cut off arcs whose union is an
    embedded loop; it bounds a bigon free of punctures exactly when the loop
    is null-homotopic.  Such a bigon is removed and the arc words merged,
    until none is left.  ``reverse`` scans candidates in the opposite order.
    """
    xs = crossings(surf, a, b)
    if not xs:
        return 0
    grp = surf.group
    m = len(xs)
    oa = sorted(range(m), key=lambda k: xs[k].ta)
    ob = sorted(range(m), key=lambda k: xs[k].tb)
    ca = _Cyclic(oa, _arc_words(surf.develop(a), [xs[k].ta for k in oa]))
    cb = _Cyclic(ob, _arc_words(surf.develop(b), [xs[k].tb for k in ob]))
    while True:
        alive = sorted(ca.next, reverse=reverse)
        for p in alive:
            q = ca.next[p]
            if q == p:
                continue
            wa = ca.word[p]
            cand = []
            if cb.next[p] == q:
                cand.append((cb.word[p], False))
            if cb.next[q] == p:
                cand.append((inverse(cb.word[q]), True))
            hit = None
            for wb, flipped in cand:
                if grp.is_trivial(wa + inverse(wb)):
                    hit = flipped
                    break
            if hit is None:
                continue
            ca.remove_pair(p, q)
            if hit:
                cb.remove_pair(q, p)
            else:
                cb.remove_pair(p, q)
            break
        else:
            return len(ca.next)
        if not ca.next:
            return 0


# ---------------------------------------------------------------------------
# boundaries of regular neighbourhoods

def _slice_moves(c: Curve, t0: Fraction, t1: Fraction) -> list[tuple[Fraction, Fraction]]:
    """Moves of ``c`` between arc lengths ``t0 < t1`` (``t1`` may pass the end)."""
    total = sum(_length(m) for m in c.moves)
    out = []
    base = ZERO
    lap = 0
    while base < t1:
        for dx, dy in c.moves:
            ln = abs(dx) + abs(dy)
            lo, hi = max(base, t0), min(base + ln, t1)
            if lo < hi:
                ux, uy = _unit((dx, dy))
                out.append((ux * (hi - lo), uy * (hi - lo)))
            base += ln
        lap += 1
        if lap > 2:
            raise AssertionError("slice longer than two laps")
    if total == 0:
        raise ValueError("empty curve")
    return out


def _cw_next(d: tuple[int, int]) -> tuple[int, int]:
    return (d[1], -d[0])


def _left_normal(m) -> tuple[int, int]:
    ux, uy = _unit(m)
    return (-uy, ux)


def offset_left(surf: Origami, start: Point, moves: Sequence, eps: Fraction) -> Curve:
    """Push a closed rectilinear path ``eps`` to its left.

    ``start`` is the point where the path begins, i.e. the corner between the
    last and the first move.
    """
    ms = merge_moves(moves, cyclic=False)
    if len(ms) > 1 and _unit(ms[0]) == _unit(ms[-1]):
        # begin at a true corner
        last = ms.pop()
        start = surf.push(start, -last[0], -last[1])
        ms[0] = (ms[0][0] + last[0], ms[0][1] + last[1])
    k = len(ms)
    if k == 1:
        n = _left_normal(ms[0])
        return Curve(surf.push(start, eps * n[0], eps * n[1]), tuple(ms))
    ns = [_left_normal(m) for m in ms]
    shifted = []
    for i in range(k):
        a, b = ns[(i + 1) % k], ns[i - 1]
        shifted.append((ms[i][0] + eps * (a[0] - b[0]), ms[i][1] + eps * (a[1] - b[1])))
    corner = surf.push(start, eps * (ns[-1][0] + ns[0][0]), eps * (ns[-1][1] + ns[0][1]))
    return Curve(corner, tuple(shifted))


@dataclass(frozen=True)
class BoundaryCurve:
    curve: Curve
    separating: bool


def boundary_paths(surf: Origami, curves: Sequence[Curve]) -> list[tuple[Point, list]]:
    """Closed paths tracing the union of ``curves`` with a face on the left.

    Each path starts at a crossing (or at the start point of a curve that
    meets no other) and follows the graph of the union, turning sharply left
    at every crossing.
    """
    stops: list[list[tuple[Fraction, int]]] = [[] for _ in curves]
    where: dict[int, Point] = {}
    seen_points: set[tuple] = set()
    vid = 0
    for i in range(len(curves)):
        for j in range(i + 1, len(curves)):
            for x in crossings(surf, curves[i], curves[j]):
                key = (x.point.square, x.point.x, x.point.y)
                if key in seen_points:
                    raise DegenerateDrawing("three curves through one point")
                seen_points.add(key)
                where[vid] = x.point
                stops[i].append((x.ta, vid))
                stops[j].append((x.tb, vid))
                vid += 1
    paths: list[tuple[Point, list]] = []
    # darts: (curve, k, forward) from stop k to stop k+1 (or back)
    out_at: dict[tuple[int, tuple[int, int]], tuple[int, int, bool]] = {}
    dart_moves: dict[tuple[int, int, bool], list] = {}
    dart_end: dict[tuple[int, int, bool], int] = {}
    for c, (curve, st) in enumerate(zip(curves, stops)):
        st.sort()
        if not st:
            paths.append((curve.start, list(curve.moves)))
            rev = curve.reversed()
            paths.append((rev.start, list(rev.moves)))
            continue
        total = sum(_length(m) for m in curve.moves)
        m = len(st)
        for k in range(m):
            t0, v0 = st[k]
            t1, v1 = st[(k + 1) % m]
            if k == m - 1:
                t1 += total
            mv = _slice_moves(curve, t0, t1)
            fwd, bwd = (c, k, True), (c, k, False)
            dart_moves[fwd] = mv
            dart_moves[bwd] = [(-dx, -dy) for dx, dy in reversed(mv)]
            dart_end[fwd], dart_end[bwd] = v1, v0
            out_at[(v0, _unit(mv[0]))] = fwd
            out_at[(v1, tuple(-u for u in _unit(mv[-1])))] = bwd
    used: set = set()
    for d0 in sorted(dart_moves):
        if d0 in used:
            continue
        d = d0
        moves: list = []
        first_vertex = None
        while d not in used:
            used.add(d)
            if first_vertex is None:
                c, k, fw = d
                first_vertex = stops[c][k][1] if fw else stops[c][(k + 1) % len(stops[c])][1]
            moves += dart_moves[d]
            arrive = _unit(dart_moves[d][-1])
            back = (-arrive[0], -arrive[1])
            d = out_at[(dart_end[d], _cw_next(back))]
        if d != d0:
            raise AssertionError("face tracing did not close up")
        paths.append((where[first_vertex], moves))
    return paths


def curve_word(surf: Origami, c: Curve) -> list[int]:
    return [letter for _, letter in surf.develop(c).events]


def neighborhood_boundary(surf: Origami, curves: Sequence[Curve], eps: Fraction,
                          check: bool = True) -> list[BoundaryCurve]:
    """Essential boundary components of a regular neighbourhood of the union.

    Components bounding a disk or a once-punctured disk are dropped.  With
    ``check`` every component is confirmed disjoint from the input curves,
    which guards against ``eps`` being too large.
    """
    grp = surf.group
    out = []
    for start, moves in boundary_paths(surf, curves):
        c = offset_left(surf, start, moves, F(eps))
        surf.develop(c)
        w = curve_word(surf, c)
        if grp.is_trivial(w) or grp.free and grp.is_peripheral(w):
            continue
        if check:
            for x in curves:
                if crossings(surf, c, x):
                    raise DegenerateDrawing("offset too large: boundary meets the curves")
        out.append(BoundaryCurve(c, grp.is_separating(w)))
    return out


# ---------------------------------------------------------------------------
# sides of a separating curve

def _route(surf: Origami, p: Point, q: Point, gx: Fraction, gy: Fraction) -> list:
    """Rectilinear moves from ``p`` to ``q`` through ``(gx, gy)`` of each square used."""
    prev = {p.square: None}
    todo = [p.square]
    for s in todo:
        for t, step in ((surf.right[s], (1, 0)), (surf.left[s], (-1, 0)),
                        (surf.up[s], (0, 1)), (surf.down[s], (0, -1))):
            if t not in prev:
                prev[t] = (s, step)
                todo.append(t)
    steps = []
    s = q.square
    while prev[s] is not None:
        s, step = prev[s]
        steps.append(step)
    steps.reverse()
    mv = [(gx - p.x, ZERO), (ZERO, gy - p.y)]
    mv += [(F(a), F(b)) for a, b in steps]
    mv += [(ZERO, q.y - gy), (q.x - gx, ZERO)]
    return [m for m in mv if m != (0, 0)]


def same_side(surf: Origami, c, p: Point, q: Point) -> bool:
    """Whether ``p`` and ``q`` lie in the same component of the complement of ``c``.

    ``c`` is a curve or a list of curves whose union separates the surface
    into two pieces, each curve bordering both.  The answer is the parity of
    the crossings of the union with any path from ``p`` to ``q``.
    """
    curves = [c] if isinstance(c, Curve) else list(c)
    devs = [surf.develop(x) for x in curves]
    used = {v for dc in devs for pc in dc.pieces for v in (pc.x0, pc.y0, pc.x1, pc.y1)}
    for k in range(1, 200):
        g = F(1, 2) + F(k, 1009)
        if g in used or g >= 1:
            continue
        try:
            dev = surf._develop(p, _route(surf, p, q, g, g), closed=False)[0]
            return sum(len(_piece_crossings(dev, dc)) for dc in devs) % 2 == 0
        except DegenerateDrawing:
            continue
    raise DegenerateDrawing("no generic route found")


def translate_all(surf: Origami, curves: Sequence[Curve], dx: Fraction, dy: Fraction) -> list[Curve]:
    return [surf.translate(c, dx, dy) for c in curves]
