"""Dynnikov coordinates for curves on a punctured sphere, and the braid action on them.

The sphere ``S_{0,n}`` is modelled as a disk with ``m = n - 1`` punctures
``p_1, ..., p_m`` on the real axis; the last puncture ``p_n`` sits on the
boundary circle.  Isotopy classes of essential curves on ``S_{0,n}`` are in
bijection with essential, non-peripheral curves in this disk, so the
coordinate vector ``(a_1..a_{m-2}, b_1..b_{m-2})`` is a complete invariant.

Geometric quantities used throughout (all for a curve in minimal position):

* ``beta[i]`` (``1 <= i <= m-1``): crossings with the vertical line between
  ``p_i`` and ``p_{i+1}``;
* ``upper[i]``, ``lower[i]`` (``1 <= i <= m``): crossings with the vertical rays
  from ``p_i`` to the top and bottom of the disk;
* ``axis[i]`` (``0 <= i <= m``): crossings with the real-axis segment between
  ``p_i`` and ``p_{i+1}`` (``p_0`` and ``p_{m+1}`` being the boundary).

Braid generators act by the piecewise-linear update rules of Dynnikov.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence


class CoordinateError(ValueError):
    """Raised for vectors that do not encode a single essential curve."""


class RelaxationStall(RuntimeError):
    """Raised when no generator reduces the complexity of a configuration."""


def _pos(x: int) -> int:
    return x if x > 0 else 0


def _neg(x: int) -> int:
    return x if x < 0 else 0


# ---------------------------------------------------------------------------
# raw coordinate arithmetic on (a, b) tuples


def _act_raw(k: int, a: list[int], b: list[int]) -> None:
    """Apply the signed generator ``k`` in place; ``|k|`` is the strand index."""
    i = abs(k)
    positive = k > 0
    m = len(a) + 2
    if i == 1:
        a1, b1 = a[0], b[0]
        if positive:
            a[0] = b1 - _pos(_pos(b1) - a1)
            b[0] = _pos(b1) - a1
        else:
            a[0] = -b1 + _pos(a1 + _pos(b1))
            b[0] = a1 + _pos(b1)
    elif i == m - 1:
        a1, b1 = a[-1], b[-1]
        if positive:
            a[-1] = b1 - _neg(_neg(b1) - a1)
            b[-1] = _neg(b1) - a1
        else:
            a[-1] = -b1 + _neg(a1 + _neg(b1))
            b[-1] = a1 + _neg(b1)
    else:
        a0, b0, a1, b1 = a[i - 2], b[i - 2], a[i - 1], b[i - 1]
        if positive:
            z = a0 - _neg(b0) - a1 + _pos(b1)
            a[i - 2] = a0 + _pos(b0) + _pos(_pos(b1) - z)
            b[i - 2] = b1 - _pos(z)
            a[i - 1] = a1 + _neg(b1) + _neg(_neg(b0) + z)
            b[i - 1] = b0 + _pos(z)
        else:
            z = a0 + _neg(b0) - a1 - _pos(b1)
            a[i - 2] = a0 - _pos(b0) - _pos(_pos(b1) + z)
            b[i - 2] = b1 + _neg(z)
            a[i - 1] = a1 - _neg(b1) - _neg(_neg(b0) - z)
            b[i - 1] = b0 - _neg(z)


def beta_counts(a: Sequence[int], b: Sequence[int]) -> list[int]:
    """Crossings with the vertical lines between consecutive punctures.

    Returned list is 0-indexed: entry ``i - 1`` is ``beta_i``.
    """
    m = len(a) + 2
    prefix = [0] * (m - 1)  # prefix[i-1] = b_1 + ... + b_{i-1}
    for i in range(1, m - 1):
        prefix[i] = prefix[i - 1] + b[i - 1]
    top = max(abs(a[k]) + _pos(b[k]) + prefix[k] for k in range(m - 2))
    return [2 * (top - prefix[i]) for i in range(m - 1)]


@dataclass(frozen=True)
class AxisProfile:
    """Crossing counts of a curve with the axis segments and puncture rays."""

    beta: tuple[int, ...]    # index i-1 for beta_i, i = 1..m-1
    upper: tuple[int, ...]   # index i for p_i, i = 0..m+1 (ends are 0)
    lower: tuple[int, ...]
    axis: tuple[int, ...]    # index i for segment (p_i, p_{i+1}), i = 0..m

    @property
    def complexity(self) -> int:
        return sum(self.axis)


def axis_profile(a: Sequence[int], b: Sequence[int]) -> AxisProfile:
    m = len(a) + 2
    beta = beta_counts(a, b)
    bx = [0] + beta + [0]  # bx[i] = beta_i with beta_0 = beta_m = 0
    upper = [0] * (m + 2)
    lower = [0] * (m + 2)
    for i in range(1, m + 1):
        width = max(bx[i - 1], bx[i])
        shift = a[i - 2] if 2 <= i <= m - 1 else 0
        upper[i] = width // 2 - shift
        lower[i] = width // 2 + shift
    axis = [0] * (m + 1)
    axis[0] = bx[1] // 2
    axis[m] = bx[m - 1] // 2
    for i in range(1, m):
        twist = ((upper[i] - lower[i]) - (upper[i + 1] - lower[i + 1])) // 2
        axis[i] = (upper[i] + lower[i] + upper[i + 1] + lower[i + 1]) // 2 - bx[i] + abs(twist)
    return AxisProfile(tuple(beta), tuple(upper), tuple(lower), tuple(axis))


def half_plane_matching(rays: Sequence[int], axis: Sequence[int]) -> dict[int, list[tuple[int, int, int, int]]]:
    """Bundles of parallel arcs in one half-plane.

    Arcs of one half-plane form a non-crossing matching of the axis points;
    inside a segment the closing points precede the opening ones.  Returns,
    per segment, blocks ``(start, length, other_segment, other_start)``: point
    ``start + r`` is matched with point ``other_start - r`` of ``other_segment``.
    """
    blocks: dict[int, list[tuple[int, int, int, int]]] = {t: [] for t in range(len(axis))}
    stack: list[list[int]] = []  # [segment, first index, count]; top = rightmost openers
    for t in range(len(axis)):
        closes = (axis[t] + rays[t] - rays[t + 1]) // 2
        opens = axis[t] - closes
        if closes < 0 or opens < 0:
            raise CoordinateError("inconsistent crossing counts")
        pos = 0
        while pos < closes:
            seg, first, cnt = stack[-1]
            take = min(closes - pos, cnt)
            top_index = first + cnt - 1
            blocks[t].append((pos, take, seg, top_index))
            blocks[seg].append((top_index - take + 1, take, t, pos + take - 1))
            pos += take
            if take == cnt:
                stack.pop()
            else:
                stack[-1][2] -= take
        if opens:
            stack.append([t, closes, opens])
    if stack:
        raise CoordinateError("unmatched arcs")
    for seg in blocks:
        blocks[seg].sort()
    return blocks


def _transport(blocks, seg: int, lo: int, hi: int):
    """Images of the points ``lo..hi-1`` of ``seg`` as ``(segment, lo, hi)`` pieces."""
    out = []
    for start, length, other, other_start in blocks[seg]:
        s, e = max(lo, start), min(hi, start + length)
        if s < e:
            # point start + r  ->  other_start - r, reversed order
            out.append((other, other_start - (e - 1 - start), other_start - (s - start) + 1))
    return out


def round_intersection(profile: AxisProfile, j: int, k: int) -> int:
    """Geometric intersection of a curve with the round curve around ``p_j..p_k``.

    The round curve is the boundary of a thin neighbourhood of the axis
    segments from ``p_j`` to ``p_k``.  Every crossing of the curve with those
    segments gives two crossings with the boundary; arcs outside the
    neighbourhood that run parallel to the boundary are bigons and removed.
    """
    axis = profile.axis
    tree = range(j, k)
    halves = (half_plane_matching(profile.upper, axis), half_plane_matching(profile.lower, axis))
    ends = {j - 1: k, k: j - 1}
    parallel = 0
    for seg in tree:
        for h in (0, 1):
            for s1, a1, b1 in _transport(halves[h], seg, 0, axis[seg]):
                if j <= s1 < k:
                    parallel += b1 - a1
                    continue
                if s1 not in ends:
                    continue
                for s2, a2, b2 in _transport(halves[1 - h], s1, a1, b1):
                    if j <= s2 < k:
                        parallel += b2 - a2
                    elif s2 == ends[s1]:
                        for s3, a3, b3 in _transport(halves[h], s2, a2, b2):
                            if j <= s3 < k:
                                parallel += b3 - a3
    crossings = sum(axis[t] for t in tree)
    return 2 * crossings - parallel


# ---------------------------------------------------------------------------
# braid words


@dataclass(frozen=True)
class BraidWord:
    """A freely reduced word in the half-twist generators of the disk model.

    ``letters`` holds signed generator indices ``+-k`` with ``1 <= k <= n-2``
    for the sphere with ``n`` punctures (the half-twist exchanging the disk
    punctures ``p_k`` and ``p_{k+1}``).
    """

    punctures: int
    letters: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        top = self.punctures - 2
        reduced: list[int] = []
        for k in self.letters:
            if not isinstance(k, int) or k == 0 or abs(k) > top:
                raise ValueError(f"generator {k} out of range for {self.punctures} punctures")
            if reduced and reduced[-1] == -k:
                reduced.pop()
            else:
                reduced.append(k)
        object.__setattr__(self, "letters", tuple(reduced))

    def __len__(self) -> int:
        return len(self.letters)

    def __mul__(self, other: "BraidWord") -> "BraidWord":
        """``(u * v)`` acts as ``u`` first, then ``v``."""
        if other.punctures != self.punctures:
            raise ValueError("braid words on different surfaces")
        return BraidWord(self.punctures, self.letters + other.letters)

    def inverse(self) -> "BraidWord":
        return BraidWord(self.punctures, tuple(-k for k in reversed(self.letters)))

    @classmethod
    def half_twist_all(cls, punctures: int) -> "BraidWord":
        """The Garside element: rotates the row of disk punctures by a half turn."""
        m = punctures - 1
        word: list[int] = []
        for top in range(m - 1, 0, -1):
            word.extend(range(1, top + 1))
        return cls(punctures, tuple(word))


# ---------------------------------------------------------------------------
# curves


@dataclass(frozen=True)
class CoordCurve:
    """An essential simple closed curve on ``S_{0,n}`` in Dynnikov coordinates."""

    punctures: int
    coords: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.punctures < 5:
            raise ValueError("coordinate model needs at least 5 punctures")
        if len(self.coords) != 2 * self.punctures - 6:
            raise ValueError(
                f"expected {2 * self.punctures - 6} coordinates, got {len(self.coords)}")
        if not is_single_curve(self.punctures, self.coords):
            raise CoordinateError(f"{self.coords} is not a single essential curve")

    @property
    def a(self) -> tuple[int, ...]:
        return self.coords[: self.punctures - 3]

    @property
    def b(self) -> tuple[int, ...]:
        return self.coords[self.punctures - 3:]

    @cached_property
    def profile(self) -> AxisProfile:
        return axis_profile(self.a, self.b)

    @property
    def norm(self) -> int:
        return sum(abs(x) for x in self.coords)

    @property
    def complexity(self) -> int:
        return self.profile.complexity

    @classmethod
    def round(cls, punctures: int, j: int, k: int) -> "CoordCurve":
        """The round curve enclosing disk punctures ``p_j..p_k``."""
        m = punctures - 1
        if not (1 <= j < k <= m) or (j, k) == (1, m):
            raise ValueError(f"[{j},{k}] is not an essential round curve for m={m}")
        return cls._unchecked(punctures, _round_coords(m, j, k))

    @classmethod
    def _unchecked(cls, punctures: int, coords: Iterable[int]) -> "CoordCurve":
        obj = object.__new__(cls)
        object.__setattr__(obj, "punctures", punctures)
        object.__setattr__(obj, "coords", tuple(coords))
        return obj

    def round_interval(self) -> tuple[int, int] | None:
        """``(j, k)`` if this is a round curve around ``p_j..p_k``, else ``None``."""
        ax = self.profile.axis
        if sum(ax) != 2:
            return None
        ones = [i for i, x in enumerate(ax) if x]
        return ones[0] + 1, ones[1]

    def act(self, word: BraidWord) -> "CoordCurve":
        if word.punctures != self.punctures:
            raise ValueError("braid word and curve live on different surfaces")
        a, b = apply_word(word.letters, self.a, self.b)
        return CoordCurve._unchecked(self.punctures, a + b)

    def reflect(self) -> "CoordCurve":
        """Image under the orientation-reversing mirror fixing the real axis."""
        return CoordCurve._unchecked(self.punctures, tuple(-x for x in self.a) + self.b)


def _round_coords(m: int, j: int, k: int) -> tuple[int, ...]:
    beta = [2 if j <= t < k else 0 for t in range(1, m)]
    b = [(beta[t] - beta[t + 1]) // 2 for t in range(m - 2)]
    return tuple([0] * (m - 2) + b)


def apply_word(letters: Iterable[int], a: Sequence[int], b: Sequence[int]):
    a = list(a)
    b = list(b)
    for k in letters:
        _act_raw(k, a, b)
    return tuple(a), tuple(b)


def _relax_key(prof: AxisProfile) -> int:
    return prof.complexity + sum(prof.beta)


def is_round(prof: AxisProfile) -> bool:
    """True when every component is a round curve crossing the axis twice."""
    return half_plane_matching(prof.upper, prof.axis) == half_plane_matching(prof.lower, prof.axis)


def relax_curve(punctures: int, a: Sequence[int], b: Sequence[int]):
    """Untangle a multicurve to round curves; returns ``(letters, a, b, profile)``.

    Best-first search on crossings with the axis plus the vertical lines.
    Plain greedy descent can stall on plateaus; the search cannot, since only
    finitely many multicurves lie below any bound.  The number of components
    of the result, with multiplicity, is half its axis crossings.
    """
    m = punctures - 1
    a, b = tuple(a), tuple(b)
    prof = axis_profile(a, b)
    heap = [(_relax_key(prof), (), a, b, prof)]
    seen = {(a, b)}
    while heap:
        _, word, a, b, prof = heapq.heappop(heap)
        if is_round(prof):
            return list(word), a, b, prof
        for i in range(1, m):
            for k in (i, -i):
                na, nb = apply_word((k,), a, b)
                if (na, nb) in seen:
                    continue
                seen.add((na, nb))
                q = axis_profile(na, nb)
                heapq.heappush(heap, (_relax_key(q), word + (k,), na, nb, q))
    raise RelaxationStall("orbit exhausted")  # unreachable for integral laminations


def is_single_curve(punctures: int, coords: Sequence[int]) -> bool:
    """True iff the vector encodes one essential, non-peripheral curve."""
    m = punctures - 1
    if len(coords) != 2 * m - 4 or not any(coords):
        return False
    prof = relax_curve(punctures, coords[: m - 2], coords[m - 2:])[3]
    return prof.complexity == 2


def geometric_intersection(c1: CoordCurve, c2: CoordCurve) -> int:
    """Exact geometric intersection number of two curves."""
    if c1.punctures != c2.punctures:
        raise ValueError("curves on different surfaces")
    if c1.coords == c2.coords:
        return 0
    letters, _, _, prof = relax_curve(c1.punctures, c1.a, c1.b)
    ones = [i for i, x in enumerate(prof.axis) if x]
    j, k = ones[0] + 1, ones[1]
    a, b = apply_word(letters, c2.a, c2.b)
    return round_intersection(axis_profile(a, b), j, k)
