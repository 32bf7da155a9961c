"""The rigid set of the n-punctured sphere and its reconstruction procedure.

Curves of the set are named by cyclic intervals of punctures ``1..n``: the
curve bounding a disk that contains exactly those punctures.  In the doubled
polygon picture these are the doubles of the polygon diagonals.  Coordinates
come from the disk model of :mod:`rigidset.dynnikov`, where puncture ``n``
sits on the boundary, so a label is drawn as the round curve around the side
of its interval that avoids ``n``.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from itertools import combinations, product
from typing import Iterable, Mapping

import numba
import numpy as np

from .core import CurveLabel, DetectCert, RigidSet, find_detect_cert
from .dynnikov import (BraidWord, CoordCurve, CoordinateError, apply_word, axis_profile,
                       geometric_intersection, is_single_curve, round_intersection)
from .simplicial import SurfaceSig, homology

FAMILY = "interval"


class ReconstructFailed(RuntimeError):
    pass


@dataclass(frozen=True, order=True)
class PunctureInterval:
    """Cyclic interval ``start, start+1, ..., start+length-1`` of punctures mod ``n``."""

    n: int
    start: int
    length: int

    def __post_init__(self) -> None:
        n, s, L = self.n, (self.start - 1) % self.n + 1, self.length
        if not 2 <= L <= n - 2:
            raise ValueError(f"interval length {L} outside 2..{n - 2}")
        if n - L < L or (n - L == L and (s + L - 1) % n + 1 < s):
            s, L = (s + L - 1) % n + 1, n - L
        object.__setattr__(self, "start", s)
        object.__setattr__(self, "length", L)

    @property
    def members(self) -> frozenset[int]:
        return frozenset((self.start - 1 + t) % self.n + 1 for t in range(self.length))

    @property
    def label(self) -> CurveLabel:
        return CurveLabel(FAMILY, (self.start, self.length))

    @classmethod
    def of(cls, n: int, label: CurveLabel) -> "PunctureInterval":
        if label.family != FAMILY:
            raise ValueError(f"{label} is not a puncture interval")
        return cls(n, *label.index)


def interval_labels(n: int) -> list[CurveLabel]:
    if n < 5:
        raise ValueError("the sphere construction needs n >= 5")
    out = {PunctureInterval(n, s, L).label for s in range(1, n + 1) for L in range(2, n - 1)}
    return sorted(out, key=lambda x: x.index)


def chord_intersection(n: int, x: CurveLabel, y: CurveLabel) -> int:
    """0 for nested or disjoint intervals (up to complement), 2 if they link."""
    a, b = PunctureInterval.of(n, x).members, PunctureInterval.of(n, y).members
    if a <= b or b <= a or not (a & b) or len(a | b) == n:
        return 0
    return 2


def build_rigid_set_sphere(n: int) -> RigidSet:
    labels = interval_labels(n)
    return RigidSet.from_function(SurfaceSig(0, n), labels, lambda x, y: chord_intersection(n, x, y))


def chain_curves(n: int) -> list[CurveLabel]:
    """The ``n`` length-two intervals ``{i, i+1}`` in cyclic order."""
    if n < 5:
        raise ValueError("the sphere construction needs n >= 5")
    return [PunctureInterval(n, i, 2).label for i in range(1, n + 1)]


def _chain_index(n: int, label: CurveLabel) -> int:
    iv = PunctureInterval.of(n, label)
    if iv.length != 2:
        raise ValueError(f"{label} is not a chain curve")
    return iv.start


def is_consecutive(n: int, subset: Iterable[CurveLabel]) -> bool:
    """Chain indices form a cyclic interval."""
    idx = {_chain_index(n, x) for x in subset}
    if not idx:
        raise ValueError("empty subset")
    if len(idx) == n:
        return True
    starts = [i for i in idx if (i - 2) % n + 1 not in idx]
    return len(starts) == 1


def determining_set(n: int, label: CurveLabel) -> list[CurveLabel]:
    """The chain curves disjoint from a non-chain curve."""
    if label in chain_curves(n):
        raise ValueError(f"{label} is a chain curve")
    out = [c for c in chain_curves(n) if chord_intersection(n, c, label) == 0]
    assert len(out) == n - 2
    return out


def sphere_cert(rs: RigidSet, a: CurveLabel, b: CurveLabel) -> DetectCert:
    return find_detect_cert(rs, a, b)


def all_certificates(rs: RigidSet) -> list[DetectCert]:
    out = []
    for x, y in combinations(rs.labels, 2):
        if rs.i(x, y):
            out.append(find_detect_cert(rs, x, y))
    return out


def verify_lee_sphere(n: int) -> dict:
    """Pure of dimension n-4, a pseudomanifold, homology of the (n-4)-sphere."""
    rs = build_rigid_set_sphere(n)
    cx = rs.complex
    dim = n - 4
    ridge_use: dict[tuple[int, ...], int] = {}
    for f in cx.facets:
        for k in range(len(f)):
            r = f[:k] + f[k + 1:]
            ridge_use[r] = ridge_use.get(r, 0) + 1
    pseudo = all(v == 2 for v in ridge_use.values()) and len(ridge_use) == len(cx.faces(dim - 1))
    hom = homology(cx)
    return {
        "n": n,
        "vertices": cx.vertex_count,
        "facets": len(cx.facets),
        "dimension": cx.dimension(),
        "pure": cx.is_pure() and cx.dimension() == dim,
        "pseudomanifold": pseudo,
        "homology": hom.describe(),
        "homology_sphere": hom.is_sphere(dim),
        "euler_characteristic": cx.euler_characteristic(),
        "passed": cx.is_pure() and cx.dimension() == dim and pseudo and hom.is_sphere(dim),
    }


# ---------------------------------------------------------------------------
# coordinates


def curve_of_label(n: int, label: CurveLabel) -> CoordCurve:
    m = n - 1
    mem = PunctureInterval.of(n, label).members
    if n in mem:
        mem = frozenset(range(1, n + 1)) - mem
    j, k = min(mem), max(mem)
    assert k - j + 1 == len(mem) and (j, k) != (1, m)
    return CoordCurve.round(n, j, k)


def base_configuration(n: int) -> dict[CurveLabel, CoordCurve]:
    return {x: curve_of_label(n, x) for x in interval_labels(n)}


def braid_action(word: BraidWord, c: CoordCurve) -> CoordCurve:
    return c.act(word)


# ---------------------------------------------------------------------------
# bounded determination


def chain_segment(n: int, label: CurveLabel) -> int:
    """Axis segment whose neighbourhood boundary is this chain curve.

    ``i(L, chain_i) = 2 * axis[i mod n]`` for every curve ``L``.
    """
    return _chain_index(n, label) % n


def _vectors_by_norm(dim: int, cutoff: int, chunk_first: bool = True):
    """Integer vectors with L1 norm ``<= cutoff``, in chunks, as int64 arrays."""
    if dim == 0:
        yield np.zeros((1, 0), dtype=np.int64)
        return
    firsts = range(-cutoff, cutoff + 1) if chunk_first else [None]
    for v0 in firsts:
        budget = cutoff - abs(v0) if v0 is not None else cutoff
        rows = np.zeros((1, 0), dtype=np.int64)
        left = np.array([budget], dtype=np.int64)
        for _ in range(dim - (1 if v0 is not None else 0)):
            counts = 2 * left + 1
            idx = np.repeat(np.arange(len(rows)), counts)
            starts = np.repeat(np.cumsum(counts) - counts, counts)
            offs = np.arange(len(idx)) - starts - np.repeat(left, counts)
            rows = np.hstack([rows[idx], offs[:, None]])
            left = np.repeat(left, counts) - np.abs(offs)
        if v0 is not None:
            rows = np.hstack([np.full((len(rows), 1), v0, dtype=np.int64), rows])
        yield rows


def axis_counts_batch(m: int, a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Vectorised axis crossing counts, one row per coordinate vector."""
    n_rows = len(a)
    pos = lambda x: np.maximum(x, 0)
    prefix = np.zeros((n_rows, m - 1), dtype=np.int64)
    prefix[:, 1:] = np.cumsum(b, axis=1)
    top = (np.abs(a) + pos(b) + prefix[:, : m - 2]).max(axis=1)
    beta = 2 * (top[:, None] - prefix)
    bx = np.zeros((n_rows, m + 1), dtype=np.int64)
    bx[:, 1:m] = beta
    width = np.maximum(bx[:, :-1], bx[:, 1:]) // 2  # index i-1 for puncture i
    shift = np.zeros((n_rows, m), dtype=np.int64)
    shift[:, 1: m - 1] = a
    up, lo = width - shift, width + shift
    axis = np.zeros((n_rows, m + 1), dtype=np.int64)
    axis[:, 0] = bx[:, 1] // 2
    axis[:, m] = bx[:, m - 1] // 2
    tw = np.abs(((up[:, :-1] - lo[:, :-1]) - (up[:, 1:] - lo[:, 1:])) // 2)
    axis[:, 1:m] = (up[:, :-1] + lo[:, :-1] + up[:, 1:] + lo[:, 1:]) // 2 - bx[:, 1:m] + tw
    return axis


@numba.njit(cache=True)
def _scan_ball(m, cutoff, segs, out):
    """Odometer over the L1 ball; writes vectors whose listed axis counts vanish.

    Returns the number of hits, or -1 if ``out`` overflowed.
    """
    d = 2 * m - 4
    v = np.zeros(d, np.int64)
    rem = np.zeros(d + 1, np.int64)
    bx = np.zeros(m + 1, np.int64)
    width = np.zeros(m, np.int64)
    shift = np.zeros(m, np.int64)
    hits = 0
    i = 0
    rem[0] = cutoff
    v[0] = -cutoff - 1
    while True:
        v[i] += 1
        if v[i] > rem[i]:
            i -= 1
            if i < 0:
                break
            continue
        if i < d - 1:
            rem[i + 1] = rem[i] - abs(v[i])
            i += 1
            v[i] = -rem[i] - 1
            continue
        # full vector: a = v[:m-2], b = v[m-2:]
        top = -(1 << 62)
        pre = 0
        for j in range(m - 2):
            t = abs(v[j]) + max(v[m - 2 + j], 0) + pre
            if t > top:
                top = t
            pre += v[m - 2 + j]
        pre = 0
        for j in range(m - 1):
            bx[j + 1] = 2 * (top - pre)
            if j < m - 2:
                pre += v[m - 2 + j]
        for j in range(m):
            width[j] = max(bx[j], bx[j + 1]) // 2
            shift[j] = v[j - 1] if 1 <= j <= m - 2 else 0
        ok = True
        nonzero = False
        for j in range(d):
            if v[j] != 0:
                nonzero = True
        if not nonzero:
            continue
        for s in segs:
            if s == 0:
                ax = bx[1] // 2
            elif s == m:
                ax = bx[m - 1] // 2
            else:
                ax = width[s - 1] + width[s] - bx[s] + abs(shift[s] - shift[s - 1])
            if ax != 0:
                ok = False
                break
        if ok:
            if hits >= out.shape[0]:
                return -1
            out[hits, :] = v
            hits += 1
    return hits


def disjoint_candidates(n: int, labels: Iterable[CurveLabel], cutoff: int) -> list[tuple[int, ...]]:
    """Single curves of norm ``<= cutoff`` disjoint from every given chain curve."""
    m = n - 1
    segs = np.array(sorted({chain_segment(n, x) for x in labels}), dtype=np.int64)
    if 2 * m - 4 <= 0:
        return []
    cap = 1 << 16
    while True:
        out = np.zeros((cap, 2 * m - 4), dtype=np.int64)
        got = _scan_ball(m, cutoff, segs, out)
        if got >= 0:
            break
        cap *= 4
    found = [tuple(int(x) for x in row) for row in out[:got]]
    return sorted(v for v in found if is_single_curve(n, v))


def disjoint_candidates_batch(n: int, labels: Iterable[CurveLabel], cutoff: int) -> list[tuple[int, ...]]:
    """Same as :func:`disjoint_candidates`, by chunked numpy evaluation."""
    m = n - 1
    segs = sorted({chain_segment(n, x) for x in labels})
    found = []
    for rows in _vectors_by_norm(2 * m - 4, cutoff):
        axis = axis_counts_batch(m, rows[:, : m - 2], rows[:, m - 2:])
        keep = rows[(axis[:, segs] == 0).all(axis=1) & rows.any(axis=1)]
        for v in keep:
            v = tuple(int(x) for x in v)
            if is_single_curve(n, v):
                found.append(v)
    return sorted(found)


def verify_unique_determination(n: int, label: CurveLabel, cutoff: int) -> bool:
    """Bounded check: the label's curve is the only curve of norm ``<= cutoff``
    outside the determining set that misses all of it."""
    if cutoff < 1:
        raise ValueError("cutoff must be positive")
    A = determining_set(n, label)
    own = curve_of_label(n, label).coords
    own_A = {curve_of_label(n, x).coords for x in A}
    hits = [v for v in disjoint_candidates(n, A, cutoff) if v not in own_A]
    if sum(abs(x) for x in own) > cutoff:
        return False
    return hits == [own]


# ---------------------------------------------------------------------------
# reconstruction


@dataclass(frozen=True)
class Reconstruction:
    word: BraidWord
    reflected: bool
    explored: int

    def act(self, c: CoordCurve) -> CoordCurve:
        c = c.act(self.word)
        return c.reflect() if self.reflected else c


def _system_key(state) -> tuple[int, bool]:
    total = 0
    all_round = True
    for a, b in state:
        p = axis_profile(a, b)
        total += p.complexity + sum(p.beta)
        all_round &= p.complexity == 2
    return total, all_round


def _relax_system(n: int, start, targets, signs=(1, -1), budget: int = 200000):
    """Best-first search for a word taking ``start`` onto one of ``targets``."""
    import heapq

    m = n - 1
    gens = [s * i for i in range(1, m) for s in signs]
    key, _ = _system_key(start)
    heap = [(key, (), start)]
    seen = {start}
    explored = 0
    while heap:
        key, word, state = heapq.heappop(heap)
        explored += 1
        if state in targets:
            return word, targets[state], explored
        if explored > budget:
            break
        for k in gens:
            nxt = tuple(apply_word((k,), a, b) for a, b in state)
            if nxt in seen:
                continue
            seen.add(nxt)
            heapq.heappush(heap, (_system_key(nxt)[0], word + (k,), nxt))
    raise ReconstructFailed(f"relaxation stalled after {explored} states")


def reconstruct(n: int, images: Mapping[CurveLabel, CoordCurve], pool: Iterable[CurveLabel] | None = None,
                signs=(1, -1)) -> Reconstruction:
    """Find ``h`` with ``h(curve_of_label(l)) = images[l]`` for every label.

    The image system of ``pool`` (default: the chain) is relaxed until it is
    the base system or its reversal by the half twist; the braid is the
    inverse of the relaxing word.  The orientation-reversing mirror fixes
    every curve of the set, so it is tried only if the first branch fails.
    """
    pool = list(pool) if pool is not None else chain_curves(n)
    delta = BraidWord.half_twist_all(n)
    base = base_configuration(n)
    goal = tuple((base[x].a, base[x].b) for x in pool)
    rev = tuple((base[x].act(delta).a, base[x].act(delta).b) for x in pool)
    targets = {goal: False, rev: True}
    last: Exception | None = None
    for reflected in (False, True):
        imgs = {x: (c.reflect() if reflected else c) for x, c in images.items()}
        start = tuple((imgs[x].a, imgs[x].b) for x in pool)
        try:
            word, reversed_, explored = _relax_system(n, start, targets, signs)
        except ReconstructFailed as exc:
            last = exc
            continue
        w = BraidWord(n, word)
        if reversed_:
            w = w * delta.inverse()
        rec = Reconstruction(w.inverse(), reflected, explored)
        if all(rec.act(base[x]) == images[x] for x in images):
            return rec
        last = ReconstructFailed("relaxed system does not match every image")
    raise ReconstructFailed(str(last))


def random_word(n: int, rng: random.Random, max_len: int) -> BraidWord:
    length = rng.randint(0, max_len)
    return BraidWord(n, tuple(rng.choice((1, -1)) * rng.randint(1, n - 2) for _ in range(length)))


def filling_test_set(n: int) -> list[CoordCurve]:
    """The base curves together with a few curves that are not round."""
    extra = [CoordCurve.round(n, 1, 2).act(BraidWord(n, (2, 1))),
             CoordCurve.round(n, 2, 3).act(BraidWord(n, tuple(range(1, n - 1))))]
    return list(base_configuration(n).values()) + extra


def round_trip(n: int, trials: int, max_len: int, seed: int) -> dict:
    """Reconstruct random mapping classes from their action on the set."""
    rng = random.Random(seed)
    base = base_configuration(n)
    rs = build_rigid_set_sphere(n)
    test_set = filling_test_set(n)
    failures = []
    for t in range(trials):
        w = random_word(n, rng, max_len)
        mirror = rng.random() < 0.5
        images = {x: (c.act(w).reflect() if mirror else c.act(w)) for x, c in base.items()}
        try:
            r1 = reconstruct(n, images)
            r2 = reconstruct(n, images, pool=interval_labels(n), signs=(-1, 1))
        except ReconstructFailed as exc:
            failures.append({"trial": t, "word": list(w.letters), "error": str(exc)})
            continue
        exact = all(r1.act(base[x]) == images[x] for x in base)
        agree = all(r1.act(c) == r2.act(c) for c in test_set)
        matrix_kept = all(geometric_intersection(images[x], images[y]) == rs.i(x, y)
                          for x, y in combinations(rs.labels, 2))
        if not (exact and agree and matrix_kept):
            failures.append({"trial": t, "word": list(w.letters), "exact": exact,
                             "agree": agree, "matrix_kept": matrix_kept})
    return {"n": n, "trials": trials, "max_len": max_len, "seed": seed,
            "failures": failures, "passed": not failures}
