"""The rigid set of the n-punctured torus, n >= 3.

The torus is the unit square with opposite sides glued and punctures on the
horizontal mid-line.  Chain curves are the vertical lines ``alpha(i)``, with
puncture ``i`` between ``alpha(i)`` and ``alpha(i+1)``, and the horizontal
line ``beta()``.  Outer curves are computed, not written down: they are the
essential boundary components of neighbourhoods of connected unions of chain
curves.  Each turns out to bound a disk around a cyclic run of punctures and
is named ``outer(start, length)`` after it.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations

from .core import CurveLabel, DetectCert, NoCertificate, RigidSet, certificate_from_shared, find_detect_cert
from .dynnikov import CoordCurve, geometric_intersection
from .flat import (Curve, Origami, Point, curve_word, intersection_number, neighborhood_boundary,
                   same_side, translate_all)
from .simplicial import SurfaceSig
from .sphere import PunctureInterval, disjoint_candidates

F = Fraction
EPS_UNIT = F(1, 1 << 20)


def alpha(i: int) -> CurveLabel:
    return CurveLabel("alpha", (i,))


def beta() -> CurveLabel:
    return CurveLabel("beta", ())


def outer(start: int, length: int) -> CurveLabel:
    return CurveLabel("outer", (start, length))


@dataclass
class TorusModel:
    n: int
    surface: Origami
    curves: dict[CurveLabel, Curve]

    def punctures(self) -> list[Point]:
        return list(self.surface.punctures)

    def inside(self, label: CurveLabel) -> frozenset[int]:
        """Punctures on the side of an outer curve away from ``beta``."""
        return self.inside_curve(self.curves[label])

    def inside_curve(self, c: Curve) -> frozenset[int]:
        ref = self.curves[beta()].start
        return frozenset(k + 1 for k, p in enumerate(self.punctures())
                         if not same_side(self.surface, c, ref, p))


def chain_polylines(n: int) -> tuple[Origami, dict[CurveLabel, Curve]]:
    surf = Origami.torus([Point(0, F(2 * i - 1, 2 * n), F(1, 2)) for i in range(1, n + 1)])
    curves = {alpha(i): Curve(Point(0, F(i - 1, n) + F(1, 4 * n), F(1, 7)), ((0, 1),))
              for i in range(1, n + 1)}
    # y = 1/3 keeps the chain crossings off the slits
    curves[beta()] = Curve(Point(0, F(1, 8 * n), F(1, 3)), ((1, 0),))
    return surf, curves


def _label_outer(n: int, hits: set[int], inside: frozenset[int]) -> CurveLabel:
    L = len(inside)
    starts = [s for s in range(1, n + 1) if s not in hits and (s % n) + 1 in hits]
    if L < 2 or len(starts) != 1:
        raise AssertionError(f"unexpected outer curve: hits {sorted(hits)}, inside {sorted(inside)}")
    s = starts[0]
    want = frozenset((s - 1 + t) % n + 1 for t in range(L))
    if want != inside or hits != {(s + t - 1) % n + 1 for t in range(1, L)}:
        raise AssertionError(f"outer curve does not bound the run {sorted(want)}")
    return outer(s, L)


def torus_model(n: int) -> TorusModel:
    """Chain curves plus every outer curve, deduplicated by free homotopy."""
    if n < 3:
        raise ValueError("the torus construction needs n >= 3 (n <= 2: see farey and sphere)")
    return drawn_torus(n)


@lru_cache(maxsize=None)
def drawn_torus(n: int) -> TorusModel:
    """The drawing behind :func:`torus_model`, also valid for two punctures."""
    if n < 2:
        raise ValueError("need at least two punctures")
    surf, curves = chain_polylines(n)
    grp = surf.group
    alphas = [alpha(i) for i in range(1, n + 1)]
    found: list[Curve] = []
    tick = 0
    for k in range(1, n + 1):
        for sub in combinations(alphas, k):
            tick += 1
            union = [curves[beta()]] + [curves[x] for x in sub]
            for bc in neighborhood_boundary(surf, union, tick * EPS_UNIT):
                w = curve_word(surf, bc.curve)
                if not any(grp.conjugate(w, curve_word(surf, c)) for c in found):
                    found.append(bc.curve)
    model = TorusModel(n, surf, curves)
    for c in found:
        hits = {i for i in range(1, n + 1) if intersection_number(surf, curves[alpha(i)], c)}
        lab = _label_outer(n, hits, model.inside_curve(c))
        if lab in model.curves:
            raise AssertionError(f"two outer curves named {lab}")
        model.curves[lab] = c
    return model


def polyline_intersection(surf: Origami, a: Curve, b: Curve) -> int:
    """Geometric intersection number; both bigon scan orders must agree."""
    x, y = intersection_number(surf, a, b), intersection_number(surf, a, b, reverse=True)
    if x != y:
        raise AssertionError(f"bigon reduction depends on order: {x} vs {y}")
    return x


def matrix_labels(n: int) -> list[CurveLabel]:
    return ([alpha(i) for i in range(1, n + 1)] + [beta()]
            + [outer(s, L) for L in range(2, n + 1) for s in range(1, n + 1)])


def oracle_matrix(model: TorusModel, labels, curves=None) -> list[list[int]]:
    curves = curves or model.curves
    m = len(labels)
    rows = [[0] * m for _ in range(m)]
    for i in range(m):
        for j in range(i + 1, m):
            rows[i][j] = rows[j][i] = polyline_intersection(model.surface, curves[labels[i]],
                                                            curves[labels[j]])
    return rows


@lru_cache(maxsize=None)
def build_rigid_set_torus(n: int) -> RigidSet:
    model = torus_model(n)
    labels = matrix_labels(n)
    if set(labels) != set(model.curves):
        raise AssertionError("outer curves are not the n(n-1) cyclic runs")
    m = oracle_matrix(model, labels)
    return RigidSet(SurfaceSig(1, n), tuple(labels), tuple(map(tuple, m)))


def redraw_matrix(n: int, dx: Fraction, dy: Fraction) -> list[list[int]]:
    """Oracle matrix after sliding every curve by ``(dx, dy)``."""
    model = torus_model(n)
    labels = matrix_labels(n)
    moved = dict(zip(labels, translate_all(model.surface, [model.curves[x] for x in labels], dx, dy)))
    return oracle_matrix(model, labels, moved)


def outer_partition(rs: RigidSet) -> dict[int, list[CurveLabel]]:
    """Outer curves grouped by the number of punctures in the disk they bound."""
    model = torus_model(rs.surface.punctures)
    out: dict[int, list[CurveLabel]] = {}
    for lab in rs.family("outer"):
        out.setdefault(len(model.inside(lab)), []).append(lab)
    return dict(sorted(out.items()))


# ---------------------------------------------------------------------------
# detectability


def _greedy(rs: RigidSet, pool, avoid) -> list[CurveLabel]:
    chosen: list[CurveLabel] = []
    for x in pool:
        if x in avoid:
            continue
        if all(rs.i(x, y) == 0 for y in list(avoid) + chosen):
            chosen.append(x)
    return chosen


def recipe_cert(rs: RigidSet, a: CurveLabel, b: CurveLabel) -> DetectCert | None:
    """Pants decomposition of the complement of ``a`` and ``b`` built greedily.

    For two chain curves: a maximal family of disjoint outer curves missing
    both.  Otherwise: a maximal family of chain curves missing both, then
    outer curves missing those too.
    """
    chain = rs.family("alpha") + rs.family("beta")
    outers = rs.family("outer")
    if a in chain and b in chain:
        shared = _greedy(rs, outers, [a, b])
    else:
        first = _greedy(rs, chain, [a, b])
        shared = first + _greedy(rs, outers, [a, b] + first)
    cert = certificate_from_shared(a, b, shared)
    return cert if cert.is_valid(rs) else None


def find_detect_cert_torus(rs: RigidSet, a: CurveLabel, b: CurveLabel) -> DetectCert:
    if not 0 < rs.i(a, b) <= 2:
        raise ValueError(f"i({a}, {b}) = {rs.i(a, b)} is outside 1..2")
    cert = recipe_cert(rs, a, b)
    if cert is None:
        cert = find_detect_cert(rs, a, b)
    if not cert.is_valid(rs):
        raise NoCertificate(f"{a}, {b}: " + "; ".join(cert.problems(rs)))
    return cert


def detect_report(rs: RigidSet) -> dict:
    pairs = [(x, y) for k, x in enumerate(rs.labels) for y in rs.labels[k + 1:] if 0 < rs.i(x, y) <= 2]
    recipe, fallback, failed = 0, 0, []
    for x, y in pairs:
        if recipe_cert(rs, x, y) is not None:
            recipe += 1
            continue
        try:
            find_detect_cert_torus(rs, x, y)
            fallback += 1
        except NoCertificate:
            failed.append(f"{x}|{y}")
    return {"n": rs.surface.punctures, "pairs": len(pairs), "recipe": recipe,
            "fallback": fallback, "failed": failed, "passed": not failed}


# ---------------------------------------------------------------------------
# determination of outer curves


@lru_cache(maxsize=None)
def disk_has_no_free_curve(k: int, cutoff: int) -> bool:
    """Bounded check in a disk with ``k`` punctures.

    No essential curve of norm ``<= cutoff`` misses every round curve around
    ``2..k-1`` consecutive punctures.  The disk is the sphere with ``k + 1``
    punctures of the coordinate model, its boundary being the extra one.
    """
    if k <= 2:
        return True     # a twice-punctured disk carries no essential curve
    m = k
    pairs = [PunctureInterval(k + 1, i, 2).label for i in range(1, k)]
    cands = disjoint_candidates(k + 1, pairs, cutoff)
    rounds = [CoordCurve.round(k + 1, j, j + L - 1) for L in range(3, k) for j in range(1, m - L + 2)]
    free = [v for v in cands
            if all(geometric_intersection(CoordCurve(k + 1, v), r) == 0 for r in rounds)]
    return not free


def determining_set(rs: RigidSet, label: CurveLabel) -> list[CurveLabel]:
    """Curves of lower level (chain curves count as level one) missing ``label``."""
    model = torus_model(rs.surface.punctures)
    level = {x: len(model.inside(x)) for x in rs.family("outer")}
    k = level[label]
    return [x for x in rs.labels if x != label and rs.i(x, label) == 0 and level.get(x, 1) < k]


def verify_determination_chain(rs: RigidSet, cutoff: int) -> dict:
    """Check that each outer curve is pinned down by the curves below it.

    For ``delta`` around the run ``I`` of ``k`` punctures, its determining
    set must contain ``beta``, every ``alpha`` missing the run, and the outer
    curves around shorter runs inside ``I``.  The first two cut the surface
    down to a disk with the punctures of ``I`` whose boundary is ``delta``;
    the last must leave no further curve in that disk, which is checked up to
    ``cutoff``.
    """
    if cutoff < 1:
        raise ValueError("cutoff must be positive")
    n = rs.surface.punctures
    problems: list[str] = []
    sizes = {}
    for lab in rs.family("outer"):
        s, k = lab.index
        run = [(s - 1 + t) % n + 1 for t in range(k)]
        B = set(determining_set(rs, lab))
        need = {beta()} | {alpha(i) for i in range(1, n + 1)
                           if i not in run[1:]}
        need |= {outer(run[j], L) for L in range(2, k) for j in range(k - L + 1)}
        if not need <= B:
            problems.append(f"{lab}: missing {sorted(map(str, need - B))}")
        if k == 2 and len(B & set(rs.family("alpha") + rs.family("beta"))) != n:
            problems.append(f"{lab}: chain part of the determining set has the wrong size")
        sizes[str(lab)] = len(B)
    disks = {k: disk_has_no_free_curve(k, cutoff) for k in range(2, n + 1)}
    for k, ok in disks.items():
        if not ok:
            problems.append(f"a disk with {k} punctures carries a curve missing all shorter runs")
    return {"n": n, "cutoff": cutoff, "determining_set_sizes": sizes,
            "disk_checks": {str(k): v for k, v in disks.items()},
            "problems": problems, "passed": not problems}
