"""Rigid sets of surfaces of genus at least two.

The surface is a square-tiled staircase of ``2g`` unit squares.  The chain
curves ``alpha(0)`` .. ``alpha(2g)`` are straight cores of cylinders: the even
ones vertical, the odd ones horizontal.  The last chain curve ``alpha(2g+1)``
has no straight representative and is taken as a boundary component of the
neighbourhood of ``alpha(1) .. alpha(2g-1)``.  Every other curve in the set is
a boundary component of a neighbourhood of curves drawn before it, so the
whole construction is a sequence of calls to
:func:`~rigidset.flat.neighborhood_boundary`.

With punctures the vertical core of square 0 is replaced by ``n + 1`` parallel
copies ``alpha0(0) .. alpha0(n)``, with one puncture between consecutive
copies, and ``alpha0(1)`` plays the role of ``alpha(0)``.

Label families, with ``J`` the cyclic interval ``s .. s+L-1`` mod ``2g+2``:

``alpha(i)``, ``alpha0(j)``
    chain curves
``sep(s, L)``
    the separating boundary of ``N(alpha_J)``, ``L`` even
``bp(s, L, +/-)``
    the bounding pair boundary of ``N(alpha_J)``, ``L`` odd
``tb(j, s, L, +/-)``
    the boundary of the one-holed torus ``N(alpha_j u bp(s, L, +/-))``
``outer(i, j)``
    the disk boundary around the punctures between ``alpha0(i)`` and ``alpha0(j)``
``sepT(l, i, j)``
    the other boundary of ``N(alpha0(i) u alpha0(j) u alpha(l))``, ``l`` in ``{1, 2g+1}``
``bpT(l, i, +/-)``
    the two boundaries of ``N(alpha0(i) u alpha(l) u alpha(l'))`` with ``l'`` the
    chain neighbour of ``l`` other than 0; ``+`` is the one meeting ``alpha0(i-1)``
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

from .core import CurveLabel, DetectCert, NoCertificate, RigidSet, certificate_from_shared, find_detect_cert
from .flat import (Curve, DegenerateDrawing, Origami, Point, curve_word, intersection_number,
                   neighborhood_boundary, same_side, translate_all)
from .simplicial import SurfaceSig

F = Fraction
HALF = F(1, 2)
SIGNS = ("+", "-")


def alpha(i: int) -> CurveLabel:
    return CurveLabel("alpha", (i,))


def alpha0(j: int) -> CurveLabel:
    return CurveLabel("alpha0", (j,))


def sep(s: int, L: int) -> CurveLabel:
    return CurveLabel("sep", (s, L))


def bp(s: int, L: int, sign: str) -> CurveLabel:
    return CurveLabel("bp", (s, L, sign))


def tb(j: int, s: int, L: int, sign: str) -> CurveLabel:
    return CurveLabel("tb", (j, s, L, sign))


def outer(i: int, j: int) -> CurveLabel:
    return CurveLabel("outer", (i, j))


def sep_t(l: int, i: int, j: int) -> CurveLabel:
    return CurveLabel("sepT", (l, i, j))


def bp_t(l: int, i: int, sign: str) -> CurveLabel:
    return CurveLabel("bpT", (l, i, sign))


def interval(g: int, s: int, L: int) -> list[int]:
    m = 2 * g + 2
    return [(s + t) % m for t in range(L)]


def complement_interval(g: int, s: int, L: int) -> tuple[int, int]:
    """The interval ``J'`` with ``N(alpha_J)`` and ``N(alpha_J')`` sharing their boundary."""
    m = 2 * g + 2
    return (s + L + 1) % m, 2 * g - L


def staircase(g: int, punctures: Sequence[Point] = ()) -> Origami:
    """``2g`` squares: horizontal cylinders ``{2k, 2k+1}``, vertical ones ``{2k+1, 2k+2}``."""
    if g < 1:
        raise ValueError("genus must be positive")
    m = 2 * g
    right = [k ^ 1 for k in range(m)]
    up = list(range(m))
    for k in range(1, m - 1, 2):
        up[k], up[k + 1] = k + 1, k
    surf = Origami(right, up, punctures)
    if surf.genus != g:
        raise AssertionError(f"staircase has genus {surf.genus}, expected {g}")
    return surf


def _straight_chain(g: int, copies: int = 1) -> dict[CurveLabel, Curve]:
    """Cores ``alpha(1) .. alpha(2g)`` plus ``copies`` vertical lines in square 0."""
    out = {}
    for k in range(g):
        out[alpha(2 * k + 1)] = Curve(Point(2 * k, F(1, 2 * copies + 6), HALF), ((2, 0),))
    for k in range(1, g):
        out[alpha(2 * k)] = Curve(Point(2 * k - 1, HALF, F(1, 7)), ((0, 2),))
    out[alpha(2 * g)] = Curve(Point(2 * g - 1, HALF, F(1, 7)), ((0, 1),))
    if copies == 1:
        out[alpha(0)] = Curve(Point(0, HALF, F(1, 7)), ((0, 1),))
    else:
        for j in range(copies):
            # above the slits, which stay below the punctures
            out[alpha0(j)] = Curve(Point(0, F(j + 1, copies + 1), F(5, 7)), ((0, 1),))
    return out


@dataclass
class GenusModel:
    """Curves drawn on a staircase, with the bookkeeping of how they arose.

    ``depth`` counts the nested neighbourhood constructions behind a curve;
    offsets shrink by a factor ``2**20`` per level so that a boundary never
    reaches the curves it was built from or their parallel copies.
    """

    sig: SurfaceSig
    surface: Origami
    curves: dict[CurveLabel, Curve] = field(default_factory=dict)
    depth: dict[CurveLabel, int] = field(default_factory=dict)
    aliases: dict[CurveLabel, CurveLabel] = field(default_factory=dict)
    tags: dict[CurveLabel, str] = field(default_factory=dict)
    notes: dict[str, object] = field(default_factory=dict)
    _tick: int = 0

    @property
    def g(self) -> int:
        return self.sig.genus

    @property
    def n(self) -> int:
        return self.sig.punctures

    def add(self, label: CurveLabel, c: Curve, depth: int = 0, tag: str = "") -> None:
        if label in self.curves:
            raise AssertionError(f"{label} drawn twice")
        self.curves[label] = c
        self.depth[label] = depth
        if tag:
            self.tags[label] = tag

    def boundary(self, labels: Sequence[CurveLabel], eps: Fraction | None = None):
        """Essential boundary of ``N(union)`` and the depth of its components."""
        d = 1 + max(self.depth[x] for x in labels)
        if eps is None:
            self._tick += 1
            eps = F(self._tick, 1 << (20 * d))
        comps = neighborhood_boundary(self.surface, [self.curves[x] for x in labels], eps)
        return comps, d

    def i(self, a: CurveLabel, b: CurveLabel) -> int:
        a, b = self.aliases.get(a, a), self.aliases.get(b, b)
        if a == b:
            return 0
        return intersection_number(self.surface, self.curves[a], self.curves[b])

    def word(self, label: CurveLabel) -> list[int]:
        return curve_word(self.surface, self.curves[self.aliases.get(label, label)])

    def side(self, c: Curve, cut: Sequence[CurveLabel], ref: Point) -> str:
        """``+`` when a point of ``c`` lies with ``ref`` in the complement of ``cut``."""
        return "+" if same_side(self.surface, [self.curves[x] for x in cut], c.start, ref) else "-"

    def canonical(self) -> list[CurveLabel]:
        return [x for x in self.curves if x not in self.aliases]


def _expect(comps, count: int, separating: bool, what: str) -> None:
    if len(comps) != count or any(c.separating != separating for c in comps):
        kinds = [("separating" if c.separating else "non-separating") for c in comps]
        raise AssertionError(f"{what}: boundary components {kinds}, expected {count} "
                             f"{'separating' if separating else 'non-separating'}")


def _alias_ok(model: GenusModel, alias: CurveLabel, canon: CurveLabel, probes) -> bool:
    """Cheap isotopy evidence: disjoint, homologous, equal rows against ``probes``."""
    grp = model.surface.group
    if grp.conjugate(model.word(alias), model.word(canon)):
        return True
    if intersection_number(model.surface, model.curves[alias], model.curves[canon]):
        return False
    if grp.homology_mod2(model.word(alias)) != grp.homology_mod2(model.word(canon)):
        return False
    return all(model.i(alias, p) == model.i(canon, p) for p in probes)


def _is_canonical(g: int, s: int, L: int) -> bool:
    s2, L2 = complement_interval(g, s, L)
    return L < L2 or (L == L2 and s < s2)


def _signed(model: GenusModel, comps, depth: int, labels, cut, ref, tag: str) -> None:
    """Name the two components of a bounding pair by their side of ``cut``."""
    sides = {model.side(bc.curve, cut, ref): bc.curve for bc in comps}
    if set(sides) != set(SIGNS):
        raise AssertionError(f"{labels[0]}: both components on one side")
    for sign, lab in zip(SIGNS, labels):
        model.add(lab, sides[sign], depth, tag)


def _last_chain_curve(model: GenusModel) -> None:
    # a coarse offset keeps every later, finer boundary inside its strip
    g = model.g
    comps, _ = model.boundary([alpha(k) for k in range(1, 2 * g)], eps=F(1, 64))
    _expect(comps, 2, False, "neighbourhood of alpha(1..2g-1)")
    model.add(alpha(2 * g + 1), comps[0].curve, 0, "C")


def even_chain(g: int) -> list[CurveLabel]:
    return [alpha(k) for k in range(0, 2 * g + 1, 2)]


def odd_chain(g: int) -> list[CurveLabel]:
    return [alpha(k) for k in range(1, 2 * g + 2, 2)]


# side references: off every even (odd) chain curve and their offsets
REF_EVEN = Point(0, F(1, 4), F(3, 4))
REF_ODD = Point(0, F(3, 4), F(1, 4))


@lru_cache(maxsize=None)
def closed_model(g: int) -> GenusModel:
    if g < 2:
        raise ValueError("closed rigid sets need genus at least 2")
    m = 2 * g + 2
    model = GenusModel(SurfaceSig(g, 0), staircase(g))
    for lab, c in _straight_chain(g).items():
        model.add(lab, c, 0, "C")
    _last_chain_curve(model)
    chain = [alpha(k) for k in range(m)]

    def draw_interval(s: int, L: int) -> None:
        J = [alpha(k) for k in interval(g, s, L)]
        comps, d = model.boundary(J)
        if L % 2 == 0:
            _expect(comps, 1, True, f"N(alpha_J), J = {s}+{L}")
            model.add(sep(s, L), comps[0].curve, d, "S")
        else:
            _expect(comps, 2, False, f"N(alpha_J), J = {s}+{L}")
            cut, ref, part = (even_chain(g), REF_EVEN, "e") if s % 2 == 0 else (odd_chain(g), REF_ODD, "o")
            _signed(model, comps, d, [bp(s, L, x) for x in SIGNS], cut, ref, "B" + part)

    for L in range(2, 2 * g - 1):
        for s in range(m):
            draw_interval(s, L)
    for L in range(2, 2 * g - 1):
        for s in range(m):
            if _is_canonical(g, s, L):
                continue
            s2, L2 = complement_interval(g, s, L)
            pairs = [(sep(s, L), sep(s2, L2))] if L % 2 == 0 else [
                (bp(s, L, x), bp(s2, L2, x)) for x in SIGNS]
            for a, c in pairs:
                if not _alias_ok(model, a, c, chain):
                    raise AssertionError(f"{a} is not isotopic to {c}")
                model.aliases[a] = c
    for lab in [x for x in model.canonical() if x.family == "bp"]:
        s, L, sign = lab.index
        for j in ((s - 1) % m, (s + L) % m):
            comps, d = model.boundary([alpha(j), lab])
            _expect(comps, 1, True, f"N(alpha({j}) u {lab})")
            model.add(tb(j, s, L, sign), comps[0].curve, d, "U")
            s2, L2 = complement_interval(g, s, L)
            model.aliases[tb(j, s2, L2, sign)] = tb(j, s, L, sign)
    return model


_FAMILY_ORDER = ("alpha0", "alpha", "outer", "sepT", "sep", "bpT", "bp", "tb")


def _ordered(labels) -> list[CurveLabel]:
    return sorted(labels, key=lambda x: (_FAMILY_ORDER.index(x.family), x.index))


def oracle_matrix(model: GenusModel, labels, curves=None) -> list[list[int]]:
    curves = curves or model.curves
    surf = model.surface
    m = len(labels)
    rows = [[0] * m for _ in range(m)]
    for i in range(m):
        for j in range(i + 1, m):
            x = intersection_number(surf, curves[labels[i]], curves[labels[j]])
            if x != intersection_number(surf, curves[labels[j]], curves[labels[i]], reverse=True):
                raise AssertionError(f"bigon reduction depends on order for {labels[i]}, {labels[j]}")
            rows[i][j] = rows[j][i] = x
    return rows


def _rigid_set(model: GenusModel) -> RigidSet:
    labels = _ordered(model.canonical())
    m = oracle_matrix(model, labels)
    return RigidSet(model.sig, tuple(labels), tuple(map(tuple, m)), dict(model.aliases))


@lru_cache(maxsize=None)
def build_rigid_set_closed(g: int) -> RigidSet:
    return _rigid_set(closed_model(g))


def redraw_matrix(model: GenusModel, dx: Fraction, dy: Fraction) -> list[list[int]]:
    """Oracle matrix after sliding every canonical curve by ``(dx, dy)``."""
    labels = _ordered(model.canonical())
    moved = dict(zip(labels, translate_all(model.surface, [model.curves[x] for x in labels], dx, dy)))
    return oracle_matrix(model, labels, moved)


# ---------------------------------------------------------------------------
# the two hyperelliptic-type involutions of the closed set


def _flip(sign: str) -> str:
    return "-" if sign == "+" else "+"


def _involution(rs: RigidSet, parity: int) -> dict[CurveLabel, CurveLabel]:
    """Swap the two sides of the even (``parity`` 0) or odd chain."""
    out = {}
    for x in rs.labels:
        if x.family == "bp" and x.index[0] % 2 == parity:
            s, L, sign = x.index
            out[x] = bp(s, L, _flip(sign))
        elif x.family == "tb" and x.index[1] % 2 == parity:
            j, s, L, sign = x.index
            out[x] = tb(j, s, L, _flip(sign))
        else:
            out[x] = x
    return {k: rs.resolve(v) for k, v in out.items()}


def _preserves(rs: RigidSet, p: dict) -> bool:
    return all(rs.i(p[x], p[y]) == rs.i(x, y) for k, x in enumerate(rs.labels) for y in rs.labels[k + 1:])


def stabilizer_check_closed(g: int) -> dict:
    """Realise ``i_e`` and ``i_o`` as label permutations and check the group they make."""
    if g < 3:
        raise ValueError("the involutions act trivially below genus 3")
    rs = build_rigid_set_closed(g)
    ie, io = _involution(rs, 0), _involution(rs, 1)
    ident = {x: x for x in rs.labels}

    def comp(p, q):
        return {x: p[q[x]] for x in rs.labels}

    group = {tuple(sorted(p.items())) for p in (ident, ie, io, comp(ie, io))}
    chain_fixed = all(ie[x] == x and io[x] == x for x in rs.labels if x.family == "alpha")
    moved_e = sum(ie[x] != x for x in rs.labels)
    moved_o = sum(io[x] != x for x in rs.labels)
    report = {
        "g": g,
        "preserves_matrix": {"i_e": _preserves(rs, ie), "i_o": _preserves(rs, io)},
        "involutions": comp(ie, ie) == ident and comp(io, io) == ident,
        "commute": comp(ie, io) == comp(io, ie),
        "chain_fixed": chain_fixed,
        "moved": {"i_e": moved_e, "i_o": moved_o},
        "order": len(group),
    }
    report["passed"] = (all(report["preserves_matrix"].values()) and report["involutions"]
                        and report["commute"] and chain_fixed and report["order"] == 4)
    return report


def partition_bounding_pairs(rs: RigidSet) -> dict[str, list[CurveLabel]]:
    """The four parts ``e+, e-, o+, o-`` of the bounding pair curves.

    A curve of ``bp(s, L, sign)`` lies on the ``sign`` side of the even chain
    when ``s`` is even and of the odd chain otherwise; the sign was fixed by a
    region test when the curve was drawn.
    """
    g = rs.surface.genus
    parts: dict[str, list[CurveLabel]] = {k: [] for k in ("e+", "e-", "o+", "o-")}
    for x in rs.family("bp"):
        s, _, sign = x.index
        key = ("e" if s % 2 == 0 else "o") + sign
        cut = even_chain(g) if s % 2 == 0 else odd_chain(g)
        if any(rs.i(x, c) for c in cut):
            raise AssertionError(f"{x} meets the chain it should avoid")
        parts[key].append(x)
    return parts


# ---------------------------------------------------------------------------
# explicit pants decompositions and certificates, closed surfaces


def _pants_check(rs: RigidSet, p: Sequence[CurveLabel], extra: CurveLabel, what: str) -> list[CurveLabel]:
    p = [rs.resolve(x) for x in p]
    full = set(p) | {rs.resolve(extra)}
    if len(set(p)) != len(p) or len(full) != rs.surface.complexity():
        raise AssertionError(f"{what}: {len(full)} curves, expected {rs.surface.complexity()}")
    for k, x in enumerate(sorted(full)):
        for y in sorted(full)[k + 1:]:
            if rs.i(x, y):
                raise AssertionError(f"{what}: {x} and {y} intersect")
    return p


def interval_stack(g: int, s: int, step: int, sizes) -> list[CurveLabel]:
    """``sep``/``bp`` curves of the nested intervals ``J_k`` for ``k`` in ``sizes``.

    ``J_k`` has ``k + 1`` elements and grows from ``s`` forwards (``step = 1``)
    or backwards (``step = -1``).
    """
    m = 2 * g + 2
    out = []
    for k in sizes:
        start = s % m if step == 1 else (s - k) % m
        if (k + 1) % 2 == 0:
            out.append(sep(start, k + 1))
        else:
            out += [bp(start, k + 1, "-"), bp(start, k + 1, "+")]
    return out


def proof_pants_closed(rs: RigidSet, i: int) -> list[CurveLabel]:
    """Pants decomposition of the complement of ``N(alpha_i u alpha_{i+1})``."""
    g = rs.surface.genus
    m = 2 * g + 2
    p = interval_stack(g, i, 1, range(1, 2 * g - 2)) + [alpha((i - 2) % m)]
    return _pants_check(rs, p, alpha(i % m), f"closed pants for alpha({i}), alpha({i + 1})")


def closed_recipes(rs: RigidSet) -> dict[tuple[CurveLabel, CurveLabel], DetectCert]:
    """Certificates written down from the proof pants, keyed by the pair."""
    g = rs.surface.genus
    m = 2 * g + 2
    out = {}

    def put(a, b, pa, pb):
        a, b = rs.resolve(a), rs.resolve(b)
        out[(a, b)] = DetectCert(a, b, frozenset(rs.resolve(x) for x in pa),
                                 frozenset(rs.resolve(x) for x in pb))

    for i in range(m):
        P = proof_pants_closed(rs, i)
        ai, ai1 = alpha(i), alpha((i + 1) % m)
        put(ai, ai1, P + [ai], P + [ai1])
        for k in range(2, 2 * g - 2):
            nxt = alpha((i + k + 1) % m)
            if k % 2 == 1:
                sj = rs.resolve(sep(i, k + 1))
                put(sj, nxt, P + [ai], [x for x in P if x != sj] + [nxt, ai])
            else:
                for sign in SIGNS:
                    b, other = rs.resolve(bp(i, k + 1, sign)), rs.resolve(bp(i, k + 1, _flip(sign)))
                    mu = tb((i + k + 1) % m, i, k + 1, sign)
                    put(b, nxt, [x for x in P if x != other] + [mu, ai],
                        [x for x in P if x not in (b, other)] + [mu, nxt, ai])
    return out


def proof_named_pairs_closed(rs: RigidSet) -> list[tuple[CurveLabel, CurveLabel]]:
    """Pairs the closed-case argument shows detectable.

    The recipe pairs, plus the intersecting pairs inside each part of the
    bounding pair partition.
    """
    pairs = list(closed_recipes(rs))
    for part in partition_bounding_pairs(rs).values():
        pairs += [(x, y) for k, x in enumerate(part) for y in part[k + 1:] if rs.i(x, y)]
    return pairs


# ---------------------------------------------------------------------------
# punctured surfaces


def puncture_points(n: int) -> list[Point]:
    """Puncture ``k`` sits between ``alpha0(k-1)`` and ``alpha0(k)``."""
    return [Point(0, F(2 * k + 1, 2 * (n + 2)), F(1, 4)) for k in range(1, n + 1)]


def chain_label(model: GenusModel, k: int) -> CurveLabel:
    """``alpha_k`` of the cyclic chain; index 0 is ``alpha0(1)`` when punctured."""
    k %= 2 * model.g + 2
    return alpha0(1) if k == 0 and model.n else alpha(k)


class _Dedupe:
    """Exact isotopy classes in the free fundamental group of a punctured surface."""

    def __init__(self, model: GenusModel) -> None:
        self.model = model
        self.found: list[tuple[CurveLabel, list[int]]] = [(x, model.word(x)) for x in model.curves]

    def add(self, label: CurveLabel, c: Curve, depth: int, tag: str) -> CurveLabel:
        grp = self.model.surface.group
        w = curve_word(self.model.surface, c)
        for other, v in self.found:
            if grp.conjugate(w, v):
                self.model.aliases[label] = other
                self.model.tags.setdefault(label, tag)
                return other
        self.model.add(label, c, depth, tag)
        self.found.append((label, w))
        return label


def _split_by_meeting(model: GenusModel, comps, probe: CurveLabel):
    meet = [bc for bc in comps if intersection_number(model.surface, bc.curve, model.curves[probe])]
    miss = [bc for bc in comps if bc not in meet]
    return meet, miss


@lru_cache(maxsize=None)
def punctured_model(g: int, n: int) -> GenusModel:
    if g < 2 or n < 1:
        raise ValueError("punctured rigid sets need genus >= 2 and at least one puncture")
    m = 2 * g + 2
    model = GenusModel(SurfaceSig(g, n), staircase(g, puncture_points(n)))
    for lab, c in _straight_chain(g, n + 1).items():
        model.add(lab, c, 0, "C")
    _last_chain_curve(model)
    top = alpha(2 * g + 1)
    for j in range(n + 1):
        if model.i(alpha0(j), top) != 1:
            raise AssertionError(f"alpha({top}) meets alpha0({j}) {model.i(alpha0(j), top)} times")
    dd = _Dedupe(model)

    # outer curves and the separating curves of the torus comparison
    for l, other in ((1, 2 * g + 1), (2 * g + 1, 1)):
        for i in range(n + 1):
            for j in range(i, n + 1):
                union = [alpha0(i), alpha(l)] + ([alpha0(j)] if j > i else [])
                comps, d = model.boundary(union)
                want = 2 if j - i >= 2 else 1
                _expect(comps, want, True, f"N_{l}^({i},{j})")
                hit, miss = _split_by_meeting(model, comps, alpha(other))
                if j - i >= 2:
                    if len(miss) != 1:
                        raise AssertionError(f"N_{l}^({i},{j}): no boundary misses alpha({other})")
                    if l == 1:
                        dd.add(outer(i, j), miss[0].curve, d, "O")
                    elif not model.surface.group.conjugate(curve_word(model.surface, miss[0].curve),
                                                            model.word(outer(i, j))):
                        raise AssertionError(f"epsilon^({i},{j}) differs for the two ends of the chain")
                    comps = hit
                dd.add(sep_t(l, i, j), comps[0].curve, d, "S_T")

    # separating curves of the closed comparison
    for L in range(2, 2 * g + 1, 2):
        if L == 2 * g and n == 1:
            continue
        for s in range(m):
            comps, d = model.boundary([chain_label(model, k) for k in interval(g, s, L)])
            _expect(comps, 1, True, f"N(alpha_J), J = {s}+{L}")
            dd.add(sep(s, L), comps[0].curve, d, "S_0")

    # bounding pairs next to alpha0(i): + meets alpha0(i-1)
    for l, l2 in ((1, 2), (2 * g + 1, 2 * g)):
        for i in range(1, n + 1):
            comps, d = model.boundary([alpha0(i), alpha(l), alpha(l2)])
            _expect(comps, 2, False, f"N(alpha0({i}) u alpha({l}) u alpha({l2}))")
            hit, miss = _split_by_meeting(model, comps, alpha0(i - 1))
            if len(hit) != 1:
                raise AssertionError(f"bpT({l},{i}): {len(hit)} components meet alpha0({i - 1})")
            dd.add(bp_t(l, i, "+"), hit[0].curve, d, "B_T")
            dd.add(bp_t(l, i, "-"), miss[0].curve, d, "B_T")

    # bounding pairs of even-ended intervals, + on the side of puncture 1
    cut = [chain_label(model, k) for k in range(0, 2 * g + 1, 2)]
    ref = Point(0, puncture_points(n)[0].x, F(3, 8))
    for L in range(3, 2 * g, 2):
        for s in range(0, m, 2):
            comps, d = model.boundary([chain_label(model, k) for k in interval(g, s, L)])
            _expect(comps, 2, False, f"N(alpha_J), J = {s}+{L}")
            sides = {model.side(bc.curve, cut, ref): bc.curve for bc in comps}
            if set(sides) != set(SIGNS):
                raise AssertionError(f"bp({s},{L}): both components on one side")
            for sign in SIGNS:
                dd.add(bp(s, L, sign), sides[sign], d, "B_0")

    # one-holed tori
    for lab in [x for x in list(model.curves) if x.family == "bp"]:
        s, L, sign = lab.index
        for j in ((s - 1) % m, (s + L) % m):
            comps, d = model.boundary([chain_label(model, j), lab])
            _expect(comps, 1, True, f"N(alpha({j}) u {lab})")
            dd.add(tb(j, s, L, sign), comps[0].curve, d, "U")
    return model


@lru_cache(maxsize=None)
def build_rigid_set_punctured(g: int, n: int) -> RigidSet:
    return _rigid_set(punctured_model(g, n))


def build_rigid_set_genus(g: int, n: int = 0) -> RigidSet:
    return build_rigid_set_closed(g) if n == 0 else build_rigid_set_punctured(g, n)


def torus_dictionary(g: int, n: int, l: int = 1) -> dict[CurveLabel, CurveLabel]:
    """Torus labels of ``S_{1,n+1}`` against the curves cut off by ``sepT(l, 0, n)``.

    ``alpha0(j)`` is the torus ``alpha(j+1)`` and ``alpha(l)`` its ``beta``;
    the puncture ``n + 1`` of the torus is the cut.
    """
    from . import torus as T
    out = {T.alpha(j + 1): alpha0(j) for j in range(n + 1)}
    out[T.beta()] = alpha(l)
    for i in range(n + 1):
        for j in range(i, n + 1):
            if j - i >= 2:
                out[T.outer(i + 1, j - i)] = outer(i, j)
            if (i, j) != (0, n):
                out[T.outer(j + 1, n + 1 - (j - i))] = sep_t(l, i, j)
    return out


def s_left_check(g: int, n: int, l: int = 1) -> dict:
    """The curves on the punctured side of ``sepT(l, 0, n)`` against the torus oracle."""
    from . import torus as T
    rs = build_rigid_set_punctured(g, n)
    cut = sep_t(l, 0, n)
    d = torus_dictionary(g, n, l)
    tl = T.matrix_labels(n + 1)
    problems = []
    if set(d) != set(tl):
        problems.append("dictionary does not cover the torus labels")
    # the chain curves on the punctured side fill it
    filling = [alpha0(j) for j in range(n + 1)] + [alpha(l)]
    side = [x for x in rs.labels if x.family in ("alpha0", "alpha", "outer", "sepT")
            and x != rs.resolve(cut) and rs.i(x, cut) == 0
            and (x in filling or any(rs.i(x, f) for f in filling))]
    images = {rs.resolve(x) for x in d.values()}
    if len(images) != len(d):
        problems.append("two torus labels land on one curve")
    if set(side) != images:
        problems.append(f"curves on the punctured side: {sorted(map(str, set(side) ^ images))} differ")
    tm = T.oracle_matrix(T.drawn_torus(n + 1), tl)
    mismatches = [(str(a), str(b)) for x, a in enumerate(tl) for y, b in enumerate(tl)
                  if x < y and tm[x][y] != rs.i(d[a], d[b])]
    if mismatches:
        problems.append(f"{len(mismatches)} entries differ, first {mismatches[0]}")
    return {"g": g, "n": n, "l": l, "labels": len(tl), "mismatches": len(mismatches),
            "problems": problems, "passed": not problems}


def _stack_punctured(rs: RigidSet, s: int, step: int, sizes) -> list[CurveLabel]:
    g = rs.surface.genus
    return [rs.resolve(x) for x in interval_stack(g, s, step, sizes)]


def _left_pants(rs: RigidSet, l: int, avoid) -> list[CurveLabel]:
    """Disjoint outer curves of the torus side of ``sepT(l, 0, n)``, chosen greedily."""
    g, n = rs.surface.genus, rs.surface.punctures
    pool = [rs.resolve(x) for x in torus_dictionary(g, n, l).values()
            if x.family in ("outer", "sepT")]
    chosen: list[CurveLabel] = []
    for x in pool:
        if x not in chosen and x not in avoid and all(rs.i(x, y) == 0 for y in list(avoid) + chosen):
            chosen.append(x)
    return chosen


def proof_pants_punctured(rs: RigidSet, a: CurveLabel, b: CurveLabel) -> list[CurveLabel]:
    """Pants decomposition of the complement of ``N(a u b)`` for consecutive chain curves.

    Consecutive ``alpha(j), alpha(j+1)`` grow the nested intervals away from
    the copies of ``alpha_0`` and close up with outer curves.  A copy
    ``alpha0(i)`` with ``alpha(1)`` or ``alpha(2g+1)`` is split along
    ``sepT(l, 0, n)``: nested intervals on the far side, torus outer curves on
    the side of the punctures.
    """
    g, n = rs.surface.genus, rs.surface.punctures
    top = 2 * g + 1
    what = f"pants for {a}, {b}"
    if a.family == "alpha0" or b.family == "alpha0":
        copy, other = (a, b) if a.family == "alpha0" else (b, a)
        l = other.index[0]
        if other.family != "alpha" or l not in (1, top):
            raise ValueError(f"{what}: copy case needs alpha(1) or alpha({top})")
        if l == 1:
            right = _stack_punctured(rs, 2 * g, -1, range(1, 2 * g - 3)) + [rs.resolve(sep(3, 2 * g - 2)),
                                                                          alpha(2 * g)]
        else:
            right = _stack_punctured(rs, 2, 1, range(1, 2 * g - 3)) + [rs.resolve(sep(2, 2 * g - 2)),
                                                                     alpha(2)]
        p = right + _left_pants(rs, l, right + [copy, other])
        return _pants_check(rs, p, copy, what)
    if not (a.family == b.family == "alpha" and abs(a.index[0] - b.index[0]) == 1):
        raise ValueError(f"{what}: not a consecutive chain pair")
    j = min(a.index[0], b.index[0])
    last = 2 * g - 1 if n >= 2 else 2 * g - 2
    if j % 2 == 0:
        p = _stack_punctured(rs, j, 1, range(1, last + 1))
    else:
        p = _stack_punctured(rs, j + 1, -1, range(1, last + 1))
    p += [outer(i, n) for i in range(1, n - 1)]
    return _pants_check(rs, p, alpha(j), what)


def proof_pants(rs: RigidSet, a: CurveLabel, b: CurveLabel) -> list[CurveLabel]:
    """The explicit ``P`` with ``P u {a}`` and ``P u {b}`` pants decompositions."""
    if rs.surface.punctures:
        return proof_pants_punctured(rs, a, b)
    g = rs.surface.genus
    m = 2 * g + 2
    if a.family != "alpha" or b.family != "alpha" or (b.index[0] - a.index[0]) % m not in (1, m - 1):
        raise ValueError(f"{a}, {b}: not consecutive chain curves")
    i = a.index[0] if (b.index[0] - a.index[0]) % m == 1 else b.index[0]
    return proof_pants_closed(rs, i)


def _put(out: dict, rs: RigidSet, a, b, pa, pb) -> None:
    a, b = rs.resolve(a), rs.resolve(b)
    out[(a, b)] = DetectCert(a, b, frozenset(rs.resolve(x) for x in pa), frozenset(rs.resolve(x) for x in pb))


def _stack_claims(out: dict, rs: RigidSet, P, anchor: CurveLabel, s: int, step: int, sizes) -> None:
    """Certificates for a nested-interval curve against the next chain curve.

    ``P u {anchor}`` is a pants decomposition.  A separating ``sigma_{J_k}``
    is swapped for the chain curve just past ``J_k``; a bounding pair curve is
    swapped after trading its partner for the one-holed torus curve.
    """
    g = rs.surface.genus
    m = 2 * g + 2
    model_like = rs.surface.punctures
    for k in sizes:
        start = s % m if step == 1 else (s - k) % m
        j = (s + step * (k + 1)) % m
        nxt = alpha0(1) if (j == 0 and model_like) else alpha(j)
        if (k + 1) % 2 == 0:
            sj = rs.resolve(sep(start, k + 1))
            if sj.family in ("alpha", "alpha0") or sj not in P or not rs.i(sj, nxt):
                continue
            _put(out, rs, sj, nxt, P + [anchor], [x for x in P if x != sj] + [nxt, anchor])
        else:
            for sign in SIGNS:
                b, other = rs.resolve(bp(start, k + 1, sign)), rs.resolve(bp(start, k + 1, _flip(sign)))
                mu = tb(j, start, k + 1, sign)
                if (b.family in ("alpha", "alpha0") or b not in P or mu not in rs or not rs.i(b, nxt)):
                    continue
                _put(out, rs, b, nxt, [x for x in P if x != other] + [mu, anchor],
                     [x for x in P if x not in (b, other)] + [mu, nxt, anchor])


def punctured_recipes(rs: RigidSet) -> dict[tuple[CurveLabel, CurveLabel], DetectCert]:
    g, n = rs.surface.genus, rs.surface.punctures
    top = 2 * g + 1
    out: dict = {}
    last = 2 * g - 1 if n >= 2 else 2 * g - 2
    for j in range(1, 2 * g + 1):
        a, b = alpha(j), alpha(j + 1)
        P = proof_pants_punctured(rs, a, b)
        _put(out, rs, a, b, P + [a], P + [b])
        if j % 2 == 0:
            _stack_claims(out, rs, P, a, j, 1, range(2, last + 1))
        else:
            _stack_claims(out, rs, P, b, j + 1, -1, range(2, last + 1))
    for i in range(n + 1):
        for l in (1, top):
            a, b = alpha0(i), alpha(l)
            P = proof_pants_punctured(rs, a, b)
            _put(out, rs, a, b, P + [a], P + [b])
            if l == 1:
                _stack_claims(out, rs, P, a, 2 * g, -1, range(2, 2 * g - 3))
            else:
                _stack_claims(out, rs, P, a, 2, 1, range(2, 2 * g - 3))
    return out


def proof_named_pairs_punctured(rs: RigidSet) -> dict[str, list[tuple[CurveLabel, CurveLabel]]]:
    """Pairs the punctured-case argument shows detectable, grouped by kind."""
    g, n = rs.surface.genus, rs.surface.punctures
    top = 2 * g + 1
    outers = rs.family("outer")
    torus_side = outers + rs.family("sepT")
    groups = {"recipe": list(punctured_recipes(rs))}
    groups["outer-outer"] = [(x, y) for k, x in enumerate(outers) for y in outers[k + 1:] if rs.i(x, y)]
    groups["copy-outer"] = [(alpha0(j), x) for j in range(n + 1) for x in torus_side if rs.i(alpha0(j), x)]
    groups["bridge"] = [(rs.resolve(sep_t(l, 0, n)), rs.resolve(bp_t(l, i, sign)))
                        for l in (1, top) for i in range(1, n + 1) for sign in SIGNS
                        if rs.i(sep_t(l, 0, n), bp_t(l, i, sign))]
    return groups


def find_detect_cert_genus(rs: RigidSet, a: CurveLabel, b: CurveLabel) -> DetectCert:
    """Certificate from the proof recipe when there is one, else by search."""
    a, b = rs.resolve(a), rs.resolve(b)
    recipes = punctured_recipes(rs) if rs.surface.punctures else closed_recipes(rs)
    cert = recipes.get((a, b)) or recipes.get((b, a))
    if cert is None or not cert.is_valid(rs):
        cert = find_detect_cert(rs, a, b)
    if not cert.is_valid(rs):
        raise NoCertificate(f"{a}, {b}: " + "; ".join(cert.problems(rs)))
    return cert


def detect_report_genus(rs: RigidSet) -> dict:
    if rs.surface.punctures:
        recipes = punctured_recipes(rs)
        groups = proof_named_pairs_punctured(rs)
    else:
        recipes = closed_recipes(rs)
        groups = {"recipe": list(recipes), "partition": proof_named_pairs_closed(rs)[len(recipes):]}
    counts, failed = {}, []
    recipe_ok = fallback = 0
    for kind, pairs in groups.items():
        counts[kind] = len(pairs)
        for a, b in pairs:
            cert = recipes.get((a, b))
            if cert is not None and cert.is_valid(rs):
                recipe_ok += 1
                continue
            try:
                find_detect_cert(rs, a, b)
                fallback += 1
            except NoCertificate:
                failed.append(f"{kind}: {a}|{b}")
    return {"g": rs.surface.genus, "n": rs.surface.punctures, "pairs": counts,
            "recipe": recipe_ok, "fallback": fallback, "failed": failed, "passed": not failed}
