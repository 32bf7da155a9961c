"""Finite simplicial complexes, vertex maps and exact integral homology.

Vertices are dense integers ``0..N-1``; ``labels[i]`` is the caller's name for
vertex ``i``.  Facets are stored as sorted tuples, and the facet list is
sorted, so every derived quantity is deterministic.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations
from typing import Any, Callable, Hashable, Iterable, Sequence


@dataclass(frozen=True)
class SurfaceSig:
    """Orientable surface of genus ``genus`` with ``punctures`` punctures."""

    genus: int
    punctures: int

    def __post_init__(self) -> None:
        if self.genus < 0 or self.punctures < 0:
            raise ValueError("genus and puncture count must be non-negative")

    def complexity(self) -> int:
        return 3 * self.genus - 3 + self.punctures

    def farey_case(self) -> bool:
        return (self.genus, self.punctures) in {(1, 1), (0, 4), (1, 0)}

    def to_json(self) -> dict[str, int]:
        return {"g": self.genus, "n": self.punctures}


@dataclass(frozen=True)
class SimplicialComplex:
    labels: tuple[Hashable, ...]
    facets: tuple[tuple[int, ...], ...]
    flag: bool = False
    _index: dict = field(default=None, compare=False, repr=False)

    def __post_init__(self) -> None:
        facets = sorted({tuple(sorted(f)) for f in self.facets})
        sets = [frozenset(f) for f in facets]
        for i, s in enumerate(sets):
            if not s:
                raise ValueError("empty facet")
            for j, t in enumerate(sets):
                if i != j and s < t:
                    raise ValueError(f"facet {facets[i]} lies inside {facets[j]}")
        used = set().union(*sets) if sets else set()
        if used != set(range(len(self.labels))):
            raise ValueError("every vertex must lie in a facet, and facets use only known vertices")
        object.__setattr__(self, "facets", tuple(facets))
        object.__setattr__(self, "_index", {lab: i for i, lab in enumerate(self.labels)})
        if len(self._index) != len(self.labels):
            raise ValueError("duplicate vertex labels")

    # basic queries

    @property
    def vertex_count(self) -> int:
        return len(self.labels)

    def index(self, label: Hashable) -> int:
        try:
            return self._index[label]
        except KeyError:
            raise KeyError(f"{label!r} is not a vertex") from None

    def dimension(self) -> int:
        return max((len(f) for f in self.facets), default=0) - 1

    def is_pure(self) -> bool:
        return len({len(f) for f in self.facets}) <= 1

    @cached_property
    def _faces(self) -> dict[int, tuple[tuple[int, ...], ...]]:
        by_dim: dict[int, set[tuple[int, ...]]] = {}
        for f in self.facets:
            for k in range(1, len(f) + 1):
                by_dim.setdefault(k - 1, set()).update(combinations(f, k))
        return {d: tuple(sorted(s)) for d, s in by_dim.items()}

    def faces(self, dim: int) -> tuple[tuple[int, ...], ...]:
        """All simplices of dimension ``dim`` as sorted index tuples."""
        return self._faces.get(dim, ())

    def face_counts(self) -> list[int]:
        return [len(self.faces(d)) for d in range(self.dimension() + 1)]

    def is_simplex(self, vertices: Iterable[int]) -> bool:
        s = set(vertices)
        return any(s <= set(f) for f in self.facets)

    def euler_characteristic(self) -> int:
        return sum((-1) ** d * c for d, c in enumerate(self.face_counts()))

    def edges(self) -> set[frozenset[int]]:
        return {frozenset(e) for e in self.faces(1)}

    def star(self, v: int) -> set[int]:
        """Vertex set of the closed star of ``v``."""
        out = {v}
        for f in self.facets:
            if v in f:
                out.update(f)
        return out

    def link(self, label: Hashable) -> "SimplicialComplex":
        """Link of a vertex, as a complex on the remaining labels."""
        v = self.index(label)
        pieces = {tuple(x for x in f if x != v) for f in self.facets if v in f}
        pieces.discard(())
        verts = sorted(set().union(*map(set, pieces))) if pieces else []
        renum = {x: i for i, x in enumerate(verts)}
        maximal = [p for p in pieces if not any(set(p) < set(q) for q in pieces)]
        return SimplicialComplex(
            tuple(self.labels[x] for x in verts),
            tuple(tuple(renum[x] for x in p) for p in maximal),
            flag=self.flag,
        )

    def full_subcomplex(self, labels: Iterable[Hashable]) -> "SimplicialComplex":
        keep = sorted(self.index(x) for x in set(labels))
        keep_set = set(keep)
        pieces = {tuple(x for x in f if x in keep_set) for f in self.facets}
        pieces.discard(())
        maximal = [p for p in pieces if not any(set(p) < set(q) for q in pieces)]
        renum = {x: i for i, x in enumerate(keep)}
        return SimplicialComplex(
            tuple(self.labels[x] for x in keep),
            tuple(tuple(renum[x] for x in p) for p in maximal),
            flag=self.flag,
        )

    def cone(self, apex: Hashable = "apex") -> "SimplicialComplex":
        n = len(self.labels)
        facets = tuple(f + (n,) for f in self.facets) or ((n,),)
        return SimplicialComplex(self.labels + (apex,), facets)

    def minimal_nonfaces(self, max_size: int | None = None) -> list[tuple[int, ...]]:
        """Non-simplices all of whose proper faces are simplices."""
        top = (self.dimension() + 2) if max_size is None else max_size
        out = []
        for k in range(2, top + 1):
            lower = set(self.faces(k - 2))
            for cand in combinations(range(self.vertex_count), k):
                if all(sub in lower for sub in combinations(cand, k - 1)) and not self.is_simplex(cand):
                    out.append(cand)
        return out

    # serialisation

    def to_json(self) -> str:
        doc = {"vertices": [_jsonable(x) for x in self.labels],
               "facets": [list(f) for f in self.facets]}
        return json.dumps(doc, sort_keys=True, separators=(",", ":"))

    @classmethod
    def from_json(cls, text: str, label_decoder: Callable[[Any], Hashable] = lambda x: x
                  ) -> "SimplicialComplex":
        doc = json.loads(text)
        labels = tuple(label_decoder(x) for x in doc["vertices"])
        return cls(labels, tuple(tuple(f) for f in doc["facets"]))


def _jsonable(x: Any) -> Any:
    if hasattr(x, "to_json"):
        return x.to_json()
    if isinstance(x, tuple):
        return [_jsonable(y) for y in x]
    return x


def simplex_boundary_complex(dim: int) -> SimplicialComplex:
    """Boundary of the standard ``dim``-simplex, a sphere of dimension ``dim - 1``."""
    verts = tuple(range(dim + 1))
    return SimplicialComplex(verts, tuple(combinations(verts, dim)))


# ---------------------------------------------------------------------------
# clique enumeration


def _maximal_cliques(adj: list[set[int]]) -> list[tuple[int, ...]]:
    """Bron-Kerbosch with pivoting; outer loop follows a degeneracy order."""
    out: list[tuple[int, ...]] = []

    def expand(r: list[int], p: set[int], x: set[int]) -> None:
        if not p and not x:
            out.append(tuple(sorted(r)))
            return
        pivot = max(p | x, key=lambda u: (len(adj[u] & p), -u))
        for v in sorted(p - adj[pivot]):
            expand(r + [v], p & adj[v], x & adj[v])
            p.remove(v)
            x.add(v)

    order = sorted(range(len(adj)), key=lambda v: (len(adj[v]), v))
    p = set(range(len(adj)))
    x: set[int] = set()
    for v in order:
        expand([v], p & adj[v], x & adj[v])
        p.discard(v)
        x.add(v)
    return sorted(out)


def flag_complex(vertex_ids: Sequence[Hashable],
                 adjacent: Callable[[Hashable, Hashable], bool]) -> SimplicialComplex:
    """Clique complex of the graph defined by a symmetric, irreflexive predicate."""
    labels = tuple(vertex_ids)
    n = len(labels)
    adj: list[set[int]] = [set() for _ in range(n)]
    for i, j in combinations(range(n), 2):
        a, b = adjacent(labels[i], labels[j]), adjacent(labels[j], labels[i])
        if a != b:
            raise ValueError(f"adjacency is not symmetric on {labels[i]!r}, {labels[j]!r}")
        if a:
            adj[i].add(j)
            adj[j].add(i)
    for i in range(n):
        if adjacent(labels[i], labels[i]):
            raise ValueError(f"adjacency is not irreflexive at {labels[i]!r}")
    return SimplicialComplex(labels, tuple(_maximal_cliques(adj)) if n else (), flag=True)


# ---------------------------------------------------------------------------
# vertex maps


@dataclass(frozen=True)
class VertexMap:
    domain: SimplicialComplex
    codomain: SimplicialComplex
    images: dict  # domain label -> codomain label

    def __post_init__(self) -> None:
        missing = [x for x in self.domain.labels if x not in self.images]
        if missing:
            raise ValueError(f"map undefined on {missing[:3]}")
        for y in self.images.values():
            self.codomain.index(y)

    def image_index(self, v: int) -> int:
        return self.codomain.index(self.images[self.domain.labels[v]])

    def is_simplicial(self) -> bool:
        return all(self.codomain.is_simplex(self.image_index(v) for v in f)
                   for f in self.domain.facets)


def is_locally_injective(phi: VertexMap) -> bool:
    """Injective on the closed star of every vertex."""
    if not phi.is_simplicial():
        raise ValueError("local injectivity is only defined for simplicial maps")
    for v in range(phi.domain.vertex_count):
        star = phi.domain.star(v)
        if len({phi.image_index(u) for u in star}) != len(star):
            return False
    return True


# ---------------------------------------------------------------------------
# integral homology


@dataclass(frozen=True)
class HomologyProfile:
    """Reduced integral homology: ``groups[d] = (betti, torsion)``."""

    groups: tuple[tuple[int, tuple[int, ...]], ...]

    def betti(self, d: int) -> int:
        return self.groups[d][0] if 0 <= d < len(self.groups) else 0

    def torsion(self, d: int) -> tuple[int, ...]:
        return self.groups[d][1] if 0 <= d < len(self.groups) else ()

    def is_sphere(self, dim: int) -> bool:
        """Reduced homology of the ``dim``-sphere."""
        return all(
            (b, t) == ((1, ()) if d == dim else (0, ()))
            for d, (b, t) in enumerate(self.groups)
        ) and dim < len(self.groups)

    def is_acyclic(self) -> bool:
        return all(g == (0, ()) for g in self.groups)

    def describe(self) -> str:
        parts = []
        for d, (b, t) in enumerate(self.groups):
            terms = (["Z^%d" % b if b > 1 else "Z"] if b else []) + [f"Z/{x}" for x in t]
            parts.append(f"H~{d} = {' + '.join(terms) if terms else '0'}")
        return ", ".join(parts)


def _eliminate_units(cols: dict[int, dict[int, int]]) -> tuple[int, dict[int, dict[int, int]]]:
    """Pivot on +-1 entries; returns (pivots taken, remaining sparse columns).

    Each unit pivot contributes an invariant factor 1 and leaves the Smith
    form of the rest unchanged.
    """
    rows: dict[int, set[int]] = {}
    for c, col in cols.items():
        for r in col:
            rows.setdefault(r, set()).add(c)
    taken = 0
    progress = True
    while progress:
        progress = False
        for c in sorted(cols, key=lambda c: (len(cols[c]), c)):
            if c not in cols:
                continue
            col = cols[c]
            units = [r for r, v in col.items() if v in (1, -1)]
            if not units:
                continue
            r = min(units, key=lambda r: (len(rows[r]), r))
            pv = col[r]
            for c2 in sorted(rows[r] - {c}):
                col2 = cols[c2]
                f = col2[r] * pv  # col2 -= f * col  (pv is its own inverse)
                for rr, v in col.items():
                    nv = col2.get(rr, 0) - f * v
                    if nv:
                        if rr not in col2:
                            rows[rr].add(c2)
                        col2[rr] = nv
                    elif rr in col2:
                        del col2[rr]
                        rows[rr].discard(c2)
            for rr in col:
                rows[rr].discard(c)
            del cols[c]
            del rows[r]
            taken += 1
            progress = True
    return taken, {c: col for c, col in cols.items() if col}


def smith_invariants(matrix: list[list[int]]) -> list[int]:
    """Nonzero invariant factors of an integer matrix (exact, dense)."""
    a = [row[:] for row in matrix if any(row)]
    if not a:
        return []
    n_rows, n_cols = len(a), len(a[0])
    out: list[int] = []
    t = 0
    while t < min(n_rows, n_cols):
        nz = [(abs(a[i][j]), i, j) for i in range(t, n_rows) for j in range(t, n_cols) if a[i][j]]
        if not nz:
            break
        _, i, j = min(nz)
        a[t], a[i] = a[i], a[t]
        for row in a:
            row[t], row[j] = row[j], row[t]
        while True:
            p = a[t][t]
            dirty = False
            for i in range(t + 1, n_rows):
                q = a[i][t] // p
                if q:
                    a[i] = [x - q * y for x, y in zip(a[i], a[t])]
                if a[i][t]:
                    dirty = True
            for j in range(t + 1, n_cols):
                q = a[t][j] // p
                if q:
                    for row in a:
                        row[j] -= q * row[t]
                if a[t][j]:
                    dirty = True
            if not dirty:
                bad = [(i, j) for i in range(t + 1, n_rows) for j in range(t + 1, n_cols)
                       if a[i][j] % p]
                if not bad:
                    break
                i, _ = bad[0]
                a[t] = [x + y for x, y in zip(a[t], a[i])]
                continue
            # move the smallest remaining entry of row/column t to the pivot
            cand = [(abs(a[i][t]), i, t) for i in range(t, n_rows) if a[i][t]]
            cand += [(abs(a[t][j]), t, j) for j in range(t, n_cols) if a[t][j]]
            _, i, j = min(cand)
            a[t], a[i] = a[i], a[t]
            for row in a:
                row[t], row[j] = row[j], row[t]
        out.append(abs(a[t][t]))
        t += 1
    return out


def _boundary_snf(rows_of: dict[tuple[int, ...], int], simplices: Sequence[tuple[int, ...]]
                  ) -> tuple[int, list[int]]:
    """Rank and non-unit invariant factors of one boundary map."""
    cols: dict[int, dict[int, int]] = {}
    for c, s in enumerate(simplices):
        col = {}
        for i in range(len(s)):
            face = s[:i] + s[i + 1:]
            col[rows_of[face]] = -1 if i % 2 else 1
        cols[c] = col
    units, rest = _eliminate_units(cols)
    if not rest:
        return units, []
    used_rows = sorted({r for col in rest.values() for r in col})
    pos = {r: i for i, r in enumerate(used_rows)}
    dense = [[0] * len(rest) for _ in used_rows]
    for j, c in enumerate(sorted(rest)):
        for r, v in rest[c].items():
            dense[pos[r]][j] = v
    inv = smith_invariants(dense)
    return units + len(inv), [x for x in inv if x != 1]


def homology(cx: SimplicialComplex) -> HomologyProfile:
    """Reduced integral homology in every dimension ``0..dim``."""
    top = cx.dimension()
    if top < 0:
        return HomologyProfile(())
    counts = cx.face_counts()
    ranks = [0] * (top + 2)     # ranks[d] = rank of the boundary C_d -> C_{d-1}
    torsion: list[list[int]] = [[] for _ in range(top + 2)]
    ranks[0] = 1 if counts[0] else 0  # augmentation C_0 -> Z
    for d in range(1, top + 1):
        rows_of = {f: i for i, f in enumerate(cx.faces(d - 1))}
        ranks[d], torsion[d] = _boundary_snf(rows_of, cx.faces(d))
    groups = []
    for d in range(top + 1):
        betti = counts[d] - ranks[d] - ranks[d + 1]
        groups.append((betti, tuple(sorted(torsion[d + 1]))))
    return HomologyProfile(tuple(groups))
