"""Labelled curve sets, their intersection matrices and detectability certificates."""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field
from functools import cached_property
from typing import Callable, Iterable, Mapping, Sequence

from .simplicial import SimplicialComplex, SurfaceSig, flag_complex


class NoCertificate(LookupError):
    """No pair of pants decompositions witnesses the intersection."""


@dataclass(frozen=True, order=True)
class CurveLabel:
    """Symbolic curve name: a family tag plus an integer index tuple."""

    family: str
    index: tuple = ()

    def __str__(self) -> str:
        return f"{self.family}({','.join(map(str, self.index))})"

    def to_json(self) -> str:
        return str(self)

    @classmethod
    def parse(cls, text: str) -> "CurveLabel":
        family, _, rest = text.partition("(")
        body = rest.rstrip(")")
        parts = tuple(_atom(x) for x in body.split(",")) if body else ()
        return cls(family, parts)


def _atom(x: str):
    try:
        return int(x)
    except ValueError:
        return x


@dataclass(frozen=True)
class RigidSet:
    """A labelled finite curve set with exact pairwise intersection numbers."""

    surface: SurfaceSig
    labels: tuple[CurveLabel, ...]
    matrix: tuple[tuple[int, ...], ...]
    aliases: Mapping[CurveLabel, CurveLabel] = field(default_factory=dict)

    def __post_init__(self) -> None:
        n = len(self.labels)
        if len(set(self.labels)) != n:
            raise ValueError("duplicate labels")
        if len(self.matrix) != n or any(len(r) != n for r in self.matrix):
            raise ValueError("matrix shape does not match labels")
        for i in range(n):
            if self.matrix[i][i] != 0:
                raise ValueError(f"nonzero diagonal at {self.labels[i]}")
            for j in range(i):
                if self.matrix[i][j] != self.matrix[j][i] or self.matrix[i][j] < 0:
                    raise ValueError(f"matrix not symmetric non-negative at {i},{j}")

    @classmethod
    def from_function(cls, surface: SurfaceSig, labels: Sequence[CurveLabel],
                      inter: Callable[[CurveLabel, CurveLabel], int],
                      aliases: Mapping[CurveLabel, CurveLabel] | None = None) -> "RigidSet":
        labels = tuple(labels)
        n = len(labels)
        rows = [[0] * n for _ in range(n)]
        for i in range(n):
            for j in range(i + 1, n):
                rows[i][j] = rows[j][i] = inter(labels[i], labels[j])
        return cls(surface, labels, tuple(map(tuple, rows)), dict(aliases or {}))

    @cached_property
    def _pos(self) -> dict[CurveLabel, int]:
        return {x: i for i, x in enumerate(self.labels)}

    def index(self, label: CurveLabel) -> int:
        label = self.aliases.get(label, label)
        return self._pos[label]

    def __contains__(self, label: object) -> bool:
        return label in self._pos or label in self.aliases

    def resolve(self, label: CurveLabel) -> CurveLabel:
        return self.aliases.get(label, label)

    def i(self, a: CurveLabel, b: CurveLabel) -> int:
        return self.matrix[self.index(a)][self.index(b)]

    def family(self, name: str) -> list[CurveLabel]:
        return [x for x in self.labels if x.family == name]

    @cached_property
    def complex(self) -> SimplicialComplex:
        return flag_complex(self.labels, lambda x, y: x != y and self.i(x, y) == 0)

    def sub(self, labels: Iterable[CurveLabel]) -> "RigidSet":
        keep = [self.resolve(x) for x in labels]
        idx = [self.index(x) for x in keep]
        return RigidSet(self.surface, tuple(keep),
                        tuple(tuple(self.matrix[i][j] for j in idx) for i in idx))

    # serialisation

    def to_json(self) -> str:
        doc = {
            "surface": self.surface.to_json(),
            "labels": [str(x) for x in self.labels],
            "matrix": [list(r) for r in self.matrix],
        }
        if self.aliases:
            doc["aliases"] = {str(k): str(v) for k, v in sorted(self.aliases.items())}
        return json.dumps(doc, sort_keys=True, separators=(",", ":"))

    @classmethod
    def from_json(cls, text: str) -> "RigidSet":
        doc = json.loads(text)
        sig = SurfaceSig(doc["surface"]["g"], doc["surface"]["n"])
        aliases = {CurveLabel.parse(k): CurveLabel.parse(v) for k, v in doc.get("aliases", {}).items()}
        return cls(sig, tuple(CurveLabel.parse(x) for x in doc["labels"]),
                   tuple(tuple(r) for r in doc["matrix"]), aliases)

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow([""] + [str(x) for x in self.labels])
        for lab, row in zip(self.labels, self.matrix):
            w.writerow([str(lab)] + list(row))
        return buf.getvalue()


@dataclass(frozen=True)
class DetectCert:
    """Two pants decompositions differing exactly in ``a`` and ``b``."""

    a: CurveLabel
    b: CurveLabel
    p_a: frozenset
    p_b: frozenset

    @property
    def shared(self) -> frozenset:
        return self.p_a - {self.a}

    def problems(self, rs: RigidSet) -> list[str]:
        """Reasons the certificate is invalid for ``rs`` (empty when valid)."""
        out = []
        xi = rs.surface.complexity()
        if self.a not in self.p_a or self.b not in self.p_b:
            out.append("distinguished curve missing from its decomposition")
        if self.p_a - {self.a} != self.p_b - {self.b}:
            out.append("decompositions differ outside the pair")
        if rs.i(self.a, self.b) == 0:
            out.append("pair does not intersect")
        for name, p in (("P_a", self.p_a), ("P_b", self.p_b)):
            if len(p) != xi:
                out.append(f"{name} has {len(p)} curves, expected {xi}")
            ps = sorted(p)
            for k, x in enumerate(ps):
                for y in ps[k + 1:]:
                    if rs.i(x, y):
                        out.append(f"{name}: {x} and {y} intersect")
        return out

    def is_valid(self, rs: RigidSet) -> bool:
        return not self.problems(rs)

    def to_json(self) -> dict:
        return {"a": str(self.a), "b": str(self.b),
                "shared": sorted(str(x) for x in self.shared)}


def certificate_from_shared(a: CurveLabel, b: CurveLabel, shared: Iterable[CurveLabel]) -> DetectCert:
    s = frozenset(shared)
    return DetectCert(a, b, s | {a}, s | {b})


def find_detect_cert(rs: RigidSet, a: CurveLabel, b: CurveLabel) -> DetectCert:
    """Lexicographically least certificate for the pair ``(a, b)``.

    The shared part is a clique of size ``xi - 1`` in the disjointness graph
    among curves missing both ``a`` and ``b``; depth-first search in label
    order returns the lexicographically least one.
    """
    a, b = rs.resolve(a), rs.resolve(b)
    if rs.i(a, b) == 0:
        raise ValueError(f"{a} and {b} are disjoint")
    need = rs.surface.complexity() - 1
    ia, ib = rs.index(a), rs.index(b)
    m = rs.matrix
    pool = [k for k in range(len(rs.labels)) if k not in (ia, ib) and m[k][ia] == 0 and m[k][ib] == 0]

    def grow(chosen: list[int], rest: list[int]) -> list[int] | None:
        if len(chosen) == need:
            return chosen
        for t, k in enumerate(rest):
            if len(chosen) + len(rest) - t < need:
                return None
            nxt = [x for x in rest[t + 1:] if m[k][x] == 0]
            got = grow(chosen + [k], nxt)
            if got is not None:
                return got
        return None

    found = grow([], pool)
    if found is None:
        raise NoCertificate(f"no certificate for {a}, {b}")
    return certificate_from_shared(a, b, (rs.labels[k] for k in found))
