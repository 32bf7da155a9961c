"""Suites of checks over all cases, with machine-readable reports."""

from __future__ import annotations

import configparser
import json
import os
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from importlib import metadata
from itertools import combinations
from pathlib import Path
from typing import Callable

from .core import RigidSet

SCHEMA = "rigidset-report/1"
CASES = ("sphere", "farey", "torus", "closed", "punctured")


def tool_version() -> str:
    try:
        return metadata.version("artifact")
    except metadata.PackageNotFoundError:
        return "0+unknown"


def _ints(text: str) -> list[int]:
    return [int(x) for x in text.replace(",", " ").split()]


def _pairs(text: str) -> list[tuple[int, int]]:
    out = []
    for item in text.replace(",", " ").split():
        g, _, n = item.partition(":")
        out.append((int(g), int(n)))
    return out


@dataclass
class SuiteConfig:
    """What to run.  ``seed`` fixes every randomised trial."""

    cases: list[str] = field(default_factory=list)
    sphere_n: list[int] = field(default_factory=lambda: [5, 6, 7, 8, 9])
    torus_n: list[int] = field(default_factory=lambda: [3, 4, 5, 6])
    closed_g: list[int] = field(default_factory=lambda: [2, 3, 4])
    punctured: list[tuple[int, int]] = field(default_factory=lambda: [(2, 1), (2, 2), (2, 3), (3, 1), (3, 2)])
    roundtrip_n: list[int] = field(default_factory=lambda: [5, 6, 7])
    farey_radius: int = 4
    trials: int = 100
    max_len: int = 20
    seed: int = 1
    cutoff: int = 20
    output_dir: str | None = None
    name: str = "suite"

    def __post_init__(self) -> None:
        bad = [c for c in self.cases if c not in CASES]
        if bad:
            raise ValueError(f"unknown case(s) {bad}; choose from {list(CASES)}")

    @classmethod
    def from_text(cls, text: str) -> "SuiteConfig":
        """Flat ``key = value`` lines; ``#`` starts a comment."""
        cp = configparser.ConfigParser(inline_comment_prefixes=("#",))
        cp.read_string("[suite]\n" + text)
        kv = dict(cp["suite"])
        known = {f for f in cls.__dataclass_fields__}
        unknown = set(kv) - known
        if unknown:
            raise ValueError(f"unknown config keys {sorted(unknown)}")
        args: dict = {}
        for key, val in kv.items():
            if key == "cases":
                args[key] = [x for x in val.replace(",", " ").split()]
            elif key == "punctured":
                args[key] = _pairs(val)
            elif key in ("sphere_n", "torus_n", "closed_g", "roundtrip_n"):
                args[key] = _ints(val)
            elif key in ("output_dir", "name"):
                args[key] = val
            else:
                args[key] = int(val)
        return cls(**args)

    @classmethod
    def from_file(cls, path: str | os.PathLike) -> "SuiteConfig":
        try:
            text = Path(path).read_text()
        except OSError as exc:
            raise OSError(f"cannot read config {path}: {exc.strerror}") from exc
        return cls.from_text(text)


@dataclass
class Check:
    name: str
    params: dict
    passed: bool
    details: dict
    seconds: float = 0.0


@dataclass
class Report:
    suite: str
    parameters: dict
    checks: list[Check] = field(default_factory=list)
    wall_clock: float = 0.0
    schema: str = SCHEMA
    version: str = field(default_factory=tool_version)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def to_dict(self, timings: bool = True) -> dict:
        d = asdict(self)
        d["passed"] = self.passed
        if not timings:
            d.pop("wall_clock")
            for c in d["checks"]:
                c.pop("seconds")
        return d

    def to_json(self, timings: bool = True) -> str:
        return json.dumps(self.to_dict(timings), sort_keys=True, indent=1, default=str)


def emit_matrix(rs: RigidSet, fmt: str = "json", path: str | os.PathLike | None = None) -> str:
    """Serialise a rigid set; write it to ``path`` when given."""
    if fmt == "json":
        text = rs.to_json()
    elif fmt == "csv":
        text = rs.to_csv()
    else:
        raise ValueError(f"format must be json or csv, not {fmt!r}")
    if path is not None:
        try:
            Path(path).write_text(text)
        except OSError as exc:
            raise OSError(f"cannot write {path}: {exc.strerror}") from exc
    return text


def threads() -> int:
    try:
        return max(1, int(os.environ.get("RIGIDSET_THREADS", "1")))
    except ValueError:
        return 1


# ---------------------------------------------------------------------------
# checks; each returns a details dict carrying "passed"


def sphere_structure(n: int) -> dict:
    from .sphere import build_rigid_set_sphere, verify_lee_sphere
    rs = build_rigid_set_sphere(n)
    lee = verify_lee_sphere(n)
    count_ok = len(rs.labels) == n * (n - 3) // 2
    return {"labels": len(rs.labels), "expected": n * (n - 3) // 2, "lee": lee,
            "passed": count_ok and lee["passed"]}


def sphere_detect(n: int) -> dict:
    from .core import NoCertificate
    from .sphere import build_rigid_set_sphere, sphere_cert
    rs = build_rigid_set_sphere(n)
    pairs = [(x, y) for x, y in combinations(rs.labels, 2) if rs.i(x, y)]
    failed = []
    for x, y in pairs:
        try:
            if not sphere_cert(rs, x, y).is_valid(rs):
                failed.append(f"{x}|{y}")
        except NoCertificate:
            failed.append(f"{x}|{y}")
    return {"pairs": len(pairs), "failed": failed, "passed": not failed}


def sphere_oracle(n: int) -> dict:
    """Coordinate intersection numbers against the chord rule, before and after a redraw."""
    from .dynnikov import BraidWord, geometric_intersection
    from .sphere import base_configuration, build_rigid_set_sphere
    rs = build_rigid_set_sphere(n)
    base = base_configuration(n)
    w = BraidWord(n, tuple(range(1, n - 1)) + (1, -2))
    moved = {x: c.act(w) for x, c in base.items()}
    bad, moved_bad = [], []
    for x, y in combinations(rs.labels, 2):
        if geometric_intersection(base[x], base[y]) != rs.i(x, y):
            bad.append(f"{x}|{y}")
        if geometric_intersection(moved[x], moved[y]) != rs.i(x, y):
            moved_bad.append(f"{x}|{y}")
    diag = all(geometric_intersection(c, c) == 0 for c in base.values())
    return {"pairs": len(rs.labels) * (len(rs.labels) - 1) // 2, "chord_mismatches": bad,
            "redraw_mismatches": moved_bad, "zero_diagonal": diag,
            "passed": not bad and not moved_bad and diag}


def sphere_roundtrip(n: int, trials: int, max_len: int, seed: int) -> dict:
    from .sphere import round_trip
    return round_trip(n, trials, max_len, seed)


def bfs_triangle_count(radius: int) -> int:
    """Triangles of the Farey tessellation within dual distance ``radius``, counted afresh."""
    def norm(v):
        p, q = v
        return (-p, -q) if q < 0 or (q == 0 and p < 0) else (p, q)

    start = frozenset({(0, 1), (1, 1), (1, 0)})
    seen, frontier = {start}, [start]
    for _ in range(radius):
        nxt = []
        for tri in frontier:
            for x, y in combinations(sorted(tri), 2):
                for z in (norm((x[0] + y[0], x[1] + y[1])), norm((x[0] - y[0], x[1] - y[1]))):
                    t = frozenset({x, y, z})
                    if t not in seen:
                        seen.add(t)
                        nxt.append(t)
        frontier = nxt
    return len(seen)


def farey_check(radius: int) -> dict:
    from .farey import FareyTag, brute_force_rigidity
    tri = bfs_triangle_count(radius)
    out = {"bfs_triangles": tri}
    ok = True
    for tag in FareyTag:
        r = brute_force_rigidity(radius, tag)
        r["count_matches"] = r["triangles"] == tri and r["maps_checked"] == 6 * tri
        ok &= r["all_extended"] and r["count_matches"]
        out[tag.value] = r
    out["passed"] = ok
    return out


def torus_check(n: int, cutoff: int) -> dict:
    from . import torus as T
    rs = T.build_rigid_set_torus(n)
    chain = all(rs.i(T.alpha(j), T.beta()) == 1 for j in range(1, n + 1)) and all(
        rs.i(T.alpha(i), T.alpha(j)) == 0 for i in range(1, n + 1) for j in range(1, n + 1))
    detect = T.detect_report(rs)
    det = T.verify_determination_chain(rs, cutoff)
    redraw = T.redraw_matrix(n, Fraction(1, 997), Fraction(-1, 1013)) == [list(r) for r in rs.matrix]
    return {"labels": len(rs.labels), "chain_pattern": chain, "detect": detect,
            "determination": {k: det[k] for k in ("disk_checks", "problems", "passed")},
            "redraw_invariant": redraw,
            "passed": chain and detect["passed"] and det["passed"] and redraw}


def _chain_pattern_closed(rs, g: int) -> bool:
    from .genus import alpha
    m = 2 * g + 2
    return all(rs.i(alpha(i), alpha(j)) == (1 if (i - j) % m in (1, m - 1) else 0)
               for i in range(m) for j in range(m) if i != j)


def closed_check(g: int) -> dict:
    from . import genus as G
    rs = G.build_rigid_set_closed(g)
    families = {f: len(rs.family(f)) for f in ("alpha", "sep", "bp", "tb")}
    chain = _chain_pattern_closed(rs, g)
    empty_ok = g != 2 or (families["bp"] == 0 and families["tb"] == 0)
    detect = G.detect_report_genus(rs)
    pants = [[str(x) for x in G.proof_pants_closed(rs, i)] for i in range(2 * g + 2)]
    redraw = G.redraw_matrix(G.closed_model(g), Fraction(1, 997), Fraction(-1, 1013)) == [
        list(r) for r in rs.matrix]
    out = {"labels": len(rs.labels), "families": families, "aliases": len(rs.aliases),
           "chain_pattern": chain, "bp_tb_empty_when_g2": empty_ok, "detect": detect,
           "pants_sizes": sorted({len(p) + 1 for p in pants}), "redraw_invariant": redraw}
    ok = chain and empty_ok and detect["passed"] and redraw
    if g >= 3:
        out["stabilizer"] = G.stabilizer_check_closed(g)
        parts = G.partition_bounding_pairs(rs)
        out["partition"] = {k: [str(x) for x in v] for k, v in parts.items()}
        out["partition_connected"] = all(_connected(rs, v) for v in parts.values())
        ok = ok and out["stabilizer"]["passed"] and out["partition_connected"]
    out["passed"] = ok
    return out


def _connected(rs, labels) -> bool:
    labels = list(labels)
    if not labels:
        return True
    seen, todo = {labels[0]}, [labels[0]]
    while todo:
        x = todo.pop()
        for y in labels:
            if y not in seen and rs.i(x, y):
                seen.add(y)
                todo.append(y)
    return len(seen) == len(labels)


def punctured_check(g: int, n: int) -> dict:
    from . import genus as G
    rs = G.build_rigid_set_punctured(g, n)
    top = 2 * g + 1
    model = G.punctured_model(g, n)
    tags: dict[str, int] = {}
    for x in rs.labels:
        tags[model.tags[x]] = tags.get(model.tags[x], 0) + 1
    overlaps = {
        "sep(0,2)": str(rs.resolve(G.sep(0, 2))),
        f"sep({top},2)": str(rs.resolve(G.sep(top, 2))),
        "bp(0,3,+)": str(rs.resolve(G.bp(0, 3, "+"))),
    }
    overlap_ok = (rs.resolve(G.sep(0, 2)) == rs.resolve(G.sep_t(1, 1, 1))
                  and rs.resolve(G.sep(top, 2)) == rs.resolve(G.sep_t(top, 1, 1))
                  and rs.resolve(G.bp(0, 3, "+")) == rs.resolve(G.bp_t(1, 1, "+")))
    left = [G.s_left_check(g, n, l) for l in (1, top)]
    pairs = [(G.alpha(j), G.alpha(j + 1)) for j in range(1, 2 * g + 1)] + [
        (G.alpha0(i), G.alpha(l)) for i in range(n + 1) for l in (1, top)]
    pants_problems, sizes = [], set()
    for a, b in pairs:
        try:
            sizes.add(len(G.proof_pants_punctured(rs, a, b)) + 1)
        except AssertionError as exc:
            pants_problems.append(str(exc))
    detect = G.detect_report_genus(rs)
    redraw = G.redraw_matrix(model, Fraction(1, 997), Fraction(-1, 1013)) == [list(r) for r in rs.matrix]
    need = {"outer-outer": n >= 3, "bridge": True}
    present = all(detect["pairs"].get(k, 0) > 0 for k, want in need.items() if want)
    return {"labels": len(rs.labels), "families": tags, "aliases": len(rs.aliases),
            "overlaps": overlaps, "overlaps_as_expected": overlap_ok,
            "s_left": [{k: r[k] for k in ("l", "labels", "mismatches", "problems", "passed")} for r in left],
            "pants_sizes": sorted(sizes), "xi": rs.surface.complexity(), "pants_problems": pants_problems,
            "detect": detect, "named_families_present": present, "redraw_invariant": redraw,
            "bpT_sign": "+ is the component meeting alpha0(i-1)",
            "passed": (overlap_ok and all(r["passed"] for r in left) and not pants_problems
                       and sizes == {rs.surface.complexity()} and detect["passed"] and present and redraw)}


def plan(config: SuiteConfig) -> list[tuple[str, dict, Callable[[], dict]]]:
    """The checks a config asks for, in a fixed order."""
    out = []
    for case in config.cases:
        if case == "sphere":
            for n in config.sphere_n:
                out.append(("sphere.structure", {"n": n}, lambda n=n: sphere_structure(n)))
                out.append(("sphere.detect", {"n": n}, lambda n=n: sphere_detect(n)))
                out.append(("sphere.oracle", {"n": n}, lambda n=n: sphere_oracle(n)))
            for n in config.roundtrip_n:
                p = {"n": n, "trials": config.trials, "max_len": config.max_len, "seed": config.seed}
                out.append(("sphere.roundtrip", p, lambda p=p: sphere_roundtrip(**p)))
        elif case == "farey":
            r = config.farey_radius
            out.append(("farey.rigidity", {"radius": r}, lambda: farey_check(r)))
        elif case == "torus":
            for n in config.torus_n:
                out.append(("torus", {"n": n, "cutoff": config.cutoff},
                            lambda n=n: torus_check(n, config.cutoff)))
        elif case == "closed":
            for g in config.closed_g:
                out.append(("closed", {"g": g}, lambda g=g: closed_check(g)))
        elif case == "punctured":
            for g, n in config.punctured:
                out.append(("punctured", {"g": g, "n": n}, lambda g=g, n=n: punctured_check(g, n)))
    return out


def _run_one(item) -> Check:
    name, params, fn = item
    t = time.perf_counter()
    try:
        details = fn()
        passed = bool(details.get("passed"))
    except Exception as exc:    # a failing check is a report entry
        details, passed = {"error": f"{type(exc).__name__}: {exc}"}, False
    return Check(name, params, passed, details, round(time.perf_counter() - t, 3))


def run_suite(config: SuiteConfig) -> Report:
    t = time.perf_counter()
    params = asdict(config)
    report = Report(config.name, params)
    items = plan(config)
    if threads() > 1 and len(items) > 1:
        with ThreadPoolExecutor(max_workers=threads()) as pool:
            report.checks = list(pool.map(_run_one, items))
    else:
        report.checks = [_run_one(x) for x in items]
    report.wall_clock = round(time.perf_counter() - t, 3)
    if config.output_dir:
        out = Path(config.output_dir)
        try:
            out.mkdir(parents=True, exist_ok=True)
            (out / f"{config.name}.json").write_text(report.to_json())
        except OSError as exc:
            raise OSError(f"cannot write report under {out}: {exc.strerror}") from exc
    return report
