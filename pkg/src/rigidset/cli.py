"""Command line entry point: ``rigidset <case> <subcommand> [flags]``."""

from __future__ import annotations

import argparse
import json
import sys

from . import harness


def _dump(obj) -> None:
    print(json.dumps(obj, sort_keys=True, indent=1, default=str))


def _emit(rs, args) -> None:
    text = harness.emit_matrix(rs, args.format, args.output)
    if args.output is None:
        sys.stdout.write(text if text.endswith("\n") else text + "\n")


def _matrix_flags(p) -> None:
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.add_argument("--output", "-o", help="write here instead of stdout")


def cmd_sphere(args) -> int:
    from . import sphere as S
    if args.sub == "build":
        _emit(S.build_rigid_set_sphere(args.n), args)
        return 0
    if args.sub == "lee":
        rep = S.verify_lee_sphere(args.n)
    elif args.sub == "detect":
        rs = S.build_rigid_set_sphere(args.n)
        certs = S.all_certificates(rs)
        rep = {"n": args.n, "certificates": [c.to_json() for c in certs],
               "passed": all(c.is_valid(rs) for c in certs)}
    else:
        rep = S.round_trip(args.n, args.trials, args.max_len, args.seed)
    _dump(rep)
    return 0 if rep["passed"] else 1


def cmd_farey(args) -> int:
    from .farey import FareyTag, brute_force_rigidity
    rep = brute_force_rigidity(args.radius, FareyTag(args.case))
    keep = ("radius", "vertices", "triangles", "maps_checked", "all_extended")
    _dump({k: rep[k] for k in keep})
    return 0 if rep["all_extended"] else 1


def cmd_torus(args) -> int:
    from . import torus as T
    rs = T.build_rigid_set_torus(args.n)
    if args.sub == "build":
        _emit(rs, args)
        return 0
    rep = T.detect_report(rs) if args.sub == "detect" else T.verify_determination_chain(rs, args.cutoff)
    _dump(rep)
    return 0 if rep["passed"] else 1


def cmd_genus(args) -> int:
    from . import genus as G
    if args.sub == "stabilizer":
        rep = G.stabilizer_check_closed(args.g)
        _dump(rep)
        return 0 if rep["passed"] else 1
    rs = G.build_rigid_set_genus(args.g, args.n)
    if args.sub == "build":
        _emit(rs, args)
        return 0
    if args.sub == "detect":
        rep = G.detect_report_genus(rs)
    else:
        rep = {"g": args.g, "n": args.n, "case": args.case, "decompositions": pants_listing(G, rs, args.case)}
        rep["passed"] = True
    _dump(rep)
    return 0 if rep["passed"] else 1


def pants_listing(G, rs, case: str) -> list[dict]:
    g, n = rs.surface.genus, rs.surface.punctures
    top = 2 * g + 1
    if case == "closed":
        if n:
            raise SystemExit("case 'closed' needs --n 0")
        pairs = [(G.alpha(i), G.alpha((i + 1) % (2 * g + 2))) for i in range(2 * g + 2)]
    elif n == 0:
        raise SystemExit(f"case {case!r} needs punctures; use --case closed")
    elif case == "chain":
        pairs = [(G.alpha(j), G.alpha(j + 1)) for j in range(1, 2 * g + 1)]
    elif case == "copy":
        pairs = [(G.alpha0(i), G.alpha(l)) for i in range(n + 1) for l in (1, top)]
    else:
        raise SystemExit(f"unknown case {case!r}: closed, chain or copy")
    return [{"pair": [str(a), str(b)], "P": [str(x) for x in G.proof_pants(rs, a, b)]} for a, b in pairs]


def cmd_suite(args) -> int:
    cfg = harness.SuiteConfig.from_file(args.config)
    rep = harness.run_suite(cfg)
    print(rep.to_json())
    return 0 if rep.passed else 1


def parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(prog="rigidset", description=__doc__)
    cases = top.add_subparsers(dest="case", required=True)

    parent = cases.add_parser("sphere", help="punctured spheres")
    parent.set_defaults(func=cmd_sphere)
    sp = parent.add_subparsers(dest="sub", required=True)
    for name in ("build", "lee", "detect", "roundtrip"):
        p = sp.add_parser(name)
        p.add_argument("-n", type=int, required=True)
        if name == "build":
            _matrix_flags(p)
        if name == "roundtrip":
            p.add_argument("--trials", type=int, default=100)
            p.add_argument("--max-len", type=int, default=20)
            p.add_argument("--seed", type=int, default=1)

    fp = cases.add_parser("farey-rigidity", help="brute force on a Farey ball")
    fp.add_argument("--radius", type=int, default=4)
    fp.add_argument("--case", choices=("torus", "sphere4"), default="torus")
    fp.set_defaults(func=cmd_farey)

    parent = cases.add_parser("torus", help="punctured tori")
    parent.set_defaults(func=cmd_torus)
    tp = parent.add_subparsers(dest="sub", required=True)
    for name in ("build", "detect", "determine"):
        p = tp.add_parser(name)
        p.add_argument("-n", type=int, required=True)
        if name == "build":
            _matrix_flags(p)
        if name == "determine":
            p.add_argument("--cutoff", type=int, default=20)

    parent = cases.add_parser("genus", help="genus at least two")
    parent.set_defaults(func=cmd_genus)
    gp = parent.add_subparsers(dest="sub", required=True)
    for name in ("build", "detect", "stabilizer", "pants"):
        p = gp.add_parser(name)
        p.add_argument("--g", type=int, required=True)
        if name != "stabilizer":
            p.add_argument("--n", type=int, default=0)
        if name == "build":
            _matrix_flags(p)
        if name == "pants":
            p.add_argument("--case", default="closed", help="closed, chain or copy")

    su = cases.add_parser("suite", help="run a configured suite")
    su.add_argument("--config", required=True)
    su.set_defaults(func=cmd_suite)
    return top


def main(argv=None) -> int:
    args = parser().parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, OSError) as exc:
        print(f"rigidset: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
