"""Rewrite the golden intersection matrices.  Run by hand, then review the diff."""

from pathlib import Path

from rigidset.genus import build_rigid_set_genus
from rigidset.sphere import build_rigid_set_sphere
from rigidset.torus import build_rigid_set_torus

HERE = Path(__file__).parent / "golden"

CASES = {
    **{f"sphere_n{n}": (build_rigid_set_sphere, (n,)) for n in range(5, 10)},
    **{f"torus_n{n}": (build_rigid_set_torus, (n,)) for n in range(3, 7)},
    **{f"closed_g{g}": (build_rigid_set_genus, (g, 0)) for g in (2, 3, 4)},
    **{f"punctured_g{g}_n{n}": (build_rigid_set_genus, (g, n))
       for g, n in ((2, 1), (2, 2), (2, 3), (3, 1), (3, 2))},
}


def main() -> None:
    HERE.mkdir(exist_ok=True)
    for name, (fn, args) in CASES.items():
        (HERE / f"{name}.json").write_text(fn(*args).to_json() + "\n")
        print(name)


if __name__ == "__main__":
    main()
