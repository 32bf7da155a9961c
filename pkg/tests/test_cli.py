import json

from rigidset.cli import main
from rigidset.core import RigidSet


def run(capsys, *argv):
    code = main(list(argv))
    return code, capsys.readouterr()


def test_sphere_build_json(capsys):
    code, out = run(capsys, "sphere", "build", "-n", "5")
    assert code == 0
    assert len(RigidSet.from_json(out.out).labels) == 5


def test_sphere_lee(capsys):
    code, out = run(capsys, "sphere", "lee", "-n", "6")
    assert code == 0 and json.loads(out.out)["homology_sphere"]


def test_torus_build_csv_to_file(capsys, tmp_path):
    path = tmp_path / "t.csv"
    code, out = run(capsys, "torus", "build", "-n", "3", "--format", "csv", "--output", str(path))
    assert code == 0 and out.out == ""
    assert len(path.read_text().splitlines()) == 3 + 1 + 6 + 1


def test_farey(capsys):
    code, out = run(capsys, "farey-rigidity", "--radius", "2", "--case", "sphere4")
    assert code == 0 and json.loads(out.out)["maps_checked"] == 60


def test_genus_pants(capsys):
    code, out = run(capsys, "genus", "pants", "--g", "2", "--n", "1", "--case", "copy")
    rep = json.loads(out.out)
    assert code == 0 and len(rep["decompositions"]) == 4
    assert all(len(d["P"]) == 3 for d in rep["decompositions"])


def test_genus_detect(capsys):
    code, out = run(capsys, "genus", "detect", "--g", "2")
    assert code == 0 and json.loads(out.out)["passed"]


def test_suite_and_errors(capsys, tmp_path):
    cfg = tmp_path / "s.cfg"
    cfg.write_text("cases = farey\nfarey_radius = 1\n")
    code, out = run(capsys, "suite", "--config", str(cfg))
    assert code == 0 and json.loads(out.out)["passed"]
    code, out = run(capsys, "suite", "--config", str(tmp_path / "nope.cfg"))
    assert code == 2 and "cannot read config" in out.err
    code, out = run(capsys, "torus", "build", "-n", "2")
    assert code == 2 and "n >= 3" in out.err
