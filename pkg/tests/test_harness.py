import json

import pytest

from rigidset import harness as H


def test_config_parsing():
    cfg = H.SuiteConfig.from_text("""
# small run
cases = sphere, farey
sphere_n = 5 6
punctured = 2:1 3:2
farey_radius = 2   # quick
name = tiny
""")
    assert cfg.cases == ["sphere", "farey"] and cfg.sphere_n == [5, 6]
    assert cfg.punctured == [(2, 1), (3, 2)] and cfg.farey_radius == 2 and cfg.name == "tiny"


def test_config_errors(tmp_path):
    with pytest.raises(ValueError):
        H.SuiteConfig.from_text("cases = klein")
    with pytest.raises(ValueError):
        H.SuiteConfig.from_text("colour = blue")
    with pytest.raises(OSError):
        H.SuiteConfig.from_file(tmp_path / "missing.cfg")


def test_empty_selection_passes():
    rep = H.run_suite(H.SuiteConfig())
    assert rep.checks == [] and rep.passed


def test_plan_order():
    cfg = H.SuiteConfig(cases=["sphere", "closed"], sphere_n=[5], roundtrip_n=[], closed_g=[2])
    assert [name for name, _, _ in H.plan(cfg)] == ["sphere.structure", "sphere.detect", "sphere.oracle", "closed"]


def test_report_is_deterministic(tmp_path, monkeypatch):
    cfg = H.SuiteConfig(cases=["sphere", "farey"], sphere_n=[5, 6], roundtrip_n=[5], trials=5,
                        max_len=8, farey_radius=2, output_dir=str(tmp_path), name="det")
    first = H.run_suite(cfg)
    monkeypatch.setenv("RIGIDSET_THREADS", "3")
    second = H.run_suite(cfg)
    assert first.passed
    assert first.to_json(timings=False) == second.to_json(timings=False)
    doc = json.loads((tmp_path / "det.json").read_text())
    assert doc["schema"] == H.SCHEMA and doc["passed"] and len(doc["checks"]) == 8


def test_failing_check_is_reported(monkeypatch):
    def boom(n):
        raise RuntimeError("broken")
    monkeypatch.setattr(H, "sphere_structure", boom)
    rep = H.run_suite(H.SuiteConfig(cases=["sphere"], sphere_n=[5], roundtrip_n=[]))
    assert not rep.passed
    assert rep.checks[0].details == {"error": "RuntimeError: broken"}


def test_threads_env(monkeypatch):
    monkeypatch.setenv("RIGIDSET_THREADS", "4")
    assert H.threads() == 4
    monkeypatch.setenv("RIGIDSET_THREADS", "lots")
    assert H.threads() == 1


def test_emit_matrix(tmp_path):
    from rigidset.sphere import build_rigid_set_sphere
    rs = build_rigid_set_sphere(5)
    out = tmp_path / "m.csv"
    text = H.emit_matrix(rs, "csv", out)
    assert out.read_text() == text and text.startswith(',"interval(1,2)"')
    with pytest.raises(ValueError):
        H.emit_matrix(rs, "xml")


def test_farey_check_counts():
    rep = H.farey_check(3)
    assert rep["passed"] and rep["bfs_triangles"] == 22
