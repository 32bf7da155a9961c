"""Intersection matrices must match the stored files byte for byte."""

from pathlib import Path

import pytest

from make_golden import CASES

HERE = Path(__file__).parent / "golden"


@pytest.mark.parametrize("name", sorted(CASES))
def test_golden_matrix(name):
    fn, args = CASES[name]
    assert (fn(*args).to_json() + "\n") == (HERE / f"{name}.json").read_text()
