import io
import json
import subprocess
import sys

import pytest
from hypothesis import given, settings

from cohomotopy.cli import run
from cohomotopy.engine import compute_all
from cohomotopy.report import Report, build_report
from cohomotopy.results import agree, result_from_dict
from strategies import descriptors

EIGHT = "n: 4\nl: 2\nk: 1\nc: 1\ntorsion: [[3, 2]]\n"


def _run(args):
    out, err = io.StringIO(), io.StringIO()
    code = run(args, out, err)
    return code, out.getvalue(), err.getvalue()


@pytest.fixture
def eight(tmp_path):
    p = tmp_path / "m.yaml"
    p.write_text(EIGHT)
    return p


def test_degree_three_report(eight):
    code, out, _ = _run(["--input", str(eight), "--degree", "3"])
    assert code == 0
    assert "(Z/2)² ⊕ Z/12 ⊕ Z/6 ⊕ Z/3" in out


def test_empty_file_is_a_parse_error(tmp_path):
    p = tmp_path / "empty.yaml"
    p.write_text("")
    code, _, err = _run(["--input", str(p)])
    assert code == 2 and "parse error" in err


def test_malformed_yaml(tmp_path):
    p = tmp_path / "bad.yaml"
    p.write_text("n: [1\n")
    assert _run(["--input", str(p)])[0] == 2


def test_two_torsion_names_the_rule(tmp_path):
    p = tmp_path / "t.yaml"
    p.write_text("n: 3\nl: 1\nk: 0\ntorsion: [[2, 1]]\n")
    code, _, err = _run(["--input", str(p)])
    assert code == 2
    assert "T 2-torsion-free" in err and "torsion" in err


def test_field_path_in_parse_error(tmp_path):
    p = tmp_path / "f.yaml"
    p.write_text("n: 3\nl: one\nk: 0\n")
    code, _, err = _run(["--input", str(p)])
    assert code == 2 and "l:" in err


def test_missing_file_is_usage_error(tmp_path):
    assert _run(["--input", str(tmp_path / "nope.yaml")])[0] == 1


def test_bad_flags_are_usage_errors(eight):
    with pytest.raises(SystemExit) as e:
        run(["--input", str(eight), "--format", "xml"], io.StringIO(), io.StringIO())
    assert e.value.code == 1
    assert _run(["--input", str(eight), "--degree", "0"])[0] == 1


def test_checks_and_oracle(eight):
    code, out, _ = _run(["--input", str(eight), "--check", "--oracle"])
    assert code == 0
    assert "check homology: ok" in out and "check oracle: ok" in out


def test_steenrod_file_override(tmp_path):
    d = tmp_path / "d.yaml"
    d.write_text("n: 4\nl: 1\nk: 0\ntorsion: [[3, 2]]\n")
    s = tmp_path / "s.yaml"
    s.write_text("p1:\n  6: {shape: [1, 2], data: [0, 0]}\n")
    code, out, _ = _run(["--input", str(d), "--steenrod", str(s), "--degree", "6", "--format", "json"])
    assert code == 0
    rep = json.loads(out)
    assert rep["cohomotopy"]["6"]["display"] == "Z ⊕ Z/9"


def test_json_round_trip_and_determinism(eight):
    a = _run(["--input", str(eight), "--format", "json", "--check"])[1]
    b = _run(["--input", str(eight), "--format", "json", "--check"])[1]
    assert a == b
    rep = Report.from_dict(json.loads(a))
    assert rep.to_json() + "\n" == a


def test_text_and_json_carry_the_same_results(eight):
    text = _run(["--input", str(eight)])[1]
    data = json.loads(_run(["--input", str(eight), "--format", "json"])[1])
    for i, r in data["cohomotopy"].items():
        assert f"π^{i}(M): {r['display']}" in text
    assert data["splitting"]["render"] in text


@given(descriptors(max_l=3, max_k=3))
@settings(max_examples=40, deadline=None)
def test_report_round_trip(d):
    rep = build_report(d)
    back = Report.from_dict(json.loads(rep.to_json()))
    assert back.to_dict() == rep.to_dict()
    assert back.to_text() == rep.to_text()
    for i, r in compute_all(d).items():
        assert agree(result_from_dict(r.to_dict()), r)


def test_module_entry_point(eight):
    proc = subprocess.run(
        [sys.executable, "-m", "cohomotopy", "--input", str(eight), "--degree", "8"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0 and "π^8(M): Z/2" in proc.stdout
