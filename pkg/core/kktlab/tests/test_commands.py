from pathlib import Path

import pytest

from kktlab import KKTLab
from kktlab.config.settings import (CHECK_LIST, COMMAND, PASSED, RESULTS,
                                    SCHEMA, SCHEMA_KEY, TOTAL_TIME)
from kktlab.exceptions import UsageError

ROOT = Path(__file__).resolve().parents[3]


@pytest.fixture
def lab():
    return KKTLab({"seed": 7, "golden_dir": str(ROOT / "data" / "golden"), "threads": 1})


def test_report_envelope(lab):
    report = lab.run("grade", diagram="A2", node="1")
    assert report[SCHEMA_KEY] == SCHEMA
    assert report[COMMAND] == "grade"
    assert report["seed"] == 7
    assert report["mode"] == "auto"
    assert report[TOTAL_TIME] >= 0
    assert report[PASSED]


def test_unknown_command(lab):
    with pytest.raises(UsageError):
        lab.run("bogus")


def test_grade_trivalent_e6(lab):
    report = lab.run("grade", diagram="E6", node="trivalent")
    results = report[RESULTS]
    assert (results["type"], results["dim"], results["depth"]) == ("E6", 78, 7)
    assert results["graded_dims"] == [2, 9, 18, 20, 18, 9, 2]
    assert report[PASSED]


def test_grade_exports(lab, tmp_path):
    out = tmp_path / "a3.json"
    report = lab.run("grade", diagram="A3", node="2", export=str(out))
    assert report[RESULTS]["dim_minus1"] == 4
    assert out.exists()


def test_grade_needs_finite_type(lab):
    with pytest.raises(UsageError):
        lab.run("grade", diagram="[[2,-2],[-2,2]]", node="1")


def test_extend_e7_to_e8(lab):
    report = lab.run("extend", diagram="E7", node="black", n="2")
    results = report[RESULTS]
    assert results["type"] == "E8"
    assert results["classification"] == "finite"
    assert results["dim_minus1"] == 54
    assert results["h_dim_minus1"] == 27
    assert report[PASSED]


def test_extend_sweep_of_a2(lab):
    report = lab.run("extend", diagram="A2", node="1", sweep=True)
    extensions = report[RESULTS]["extensions"]
    assert [e["type"] for e in extensions] == ["A2", "A3", "A4", "A5", "A6", "A7"]
    assert len(report[CHECK_LIST]) == 6
    assert report[PASSED]


def test_extend_beyond_finite_type(lab):
    report = lab.run("extend", diagram="E8", node="8", n="2")
    assert report[RESULTS]["classification"] == "affine"
    assert "type" not in report[RESULTS]


def test_isomorphism_command(lab):
    report = lab.run("isomorphism", diagram="A2", node="1", n="3")
    assert report[PASSED]
    with pytest.raises(UsageError):
        lab.run("isomorphism", diagram="E8", node="8", n="2")


def test_verify_checks(lab):
    assert lab.run("verify", check="jordan", target="H3:R")[PASSED]
    assert lab.run("verify", check="gjts", target="H2:R^2")[PASSED]
    report = lab.run("verify", check="jacobi", target="B2")
    assert report[PASSED]
    assert report[RESULTS]["target_kind"] == "algebra"
    assert lab.run("verify", check="grading", target="A3@2")[PASSED]
    with pytest.raises(UsageError):
        lab.run("verify", check="nonsense", target="A2")


def test_tower_of_spin_factor(lab):
    report = lab.run("tower", jordan="H2:C")
    assert report[PASSED], [c["name"] for c in report[CHECK_LIST] if not c["passed"]]
    names = [c["name"] for c in report[CHECK_LIST]]
    assert "golden[con H2:C]" in names
    assert "con_type[H2:C]" in names


def test_fields_families(lab):
    assert lab.run("fields", family="conformal", signature="1,2")[PASSED]
    assert lab.run("fields", family="generalized", signature="1,1", n="2")[PASSED]
    assert lab.run("fields", family="kantor", jordan="H2:R", n="2")[PASSED]
    with pytest.raises(UsageError):
        lab.run("fields", family="conformal")


@pytest.mark.slow
def test_magic_corner(lab):
    report = lab.run("magic")
    assert report[PASSED]
    assert "table" in report[RESULTS]
