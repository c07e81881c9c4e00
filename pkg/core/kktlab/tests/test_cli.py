import json
from pathlib import Path

import pytest

from kktlab.cli import format_table, main
from kktlab.logic.liealg import so3

ROOT = Path(__file__).resolve().parents[3]


@pytest.fixture(autouse=True)
def at_repo_root(monkeypatch):
    monkeypatch.chdir(ROOT)
    monkeypatch.delenv("KKTLAB_THREADS", raising=False)


def test_passing_run_prints_json(capsys):
    assert main(["grade", "--type", "E6", "--node", "trivalent", "--threads", "1"]) == 0
    report = json.loads(capsys.readouterr().out)
    assert report["command"] == "grade"
    assert report["results"]["depth"] == 7
    assert report["passed"] is True


def test_failed_check_exits_one(capsys, tmp_path):
    path = tmp_path / "broken.json"
    path.write_text(json.dumps(so3().perturbed(0, 1, 0).to_json()), encoding="utf-8")
    assert main(["verify", "--check", "jacobi", "--target", str(path)]) == 1
    report = json.loads(capsys.readouterr().out)
    assert report["passed"] is False
    assert report["checks"][0]["witness"]["triple"] == [0, 1, 2]


@pytest.mark.parametrize("argv", [
    ["tower", "--jordan", "H5:R"],
    ["grade", "--type", "B3", "--node", "9"],
    ["extend", "--type", "X7", "--node", "1"],
    ["grade", "--type", "A2", "--node", "1", "--config", "missing.json"],
])
def test_usage_errors_exit_two(argv, capsys):
    assert main(argv) == 2
    captured = capsys.readouterr()
    assert captured.out == ""
    assert "kktlab" in captured.err


def test_malformed_config_exits_two(tmp_path):
    path = tmp_path / "config.json"
    path.write_text("{seed: ", encoding="utf-8")
    assert main(["grade", "--type", "A2", "--node", "1", "--config", str(path)]) == 2


def test_argument_errors_exit_two():
    with pytest.raises(SystemExit) as excinfo:
        main(["tower"])
    assert excinfo.value.code == 2


def test_config_file_and_flags(tmp_path, capsys):
    path = tmp_path / "config.json"
    path.write_text(json.dumps({"seed": 11, "mode": "sampled=50"}), encoding="utf-8")
    assert main(["verify", "--check", "jacobi", "--target", "A2", "--config", str(path), "--seed", "12"]) == 0
    report = json.loads(capsys.readouterr().out)
    assert report["seed"] == 12
    assert report["mode"] == "sampled=50"
    assert report["checks"][0]["mode"] == "sampled=50"


def test_table_output(capsys):
    assert main(["extend", "--type", "E7", "--node", "black", "--emit", "table"]) == 0
    out = capsys.readouterr().out
    assert out.startswith("kktlab extend")
    assert "[PASS]" in out
    assert out.strip().endswith("PASSED")


def test_format_table_shows_witness():
    report = {"command": "verify", "results": {"dim": 3},
              "checks": [{"name": "jacobi[x]", "passed": False, "checked": 1, "mode": "full",
                          "witness": {"triple": [0, 1, 2]}}],
              "passed": False}
    text = format_table(report)
    assert "[FAIL] jacobi[x]" in text
    assert 'witness: {"triple":[0,1,2]}' in text
    assert text.endswith("FAILED")
