import json
from pathlib import Path

import pytest

from nakajima_hall.cli import EXIT_BUDGET, EXIT_CONFIG, EXIT_FAIL, EXIT_OK, main

CONFIGS = Path(__file__).resolve().parent.parent / "demos" / "configs"


def run(tmp_path, config, command, *extra):
    out = tmp_path / f"{command}.json"
    code = main(["--config", str(CONFIGS / config), "--command", command, "--output", str(out), *extra])
    return code, (json.loads(out.read_text()) if out.exists() and out.read_text() else None)


@pytest.mark.parametrize("command", ["present", "indecs", "hall", "qgroup", "stratify"])
def test_commands_succeed_on_a2(tmp_path, command):
    code, report = run(tmp_path, "exa2.json", command)
    assert code == EXIT_OK
    assert report["command"] == command and report["status"] == EXIT_OK
    assert len(report["config_sha256"]) == 64


def test_present_counts(tmp_path):
    _, report = run(tmp_path, "exa2.json", "present")
    S = report["result"]["presentations"]["S"]
    assert (len(S["vertices"]), len(S["arrows"]), len(S["relations"])) == (4, 6, 6)


def test_hall_value(tmp_path):
    code, report = run(tmp_path, "a1.json", "hall")
    assert code == EXIT_OK
    assert report["result"]["requested"] == "q - 1"


def test_bad_config(tmp_path):
    code, _ = run(tmp_path, "bad.json", "present")
    assert code == EXIT_CONFIG


def test_missing_config(tmp_path):
    code = main(["--config", str(tmp_path / "none.json"), "--command", "present",
                 "--output", str(tmp_path / "x.json")])
    assert code == EXIT_CONFIG


def test_budget_exceeded(tmp_path):
    code, _ = run(tmp_path, "a1.json", "hall", "--budget", "1")
    assert code == EXIT_BUDGET


def test_wrong_sign_fails(tmp_path):
    code, report = run(tmp_path, "a1.json", "qgroup", "--fi-sign", "plus")
    assert code == EXIT_FAIL


def test_deterministic(tmp_path):
    a = tmp_path / "a.json"
    b = tmp_path / "b.json"
    for out in (a, b):
        main(["--config", str(CONFIGS / "exa2.json"), "--command", "stratify", "--output", str(out)])
    assert a.read_bytes() == b.read_bytes()


def test_text_format(tmp_path, capsys):
    code = main(["--config", str(CONFIGS / "a1.json"), "--command", "indecs", "--format", "text"])
    assert code == EXIT_OK
    assert "K1[1]" in capsys.readouterr().out
