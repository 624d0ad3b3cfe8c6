"""End-to-end tests of the command line, with family constructors as the only fixtures."""

import json
from pathlib import Path
from typing import List

import pytest
from click.testing import CliRunner, Result

from zinbiel.algebra.deduction import short_block_table
from zinbiel.cli import cli
from zinbiel.services import FileService


@pytest.fixture
def runner() -> CliRunner:
    return CliRunner()


def run(runner: CliRunner, args: List[str]) -> Result:
    return runner.invoke(cli, args, catch_exceptions=False)


def family_file(runner: CliRunner, path: Path, *args: str) -> Path:
    result = run(runner, ["family", *args, "--out", str(path)])
    assert result.exit_code == 0, result.output
    return path


def test_family_then_verify(runner: CliRunner, tmp_path: Path) -> None:
    path = family_file(runner, tmp_path / "a.json", "--name", "EX31")
    result = run(runner, ["verify", str(path)])
    assert result.exit_code == 0
    assert "Zinbiel: OK" in result.output
    assert "lower series dims: [4, 2, 1, 0]" in result.output


def test_family_prints_json_without_out(runner: CliRunner) -> None:
    result = run(runner, ["family", "--name", "NF", "--n", "3"])
    assert result.exit_code == 0
    document = json.loads(result.output)
    assert document["dim"] == 3
    assert document["version"] == 1


def test_verify_reports_defects(runner: CliRunner, tmp_path: Path) -> None:
    path = tmp_path / "bad.json"
    path.write_text(
        json.dumps(
            {"version": 1, "dim": 1, "labels": ["x"], "products": [{"i": 1, "j": 1, "terms": [{"k": 1, "coeff": "1"}]}]}
        ),
        encoding="utf-8",
    )
    result = run(runner, ["verify", str(path)])
    assert result.exit_code == 1
    assert "Zinbiel: FAIL (1 defects)" in result.output


def test_charseq(runner: CliRunner, tmp_path: Path) -> None:
    path = family_file(runner, tmp_path / "a.json", "--name", "EX31")
    result = run(runner, ["charseq", str(path), "--grid-height", "2"])
    assert result.exit_code == 0
    assert result.output.splitlines()[0] == "(3,1)"
    assert "type: II" in result.output
    assert "block layout: (1,3)" in result.output


def test_charseq_json_twin_is_reproducible(runner: CliRunner, tmp_path: Path) -> None:
    path = family_file(runner, tmp_path / "a.json", "--name", "EX31")
    outputs = []
    for name in ("one.json", "two.json"):
        out = tmp_path / name
        result = run(runner, ["charseq", str(path), "--samples", "6", "--seed", "3", "--json-out", str(out)])
        assert result.exit_code == 0
        outputs.append(out.read_bytes())
    assert outputs[0] == outputs[1]
    config = json.loads(outputs[0])["config"]
    assert config["seed"] == 3
    assert config["samples"] == 6


def test_charseq_binds_parameters(runner: CliRunner, tmp_path: Path) -> None:
    path = family_file(runner, tmp_path / "a1.json", "--name", "A1", "--n", "8", "--p", "3")
    unbound = run(runner, ["charseq", str(path)])
    assert unbound.exit_code == 65
    result = run(runner, ["charseq", str(path), "--set", "beta1=0"])
    assert result.exit_code == 0
    assert result.output.splitlines()[0] == "(5,3)"
    assert "type: I" in result.output
    malformed = run(runner, ["charseq", str(path), "--set", "beta1"])
    assert malformed.exit_code == 64


def test_grade(runner: CliRunner, tmp_path: Path) -> None:
    path = family_file(runner, tmp_path / "a.json", "--name", "EX31")
    out = tmp_path / "graded.json"
    result = run(runner, ["grade", str(path), "--out", str(out)])
    assert result.exit_code == 0
    assert "component dims: [2, 1, 1]" in result.output
    assert json.loads(out.read_text(encoding="utf-8"))["degrees"] == [1, 1, 2, 3]


def test_iso_exit_codes(runner: CliRunner, tmp_path: Path) -> None:
    a1 = family_file(runner, tmp_path / "a1.json", "--name", "A1", "--n", "8", "--p", "3", "--beta1", "0")
    a3 = family_file(runner, tmp_path / "a3.json", "--name", "A3", "--n", "8", "--p", "3")
    same = run(runner, ["iso", str(a1), str(a1)])
    assert same.exit_code == 0
    assert "isomorphic: yes" in same.output
    different = run(runner, ["iso", str(a3), str(a1)])
    assert different.exit_code == 1
    assert "isomorphic: no" in different.output


def test_natural(runner: CliRunner, tmp_path: Path) -> None:
    path = family_file(runner, tmp_path / "a.json", "--name", "EX31")
    result = run(runner, ["natural", str(path)])
    assert result.exit_code == 0
    assert "isomorphic: yes" in result.output


def test_deduce(runner: CliRunner, tmp_path: Path) -> None:
    table = tmp_path / "partial.json"
    FileService().save_partial_table(short_block_table(4), table)
    out = tmp_path / "deduce.json"
    result = run(runner, ["deduce", "--table", str(table), "--json-out", str(out)])
    assert result.exit_code == 0
    assert "contradiction at zinbiel(1,1,3): e5 forced to 0" in result.output
    report = json.loads(out.read_text(encoding="utf-8"))
    assert report["contradiction"]["forced_zero"] == ["e5"]


def test_nonexist(runner: CliRunner, tmp_path: Path) -> None:
    out = tmp_path / "cert.json"
    result = run(runner, ["nonexist", "--p", "3", "--json-out", str(out)])
    assert result.exit_code == 0
    assert "infeasible: yes" in result.output
    assert "det of the 4x4 binomial matrix: 1" in result.output
    report = json.loads(out.read_text(encoding="utf-8"))
    assert report["infeasible"] is True
    assert report["determinant"] == "1"


def test_nonexist_rejects_small_p(runner: CliRunner) -> None:
    result = run(runner, ["nonexist", "--p", "2"])
    assert result.exit_code == 65
    assert "p >= 3" in result.output


def test_identity_suite(runner: CliRunner) -> None:
    result = run(runner, ["identity-suite", "--max", "4"])
    assert result.exit_code == 0
    assert result.output.rstrip().endswith("OK")


def test_residuals(runner: CliRunner) -> None:
    result = run(runner, ["residuals", "--name", "W31", "--p", "3"])
    assert result.exit_code == 0
    assert "beta row[3] = 0" in result.output
    assert "all zero: yes" in result.output


def test_bad_family_parameters(runner: CliRunner) -> None:
    result = run(runner, ["family", "--name", "A1", "--n", "5", "--p", "3"])
    assert result.exit_code == 65
    assert "n >= 8" in result.output


def test_usage_errors_exit_64(runner: CliRunner, tmp_path: Path) -> None:
    assert run(runner, ["verify", "--bogus", "x"]).exit_code == 64
    assert run(runner, ["nonexist"]).exit_code == 64
    assert run(runner, ["family", "--name", "A99"]).exit_code == 64


def test_missing_input_exits_64(runner: CliRunner, tmp_path: Path) -> None:
    result = run(runner, ["verify", str(tmp_path / "absent.json")])
    assert result.exit_code == 64
    assert "File not found" in result.output
