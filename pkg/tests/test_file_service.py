"""Tests for JSON persistence."""

import json
from pathlib import Path

import pytest

from zinbiel.algebra import families
from zinbiel.algebra.deduction import short_block_table
from zinbiel.algebra.structure import Algebra
from zinbiel.core.exceptions import FileError, FormatVersionError, SchemaError
from zinbiel.models import AlgebraDocument, FamilyId, FamilyParams, RunConfig, VerifyReport
from zinbiel.services import FileService
from zinbiel.services.file_service import algebra_to_document


def write(path: Path, data: object) -> Path:
    path.write_text(json.dumps(data), encoding="utf-8")
    return path


def test_document_layout(ex31: Algebra) -> None:
    document = algebra_to_document(ex31)
    assert document.version == 1
    assert document.labels == ["e1", "e2", "e3", "e4"]
    assert [(p.i, p.j) for p in document.products] == [(1, 2), (1, 3), (2, 1)]
    assert document.products[2].terms[0].coeff == "-1"


def test_save_load_symbolic_family(tmp_path: Path, file_service: FileService) -> None:
    a = families.build_family(FamilyParams(family=FamilyId.A7, p=3))
    path = tmp_path / "a7.json"
    text = file_service.save_algebra(a, path)
    assert path.read_text(encoding="utf-8") == text
    assert file_service.load_algebra(path) == a
    assert file_service.save_algebra(file_service.load_algebra(path)) == text


def test_degrees_are_written(tmp_path: Path, ex31: Algebra, file_service: FileService) -> None:
    path = tmp_path / "graded.json"
    file_service.save_algebra(ex31, path, degrees=[1, 1, 2, 3])
    assert json.loads(path.read_text(encoding="utf-8"))["degrees"] == [1, 1, 2, 3]


def test_partial_table(tmp_path: Path, file_service: FileService) -> None:
    t = short_block_table(4)
    path = tmp_path / "partial.json"
    file_service.save_partial_table(t, path)
    loaded = file_service.load_partial_table(path)
    assert loaded.unknown == t.unknown
    assert loaded.labels == t.labels
    assert {k: dict(v) for k, v in loaded.known.items()} == {k: dict(v) for k, v in t.known.items()}


def test_missing_file(tmp_path: Path, file_service: FileService) -> None:
    with pytest.raises(FileError):
        file_service.load_algebra(tmp_path / "absent.json")


def test_malformed_json_has_position(tmp_path: Path, file_service: FileService) -> None:
    path = tmp_path / "bad.json"
    path.write_text('{"version": 1, "dim": 1,\n "labels": [}', encoding="utf-8")
    with pytest.raises(SchemaError, match=r"bad.json:2:\d+"):
        file_service.load_algebra(path)


def test_zero_denominator_names_the_field(tmp_path: Path, file_service: FileService) -> None:
    path = write(
        tmp_path / "a.json",
        {
            "version": 1,
            "dim": 2,
            "labels": ["x", "y"],
            "products": [{"i": 1, "j": 1, "terms": [{"k": 2, "coeff": "1/0"}]}],
        },
    )
    with pytest.raises(SchemaError, match=r"products\[0\]\.terms\[0\]\.coeff"):
        file_service.load_algebra(path)


def test_version_mismatch(tmp_path: Path, file_service: FileService) -> None:
    path = write(tmp_path / "a.json", {"version": 2, "dim": 1, "labels": ["x"]})
    with pytest.raises(FormatVersionError, match="version 2"):
        file_service.load_algebra(path)


def test_missing_version_rejected(tmp_path: Path, file_service: FileService) -> None:
    path = write(tmp_path / "a.json", {"dim": 1, "labels": ["x"]})
    with pytest.raises(SchemaError, match="missing format version"):
        file_service.load_algebra(path)


def test_written_version_ignores_environment(
    tmp_path: Path, file_service: FileService, ex31: Algebra, monkeypatch: pytest.MonkeyPatch
) -> None:
    monkeypatch.setenv("ZINBIEL_FORMAT_VERSION", "2")
    path = tmp_path / "a.json"
    file_service.save_algebra(ex31, path)
    assert json.loads(path.read_text(encoding="utf-8"))["version"] == 1
    assert file_service.load_algebra(path) == ex31


def test_schema_violation_has_field_path(tmp_path: Path, file_service: FileService) -> None:
    path = write(tmp_path / "a.json", {"version": 1, "dim": 1, "labels": ["x"], "products": [{"i": 0, "j": 1}]})
    with pytest.raises(SchemaError, match=r"products\[0\]\.i"):
        file_service.load_algebra(path)


def test_unknown_field_rejected(file_service: FileService) -> None:
    with pytest.raises(SchemaError, match="colour"):
        file_service.parse_document('{"version": 1, "dim": 1, "labels": ["x"], "colour": 3}', AlgebraDocument)


def test_duplicate_product(tmp_path: Path, file_service: FileService) -> None:
    entry = {"i": 1, "j": 1, "terms": [{"k": 1, "coeff": "1"}]}
    path = write(tmp_path / "a.json", {"version": 1, "dim": 1, "labels": ["x"], "products": [entry, entry]})
    with pytest.raises(SchemaError, match="duplicate"):
        file_service.load_algebra(path)


def test_unsorted_params(tmp_path: Path, file_service: FileService) -> None:
    path = write(tmp_path / "a.json", {"version": 1, "dim": 1, "labels": ["x"], "params": ["b", "a"]})
    with pytest.raises(SchemaError, match="sorted"):
        file_service.load_algebra(path)


def test_save_report(tmp_path: Path, file_service: FileService) -> None:
    report = VerifyReport(
        config=RunConfig(command="verify"), dim=1, zinbiel=True, defect_count=0, series_dims=[1, 0]
    )
    path = tmp_path / "out" / "report.json"
    file_service.save_report(report, path)
    data = json.loads(path.read_text(encoding="utf-8"))
    assert data["config"]["command"] == "verify"
    assert "nilindex" not in data


DATA = Path(__file__).resolve().parent.parent / "data"


def test_shipped_examples(file_service: FileService, ex31: Algebra) -> None:
    assert file_service.load_algebra(DATA / "ex31.json") == ex31
    assert file_service.save_algebra(ex31) == (DATA / "ex31.json").read_text(encoding="utf-8")
    table = file_service.load_partial_table(DATA / "short_block.json")
    assert table.unknown == short_block_table(4).unknown
