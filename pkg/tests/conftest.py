"""Shared fixtures for the Zinbiel toolkit tests."""

from pathlib import Path

import pytest

from zinbiel.algebra import families
from zinbiel.algebra.structure import Algebra
from zinbiel.core.logging import setup_logging
from zinbiel.models import FamilyId, FamilyParams
from zinbiel.services import FileService


@pytest.fixture(autouse=True)
def quiet_logging() -> None:
    setup_logging("WARNING")


@pytest.fixture
def ex31() -> Algebra:
    return families.build_family(FamilyParams(family=FamilyId.EX31))


@pytest.fixture
def file_service() -> FileService:
    return FileService()


@pytest.fixture
def ex31_file(tmp_path: Path, ex31: Algebra, file_service: FileService) -> Path:
    path = tmp_path / "ex31.json"
    file_service.save_algebra(ex31, path)
    return path
