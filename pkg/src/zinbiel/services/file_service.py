"""File operations service."""

import json
from pathlib import Path
from typing import Any, Callable, Dict, Optional, Sequence, Type, TypeVar

from pydantic import BaseModel, ValidationError

from ..algebra.deduction import PartialTable
from ..algebra.scalar import ScalarField
from ..algebra.structure import Algebra
from ..core.config import FORMAT_VERSION
from ..core.exceptions import FileError, FormatVersionError, SchemaError, ZinbielError
from ..core.logging import get_logger
from ..models import (
    AlgebraDocument,
    PairEntry,
    PartialTableDocument,
    ProductEntry,
    TermEntry,
)

logger = get_logger(__name__)

DocumentT = TypeVar("DocumentT", bound=BaseModel)


def _field_path(loc: Sequence[Any]) -> str:
    path = ""
    for part in loc:
        path += f"[{part}]" if isinstance(part, int) else (f".{part}" if path else str(part))
    return path or "<root>"


def dumps(document: BaseModel) -> str:
    """Deterministic JSON text of a document or report."""
    return json.dumps(document.model_dump(mode="json", exclude_none=True), indent=2, ensure_ascii=False) + "\n"


def algebra_to_document(a: Algebra, degrees: Optional[Sequence[int]] = None) -> AlgebraDocument:
    """Interchange document of ``a`` with products sorted by (i, j) and terms by k."""
    products = [
        ProductEntry(
            i=i + 1,
            j=j + 1,
            terms=[TermEntry(k=k + 1, coeff=a.space.format(c)) for k, c in sorted(column.items())],
        )
        for (i, j), column in sorted(a.table.items())
    ]
    return AlgebraDocument(
        version=FORMAT_VERSION,
        dim=a.dim,
        labels=list(a.labels),
        params=list(a.params),
        products=products,
        degrees=list(degrees) if degrees is not None else None,
    )


def _products(
    space: ScalarField, entries: Sequence[ProductEntry], section: str
) -> Dict[tuple, Dict[int, Any]]:
    table: Dict[tuple, Dict[int, Any]] = {}
    for n, entry in enumerate(entries):
        pair = (entry.i - 1, entry.j - 1)
        if pair in table:
            raise SchemaError(f"{section}[{n}]: duplicate product ({entry.i}, {entry.j})")
        column: Dict[int, Any] = {}
        for m, term in enumerate(entry.terms):
            try:
                value = space.parse(term.coeff)
            except ZinbielError as e:
                raise SchemaError(f"{section}[{n}].terms[{m}].coeff: {e.message}", e) from e
            if term.k - 1 in column:
                raise SchemaError(f"{section}[{n}].terms[{m}]: duplicate target {term.k}")
            if value:
                column[term.k - 1] = value
        table[pair] = column
    return table


def document_to_algebra(document: AlgebraDocument) -> Algebra:
    """Algebra described by a validated document."""
    space = ScalarField(document.params)
    if list(space.params) != list(document.params):
        raise SchemaError(f"params must be sorted and distinct, got {document.params}")
    table = _products(space, document.products, "products")
    return Algebra.build(
        space,
        document.labels,
        [(i, j, k, c) for (i, j), column in table.items() for k, c in column.items()],
    )


def partial_table_to_document(t: PartialTable) -> PartialTableDocument:
    known = [
        ProductEntry(
            i=i + 1,
            j=j + 1,
            terms=[TermEntry(k=k + 1, coeff=t.space.format(c)) for k, c in sorted(column.items()) if c],
        )
        for (i, j), column in sorted(t.known.items())
    ]
    return PartialTableDocument(
        version=FORMAT_VERSION,
        dim=t.dim,
        labels=list(t.labels),
        known=known,
        unknown=[PairEntry(i=i + 1, j=j + 1) for i, j in sorted(t.unknown)],
    )


def document_to_partial_table(document: PartialTableDocument) -> PartialTable:
    space = ScalarField()
    known = _products(space, document.known, "known")
    unknown = frozenset((e.i - 1, e.j - 1) for e in document.unknown)
    return PartialTable(space, tuple(document.labels), known, unknown)


class FileService:
    """Service for file operations."""

    def read_text(self, path: Path) -> str:
        """Read a UTF-8 file.

        Raises:
            FileError: If the file does not exist or cannot be read
        """
        try:
            if not path.exists():
                raise FileError(f"File not found: {path}")
            return path.read_text(encoding="utf-8")
        except FileError:
            raise
        except OSError as e:
            raise FileError(f"Failed to read {path}: {e}", e) from e

    def write_text(self, content: str, path: Path) -> None:
        """Write a UTF-8 file, creating parent directories.

        Raises:
            FileError: If the file cannot be written
        """
        try:
            path.parent.mkdir(parents=True, exist_ok=True)
            path.write_text(content, encoding="utf-8")
        except OSError as e:
            raise FileError(f"Failed to write {path}: {e}", e) from e

    def parse_document(self, text: str, model: Type[DocumentT], source: str = "<input>") -> DocumentT:
        """Parse and validate a versioned JSON document.

        Args:
            text: JSON text
            model: Document model to validate against
            source: Name used in diagnostics

        Returns:
            Validated document

        Raises:
            SchemaError: On malformed JSON (with line and column) or schema violations (with field path)
            FormatVersionError: If the document carries another format version
        """
        try:
            data = json.loads(text)
        except json.JSONDecodeError as e:
            raise SchemaError(f"{source}:{e.lineno}:{e.colno}: {e.msg}", e) from e
        if not isinstance(data, dict):
            raise SchemaError(f"{source}: top level must be a JSON object")
        if "version" not in data:
            raise SchemaError(f"{source}: version: missing format version")
        version = data["version"]
        if version != FORMAT_VERSION:
            raise FormatVersionError(
                f"{source}: format version {version!r} is not supported (expected {FORMAT_VERSION})"
            )
        try:
            return model.model_validate(data)
        except ValidationError as e:
            first = e.errors()[0]
            raise SchemaError(f"{source}: {_field_path(first['loc'])}: {first['msg']}", e) from e

    def load_algebra(self, path: Path) -> Algebra:
        """Load an algebra from a JSON file.

        Raises:
            FileError: If the file cannot be read
            SchemaError: If the content is not a valid algebra document
        """
        document = self.parse_document(self.read_text(path), AlgebraDocument, str(path))
        algebra = self.wrap_schema(lambda: document_to_algebra(document), path)
        logger.debug("load_algebra", path=str(path), dim=algebra.dim, params=list(algebra.params))
        return algebra

    def save_algebra(
        self, a: Algebra, path: Optional[Path] = None, degrees: Optional[Sequence[int]] = None
    ) -> str:
        """Serialize an algebra; writes it when ``path`` is given and returns the text."""
        text = dumps(algebra_to_document(a, degrees))
        if path is not None:
            self.write_text(text, path)
            logger.debug("save_algebra", path=str(path), dim=a.dim)
        return text

    def load_partial_table(self, path: Path) -> PartialTable:
        """Load a partially known table from a JSON file.

        Raises:
            FileError: If the file cannot be read
            SchemaError: If the content is not a valid partial-table document
        """
        document = self.parse_document(self.read_text(path), PartialTableDocument, str(path))
        return self.wrap_schema(lambda: document_to_partial_table(document), path)

    def save_partial_table(self, t: PartialTable, path: Optional[Path] = None) -> str:
        text = dumps(partial_table_to_document(t))
        if path is not None:
            self.write_text(text, path)
        return text

    def save_report(self, report: BaseModel, path: Path) -> None:
        """Write the JSON twin of a command report."""
        self.write_text(dumps(report), path)

    @staticmethod
    def wrap_schema(build: Callable[[], Any], path: Path) -> Any:
        """Run ``build`` and prefix schema-level failures with the file name."""
        try:
            return build()
        except ZinbielError as e:
            raise SchemaError(f"{path}: {e.message}", e) from e
