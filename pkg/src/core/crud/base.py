import io
from pathlib import Path
from typing import Generic, Iterable, Type, TypeVar

import pandas as pd

from src.core.exceptions import DataIOError
from src.core.schemas import Row

RowSchemaType = TypeVar("RowSchemaType", bound=Row)


class CsvTable(Generic[RowSchemaType]):
    def __init__(self, row_schema: Type[RowSchemaType], float_format: str | None = None):
        """
        Initialize the CsvTable class.

        :param row_schema: Type[RowSchemaType] - pydantic row schema; its field order is the column order.
        :param float_format: str | None - printf-style format for float columns, repr when None.
        """
        self.row_schema = row_schema
        self.float_format = float_format

    @property
    def columns(self) -> list[str]:
        return [field.alias or name for name, field in self.row_schema.model_fields.items()]

    def to_frame(self, rows: Iterable[RowSchemaType]) -> pd.DataFrame:
        return pd.DataFrame([row.model_dump(by_alias=True) for row in rows], columns=self.columns)

    def dumps(self, rows: Iterable[RowSchemaType]) -> str:
        buffer = io.StringIO()
        self.to_frame(rows).to_csv(buffer, index=False, lineterminator="\n", float_format=self.float_format, na_rep="")
        return buffer.getvalue()

    def write(self, path: str | Path, rows: Iterable[RowSchemaType]) -> Path:
        path = Path(path)
        try:
            path.parent.mkdir(parents=True, exist_ok=True)
            path.write_text(self.dumps(rows), encoding="utf-8")
        except OSError as error:
            raise DataIOError(f"cannot write {path}: {error.strerror or error}")
        return path

    def read(self, path: str | Path) -> list[RowSchemaType]:
        try:
            frame = pd.read_csv(path)
        except (OSError, pd.errors.ParserError, pd.errors.EmptyDataError) as error:
            raise DataIOError(f"cannot read {path}: {error}")
        if list(frame.columns) != self.columns:
            raise DataIOError(f"{path}: expected header {','.join(self.columns)}, got {','.join(frame.columns)}")
        frame = frame.astype(object).where(frame.notna(), None)
        return [self.row_schema.model_validate(record) for record in frame.to_dict("records")]
