"""

Copyright (C) 2025-2030, All Rights Reserved
GreenEdge Developers

LEGAL NOTICE:
This software is proprietary and confidential. Unauthorized copying,
distribution, modification, or use is strictly prohibited without
explicit written permission from the copyright holder.

CSV Writer - Sweep tables to and from CSV, plus the sweep manifest.

Numbers are written with 6 significant digits, missing values as empty
fields. Two-parameter tables carry an extra trailing param2 column.
"""

import csv
import io
import logging
from pathlib import Path
from typing import Any, Dict, List, Optional, Union

from ..core.scenario import Scenario, scenario_summary
from ..utils.file_utils import save_yaml
from .sweep import SweepRow, SweepSpec, SweepTable

logger = logging.getLogger(__name__)

CSV_COLUMNS = [
    "param",
    "variant",
    "total_cost",
    "unmet_cost",
    "net_electricity",
    "carbon_cost",
    "revenue",
    "emissions_tons",
    "curtailed_kwh",
    "unmet_requests",
    "status",
    "nodes",
    "wall_ms",
]

_FLOAT_COLUMNS = {
    "param", "param2", "total_cost", "unmet_cost", "net_electricity", "carbon_cost", "revenue",
    "emissions_tons", "curtailed_kwh", "unmet_requests", "wall_ms",
}


class CsvWriteError(Exception):
    """Raised when a table can't be written or read back."""

    def __init__(self, message: str):
        self.message = message
        super().__init__(message)


def _format(value: Any) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return str(value).lower()
    if isinstance(value, int):
        return str(value)
    if isinstance(value, float):
        text = f"{value:.6g}"
        return "0" if text == "-0" else text
    return str(value)


def columns_for(t: SweepTable) -> List[str]:
    return CSV_COLUMNS + (["param2"] if t.two_parameter else [])


def format_csv(t: SweepTable) -> str:
    """
    Render a table as CSV text.

    Raises:
        CsvWriteError: If the table has no rows
    """
    if not t.rows:
        raise CsvWriteError("cannot write an empty sweep table")
    columns = columns_for(t)
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\r\n")
    writer.writerow(columns)
    for row in t.rows:
        writer.writerow([_format(getattr(row, c)) for c in columns])
    return buffer.getvalue()


def write_csv(t: SweepTable, path: Union[str, Path]) -> None:
    """
    Write a table as CSV.

    Raises:
        CsvWriteError: If the table is empty or the path unwritable
    """
    text = format_csv(t)
    path = Path(path)
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        with open(path, "w", encoding="utf-8", newline="") as f:
            f.write(text)
    except OSError as e:
        raise CsvWriteError(f"cannot write {path}: {e}") from e
    logger.info("wrote %d rows to %s", len(t.rows), path)


def _parse(column: str, text: str) -> Any:
    if text == "":
        return None
    if column == "nodes":
        return int(text)
    if column in _FLOAT_COLUMNS:
        return float(text)
    return text


def read_csv(path: Union[str, Path], param: str = "param",
             param2: Optional[str] = None) -> SweepTable:
    """
    Read a table written by write_csv.

    Args:
        path: CSV file
        param: Name recorded as the table's swept parameter
        param2: Name of the second parameter when the file has a param2 column

    Raises:
        CsvWriteError: If the header is not the expected one
    """
    with open(path, "r", encoding="utf-8", newline="") as f:
        reader = csv.reader(f)
        try:
            header = next(reader)
        except StopIteration:
            raise CsvWriteError(f"{path} is empty") from None
        if header[:len(CSV_COLUMNS)] != CSV_COLUMNS or header[len(CSV_COLUMNS):] not in ([], ["param2"]):
            raise CsvWriteError(f"{path}: unexpected header {header}")
        two_parameter = len(header) > len(CSV_COLUMNS)
        rows = []
        for record in reader:
            values = {c: _parse(c, v) for c, v in zip(header, record)}
            rows.append(SweepRow(**values))
    if two_parameter and param2 is None:
        param2 = "param2"
    return SweepTable(param=param, rows=rows, param2=param2 if two_parameter else None)


def write_manifest(
    path: Union[str, Path],
    spec: SweepSpec,
    base: Optional[Scenario] = None,
    outputs: Optional[List[str]] = None,
    extra: Optional[Dict[str, Any]] = None,
) -> None:
    """
    Write the YAML manifest of a sweep: package version, seed, sweep settings.

    Raises:
        CsvWriteError: If the path is unwritable
    """
    from .. import __version__

    manifest: Dict[str, Any] = {"greenedge_version": __version__, "sweep": spec.to_dict()}
    if base is not None:
        manifest["base"] = scenario_summary(base)
    if outputs:
        manifest["outputs"] = list(outputs)
    if extra:
        manifest.update(extra)
    try:
        save_yaml(manifest, path, header="greenedge sweep manifest")
    except OSError as e:
        raise CsvWriteError(f"cannot write {path}: {e}") from e


__all__ = [
    "CSV_COLUMNS",
    "CsvWriteError",
    "columns_for",
    "format_csv",
    "read_csv",
    "write_csv",
    "write_manifest",
]
