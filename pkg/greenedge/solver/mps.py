"""

Copyright (C) 2025-2030, All Rights Reserved
GreenEdge Developers

LEGAL NOTICE:
This software is proprietary and confidential. Unauthorized copying,
distribution, modification, or use is strictly prohibited without
explicit written permission from the copyright holder.

MPS Writer - Fixed-format MPS export of a MilpModel.

Columns are renamed C0000001.., rows R0000001.. and the objective row COST
so every name fits the eight-character fields. The renaming table is
written next to the MPS file as ``<path>.names``, one
``short_name original_name`` pair per line.

Field layout (1-based columns): 2-3, 5-12, 15-22, 25-36, 40-47, 50-61.
"""

import logging
import math
from pathlib import Path
from typing import Dict, List, Tuple, Union

from ..model.milp import MilpModel
from ..utils.file_utils import save_text
from .lp import SolverError

logger = logging.getLogger(__name__)

OBJECTIVE_ROW = "COST"
BOUND_SET = "BND"
RHS_SET = "RHS"
NUMBER_WIDTH = 12
# UP value for integer columns with no upper bound
INTEGER_INFINITY = 1e30


class MpsWriteError(SolverError):
    """Raised when a model can't be exported."""
    pass


def format_number(value: float) -> str:
    """Shortest %g rendering of value that fits a 12-character field."""
    if value == 0.0:
        return "0"
    for digits in range(12, 0, -1):
        text = f"{value:.{digits}g}"
        if len(text) <= NUMBER_WIDTH:
            return text
    raise MpsWriteError(f"number {value!r} does not fit an MPS field")


def _line(f1: str = "", f2: str = "", f3: str = "", f4: str = "", f5: str = "", f6: str = "") -> str:
    text = f" {f1:<2} {f2:<8}  {f3:<8}  {f4:>12}   {f5:<8}  {f6:>12}"
    return text.rstrip()


def rename_table(m: MilpModel) -> Tuple[List[str], List[str]]:
    """Short column and row names, in model order."""
    columns = [f"C{k + 1:07d}" for k in range(m.num_variables)]
    rows = [f"R{i + 1:07d}" for i in range(m.num_rows)]
    return columns, rows


def mps_text(m: MilpModel) -> str:
    """
    Render a model as fixed-format MPS.

    Raises:
        MpsWriteError: If the model is structurally inconsistent
    """
    problems = m.validate()
    if problems:
        raise MpsWriteError(f"model {m.name} is inconsistent: {problems[0]}")
    columns, rows = rename_table(m)

    entries: Dict[int, List[Tuple[str, float]]] = {k: [] for k in range(m.num_variables)}
    for var in m.variables:
        if var.cost != 0.0:
            entries[var.index].append((OBJECTIVE_ROW, var.cost))
    for row in m.rows:
        for k, coef in sorted(row.coefficients.items()):
            entries[k].append((rows[row.index], coef))

    out = [f"NAME          {m.name[:8].upper()}", "ROWS", _line("N", OBJECTIVE_ROW)]
    for row in m.rows:
        out.append(_line(row.sense.value, rows[row.index]))

    out.append("COLUMNS")
    marker = 0
    in_integer_block = False
    for var in m.variables:
        if var.integer != in_integer_block:
            marker += 1
            kind = "'INTORG'" if var.integer else "'INTEND'"
            out.append(_line("", f"MARKER{marker:02d}", "'MARKER'", "", kind))
            in_integer_block = var.integer
        column_entries = entries[var.index] or [(OBJECTIVE_ROW, 0.0)]
        for row_name, coef in column_entries:
            out.append(_line("", columns[var.index], row_name, format_number(coef)))
    if in_integer_block:
        marker += 1
        out.append(_line("", f"MARKER{marker:02d}", "'MARKER'", "", "'INTEND'"))

    out.append("RHS")
    for row in m.rows:
        if row.rhs != 0.0:
            out.append(_line("", RHS_SET, rows[row.index], format_number(row.rhs)))

    out.append("BOUNDS")
    for var in m.variables:
        name = columns[var.index]
        if var.lower == var.upper:
            out.append(_line("FX", BOUND_SET, name, format_number(var.lower)))
            continue
        if var.lower != 0.0:
            out.append(_line("LO", BOUND_SET, name, format_number(var.lower)))
        if math.isfinite(var.upper):
            out.append(_line("UP", BOUND_SET, name, format_number(var.upper)))
        elif var.integer:
            out.append(_line("UP", BOUND_SET, name, format_number(INTEGER_INFINITY)))
    out.append("ENDATA")
    return "\n".join(out) + "\n"


def names_text(m: MilpModel) -> str:
    """The renaming table as text."""
    columns, rows = rename_table(m)
    lines = [f"{OBJECTIVE_ROW} objective"]
    lines += [f"{short} {var.name}" for short, var in zip(columns, m.variables)]
    lines += [f"{short} {row.name}" for short, row in zip(rows, m.rows)]
    return "\n".join(lines) + "\n"


def write_mps(m: MilpModel, path: Union[str, Path]) -> Path:
    """
    Write a model to an MPS file and its renaming table to ``<path>.names``.

    Args:
        m: The model
        path: Output file

    Returns:
        Path of the renaming table

    Raises:
        MpsWriteError: If the model is inconsistent or the path unwritable
    """
    path = Path(path)
    names_path = path.with_name(path.name + ".names")
    text = mps_text(m)
    try:
        save_text(text, path)
        save_text(names_text(m), names_path)
    except OSError as e:
        raise MpsWriteError(f"cannot write {path}: {e}") from e
    logger.info("wrote %s (%d columns, %d rows, %d integer)",
                path, m.num_variables, m.num_rows, m.num_integers)
    return names_path

