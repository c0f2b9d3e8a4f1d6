"""
GreenEdge - MPS Export Tests

Copyright (C) 2025-2030, All Rights Reserved
GreenEdge Developers
"""

import pytest

from greenedge.core import generate_scenario
from greenedge.model import M0, M1, MilpModel, build_model
from greenedge.solver import MpsWriteError, mps_text, write_mps
from greenedge.solver.mps import format_number, names_text
from tests.helpers import make_scenario, small_spec


def _sections(text):
    sections = {}
    current = None
    for line in text.splitlines():
        if not line.startswith(" "):
            current = line.split()[0]
            sections[current] = []
        else:
            sections[current].append(line)
    return sections


@pytest.fixture(scope="module")
def small_model():
    return build_model(generate_scenario(small_spec()), M0)


def test_section_order(small_model):
    text = mps_text(small_model)
    headers = [line.split()[0] for line in text.splitlines() if not line.startswith(" ")]
    assert headers == ["NAME", "ROWS", "COLUMNS", "RHS", "BOUNDS", "ENDATA"]
    assert text.endswith("ENDATA\n")


def test_rows_section(small_model):
    rows = _sections(mps_text(small_model))["ROWS"]
    assert rows[0].split() == ["N", "COST"]
    assert len(rows) == small_model.num_rows + 1
    senses = [line[1:3].strip() for line in rows[1:]]
    assert senses == small_model.senses()


def test_fields_sit_in_fixed_columns(small_model):
    for line in _sections(mps_text(small_model))["COLUMNS"]:
        if "'MARKER'" in line:
            continue
        assert len(line[4:12].strip()) <= 8
        assert line[4] == "C"
        assert line[14:22].strip() in ("COST",) or line[14] == "R"
        float(line[24:36])
        assert len(line) <= 36


def test_integer_columns_are_wrapped_in_markers(small_model):
    text = mps_text(small_model)
    columns = _sections(text)["COLUMNS"]
    markers = [line.split() for line in columns if "'MARKER'" in line]
    assert [m[2] for m in markers] == ["'INTORG'", "'INTEND'"]
    assert markers[0][0] == "MARKER01" and markers[1][0] == "MARKER02"

    inside = set()
    within = False
    for line in columns:
        if "'INTORG'" in line:
            within = True
        elif "'INTEND'" in line:
            within = False
        elif within:
            inside.add(line.split()[0])
    assert len(inside) == small_model.num_integers


def test_every_column_appears(small_model):
    columns = _sections(mps_text(small_model))["COLUMNS"]
    names = {line.split()[0] for line in columns if "'MARKER'" not in line}
    assert len(names) == small_model.num_variables


def test_fixed_and_upper_bounds():
    model = build_model(make_scenario(), M1)
    bounds = _sections(mps_text(model))["BOUNDS"]
    kinds = {line.split()[0] for line in bounds}
    assert kinds <= {"FX", "LO", "UP"}
    assert all(line.split()[1] == "BND" for line in bounds)
    fixed = [line for line in bounds if line.startswith(" FX")]
    assert fixed


def test_unbounded_integer_gets_large_upper():
    model = MilpModel("free")
    model.add_variable("n", integer=True, cost=1.0)
    model.add_row("need", {"n": 1.0}, ">=", 2.0)
    bounds = _sections(mps_text(model))["BOUNDS"]
    assert bounds == [" UP BND       C0000001         1e+30"]


def test_rhs_section_skips_zero_rows():
    model = MilpModel("rhs")
    model.add_variable("a", cost=1.0)
    model.add_row("zero", {"a": 1.0}, "<=", 0.0)
    model.add_row("three", {"a": 1.0}, ">=", 3.0)
    rhs = _sections(mps_text(model))["RHS"]
    assert [line.split() for line in rhs] == [["RHS", "R0000002", "3"]]


def test_format_number_fits_field():
    assert format_number(0.0) == "0"
    assert format_number(0.21) == "0.21"
    assert len(format_number(1.0 / 3.0)) <= 12
    assert len(format_number(-123456.789012345)) <= 12
    assert float(format_number(2.5e-9)) == pytest.approx(2.5e-9)


def test_write_creates_names_table(tmp_path, small_model):
    path = tmp_path / "model.mps"
    names_path = write_mps(small_model, path)
    assert names_path == tmp_path / "model.mps.names"
    lines = names_path.read_text(encoding="utf-8").splitlines()
    assert len(lines) == 1 + small_model.num_variables + small_model.num_rows
    assert lines[1] == "C0000001 x[1][1][1]"
    assert names_path.read_text(encoding="utf-8") == names_text(small_model)


def test_inconsistent_model_is_rejected():
    model = MilpModel("broken")
    model.add_variable("a")
    model.variables[0].lower = 2.0
    model.variables[0].upper = 1.0
    with pytest.raises(MpsWriteError):
        mps_text(model)


def test_unwritable_path(tmp_path, small_model):
    blocker = tmp_path / "file"
    blocker.write_text("x", encoding="utf-8")
    with pytest.raises(MpsWriteError):
        write_mps(small_model, blocker / "model.mps")


def test_external_reader_sees_the_same_model(tmp_path, small_model):
    pulp = pytest.importorskip("pulp")
    path = tmp_path / "model.mps"
    write_mps(small_model, path)
    variables, problem = pulp.LpProblem.fromMPS(str(path))
    assert len(variables) == small_model.num_variables
    assert len(problem.constraints) == small_model.num_rows
    integers = [v for v in variables.values() if v.cat == pulp.LpInteger]
    assert len(integers) == small_model.num_integers
