import json
from fractions import Fraction

import pytest

import sdmred.lib as slib
import sdmred.field as sfield
import sdmred.tables as stables
from sdmred.field import INF

from .conftest import element, E, P

TABLE_IDS = ["r1", "r2", "r3", "r22", "r22-regions", "r15-regions", "r15-j0-regions"]


def write_fixture(directory, data, name="custom.json"):
    path = directory / name
    path.write_text(json.dumps(data))
    return str(path)


def r1_fixture(rows):
    return {"id": "custom", "caption": "Custom r = 1 table", "p": 13, "e": 2, "r": [1], "j0": [], "rows": rows}


def test_evaluate_expression():
    values = {"p": element(P), "x0": element(0, Fraction(2, 13))}
    assert stables.evaluate_expression("p*x0**2 - 4", values, E, P).is_zero()
    assert stables.evaluate_expression("1/x0", values, E, P) == element(0, Fraction(1, 2))
    with pytest.raises(slib.FixtureError):
        stables.evaluate_expression("y0 + 1", values, E, P)


def test_compare():
    assert stables.compare(INF, "> 0")
    assert stables.compare(sfield.ExtendedRational(Fraction(-1, 2)), "= -1/2")
    assert stables.compare(sfield.ExtendedRational(0), "<= 0")
    assert not stables.compare(sfield.ExtendedRational(1), "< 1")
    with pytest.raises(slib.FixtureError):
        stables.compare(sfield.ExtendedRational(0), "~ 0")


def test_check_condition():
    assert stables.check_condition(["t0 < 0"], [-1], [-1], {}, E, P) == []
    assert stables.check_condition(["t0 < 0", "T0 = t0"], [1], [0], {}, E, P) == ["t0 < 0", "T0 = t0"]
    values = {"p": element(P), "x0": element(1)}
    failed = stables.check_condition([{"expr": "p*x0**2 - 4", "valuation": "> 0"}], [0], [0], values, E, P)
    assert failed == ["v(p*x0**2 - 4) > 0"]
    with pytest.raises(slib.FixtureError):
        stables.check_condition([{"expr": "x0"}], [0], [0], values, E, P)


def test_fixture_row_validation():
    with pytest.raises(slib.FixtureError):
        stables.FixtureRow(0, {"kp": ["1/2"], "expected": {"colour": "red"}, "samples": [{"x": ["1"]}]})
    with pytest.raises(slib.FixtureError):
        stables.FixtureRow(0, {"kp": ["1/2"], "expected": {"mt": [0]}})
    with pytest.raises(slib.FixtureError):
        stables.FixtureRow(0, {"region": ["t0 >= 0"]})
    row = stables.FixtureRow(3, {"kp": ["1/2"], "samples": [{"x": ["1"]}]})
    assert row.label == "row 3"
    assert row.kp == [Fraction(1, 2)]


def test_load_fixture():
    fixture = stables.load_fixture("r1")
    assert fixture.r == [1]
    assert fixture.p == P
    assert fixture.f == 1
    assert stables.load_fixture("Reductions for r = (2, 2)").id == "r22"
    assert stables.load_fixture("r15_j0_regions").j0 == frozenset([0])
    with pytest.raises(slib.FixtureError):
        stables.load_fixture("nope")


def test_malformed_fixture(tmp_path):
    write_fixture(tmp_path, {"id": "broken", "rows": []})
    with pytest.raises(slib.FixtureError):
        stables.load_fixture("broken", str(tmp_path))
    (tmp_path / "garbage.json").write_text("{not json")
    with pytest.raises(slib.FixtureError):
        stables.load_all(str(tmp_path))


def test_select_case():
    fixture = stables.load_fixture("r1")
    spec, x, solution = stables.select_case(fixture, P, x=[element(Fraction(1, 13))])
    assert spec.kp == (Fraction(1, 2),)
    assert x == [element(Fraction(1, 13))]
    assert solution is not None


@pytest.mark.parametrize("table", TABLE_IDS)
def test_reproduce_table(table):
    report = stables.reproduce_table(table)
    assert report.passed, report.to_text()
    assert report.failures() == []
    assert report.to_dict()["id"] == table


def test_reproduce_all():
    reports = stables.reproduce_all()
    assert sorted(report.fixture.id for report in reports) == sorted(TABLE_IDS)
    assert all(report.passed for report in reports)


def test_wrong_expectation_fails(tmp_path):
    write_fixture(tmp_path, r1_fixture([
        {"label": "wrong verdict", "kp": ["1/2"], "expected": {"verdict": "split"}, "samples": [{"x": ["1/13"]}]},
        {"label": "right verdict", "kp": ["1/2"], "expected": {"verdict": "non-split"},
         "samples": [{"x": ["1/13"]}]},
    ]))
    report = stables.reproduce_table("custom", directory=str(tmp_path))
    assert not report.passed
    assert [row.row.label for row in report.failures()] == ["wrong verdict"]
    text = report.to_text()
    assert "[FAIL] wrong verdict" in text
    assert "[PASS] right verdict" in text
    assert "1/2 rows passed" in text


def test_sample_errors_fail_the_row(tmp_path):
    write_fixture(tmp_path, r1_fixture([
        {"label": "infeasible theta", "kp": ["1/2"], "samples": [{"x": ["1"], "theta": ["13"]}]},
    ]))
    report = stables.reproduce_table("custom", directory=str(tmp_path))
    assert not report.passed
    messages = report.rows[0].results[0].messages
    assert messages[0].startswith("InfeasibleError")


def test_sample_needs_x_or_L(tmp_path):
    write_fixture(tmp_path, r1_fixture([{"kp": ["1/2"], "samples": [{"theta": ["1"]}]}]))
    with pytest.raises(slib.FixtureError):
        stables.reproduce_table("custom", directory=str(tmp_path))


def test_fixtures_dir_setting(tmp_path, default_settings):
    write_fixture(tmp_path, r1_fixture([{"kp": ["1/2"], "samples": [{"x": ["1/13"]}]}]))
    default_settings["fixtures_dir"] = str(tmp_path)
    assert stables.fixtures_dir() == str(tmp_path)
    assert [fixture.id for fixture in stables.load_all()] == ["custom"]
