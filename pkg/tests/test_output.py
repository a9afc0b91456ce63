import json

import pytest

from stiefelcurv.errors import UsageError
from stiefelcurv.experiments import ExperimentRecord, run_exp1, run_exp2, run_exp3_mix, run_exp3_surface
from stiefelcurv.output import emit, render, to_csv


def test_exp1_csv_header():
    text = render(run_exp1(4, 2, 5), "csv")
    lines = text.split("\n")
    assert lines[0] == "step,u_index,u_value,k_so,k_st_canonical,k_st_euclidean,k_grassmann"
    assert "\r" not in text and text.endswith("\n")
    assert len(lines) == 1 + 6 + 1


def test_csv_round_trips_floats():
    rec = ExperimentRecord("x", {"u": 0.1}, {"k_so": 1 / 3})
    row = to_csv([rec]).split("\n")[1].split(",")
    assert float(row[0]) == 0.1 and float(row[1]) == 1 / 3


def test_seeded_csv_has_seed_columns():
    text = render(run_exp2([2], trials=3, seed=5), "csv")
    header, row = text.split("\n")[:2]
    assert header.endswith(",seed,trials") and row.endswith(",5,3")


def test_json_mirrors_record():
    recs = run_exp2([2], trials=3, seed=5)
    data = json.loads(render(recs, "json"))
    r = data["records"][0]
    assert set(r) >= {"experiment", "coords", "values", "seed", "trials"}
    assert r["values"]["k_so"] == recs[0].values["k_so"]


@pytest.mark.parametrize("fmt", ["csv", "json", "svg"])
def test_emit_deterministic(tmp_path, fmt):
    recs = run_exp3_mix(10)
    a, b = tmp_path / f"a.{fmt}", tmp_path / f"b.{fmt}"
    emit(recs, fmt, a)
    emit(run_exp3_mix(10), fmt, b)
    assert a.read_bytes() == b.read_bytes()


def test_svg_kinds():
    heat = render(run_exp3_surface(4), "svg")
    assert heat.startswith("<svg") and heat.count("<rect") == 1 + 2 * 16
    loglog = render(run_exp2([2, 4], trials=3), "svg")
    assert "<polyline" in loglog and ">p<" in loglog
    line = render(run_exp1(4, 2, 5), "svg")
    assert line.count("<polyline") == 4 and ">step<" in line


def test_errors(tmp_path):
    with pytest.raises(UsageError):
        render([], "csv")
    with pytest.raises(UsageError):
        render(run_exp3_mix(2), "xml")
    with pytest.raises(OSError):
        emit(run_exp3_mix(2), "csv", tmp_path / "missing" / "x.csv")
    mixed = [ExperimentRecord("x", {"a": 1}, {"v": 1.0}), ExperimentRecord("x", {"b": 1}, {"v": 1.0})]
    with pytest.raises(UsageError):
        render(mixed, "csv")
