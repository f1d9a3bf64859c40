import csv
import io
import json

import pytest

from cli.handlers import router
from cli.output import OutputRecord, canonical, csv_cell
from main import main


def run(*argv):
    stream = io.StringIO()
    code = router.dispatch(list(argv), stream=stream)
    return code, stream.getvalue()


def records(text):
    return [json.loads(line) for line in text.splitlines()]


def payload(*argv):
    code, text = run(*argv)
    assert code == 0, text
    (record,) = records(text)
    return record["payload"]


# ── Output ────────────────────────────────────────────────────────────────────

def test_canonical_renders_big_integers_as_strings():
    big = 2**200 + 1
    assert canonical({"x": big, "ok": True, "none": None}) == {"x": str(big), "ok": True, "none": None}
    assert canonical((1, 2)) == ["1", "2"]


def test_record_json_is_sorted_and_compact():
    line = OutputRecord("tau", {"n": 1}, {"z": 1, "a": 2}, 1.0).to_json()
    assert line == '{"command":"tau","inputs":{"n":"1"},"payload":{"a":"2","z":"1"},"timing_ms":1.0}'


def test_csv_cell():
    assert csv_cell("1/3") == "1/3"
    assert csv_cell(True) == "true"
    assert csv_cell(None) == "null"


# ── Commands ──────────────────────────────────────────────────────────────────

def test_tau_brute():
    body = payload("tau", "--n", "1", "--mod", "13")
    assert body["tau"] == "4"
    assert body["mode"] == "brute"
    assert body["agreement"] is None


def test_tau_formula():
    body = payload("tau", "--n", "1", "--mod", "3*7")
    assert body["tau"] == "2"
    assert body["mode"] == "formula"


def test_tau_check_agrees():
    body = payload("tau", "--n", "2", "--mod", "13", "--check")
    assert body["tau"] == "3"
    assert body["agreement"] is True
    body = payload("tau", "--n", "2", "--mod", "3^2*5", "--check")
    assert body["agreement"] is True


@pytest.mark.parametrize(
    "argv",
    [
        ("tau", "--n", "1", "--mod", "4"),
        ("tau", "--n", "3", "--mod", "3*7"),
        ("targets", "--n", "1", "--mod", "4"),
        ("distances", "--n", "7", "--p", "7"),
        ("distances", "--n", "1", "--p", "9"),
        ("factor", "--n", "8050"),
    ],
)
def test_errors_exit_one(argv):
    code, text = run(*argv)
    assert code == 1
    assert text == ""


def test_usage_error_exits_one():
    with pytest.raises(SystemExit) as info:
        run("tau", "--n", "one", "--mod", "7")
    assert info.value.code == 1


def test_targets():
    assert payload("targets", "--n", "1", "--mod", "7")["targets"] == [["0", "1"], ["1", "2"]]
    assert payload("targets", "--n", "8051", "--mod", "5")["targets"] == [["0", "1"], ["4", "0"]]


def test_targets_limit_marks_truncation():
    body = payload("targets", "--n", "1", "--mod", "105", "--limit", "1")
    assert body["count"] == "4"
    assert len(body["targets"]) == 1
    assert body["truncated"] is True


def test_distances():
    body = payload("distances", "--n", "1", "--p", "7")
    assert body["distances"] == ["0", "2"]
    assert body["size"] == body["formula"] == "2"
    assert body["region"] == [
        {"point": ["1", "1"], "target": ["0", "1"]},
        {"point": ["4", "2"], "target": ["1", "2"]},
    ]
    assert payload("distances", "--n", "2", "--p", "13")["size"] == "3"


def test_hyperbola():
    body = payload("hyperbola", "--n", "1", "--mod", "7")
    assert body["count"] == "6"
    assert body["points"][0] == ["1", "1"]


def test_factor_found():
    body = payload("factor", "--n", "10403")
    assert body["status"] == "found"
    assert body["factors"] == ["101", "103"]

    body = payload("factor", "--n", "8051", "--relaxed-split", "--baseline")
    assert body["factors"] == ["83", "97"]
    assert body["witness"] == ["7", "90"]
    assert body["stats"]["naive_fermat_steps"] == "8"


def test_factor_unbalanced_composite_below_split():
    body = payload("factor", "--n", "303")
    assert body["factors"] == ["3", "101"]
    assert body["witness"] == ["49", "52"]
    assert body["stats"]["method"] == "fermat"


def test_factor_prime_exits_two():
    code, text = run("factor", "--n", "8053")
    assert code == 2
    (record,) = records(text)
    assert record["payload"]["status"] == "exhausted"
    assert record["payload"]["factors"] is None


def test_density_csv():
    code, text = run("density", "--n", "1", "--Bmax", "7", "--format", "csv")
    assert code == 0
    rows = list(csv.DictReader(io.StringIO(text)))
    assert [r["bound"] for r in rows] == ["3", "5", "7"]
    assert [r["ratio"] for r in rows] == ["1/3", "2/15", "4/105"]


def test_density_json_matches_csv():
    _, as_json = run("density", "--n", "2", "--Bmax", "13")
    _, as_csv = run("density", "--n", "2", "--Bmax", "13", "--format", "csv")
    json_rows = [r["payload"] for r in records(as_json)]
    csv_rows = list(csv.DictReader(io.StringIO(as_csv)))
    assert len(json_rows) == len(csv_rows) == 5
    for j, c in zip(json_rows, csv_rows):
        assert {k: csv_cell(v) for k, v in j.items()} == c


def test_density_single_row():
    code, text = run("density", "--n", "1", "--Bmax", "3")
    assert code == 0
    assert len(records(text)) == 1


def test_payload_is_deterministic():
    argv = ("factor", "--n", "8051", "--relaxed-split")
    first = records(run(*argv)[1])[0]
    second = records(run(*argv)[1])[0]
    assert first["payload"] == second["payload"]
    assert first["inputs"] == second["inputs"]


def test_main_entry_point(capsys):
    assert main(["tau", "--n", "1", "--mod", "13"]) == 0
    assert json.loads(capsys.readouterr().out)["payload"]["tau"] == "4"


@pytest.mark.slow
def test_selftest_passes():
    code, text = run("selftest")
    assert code == 0
    body = records(text)[0]["payload"]
    assert body["passed"] is True
    assert len(body["checks"]) == 8


def test_hyperbola_orbits():
    body = payload("hyperbola", "--n", "1", "--mod", "7", "--orbits", "--limit", "3")
    assert body["points"] == [["1", "1"], ["2", "4"], ["3", "5"]]
    assert body["canonical"] == [["1", "1"], ["4", "2"], ["4", "2"]]
    assert body["truncated"] is True


def test_non_integer_modulus_exits_one():
    assert run("targets", "--n", "1", "--mod", "seven")[0] == 1
