import json

import pytest

from partlog import cache
from partlog.cli import main, parse_box
from partlog.partitions import PartitionFamily, dumps_sequence, generate, loads_sequence


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_gen_writes_cache(capsys, tmp_path):
    code, out, _ = run(capsys, "gen", "--family", "distinct", "--upto", "33")
    assert code == 0
    path = cache.cache_path(PartitionFamily.distinct())
    lines = path.read_text().splitlines()
    assert lines[0] == "partlog-seq v1 family=distinct start=0 count=34"
    assert lines[1 + 33] == "448"


def test_gen_out_round_trip(capsys, tmp_path):
    out_file = tmp_path / "p.seq"
    assert run(capsys, "gen", "--family", "fractional(-1/2)", "--upto", "50",
               "--out", str(out_file))[0] == 0
    text = out_file.read_text()
    assert dumps_sequence(loads_sequence(text)) == text


def test_cache_resume_and_atomicity(tmp_path):
    fam = PartitionFamily.unrestricted()
    short = cache.get_sequence(fam, 50)
    assert cache.load(fam).stop == 50
    longer = cache.get_sequence(fam, 120)
    assert longer.values == generate(fam, 120).values
    assert cache.get_sequence(fam, 30).values == short.values[:31]
    leftovers = [p for p in cache.cache_dir().iterdir() if p.suffix == ".tmp"]
    assert leftovers == []


def test_cache_dir_env(tmp_path, monkeypatch):
    monkeypatch.setenv("PARTLOG_CACHE_DIR", str(tmp_path / "elsewhere"))
    path = cache.cache_path(PartitionFamily.multiset((1, 2, 2)))
    assert path.parent == tmp_path / "elsewhere"
    assert "(" not in path.name and "," not in path.name


def test_threshold(capsys):
    code, out, _ = run(capsys, "threshold", "--family", "power2", "--horizon", "3000")
    assert code == 0 and "candidate_N = 1041" in out


def test_threshold_unfinished_exits_1(capsys):
    code, _, _ = run(capsys, "threshold", "--family", "power2", "--horizon", "1041")
    assert code == 1


def test_verify_bessenrodt_ono_json(capsys):
    code, out, _ = run(capsys, "verify", "--table", "BessenrodtOno", "--json")
    doc = json.loads(out)
    assert code == 0 and doc["pass"] is True
    assert set(doc) == {"command", "inputs", "diff", "pass"}
    assert doc["diff"]["match"]["equal"] == [["2", "6"], ["2", "7"], ["3", "4"]]


def test_json_is_stable(capsys):
    first = run(capsys, "verify", "--table", "Table1_Pd", "--json")[1]
    second = run(capsys, "verify", "--table", "Table1_Pd", "--json")[1]
    assert first == second


def test_verify_mismatch_exits_1(capsys):
    code, out, _ = run(capsys, "verify", "--table", "Table4_mary", "--m", "5")
    assert code == 1 and "missing" in out


def test_scan_csv(capsys):
    code, out, _ = run(capsys, "scan", "--family", "p", "--box", "2..26x2..26", "--csv")
    lines = out.splitlines()
    assert code == 0 and lines[0] == "a,b,verdict"
    assert "2,2,failure" in lines and "6,2,equal" in lines
    assert len(lines) == 1 + 25 * 25


def test_condition_and_bounds(capsys):
    code, out, _ = run(capsys, "condition", "--family", "p", "--N", "25", "--k", "0",
                       "--M", "25", "--json")
    doc = json.loads(out)
    assert code == 0 and doc["result"]["d"] == "2"
    assert run(capsys, "bounds", "--family", "p", "--N", "25", "--n", "30", "--m", "5")[0] == 0
    assert run(capsys, "bounds", "--family", "p", "--N", "10", "--n", "30", "--m", "5")[0] == 1


def test_example_and_logpoly(capsys):
    assert run(capsys, "example", "--kind", "fibonacci")[0] == 0
    code, out, _ = run(capsys, "logpoly", "--r", "0", "--s", "1/2", "--t", "1",
                       "--box", "1..20", "--json")
    assert code == 0 and json.loads(out)["result"]["kappa"] == -1


@pytest.mark.parametrize("argv", [
    ["scan", "--family", "nope", "--box", "1..3"],
    ["scan", "--family", "p", "--box", "1-3"],
    ["verify", "--table", "Table9"],
    ["verify", "--table", "Table1_Pd", "--box", "1..5"],
    ["threshold", "--family", "p"],
    ["frobnicate"],
    ["example", "--kind", "missing"],
    ["threshold", "--family", "p", "--horizon", "30", "--csv"],
])
def test_usage_errors(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 2
    assert json.loads(err.strip().splitlines()[-1])["error"] == "usage"


def test_parse_box():
    assert parse_box("1..7x1..60") == ((1, 7), (1, 60))
    assert parse_box("2..26") == ((2, 26), (2, 26))
