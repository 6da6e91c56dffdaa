import json
import subprocess
import sys
from fractions import Fraction

import pytest

from hodge_forge.bergman import bergman_fan
from hodge_forge.cli import main
from hodge_forge.errors import AxiomViolation, InputError
from hodge_forge.matroid import uniform_matroid
from hodge_forge.serialize import (dumps, fan_from_json, fan_to_json, load_matroid, matroid_from_json,
                                   matroid_to_json, parse_rat, rat)

from conftest import DATA


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


# -- serialization --------------------------------------------------------------------

def test_rationals_round_trip():
    for x in [Fraction(0), Fraction(-3), Fraction(7, 4), Fraction(-1, 9)]:
        assert parse_rat(rat(x)) == x
    assert parse_rat(5) == 5
    for bad in [True, 1.5, "x", "1/0", None]:
        with pytest.raises(InputError):
            parse_rat(bad)


def test_dumps_is_canonical():
    assert dumps({"b": [1, 2], "a": {"c": []}}) == '{\n  "a": {\n    "c": []\n  },\n  "b": [1, 2]\n}\n'
    assert json.loads(dumps({"x": [[1], [2, 3]]})) == {"x": [[1], [2, 3]]}


def test_matroid_round_trip(corpus_matroids):
    for name, m in corpus_matroids:
        back = matroid_from_json(json.loads(dumps(matroid_to_json(m))))
        assert back.flats == m.flats and back.size == m.size


def test_fan_round_trip():
    fan = bergman_fan(uniform_matroid(3, 4))
    back = fan_from_json(json.loads(dumps(fan_to_json(fan))))
    assert back.same_embedded_fan(fan)


def test_axiom_error_names_axiom_and_position():
    with pytest.raises(AxiomViolation) as exc:
        load_matroid(DATA / "broken.json")
    msg = str(exc.value)
    assert "broken.json" in msg and f"axiom {exc.value.axiom}" in msg and "flats[" in msg


def test_malformed_documents(tmp_path):
    p = tmp_path / "bad.json"
    p.write_text('{"ground_size": 3,\n "flats": [')
    with pytest.raises(InputError, match="line 2"):
        load_matroid(p)
    for doc in [[], {"ground_size": "3", "flats": []}, {"ground_size": 2}, {"ground_size": 2, "flats": [["a"]]}]:
        with pytest.raises(InputError):
            matroid_from_json(doc)
    with pytest.raises(InputError):
        load_matroid(tmp_path / "missing.json")


# -- commands -------------------------------------------------------------------------

def test_info_u34(capsys):
    code, out, _ = run(capsys, "info", "--matroid", str(DATA / "u34.json"))
    doc = json.loads(out)
    assert code == 0 and doc["rank"] == 3 and doc["coloops"] == []
    assert doc["deletion_pairs"]["4"] == 3
    assert doc["flat_counts"] == [1, 4, 6, 1]


def test_info_b3_text(capsys):
    code, out, _ = run(capsys, "info", "--matroid", str(DATA / "b3.json"), "--format", "text")
    assert code == 0 and "coloops: [1, 2, 3]" in out


def test_fan_dump_u23(capsys):
    code, out, _ = run(capsys, "fan-dump", "--matroid", str(DATA / "u23.json"))
    doc = json.loads(out)
    assert code == 0 and len(doc["rays"]) == 3
    back = fan_from_json(doc)
    assert back.same_embedded_fan(bergman_fan(uniform_matroid(2, 3)))


def test_chow_report_b3(capsys):
    code, out, _ = run(capsys, "chow-report", "--matroid", str(DATA / "b3.json"))
    doc = json.loads(out)
    assert code == 0 and doc["hilbert"] == [1, 4, 1] and doc["mw_dim"] == 1
    assert doc["convexity"]["strictly_convex"] is True


def test_tower_dump_u34(capsys):
    code, out, _ = run(capsys, "tower-dump", "--matroid", str(DATA / "u34.json"), "--element", "4")
    doc = json.loads(out)
    assert code == 0 and doc["k"] == 3 and len(doc["subdivisions"]) == 3
    assert len(doc["projection"]) == 2 and len(doc["projection"][0]) == 3


def test_tower_dump_boolean_is_input_error(capsys):
    code, _, err = run(capsys, "tower-dump", "--matroid", str(DATA / "b3.json"))
    assert code == 2 and "Boolean" in err


def test_verify_exit_codes(capsys, tmp_path):
    code, out, _ = run(capsys, "verify", "--matroid", str(DATA / "u34.json"), "--mode", "tower", "--element", "4")
    doc = json.loads(out)
    assert code == 0 and doc["passed"] and doc["tower"]["k"] == 3

    code, _, err = run(capsys, "verify", "--matroid", str(DATA / "broken.json"))
    assert code == 2 and "axiom" in err

    zero = tmp_path / "zero.json"
    zero.write_text('{"values": []}')
    code, _, err = run(capsys, "verify", "--matroid", str(DATA / "b3.json"), "--witness", str(zero))
    assert code == 1 and "HL" in err and "convexity" in err

    for argv in (["verify"], ["verify", "--matroid", str(DATA / "b3.json"), "--steps", "0"],
                 ["verify", "--matroid", str(DATA / "u34.json"), "--element", "7"],
                 ["verify", "--matroid", str(DATA / "b3.json"), "--mode", "tower", "--element", "1"],
                 ["bogus"]):
        assert run(capsys, *argv)[0] == 2


def test_witness_file_errors(capsys, tmp_path):
    bad = tmp_path / "w.json"
    bad.write_text('{"values": [{"flat": [1, 2, 3], "value": "1"}]}')
    code, _, err = run(capsys, "verify", "--matroid", str(DATA / "b3.json"), "--witness", str(bad))
    assert code == 2 and "not a nontrivial flat" in err


def test_out_file_and_write_error(capsys, tmp_path):
    target = tmp_path / "r.json"
    code, out, _ = run(capsys, "chow-report", "--matroid", str(DATA / "b3.json"), "--out", str(target))
    assert code == 0 and out == "" and json.loads(target.read_text())["hilbert"] == [1, 4, 1]
    code, _, err = run(capsys, "chow-report", "--matroid", str(DATA / "b3.json"),
                       "--out", str(tmp_path / "nope" / "r.json"))
    assert code == 2 and "cannot write" in err


def test_verify_text_format(capsys):
    code, out, _ = run(capsys, "verify", "--matroid", str(DATA / "b4.json"), "--format", "text")
    assert code == 0 and out.rstrip().endswith("result: PASS")
    assert "PASS HR" in out


def test_byte_identical_across_runs_and_jobs(capsys):
    outs = []
    for jobs in ("1", "1", "2"):
        outs.append(run(capsys, "verify", "--matroid", str(DATA / "u34.json"), "--mode", "tower",
                        "--jobs", jobs)[1])
    assert outs[0] == outs[1] == outs[2]
    dumps_ = [run(capsys, cmd, "--matroid", str(DATA / "u34.json"))[1] for cmd in ("fan-dump", "tower-dump")]
    assert dumps_ == [run(capsys, cmd, "--matroid", str(DATA / "u34.json"))[1] for cmd in ("fan-dump", "tower-dump")]


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "hodge_forge", "chow-report", "--matroid", str(DATA / "u23.json")],
                         capture_output=True, text=True)
    assert res.returncode == 0 and json.loads(res.stdout)["hilbert"] == [1, 1]
