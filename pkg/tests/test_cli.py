from __future__ import annotations

import csv
import io
import json
import subprocess
import sys

import pytest

from rtlens.cli import main
from rtlens.cyclo import CycNum


def run(*argv):
    out = io.StringIO()
    code = main(list(argv), out=out)
    return code, out.getvalue()


def test_invariant_json():
    code, text = run("invariant", "--algebra", "g2", "--order", "11", "--lens", "7", "2")
    assert code == 0
    obj = json.loads(text)
    assert obj["schema"] == "rt-lens/1"
    assert obj["hj_terms"] == [4, 2]
    assert obj["sign_count"] == 0
    assert "timings" not in obj
    f = CycNum.from_json(obj["f"]["exact"])
    assert abs(f.embed(1) - complex(*obj["f"]["value"])) < 1e-12
    assert obj["nabla"]["value"][1] == 0.0


def test_timings_flag():
    code, text = run("invariant", "--algebra", "g2", "--order", "7", "--chain", "2", "-1", "--timings")
    assert code == 0 and "timings" in json.loads(text)


def test_manifolds():
    code, text = run("invariant", "--algebra", "g2", "--order", "7", "--manifold", "s3")
    assert code == 0 and json.loads(text)["f"]["value"] == [1.0, 0.0]
    code, _ = run("invariant", "--algebra", "g2", "--order", "11", "--manifold", "s2xs1")
    assert code == 0


def test_output_is_deterministic():
    args = ("invariant", "--algebra", "g2", "--order", "13", "--lens", "5", "2")
    assert run(*args) == run(*args, "--threads", "3")


def test_table_csv():
    code, text = run("table", "--algebra", "g2", "--order", "11", "--m-max", "5")
    assert code == 0
    rows = list(csv.DictReader(io.StringIO(text)))
    assert [(int(r["m"]), int(r["n"])) for r in rows][:3] == [(2, 1), (3, 1), (3, 2)]
    assert len(rows) == 9
    assert list(rows[0]) == ["m", "n", "hj_terms", "f_real", "f_imag", "nabla", "exact_f_json"]
    assert CycNum.from_json(json.loads(rows[0]["exact_f_json"])).order == 11


def test_table_header_only():
    code, text = run("table", "--algebra", "g2", "--order", "7", "--m-max", "1")
    assert code == 0 and text == "m,n,hj_terms,f_real,f_imag,nabla,exact_f_json\n"


def test_table_threads_byte_identical():
    a = run("table", "--algebra", "g2", "--order", "11", "--m-max", "8", "--threads", "1")
    b = run("table", "--algebra", "g2", "--order", "11", "--m-max", "8", "--threads", "4",
            "--strategy", "factored")
    assert a == b and a[0] == 0


@pytest.mark.parametrize("argv", [
    ("invariant", "--algebra", "g2", "--order", "9", "--lens", "3", "1"),
    ("invariant", "--algebra", "g2", "--order", "8", "--lens", "3", "1"),
    ("invariant", "--algebra", "g2", "--order", "7", "--lens", "6", "4"),
    ("invariant", "--algebra", "g2", "--order", "5", "--lens", "3", "1"),
    ("invariant", "--algebra", "a3", "--order", "7", "--lens", "3", "1"),
    ("invariant", "--algebra", "g2", "--order", "7", "--embedding", "14", "--lens", "3", "1"),
])
def test_invalid_input_exit_2(argv):
    assert run(*argv)[0] == 2


def test_e8_capacity_exit_3(capsys):
    code, out = run("invariant", "--algebra", "e8", "--order", "31", "--lens", "7", "2")
    assert code == 3 and out == ""
    assert "31^8" in capsys.readouterr().err


def test_verify_exit_codes():
    assert run("verify", "--algebra", "g2", "--order", "11", "--suite", "kirby")[0] == 0
    code, text = run("verify", "--algebra", "g2", "--order", "5", "--suite", "kirby")
    assert code == 1 and json.loads(text)["pass"] is False


def test_gauss_and_roots():
    code, text = run("gauss", "--algebra", "f4", "--order", "13", "--k", "1")
    assert code == 0 and json.loads(text)["abs_squared"] == pytest.approx(13 ** 4)
    code, text = run("roots", "--algebra", "e8")
    assert code == 0 and "dual coxeter: 30" in text


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "rtlens", "roots", "--algebra", "g2"],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and "positive roots (6)" in proc.stdout
