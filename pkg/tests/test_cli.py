import json
from pathlib import Path

import pytest

from elimwalk.cli import main

PROBLEMS = Path(__file__).resolve().parent.parent / "problems"
THREE_CELL = str(PROBLEMS / "three_cell.ideal")
NONCONVEX = str(PROBLEMS / "nonconvex.ideal")


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_gb(capsys):
    code, out, _ = run(capsys, "gb", THREE_CELL, "--order", "rows=[[4,1]]")
    assert code == 0
    assert out.splitlines() == ["u^4 - 3*u^2 + 1", "x - u^3 + 2*u"]
    code, out, _ = run(capsys, "gb", THREE_CELL, "--order", "rows=[[1,4]]", "--json")
    rec = json.loads(out)
    assert rec["format"] == 1 and rec["gb"] == ["x^2 - 1", "u^2 - x*u - 1"]


def test_eliminate(capsys, tmp_path):
    trace = tmp_path / "trace.json"
    code, out, err = run(capsys, "eliminate", THREE_CELL, "--sigma", "s3", "--tau", "t", "--trace-json", str(trace))
    assert code == 0 and out.strip() == "{x^2 - 1}"
    rec = json.loads(trace.read_text())
    assert rec["format"] == 1 and rec["conversions"] == 1 and rec["mode"] == "improved"
    assert rec["elimination_basis"] == ["x^2 - 1"]
    code, out, err = run(capsys, "eliminate", THREE_CELL, "--sigma", "s3", "--tau", "t", "--mode", "tran")
    assert code == 0 and "conversions: 2" in err


def test_fan(capsys, tmp_path):
    fj, csv_path = tmp_path / "fan.json", tmp_path / "fan.csv"
    code, out, _ = run(capsys, "fan", THREE_CELL, "--json", str(fj), "--section-csv", str(csv_path), "--grid-check")
    assert code == 0 and "3 cells" in out and "agree" in out
    rec = json.loads(fj.read_text())
    assert rec["format"] == 1 and len(rec["cells"]) == 3 and len(rec["ev_region"]) == 2
    classes = sorted(c["boundary_class"] for c in rec["cells"])
    assert classes == ["MEETS_OMEGA_U", "MEETS_OTHER_BOUNDARY", "ORIGIN_ONLY"]
    assert csv_path.read_text().splitlines()[0] == "cell,vertex,x,u"


def test_check_ieo(capsys):
    code, out, _ = run(capsys, "check-ieo", NONCONVEX, "--order", "rows=[[9,6,5]]")
    assert code == 0 and out.splitlines()[0] == "false"
    code, out, _ = run(capsys, "check-ieo", NONCONVEX, "--order", "rows=[[9,12,0]]", "--json")
    rec = json.loads(out)
    assert rec["ieo"] is True and rec["lead_x"] == ["x^2 - 1"]


def test_star_check(capsys):
    code, out, _ = run(capsys, "star-check", NONCONVEX, "--samples", "50", "--seed", "3", "--json")
    rec = json.loads(out)
    assert code == 0 and rec["passed"] and rec["samples_tested"] == 50 and rec["seed"] == 3


def test_outputs_are_deterministic(capsys, tmp_path):
    outs = []
    for i in range(2):
        fj = tmp_path / f"fan{i}.json"
        run(capsys, "fan", NONCONVEX, "--json", str(fj))
        _, star, _ = run(capsys, "star-check", NONCONVEX, "--samples", "30", "--json")
        outs.append((fj.read_bytes(), star))
    assert outs[0] == outs[1]


def test_exit_codes(capsys, tmp_path):
    bad = tmp_path / "bad.ideal"
    bad.write_text("ring x ; eliminate u\nf = x + q\n")
    code, _, err = run(capsys, "gb", str(bad))
    assert code == 2 and "2:9" in err
    assert run(capsys, "gb", str(tmp_path / "missing.ideal"))[0] == 2
    assert run(capsys, "gb", THREE_CELL, "--order", "rows=[[1]]")[0] == 2
    assert run(capsys, "eliminate", THREE_CELL, "--sigma", "nope", "--tau", "t")[0] == 2
    # tau must vanish on x
    assert run(capsys, "eliminate", NONCONVEX, "--sigma", "sigma", "--tau", "tau")[0] == 3
    big = tmp_path / "big.ideal"
    big.write_text("ring a b c ; eliminate u v\nf = a - u\n")
    assert run(capsys, "fan", str(big))[0] == 4
    zero = tmp_path / "zero.ideal"
    zero.write_text("ring x ; eliminate u\nf = x - x\n")
    assert run(capsys, "gb", str(zero))[0] == 3


def test_usage_errors_exit_2():
    with pytest.raises(SystemExit) as e:
        main(["gb"])
    assert e.value.code == 2
