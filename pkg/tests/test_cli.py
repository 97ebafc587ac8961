import csv
import io
import json
import subprocess
import sys

import pytest

from ecorchard import __version__
from ecorchard.cli import main
from ecorchard.orchard import parse_arrangement
from ecorchard.rational_geometry import fig4_arrangement_text


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = main(list(argv), stdout=out, stderr=err)
    return code, out.getvalue(), err.getvalue()


def body(text):
    return [ln for ln in text.splitlines() if not ln.startswith("#")]


@pytest.mark.parametrize("curve,line", [
    ("5;y2=x3+3", "N=6 t=4 group=6 bound=4 excess=0"),
    ("7;y2=x3+5x2+4x", "N=8 t=7 group=2,4 bound=7 excess=0"),
    ("7;y2=x3+2", "N=9 t=12 group=3,3 bound=10 excess=2"),
    ("2^3;y2+y=x3+x", "N=5 t=2 group=5 bound=2 excess=0"),
])
def test_curve_summary(curve, line):
    code, out, _ = run("curve", curve)
    assert code == 0
    assert out.splitlines() == [f"# ecorchard {__version__}", line]


def test_quiet_drops_banner_and_json_has_none():
    assert run("curve", "5;y2=x3+3", "--quiet")[1] == "N=6 t=4 group=6 bound=4 excess=0\n"
    _, out, _ = run("curve", "5;y2=x3+3", "--format", "json")
    record = json.loads(out)
    assert (record["N"], record["t"], record["group"]) == (6, 4, "6")


def test_curve_lines_listing():
    _, out, _ = run("curve", "5;y2=x3+3", "--lines", "--quiet")
    lines = out.splitlines()
    assert lines[1:7] == ["point 0 O", "point 1 (1,2)", "point 2 (1,3)", "point 3 (2,1)", "point 4 (2,4)", "point 5 (3,0)"]
    assert lines[7:] == ["line 0 1 2", "line 0 3 4", "line 1 3 5", "line 2 4 5"]


def test_curve_extension_field_uses_z():
    _, out, _ = run("curve", "2^2;y2+y=x3", "--lines", "--quiet")
    assert "point 3 (1,z)" in out.splitlines()


def test_structure_and_supersingular():
    _, out, _ = run("curve", "5;y2=x3+3", "--structure", "--supersingular", "--quiet")
    assert "trace=0 supersingular=yes deuring=yes" in out
    assert "structure=" in out


def test_write_arrangement_round_trip(tmp_path):
    path = tmp_path / "e.cfg"
    assert run("curve", "7;y2=x3+5x2+4x", "--write-arrangement", str(path))[0] == 0
    data = parse_arrangement(path.read_text())
    assert (len(data.points), len(data.lines), data.q) == (8, 7, 7)
    code, out, _ = run("real", str(path), "--curve", "0,5,0,4,0", "--quiet")
    # finite-field coordinates are not the rational points, so the curve check fails
    assert code == 1


def test_formula():
    code, out, _ = run("formula", "3,3", "--quiet")
    assert code == 0
    assert out == "group=3,3 formula=12 brute=12 psi=2 psi_literal=1 bound=10 excess=2\n"
    code, out, _ = run("formula", "2000", "--format", "json")
    assert code == 0 and json.loads(out)["brute"] is None


def test_admissible():
    assert body(run("admissible", "2", "2", "0")[1]) == ["q=4 t=0 N=5 admissible=no rule=none (no clause applies)"]
    assert "rule=3c*" in run("admissible", "2", "2", "0", "--corrected")[1]
    out = run("admissible", "13", "1", "-6", "2", "10", "--quiet")[1]
    assert out.startswith("q=13 t=-6 N=20 admissible=yes rule=1")
    assert "group: n1 | q - 1" in out
    assert run("admissible", "13", "1", "-6", "2")[0] == 2


def test_table3_csv_and_exit_code():
    code, out, _ = run("table3", "--format", "csv")
    rows = list(csv.reader(io.StringIO(out)))
    assert rows[0] == ["curve", "q", "group", "N", "t", "bound", "excess", "status"]
    assert len(rows) == 13
    assert sum(r[-1] == "FAIL" for r in rows[1:]) == 2
    assert code == 1
    code, out, _ = run("table3", "--errata", "--format", "json")
    assert code == 0 and json.loads(out)["passed"] == 12


def test_verify():
    code, out, _ = run("verify", "t35", "7", "--quiet")
    assert code == 0 and out.splitlines()[-1] == "t35 q=7: pass (10 checks)"
    code, out, _ = run("verify", "t37", "4", "--quiet")
    assert code == 0 and "printed 28/3, computed 12" in out
    code, out, _ = run("verify", "t38", "--p", "13", "--group", "2,10", "--format", "json")
    assert code == 0 and json.loads(out)["witnesses"][0]["t"] == 57
    assert run("verify", "t35", "25")[0] == 1
    assert run("verify", "t38", "--p", "13")[0] == 2
    assert run("verify", "t35")[0] == 2


def test_real_default_configuration():
    code, out, _ = run("real", "--quiet")
    assert (code, out) == (0, "7 lines; reduction mod 7 matches\n")
    code, _, err = run("real", "--p", "3")
    assert code == 2 and "singular curve" in err  # bad reduction at 3
    code, out, _ = run("real", "--format", "json", *sum((["--p", str(p)] for p in (7, 11, 47)), []))
    assert code == 0 and set(json.loads(out)["reductions"]) == {"7", "11", "47"}


def test_real_file_without_curve(tmp_path):
    path = tmp_path / "fig.cfg"
    path.write_text(fig4_arrangement_text())
    code, out, _ = run("real", str(path), "--p", "3", "--p", "5", "--quiet")
    assert code == 1
    assert out.splitlines() == ["7 lines; reduction mod 3 does not match", "7 lines; reduction mod 5 matches"]


def test_sweep():
    code, out, _ = run("sweep", "7", "--quiet")
    assert code == 0
    assert out.splitlines()[-1] == "p=7 curves=42 orders=11 schoof=match"
    assert "N=8 curves=6 groups=2,4:3 8:3" in out


@pytest.mark.parametrize("argv,code", [
    (["curve", "6;y2=x3+1"], 2),
    (["curve", "5;y2=x3"], 2),
    (["formula", "4,6"], 2),
    (["curve", "2^13;y2+y=x3"], 3),
    (["frobnicate"], 2),
    (["real", "/nonexistent/file"], 2),
])
def test_error_exit_codes(argv, code):
    rc, _, err = run(*argv)
    assert rc == code
    assert err.startswith("ecorchard: ")


def test_output_is_deterministic():
    assert run("table3", "--format", "json") == run("table3", "--format", "json")
    assert run("sweep", "11") == run("sweep", "11")


def test_console_entry_point():
    proc = subprocess.run([sys.executable, "-m", "ecorchard.cli", "curve", "5;y2=x3+3", "--quiet"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0 and proc.stdout == "N=6 t=4 group=6 bound=4 excess=0\n"
