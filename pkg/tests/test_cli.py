import json

import pytest

from itercurves.cli import main


def run_cli(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, json.loads(out)


def test_orbit(capsys):
    code, out = run_cli(capsys, "orbit", "--c", "-2", "--n", "5")
    assert code == 0
    assert out["values"] == ["-2", "2", "2", "2", "2"]


def test_stages_json_report(capsys):
    code, out = run_cli(capsys, "--json", "stages", "--c", "3", "--n", "4")
    assert code == 0
    stages = out["result"]["stages"]
    assert stages[2]["status"] == "non_maximal"
    assert stages[2]["witness"] == ["12"]
    assert out["schema"] == "itercurves/1"
    assert "result_hash" in out


def test_verify_chebyshev(capsys):
    code, out = run_cli(capsys, "verify", "chebyshev", "--n", "2", "--p", "5")
    assert code == 0 and out["verified"] is True
    code, out = run_cli(capsys, "verify", "chebyshev", "--n", "1", "--p", "3")
    assert code == 0 and out["verified"] is False  # computed, exit still 0


def test_verify_cm_and_disc(capsys):
    code, out = run_cli(capsys, "verify", "cm")
    assert code == 0 and out["verified"]
    code, out = run_cli(capsys, "verify", "disc", "--c", "3", "--m", "3")
    assert code == 0 and out["verified"]


def test_count_and_charpoly(capsys):
    code, out = run_cli(capsys, "count", "--family", "B", "--c", "-2", "--n", "1",
                        "--p", "5", "--m", "1")
    assert code == 0 and out["count"] == 6
    code, out = run_cli(capsys, "charpoly", "--family", "B", "--c", "-2", "--n", "1",
                        "--p", "5")
    assert code == 0 and out["charpoly"] == ["1", "0", "5"]
    assert out["jacobian_order"] == "6"


def test_math_error_exit_code(capsys):
    code, out = run_cli(capsys, "count", "--family", "C", "--c", "3", "--n", "2",
                        "--p", "3")
    assert code == 3
    assert out["error"] == "BadReduction"


def test_usage_error_exit_code():
    with pytest.raises(SystemExit) as exc:
        main(["count"])  # missing required arguments
    assert exc.value.code == 2


def test_scan_thread_determinism(capsys):
    code1, out1 = run_cli(capsys, "--json", "scan", "--n", "3", "--int-bound", "500")
    code2, out2 = run_cli(capsys, "--json", "--threads", "4", "scan", "--n", "3",
                          "--int-bound", "500")
    assert code1 == code2 == 0
    assert out1["result"] == out2["result"] == {"found": ["3"], "n": 3}
    assert out1["result_hash"] == out2["result_hash"]


def test_gcd_bound(capsys):
    code, out = run_cli(capsys, "gcd-bound", "--n", "4", "--primes", "5,13")
    assert code == 0 and out["gcd"] == "2"


def test_runge_cli(capsys):
    code, out = run_cli(capsys, "runge", "--family", "F2")
    assert code == 0
    assert out["certificate"]["y_scale"] == 16
    assert out["certificate"]["g"] == ["15", "6", "24", "16"]
    assert out["complete_over"] == "Z"


def test_curve_and_points(capsys):
    code, out = run_cli(capsys, "curve", "--family", "F2")
    assert code == 0 and out["h"] == ["1", "0", "2", "3", "3", "3", "1"]
    code, out = run_cli(capsys, "points", "--family", "F2", "--height", "10")
    assert code == 0
    xs = {pt["x"] for pt in out["points"]}
    assert {"2/3", "-6/7"} <= xs


def test_mordell_scan_cli(capsys):
    code, out = run_cli(capsys, "mordell-scan")
    assert code == 0
    assert out["square_witness_n"] == [3]
    assert out["witnesses"]["3"] == [3, 7]
    assert out["inequality_holds"]["12"] is True


def test_verify_bijection_cli(capsys):
    code, out = run_cli(capsys, "verify", "bijection", "--p", "3", "--n", "2", "--m", "1")
    assert code == 0 and out["verified"]
    assert out["count_plus"] == out["count_minus"] == 4
