import json
from fractions import Fraction as F

import mpmath
import pytest

from hardedge import cli, mc
from hardedge.mvop import poly_from_json
from hardedge.laws import EigLaw
from hardedge.scalar import set_precision


def run(capsys, *argv):
    code = cli.main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_mvop_laguerre_human(capsys):
    code, out, _ = run(capsys, "mvop", "laguerre", "--kappa", "2,1", "--gamma", "1", "--beta", "3", "--nvars", "3")
    assert code == 0
    assert out.strip() == ("-3/14*(x1^2*x2 + x1^2*x3 + x1*x2^2 + x1*x3^2 + x2^2*x3 + x2*x3^2) - 27/56*x1*x2*x3"
                           " + 3*(x1^2 + x2^2 + x3^2) + 27/2*(x1*x2 + x1*x3 + x2*x3) - 297/2*(x1 + x2 + x3)"
                           " + 1485")


def test_mvop_jack(capsys):
    code, out, _ = run(capsys, "mvop", "jack", "--kappa", "1", "--beta", "2", "--nvars", "3")
    assert code == 0 and out.strip() == "x1 + x2 + x3"


def test_mvop_jacobi_json_round_trip(capsys):
    code, out, _ = run(capsys, "mvop", "jacobi", "--kappa", "2,1", "--gamma1", "3/2", "--gamma2", "1/2",
                       "--beta", "3", "--nvars", "2", "--format", "json")
    assert code == 0
    poly = poly_from_json(json.loads(out))
    assert poly[(2, 1)] == F(-117, 50) and poly[(2,)] == F(117, 80) and poly[()] == 1


def test_law_worked_example(capsys):
    code, out, _ = run(capsys, "law", "laguerre", "cdf", "-n", "4", "--beta", "1/2", "--gamma", "3")
    assert code == 0
    assert out.strip() == ("1 + (-1/212837625) * exp(-(2)*x) * (4*x^12 + 168*x^11 + 3444*x^10 + 44604*x^9"
                           " + 401814*x^8 + 2644488*x^7 + 13020084*x^6 + 48440700*x^5 + 136070550*x^4"
                           " + 283783500*x^3 + 425675250*x^2 + 425675250*x + 212837625)")


def test_law_gamma_zero(capsys):
    code, out, _ = run(capsys, "law", "laguerre", "cdf", "-n", "2", "--beta", "2", "--gamma", "0")
    assert code == 0 and out.strip() == "1 + (-1) * exp(-(1)*x) * (1)"


def test_law_grid_csv(capsys):
    code, out, _ = run(capsys, "law", "jacobi", "pdf", "-n", "3", "--beta", "4/3", "--gamma1", "2",
                       "--gamma2", "2/3", "--grid", "0:1:0.01")
    assert code == 0
    rows = out.strip().splitlines()
    assert rows[0] == "x,value" and len(rows) == 102
    x, v = map(float, rows[51].split(","))
    law = cli.law_for("jacobi_pdf", 3, F(4, 3), gamma1=2, gamma2=F(2, 3))
    assert x == 0.5 and v == pytest.approx(float(law(F(1, 2))), rel=1e-15)


def test_law_json(capsys):
    code, out, _ = run(capsys, "law", "jacobi", "largest-cdf", "-n", "2", "--beta", "2", "--gamma1", "1",
                       "--gamma2", "1", "--format", "json")
    assert code == 0
    assert str(EigLaw.from_json(json.loads(out))) == "(1) * x^(6) * (3*x^2 - 12*x + 10)"


def test_law_real_beta(capsys):
    code, out, _ = run(capsys, "law", "laguerre", "pdf", "-n", "3", "--beta", "e", "--gamma", "2")
    assert code == 0 and "exp(-(1.5)*x)" in out


@pytest.mark.parametrize("argv", [
    ["law", "laguerre", "cdf", "-n", "2", "--beta", "2", "--gamma", "1/2"],
    ["law", "laguerre", "cdf", "-n", "2", "--beta", "-1", "--gamma", "1"],
    ["law", "jacobi", "cdf", "-n", "2", "--beta", "2", "--gamma1", "1"],
    ["mvop", "laguerre", "--kappa", "1,1,1", "--gamma", "1", "--beta", "2", "--nvars", "2"],
    ["sample", "lbe", "-n", "2", "--beta", "0", "--gamma", "1", "--count", "10"],
])
def test_parameter_errors_exit_2(capsys, argv):
    code, out, err = run(capsys, *argv)
    assert code == 2 and out == ""
    assert err.startswith("error: ") and len(err.strip().splitlines()) == 1


def test_usage_errors_exit_2(capsys):
    with pytest.raises(SystemExit) as exc:
        cli.main(["mvop", "jack", "--kappa", "1,2", "--beta", "2", "--nvars", "2"])
    assert exc.value.code == 2
    with pytest.raises(SystemExit) as exc:
        cli.main(["law", "laguerre", "cdf", "-n", "2", "--beta", "pi", "--gamma", "1"])
    assert exc.value.code == 2


def test_verify_diff(capsys):
    code, out, _ = run(capsys, "verify", "diff", "--beta", "3", "--n", "3", "--gamma", "2")
    assert code == 0
    assert out.splitlines()[0] == "PASS laguerre_diff(n=3, beta=3, gamma=2)"
    assert out.strip().endswith("4/4 passed")


def test_verify_painleve5_json(capsys):
    code, out, _ = run(capsys, "verify", "painleve5", "--n", "2,3,4", "--gamma", "1,2,3", "--format", "json")
    assert code == 0
    lines = [json.loads(line) for line in out.strip().splitlines()]
    assert len(lines) == 27 and all(line["pass"] for line in lines)
    residuals = [line for line in lines if line["identity"] == "painleve5"]
    assert all(line["residual_sample_values"] == ["0", "0", "0"] for line in residuals)


def test_verify_painleve6(capsys):
    code, out, _ = run(capsys, "verify", "painleve6")
    assert code == 0 and out.strip().endswith("18/18 passed")


def test_verify_kaneko(capsys):
    code, out, _ = run(capsys, "verify", "kaneko", "--beta", "2", "--gamma", "1")
    assert code == 0 and out.strip().endswith("3/3 passed")


def test_verify_corpus(capsys):
    code, out, _ = run(capsys, "verify", "corpus")
    assert code == 0 and out.strip().endswith("13/13 fixtures match exactly")


def test_verify_failure_exit_1(capsys, monkeypatch):
    monkeypatch.setattr(cli.identities, "laguerre_diff_constant", lambda n, b, g: F(12345))
    code, out, _ = run(capsys, "verify", "diff", "--n", "2", "--gamma", "1", "--beta", "2", "--ensemble", "laguerre")
    assert code == 1 and out.startswith("FAIL")


def test_sample_then_kstest(capsys, tmp_path):
    path = tmp_path / "lbe.csv"
    code, _, _ = run(capsys, "sample", "lbe", "-n", "4", "--beta", "5/2", "--gamma", "2", "--count", "100000",
                     "--seed", "7", "-o", str(path))
    assert code == 0
    plot = tmp_path / "plot.csv"
    code, out, _ = run(capsys, "kstest", "--samples", str(path), "--plot-data", str(plot), "--format", "json")
    report = json.loads(out)
    assert code == 0 and report["pass"] and report["count"] == 100000 and report["seed"] == 7
    assert plot.read_text().splitlines()[0] == "x,empirical,exact"


def test_sample_is_deterministic(capsys):
    argv = ["sample", "jbe", "-n", "2", "--beta", "1/2", "--gamma1", "3", "--gamma2", "1/4", "--count", "300",
            "--seed", "5"]
    _, first, _ = run(capsys, *argv)
    _, second, _ = run(capsys, *argv, "--workers", "3")
    assert first == second
    assert mc.SampleBatch.from_csv(first).count == 300


def test_inline_kstest(capsys):
    code, out, _ = run(capsys, "kstest", "lbe", "-n", "1", "--beta", "2", "--gamma", "0", "--count", "20000",
                       "--seed", "3")
    assert code == 0 and out.startswith("PASS")


def test_kstest_failure_exit_1(capsys):
    code, out, _ = run(capsys, "kstest", "jbe", "-n", "2", "--beta", "1/2", "--gamma1", "3", "--gamma2", "1/4",
                       "--count", "2000", "--seed", "3", "--threshold", "1e-6")
    assert code == 1 and out.startswith("FAIL")


def test_precision_flag(capsys):
    try:
        code, _, _ = run(capsys, "--precision-bits", "128", "law", "laguerre", "cdf", "-n", "2", "--beta", "e",
                         "--gamma", "1")
        assert code == 0 and mpmath.mp.prec == 128
    finally:
        set_precision(256)
