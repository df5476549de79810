import io
import json
from importlib import resources

import numpy as np
import pytest

from kaucher.cli import EXIT_INPUT, EXIT_NUMERIC, EXIT_OK, format_solution, main, solve_problem
from kaucher.linalg import IntervalVector, residual
from kaucher.problems import parse_vector, point_2x2


def fixture_path(name):
    return str(resources.files("kaucher").joinpath("data", f"{name}.txt"))


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def write(tmp_path, name, text):
    path = tmp_path / name
    path.write_text(text)
    return str(path)


class TestSolve:
    def test_newton_barth_nuding(self, capsys):
        code, out, err = run(capsys, "solve", "-m", "newton", "-i", fixture_path("barth_nuding"))
        assert code == EXIT_OK
        x = parse_vector(out)
        np.testing.assert_allclose(x.lo, [-1 / 3, -1 / 3], atol=1e-12)
        np.testing.assert_allclose(x.hi, [1 / 3, 1 / 3], atol=1e-12)
        assert "status: Converged" in err and "WARNING" not in err

    def test_point_system(self, capsys):
        code, out, _ = run(capsys, "solve", "-i", fixture_path("point2x2"))
        assert code == EXIT_OK
        x = parse_vector(out)
        np.testing.assert_allclose(x.lo, [4, -2], atol=1e-12)
        np.testing.assert_allclose(x.hi, [-6, 8], atol=1e-12)
        assert out.count("\n") == 2

    def test_armsplit_diverges_on_seven_by_seven(self, capsys):
        code, out, err = run(capsys, "solve", "-m", "armsplit", "-i", fixture_path("system7x7"))
        assert code == EXIT_NUMERIC
        assert "WARNING: not converged" in err
        assert "Diverged" in err or "CriterionNotMet" in err

    def test_json_report(self, capsys):
        code, out, err = run(capsys, "solve", "-m", "trnsplit", "--report", "json",
                             "-i", fixture_path("barth_nuding"))
        assert code == EXIT_OK
        report = json.loads(err)
        assert report["status"] == "Converged" and report["method"] == "trnsplit"
        assert "banner" not in report
        code, out, err = run(capsys, "solve", "-m", "newton", "--max-iter", "1", "--report", "json",
                             "-i", fixture_path("system7x7"))
        assert code == EXIT_NUMERIC
        report = json.loads(err)
        assert report["status"] == "MaxIterations" and "banner" in report
        assert len(out.splitlines()) == 7

    def test_dualize_matrix(self, capsys):
        code, out, _ = run(capsys, "solve", "--dualize-matrix", "-i", fixture_path("barth_nuding"))
        assert code == EXIT_OK
        x = parse_vector(out)
        np.testing.assert_allclose(x.lo, [-1, -1], atol=1e-9)
        np.testing.assert_allclose(x.hi, [1, 1], atol=1e-9)

    def test_stdin(self, capsys, monkeypatch):
        with open(fixture_path("point2x2")) as fh:
            monkeypatch.setattr("sys.stdin", io.StringIO(fh.read()))
        code, out, _ = run(capsys, "solve", "-m", "newton")
        assert code == EXIT_OK and out

    def test_full_precision_output(self):
        x = IntervalVector([1 / 3], [-0.1])
        assert format_solution(x) == "[0.33333333333333331,-0.10000000000000001]\n"
        assert parse_vector(format_solution(x)) == x

    def test_solve_problem_dispatch(self):
        p = point_2x2()
        for method in ("armsplit", "armsplit-simple", "trnsplit", "newton"):
            x, r = solve_problem(p, method, max_iter=1000)
            assert r.converged and r.method == method, method
            assert residual(p.A, x, p.b) <= 1e-10


class TestCheck:
    def test_abs_regular(self, capsys):
        code, out, _ = run(capsys, "check", "--criterion", "abs-regular", "-i", fixture_path("point2x2"))
        assert code == EXIT_OK and "absolute regularity: satisfied" in out

    def test_abs_regular_fails(self, capsys, tmp_path):
        path = write(tmp_path, "p.txt", "n 2 matrix [1,1] [1,1] [-1,-1] [1,1] rhs [0,1] [0,1]")
        code, out, _ = run(capsys, "check", "--criterion", "abs-regular", "-i", path)
        assert code == EXIT_NUMERIC and "|Q| is singular" in out

    def test_trn_on_dominant_matrix(self, capsys, tmp_path):
        # s = (1/4, 2 * (1/4) / 6): both below one
        path = write(tmp_path, "p.txt", "n 2 matrix [4,5] [-1,1] [1,2] [-6,-8] rhs [1,2] [3,4]")
        code, out, _ = run(capsys, "check", "--criterion", "trn", "-i", path)
        assert code == EXIT_OK
        assert "max s_i: 0.25 " in out
        assert "diagonal dominance: yes" in out and "TrnSplit criterion: satisfied" in out

    def test_arm_on_barth_nuding_sits_on_the_boundary(self, capsys):
        # rho(|V||H|~) is exactly 1 here, so the strict test is not met
        code, out, _ = run(capsys, "check", "--criterion", "arm", "-i", fixture_path("barth_nuding"))
        assert code == EXIT_NUMERIC
        rho = float(out.split("rho(|V||H|~): ")[1].split()[0])
        assert rho == pytest.approx(1.0, abs=1e-12)

    def test_arm_satisfied(self, capsys):
        code, out, _ = run(capsys, "check", "--criterion", "arm", "-i", fixture_path("point2x2"))
        assert code == EXIT_OK and "criterion: satisfied" in out
        code, out, _ = run(capsys, "check", "--criterion", "arm", "-m", "armsplit-simple",
                           "-i", fixture_path("point2x2"))
        assert code == EXIT_OK and "(simple)" in out

    def test_trn_not_satisfied(self, capsys):
        code, out, _ = run(capsys, "check", "--criterion", "trn", "-i", fixture_path("neumaier40"))
        assert code == EXIT_NUMERIC and "diagonal dominance: no" in out


class TestVerify:
    def test_barth_nuding(self, capsys, tmp_path):
        sol = write(tmp_path, "x.txt", "[-0.33333333333333331,0.33333333333333331]\n" * 2)
        code, out, _ = run(capsys, "verify", "-i", fixture_path("barth_nuding"), "--solution", sol)
        assert code == EXIT_OK
        assert float(out.split()[1]) <= 1e-15

    def test_neumaier(self, capsys, tmp_path):
        sol = write(tmp_path, "x.txt", "[0.25, 0.16949152542]\n" * 40)
        code, out, _ = run(capsys, "verify", "-i", fixture_path("neumaier40"), "--solution", sol)
        assert code == EXIT_OK
        assert float(out.split()[1]) <= 1e-9

    def test_wrong_candidate(self, capsys, tmp_path):
        sol = write(tmp_path, "x.txt", "[0,1]\n[0,1]\n")
        code, out, _ = run(capsys, "verify", "-i", fixture_path("barth_nuding"), "--solution", sol)
        assert code == EXIT_NUMERIC and "not a formal solution" in out

    def test_dimension_mismatch(self, capsys, tmp_path):
        sol = write(tmp_path, "x.txt", "[0,1]\n")
        code, _, err = run(capsys, "verify", "-i", fixture_path("barth_nuding"), "--solution", sol)
        assert code == EXIT_INPUT and "components" in err


class TestInputErrors:
    def test_syntax_error(self, capsys, tmp_path):
        path = write(tmp_path, "p.txt", "n 1\nmatrix\n[1 2]\nrhs\n[1,1]\n")
        code, out, err = run(capsys, "solve", "-i", path)
        assert code == EXIT_INPUT and "line 3" in err and not out

    def test_missing_file(self, capsys, tmp_path):
        code, _, err = run(capsys, "solve", "-i", str(tmp_path / "absent.txt"))
        assert code == EXIT_INPUT and "error" in err

    @pytest.mark.parametrize("argv", [
        ["solve", "--tau", "0"],
        ["solve", "--tau", "1.5"],
        ["solve", "-m", "bogus"],
        ["check"],
        ["verify", "-i", "x.txt"],
        [],
    ])
    def test_usage(self, capsys, argv):
        assert main(argv) == EXIT_INPUT
        capsys.readouterr()
