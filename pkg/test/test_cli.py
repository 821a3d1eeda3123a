import numpy as np
import pytest
import simplejson

from cartanquot import cli, verify
from .mock_points import LIE_AUT_JSON

ENV_NAMES = ["CARTANQUOT_SEED", "CARTANQUOT_TOL", "CARTANQUOT_SAMPLES", "CARTANQUOT_FORMAT", "CARTANQUOT_JOBS"]


@pytest.fixture(autouse=True)
def clean_environment(monkeypatch):
    for name in ENV_NAMES:
        monkeypatch.delenv(name, raising=False)


def run(capsys, *argv):
    code = cli.main(list(argv))
    return code, capsys.readouterr().out


def run_json(capsys, *argv):
    code, out = run(capsys, *argv)
    return code, simplejson.loads(out)


class TestExitCodes:
    def test_witness_passes(self, capsys):
        code, report = run_json(capsys, "lqk-zero", "--n", "3", "--r", "0.8")
        assert code == cli.EXIT_OK
        assert report["command"] == "lqk-zero"
        assert report["passed"] is True
        assert report["witness"]["relativeValue"] < 1e-9
        assert report["config"]["seed"] == 20230101, "the report echoes its configuration"

    @pytest.mark.parametrize("argv", [
        [],
        ["kernel"],
        ["member", "--domain", "LieBall", "--n", "2"],
        ["member", "--domain", "LieBall", "--n", "2", "--point", "[[0.1, 0"],
        ["member", "--point", "[0.1, 0.2]"],
        ["member", "--domain", "CartanI", "--m", "2", "--point", "[[0.1, 0.2]]"],
        ["lqk-zero", "--n", "2"],
        ["kernel", "--n", "3", "--seed", "-4"],
        ["verify-suite", "--only", "domains.unknown"],
    ])
    def test_usage_errors(self, capsys, argv):
        code, out = run(capsys, *argv)
        assert code == cli.EXIT_USAGE, "{} should be rejected".format(argv)
        assert out == "", "no report is written on usage errors"

    def test_verdict_exit_codes(self, capsys):
        code, _ = run(capsys, "lqk-scan", "--n", "2", "--near-witness", "--samples", "1000")
        assert code == cli.EXIT_USAGE, "there is no explicit witness for n = 2"
        code, report = run_json(capsys, "member", "--form", "eq1", "--point", "[0.5, 0.5]")
        assert code == cli.EXIT_OK
        code, report = run_json(capsys, "reflection", "--matrix", "[[1, 0], [0, 1]]")
        assert code == cli.EXIT_FAILED, "the identity is not a reflection"
        assert report["isReflection"] is False

    def test_plain_value_errors_are_usage_errors(self, capsys):
        code = cli.main(["reflection", "--matrix", "[[0, 1], [1, 0]]", "--rtol", "0"])
        captured = capsys.readouterr()
        assert code == cli.EXIT_USAGE, "a non positive tolerance is a usage error"
        assert captured.out == ""
        assert "tol must be positive" in captured.err, "the error goes through the logger"


class TestSubcommands:
    def test_kernel_first_slot(self, capsys):
        code, report = run_json(capsys, "kernel", "--n", "4", "--p", "0")
        assert code == cli.EXIT_OK
        assert report["value"] == [4.0, 0.0]
        assert report["checks"][0]["name"] == "first_slot_constancy"

    def test_member_verdicts(self, capsys):
        code, report = run_json(capsys, "member", "--domain", "LieBall", "--n", "2",
                                "--point", "[[[0.5, 0], [0.5, 0]], [[0.6, 0], [0, 0.6]]]")
        assert code == cli.EXIT_OK
        assert [verdict["state"] for verdict in report["verdicts"]] == ["Inside", "Outside"]
        assert report["domain"] == {"tag": "LieBall", "params": {"n": 2}}

    def test_eval_map_with_jacobian(self, capsys):
        code, report = run_json(capsys, "eval-map", "--map", "LambdaN", "--n", "2", "--point", "[0.5, 0.5]",
                                "--jacobian")
        assert code == cli.EXIT_OK
        assert report["image"] == [[0.25, 0.0], [0.5, 0.0]]
        assert report["checks"][0]["name"] == "jacobian_finite_difference"

    def test_fiber(self, capsys):
        code, report = run_json(capsys, "fiber", "--map", "LambdaN", "--n", "2", "--target", "[0.25, 0.5]")
        assert code == cli.EXIT_OK
        assert len(report["fiber"]["preimages"]) == 2
        assert report["fiber"]["isCritical"] is False

    def test_aut_apply(self, capsys):
        code, report = run_json(capsys, "aut-apply", "--aut", simplejson.dumps(LIE_AUT_JSON),
                                "--point", "[0.5, 0.0]")
        assert code == cli.EXIT_OK
        assert np.allclose(np.array(report["image"]), [[0.0, 0.0], [0.0, 0.5]])

    def test_bih_eval(self, capsys):
        code, report = run_json(capsys, "bih-eval", "--bih", "LL2toG2", "--point", "[0.25, 0.5]")
        assert code == cli.EXIT_OK
        assert [check["name"] for check in report["checks"]] == ["membership_transport", "round_trip"]

    def test_fix_scan_of_a_deck_involution(self, capsys):
        code, report = run_json(capsys, "fix-scan", "--map", "LambdaN", "--n", "2", "--samples", "20")
        assert code == cli.EXIT_OK
        assert report["count"] > 0


class TestVerifySuite:
    def test_list(self, capsys):
        code, report = run_json(capsys, "verify-suite", "--list")
        assert code == cli.EXIT_OK
        assert len(report["manifest"]) == len(verify.SUITE)

    def test_runs_are_reproducible(self, capsys):
        argv = ["verify-suite", "--only", "automorphisms.rho_composition", "--only", "bergman.witness_zero",
                "--samples", "200", "--seed", "17"]
        first = run(capsys, *argv)
        second = run(capsys, *argv)
        assert first[0] == cli.EXIT_OK
        assert first == second, "the same seed should give byte identical reports"


class TestFormats:
    def test_csv(self, capsys):
        code, out = run(capsys, "member", "--form", "intrinsic",
                        "--point", "[[[0.25, 0], [0.5, 0]], [[0.36, 0], [0, 0.6]]]",
                        "--format", "csv")
        assert code == cli.EXIT_OK
        lines = out.splitlines()
        assert lines[0] == "index,margin,state"
        assert lines[1].endswith(",Inside") and lines[2].endswith(",Outside")

    def test_text(self, capsys):
        code, out = run(capsys, "lqk-zero", "--n", "4", "--r", "0.7", "--format", "text")
        assert code == cli.EXIT_OK
        assert out.startswith("command: lqk-zero\n")
        assert "PASS witness_zero" in out
        assert out.endswith("passed: true\n")

    def test_format_from_environment(self, capsys, monkeypatch):
        monkeypatch.setenv("CARTANQUOT_FORMAT", "text")
        code, out = run(capsys, "kernel", "--n", "2", "--p", "0")
        assert code == cli.EXIT_OK
        assert out.startswith("command: kernel\n")

    def test_output_file(self, capsys, tmp_path):
        path = tmp_path / "report.json"
        code, out = run(capsys, "kernel", "--n", "3", "--p", "0", "--output", str(path))
        assert code == cli.EXIT_OK and out == ""
        assert simplejson.loads(path.read_text())["value"] == [3.0, 0.0]
