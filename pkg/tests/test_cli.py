"""Command-line surface: outputs, exit codes, determinism."""

import io
import json
from contextlib import redirect_stdout

import pytest

from ffdioph.cli import main


def run_cli(argv):
    buf = io.StringIO()
    with redirect_stdout(buf):
        code = main(argv)
    return code, buf.getvalue()


class TestCfrac:
    def test_rational_example(self):
        code, out = run_cli(["cfrac", "--q", "2", "--y", "(T^2+1)/T"])
        assert code == 0
        doc = json.loads(out)
        assert doc["quotients"] == ["T", "T"]
        assert doc["terminated"]

    def test_laurent_input(self):
        code, out = run_cli(
            ["cfrac", "--q", "2", "--y", "T^-1 + T^-3 + O(T^-40)"])
        assert code == 0
        doc = json.loads(out)
        assert doc["reason"] in ("precision", "max_terms", "terminated")


class TestExponent:
    def test_csv(self):
        code, out = run_cli([
            "exponent", "--q", "2", "--Y", "T^-1 + T^-3 + T^-6",
            "--tau-max", "8", "--format", "csv",
        ])
        assert code == 0
        assert out.splitlines()[0] == "tau,L,exact_flag"

    def test_json_estimate(self):
        code, out = run_cli([
            "exponent", "--q", "2", "--Y", "T^-1 + T^-3 + T^-6",
            "--tau-max", "8",
        ])
        doc = json.loads(out)
        assert doc["estimate"]["omega_lower"] == "inf"

    def test_matrix_file_input(self, tmp_path):
        path = tmp_path / "Y.txt"
        path.write_text(
            "q=2 rows=1 cols=2 shift=0,0\n"
            "T^-1 + T^-4 + O(T^-44) | T^-2 + T^-3 + O(T^-44)\n"
        )
        code, out = run_cli([
            "exponent", "--q", "2", "--Y", str(path), "--tau-max", "10",
        ])
        assert code == 0
        doc = json.loads(out)
        assert (doc["m"], doc["n"]) == (1, 2)


class TestDirichlet:
    def test_instance_file(self, tmp_path):
        path = tmp_path / "inst.txt"
        path.write_text("q=2 m=1 n=1 t=2,2\nT^-1 + O(T^-30)\n")
        code, out = run_cli(["dirichlet", "--instance", str(path)])
        assert code == 0
        doc = json.loads(out)
        assert doc["p"] == ["1"] and doc["q"] == ["T"]

    def test_zero_instance(self, tmp_path):
        path = tmp_path / "inst.txt"
        path.write_text("q=2 m=1 n=2 t=4,2,2\n0 | 0\n")
        code, out = run_cli(["dirichlet", "--instance", str(path)])
        assert code == 0
        doc = json.loads(out)
        assert doc["p"] == ["0"]


class TestGoodcheck:
    def test_identity(self):
        code, out = run_cli([
            "goodcheck", "--map", "veronese:1", "--alpha", "1",
            "-N", "8",
        ])
        assert code == 0
        doc = json.loads(out)
        assert doc["good"]["C_min"] == {"coeff": "1/1", "q_exp": "0/1"}

    def test_claimed_violation_exit(self):
        code, _ = run_cli([
            "goodcheck", "--map", "veronese:1", "--alpha", "1",
            "-N", "8", "--claimed-C", "1/4",
        ])
        assert code == 1

    def test_json_map_file(self, tmp_path):
        # x -> (x, x^2 + T*x) as an explicit map file
        path = tmp_path / "map.json"
        path.write_text(json.dumps({
            "d": 1,
            "components": [
                [{"exps": [1], "coeff": "1"}],
                [{"exps": [2], "coeff": "1"}, {"exps": [1], "coeff": "T"}],
            ],
        }))
        code, out = run_cli([
            "goodcheck", "--map", str(path), "--alpha", "1", "-N", "7",
        ])
        assert code == 0
        doc = json.loads(out)
        assert doc["good"]["C_min"] == {"coeff": "1/1", "q_exp": "0/1"}


class TestTransfer:
    def test_intersection_exit_zero(self):
        code, out = run_cli([
            "transfer", "intersection", "--map", "veronese:1",
            "--t", "1", "--omega", "2", "-N", "8", "--theta", "T^-1",
        ])
        assert code == 0
        doc = json.loads(out)
        assert doc["reports"][0]["report"]["passed"]

    def test_random_requires_seed(self):
        code, _ = run_cli([
            "transfer", "bz", "--random", "2", "--n", "1",
            "--tau-max", "8",
        ])
        assert code == 2

    def test_bz_random(self):
        code, out = run_cli([
            "transfer", "bz", "--random", "2", "--n", "1",
            "--tau-max", "8", "--seed", "11",
        ])
        assert code == 0
        doc = json.loads(out)
        assert len(doc["results"]) == 2
        _, out2 = run_cli([
            "transfer", "bz", "--random", "2", "--n", "1",
            "--tau-max", "8", "--seed", "11",
        ])
        assert out == out2  # byte-identical with the same seed

    def test_bz_literal(self):
        code, out = run_cli([
            "transfer", "bz", "--y", "T^-1 + T^-3 + O(T^-50)",
            "--theta", "T^-2", "--tau-max", "10", "--n", "1",
        ])
        assert code == 0
        doc = json.loads(out)
        statuses = {c["status"] for c in doc["results"][0]["checks"]}
        assert "violated" not in statuses

    def test_dyson_literal(self):
        code, out = run_cli([
            "transfer", "dyson",
            "--y", "T^-1 + T^-3 + O(T^-50); T^-2 + T^-5 + O(T^-50)",
            "--tau-max", "10",
        ])
        assert code == 0
        doc = json.loads(out)
        names = [c["name"] for c in doc["results"][0]["checks"]]
        assert "dyson_biconditional" in names

    def test_contraction_exit_zero(self):
        code, out = run_cli([
            "transfer", "contraction", "--map", "veronese:1",
            "--t", "2", "--omega", "2", "-N", "8",
            "--theta", "T^-1", "--C", "1", "--alpha0", "1",
        ])
        assert code == 0
        doc = json.loads(out)
        assert doc["reports"][0]["report"]["passed"]


class TestExtremal:
    def test_run_and_determinism(self, tmp_path):
        path = tmp_path / "cfg.txt"
        path.write_text(
            "q=2\nmap=veronese:2\ntheta=0\ntau_max=8\n"
            "depth=30\nsamples=4\nseed=7\n"
        )
        code1, out1 = run_cli(["extremal", "--config", str(path)])
        code2, out2 = run_cli(["extremal", "--config", str(path)])
        assert code1 == code2 == 0
        assert out1 == out2  # byte-identical

    def test_csv_format(self, tmp_path):
        path = tmp_path / "cfg.txt"
        path.write_text(
            "q=2\nmap=veronese:2\ntheta=0\ntau_max=8\n"
            "depth=30\nsamples=2\nseed=7\nformat=csv\n"
        )
        code, out = run_cli(["extremal", "--config", str(path)])
        assert code == 0
        assert out.splitlines()[0] == "sample,tau,L,ratio,exact,included"


class TestUsage:
    def test_unknown_command_exits_2(self):
        with pytest.raises(SystemExit) as exc:
            main(["bogus"])
        assert exc.value.code == 2

    def test_missing_required_exits_2(self):
        with pytest.raises(SystemExit) as exc:
            main(["cfrac"])
        assert exc.value.code == 2
