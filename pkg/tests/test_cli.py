import json
import subprocess
import sys

import pytest

from partent import cli

SHANNON = {"kind": "shannon"}
HALF_DENSITY_2 = {
    "kind": "lm",
    "measure": {"breakpoints": ["0/1", "1/2", "1/1"], "densities": ["2/1", "0/1"]},
}
HALVES = {"atoms": [{"intervals": [["0/1", "1/2"]]}, {"intervals": [["1/2", "1/1"]]}]}
QUARTER_SPLIT = {
    "atoms": [{"intervals": [["0/1", "1/4"]]}, {"intervals": [["1/4", "1/1"]]}]
}


@pytest.fixture
def files(tmp_path):
    def write(name, doc):
        path = tmp_path / name
        path.write_text(json.dumps(doc))
        return str(path)

    return write


def run_json(capsys, argv):
    code = cli.run(argv)
    out = capsys.readouterr().out
    return code, json.loads(out)


class TestDumps:
    def test_float_17_digits(self):
        assert cli.dumps({"x": 1 / 3}) == '{"x": 0.33333333333333331}'

    def test_scalars(self):
        assert cli.dumps([1, True, None, "a\"b"]) == '[1, true, null, "a\\"b"]'

    def test_negative_zero_normalized(self):
        assert cli.dumps(-0.0) == "0"

    def test_rejects_nan(self):
        with pytest.raises(ValueError):
            cli.dumps(float("nan"))


class TestCommands:
    def test_entropy(self, capsys, files):
        code, report = run_json(
            capsys,
            [
                "entropy",
                "--spec",
                files("spec.json", SHANNON),
                "--algebra",
                files("a.json", HALVES),
            ],
        )
        assert code == 0
        assert report["result"] == {"value": 1.0}
        assert report["version"]

    def test_join(self, capsys, files):
        code, report = run_json(
            capsys,
            [
                "join",
                "--a",
                files("a.json", HALVES),
                "--b",
                files("b.json", QUARTER_SPLIT),
            ],
        )
        assert code == 0
        assert len(report["result"]["atoms"]) == 3

    def test_independent(self, capsys, files):
        code, report = run_json(
            capsys,
            [
                "independent",
                "--a",
                files("a.json", HALVES),
                "--b",
                files("b.json", HALVES),
            ],
        )
        assert code == 0
        assert report["result"] == {"independent": False}

    def test_independent_profile(self, capsys, files):
        code, report = run_json(
            capsys,
            [
                "independent-profile",
                "--a",
                files("a.json", HALVES),
                "--profile",
                files("p.json", {"weights": ["1/3", "2/3"]}),
            ],
        )
        assert code == 0
        atoms = report["result"]["atoms"]
        assert atoms[0]["intervals"] == [["0/1", "1/6"], ["1/2", "2/3"]]

    def test_distance(self, capsys, files):
        code, report = run_json(
            capsys,
            [
                "distance",
                "--a",
                files("a.json", HALVES),
                "--b",
                files("b.json", QUARTER_SPLIT),
                "--metric",
                "d",
            ],
        )
        assert code == 0
        assert report["result"] == {"metric": "d", "value": "1/4"}

    def test_delta_rate(self, capsys, files):
        # with m of density 2 below 1/2: m(w) - m(v) = 0 - 1/4
        code, report = run_json(
            capsys,
            [
                "delta",
                "--spec",
                files("spec.json", HALF_DENSITY_2),
                "--v",
                files("v.json", {"intervals": [["0/1", "1/8"]]}),
                "--w",
                files("w.json", {"intervals": [["1/2", "5/8"]]}),
            ],
        )
        assert code == 0
        result = report["result"]
        assert result["value"] == pytest.approx(-0.25, abs=1e-9)
        assert result["lambda"] == "2/1"
        assert result["crosscheck_residual"] <= 1e-8

    def test_delta_fixed_ratio(self, capsys, files):
        code, report = run_json(
            capsys,
            [
                "delta",
                "--spec",
                files("spec.json", HALF_DENSITY_2),
                "--v",
                files("v.json", {"intervals": [["0/1", "1/8"]]}),
                "--w",
                files("w.json", {"intervals": [["1/2", "5/8"]]}),
                "--lambda",
                "4/1",
            ],
        )
        assert code == 0
        assert report["result"]["value"] == pytest.approx(-0.5, abs=1e-9)
        assert report["result"]["lambda"] == "4/1"

    def test_extract(self, capsys, files):
        code, report = run_json(
            capsys,
            [
                "extract",
                "--spec",
                files("spec.json", HALF_DENSITY_2),
                "--grid",
                "4",
            ],
        )
        assert code == 0
        cells = report["result"]["cells"]
        # m has total mass 1: cells are m(cell) - 1/4 = (1/4, 1/4, -1/4, -1/4)
        assert cells == pytest.approx([0.25, 0.25, -0.25, -0.25], abs=1e-8)

    def test_decompose(self, capsys, files):
        code, report = run_json(
            capsys,
            [
                "decompose",
                "--spec",
                files("spec.json", SHANNON),
                "--grid",
                "4",
                "--trials",
                "5",
                "--seed",
                "1",
            ],
        )
        assert code == 0
        assert report["generator"] == "python-mt19937/v1"
        assert report["result"]["trials"] == 5
        assert report["result"]["atom_dependence_deviation"] <= 1e-9

    def test_verify_pass(self, capsys, files):
        code, report = run_json(
            capsys, ["verify", "--suite", "set-laws", "--trials", "25", "--seed", "1"]
        )
        assert code == 0
        assert report["result"]["passed"] is True
        assert all(p["passed"] for p in report["result"]["properties"])

    def test_output_file(self, tmp_path, capsys, files):
        out = tmp_path / "report.json"
        code = cli.run(
            [
                "entropy",
                "--spec",
                files("spec.json", SHANNON),
                "--algebra",
                files("a.json", HALVES),
                "--output",
                str(out),
            ]
        )
        assert code == 0
        assert capsys.readouterr().out == ""
        assert json.loads(out.read_text())["result"]["value"] == 1.0


class TestErrors:
    def test_malformed_json(self, capsys, tmp_path, files):
        bad = tmp_path / "bad.json"
        bad.write_text("{not json")
        code, report = run_json(
            capsys,
            ["entropy", "--spec", str(bad), "--algebra", files("a.json", HALVES)],
        )
        assert code == 1
        assert report["error"] == "bad-input"
        assert "detail" in report

    def test_wrong_document_shape(self, capsys, files):
        code, report = run_json(
            capsys,
            [
                "entropy",
                "--spec",
                files("spec.json", SHANNON),
                "--algebra",
                files("a.json", {"intervals": []}),  # an MSet, not an Algebra
            ],
        )
        assert code == 1
        assert report["error"] == "bad-input"

    def test_missing_file(self, capsys, files):
        code, report = run_json(
            capsys,
            [
                "entropy",
                "--spec",
                "/nonexistent/spec.json",
                "--algebra",
                files("a.json", HALVES),
            ],
        )
        assert code == 1
        assert report["error"] == "bad-input"

    def test_renyi_order_one(self, capsys, files):
        code, report = run_json(
            capsys,
            [
                "entropy",
                "--spec",
                files("spec.json", {"kind": "renyi", "alpha": "1/1"}),
                "--algebra",
                files("a.json", HALVES),
            ],
        )
        assert code == 1
        assert report["error"] == "renyi-alpha-one"

    def test_overlapping_atoms(self, capsys, files):
        overlapping = {
            "atoms": [
                {"intervals": [["0/1", "1/2"]]},
                {"intervals": [["1/3", "1/1"]]},
            ]
        }
        code, report = run_json(
            capsys,
            [
                "entropy",
                "--spec",
                files("spec.json", SHANNON),
                "--algebra",
                files("a.json", overlapping),
            ],
        )
        assert code == 1
        assert report["error"] == "overlap"

    def test_unequal_swap_measures(self, capsys, files):
        code, report = run_json(
            capsys,
            [
                "delta",
                "--spec",
                files("spec.json", SHANNON),
                "--v",
                files("v.json", {"intervals": [["0/1", "1/8"]]}),
                "--w",
                files("w.json", {"intervals": [["1/2", "3/4"]]}),
            ],
        )
        assert code == 1
        assert report["error"] == "unequal-measures"

    def test_unknown_suite(self, capsys):
        code, report = run_json(capsys, ["verify", "--suite", "nope"])
        assert code == 1
        assert report["error"] == "bad-input"

    def test_usage_error(self, capsys):
        code, report = run_json(capsys, ["entropy", "--spec"])
        assert code == 1
        assert report["error"] == "usage"

    def test_verify_failure_exit_code(self, capsys, monkeypatch):
        # force a failing property to check the dedicated exit code
        from partent.verify import PropertyCheck, SuiteResult

        def broken(name, trials, seed):
            return SuiteResult(
                name, trials, seed, (PropertyCheck("forced", 1.0, 0.0),)
            )

        monkeypatch.setattr(cli, "run_suite", broken)
        code, report = run_json(capsys, ["verify", "--suite", "set-laws"])
        assert code == 2
        assert report["result"]["passed"] is False


class TestDeterminism:
    def test_repeat_runs_identical(self, capsys, files):
        argv = [
            "verify",
            "--suite",
            "additivity",
            "--trials",
            "10",
            "--seed",
            "42",
        ]
        outputs = []
        for _ in range(2):
            code = cli.run(argv)
            assert code == 0
            doc = json.loads(capsys.readouterr().out)
            doc.pop("elapsed_ms")
            outputs.append(cli.dumps(doc))
        assert outputs[0] == outputs[1]


def test_module_entry_point(tmp_path):
    spec = tmp_path / "spec.json"
    spec.write_text(json.dumps(SHANNON))
    algebra = tmp_path / "a.json"
    algebra.write_text(json.dumps(HALVES))
    proc = subprocess.run(
        [
            sys.executable,
            "-m",
            "partent",
            "entropy",
            "--spec",
            str(spec),
            "--algebra",
            str(algebra),
        ],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["result"]["value"] == 1.0
