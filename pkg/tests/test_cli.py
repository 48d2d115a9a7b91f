import json
import subprocess
import sys

import pytest

from paramflow.cli import EXIT_INFEASIBLE, EXIT_INVALID, EXIT_MISMATCH, EXIT_OK, main


@pytest.fixture
def example_args(data_dir):
    return ["--input", str(data_dir / "example_network.json"),
            "--feasible-flow", str(data_dir / "example_flow.json")]


def test_solve_to_file(example_args, tmp_path):
    out = tmp_path / "sol.json"
    assert main(["solve", *example_args, "--output", str(out)]) == EXIT_OK
    doc = json.loads(out.read_text())
    assert doc["breakpoints"] == ["0", "1/4", "3/5", "1"]
    assert [p["V"] for p in doc["value_function"]] == ["-1", "3", "8"]
    assert "verification" not in doc


def test_solve_stdout_with_trace_and_verify(example_args, capsys):
    assert main(["solve", *example_args, "--trace", "--verify", "--samples", "2"]) == EXIT_OK
    doc = json.loads(capsys.readouterr().out)
    assert doc["verification"]["all_match"]
    assert len(doc["intervals"][2]["augmentations"]) == 4


def test_solve_without_given_flow(data_dir, tmp_path):
    out = tmp_path / "sol.json"
    assert main(["solve", "--input", str(data_dir / "example_network.json"), "--output", str(out)]) == EXIT_OK
    assert json.loads(out.read_text())["value_function"][0]["v"] == "6"


def test_csv_output(example_args, tmp_path):
    csv = tmp_path / "v.csv"
    assert main(["solve", *example_args, "--output", str(tmp_path / "s.json"), "--csv", str(csv), "--grid", "11"]) == 0
    rows = csv.read_text().splitlines()
    assert rows[0] == "lambda,value"
    assert rows[1] == "0,6" and rows[-1] == "1,10"
    assert "0.25,5.75" in rows


def test_infeasible_exit(data_dir, tmp_path):
    assert main(["solve", "--input", str(data_dir / "infeasible.json"),
                 "--output", str(tmp_path / "x.json")]) == EXIT_INFEASIBLE


def test_invalid_exits(tmp_path, data_dir):
    bad = tmp_path / "bad.json"
    bad.write_text("{")
    assert main(["solve", "--input", str(bad)]) == EXIT_INVALID
    doc = json.loads((data_dir / "example_network.json").read_text())
    doc["sink"] = doc["source"]
    bad.write_text(json.dumps(doc))
    assert main(["solve", "--input", str(bad)]) == EXIT_INVALID
    flow = json.loads((data_dir / "example_flow.json").read_text())
    flow["flows"][0]["f"] = [0, 0, 0, 0]
    bad.write_text(json.dumps(flow))
    assert main(["solve", "--input", str(data_dir / "example_network.json"),
                 "--feasible-flow", str(bad)]) == EXIT_INVALID


def test_verify_subcommand(example_args, data_dir, tmp_path, capsys):
    sol = tmp_path / "sol.json"
    main(["solve", *example_args, "--output", str(sol)])
    net = str(data_dir / "example_network.json")
    assert main(["verify", "--input", net, "--solution", str(sol)]) == EXIT_OK
    assert "0 mismatches" in capsys.readouterr().out

    doc = json.loads(sol.read_text())
    doc["value_function"][1]["V"] = "4"
    sol.write_text(json.dumps(doc))
    assert main(["verify", "--input", net, "--solution", str(sol)]) == EXIT_MISMATCH


def test_console_script_module(example_args):
    proc = subprocess.run([sys.executable, "-m", "paramflow.cli", "solve", *example_args],
                          capture_output=True, text=True)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["K"] == 3
