"""Command-line interface: sweeps, puzzle commands, games, graphs."""

import json
import subprocess
import sys
from hashlib import sha256


import pytest

from quorum.cli import main

ROT180_TASK = {
    "train": [
        {"input": [[1, 2], [3, 4]], "output": [[4, 3], [2, 1]]},
        {"input": [[5, 0, 1]], "output": [[1, 0, 5]]},
    ],
    "test": [{"input": [[1, 1], [0, 2]], "output": [[2, 0], [1, 1]]}],
}

ASYMMETRIC_TASK = {
    "train": [
        {"input": [[1, 2, 3], [4, 5, 6]], "output": [[1, 2, 3], [4, 5, 6]]},
        {"input": [[7, 8], [0, 1]], "output": [[7, 8], [0, 1]]},
    ],
    "test": [{"input": [[2, 2, 2], [3, 3, 3]]}],
}


@pytest.fixture()
def eval_setup(tmp_path):
    tasks = [
        {"id": "t1", "category": "demo", "prompt": "first?", "answer_kind": "choice", "reference": "A"},
        {"id": "t2", "category": "demo", "prompt": "second?", "answer_kind": "choice", "reference": "B"},
    ]
    task_file = tmp_path / "tasks.json"
    task_file.write_text(json.dumps(tasks))
    config = {
        "solvers": [
            {"id": "right", "kind": "scripted",
             "params": {"table": {"t1": [["A", 1.0]], "t2": [["B", 1.0]]}}},
            {"id": "half", "kind": "scripted",
             "params": {"table": {"*": [["A", 0.5], ["B", 0.5]]}, "rng_seed": 2}},
        ],
        "methods": [{"method_id": "zero_shot"}, {"method_id": "self_consistency", "n": 3}],
        "tasks": str(task_file),
        "seed": 7,
    }
    config_file = tmp_path / "config.json"
    config_file.write_text(json.dumps(config))
    return config_file, tmp_path


class TestEval:
    def test_sweep_writes_artifacts(self, eval_setup, capsys):
        config_file, tmp_path = eval_setup
        out = tmp_path / "runs"
        assert main(["eval", "--config", str(config_file), "--out", str(out)]) == 0
        stdout = capsys.readouterr().out
        assert "task" in stdout and "zero_shot@right" in stdout
        run_dirs = [p for p in out.iterdir() if p.name.startswith("run-")]
        assert len(run_dirs) == 1
        run_dir = run_dirs[0]
        assert (run_dir / "record.jsonl").exists()
        assert (run_dir / "config.json").exists()
        assert (run_dir / "matrix.txt").exists()
        curve = (run_dir / "coverage.csv").read_text()
        assert curve.splitlines()[0] == "solver,cum_solved,cum_fraction"
        cells = [json.loads(l) for l in (run_dir / "record.jsonl").read_text().splitlines()]
        assert len(cells) == 2 * 4  # 2 tasks x (2 methods x 2 solvers)

    def test_rerun_is_byte_identical(self, eval_setup):
        config_file, tmp_path = eval_setup
        digests = []
        for attempt in ("one", "two"):
            out = tmp_path / attempt
            assert main(["eval", "--config", str(config_file), "--out", str(out)]) == 0
            [run_dir] = [p for p in out.iterdir() if p.name.startswith("run-")]
            record = (run_dir / "record.jsonl").read_bytes()
            config = (run_dir / "config.json").read_bytes()
            digests.append((sha256(record).hexdigest(), sha256(config).hexdigest(), run_dir.name))
        assert digests[0] == digests[1]

    def test_parallel_matches_serial(self, eval_setup):
        config_file, tmp_path = eval_setup
        records = []
        for label, flags in (("serial", []), ("parallel", ["--parallel", "4"])):
            out = tmp_path / label
            assert main(["eval", "--config", str(config_file), "--out", str(out), *flags]) == 0
            [run_dir] = [p for p in out.iterdir() if p.name.startswith("run-")]
            records.append((run_dir / "record.jsonl").read_bytes())
        assert records[0] == records[1]

    def test_missing_config_is_exit_2(self, tmp_path, capsys):
        assert main(["eval", "--config", str(tmp_path / "nope.json")]) == 2

    def test_repeated_method_id_gets_distinct_columns(self, tmp_path, capsys):
        tasks = [{"id": "t", "category": "", "prompt": "?", "answer_kind": "choice", "reference": "A"}]
        (tmp_path / "tasks.json").write_text(json.dumps(tasks))
        config = {
            "solvers": [{"id": "s", "kind": "scripted",
                         "params": {"table": {"*": [["A", 0.5], ["B", 0.5]]}}}],
            "methods": [{"method_id": "best_of_n", "n": 2}, {"method_id": "best_of_n", "n": 8}],
            "tasks": str(tmp_path / "tasks.json"),
            "seed": 1,
        }
        (tmp_path / "c.json").write_text(json.dumps(config))
        assert main(["eval", "--config", str(tmp_path / "c.json"), "--out", str(tmp_path / "r")]) == 0
        out = capsys.readouterr().out
        assert "best_of_n#1@s" in out and "best_of_n#2@s" in out


class TestArcCli:
    def test_verify_pass(self, tmp_path, capsys):
        task_file = tmp_path / "rot.json"
        task_file.write_text(json.dumps(ROT180_TASK))
        code = main(["arc", "verify", "--task", str(task_file), "--program", "rotate180"])
        assert code == 0
        assert "pass" in capsys.readouterr().out

    def test_verify_mismatch_exit_1_with_diff(self, tmp_path, capsys):
        task_file = tmp_path / "rot.json"
        task_file.write_text(json.dumps(ROT180_TASK))
        code = main(["arc", "verify", "--task", str(task_file), "--program", "identity"])
        assert code == 1
        out = capsys.readouterr().out
        assert "fail" in out and "differing cells" in out

    def test_verify_syntax_error_exit_2(self, tmp_path, capsys):
        task_file = tmp_path / "rot.json"
        task_file.write_text(json.dumps(ROT180_TASK))
        assert main(["arc", "verify", "--task", str(task_file), "--program", "rotate45"]) == 2

    def test_predict_prints_grid(self, tmp_path, capsys):
        task_file = tmp_path / "rot.json"
        task_file.write_text(json.dumps(ROT180_TASK))
        code = main(["arc", "predict", "--task", str(task_file), "--program", "rotate180"])
        assert code == 0
        assert "20\n11" in capsys.readouterr().out

    def test_augment_writes_orbit(self, tmp_path, capsys):
        task_file = tmp_path / "asym.json"
        task_file.write_text(json.dumps(ASYMMETRIC_TASK))
        out_dir = tmp_path / "aug"
        code = main(["arc", "augment", "--task", str(task_file), "--out", str(out_dir)])
        assert code == 0
        files = sorted(out_dir.glob("*.json"))
        assert len(files) == 8
        for f in files:
            payload = json.loads(f.read_text())
            assert payload["train"]

    def test_loo_writes_variants(self, tmp_path):
        task_file = tmp_path / "rot.json"
        task_file.write_text(json.dumps(ROT180_TASK))
        out_dir = tmp_path / "loo"
        assert main(["arc", "loo", "--task", str(task_file), "--out", str(out_dir)]) == 0
        files = sorted(out_dir.glob("*.json"))
        assert len(files) == 2
        for f in files:
            payload = json.loads(f.read_text())
            assert len(payload["train"]) == 1
            assert payload["test"][0].get("output") is not None

    def test_external_program(self, tmp_path):
        task_file = tmp_path / "id.json"
        task_file.write_text(json.dumps({
            "train": [{"input": [[1, 2]], "output": [[1, 2]]}],
            "test": [],
        }))
        script = tmp_path / "echo.py"
        script.write_text("import sys\nsys.stdout.write(sys.stdin.read())\n")
        code = main(["arc", "verify", "--task", str(task_file),
                     "--external", sys.executable, str(script)])
        assert code == 0


class TestGameCli:
    @pytest.mark.parametrize(
        "argv,expected",
        [
            (["game", "coinflip", "2", "3"], "solvable: true"),
            (["game", "coinflip", "2", "2"], "solvable: false"),
            (["game", "sequence", "4"], "L = 7"),
            (["game", "ninja", "6"], "k = 3"),
            (["game", "turbo", "4", "3"], "n = 3"),
        ],
    )
    def test_published_answers(self, argv, expected, capsys):
        assert main(argv) == 0
        assert expected in capsys.readouterr().out

    def test_machine_readable_record(self, tmp_path, capsys):
        out = tmp_path / "seq.json"
        assert main(["game", "sequence", "4", "--out", str(out)]) == 0
        record = json.loads(out.read_text())
        assert record["value"] == 7
        assert len(record["witness"]) == 7

    def test_simulation_attached(self, tmp_path, capsys):
        out = tmp_path / "coin.json"
        assert main(["--seed", "3", "game", "coinflip", "2", "3",
                     "--simulate", "4", "--out", str(out)]) == 0
        record = json.loads(out.read_text())
        assert len(record["simulation"]["total_rewards"]) == 4

    def test_intractable_is_exit_2(self, capsys):
        assert main(["game", "coinflip", "6", "6"]) == 2

    def test_bad_arity_is_exit_2(self, capsys):
        assert main(["game", "coinflip", "2"]) == 2


def _solver_config(tmp_path, program_text="rotate180"):
    config = {"solvers": [{"id": "synthesizer", "kind": "scripted",
                           "params": {"table": {"*": [[program_text, 1.0]]}}}]}
    path = tmp_path / "solvers.json"
    path.write_text(json.dumps(config))
    return path


class TestGraphCli:
    def _template_path(self, tmp_path):
        from quorum.fixtures import graph_template

        path = tmp_path / "pipeline.json"
        graph_template("puzzle_pipeline").save(path)
        return path

    def test_run_template(self, tmp_path, capsys):
        graph_file = self._template_path(tmp_path)
        task_file = tmp_path / "rot.json"
        task_file.write_text(json.dumps(ROT180_TASK))
        code = main(["graph", "run", "--graph", str(graph_file), "--task", str(task_file),
                     "--config", str(_solver_config(tmp_path))])
        assert code == 0
        payload = json.loads(capsys.readouterr().out)
        assert payload["outputs"]["passed"] is True
        assert len(payload["trace"]["entries"]) == 3

    def test_bad_graph_file_exit_2(self, tmp_path, capsys):
        bad = tmp_path / "bad.json"
        bad.write_text("{not json")
        assert main(["graph", "run", "--graph", str(bad)]) == 2
        assert "configuration error" in capsys.readouterr().err

    def test_mutate_writes_new_graph(self, tmp_path, capsys):
        graph_file = self._template_path(tmp_path)
        out_file = tmp_path / "mutated.json"
        code = main(["graph", "mutate", "--graph", str(graph_file),
                     "--mutation", 'edit_param synthesize {"key": "solver_id", "value": "other"}',
                     "--out", str(out_file)])
        assert code == 0
        payload = json.loads(out_file.read_text())
        assert payload["nodes"]["synthesize"]["params"]["solver_id"] == "other"

    def test_mutate_rejecting_invalid_exit_2(self, tmp_path, capsys):
        graph_file = self._template_path(tmp_path)
        code = main(["graph", "mutate", "--graph", str(graph_file),
                     "--mutation", "remove_node prompt"])
        assert code == 2

    def test_abtest_writes_matrix(self, tmp_path, capsys):
        from quorum.graph import Mutation, PipelineGraph, mutate as apply_mutation

        tasks = [{"id": f"t{i}", "prompt": "?", "answer_kind": "text", "reference": "yes"}
                 for i in range(6)]
        task_file = tmp_path / "tasks.json"
        task_file.write_text(json.dumps(tasks))
        base = PipelineGraph.from_json({
            "name": "small",
            "nodes": {"m": {"op": "run_method",
                            "params": {"method_id": "best_of_n", "n": 1, "solver_id": "s"}}},
            "edges": [],
            "inputs": {"task": [["m", "task"]]},
            "outputs": {"passed": ["m", "passed"]},
        })
        big = apply_mutation(base, Mutation("edit_param", {"node": "m", "key": "n", "value": 5}))
        g1, g2 = tmp_path / "g1.json", tmp_path / "g2.json"
        base.save(g1)
        big.save(g2)
        solver_config = tmp_path / "sc.json"
        solver_config.write_text(json.dumps({
            "solvers": [{"id": "s", "kind": "scripted",
                         "params": {"table": {"*": [["yes", 0.5], ["no", 0.5]]}}}]
        }))
        out = tmp_path / "matrix.json"
        code = main(["graph", "abtest", "--graphs", str(g1), str(g2),
                     "--tasks", str(task_file), "--config", str(solver_config),
                     "--out", str(out)])
        assert code == 0
        payload = json.loads(out.read_text())
        assert payload["solver_ids"] == ["small", "small#1"] or len(payload["solver_ids"]) == 2


def test_console_script_installed():
    result = subprocess.run(["quorum", "game", "ninja", "6"], capture_output=True, text=True)
    assert result.returncode == 0
    assert "k = 3" in result.stdout
