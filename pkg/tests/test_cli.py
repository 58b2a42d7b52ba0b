import json

import pytest

from afbench.cli import main
from afbench.datagen import load_dataset
from afbench.graphio import GraphFormat, serialize_framework
from afbench.prompts import render_complete_prompt, render_grounded_prompt


def _write_framework(tmp_path, f, fmt=GraphFormat.JSON, name=None):
    suffix = {"dot": ".dot", "graphml": ".graphml", "json": ".json"}[fmt.value]
    path = tmp_path / ((name or "framework") + suffix)
    path.write_text(serialize_framework(f, fmt), encoding="utf-8")
    return path


class TestSolve:
    def test_grounded_json(self, tmp_path, chain, capsys):
        path = _write_framework(tmp_path, chain)
        assert main(["solve", str(path)]) == 0
        assert capsys.readouterr().out.strip() == \
            '{"IN":[1,3],"OUT":[2],"UNDEC":[]}'

    def test_complete_semantics(self, tmp_path, mutual_pair, capsys):
        path = _write_framework(tmp_path, mutual_pair)
        assert main(["solve", str(path), "--semantics", "com"]) == 0
        records = json.loads(capsys.readouterr().out)
        assert [r["IN"] for r in records] == [[], [1], [2]]

    def test_stable_can_be_empty(self, tmp_path, three_cycle, capsys):
        path = _write_framework(tmp_path, three_cycle)
        assert main(["solve", str(path), "--semantics", "stb"]) == 0
        assert capsys.readouterr().out.strip() == "[]"

    def test_preferred_table_framework(self, tmp_path, table_framework,
                                       capsys):
        path = _write_framework(tmp_path, table_framework)
        assert main(["solve", str(path), "--semantics", "prf"]) == 0
        records = json.loads(capsys.readouterr().out)
        assert [r["IN"] for r in records] == [[1, 3, 6, 7], [1, 5, 6, 7, 8]]

    def test_format_flag_overrides_suffix(self, tmp_path, chain, capsys):
        path = tmp_path / "weird.txt"
        path.write_text(serialize_framework(chain, GraphFormat.DOT))
        assert main(["solve", str(path), "--format", "dot"]) == 0
        assert '"IN":[1,3]' in capsys.readouterr().out

    def test_explain_prints_narration(self, tmp_path, chain, capsys):
        path = _write_framework(tmp_path, chain, GraphFormat.DOT)
        assert main(["solve", str(path), "--explain"]) == 0
        out = capsys.readouterr().out
        assert "Final labelling:" in out
        assert out.strip().endswith('{"IN":[1,3],"OUT":[2],"UNDEC":[]}')

    def test_explain_subcommand(self, tmp_path, chain, capsys):
        path = _write_framework(tmp_path, chain)
        assert main(["explain", str(path)]) == 0
        assert "Final labelling:" in capsys.readouterr().out

    def test_explain_deterministic_per_seed(self, tmp_path, chain, capsys):
        path = _write_framework(tmp_path, chain)
        main(["explain", str(path), "--seed", "5"])
        first = capsys.readouterr().out
        main(["explain", str(path), "--seed", "5"])
        assert capsys.readouterr().out == first


class TestExitCodes:
    def test_missing_file_is_io_error(self, capsys):
        assert main(["solve", "/nonexistent/f.json"]) == 2
        assert "error:" in capsys.readouterr().err

    def test_bad_syntax_is_input_error(self, tmp_path, capsys):
        path = tmp_path / "bad.dot"
        path.write_text("digraph { 1 -> }")
        assert main(["solve", str(path)]) == 1

    def test_unknown_suffix_without_flag(self, tmp_path, capsys):
        path = tmp_path / "framework.txt"
        path.write_text("{}")
        assert main(["solve", str(path)]) == 1

    def test_dedup_exhaustion_is_capacity_error(self, tmp_path, capsys):
        code = main(["generate", "--out", str(tmp_path / "d"),
                     "--n-min", "1", "--n-max", "1",
                     "--per-n-train", "10", "--per-n-test", "0"])
        assert code == 3

    def test_bad_config_file(self, tmp_path, capsys):
        cfg = tmp_path / "cfg.json"
        cfg.write_text('{"no_such_field": 1}')
        assert main(["generate", "--out", str(tmp_path / "d"),
                     "--config", str(cfg)]) == 1


class TestGenerate:
    def test_generate_writes_dataset(self, tmp_path, capsys):
        out = tmp_path / "data"
        code = main(["generate", "--out", str(out), "--seed", "3",
                     "--n-min", "4", "--n-max", "5",
                     "--per-n-train", "5", "--per-n-test", "2", "--no-stats"])
        assert code == 0
        assert "wrote 10 train and 4 test records" in capsys.readouterr().out
        assert len(load_dataset(out / "train.jsonl")) == 10
        manifest = json.loads((out / "manifest.json").read_text())
        assert manifest["counts"] == {"train": 10, "test": 4, "corrupted": 0}

    def test_generate_deterministic(self, tmp_path, capsys):
        args = ["--seed", "9", "--n-min", "4", "--n-max", "5",
                "--per-n-train", "4", "--per-n-test", "2", "--no-stats"]
        main(["generate", "--out", str(tmp_path / "a")] + args)
        main(["generate", "--out", str(tmp_path / "b")] + args)
        for name in ("train.jsonl", "test.jsonl", "manifest.json"):
            assert (tmp_path / "a" / name).read_bytes() == \
                (tmp_path / "b" / name).read_bytes()

    def test_generate_with_noise(self, tmp_path, capsys):
        out = tmp_path / "noisy"
        code = main(["generate", "--out", str(out), "--seed", "1",
                     "--n-min", "5", "--n-max", "6",
                     "--per-n-train", "10", "--per-n-test", "0",
                     "--noise", "0.2", "--no-stats"])
        assert code == 0
        train = load_dataset(out / "train.jsonl")
        assert sum(1 for s in train if s.meta["corrupted"]) == 4

    def test_end_to_end_flag(self, tmp_path, capsys):
        out = tmp_path / "e2e"
        main(["generate", "--out", str(out), "--seed", "2",
              "--n-min", "4", "--n-max", "4",
              "--per-n-train", "8", "--per-n-test", "0", "--no-stats",
              "--end-to-end"])
        for s in load_dataset(out / "train.jsonl"):
            assert "The grounded labelling is:" not in s.problem
            assert s.meta["given_grounded"] is False


class TestCorrupt:
    def test_corrupt_subcommand(self, tmp_path, capsys):
        clean = tmp_path / "clean"
        main(["generate", "--out", str(clean), "--seed", "4",
              "--n-min", "5", "--n-max", "6",
              "--per-n-train", "10", "--per-n-test", "0", "--no-stats"])
        out = tmp_path / "corrupted.jsonl"
        code = main(["corrupt", "--in", str(clean / "train.jsonl"),
                     "--out", str(out), "--noise", "0.3", "--seed", "2"])
        assert code == 0
        samples = load_dataset(out)
        assert len(samples) == 20
        assert sum(1 for s in samples if s.meta["corrupted"]) == 6


class TestEvaluate:
    def test_evaluate_with_report(self, tmp_path, capsys):
        data = tmp_path / "data"
        main(["generate", "--out", str(data), "--seed", "6",
              "--n-min", "4", "--n-max", "5",
              "--per-n-train", "0", "--per-n-test", "4", "--no-stats"])
        samples = load_dataset(data / "test.jsonl")
        preds = tmp_path / "preds.jsonl"
        with open(preds, "w", encoding="utf-8") as fh:
            for s in samples:
                fh.write(json.dumps({"id": s.meta["id"],
                                     "candidates": [s.answer]}) + "\n")
        out = tmp_path / "report"
        code = main(["evaluate", "--dataset", str(data / "test.jsonl"),
                     "--predictions", str(preds), "--k", "1",
                     "--out", str(out)])
        assert code == 0
        stdout = capsys.readouterr().out
        assert "semantics" in stdout and "ACC" in stdout
        for name in ("report.json", "report.csv", "report.png"):
            assert (out / name).exists()
        report = json.loads((out / "report.json").read_text())
        for scores in report["per_semantics"].values():
            assert scores["ACC"] == 1.0


class TestEmitPrompts:
    def test_both_prompts_written(self, tmp_path, chain, capsys):
        path = _write_framework(tmp_path, chain)
        out = tmp_path / "prompts"
        assert main(["emit-prompts", str(path), "--out", str(out)]) == 0
        grounded = (out / "prompt_grounded.txt").read_text()
        complete = (out / "prompt_complete.txt").read_text()
        assert grounded == render_grounded_prompt(chain, GraphFormat.JSON)
        assert complete == render_complete_prompt(chain, GraphFormat.JSON)

    def test_single_task(self, tmp_path, chain, capsys):
        path = _write_framework(tmp_path, chain)
        out = tmp_path / "prompts"
        assert main(["emit-prompts", str(path), "--task", "grounded",
                     "--out", str(out)]) == 0
        assert (out / "prompt_grounded.txt").exists()
        assert not (out / "prompt_complete.txt").exists()


class TestPromptTemplates:
    def test_placeholders_substituted(self, chain):
        for fmt in GraphFormat:
            for text in (render_grounded_prompt(chain, fmt),
                         render_complete_prompt(chain, fmt)):
                assert "{PROGRAM}" not in text
                assert "{EXAMPLE}" not in text
                assert "{GRD_LABELLING}" not in text
                assert fmt.value in text

    def test_grounded_labelling_embedded(self, chain):
        text = render_complete_prompt(chain, GraphFormat.JSON)
        assert '{"IN":[1,3],"OUT":[2],"UNDEC":[]}' in text

    def test_framework_embedded(self, chain):
        for fmt in GraphFormat:
            assert serialize_framework(chain, fmt) in \
                render_grounded_prompt(chain, fmt)
