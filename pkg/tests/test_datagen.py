import json
import random

import pytest

from afbench.core import SemanticsKind, check_legality
from afbench.datagen import (
    CorruptionConfig,
    DatasetSample,
    GenerationConfig,
    build_dataset,
    build_sample,
    corrupt_dataset,
    corrupt_sample,
    generate_random_af,
    load_dataset,
)
from afbench.errors import (
    AfbenchError,
    ConfigError,
    InsufficientUniqueFrameworksError,
)
from afbench.graphio import GraphFormat, parse_answer, parse_framework
from afbench.semantics import oracle_all_labellings


class TestGenerateRandomAf:
    def test_single_argument_shapes(self):
        rng = random.Random(0)
        for _ in range(20):
            f = generate_random_af(1, 0.5, rng)
            assert f.arguments == {0}
            assert f.attacks in (frozenset(), frozenset({(0, 0)}))

    def test_determinism(self):
        a = generate_random_af(6, 0.15, random.Random("s0"))
        b = generate_random_af(6, 0.15, random.Random("s0"))
        assert a == b

    def test_mean_edge_count(self):
        # E[edges] = p * n^2 = 10 for n=10, p=0.1
        rng = random.Random(1234)
        total = sum(len(generate_random_af(10, 0.1, rng).attacks)
                    for _ in range(10_000))
        assert abs(total / 10_000 - 10.0) < 0.5

    def test_self_attack_factor_zero(self):
        rng = random.Random(2)
        for _ in range(50):
            f = generate_random_af(8, 0.3, rng, self_attack_factor=0.0)
            assert not any(a == b for a, b in f.attacks)


class TestBuildSample:
    def test_grounded_chain(self, chain):
        rng = random.Random(1)
        s = build_sample(chain, "grounded", GraphFormat.DOT, True, rng)
        answer = parse_answer(s.answer)
        assert answer.records[0].in_args == (1, 3)
        assert answer.records[0].out_args == (2,)
        assert s.explanation is not None
        assert s.explanation.endswith(s.answer)
        assert s.meta["task"] == "grounded"
        # problem parses back to the framework
        assert parse_framework(s.problem, GraphFormat.DOT) == chain

    def test_complete_mutual_pair(self, mutual_pair):
        rng = random.Random(2)
        s = build_sample(mutual_pair, "complete", GraphFormat.JSON, True, rng)
        answer = parse_answer(s.answer)
        assert len(answer.records) == 3
        assert s.meta["given_grounded"] is True
        assert "The grounded labelling is:" in s.problem

    def test_end_to_end_variant(self, mutual_pair):
        rng = random.Random(3)
        s = build_sample(mutual_pair, "complete", GraphFormat.JSON, True, rng,
                         given_grounded=False)
        assert "The grounded labelling is:" not in s.problem
        assert s.meta["given_grounded"] is False

    def test_without_explanation(self, chain):
        with_exp = build_sample(chain, "grounded", GraphFormat.DOT, True,
                                random.Random(7))
        without = build_sample(chain, "grounded", GraphFormat.DOT, False,
                               random.Random(7))
        assert without.explanation is None
        assert without.answer == with_exp.answer
        assert "explanation" not in json.loads(without.to_json_line())

    def test_explanation_final_labelling_matches_answer(self):
        rng = random.Random(11)
        for _ in range(20):
            f = generate_random_af(rng.randint(2, 8), 0.2, rng)
            for task in ("grounded", "complete"):
                s = build_sample(f, task, GraphFormat.JSON, True, rng)
                assert s.answer in s.explanation.splitlines()[-1]

    def test_json_round_trip(self, chain):
        s = build_sample(chain, "grounded", GraphFormat.GRAPHML, True,
                         random.Random(5))
        again = DatasetSample.from_json_line(s.to_json_line())
        assert again == s


class TestCorruptSample:
    def _grounded_sample(self, f, seed=0):
        return build_sample(f, "grounded", GraphFormat.DOT, True,
                            random.Random(seed))

    def test_corruption_marks_meta_and_changes_sets(self, chain):
        s = self._grounded_sample(chain)
        c = corrupt_sample(s, random.Random(1))
        assert c.meta["corrupted"] is True
        assert c.problem == s.problem
        # answer still parses to a labelling over the same arguments
        rec = parse_answer(c.answer).records[0]
        assert set(rec.in_args) | set(rec.out_args) | set(rec.undec_args) == \
            chain.arguments

    def test_corrupted_answers_usually_wrong(self):
        rng = random.Random(99)
        changed = 0
        illegal = 0
        total = 0
        while total < 100:
            f = generate_random_af(rng.randint(6, 12), rng.uniform(0.1, 0.25),
                                   rng, self_attack_factor=0.25)
            s = self._grounded_sample(f, seed=total)
            try:
                c = corrupt_sample(s, random.Random(total))
            except AfbenchError:
                continue
            total += 1
            if c.answer != s.answer:
                changed += 1
            rec = parse_answer(c.answer).records[0]
            lab = rec.to_labelling()
            if not check_legality(f, lab).complete:
                illegal += 1
        assert changed >= 90
        assert illegal >= 50  # typical corrupted answer is not even complete

    def test_requires_grounded_task(self, mutual_pair):
        s = build_sample(mutual_pair, "complete", GraphFormat.DOT, True,
                         random.Random(0))
        with pytest.raises(ConfigError):
            corrupt_sample(s, random.Random(0))

    def test_requires_explanation(self, chain):
        s = build_sample(chain, "grounded", GraphFormat.DOT, False,
                         random.Random(0))
        with pytest.raises(ConfigError):
            corrupt_sample(s, random.Random(0))


class TestCorruptDataset:
    def test_exact_count_and_determinism(self):
        rng = random.Random(0)
        samples = []
        for i in range(40):
            f = generate_random_af(7, 0.15, rng, self_attack_factor=0.25)
            s = build_sample(f, "grounded", GraphFormat.JSON, True,
                             random.Random(i), meta={"id": f"s{i}"})
            samples.append(s)
        out1, count1 = corrupt_dataset(samples, CorruptionConfig(0.5, seed=3))
        out2, count2 = corrupt_dataset(samples, CorruptionConfig(0.5, seed=3))
        assert count1 == count2 == 20
        assert [s.to_json_line() for s in out1] == \
            [s.to_json_line() for s in out2]
        assert sum(1 for s in out1 if s.meta["corrupted"]) == 20

    def test_zero_ratio_is_noop(self):
        rng = random.Random(0)
        samples = [build_sample(generate_random_af(6, 0.2, rng), "grounded",
                                GraphFormat.DOT, True, random.Random(i))
                   for i in range(5)]
        out, count = corrupt_dataset(samples, CorruptionConfig(0.0))
        assert count == 0
        assert [s.to_json_line() for s in out] == \
            [s.to_json_line() for s in samples]


class TestGenerationConfig:
    def test_default_scale_arithmetic(self):
        cfg = GenerationConfig()
        n_values = cfg.n_max - cfg.n_min + 1
        assert n_values == 20
        assert cfg.per_n_train * n_values == 60_000
        assert cfg.per_n_test * n_values == 2_000

    def test_validation(self):
        with pytest.raises(ConfigError):
            GenerationConfig(n_min=0).validate()
        with pytest.raises(ConfigError):
            GenerationConfig(attack_probability_range=(0.5, 0.2)).validate()
        with pytest.raises(ConfigError):
            GenerationConfig(task_mix={"grounded": 0.7}).validate()

    def test_round_trip_dict(self):
        cfg = GenerationConfig(n_min=3, n_max=4, per_n_train=2, per_n_test=1)
        assert GenerationConfig.from_dict(cfg.to_dict()) == cfg


class TestBuildDataset:
    def test_counts_and_determinism(self, tmp_path):
        cfg = GenerationConfig(n_min=3, n_max=5, per_n_train=6, per_n_test=2,
                               master_seed=7)
        m1 = build_dataset(cfg, out_dir=tmp_path / "a",
                           compute_statistics=False)
        m2 = build_dataset(cfg, out_dir=tmp_path / "b",
                           compute_statistics=False)
        assert m1["counts"] == {"train": 18, "test": 6, "corrupted": 0}
        for name in ("train.jsonl", "test.jsonl", "manifest.json"):
            assert (tmp_path / "a" / name).read_bytes() == \
                (tmp_path / "b" / name).read_bytes()

    def test_split_frameworks_disjoint_and_deduped(self, tmp_path):
        cfg = GenerationConfig(n_min=4, n_max=5, per_n_train=10, per_n_test=5,
                               master_seed=1)
        build_dataset(cfg, out_dir=tmp_path, compute_statistics=False)
        train = load_dataset(tmp_path / "train.jsonl")
        test = load_dataset(tmp_path / "test.jsonl")

        def framework_key(s):
            text = s.problem.split("\n\nThe grounded labelling is:")[0]
            f = parse_framework(text, GraphFormat(s.meta["format"]))
            return (f.arguments, f.attacks)

        train_keys = {framework_key(s) for s in train}
        test_keys = {framework_key(s) for s in test}
        assert len(train_keys) == len(train)
        assert len(test_keys) == len(test)
        assert not train_keys & test_keys

    def test_all_answers_correct_against_oracle(self, tmp_path):
        cfg = GenerationConfig(n_min=3, n_max=6, per_n_train=4, per_n_test=2,
                               master_seed=5)
        build_dataset(cfg, out_dir=tmp_path, compute_statistics=False)
        for name in ("train.jsonl", "test.jsonl"):
            for s in load_dataset(tmp_path / name):
                text = s.problem.split("\n\nThe grounded labelling is:")[0]
                f = parse_framework(text, GraphFormat(s.meta["format"]))
                oracle = oracle_all_labellings(f)
                kind = (SemanticsKind.GROUNDED if s.task == "grounded"
                        else SemanticsKind.COMPLETE)
                truth = {frozenset(l.in_set) for l in oracle[kind]}
                answer = parse_answer(s.answer)
                assert {frozenset(r.in_args) for r in answer.records} == truth

    def test_manifest_statistics(self, tmp_path):
        cfg = GenerationConfig(n_min=3, n_max=5, per_n_train=2, per_n_test=3,
                               master_seed=2)
        manifest = build_dataset(cfg, out_dir=tmp_path)
        stats = manifest["statistics"]["test_split"]
        assert stats["grounded"]["extensions_per_af"] == 1.0
        assert stats["complete"]["extensions_per_af"] >= 1.0

    def test_dedup_exhaustion(self):
        cfg = GenerationConfig(n_min=1, n_max=1, per_n_train=10, per_n_test=0,
                               master_seed=0)
        with pytest.raises(InsufficientUniqueFrameworksError):
            build_dataset(cfg, compute_statistics=False)

    def test_corruption_count(self, tmp_path):
        cfg = GenerationConfig(n_min=5, n_max=6, per_n_train=10, per_n_test=0,
                               master_seed=3,
                               task_mix={"grounded": 1.0, "complete": 0.0})
        manifest = build_dataset(cfg, CorruptionConfig(0.2, seed=1),
                                 out_dir=tmp_path, compute_statistics=False)
        assert manifest["counts"]["corrupted"] == 4
        train = load_dataset(tmp_path / "train.jsonl")
        assert sum(1 for s in train if s.meta["corrupted"]) == 4
