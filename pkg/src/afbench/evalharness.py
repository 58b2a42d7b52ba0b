"""Scoring of externally produced answers against dataset ground truth.

Metrics per semantics: exact-match extension accuracy (first candidate),
Pass@k over all candidates, Matthews correlation over credulous/skeptical
argument acceptance, the conflict-free proportion of generated extensions,
and the rate of frameworks with at least one valid generated extension.
Unparseable or missing answers always count as wrong, never as skipped.

The report path writes a JSON report, a CSV table, and a matplotlib bar
chart next to each other.
"""

from __future__ import annotations

import csv
import json
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple

from .core import Framework, is_conflict_free
from .datagen import DatasetSample, load_dataset
from .errors import (
    AfbenchError,
    AlignmentError,
    ConfigError,
    IdMismatchError,
    RaggedCandidatesError,
)
from .graphio import GraphFormat, parse_answer, parse_framework

ExtensionSet = FrozenSet[FrozenSet[int]]


@dataclass
class Problem:
    """One scored problem: framework, semantics task, ground truth, candidates."""

    id: str
    framework: Framework
    task: str
    truth: ExtensionSet
    candidates: List[str]


@dataclass
class AcceptanceStatus:
    """Per-argument credulous/skeptical acceptance flags."""

    credulous: Dict[int, bool]
    skeptical: Dict[int, bool]


@dataclass
class SemanticsScores:
    acc: float
    pass_at_k: float
    mcc_credulous: float
    mcc_skeptical: float
    cfp: float
    alse: float
    n_problems: int
    parse_failures: int

    def to_dict(self) -> dict:
        return {
            "ACC": self.acc,
            "Pass@k": self.pass_at_k,
            "MCC_c": self.mcc_credulous,
            "MCC_s": self.mcc_skeptical,
            "CFP": self.cfp,
            "ALSE": self.alse,
            "N": self.n_problems,
            "parse_failures": self.parse_failures,
        }


@dataclass
class EvaluationReport:
    k: int
    per_semantics: Dict[str, SemanticsScores]
    config: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "k": self.k,
            "config": self.config,
            "per_semantics": {sem: s.to_dict()
                              for sem, s in sorted(self.per_semantics.items())},
        }


# ---------------------------------------------------------------------------
# candidate parsing


def _extensions_from_text(text: str) -> Optional[ExtensionSet]:
    """IN-sets of the answer object embedded in ``text``, or None when no
    valid answer object can be extracted."""
    try:
        answer = parse_answer(text)
    except AfbenchError:
        return None
    return frozenset(frozenset(rec.in_args) for rec in answer.records)


# ---------------------------------------------------------------------------
# metric primitives


def extension_accuracy(problems: Sequence[Problem]) -> float:
    """Exact set-of-sets match of the first candidate against the truth."""
    if not problems:
        return 0.0
    hits = 0
    for p in problems:
        if not p.candidates:
            continue
        predicted = _extensions_from_text(p.candidates[0])
        if predicted is not None and predicted == p.truth:
            hits += 1
    return hits / len(problems)


def pass_at_k(problems: Sequence[Problem], k: int) -> float:
    """Proportion of problems where at least one of the k candidates matches."""
    if not problems:
        return 0.0
    sizes = {len(p.candidates) for p in problems if p.candidates}
    if len(sizes) > 1 or (sizes and sizes != {k}):
        raise RaggedCandidatesError(
            f"expected {k} candidates per problem, found counts {sorted(sizes)}")
    hits = 0
    for p in problems:
        if any(_extensions_from_text(c) == p.truth for c in p.candidates):
            hits += 1
    return hits / len(problems)


def acceptance_status(extensions: Iterable[FrozenSet[int]],
                      arguments: Iterable[int]) -> AcceptanceStatus:
    """Credulous membership in some extension, skeptical in all.

    With zero extensions, skeptical acceptance is vacuously true; callers
    scoring empty predictions substitute all-false instead.
    """
    exts = list(extensions)
    args = set(arguments)
    credulous = {a: any(a in e for e in exts) for a in args}
    skeptical = {a: all(a in e for e in exts) for a in args}
    return AcceptanceStatus(credulous, skeptical)


def mcc(pairs: Sequence[Tuple[bool, bool]]) -> float:
    """Binary Matthews correlation over (predicted, true) pairs; 0 when the
    denominator vanishes."""
    tp = sum(1 for p, t in pairs if p and t)
    tn = sum(1 for p, t in pairs if not p and not t)
    fp = sum(1 for p, t in pairs if p and not t)
    fn = sum(1 for p, t in pairs if not p and t)
    denom = math.sqrt((tp + fp) * (tp + fn) * (tn + fp) * (tn + fn))
    if denom == 0:
        return 0.0
    return (tp * tn - fp * fn) / denom


def mcc_scores(pred_status: Sequence[AcceptanceStatus],
               true_status: Sequence[AcceptanceStatus]) -> Tuple[float, float]:
    """Pooled credulous and skeptical MCC over all (problem, argument) pairs."""
    if len(pred_status) != len(true_status):
        raise AlignmentError("prediction and truth status lists differ in length")
    cred_pairs: List[Tuple[bool, bool]] = []
    skep_pairs: List[Tuple[bool, bool]] = []
    for pred, true in zip(pred_status, true_status):
        if set(pred.credulous) != set(true.credulous):
            raise AlignmentError("statuses cover different argument sets")
        for a in true.credulous:
            cred_pairs.append((pred.credulous[a], true.credulous[a]))
            skep_pairs.append((pred.skeptical[a], true.skeptical[a]))
    return mcc(cred_pairs), mcc(skep_pairs)


def conflict_metrics(problems: Sequence[Problem]) -> Tuple[float, float]:
    """CFP: mean proportion of generated extensions that are conflict-free
    (0 contribution when nothing was generated). ALSE: proportion of
    frameworks where some generated extension is a true one.

    Extensions are pooled across all k candidates of a problem.
    """
    if not problems:
        return 0.0, 0.0
    cfp_total = 0.0
    alse_total = 0
    for p in problems:
        pooled: set = set()
        for text in p.candidates:
            exts = _extensions_from_text(text)
            if exts is not None:
                pooled.update(exts)
        if pooled:
            cfp_total += sum(
                1 for e in pooled if is_conflict_free(p.framework, e)
            ) / len(pooled)
            if any(e in p.truth for e in pooled):
                alse_total += 1
    return cfp_total / len(problems), alse_total / len(problems)


def _problem_statuses(problems: Sequence[Problem]
                      ) -> Tuple[List[AcceptanceStatus], List[AcceptanceStatus]]:
    preds, trues = [], []
    for p in problems:
        args = p.framework.arguments
        trues.append(acceptance_status(p.truth, args))
        predicted = (_extensions_from_text(p.candidates[0])
                     if p.candidates else None)
        if predicted:
            preds.append(acceptance_status(predicted, args))
        else:
            # nothing usable predicted: all-false, never vacuous-true
            preds.append(AcceptanceStatus({a: False for a in args},
                                          {a: False for a in args}))
    return preds, trues


def _count_parse_failures(problems: Sequence[Problem]) -> int:
    failures = 0
    for p in problems:
        if not p.candidates or _extensions_from_text(p.candidates[0]) is None:
            failures += 1
    return failures


def score_problems(problems: Sequence[Problem], k: int) -> SemanticsScores:
    acc = extension_accuracy(problems)
    passk = pass_at_k(problems, k)
    preds, trues = _problem_statuses(problems)
    mcc_c, mcc_s = mcc_scores(preds, trues)
    cfp, alse = conflict_metrics(problems)
    return SemanticsScores(acc, passk, mcc_c, mcc_s, cfp, alse,
                           len(problems), _count_parse_failures(problems))


# ---------------------------------------------------------------------------
# run-level evaluation


def _truth_from_sample(s: DatasetSample) -> ExtensionSet:
    answer = parse_answer(s.answer)
    return frozenset(frozenset(rec.in_args) for rec in answer.records)


def _framework_from_sample(s: DatasetSample) -> Framework:
    text = s.problem
    marker = "\n\nThe grounded labelling is:"
    if marker in text:
        text = text.split(marker)[0]
    return parse_framework(text, GraphFormat(s.meta["format"]))


def load_predictions(path: Path) -> Dict[str, List[str]]:
    """Prediction file: one JSON record per line with fields id, candidates."""
    predictions: Dict[str, List[str]] = {}
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.strip()
            if not line:
                continue
            record = json.loads(line)
            if "id" not in record or "candidates" not in record:
                raise ConfigError(
                    f"prediction line {lineno} lacks id/candidates fields")
            predictions[record["id"]] = [str(c) for c in record["candidates"]]
    if not predictions:
        raise ConfigError(f"prediction file {path} is empty")
    return predictions


def evaluate_run(dataset_path: Path, predictions_path: Path, k: int,
                 out_dir: Optional[Path] = None) -> EvaluationReport:
    """Score a prediction file against a dataset file and render the report.

    Missing predictions are reported and scored as wrong; prediction ids
    absent from the dataset are fatal.
    """
    samples = load_dataset(Path(dataset_path))
    predictions = load_predictions(Path(predictions_path))
    sample_ids = {s.meta["id"] for s in samples}
    unknown = set(predictions) - sample_ids
    if unknown:
        raise IdMismatchError(
            f"prediction ids not in dataset: {sorted(unknown)[:5]}")

    missing = 0
    by_semantics: Dict[str, List[Problem]] = {}
    for s in samples:
        candidates = predictions.get(s.meta["id"])
        if candidates is None:
            missing += 1
            candidates = []
        problem = Problem(
            id=s.meta["id"],
            framework=_framework_from_sample(s),
            task=s.task,
            truth=_truth_from_sample(s),
            candidates=candidates,
        )
        by_semantics.setdefault(s.task, []).append(problem)

    report = EvaluationReport(
        k=k,
        per_semantics={sem: score_problems(ps, k)
                       for sem, ps in by_semantics.items()},
        config={
            "dataset": str(dataset_path),
            "predictions": str(predictions_path),
            "missing_predictions": missing,
        },
    )
    if out_dir is not None:
        write_report(report, Path(out_dir))
    return report


# ---------------------------------------------------------------------------
# rendering

_COLUMNS = ["ACC", "Pass@k", "MCC_s", "MCC_c", "CFP", "ALSE", "N",
            "parse_failures"]


def render_table(report: EvaluationReport) -> str:
    header = f"{'semantics':<12}" + "".join(f"{c:>16}" for c in _COLUMNS)
    lines = [header, "-" * len(header)]
    for sem, scores in sorted(report.per_semantics.items()):
        row = scores.to_dict()
        cells = "".join(
            f"{row[c]:>16}" if isinstance(row[c], int)
            else f"{row[c]:>16.4f}" for c in _COLUMNS)
        lines.append(f"{sem:<12}" + cells)
    return "\n".join(lines)


def write_report(report: EvaluationReport, out_dir: Path) -> None:
    """Write report.json, report.csv, and report.png into ``out_dir``."""
    out_dir.mkdir(parents=True, exist_ok=True)
    with open(out_dir / "report.json", "w", encoding="utf-8") as fh:
        json.dump(report.to_dict(), fh, indent=2, sort_keys=True)
        fh.write("\n")
    with open(out_dir / "report.csv", "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["semantics"] + _COLUMNS)
        for sem, scores in sorted(report.per_semantics.items()):
            row = scores.to_dict()
            writer.writerow([sem] + [row[c] for c in _COLUMNS])
    _write_figure(report, out_dir / "report.png")


def _write_figure(report: EvaluationReport, path: Path) -> None:
    import matplotlib
    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    metric_names = ["ACC", "Pass@k", "MCC_s", "MCC_c", "CFP", "ALSE"]
    semantics = sorted(report.per_semantics)
    fig, ax = plt.subplots(figsize=(8, 4.5))
    width = 0.8 / max(len(semantics), 1)
    for i, sem in enumerate(semantics):
        row = report.per_semantics[sem].to_dict()
        xs = [j + i * width for j in range(len(metric_names))]
        ax.bar(xs, [row[m] for m in metric_names], width=width, label=sem)
    ax.set_xticks([j + width * (len(semantics) - 1) / 2
                   for j in range(len(metric_names))])
    ax.set_xticklabels(metric_names)
    ax.set_ylim(-1.05, 1.05)
    ax.set_ylabel("score")
    ax.set_title(f"Evaluation metrics (k={report.k})")
    ax.legend()
    ax.axhline(0.0, color="grey", linewidth=0.6)
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
