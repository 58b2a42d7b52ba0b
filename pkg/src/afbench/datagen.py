"""Random framework generation and benchmark dataset assembly.

Frameworks are directed Erdos-Renyi graphs (each ordered pair, self-loops
included, is an attack independently with probability p). Each dataset sample
is an instruction / problem / explanation / answer record; the explanation
narrates the derivation trace from fixed template pools so generation is
fully deterministic given the seeds. A corruption pass replaces half of one
intermediate label set and mechanically re-runs the rest of the derivation,
so the error propagates into the final answer.
"""

from __future__ import annotations

import json
import math
import random
from dataclasses import dataclass, field
from pathlib import Path
from typing import Dict, List, Optional, Sequence, Tuple

from .core import Framework, Label, Labelling, SemanticsKind
from .errors import (
    ConfigError,
    InsufficientUniqueFrameworksError,
    NoIntermediateSetError,
)
from .graphio import (
    GraphFormat,
    parse_framework,
    serialize_answer,
    serialize_framework,
)
from .semantics import (
    DerivationTrace,
    StepKind,
    TraceStep,
    enumerate_complete,
    filter_semantics,
    solve_grounded,
)

TASK_GROUNDED = "grounded"
TASK_COMPLETE = "complete"


# ---------------------------------------------------------------------------
# configuration


@dataclass
class GenerationConfig:
    n_min: int = 6
    n_max: int = 25
    per_n_train: int = 3000
    per_n_test: int = 100
    attack_probability_range: Tuple[float, float] = (0.05, 0.30)
    master_seed: int = 0
    task_mix: Dict[str, float] = field(
        default_factory=lambda: {TASK_GROUNDED: 0.5, TASK_COMPLETE: 0.5})
    format_mix: Dict[str, float] = field(
        default_factory=lambda: {"dot": 1 / 3, "graphml": 1 / 3, "json": 1 / 3})
    include_explanations: bool = True
    #: two-step complete tasks embed the grounded labelling in the problem
    given_grounded: bool = True
    #: scale factor for self-attack probability; tuned so the per-semantics
    #: extension statistics of generated datasets stay near the reference
    #: averages (see the manifest's statistics block)
    self_attack_factor: float = 0.25

    def validate(self) -> None:
        if not (0 < self.n_min <= self.n_max):
            raise ConfigError("need 0 < n_min <= n_max")
        if self.per_n_train < 0 or self.per_n_test < 0:
            raise ConfigError("sample counts must be non-negative")
        lo, hi = self.attack_probability_range
        if not (0 < lo <= hi < 1):
            raise ConfigError("attack probabilities must lie in (0, 1)")
        if not 0.0 <= self.self_attack_factor <= 1.0:
            raise ConfigError("self_attack_factor must lie in [0, 1]")
        for name, mix in (("task_mix", self.task_mix),
                          ("format_mix", self.format_mix)):
            if abs(sum(mix.values()) - 1.0) > 1e-9:
                raise ConfigError(f"{name} proportions must sum to 1")
            if any(w < 0 for w in mix.values()):
                raise ConfigError(f"{name} proportions must be non-negative")
        unknown = set(self.task_mix) - {TASK_GROUNDED, TASK_COMPLETE}
        if unknown:
            raise ConfigError(f"unknown tasks in task_mix: {sorted(unknown)}")
        for fmt in self.format_mix:
            GraphFormat(fmt)

    def to_dict(self) -> dict:
        return {
            "n_min": self.n_min,
            "n_max": self.n_max,
            "per_n_train": self.per_n_train,
            "per_n_test": self.per_n_test,
            "attack_probability_range": list(self.attack_probability_range),
            "master_seed": self.master_seed,
            "task_mix": dict(self.task_mix),
            "format_mix": dict(self.format_mix),
            "include_explanations": self.include_explanations,
            "given_grounded": self.given_grounded,
            "self_attack_factor": self.self_attack_factor,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "GenerationConfig":
        cfg = cls()
        for key, value in data.items():
            if not hasattr(cfg, key):
                raise ConfigError(f"unknown config field {key!r}")
            if key == "attack_probability_range":
                value = tuple(value)
            setattr(cfg, key, value)
        cfg.validate()
        return cfg


@dataclass
class CorruptionConfig:
    noise_ratio: float
    seed: int = 0

    def validate(self) -> None:
        if not 0.0 <= self.noise_ratio <= 1.0:
            raise ConfigError("noise_ratio must lie in [0, 1]")

    def to_dict(self) -> dict:
        return {"noise_ratio": self.noise_ratio, "seed": self.seed}


@dataclass
class DatasetSample:
    instruction: str
    problem: str
    answer: str
    task: str
    meta: dict
    explanation: Optional[str] = None

    def to_json_line(self) -> str:
        record = {
            "instruction": self.instruction,
            "problem": self.problem,
            "answer": self.answer,
            "task": self.task,
            "meta": self.meta,
        }
        if self.explanation is not None:
            record["explanation"] = self.explanation
        return json.dumps(record, sort_keys=True, separators=(",", ":"))

    @classmethod
    def from_json_line(cls, line: str) -> "DatasetSample":
        record = json.loads(line)
        return cls(
            instruction=record["instruction"],
            problem=record["problem"],
            answer=record["answer"],
            task=record["task"],
            meta=record["meta"],
            explanation=record.get("explanation"),
        )


# ---------------------------------------------------------------------------
# random frameworks


def generate_random_af(n: int, p: float, rng: random.Random,
                       self_attack_factor: float = 1.0) -> Framework:
    """Directed Erdos-Renyi framework over arguments 0..n-1; every ordered
    pair (self-loops included) is an attack with probability p.

    ``self_attack_factor`` scales the probability of self-attacks only; the
    dataset generator attenuates them because frameworks dominated by
    externally unattacked self-attackers rarely admit stable labellings.
    """
    if n < 1:
        raise ConfigError("n must be >= 1")
    if not 0 < p < 1:
        raise ConfigError("p must lie in (0, 1)")
    attacks = [(a, b) for a in range(n) for b in range(n)
               if rng.random() < (p * self_attack_factor if a == b else p)]
    return Framework(range(n), attacks)


# ---------------------------------------------------------------------------
# text templates

_INSTRUCTION_INTROS = [
    "An abstract argumentation framework is a directed graph whose nodes are "
    "arguments and whose edges are attacks between arguments.",
    "Consider an abstract argumentation framework: a set of arguments "
    "together with a binary attack relation, given as a directed graph.",
    "You are given an abstract argumentation framework, i.e. arguments "
    "connected by directed attack edges.",
    "Below is an abstract argumentation framework where each node is an "
    "argument and each directed edge means the source attacks the target.",
    "The following directed graph encodes an abstract argumentation "
    "framework: nodes are arguments, edges are attacks.",
]

_TASK_GROUNDED_TEXTS = [
    "Compute the grounded labelling: assign IN, OUT, or UNDEC to every "
    "argument.",
    "Determine the grounded labelling of this framework, labelling each "
    "argument IN, OUT, or UNDEC.",
    "Find the grounded labelling, i.e. the unique minimal complete "
    "labelling of the framework.",
    "Work out which arguments are IN, OUT, and UNDEC under the grounded "
    "semantics.",
    "Solve for the grounded labelling of the framework.",
]

_TASK_COMPLETE_TEXTS = [
    "Compute all complete labellings of this framework.",
    "Enumerate every complete labelling, assigning IN, OUT, or UNDEC to "
    "each argument.",
    "List all complete labellings of the framework.",
    "Find every labelling that is complete for this framework.",
    "Determine the full set of complete labellings.",
]

_ANSWER_FORMAT_SINGLE = [
    'Give the final labelling at the end as a JSON object with the keys '
    '"IN", "OUT", and "UNDEC", each a list of argument numbers sorted in '
    "ascending order.",
    "Finish your response with a JSON object whose \"IN\", \"OUT\", and "
    "\"UNDEC\" fields list the argument numbers in ascending order.",
    "At the end, output one JSON object containing the sorted lists "
    '"IN", "OUT", and "UNDEC".',
]

_ANSWER_FORMAT_MULTI = [
    "Give the final labellings at the end as a JSON array of objects, each "
    'with the keys "IN", "OUT", and "UNDEC" holding ascending lists of '
    "argument numbers.",
    "Finish your response with a JSON array; every element must be an "
    'object with sorted "IN", "OUT", and "UNDEC" lists.',
    "At the end, output a JSON array of labelling objects, each containing "
    'the sorted lists "IN", "OUT", and "UNDEC".',
]

_GIVEN_GROUNDED_NOTES = [
    "The grounded labelling of the framework is provided with the problem; "
    "use it as the starting point.",
    "You are given the grounded labelling as a known condition.",
    "Start from the provided grounded labelling.",
]

_INIT_TEMPLATES = [
    "Arguments {args} are not attacked, so they are labelled IN.",
    "No argument attacks {args}, hence they are assigned IN.",
    "We start by labelling the unattacked arguments {args} IN.",
]

_INIT_EMPTY_TEMPLATES = [
    "No argument is unattacked, so nothing can be labelled IN initially.",
    "Every argument has at least one attacker; the initial IN set is empty.",
    "There are no unattacked arguments to initialise the IN set.",
]

_OUT_TEMPLATES = [
    "Arguments {args} are attacked by an argument labelled IN ({just}), so "
    "they are labelled OUT.",
    "Since {just}, arguments {args} are assigned OUT.",
    "Each of {args} has an IN attacker ({just}); they become OUT.",
]

_IN_TEMPLATES = [
    "All attackers of {args} are now OUT ({just}), so they are labelled IN.",
    "Arguments {args} have only OUT attackers ({just}); they are assigned IN.",
    "Because every attacker is OUT ({just}), arguments {args} become IN.",
]

_UNDEC_TEMPLATES = [
    "No further arguments can be labelled IN or OUT; the remaining "
    "arguments {args} are assigned UNDEC.",
    "The iteration has reached a fixed point, so {args} stay UNDEC.",
    "Nothing else can be decided; arguments {args} are labelled UNDEC.",
]

_UNDEC_EMPTY_TEMPLATES = [
    "Every argument has been labelled IN or OUT; nothing remains UNDEC.",
    "No argument is left undecided.",
    "The iteration labelled every argument, so the UNDEC set is empty.",
]

_PROPOSE_TEMPLATES = [
    "Candidate labelling: {record}.",
    "Propose the labelling {record}.",
    "Next candidate complete labelling: {record}.",
]

_VERIFY_OK_TEMPLATES = [
    "Every argument is legally labelled ({detail}), so the candidate is a "
    "complete labelling.",
    "Verification succeeds: {detail}. The labelling is complete.",
    "Checking each argument confirms legality ({detail}); the candidate is "
    "complete.",
]

_GROUNDED_BASE_TEMPLATES = [
    "The grounded labelling is {record}; every complete labelling keeps its "
    "IN and OUT arguments and relabels only UNDEC ones.",
    "Starting from the grounded labelling {record}, complete labellings are "
    "obtained by relabelling arguments from its UNDEC set.",
    "We take the grounded labelling {record} as the base and consider "
    "relabellings of its UNDEC arguments.",
]


def _fmt_args(args: Sequence[int]) -> str:
    return "{" + ", ".join(str(a) for a in sorted(args)) + "}"


def _labelling_record_text(lab: Labelling) -> str:
    return serialize_answer([lab])


def _render_grounded_step(step: TraceStep, rng: random.Random) -> str:
    args_text = _fmt_args(step.affected)
    if step.kind is StepKind.INIT:
        if not step.affected:
            return rng.choice(_INIT_EMPTY_TEMPLATES)
        return rng.choice(_INIT_TEMPLATES).format(args=args_text)
    if step.kind is StepKind.OUT_STEP:
        just = "; ".join(f"{a} is attacked by {_fmt_args(step.justification[a])}"
                         for a in step.affected)
        return rng.choice(_OUT_TEMPLATES).format(args=args_text, just=just)
    if step.kind is StepKind.IN_STEP:
        just = "; ".join(
            f"{a} is attacked only by {_fmt_args(step.justification[a])}"
            if step.justification[a] else f"{a} is unattacked"
            for a in step.affected)
        return rng.choice(_IN_TEMPLATES).format(args=args_text, just=just)
    if step.kind is StepKind.UNDEC_CLOSE:
        if not step.affected:
            return rng.choice(_UNDEC_EMPTY_TEMPLATES)
        return rng.choice(_UNDEC_TEMPLATES).format(args=args_text)
    raise ValueError(f"unexpected step kind {step.kind}")


def render_grounded_explanation(trace: DerivationTrace, answer: str,
                                rng: random.Random) -> str:
    lines = [_render_grounded_step(step, rng) for step in trace.steps]
    lines.append(f"Final labelling: {answer}")
    return "\n".join(lines)


def _verify_detail(f: Framework, lab: Labelling) -> str:
    parts = []
    for a in sorted(f.arguments):
        label = lab.label_of(a)
        attackers = f.attackers_of(a)
        if label is Label.IN:
            if attackers:
                parts.append(f"{a} is IN and its attackers {_fmt_args(attackers)} "
                             "are all OUT")
            else:
                parts.append(f"{a} is IN and unattacked")
        elif label is Label.OUT:
            in_attackers = [b for b in attackers if lab.label_of(b) is Label.IN]
            parts.append(f"{a} is OUT with IN attacker {_fmt_args(in_attackers)}")
        else:
            parts.append(f"{a} is UNDEC with no IN attacker and not all "
                         f"attackers {_fmt_args(attackers)} OUT")
    return "; ".join(parts)


def render_complete_explanation(f: Framework, grounded: Labelling,
                                completes: Sequence[Labelling], answer: str,
                                rng: random.Random) -> str:
    lines = [rng.choice(_GROUNDED_BASE_TEMPLATES).format(
        record=_labelling_record_text(grounded))]
    for lab in completes:
        lines.append(rng.choice(_PROPOSE_TEMPLATES).format(
            record=_labelling_record_text(lab)))
        lines.append(rng.choice(_VERIFY_OK_TEMPLATES).format(
            detail=_verify_detail(f, lab)))
    lines.append(f"Final labellings: {answer}")
    return "\n".join(lines)


# ---------------------------------------------------------------------------
# sample assembly


def _build_instruction(task: str, given_grounded: bool,
                       multi: bool, rng: random.Random) -> str:
    parts = [rng.choice(_INSTRUCTION_INTROS)]
    if task == TASK_GROUNDED:
        parts.append(rng.choice(_TASK_GROUNDED_TEXTS))
    else:
        parts.append(rng.choice(_TASK_COMPLETE_TEXTS))
        if given_grounded:
            parts.append(rng.choice(_GIVEN_GROUNDED_NOTES))
    parts.append(rng.choice(_ANSWER_FORMAT_MULTI if multi
                            else _ANSWER_FORMAT_SINGLE))
    return " ".join(parts)


def build_sample(f: Framework, task: str, fmt: GraphFormat,
                 with_explanation: bool, rng: random.Random,
                 given_grounded: bool = True,
                 meta: Optional[dict] = None) -> DatasetSample:
    """Assemble one instruction/problem/explanation/answer record."""
    if task not in (TASK_GROUNDED, TASK_COMPLETE):
        raise ConfigError(f"unknown task {task!r}")
    fmt = GraphFormat(fmt)
    grounded, trace = solve_grounded(f)
    problem = serialize_framework(f, fmt)
    if task == TASK_GROUNDED:
        answer = serialize_answer([grounded])
        multi = False
        explanation = (render_grounded_explanation(trace, answer, rng)
                       if with_explanation else None)
    else:
        sol = enumerate_complete(f, grounded)
        completes = sol.labellings()
        answer = serialize_answer(completes)
        multi = len(completes) != 1
        if given_grounded:
            problem += ("\n\nThe grounded labelling is: "
                        + _labelling_record_text(grounded))
        explanation = (render_complete_explanation(f, grounded, completes,
                                                   answer, rng)
                       if with_explanation else None)
    instruction = _build_instruction(task, given_grounded and task == TASK_COMPLETE,
                                     multi, rng)
    sample_meta = {
        "n": len(f.arguments),
        "format": fmt.value,
        "task": task,
        "given_grounded": bool(given_grounded and task == TASK_COMPLETE),
        "corrupted": False,
    }
    if meta:
        sample_meta.update(meta)
    return DatasetSample(instruction=instruction, problem=problem,
                         answer=answer, task=task, meta=sample_meta,
                         explanation=explanation)


# ---------------------------------------------------------------------------
# corruption


def _resume_rounds(f: Framework, state: Dict[int, Optional[Label]]
                   ) -> List[TraceStep]:
    """Mechanically continue the OUT/IN alternation from an arbitrary
    (possibly corrupted) label state, then close with UNDEC."""
    steps: List[TraceStep] = []
    order = sorted(f.arguments)
    while True:
        out_args = {}
        for a in order:
            if state[a] is not None:
                continue
            in_attackers = tuple(sorted(b for b in f.attackers_of(a)
                                        if state[b] is Label.IN))
            if in_attackers:
                out_args[a] = in_attackers
        for a in out_args:
            state[a] = Label.OUT
        if out_args:
            steps.append(TraceStep(StepKind.OUT_STEP, tuple(sorted(out_args)),
                                   dict(out_args), dict(state)))
        in_args = {}
        for a in order:
            if state[a] is not None:
                continue
            attackers = f.attackers_of(a)
            if all(state[b] is Label.OUT for b in attackers):
                in_args[a] = tuple(sorted(attackers))
        for a in in_args:
            state[a] = Label.IN
        if in_args:
            steps.append(TraceStep(StepKind.IN_STEP, tuple(sorted(in_args)),
                                   dict(in_args), dict(state)))
        if not out_args and not in_args:
            break
    rest = {}
    for a in order:
        if state[a] is None:
            state[a] = Label.UNDEC
            rest[a] = tuple(sorted(b for b in f.attackers_of(a)
                                   if state[b] is not Label.OUT))
    steps.append(TraceStep(StepKind.UNDEC_CLOSE, tuple(sorted(rest)),
                           dict(rest), dict(state)))
    return steps


def corrupt_sample(s: DatasetSample, rng: random.Random) -> DatasetSample:
    """Corrupt one intermediate label set of a grounded derivation and
    propagate the error by re-running the remaining rounds."""
    if s.task != TASK_GROUNDED:
        raise ConfigError("only grounded-task samples can be corrupted")
    if s.explanation is None:
        raise ConfigError("sample has no explanation to corrupt")
    f = parse_framework(s.problem, GraphFormat(s.meta["format"]))
    grounded, trace = solve_grounded(f)
    candidates = [i for i, step in enumerate(trace.steps)
                  if step.kind in (StepKind.INIT, StepKind.IN_STEP,
                                   StepKind.OUT_STEP) and step.affected]
    if not candidates:
        raise NoIntermediateSetError("derivation has no intermediate label set")
    idx = rng.choice(candidates)
    step = trace.steps[idx]
    step_label = (Label.OUT if step.kind is StepKind.OUT_STEP else Label.IN)
    original = list(step.affected)
    k = math.ceil(len(original) / 2)
    removed = set(rng.sample(original, k))
    kept = [a for a in original if a not in removed]
    # replacements come from outside the original set, preferring arguments
    # whose true label differs from the forced one: those stay wrong through
    # the resumed rounds, so the error survives into the final answer. Fall
    # back to wider pools when not enough such arguments exist.
    outside = set(f.arguments) - set(original)
    contradicting = sorted(a for a in outside
                           if grounded.label_of(a) is not step_label)
    if len(contradicting) >= k:
        pool = contradicting
    elif len(outside) >= k:
        pool = sorted(outside)
    else:
        pool = sorted(set(f.arguments) - set(kept))
    replacements = rng.sample(pool, k)
    corrupted_set = sorted(set(kept) | set(replacements))

    # rebuild the label state just before the corrupted step
    state: Dict[int, Optional[Label]] = {a: None for a in f.arguments}
    for prior in trace.steps[:idx]:
        for a, v in prior.snapshot.items():
            if v is not None:
                state[a] = v
    for a in corrupted_set:
        state[a] = step_label
    corrupted_step = TraceStep(step.kind, tuple(corrupted_set),
                               {a: step.justification.get(a, ()) for a in
                                corrupted_set},
                               dict(state))
    steps = list(trace.steps[:idx]) + [corrupted_step]
    steps.extend(_resume_rounds(f, state))
    corrupted_trace = DerivationTrace(tuple(steps))
    final = Labelling({a: v for a, v in state.items() if v is not None})
    answer = serialize_answer([final])
    explanation = render_grounded_explanation(corrupted_trace, answer, rng)
    meta = dict(s.meta)
    meta["corrupted"] = True
    return DatasetSample(instruction=s.instruction, problem=s.problem,
                         answer=answer, task=s.task, meta=meta,
                         explanation=explanation)


def _has_intermediate_set(s: DatasetSample) -> bool:
    """True when the sample's derivation has a nonempty INIT/IN/OUT step that
    the corruption pass could rewrite (all-UNDEC derivations have none)."""
    f = parse_framework(s.problem, GraphFormat(s.meta["format"]))
    _, trace = solve_grounded(f)
    return any(step.kind in (StepKind.INIT, StepKind.IN_STEP,
                             StepKind.OUT_STEP) and step.affected
               for step in trace.steps)


def corrupt_dataset(samples: List[DatasetSample], corruption: CorruptionConfig
                    ) -> Tuple[List[DatasetSample], int]:
    """Corrupt exactly floor(noise_ratio * len(samples)) samples, chosen
    deterministically among the eligible grounded ones."""
    corruption.validate()
    count = math.floor(corruption.noise_ratio * len(samples))
    if count == 0:
        return list(samples), 0
    eligible = [i for i, s in enumerate(samples)
                if s.task == TASK_GROUNDED and s.explanation is not None
                and _has_intermediate_set(s)]
    if count > len(eligible):
        raise ConfigError(
            f"cannot corrupt {count} samples: only {len(eligible)} eligible "
            "grounded samples with explanations")
    select_rng = random.Random(f"{corruption.seed}:select")
    chosen = set(select_rng.sample(eligible, count))
    result = []
    for i, s in enumerate(samples):
        if i in chosen:
            rng = random.Random(f"{corruption.seed}:corrupt:{s.meta.get('id', i)}")
            result.append(corrupt_sample(s, rng))
        else:
            result.append(s)
    return result, count


# ---------------------------------------------------------------------------
# dataset build


def _weighted_choice(rng: random.Random, mix: Dict[str, float]) -> str:
    keys = sorted(mix)
    roll = rng.random()
    acc = 0.0
    for key in keys:
        acc += mix[key]
        if roll < acc:
            return key
    return keys[-1]


def _unique_frameworks(cfg: GenerationConfig, n: int, count: int
                       ) -> List[Framework]:
    rng = random.Random(f"{cfg.master_seed}:frameworks:{n}")
    lo, hi = cfg.attack_probability_range
    seen = set()
    frameworks: List[Framework] = []
    attempts = 0
    max_attempts = max(1000, 100 * count)
    while len(frameworks) < count:
        if attempts >= max_attempts:
            raise InsufficientUniqueFrameworksError(
                f"could not find {count} distinct frameworks with n={n} "
                f"after {attempts} attempts")
        attempts += 1
        p = rng.uniform(lo, hi)
        f = generate_random_af(n, p, rng,
                               self_attack_factor=cfg.self_attack_factor)
        key = f.attacks
        if key in seen:
            continue
        seen.add(key)
        frameworks.append(f)
    return frameworks


def _extension_statistics(frameworks: Sequence[Framework]) -> dict:
    stats = {}
    totals = {kind: {"count": 0, "args": 0, "ext": 0} for kind in SemanticsKind}
    for f in frameworks:
        grounded, _ = solve_grounded(f)
        sol = enumerate_complete(f, grounded)
        for kind in SemanticsKind:
            labs = filter_semantics(sol, kind)
            totals[kind]["count"] += len(labs)
            totals[kind]["ext"] += 1
            totals[kind]["args"] += sum(len(l.in_set) for l in labs)
    n_af = len(frameworks)
    for kind in SemanticsKind:
        t = totals[kind]
        stats[kind.value] = {
            "extensions_per_af": t["count"] / n_af if n_af else 0.0,
            "arguments_per_extension":
                t["args"] / t["count"] if t["count"] else 0.0,
        }
    return stats


def build_dataset(cfg: GenerationConfig,
                  corruption: Optional[CorruptionConfig] = None,
                  out_dir: Optional[Path] = None,
                  compute_statistics: bool = True) -> dict:
    """Generate the train/test splits and the manifest.

    Returns the manifest dict; when ``out_dir`` is given, writes
    ``train.jsonl``, ``test.jsonl``, and ``manifest.json`` there.
    Frameworks are deduplicated by their attack set per n and the two splits
    never share a framework.
    """
    cfg.validate()
    if corruption is not None:
        corruption.validate()
    train: List[DatasetSample] = []
    test: List[DatasetSample] = []
    test_frameworks: List[Framework] = []
    for n in range(cfg.n_min, cfg.n_max + 1):
        frameworks = _unique_frameworks(cfg, n, cfg.per_n_train + cfg.per_n_test)
        split_frameworks = {
            "train": frameworks[:cfg.per_n_train],
            "test": frameworks[cfg.per_n_train:],
        }
        test_frameworks.extend(split_frameworks["test"])
        for split, fws in split_frameworks.items():
            bucket = train if split == "train" else test
            for i, f in enumerate(fws):
                seed = f"{cfg.master_seed}:sample:{split}:{n}:{i}"
                rng = random.Random(seed)
                task = _weighted_choice(rng, cfg.task_mix)
                fmt = GraphFormat(_weighted_choice(rng, cfg.format_mix))
                sample = build_sample(
                    f, task, fmt, cfg.include_explanations, rng,
                    given_grounded=cfg.given_grounded,
                    meta={"id": f"{split}-n{n:02d}-{i:04d}", "seed": seed})
                bucket.append(sample)

    corrupted_count = 0
    if corruption is not None:
        train, corrupted_count = corrupt_dataset(train, corruption)

    manifest = {
        "config": cfg.to_dict(),
        "corruption": corruption.to_dict() if corruption else None,
        "counts": {
            "train": len(train),
            "test": len(test),
            "corrupted": corrupted_count,
        },
    }
    if compute_statistics:
        manifest["statistics"] = {"test_split": _extension_statistics(test_frameworks)}

    if out_dir is not None:
        out_dir = Path(out_dir)
        out_dir.mkdir(parents=True, exist_ok=True)
        for name, samples in (("train.jsonl", train), ("test.jsonl", test)):
            with open(out_dir / name, "w", encoding="utf-8") as fh:
                for s in samples:
                    fh.write(s.to_json_line() + "\n")
        with open(out_dir / "manifest.json", "w", encoding="utf-8") as fh:
            json.dump(manifest, fh, indent=2, sort_keys=True)
            fh.write("\n")
    manifest["_train"] = train
    manifest["_test"] = test
    return manifest


def load_dataset(path: Path) -> List[DatasetSample]:
    samples = []
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            line = line.strip()
            if line:
                samples.append(DatasetSample.from_json_line(line))
    return samples
