"""Command-line interface.

Subcommands: generate, solve, explain, corrupt, evaluate, emit-prompts.
Exit codes: 0 success, 1 input/config/parse error, 2 I/O error,
3 framework-deduplication exhaustion.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from pathlib import Path

from .core import SemanticsKind
from .datagen import (
    CorruptionConfig,
    GenerationConfig,
    build_dataset,
    corrupt_dataset,
    load_dataset,
    render_complete_explanation,
    render_grounded_explanation,
)
from .errors import (
    AfbenchError,
    ConfigError,
    GraphSyntaxError,
    InsufficientUniqueFrameworksError,
)
from .evalharness import evaluate_run, render_table
from .graphio import (
    GraphFormat,
    parse_framework,
    serialize_answer,
    serialize_answer_list,
)
from .prompts import render_complete_prompt, render_grounded_prompt
from .semantics import enumerate_complete, filter_semantics, solve_grounded

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_IO = 2
EXIT_CAPACITY = 3

_SUFFIX_FORMATS = {
    ".dot": GraphFormat.DOT,
    ".gv": GraphFormat.DOT,
    ".graphml": GraphFormat.GRAPHML,
    ".xml": GraphFormat.GRAPHML,
    ".json": GraphFormat.JSON,
}


def _detect_format(path: Path, flag: str | None) -> GraphFormat:
    if flag:
        return GraphFormat(flag)
    fmt = _SUFFIX_FORMATS.get(path.suffix.lower())
    if fmt is None:
        raise ConfigError(
            f"cannot infer format from {path.name!r}; pass --format")
    return fmt


def _read_framework(path_str: str, format_flag: str | None):
    path = Path(path_str)
    fmt = _detect_format(path, format_flag)
    text = path.read_text(encoding="utf-8")
    return parse_framework(text, fmt), fmt


# ---------------------------------------------------------------------------
# subcommands


def cmd_solve(args: argparse.Namespace, force_explain: bool = False) -> int:
    f, _fmt = _read_framework(args.framework, args.format)
    kind = SemanticsKind.from_code(args.semantics)
    grounded, trace = solve_grounded(f)
    rng = random.Random(args.seed)
    if kind is SemanticsKind.GROUNDED:
        answer = serialize_answer([grounded])
        explanation = render_grounded_explanation(trace, answer, rng)
    else:
        sol = enumerate_complete(f, grounded)
        labs = filter_semantics(sol, kind)
        answer = serialize_answer_list(labs)
        explanation = render_complete_explanation(f, grounded, labs, answer, rng)
    if args.explain or force_explain:
        print(explanation)
    print(answer)
    return EXIT_OK


def cmd_explain(args: argparse.Namespace) -> int:
    return cmd_solve(args, force_explain=True)


def _config_from_args(args: argparse.Namespace) -> GenerationConfig:
    # precedence: flags > config file > defaults
    if args.config:
        with open(args.config, encoding="utf-8") as fh:
            cfg = GenerationConfig.from_dict(json.load(fh))
    else:
        cfg = GenerationConfig()
    overrides = {
        "n_min": args.n_min,
        "n_max": args.n_max,
        "per_n_train": args.per_n_train,
        "per_n_test": args.per_n_test,
        "master_seed": args.seed,
    }
    for key, value in overrides.items():
        if value is not None:
            setattr(cfg, key, value)
    if args.p_min is not None or args.p_max is not None:
        lo, hi = cfg.attack_probability_range
        cfg.attack_probability_range = (
            lo if args.p_min is None else args.p_min,
            hi if args.p_max is None else args.p_max)
    if args.no_explanations:
        cfg.include_explanations = False
    if args.end_to_end:
        cfg.given_grounded = False
    cfg.validate()
    return cfg


def cmd_generate(args: argparse.Namespace) -> int:
    cfg = _config_from_args(args)
    corruption = None
    if args.noise is not None and args.noise > 0:
        corruption = CorruptionConfig(noise_ratio=args.noise,
                                      seed=args.seed if args.seed is not None
                                      else cfg.master_seed)
    manifest = build_dataset(cfg, corruption, out_dir=Path(args.out),
                             compute_statistics=not args.no_stats)
    counts = manifest["counts"]
    print(f"wrote {counts['train']} train and {counts['test']} test records "
          f"({counts['corrupted']} corrupted) to {args.out}")
    return EXIT_OK


def cmd_corrupt(args: argparse.Namespace) -> int:
    samples = load_dataset(Path(args.input))
    if not samples:
        raise ConfigError(f"dataset {args.input} is empty")
    corruption = CorruptionConfig(noise_ratio=args.noise, seed=args.seed or 0)
    corrupted, count = corrupt_dataset(samples, corruption)
    out = Path(args.out)
    out.parent.mkdir(parents=True, exist_ok=True)
    with open(out, "w", encoding="utf-8") as fh:
        for s in corrupted:
            fh.write(s.to_json_line() + "\n")
    print(f"corrupted {count} of {len(samples)} samples -> {out}")
    return EXIT_OK


def cmd_evaluate(args: argparse.Namespace) -> int:
    out_dir = Path(args.out) if args.out else None
    report = evaluate_run(Path(args.dataset), Path(args.predictions),
                          args.k, out_dir=out_dir)
    print(render_table(report))
    if out_dir:
        print(f"report files written to {out_dir}")
    return EXIT_OK


def cmd_emit_prompts(args: argparse.Namespace) -> int:
    f, fmt = _read_framework(args.framework, args.format)
    out_dir = Path(args.out)
    out_dir.mkdir(parents=True, exist_ok=True)
    tasks = ["grounded", "complete"] if args.task == "both" else [args.task]
    for task in tasks:
        if task == "grounded":
            text = render_grounded_prompt(f, fmt)
        else:
            text = render_complete_prompt(f, fmt)
        path = out_dir / f"prompt_{task}.txt"
        path.write_text(text, encoding="utf-8")
        print(f"wrote {path}")
    return EXIT_OK


# ---------------------------------------------------------------------------
# parser


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="afbench",
        description="Abstract argumentation engine: solve labelling "
                    "semantics, generate benchmark datasets, and score "
                    "model answers.")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_framework_flags(p):
        p.add_argument("framework", help="framework file (dot/graphml/json)")
        p.add_argument("--format", choices=[f.value for f in GraphFormat],
                       help="input format (default: inferred from suffix)")

    p_solve = sub.add_parser("solve", help="solve one framework")
    add_framework_flags(p_solve)
    p_solve.add_argument("--semantics", default="grd",
                         choices=["grd", "com", "prf", "stb",
                                  "grounded", "complete", "preferred", "stable"])
    p_solve.add_argument("--explain", action="store_true",
                         help="also print the derivation narration")
    p_solve.add_argument("--seed", type=int, default=0,
                         help="seed for explanation phrasing choices")
    p_solve.set_defaults(func=cmd_solve)

    p_explain = sub.add_parser("explain",
                               help="solve and always print the derivation")
    add_framework_flags(p_explain)
    p_explain.add_argument("--semantics", default="grd",
                           choices=["grd", "com", "prf", "stb",
                                    "grounded", "complete", "preferred",
                                    "stable"])
    p_explain.add_argument("--seed", type=int, default=0)
    p_explain.set_defaults(func=cmd_explain, explain=True)

    p_gen = sub.add_parser("generate", help="generate a benchmark dataset")
    p_gen.add_argument("--out", required=True, help="output directory")
    p_gen.add_argument("--config", help="JSON generation config file")
    p_gen.add_argument("--seed", type=int, help="master seed")
    p_gen.add_argument("--n-min", type=int)
    p_gen.add_argument("--n-max", type=int)
    p_gen.add_argument("--per-n-train", type=int)
    p_gen.add_argument("--per-n-test", type=int)
    p_gen.add_argument("--p-min", type=float)
    p_gen.add_argument("--p-max", type=float)
    p_gen.add_argument("--noise", type=float,
                       help="fraction of training samples to corrupt")
    p_gen.add_argument("--no-explanations", action="store_true")
    p_gen.add_argument("--end-to-end", action="store_true",
                       help="complete tasks without the grounded labelling "
                            "embedded in the problem")
    p_gen.add_argument("--no-stats", action="store_true",
                       help="skip extension statistics in the manifest")
    p_gen.set_defaults(func=cmd_generate)

    p_cor = sub.add_parser("corrupt", help="corrupt a clean dataset")
    p_cor.add_argument("--in", dest="input", required=True,
                       help="clean dataset file (jsonl)")
    p_cor.add_argument("--out", required=True, help="corrupted dataset file")
    p_cor.add_argument("--noise", type=float, required=True)
    p_cor.add_argument("--seed", type=int, default=0)
    p_cor.set_defaults(func=cmd_corrupt)

    p_eval = sub.add_parser("evaluate", help="score predictions")
    p_eval.add_argument("--dataset", required=True)
    p_eval.add_argument("--predictions", required=True)
    p_eval.add_argument("--k", type=int, default=1)
    p_eval.add_argument("--out", help="directory for report files")
    p_eval.set_defaults(func=cmd_evaluate)

    p_prompt = sub.add_parser("emit-prompts",
                              help="render chain-of-thought prompt templates")
    add_framework_flags(p_prompt)
    p_prompt.add_argument("--task", default="both",
                          choices=["grounded", "complete", "both"])
    p_prompt.add_argument("--out", required=True, help="output directory")
    p_prompt.set_defaults(func=cmd_emit_prompts)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except InsufficientUniqueFrameworksError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CAPACITY
    except (GraphSyntaxError, ConfigError, AfbenchError, json.JSONDecodeError,
            ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
