"""Grounded and complete labelling computation with derivation traces.

The grounded labelling is built by the iterative fixed-point procedure:
initially every unattacked argument is IN, then OUT is assigned to anything
attacked by an IN argument and IN to anything whose attackers are all OUT,
round by round, until nothing changes; the rest is UNDEC. Complete labellings
are found by branching over the grounded UNDEC arguments and verifying each
candidate clause by clause. A 3^n brute-force oracle over all labellings
serves as independent ground truth on small frameworks.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from enum import Enum
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

from .core import Framework, Label, Labelling, SemanticsKind, check_legality
from .errors import InconsistentGroundedError, TooLargeError

ORACLE_DEFAULT_CAP = 10


class StepKind(str, Enum):
    INIT = "INIT"
    IN_STEP = "IN-STEP"
    OUT_STEP = "OUT-STEP"
    UNDEC_CLOSE = "UNDEC-CLOSE"
    PROPOSE = "PROPOSE"
    VERIFY = "VERIFY"

    def __str__(self) -> str:
        return self.value


@dataclass(frozen=True)
class TraceStep:
    kind: StepKind
    #: arguments labelled (or proposed / verified) in this step, ascending
    affected: Tuple[int, ...]
    #: per affected argument, the attackers justifying its new label
    justification: Mapping[int, Tuple[int, ...]]
    #: full label state after the step; None marks still-unlabelled arguments
    snapshot: Mapping[int, Optional[Label]]


@dataclass(frozen=True)
class DerivationTrace:
    steps: Tuple[TraceStep, ...]

    @property
    def final_snapshot(self) -> Mapping[int, Optional[Label]]:
        return self.steps[-1].snapshot

    def labelled_steps(self) -> Tuple[TraceStep, ...]:
        """Steps that assigned IN or OUT during a grounded derivation."""
        return tuple(s for s in self.steps
                     if s.kind in (StepKind.INIT, StepKind.IN_STEP, StepKind.OUT_STEP)
                     and s.affected)


@dataclass(frozen=True)
class CompleteSolution:
    grounded: Tuple[Labelling, DerivationTrace]
    completes: Tuple[Tuple[Labelling, DerivationTrace], ...]

    def labellings(self) -> List[Labelling]:
        return [lab for lab, _ in self.completes]


def _snapshot(state: Dict[int, Optional[Label]]) -> Dict[int, Optional[Label]]:
    return dict(state)


def solve_grounded(f: Framework,
                   visit_order: Optional[Sequence[int]] = None
                   ) -> Tuple[Labelling, DerivationTrace]:
    """Compute the unique grounded labelling and its derivation trace.

    ``visit_order`` only permutes the iteration over arguments; because each
    round labels all currently eligible arguments simultaneously, the result
    is independent of it (tested property).
    """
    order = list(visit_order) if visit_order is not None else sorted(f.arguments)
    assert set(order) == set(f.arguments)
    state: Dict[int, Optional[Label]] = {a: None for a in f.arguments}
    steps: List[TraceStep] = []

    init = [a for a in order if not f.attackers_of(a)]
    for a in init:
        state[a] = Label.IN
    steps.append(TraceStep(StepKind.INIT, tuple(sorted(init)),
                           {a: () for a in init}, _snapshot(state)))

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
            steps.append(TraceStep(StepKind.OUT_STEP,
                                   tuple(sorted(out_args)),
                                   {a: out_args[a] for a in sorted(out_args)},
                                   _snapshot(state)))

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
            steps.append(TraceStep(StepKind.IN_STEP,
                                   tuple(sorted(in_args)),
                                   {a: in_args[a] for a in sorted(in_args)},
                                   _snapshot(state)))
        if not out_args and not in_args:
            break

    rest = {}
    for a in order:
        if state[a] is None:
            state[a] = Label.UNDEC
            rest[a] = tuple(sorted(b for b in f.attackers_of(a)
                                   if state[b] is not Label.OUT))
    steps.append(TraceStep(StepKind.UNDEC_CLOSE, tuple(sorted(rest)),
                           {a: rest[a] for a in sorted(rest)}, _snapshot(state)))

    labelling = Labelling({a: v for a, v in state.items() if v is not None})
    return labelling, DerivationTrace(tuple(steps))


def _verification_trace(f: Framework, grounded: Labelling,
                        candidate: Labelling) -> DerivationTrace:
    """PROPOSE the candidate, then one VERIFY step per argument."""
    snapshot: Dict[int, Optional[Label]] = dict(candidate.assignment)
    changed = tuple(sorted(a for a in f.arguments
                           if candidate.label_of(a) is not grounded.label_of(a)))
    steps: List[TraceStep] = [
        TraceStep(StepKind.PROPOSE, changed,
                  {a: tuple(sorted(f.attackers_of(a))) for a in changed},
                  snapshot)
    ]
    for a in sorted(f.arguments):
        steps.append(TraceStep(StepKind.VERIFY, (a,),
                               {a: tuple(sorted(f.attackers_of(a)))},
                               snapshot))
    return DerivationTrace(tuple(steps))


def enumerate_complete(f: Framework, grounded: Labelling) -> CompleteSolution:
    """Enumerate all complete labellings of ``f`` by branching over the
    grounded UNDEC arguments.

    Every complete labelling agrees with the grounded one on its IN and OUT
    arguments, so the search space is the relabellings of UNDEC(grounded).
    Branches that force an illegal label are pruned; each surviving candidate
    is still verified in full before being recorded.
    """
    grounded_report = check_legality(f, grounded)
    if not grounded_report.complete:
        raise InconsistentGroundedError(
            "supplied grounded labelling fails its own legality check")

    undec = sorted(grounded.undec_set)
    found: List[Labelling] = []

    # search states: the IN/not-IN decision per argument, with full
    # characteristic-function propagation. Committing a to IN forces its
    # attackers and targets OUT; any argument whose attackers are all OUT is
    # forced IN in turn. "not-IN" arguments end up OUT (if attacked by IN)
    # or UNDEC.
    S_IN, S_OUT, S_NOTIN = 1, 2, 3

    def set_in(a: int, state: Dict[int, int]) -> bool:
        current = state.get(a)
        if current == S_IN:
            return True
        if current in (S_OUT, S_NOTIN):
            return False
        if (a, a) in f.attacks:
            return False
        state[a] = S_IN
        for b in f.attackers_of(a) | f.targets_of(a):
            if not set_out(b, state):
                return False
        return True

    def set_out(a: int, state: Dict[int, int]) -> bool:
        current = state.get(a)
        if current == S_OUT:
            return True
        if current == S_IN:
            return False
        state[a] = S_OUT
        # anything now defended (all attackers OUT) is forced IN
        for c in f.targets_of(a):
            if state.get(c) != S_OUT and all(
                    state.get(b) == S_OUT for b in f.attackers_of(c)):
                if not set_in(c, state):
                    return False
        return True

    def set_notin(a: int, state: Dict[int, int]) -> bool:
        current = state.get(a)
        if current in (S_OUT, S_NOTIN):
            return True
        if current == S_IN:
            return False
        if f.attackers_of(a) and all(
                state.get(b) == S_OUT for b in f.attackers_of(a)):
            return False  # fully defended, would be forced IN
        state[a] = S_NOTIN
        return True

    def leaf(state: Dict[int, int]) -> None:
        labels = {}
        for a in f.arguments:
            s = state[a]
            if s == S_IN:
                labels[a] = Label.IN
            elif s == S_OUT:
                labels[a] = Label.OUT
            else:
                labels[a] = Label.UNDEC
        candidate = Labelling(labels)
        if check_legality(f, candidate).complete:
            found.append(candidate)

    def branch(state: Dict[int, int]) -> None:
        pick = next((u for u in undec if u not in state), None)
        if pick is None:
            leaf(state)
            return
        trial = dict(state)
        if set_in(pick, trial):
            branch(trial)
        trial = dict(state)
        if set_notin(pick, trial):
            branch(trial)

    initial: Dict[int, int] = {}
    for a, v in grounded.assignment.items():
        if v is Label.IN:
            initial[a] = S_IN
        elif v is Label.OUT:
            initial[a] = S_OUT
    branch(initial)

    # deterministic lexicographic order by sorted IN set
    found.sort(key=lambda lab: lab.sorted_in())
    completes = tuple((lab, _verification_trace(f, grounded, lab)) for lab in found)
    _, grounded_trace = solve_grounded(f)
    return CompleteSolution((grounded, grounded_trace), completes)


def filter_semantics(sol: CompleteSolution, kind: SemanticsKind) -> List[Labelling]:
    """Select the labellings of one semantics from the complete set."""
    labs = sol.labellings()
    if kind is SemanticsKind.COMPLETE:
        return list(labs)
    if kind is SemanticsKind.STABLE:
        return [l for l in labs if not l.undec_set]
    if kind is SemanticsKind.GROUNDED:
        return [l for l in labs
                if not any(m.in_set < l.in_set for m in labs)]
    if kind is SemanticsKind.PREFERRED:
        return [l for l in labs
                if not any(m.in_set > l.in_set for m in labs)]
    raise ValueError(f"unknown semantics kind {kind!r}")


def solve(f: Framework, kind: SemanticsKind) -> List[Labelling]:
    """Convenience wrapper: labellings of ``f`` under one semantics."""
    grounded, _ = solve_grounded(f)
    if kind is SemanticsKind.GROUNDED:
        return [grounded]
    return filter_semantics(enumerate_complete(f, grounded), kind)


def oracle_all_labellings(f: Framework,
                          cap: int = ORACLE_DEFAULT_CAP
                          ) -> Dict[SemanticsKind, List[Labelling]]:
    """Brute-force ground truth: sweep all 3^n labellings and classify each
    by literal application of the legality definitions.

    Kept deliberately independent of the solver so the two can check each
    other.
    """
    args = sorted(f.arguments)
    if len(args) > cap:
        raise TooLargeError(f"{len(args)} arguments exceeds the oracle cap of {cap}")
    completes: List[Labelling] = []
    for values in itertools.product((Label.IN, Label.OUT, Label.UNDEC),
                                    repeat=len(args)):
        lab = Labelling(dict(zip(args, values)))
        if check_legality(f, lab).complete:
            completes.append(lab)
    completes.sort(key=lambda lab: lab.sorted_in())
    grounded = [l for l in completes
                if not any(m.in_set < l.in_set for m in completes)]
    preferred = [l for l in completes
                 if not any(m.in_set > l.in_set for m in completes)]
    stable = [l for l in completes if not l.undec_set]
    return {
        SemanticsKind.COMPLETE: completes,
        SemanticsKind.GROUNDED: grounded,
        SemanticsKind.PREFERRED: preferred,
        SemanticsKind.STABLE: stable,
    }
