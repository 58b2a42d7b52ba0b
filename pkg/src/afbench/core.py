"""Frameworks, labellings, and the legality predicates everything else builds on.

An abstract argumentation framework is a set of integer-named arguments plus a
binary attack relation. A labelling assigns IN / OUT / UNDEC to every argument;
the per-argument legality clauses and the derived admissible / complete /
stable notions follow the standard labelling-based definitions.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Dict, FrozenSet, Iterable, Mapping, Set, Tuple

from .errors import (
    InconsistentInputError,
    PartialLabellingError,
    UnknownArgumentError,
)


class Label(str, Enum):
    IN = "IN"
    OUT = "OUT"
    UNDEC = "UNDEC"

    def __str__(self) -> str:
        return self.value


class SemanticsKind(str, Enum):
    GROUNDED = "grounded"
    COMPLETE = "complete"
    PREFERRED = "preferred"
    STABLE = "stable"

    def __str__(self) -> str:
        return self.value

    @classmethod
    def from_code(cls, code: str) -> "SemanticsKind":
        """Resolve either the full name or the short code (grd/com/prf/stb)."""
        table = {
            "grd": cls.GROUNDED,
            "com": cls.COMPLETE,
            "prf": cls.PREFERRED,
            "stb": cls.STABLE,
        }
        if code in table:
            return table[code]
        return cls(code)

    @property
    def code(self) -> str:
        return {"grounded": "grd", "complete": "com",
                "preferred": "prf", "stable": "stb"}[self.value]


class Framework:
    """Immutable argumentation framework: argument set + attack relation.

    Argument identifiers are arbitrary non-negative integers; they are never
    renumbered. Self-attacks are allowed.
    """

    __slots__ = ("arguments", "attacks", "_attackers", "_targets")

    def __init__(self, arguments: Iterable[int], attacks: Iterable[Tuple[int, int]]):
        args = frozenset(arguments)
        atts = frozenset((int(a), int(b)) for a, b in attacks)
        for a in args:
            if not isinstance(a, int) or a < 0:
                raise ValueError(f"argument identifiers must be non-negative ints, got {a!r}")
        for a, b in atts:
            if a not in args or b not in args:
                raise UnknownArgumentError(f"attack ({a}, {b}) mentions an unknown argument")
        self.arguments: FrozenSet[int] = args
        self.attacks: FrozenSet[Tuple[int, int]] = atts
        attackers: Dict[int, Set[int]] = {a: set() for a in args}
        targets: Dict[int, Set[int]] = {a: set() for a in args}
        for a, b in atts:
            attackers[b].add(a)
            targets[a].add(b)
        self._attackers = {a: frozenset(s) for a, s in attackers.items()}
        self._targets = {a: frozenset(s) for a, s in targets.items()}

    def attackers_of(self, a: int) -> FrozenSet[int]:
        self._require(a)
        return self._attackers[a]

    def targets_of(self, a: int) -> FrozenSet[int]:
        self._require(a)
        return self._targets[a]

    def _require(self, a: int) -> None:
        if a not in self.arguments:
            raise UnknownArgumentError(f"argument {a} is not in the framework")

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Framework):
            return NotImplemented
        return self.arguments == other.arguments and self.attacks == other.attacks

    def __hash__(self) -> int:
        return hash((self.arguments, self.attacks))

    def __repr__(self) -> str:
        return (f"Framework(arguments={sorted(self.arguments)}, "
                f"attacks={sorted(self.attacks)})")


class Labelling:
    """Total assignment of IN/OUT/UNDEC to the arguments of one framework."""

    __slots__ = ("assignment",)

    def __init__(self, assignment: Mapping[int, Label]):
        self.assignment: Dict[int, Label] = {int(a): Label(v) for a, v in assignment.items()}

    @classmethod
    def from_sets(cls, in_args: Iterable[int], out_args: Iterable[int],
                  undec_args: Iterable[int]) -> "Labelling":
        assignment: Dict[int, Label] = {}
        for group, label in ((in_args, Label.IN), (out_args, Label.OUT),
                             (undec_args, Label.UNDEC)):
            for a in group:
                if a in assignment:
                    raise ValueError(f"argument {a} appears in two label sets")
                assignment[a] = label
        return cls(assignment)

    def label_of(self, a: int) -> Label:
        return self.assignment[a]

    @property
    def in_set(self) -> FrozenSet[int]:
        return frozenset(a for a, v in self.assignment.items() if v is Label.IN)

    @property
    def out_set(self) -> FrozenSet[int]:
        return frozenset(a for a, v in self.assignment.items() if v is Label.OUT)

    @property
    def undec_set(self) -> FrozenSet[int]:
        return frozenset(a for a, v in self.assignment.items() if v is Label.UNDEC)

    def sorted_in(self) -> Tuple[int, ...]:
        return tuple(sorted(self.in_set))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Labelling):
            return NotImplemented
        return self.assignment == other.assignment

    def __hash__(self) -> int:
        return hash(frozenset(self.assignment.items()))

    def __repr__(self) -> str:
        parts = ", ".join(f"{a}:{self.assignment[a]}" for a in sorted(self.assignment))
        return f"Labelling({{{parts}}})"


@dataclass(frozen=True)
class ArgumentVerdict:
    """Legality outcome for a single argument under one labelling."""

    argument: int
    label: Label
    legal: bool
    #: human-readable statement of the clause that was checked / violated
    clause: str


@dataclass(frozen=True)
class LegalityReport:
    verdicts: Tuple[ArgumentVerdict, ...]
    admissible: bool
    complete: bool
    stable: bool

    def verdict_for(self, a: int) -> ArgumentVerdict:
        for v in self.verdicts:
            if v.argument == a:
                return v
        raise UnknownArgumentError(f"no verdict for argument {a}")


def _check_argument(f: Framework, l: Labelling, a: int) -> ArgumentVerdict:
    label = l.label_of(a)
    attackers = f.attackers_of(a)
    attacker_labels = [l.label_of(b) for b in attackers]
    if label is Label.IN:
        bad = sorted(b for b in attackers if l.label_of(b) is not Label.OUT)
        if bad:
            return ArgumentVerdict(a, label, False,
                                   f"illegally IN: attacker(s) {bad} are not OUT")
        return ArgumentVerdict(a, label, True, "legally IN: every attacker is OUT")
    if label is Label.OUT:
        if any(v is Label.IN for v in attacker_labels):
            return ArgumentVerdict(a, label, True, "legally OUT: some attacker is IN")
        return ArgumentVerdict(a, label, False, "illegally OUT: no attacker is IN")
    # UNDEC: not every attacker OUT, and no attacker IN
    if attackers and all(v is Label.OUT for v in attacker_labels):
        return ArgumentVerdict(a, label, False,
                               "illegally UNDEC: every attacker is OUT")
    if not attackers:
        return ArgumentVerdict(a, label, False,
                               "illegally UNDEC: the argument is unattacked")
    if any(v is Label.IN for v in attacker_labels):
        return ArgumentVerdict(a, label, False,
                               "illegally UNDEC: some attacker is IN")
    return ArgumentVerdict(a, label, True,
                           "legally UNDEC: no attacker is IN and not all are OUT")


def check_legality(f: Framework, l: Labelling) -> LegalityReport:
    """Apply the three per-argument legality clauses and the aggregate flags."""
    if set(l.assignment) != set(f.arguments):
        raise PartialLabellingError(
            f"labelling covers {sorted(l.assignment)} but framework has "
            f"{sorted(f.arguments)}")
    verdicts = tuple(_check_argument(f, l, a) for a in sorted(f.arguments))
    illegal = {v.argument: v for v in verdicts if not v.legal}
    admissible = not any(v.label in (Label.IN, Label.OUT) for v in illegal.values())
    complete = admissible and not any(v.label is Label.UNDEC for v in illegal.values())
    stable = complete and not l.undec_set
    return LegalityReport(verdicts, admissible, complete, stable)


def is_conflict_free(f: Framework, s: Iterable[int]) -> bool:
    """True iff no attack has both endpoints inside s."""
    members = set(s)
    for a in members:
        f._require(a)
    return not any((a, b) in f.attacks for a in members for b in members)


def defends(f: Framework, s: Iterable[int], a: int) -> bool:
    """True iff every attacker of a is attacked by some member of s."""
    f._require(a)
    members = set(s)
    for m in members:
        f._require(m)
    return all(
        any((c, b) in f.attacks for c in members)
        for b in f.attackers_of(a)
    )


def classify_labelling(f: Framework, l: Labelling,
                       all_complete: Iterable[Labelling]) -> Set[SemanticsKind]:
    """Which of the four semantics a labelling satisfies.

    ``all_complete`` must be exactly the complete-labelling set of ``f``;
    grounded/preferred status is decided by IN-set minimality/maximality
    against that set.
    """
    complete_set = list(all_complete)
    report = check_legality(f, l)
    if not report.complete:
        return set()
    if l not in complete_set:
        raise InconsistentInputError(
            "labelling is complete but missing from the supplied complete set")
    kinds = {SemanticsKind.COMPLETE}
    my_in = l.in_set
    if not any(m.in_set < my_in for m in complete_set):
        kinds.add(SemanticsKind.GROUNDED)
    if not any(m.in_set > my_in for m in complete_set):
        kinds.add(SemanticsKind.PREFERRED)
    if not l.undec_set:
        kinds.add(SemanticsKind.STABLE)
    return kinds
