"""Framework text formats (DOT / GraphML / JSON) and the answer object.

All three formats round-trip: ``parse_framework(serialize_framework(f, fmt),
fmt) == f``. The answer object is the JSON record with the three sorted label
sets; ``parse_answer`` digs it out of free-form model output.

Format subsets:

* DOT: ``digraph`` header, optional name, statements ``<int>;`` and
  ``<int> -> <int>;``; ``//`` and ``/* */`` comments; ``[...]`` attribute
  lists are ignored. Edge endpoints are declared implicitly, as usual in DOT.
* GraphML: standard ``node``/``edge`` elements, node ids ``n<int>`` or bare
  ``<int>``, ``edgedefault="directed"`` required, edge endpoints must be
  declared nodes.
* JSON: ``{"arguments": [ints], "attacks": [[a, b], ...]}``; attack endpoints
  must appear in ``arguments``.
"""

from __future__ import annotations

import json
import xml.etree.ElementTree as ET
from dataclasses import dataclass
from enum import Enum
from typing import Iterable, List, Optional, Sequence, Tuple

from .core import Framework, Labelling
from .errors import (
    AnswerSchemaError,
    DanglingEdgeError,
    GraphSyntaxError,
    MixedFrameworkError,
    NoAnswerFoundError,
    NonIntegerIdError,
)


class GraphFormat(str, Enum):
    DOT = "dot"
    GRAPHML = "graphml"
    JSON = "json"

    def __str__(self) -> str:
        return self.value


# ---------------------------------------------------------------------------
# DOT


@dataclass
class _Token:
    text: str
    line: int
    column: int


def _tokenize_dot(text: str) -> List[_Token]:
    tokens: List[_Token] = []
    i, line, col = 0, 1, 1
    n = len(text)

    def advance(k: int) -> None:
        nonlocal i, line, col
        for _ in range(k):
            if i < n and text[i] == "\n":
                line += 1
                col = 1
            else:
                col += 1
            i += 1

    while i < n:
        c = text[i]
        if c in " \t\r\n":
            advance(1)
            continue
        if text.startswith("//", i):
            j = text.find("\n", i)
            advance((j - i) if j != -1 else (n - i))
            continue
        if text.startswith("/*", i):
            j = text.find("*/", i)
            if j == -1:
                raise GraphSyntaxError("unterminated block comment", line, col)
            advance(j + 2 - i)
            continue
        if text.startswith("->", i):
            tokens.append(_Token("->", line, col))
            advance(2)
            continue
        if c in "{};[]=,":
            tokens.append(_Token(c, line, col))
            advance(1)
            continue
        if c == '"':
            j = i + 1
            while j < n and text[j] != '"':
                j += 2 if text[j] == "\\" else 1
            if j >= n:
                raise GraphSyntaxError("unterminated string", line, col)
            tokens.append(_Token(text[i:j + 1], line, col))
            advance(j + 1 - i)
            continue
        if c.isalnum() or c == "_":
            j = i
            while j < n and (text[j].isalnum() or text[j] == "_"):
                j += 1
            tokens.append(_Token(text[i:j], line, col))
            advance(j - i)
            continue
        raise GraphSyntaxError(f"unexpected character {c!r}", line, col)
    return tokens


def _parse_dot(text: str) -> Framework:
    tokens = _tokenize_dot(text)
    pos = 0

    def peek() -> Optional[_Token]:
        return tokens[pos] if pos < len(tokens) else None

    def take(expected: Optional[str] = None) -> _Token:
        nonlocal pos
        tok = peek()
        if tok is None:
            last = tokens[-1] if tokens else _Token("", 1, 1)
            raise GraphSyntaxError(
                f"unexpected end of input, expected {expected or 'more input'}",
                last.line, last.column)
        if expected is not None and tok.text != expected:
            raise GraphSyntaxError(
                f"expected {expected!r}, found {tok.text!r}", tok.line, tok.column)
        pos += 1
        return tok

    def node_id(tok: _Token) -> int:
        if not tok.text.isdigit():
            raise NonIntegerIdError(
                f"node identifier {tok.text!r} is not a non-negative integer",
                tok.line, tok.column)
        return int(tok.text)

    def skip_attributes() -> None:
        nonlocal pos
        if peek() is not None and peek().text == "[":
            depth = 0
            while True:
                tok = take()
                if tok.text == "[":
                    depth += 1
                elif tok.text == "]":
                    depth -= 1
                    if depth == 0:
                        return

    head = take()
    if head.text != "digraph":
        raise GraphSyntaxError(
            f"expected 'digraph', found {head.text!r}", head.line, head.column)
    if peek() is not None and peek().text != "{":
        take()  # optional graph name
    take("{")

    arguments: set = set()
    attacks: set = set()
    while True:
        tok = peek()
        if tok is None:
            raise GraphSyntaxError("missing closing '}'", head.line, head.column)
        if tok.text == "}":
            take()
            break
        first = node_id(take())
        arguments.add(first)
        if peek() is not None and peek().text == "->":
            take("->")
            second = node_id(take())
            arguments.add(second)
            attacks.add((first, second))
        skip_attributes()
        if peek() is not None and peek().text == ";":
            take(";")
    if peek() is not None:
        tok = peek()
        raise GraphSyntaxError(
            f"trailing content {tok.text!r} after graph", tok.line, tok.column)
    return Framework(arguments, attacks)


def _serialize_dot(f: Framework) -> str:
    lines = ["digraph {"]
    lines.extend(f"  {a};" for a in sorted(f.arguments))
    lines.extend(f"  {a} -> {b};" for a, b in sorted(f.attacks))
    lines.append("}")
    return "\n".join(lines)


# ---------------------------------------------------------------------------
# GraphML

_GRAPHML_NS = "http://graphml.graphdrawing.org/xmlns"


def _local_name(tag: str) -> str:
    return tag.rsplit("}", 1)[-1]


def _graphml_node_id(raw: str, line: int = None) -> int:
    body = raw[1:] if raw.startswith("n") else raw
    if not body.isdigit():
        raise NonIntegerIdError(
            f"node id {raw!r} is neither 'n<int>' nor a bare non-negative integer",
            line, None if line is None else 0)
    return int(body)


def _parse_graphml(text: str) -> Framework:
    try:
        root = ET.fromstring(text)
    except ET.ParseError as exc:
        line, col = exc.position
        raise GraphSyntaxError(f"XML parse error: {exc.msg}", line, col) from exc
    if _local_name(root.tag) != "graphml":
        raise GraphSyntaxError(f"root element is {_local_name(root.tag)!r}, "
                               "expected 'graphml'")
    graphs = [el for el in root if _local_name(el.tag) == "graph"]
    if len(graphs) != 1:
        raise GraphSyntaxError(f"expected exactly one <graph>, found {len(graphs)}")
    graph = graphs[0]
    if graph.get("edgedefault") != "directed":
        raise GraphSyntaxError('graph must declare edgedefault="directed"')

    raw_ids = {}
    arguments = set()
    for el in graph:
        if _local_name(el.tag) == "node":
            raw = el.get("id")
            if raw is None:
                raise GraphSyntaxError("node element without id attribute")
            arg = _graphml_node_id(raw)
            raw_ids[raw] = arg
            arguments.add(arg)
    attacks = set()
    for el in graph:
        if _local_name(el.tag) == "edge":
            src, dst = el.get("source"), el.get("target")
            if src is None or dst is None:
                raise GraphSyntaxError("edge element without source/target")
            if src not in raw_ids or dst not in raw_ids:
                missing = src if src not in raw_ids else dst
                raise DanglingEdgeError(
                    f"edge endpoint {missing!r} references an undeclared node")
            attacks.add((raw_ids[src], raw_ids[dst]))
    return Framework(arguments, attacks)


def _serialize_graphml(f: Framework) -> str:
    lines = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<graphml xmlns="{_GRAPHML_NS}">',
        '  <graph id="G" edgedefault="directed">',
    ]
    lines.extend(f'    <node id="n{a}"/>' for a in sorted(f.arguments))
    lines.extend(f'    <edge source="n{a}" target="n{b}"/>'
                 for a, b in sorted(f.attacks))
    lines.append("  </graph>")
    lines.append("</graphml>")
    return "\n".join(lines)


# ---------------------------------------------------------------------------
# JSON framework


def _parse_json_framework(text: str) -> Framework:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise GraphSyntaxError(f"JSON parse error: {exc.msg}",
                               exc.lineno, exc.colno) from exc
    if not isinstance(obj, dict) or "arguments" not in obj or "attacks" not in obj:
        raise GraphSyntaxError(
            "framework object must have 'arguments' and 'attacks' fields")
    args = obj["arguments"]
    if not isinstance(args, list) or not all(
            isinstance(a, int) and not isinstance(a, bool) and a >= 0 for a in args):
        raise NonIntegerIdError("'arguments' must be a list of non-negative integers")
    attacks = obj["attacks"]
    if not isinstance(attacks, list) or not all(
            isinstance(p, list) and len(p) == 2 and
            all(isinstance(x, int) and not isinstance(x, bool) for x in p)
            for p in attacks):
        raise GraphSyntaxError("'attacks' must be a list of 2-element integer arrays")
    arg_set = set(args)
    for a, b in attacks:
        if a not in arg_set or b not in arg_set:
            raise DanglingEdgeError(
                f"attack [{a}, {b}] references an argument missing from 'arguments'")
    return Framework(arg_set, [tuple(p) for p in attacks])


def _serialize_json_framework(f: Framework) -> str:
    obj = {
        "arguments": sorted(f.arguments),
        "attacks": [[a, b] for a, b in sorted(f.attacks)],
    }
    return json.dumps(obj, separators=(",", ":"))


# ---------------------------------------------------------------------------
# public framework API


def parse_framework(text: str, fmt: GraphFormat) -> Framework:
    """Parse framework text in the given format."""
    if not text.strip():
        raise GraphSyntaxError("empty input", 1, 1)
    fmt = GraphFormat(fmt)
    if fmt is GraphFormat.DOT:
        return _parse_dot(text)
    if fmt is GraphFormat.GRAPHML:
        return _parse_graphml(text)
    return _parse_json_framework(text)


def serialize_framework(f: Framework, fmt: GraphFormat) -> str:
    """Canonical text for a framework: nodes ascending, edges lexicographic."""
    fmt = GraphFormat(fmt)
    if fmt is GraphFormat.DOT:
        return _serialize_dot(f)
    if fmt is GraphFormat.GRAPHML:
        return _serialize_graphml(f)
    return _serialize_json_framework(f)


# ---------------------------------------------------------------------------
# answer objects


@dataclass(frozen=True)
class LabellingRecord:
    in_args: Tuple[int, ...]
    out_args: Tuple[int, ...]
    undec_args: Tuple[int, ...]

    def to_dict(self) -> dict:
        return {"IN": list(self.in_args), "OUT": list(self.out_args),
                "UNDEC": list(self.undec_args)}

    def to_labelling(self) -> Labelling:
        return Labelling.from_sets(self.in_args, self.out_args, self.undec_args)


@dataclass(frozen=True)
class AnswerObject:
    records: Tuple[LabellingRecord, ...]

    @property
    def in_sets(self) -> List[frozenset]:
        return [frozenset(r.in_args) for r in self.records]

    def covers_arguments(self, arguments: Iterable[int]) -> bool:
        target = frozenset(arguments)
        return all(
            frozenset(r.in_args) | frozenset(r.out_args) | frozenset(r.undec_args)
            == target
            for r in self.records)


def _record_from_labelling(lab: Labelling) -> LabellingRecord:
    return LabellingRecord(tuple(sorted(lab.in_set)), tuple(sorted(lab.out_set)),
                           tuple(sorted(lab.undec_set)))


def serialize_answer(labellings: Sequence[Labelling]) -> str:
    """Answer text: one record for a single labelling, otherwise a JSON array
    of records in lexicographic IN-set order. All label sets are ascending."""
    if not labellings:
        raise ValueError("labellings must be non-empty")
    arg_sets = {frozenset(l.assignment) for l in labellings}
    if len(arg_sets) != 1:
        raise MixedFrameworkError("labellings cover different argument sets")
    records = sorted((_record_from_labelling(l) for l in labellings),
                     key=lambda r: r.in_args)
    if len(records) == 1:
        return json.dumps(records[0].to_dict(), separators=(",", ":"))
    return json.dumps([r.to_dict() for r in records], separators=(",", ":"))


def serialize_answer_list(labellings: Sequence[Labelling]) -> str:
    """Like ``serialize_answer`` but always a JSON array, possibly empty;
    used for multi-extension semantics where zero labellings can occur."""
    if not labellings:
        return "[]"
    arg_sets = {frozenset(l.assignment) for l in labellings}
    if len(arg_sets) != 1:
        raise MixedFrameworkError("labellings cover different argument sets")
    records = sorted((_record_from_labelling(l) for l in labellings),
                     key=lambda r: r.in_args)
    return json.dumps([r.to_dict() for r in records], separators=(",", ":"))


def _coerce_record(obj: object) -> Optional[LabellingRecord]:
    if not isinstance(obj, dict):
        return None
    if not {"IN", "OUT", "UNDEC"} <= set(obj):
        return None
    sets = []
    for key in ("IN", "OUT", "UNDEC"):
        val = obj[key]
        if not isinstance(val, list) or not all(
                isinstance(x, int) and not isinstance(x, bool) for x in val):
            return None
        sets.append(tuple(sorted(set(val))))
    ins, outs, undecs = sets
    if set(ins) & set(outs) or set(ins) & set(undecs) or set(outs) & set(undecs):
        return None
    return LabellingRecord(ins, outs, undecs)


def _coerce_answer(value: object) -> Optional[AnswerObject]:
    if isinstance(value, dict):
        rec = _coerce_record(value)
        return AnswerObject((rec,)) if rec is not None else None
    if isinstance(value, list):
        records = [_coerce_record(v) for v in value]
        if records and all(r is not None for r in records):
            return AnswerObject(tuple(records))
    return None


def parse_answer(text: str) -> AnswerObject:
    """Extract the last valid answer object from free-form model text.

    Prose, code fences, and whitespace around the JSON are tolerated; lists
    are sorted ascending on the way in. Raises ``NoAnswerFoundError`` when no
    JSON value exists at all and ``AnswerSchemaError`` when JSON was found but
    nothing matches the answer schema.
    """
    decoder = json.JSONDecoder()
    best: Optional[AnswerObject] = None
    saw_json = False
    i = 0
    while i < len(text):
        if text[i] not in "{[":
            i += 1
            continue
        try:
            value, end = decoder.raw_decode(text, i)
        except json.JSONDecodeError:
            i += 1
            continue
        saw_json = True
        answer = _coerce_answer(value)
        if answer is not None:
            best = answer
            i = end
        else:
            # keep scanning inside non-matching containers
            i += 1
    if best is not None:
        return best
    if saw_json:
        raise AnswerSchemaError(
            "JSON found but no value carries the IN/OUT/UNDEC label sets")
    raise NoAnswerFoundError("no syntactically valid JSON value in text")
