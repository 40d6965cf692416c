"""Plain-text document format for games, scenarios, morphisms and empirical models.

Grammar (one document per file)::

    document  := header (blank | comment | section | row)*
    header    := "format" SP kind SP version NL
    kind      := "game" | "scenario" | "game-morphism" | "scenario-morphism" | "model"
    section   := "[" name "]" NL
    row       := value (SP value)* NL
    value     := atom | string | set
    set       := "{" [item ("," item)*] "}"
    item      := value | value "=" value          (all items of one set use the same form)
    atom      := [A-Za-z0-9_.:@|+*/^~!$%&?<>'-]+
    string    := '"' JSON string body '"'
    comment   := "#" to end of line

A set whose items are ``key=value`` pairs is an event map (an assignment);
otherwise it is a plain set.  Rationals are atoms ``p/q``.  Serialization is
canonical: rows are sorted and atoms are written bare whenever possible, so
``serialize(parse(text))`` is a fixed point.
"""

from __future__ import annotations

import json
import re
from collections.abc import Mapping
from dataclasses import dataclass, field
from typing import Any

from ._maps import EventSet, FrozenMap, History, action_key
from .categories import GameMorphism, ScenarioMorphism
from .cover import Cover
from .empirical import EmpiricalModel, LocalDistribution, as_semiring
from .errors import CyclicGraph, DocumentSemanticError, DocumentSyntaxError, SpacetimeError
from .game import NATURE, OBSERVER, SpacetimeGame
from .scenario import Scenario

VERSION = 1
KINDS = ("game", "scenario", "game-morphism", "scenario-morphism", "model")
_ATOM = re.compile(r"[A-Za-z0-9_.:@|+*/^~!$%&?<>'\-]+")


# -- values ----------------------------------------------------------------------------


def _value_key(v) -> tuple:
    if isinstance(v, Mapping):
        return (2, tuple(sorted((_value_key(k), _value_key(x)) for k, x in v.items())))
    if isinstance(v, (frozenset, set)):
        return (1, tuple(sorted(_value_key(x) for x in v)))
    return (0, str(v))


def format_value(v) -> str:
    if isinstance(v, Mapping):
        items = sorted(v.items(), key=lambda kv: _value_key(kv[0]))
        return "{" + ",".join(f"{format_value(k)}={format_value(x)}" for k, x in items) + "}"
    if isinstance(v, (frozenset, set)):
        return "{" + ",".join(format_value(x) for x in sorted(v, key=_value_key)) + "}"
    s = str(v)
    if _ATOM.fullmatch(s):
        return s
    return json.dumps(s, ensure_ascii=False)


@dataclass
class Row:
    line: int
    values: list
    columns: list[int]

    def at(self, k: int) -> int:
        return self.columns[k] if k < len(self.columns) else self.columns[-1]


@dataclass
class Document:
    kind: str
    version: int
    sections: dict[str, list[Row]] = field(default_factory=dict)
    section_lines: dict[str, int] = field(default_factory=dict)

    def rows(self, name: str) -> list[Row]:
        return self.sections.get(name, [])

    def require(self, name: str) -> list[Row]:
        if name not in self.sections:
            raise DocumentSemanticError(f"missing section [{name}]", 1)
        return self.sections[name]

    def meta(self, prefix: str = "") -> dict[str, tuple[Any, Row]]:
        out = {}
        for r in self.rows(prefix + "meta"):
            if len(r.values) != 3 or r.values[1] != "=" or not isinstance(r.values[0], str):
                raise DocumentSyntaxError("meta rows have the form 'key = value'", r.line, r.at(0))
            out[r.values[0]] = (r.values[2], r)
        return out


class _Lexer:
    def __init__(self, text: str, line: int):
        self.text = text
        self.pos = 0
        self.line = line

    def error(self, msg: str):
        raise DocumentSyntaxError(msg, self.line, self.pos + 1)

    def skip_ws(self):
        while self.pos < len(self.text) and self.text[self.pos] in " \t":
            self.pos += 1

    def at_end(self) -> bool:
        self.skip_ws()
        return self.pos >= len(self.text) or self.text[self.pos] == "#"

    def value(self):
        self.skip_ws()
        if self.pos >= len(self.text):
            self.error("expected a value")
        c = self.text[self.pos]
        if c == "{":
            return self.set_()
        if c == '"':
            return self.string()
        m = _ATOM.match(self.text, self.pos)
        if not m:
            self.error(f"unexpected character {c!r}")
        self.pos = m.end()
        return m.group()

    def string(self):
        try:
            s, end = json.JSONDecoder().raw_decode(self.text, self.pos)
        except json.JSONDecodeError:
            self.error("unterminated or malformed string")
        if not isinstance(s, str):
            self.error("expected a string")
        self.pos = end
        return s

    def set_(self):
        self.pos += 1
        items, pairs = [], []
        self.skip_ws()
        if self.pos < len(self.text) and self.text[self.pos] == "}":
            self.pos += 1
            return frozenset()
        while True:
            v = self.value()
            self.skip_ws()
            if self.pos < len(self.text) and self.text[self.pos] == "=":
                self.pos += 1
                pairs.append((v, self.value()))
                self.skip_ws()
            else:
                items.append(v)
            if items and pairs:
                self.error("a set mixes plain items and key=value pairs")
            if self.pos >= len(self.text):
                self.error("unterminated set")
            c = self.text[self.pos]
            self.pos += 1
            if c == "}":
                break
            if c != ",":
                self.pos -= 1
                self.error("expected ',' or '}'")
        if pairs:
            keys = [k for k, _ in pairs]
            if len(set(keys)) != len(keys):
                self.pos -= 1
                self.error("duplicate key in an assignment")
            return FrozenMap(pairs)
        return frozenset(items)

    def row(self) -> tuple[list, list[int]]:
        values, cols = [], []
        while not self.at_end():
            cols.append(self.pos + 1)
            if self.text[self.pos] == "=":
                self.pos += 1
                values.append("=")
            else:
                values.append(self.value())
        return values, cols


def parse_raw(text: str) -> Document:
    """Split a document into header and sections; no semantic checks."""
    doc = None
    current = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        stripped = raw.strip()
        if not stripped or stripped.startswith("#"):
            continue
        if doc is None:
            parts = stripped.split()
            if len(parts) != 3 or parts[0] != "format":
                raise DocumentSyntaxError("expected header 'format <kind> <version>'", lineno, 1)
            if parts[1] not in KINDS:
                raise DocumentSyntaxError(f"unknown document kind {parts[1]!r}", lineno, raw.index(parts[1]) + 1)
            if not parts[2].isdigit():
                raise DocumentSyntaxError("version must be an integer", lineno, raw.rindex(parts[2]) + 1)
            if int(parts[2]) != VERSION:
                raise DocumentSemanticError(f"unsupported version {parts[2]} (expected {VERSION})", lineno, raw.rindex(parts[2]) + 1)
            doc = Document(parts[1], int(parts[2]))
            continue
        if stripped.startswith("["):
            m = re.fullmatch(r"\[([A-Za-z0-9_.-]+)\]\s*(#.*)?", stripped)
            if not m:
                raise DocumentSyntaxError("malformed section header", lineno, raw.index("[") + 1)
            current = m.group(1)
            if current in doc.sections:
                raise DocumentSyntaxError(f"duplicate section [{current}]", lineno, raw.index("[") + 1)
            doc.sections[current] = []
            doc.section_lines[current] = lineno
            continue
        if current is None:
            raise DocumentSyntaxError("row outside of any section", lineno, len(raw) - len(raw.lstrip()) + 1)
        values, cols = _Lexer(raw, lineno).row()
        doc.sections[current].append(Row(lineno, values, cols))
    if doc is None:
        raise DocumentSyntaxError("empty document", 1, 1)
    return doc


# -- readers ---------------------------------------------------------------------------


def _atom(row: Row, k: int, what: str) -> str:
    if k >= len(row.values):
        raise DocumentSyntaxError(f"missing {what}", row.line, row.at(k))
    v = row.values[k]
    if not isinstance(v, str) or v == "=":
        raise DocumentSyntaxError(f"{what} must be an atom", row.line, row.at(k))
    return v


def _plain_set(row: Row, k: int, what: str) -> frozenset:
    if k >= len(row.values):
        raise DocumentSyntaxError(f"missing {what}", row.line, row.at(k))
    v = row.values[k]
    if isinstance(v, FrozenMap):
        if v:
            raise DocumentSyntaxError(f"{what} must be a plain set", row.line, row.at(k))
        return frozenset()
    if not isinstance(v, frozenset):
        raise DocumentSyntaxError(f"{what} must be a set", row.line, row.at(k))
    return v


def _assignment(row: Row, k: int, what: str) -> FrozenMap:
    if k >= len(row.values):
        raise DocumentSyntaxError(f"missing {what}", row.line, row.at(k))
    v = row.values[k]
    if v == frozenset():
        return FrozenMap()
    if not isinstance(v, FrozenMap):
        raise DocumentSyntaxError(f"{what} must be an assignment {{k=v,...}}", row.line, row.at(k))
    for key in v:
        if not isinstance(key, str):
            raise DocumentSyntaxError(f"{what} keys must be atoms", row.line, row.at(k))
    return v


def _arity(row: Row, n: int, shape: str):
    if len(row.values) != n:
        raise DocumentSyntaxError(f"expected a row of the form '{shape}'", row.line, row.at(min(n, len(row.values) - 1)))


def _semantic(exc: Exception, line: int, column: int | None = None):
    return DocumentSemanticError(str(exc), line, column)


def _read_game(doc: Document, prefix: str = "") -> SpacetimeGame:
    meta = doc.meta(prefix)
    nature = meta.get("nature", (NATURE, None))[0]
    observer = meta.get("observer", (OBSERVER, None))[0]
    players = meta["players"][0] if "players" in meta else None
    actions = meta["actions"][0] if "actions" in meta else None
    for key, (v, r) in meta.items():
        if key not in ("nature", "observer", "players", "actions"):
            raise DocumentSemanticError(f"unknown meta key {key!r}", r.line, r.at(0))
    owner, available, info_sets, node_line = {}, {}, {}, {}
    for r in doc.require(prefix + "nodes"):
        _arity(r, 4, "node owner info_set {actions}")
        n = _atom(r, 0, "node id")
        if n in owner:
            raise DocumentSemanticError(f"duplicate node {n}", r.line, r.at(0))
        owner[n] = _atom(r, 1, "owner")
        info_sets.setdefault(_atom(r, 2, "information set"), set()).add(n)
        available[n] = _plain_set(r, 3, "action set")
        node_line[n] = r
    edges, labels, edge_line = set(), {}, {}
    for r in doc.rows(prefix + "edges"):
        _arity(r, 3, "source target label")
        s, d = _atom(r, 0, "edge source"), _atom(r, 1, "edge target")
        for k, n in ((0, s), (1, d)):
            if n not in owner:
                raise DocumentSemanticError(f"edge mentions unknown node {n}", r.line, r.at(k))
        if (s, d) in edges:
            raise DocumentSemanticError(f"duplicate edge {s} {d}", r.line, r.at(0))
        edges.add((s, d))
        labels[(s, d)] = r.values[2]
        edge_line[(s, d)] = r
    outcomes = None
    if prefix + "outcomes" in doc.sections:
        outcomes = set()
        for r in doc.rows(prefix + "outcomes"):
            _arity(r, 1, "{info_set=action,...}")
            outcomes.add(History(_assignment(r, 0, "outcome")))
    try:
        return SpacetimeGame(
            nodes=frozenset(owner),
            edges=frozenset(edges),
            owner=owner,
            available=available,
            edge_label=labels,
            info_sets={i: frozenset(ns) for i, ns in info_sets.items()},
            outcomes=None if outcomes is None else frozenset(outcomes),
            players=None if players is None else frozenset(players),
            actions=None if actions is None else frozenset(actions),
            nature=nature,
            observer=observer,
        )
    except CyclicGraph as exc:
        cyc = exc.cycle
        row = next((edge_line[(a, b)] for a, b in zip(cyc, cyc[1:]) if (a, b) in edge_line), None)
        line = row.line if row else doc.section_lines.get(prefix + "edges", 1)
        raise DocumentSemanticError(str(exc), line, row.at(0) if row else None) from exc
    except SpacetimeError as exc:
        line = doc.section_lines.get(prefix + "nodes", 1)
        for n, r in node_line.items():
            if re.search(rf"(?<![\w.@:|+-]){re.escape(n)}(?![\w.@:|+-])", str(exc)):
                line = r.line
                break
        raise _semantic(exc, line) from exc


def _read_scenario(doc: Document, prefix: str = "") -> Scenario:
    measurements, outcomes = [], {}
    for r in doc.require(prefix + "measurements"):
        _arity(r, 2, "measurement {outcomes}")
        x = _atom(r, 0, "measurement")
        if x in outcomes:
            raise DocumentSemanticError(f"duplicate measurement {x}", r.line, r.at(0))
        measurements.append(x)
        outcomes[x] = _plain_set(r, 1, "outcome set")
    enabling = set()
    for r in doc.require(prefix + "enabling"):
        _arity(r, 2, "{events} measurement")
        enabling.add((EventSet(_assignment(r, 0, "event set")), _atom(r, 1, "measurement")))
    facets = []
    for r in doc.require(prefix + "cover"):
        _arity(r, 1, "{facet}")
        facets.append(_plain_set(r, 0, "facet"))
    line = doc.section_lines.get(prefix + "measurements", 1)
    try:
        return Scenario(tuple(measurements), outcomes, frozenset(enabling), Cover(frozenset(facets)))
    except SpacetimeError as exc:
        raise _semantic(exc, line) from exc


def _read_map(doc: Document, name: str) -> dict:
    out = {}
    for r in doc.require(name):
        _arity(r, 2, "target source")
        k = _atom(r, 0, "key")
        if k in out:
            raise DocumentSemanticError(f"duplicate entry for {k}", r.line, r.at(0))
        out[k] = _atom(r, 1, "image")
    return out


def _read_family(doc: Document, name: str) -> dict:
    out: dict = {}
    for r in doc.require(name):
        _arity(r, 3, "key from to")
        k = _atom(r, 0, "key")
        fam = out.setdefault(k, {})
        if r.values[1] in fam:
            raise DocumentSemanticError(f"duplicate entry for {k} {format_value(r.values[1])}", r.line, r.at(1))
        fam[r.values[1]] = r.values[2]
    return out


def _read_model(doc: Document) -> EmpiricalModel:
    scenario = _read_scenario(doc)
    meta = doc.meta()
    if "semiring" not in meta:
        raise DocumentSemanticError("model documents need 'semiring = <kind>' in [meta]", doc.section_lines.get("meta", 1))
    kind, mrow = meta["semiring"]
    try:
        sr = as_semiring(kind)
    except ValueError as exc:
        raise _semantic(exc, mrow.line, mrow.at(2)) from exc
    table: dict[frozenset, dict] = {f: {} for f in scenario.cover.facets}
    for r in doc.require("weights"):
        _arity(r, 2, "{assignment} value")
        a = EventSet(_assignment(r, 0, "assignment"))
        f = a.support
        if f not in table:
            raise DocumentSemanticError(f"assignment {a} is not over a cover facet", r.line, r.at(0))
        if a in table[f]:
            raise DocumentSemanticError(f"duplicate weight for {a}", r.line, r.at(0))
        v = _atom(r, 1, "weight")
        try:
            table[f][a] = sr.coerce(v)
        except (ValueError, ZeroDivisionError) as exc:
            raise _semantic(exc, r.line, r.at(1)) from exc
    try:
        locals_ = {f: LocalDistribution(f, w, sr) for f, w in table.items()}
        return EmpiricalModel(scenario, locals_, sr)
    except SpacetimeError as exc:
        raise _semantic(exc, doc.section_lines.get("weights", 1)) from exc


def parse_document(text: str):
    """Parse a document into a game, scenario, morphism or model, enforcing all invariants."""
    doc = parse_raw(text)
    if doc.kind == "game":
        return _read_game(doc)
    if doc.kind == "scenario":
        return _read_scenario(doc)
    if doc.kind == "model":
        return _read_model(doc)
    if doc.kind == "game-morphism":
        src, tgt = _read_game(doc, "source."), _read_game(doc, "target.")
        return GameMorphism(src, tgt, _read_map(doc, "nu"), _read_family(doc, "beta"))
    src, tgt = _read_scenario(doc, "source."), _read_scenario(doc, "target.")
    return ScenarioMorphism(src, tgt, _read_map(doc, "pi"), _read_family(doc, "alpha"))


# -- writers ---------------------------------------------------------------------------


def _row(*values) -> str:
    return " ".join(format_value(v) for v in values)


def _game_sections(g: SpacetimeGame, prefix: str = "") -> list[str]:
    out = [f"[{prefix}meta]"]
    out.append(f"nature = {format_value(g.nature)}")
    out.append(f"observer = {format_value(g.observer)}")
    out.append(f"players = {format_value(g.players)}")
    out.append(f"actions = {format_value(g.actions)}")
    out.append(f"[{prefix}nodes]")
    out.append("# node owner info_set actions")
    for n in sorted(g.nodes):
        out.append(_row(n, g.owner[n], g.iota[n], g.available[n]))
    out.append(f"[{prefix}edges]")
    out.append("# source target label")
    for s, d in sorted(g.edges):
        out.append(_row(s, d, g.edge_label[(s, d)]))
    out.append(f"[{prefix}outcomes]")
    for h in sorted(g.outcomes, key=_value_key):
        out.append(format_value(h))
    return out


def _scenario_sections(s: Scenario, prefix: str = "") -> list[str]:
    out = [f"[{prefix}measurements]"]
    for x in s.measurements:
        out.append(_row(x, s.outcomes[x]))
    out.append(f"[{prefix}enabling]")
    out.append("# events measurement")
    for t, x in sorted(s.enabling, key=lambda p: (_value_key(p[0]), p[1])):
        out.append(_row(t, x))
    out.append(f"[{prefix}cover]")
    for f in sorted(s.cover.facets, key=_value_key):
        out.append(format_value(f))
    return out


def _family_rows(family: Mapping) -> list[str]:
    out = []
    for k in sorted(family):
        for a in sorted(family[k], key=action_key):
            out.append(_row(k, a, family[k][a]))
    return out


def serialize(obj) -> str:
    """Canonical text for a game, scenario, morphism or empirical model."""
    if isinstance(obj, SpacetimeGame):
        lines = [f"format game {VERSION}"] + _game_sections(obj)
    elif isinstance(obj, Scenario):
        lines = [f"format scenario {VERSION}"] + _scenario_sections(obj)
    elif isinstance(obj, EmpiricalModel):
        lines = [f"format model {VERSION}", "[meta]", f"semiring = {obj.semiring.kind}"]
        lines += _scenario_sections(obj.scenario)
        lines.append("[weights]")
        for f in sorted(obj.locals, key=_value_key):
            d = obj.locals[f]
            for a in sorted(d.nonzero(), key=_value_key):
                lines.append(_row(a, obj.semiring.format(d[a])))
    elif isinstance(obj, GameMorphism):
        lines = [f"format game-morphism {VERSION}"]
        lines += _game_sections(obj.source, "source.") + _game_sections(obj.target, "target.")
        lines.append("[nu]")
        lines.append("# target_node source_node")
        lines += [_row(k, obj.nu_prime[k]) for k in sorted(obj.nu_prime)]
        lines.append("[beta]")
        lines.append("# target_info_set source_action target_action")
        lines += _family_rows(obj.beta)
    elif isinstance(obj, ScenarioMorphism):
        lines = [f"format scenario-morphism {VERSION}"]
        lines += _scenario_sections(obj.source, "source.") + _scenario_sections(obj.target, "target.")
        lines.append("[pi]")
        lines.append("# target_measurement source_measurement")
        lines += [_row(k, obj.pi_prime[k]) for k in sorted(obj.pi_prime)]
        lines.append("[alpha]")
        lines.append("# target_measurement source_outcome target_outcome")
        lines += _family_rows(obj.alpha)
    else:
        raise TypeError(f"cannot serialize {type(obj).__name__}")
    return "\n".join(lines) + "\n"


def document_kind(obj) -> str:
    for cls, kind in (
        (SpacetimeGame, "game"),
        (Scenario, "scenario"),
        (EmpiricalModel, "model"),
        (GameMorphism, "game-morphism"),
        (ScenarioMorphism, "scenario-morphism"),
    ):
        if isinstance(obj, cls):
            return kind
    raise TypeError(f"no document kind for {type(obj).__name__}")


__all__ = [
    "KINDS",
    "VERSION",
    "Document",
    "document_kind",
    "format_value",
    "parse_document",
    "parse_raw",
    "serialize",
]
