"""Quiver-with-relations presentations of gentle algebras.

The text format is line oriented::

    algebra <name>
    vertices: <id> <id> ...
    arrow <id>: <v> -> <v>
    relation <arrow> <arrow>

``#`` starts a comment and blank lines are ignored.  Vertices named by an
arrow line are added even if the ``vertices:`` line omits them.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Iterable


class PresentationError(ValueError):
    """A presentation file could not be parsed or is structurally unusable."""

    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        self.line = line
        self.column = column
        where = f"line {line}, column {column}: " if line is not None else ""
        super().__init__(where + message)


class DisconnectedQuiverError(PresentationError):
    """The quiver has more than one connected component."""


@dataclass(frozen=True)
class Arrow:
    id: str
    source: str
    target: str


@dataclass(frozen=True)
class GentlePresentation:
    """A finite quiver with quadratic monomial relations.

    ``relations`` holds ordered pairs ``(a, b)`` meaning the path "a then b"
    is zero, so ``target(a) == source(b)``.
    """

    name: str
    vertices: tuple[str, ...]
    arrows: tuple[Arrow, ...]
    relations: frozenset[tuple[str, str]] = field(default_factory=frozenset)

    def __post_init__(self) -> None:
        ids = [a.id for a in self.arrows]
        if len(set(ids)) != len(ids):
            dup = next(i for i in ids if ids.count(i) > 1)
            raise PresentationError(f"duplicate arrow id {dup!r}")
        known = set(self.vertices)
        for a in self.arrows:
            for v in (a.source, a.target):
                if v not in known:
                    raise PresentationError(f"arrow {a.id!r} uses unknown vertex {v!r}")
        by_id = {a.id: a for a in self.arrows}
        for a, b in self.relations:
            if a not in by_id or b not in by_id:
                missing = a if a not in by_id else b
                raise PresentationError(f"relation references unknown arrow {missing!r}")
            if by_id[a].target != by_id[b].source:
                raise PresentationError(f"relation ({a}, {b}) is not a composable pair")

    def arrow(self, arrow_id: str) -> Arrow:
        for a in self.arrows:
            if a.id == arrow_id:
                return a
        raise KeyError(arrow_id)

    def incoming(self, vertex: str) -> list[Arrow]:
        return [a for a in self.arrows if a.target == vertex]

    def outgoing(self, vertex: str) -> list[Arrow]:
        return [a for a in self.arrows if a.source == vertex]

    def is_relation(self, a: str, b: str) -> bool:
        return (a, b) in self.relations

    def sorted_relations(self) -> list[tuple[str, str]]:
        return sorted(self.relations)

    def to_text(self) -> str:
        lines = [f"algebra {self.name}", "vertices: " + " ".join(self.vertices)]
        lines += [f"arrow {a.id}: {a.source} -> {a.target}" for a in self.arrows]
        lines += [f"relation {a} {b}" for a, b in self.sorted_relations()]
        return "\n".join(lines) + "\n"

    def relabeled(self, vertex_map: dict[str, str], arrow_map: dict[str, str],
                  arrow_order: Iterable[str] | None = None) -> "GentlePresentation":
        """Rename vertices and arrows; optionally reorder the arrow list."""
        arrows = {a.id: a for a in self.arrows}
        order = list(arrow_order) if arrow_order is not None else [a.id for a in self.arrows]
        new_arrows = tuple(
            Arrow(arrow_map[i], vertex_map[arrows[i].source], vertex_map[arrows[i].target])
            for i in order
        )
        vertices = tuple(vertex_map[v] for v in self.vertices)
        relations = frozenset((arrow_map[a], arrow_map[b]) for a, b in self.relations)
        return GentlePresentation(self.name, vertices, new_arrows, relations)


_IDENT = r"[^\s:#]+"
_ARROW_RE = re.compile(rf"arrow\s+({_IDENT})\s*:\s*({_IDENT})\s*->\s*({_IDENT})\s*$")


def _strip_comment(line: str) -> str:
    pos = line.find("#")
    return line if pos < 0 else line[:pos]


def parse_presentation(text: str) -> GentlePresentation:
    """Parse the presentation grammar; errors carry 1-based line/column."""
    name = ""
    vertices: list[str] = []
    arrows: list[Arrow] = []
    arrow_lines: dict[str, int] = {}
    relations: list[tuple[str, str, int, int]] = []

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = _strip_comment(raw).rstrip()
        if not line.strip():
            continue
        col = len(line) - len(line.lstrip()) + 1
        body = line.strip()
        keyword = body.split()[0]
        if keyword == "algebra":
            parts = body.split()
            if len(parts) != 2:
                raise PresentationError("expected 'algebra <name>'", lineno, col)
            name = parts[1]
        elif keyword.startswith("vertices"):
            if not body.startswith("vertices:"):
                raise PresentationError("expected 'vertices:'", lineno, col)
            for v in body[len("vertices:"):].split():
                if v not in vertices:
                    vertices.append(v)
        elif keyword == "arrow":
            m = _ARROW_RE.match(body)
            if not m:
                raise PresentationError("expected 'arrow <id>: <v> -> <v>'", lineno, col)
            aid, src, tgt = m.groups()
            if aid in arrow_lines:
                raise PresentationError(
                    f"duplicate arrow id {aid!r} (first defined on line {arrow_lines[aid]})",
                    lineno, col + body.index(aid))
            arrow_lines[aid] = lineno
            arrows.append(Arrow(aid, src, tgt))
            for v in (src, tgt):
                if v not in vertices:
                    vertices.append(v)
        elif keyword == "relation":
            parts = body.split()
            if len(parts) != 3:
                raise PresentationError("expected 'relation <arrow> <arrow>'", lineno, col)
            relations.append((parts[1], parts[2], lineno, col))
        else:
            raise PresentationError(f"unknown keyword {keyword!r}", lineno, col)

    by_id = {a.id: a for a in arrows}
    pairs = set()
    for a, b, lineno, col in relations:
        for token in (a, b):
            if token not in by_id:
                raise PresentationError(f"relation references unknown arrow {token!r}", lineno, col)
        if by_id[a].target != by_id[b].source:
            raise PresentationError(
                f"relation ({a}, {b}) is not composable: {a} ends at {by_id[a].target}, "
                f"{b} starts at {by_id[b].source}", lineno, col)
        pairs.add((a, b))
    if not vertices:
        raise PresentationError("presentation has no vertices")
    p = GentlePresentation(name or "unnamed", tuple(vertices), tuple(arrows), frozenset(pairs))
    _require_connected(p)
    return p


def _require_connected(p: GentlePresentation) -> None:
    adjacency: dict[str, set[str]] = {v: set() for v in p.vertices}
    for a in p.arrows:
        adjacency[a.source].add(a.target)
        adjacency[a.target].add(a.source)
    start = min(p.vertices)
    seen = {start}
    stack = [start]
    while stack:
        for w in adjacency[stack.pop()]:
            if w not in seen:
                seen.add(w)
                stack.append(w)
    if len(seen) != len(p.vertices):
        missing = sorted(set(p.vertices) - seen)
        raise DisconnectedQuiverError(
            f"quiver is disconnected; vertices {missing} are unreachable from {start!r}")


@dataclass(frozen=True)
class Classification:
    kind: str  # "gentle", "locally-gentle-infinite" or "invalid"
    reason: str = ""

    @property
    def is_gentle(self) -> bool:
        return self.kind == "gentle"

    def __str__(self) -> str:
        return self.kind if not self.reason else f"{self.kind}({self.reason})"


def local_violation(p: GentlePresentation) -> str | None:
    """Return a description of the first violated local gentle condition, if any."""
    for v in sorted(p.vertices):
        ins, outs = p.incoming(v), p.outgoing(v)
        if len(ins) > 2:
            return f"vertex {v} has {len(ins)} incoming arrows"
        if len(outs) > 2:
            return f"vertex {v} has {len(outs)} outgoing arrows"
    for a in p.arrows:
        after = p.outgoing(a.target)
        rel = [b.id for b in after if p.is_relation(a.id, b.id)]
        free = [b.id for b in after if not p.is_relation(a.id, b.id)]
        if len(rel) > 1:
            return f"arrow {a.id} is followed by {len(rel)} relations ({', '.join(rel)})"
        if len(free) > 1:
            return f"arrow {a.id} has {len(free)} relation-free continuations ({', '.join(free)})"
        before = p.incoming(a.source)
        rel = [b.id for b in before if p.is_relation(b.id, a.id)]
        free = [b.id for b in before if not p.is_relation(b.id, a.id)]
        if len(rel) > 1:
            return f"arrow {a.id} is preceded by {len(rel)} relations ({', '.join(rel)})"
        if len(free) > 1:
            return f"arrow {a.id} has {len(free)} relation-free predecessors ({', '.join(free)})"
    return None


def relation_free_cycle(p: GentlePresentation) -> list[str] | None:
    """Find a cyclic arrow sequence with no relation between consecutive arrows.

    Assumes the local conditions hold, so each arrow has at most one
    relation-free successor and the successor map is a partial function.
    """
    successor: dict[str, str] = {}
    for a in p.arrows:
        for b in p.outgoing(a.target):
            if not p.is_relation(a.id, b.id):
                successor[a.id] = b.id
    state: dict[str, int] = {}
    for start in sorted(successor):
        path: list[str] = []
        x: str | None = start
        while x is not None and x not in state:
            state[x] = 1
            path.append(x)
            x = successor.get(x)
        if x is not None and state[x] == 1:
            cycle = path[path.index(x):]
            rot = cycle.index(min(cycle))
            return cycle[rot:] + cycle[:rot]
        for y in path:
            state[y] = 2
    return None


def validate_gentle(p: GentlePresentation) -> Classification:
    violation = local_violation(p)
    if violation:
        return Classification("invalid", violation)
    cycle = relation_free_cycle(p)
    if cycle:
        return Classification("locally-gentle-infinite", "relation-free cycle " + " ".join(cycle))
    return Classification("gentle")
