"""Dissected marked surfaces of gentle algebras.

Every algebra vertex becomes an arc with ends 0 and 1.  Arc ends meeting at
a marked point form a fan listed counter-clockwise; on the boundary the gap
sits after the last fan member, while an interior fan (locally gentle input
only) is cyclic and has no gap.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from functools import cached_property

from .presentation import Arrow, GentlePresentation, PresentationError
from .ribbon import Corner, HalfEdge, RibbonGraph, format_half_edge, partner


class DissectionError(ValueError):
    pass


class BuildError(DissectionError):
    """The attachment rules produced an inconsistent surface."""


class UnsupportedPassage(ValueError):
    """A curve passes a marked point where winding is not defined."""


@dataclass(frozen=True)
class DissectedSurface:
    name: str
    arcs: tuple[str, ...]
    fans: tuple[tuple[HalfEdge, ...], ...]
    interior: tuple[bool, ...]

    def __post_init__(self) -> None:
        seen: set[HalfEdge] = set()
        for fan in self.fans:
            for h in fan:
                if h[0] not in self.arcs or h[1] not in (0, 1):
                    raise DissectionError(f"unknown arc end {format_half_edge(h)}")
                if h in seen:
                    raise DissectionError(f"arc end {format_half_edge(h)} lies in two fans")
                seen.add(h)
        for a in self.arcs:
            for end in (0, 1):
                if (a, end) not in seen:
                    raise DissectionError(f"arc end {a}.{end} is in no fan")
        for fan, inner in zip(self.fans, self.interior):
            if inner and not fan:
                raise DissectionError("an interior marked point needs a non-empty fan")

    @cached_property
    def ribbon(self) -> RibbonGraph:
        rotation = {}
        for i, (fan, inner) in enumerate(zip(self.fans, self.interior)):
            rotation[i] = tuple(fan) if inner else tuple(fan) + (None,)
        return RibbonGraph(rotation)

    @property
    def is_gentle(self) -> bool:
        return not any(self.interior)

    def passage_weight(self, node: int, entry: HalfEdge, exit: HalfEdge, wrap: int = 0) -> int:
        """Turn sign of a curve passing the marked point ``node``.

        +1 when the marked point lies to the left of the passage, which happens
        exactly when the entry precedes the exit in the fan.  ``wrap`` carries
        the sign of a turn around a singleton fan where entry equals exit.
        """
        if self.interior[node]:
            raise UnsupportedPassage(f"passage through interior marked point {node}")
        if entry == exit:
            if wrap not in (1, -1):
                raise UnsupportedPassage(f"backtracking at {format_half_edge(entry)}")
            return wrap
        fan = self.fans[node]
        return 1 if fan.index(entry) < fan.index(exit) else -1

    def to_text(self) -> str:
        lines = [f"surface {self.name}"]
        lines += [f"arc {a}" for a in self.arcs]
        for fan, inner in zip(self.fans, self.interior):
            key = "interior-vertex" if inner else "vertex"
            lines.append(f"{key}: " + " ".join(format_half_edge(h) for h in fan))
        return "\n".join(lines) + "\n"


_END_RE = re.compile(r"^(.+)\.([01])$")


def parse_dissection(text: str) -> DissectedSurface:
    name = "unnamed"
    arcs: list[str] = []
    fans: list[tuple[HalfEdge, ...]] = []
    interior: list[bool] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        col = len(raw) - len(raw.lstrip()) + 1
        if line.startswith("surface"):
            parts = line.split()
            if len(parts) != 2:
                raise PresentationError("expected 'surface <name>'", lineno, col)
            name = parts[1]
        elif line.startswith("arc "):
            parts = line.split()
            if len(parts) != 2 or parts[1] in arcs:
                raise PresentationError("expected 'arc <id>' with a fresh id", lineno, col)
            arcs.append(parts[1])
        elif line.startswith("vertex:") or line.startswith("interior-vertex:"):
            key, rest = line.split(":", 1)
            fan = []
            for token in rest.split():
                m = _END_RE.match(token)
                if not m:
                    raise PresentationError(f"bad arc end {token!r}", lineno, col + raw.find(token))
                fan.append((m.group(1), int(m.group(2))))
            fans.append(tuple(fan))
            interior.append(key == "interior-vertex")
        else:
            raise PresentationError(f"unknown line {line!r}", lineno, col)
    for fan in fans:
        for h in fan:
            if h[0] not in arcs:
                arcs.append(h[0])
    try:
        return DissectedSurface(name, tuple(arcs), tuple(fans), tuple(interior))
    except DissectionError as exc:
        raise PresentationError(str(exc)) from None


def _assign_ends(p: GentlePresentation, vertex: str) -> dict[tuple[str, str], int]:
    """Decide which end of the arc each arrow at ``vertex`` attaches to.

    Items are ``("in", arrow)`` and ``("out", arrow)``.  Two ins or two outs
    take different ends; an in/out pair takes the same end unless it composes
    to a relation.
    """
    items: list[tuple[str, str]] = []
    for a in p.arrows:
        if a.target == vertex:
            items.append(("in", a.id))
        if a.source == vertex:
            items.append(("out", a.id))
    def differ(x, y) -> bool:
        if x[0] == y[0]:
            return True
        a, b = (x[1], y[1]) if x[0] == "in" else (y[1], x[1])
        return p.is_relation(a, b)

    end: dict[tuple[str, str], int] = {}
    for first in items:
        if first in end:
            continue
        end[first] = 0
        stack = [first]
        while stack:
            x = stack.pop()
            for y in items:
                if y == x:
                    continue
                want = end[x] ^ differ(x, y)
                if y not in end:
                    end[y] = want
                    stack.append(y)
                elif end[y] != want:
                    raise BuildError(f"conflicting arrow attachments at vertex {vertex}")
    return end


def build_dissected_surface(p: GentlePresentation, name: str | None = None) -> DissectedSurface:
    ends = {v: _assign_ends(p, v) for v in p.vertices}
    successor: dict[HalfEdge, HalfEdge] = {}
    predecessor: dict[HalfEdge, HalfEdge] = {}
    for a in p.arrows:
        s = (a.source, ends[a.source][("out", a.id)])
        t = (a.target, ends[a.target][("in", a.id)])
        if s in successor or t in predecessor:
            raise BuildError(f"arc end receives two attachments via arrow {a.id}")
        successor[s] = t
        predecessor[t] = s

    fans: list[tuple[HalfEdge, ...]] = []
    interior: list[bool] = []
    placed: set[HalfEdge] = set()
    for v in p.vertices:
        for e in (0, 1):
            h = (v, e)
            if h in placed:
                continue
            head = h
            while head in predecessor and predecessor[head] != h:
                head = predecessor[head]
            cyclic = head in predecessor
            if cyclic:
                head = h
            fan = [head]
            x = head
            while x in successor and successor[x] != head:
                x = successor[x]
                fan.append(x)
            placed.update(fan)
            fans.append(tuple(fan))
            interior.append(cyclic)
    return DissectedSurface(name or p.name, tuple(p.vertices), tuple(fans), tuple(interior))


def algebra_of_dissection(d: DissectedSurface, name: str | None = None) -> GentlePresentation:
    arrows: list[Arrow] = []
    into: dict[HalfEdge, str] = {}
    out_of: dict[HalfEdge, str] = {}
    for fan, inner in zip(d.fans, d.interior):
        pairs = list(zip(fan, fan[1:]))
        if inner:
            pairs.append((fan[-1], fan[0]))
        for s, t in pairs:
            aid = f"a{len(arrows) + 1}"
            arrows.append(Arrow(aid, s[0], t[0]))
            out_of[s] = aid
            into[t] = aid
    relations = set()
    for arc in d.arcs:
        for e in (0, 1):
            if (arc, e) in into and (arc, 1 - e) in out_of:
                relations.add((into[(arc, e)], out_of[(arc, 1 - e)]))
    return GentlePresentation(name or d.name, tuple(d.arcs), tuple(arrows), frozenset(relations))


@dataclass(frozen=True)
class SurfaceShape:
    genus: int
    boundary: int
    punctures: int
    marked_green: int
    marked_red: int
    boundary_marks: tuple[int, ...]
    green_punctures: int = 0

    def as_tuple(self) -> tuple[int, int, int, int, int]:
        return (self.genus, self.boundary, self.punctures, self.marked_green, self.marked_red)

    def expected_arcs(self) -> int:
        return (self.marked_green + self.punctures + self.boundary + 2 * self.genus - 2
                + self.green_punctures)

    def to_json(self) -> dict:
        out = {
            "genus": self.genus,
            "boundary": self.boundary,
            "punctures": self.punctures,
            "marked_green": self.marked_green,
            "marked_red": self.marked_red,
            "boundary_marks": sorted(self.boundary_marks),
        }
        if self.green_punctures:
            out["green_punctures"] = self.green_punctures
        return out


@dataclass(frozen=True)
class Face:
    """A face of the ribbon graph; gap corners mark a boundary component."""

    index: int
    corners: tuple[Corner, ...]

    @property
    def gap_corners(self) -> int:
        return sum(c.open_slots for c in self.corners)

    @property
    def is_boundary(self) -> bool:
        return self.gap_corners > 0


def faces(d: DissectedSurface) -> list[Face]:
    return [Face(i, tuple(f)) for i, f in enumerate(d.ribbon.faces())]


def compute_shape(d: DissectedSurface) -> SurfaceShape:
    r = d.ribbon
    if not r.is_connected():
        raise DissectionError("dissection is disconnected")
    fs = faces(d)
    marks = tuple(f.gap_corners for f in fs if f.is_boundary)
    punctures = sum(1 for f in fs if not f.is_boundary)
    green = sum(1 for inner in d.interior if not inner)
    return SurfaceShape(
        genus=r.genus(),
        boundary=len(marks),
        punctures=punctures,
        marked_green=green,
        marked_red=sum(marks),
        boundary_marks=marks,
        green_punctures=sum(d.interior),
    )


@dataclass(frozen=True)
class Region:
    """A piece of a face containing exactly one red marked point or red puncture.

    ``kind`` is 1 for a region touching the boundary and 2 for a punctured
    disc.  ``sides`` lists the arc sides met along the face walk, each as the
    departing half-edge, and ``corners`` the marked-point sectors.
    """

    kind: int
    face: int
    sides: tuple[HalfEdge, ...]
    corners: tuple[Corner, ...] = field(repr=False)


def regions(d: DissectedSurface) -> list[Region]:
    out: list[Region] = []
    for f in faces(d):
        corners = f.corners
        gap_at = [i for i, c in enumerate(corners) if c.open_slots]
        if not gap_at:
            out.append(Region(2, f.index, tuple(c.depart for c in corners), corners))
            continue
        m = len(corners)
        # a corner may hold several gaps only when the node has no arcs
        for k, start in enumerate(gap_at):
            for _ in range(corners[start].open_slots - 1):
                out.append(Region(1, f.index, (), (corners[start],)))
            stop = gap_at[(k + 1) % len(gap_at)]
            length = (stop - start) % m or m
            span = [corners[(start + t) % m] for t in range(length + 1)]
            out.append(Region(1, f.index, tuple(c.depart for c in span[:-1]), tuple(span)))
    return out
