"""Combinatorial curves on ribbon surfaces and their winding numbers.

A curve is a sequence of departing half-edges.  Step ``h`` leaves the node
of ``h`` along its edge and arrives at the node of ``partner(h)``.  Between
two consecutive steps the curve passes a node, entering through one
half-edge and leaving through another; that passage is where turning is
counted.

The functions here accept any surface object exposing ``ribbon`` and
``passage_weight(node, entry, exit, wrap)``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple, Protocol, Sequence

from .ribbon import HalfEdge, RibbonGraph, format_half_edge, partner


class CurveError(ValueError):
    pass


class Surface(Protocol):
    ribbon: RibbonGraph

    def passage_weight(self, node, entry: HalfEdge, exit: HalfEdge, wrap: int = 0) -> int: ...


class Passage(NamedTuple):
    node: object
    entry: HalfEdge
    exit: HalfEdge
    wrap: int


@dataclass(frozen=True)
class CurvePath:
    """A closed or open edge path.

    ``wraps`` has one entry per passage: zero for an ordinary passage and
    +1 or -1 for a turn around a node with a single half-edge, where the
    curve enters and leaves along the same edge.
    """

    kind: str
    steps: tuple[HalfEdge, ...]
    wraps: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        if self.kind not in ("closed", "open"):
            raise CurveError(f"unknown curve kind {self.kind!r}")
        if not self.steps:
            raise CurveError("a curve needs at least one step")
        expected = self.passage_count
        if not self.wraps:
            object.__setattr__(self, "wraps", (0,) * expected)
        elif len(self.wraps) != expected:
            raise CurveError(f"expected {expected} wrap flags, got {len(self.wraps)}")

    @property
    def passage_count(self) -> int:
        return len(self.steps) if self.kind == "closed" else len(self.steps) - 1

    @property
    def is_closed(self) -> bool:
        return self.kind == "closed"

    def start(self) -> HalfEdge:
        return self.steps[0]

    def end(self) -> HalfEdge:
        """The half-edge at which an open path arrives at its final node."""
        return partner(self.steps[-1])

    def describe(self) -> str:
        return " ".join(f"{h[0]}.{'+' if h[1] == 0 else '-'}" for h in self.steps)


def closed(steps: Sequence[HalfEdge], wraps: Sequence[int] = ()) -> CurvePath:
    return CurvePath("closed", tuple(steps), tuple(wraps))


def open_path(steps: Sequence[HalfEdge], wraps: Sequence[int] = ()) -> CurvePath:
    return CurvePath("open", tuple(steps), tuple(wraps))


def passages(ribbon: RibbonGraph, path: CurvePath) -> list[Passage]:
    """Passages in order; validates that consecutive steps meet."""
    out = []
    n = len(path.steps)
    for k in range(path.passage_count):
        entry = partner(path.steps[k])
        exit = path.steps[(k + 1) % n]
        node = ribbon.node_of(entry)
        if ribbon.node_of(exit) != node:
            raise CurveError(
                f"step {k + 1} arrives at {format_half_edge(entry)} but the next step "
                f"leaves from {format_half_edge(exit)} at another node")
        wrap = path.wraps[k]
        if entry == exit and wrap == 0:
            raise CurveError(f"curve backtracks along edge {entry[0]}")
        if entry == exit and ribbon.degree(node) != 1:
            raise CurveError(f"wrap at {format_half_edge(entry)} needs a node with one half-edge")
        if entry != exit and wrap != 0:
            raise CurveError(f"wrap flag on an ordinary passage at {format_half_edge(entry)}")
        out.append(Passage(node, entry, exit, wrap))
    return out


def check_path(ribbon: RibbonGraph, path: CurvePath) -> None:
    for h in path.steps:
        ribbon.node_of(h)
    passages(ribbon, path)


def winding(surface: Surface, path: CurvePath) -> int:
    """Sum of passage weights; endpoints of open paths contribute nothing."""
    return sum(surface.passage_weight(p.node, p.entry, p.exit, p.wrap)
               for p in passages(surface.ribbon, path))


def reverse(path: CurvePath) -> CurvePath:
    steps = tuple(partner(h) for h in reversed(path.steps))
    m = path.passage_count
    n = len(path.steps)
    wraps = tuple(-path.wraps[(n - 2 - i) % n] for i in range(m)) if m else ()
    return CurvePath(path.kind, steps, wraps)


def rotate(path: CurvePath, k: int) -> CurvePath:
    """The same closed curve read from step ``k``."""
    if not path.is_closed:
        raise CurveError("only closed curves can be rotated")
    n = len(path.steps)
    k %= n
    return CurvePath("closed", path.steps[k:] + path.steps[:k], path.wraps[k:] + path.wraps[:k])


def concatenate(a: CurvePath, b: CurvePath, ribbon: RibbonGraph, wrap: int = 0) -> CurvePath:
    """Join two open paths at the end node of ``a``, inserting the junction passage."""
    if a.is_closed or b.is_closed:
        raise CurveError("concatenate expects open paths")
    if ribbon.node_of(a.end()) != ribbon.node_of(b.start()):
        raise CurveError("end of the first path is not the start of the second")
    result = CurvePath("open", a.steps + b.steps, a.wraps + (wrap,) + b.wraps)
    check_path(ribbon, result)
    return result


def close(a: CurvePath, ribbon: RibbonGraph, wrap: int = 0) -> CurvePath:
    """Close an open path whose end node equals its start node."""
    if a.is_closed:
        raise CurveError("path is already closed")
    if ribbon.node_of(a.end()) != ribbon.node_of(a.start()):
        raise CurveError("path does not return to its start")
    result = CurvePath("closed", a.steps, a.wraps + (wrap,))
    check_path(ribbon, result)
    return result


def _cyclic_between(order: dict[HalfEdge, int], size: int, lo: HalfEdge, hi: HalfEdge,
                    x: HalfEdge) -> bool:
    """Whether ``x`` lies strictly inside the ccw sweep from ``lo`` to ``hi``."""
    a, b, c = order[lo], order[hi], order[x]
    return 0 < (c - a) % size < (b - a) % size


def interleave(ribbon: RibbonGraph, p: Passage, q: Passage) -> bool:
    """Whether two passages at the same node cross transversally."""
    hs = {p.entry, p.exit, q.entry, q.exit}
    if len(hs) != 4 or p.node != q.node:
        return False
    slots = ribbon.rotation[p.node]
    order = {h: i for i, h in enumerate(slots) if h is not None}
    size = len(slots)
    inside = _cyclic_between(order, size, p.entry, p.exit, q.entry)
    return inside != _cyclic_between(order, size, p.entry, p.exit, q.exit)


def gap_free_sector(ribbon: RibbonGraph, p: Passage) -> list:
    """The side of a passage that avoids every open slot, or None if both sides have one."""
    one = ribbon.ccw_sector(p.entry, p.exit)
    other = ribbon.ccw_sector(p.exit, p.entry)
    if None not in one:
        return one
    if None not in other:
        return other
    return None


def is_simple(ribbon: RibbonGraph, path: CurvePath) -> bool:
    """Sufficient test for a simple representative.

    No edge may be traversed twice and no two passages may interleave.  For
    open paths an endpoint may not sit strictly inside the sector a passage
    sweeps around the same node.
    """
    edges = [h[0] for h in path.steps]
    if len(set(edges)) != len(edges):
        return False
    ps = passages(ribbon, path)
    by_node: dict = {}
    for p in ps:
        by_node.setdefault(p.node, []).append(p)
    for group in by_node.values():
        for i in range(len(group)):
            for j in range(i + 1, len(group)):
                if interleave(ribbon, group[i], group[j]):
                    return False
    if not path.is_closed:
        for h in (path.start(), path.end()):
            for p in by_node.get(ribbon.node_of(h), []):
                if p.entry == p.exit:
                    continue
                sector = gap_free_sector(ribbon, p)
                if sector is None or h in sector:
                    return False
    return True


def smooth_compose(ribbon: RibbonGraph, a: CurvePath, b: CurvePath, at: tuple[int, int]) -> CurvePath:
    """Resolve a transversal crossing of two closed curves into one closed curve.

    ``at`` indexes a passage of ``a`` and a passage of ``b`` at the same node.
    The result follows ``a`` up to the crossing, switches to ``b`` for a full
    turn, then returns to ``a``; its class is the sum of the two classes.
    """
    if not (a.is_closed and b.is_closed):
        raise CurveError("smooth_compose expects closed curves")
    i, j = at
    pa, pb = passages(ribbon, a)[i], passages(ribbon, b)[j]
    if not interleave(ribbon, pa, pb):
        raise CurveError("passages do not cross at a common node")
    m, n = len(a.steps), len(b.steps)
    a_steps = a.steps[i + 1:] + a.steps[:i + 1]
    b_steps = b.steps[j + 1:] + b.steps[:j + 1]
    a_wraps = a.wraps[i + 1:] + a.wraps[:i]
    b_wraps = b.wraps[j + 1:] + b.wraps[:j]
    assert len(a_wraps) == m - 1 and len(b_wraps) == n - 1
    result = CurvePath("closed", a_steps + b_steps, a_wraps + (0,) + b_wraps + (0,))
    check_path(ribbon, result)
    return result


def crossing_passages(ribbon: RibbonGraph, a: CurvePath, b: CurvePath) -> list[tuple[int, int]]:
    pa, pb = passages(ribbon, a), passages(ribbon, b)
    return [(i, j) for i, p in enumerate(pa) for j, q in enumerate(pb)
            if p.node == q.node and interleave(ribbon, p, q)]


def intersection_number(ribbon: RibbonGraph, a: CurvePath, b: CurvePath, ring: str = "Z") -> int:
    """Algebraic intersection of two closed curves, over ``"Z"`` or ``"Z/2"``.

    ``b`` is pushed off the graph to its left.  At each node the pushed copy
    separates the spokes strictly between b's exit and b's entry (sweeping
    ccw) from the others, so ``a`` crosses it once for each of its own entry
    or exit half-edges that lies in that sector.
    """
    if not (a.is_closed and b.is_closed):
        raise CurveError("intersection numbers need closed curves")
    pa, pb = passages(ribbon, a), passages(ribbon, b)
    if any(p.wrap for p in pa + pb):
        raise CurveError("intersection numbers of wrapping curves are not supported")
    by_node: dict = {}
    for q in pb:
        by_node.setdefault(q.node, []).append(q)
    total = 0
    for p in pa:
        for q in by_node.get(p.node, ()):
            sector = ribbon.ccw_sector(q.exit, q.entry)
            total += (p.entry in sector) - (p.exit in sector)
    if ring == "Z":
        return total
    if ring == "Z/2":
        return total % 2
    raise ValueError(f"unknown ring {ring!r}")


def parse_curve(ribbon: RibbonGraph, text: str, kind: str = "closed") -> CurvePath:
    """Parse a curve literal such as ``"1.+ 2.- 3"``.

    ``arc.+`` traverses an arc from end 0 to end 1 and ``arc.-`` the other
    way.  A bare ``arc`` leaves the direction to be inferred from its
    neighbours; ``via arc.end`` names the departing half-edge explicitly.
    Inference that admits more than one reading is an error.
    """
    tokens = text.split()
    options: list[list[HalfEdge]] = []
    i = 0
    while i < len(tokens):
        tok = tokens[i]
        if tok == "via":
            if i + 1 >= len(tokens):
                raise CurveError("'via' must be followed by <arc>.<end>")
            arc, _, end = tokens[i + 1].rpartition(".")
            if end not in ("0", "1") or not arc:
                raise CurveError(f"bad half-edge {tokens[i + 1]!r} after 'via'")
            options.append([(arc, int(end))])
            i += 2
            continue
        if tok.endswith(".+"):
            options.append([(tok[:-2], 0)])
        elif tok.endswith(".-") or tok.endswith(".−"):
            options.append([(tok[:-2], 1)])
        else:
            options.append([(tok, 0), (tok, 1)])
        i += 1
    if not options:
        raise CurveError("empty curve literal")
    edges = set(ribbon.edges)
    for opts in options:
        if opts[0][0] not in edges:
            raise CurveError(f"unknown arc {opts[0][0]!r}")

    n = len(options)
    links = n if kind == "closed" else n - 1

    def fits(prev: HalfEdge, nxt: HalfEdge) -> bool:
        entry = partner(prev)
        return ribbon.node_of(entry) == ribbon.node_of(nxt) and entry != nxt

    found: list[tuple[HalfEdge, ...]] = []

    def search(prefix: list[HalfEdge]) -> None:
        if len(found) > 1:
            return
        k = len(prefix)
        if k == n:
            if links == n and not fits(prefix[-1], prefix[0]):
                return
            found.append(tuple(prefix))
            return
        for h in options[k]:
            if k == 0 or fits(prefix[-1], h):
                search(prefix + [h])

    search([])
    if not found:
        raise CurveError(f"no consistent reading of curve {text!r}")
    if len(found) > 1:
        diff = [k for k in range(n) if found[0][k] != found[1][k]]
        raise CurveError(
            f"ambiguous curve {text!r}: direction of token {diff[0] + 1} is undetermined; "
            f"annotate with 'via <arc>.<end>'")
    return CurvePath(kind, found[0])


def gcd_all(values) -> int:
    g = 0
    for v in values:
        g = math.gcd(g, abs(v))
    return g


@dataclass(frozen=True)
class FaceCurve:
    """The curve running once around a face, with the face on its left.

    ``marks`` counts open slots met along the face: the number of marked
    points on a boundary component, or zero around a puncture.
    """

    kind: str  # "boundary" or "puncture"
    index: int
    path: CurvePath
    marks: int


def face_curves(ribbon: RibbonGraph) -> list[FaceCurve]:
    out: list[FaceCurve] = []
    counts = {"boundary": 0, "puncture": 0}
    for corners in ribbon.faces():
        if corners[0].arrive is None:
            raise CurveError(f"node {corners[0].node} has no edges")
        m = len(corners)
        steps = tuple(c.depart for c in corners)
        wraps = []
        for k in range(m):
            c = corners[(k + 1) % m]
            wraps.append(1 if c.arrive == c.depart else 0)
        marks = sum(c.open_slots for c in corners)
        kind = "boundary" if marks else "puncture"
        counts[kind] += 1
        out.append(FaceCurve(kind, counts[kind], CurvePath("closed", steps, tuple(wraps)), marks))
    return out


def boundary_curves(surface: Surface) -> list[FaceCurve]:
    """Boundary curves first, then puncture curves, each numbered from 1."""
    curves = face_curves(surface.ribbon)
    return ([c for c in curves if c.kind == "boundary"]
            + [c for c in curves if c.kind == "puncture"])
