"""Triangulated surfaces with admissible cuts and their cut algebras.

Triangle sides are listed counter-clockwise.  Corner ``k`` of a triangle
lies between side ``k`` and side ``k + 1``; when both sides are internal
arcs it carries the arrow ``side[k+1] -> side[k]``.  A cut assigns degree 1
to exactly one corner of every triangle whose three sides are internal.

Curves are sequences of crossings ``(triangle, entry side, exit side)``.
The degree of a crossing is the degree of the corner it cuts off, counted
positively when that corner is on the right of the crossing and negatively
when it is on the left.  A curve that enters and leaves a triangle with two
boundary sides through its single internal side turns around that ear and
contributes +1 with the boundary on its left, -1 with it on its right.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from functools import cached_property

from .curves import CurvePath, boundary_curves, winding
from .decision import InvariantRecord, Verdict, compare_records, surface_record
from .homology import DEFAULT_BUDGET
from .presentation import Arrow, GentlePresentation, PresentationError
from .ribbon import HalfEdge, RibbonGraph


class TriangulationError(ValueError):
    pass


class InadmissibleCut(TriangulationError):
    def __init__(self, triangle: str, message: str):
        self.triangle = triangle
        super().__init__(f"triangle {triangle}: {message}")


Crossing = tuple[str, str, str]


@dataclass(frozen=True)
class CutTriangulation:
    name: str
    triangles: tuple[tuple[str, tuple[str, str, str]], ...]
    boundary: frozenset[str]
    cuts: frozenset[tuple[str, int]]
    curves: tuple[tuple[str, tuple[Crossing, ...]], ...] = field(default=(), compare=False)

    def __post_init__(self) -> None:
        count: dict[str, int] = {}
        ids = [t for t, _ in self.triangles]
        if len(set(ids)) != len(ids):
            raise TriangulationError("duplicate triangle id")
        for tid, sides in self.triangles:
            if len(set(sides)) != 3:
                raise TriangulationError(f"triangle {tid} repeats a side (self-folded triangles are not supported)")
            for s in sides:
                count[s] = count.get(s, 0) + 1
        for s, c in count.items():
            if c > 2:
                raise TriangulationError(f"side {s} bounds {c} triangles")
            if c == 1 and s not in self.boundary:
                raise TriangulationError(f"side {s} is unglued but not declared boundary")
            if c == 2 and s in self.boundary:
                raise TriangulationError(f"boundary side {s} is glued to two triangles")
        for s in self.boundary:
            if s not in count:
                raise TriangulationError(f"boundary side {s} belongs to no triangle")
        if not self.boundary:
            raise TriangulationError("a cut triangulation needs boundary")
        tri = dict(self.triangles)
        for tid, k in self.cuts:
            if tid not in tri or k not in (0, 1, 2):
                raise TriangulationError(f"cut at unknown corner {tid}.{k}")
        classes = self.marked_point_classes()
        if len(classes) != len(self.boundary):
            raise TriangulationError(
                f"{len(classes)} marked points but {len(self.boundary)} boundary sides; "
                "interior marked points are not supported")

    def sides(self, tid: str) -> tuple[str, str, str]:
        return dict(self.triangles)[tid]

    @cached_property
    def internal_arcs(self) -> tuple[str, ...]:
        seen: list[str] = []
        for _, sides in self.triangles:
            for s in sides:
                if s not in self.boundary and s not in seen:
                    seen.append(s)
        return tuple(seen)

    def is_internal_triangle(self, tid: str) -> bool:
        return not any(s in self.boundary for s in self.sides(tid))

    def degree(self, tid: str, corner: int) -> int:
        return 1 if (tid, corner % 3) in self.cuts else 0

    def marked_point_classes(self) -> list[set[tuple[str, int]]]:
        """Corners grouped by the marked point they sit at."""
        parent: dict[tuple[str, int], tuple[str, int]] = {}

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        def union(x, y):
            parent[find(x)] = find(y)

        where: dict[str, list[tuple[str, int]]] = {}
        for tid, sides in self.triangles:
            for k in range(3):
                parent[(tid, k)] = (tid, k)
            for i, s in enumerate(sides):
                where.setdefault(s, []).append((tid, i))
        for occ in where.values():
            if len(occ) == 2:
                (t, i), (u, j) = occ
                # gluing reverses the orientation of the shared side
                union((t, (i - 1) % 3), (u, j))
                union((t, i), (u, (j - 1) % 3))
        groups: dict = {}
        for x in parent:
            groups.setdefault(find(x), set()).add(x)
        return list(groups.values())

    def check_cut(self) -> None:
        for tid, _ in self.triangles:
            cut = [k for k in range(3) if (tid, k) in self.cuts]
            if self.is_internal_triangle(tid):
                if len(cut) != 1:
                    raise InadmissibleCut(tid, f"internal triangle has {len(cut)} cut corners, expected 1")
            elif cut:
                raise InadmissibleCut(tid, "only internal triangles may carry a cut")

    @cached_property
    def half_edges(self) -> dict[tuple[str, int], HalfEdge]:
        """Half-edge of the dual graph for side slot ``(triangle, index)``."""
        seen: dict[str, int] = {}
        out = {}
        for tid, sides in self.triangles:
            for i, s in enumerate(sides):
                if s in self.boundary:
                    continue
                occ = seen.get(s, 0)
                seen[s] = occ + 1
                out[(tid, i)] = (s, occ)
        return out

    @cached_property
    def ribbon(self) -> RibbonGraph:
        rotation = {}
        for n, (tid, sides) in enumerate(self.triangles):
            rotation[n] = tuple(self.half_edges.get((tid, i)) for i in range(3))
        return RibbonGraph(rotation)

    @cached_property
    def _slot(self) -> dict[HalfEdge, tuple[str, int]]:
        return {h: slot for slot, h in self.half_edges.items()}

    def passage_weight(self, node: int, entry: HalfEdge, exit: HalfEdge, wrap: int = 0) -> int:
        """Signed degree of the corner a crossing cuts off."""
        if entry == exit:
            return wrap
        tid, i = self._slot[entry]
        _, j = self._slot[exit]
        if j == (i + 1) % 3:
            return self.degree(tid, i)
        return -self.degree(tid, j)

    def curve_path(self, crossings: tuple[Crossing, ...]) -> CurvePath:
        """Convert a closed crossing sequence into a path on the dual graph."""
        if not crossings:
            raise TriangulationError("empty crossing sequence")
        steps = []
        n = len(crossings)
        for k, (tid, entry, exit) in enumerate(crossings):
            sides = self.sides(tid)
            if entry not in sides or exit not in sides:
                raise TriangulationError(f"crossing {k + 1}: triangle {tid} has no side {entry if entry not in sides else exit}")
            if entry == exit:
                raise TriangulationError(f"crossing {k + 1}: entry and exit coincide")
            nxt_tid, nxt_entry, _ = crossings[(k + 1) % n]
            if nxt_entry != exit:
                raise TriangulationError(
                    f"crossing {k + 1} exits through {exit} but crossing {(k + 1) % n + 1} enters through {nxt_entry}")
            if exit in self.boundary:
                raise TriangulationError(f"crossing {k + 1} exits through boundary side {exit}")
            here = self.half_edges[(tid, sides.index(exit))]
            there = self.half_edges[(nxt_tid, self.sides(nxt_tid).index(nxt_entry))]
            if there != (here[0], 1 - here[1]):
                raise TriangulationError(f"crossing {k + 1}: side {exit} does not lead into triangle {nxt_tid}")
            steps.append(here)
        return CurvePath("closed", tuple(steps))

    def shape(self) -> tuple[int, int, int, int, int]:
        g = self.ribbon.genus()
        b = sum(1 for c in boundary_curves(self) if c.kind == "boundary")
        m = len(self.boundary)
        return (g, b, 0, m, m)

    def to_text(self) -> str:
        lines = [f"surface {self.name}"]
        lines += [f"triangle {t}: {' '.join(s)}" for t, s in self.triangles]
        lines += [f"boundary {s}" for s in sorted(self.boundary)]
        lines += [f"cut {t}.{k} = 1" for t, k in sorted(self.cuts)]
        for name, crossings in self.curves:
            lines.append(f"curve {name}")
            lines += [f"cross {t} {a} {b}" for t, a, b in crossings]
        return "\n".join(lines) + "\n"


def parse_triangulation(text: str) -> CutTriangulation:
    name = "unnamed"
    triangles: list[tuple[str, tuple[str, str, str]]] = []
    boundary: set[str] = set()
    cuts: set[tuple[str, int]] = set()
    curves: list[tuple[str, list[Crossing]]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        col = len(raw) - len(raw.lstrip()) + 1
        parts = line.replace(":", " : ").split()
        key = parts[0]
        if key == "surface" and len(parts) == 2:
            name = parts[1]
        elif key == "triangle":
            if len(parts) != 6 or parts[2] != ":":
                raise PresentationError("expected 'triangle <id>: <side> <side> <side>'", lineno, col)
            triangles.append((parts[1], (parts[3], parts[4], parts[5])))
        elif key == "boundary" and len(parts) == 2:
            boundary.add(parts[1])
        elif key == "cut":
            if len(parts) != 4 or parts[2] != "=" or "." not in parts[1]:
                raise PresentationError("expected 'cut <triangle>.<corner> = 1'", lineno, col)
            tid, _, k = parts[1].rpartition(".")
            if k not in ("0", "1", "2") or parts[3] not in ("0", "1"):
                raise PresentationError("corner index must be 0, 1 or 2 and degree 0 or 1", lineno, col)
            if parts[3] == "1":
                cuts.add((tid, int(k)))
        elif key == "curve" and len(parts) == 2:
            curves.append((parts[1], []))
        elif key == "cross" and len(parts) == 4:
            if not curves:
                curves.append(("curve", []))
            curves[-1][1].append((parts[1], parts[2], parts[3]))
        else:
            raise PresentationError(f"cannot parse {line!r}", lineno, col)
    try:
        return CutTriangulation(name, tuple(triangles), frozenset(boundary), frozenset(cuts),
                                tuple((n, tuple(c)) for n, c in curves))
    except TriangulationError as exc:
        raise PresentationError(str(exc)) from None


def cut_algebra(t: CutTriangulation) -> GentlePresentation:
    t.check_cut()
    arrows: list[Arrow] = []
    by_triangle: dict[str, list[tuple[int, Arrow]]] = {}
    for tid, sides in t.triangles:
        for k in range(3):
            a, b = sides[k], sides[(k + 1) % 3]
            if a in t.boundary or b in t.boundary or t.degree(tid, k):
                continue
            arrow = Arrow(f"{tid}.{k}", b, a)
            arrows.append(arrow)
            by_triangle.setdefault(tid, []).append((k, arrow))
    relations = set()
    for items in by_triangle.values():
        for _, x in items:
            for _, y in items:
                if x is not y and x.target == y.source:
                    relations.add((x.id, y.id))
    return GentlePresentation(t.name, t.internal_arcs, tuple(arrows), frozenset(relations))


def cut_degree(t: CutTriangulation, crossings) -> int:
    return winding(t, t.curve_path(tuple(crossings)))


def cut_invariants(t: CutTriangulation, budget: int = DEFAULT_BUDGET,
                   seed: int | None = None) -> InvariantRecord:
    t.check_cut()
    return surface_record(t, t.shape(), budget, seed)


def cut_equivalent(t1: CutTriangulation, t2: CutTriangulation,
                   budget: int = DEFAULT_BUDGET, seed: int | None = None) -> Verdict:
    return compare_records(cut_invariants(t1, budget, seed), cut_invariants(t2, budget, seed))


def random_triangulation(rng: random.Random, triangles: int, internal: int | None = None,
                         attempts: int = 1000) -> CutTriangulation:
    """Glue ``triangles`` triangles along random side pairs and cut at random.

    Gluings that fold a triangle onto itself, disconnect the surface or
    leave an interior marked point are rejected and redrawn.
    """
    for _ in range(attempts):
        slots = [(f"T{n}", i) for n in range(triangles) for i in range(3)]
        rng.shuffle(slots)
        max_pairs = (3 * triangles - 1) // 2
        pairs = internal if internal is not None else rng.randint(triangles - 1, max_pairs)
        names: dict[tuple[str, int], str] = {}
        for k in range(pairs):
            names[slots[2 * k]] = names[slots[2 * k + 1]] = f"s{k + 1}"
        boundary = set()
        for k, slot in enumerate(slots[2 * pairs:]):
            names[slot] = f"b{k + 1}"
            boundary.add(f"b{k + 1}")
        tris = tuple((f"T{n}", tuple(names[(f"T{n}", i)] for i in range(3))) for n in range(triangles))
        try:
            t = CutTriangulation("random", tris, frozenset(boundary), frozenset())
        except TriangulationError:
            continue
        if not pairs or not t.ribbon.is_connected():
            continue
        cuts = frozenset((tid, rng.randrange(3)) for tid, _ in tris if t.is_internal_triangle(tid))
        return CutTriangulation("random", tris, frozenset(boundary), cuts)
    raise TriangulationError("could not draw a valid triangulation")
