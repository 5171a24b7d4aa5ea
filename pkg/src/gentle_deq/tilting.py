"""Graded candidate dissections: admissibility, grading synthesis and the
silting/tilting verdict.

Candidate arcs are open edge paths of a reference dissection.  An arc with
grading ``f`` has level ``f`` at its start and ``f + winding`` at its end.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cmp_to_key
from typing import Optional, Sequence

from .curves import (
    CurveError,
    CurvePath,
    gap_free_sector,
    interleave,
    is_simple,
    parse_curve,
    passages,
    reverse,
    winding,
)
from .ribbon import HalfEdge, partner
from .surface import DissectedSurface, compute_shape


class GradingObstruction(ValueError):
    """Two routes between marked points accumulate different windings."""

    def __init__(self, cycle: list[tuple[int, int]], mismatch: int):
        self.cycle = cycle
        self.mismatch = mismatch
        text = " ".join(f"{'+' if s > 0 else '-'}{i + 1}" for i, s in cycle)
        super().__init__(f"arcs {text} form a cycle with winding mismatch {mismatch}")


@dataclass(frozen=True)
class DissectionCheck:
    admissible: bool
    reason: str = ""
    witness: tuple = ()

    def __bool__(self) -> bool:
        return self.admissible


@dataclass(frozen=True)
class GradedDissection:
    arcs: tuple[CurvePath, ...]
    gradings: tuple[int, ...]

    def shifted(self, k: int) -> "GradedDissection":
        return GradedDissection(self.arcs, tuple(g + k for g in self.gradings))


@dataclass(frozen=True)
class SiltingVerdict:
    kind: str  # "tilting", "silting-not-tilting" or "not-silting"
    witness: Optional[tuple] = None
    levels: dict = field(default_factory=dict, compare=False)

    def to_json(self) -> dict:
        out: dict = {"verdict": self.kind}
        if self.witness is not None:
            node, first, second = self.witness
            out["witness"] = {"marked_point": node, "pair": [list(first), list(second)]}
        return out


def dissection_arcs(d: DissectedSurface) -> list[CurvePath]:
    """The arcs of ``d`` itself as one-step paths from end 0 to end 1."""
    return [CurvePath("open", ((a, 0),)) for a in d.arcs]


def parse_candidates(d: DissectedSurface, text: str) -> tuple[list[CurvePath], Optional[list[int]]]:
    """Read ``arc <curve literal> [= <grading>]`` lines."""
    arcs: list[CurvePath] = []
    gradings: list[Optional[int]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if not line.startswith("arc "):
            raise CurveError(f"line {lineno}: expected 'arc <curve> [= <grading>]'")
        body, eq, grade = line[4:].partition("=")
        try:
            arcs.append(parse_curve(d.ribbon, body, kind="open"))
        except CurveError as exc:
            raise CurveError(f"line {lineno}: {exc}") from None
        gradings.append(int(grade) if eq else None)
    if all(g is None for g in gradings):
        return arcs, None
    if any(g is None for g in gradings):
        raise CurveError("either every candidate arc carries a grading or none does")
    return arcs, [int(g) for g in gradings]


def _end_node(d: DissectedSurface, arc: CurvePath):
    return d.ribbon.node_of(arc.end())


def _start_node(d: DissectedSurface, arc: CurvePath):
    return d.ribbon.node_of(arc.start())


def _side_key(d: DissectedSurface, arrive: HalfEdge, exit: Optional[HalfEdge]) -> int:
    """Counter-clockwise distance from the arrival to the exit, or to the gap
    for a path that stops here.  Smaller keys lie further to the right."""
    r = d.ribbon
    v = r.node_of(arrive)
    slots = r.rotation[v]
    if exit is None:
        if None not in slots:
            raise CurveError(f"an arc ends at interior marked point {v}")
        target = slots.index(None)
    else:
        target = r.position(exit)
    return (target - r.position(arrive)) % len(slots)


def _runs(a: CurvePath, b: CurvePath):
    """Maximal shared runs, with ``b`` re-oriented to follow ``a``."""
    ia = {h[0]: i for i, h in enumerate(a.steps)}
    done: set[str] = set()
    for j, h in enumerate(b.steps):
        e = h[0]
        if e not in ia or e in done:
            continue
        bb = b if a.steps[ia[e]] == h else reverse(b)
        jb = {x[0]: k for k, x in enumerate(bb.steps)}[e]
        i = ia[e]
        lo_a, lo_b = i, jb
        while lo_a > 0 and lo_b > 0 and a.steps[lo_a - 1] == bb.steps[lo_b - 1]:
            lo_a -= 1
            lo_b -= 1
        hi_a, hi_b = i, jb
        while (hi_a + 1 < len(a.steps) and hi_b + 1 < len(bb.steps)
               and a.steps[hi_a + 1] == bb.steps[hi_b + 1]):
            hi_a += 1
            hi_b += 1
        for k in range(lo_a, hi_a + 1):
            done.add(a.steps[k][0])
        yield bb, (lo_a, hi_a), (lo_b, hi_b)


def arcs_cross(d: DissectedSurface, a: CurvePath, b: CurvePath) -> bool:
    r = d.ribbon
    pa, pb = passages(r, a), passages(r, b)
    for p in pa:
        for q in pb:
            if p.node == q.node and interleave(r, p, q):
                return True
    for x, y, py in ((a, b, pb), (b, a, pa)):
        for h in (x.start(), x.end()):
            for q in py:
                if r.node_of(h) != q.node or h in (q.entry, q.exit):
                    continue
                sector = gap_free_sector(r, q)
                if sector is None or h in sector:
                    return True
    for bb, (lo_a, hi_a), (lo_b, hi_b) in _runs(a, b):
        arrive_end = partner(a.steps[hi_a])
        ka = _side_key(d, arrive_end, a.steps[hi_a + 1] if hi_a + 1 < len(a.steps) else None)
        kb = _side_key(d, arrive_end, bb.steps[hi_b + 1] if hi_b + 1 < len(bb.steps) else None)
        arrive_start = a.steps[lo_a]
        sa = _side_key(d, arrive_start, partner(a.steps[lo_a - 1]) if lo_a > 0 else None)
        sb = _side_key(d, arrive_start, partner(bb.steps[lo_b - 1]) if lo_b > 0 else None)
        if ka != kb and sa != sb and (ka < kb) == (sa < sb):
            return True
    return False


def _same_arc(a: CurvePath, b: CurvePath) -> bool:
    return a.steps == b.steps or a.steps == reverse(b).steps


def derived_fans(d: DissectedSurface, arcs: Sequence[CurvePath]) -> list[list[tuple[int, int]]]:
    """Counter-clockwise order of candidate arc ends at every marked point.

    An arc end is ``(arc index, 0)`` for the start and ``(arc index, 1)`` for
    the end.  Ends leaving along the same half-edge are ordered by where
    their paths first separate.
    """
    r = d.ribbon
    outgoing: dict[tuple[int, int], CurvePath] = {}
    for i, a in enumerate(arcs):
        outgoing[(i, 0)] = a
        outgoing[(i, 1)] = reverse(a)

    def compare(x, y) -> int:
        p, q = outgoing[x], outgoing[y]
        k = 0
        while k < len(p.steps) and k < len(q.steps) and p.steps[k] == q.steps[k]:
            k += 1
        if k == 0:
            # fan positions already run counter-clockwise from the gap
            return r.position(p.steps[0]) - r.position(q.steps[0])
        arrive = partner(p.steps[k - 1])
        kp = _side_key(d, arrive, p.steps[k] if k < len(p.steps) else None)
        kq = _side_key(d, arrive, q.steps[k] if k < len(q.steps) else None)
        return kp - kq

    fans: dict = {v: [] for v in r.nodes}
    for end, path in outgoing.items():
        fans[r.node_of(path.steps[0])].append(end)
    out = []
    for v in r.nodes:
        slots = r.rotation[v]
        if None not in slots:
            raise CurveError(f"marked point {v} is interior")
        out.append(sorted(fans[v], key=cmp_to_key(compare)))
    return out


def check_dissection(d: DissectedSurface, arcs: Sequence[CurvePath]) -> DissectionCheck:
    r = d.ribbon
    expected = len(d.arcs)
    for i, a in enumerate(arcs):
        if a.is_closed:
            return DissectionCheck(False, "closed curve", (i,))
        try:
            passages(r, a)
        except CurveError as exc:
            return DissectionCheck(False, f"malformed arc: {exc}", (i,))
        if not is_simple(r, a):
            return DissectionCheck(False, "arc is not simple", (i,))
    for i in range(len(arcs)):
        for j in range(i + 1, len(arcs)):
            if _same_arc(arcs[i], arcs[j]):
                return DissectionCheck(False, "duplicate arc", (i, j))
    if len(arcs) != expected:
        return DissectionCheck(False, f"{len(arcs)} arcs, expected {expected}", (len(arcs), expected))
    for i in range(len(arcs)):
        for j in range(i + 1, len(arcs)):
            if arcs_cross(d, arcs[i], arcs[j]):
                return DissectionCheck(False, "arcs cross", (i, j))
    candidate = derived_surface(d, arcs)
    try:
        got = compute_shape(candidate)
    except ValueError as exc:
        return DissectionCheck(False, f"bad region structure: {exc}")
    want = compute_shape(d)
    if (got.as_tuple(), sorted(got.boundary_marks)) != (want.as_tuple(), sorted(want.boundary_marks)):
        return DissectionCheck(False, "regions do not match the surface",
                               (got.as_tuple(), want.as_tuple()))
    return DissectionCheck(True)


def derived_surface(d: DissectedSurface, arcs: Sequence[CurvePath]) -> DissectedSurface:
    """The dissection formed by the candidate arcs, named ``c1``, ``c2``, ..."""
    fans = derived_fans(d, arcs)
    names = tuple(f"c{i + 1}" for i in range(len(arcs)))
    return DissectedSurface(
        f"{d.name}-candidate",
        names,
        tuple(tuple((names[i], e) for i, e in fan) for fan in fans),
        tuple(False for _ in fans),
    )


def endpoint_levels(d: DissectedSurface, gd: GradedDissection) -> dict[tuple[int, int], int]:
    out = {}
    for i, (a, f) in enumerate(zip(gd.arcs, gd.gradings)):
        out[(i, 0)] = f
        out[(i, 1)] = f + winding(d, a)
    return out


def synthesize_grading(d: DissectedSurface, arcs: Sequence[CurvePath]) -> GradedDissection:
    """Level every marked point by propagating windings over a spanning tree."""
    r = d.ribbon
    ends = [(_start_node(d, a), _end_node(d, a), winding(d, a)) for a in arcs]
    level = {r.nodes[0]: 0}
    via: dict = {r.nodes[0]: None}  # arc index and sign used to reach each node
    frontier = [r.nodes[0]]
    while frontier:
        v = frontier.pop(0)
        for i, (s, t, w) in enumerate(ends):
            for here, there, sign in ((s, t, 1), (t, s, -1)):
                if here == v and there not in level:
                    level[there] = level[v] + sign * w
                    via[there] = (i, sign)
                    frontier.append(there)
    missing = [v for v in r.nodes if v not in level]
    if missing:
        raise CurveError(f"marked points {missing} are not reached by any arc")
    tree = {entry[0] for entry in via.values() if entry is not None}

    def route(v) -> list[tuple[int, int]]:
        out = []
        while via[v] is not None:
            i, sign = via[v]
            out.append((i, sign))
            v = ends[i][0] if sign == 1 else ends[i][1]
        return out[::-1]

    for i, (s, t, w) in enumerate(ends):
        if i in tree:
            continue
        mismatch = level[s] + w - level[t]
        if mismatch:
            back = [(k, -sign) for k, sign in reversed(route(t))]
            raise GradingObstruction(route(s) + [(i, 1)] + back, mismatch)
    return GradedDissection(tuple(arcs), tuple(level[s] for s, _, _ in ends))


_RANK = {"tilting": 0, "silting-not-tilting": 1, "not-silting": 2}


def silting_verdict(d: DissectedSurface, gd: GradedDissection) -> SiltingVerdict:
    levels = endpoint_levels(d, gd)
    fans = derived_fans(d, gd.arcs)
    worst = "tilting"
    witness = None
    per_node = {}
    for v, fan in zip(d.ribbon.nodes, fans):
        seq = [levels[e] for e in fan]
        per_node[v] = seq
        if all(x == seq[0] for x in seq):
            continue
        bad = next((k for k in range(len(seq) - 1) if seq[k] < seq[k + 1]), None)
        if bad is None:
            local = "silting-not-tilting"
        else:
            local = "not-silting"
            if worst != "not-silting":
                witness = (v, fan[bad], fan[bad + 1])
        if _RANK[local] > _RANK[worst]:
            worst = local
    return SiltingVerdict(worst, witness if worst == "not-silting" else None, per_node)
