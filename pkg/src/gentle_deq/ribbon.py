"""Ribbon graphs with open slots.

A node's rotation is its counter-clockwise cyclic list of slots.  A slot is
either a half-edge ``(edge_id, end)`` with ``end`` in ``{0, 1}`` or ``None``
for an open slot, which stands for a stretch of boundary at that node.  Both
the dissected surfaces of gentle algebras (nodes are marked points, open
slots are boundary gaps) and the dual graphs of triangulations (nodes are
triangles, open slots are boundary sides) are stored this way.

Faces are traced with the face on the left: arriving at a node via ``h``
the walk departs via ``cw(h)``.
"""
from __future__ import annotations

import random
from collections import deque
from dataclasses import dataclass
from typing import Hashable, Optional

HalfEdge = tuple[str, int]
Slot = Optional[HalfEdge]


def partner(h: HalfEdge) -> HalfEdge:
    return (h[0], 1 - h[1])


def format_half_edge(h: HalfEdge) -> str:
    return f"{h[0]}.{h[1]}"


class RibbonError(ValueError):
    pass


@dataclass(frozen=True)
class Corner:
    node: Hashable
    arrive: Optional[HalfEdge]
    depart: Optional[HalfEdge]
    open_slots: int


class RibbonGraph:
    def __init__(self, rotation: dict[Hashable, tuple[Slot, ...]]):
        self.rotation = {v: tuple(slots) for v, slots in rotation.items()}
        self.nodes = sorted(self.rotation)
        self._where: dict[HalfEdge, tuple[Hashable, int]] = {}
        for v in self.nodes:
            for i, h in enumerate(self.rotation[v]):
                if h is None:
                    continue
                if h in self._where:
                    raise RibbonError(f"half-edge {format_half_edge(h)} appears twice")
                self._where[h] = (v, i)
        for h in self._where:
            if partner(h) not in self._where:
                raise RibbonError(f"half-edge {format_half_edge(h)} has no partner")
        self.edges = sorted({h[0] for h in self._where})
        self._half_at = {v: [h for h in self.rotation[v] if h is not None] for v in self.nodes}

    def node_of(self, h: HalfEdge) -> Hashable:
        try:
            return self._where[h][0]
        except KeyError:
            raise RibbonError(f"unknown half-edge {h!r}") from None

    def position(self, h: HalfEdge) -> int:
        return self._where[h][1]

    def half_edges(self, v: Hashable) -> list[HalfEdge]:
        return list(self._half_at[v])

    def all_half_edges(self) -> list[HalfEdge]:
        return [h for v in self.nodes for h in self._half_at[v]]

    def degree(self, v: Hashable) -> int:
        return len(self._half_at[v])

    def _step(self, h: HalfEdge, direction: int) -> tuple[HalfEdge, int]:
        """Next half-edge from ``h`` in the given direction and open slots skipped."""
        v, i = self._where[h]
        slots = self.rotation[v]
        k = len(slots)
        skipped = 0
        j = i
        while True:
            j = (j + direction) % k
            if slots[j] is None:
                skipped += 1
            else:
                return slots[j], skipped

    def ccw(self, h: HalfEdge) -> HalfEdge:
        return self._step(h, 1)[0]

    def cw(self, h: HalfEdge) -> HalfEdge:
        return self._step(h, -1)[0]

    def open_slots_cw(self, h: HalfEdge) -> int:
        """Open slots swept when turning clockwise from ``h`` to ``cw(h)``."""
        return self._step(h, -1)[1]

    def ccw_sector(self, start: HalfEdge, stop: HalfEdge) -> list[Slot]:
        """Slots strictly between ``start`` and ``stop`` sweeping counter-clockwise."""
        v, i = self._where[start]
        w, j = self._where[stop]
        if v != w:
            raise RibbonError("sector endpoints lie at different nodes")
        slots = self.rotation[v]
        k = len(slots)
        out = []
        t = (i + 1) % k
        while t != j:
            out.append(slots[t])
            t = (t + 1) % k
        return out

    def faces(self) -> list[list[Corner]]:
        """Trace all faces; every half-edge is the arrival of exactly one corner."""
        seen: set[HalfEdge] = set()
        result = []
        for v in self.nodes:
            if not self._half_at[v]:
                result.append([Corner(v, None, None, len(self.rotation[v]))])
                continue
            for start in self._half_at[v]:
                if start in seen:
                    continue
                face = []
                h = start
                while h not in seen:
                    seen.add(h)
                    d, skipped = self._step(h, -1)
                    face.append(Corner(self.node_of(h), h, d, skipped))
                    h = partner(d)
                result.append(face)
        return result

    def is_connected(self) -> bool:
        return len(self.components()) <= 1

    def components(self) -> list[list[Hashable]]:
        seen: set = set()
        comps = []
        for root in self.nodes:
            if root in seen:
                continue
            comp = [root]
            seen.add(root)
            queue = deque([root])
            while queue:
                v = queue.popleft()
                for h in self._half_at[v]:
                    w = self.node_of(partner(h))
                    if w not in seen:
                        seen.add(w)
                        comp.append(w)
                        queue.append(w)
            comps.append(comp)
        return comps

    def euler_characteristic(self) -> int:
        return len(self.nodes) - len(self.edges) + len(self.faces())

    def genus(self) -> int:
        chi = self.euler_characteristic()
        if (2 - chi) % 2:
            raise RibbonError(f"odd Euler characteristic {chi}")
        return (2 - chi) // 2

    def spanning_tree(self, seed: int | None = None) -> "SpanningTree":
        """BFS tree from the least node, or a shuffled BFS when ``seed`` is given."""
        rng = random.Random(seed) if seed is not None else None
        root = self.nodes[0] if rng is None else rng.choice(self.nodes)
        parent: dict[Hashable, Optional[HalfEdge]] = {root: None}
        queue = deque([root])
        while queue:
            v = queue.popleft()
            out = list(self._half_at[v])
            if rng is not None:
                rng.shuffle(out)
            for h in out:
                w = self.node_of(partner(h))
                if w not in parent:
                    parent[w] = partner(h)  # half-edge at w pointing back to v
                    queue.append(w)
        if len(parent) != len(self.nodes):
            raise RibbonError("ribbon graph is disconnected")
        return SpanningTree(self, root, parent)


class SpanningTree:
    def __init__(self, ribbon: RibbonGraph, root: Hashable, parent: dict):
        self.ribbon = ribbon
        self.root = root
        self.parent = parent
        self.tree_edges = {h[0] for h in parent.values() if h is not None}
        self.depth = {}
        for v in parent:
            d, x = 0, v
            while parent[x] is not None:
                x = ribbon.node_of(partner(parent[x]))
                d += 1
            self.depth[v] = d

    def non_tree_edges(self) -> list[str]:
        return [e for e in self.ribbon.edges if e not in self.tree_edges]

    def path(self, u: Hashable, v: Hashable) -> list[HalfEdge]:
        """Departing half-edges of the tree path from ``u`` to ``v``."""
        up: list[HalfEdge] = []  # from u towards the common ancestor
        down: list[HalfEdge] = []  # from v towards the common ancestor, reversed later
        a, b = u, v
        while a != b:
            if self.depth[a] >= self.depth[b]:
                h = self.parent[a]
                up.append(h)
                a = self.ribbon.node_of(partner(h))
            else:
                h = self.parent[b]
                down.append(partner(h))
                b = self.ribbon.node_of(partner(h))
        return up + down[::-1]
