"""First homology of a ribbon surface, intersection forms, the winding
quadratic form over GF(2) and its Arf invariant, and the genus-one gcd.

GF(2) vectors are Python ints used as bitsets; bit ``i`` is the coefficient
of basis cycle ``i``.
"""
from __future__ import annotations

import logging
from collections import deque
from dataclasses import dataclass, field
from typing import Iterator

from .curves import (
    CurvePath,
    FaceCurve,
    Surface,
    crossing_passages,
    face_curves,
    gcd_all,
    intersection_number,
    is_simple,
    smooth_compose,
    winding,
)
from .ribbon import SpanningTree

log = logging.getLogger(__name__)

DEFAULT_BUDGET = 10_000


class QuadraticFormUndefined(ValueError):
    """Some class has odd winding, so no quadratic form w/2 + 1 exists."""

    def __init__(self, witness: str, winding_value: int):
        self.witness = witness
        self.winding = winding_value
        super().__init__(f"{witness} has odd winding {winding_value}")


class DegenerateFormError(ArithmeticError):
    pass


class SearchBudgetExhausted(RuntimeError):
    def __init__(self, budget: int):
        self.budget = budget
        super().__init__(f"no symplectic pair found within {budget} spliced candidates")


@dataclass
class HomologySpace:
    surface: Surface
    tree: SpanningTree
    cycle_edges: list[str]
    basis: list[CurvePath]
    face_curves: list[FaceCurve]
    z_gram: list[list[int]]
    windings: list[int] = field(default_factory=list)

    @property
    def rank(self) -> int:
        return len(self.basis)

    def coords(self, path: CurvePath) -> tuple[int, ...]:
        """Integer coordinates of a closed curve in the fundamental-cycle basis."""
        index = {e: i for i, e in enumerate(self.cycle_edges)}
        out = [0] * self.rank
        for edge, end in path.steps:
            if edge in index:
                out[index[edge]] += 1 if end == 0 else -1
        return tuple(out)

    def pair(self, x: tuple[int, ...], y: tuple[int, ...]) -> int:
        return sum(x[i] * self.z_gram[i][j] * y[j]
                   for i in range(self.rank) if x[i]
                   for j in range(self.rank) if y[j])

    def z2_gram(self) -> list[int]:
        """Rows of the GF(2) Gram matrix as bitsets."""
        return [sum(1 << j for j in range(self.rank) if self.z_gram[i][j] % 2)
                for i in range(self.rank)]

    def mod2(self, x: tuple[int, ...]) -> int:
        return sum(1 << i for i, c in enumerate(x) if c % 2)

    def boundary_coords(self) -> list[tuple[int, ...]]:
        return [self.coords(c.path) for c in self.face_curves]

    def boundary_windings(self) -> list[int]:
        return [winding(self.surface, c.path) for c in self.face_curves]

    def to_json(self) -> dict:
        return {
            "basis": [c.describe() for c in self.basis],
            "z_gram": self.z_gram,
            "z2_gram": [[v % 2 for v in row] for row in self.z_gram],
            "windings": self.windings,
        }


def fundamental_cycles(surface: Surface, seed: int | None = None) -> HomologySpace:
    ribbon = surface.ribbon
    tree = ribbon.spanning_tree(seed)
    edges = tree.non_tree_edges()
    basis = []
    for e in edges:
        u = ribbon.node_of((e, 0))
        w = ribbon.node_of((e, 1))
        basis.append(CurvePath("closed", ((e, 0),) + tuple(tree.path(w, u))))
    gram = [[intersection_number(ribbon, a, b) for b in basis] for a in basis]
    space = HomologySpace(surface, tree, edges, basis, face_curves(ribbon), gram)
    space.windings = [winding(surface, c) for c in basis]
    return space


@dataclass(frozen=True)
class WindingQuadraticForm:
    values: tuple[int, ...]
    gram2: tuple[int, ...]

    def __call__(self, x: int) -> int:
        """Polarized value: sum of basis values plus the pairwise form terms."""
        total = 0
        bits = [i for i in range(len(self.values)) if x >> i & 1]
        for k, i in enumerate(bits):
            total += self.values[i]
            for j in bits[k + 1:]:
                total += self.gram2[i] >> j & 1
        return total % 2

    def form(self, x: int, y: int) -> int:
        total = 0
        for i in range(len(self.values)):
            if x >> i & 1:
                total ^= bin(self.gram2[i] & y).count("1") & 1
        return total


def quadratic_form(H: HomologySpace) -> WindingQuadraticForm:
    for c, w in zip(H.face_curves, H.boundary_windings()):
        if w % 2:
            raise QuadraticFormUndefined(f"{c.kind} curve {c.index}", w)
    for i, w in enumerate(H.windings):
        if w % 2:
            raise QuadraticFormUndefined(f"basis cycle {i + 1} ({H.basis[i].describe()})", w)
    values = tuple((w // 2 + 1) % 2 for w in H.windings)
    return WindingQuadraticForm(values, tuple(H.z2_gram()))


@dataclass(frozen=True)
class ArfResult:
    value: int
    descends: bool
    pairs: tuple[tuple[int, int], ...]
    radical: tuple[int, ...]


def symplectic_reduction(form, rank: int) -> tuple[list[tuple[int, int]], list[int]]:
    """Split GF(2)^rank into hyperbolic pairs and a radical for an alternating form."""
    pool = [1 << i for i in range(rank)]
    pairs = []
    while True:
        hit = next(((i, j) for i in range(len(pool)) for j in range(i + 1, len(pool))
                    if form(pool[i], pool[j])), None)
        if hit is None:
            break
        i, j = hit
        x, y = pool[i], pool[j]
        pairs.append((x, y))
        rest = [z for k, z in enumerate(pool) if k not in (i, j)]
        pool = [z ^ (x if form(z, y) else 0) ^ (y if form(z, x) else 0) for z in rest]
    return pairs, [z for z in pool if z]


def arf_invariant(q: WindingQuadraticForm, H: HomologySpace, genus: int | None = None) -> ArfResult:
    pairs, radical = symplectic_reduction(q.form, len(q.values))
    if genus is not None and len(pairs) != genus:
        raise DegenerateFormError(f"found {len(pairs)} hyperbolic pairs, expected {genus}")
    descends = all(q(z) == 0 for z in radical)
    value = sum(q(a) * q(b) for a, b in pairs) % 2
    return ArfResult(value, descends, tuple(pairs), tuple(radical))


@dataclass(frozen=True)
class SymplecticPair:
    alpha: CurvePath
    beta: CurvePath
    alpha_winding: int
    beta_winding: int
    spliced: bool


def symplectic_pairs(H: HomologySpace, budget: int = DEFAULT_BUDGET) -> Iterator[SymplecticPair]:
    """Simple closed curves meeting algebraically once, fundamental cycles first.

    When no pair of fundamental cycles works, crossings are resolved with
    ``smooth_compose`` breadth-first, keeping only simple results.  At most
    ``budget`` spliced candidates are generated.
    """
    ribbon = H.surface.ribbon
    pool: list[CurvePath] = list(H.basis)
    coords = [H.coords(c) for c in pool]
    spliced = [False] * len(pool)
    seen = set(coords)
    wind: dict[int, int] = {}

    def w(k: int) -> int:
        if k not in wind:
            wind[k] = winding(H.surface, pool[k])
        return wind[k]

    def hits(k: int) -> Iterator[SymplecticPair]:
        for i in range(k):
            if abs(H.pair(coords[i], coords[k])) == 1:
                yield SymplecticPair(pool[i], pool[k], w(i), w(k), spliced[i] or spliced[k])

    for k in range(len(pool)):
        yield from hits(k)
    generated = 0
    queue = deque((i, j) for i in range(len(pool)) for j in range(i + 1, len(pool)))
    while queue:
        i, j = queue.popleft()
        for at in crossing_passages(ribbon, pool[i], pool[j]):
            if generated >= budget:
                return
            generated += 1
            c = smooth_compose(ribbon, pool[i], pool[j], at)
            if not is_simple(ribbon, c):
                continue
            x = H.coords(c)
            if x in seen or not any(x):
                continue
            seen.add(x)
            pool.append(c)
            coords.append(x)
            spliced.append(True)
            k = len(pool) - 1
            yield from hits(k)
            queue.extend((t, k) for t in range(k))


def genus_one_gcd(H: HomologySpace, budget: int = DEFAULT_BUDGET) -> int:
    pair = next(symplectic_pairs(H, budget), None)
    if pair is None:
        raise SearchBudgetExhausted(budget)
    if pair.spliced:
        log.info("genus-one pair needed splicing")
    ends = [w + 2 for w in H.boundary_windings()]
    return gcd_all([pair.alpha_winding, pair.beta_winding] + ends)
