"""Complete derived invariant of a gentle algebra and the equivalence test."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

from .curves import Surface, boundary_curves, winding
from .homology import (
    DEFAULT_BUDGET,
    QuadraticFormUndefined,
    arf_invariant,
    fundamental_cycles,
    genus_one_gcd,
    quadratic_form,
)
from .presentation import GentlePresentation, validate_gentle
from .surface import build_dissected_surface, compute_shape


class NotGentleError(ValueError):
    pass


@dataclass(frozen=True)
class InvariantRecord:
    """Everything the equivalence test compares, with multisets kept sorted.

    ``genus_datum`` is ``None`` in genus 0, ``("gcd", n)`` in genus 1 and
    one of ``("odd",)``, ``("even-zero-mod-4",)`` or ``("even-two-mod-4", arf)``
    from genus 2 on.
    """

    shape: tuple[int, int, int, int, int]
    boundary: tuple[tuple[int, int], ...]
    punctures: tuple[int, ...]
    genus_datum: Optional[tuple]

    @property
    def genus(self) -> int:
        return self.shape[0]

    @property
    def ag(self) -> tuple[tuple[int, int], ...]:
        pairs = [(n, n - w) for n, w in self.boundary] + [(0, -w) for w in self.punctures]
        return tuple(sorted(pairs))

    def to_json(self) -> dict:
        g, b, p, green, red = self.shape
        datum = None
        if self.genus_datum is not None:
            tag = self.genus_datum[0]
            if tag == "gcd":
                datum = {"gcd": self.genus_datum[1]}
            elif tag == "even-two-mod-4":
                datum = {"case": tag, "arf": self.genus_datum[1]}
            else:
                datum = {"case": tag}
        return {
            "shape": {"genus": g, "boundary": b, "punctures": p,
                      "marked_green": green, "marked_red": red},
            "boundary": [{"marks": n, "winding": w} for n, w in self.boundary],
            "punctures": list(self.punctures),
            "ag": [list(pair) for pair in self.ag],
            "genus_datum": datum,
        }


def surface_record(surface: Surface, shape: tuple[int, int, int, int, int],
                   budget: int = DEFAULT_BUDGET, seed: int | None = None) -> InvariantRecord:
    """Assemble the record from any surface whose passages carry winding weights."""
    H = fundamental_cycles(surface, seed)
    boundary, punctures = [], []
    ends = []
    for c, w in zip(H.face_curves, H.boundary_windings()):
        ends.append(w)
        if c.kind == "boundary":
            boundary.append((c.marks, w))
        else:
            punctures.append(w)
    g = shape[0]
    datum: Optional[tuple] = None
    if g == 1:
        datum = ("gcd", genus_one_gcd(H, budget))
    elif g >= 2:
        try:
            q = quadratic_form(H)
        except QuadraticFormUndefined:
            datum = ("odd",)
        else:
            if any(w % 4 == 0 for w in ends):
                datum = ("even-zero-mod-4",)
            else:
                datum = ("even-two-mod-4", arf_invariant(q, H, g).value)
    return InvariantRecord(shape, tuple(sorted(boundary)), tuple(sorted(punctures)), datum)


def compute_invariants(p: GentlePresentation, budget: int = DEFAULT_BUDGET,
                       seed: int | None = None) -> InvariantRecord:
    kind = validate_gentle(p)
    if not kind.is_gentle:
        raise NotGentleError(f"{p.name}: {kind}")
    d = build_dissected_surface(p)
    s = compute_shape(d)
    return surface_record(d, s.as_tuple(), budget, seed)


def ag_invariant(p: GentlePresentation) -> tuple[tuple[int, int], ...]:
    kind = validate_gentle(p)
    if not kind.is_gentle:
        raise NotGentleError(f"{p.name}: {kind}")
    d = build_dissected_surface(p)
    pairs = []
    for c in boundary_curves(d):
        w = winding(d, c.path)
        pairs.append((c.marks, c.marks - w))
    return tuple(sorted(pairs))


@dataclass(frozen=True)
class Verdict:
    equivalent: bool
    clause: Optional[str] = None
    detail: str = ""

    def __str__(self) -> str:
        if self.equivalent:
            return "equivalent"
        return f"inequivalent (clause {self.clause}: {self.detail})"

    def to_json(self) -> dict:
        return {"verdict": "equivalent" if self.equivalent else "inequivalent",
                "clause": self.clause, "detail": self.detail}


def compare_records(a: InvariantRecord, b: InvariantRecord) -> Verdict:
    if a.shape != b.shape:
        return Verdict(False, "1", f"shapes {a.shape} and {b.shape} differ")
    if a.boundary != b.boundary:
        return Verdict(False, "2", f"boundary data {list(a.boundary)} and {list(b.boundary)} differ")
    if a.punctures != b.punctures:
        return Verdict(False, "2", f"puncture windings {list(a.punctures)} and {list(b.punctures)} differ")
    if a.genus_datum != b.genus_datum:
        clause = "3(a)" if a.genus == 1 else "3(b)"
        return Verdict(False, clause, f"genus data {a.genus_datum} and {b.genus_datum} differ")
    return Verdict(True)


def derived_equivalent(a: GentlePresentation, b: GentlePresentation,
                       budget: int = DEFAULT_BUDGET, seed: int | None = None) -> Verdict:
    return compare_records(compute_invariants(a, budget, seed), compute_invariants(b, budget, seed))


def partition(records: Sequence[InvariantRecord]) -> list[list[int]]:
    """Group indices by equal records, classes ordered by first member."""
    classes: dict[InvariantRecord, list[int]] = {}
    for i, r in enumerate(records):
        classes.setdefault(r, []).append(i)
    return sorted(classes.values(), key=lambda c: c[0])
