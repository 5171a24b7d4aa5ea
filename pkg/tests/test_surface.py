import random

import pytest
from hypothesis import given, settings, strategies as st

from conftest import DATA, load_alg
from generators import random_gentle
from gentle_deq.presentation import PresentationError, parse_presentation, validate_gentle
from gentle_deq.surface import (
    DissectionError,
    algebra_of_dissection,
    build_dissected_surface,
    compute_shape,
    parse_dissection,
    regions,
)
from oracles import isomorphic


def exam():
    return parse_dissection((DATA / "exam_dissection.dis").read_text())


def test_torus_surface_has_three_arcs_and_two_fans():
    d = build_dissected_surface(load_alg("torus_lambda1"))
    assert len(d.arcs) == 3
    # the relation-free composites a.d and b.c each chain three arc ends
    assert sorted(len(f) for f in d.fans) == [3, 3]


def test_algebra_k_gives_two_singleton_fans():
    d = build_dissected_surface(parse_presentation("vertices: 1\n"))
    assert d.arcs == ("1",)
    assert sorted(d.fans) == [(("1", 0),), (("1", 1),)]


def test_second_example_has_six_arcs():
    assert len(build_dissected_surface(load_alg("pair2_lambda1")).arcs) == 6


def test_fan_neighbours_are_arrows():
    p = load_alg("pair2_lambda2")
    d = build_dissected_surface(p)
    pairs = sorted((s[0], t[0]) for fan in d.fans for s, t in zip(fan, fan[1:]))
    assert pairs == sorted((a.source, a.target) for a in p.arrows)


@pytest.mark.parametrize("name, shape, marks", [
    ("torus_lambda1", (1, 1, 0, 2, 2), [2]),
    ("torus_lambda2", (1, 1, 0, 2, 2), [2]),
    ("pair2_lambda1", (1, 2, 1, 3, 3), [1, 2]),
    ("pair2_lambda2", (1, 2, 1, 3, 3), [1, 2]),
])
def test_shapes_of_worked_examples(name, shape, marks):
    s = compute_shape(build_dissected_surface(load_alg(name)))
    assert s.as_tuple() == shape
    assert sorted(s.boundary_marks) == marks


def test_shape_json_keys():
    s = compute_shape(build_dissected_surface(load_alg("torus_lambda1")))
    assert s.to_json() == {"genus": 1, "boundary": 1, "punctures": 0, "marked_green": 2,
                           "marked_red": 2, "boundary_marks": [2]}


def test_disc_diameter_has_two_boundary_regions():
    rs = regions(build_dissected_surface(parse_presentation("vertices: 1\n")))
    assert [r.kind for r in rs] == [1, 1]


def test_second_example_has_one_punctured_region():
    rs = regions(build_dissected_surface(load_alg("pair2_lambda1")))
    assert sum(r.kind == 2 for r in rs) == 1
    assert sum(r.kind == 1 for r in rs) == 3


def test_exam_dissection_algebra():
    d = exam()
    s = compute_shape(d)
    assert (s.genus, s.boundary, s.punctures, s.green_punctures) == (0, 1, 2, 1)
    assert s.expected_arcs() == len(d.arcs) == 8
    rs = regions(d)
    assert sorted(r.kind for r in rs) == [1] * 6 + [2] * 2
    a = algebra_of_dissection(d)
    assert sorted((x.source, x.target) for x in a.arrows) == sorted([
        ("1", "5"), ("5", "6"), ("6", "4"), ("4", "1"), ("1", "2"), ("2", "3"),
        ("3", "4"), ("7", "5"), ("8", "6"), ("6", "7")])
    ends = {x.id: (x.source, x.target) for x in a.arrows}
    assert sorted(ends[x] + ends[y][1:] for x, y in a.relations) == sorted([
        ("6", "7", "5"), ("5", "6", "7"), ("4", "1", "2"), ("1", "2", "3"),
        ("2", "3", "4"), ("3", "4", "1"), ("7", "5", "6"), ("8", "6", "4")])
    assert validate_gentle(a).kind == "locally-gentle-infinite"


def test_each_arc_is_crossed_by_one_dual_arc():
    # every arc side appears in exactly two region boundaries (once per side)
    d = exam()
    sides = [h for r in regions(d) for h in r.sides]
    assert sorted(sides) == sorted((a, e) for a in d.arcs for e in (0, 1))


def test_one_arc_two_singleton_fans_is_k():
    d = parse_dissection("surface k\narc x\nvertex: x.0\nvertex: x.1\n")
    a = algebra_of_dissection(d)
    assert a.vertices == ("x",) and not a.arrows


@pytest.mark.parametrize("text", [
    "surface s\narc x\nvertex: x.0\n",
    "surface s\narc x\nvertex: x.0 x.0\nvertex: x.1\n",
    "surface s\narc x\nvertex: y.0\nvertex: x.1\n",
])
def test_bad_dissections_rejected(text):
    with pytest.raises((DissectionError, PresentationError)):
        parse_dissection(text)


def test_dissection_text_round_trip():
    d = exam()
    assert parse_dissection(d.to_text()) == d


@settings(max_examples=60, deadline=None)
@given(st.integers(min_value=0, max_value=10**9))
def test_round_trip_and_region_counts(seed):
    p = random_gentle(random.Random(seed))
    d = build_dissected_surface(p)
    s = compute_shape(d)
    assert len(d.arcs) == s.marked_green + s.punctures + s.boundary + 2 * s.genus - 2
    assert sum(s.boundary_marks) == s.marked_green == s.marked_red
    rs = regions(d)
    assert sum(r.kind == 1 for r in rs) == s.marked_green
    assert sum(r.kind == 2 for r in rs) == s.punctures
    back = algebra_of_dissection(d)
    assert validate_gentle(back).is_gentle
    assert len(back.relations) == len(p.relations)
    assert isomorphic(back, p)
