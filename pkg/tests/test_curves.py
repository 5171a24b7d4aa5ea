import random

import pytest
from hypothesis import given, settings, strategies as st

from conftest import load_alg
from generators import random_closed_curve, random_gentle, random_open_path
from gentle_deq.curves import (
    CurveError,
    CurvePath,
    boundary_curves,
    close,
    concatenate,
    crossing_passages,
    is_simple,
    parse_curve,
    passages,
    reverse,
    rotate,
    smooth_compose,
    winding,
)
from gentle_deq.homology import fundamental_cycles
from gentle_deq.presentation import parse_presentation
from gentle_deq.ribbon import partner
from gentle_deq.surface import UnsupportedPassage, build_dissected_surface, parse_dissection
from gentle_deq.tilting import dissection_arcs


def surface(name):
    return build_dissected_surface(load_alg(name))


def face_windings(d):
    return [(c.kind, c.marks, winding(d, c.path)) for c in boundary_curves(d)]


def test_reversed_passage_flips_turn_sign():
    d = surface("pair2_lambda1")
    for fan in d.fans:
        for x in fan:
            for y in fan:
                if x != y:
                    v = d.ribbon.node_of(x)
                    assert d.passage_weight(v, x, y) == -d.passage_weight(v, y, x) != 0


def test_disc_boundary_curve_winds_twice():
    d = build_dissected_surface(parse_presentation("vertices: 1\n"))
    (c,) = boundary_curves(d)
    assert [p.wrap for p in passages(d.ribbon, c.path)] == [1, 1]
    assert winding(d, c.path) == 2


@pytest.mark.parametrize("name", ["torus_lambda1", "torus_lambda2"])
def test_torus_boundary_curve(name):
    assert face_windings(surface(name)) == [("boundary", 2, -2)]


def test_torus_lambda2_basis_windings():
    d = surface("torus_lambda2")
    H = fundamental_cycles(d)
    assert sorted(H.windings) == [0, 2]


@pytest.mark.parametrize("name", ["pair2_lambda1", "pair2_lambda2"])
def test_second_example_windings(name):
    got = face_windings(surface(name))
    assert sorted(w for _, _, w in got) == [-3, -3, 0]
    assert sorted((k, n, w) for k, n, w in got) == [
        ("boundary", 1, 0), ("boundary", 2, -3), ("puncture", 0, -3)]


def test_dissection_arcs_have_zero_winding():
    d = surface("pair2_lambda2")
    assert all(winding(d, a) == 0 for a in dissection_arcs(d))


def test_interior_vertex_passage_unsupported():
    d = parse_dissection("surface s\narc x\narc y\ninterior-vertex: x.0 y.0\nvertex: x.1\nvertex: y.1\n")
    path = CurvePath("open", (("x", 1), ("y", 0)))
    with pytest.raises(UnsupportedPassage):
        winding(d, path)


def test_backtracking_rejected():
    d = surface("torus_lambda1")
    h = d.ribbon.all_half_edges()[0]
    with pytest.raises(CurveError, match="backtrack"):
        passages(d.ribbon, CurvePath("open", (h, partner(h))))


def test_arc_followed_by_its_reverse_is_not_simple():
    d = surface("torus_lambda1")
    arc = CurvePath("open", (("1", 0),))
    with pytest.raises(CurveError):
        close(concatenate(arc, reverse(arc), d.ribbon), d.ribbon)


def test_parse_curve_literal_and_describe():
    d = surface("torus_lambda1")
    for c in fundamental_cycles(d).basis:
        assert parse_curve(d.ribbon, c.describe()) == c


def test_parse_curve_bare_tokens_and_via():
    d = surface("pair2_lambda1")
    c = fundamental_cycles(d).basis[0]
    bare = " ".join(h[0] for h in c.steps)
    try:
        inferred = parse_curve(d.ribbon, bare)
    except CurveError as exc:
        assert "via" in str(exc)
    else:
        assert inferred == c
    explicit = " ".join(f"via {h[0]}.{h[1]}" for h in c.steps)
    assert parse_curve(d.ribbon, explicit) == c


def test_ambiguous_literal_reports_via():
    # a one-arc loop can be read in either direction
    d = build_dissected_surface(parse_presentation("vertices: 1\narrow a: 1 -> 1\nrelation a a\n"))
    with pytest.raises(CurveError, match="via"):
        parse_curve(d.ribbon, "1")


def test_unknown_arc_in_literal():
    d = surface("torus_lambda1")
    with pytest.raises(CurveError, match="unknown arc"):
        parse_curve(d.ribbon, "9.+")


def test_rotation_keeps_winding():
    d = surface("pair2_lambda1")
    for c in fundamental_cycles(d).basis:
        for k in range(len(c.steps)):
            assert winding(d, rotate(c, k)) == winding(d, c)


def short_closed_curves(ribbon, max_len):
    out = []

    def walk(steps):
        entry = partner(steps[-1])
        if ribbon.node_of(entry) == ribbon.node_of(steps[0]) and entry != steps[0]:
            out.append(CurvePath("closed", tuple(steps)))
        if len(steps) < max_len:
            for h in ribbon.half_edges(ribbon.node_of(entry)):
                if h != entry:
                    walk(steps + [h])

    for h in ribbon.all_half_edges():
        walk([h])
    return out


@pytest.mark.parametrize("name", ["torus_lambda1", "torus_lambda2"])
def test_three_arc_tori_have_no_transversal_crossings(name):
    # a transversal crossing needs four distinct half-edges at one node
    r = surface(name).ribbon
    assert max(r.degree(v) for v in r.nodes) == 3
    curves = short_closed_curves(r, 4)
    assert not any(crossing_passages(r, a, b) for a in curves for b in curves)


@pytest.mark.parametrize("name", ["pair2_lambda1", "pair2_lambda2"])
def test_smoothing_genus_one_curves_adds_windings(name):
    d = surface(name)
    r = d.ribbon
    curves = short_closed_curves(r, 4)
    checked = 0
    for a in curves:
        for b in curves:
            for at in crossing_passages(r, a, b):
                c = smooth_compose(r, a, b, at)
                assert winding(d, c) == winding(d, a) + winding(d, b)
                checked += 1
    assert checked > 0


def test_smoothing_needs_a_crossing():
    d = surface("torus_lambda1")
    alpha, _ = fundamental_cycles(d).basis
    with pytest.raises(CurveError):
        smooth_compose(d.ribbon, alpha, alpha, (0, 0))


def test_curve_with_a_contractible_detour_is_not_simple():
    d = surface("torus_lambda1")
    alpha, _ = fundamental_cycles(d).basis
    doubled = CurvePath("closed", alpha.steps * 2, alpha.wraps * 2)
    assert not is_simple(d.ribbon, doubled)


@settings(max_examples=50, deadline=None)
@given(st.integers(min_value=0, max_value=10**9))
def test_winding_additive_at_junctions(seed):
    rng = random.Random(seed)
    d = build_dissected_surface(random_gentle(rng))
    r = d.ribbon
    for _ in range(2):
        a = random_open_path(rng, r, rng.randint(1, 6))
        v = r.node_of(a.end())
        options = [h for h in r.half_edges(v) if h != a.end()]
        if options:
            first, wrap = rng.choice(options), 0
        else:
            first, wrap = a.end(), rng.choice((1, -1))
        b = random_open_path(rng, r, rng.randint(1, 6), start=first)
        joined = concatenate(a, b, r, wrap)
        junction = d.passage_weight(v, a.end(), first, wrap)
        assert winding(d, joined) == winding(d, a) + winding(d, b) + junction


@settings(max_examples=50, deadline=None)
@given(st.integers(min_value=0, max_value=10**9))
def test_closing_adds_one_turn(seed):
    rng = random.Random(seed)
    d = build_dissected_surface(random_gentle(rng))
    c = random_closed_curve(rng, d.ribbon)
    if c is None:
        return
    opened = CurvePath("open", c.steps, c.wraps[:-1])
    last = passages(d.ribbon, c)[-1]
    assert winding(d, close(opened, d.ribbon, c.wraps[-1])) == winding(d, opened) + \
        d.passage_weight(last.node, last.entry, last.exit, last.wrap)


@settings(max_examples=60, deadline=None)
@given(st.integers(min_value=0, max_value=10**9))
def test_smoothing_parity_is_additive(seed):
    rng = random.Random(seed)
    d = build_dissected_surface(random_gentle(rng))
    a = random_closed_curve(rng, d.ribbon, allow_wraps=False)
    b = random_closed_curve(rng, d.ribbon, allow_wraps=False)
    if a is None or b is None:
        return
    for at in crossing_passages(d.ribbon, a, b)[:3]:
        c = smooth_compose(d.ribbon, a, b, at)
        assert (winding(d, c) - winding(d, a) - winding(d, b)) % 2 == 0
