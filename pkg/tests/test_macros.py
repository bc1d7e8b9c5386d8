import pytest

from chartbench import analysis, zoo
from chartbench.macros import (
    ArcRef,
    detect_d_alpha_arcs,
    find_special_oval_disk,
    make_arc_free,
    remove_edge_crossings,
    search_reduction,
    shift_white,
    x_change,
)
from chartbench.model import OperationError, canonical_key, strand_of_edge, validate
from chartbench.model import _flood_faces
from chartbench.moves import run_script


def _dip_data(chart):
    """(alpha chain, disk faces) around the built dip."""
    alpha = strand_of_edge(chart, "e0").edges
    pocket = None
    for f in chart.faces():
        if len(f.cycle) != 2:
            continue
        labels = sorted(chart.edge(t[0]).label for t in f.cycle)
        if labels == [1, 3]:
            pocket = f.key
    assert pocket is not None
    faces = _flood_faces(chart, {pocket}, set(alpha) | {"e2"})
    return ArcRef(alpha), frozenset(faces)


def test_dip_chart_valid():
    c = zoo.dip_chart()
    rep = validate(c, policy=())
    assert rep.verdict, rep.violations
    assert validate(zoo.twin_lens_chart(), policy=()).verdict


def test_detect_d_alpha_arcs():
    c = zoo.dip_chart()
    alpha, disk = _dip_data(c)
    arcs = detect_d_alpha_arcs(c, disk, alpha)
    assert len(arcs) == 1
    (arc,) = arcs
    assert len(arc.edges) == 1
    assert c.edge(arc.edges[0]).label == 3


def test_detect_excludes_outside_endpoint():
    c = zoo.dip_chart()
    alpha, disk = _dip_data(c)
    trimmed = ArcRef(alpha.edges[:-1])
    # removing the final alpha piece moves one dip endpoint off the arc
    arcs = detect_d_alpha_arcs(c, disk, trimmed)
    assert arcs == [] or len(trimmed.edges) > 2


def test_make_arc_free_removes_dip():
    c = zoo.dip_chart()
    alpha, disk = _dip_data(c)
    out, script = make_arc_free(c, disk, alpha)
    assert len(script.steps) == 1
    assert script.steps[0].kind == "CI-R2"
    assert validate(out, policy=()).verdict
    assert analysis.census(out).c == analysis.census(c).c - 2
    alive = tuple(e for e in alpha.edges if out.has_edge(e))
    arcs_after = detect_d_alpha_arcs(out, frozenset(out.face_keys()), ArcRef(alive))
    assert arcs_after == []


def test_make_arc_free_empty_is_noop():
    c = zoo.dip_chart()
    alpha = ArcRef(("e2",))
    out, script = make_arc_free(c, frozenset(), alpha)
    assert out == c and script.steps == ()


def test_remove_edge_crossings():
    c = zoo.dip_chart()
    # g is internal of label 3 with endpoints wc (pair 3,4) and wd (3,4):
    # both on the same pair, so hypotheses fail for g; use a staged strand
    with pytest.raises(OperationError):
        remove_edge_crossings(c, "g1")


def test_remove_edge_crossings_on_staged_strand():
    c = zoo.shiftable_chart()
    out, script = remove_edge_crossings(c, "e_a")
    assert validate(out, policy=()).verdict
    from chartbench.model import strand_of_edge

    s = strand_of_edge(out, next(e for e in ("e_a", "e_b") if out.has_edge(e)))
    # the strand carries no crossings afterwards
    assert len(s.edges) == 1
    kinds = {out.vertex(out.edge(e).tail[0]).kind for e in s.edges}
    assert len(script.steps) == 3  # two dips and a block flip


def test_shift_white():
    c = zoo.shiftable_chart()
    out, script = shift_white(c, "wk", "e_a")
    assert validate(out, policy=()).verdict
    assert len(script.steps) == 3
    # the germ edge has no adjacent crossing anymore
    d = next(d for d in out.rotation("wk") if d.edge in ("e_a", "e_b") and out.has_edge(d.edge))
    far = out.dart_vertex(d.opposite())
    assert out.vertex(far).kind != "crossing"


def test_shift_white_trivial_and_error():
    c = zoo.shiftable_chart()
    # shifting along a crossing-free germ is a no-op
    out, script = shift_white(c, "wk", "t_k")
    assert script.steps == () and out == c
    # hypotheses fail when the wall label lies between the pair labels
    with pytest.raises(OperationError):
        shift_white(c, "wk", "bad")


def test_x_change_round_trip():
    c = zoo.special_oval_chart()
    disk = find_special_oval_disk(c, 2)
    mid, script = x_change(c, disk)
    assert validate(mid, policy=()).verdict
    assert analysis.census(mid).c == analysis.census(c).c + 1
    disk2 = find_special_oval_disk(mid, 2)
    back, script2 = x_change(mid, disk2)
    assert canonical_key(back) == canonical_key(c)


def test_x_change_requires_special_oval():
    c = zoo.oval_chart()
    disks = analysis.angled_disks(c, 2)
    for d in disks:
        with pytest.raises(OperationError):
            x_change(c, d)


def test_x_change_matches_catalog_target():
    from chartbench.patterns import load_pattern, match

    c = zoo.special_oval_chart()
    assert match(c, load_pattern("fig15a"), symmetry=True)
    mid, _ = x_change(c, find_special_oval_disk(c, 2))
    assert match(mid, load_pattern("fig15b"), symmetry=True)
    assert not match(mid, load_pattern("fig15a"), symmetry=True)


def test_search_reduction_empty():
    assert search_reduction(zoo.empty_chart(), depth=1, budget=10) is None


def test_search_reduction_finds_w_drop():
    from tests.test_moves import non_middle_terminal_chart

    c = non_middle_terminal_chart()
    found = search_reduction(c, depth=1, budget=50)
    assert found is not None
    script, cert = found
    assert cert.rule == "complexity-reduced"
    out, _ = run_script(c, script)
    assert analysis.complexity(out) < analysis.complexity(c)


def test_search_reduction_finds_a2_certificate():
    c = zoo.seven_white_chart()
    found = search_reduction(c, depth=1, budget=400)
    assert found is not None
    script, cert = found
    assert cert.rule in ("Assumption 2", "complexity-reduced")
