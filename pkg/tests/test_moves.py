import pytest

from chartbench import zoo
from chartbench.analysis import census
from chartbench.model import OperationError, canonical_key, trace_faces, validate
from chartbench.moves import (
    Script,
    apply_move,
    apply_move_ex,
    applicable_moves,
    expected_delta,
    moves_catalog,
    run_script,
    script_from_payload,
    spec,
)


def roundtrip(chart, sp):
    """apply, invert, apply; return all three charts."""
    res = apply_move_ex(chart, sp)
    res2 = apply_move_ex(res.chart, res.inverse)
    return res.chart, res.inverse, res2.chart


def assert_delta(chart, sp, after):
    before_c = census(chart)
    after_c = census(after)
    want = expected_delta(sp)
    assert after_c.w - before_c.w == want["w"]
    assert after_c.b - before_c.b == want["b"]
    assert after_c.c - before_c.c == want["c"]
    assert len(after.hoops) - len(chart.hoops) == want["hoops"]


def test_m1_forward_backward():
    c = zoo.empty_chart(3)
    sp = spec("CI-M1", "forward", face="sphere", label=1, ccw=True, parent=None)
    mid, inv, back = roundtrip(c, sp)
    assert len(mid.hoops) == 1
    assert canonical_key(back) == canonical_key(c)
    assert_delta(c, sp, mid)


def test_m1_nested_hoops():
    c = zoo.empty_chart(3)
    c1 = apply_move(c, spec("CI-M1", "forward", face="sphere", label=1, ccw=True, parent=None))
    c2 = apply_move(c1, spec("CI-M1", "forward", face="sphere", label=2, ccw=False, parent=0))
    assert len(c2.hoops) == 2 and c2.hoops[1].parent == 0
    with pytest.raises(OperationError):
        apply_move(c2, spec("CI-M1", "backward", hoop=0))  # has a child
    c3 = apply_move(c2, spec("CI-M1", "backward", hoop=1))
    assert canonical_key(c3) == canonical_key(c1)


def test_empty_chart_offers_only_hoop_birth():
    c = zoo.empty_chart(3)
    kinds = {m.kind for m in applicable_moves(c)}
    assert kinds == {"CI-M1"}
    assert all(m.direction == "forward" for m in applicable_moves(c))


def m2_alpha_spec(c):
    """The reconnection between the terminal e5 and the boundary piece s23a
    that they co-bound (the alpha-arc reconnection)."""
    moat = None
    for f in trace_faces(c):
        ids = {t[0] for t in f.cycle}
        if "e5" in ids and "s23a" in ids:
            moat = f
            break
    assert moat is not None
    ts = next(t for t in moat.cycle if t[0] == "s23a")
    te5 = next(t for t in moat.cycle if t[0] == "e5" and t[1] == ts[1])
    return spec(
        "CI-M2",
        "forward",
        t1=te5[0] + ("+" if te5[1] > 0 else "-"),
        t2=ts[0] + ("+" if ts[1] > 0 else "-"),
    )


def test_m2_reconnection_on_seven_white():
    c = zoo.seven_white_chart()
    sp = m2_alpha_spec(c)
    mid, inv, back = roundtrip(c, sp)
    assert canonical_key(back) == canonical_key(c)
    assert_delta(c, sp, mid)
    # the reconnection grafts a terminal strand onto w2 at a non-middle slot
    rep = validate(mid, policy=("A2",))
    assert not rep.verdict
    assert any("not middle at w2" in v.locus for v in rep.violations)


def test_m2_rejects_disconnection():
    c = zoo.oval_chart()
    # e4+ and e5+ share the outer face but reconnection strands a free edge
    with pytest.raises(OperationError):
        apply_move(c, spec("CI-M2", "forward", t1="e4+", t2="e5+"))


def test_m2_rejects_label_mismatch():
    c = zoo.oval_chart()
    with pytest.raises(OperationError):
        apply_move(c, spec("CI-M2", "forward", t1="e4+", t2="ea+"))


def test_r2_forward_backward():
    c = zoo.seven_white_chart()
    # b55b (label 3) and e4 (label 1... e4 is label 2; use e_1a label 1)
    target = None
    for f in trace_faces(c):
        ids = {t[0] for t in f.cycle}
        if "b55b" in ids and "e4" in ids:
            target = f
            break
    assert target is not None
    tb = next(t for t in target.cycle if t[0] == "b55b")
    ta = next(t for t in target.cycle if t[0] == "e_1a")
    sp = spec(
        "CI-R2",
        "forward",
        t1=tb[0] + ("+" if tb[1] > 0 else "-"),
        t2=ta[0] + ("+" if ta[1] > 0 else "-"),
    )
    mid, inv, back = roundtrip(c, sp)
    assert canonical_key(back) == canonical_key(c)
    assert_delta(c, sp, mid)
    assert inv.kind == "CI-R2" and inv.direction == "backward"


def test_r3_triangle_flip():
    c = zoo.three_rings_chart()
    face = trace_faces(c)[0]
    sp = spec("CI-R3", "forward", face=face.key)
    mid, inv, back = roundtrip(c, sp)
    assert canonical_key(back) == canonical_key(c)
    assert_delta(c, sp, mid)
    assert census(mid).c == census(c).c


def test_r4_block_flip():
    c = zoo.ring_lens_chart()
    sp = spec("CI-R4", "forward", white="wa", slot=0)
    mid, inv, back = roundtrip(c, sp)
    assert validate(mid, policy=()).verdict
    assert canonical_key(back) == canonical_key(c)
    assert_delta(c, sp, mid)


def test_c2_forward_backward():
    c = zoo.seven_white_chart()
    # t47's black p47 shares its face with the label-1 piece e_2a
    d_b = c.rotation("p47")[0]
    bface = c.corner_face(d_b)
    tok = next(t for t in bface.cycle if t[0] == "e_2a")
    sp = spec("C-II", "forward", black="p47", token=tok[0] + ("+" if tok[1] > 0 else "-"))
    mid, inv, back = roundtrip(c, sp)
    assert canonical_key(back) == canonical_key(c)
    assert_delta(c, sp, mid)
    assert inv.direction == "backward"


def test_c2_rejects_close_labels():
    c = zoo.seven_white_chart()
    d_b = c.rotation("p4")[0]
    bface = c.corner_face(d_b)
    bad = next((t for t in bface.cycle if abs(c.edge(t[0]).label - 2) <= 1 and t[0] != "e4"), None)
    if bad is not None:
        with pytest.raises(OperationError):
            apply_move(
                c,
                spec("C-II", "forward", black="p4", token=bad[0] + ("+" if bad[1] > 0 else "-")),
            )


def non_middle_terminal_chart():
    """Small valid chart with a non-middle terminal at w (A2 off)."""
    return zoo.chart(
        3,
        {"w": "white", "v": "white", "p": "black", "q": "black"},
        [
            ("t", 2, ("w", 0), ("p", 0)),
            ("s1", 1, ("w", 1), ("v", 4)),
            ("s2", 2, ("w", 2), ("v", 3)),
            ("s3", 1, ("v", 2), ("w", 3)),
            ("s4", 2, ("v", 1), ("w", 4)),
            ("s5", 1, ("v", 0), ("w", 5)),
            ("t2", 2, ("q", 0), ("v", 5)),
        ],
    )


def test_c3_absorb_and_emit():
    c = non_middle_terminal_chart()
    sp = spec("C-III", "forward", white="w", terminal="t")
    mid, inv, back = roundtrip(c, sp)
    assert canonical_key(back) == canonical_key(c)
    assert_delta(c, sp, mid)
    assert census(mid).w == census(c).w - 1
    assert census(mid).b == census(c).b
    assert inv.kind == "C-III" and inv.direction == "backward"


def test_c3_requires_non_middle():
    c = zoo.seven_white_chart()
    # e4 is middle at w4: not offered
    with pytest.raises(OperationError):
        apply_move(c, spec("C-III", "forward", white="w4", terminal="e4"))


def test_c3_not_offered_for_middle_slot():
    c = zoo.seven_white_chart()
    offers = applicable_moves(c, site={"vertex": "w4"})
    assert not any(
        m.kind == "C-III" and m.direction == "forward" and m.arg("white") == "w4"
        for m in offers
    )


def test_run_script_and_trace():
    c = zoo.empty_chart(3)
    script = Script(
        steps=(
            spec("CI-M1", "forward", face="sphere", label=1, ccw=True, parent=None),
            spec("CI-M1", "backward", hoop=0),
        )
    )
    out, trace = run_script(c, script)
    assert canonical_key(out) == canonical_key(c)
    assert len(trace) == 3 and trace[0] == trace[2]


def test_empty_script_is_identity():
    c = zoo.oval_chart()
    out, trace = run_script(c, Script(steps=()))
    assert out == c and trace == [canonical_key(c)]


def test_pinned_edges_block_reconnection():
    c = zoo.seven_white_chart()
    sp = m2_alpha_spec(c)
    with pytest.raises(OperationError):
        apply_move(c, sp, pinned_edges=frozenset({"s23a"}))


def test_script_serialization_round_trip():
    script = Script(
        steps=(spec("CI-M1", "forward", face="sphere", label=1, ccw=True, parent=None),),
        pinned_edges=frozenset({"e9"}),
    )
    payload = script.to_payload()
    assert script_from_payload(payload) == script


def test_moves_catalog_covers_all_kinds():
    kinds = {k["kind"] for k in moves_catalog()["kinds"]}
    assert kinds == {"CI-M1", "CI-M2", "CI-R2", "CI-R3", "CI-R4", "C-II", "C-III"}


def test_applicable_moves_sound():
    # every offered spec must actually apply
    for make in (zoo.oval_chart, zoo.lens_chart, zoo.three_rings_chart):
        c = make()
        for m in applicable_moves(c):
            apply_move(c, m)


def test_faces_away_from_site_unchanged():
    from chartbench.model import arrival_dart

    c = zoo.seven_white_chart()
    offers = applicable_moves(c, site={"vertex": "w4"})
    assert offers
    res = apply_move_ex(c, offers[0])
    touched = res.active_edges | res.active_vertices
    after = {f.key for f in trace_faces(res.chart)}
    for f in trace_faces(c):
        ids = f.edge_ids()
        verts = {c.dart_vertex(arrival_dart(t)) for t in f.cycle}
        if not (ids & res.active_edges) and not (verts & res.active_vertices):
            assert f.key in after
