import json

import pytest
from hypothesis import given, strategies as st

from chartbench import model
from chartbench.model import (
    BuildError,
    Dart,
    HEAD,
    TAIL,
    OperationError,
    build_chart,
    canonical_key,
    brute_force_isomorphic,
    dumps,
    euler_characteristic,
    is_middle,
    loads,
    middle_darts,
    strand_class,
    strand_of_edge,
    strands,
    trace_faces,
    transform,
    validate,
    white_label_pair,
)
from chartbench import zoo


def test_empty_chart_builds_and_validates():
    c = zoo.empty_chart()
    assert c.n == 2
    faces = trace_faces(c)
    assert len(faces) == 1 and faces[0].key == "sphere"
    assert validate(c).verdict


def test_free_edge_chart_faces_and_euler():
    c = zoo.free_edge_chart()
    faces = trace_faces(c)
    assert len(faces) == 1
    assert euler_characteristic(c) == 2
    rep = validate(c, policy=())
    assert rep.verdict
    rep3 = validate(c, policy=("A3",))
    assert not rep3.verdict and "A3" in rep3.rules()


def test_build_rejects_dangling_reference():
    with pytest.raises(BuildError):
        build_chart(
            {
                "n": 2,
                "vertices": [{"id": "b1", "kind": "black"}],
                "edges": [
                    {
                        "id": "e1",
                        "label": 1,
                        "tail": {"v": "b1", "slot": 0},
                        "head": {"v": "nope", "slot": 0},
                    }
                ],
            }
        )


def test_build_rejects_duplicate_slot():
    with pytest.raises(BuildError):
        build_chart(
            {
                "n": 2,
                "vertices": [
                    {"id": "b1", "kind": "black"},
                    {"id": "b2", "kind": "black"},
                    {"id": "b3", "kind": "black"},
                ],
                "edges": [
                    {
                        "id": "e1",
                        "label": 1,
                        "tail": {"v": "b1", "slot": 0},
                        "head": {"v": "b2", "slot": 0},
                    },
                    {
                        "id": "e2",
                        "label": 1,
                        "tail": {"v": "b1", "slot": 0},
                        "head": {"v": "b3", "slot": 0},
                    },
                ],
            }
        )


def test_build_rejects_degree_mismatch():
    with pytest.raises(BuildError):
        build_chart(
            {
                "n": 3,
                "vertices": [
                    {"id": "w1", "kind": "white"},
                    {"id": "b1", "kind": "black"},
                ],
                "edges": [
                    {
                        "id": "e1",
                        "label": 1,
                        "tail": {"v": "w1", "slot": 0},
                        "head": {"v": "b1", "slot": 0},
                    }
                ],
            }
        )


def test_oval_chart_is_valid_and_spherical():
    c = zoo.oval_chart()
    rep = validate(c)
    assert rep.verdict, rep.violations
    assert euler_characteristic(c) == 2
    assert len(trace_faces(c)) == 5
    assert c.count("white") == 2 and c.count("black") == 2


def test_lens_chart_valid():
    c = zoo.lens_chart()
    rep = validate(c)
    assert rep.verdict, rep.violations
    assert len(trace_faces(c)) == 6


def test_cut_lens_chart_valid():
    c = zoo.cut_lens_chart()
    rep = validate(c)
    assert rep.verdict, rep.violations


def test_middle_darts_positions():
    c = zoo.oval_chart()
    mid_in, mid_out = middle_darts(c, "w4")
    # w4 in-block is slots (5,0,1) and out-block (2,3,4)
    assert c.dart_slot(mid_in) == 0 and mid_in.edge == "ec"
    assert c.dart_slot(mid_out) == 3 and mid_out.edge == "e4"
    assert is_middle(c, mid_in) and is_middle(c, mid_out)
    assert not is_middle(c, c.rotation("w4")[2])


def test_middle_darts_requires_white():
    c = zoo.oval_chart()
    with pytest.raises(OperationError):
        middle_darts(c, "b4")


def test_white_label_pair():
    c = zoo.oval_chart()
    assert white_label_pair(c, "w4") == (1, 2)


def test_strand_classification():
    c = zoo.oval_chart()
    assert strand_class(c, strand_of_edge(c, "e4")) == "terminal"
    assert strand_class(c, strand_of_edge(c, "ea")) == "internal"
    free = zoo.free_edge_chart()
    assert strand_class(free, strand_of_edge(free, "e1")) == "free"


def test_validate_flags_bad_crossing_labels():
    # crossing with labels 2 and 3: |i-j| = 1 must be rejected
    c = zoo.chart(
        5,
        {"x": "crossing", "b1": "black", "b2": "black", "b3": "black", "b4": "black"},
        [
            ("p1", 2, ("b1", 0), ("x", 0)),
            ("p2", 2, ("x", 2), ("b2", 0)),
            ("q1", 3, ("b3", 0), ("x", 1)),
            ("q2", 3, ("x", 3), ("b4", 0)),
        ],
    )
    rep = validate(c, policy=())
    assert not rep.verdict and "crossing-labels" in rep.rules()


def test_validate_flags_white_block_violation():
    # directions alternating in/out/in/out/in/out around a white vertex
    c = zoo.chart(
        3,
        {
            "w": "white",
            "b0": "black",
            "b1": "black",
            "b2": "black",
            "b3": "black",
            "b4": "black",
            "b5": "black",
        },
        [
            ("e0", 1, ("b0", 0), ("w", 0)),
            ("e1", 2, ("w", 1), ("b1", 0)),
            ("e2", 1, ("b2", 0), ("w", 2)),
            ("e3", 2, ("w", 3), ("b3", 0)),
            ("e4", 1, ("b4", 0), ("w", 4)),
            ("e5", 2, ("w", 5), ("b5", 0)),
        ],
    )
    rep = validate(c, policy=())
    assert not rep.verdict and "white-blocks" in rep.rules()


def test_validate_hoop_assumptions():
    c = zoo.hoop_chart()
    assert validate(c, policy=()).verdict
    rep = validate(c, policy=("A3", "A4"))
    assert not rep.verdict
    assert {"A3", "A4"} <= rep.rules()


def test_serialization_round_trip_bit_exact():
    c = zoo.oval_chart()
    text = dumps(c)
    c2 = loads(text)
    assert c == c2
    assert dumps(c2) == text
    payload = json.loads(text)
    assert payload["format"] == "chart/v1"


@pytest.mark.parametrize("which", ["reflect", "reverse", "both"])
@pytest.mark.parametrize("make", [zoo.empty_chart, zoo.oval_chart, zoo.lens_chart, zoo.hoop_chart])
def test_transform_involution(which, make):
    c = make()
    t = transform(transform(c, which), which)
    assert canonical_key(t) == canonical_key(c)
    assert validate(transform(c, which), policy=()).verdict


def test_transform_reflect_reverse_commute():
    c = zoo.oval_chart()
    a = transform(transform(c, "reflect"), "reverse")
    b = transform(transform(c, "reverse"), "reflect")
    assert canonical_key(a) == canonical_key(b)
    assert canonical_key(a) == canonical_key(transform(c, "both"))


def test_canonical_key_deterministic_and_relabel_invariant():
    c = zoo.oval_chart()
    assert canonical_key(c) == canonical_key(c)
    # relabel vertices and edges; key must not change
    ren_v = {"w4": "u1", "w5": "u2", "b4": "m1", "b5": "m2"}
    ren_e = {"a44": "z1", "b44": "z2", "e4": "z3", "e5": "z4", "ea": "z5", "eb": "z6", "ec": "z7"}
    payload = json.loads(dumps(c))
    for v in payload["vertices"]:
        v["id"] = ren_v[v["id"]]
    for e in payload["edges"]:
        e["id"] = ren_e[e["id"]]
        e["tail"]["v"] = ren_v[e["tail"]["v"]]
        e["head"]["v"] = ren_v[e["head"]["v"]]
    payload.pop("infinity_face")
    c2 = build_chart(payload)
    assert canonical_key(c2) == canonical_key(c)
    assert brute_force_isomorphic(c, c2)


def test_canonical_key_symmetry_options():
    c = zoo.oval_chart()
    r = transform(c, "reflect")
    assert canonical_key(r, "+reflection") == canonical_key(c, "+reflection")
    v = transform(c, "reverse")
    assert canonical_key(v, "+reversal") == canonical_key(c, "+reversal")
    assert canonical_key(transform(c, "both"), "+both") == canonical_key(c, "+both")


def test_canonical_key_distinguishes_charts():
    assert canonical_key(zoo.oval_chart()) != canonical_key(zoo.lens_chart())
    assert canonical_key(zoo.empty_chart()) != canonical_key(zoo.hoop_chart())


def test_brute_force_iso_matches_key_on_pairs():
    charts = [
        zoo.empty_chart(),
        zoo.free_edge_chart(),
        zoo.oval_chart(),
        zoo.lens_chart(),
        zoo.cut_lens_chart(),
        zoo.hoop_chart(),
    ]
    for i, a in enumerate(charts):
        for b in charts[i:]:
            same_key = canonical_key(a) == canonical_key(b)
            assert same_key == brute_force_isomorphic(a, b)


@given(st.sampled_from(["reflect", "reverse", "both"]), st.sampled_from([0, 1, 2]))
def test_transform_preserves_counts(which, idx):
    c = [zoo.oval_chart(), zoo.lens_chart(), zoo.cut_lens_chart()][idx]
    t = transform(c, which)
    assert t.count("white") == c.count("white")
    assert t.count("black") == c.count("black")
    assert len(trace_faces(t)) == len(trace_faces(c))


def test_face_keys_are_min_rotation():
    c = zoo.free_edge_chart()
    (face,) = trace_faces(c)
    assert face.key == "e1+|e1-"


def test_white_imbalance_invariant():
    # 3 darts of each label at a white vertex, imbalance +-1
    for make in (zoo.oval_chart, zoo.lens_chart, zoo.cut_lens_chart):
        c = make()
        for v in c.vertices:
            if v.kind != "white":
                continue
            j, _ = white_label_pair(c, v.id)
            for lbl in (j, j + 1):
                darts = [d for d in c.rotation(v.id) if c.dart_label(d) == lbl]
                assert len(darts) == 3
                imb = sum(1 if c.is_inward(d) else -1 for d in darts)
                assert imb in (-1, 1)
