"""Hand-built reference charts used by tests, scenarios and the CLI demos.

Each builder returns a fully valid chart (axioms; most are also clean for
the standing assumptions).  Rotation systems were laid out on paper and are
verified sphere-embeddable by the validation suite.
"""

from __future__ import annotations

from typing import Iterable, Mapping, Optional, Sequence

from .model import Chart, build_chart


def chart(
    n: int,
    vertices: Mapping[str, str],
    edges: Sequence[tuple[str, int, tuple[str, int], tuple[str, int]]],
    hoops: Sequence[tuple[int, bool, str, Optional[int]]] = (),
    infinity: Optional[str] = None,
) -> Chart:
    """Compact constructor over the chart/v1 payload shape."""
    payload = {
        "format": "chart/v1",
        "n": n,
        "vertices": [{"id": v, "kind": k} for v, k in vertices.items()],
        "edges": [
            {
                "id": eid,
                "label": label,
                "tail": {"v": t[0], "slot": t[1]},
                "head": {"v": h[0], "slot": h[1]},
            }
            for eid, label, t, h in edges
        ],
        "hoops": [
            {"label": l, "ccw": c, "host_face": f, "parent": p} for l, c, f, p in hoops
        ],
    }
    if infinity is not None:
        payload["infinity_face"] = infinity
    return build_chart(payload)


def empty_chart(n: int = 2) -> Chart:
    return chart(n, {}, [])


def free_edge_chart(n: int = 2, label: int = 1) -> Chart:
    """A single free edge: the only disconnected-from-nothing chart shape."""
    return chart(
        n,
        {"b1": "black", "b2": "black"},
        [("e1", label, ("b1", 0), ("b2", 0))],
    )


def oval_chart(n: int = 3, m: int = 1) -> Chart:
    """Closed chart whose label-(m+1) graph is an oval: two whites on a
    2-gon with a middle terminal edge each; three label-m edges close the
    whites up around the outside and through the middle."""
    k = m + 1
    return chart(
        n,
        {"w4": "white", "w5": "white", "b4": "black", "b5": "black"},
        [
            ("a44", k, ("w5", 2), ("w4", 1)),
            ("b44", k, ("w5", 4), ("w4", 5)),
            ("e4", k, ("w4", 3), ("b4", 0)),
            ("e5", k, ("b5", 0), ("w5", 0)),
            ("ea", m, ("w4", 2), ("w5", 1)),
            ("eb", m, ("w4", 4), ("w5", 5)),
            ("ec", m, ("w5", 3), ("w4", 0)),
        ],
    )


def lens_chart(n: int = 3) -> Chart:
    """Two whites joined by six parallel edges (labels alternating 1,2)."""
    return chart(
        n,
        {"wa": "white", "wb": "white"},
        [
            ("e0", 1, ("wa", 5), ("wb", 0)),
            ("e1", 2, ("wa", 4), ("wb", 1)),
            ("e2", 1, ("wa", 3), ("wb", 2)),
            ("e3", 2, ("wb", 3), ("wa", 2)),
            ("e4", 1, ("wb", 4), ("wa", 1)),
            ("e5", 2, ("wb", 5), ("wa", 0)),
        ],
    )


def cut_lens_chart(n: int = 3) -> Chart:
    """Lens with its middle outward label-2 edge cut into two middle
    terminal edges (adds two black vertices; stays assumption-clean)."""
    return chart(
        n,
        {"wa": "white", "wb": "white", "p": "black", "q": "black"},
        [
            ("e0", 1, ("wa", 5), ("wb", 0)),
            ("t1", 2, ("wa", 4), ("p", 0)),
            ("t2", 2, ("q", 0), ("wb", 1)),
            ("e2", 1, ("wa", 3), ("wb", 2)),
            ("e3", 2, ("wb", 3), ("wa", 2)),
            ("e4", 1, ("wb", 4), ("wa", 1)),
            ("e5", 2, ("wb", 5), ("wa", 0)),
        ],
    )


def hoop_chart(n: int = 3, label: int = 1) -> Chart:
    """A single hoop on the otherwise empty sphere."""
    return chart(n, {}, [], hoops=[(label, True, "sphere", None)])


def three_rings_chart(n: int = 6) -> Chart:
    """Three pairwise-crossing closed strands (labels 1, 3, 5) arranged like
    the coordinate great circles: six crossings, eight triangular faces."""
    vs = {v: "crossing" for v in ("xp", "xm", "yp", "ym", "zp", "zm")}
    edges = [
        ("A1", 1, ("xp", 0), ("yp", 1)),
        ("A2", 1, ("yp", 3), ("xm", 1)),
        ("A3", 1, ("xm", 3), ("ym", 2)),
        ("A4", 1, ("ym", 0), ("xp", 2)),
        ("B1", 3, ("xp", 1), ("zp", 0)),
        ("B2", 3, ("zp", 2), ("xm", 0)),
        ("B3", 3, ("xm", 2), ("zm", 3)),
        ("B4", 3, ("zm", 1), ("xp", 3)),
        ("C1", 5, ("yp", 0), ("zp", 1)),
        ("C2", 5, ("zp", 3), ("ym", 1)),
        ("C3", 5, ("ym", 3), ("zm", 2)),
        ("C4", 5, ("zm", 0), ("yp", 2)),
    ]
    return chart(n, vs, edges)


def ring_lens_chart(n: int = 6) -> Chart:
    """Lens pair with a label-4 ring encircling one white: every germ of
    that white carries an adjacent crossing with the ring."""
    vs = {"wa": "white", "wb": "white"}
    vs.update({f"k{i}": "crossing" for i in range(6)})
    # wa rotation order is [e5, e4, e3, e2, e1, e0]; the ring crosses the
    # germs in that cyclic order, travelling with wa on its left
    germ_order = ["e5", "e4", "e3", "e2", "e1", "e0"]
    lens = {
        "e0": (1, ("wa", 5), ("wb", 0)),
        "e1": (2, ("wa", 4), ("wb", 1)),
        "e2": (1, ("wa", 3), ("wb", 2)),
        "e3": (2, ("wb", 3), ("wa", 2)),
        "e4": (1, ("wb", 4), ("wa", 1)),
        "e5": (2, ("wb", 5), ("wa", 0)),
    }
    edges = []
    for i, g in enumerate(germ_order):
        label, tail, head = lens[g]
        k = f"k{i}"
        # ring rotation at k: [ring-in, outer piece, ring-out, inner piece]
        if tail[0] == "wa":  # germ flows wa -> wb: inner keeps the id
            edges.append((g, label, tail, (k, 3)))
            edges.append((g + "o", label, (k, 1), head))
        else:  # flows wb -> wa: outer keeps the id
            edges.append((g, label, tail, (k, 1)))
            edges.append((g + "o", label, (k, 3), head))
        prev = f"k{(i - 1) % 6}"
        edges.append((f"r{i}", 4, (prev, 2), (k, 0)))
    return chart(n, vs, edges)


def seven_white_chart(n: int = 5) -> Chart:
    """Seven whites of type (1; 2,3,2): a label-2 oval (w4, w5) inside the
    2-gon of a label-3 pair (w5, w7), all inside a label-2 three-angled
    circuit (w1, w2, w3) with a doubled side, plus the label-4 pair (w6, w7)
    outside.  Assumption-clean, axiom-valid; the staging chart for the
    non-minimality replays.

    Crossings: e_1, e_2 (label 1) leave the 2-gon through b55; Y1, Y2
    (label 4) leave the circuit through s23.
    """
    whites = {f"w{i}": "white" for i in range(1, 8)}
    blacks = {
        b: "black"
        for b in ("p1", "pm1", "p4", "pm4", "p35", "p5", "p37", "p47", "p36", "p46")
    }
    crossings = {x: "crossing" for x in ("x1", "x2", "c1", "c2", "z1", "z2")}
    edges = [
        # label 1
        ("e_1a", 1, ("w4", 3), ("x1", 1)),
        ("e_1b", 1, ("x1", 3), ("z1", 1)),
        ("e_1c", 1, ("z1", 3), ("w1", 3)),
        ("e_2a", 1, ("w4", 5), ("x2", 1)),
        ("e_2b", 1, ("x2", 3), ("z2", 1)),
        ("e_2c", 1, ("z2", 3), ("w1", 1)),
        ("t_m1", 1, ("w1", 5), ("pm1", 0)),
        ("t_m4", 1, ("pm4", 0), ("w4", 1)),
        # label 2
        ("s12", 2, ("w1", 0), ("w2", 5)),
        ("s23a", 2, ("w3", 0), ("c1", 2)),
        ("s23b", 2, ("c1", 0), ("c2", 2)),
        ("s23c", 2, ("c2", 0), ("w2", 3)),
        ("s31", 2, ("w1", 4), ("w3", 4)),
        ("u23", 2, ("w2", 1), ("w3", 2)),
        ("a44", 2, ("w5", 1), ("w4", 0)),
        ("b44", 2, ("w5", 5), ("w4", 2)),
        ("e4", 2, ("w4", 4), ("p4", 0)),
        ("e5", 2, ("p5", 0), ("w5", 3)),
        ("tw1", 2, ("p1", 0), ("w1", 2)),
        # label 3 (the chord dips under the 2-gon, crossing e_1 and e_2)
        ("ep2a", 3, ("w3", 5), ("z1", 2)),
        ("ep2b", 3, ("z1", 0), ("z2", 2)),
        ("ep2c", 3, ("z2", 0), ("w2", 4)),
        ("epp2", 3, ("w2", 0), ("w3", 3)),
        ("v26", 3, ("w2", 2), ("w6", 5)),
        ("v36", 3, ("w3", 1), ("w6", 1)),
        ("a55", 3, ("w7", 2), ("w5", 2)),
        ("b55a", 3, ("w7", 4), ("x2", 0)),
        ("b55b", 3, ("x2", 2), ("x1", 0)),
        ("b55c", 3, ("x1", 2), ("w5", 4)),
        ("t35", 3, ("w5", 0), ("p35", 0)),
        ("t36", 3, ("w6", 3), ("p36", 0)),
        ("t37", 3, ("p37", 0), ("w7", 0)),
        # label 4
        ("Y1a", 4, ("w6", 2), ("c1", 1)),
        ("Y1b", 4, ("c1", 3), ("w7", 1)),
        ("Y2a", 4, ("w6", 4), ("c2", 1)),
        ("Y2b", 4, ("c2", 3), ("w7", 5)),
        ("t46", 4, ("p46", 0), ("w6", 0)),
        ("t47", 4, ("w7", 3), ("p47", 0)),
    ]
    return chart(n, {**whites, **blacks, **crossings}, edges)


def seven_white_a_chart(n: int = 5) -> Chart:
    """Variant of the seven-white chart with the oval hung outside the
    label-3 two-gon: the label-1 edges reach the circuit corner without
    touching the 2-gon, whose interior holds only the two terminal blacks."""
    whites = {f"w{i}": "white" for i in range(1, 8)}
    blacks = {
        b: "black"
        for b in ("p1", "pm1", "p4", "pm4", "p35", "p5", "p37", "p47", "p36", "p46")
    }
    crossings = {x: "crossing" for x in ("c1", "c2", "z1", "z2")}
    edges = [
        # label 1
        ("e_1a", 1, ("w4", 2), ("z1", 1)),
        ("e_1b", 1, ("z1", 3), ("w1", 3)),
        ("e_2a", 1, ("w4", 4), ("z2", 1)),
        ("e_2b", 1, ("z2", 3), ("w1", 1)),
        ("t_m1", 1, ("w1", 5), ("pm1", 0)),
        ("t_m4", 1, ("pm4", 0), ("w4", 0)),
        # label 2
        ("s12", 2, ("w1", 0), ("w2", 5)),
        ("s23a", 2, ("w3", 0), ("c1", 2)),
        ("s23b", 2, ("c1", 0), ("c2", 2)),
        ("s23c", 2, ("c2", 0), ("w2", 3)),
        ("s31", 2, ("w1", 4), ("w3", 4)),
        ("u23", 2, ("w2", 1), ("w3", 2)),
        ("a44", 2, ("w5", 2), ("w4", 1)),
        ("b44", 2, ("w5", 4), ("w4", 5)),
        ("e4", 2, ("w4", 3), ("p4", 0)),
        ("e5", 2, ("p5", 0), ("w5", 0)),
        ("tw1", 2, ("p1", 0), ("w1", 2)),
        # label 3
        ("ep2a", 3, ("w3", 5), ("z1", 2)),
        ("ep2b", 3, ("z1", 0), ("z2", 2)),
        ("ep2c", 3, ("z2", 0), ("w2", 4)),
        ("epp2", 3, ("w2", 0), ("w3", 3)),
        ("v26", 3, ("w2", 2), ("w6", 5)),
        ("v36", 3, ("w3", 1), ("w6", 1)),
        ("a55", 3, ("w7", 2), ("w5", 1)),
        ("b55", 3, ("w7", 4), ("w5", 5)),
        ("t35", 3, ("w5", 3), ("p35", 0)),
        ("t36", 3, ("w6", 3), ("p36", 0)),
        ("t37", 3, ("p37", 0), ("w7", 0)),
        # label 4
        ("Y1a", 4, ("w6", 2), ("c1", 1)),
        ("Y1b", 4, ("c1", 3), ("w7", 1)),
        ("Y2a", 4, ("w6", 4), ("c2", 1)),
        ("Y2b", 4, ("c2", 3), ("w7", 5)),
        ("t46", 4, ("p46", 0), ("w6", 0)),
        ("t47", 4, ("w7", 3), ("p47", 0)),
    ]
    return chart(n, {**whites, **blacks, **crossings}, edges)


def twin_lens_chart(n: int = 5) -> Chart:
    """A {1,2}-lens and a {2,3}-lens joined by a label-2 connector; the
    label-3 strand g of the second lens co-bounds a face with the label-1
    strand e0 of the first and can be pushed across it."""
    vs = {
        "wa": "white",
        "wb": "white",
        "wc": "white",
        "wd": "white",
        "qb": "black",
        "qc": "black",
    }
    edges = [
        # low lens: one label-2 edge replaced by the connector / a terminal
        ("e0", 1, ("wa", 5), ("wb", 0)),
        ("e2", 1, ("wa", 3), ("wb", 2)),
        ("e3", 2, ("wb", 3), ("wa", 2)),
        ("e4", 1, ("wb", 4), ("wa", 1)),
        ("e5", 2, ("wb", 5), ("wa", 0)),
        ("t_b", 2, ("qb", 0), ("wb", 1)),
        ("c_ad", 2, ("wa", 4), ("wc", 5)),
        # high lens, sitting in the strip between e0 and e2
        ("h1", 3, ("wd", 4), ("wc", 0)),
        ("h2", 2, ("wc", 1), ("wd", 3)),
        ("h3", 3, ("wc", 2), ("wd", 2)),
        ("h4", 2, ("wc", 3), ("wd", 1)),
        ("g", 3, ("wd", 0), ("wc", 4)),
        ("t_c", 2, ("wd", 5), ("qc", 0)),
    ]
    return chart(n, vs, edges)


def dip_chart(n: int = 5) -> Chart:
    """twin_lens_chart with the label-3 strand pushed across the label-1
    strand: a removable two-crossing dip built by the move engine."""
    from .model import trace_faces
    from .moves import apply_move, spec as move_spec

    base = twin_lens_chart(n)
    for f in trace_faces(base):
        toks = {t[0]: t for t in f.cycle}
        if "g" in toks and "e0" in toks:
            tg, te = toks["g"], toks["e0"]
            return apply_move(
                base,
                move_spec(
                    "CI-R2",
                    "forward",
                    t1=tg[0] + ("+" if tg[1] > 0 else "-"),
                    t2=te[0] + ("+" if te[1] > 0 else "-"),
                ),
            )
    raise RuntimeError("twin lens strands do not co-bound")


def loop7_chart(n: int = 3) -> Chart:
    """Seven whites with loops at one of them: a loop-bearing single white
    chained to three cut lenses through their terminal slots.  Purpose-built
    violating chart: it carries loops in a seven-white chart, a one-white
    label component, a non-middle terminal, and a mixed-orientation
    terminal corner."""
    vs = {"v": "white", "p_v": "black", "qC": "black"}
    edges = [
        ("s5", 1, ("v", 0), ("v", 4)),
        ("s4", 2, ("v", 1), ("v", 3)),
        ("s3", 1, ("v", 2), ("p_v", 0)),
        ("link1", 2, ("waA", 4), ("v", 5)),
    ]
    for tag in ("A", "B", "C"):
        wa, wb = f"wa{tag}", f"wb{tag}"
        vs[wa] = "white"
        vs[wb] = "white"
        edges += [
            (f"e0{tag}", 1, (wa, 5), (wb, 0)),
            (f"e2{tag}", 1, (wa, 3), (wb, 2)),
            (f"e3{tag}", 2, (wb, 3), (wa, 2)),
            (f"e4{tag}", 1, (wb, 4), (wa, 1)),
            (f"e5{tag}", 2, (wb, 5), (wa, 0)),
        ]
    edges += [
        ("link2", 2, ("waB", 4), ("wbA", 1)),
        ("link3", 2, ("waC", 4), ("wbB", 1)),
        ("t2C", 2, ("qC", 0), ("wbC", 1)),
    ]
    return chart(n, vs, edges)


def shiftable_chart(n: int = 6) -> Chart:
    """Staging chart for vertex shifting and crossing removal: an internal
    label-3 strand between a {3,4}-pair white and a {2,3}-pair white,
    crossed once by a label-1 ring adjacent to the high white; a second
    strand crosses a label-5 ring (hypothesis-violating wall).  Axiom-valid
    only: the closure terminals are not all middle and rings are present."""
    vs = {
        "wk": "white",
        "wl": "white",
        "r1": "crossing",
        "r2": "crossing",
        "qk": "black",
        "q4": "black",
        "qb": "black",
        "ql": "black",
        "qlb": "black",
        "q2": "black",
    }
    edges = [
        ("e_a", 3, ("wk", 0), ("r1", 0)),
        ("e_b", 3, ("r1", 2), ("wl", 0)),
        ("ring1", 1, ("r1", 1), ("r1", 3)),
        ("l4", 4, ("wk", 1), ("wk", 3)),
        ("t_k", 3, ("wk", 2), ("qk", 0)),
        ("bad", 3, ("r2", 2), ("wk", 4)),
        ("badq", 3, ("qb", 0), ("r2", 0)),
        ("ring5", 5, ("r2", 1), ("r2", 3)),
        ("tk4", 4, ("q4", 0), ("wk", 5)),
        ("t_l3b", 3, ("wl", 2), ("qlb", 0)),
        ("l2", 2, ("wl", 3), ("wl", 1)),
        ("t_l3", 3, ("wl", 4), ("ql", 0)),
        ("tl2", 2, ("q2", 0), ("wl", 5)),
    ]
    return chart(n, vs, edges)


def fig25_chart(n: int = 5) -> Chart:
    """Staging chart for the terminal-migration replay: the seven-white
    chart with the circuit junction renamed w4 (the migration target) and a
    label-4 ring penning the travelling terminal's black vertex, so the
    replay must carry it across by a black-vertex move before the
    reconnection.  Axiom-valid; the ring makes it A4-dirty by design."""
    import json

    from .model import dumps

    base = seven_white_chart(n)
    payload = json.loads(dumps(base))
    swap = {"w2": "w4", "w4": "w2"}
    for v in payload["vertices"]:
        v["id"] = swap.get(v["id"], v["id"])
    for e in payload["edges"]:
        e["tail"]["v"] = swap.get(e["tail"]["v"], e["tail"]["v"])
        e["head"]["v"] = swap.get(e["head"]["v"], e["head"]["v"])
    payload["vertices"].append({"id": "kr", "kind": "crossing"})
    new_edges = []
    for e in payload["edges"]:
        if e["id"] == "e5":
            new_edges.append(
                {
                    "id": "e5a",
                    "label": e["label"],
                    "tail": e["tail"],
                    "head": {"v": "kr", "slot": 0},
                }
            )
            new_edges.append(
                {
                    "id": "e5b",
                    "label": e["label"],
                    "tail": {"v": "kr", "slot": 2},
                    "head": e["head"],
                }
            )
        else:
            new_edges.append(e)
    new_edges.append(
        {
            "id": "rr",
            "label": 4,
            "tail": {"v": "kr", "slot": 1},
            "head": {"v": "kr", "slot": 3},
        }
    )
    payload["edges"] = new_edges
    payload.pop("infinity_face", None)
    return build_chart(payload)


def special_oval_chart(n: int = 4) -> Chart:
    """Standalone special oval: label-2 two-gon with its disk holding a
    label-1 and a label-3 terminal edge; the outer germs end at black
    vertices (axiom-valid; those terminals are deliberately not middle)."""
    vs = {"w4": "white", "w5": "white"}
    vs.update({b: "black" for b in ("py", "px", "p4", "p5", "g1b", "g2b", "h1b", "h2b")})
    edges = [
        ("r1", 2, ("w5", 1), ("w4", 0)),
        ("r2", 2, ("w5", 5), ("w4", 2)),
        ("ty", 1, ("py", 0), ("w4", 1)),
        ("tx", 3, ("w5", 0), ("px", 0)),
        ("e4", 2, ("w4", 4), ("p4", 0)),
        ("e5", 2, ("p5", 0), ("w5", 3)),
        ("g1", 1, ("w4", 3), ("g1b", 0)),
        ("g2", 1, ("w4", 5), ("g2b", 0)),
        ("h1", 3, ("h1b", 0), ("w5", 2)),
        ("h2", 3, ("h2b", 0), ("w5", 4)),
    ]
    return chart(n, vs, edges)
