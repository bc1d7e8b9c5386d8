"""Builders for the pseudo-chart catalog.

Each figure is transcribed once from its textual constraints (orientations,
middle/terminal conditions, region statements) into a PseudoChart; entries
whose source underdetermines the picture carry an ``ambiguities`` note.
The JSON data files shipped with the package are generated from these
builders by scripts/gen_catalog.py.

Label convention: the figure's principal subgraph carries the base label m
(offset 0); neighbouring labels are offsets; eps in {+1, -1} where a figure
is stated for both signs.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Iterable, Sequence

from .patterns import (
    LabelExpr,
    OpenDart,
    PEdge,
    PVertex,
    PseudoChart,
    RegionConstraint,
    pattern_to_payload,
)


def _expr(x) -> LabelExpr:
    if isinstance(x, LabelExpr):
        return x
    if isinstance(x, tuple):
        return LabelExpr(x[0], x[1])
    return LabelExpr(int(x), 0)


def _pat(
    pid: str,
    vertices: Sequence[tuple[str, str]],
    edges: Sequence[tuple],
    opens: Sequence[tuple] = (),
    regions: Sequence[RegionConstraint] = (),
    uses_eps: bool = False,
    notes: str = "",
    ambiguities: str = "",
) -> PseudoChart:
    vs = tuple(PVertex(v, k) for v, k in vertices)
    es = tuple(
        PEdge(item[0], _expr(item[1]), tuple(item[2]), tuple(item[3]),
              bool(item[4]) if len(item) > 4 else False)
        for item in edges
    )
    ods = tuple(
        (v, s, OpenDart(direction, _expr(lbl) if lbl is not None else None, middle, terminal))
        for (v, s, direction, lbl, middle, terminal) in opens
    )
    return PseudoChart(
        id=pid,
        vertices=vs,
        edges=es,
        opens=ods,
        regions=tuple(regions),
        uses_eps=uses_eps,
        notes=notes,
        ambiguities=ambiguities,
    )


def fig4a_oval() -> PseudoChart:
    return _pat(
        "fig4a-oval",
        vertices=[("w4", "white"), ("w5", "white"), ("b4", "black"), ("b5", "black")],
        edges=[
            ("r1", 0, ("w5", 1), ("w4", 0)),
            ("r2", 0, ("w5", 5), ("w4", 2)),
            ("t4", 0, ("w4", 4), ("b4", 0)),
            ("t5", 0, ("b5", 0), ("w5", 3)),
        ],
        notes="two whites on a 2-gon, one terminal edge each; the disk side "
        "between the 2-gon arcs holds one other-label germ per white",
    )


def fig4b_skew_theta() -> PseudoChart:
    return _pat(
        "fig4b-skew-theta",
        vertices=[
            ("w1", "white"),
            ("w2", "white"),
            ("w3", "white"),
            ("b1", "black"),
        ],
        edges=[
            ("p12", 0, ("w1", 0), ("w2", 4)),
            ("p13", 0, ("w1", 4), ("w3", 4)),
            ("q1", 0, ("w3", 0), ("w2", 2)),
            ("q2", 0, ("w2", 0), ("w3", 2)),
            ("t1", 0, ("b1", 0), ("w1", 2)),
        ],
        notes="theta curve with one strand subdivided by a third white "
        "carrying the single terminal edge; chirality fixed by the slot "
        "order (the skew form)",
    )


def fig5a() -> PseudoChart:
    return _pat(
        "fig5a",
        vertices=[
            ("w1", "white"),
            ("w2", "white"),
            ("w3", "white"),
            ("w4", "white"),
            ("w5", "white"),
            ("q1", "black"),
            ("q4", "black"),
            ("q5", "black"),
        ],
        edges=[
            ("big1", 0, ("w1", 1), ("w2", 0)),
            ("big2", 0, ("w1", 5), ("w2", 2)),
            ("tw1", 0, ("q1", 0), ("w1", 3)),
            ("e2", 0, ("w2", 4), ("w3", 2)),
            ("tri34", 0, ("w3", 0), ("w4", 0)),
            ("tri35", 0, ("w5", 2), ("w3", 4)),
            ("tri45", 0, ("w5", 0), ("w4", 2)),
            ("t4", 0, ("w4", 4), ("q4", 0)),
            ("t5", 0, ("q5", 0), ("w5", 4)),
        ],
        notes="three black vertices; a 2-gon pair bridged to a 3-cycle; "
        "terminals at the 2-gon white and both far circuit whites",
    )


def fig5b() -> PseudoChart:
    return _pat(
        "fig5b",
        vertices=[
            ("v1", "white"),
            ("v2", "white"),
            ("v3", "white"),
            ("v4", "white"),
            ("v5", "white"),
            ("q1", "black"),
            ("q3", "black"),
            ("q5", "black"),
        ],
        edges=[
            ("biga", 0, ("v1", 1), ("v2", 0)),
            ("bigb", 0, ("v1", 5), ("v2", 2)),
            ("tv1", 0, ("q1", 0), ("v1", 3)),
            ("c23", 0, ("v2", 4), ("v3", 0)),
            ("c34", 0, ("v4", 0), ("v3", 2)),
            ("tv3", 0, ("v3", 4), ("q3", 0)),
            ("bigd", 0, ("v5", 1), ("v4", 2)),
            ("bige", 0, ("v5", 5), ("v4", 4)),
            ("tv5", 0, ("q5", 0), ("v5", 3)),
        ],
        notes="three black vertices; a chain of two 2-gons joined through a "
        "middle white, terminals at the chain ends and the middle",
    )


def _with_opens(base: PseudoChart, pid: str, opens, notes="", ambiguities="") -> PseudoChart:
    ods = tuple(
        (v, s, OpenDart(direction, _expr(lbl) if lbl is not None else None, middle, terminal))
        for (v, s, direction, lbl, middle, terminal) in opens
    )
    return PseudoChart(
        id=pid,
        vertices=base.vertices,
        edges=base.edges,
        opens=base.opens + ods,
        regions=base.regions,
        uses_eps=base.uses_eps,
        notes=notes or base.notes,
        ambiguities=ambiguities or base.ambiguities,
    )


def fig8a() -> PseudoChart:
    # graph of fig5a seen inside a larger chart: w2, w3, w5 carry the
    # higher-label germs, w1, w4 the lower-label germs
    return _with_opens(
        fig5a(),
        "fig8a",
        opens=[
            # around w2: a22, e2, b22 consecutive; a22/b22 outward not middle
            ("w2", 3, "out", 1, False, "no"),
            ("w2", 5, "out", 1, False, "no"),
            ("w2", 1, "in", 1, True, None),
            # around w3: a23, e2, b23 consecutive; a23 outward not middle,
            # b23 middle; the remaining germ heads into the 3-cycle disk
            ("w3", 1, "out", 1, False, "no"),
            ("w3", 3, "in", 1, True, None),
            ("w3", 5, "out", 1, None, None),
            # w5 sits on the higher pair; w1 and w4 on the lower pair
            ("w5", 1, None, 1, None, None),
            ("w1", 0, None, -1, None, None),
            ("w4", 1, None, -1, None, None),
        ],
        notes="higher-label data for the fig5a graph: the bridge is middle "
        "at both ends, flanked by outward non-middle internal edges",
    )


def fig5a_reversed_circuit() -> PseudoChart:
    """fig5a with the 3-cycle orientation reversed (the fig8b variant)."""
    base = fig5a()
    flipped = {"tri34", "tri35", "tri45", "t4", "t5"}
    edges = tuple(
        PEdge(e.id, e.label, e.head, e.tail) if e.id in flipped else e
        for e in base.edges
    )
    return PseudoChart(
        id=base.id,
        vertices=base.vertices,
        edges=edges,
        opens=base.opens,
        regions=base.regions,
        uses_eps=base.uses_eps,
        notes=base.notes,
    )


def fig8b() -> PseudoChart:
    # pair assignment flipped: the 2-gon white w2 on the lower pair, w1 on
    # the higher pair; the circuit orientation reverses with it
    return _with_opens(
        fig5a_reversed_circuit(),
        "fig8b",
        opens=[
            ("w2", 1, None, -1, None, None),
            ("w1", 2, "in", 1, False, "no"),
            ("w1", 4, "in", 1, False, "no"),
            ("w1", 0, "out", 1, True, None),
            ("w3", 1, "in", 1, None, None),
            ("w3", 3, "out", 1, False, "no"),
            ("w3", 5, "out", 1, None, None),
            ("w5", 1, "in", 1, True, None),
            ("w5", 3, "out", 1, False, "no"),
            ("w5", 5, "out", 1, False, "no"),
            ("w4", 1, None, -1, None, None),
        ],
        notes="variant of fig8a with the 2-gon whites on the lower label "
        "pair; the inward higher-label germs flanking the 2-gon terminal "
        "are not middle",
    )


def fig8c() -> PseudoChart:
    return _with_opens(
        fig5b(),
        "fig8c",
        opens=[
            ("v2", 1, "in", 1, True, None),
            ("v4", 3, "in", 1, True, None),
            ("v1", 0, None, -1, None, None),
            ("v3", 1, None, -1, None, None),
            ("v5", 0, None, 1, None, None),
        ],
        notes="higher-label edges middle and inward at both 2-gon-adjacent "
        "whites of the chain",
    )


def fig8d() -> PseudoChart:
    return _with_opens(
        fig5b(),
        "fig8d",
        opens=[
            ("v2", 1, "in", 1, True, None),
            ("v3", 1, "in", 1, True, None),
            ("v5", 0, "out", 1, True, None),
            ("v1", 0, None, -1, None, None),
            ("v4", 1, None, -1, None, None),
        ],
        notes="variant of fig8c with the middle chain white on the higher "
        "pair; its middle higher-label edge is inward, the far 2-gon "
        "white's is outward",
    )


def _negate_offsets(p: PseudoChart, pid: str, notes: str) -> PseudoChart:
    edges = tuple(
        PEdge(e.id, LabelExpr(-e.label.base, -e.label.eps_coeff), e.tail, e.head)
        for e in p.edges
    )
    opens = tuple(
        (
            v,
            s,
            OpenDart(
                od.direction,
                LabelExpr(-od.label.base, -od.label.eps_coeff) if od.label else None,
                od.middle,
                od.terminal,
            ),
        )
        for (v, s, od) in p.opens
    )
    return PseudoChart(
        id=pid,
        vertices=p.vertices,
        edges=edges,
        opens=opens,
        regions=p.regions,
        uses_eps=p.uses_eps,
        notes=notes,
        ambiguities=p.ambiguities,
    )


def fig9a() -> PseudoChart:
    return _negate_offsets(fig8a(), "fig9a", "label-mirrored fig8a (the same graph seen from the other end of the type window)")


def fig9b() -> PseudoChart:
    return _negate_offsets(fig8b(), "fig9b", "label-mirrored fig8b")


def fig9c() -> PseudoChart:
    return _negate_offsets(fig8c(), "fig9c", "label-mirrored fig8c")


def fig9d() -> PseudoChart:
    return _negate_offsets(fig8d(), "fig9d", "label-mirrored fig8d")


def fig10a() -> PseudoChart:
    return _pat(
        "fig10a",
        vertices=[
            ("u1", "white"),
            ("u2", "white"),
            ("b1", "black"),
            ("b2", "black"),
        ],
        edges=[
            ("d1", 0, ("u1", 1), ("u2", 0)),
            ("d2", 0, ("u1", 5), ("u2", 2)),
            ("s1", (0, -1), ("u1", 0), ("b1", 0)),
            ("s2", (0, 1), ("b2", 0), ("u2", 1)),
        ],
        uses_eps=True,
        notes="feeler-free 2-angled disk with empty interior: each corner's "
        "disk germ is a middle terminal edge of the neighbouring label",
        ambiguities="which corner carries which neighbouring label is the "
        "eps parameter; both signs are matched",
    )


def fig10b() -> PseudoChart:
    return _pat(
        "fig10b",
        vertices=[
            ("u1", "white"),
            ("u2", "white"),
        ],
        edges=[
            ("d1", 0, ("u1", 1), ("u2", 0)),
            ("d2", 0, ("u1", 5), ("u2", 2)),
            ("f", 0, ("u2", 4), ("u1", 3)),
        ],
        uses_eps=True,
        notes="2-angled disk with one feeler: the feeler is a chord joining "
        "the two corners inside the disk",
        ambiguities="the proper arcs of a ring crossing the disk beside the "
        "feeler are not pinned by the text and are left unconstrained",
    )


def fig11a() -> PseudoChart:
    return _pat(
        "fig11a",
        vertices=[(f"w{i}", "white") for i in range(1, 8)]
        + [
            ("p1", "black"),
            ("pm1", "black"),
            ("p4", "black"),
            ("pm4", "black"),
            ("p35", "black"),
            ("p5", "black"),
            ("p37", "black"),
            ("p47", "black"),
            ("p36", "black"),
            ("p46", "black"),
        ],
        edges=[
            # lower label
            ("e1", 0, ("w4", 2), ("w1", 3)),
            ("e2", 0, ("w4", 4), ("w1", 1)),
            ("t_m1", 0, ("w1", 5), ("pm1", 0)),
            ("t_m4", 0, ("pm4", 0), ("w4", 0)),
            # circuit label
            ("s12", 1, ("w1", 0), ("w2", 5)),
            ("s23", 1, ("w3", 0), ("w2", 3)),
            ("s31", 1, ("w1", 4), ("w3", 4)),
            ("u23", 1, ("w2", 1), ("w3", 2)),
            ("a44", 1, ("w5", 2), ("w4", 1)),
            ("b44", 1, ("w5", 4), ("w4", 5)),
            ("e4", 1, ("w4", 3), ("p4", 0)),
            ("e5", 1, ("p5", 0), ("w5", 0)),
            ("tw1", 1, ("p1", 0), ("w1", 2)),
            # higher label
            ("ep2", 2, ("w3", 5), ("w2", 4)),
            ("epp2", 2, ("w2", 0), ("w3", 3)),
            ("v26", 2, ("w2", 2), ("w6", 5)),
            ("v36", 2, ("w3", 1), ("w6", 1)),
            ("a55", 2, ("w7", 2), ("w5", 1)),
            ("b55", 2, ("w7", 4), ("w5", 5)),
            ("t35", 2, ("w5", 3), ("p35", 0)),
            ("t36", 2, ("w6", 3), ("p36", 0)),
            ("t37", 2, ("p37", 0), ("w7", 0)),
            # top label
            ("Y1", 3, ("w6", 2), ("w7", 1)),
            ("Y2", 3, ("w6", 4), ("w7", 5)),
            ("t46", 3, ("p46", 0), ("w6", 0)),
            ("t47", 3, ("w7", 3), ("p47", 0)),
        ],
        regions=[
            RegionConstraint(
                anchor=("w7", 3),
                barrier=("a55", "b55"),
                forbid=("w4",),
                note="the 2-gon disk of the higher-label pair does not "
                "contain the oval white",
            )
        ],
        notes="seven-white configuration: the oval hangs outside the "
        "higher-label 2-gon; the chord dips through the lower-label 2-gon",
    )


def fig11b() -> PseudoChart:
    return _pat(
        "fig11b",
        vertices=[(f"w{i}", "white") for i in range(1, 8)]
        + [
            ("p1", "black"),
            ("pm1", "black"),
            ("p4", "black"),
            ("pm4", "black"),
            ("p35", "black"),
            ("p5", "black"),
            ("p37", "black"),
            ("p47", "black"),
            ("p36", "black"),
            ("p46", "black"),
        ],
        edges=[
            ("e1", 0, ("w4", 3), ("w1", 3)),
            ("e2", 0, ("w4", 5), ("w1", 1)),
            ("t_m1", 0, ("w1", 5), ("pm1", 0)),
            ("t_m4", 0, ("pm4", 0), ("w4", 1)),
            ("s12", 1, ("w1", 0), ("w2", 5)),
            ("s23", 1, ("w3", 0), ("w2", 3)),
            ("s31", 1, ("w1", 4), ("w3", 4)),
            ("u23", 1, ("w2", 1), ("w3", 2)),
            ("a44", 1, ("w5", 1), ("w4", 0)),
            ("b44", 1, ("w5", 5), ("w4", 2)),
            ("e4", 1, ("w4", 4), ("p4", 0)),
            ("e5", 1, ("p5", 0), ("w5", 3)),
            ("tw1", 1, ("p1", 0), ("w1", 2)),
            ("ep2", 2, ("w3", 5), ("w2", 4)),
            ("epp2", 2, ("w2", 0), ("w3", 3)),
            ("v26", 2, ("w2", 2), ("w6", 5)),
            ("v36", 2, ("w3", 1), ("w6", 1)),
            ("a55", 2, ("w7", 2), ("w5", 2)),
            ("b55", 2, ("w7", 4), ("w5", 4)),
            ("t35", 2, ("w5", 0), ("p35", 0)),
            ("t36", 2, ("w6", 3), ("p36", 0)),
            ("t37", 2, ("p37", 0), ("w7", 0)),
            ("Y1", 3, ("w6", 2), ("w7", 1)),
            ("Y2", 3, ("w6", 4), ("w7", 5)),
            ("t46", 3, ("p46", 0), ("w6", 0)),
            ("t47", 3, ("w7", 3), ("p47", 0)),
        ],
        regions=[
            RegionConstraint(
                anchor=("w7", 3),
                barrier=("a55", "b55"),
                require=("w4",),
                note="the 2-gon disk of the higher-label pair contains the "
                "oval white",
            )
        ],
        notes="seven-white configuration with the oval inside the "
        "higher-label 2-gon; the lower-label connectors cross its boundary",
    )


def fig12() -> PseudoChart:
    return _pat(
        "fig12",
        vertices=[
            ("v1", "white"),
            ("v2", "white"),
            ("v3", "white"),
            ("v4", "white"),
            ("v5", "white"),
        ],
        edges=[],
        opens=[
            ("v2", 0, "out", 1, None, None),
            ("v3", 0, "in", 1, False, "no"),
            ("v5", 0, "out", 1, False, "no"),
            ("v5", 2, "out", 1, False, "no"),
            ("v1", 1, None, -1, None, None),
            ("v4", 1, None, -1, None, None),
        ],
        notes="annulus boundary data: five whites on the boundary, one "
        "outward arc possibly terminal, one inward and two outward arcs "
        "not middle; the tallies disagree 2 to 3 at budget zero",
        ambiguities="the annulus boundary edges are not pinned; only the "
        "arc profile matters for the balance count",
    )


def fig13a() -> PseudoChart:
    return _pat(
        "fig13a",
        vertices=[("w1", "white"), ("w2", "white"), ("w3", "white"), ("b3", "black")],
        edges=[
            ("d1", 0, ("w1", 2), ("w2", 0)),
            ("d2", 0, ("w2", 2), ("w3", 0)),
            ("d3", 0, ("w3", 2), ("w1", 0)),
            ("t3", 0, ("w3", 4), ("b3", 0)),
        ],
        opens=[
            ("w1", 1, None, (0, 1), None, None),
            ("w2", 1, None, (0, 1), None, None),
            ("w3", 1, None, (0, -1), None, None),
        ],
        uses_eps=True,
        notes="3-angled disk without feelers; the corner terminal edge "
        "lies outside the disk",
        ambiguities="boundary orientations are not stated; a coherent "
        "cycle is transcribed and the family is closed under reversal",
    )


def fig13b() -> PseudoChart:
    p = fig13a()
    return PseudoChart(
        id="fig13b",
        vertices=p.vertices,
        edges=tuple(
            e if e.id != "t3" else PEdge("t3", e.label, ("w3", 4), ("b3", 0))
            for e in p.edges
        ),
        opens=p.opens,
        regions=(
            RegionConstraint(
                anchor=("w3", 3),
                barrier=("d1", "d2", "d3"),
                require=(),
                note="the corner terminal edge lies inside the disk (it is "
                "the single feeler)",
            ),
        ),
        uses_eps=True,
        notes="3-angled disk with exactly one feeler: the corner terminal "
        "edge inside the disk",
        ambiguities=p.ambiguities,
    )


def fig15a() -> PseudoChart:
    return _pat(
        "fig15a",
        vertices=[
            ("w4", "white"),
            ("w5", "white"),
            ("py", "black"),
            ("px", "black"),
            ("p4", "black"),
            ("p5", "black"),
        ],
        edges=[
            ("r1", 0, ("w5", 1), ("w4", 0)),
            ("r2", 0, ("w5", 5), ("w4", 2)),
            ("ty", -1, ("py", 0), ("w4", 1), True),
            ("tx", 1, ("w5", 0), ("px", 0), True),
            ("e4", 0, ("w4", 4), ("p4", 0)),
            ("e5", 0, ("p5", 0), ("w5", 3)),
        ],
        notes="special oval: feeler-free 2-gon whose disk holds exactly one "
        "lower-label and one higher-label terminal edge, both crossing-free",
    )


def fig15b() -> PseudoChart:
    return _pat(
        "fig15b",
        vertices=[
            ("w4", "white"),
            ("w5", "white"),
            ("py", "black"),
            ("px", "black"),
            ("p4", "black"),
            ("p5", "black"),
            ("x0", "crossing"),
        ],
        edges=[
            ("r1", 0, ("w5", 1), ("w4", 0)),
            ("r2", 0, ("w5", 5), ("w4", 2)),
            ("tya", -1, ("py", 0), ("x0", 0)),
            ("tyb", -1, ("x0", 2), ("w4", 1)),
            ("txa", 1, ("w5", 0), ("x0", 1)),
            ("txb", 1, ("x0", 3), ("px", 0)),
            ("e4", 0, ("w4", 4), ("p4", 0)),
            ("e5", 0, ("p5", 0), ("w5", 3)),
        ],
        notes="the exchanged special oval: the two in-disk terminal edges "
        "cross each other once",
        ambiguities="the replaced picture is transcribed as the crossed "
        "terminal form; its chirality is covered by the reflection family",
    )


def fig16() -> PseudoChart:
    return _pat(
        "fig16",
        vertices=[
            ("u1", "white"),
            ("u2", "white"),
            ("u3", "white"),
        ],
        edges=[
            ("d1", 0, ("u1", 1), ("u2", 0)),
            ("d2", 0, ("u1", 5), ("u2", 2)),
            ("f", 0, ("u3", 0), ("u1", 3)),
        ],
        opens=[
            ("u3", 1, None, (0, 1), None, None),
        ],
        uses_eps=True,
        notes="2-angled disk with one feeler and one interior white vertex "
        "joined to the feeler corner",
        ambiguities="interior wiring beyond the feeler attachment is not "
        "determined by the text",
    )


def _theta_core():
    """Skew theta with the paper's junction orientations: both junction
    strands leave toward the subdividing white, one doubled strand each way."""
    vertices = [
        ("w1", "white"),
        ("w2", "white"),
        ("w3", "white"),
        ("b1", "black"),
    ]
    edges = [
        ("p12", 0, ("w2", 4), ("w1", 0)),
        ("p13", 0, ("w3", 4), ("w1", 4)),
        ("q1", 0, ("w3", 0), ("w2", 2)),
        ("q2", 0, ("w2", 0), ("w3", 2)),
        ("t1", 0, ("w1", 2), ("b1", 0)),
    ]
    return vertices, edges


def fig17a() -> PseudoChart:
    tv, te = _theta_core()
    return _pat(
        "fig17a",
        vertices=tv
        + [
            ("w4", "white"),
            ("w5", "white"),
            ("w7", "white"),
            ("b4", "black"),
            ("b5", "black"),
        ],
        edges=te
        + [
            ("a44", 0, ("w4", 1), ("w5", 0)),
            ("b44", 0, ("w4", 5), ("w5", 2)),
            ("e4", 0, ("b4", 0), ("w4", 3)),
            ("e5", 0, ("w5", 4), ("b5", 0)),
            ("ep23", 1, ("w2", 5), ("w3", 3)),
            ("a55", 1, ("w5", 3), ("w7", 0)),
            ("b55", 1, ("w5", 5), ("w7", 2)),
        ],
        opens=[
            ("w2", 1, "in", 1, False, "no"),
            ("w2", 3, "in", 1, False, "no"),
            ("w3", 1, "in", 1, False, "no"),
            ("w3", 5, "out", 1, None, None),
            ("w1", 1, "out", -1, None, "must"),
            ("w5", 1, "in", 1, True, None),
        ],
        notes="after the exchange steps: one higher-label chord joins the "
        "theta junctions and the two higher-label edges at the far oval "
        "white meet again at a further white",
        ambiguities="interior contents of the theta disks are described "
        "only by their counts and are left open",
    )


def fig5b_reversed() -> PseudoChart:
    """fig5b with every edge orientation reversed (the fig26a base)."""
    base = fig5b()
    edges = tuple(PEdge(e.id, e.label, e.head, e.tail) for e in base.edges)
    return PseudoChart(
        id=base.id,
        vertices=base.vertices,
        edges=edges,
        opens=base.opens,
        regions=base.regions,
        uses_eps=base.uses_eps,
        notes=base.notes,
    )


def fig26a() -> PseudoChart:
    return _with_opens(
        fig5b_reversed(),
        "fig26a",
        opens=[
            ("v2", 1, "out", 1, True, "no"),
            ("v4", 3, "out", 1, True, "no"),
            ("v3", 1, "out", 1, True, "must"),
            ("v5", 0, "in", 1, True, "must"),
        ],
        notes="higher-label data on the fig5b graph: middle internal edges "
        "outward at the 2-gon-adjacent whites, a middle terminal inward at "
        "the far chain end",
    )


def fig26b() -> PseudoChart:
    return _with_opens(
        fig5b(),
        "fig26b",
        opens=[
            ("v2", 1, "in", 1, True, "no"),
            ("v4", 3, "in", 1, True, "no"),
            ("v3", 1, "in", 1, True, "must"),
            ("v5", 0, "out", 1, True, "must"),
        ],
        notes="orientation mirror of fig26a",
    )


def fig7a() -> PseudoChart:
    tv, te = _theta_core()
    return _pat(
        "fig7a",
        vertices=tv
        + [
            ("w4", "white"),
            ("w5", "white"),
            ("b4", "black"),
            ("b5", "black"),
        ],
        edges=te
        + [
            ("a44", 0, ("w4", 1), ("w5", 0)),
            ("b44", 0, ("w4", 5), ("w5", 2)),
            ("e4", 0, ("b4", 0), ("w4", 3)),
            ("e5", 0, ("w5", 4), ("b5", 0)),
        ],
        opens=[
            # junction germs: one outward (middle), two inward non-middle,
            # and the third-disk germs inward non-middle
            ("w2", 1, "in", 1, False, "no"),
            ("w2", 3, "in", 1, False, "no"),
            ("w2", 5, "out", 1, None, "no"),
            ("w3", 1, "in", 1, False, "no"),
            ("w3", 3, "in", 1, False, "no"),
            ("w3", 5, "out", 1, None, None),
            ("w1", 1, "out", -1, None, "must"),
            ("w5", 1, "in", 1, True, None),
            ("w5", 3, "out", 1, False, "no"),
            ("w5", 5, "out", 1, False, "no"),
        ],
        notes="skew theta plus oval: the edge leaving the nearer junction "
        "outward, the other junction germs inward and not middle; the "
        "lower-label terminal hangs beside the subdividing white",
        ambiguities="which theta disk holds the oval is not re-checked "
        "during matching; the counting claims carry that information",
    )


def fig7b() -> PseudoChart:
    base = fig7a()
    flip = {"a44", "b44", "e4", "e5"}
    edges = tuple(
        PEdge(e.id, e.label, e.head, e.tail) if e.id in flip else e
        for e in base.edges
    )
    opens = []
    for (v, s, od) in base.opens:
        if v == "w5" and od.direction is not None:
            od = OpenDart(
                "in" if od.direction == "out" else "out",
                od.label,
                od.middle,
                od.terminal,
            )
        opens.append((v, s, od))
    return PseudoChart(
        id="fig7b",
        vertices=base.vertices,
        edges=edges,
        opens=tuple(opens),
        uses_eps=base.uses_eps,
        notes="variant of fig7a with the oval orientations reversed",
        ambiguities="the second family member is transcribed as the "
        "orientation-reversed oval; the reflection family covers the rest",
    )


BUILDERS = {
    "fig4a-oval": fig4a_oval,
    "fig4b-skew-theta": fig4b_skew_theta,
    "fig5a": fig5a,
    "fig5b": fig5b,
    "fig7a": fig7a,
    "fig7b": fig7b,
    "fig8a": fig8a,
    "fig8b": fig8b,
    "fig8c": fig8c,
    "fig8d": fig8d,
    "fig9a": fig9a,
    "fig9b": fig9b,
    "fig9c": fig9c,
    "fig9d": fig9d,
    "fig10a": fig10a,
    "fig10b": fig10b,
    "fig11a": fig11a,
    "fig11b": fig11b,
    "fig12": fig12,
    "fig13a": fig13a,
    "fig13b": fig13b,
    "fig15a": fig15a,
    "fig15b": fig15b,
    "fig16": fig16,
    "fig17a": fig17a,
    "fig26a": fig26a,
    "fig26b": fig26b,
}


def build_all() -> dict[str, PseudoChart]:
    return {pid: fn() for pid, fn in BUILDERS.items()}


def generate(dest: Path) -> list[str]:
    dest.mkdir(parents=True, exist_ok=True)
    written = []
    for pid, p in sorted(build_all().items()):
        payload = pattern_to_payload(p)
        path = dest / f"{pid}.json"
        path.write_text(json.dumps(payload, indent=2, sort_keys=True) + "\n")
        written.append(pid)
    return written
