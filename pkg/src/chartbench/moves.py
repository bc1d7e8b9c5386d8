"""C-move rewrite engine.

Every move kind is a local rewrite of the rotation system.  apply_move
checks the kind's preconditions, performs the splice, validates the result
(axioms; the hoopless part must stay a connected sphere map), and returns
the rewritten chart; apply_move_ex also returns the spec that undoes it.

Census deltas per kind live in the moves/v1 catalog (moves_catalog()); the
replay tests validate the table.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, replace
from typing import Mapping, Optional, Sequence

from .model import (
    BLACK,
    CROSSING,
    HEAD,
    TAIL,
    WHITE,
    Chart,
    Dart,
    Edge,
    Hoop,
    OperationError,
    Token,
    Vertex,
    arrival_dart,
    canonical_key,
    is_middle,
    parse_token,
    through_dart,
    token_str,
    trace_faces,
    validate,
)

KINDS = ("CI-M1", "CI-M2", "CI-R2", "CI-R3", "CI-R4", "C-II", "C-III")


@dataclass(frozen=True)
class MoveSpec:
    kind: str
    direction: str  # "forward" | "backward"
    site: tuple[tuple[str, object], ...]

    def arg(self, name: str, default=None):
        for k, v in self.site:
            if k == name:
                return v
        return default

    def to_payload(self) -> dict:
        return {"kind": self.kind, "direction": self.direction, "site": dict(self.site)}


def spec(kind: str, direction: str, **site) -> MoveSpec:
    if kind not in KINDS:
        raise OperationError(f"unknown move kind {kind!r}")
    if direction not in ("forward", "backward"):
        raise OperationError(f"unknown direction {direction!r}")
    return MoveSpec(kind, direction, tuple(sorted(site.items())))


def spec_from_payload(payload: Mapping) -> MoveSpec:
    return spec(payload["kind"], payload["direction"], **payload.get("site", {}))


@dataclass(frozen=True)
class Script:
    steps: tuple[MoveSpec, ...]
    pinned_edges: frozenset[str] = frozenset()
    pinned_vertices: frozenset[str] = frozenset()

    def to_payload(self) -> dict:
        return {
            "format": "script/v1",
            "steps": [s.to_payload() for s in self.steps],
            "pinned": {
                "edges": sorted(self.pinned_edges),
                "vertices": sorted(self.pinned_vertices),
            },
        }


def script_from_payload(payload: Mapping) -> Script:
    if payload.get("format", "script/v1") != "script/v1":
        raise OperationError("unsupported script format")
    pinned = payload.get("pinned", {})
    return Script(
        tuple(spec_from_payload(s) for s in payload.get("steps", ())),
        frozenset(pinned.get("edges", ())),
        frozenset(pinned.get("vertices", ())),
    )


# ---------------------------------------------------------------------------
# mutable builder
# ---------------------------------------------------------------------------


class MapBuilder:
    """Dict-backed mutable mirror of a chart, for splicing rewrites."""

    def __init__(self, chart: Chart):
        self.n = chart.n
        self.vertices: dict[str, str] = {v.id: v.kind for v in chart.vertices}
        self.edges: dict[str, Edge] = {e.id: e for e in chart.edges}
        self.hoops: list[Hoop] = list(chart.hoops)
        self.infinity = chart.infinity_face
        self._reserved: set[str] = set()

    def fresh(self, prefix: str) -> str:
        taken = set(self.vertices) | set(self.edges) | self._reserved
        i = 1
        while f"{prefix}{i}" in taken:
            i += 1
        name = f"{prefix}{i}"
        self._reserved.add(name)
        return name

    def add_vertex(self, vid: str, kind: str) -> str:
        if vid in self.vertices:
            raise OperationError(f"vertex id {vid!r} taken")
        self.vertices[vid] = kind
        return vid

    def set_edge(self, eid: str, label: int, tail, head):
        self.edges[eid] = Edge(eid, label, tuple(tail), tuple(head))

    def drop_edge(self, eid: str):
        del self.edges[eid]

    def drop_vertex(self, vid: str):
        del self.vertices[vid]

    def move_end(self, eid: str, end: int, to: tuple[str, int]):
        e = self.edges[eid]
        if end == TAIL:
            self.edges[eid] = Edge(e.id, e.label, tuple(to), e.head)
        else:
            self.edges[eid] = Edge(e.id, e.label, e.tail, tuple(to))

    def edge_at(self, vid: str, slot: int) -> tuple[str, int]:
        """(edge id, end) occupying a slot."""
        for e in self.edges.values():
            if e.tail == (vid, slot):
                return (e.id, TAIL)
            if e.head == (vid, slot):
                return (e.id, HEAD)
        raise OperationError(f"no edge at ({vid!r}, {slot})")

    def finalize(self) -> Chart:
        chart = Chart(
            n=self.n,
            vertices=tuple(
                sorted((Vertex(v, k) for v, k in self.vertices.items()), key=lambda v: v.id)
            ),
            edges=tuple(sorted(self.edges.values(), key=lambda e: e.id)),
            hoops=(),
            infinity_face="",
        )
        keys = {f.key for f in trace_faces(chart)}
        inf = self.infinity if self.infinity in keys else min(keys)
        fixed = []
        for h in self.hoops:
            host = h.host_face if h.host_face in keys else min(keys)
            fixed.append(Hoop(h.label, h.ccw, host, h.parent))
        return Chart(
            n=chart.n,
            vertices=chart.vertices,
            edges=chart.edges,
            hoops=tuple(fixed),
            infinity_face=inf,
        )


@dataclass
class ApplyResult:
    chart: Chart
    inverse: MoveSpec
    active_edges: frozenset[str]
    active_vertices: frozenset[str]


def _check_valid(chart: Chart, context: str) -> Chart:
    rep = validate(chart, policy=())
    if not rep.verdict:
        raise OperationError(f"{context}: result violates axioms: {rep.violations[:3]}")
    return chart


# ---------------------------------------------------------------------------
# CI-M1: hoop birth / death
# ---------------------------------------------------------------------------


def _apply_m1(chart: Chart, sp: MoveSpec) -> ApplyResult:
    if sp.direction == "forward":
        face = sp.arg("face")
        label = sp.arg("label")
        ccw = bool(sp.arg("ccw", True))
        parent = sp.arg("parent")
        if face not in chart.face_keys():
            raise OperationError(f"no face {face!r}")
        if not 1 <= label <= chart.n - 1:
            raise OperationError("hoop label out of range")
        if parent is not None:
            if not 0 <= parent < len(chart.hoops):
                raise OperationError("bad parent hoop")
            if chart.hoops[parent].host_face != face:
                raise OperationError("parent hoop lives in another face")
        hoops = chart.hoops + (Hoop(label, ccw, face, parent),)
        out = replace(chart, hoops=hoops)
        inv = spec("CI-M1", "backward", hoop=len(hoops) - 1)
        return ApplyResult(out, inv, frozenset(), frozenset())
    idx = sp.arg("hoop")
    if idx is None or not 0 <= idx < len(chart.hoops):
        raise OperationError("no such hoop")
    if any(h.parent == idx for h in chart.hoops):
        raise OperationError("hoop has nested hoops")
    removed = chart.hoops[idx]
    hoops = []
    for i, h in enumerate(chart.hoops):
        if i == idx:
            continue
        parent = h.parent
        if parent is not None and parent > idx:
            parent -= 1
        hoops.append(Hoop(h.label, h.ccw, h.host_face, parent))
    out = replace(chart, hoops=tuple(hoops))
    inv = spec(
        "CI-M1",
        "forward",
        face=removed.host_face,
        label=removed.label,
        ccw=removed.ccw,
        parent=removed.parent,
    )
    return ApplyResult(out, inv, frozenset(), frozenset())


# ---------------------------------------------------------------------------
# CI-M2: same-label reconnection (saddle)
# ---------------------------------------------------------------------------


def _apply_m2(chart: Chart, sp: MoveSpec) -> ApplyResult:
    t1, t2 = parse_token(sp.arg("t1")), parse_token(sp.arg("t2"))
    (e1, s1), (e2, s2) = t1, t2
    if e1 == e2:
        raise OperationError("reconnection needs two distinct edges")
    E1, E2 = chart.edge(e1), chart.edge(e2)
    if E1.label != E2.label:
        raise OperationError("reconnection needs equal labels")
    if s1 != s2:
        raise OperationError("arcs are not oriented antiparallel across the face")
    face = chart.face_of_token(t1)
    if t2 not in face.tokens():
        raise OperationError("arcs do not co-bound a face")
    b = MapBuilder(chart)
    b.set_edge(e1, E1.label, E1.tail, E2.head)
    b.set_edge(e2, E2.label, E2.tail, E1.head)
    out = _check_valid(b.finalize(), "CI-M2")
    inv_site = _m2_inverse_site(out, chart, e1, e2)
    inv = spec(
        "CI-M2", "backward" if sp.direction == "forward" else "forward", **inv_site
    )
    return ApplyResult(out, inv, frozenset({e1, e2}), frozenset())


def _m2_inverse_site(after: Chart, before: Chart, e1: str, e2: str) -> dict:
    token_map = {}
    for f in trace_faces(after):
        for t in f.cycle:
            token_map[t] = f
    for sign in (1, -1):
        t1, t2 = (e1, sign), (e2, sign)
        f = token_map.get(t1)
        if f is None or t2 not in f.tokens():
            continue
        E1, E2 = after.edge(e1), after.edge(e2)
        probe = MapBuilder(after)
        probe.set_edge(e1, E1.label, E1.tail, E2.head)
        probe.set_edge(e2, E2.label, E2.tail, E1.head)
        cand = probe.finalize()
        if cand.edges == before.edges and cand.vertices == before.vertices:
            return {"t1": token_str(t1), "t2": token_str(t2)}
    raise OperationError("CI-M2: could not derive inverse site")


# ---------------------------------------------------------------------------
# CI-R2: push one arc across another (two crossings appear / vanish)
# ---------------------------------------------------------------------------


def _walk_endpoint_darts(sign: int, prev_piece: str, next_piece: str) -> tuple[Dart, Dart]:
    """(walk-in, walk-out) darts at a crossing, given the orientation-order
    pieces around it and the traversal sign along the strand."""
    if sign > 0:
        return Dart(prev_piece, HEAD), Dart(next_piece, TAIL)
    return Dart(next_piece, TAIL), Dart(prev_piece, HEAD)


def _apply_r2_forward(chart: Chart, sp: MoveSpec) -> ApplyResult:
    t1, t2 = parse_token(sp.arg("t1")), parse_token(sp.arg("t2"))
    (e1, s1), (e2, s2) = t1, t2
    E1, E2 = chart.edge(e1), chart.edge(e2)
    if abs(E1.label - E2.label) <= 1:
        raise OperationError("strand labels too close to cross")
    face = chart.face_of_token(t1)
    if t2 not in face.tokens():
        raise OperationError("arcs do not co-bound a face")
    b = MapBuilder(chart)
    xa = b.add_vertex(b.fresh("x"), CROSSING)  # first along e1's face walk
    xb = b.add_vertex(b.fresh("x"), CROSSING)

    o1, o2 = (xa, xb) if s1 > 0 else (xb, xa)  # e1 crossings in orientation order
    q1, q2 = (xb, xa) if s2 > 0 else (xa, xb)  # e2 walk meets xb first
    m1, z1 = b.fresh("e"), None
    b.set_edge(m1, E1.label, (o1, 0), (o2, 0))
    z1 = b.fresh("e")
    b.set_edge(z1, E1.label, (o2, 0), E1.head)
    b.set_edge(e1, E1.label, E1.tail, (o1, 0))
    m2 = b.fresh("e")
    b.set_edge(m2, E2.label, (q1, 0), (q2, 0))
    z2 = b.fresh("e")
    b.set_edge(z2, E2.label, (q2, 0), E2.head)
    b.set_edge(e2, E2.label, E2.tail, (q1, 0))

    def around(first_id, mid_id, last_id, o_first, x):
        return (first_id, mid_id) if x == o_first else (mid_id, last_id)

    # crossing rotations: chirality pinned by the sphere/bigon invariants
    # (checked over every co-bounding far-label pair of the test charts)
    for x, layout in ((xa, "first"), (xb, "second")):
        p1_prev, p1_next = around(e1, m1, z1, o1, x)
        p2_prev, p2_next = around(e2, m2, z2, q1, x)
        w1_in, w1_out = _walk_endpoint_darts(s1, p1_prev, p1_next)
        w2_in, w2_out = _walk_endpoint_darts(s2, p2_prev, p2_next)
        if layout == "first":
            order = [w1_in, w2_out, w1_out, w2_in]
        else:
            order = [w1_out, w2_out, w1_in, w2_in]
        for slot, d in enumerate(order):
            b.move_end(d.edge, d.end, (x, slot))
    out = _check_valid(b.finalize(), "CI-R2")
    bigon = None
    for f in trace_faces(out):
        if len(f.cycle) == 2 and {tok[0] for tok in f.cycle} == {m1, m2}:
            bigon = f.key
            break
    if bigon is None:
        raise OperationError("CI-R2: 2-gon not found after crossing")
    inv = spec("CI-R2", "backward", face=bigon)
    return ApplyResult(out, inv, frozenset(), frozenset({xa, xb}))


def _apply_r2_backward(chart: Chart, sp: MoveSpec) -> ApplyResult:
    key = sp.arg("face")
    face = chart.face_by_key(key)
    if len(face.cycle) != 2:
        raise OperationError("not a 2-gon face")
    p, q = face.cycle[0][0], face.cycle[1][0]
    if p == q:
        raise OperationError("2-gon is a single doubled edge, not a crossing pair")
    P, Q = chart.edge(p), chart.edge(q)
    corners = {P.tail[0], P.head[0]}
    if corners != {Q.tail[0], Q.head[0]} or len(corners) != 2:
        raise OperationError("2-gon sides do not share both corners")
    if any(chart.vertex(v).kind != CROSSING for v in corners):
        raise OperationError("2-gon corners are not crossings")
    b = MapBuilder(chart)
    merged = {}
    for mid_piece in (p, q):
        upstream = through_dart(chart, Dart(mid_piece, TAIL))
        downstream = through_dart(chart, Dart(mid_piece, HEAD))
        assert upstream is not None and downstream is not None
        up_piece, down_piece = upstream.edge, downstream.edge
        if up_piece == down_piece or mid_piece in (up_piece, down_piece):
            raise OperationError("uncrossing would close the strand into a hoop")
        if upstream.end != HEAD or downstream.end != TAIL:
            raise OperationError("2-gon strand orientation broken")
        UP, DOWN = chart.edge(up_piece), chart.edge(down_piece)
        b.drop_edge(up_piece)
        b.drop_edge(mid_piece)
        b.drop_edge(down_piece)
        b.set_edge(up_piece, UP.label, UP.tail, DOWN.head)
        merged[mid_piece] = up_piece
    for v in corners:
        b.drop_vertex(v)
    out = _check_valid(b.finalize(), "CI-R2 backward")
    ma, mb = merged[p], merged[q]
    site = None
    for f in trace_faces(out):
        toks = f.tokens()
        for sa, sb in itertools.product((1, -1), repeat=2):
            if (ma, sa) in toks and (mb, sb) in toks:
                site = {"t1": token_str((ma, sa)), "t2": token_str((mb, sb))}
                break
        if site:
            break
    if site is None:
        raise OperationError("CI-R2 backward: inverse site not found")
    inv = spec("CI-R2", "forward", **site)
    return ApplyResult(out, inv, frozenset(), frozenset(corners))


# ---------------------------------------------------------------------------
# CI-R3: slide a strand past a crossing (triangle flip)
# ---------------------------------------------------------------------------


def _apply_r3(chart: Chart, sp: MoveSpec) -> ApplyResult:
    key = sp.arg("face")
    face = chart.face_by_key(key)
    if len(face.cycle) != 3:
        raise OperationError("not a 3-gon face")
    piece_ids = [tok[0] for tok in face.cycle]
    if len(set(piece_ids)) != 3:
        raise OperationError("triangle sides not distinct")
    corner_vs = set()
    for eid in piece_ids:
        e = chart.edge(eid)
        corner_vs.update((e.tail[0], e.head[0]))
    if len(corner_vs) != 3 or any(chart.vertex(v).kind != CROSSING for v in corner_vs):
        raise OperationError("triangle corners are not three crossings")

    b = MapBuilder(chart)
    end_moves: list[tuple[str, int, tuple[str, int]]] = []
    reorient: dict[str, tuple] = {}
    for mid in piece_ids:
        MID = chart.edge(mid)
        up = through_dart(chart, Dart(mid, TAIL))  # outer dart at the tail crossing
        down = through_dart(chart, Dart(mid, HEAD))
        assert up is not None and down is not None
        if up.end != HEAD or down.end != TAIL:
            raise OperationError("triangle strand orientation broken")
        if up.edge in piece_ids or down.edge in piece_ids:
            raise OperationError("triangle side continues into another side")
        x_in = chart.edge(up.edge).head  # (X, slot) currently held by up.head
        x_out = MID.tail
        y_in = MID.head
        y_out = chart.edge(down.edge).tail
        end_moves.append((up.edge, HEAD, y_in))
        end_moves.append((down.edge, TAIL, x_out))
        reorient[mid] = (MID.label, y_out, x_in)
    for eid, (label, new_tail, new_head) in reorient.items():
        b.set_edge(eid, label, new_tail, new_head)
    for eid, end, to in end_moves:
        b.move_end(eid, end, to)
    out = _check_valid(b.finalize(), "CI-R3")
    new_face = None
    for f in trace_faces(out):
        if len(f.cycle) == 3 and {t[0] for t in f.cycle} == set(piece_ids):
            new_face = f.key
            break
    if new_face is None:
        raise OperationError("CI-R3: flipped triangle not found")
    inv = spec(
        "CI-R3", "backward" if sp.direction == "forward" else "forward", face=new_face
    )
    return ApplyResult(out, inv, frozenset(), frozenset(corner_vs))


# ---------------------------------------------------------------------------
# CI-R4: slide a strand past a white vertex (block flip)
# ---------------------------------------------------------------------------


def _wall_edges_at(chart: Chart, x: str, germ_piece: str) -> list[Dart]:
    rot = chart.rotation(x)
    k = next(i for i, d in enumerate(rot) if d.edge == germ_piece)
    return [rot[(k + 1) % 4], rot[(k + 3) % 4]]


def _r4_site_data(chart: Chart, w: str, slot: int):
    rot = chart.rotation(w)
    germs = [rot[(slot + i) % 6] for i in range(3)]
    crossings = []
    for g in germs:
        other = g.opposite()
        x = chart.dart_vertex(other)
        if chart.vertex(x).kind != CROSSING:
            raise OperationError("germ not crossing-adjacent")
        crossings.append(x)
    if len(set(crossings)) != 3:
        raise OperationError("germs share crossings")
    mids = []
    for i in range(2):
        a = {d.edge for d in _wall_edges_at(chart, crossings[i], germs[i].edge)}
        bset = {d.edge for d in _wall_edges_at(chart, crossings[i + 1], germs[i + 1].edge)}
        common = a & bset
        if len(common) != 1:
            raise OperationError("wall not consecutive across the germs")
        mids.append(common.pop())
    wall_label = chart.edge(mids[0]).label
    pair = sorted({chart.dart_label(d) for d in rot})
    if not (abs(wall_label - pair[0]) > 1 and abs(wall_label - pair[1]) > 1):
        raise OperationError("wall label too close to the vertex labels")
    for i in range(2):
        ok = False
        for f in trace_faces(chart):
            if len(f.cycle) != 3:
                continue
            vs = {chart.dart_vertex(arrival_dart(t)) for t in f.cycle}
            if vs == {w, crossings[i], crossings[i + 1]}:
                ok = True
                break
        if not ok:
            raise OperationError("triangle between wall and vertex not empty")
    return germs, crossings, mids, wall_label


def _apply_r4(chart: Chart, sp: MoveSpec) -> ApplyResult:
    w = sp.arg("white")
    slot = sp.arg("slot")
    if chart.vertex(w).kind != WHITE:
        raise OperationError("site vertex is not white")
    germs, crossings, mids, wall_label = _r4_site_data(chart, w, slot)

    b = MapBuilder(chart)
    # unthread: merge germ strands and the wall chain, drop the crossings
    for g in germs:
        inner = chart.edge(g.edge)
        outer_dart = through_dart(chart, g.opposite())
        assert outer_dart is not None
        outer = chart.edge(outer_dart.edge)
        if outer.id == inner.id:
            raise OperationError("germ strand loops straight back")
        if g.end == TAIL:
            merged_tail, merged_head = inner.tail, outer.head
        else:
            merged_tail, merged_head = outer.tail, inner.head
        b.drop_edge(inner.id)
        b.drop_edge(outer.id)
        b.set_edge(g.edge, inner.label, merged_tail, merged_head)

    def outer_wall_dart(x: str, germ_piece: str) -> Dart:
        return next(
            d for d in _wall_edges_at(chart, x, germ_piece) if d.edge not in mids
        )

    wpre = outer_wall_dart(crossings[0], germs[0].edge)
    wpost = outer_wall_dart(crossings[2], germs[2].edge)
    if wpre.edge == wpost.edge:
        raise OperationError("unthreading would close the wall into a hoop")
    if wpre.end == HEAD:  # wall flows wpre -> x0 -> x1 -> x2 -> wpost
        chain = [wpre.edge, mids[0], mids[1], wpost.edge]
        flow_meets_increasing = True
    else:
        chain = [wpost.edge, mids[1], mids[0], wpre.edge]
        flow_meets_increasing = False
    first_e, last_e = chart.edge(chain[0]), chart.edge(chain[-1])
    for eid in chain:
        b.drop_edge(eid)
    wall_id = chain[0]
    b.set_edge(wall_id, wall_label, first_e.tail, last_e.head)
    for x in crossings:
        b.drop_vertex(x)

    # thread across the complementary block; the flow meets the new germs in
    # the reverse slot order of how it met the old ones
    target = [(slot + 3 + i) % 6 for i in range(3)]
    flow_slots = list(reversed(target)) if flow_meets_increasing else target
    out = _thread_wall(b, w, wall_id, flow_slots)
    inv = spec(
        "CI-R4",
        "backward" if sp.direction == "forward" else "forward",
        white=w,
        slot=(slot + 3) % 6,
    )
    return ApplyResult(out, inv, frozenset(), frozenset({w}))


def _thread_wall(b: MapBuilder, w: str, wall_id: str, flow_slots: list[int]) -> Chart:
    """Split the wall so it crosses the given germ slots of w in flow order.
    Both handedness layouts are tried; the one yielding a valid sphere map
    with the two empty triangles at the vertex wins."""
    snap_edges = dict(b.edges)
    snap_vertices = dict(b.vertices)
    last_err: Optional[OperationError] = None
    for handed in (0, 1):
        b.edges = dict(snap_edges)
        b.vertices = dict(snap_vertices)
        try:
            out = _thread_wall_once(b, w, wall_id, flow_slots, handed)
            rep = validate(out, policy=())
            if not rep.verdict:
                raise OperationError(f"threading invalid: {rep.violations[:2]}")
            tri = 0
            for f in trace_faces(out):
                if len(f.cycle) == 3:
                    vs = {out.dart_vertex(arrival_dart(t)) for t in f.cycle}
                    if w in vs and all(out.vertex(v).kind == CROSSING for v in vs - {w}):
                        tri += 1
            if tri >= 2:
                return out
            raise OperationError("threaded wall lost its triangles")
        except OperationError as exc:
            last_err = exc
    raise last_err if last_err else OperationError("threading failed")


def _thread_wall_once(
    b: MapBuilder, w: str, wall_id: str, flow_slots: list[int], handed: int
) -> Chart:
    wall = b.edges[wall_id]
    xs = [b.add_vertex(b.fresh("x"), CROSSING) for _ in range(3)]
    p1, p2, p3 = b.fresh("e"), None, None
    b.set_edge(p1, wall.label, (xs[0], 0), (xs[1], 0))
    p2 = b.fresh("e")
    b.set_edge(p2, wall.label, (xs[1], 0), (xs[2], 0))
    p3 = b.fresh("e")
    b.set_edge(p3, wall.label, (xs[2], 0), wall.head)
    b.set_edge(wall_id, wall.label, wall.tail, (xs[0], 0))
    wall_pieces = [wall_id, p1, p2, p3]
    for i, x in enumerate(xs):
        j = flow_slots[i]
        f_id, f_end = b.edge_at(w, j)
        F = b.edges[f_id]
        if f_end == TAIL:  # germ flows out of w; inner piece keeps the id
            outer = b.fresh("e")
            b.set_edge(outer, F.label, (x, 0), F.head)
            b.set_edge(f_id, F.label, F.tail, (x, 0))
            inner_dart = Dart(f_id, HEAD)
            outer_dart = Dart(outer, TAIL)
        else:  # germ flows into w
            outer = b.fresh("e")
            b.set_edge(outer, F.label, F.tail, (x, 0))
            b.set_edge(f_id, F.label, (x, 0), F.head)
            inner_dart = Dart(f_id, TAIL)
            outer_dart = Dart(outer, HEAD)
        wall_in = Dart(wall_pieces[i], HEAD)
        wall_out = Dart(wall_pieces[i + 1], TAIL)
        if handed == 0:
            order = [wall_out, outer_dart, wall_in, inner_dart]
        else:
            order = [wall_in, outer_dart, wall_out, inner_dart]
        for s, d in enumerate(order):
            b.move_end(d.edge, d.end, (x, s))
    return b.finalize()


# ---------------------------------------------------------------------------
# C-II: a black vertex passes across a strand
# ---------------------------------------------------------------------------


def _black_edge(chart: Chart, black: str) -> Dart:
    v = chart.vertex(black)
    if v.kind != BLACK:
        raise OperationError(f"{black!r} is not a black vertex")
    return chart.rotation(black)[0]


def _apply_c2_forward(chart: Chart, sp: MoveSpec) -> ApplyResult:
    black = sp.arg("black")
    tok = parse_token(sp.arg("token"))
    s_eid, sign = tok
    d_b = _black_edge(chart, black)
    F = chart.edge(d_b.edge)
    S = chart.edge(s_eid)
    if abs(F.label - S.label) <= 1:
        raise OperationError("labels too close to cross")
    if s_eid == F.id:
        raise OperationError("black vertex cannot cross its own edge")
    # the face wrapping around the black vertex
    bface = chart.corner_face(d_b)
    if tok not in bface.tokens():
        raise OperationError("strand side not on the black vertex's face")
    b = MapBuilder(chart)
    x = b.add_vertex(b.fresh("x"), CROSSING)
    # split the strand
    m = b.fresh("e")
    b.set_edge(m, S.label, (x, 0), S.head)
    b.set_edge(s_eid, S.label, S.tail, (x, 0))
    s_in, s_out = Dart(s_eid, HEAD), Dart(m, TAIL)
    walk_in, walk_out = (s_in, s_out) if sign > 0 else (s_out, s_in)
    # extend the terminal strand across
    f2 = b.fresh("e")
    if d_b.end == HEAD:  # F flows into the black vertex
        b.set_edge(f2, F.label, (x, 0), (black, 0))
        b.set_edge(F.id, F.label, F.tail, (x, 0))
    else:  # F flows out of the black vertex
        b.set_edge(f2, F.label, (black, 0), (x, 0))
        b.set_edge(F.id, F.label, (x, 0), F.head)
    # the black vertex crosses from the face (walk-left) side to the other;
    # chirality pinned by the sphere invariant, matching the R2 layout
    east = Dart(f2, TAIL) if d_b.end == HEAD else Dart(f2, HEAD)
    west = Dart(F.id, HEAD) if d_b.end == HEAD else Dart(F.id, TAIL)
    order = [east, walk_in, west, walk_out]
    for s, d in enumerate(order):
        b.move_end(d.edge, d.end, (x, s))
    out = _check_valid(b.finalize(), "C-II")
    inv = spec("C-II", "backward", black=black, crossing=x)
    return ApplyResult(
        out, inv, frozenset({F.id, f2}), frozenset({black, x})
    )


def _apply_c2_backward(chart: Chart, sp: MoveSpec) -> ApplyResult:
    black = sp.arg("black")
    x = sp.arg("crossing")
    d_b = _black_edge(chart, black)
    f2 = chart.edge(d_b.edge)
    other_end = f2.tail if d_b.end == HEAD else f2.head
    if other_end[0] != x or chart.vertex(x).kind != CROSSING:
        raise OperationError("black vertex not adjacent to that crossing")
    # strand pieces through x
    d_f2_at_x = Dart(f2.id, TAIL if d_b.end == HEAD else HEAD)
    d_f_at_x = through_dart(chart, d_f2_at_x)
    assert d_f_at_x is not None
    f1 = chart.edge(d_f_at_x.edge)
    rot = chart.rotation(x)
    k = next(i for i, d in enumerate(rot) if d == d_f2_at_x)
    s_darts = [rot[(k + 1) % 4], rot[(k + 3) % 4]]
    s_head_piece = next(d.edge for d in s_darts if d.end == HEAD)
    s_tail_piece = next(d.edge for d in s_darts if d.end == TAIL)
    if s_head_piece == s_tail_piece:
        raise OperationError("retracting would close the strand into a hoop")
    if f1.id == f2.id:
        raise OperationError("terminal strand loops through the crossing")
    b = MapBuilder(chart)
    SH, ST = chart.edge(s_head_piece), chart.edge(s_tail_piece)
    b.drop_edge(s_head_piece)
    b.drop_edge(s_tail_piece)
    b.set_edge(s_head_piece, SH.label, SH.tail, ST.head)
    # merge the terminal strand pieces, keeping the outer piece's id
    b.drop_edge(f1.id)
    b.drop_edge(f2.id)
    if d_b.end == HEAD:  # flow: f1 -> x -> f2 -> black
        b.set_edge(f1.id, f1.label, f1.tail, (black, 0))
        merged = f1.id
    else:  # flow: black -> f2 -> x -> f1
        b.set_edge(f1.id, f1.label, (black, 0), f1.head)
        merged = f1.id
    b.drop_vertex(x)
    out = _check_valid(b.finalize(), "C-II backward")
    # inverse: cross back over the same strand from the face now holding it
    d_b2 = Dart(merged, HEAD if d_b.end == HEAD else TAIL)
    bface = out.corner_face(d_b2)
    site_tok = None
    for t in bface.cycle:
        if t[0] == s_head_piece:
            site_tok = t
            break
    if site_tok is None:
        raise OperationError("C-II backward: inverse site not found")
    inv = spec("C-II", "forward", black=black, token=token_str(site_tok))
    return ApplyResult(out, inv, frozenset({merged}), frozenset({black, x}))


# ---------------------------------------------------------------------------
# C-III: white-vertex absorption / emission beside a black vertex
# ---------------------------------------------------------------------------


def _apply_c3_forward(chart: Chart, sp: MoveSpec) -> ApplyResult:
    w = sp.arg("white")
    eid = sp.arg("terminal")
    if chart.vertex(w).kind != WHITE:
        raise OperationError("site vertex is not white")
    E = chart.edge(eid)
    ends = {E.tail[0], E.head[0]}
    if w not in ends:
        raise OperationError("edge not at the white vertex")
    black = (ends - {w}).pop() if len(ends) == 2 else None
    if black is None or chart.vertex(black).kind != BLACK:
        raise OperationError("edge does not join the white vertex to a black vertex")
    d_e = Dart(eid, TAIL if E.tail[0] == w else HEAD)
    if is_middle(chart, d_e):
        raise OperationError("the terminal edge is middle at the white vertex")
    rot = chart.rotation(w)
    q = chart.dart_slot(d_e)
    g = [rot[(q + i) % 6] for i in range(6)]
    edge_ids = [d.edge for d in g]
    if len(set(edge_ids)) != 6:
        raise OperationError("germ edges at the white vertex are not distinct")
    b = MapBuilder(chart)

    def merge(d_in_pos: int, d_out_pos: int):
        da, db_ = g[d_in_pos], g[d_out_pos]
        inward = da if chart.is_inward(da) else db_
        outward = db_ if chart.is_inward(da) else da
        if not (chart.is_inward(inward) and not chart.is_inward(outward)):
            raise OperationError("merge pair orientation broken")
        A, B = chart.edge(inward.edge), chart.edge(outward.edge)
        b.drop_edge(A.id)
        b.drop_edge(B.id)
        b.set_edge(A.id, A.label, A.tail, B.head)
        return A.id

    merged24 = merge(2, 4)
    merged15 = merge(1, 5)
    f_dart = g[3]
    b.move_end(f_dart.edge, f_dart.end, (black, 0))
    b.drop_edge(eid)
    b.drop_vertex(w)
    out = _check_valid(b.finalize(), "C-III")
    phase_in = chart.is_inward(d_e)
    inv = spec(
        "C-III",
        "backward",
        edge_i=merged24,
        edge_j=merged15,
        terminal=f_dart.edge,
        new_white=w,
        new_edge=eid,
        phase=_c3_phase(chart, q, rot),
    )
    return ApplyResult(
        out,
        inv,
        frozenset({eid, merged24, merged15, f_dart.edge}),
        frozenset({w, black}),
    )


def _c3_phase(chart: Chart, q: int, rot) -> int:
    """0..3: direction pattern of the six germs relative to the terminal."""
    dirs = [chart.is_inward(rot[(q + i) % 6]) for i in range(6)]
    patterns = _c3_patterns()
    for i, pat in enumerate(patterns):
        if dirs == pat:
            return i
    raise OperationError("terminal germ is not non-middle in a valid block layout")


def _c3_patterns():
    # inward flags for germs 0..5 (0 = the terminal's slot), terminal
    # non-middle: blocks (0,1,2)/(4,5,0) inward or outward
    return [
        [True, True, True, False, False, False],
        [True, False, False, False, True, True],
        [False, False, False, True, True, True],
        [False, True, True, True, False, False],
    ]


def _apply_c3_backward(chart: Chart, sp: MoveSpec) -> ApplyResult:
    A_id, B_id = sp.arg("edge_i"), sp.arg("edge_j")
    f_id = sp.arg("terminal")
    phase = sp.arg("phase")
    A, B, F = chart.edge(A_id), chart.edge(B_id), chart.edge(f_id)
    if abs(A.label - B.label) != 1 or F.label != B.label:
        raise OperationError("labels do not fit a white vertex birth")
    ends = sorted({F.tail[0], F.head[0]})
    black = next((v for v in ends if chart.vertex(v).kind == BLACK), None)
    if black is None:
        raise OperationError("third edge is not terminal")
    if len({A_id, B_id, f_id}) != 3:
        raise OperationError("edges must be distinct")
    w = sp.arg("new_white") or None
    e_new = sp.arg("new_edge") or None
    b = MapBuilder(chart)
    if w is None:
        w = b.fresh("w")
    b.add_vertex(w, WHITE)
    if e_new is None:
        e_new = b.fresh("e")
    dirs = _c3_patterns()[phase]
    # cut A into germ slots 2 and 4; B into 1 and 5
    a2 = b.fresh("e")
    b2 = b.fresh("e")

    def cut(eid: str, extra: str, slot_in: int, slot_out: int):
        EE = chart.edge(eid)
        # piece keeping the id carries the tail; it heads into w at slot_in
        b.set_edge(eid, EE.label, EE.tail, (w, slot_in))
        b.set_edge(extra, EE.label, (w, slot_out), EE.head)

    in_a, out_a = (2, 4) if dirs[2] else (4, 2)
    cut(A_id, a2, in_a, out_a)
    in_b, out_b = (1, 5) if dirs[1] else (5, 1)
    cut(B_id, b2, in_b, out_b)
    # the terminal-strand edge re-attaches to w at slot 3
    f_black_end = TAIL if F.tail[0] == black else HEAD
    b.move_end(f_id, f_black_end, (w, 3))
    # new terminal edge at slot 0
    if dirs[0]:
        b.set_edge(e_new, A.label, (black, 0), (w, 0))
    else:
        b.set_edge(e_new, A.label, (w, 0), (black, 0))
    out = _check_valid(b.finalize(), "C-III backward")
    from .model import white_blocks

    white_blocks(out, w)  # raises if the layout is inconsistent
    inv = spec("C-III", "forward", white=w, terminal=e_new)
    return ApplyResult(
        out,
        inv,
        frozenset({A_id, B_id, f_id, e_new}),
        frozenset({w, black}),
    )


# ---------------------------------------------------------------------------
# driver
# ---------------------------------------------------------------------------


_APPLIERS = {
    ("CI-M1", "forward"): _apply_m1,
    ("CI-M1", "backward"): _apply_m1,
    ("CI-M2", "forward"): _apply_m2,
    ("CI-M2", "backward"): _apply_m2,
    ("CI-R2", "forward"): _apply_r2_forward,
    ("CI-R2", "backward"): _apply_r2_backward,
    ("CI-R3", "forward"): _apply_r3,
    ("CI-R3", "backward"): _apply_r3,
    ("CI-R4", "forward"): _apply_r4,
    ("CI-R4", "backward"): _apply_r4,
    ("C-II", "forward"): _apply_c2_forward,
    ("C-II", "backward"): _apply_c2_backward,
    ("C-III", "forward"): _apply_c3_forward,
    ("C-III", "backward"): _apply_c3_backward,
}


def apply_move_ex(
    chart: Chart,
    sp: MoveSpec,
    pinned_edges: frozenset[str] = frozenset(),
    pinned_vertices: frozenset[str] = frozenset(),
) -> ApplyResult:
    applier = _APPLIERS.get((sp.kind, sp.direction))
    if applier is None:
        raise OperationError(f"no applier for {sp.kind} {sp.direction}")
    res = applier(chart, sp)
    if pinned_edges & res.active_edges:
        raise OperationError(
            f"pinned edges rewritten: {sorted(pinned_edges & res.active_edges)}"
        )
    if pinned_vertices & res.active_vertices:
        raise OperationError(
            f"pinned vertices rewritten: {sorted(pinned_vertices & res.active_vertices)}"
        )
    return res


def apply_move(
    chart: Chart,
    sp: MoveSpec,
    pinned_edges: frozenset[str] = frozenset(),
    pinned_vertices: frozenset[str] = frozenset(),
) -> Chart:
    return apply_move_ex(chart, sp, pinned_edges, pinned_vertices).chart


def invert(chart_before: Chart, sp: MoveSpec) -> MoveSpec:
    """The spec undoing sp, valid on apply_move(chart_before, sp)."""
    return apply_move_ex(chart_before, sp).inverse


def run_script(chart: Chart, script: Script) -> tuple[Chart, list[str]]:
    trace = [canonical_key(chart)]
    cur = chart
    for i, step in enumerate(script.steps):
        try:
            cur = apply_move(cur, step, script.pinned_edges, script.pinned_vertices)
        except OperationError as exc:
            raise OperationError(f"step {i} ({step.kind} {step.direction}): {exc}")
        trace.append(canonical_key(cur))
    return cur, trace


# ---------------------------------------------------------------------------
# applicability enumeration
# ---------------------------------------------------------------------------


def _try(chart: Chart, sp: MoveSpec) -> bool:
    try:
        apply_move_ex(chart, sp)
        return True
    except OperationError:
        return False


def applicable_moves(chart: Chart, site: Optional[Mapping] = None) -> list[MoveSpec]:
    """All applicable specs of the implemented catalog, optionally filtered
    to those touching a site locus ({'face': key} / {'edge': id} /
    {'vertex': id})."""
    out: list[MoveSpec] = []
    faces = trace_faces(chart)

    for f in faces:
        for label in chart.labels():
            for ccw in (True, False):
                out.append(spec("CI-M1", "forward", face=f.key, label=label, ccw=ccw, parent=None))
    for i, h in enumerate(chart.hoops):
        if not any(g.parent == i for g in chart.hoops):
            out.append(spec("CI-M1", "backward", hoop=i))

    for f in faces:
        toks = sorted(f.cycle, key=token_str)
        for t1, t2 in itertools.combinations(toks, 2):
            if t1[0] == t2[0]:
                continue
            l1, l2 = chart.edge(t1[0]).label, chart.edge(t2[0]).label
            if l1 == l2 and t1[1] == t2[1]:
                cand = spec("CI-M2", "forward", t1=token_str(t1), t2=token_str(t2))
                if _try(chart, cand):
                    out.append(cand)
            if abs(l1 - l2) > 1:
                cand = spec("CI-R2", "forward", t1=token_str(t1), t2=token_str(t2))
                if _try(chart, cand):
                    out.append(cand)
        if len(f.cycle) == 2:
            cand = spec("CI-R2", "backward", face=f.key)
            if _try(chart, cand):
                out.append(cand)
        if len(f.cycle) == 3:
            cand = spec("CI-R3", "forward", face=f.key)
            if _try(chart, cand):
                out.append(cand)

    for v in chart.vertices:
        if v.kind == WHITE:
            for s in range(6):
                cand = spec("CI-R4", "forward", white=v.id, slot=s)
                if _try(chart, cand):
                    out.append(cand)
            for d in chart.rotation(v.id):
                cand = spec("C-III", "forward", white=v.id, terminal=d.edge)
                if _try(chart, cand):
                    out.append(cand)
        elif v.kind == BLACK:
            d_b = _black_edge(chart, v.id)
            bface = chart.corner_face(d_b)
            for t in sorted(set(bface.cycle), key=token_str):
                cand = spec("C-II", "forward", black=v.id, token=token_str(t))
                if _try(chart, cand):
                    out.append(cand)
            other = chart.edge(d_b.edge)
            far = other.tail if d_b.end == HEAD else other.head
            if chart.has_vertex(far[0]) and chart.vertex(far[0]).kind == CROSSING:
                cand = spec("C-II", "backward", black=v.id, crossing=far[0])
                if _try(chart, cand):
                    out.append(cand)

    # white-vertex births: anchored at terminal edges and co-bounding arcs
    for v in chart.vertices:
        if v.kind != BLACK:
            continue
        d_b = _black_edge(chart, v.id)
        F = chart.edge(d_b.edge)
        for f in faces:
            toks = sorted(set(f.cycle), key=token_str)
            for tA, tB in itertools.permutations(toks, 2):
                if tA[0] == tB[0] or F.id in (tA[0], tB[0]):
                    continue
                lA, lB = chart.edge(tA[0]).label, chart.edge(tB[0]).label
                if lB != F.label or abs(lA - lB) != 1:
                    continue
                for phase in range(4):
                    cand = spec(
                        "C-III",
                        "backward",
                        edge_i=tA[0],
                        edge_j=tB[0],
                        terminal=F.id,
                        new_white=None,
                        new_edge=None,
                        phase=phase,
                    )
                    if _try(chart, cand):
                        out.append(cand)

    out = _dedup(out)
    if site:
        out = [sp_ for sp_ in out if _touches(chart, sp_, site)]
    return out


def _dedup(specs: list[MoveSpec]) -> list[MoveSpec]:
    seen = set()
    keep = []
    for sp_ in specs:
        key = (sp_.kind, sp_.direction, sp_.site)
        if key not in seen:
            seen.add(key)
            keep.append(sp_)
    return sorted(keep, key=lambda s: (s.kind, s.direction, repr(s.site)))


def _touches(chart: Chart, sp_: MoveSpec, site: Mapping) -> bool:
    want_face = site.get("face")
    want_edge = site.get("edge")
    want_vertex = site.get("vertex")
    edges: set[str] = set()
    vertices: set[str] = set()
    faces: set[str] = set()
    for k, v in sp_.site:
        if v is None:
            continue
        if k in ("t1", "t2", "token"):
            edges.add(parse_token(v)[0])
        elif k in ("terminal", "edge_i", "edge_j", "new_edge"):
            if isinstance(v, str):
                edges.add(v)
        elif k in ("white", "black", "crossing"):
            vertices.add(v)
        elif k == "face":
            faces.add(v)
    if want_face is not None:
        if want_face in faces:
            return True
        try:
            f = chart.face_by_key(want_face)
        except OperationError:
            return False
        if edges & f.edge_ids():
            return True
        for t in f.cycle:
            if chart.dart_vertex(arrival_dart(t)) in vertices:
                return True
        return sp_.kind == "CI-M1" and sp_.arg("face") == want_face
    if want_edge is not None:
        if want_edge in edges:
            return True
        e = chart.edge(want_edge)
        return e.tail[0] in vertices or e.head[0] in vertices
    if want_vertex is not None:
        if want_vertex in vertices:
            return True
        return any(
            chart.edge(eid).tail[0] == want_vertex or chart.edge(eid).head[0] == want_vertex
            for eid in edges
        )
    return True


# ---------------------------------------------------------------------------
# moves/v1 catalog
# ---------------------------------------------------------------------------


def moves_catalog() -> dict:
    """Machine-readable move catalog: site schema and census deltas
    (w, b, c as signed deltas; hoops for the hoop move).  Backward
    directions negate the signed entries."""
    return {
        "format": "moves/v1",
        "kinds": [
            {
                "kind": "CI-M1",
                "site": ["face", "label", "ccw", "parent"] ,
                "delta": {"w": 0, "b": 0, "c": 0, "hoops": 1},
                "description": "hoop birth (backward: death of a childless hoop)",
            },
            {
                "kind": "CI-M2",
                "site": ["t1", "t2"],
                "delta": {"w": 0, "b": 0, "c": 0, "hoops": 0},
                "description": "reconnection of two same-label antiparallel arcs "
                "co-bounding a face (self-inverse)",
            },
            {
                "kind": "CI-R2",
                "site": ["t1", "t2"],
                "delta": {"w": 0, "b": 0, "c": 2, "hoops": 0},
                "description": "push one arc across another (backward: cancel a "
                "2-gon between two crossings)",
            },
            {
                "kind": "CI-R3",
                "site": ["face"],
                "delta": {"w": 0, "b": 0, "c": 0, "hoops": 0},
                "description": "slide a strand past a crossing (triangle flip)",
            },
            {
                "kind": "CI-R4",
                "site": ["white", "slot"],
                "delta": {"w": 0, "b": 0, "c": 0, "hoops": 0},
                "description": "slide a strand across a white vertex: one direction "
                "block of three germs to the other",
            },
            {
                "kind": "C-II",
                "site": ["black", "token"],
                "delta": {"w": 0, "b": 0, "c": 1, "hoops": 0},
                "description": "a black vertex passes across a distant-label strand",
            },
            {
                "kind": "C-III",
                "site": ["white", "terminal"],
                "delta": {"w": -1, "b": 0, "c": 0, "hoops": 0},
                "description": "absorb a white vertex whose adjacent terminal edge "
                "is not middle (backward: emit one)",
            },
        ],
    }


def expected_delta(sp: MoveSpec) -> dict:
    for entry in moves_catalog()["kinds"]:
        if entry["kind"] == sp.kind:
            d = dict(entry["delta"])
            if sp.direction == "backward":
                d = {k: -v for k, v in d.items()}
            return d
    raise OperationError(f"unknown kind {sp.kind}")
