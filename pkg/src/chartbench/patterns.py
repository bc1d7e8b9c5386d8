"""Pseudo-chart patterns: partial charts with open darts and region
constraints, their orientation/reflection families, subchart matching, and
the non-minimality detector suite."""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field, replace
from typing import Iterable, Mapping, Optional, Sequence

from . import analysis
from .model import (
    BLACK,
    CROSSING,
    DEGREE,
    HEAD,
    TAIL,
    WHITE,
    Chart,
    Dart,
    OperationError,
    arrival_dart,
    is_middle,
    strand_class,
    strand_of_edge,
    strands,
    through_dart,
    white_label_pair,
)


@dataclass(frozen=True)
class LabelExpr:
    """Label value m + base + eps_coeff * eps (eps in {+1, -1})."""

    base: int = 0
    eps_coeff: int = 0

    def value(self, m: int, eps: int = 1) -> int:
        return m + self.base + self.eps_coeff * eps

    def to_payload(self):
        return {"base": self.base, "eps": self.eps_coeff}

    @staticmethod
    def from_payload(p) -> "LabelExpr":
        if isinstance(p, int):
            return LabelExpr(p, 0)
        return LabelExpr(p.get("base", 0), p.get("eps", 0))


@dataclass(frozen=True)
class OpenDart:
    direction: Optional[str] = None  # "in" | "out"
    label: Optional[LabelExpr] = None
    middle: Optional[bool] = None
    terminal: Optional[str] = None  # "must" | "no"


@dataclass(frozen=True)
class PVertex:
    id: str
    kind: str


@dataclass(frozen=True)
class PEdge:
    id: str
    label: LabelExpr
    tail: tuple[str, int]
    head: tuple[str, int]
    simple: bool = False  # must match a single crossing-free map edge

    def at(self, end: int):
        return self.tail if end == TAIL else self.head


@dataclass(frozen=True)
class RegionConstraint:
    anchor: tuple[str, int]  # corner after this (vertex, slot)
    barrier: tuple[str, ...]  # pattern edge ids bounding the region
    max_white: Optional[int] = None  # extra whites allowed inside
    forbid: tuple[str, ...] = ()  # pattern vertices excluded from the region
    require: tuple[str, ...] = ()  # pattern vertices required inside
    note: str = ""


@dataclass(frozen=True)
class PseudoChart:
    id: str
    vertices: tuple[PVertex, ...]
    edges: tuple[PEdge, ...]
    opens: tuple[tuple[str, int, OpenDart], ...] = ()
    regions: tuple[RegionConstraint, ...] = ()
    base: str = "m"
    uses_eps: bool = False
    notes: str = ""
    ambiguities: str = ""

    def vertex(self, vid: str) -> PVertex:
        for v in self.vertices:
            if v.id == vid:
                return v
        raise OperationError(f"unknown pattern vertex {vid!r}")

    def degree(self, vid: str) -> int:
        return DEGREE[self.vertex(vid).kind]

    def slot_contents(self, vid: str):
        """slot -> ("edge", PEdge, end) | ("open", OpenDart) | None"""
        deg = self.degree(vid)
        out: list = [None] * deg
        for e in self.edges:
            for end in (TAIL, HEAD):
                v, s = e.at(end)
                if v == vid:
                    if out[s] is not None:
                        raise OperationError(f"pattern slot clash at {vid!r}/{s}")
                    out[s] = ("edge", e, end)
        for (v, s, od) in self.opens:
            if v == vid:
                if out[s] is not None:
                    raise OperationError(f"pattern slot clash at {vid!r}/{s}")
                out[s] = ("open", od)
        return out

    def white_count(self) -> int:
        return sum(1 for v in self.vertices if v.kind == WHITE)


# ---------------------------------------------------------------------------
# pseudo-mode validation
# ---------------------------------------------------------------------------


def _slot_label(p: PseudoChart, content) -> Optional[LabelExpr]:
    if content is None:
        return None
    if content[0] == "edge":
        return content[1].label
    return content[1].label


def _slot_direction(p: PseudoChart, content, vid: str) -> Optional[bool]:
    """True = inward at the vertex."""
    if content is None:
        return None
    if content[0] == "edge":
        return content[2] == HEAD
    d = content[1].direction
    if d is None:
        return None
    return d == "in"


def validate_pattern(p: PseudoChart) -> list[tuple[str, str]]:
    """Local axiom checks on the specified part; returns (rule, locus) pairs."""
    bad: list[tuple[str, str]] = []
    for v in p.vertices:
        try:
            contents = p.slot_contents(v.id)
        except OperationError as exc:
            bad.append(("degree", str(exc)))
            continue
        labels = [_slot_label(p, c) for c in contents]
        dirs = [_slot_direction(p, c, v.id) for c in contents]
        if v.kind == WHITE:
            if not _white_labels_ok(labels):
                bad.append(("white-alternation", v.id))
            if not _white_blocks_possible(dirs, contents, p):
                bad.append(("white-blocks", v.id))
        elif v.kind == CROSSING:
            l0, l1, l2, l3 = labels
            if l0 is not None and l2 is not None and l0 != l2:
                bad.append(("crossing-labels", v.id))
            elif l1 is not None and l3 is not None and l1 != l3:
                bad.append(("crossing-labels", v.id))
            elif (
                l0 is not None
                and l1 is not None
                and l0.eps_coeff == l1.eps_coeff
                and abs(l0.base - l1.base) <= 1
            ):
                bad.append(("crossing-labels", v.id))
            for i in (0, 1):
                if (
                    dirs[i] is not None
                    and dirs[i + 2] is not None
                    and dirs[i] == dirs[i + 2]
                ):
                    bad.append(("crossing-orientation", v.id))
    seen_regions = {e.id for e in p.edges}
    for r in p.regions:
        if any(b not in seen_regions for b in r.barrier):
            bad.append(("region", f"unknown barrier edge in {r}"))
    return bad


def _white_labels_ok(labels: Sequence[Optional[LabelExpr]]) -> bool:
    # the six labels must alternate between two expressions differing by 1
    known = [(i, l) for i, l in enumerate(labels) if l is not None]
    if not known:
        return True
    classes: dict[int, LabelExpr] = {}
    for i, l in known:
        cls = i % 2
        if cls in classes and classes[cls] != l:
            return False
        classes.setdefault(cls, l)
    if len(classes) == 2:
        a, b = classes[0], classes[1]
        if a.eps_coeff == b.eps_coeff:
            if abs(a.base - b.base) != 1:
                return False
        elif abs(a.eps_coeff - b.eps_coeff) == 1 and a.base == b.base:
            pass  # differs by eps: magnitude 1 for either sign
        else:
            return False
    return True


def _white_blocks_possible(dirs, contents, p: PseudoChart) -> bool:
    # some rotation of (in,in,in,out,out,out) must agree with known flags and
    # declared middle constraints
    for start in range(6):
        inw = {(start + j) % 6 for j in range(3)}
        ok = True
        for i, d in enumerate(dirs):
            if d is not None and (i in inw) != d:
                ok = False
                break
        if not ok:
            continue
        mids = {(start + 1) % 6, (start + 4) % 6}
        for i, c in enumerate(contents):
            if c is not None and c[0] == "open" and c[1].middle is not None:
                if (i in mids) != c[1].middle:
                    ok = False
                    break
        if ok:
            return True
    return False


# ---------------------------------------------------------------------------
# pattern transforms and canonical form
# ---------------------------------------------------------------------------


def transform_pattern(p: PseudoChart, member: str) -> PseudoChart:
    """RO-family member: 'id', 'rev' (orientations), 'ref' (reflection),
    'revref' (both)."""
    if member not in ("id", "rev", "ref", "revref"):
        raise OperationError(f"unknown member {member!r}")
    do_rev = member in ("rev", "revref")
    do_ref = member in ("ref", "revref")
    degs = {v.id: DEGREE[v.kind] for v in p.vertices}

    def mslot(ref: tuple[str, int]) -> tuple[str, int]:
        v, s = ref
        return (v, (degs[v] - s) % degs[v]) if do_ref else (v, s)

    edges = []
    for e in p.edges:
        tail, head = mslot(e.tail), mslot(e.head)
        if do_rev:
            tail, head = head, tail
        edges.append(PEdge(e.id, e.label, tail, head, e.simple))
    opens = []
    for (v, s, od) in p.opens:
        ns = (degs[v] - s) % degs[v] if do_ref else s
        d = od.direction
        if do_rev and d is not None:
            d = "in" if d == "out" else "out"
        opens.append((v, ns, replace(od, direction=d)))
    regions = []
    for r in p.regions:
        v, s = r.anchor
        # corner after slot s maps to the corner after slot deg-1-s
        ns = (degs[v] - 1 - s) % degs[v] if do_ref else s
        regions.append(replace(r, anchor=(v, ns)))
    return replace(
        p, edges=tuple(edges), opens=tuple(opens), regions=tuple(regions)
    )


def pattern_key(p: PseudoChart) -> str:
    """Canonical key up to renaming of vertices and edges."""

    def encode(order: Sequence[str]) -> tuple:
        vidx = {v: i for i, v in enumerate(order)}
        rows = []
        for v in order:
            contents = p.slot_contents(v)
            row = [p.vertex(v).kind]
            for c in contents:
                if c is None:
                    row.append(("free",))
                elif c[0] == "edge":
                    e, end = c[1], c[2]
                    ov, os_ = e.at(1 - end)
                    row.append(
                        (
                            "e",
                            e.label.base,
                            e.label.eps_coeff,
                            end,
                            vidx.get(ov, -1),
                            os_,
                        )
                    )
                else:
                    od = c[1]
                    row.append(
                        (
                            "o",
                            od.direction or "",
                            od.label.base if od.label else 99,
                            od.label.eps_coeff if od.label else 99,
                            od.middle,
                            od.terminal or "",
                        )
                    )
            rows.append(tuple(row))
        return tuple(rows)

    vids = [v.id for v in p.vertices]
    best = None
    for perm in itertools.permutations(vids):
        enc = encode(perm)
        if best is None or enc < best:
            best = enc
        if len(vids) > 7:
            break  # permutation blowup guard; large patterns keep given order
    return repr(best)


def ro_family(p: PseudoChart) -> list[PseudoChart]:
    """The orbit {G, G*, r(G), r(G*)}, deduplicated."""
    out = []
    seen = set()
    for member in ("id", "rev", "ref", "revref"):
        q = transform_pattern(p, member)
        key = pattern_key(q)
        if key not in seen:
            seen.add(key)
            out.append(replace(q, id=f"{p.id}/{member}" if member != "id" else p.id))
    return out


# ---------------------------------------------------------------------------
# matching
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Embedding:
    m: int
    eps: int
    member: str
    vertex_map: tuple[tuple[str, str], ...]
    offsets: tuple[tuple[str, int], ...]  # pattern slot -> chart slot shift

    def image(self, vid: str) -> str:
        for a, b in self.vertex_map:
            if a == vid:
                return b
        raise KeyError(vid)

    def signature(self) -> tuple:
        return (self.m, self.eps, self.vertex_map)


def _strand_segment(chart: Chart, start: Dart, stop_at: Optional[str] = None):
    """Follow a strand from a germ dart outward through crossings; returns
    (edge chain, far dart).  Stops at non-crossing vertices, or earlier at
    ``stop_at`` (so patterns may pin explicit crossings)."""
    chain = [start.edge]
    d = start.opposite()
    while True:
        vid = chart.dart_vertex(d)
        if chart.vertex(vid).kind != CROSSING or vid == stop_at:
            return tuple(chain), d
        nxt = through_dart(chart, d)
        assert nxt is not None
        if nxt.edge in chain:
            return tuple(chain), None  # closed strand
        chain.append(nxt.edge)
        d = nxt.opposite()


def _check_embedding(
    chart: Chart,
    p: PseudoChart,
    m: int,
    eps: int,
    vmap: Mapping[str, str],
    offsets: Mapping[str, int],
) -> bool:
    """Full constraint verification for a candidate embedding."""
    if len(set(vmap.values())) != len(vmap):
        return False
    for v in p.vertices:
        cv = vmap[v.id]
        if chart.vertex(cv).kind != v.kind:
            return False
    matched_edges: dict[str, tuple[str, ...]] = {}
    for v in p.vertices:
        contents = p.slot_contents(v.id)
        deg = len(contents)
        cv = vmap[v.id]
        off = offsets[v.id]
        rot = chart.rotation(cv)
        for s, content in enumerate(contents):
            cd = rot[(s + off) % deg]
            if content is None:
                continue
            if content[0] == "edge":
                e, end = content[1], content[2]
                want_label = e.label.value(m, eps)
                if chart.dart_label(cd) != want_label:
                    return False
                # orientation: tail end leaves the vertex
                if (end == TAIL) != (not chart.is_inward(cd)):
                    return False
                if end == TAIL:  # follow the strand once, from the tail side
                    chain, far = _strand_segment(chart, cd, stop_at=vmap[e.head[0]])
                    ov, os_ = e.head
                    if far is None:
                        return False
                    if chart.dart_vertex(far) != vmap[ov]:
                        return False
                    odeg = p.degree(ov)
                    if chart.dart_slot(far) != (os_ + offsets[ov]) % odeg:
                        return False
                    if not chart.is_inward(far):
                        return False
                    if e.simple and len(chain) != 1:
                        return False
                    prev = matched_edges.get(e.id)
                    if prev is not None and prev != chain:
                        return False
                    matched_edges[e.id] = chain
            else:
                od = content[1]
                if od.direction is not None and (od.direction == "in") != chart.is_inward(cd):
                    return False
                if od.label is not None and chart.dart_label(cd) != od.label.value(m, eps):
                    return False
                if od.middle is not None and is_middle(chart, cd) != od.middle:
                    return False
                if od.terminal is not None:
                    cls = strand_class(chart, strand_of_edge(chart, cd.edge))
                    if od.terminal == "must" and cls != "terminal":
                        return False
                    if od.terminal == "no" and cls == "terminal":
                        return False
    # injectivity of matched strands
    chains = list(matched_edges.values())
    flat = [e for ch in chains for e in ch]
    if len(set(flat)) != len(flat):
        return False
    for r in p.regions:
        if not _check_region(chart, p, r, vmap, offsets, matched_edges):
            return False
    return True


def _check_region(chart, p, r, vmap, offsets, matched_edges) -> bool:
    from .model import _flood_faces

    barrier: set[str] = set()
    for eid in r.barrier:
        if eid not in matched_edges:
            return False
        barrier.update(matched_edges[eid])
    av, aslot = r.anchor
    cv = vmap[av]
    deg = p.degree(av)
    rot = chart.rotation(cv)
    d = rot[(aslot + offsets[av]) % deg]
    start = chart.corner_face(d).key
    region = _flood_faces(chart, {start}, barrier)
    whites_inside = set()
    for f in chart.faces():
        if f.key in region:
            for tok in f.cycle:
                vid = chart.dart_vertex(arrival_dart(tok))
                if chart.vertex(vid).kind == WHITE:
                    whites_inside.add(vid)
    boundary_whites = set()
    for eid in barrier:
        e = chart.edge(eid)
        for vid in (e.tail[0], e.head[0]):
            boundary_whites.add(vid)
    strict = whites_inside - boundary_whites
    for v in r.forbid:
        if vmap[v] in strict:
            return False
    for v in r.require:
        if vmap[v] not in strict:
            return False
    if r.max_white is not None:
        extra = strict - {vmap[v.id] for v in p.vertices}
        if len(extra) > r.max_white:
            return False
    return True


def _shift_range(chart: Chart, p: PseudoChart) -> range:
    lo = min(
        [e.label.base - abs(e.label.eps_coeff) for e in p.edges]
        + [
            od.label.base - abs(od.label.eps_coeff)
            for (_, _, od) in p.opens
            if od.label
        ]
        + [0]
    )
    hi = max(
        [e.label.base + abs(e.label.eps_coeff) for e in p.edges]
        + [
            od.label.base + abs(od.label.eps_coeff)
            for (_, _, od) in p.opens
            if od.label
        ]
        + [0]
    )
    return range(max(1, 1 - lo), max(1, chart.n - hi))


def match(
    chart: Chart,
    p: PseudoChart,
    symmetry: bool = True,
    shifts: Optional[Iterable[int]] = None,
) -> list[Embedding]:
    """All embeddings of the pattern (or its RO-family when symmetry is on)."""
    out: list[Embedding] = []
    seen: set = set()
    members = ("id", "rev", "ref", "revref") if symmetry else ("id",)
    for member in members:
        q = transform_pattern(p, member)
        eps_choices = (1, -1) if p.uses_eps else (1,)
        for eps in eps_choices:
            for m in shifts if shifts is not None else _shift_range(chart, q):
                for emb in _match_one(chart, q, m, eps):
                    sig = (member,) + emb
                    full = Embedding(m, eps, member, emb[2], emb[3])
                    key = full.signature() + (member,)
                    if key not in seen:
                        seen.add(key)
                        out.append(full)
    return out


def _match_one(chart: Chart, p: PseudoChart, m: int, eps: int):
    """Backtracking over vertex assignments and rotation offsets."""
    pverts = sorted(p.vertices, key=lambda v: (v.kind != WHITE, v.id))
    if not pverts:
        return
    cands: dict[str, list[str]] = {}
    for v in pverts:
        cands[v.id] = [cv.id for cv in chart.vertices if cv.kind == v.kind]

    results = []

    def backtrack(i: int, vmap: dict, offsets: dict):
        if i == len(pverts):
            if _check_embedding(chart, p, m, eps, vmap, offsets):
                results.append(
                    (
                        m,
                        eps,
                        tuple(sorted(vmap.items())),
                        tuple(sorted(offsets.items())),
                    )
                )
            return
        v = pverts[i]
        deg = DEGREE[v.kind]
        for cv in cands[v.id]:
            if cv in vmap.values():
                continue
            for off in range(deg):
                vmap[v.id] = cv
                offsets[v.id] = off
                if _quick_slots_ok(chart, p, m, eps, v.id, vmap, offsets):
                    backtrack(i + 1, vmap, offsets)
                del vmap[v.id]
                del offsets[v.id]

    backtrack(0, {}, {})
    return results


def _quick_slots_ok(chart, p, m, eps, vid, vmap, offsets) -> bool:
    """Local pruning: labels/directions/opens at this vertex only."""
    contents = p.slot_contents(vid)
    cv = vmap[vid]
    off = offsets[vid]
    rot = chart.rotation(cv)
    deg = len(contents)
    for s, content in enumerate(contents):
        cd = rot[(s + off) % deg]
        if content is None:
            continue
        if content[0] == "edge":
            e, end = content[1], content[2]
            if chart.dart_label(cd) != e.label.value(m, eps):
                return False
            if (end == TAIL) != (not chart.is_inward(cd)):
                return False
        else:
            od = content[1]
            if od.direction is not None and (od.direction == "in") != chart.is_inward(cd):
                return False
            if od.label is not None and chart.dart_label(cd) != od.label.value(m, eps):
                return False
            if od.middle is not None and is_middle(chart, cd) != od.middle:
                return False
    return True


def oracle_match(
    chart: Chart,
    p: PseudoChart,
    symmetry: bool = True,
    shifts: Optional[Iterable[int]] = None,
) -> list[Embedding]:
    """Exhaustive embedding enumeration (no pruning): every injective
    kind-preserving vertex map with every offset vector, filtered by the
    constraint checker."""
    out = []
    seen = set()
    members = ("id", "rev", "ref", "revref") if symmetry else ("id",)
    for member in members:
        q = transform_pattern(p, member)
        eps_choices = (1, -1) if p.uses_eps else (1,)
        pverts = [v.id for v in q.vertices]
        for eps in eps_choices:
            for m in shifts if shifts is not None else _shift_range(chart, q):
                # per-vertex candidate (vertex, offset) domains filtered only
                # by local slot data; the cross product is then enumerated
                # exhaustively
                domains = []
                for v in pverts:
                    deg = DEGREE[q.vertex(v).kind]
                    cands = []
                    for cv in chart.vertices:
                        if cv.kind != q.vertex(v).kind:
                            continue
                        for off in range(deg):
                            if _quick_slots_ok(
                                chart, q, m, eps, v, {v: cv.id}, {v: off}
                            ):
                                cands.append((cv.id, off))
                    domains.append(cands)
                for combo in itertools.product(*domains):
                    assignment = [cv for cv, _ in combo]
                    if len(set(assignment)) != len(assignment):
                        continue
                    vmap = dict(zip(pverts, assignment))
                    offsets = dict(zip(pverts, (off for _, off in combo)))
                    if _check_embedding(chart, q, m, eps, vmap, offsets):
                        emb = Embedding(
                            m,
                            eps,
                            member,
                            tuple(sorted(vmap.items())),
                            tuple(sorted(offsets.items())),
                        )
                        key = emb.signature() + (member,)
                        if key not in seen:
                            seen.add(key)
                            out.append(emb)
    return out


# ---------------------------------------------------------------------------
# pattern/v1 serialization
# ---------------------------------------------------------------------------


def pattern_to_payload(p: PseudoChart) -> dict:
    return {
        "format": "pattern/v1",
        "id": p.id,
        "base_label": p.base,
        "uses_eps": p.uses_eps,
        "vertices": [{"id": v.id, "kind": v.kind} for v in p.vertices],
        "edges": [
            {
                "id": e.id,
                "label": e.label.to_payload(),
                "tail": {"v": e.tail[0], "slot": e.tail[1]},
                "head": {"v": e.head[0], "slot": e.head[1]},
                "simple": e.simple,
            }
            for e in p.edges
        ],
        "open_darts": [
            {
                "v": v,
                "slot": s,
                "direction": od.direction,
                "label": od.label.to_payload() if od.label else None,
                "middle": od.middle,
                "terminal": od.terminal,
            }
            for (v, s, od) in p.opens
        ],
        "region_constraints": [
            {
                "anchor": {"v": r.anchor[0], "slot": r.anchor[1]},
                "barrier": list(r.barrier),
                "max_white": r.max_white,
                "forbid": list(r.forbid),
                "require": list(r.require),
                "note": r.note,
            }
            for r in p.regions
        ],
        "notes": p.notes,
        "ambiguities": p.ambiguities,
    }


def pattern_from_payload(payload: Mapping) -> PseudoChart:
    if payload.get("format") != "pattern/v1":
        raise OperationError("unsupported pattern format")
    vertices = tuple(PVertex(v["id"], v["kind"]) for v in payload["vertices"])
    edges = tuple(
        PEdge(
            e["id"],
            LabelExpr.from_payload(e["label"]),
            (e["tail"]["v"], e["tail"]["slot"]),
            (e["head"]["v"], e["head"]["slot"]),
            bool(e.get("simple", False)),
        )
        for e in payload["edges"]
    )
    opens = tuple(
        (
            o["v"],
            o["slot"],
            OpenDart(
                o.get("direction"),
                LabelExpr.from_payload(o["label"]) if o.get("label") is not None else None,
                o.get("middle"),
                o.get("terminal"),
            ),
        )
        for o in payload.get("open_darts", ())
    )
    regions = tuple(
        RegionConstraint(
            (r["anchor"]["v"], r["anchor"]["slot"]),
            tuple(r["barrier"]),
            r.get("max_white"),
            tuple(r.get("forbid", ())),
            tuple(r.get("require", ())),
            r.get("note", ""),
        )
        for r in payload.get("region_constraints", ())
    )
    return PseudoChart(
        id=payload["id"],
        vertices=vertices,
        edges=edges,
        opens=opens,
        regions=regions,
        base=payload.get("base_label", "m"),
        uses_eps=bool(payload.get("uses_eps", False)),
        notes=payload.get("notes", ""),
        ambiguities=payload.get("ambiguities", ""),
    )


def load_pattern(pid: str) -> PseudoChart:
    """Load a catalog pattern by id from the packaged data files."""
    from importlib import resources

    root = resources.files("chartbench") / "catalog_data"
    path = root / f"{pid}.json"
    try:
        text = path.read_text()
    except FileNotFoundError:
        raise OperationError(f"unknown pattern {pid!r}")
    return pattern_from_payload(json.loads(text))


def catalog_ids() -> list[str]:
    from importlib import resources

    root = resources.files("chartbench") / "catalog_data"
    out = []
    for item in root.iterdir():
        name = item.name
        if name.endswith(".json") and name.startswith("fig"):
            out.append(name[: -len(".json")])
    return sorted(out)


# ---------------------------------------------------------------------------
# certificates and the detector suite
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Certificate:
    rule: str
    witness: str
    data: tuple[tuple[str, object], ...] = ()

    def datum(self, key: str, default=None):
        for k, v in self.data:
            if k == key:
                return v
        return default


def detector_suite(chart: Chart) -> list[Certificate]:
    """Certificates of non-minimality conditions present in the chart."""
    out: list[Certificate] = []
    # single-white components of a label subgraph
    for mlbl in chart.labels():
        g = analysis.gamma(chart, mlbl)
        for comp in g.components:
            wcount = sum(1 for v in comp if chart.vertex(v).kind == WHITE)
            if wcount == 1:
                w = next(v for v in comp if chart.vertex(v).kind == WHITE)
                out.append(
                    Certificate(
                        "Lemma 3.2",
                        f"component of the label-{mlbl} subgraph has exactly one "
                        f"white vertex {w}",
                        (("label", mlbl), ("white", w)),
                    )
                )
    # loops in a seven-white chart
    if chart.count(WHITE) == 7:
        for mlbl in chart.labels():
            inv = analysis.closed_curves(chart, mlbl)
            for loop in inv.loops:
                out.append(
                    Certificate(
                        "Lemma 10.1",
                        f"loop of label {mlbl} at {loop.whites[0]} in a chart "
                        "with seven white vertices",
                        (("label", mlbl), ("white", loop.whites[0])),
                    )
                )
    # non-middle terminal edges / stray black-vertex edges
    for s in strands(chart):
        cls = strand_class(chart, s)
        if cls == "terminal":
            for d in s.ends:
                vid = chart.dart_vertex(d)
                if chart.vertex(vid).kind == WHITE and not is_middle(chart, d):
                    from .model import strand_label

                    out.append(
                        Certificate(
                            "Assumption 2",
                            f"terminal edge of label {strand_label(chart, s)} at "
                            f"{vid} is not middle at {vid}",
                            (("white", vid), ("edge", s.edges[0])),
                        )
                    )
        elif cls not in ("free", "internal", "closed"):  # pragma: no cover
            out.append(Certificate("Assumption 2", f"stray black edge {s.edges[0]}"))
    # mixed-orientation BW-vertices
    for mlbl in chart.labels():
        for w in analysis.lemma31_violations(chart, mlbl):
            out.append(
                Certificate(
                    "Lemma 3.1",
                    f"BW-vertex {w} of the label-{mlbl} subgraph has mixed "
                    "orientations on its non-terminal edges",
                    (("label", mlbl), ("white", w)),
                )
            )
    # the staged pseudo-chart configurations
    tv = analysis.type_of(chart)
    if tv is not None and tv.counts == (2, 3, 2):
        for fig, rule in (("fig11a", "Lemma 5.3-Fig 11(a)"), ("fig11b", "Lemma 5.3-Fig 11(b)")):
            try:
                p = load_pattern(fig)
            except OperationError:
                continue
            found = match(chart, p, symmetry=True)
            if found:
                emb = found[0]
                out.append(
                    Certificate(
                        rule,
                        f"chart of type {tv} contains the {fig} configuration at "
                        + ", ".join(f"{a}->{b}" for a, b in emb.vertex_map),
                        (("pattern", fig), ("m", emb.m)),
                    )
                )
    return out


def recheck_certificate(chart: Chart, cert: Certificate) -> bool:
    """Independently re-derive the certificate's verdict on its witness."""
    if cert.rule == "Lemma 3.2":
        mlbl = cert.datum("label")
        w = cert.datum("white")
        g = analysis.gamma(chart, mlbl)
        for comp in g.components:
            if w in comp:
                return sum(1 for v in comp if chart.vertex(v).kind == WHITE) == 1
        return False
    if cert.rule == "Lemma 10.1":
        if chart.count(WHITE) != 7:
            return False
        inv = analysis.closed_curves(chart, cert.datum("label"))
        return any(l.whites[0] == cert.datum("white") for l in inv.loops)
    if cert.rule == "Assumption 2":
        w = cert.datum("white")
        eid = cert.datum("edge")
        if eid is None or not chart.has_edge(eid):
            return False
        s = strand_of_edge(chart, eid)
        if strand_class(chart, s) != "terminal":
            return False
        return any(
            chart.dart_vertex(d) == w and not is_middle(chart, d) for d in s.ends
        )
    if cert.rule == "Lemma 3.1":
        return cert.datum("white") in analysis.lemma31_violations(
            chart, cert.datum("label")
        )
    if cert.rule.startswith("Lemma 5.3"):
        p = load_pattern(cert.datum("pattern"))
        return bool(match(chart, p, symmetry=True))
    raise OperationError(f"unknown certificate rule {cert.rule!r}")
