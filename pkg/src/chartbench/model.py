"""Core data model: oriented labeled graphs on the 2-sphere as rotation systems.

A chart is stored combinatorially: vertices of three kinds (black / crossing /
white, of degree 1 / 4 / 6), oriented labeled edges attached to numbered
counterclockwise rotation slots, and hoop decorations (vertexless closed
curves) hosted inside faces of the hoopless map.  Faces are derived by
walking the rotation system; the point at infinity is a movable face marker.

Charts are immutable values; every operation here is a pure function.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Iterator, Mapping, NamedTuple, Optional, Sequence

TAIL = 0
HEAD = 1

BLACK = "black"
CROSSING = "crossing"
WHITE = "white"

DEGREE = {BLACK: 1, CROSSING: 4, WHITE: 6}

#: face key of the single face of the empty (vertexless) map
SPHERE_FACE = "sphere"


class ChartError(Exception):
    """Base class for chart failures."""


class BuildError(ChartError):
    """Referential problem while assembling a chart."""


class OperationError(ChartError):
    """Operation precondition not met."""


class Dart(NamedTuple):
    """One end of an edge, sitting in a rotation slot of its vertex."""

    edge: str
    end: int  # TAIL or HEAD

    def opposite(self) -> "Dart":
        return Dart(self.edge, 1 - self.end)

    def token(self) -> str:
        return self.edge + ("t" if self.end == TAIL else "h")


@dataclass(frozen=True)
class Vertex:
    id: str
    kind: str

    @property
    def degree(self) -> int:
        return DEGREE[self.kind]


@dataclass(frozen=True)
class Edge:
    id: str
    label: int
    tail: tuple[str, int]  # (vertex id, slot); the tail dart is outward
    head: tuple[str, int]  # the head dart is inward

    def at(self, end: int) -> tuple[str, int]:
        return self.tail if end == TAIL else self.head


@dataclass(frozen=True)
class Hoop:
    label: int
    ccw: bool
    host_face: str
    parent: Optional[int] = None  # index into the hoop tuple


@dataclass(frozen=True)
class Violation:
    rule: str
    locus: str


@dataclass(frozen=True)
class ValidationReport:
    verdict: bool
    violations: tuple[Violation, ...]
    policy: tuple[str, ...]

    def rules(self) -> set[str]:
        return {v.rule for v in self.violations}


@dataclass(frozen=True)
class Chart:
    n: int
    vertices: tuple[Vertex, ...]  # sorted by id
    edges: tuple[Edge, ...]  # sorted by id
    hoops: tuple[Hoop, ...] = ()
    infinity_face: str = SPHERE_FACE

    # -- indexed access -------------------------------------------------

    def vertex(self, vid: str) -> Vertex:
        v = self._vmap().get(vid)
        if v is None:
            raise OperationError(f"unknown vertex {vid!r}")
        return v

    def edge(self, eid: str) -> Edge:
        e = self._emap().get(eid)
        if e is None:
            raise OperationError(f"unknown edge {eid!r}")
        return e

    def has_vertex(self, vid: str) -> bool:
        return vid in self._vmap()

    def has_edge(self, eid: str) -> bool:
        return eid in self._emap()

    def _vmap(self) -> Mapping[str, Vertex]:
        return _vertex_map(self)

    def _emap(self) -> Mapping[str, Edge]:
        return _edge_map(self)

    # -- rotations ------------------------------------------------------

    def rotation(self, vid: str) -> tuple[Dart, ...]:
        """Counterclockwise dart sequence at a vertex, indexed by slot."""
        return _rotations(self)[vid]

    def rotations(self) -> Mapping[str, tuple[Dart, ...]]:
        return _rotations(self)

    def dart_vertex(self, d: Dart) -> str:
        return self.edge(d.edge).at(d.end)[0]

    def dart_slot(self, d: Dart) -> int:
        return self.edge(d.edge).at(d.end)[1]

    def dart_label(self, d: Dart) -> int:
        return self.edge(d.edge).label

    def is_inward(self, d: Dart) -> bool:
        """True if the edge is oriented toward the dart's vertex."""
        return d.end == HEAD

    def darts(self) -> Iterator[Dart]:
        for e in self.edges:
            yield Dart(e.id, TAIL)
            yield Dart(e.id, HEAD)

    def rotation_next(self, d: Dart) -> Dart:
        rot = self.rotation(self.dart_vertex(d))
        i = self.dart_slot(d)
        return rot[(i + 1) % len(rot)]

    def rotation_prev(self, d: Dart) -> Dart:
        rot = self.rotation(self.dart_vertex(d))
        i = self.dart_slot(d)
        return rot[(i - 1) % len(rot)]

    # -- faces ------------------------------------------------------------

    def faces(self) -> tuple["Face", ...]:
        return trace_faces(self)

    def face_of_token(self, tok: "Token") -> "Face":
        return _token_face_map(self)[tok]

    def face_by_key(self, key: str) -> "Face":
        m = {f.key: f for f in self.faces()}
        if key not in m:
            raise OperationError(f"unknown face {key!r}")
        return m[key]

    def face_keys(self) -> set[str]:
        return {f.key for f in self.faces()}

    def corner_face(self, d: Dart) -> "Face":
        """Face of the corner between dart d and its rotation successor."""
        return self.face_of_token(arrival_token(d))

    def corner_face_before(self, d: Dart) -> "Face":
        """Face of the corner between the rotation predecessor and d."""
        return self.corner_face(self.rotation_prev(d))

    def edge_side_faces(self, eid: str) -> tuple["Face", "Face"]:
        return (self.face_of_token((eid, 1)), self.face_of_token((eid, -1)))

    # -- counts -----------------------------------------------------------

    def count(self, kind: str) -> int:
        return sum(1 for v in self.vertices if v.kind == kind)

    def labels(self) -> range:
        return range(1, self.n)


# A token is one directed traversal of an edge: (edge id, +1) follows the
# orientation, (edge id, -1) goes against it.  Each token lies on exactly
# one face walk.
Token = tuple[str, int]


def token_str(tok: Token) -> str:
    return tok[0] + ("+" if tok[1] > 0 else "-")


def parse_token(s: str) -> Token:
    if not s or s[-1] not in "+-":
        raise BuildError(f"bad token {s!r}")
    return (s[:-1], 1 if s[-1] == "+" else -1)


def arrival_dart(tok: Token) -> Dart:
    """Dart at the vertex a traversal arrives at."""
    e, s = tok
    return Dart(e, HEAD if s > 0 else TAIL)


def departure_dart(tok: Token) -> Dart:
    e, s = tok
    return Dart(e, TAIL if s > 0 else HEAD)


def arrival_token(d: Dart) -> Token:
    """Token of the traversal that arrives at dart d."""
    return (d.edge, 1 if d.end == HEAD else -1)


def departure_token(d: Dart) -> Token:
    return (d.edge, 1 if d.end == TAIL else -1)


@dataclass(frozen=True)
class Face:
    """One face of the hoopless map: a cyclic token walk, face on the left."""

    cycle: tuple[Token, ...]  # normalized to the lexicographically least rotation
    key: str

    def tokens(self) -> frozenset[Token]:
        return frozenset(self.cycle)

    def edge_ids(self) -> set[str]:
        return {e for e, _ in self.cycle}


def _min_rotation(cycle: Sequence[Token]) -> tuple[Token, ...]:
    if not cycle:
        return ()
    strs = [token_str(t) for t in cycle]
    n = len(cycle)
    best = min(range(n), key=lambda i: [strs[(i + j) % n] for j in range(n)])
    return tuple(cycle[(best + j) % n] for j in range(n))


def face_key(cycle: Sequence[Token]) -> str:
    if not cycle:
        return SPHERE_FACE
    return "|".join(token_str(t) for t in _min_rotation(cycle))


def make_face(cycle: Sequence[Token]) -> Face:
    norm = _min_rotation(cycle)
    return Face(norm, face_key(norm))


@lru_cache(maxsize=4096)
def _vertex_map(chart: Chart) -> Mapping[str, Vertex]:
    return {v.id: v for v in chart.vertices}


@lru_cache(maxsize=4096)
def _edge_map(chart: Chart) -> Mapping[str, Edge]:
    return {e.id: e for e in chart.edges}


@lru_cache(maxsize=4096)
def _rotations(chart: Chart) -> Mapping[str, tuple[Dart, ...]]:
    slots: dict[str, list[Optional[Dart]]] = {
        v.id: [None] * v.degree for v in chart.vertices
    }
    for e in chart.edges:
        for end in (TAIL, HEAD):
            vid, slot = e.at(end)
            if vid not in slots:
                raise BuildError(f"edge {e.id!r} references unknown vertex {vid!r}")
            arr = slots[vid]
            if not 0 <= slot < len(arr):
                raise BuildError(
                    f"edge {e.id!r} slot {slot} out of range at vertex {vid!r}"
                )
            if arr[slot] is not None:
                raise BuildError(f"duplicate slot {slot} at vertex {vid!r}")
            arr[slot] = Dart(e.id, end)
    out = {}
    for vid, arr in slots.items():
        if any(d is None for d in arr):
            raise BuildError(f"degree mismatch at vertex {vid!r}: unfilled slot")
        out[vid] = tuple(arr)  # type: ignore[arg-type]
    return out


def next_token(chart: Chart, tok: Token) -> Token:
    """Successor traversal on the same face (face kept on the left)."""
    d = arrival_dart(tok)
    succ = chart.rotation_next(d)
    return departure_token(succ)


@lru_cache(maxsize=4096)
def trace_faces(chart: Chart) -> tuple[Face, ...]:
    """All faces of the hoopless map.  The empty map has the single sphere face."""
    _rotations(chart)  # referential integrity
    todo: set[Token] = set()
    for e in chart.edges:
        todo.add((e.id, 1))
        todo.add((e.id, -1))
    if not todo:
        return (Face((), SPHERE_FACE),)
    faces = []
    while todo:
        start = min(todo)
        cycle = [start]
        todo.discard(start)
        t = next_token(chart, start)
        while t != start:
            cycle.append(t)
            todo.discard(t)
            t = next_token(chart, t)
        faces.append(make_face(cycle))
    return tuple(sorted(faces, key=lambda f: f.key))


@lru_cache(maxsize=4096)
def _token_face_map(chart: Chart) -> Mapping[Token, Face]:
    out: dict[Token, Face] = {}
    for f in trace_faces(chart):
        for t in f.cycle:
            out[t] = f
    return out


def euler_characteristic(chart: Chart) -> int:
    return len(chart.vertices) - len(chart.edges) + len(trace_faces(chart))


def is_connected(chart: Chart) -> bool:
    """Connectivity of the hoopless vertex-edge graph (empty counts as connected)."""
    if not chart.vertices:
        return True
    adj: dict[str, set[str]] = {v.id: set() for v in chart.vertices}
    for e in chart.edges:
        adj[e.tail[0]].add(e.head[0])
        adj[e.head[0]].add(e.tail[0])
    seen = {chart.vertices[0].id}
    stack = [chart.vertices[0].id]
    while stack:
        for w in adj[stack.pop()]:
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return len(seen) == len(chart.vertices)


# ---------------------------------------------------------------------------
# strands: maximal chains through crossings
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Strand:
    """Maximal edge chain passing straight through crossings.

    ``ends`` holds the terminal darts at non-crossing vertices (empty for a
    closed strand, which passes only crossings).
    """

    edges: tuple[str, ...]
    ends: tuple[Dart, ...]  # () for closed strands, else exactly two darts
    closed: bool


def through_dart(chart: Chart, d: Dart) -> Optional[Dart]:
    """At a crossing, the opposite dart of the same through-strand."""
    vid = chart.dart_vertex(d)
    if chart.vertex(vid).kind != CROSSING:
        return None
    rot = chart.rotation(vid)
    i = chart.dart_slot(d)
    return rot[(i + 2) % 4]


@lru_cache(maxsize=4096)
def strands(chart: Chart) -> tuple[Strand, ...]:
    seen: set[str] = set()
    out: list[Strand] = []
    for e in chart.edges:
        if e.id in seen:
            continue
        chain = [e.id]
        seen.add(e.id)
        ends: list[Dart] = []
        closed = False
        for start in (Dart(e.id, TAIL), Dart(e.id, HEAD)):
            d = start
            while True:
                vid = chart.dart_vertex(d)
                if chart.vertex(vid).kind != CROSSING:
                    ends.append(d)
                    break
                nxt = through_dart(chart, d)
                assert nxt is not None
                if nxt.edge in seen:
                    closed = True
                    break
                seen.add(nxt.edge)
                if start.end == TAIL:
                    chain.insert(0, nxt.edge)
                else:
                    chain.append(nxt.edge)
                d = nxt.opposite()  # far end of the continuing edge
            if closed:
                break
        if closed:
            out.append(Strand(tuple(chain), (), True))
        else:
            out.append(Strand(tuple(chain), tuple(ends), False))
    return tuple(out)


@lru_cache(maxsize=4096)
def _strand_of_edge(chart: Chart) -> Mapping[str, Strand]:
    out: dict[str, Strand] = {}
    for s in strands(chart):
        for eid in s.edges:
            out[eid] = s
    return out


def strand_of_edge(chart: Chart, eid: str) -> Strand:
    chart.edge(eid)
    return _strand_of_edge(chart)[eid]


def strand_label(chart: Chart, s: Strand) -> int:
    return chart.edge(s.edges[0]).label


def strand_end_kinds(chart: Chart, s: Strand) -> tuple[str, ...]:
    return tuple(sorted(chart.vertex(chart.dart_vertex(d)).kind for d in s.ends))


def strand_class(chart: Chart, s: Strand) -> str:
    """free / terminal / internal / closed, by endpoint kinds of the strand."""
    if s.closed:
        return "closed"
    kinds = strand_end_kinds(chart, s)
    if kinds == (BLACK, BLACK):
        return "free"
    if kinds == (BLACK, WHITE):
        return "terminal"
    return "internal"


# ---------------------------------------------------------------------------
# white-vertex structure
# ---------------------------------------------------------------------------


def white_blocks(chart: Chart, vid: str) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """Slot indices of the inward block and the outward block at a white vertex.

    Raises OperationError if the vertex is not white or the alternation /
    three-in-three-out structure is violated.
    """
    v = chart.vertex(vid)
    if v.kind != WHITE:
        raise OperationError(f"{vid!r} is not a white vertex")
    rot = chart.rotation(vid)
    dirs = [chart.is_inward(d) for d in rot]
    if sum(dirs) != 3:
        raise OperationError(f"white vertex {vid!r} lacks 3 inward darts")
    # the inward positions must be cyclically consecutive
    for start in range(6):
        if all(dirs[(start + j) % 6] for j in range(3)) and not any(
            dirs[(start + 3 + j) % 6] for j in range(3)
        ):
            inw = tuple((start + j) % 6 for j in range(3))
            outw = tuple((start + 3 + j) % 6 for j in range(3))
            return inw, outw
    raise OperationError(f"white vertex {vid!r} direction blocks broken")


def middle_darts(chart: Chart, vid: str) -> tuple[Dart, Dart]:
    """The central dart of the inward block and of the outward block."""
    inw, outw = white_blocks(chart, vid)
    rot = chart.rotation(vid)
    return rot[inw[1]], rot[outw[1]]


def is_middle(chart: Chart, d: Dart) -> bool:
    """True if the dart occupies a middle slot at its (white) vertex."""
    vid = chart.dart_vertex(d)
    if chart.vertex(vid).kind != WHITE:
        return False
    return d in middle_darts(chart, vid)


def white_label_pair(chart: Chart, vid: str) -> tuple[int, int]:
    labels = sorted({chart.dart_label(d) for d in chart.rotation(vid)})
    if len(labels) != 2 or labels[1] - labels[0] != 1:
        raise OperationError(f"white vertex {vid!r} label pair broken")
    return (labels[0], labels[1])


# ---------------------------------------------------------------------------
# building
# ---------------------------------------------------------------------------


def build_chart(spec: Mapping) -> Chart:
    """Assemble a chart from a chart/v1 style mapping.

    Only referential integrity is enforced here (dangling references,
    duplicate slots, degree mismatches); axioms are checked by validate().
    """
    fmt = spec.get("format", "chart/v1")
    if fmt != "chart/v1":
        raise BuildError(f"unsupported format {fmt!r}")
    n = spec.get("n")
    if not isinstance(n, int) or n < 2:
        raise BuildError("n must be an integer >= 2")
    vertices = []
    seen_v = set()
    for item in spec.get("vertices", ()):
        vid, kind = item["id"], item["kind"]
        if kind not in DEGREE:
            raise BuildError(f"unknown vertex kind {kind!r}")
        if vid in seen_v:
            raise BuildError(f"duplicate vertex id {vid!r}")
        seen_v.add(vid)
        vertices.append(Vertex(vid, kind))
    edges = []
    seen_e = set()
    for item in spec.get("edges", ()):
        eid = item["id"]
        if eid in seen_e:
            raise BuildError(f"duplicate edge id {eid!r}")
        seen_e.add(eid)
        label = item["label"]
        if not isinstance(label, int):
            raise BuildError(f"edge {eid!r} label must be an integer")
        t, h = item["tail"], item["head"]
        tail = (t["v"], t["slot"])
        head = (h["v"], h["slot"])
        for vid, _ in (tail, head):
            if vid not in seen_v:
                raise BuildError(f"dangling reference: edge {eid!r} uses {vid!r}")
        if tail == head:
            raise BuildError(f"edge {eid!r} tail equals head slot")
        edges.append(Edge(eid, label, tail, head))
    chart = Chart(
        n=n,
        vertices=tuple(sorted(vertices, key=lambda v: v.id)),
        edges=tuple(sorted(edges, key=lambda e: e.id)),
    )
    _rotations(chart)  # raises BuildError on slot problems
    keys = chart.face_keys()
    hoops = []
    hoop_items = list(spec.get("hoops", ()))
    for i, item in enumerate(hoop_items):
        host = item["host_face"]
        if host not in keys:
            raise BuildError(f"hoop {i} hosted in unknown face {host!r}")
        parent = item.get("parent")
        if parent is not None and not (0 <= parent < len(hoop_items)):
            raise BuildError(f"hoop {i} has dangling parent {parent!r}")
        hoops.append(Hoop(item["label"], bool(item["ccw"]), host, parent))
    inf = spec.get("infinity_face")
    if inf is None:
        inf = min(keys)
    elif inf not in keys:
        raise BuildError(f"infinity face {inf!r} does not exist")
    return Chart(
        n=chart.n,
        vertices=chart.vertices,
        edges=chart.edges,
        hoops=tuple(hoops),
        infinity_face=inf,
    )


def to_payload(chart: Chart) -> dict:
    """chart/v1 mapping; deterministic field order for bit-exact files."""
    return {
        "format": "chart/v1",
        "n": chart.n,
        "vertices": [{"id": v.id, "kind": v.kind} for v in chart.vertices],
        "edges": [
            {
                "id": e.id,
                "label": e.label,
                "tail": {"v": e.tail[0], "slot": e.tail[1]},
                "head": {"v": e.head[0], "slot": e.head[1]},
            }
            for e in chart.edges
        ],
        "hoops": [
            {"label": h.label, "ccw": h.ccw, "host_face": h.host_face, "parent": h.parent}
            for h in chart.hoops
        ],
        "infinity_face": chart.infinity_face,
    }


def dumps(chart: Chart) -> str:
    return json.dumps(to_payload(chart), indent=2, sort_keys=True) + "\n"


def loads(text: str) -> Chart:
    return build_chart(json.loads(text))


# ---------------------------------------------------------------------------
# validation
# ---------------------------------------------------------------------------


def hoop_children(chart: Chart, idx: int) -> list[int]:
    return [i for i, h in enumerate(chart.hoops) if h.parent == idx]


def _hoop_forest_ok(chart: Chart) -> bool:
    for i, h in enumerate(chart.hoops):
        seen = set()
        j: Optional[int] = i
        while j is not None:
            if j in seen:
                return False
            seen.add(j)
            parent = chart.hoops[j].parent
            if parent is not None:
                if not 0 <= parent < len(chart.hoops):
                    return False
                if chart.hoops[parent].host_face != chart.hoops[j].host_face:
                    return False
            j = parent
    return True


def ring_sides(chart: Chart, ring: Strand) -> tuple[set[str], set[str]]:
    """Face-key sets of the two complementary domains of a closed strand."""
    ring_edges = set(ring.edges)
    # adjacency between faces across non-ring edges
    left: set[str] = set()
    for eid in ring.edges:
        f = chart.face_of_token((eid, 1))
        left.add(f.key)
    side1 = _flood_faces(chart, left, ring_edges)
    all_keys = chart.face_keys()
    side2 = all_keys - side1
    return side1, side2


def _flood_faces(chart: Chart, start_keys: set[str], barrier_edges: set[str]) -> set[str]:
    faces_by_key = {f.key: f for f in chart.faces()}
    seen = set(start_keys)
    stack = list(start_keys)
    while stack:
        f = faces_by_key[stack.pop()]
        for (eid, sgn) in f.cycle:
            if eid in barrier_edges:
                continue
            other = chart.face_of_token((eid, -sgn)).key
            if other not in seen:
                seen.add(other)
                stack.append(other)
    return seen


def side_white_count(chart: Chart, side: set[str], boundary_edges: set[str]) -> int:
    """Whites strictly inside a face-set side (not on the given boundary)."""
    whites = set()
    for f in chart.faces():
        if f.key not in side:
            continue
        for tok in f.cycle:
            d = arrival_dart(tok)
            vid = chart.dart_vertex(d)
            if chart.vertex(vid).kind == WHITE:
                whites.add(vid)
    # drop whites that sit on the boundary cycle itself
    on_boundary = set()
    for eid in boundary_edges:
        e = chart.edge(eid)
        for vid in (e.tail[0], e.head[0]):
            if chart.vertex(vid).kind == WHITE:
                on_boundary.add(vid)
    return len(whites - on_boundary)


def validate(chart: Chart, policy: Iterable[str] = ("A2", "A3", "A4")) -> ValidationReport:
    """Check the four chart axioms, map closure, and the enabled assumptions."""
    policy = tuple(policy)
    bad: list[Violation] = []

    try:
        _rotations(chart)
    except BuildError as exc:  # degree / slot problems
        return ValidationReport(False, (Violation("degree", str(exc)),), policy)

    for e in chart.edges:
        if not 1 <= e.label <= chart.n - 1:
            bad.append(Violation("label-range", f"edge {e.id}"))
    for h_i, h in enumerate(chart.hoops):
        if not 1 <= h.label <= chart.n - 1:
            bad.append(Violation("label-range", f"hoop {h_i}"))

    for v in chart.vertices:
        rot = chart.rotation(v.id)
        if v.kind == WHITE:
            labels = [chart.dart_label(d) for d in rot]
            pair = sorted(set(labels))
            alternation = (
                len(pair) == 2
                and pair[1] - pair[0] == 1
                and all(labels[i] != labels[(i + 1) % 6] for i in range(6))
            )
            if not alternation:
                bad.append(Violation("white-alternation", f"vertex {v.id}"))
            try:
                white_blocks(chart, v.id)
            except OperationError:
                bad.append(Violation("white-blocks", f"vertex {v.id}"))
        elif v.kind == CROSSING:
            labels = [chart.dart_label(d) for d in rot]
            if not (labels[0] == labels[2] and labels[1] == labels[3]):
                bad.append(Violation("crossing-labels", f"vertex {v.id}"))
            elif abs(labels[0] - labels[1]) <= 1:
                bad.append(Violation("crossing-labels", f"vertex {v.id}"))
            for i in (0, 1):
                if chart.is_inward(rot[i]) == chart.is_inward(rot[i + 2]):
                    bad.append(Violation("crossing-orientation", f"vertex {v.id}"))

    if chart.vertices or chart.edges:
        if euler_characteristic(chart) != 2 or not is_connected(chart):
            bad.append(Violation("euler", "hoopless map is not a connected sphere map"))
    if chart.infinity_face not in chart.face_keys():
        bad.append(Violation("infinity-face", chart.infinity_face))
    if not _hoop_forest_ok(chart):
        bad.append(Violation("hoop-nesting", "nesting is not a forest within host faces"))

    structural_ok = not bad

    if structural_ok and "A2" in policy:
        for s in strands(chart):
            cls = strand_class(chart, s)
            if cls == "terminal":
                for d in s.ends:
                    vid = chart.dart_vertex(d)
                    if chart.vertex(vid).kind == WHITE and not is_middle(chart, d):
                        lbl = strand_label(chart, s)
                        bad.append(
                            Violation(
                                "A2",
                                f"terminal edge of label {lbl} at {vid} is "
                                f"not middle at {vid}",
                            )
                        )
    if structural_ok and "A3" in policy:
        for s in strands(chart):
            if strand_class(chart, s) == "free":
                bad.append(Violation("A3", f"free edge {s.edges[0]}"))
        for i, h in enumerate(chart.hoops):
            # in this model one side of every hoop is vertex-free, hence simple
            bad.append(Violation("A3", f"simple hoop {i}"))
    if structural_ok and "A4" in policy:
        for i, h in enumerate(chart.hoops):
            bad.append(Violation("A4", f"hoop {i} bounds a white-free domain"))
        for s in strands(chart):
            if s.closed:
                side1, side2 = ring_sides(chart, s)
                ring_edges = set(s.edges)
                for side in (side1, side2):
                    if side_white_count(chart, side, ring_edges) == 0:
                        bad.append(
                            Violation("A4", f"ring through {s.edges[0]} bounds a white-free domain")
                        )
                        break

    return ValidationReport(not bad, tuple(bad), policy)


# ---------------------------------------------------------------------------
# transforms
# ---------------------------------------------------------------------------


def transform(chart: Chart, which: str) -> Chart:
    """reflect (mirror: all rotations reversed), reverse (all orientations
    flipped), or both."""
    if which not in ("reflect", "reverse", "both"):
        raise OperationError(f"unknown transform {which!r}")
    do_reflect = which in ("reflect", "both")
    do_reverse = which in ("reverse", "both")

    degs = {v.id: v.degree for v in chart.vertices}
    new_edges = []
    for e in chart.edges:
        tail, head = e.tail, e.head
        if do_reflect:
            tail = (tail[0], (degs[tail[0]] - 1 - tail[1]) % degs[tail[0]])
            head = (head[0], (degs[head[0]] - 1 - head[1]) % degs[head[0]])
        if do_reverse:
            tail, head = head, tail
        new_edges.append(Edge(e.id, e.label, tail, head))
    flip = do_reflect != do_reverse  # each flips winding; both cancels
    new_hoops = []
    out = Chart(
        n=chart.n,
        vertices=chart.vertices,
        edges=tuple(sorted(new_edges, key=lambda e: e.id)),
        hoops=(),
        infinity_face=SPHERE_FACE,
    )
    # relocate hoops and the infinity marker by mapping one old face token;
    # reflect and reverse each negate traversal tokens, so they cancel in "both"
    def image_face(old: Face) -> str:
        if not old.cycle:
            return SPHERE_FACE
        e0, s0 = old.cycle[0]
        return out.face_of_token((e0, -s0 if flip else s0)).key

    old_faces = {f.key: f for f in chart.faces()}
    for h in chart.hoops:
        host = image_face(old_faces[h.host_face])
        new_hoops.append(Hoop(h.label, h.ccw != flip, host, h.parent))
    inf = image_face(old_faces[chart.infinity_face])
    return Chart(
        n=out.n,
        vertices=out.vertices,
        edges=out.edges,
        hoops=tuple(new_hoops),
        infinity_face=inf,
    )


# ---------------------------------------------------------------------------
# canonical form and isomorphism
# ---------------------------------------------------------------------------

_KIND_CODE = {BLACK: 0, CROSSING: 1, WHITE: 2}

SYMMETRIES = ("oriented", "+reflection", "+reversal", "+both")


def _symmetry_variants(chart: Chart, symmetry: str) -> list[Chart]:
    if symmetry == "oriented":
        return [chart]
    if symmetry == "+reflection":
        return [chart, transform(chart, "reflect")]
    if symmetry == "+reversal":
        return [chart, transform(chart, "reverse")]
    if symmetry == "+both":
        return [
            chart,
            transform(chart, "reflect"),
            transform(chart, "reverse"),
            transform(chart, "both"),
        ]
    raise OperationError(f"unknown symmetry {symmetry!r}")


def _encode_from(chart: Chart, root: Dart) -> tuple:
    """Traversal encoding of the connected map from a root dart."""
    number: dict[Dart, int] = {}
    order: list[Dart] = []

    def visit(d: Dart) -> int:
        if d not in number:
            number[d] = len(order)
            order.append(d)
        return number[d]

    visit(root)
    i = 0
    sig: list[tuple] = []
    while i < len(order):
        d = order[i]
        i += 1
        nxt = visit(chart.rotation_next(d))
        opp = visit(d.opposite())
        vid = chart.dart_vertex(d)
        sig.append(
            (
                nxt,
                opp,
                chart.dart_label(d),
                1 if d.end == HEAD else 0,
                _KIND_CODE[chart.vertex(vid).kind],
            )
        )
    return tuple(sig), number


def _hoop_signature(chart: Chart, dart_number: Optional[dict]) -> tuple:
    # face identified by the min-rotated tuple of (dart number, side) pairs
    def face_code(key: str) -> tuple:
        f = chart.face_by_key(key)
        if not f.cycle:
            return ()
        codes = [(dart_number[arrival_dart(t)],) for t in f.cycle]
        n = len(codes)
        best = min(range(n), key=lambda i: [codes[(i + j) % n] for j in range(n)])
        return tuple(codes[(best + j) % n] for j in range(n))

    def depth(i: int) -> int:
        d = 0
        p = chart.hoops[i].parent
        while p is not None:
            d += 1
            p = chart.hoops[p].parent
        return d

    items = []
    for i, h in enumerate(chart.hoops):
        items.append((h.label, h.ccw, face_code(h.host_face), depth(i)))
    return tuple(sorted(items))


def _base_key(chart: Chart) -> tuple:
    if not chart.edges:
        counts = tuple(sorted(v.kind for v in chart.vertices))
        return ("empty", chart.n, counts, _hoop_signature(chart, None))
    best = None
    for root in chart.darts():
        sig, numbering = _encode_from(chart, root)
        if len(numbering) != 2 * len(chart.edges):
            raise OperationError("canonical key requires a connected chart")
        full = (sig, _hoop_signature(chart, numbering))
        if best is None or full < best:
            best = full
    return ("map", chart.n, best)


def canonical_key(chart: Chart, symmetry: str = "oriented") -> str:
    """Deterministic key equal across charts isomorphic under the symmetry group.

    The infinity-face marker is deliberately excluded: the point at infinity
    is movable, so it carries no isomorphism data.
    """
    best = min(_base_key(c) for c in _symmetry_variants(chart, symmetry))
    return repr(best)


def _cyclic_offsets(deg: int) -> range:
    return range(deg)


def brute_force_isomorphic(a: Chart, b: Chart, symmetry: str = "oriented") -> bool:
    """Exhaustive isomorphism oracle over vertex bijections and slot rotations."""
    return any(_iso_oriented(a, v) for v in _symmetry_variants(b, symmetry))


def _iso_oriented(a: Chart, b: Chart) -> bool:
    import itertools

    if a.n != b.n or len(a.vertices) != len(b.vertices) or len(a.edges) != len(b.edges):
        return False
    if _hoop_multiset(a) != _hoop_multiset(b):
        # equality of host-face structure is checked after mapping; this is a
        # cheap necessary filter on (label, ccw, depth)
        return False
    kinds = sorted({v.kind for v in a.vertices})
    if not a.vertices:
        return True
    groups_a = {k: sorted(v.id for v in a.vertices if v.kind == k) for k in kinds}
    groups_b = {k: sorted(v.id for v in b.vertices if v.kind == k) for k in kinds}
    if {k: len(v) for k, v in groups_a.items()} != {k: len(v) for k, v in groups_b.items()}:
        return False

    perm_sets = [
        [list(zip(groups_a[k], p)) for p in itertools.permutations(groups_b[k])]
        for k in kinds
    ]
    for combo in itertools.product(*perm_sets):
        vmap = dict(pair for group in combo for pair in group)
        if _iso_with_vmap(a, b, vmap):
            return True
    return False


def _hoop_multiset(chart: Chart) -> tuple:
    def depth(i: int) -> int:
        d, p = 0, chart.hoops[i].parent
        while p is not None:
            d += 1
            p = chart.hoops[p].parent
        return d

    return tuple(sorted((h.label, h.ccw, depth(i)) for i, h in enumerate(chart.hoops)))


def _iso_with_vmap(a: Chart, b: Chart, vmap: dict[str, str]) -> bool:
    import itertools

    # choose a slot rotation offset per vertex, then check edges
    vids = [v.id for v in a.vertices]
    degs = {v.id: v.degree for v in a.vertices}
    offset_choices = [range(degs[v]) for v in vids]
    edge_index_b: dict[tuple, str] = {}
    for e in b.edges:
        edge_index_b[(e.label, e.tail, e.head)] = e.id
    for offsets in itertools.product(*offset_choices):
        off = dict(zip(vids, offsets))

        def msl(ref: tuple[str, int]) -> tuple[str, int]:
            v, s = ref
            return (vmap[v], (s + off[v]) % degs[v])

        ok = True
        emap: dict[str, str] = {}
        for e in a.edges:
            key = (e.label, msl(e.tail), msl(e.head))
            tgt = edge_index_b.get(key)
            if tgt is None:
                ok = False
                break
            emap[e.id] = tgt
        if not ok or len(set(emap.values())) != len(emap):
            continue
        if _hoops_match(a, b, emap):
            return True
    return False


def _hoops_match(a: Chart, b: Chart, emap: dict[str, str]) -> bool:
    if len(a.hoops) != len(b.hoops):
        return False
    if not a.hoops:
        return True

    def face_image(key: str) -> str:
        f = a.face_by_key(key)
        if not f.cycle:
            return SPHERE_FACE
        e0, s0 = f.cycle[0]
        return b.face_of_token((emap[e0], s0)).key

    import itertools

    avail = list(range(len(b.hoops)))
    for perm in itertools.permutations(avail):
        ok = True
        for i, h in enumerate(a.hoops):
            hb = b.hoops[perm[i]]
            if (h.label, h.ccw) != (hb.label, hb.ccw):
                ok = False
                break
            if face_image(h.host_face) != hb.host_face:
                ok = False
                break
            pa = perm[h.parent] if h.parent is not None else None
            if pa != hb.parent:
                ok = False
                break
        if ok:
            return True
    return False
