"""Structural analysis of charts: label subgraphs, censuses, closed curves,
angled disks and feelers, type vectors, complexity, BW-vertices."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

from .model import (
    BLACK,
    CROSSING,
    WHITE,
    Chart,
    Dart,
    OperationError,
    Strand,
    _flood_faces,
    arrival_dart,
    is_middle,
    strand_class,
    strand_label,
    strand_of_edge,
    strands,
    white_label_pair,
)


@dataclass(frozen=True)
class LabeledSubgraph:
    label: int
    edges: tuple[str, ...]
    vertices: tuple[str, ...]
    hoops: tuple[int, ...]  # hoop indices of this label
    components: tuple[frozenset[str], ...]  # vertex sets


def gamma(chart: Chart, m: int) -> LabeledSubgraph:
    """The union of all edges of label m, with incident vertices."""
    if not 1 <= m <= chart.n - 1:
        raise OperationError(f"label {m} out of range 1..{chart.n - 1}")
    edges = tuple(sorted(e.id for e in chart.edges if e.label == m))
    vset: set[str] = set()
    adj: dict[str, set[str]] = {}
    for eid in edges:
        e = chart.edge(eid)
        u, v = e.tail[0], e.head[0]
        vset.update((u, v))
        adj.setdefault(u, set()).add(v)
        adj.setdefault(v, set()).add(u)
    comps = []
    left = set(vset)
    while left:
        start = min(left)
        comp = {start}
        stack = [start]
        while stack:
            for w in adj.get(stack.pop(), ()):
                if w not in comp:
                    comp.add(w)
                    stack.append(w)
        comps.append(frozenset(comp))
        left -= comp
    hoops = tuple(i for i, h in enumerate(chart.hoops) if h.label == m)
    return LabeledSubgraph(m, edges, tuple(sorted(vset)), hoops, tuple(comps))


@dataclass(frozen=True)
class Census:
    w: int
    b: int
    c: int
    f: int

    def as_tuple(self) -> tuple[int, int, int, int]:
        return (self.w, self.b, self.c, self.f)


def census(
    chart: Chart,
    faces: Optional[Iterable[str]] = None,
    subgraph: Optional[LabeledSubgraph] = None,
) -> Census:
    """Vertex and free-edge counts over the whole chart, a closed face
    union, or a labeled subgraph."""
    if faces is not None and subgraph is not None:
        raise OperationError("give at most one region")
    if subgraph is not None:
        vids = [chart.vertex(v) for v in subgraph.vertices]
        free = sum(
            1
            for s in strands(chart)
            if strand_label(chart, s) == subgraph.label
            and strand_class(chart, s) == "free"
        )
        return Census(
            w=sum(1 for v in vids if v.kind == WHITE),
            b=sum(1 for v in vids if v.kind == BLACK),
            c=sum(1 for v in vids if v.kind == CROSSING),
            f=free,
        )
    if faces is None:
        free = sum(1 for s in strands(chart) if strand_class(chart, s) == "free")
        return Census(chart.count(WHITE), chart.count(BLACK), chart.count(CROSSING), free)
    keys = set(faces)
    touched: set[str] = set()
    for f in chart.faces():
        if f.key in keys:
            for tok in f.cycle:
                touched.add(chart.dart_vertex(arrival_dart(tok)))
    kinds = [chart.vertex(v).kind for v in touched]
    free = 0
    for s in strands(chart):
        if strand_class(chart, s) != "free":
            continue
        side_keys = set()
        for eid in s.edges:
            for face in chart.edge_side_faces(eid):
                side_keys.add(face.key)
        if side_keys & keys:
            free += 1
    return Census(
        w=kinds.count(WHITE), b=kinds.count(BLACK), c=kinds.count(CROSSING), f=free
    )


def classify_edge(chart: Chart, eid: str) -> str:
    """free / terminal / internal / closed, via the through-strand of the edge."""
    return strand_class(chart, strand_of_edge(chart, eid))


# ---------------------------------------------------------------------------
# closed curves in a label subgraph
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class GammaCycle:
    """A simple closed curve in some label subgraph: a set of internal
    strands joined cyclically at white vertices (k = number of whites)."""

    label: int
    strand_edges: tuple[tuple[str, ...], ...]  # edge chains of the member strands
    whites: tuple[str, ...]

    @property
    def k(self) -> int:
        return len(self.whites)

    def edge_ids(self) -> frozenset[str]:
        return frozenset(e for chain in self.strand_edges for e in chain)


def _internal_arcs(chart: Chart, m: int) -> list[tuple[Strand, str, str]]:
    out = []
    for s in strands(chart):
        if strand_label(chart, s) != m or strand_class(chart, s) != "internal":
            continue
        u, v = (chart.dart_vertex(d) for d in s.ends)
        out.append((s, u, v))
    return out


def gamma_cycles(chart: Chart, m: int) -> list[GammaCycle]:
    """All simple closed curves in the label-m subgraph (crossings pass
    through; whites are the corners).  Enumerated by arc subsets: a subset
    forms a simple closed curve iff every touched white has degree exactly
    two in it and it is connected."""
    arcs = _internal_arcs(chart, m)
    if len(arcs) > 20:
        raise OperationError("label subgraph too large for cycle enumeration")
    cycles = []
    for r in range(1, len(arcs) + 1):
        for combo in itertools.combinations(range(len(arcs)), r):
            deg: dict[str, int] = {}
            for i in combo:
                _, u, v = arcs[i]
                deg[u] = deg.get(u, 0) + 1
                deg[v] = deg.get(v, 0) + 1
            if any(d != 2 for d in deg.values()):
                continue
            # connectivity over arcs
            verts = sorted(deg)
            reach = {verts[0]}
            changed = True
            while changed:
                changed = False
                for i in combo:
                    _, u, v = arcs[i]
                    if (u in reach) != (v in reach):
                        reach.update((u, v))
                        changed = True
            if len(reach) != len(verts):
                continue
            cycles.append(
                GammaCycle(
                    m,
                    tuple(arcs[i][0].edges for i in combo),
                    tuple(verts),
                )
            )
    return cycles


@dataclass(frozen=True)
class CurveInventory:
    hoops: tuple[int, ...]
    simple_hoops: tuple[int, ...]
    rings: tuple[Strand, ...]
    loops: tuple[GammaCycle, ...]


def closed_curves(chart: Chart, m: int) -> CurveInventory:
    hoops = tuple(i for i, h in enumerate(chart.hoops) if h.label == m)
    # in the connected model one side of every hoop is vertex-free
    rings = tuple(
        s for s in strands(chart) if s.closed and strand_label(chart, s) == m
    )
    loops = tuple(c for c in gamma_cycles(chart, m) if c.k == 1)
    return CurveInventory(hoops, hoops, rings, loops)


# ---------------------------------------------------------------------------
# angled disks
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class AngledDisk:
    label: int
    cycle: GammaCycle
    faces: frozenset[str]  # open side: keys of the faces forming the disk interior
    feelers: tuple[Dart, ...]  # label-m germs at boundary whites pointing inside
    special: bool

    @property
    def k(self) -> int:
        return self.cycle.k

    def boundary_edges(self) -> frozenset[str]:
        return self.cycle.edge_ids()


def cycle_sides(chart: Chart, cycle_edges: frozenset[str]) -> tuple[set[str], set[str]]:
    """Face-key sets of the two complementary disks of a simple closed curve."""
    e0 = min(cycle_edges)
    a = _flood_faces(chart, {chart.face_of_token((e0, 1)).key}, set(cycle_edges))
    b = _flood_faces(chart, {chart.face_of_token((e0, -1)).key}, set(cycle_edges))
    if a & b:
        raise OperationError("curve does not separate the sphere")
    return a, b


def dart_side(chart: Chart, d: Dart, sides: tuple[set[str], set[str]]) -> int:
    """0 or 1: which side of a separating curve the germ of d points into."""
    key = chart.corner_face(d).key
    if key in sides[0]:
        return 0
    if key in sides[1]:
        return 1
    raise OperationError("dart corner not on either side")


def angled_disks(chart: Chart, m: int) -> list[AngledDisk]:
    """Every simple closed curve of the label-m subgraph with at least one
    white vertex, both complementary disks reported."""
    out = []
    for cyc in gamma_cycles(chart, m):
        edge_set = cyc.edge_ids()
        sides = cycle_sides(chart, edge_set)
        boundary_darts: set[Dart] = set()
        for chain in cyc.strand_edges:
            for eid in chain:
                e = chart.edge(eid)
                for end in (0, 1):
                    boundary_darts.add(Dart(eid, end))
        for side_idx, side in enumerate(sides):
            feelers = []
            for w in cyc.whites:
                for d in chart.rotation(w):
                    if chart.dart_label(d) != m or d in boundary_darts:
                        continue
                    if dart_side(chart, d, sides) == side_idx:
                        feelers.append(d)
            special = all(
                strand_class(chart, strand_of_edge(chart, d.edge)) == "terminal"
                for d in feelers
            )
            out.append(
                AngledDisk(
                    m,
                    cyc,
                    frozenset(side),
                    tuple(sorted(feelers)),
                    special,
                )
            )
    return out


def interior_white_count(chart: Chart, disk: AngledDisk) -> int:
    whites = set()
    for f in chart.faces():
        if f.key not in disk.faces:
            continue
        for tok in f.cycle:
            vid = chart.dart_vertex(arrival_dart(tok))
            if chart.vertex(vid).kind == WHITE:
                whites.add(vid)
    return len(whites - set(disk.cycle.whites))


def boundary_crossing_count(chart: Chart, disk: AngledDisk) -> int:
    crossings = set()
    for eid in disk.boundary_edges():
        e = chart.edge(eid)
        for vid in (e.tail[0], e.head[0]):
            if chart.vertex(vid).kind == CROSSING:
                crossings.add(vid)
    return len(crossings)


# ---------------------------------------------------------------------------
# type vectors and complexity
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class TypeVector:
    m: int
    counts: tuple[int, ...]

    def __str__(self) -> str:
        return f"({self.m}; {', '.join(map(str, self.counts))})"


def type_of(chart: Chart) -> Optional[TypeVector]:
    """Distribution of white vertices over consecutive label intersections.

    The window is the minimal label range covering all white label pairs;
    interior zeros are reported verbatim."""
    pairs = []
    for v in chart.vertices:
        if v.kind == WHITE:
            j, _ = white_label_pair(chart, v.id)
            pairs.append(j)
    if not pairs:
        return None
    m, top = min(pairs), max(pairs)
    counts = [0] * (top - m + 1)
    for j in pairs:
        counts[j - m] += 1
    return TypeVector(m, tuple(counts))


@dataclass(frozen=True, order=True)
class Complexity:
    w: int
    neg_f: int


def complexity(chart: Chart) -> Complexity:
    free = sum(1 for s in strands(chart) if strand_class(chart, s) == "free")
    return Complexity(chart.count(WHITE), -free)


def local_complexity(chart: Chart, disk: AngledDisk) -> tuple[int, int]:
    return (interior_white_count(chart, disk), boundary_crossing_count(chart, disk))


# ---------------------------------------------------------------------------
# BW-vertices
# ---------------------------------------------------------------------------


def _label_m_strands_at(chart: Chart, w: str, m: int) -> list[tuple[Dart, Strand]]:
    out = []
    for d in chart.rotation(w):
        if chart.dart_label(d) == m:
            out.append((d, strand_of_edge(chart, d.edge)))
    return out


def bw_vertices(chart: Chart, m: int) -> list[str]:
    """Whites of the label-m subgraph one of whose three label-m edges is
    terminal."""
    out = []
    for v in chart.vertices:
        if v.kind != WHITE:
            continue
        pair = white_label_pair(chart, v.id)
        if m not in pair:
            continue
        if any(
            strand_class(chart, s) == "terminal"
            for _, s in _label_m_strands_at(chart, v.id, m)
        ):
            out.append(v.id)
    return out


def lemma31_violations(chart: Chart, m: int) -> list[str]:
    """BW-vertices whose two non-terminal label-m edges have mixed
    orientation (they must point inward or outward simultaneously)."""
    out = []
    for w in bw_vertices(chart, m):
        rest = [
            (d, s)
            for d, s in _label_m_strands_at(chart, w, m)
            if strand_class(chart, s) != "terminal"
        ]
        if len(rest) == 2:
            d1, d2 = rest[0][0], rest[1][0]
            if chart.is_inward(d1) != chart.is_inward(d2):
                out.append(w)
    return out


def neighbors_anticlockwise(chart: Chart, eid: str, w: str) -> tuple[str, str]:
    """The edges immediately before and after edge eid in the
    counterclockwise rotation at white vertex w."""
    darts = [d for d in chart.rotation(w) if d.edge == eid]
    if not darts:
        raise OperationError(f"edge {eid!r} not incident to {w!r}")
    if len(darts) > 1:
        raise OperationError(f"edge {eid!r} meets {w!r} twice; neighbors ambiguous")
    d = darts[0]
    return (chart.rotation_prev(d).edge, chart.rotation_next(d).edge)
