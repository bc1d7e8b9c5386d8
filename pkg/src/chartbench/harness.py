"""Isomorph-free enumeration of small charts and invariant sweeps.

Generation is orderly: vertex neighbourhoods are normalized (white in-block
at slots 0-2, crossing low-label inward dart at slot 0), label-respecting
dart matchings are enumerated, non-spherical or disconnected gluings are
filtered, and canonical keys deduplicate.  A deliberately redundant naive
generator (all rotation phases, brute-force isomorphism dedup) cross-checks
the counts.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Optional, Sequence

from . import analysis, iocalc
from .model import (
    BLACK,
    CROSSING,
    WHITE,
    Chart,
    Edge,
    Hoop,
    Vertex,
    brute_force_isomorphic,
    canonical_key,
    dumps,
    loads,
    middle_darts,
    trace_faces,
    validate,
)
from .patterns import detector_suite


@dataclass(frozen=True)
class EnumBounds:
    n: int
    max_white: int = 0
    max_black: int = 0
    max_crossings: int = 0
    max_hoops: int = 0
    policy: tuple[str, ...] = ("A2", "A3", "A4")


# a vertex plan: kind plus the labels/directions of its slots in order
@dataclass(frozen=True)
class _Plan:
    kind: str
    slots: tuple[tuple[int, bool], ...]  # (label, inward)


def _white_plans(n: int, all_phases: bool) -> list[_Plan]:
    out = []
    for j in range(1, n - 1):
        for first in (j, j + 1):
            labels = [first if i % 2 == 0 else (j + (j + 1) - first) for i in range(6)]
            phases = range(6) if all_phases else (0,)
            for ph in phases:
                dirs = [((i - ph) % 6) < 3 for i in range(6)]
                out.append(_Plan(WHITE, tuple(zip(labels, dirs))))
    return sorted(set(out), key=lambda p: p.slots)


def _crossing_plans(n: int, all_phases: bool) -> list[_Plan]:
    out = []
    for i in range(1, n - 1):
        for j in range(i + 2, n):
            for d1 in (True, False):
                base = [(i, True), (j, d1), (i, False), (j, not d1)]
                rotations = range(4) if all_phases else (0,)
                for r in rotations:
                    slots = tuple(base[(k + r) % 4] for k in range(4))
                    out.append(_Plan(CROSSING, slots))
    return sorted(set(out), key=lambda p: p.slots)


def _black_plans(n: int) -> list[_Plan]:
    out = []
    for l in range(1, n):
        for inward in (True, False):
            out.append(_Plan(BLACK, ((l, inward),)))
    return out


def _assemble(n: int, plans: Sequence[_Plan], matching: dict) -> Optional[Chart]:
    """Build a chart from vertex plans and an out-dart -> in-dart pairing."""
    vertices = []
    for idx, plan in enumerate(plans):
        vertices.append(Vertex(f"v{idx}", plan.kind))
    edges = []
    for eidx, ((vo, so), (vi, si)) in enumerate(sorted(matching.items())):
        label = plans[vo].slots[so][0]
        edges.append(
            Edge(f"e{eidx}", label, (f"v{vo}", so), (f"v{vi}", si))
        )
    return Chart(
        n=n,
        vertices=tuple(sorted(vertices, key=lambda v: v.id)),
        edges=tuple(sorted(edges, key=lambda e: e.id)),
        hoops=(),
        infinity_face="",
    )


def _finish(chart: Chart) -> Optional[Chart]:
    keys = {f.key for f in trace_faces(chart)}
    return Chart(
        n=chart.n,
        vertices=chart.vertices,
        edges=chart.edges,
        hoops=chart.hoops,
        infinity_face=min(keys),
    )


def _fast_sphere_check(plans: Sequence[_Plan], matching: dict) -> bool:
    """Connectivity plus genus-zero test on the glued rotation system,
    without building Chart objects."""
    nv = len(plans)
    if nv == 0:
        return True
    # union-find over vertices
    parent = list(range(nv))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    edge_count = len(matching)
    for (vo, _), (vi, _) in matching.items():
        ra, rb = find(vo), find(vi)
        if ra != rb:
            parent[ra] = rb
    if len({find(v) for v in range(nv)}) != 1:
        return False
    # face orbit count: tokens are (edge, forward?) with the edge identified
    # by its out-dart; next = rotation successor of the arrival dart
    out_of: dict[tuple, tuple] = matching
    into: dict[tuple, tuple] = {v: k for k, v in matching.items()}
    degs = [len(p.slots) for p in plans]

    def succ(dart):
        v, s = dart
        return (v, (s + 1) % degs[v])

    def next_token(tok):
        od, forward = tok
        arrival = out_of[od] if forward else od
        nd = succ(arrival)
        if nd in out_of:
            return (nd, True)
        return (into[nd], False)

    todo = set()
    for od in out_of:
        todo.add((od, True))
        todo.add((od, False))
    faces = 0
    while todo:
        t = next(iter(todo))
        faces += 1
        cur = t
        while True:
            todo.discard(cur)
            cur = next_token(cur)
            if cur == t:
                break
    return nv - edge_count + faces == 2


def _gluings(n: int, plans: Sequence[_Plan]) -> Iterator[Chart]:
    outs: dict[int, list] = {}
    ins: dict[int, list] = {}
    for vidx, plan in enumerate(plans):
        for sidx, (label, inward) in enumerate(plan.slots):
            (ins if inward else outs).setdefault(label, []).append((vidx, sidx))
    if sorted(outs) != sorted(ins):
        return
    for label in outs:
        if len(outs[label]) != len(ins[label]):
            return
    labels = sorted(outs)
    pools = [list(itertools.permutations(ins[l])) for l in labels]
    for combo in itertools.product(*pools):
        matching = {}
        ok = True
        for l, perm in zip(labels, combo):
            for od, id_ in zip(outs[l], perm):
                if od == id_:
                    ok = False
                    break
                matching[od] = id_
            if not ok:
                break
        if not ok:
            continue
        if not _fast_sphere_check(plans, matching):
            continue
        chart = _assemble(n, plans, matching)
        if chart is not None:
            yield chart


def _hoop_decorations(chart: Chart, max_hoops: int) -> Iterator[Chart]:
    yield chart
    if max_hoops <= 0:
        return
    keys = sorted(f.key for f in trace_faces(chart))
    labels = list(range(1, chart.n))

    def extend(hoops: tuple[Hoop, ...]) -> Iterator[tuple[Hoop, ...]]:
        if len(hoops) >= max_hoops:
            return
        for label in labels:
            for ccw in (True, False):
                for host in keys:
                    parents: list[Optional[int]] = [None] + [
                        i for i, h in enumerate(hoops) if h.host_face == host
                    ]
                    for parent in parents:
                        nxt = hoops + (Hoop(label, ccw, host, parent),)
                        yield nxt
                        yield from extend(nxt)

    from dataclasses import replace

    for hoops in extend(()):
        yield replace(chart, hoops=hoops)


def enumerate_charts(bounds: EnumBounds) -> list[Chart]:
    """One representative per isomorphism class of valid charts within
    bounds, in deterministic canonical-key order."""
    return _enumerate(bounds, all_phases=False, canonical=True)


def naive_enumerate(bounds: EnumBounds) -> list[Chart]:
    """Redundant generation (all rotation phases) with pairwise brute-force
    isomorphism dedup; the independent oracle for enumerate_charts."""
    return _enumerate(bounds, all_phases=True, canonical=False)


def _enumerate(bounds: EnumBounds, all_phases: bool, canonical: bool) -> list[Chart]:
    whites = _white_plans(bounds.n, all_phases)
    crossings = _crossing_plans(bounds.n, all_phases)
    blacks = _black_plans(bounds.n)
    found: dict[str, Chart] = {}
    reps: list[Chart] = []

    def consider(chart: Chart):
        rep = validate(chart, policy=bounds.policy)
        if not rep.verdict:
            return
        for decorated in _hoop_decorations(chart, bounds.max_hoops):
            if decorated.hoops:
                if not validate(decorated, policy=bounds.policy).verdict:
                    continue
            if canonical:
                key = canonical_key(decorated)
                if key not in found:
                    found[key] = decorated
            else:
                if not any(brute_force_isomorphic(decorated, c) for c in reps):
                    reps.append(decorated)

    for w in range(bounds.max_white + 1):
        for b in range(bounds.max_black + 1):
            for c in range(bounds.max_crossings + 1):
                if w == 0 and b == 0 and c == 0:
                    consider(_finish(Chart(bounds.n, (), (), (), "")))
                    continue
                for wsel in itertools.combinations_with_replacement(whites, w):
                    for bsel in itertools.combinations_with_replacement(blacks, b):
                        for csel in itertools.combinations_with_replacement(
                            crossings, c
                        ):
                            plans = list(wsel) + list(csel) + list(bsel)
                            for glued in _gluings(bounds.n, plans):
                                finished = _finish(glued)
                                if finished is not None:
                                    consider(finished)
    if canonical:
        return [found[k] for k in sorted(found)]
    return sorted(reps, key=canonical_key)


# ---------------------------------------------------------------------------
# sweeps
# ---------------------------------------------------------------------------


@dataclass
class SweepReport:
    checked: int = 0
    violations: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations


def sweep(charts: Iterable[Chart], policy: tuple[str, ...] = ()) -> SweepReport:
    """Invariant sweep: axioms, serialization round trip, balance fact on
    every admissible domain, disk census additivity, middle-dart
    uniqueness, and detector silence on clean charts."""
    report = SweepReport()
    for idx, chart in enumerate(charts):
        report.checked += 1
        tag = f"chart[{idx}]"
        rep = validate(chart, policy=policy)
        if not rep.verdict:
            report.violations.append(f"{tag}: axioms: {rep.violations[:2]}")
            continue
        if loads(dumps(chart)) != chart:
            report.violations.append(f"{tag}: serialization round trip")
        for dom in iocalc.all_domains(chart):
            inward, outward = iocalc.io_tally(chart, dom)
            if inward != outward:
                report.violations.append(
                    f"{tag}: unbalanced domain {sorted(dom.faces)} label {dom.k}"
                )
        for v in chart.vertices:
            if v.kind == WHITE:
                mids = middle_darts(chart, v.id)
                if len(set(mids)) != 2:
                    report.violations.append(f"{tag}: middle darts at {v.id}")
        for m in chart.labels():
            for disk in analysis.angled_disks(chart, m):
                total = analysis.census(chart, faces=disk.faces).w
                inside = analysis.interior_white_count(chart, disk)
                if total != disk.k + inside:
                    report.violations.append(
                        f"{tag}: disk census identity at label {m}"
                    )
        if ("A2" in policy or not policy) and validate(chart).verdict:
            certs = detector_suite(chart)
            if certs:
                report.violations.append(
                    f"{tag}: detector fired on a clean chart: {certs[0].rule}"
                )
    return report
