"""IO-calculation: inward/outward arc tallies over closed domains, and
feasibility of partial boundary configurations.

The balance fact: over a closed domain F whose boundary labels lie in
{k-1, k, k+1}, the label-k arcs near vertices with corners in F split
evenly into inward and outward.  Label-k edges can never cross such a
boundary (adjacent labels cannot cross), so each counted edge contributes
one inward and one outward arc.  The interesting use is on partial data:
a boundary profile fixes some arcs and asks whether any interior
completion can balance them.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

from .model import (
    BLACK,
    WHITE,
    Chart,
    OperationError,
    arrival_dart,
)


@dataclass(frozen=True)
class Domain:
    faces: frozenset[str]
    k: int
    boundary_edges: frozenset[str]


def make_domain(chart: Chart, faces: Iterable[str], k: int) -> Domain:
    """Closed union of faces whose boundary carries only labels k-1, k, k+1."""
    keys = frozenset(faces)
    known = chart.face_keys()
    for key in keys:
        if key not in known:
            raise OperationError(f"unknown face {key!r}")
    if not 1 <= k <= chart.n - 1:
        raise OperationError(f"label {k} out of range")
    boundary = set()
    for e in chart.edges:
        sides = {f.key for f in chart.edge_side_faces(e.id)}
        inside = sides & keys
        if inside and sides - keys:
            boundary.add(e.id)
    allowed = {k - 1, k, k + 1}
    for eid in sorted(boundary):
        lbl = chart.edge(eid).label
        if lbl not in allowed:
            raise OperationError(
                f"boundary edge {eid!r} has label {lbl}, outside {sorted(allowed)}"
            )
    return Domain(keys, k, frozenset(boundary))


def io_tally(chart: Chart, dom: Domain) -> tuple[int, int]:
    """(inward, outward) label-k arc counts over the domain.

    A dart counts when its edge has a side face in the domain; it is inward
    when the edge is oriented toward the dart's vertex."""
    inward = outward = 0
    for e in chart.edges:
        if e.label != dom.k:
            continue
        sides = {f.key for f in chart.edge_side_faces(e.id)}
        if not sides & dom.faces:
            continue
        inward += 1  # head arc at its vertex
        outward += 1  # tail arc
    return (inward, outward)


# ---------------------------------------------------------------------------
# boundary profiles and feasibility
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ProfileDart:
    id: str
    direction: str  # "in" | "out" (orientation at the boundary white vertex)
    terminal_ok: bool = False  # middle at its white vertex, so a black may end it


@dataclass(frozen=True)
class BoundaryProfile:
    label: str  # symbolic or numeric label name, informational
    darts: tuple[ProfileDart, ...]
    joins: tuple[tuple[str, str], ...] = ()  # darts forced to be one strand

    def dart(self, did: str) -> ProfileDart:
        for d in self.darts:
            if d.id == did:
                return d
        raise OperationError(f"unknown profile dart {did!r}")


@dataclass(frozen=True)
class Feasibility:
    feasible: bool
    certificate: Optional[tuple[int, int]] = None  # (inward, outward) at best attempt
    witness: Optional[tuple[tuple[str, str], ...]] = None  # strand endpoint pairs

    def __bool__(self) -> bool:
        return self.feasible


def _apply_joins(profile: BoundaryProfile) -> tuple[list[ProfileDart], list[tuple[str, str]]]:
    used: set[str] = set()
    fixed: list[tuple[str, str]] = []
    for a, b in profile.joins:
        da, db = profile.dart(a), profile.dart(b)
        if a in used or b in used:
            raise OperationError(f"dart joined twice: {a!r}/{b!r}")
        if {da.direction, db.direction} != {"in", "out"}:
            raise OperationError(f"join {a!r}-{b!r} must pair an inward and outward dart")
        used.update((a, b))
        fixed.append((a, b) if da.direction == "out" else (b, a))
    rest = [d for d in profile.darts if d.id not in used]
    return rest, fixed


def io_feasible(profile: BoundaryProfile, budget: int) -> Feasibility:
    """Decide whether the profile extends to a balanced interior using at
    most ``budget`` interior label-k white vertices.

    Interior whites have three label-k darts split 2/1 between inward and
    outward, so each absorbs net imbalance exactly +-1; the minority dart
    is the middle one and is the only slot where a terminal edge (interior
    black vertex) may attach.  Boundary darts may end at interior blacks
    only when terminal-permitted.
    """
    rest, fixed = _apply_joins(profile)
    outs = [d for d in rest if d.direction == "out"]
    ins = [d for d in rest if d.direction == "in"]
    A, B = len(outs), len(ins)
    a = sum(1 for d in outs if d.terminal_ok)
    b = sum(1 for d in ins if d.terminal_ok)

    best: Optional[tuple[int, tuple[int, int, int, int]]] = None
    for t in range(budget + 1):
        for t_plus in range(t + 1):
            t_minus = t - t_plus
            # balance: A - B = (t_plus - t_minus) + beta_h - beta_t
            delta = A - B - t_plus + t_minus
            cap_h = a + t_plus  # black-ended strands leaving permitted tails
            cap_t = b + t_minus
            beta_h = max(delta, 0)
            beta_t = max(-delta, 0)
            in_total = B + 2 * t_plus + t_minus + min(beta_h, cap_h)
            out_total = A + 2 * t_minus + t_plus + min(beta_t, cap_t)
            gap = abs(in_total - out_total)
            key = (gap, (t_plus, t_minus, min(beta_h, cap_h), min(beta_t, cap_t)))
            if best is None or key < best:
                best = key
            if beta_h <= cap_h and beta_t <= cap_t:
                witness = _build_witness(
                    outs, ins, fixed, t_plus, t_minus, beta_h, beta_t
                )
                return Feasibility(True, None, witness)
    assert best is not None
    _, (t_plus, t_minus, beta_h, beta_t) = best
    cert = (
        B + 2 * t_plus + t_minus + beta_h,
        A + 2 * t_minus + t_plus + beta_t,
    )
    return Feasibility(False, cert, None)


def _build_witness(outs, ins, fixed, t_plus, t_minus, beta_h, beta_t):
    """Explicit strand list: (tail endpoint, head endpoint) pairs."""
    tails: list[str] = []
    heads: list[str] = []
    # permitted tails first so black heads can consume them
    tails.extend(d.id for d in outs if d.terminal_ok)
    tails.extend(d.id for d in outs if not d.terminal_ok)
    heads.extend(d.id for d in ins if d.terminal_ok)
    heads.extend(d.id for d in ins if not d.terminal_ok)
    for i in range(t_plus):
        w = f"white+{i}"
        heads.extend([f"{w}.in0", f"{w}.in1"])
        tails.insert(0, f"{w}.mid_out")  # middle slot, terminal-permitted
    for i in range(t_minus):
        w = f"white-{i}"
        tails.extend([f"{w}.out0", f"{w}.out1"])
        heads.insert(0, f"{w}.mid_in")
    strands = list(fixed)
    for i in range(beta_h):
        strands.append((tails.pop(0), f"black.h{i}"))
    for i in range(beta_t):
        strands.append((f"black.t{i}", heads.pop(0)))
    assert len(tails) == len(heads)
    strands.extend(zip(tails, heads))
    return tuple(strands)


def oracle_feasible(profile: BoundaryProfile, budget: int) -> bool:
    """Brute-force completion search: enumerate interior white counts and
    sign patterns, endpoint pairings, and black placements explicitly.
    Independent of io_feasible; used as its oracle."""
    rest, fixed = _apply_joins(profile)
    for t in range(budget + 1):
        for signs in itertools.product((+1, -1), repeat=t):
            tails: list[tuple[str, bool]] = []  # (endpoint, may feed a black head)
            heads: list[tuple[str, bool]] = []
            for d in rest:
                if d.direction == "out":
                    tails.append((d.id, d.terminal_ok))
                else:
                    heads.append((d.id, d.terminal_ok))
            for i, s in enumerate(signs):
                if s > 0:
                    heads.append((f"w{i}.a", False))
                    heads.append((f"w{i}.b", False))
                    tails.append((f"w{i}.mid", True))
                else:
                    tails.append((f"w{i}.a", False))
                    tails.append((f"w{i}.b", False))
                    heads.append((f"w{i}.mid", True))
            if _match_exists(tails, heads):
                return True
    return False


def _match_exists(tails, heads) -> bool:
    """Can every endpoint be saturated, allowing any tail-head strand plus
    black-ended strands at permitted endpoints only?"""
    nt, nh = len(tails), len(heads)
    diff = nt - nh
    if diff >= 0:
        # diff tails must end at blacks (heads), each needs permission
        extra = diff
        permitted = sum(1 for _, ok in tails if ok)
        return extra <= permitted
    extra = -diff
    permitted = sum(1 for _, ok in heads if ok)
    return extra <= permitted


def all_domains(chart: Chart) -> Iterable[Domain]:
    """Every admissible (face subset, label) domain of a chart.  Exponential
    in face count; intended for small enumerated charts."""
    keys = sorted(chart.face_keys())
    for r in range(1, len(keys) + 1):
        for combo in itertools.combinations(keys, r):
            for k in chart.labels():
                try:
                    yield make_domain(chart, combo, k)
                except OperationError:
                    continue


# ---------------------------------------------------------------------------
# the 3-angled-disk bound
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class TriangleDiskData:
    """Hypothesis data for the lower bound on interior whites of a
    3-angled disk: feeler count, membership labels of the three corner
    whites relative to the disk label m (epsilon = +1 or -1), and whether
    the corner terminal edge lies inside the disk (with its profile)."""

    feelers: int
    w1_offset: int  # corner white label side: +1 or -1 (pair {m, m+offset})
    w2_offset: int
    w3_offset: int
    terminal_inside: bool = False
    profile: Optional[BoundaryProfile] = None


def triangle_bound(data: TriangleDiskData) -> int:
    """1 when the hypotheses force an interior white vertex, else 0.

    With no feelers this is the direct 3-angled-disk bound; with exactly one
    feeler (necessarily the corner terminal edge inside the disk) the two
    replacement edges at that corner point outward and are non-terminal, and
    the balance count in the disk fails at budget 0."""
    eps = data.w1_offset
    if eps not in (1, -1) or data.w2_offset != eps or data.w3_offset != -eps:
        return 0
    if data.feelers == 0 and not data.terminal_inside:
        return 1
    if data.feelers == 1 and data.terminal_inside:
        if data.profile is None:
            prof = BoundaryProfile(
                "m-eps",
                (
                    ProfileDart("e'", "out", False),
                    ProfileDart("e''", "out", False),
                ),
            )
        else:
            prof = data.profile
        return 1 if not io_feasible(prof, 0) else 0
    return 0


# ---------------------------------------------------------------------------
# ioprofile/v1 serialization
# ---------------------------------------------------------------------------


def profile_to_payload(profile: BoundaryProfile, budget: int = 0) -> dict:
    return {
        "format": "ioprofile/v1",
        "label": profile.label,
        "darts": [
            {"id": d.id, "direction": d.direction, "terminal_ok": d.terminal_ok}
            for d in profile.darts
        ],
        "joins": [list(j) for j in profile.joins],
        "budget": budget,
    }


def profile_from_payload(payload: dict) -> tuple[BoundaryProfile, int]:
    if payload.get("format") != "ioprofile/v1":
        raise OperationError("unsupported profile format")
    darts = tuple(
        ProfileDart(d["id"], d["direction"], bool(d.get("terminal_ok", False)))
        for d in payload["darts"]
    )
    joins = tuple((a, b) for a, b in payload.get("joins", ()))
    return BoundaryProfile(payload.get("label", "k"), darts, joins), int(
        payload.get("budget", 0)
    )
