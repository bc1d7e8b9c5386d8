"""The acceptance gate: one checkable criterion per function.

Each criterion returns (ok, detail).  run_acceptance() executes all of them
and prints one pass/fail line each; the pytest module asserts the same
functions so the gate runs inside the suite."""

from __future__ import annotations

import itertools
import time
from dataclasses import replace
from typing import Callable

from . import analysis, harness, iocalc, zoo
from .iocalc import BoundaryProfile, ProfileDart, io_feasible, oracle_feasible
from .macros import search_reduction
from .model import (
    OperationError,
    brute_force_isomorphic,
    canonical_key,
    trace_faces,
    validate,
)
from .moves import apply_move_ex, applicable_moves, expected_delta
from .patterns import (
    LabelExpr,
    OpenDart,
    PEdge,
    PseudoChart,
    catalog_ids,
    detector_suite,
    load_pattern,
    match,
    oracle_match,
    validate_pattern,
)
from .scenarios import run_all as run_all_scenarios


# ---------------------------------------------------------------------------
# criterion 1: catalog figures validate; all single-field mutations rejected
# ---------------------------------------------------------------------------


def _mutations(p: PseudoChart):
    """Guaranteed-invalid single-field mutants with their expected rule."""
    full_dir_whites = set()
    for v in p.vertices:
        if v.kind != "white":
            continue
        contents = p.slot_contents(v.id)
        dirs = []
        for c in contents:
            if c is None:
                dirs.append(None)
            elif c[0] == "edge":
                dirs.append(True)
            else:
                dirs.append(c[1].direction is not None)
        if all(d for d in dirs):
            full_dir_whites.add(v.id)

    # flip one edge orientation at a direction-saturated white
    for e in p.edges:
        if e.tail[0] in full_dir_whites or e.head[0] in full_dir_whites:
            edges = tuple(
                PEdge(x.id, x.label, x.head, x.tail, x.simple) if x.id == e.id else x
                for x in p.edges
            )
            yield replace(p, edges=edges), {"white-blocks"}, f"flip {e.id}"
            break

    # shift one edge label at a white that has other label data
    for e in p.edges:
        for vid, _ in (e.tail, e.head):
            if p.vertex(vid).kind != "white":
                continue
            others = sum(
                1
                for c in p.slot_contents(vid)
                if c is not None and (c[0] == "edge" or (c[0] == "open" and c[1].label))
            )
            if others >= 2:
                edges = tuple(
                    PEdge(
                        x.id,
                        LabelExpr(x.label.base + 1, x.label.eps_coeff),
                        x.tail,
                        x.head,
                        x.simple,
                    )
                    if x.id == e.id
                    else x
                    for x in p.edges
                )
                yield replace(p, edges=edges), {
                    "white-alternation",
                    "crossing-labels",
                }, f"shift {e.id}"
                break
        else:
            continue
        break

    # swap two differently-labelled rotation slots at a white; emit the
    # first pair that genuinely corrupts the figure (a sparse vertex can
    # absorb a swap into another consistent completion)
    done_swap = False
    for v in p.vertices:
        if done_swap or v.kind != "white":
            continue
        contents = p.slot_contents(v.id)
        filled = [i for i, c in enumerate(contents) if c is not None]
        for i in filled:
            for j in filled:
                if i >= j or (i - j) % 2 == 0:
                    continue
                mutant = _swap_slots(p, v.id, i, j)
                fired = {rule for rule, _ in validate_pattern(mutant)}
                if fired & {"white-alternation", "white-blocks"}:
                    yield mutant, {
                        "white-alternation",
                        "white-blocks",
                    }, f"swap {v.id}[{i},{j}]"
                    done_swap = True
                    break
            if done_swap:
                break

    # squeeze a crossing's labels to distance one
    for v in p.vertices:
        if v.kind != "crossing":
            continue
        contents = p.slot_contents(v.id)
        e0 = contents[0]
        e1 = contents[1]
        if e0 and e1 and e0[0] == "edge" and e1[0] == "edge":
            target = e1[1]
            bad_label = LabelExpr(e0[1].label.base + 1, e0[1].label.eps_coeff)
            edges = tuple(
                PEdge(x.id, bad_label, x.tail, x.head, x.simple)
                if x.id == target.id
                else x
                for x in p.edges
            )
            pair_edge = next(
                x for x in p.edges if x.id == contents[3][1].id
            )
            edges = tuple(
                PEdge(x.id, bad_label, x.tail, x.head, x.simple)
                if x.id == pair_edge.id
                else x
                for x in edges
            )
            yield replace(p, edges=edges), {"crossing-labels"}, f"squeeze {v.id}"
            break


def _swap_slots(p: PseudoChart, vid: str, i: int, j: int) -> PseudoChart:
    def ms(ref):
        v, s = ref
        if v != vid:
            return ref
        if s == i:
            return (v, j)
        if s == j:
            return (v, i)
        return ref

    edges = tuple(PEdge(e.id, e.label, ms(e.tail), ms(e.head), e.simple) for e in p.edges)
    opens = tuple(
        (v, (j if (v == vid and s == i) else i if (v == vid and s == j) else s), od)
        for (v, s, od) in p.opens
    )
    return replace(p, edges=edges, opens=opens)


def criterion_1() -> tuple[bool, str]:
    start = time.time()
    ids = catalog_ids()
    if len(ids) < 15:
        return False, f"only {len(ids)} catalog figures"
    total_mut = 0
    for pid in ids:
        p = load_pattern(pid)
        if validate_pattern(p):
            return False, f"{pid} fails pseudo-mode validation"
        for mutant, expected, tag in _mutations(p):
            total_mut += 1
            fired = {rule for rule, _ in validate_pattern(mutant)}
            if not (fired & expected):
                return False, f"{pid}: mutation {tag} fired {fired}, wanted {expected}"
    elapsed = time.time() - start
    if elapsed >= 10:
        return False, f"runtime {elapsed:.1f}s exceeds 10s"
    return True, f"{len(ids)} figures validate; {total_mut} mutations rejected ({elapsed:.1f}s)"


# ---------------------------------------------------------------------------
# criterion 2: the balance fact over every admissible domain
# ---------------------------------------------------------------------------


def _criterion2_charts():
    out = []
    for n in (2, 3, 4):
        bounds = harness.EnumBounds(
            n=n, max_white=2, max_black=2, max_crossings=2, max_hoops=0
        )
        out.extend(harness.enumerate_charts(bounds))
    return out


def criterion_2() -> tuple[bool, str]:
    start = time.time()
    charts = _criterion2_charts()
    domains = 0
    for chart in charts:
        for dom in iocalc.all_domains(chart):
            domains += 1
            inward, outward = iocalc.io_tally(chart, dom)
            if inward != outward:
                return False, f"unbalanced domain on {canonical_key(chart)[:40]}"
    elapsed = time.time() - start
    if elapsed >= 300:
        return False, f"runtime {elapsed:.0f}s exceeds 5min"
    return True, f"{len(charts)} charts, {domains} domains balanced ({elapsed:.1f}s)"


# ---------------------------------------------------------------------------
# criterion 3: the worked balance example
# ---------------------------------------------------------------------------


def criterion_3() -> tuple[bool, str]:
    prof = BoundaryProfile(
        "k",
        (
            ProfileDart("e2", "out", True),
            ProfileDart("e3", "in", False),
            ProfileDart("a55", "out", False),
            ProfileDart("b55", "out", False),
        ),
    )
    r0 = io_feasible(prof, 0)
    if r0.feasible or r0.certificate != (2, 3):
        return False, f"budget 0 gave {r0.feasible}, {r0.certificate}"
    r1 = io_feasible(prof, 1)
    if not r1.feasible or not oracle_feasible(prof, 1):
        return False, "budget 1 not confirmed"
    return True, "infeasible (2, 3) at budget 0; feasible at budget 1 (oracle-confirmed)"


# ---------------------------------------------------------------------------
# criterion 4: move engine soundness on sampled applicable moves
# ---------------------------------------------------------------------------


def _sample_charts_for_moves():
    charts = [
        zoo.empty_chart(3),
        zoo.hoop_chart(),
        zoo.oval_chart(),
        zoo.lens_chart(),
        zoo.cut_lens_chart(),
        zoo.three_rings_chart(),
        zoo.ring_lens_chart(),
        zoo.twin_lens_chart(),
        zoo.special_oval_chart(),
    ]
    bounds = harness.EnumBounds(n=3, max_white=2, max_black=2)
    charts.extend(harness.enumerate_charts(bounds))
    return charts


def criterion_4(minimum: int = 100) -> tuple[bool, str]:
    from .model import arrival_dart

    start = time.time()
    pairs = 0
    for chart in _sample_charts_for_moves():
        moves = applicable_moves(chart)
        for mv in moves[:40]:
            pairs += 1
            res = apply_move_ex(chart, mv)
            # census delta per the catalog table
            before, after = analysis.census(chart), analysis.census(res.chart)
            want = expected_delta(mv)
            got = (
                after.w - before.w,
                after.b - before.b,
                after.c - before.c,
                len(res.chart.hoops) - len(chart.hoops),
            )
            if got != (want["w"], want["b"], want["c"], want["hoops"]):
                return False, f"delta mismatch for {mv.kind} {mv.direction}: {got}"
            # invertibility
            back = apply_move_ex(res.chart, res.inverse)
            if canonical_key(back.chart) != canonical_key(chart):
                return False, f"inverse failed for {mv.kind} {mv.direction}"
            # faces away from the site survive verbatim
            after_keys = {f.key for f in trace_faces(res.chart)}
            for f in trace_faces(chart):
                ids = f.edge_ids()
                verts = {chart.dart_vertex(arrival_dart(t)) for t in f.cycle}
                if not (ids & res.active_edges) and not (verts & res.active_vertices):
                    if f.key not in after_keys:
                        return False, f"distant face changed under {mv.kind}"
    elapsed = time.time() - start
    if pairs < minimum:
        return False, f"only {pairs} sampled pairs"
    return True, f"{pairs} (chart, move) pairs: inverses, deltas, distant faces OK ({elapsed:.1f}s)"


# ---------------------------------------------------------------------------
# criterion 5: the scenario suite
# ---------------------------------------------------------------------------


def criterion_5() -> tuple[bool, str]:
    results = run_all_scenarios()
    bad = [r.id for r in results if not r.ok]
    if bad:
        return False, f"scenarios failed: {bad}"
    quotes = {
        "lemma5.3-fig11b": "not middle at w2",
        "sec11-fig25": "not middle at w4",
        "sec6-example": "(2, 3)",
        "sec7-claim3": "3 + 3 + 0 + 1 = 7",
    }
    for r in results:
        want = quotes.get(r.id)
        if want and not any(want in s for s in r.steps):
            return False, f"{r.id} missing expected verdict {want!r}"
    return True, f"{len(results)} scenarios replay bit-exactly"


# ---------------------------------------------------------------------------
# criterion 6: matcher vs the exhaustive embedding oracle
# ---------------------------------------------------------------------------


def _corpus_20():
    charts = [
        zoo.empty_chart(3),
        zoo.free_edge_chart(),
        zoo.hoop_chart(),
        zoo.oval_chart(),
        zoo.oval_chart(4),
        zoo.lens_chart(),
        zoo.lens_chart(4),
        zoo.cut_lens_chart(),
        zoo.three_rings_chart(),
        zoo.ring_lens_chart(),
        zoo.twin_lens_chart(),
        zoo.special_oval_chart(),
        zoo.shiftable_chart(),
    ]
    bounds = harness.EnumBounds(n=3, max_white=2, max_black=2, policy=())
    for chart in harness.enumerate_charts(bounds):
        if len(charts) >= 20:
            break
        if len(chart.vertices) <= 10:
            charts.append(chart)
    assert all(len(c.vertices) <= 10 for c in charts)
    return charts[:20]


def criterion_6() -> tuple[bool, str]:
    start = time.time()
    corpus = _corpus_20()
    checked = 0
    for pid in catalog_ids():
        pattern = load_pattern(pid)
        for chart in corpus:
            got = {
                e.signature() + (e.member,) for e in match(chart, pattern, symmetry=True)
            }
            want = {
                e.signature() + (e.member,)
                for e in oracle_match(chart, pattern, symmetry=True)
            }
            if got != want:
                return False, f"{pid} disagrees with the oracle"
            checked += 1
    elapsed = time.time() - start
    if elapsed >= 120:
        return False, f"runtime {elapsed:.0f}s exceeds 2min"
    return True, f"{checked} pattern/chart pairs agree with the oracle ({elapsed:.1f}s)"


# ---------------------------------------------------------------------------
# criterion 7: canonical key vs brute force; enumeration vs naive counts
# ---------------------------------------------------------------------------


def criterion_7() -> tuple[bool, str]:
    charts = _criterion2_charts()
    for a, b in itertools.combinations(charts, 2):
        same = canonical_key(a) == canonical_key(b)
        if same != brute_force_isomorphic(a, b):
            return False, "canonical key disagrees with brute-force isomorphism"
    profiles = [
        harness.EnumBounds(n=2, max_black=2, policy=()),
        harness.EnumBounds(n=3, max_white=1, max_black=2, policy=()),
        harness.EnumBounds(n=3, max_white=2, max_black=2),
        harness.EnumBounds(n=3, max_white=2, max_black=1, max_hoops=1, policy=()),
    ]
    for bounds in profiles:
        fast = harness.enumerate_charts(bounds)
        slow = harness.naive_enumerate(bounds)
        if len(fast) != len(slow) or {canonical_key(c) for c in fast} != {
            canonical_key(c) for c in slow
        }:
            return False, f"naive generator disagrees on {bounds}"
    return True, (
        f"{len(charts)} charts pairwise agree with brute force; "
        f"{len(profiles)} bound profiles match the naive generator"
    )


# ---------------------------------------------------------------------------
# criterion 8: the detector suite
# ---------------------------------------------------------------------------


def criterion_8() -> tuple[bool, str]:
    purpose = zoo.loop7_chart()
    fired = {cert.rule for cert in detector_suite(purpose)}
    for rule in ("Lemma 3.2", "Lemma 10.1", "Assumption 2", "Lemma 3.1"):
        if rule not in fired:
            return False, f"{rule} did not fire on the purpose-built chart"
    if detector_suite(zoo.empty_chart()):
        return False, "detector fired on the empty chart"
    clean = harness.enumerate_charts(
        harness.EnumBounds(n=3, max_white=2, max_black=2)
    )
    for chart in clean:
        if detector_suite(chart):
            return False, "detector fired on a clean enumerated chart"
    return True, f"all four rules fire on the staged chart; silence on {len(clean) + 1} clean charts"


CRITERIA: dict[str, Callable[[], tuple[bool, str]]] = {
    "1 axiom/mutation suite": criterion_1,
    "2 balance fact exhaustive": criterion_2,
    "3 worked balance example": criterion_3,
    "4 move engine": criterion_4,
    "5 scenario suite": criterion_5,
    "6 matcher vs oracle": criterion_6,
    "7 canonical key / enumeration": criterion_7,
    "8 detector suite": criterion_8,
}


def run_acceptance() -> bool:
    ok = True
    for name, fn in CRITERIA.items():
        good, detail = fn()
        print(f"{'PASS' if good else 'FAIL'}  criterion {name}: {detail}")
        ok = ok and good
    return ok
