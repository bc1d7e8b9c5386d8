"""Command line interface."""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import analysis, harness, zoo
from .iocalc import io_feasible, io_tally, make_domain, profile_from_payload
from .macros import search_reduction
from .model import dumps, loads, validate
from .moves import apply_move, run_script, script_from_payload, spec_from_payload, applicable_moves
from .patterns import catalog_ids, load_pattern, match, pattern_to_payload
from .scenarios import run_all, run_scenario, scenario_ids


def _read_chart(path: str):
    return loads(Path(path).read_text())


def cmd_validate(args) -> int:
    chart = _read_chart(args.file)
    policy = tuple(args.policy.split(",")) if args.policy else ("A2", "A3", "A4")
    policy = tuple(p for p in policy if p)
    rep = validate(chart, policy=policy)
    print(f"verdict: {'pass' if rep.verdict else 'fail'}")
    for v in rep.violations:
        print(f"  {v.rule}: {v.locus}")
    return 0 if rep.verdict else 1


def cmd_analyze(args) -> int:
    chart = _read_chart(args.file)
    cen = analysis.census(chart)
    tv = analysis.type_of(chart)
    cx = analysis.complexity(chart)
    print(f"census: w={cen.w} b={cen.b} c={cen.c} f={cen.f}")
    print(f"type: {tv if tv is not None else 'none (no white vertices)'}")
    print(f"complexity: ({cx.w}, {cx.neg_f})")
    for m in chart.labels():
        g = analysis.gamma(chart, m)
        sub = analysis.census(chart, subgraph=g)
        inv = analysis.closed_curves(chart, m)
        disks = analysis.angled_disks(chart, m)
        print(
            f"label {m}: w={sub.w} b={sub.b} c={sub.c} components={len(g.components)}"
            f" hoops={len(inv.hoops)} rings={len(inv.rings)} loops={len(inv.loops)}"
        )
        for d in disks:
            print(
                f"  {d.k}-angled disk: feelers={len(d.feelers)}"
                f" special={d.special}"
                f" interior_whites={analysis.interior_white_count(chart, d)}"
            )
    return 0


def cmd_move(args) -> int:
    chart = _read_chart(args.file)
    if args.action == "applicable":
        site = json.loads(args.site) if args.site else None
        for m in applicable_moves(chart, site):
            print(json.dumps(m.to_payload(), sort_keys=True))
        return 0
    if args.action == "apply":
        mv = spec_from_payload(json.loads(args.spec))
        out = apply_move(chart, mv)
        sys.stdout.write(dumps(out))
        return 0
    if args.action == "script":
        script = script_from_payload(json.loads(Path(args.script).read_text()))
        out, trace = run_script(chart, script)
        for i, key in enumerate(trace):
            print(f"step {i}: {key[:60]}...", file=sys.stderr)
        sys.stdout.write(dumps(out))
        return 0
    if args.action == "search":
        found = search_reduction(chart, depth=args.depth, budget=args.budget)
        if found is None:
            print("no reduction found within bounds (proves nothing)")
            return 1
        script, cert = found
        print(f"certificate: {cert.rule}: {cert.witness}")
        print(json.dumps(script.to_payload(), indent=2, sort_keys=True))
        return 0
    raise SystemExit(f"unknown move action {args.action}")


def cmd_enumerate(args) -> int:
    bounds = harness.EnumBounds(
        n=args.n,
        max_white=args.max_white,
        max_black=args.max_black,
        max_crossings=args.max_crossings,
        max_hoops=args.max_hoops,
        policy=tuple(p for p in args.policy.split(",") if p),
    )
    charts = harness.enumerate_charts(bounds)
    print(f"{len(charts)} charts", file=sys.stderr)
    for i, chart in enumerate(charts):
        if args.out:
            Path(args.out, f"chart{i:04d}.json").write_text(dumps(chart))
        else:
            print(f"chart {i}: w={chart.count('white')} b={chart.count('black')} "
                  f"c={chart.count('crossing')} hoops={len(chart.hoops)}")
    return 0


def cmd_match(args) -> int:
    chart = _read_chart(args.file)
    pattern = load_pattern(args.pattern)
    found = match(chart, pattern, symmetry=not args.no_symmetry)
    for e in found:
        print(
            json.dumps(
                {"m": e.m, "eps": e.eps, "member": e.member, "vertices": dict(e.vertex_map)},
                sort_keys=True,
            )
        )
    print(f"{len(found)} embeddings", file=sys.stderr)
    return 0


def cmd_iocalc(args) -> int:
    if args.profile:
        payload = json.loads(Path(args.profile).read_text())
        profile, budget = profile_from_payload(payload)
        res = io_feasible(profile, args.budget if args.budget is not None else budget)
        print(f"feasible: {res.feasible}")
        if res.certificate:
            print(f"certificate: inward {res.certificate[0]}, outward {res.certificate[1]}")
        if res.witness:
            for a, b in res.witness:
                print(f"  strand: {a} -> {b}")
        return 0 if res.feasible else 1
    chart = _read_chart(args.file)
    faces = args.domain.split(";") if args.domain else [f.key for f in chart.faces()]
    dom = make_domain(chart, faces, args.label)
    inward, outward = io_tally(chart, dom)
    print(f"inward: {inward}, outward: {outward}")
    return 0 if inward == outward else 1


def cmd_scenario(args) -> int:
    if args.id == "all":
        results = run_all()
    else:
        results = [run_scenario(args.id)]
    bad = 0
    for r in results:
        print(f"{'PASS' if r.ok else 'FAIL'} {r.id}")
        for step in r.steps:
            print(f"  {step}")
        bad += 0 if r.ok else 1
    return 1 if bad else 0


def cmd_catalog(args) -> int:
    if args.id:
        print(json.dumps(pattern_to_payload(load_pattern(args.id)), indent=2, sort_keys=True))
    else:
        for pid in catalog_ids():
            print(pid)
    return 0


def cmd_serve(args) -> int:
    import uvicorn

    from .service import create_app

    uvicorn.run(create_app(), host=args.host, port=args.port, log_level="warning")
    return 0


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(prog="chartbench")
    sub = ap.add_subparsers(dest="cmd", required=True)

    p = sub.add_parser("validate", help="check the chart axioms and assumptions")
    p.add_argument("file")
    p.add_argument("--policy", default="A2,A3,A4", help="comma list; empty for axioms only")
    p.set_defaults(fn=cmd_validate)

    p = sub.add_parser("analyze", help="censuses, type, closed curves, angled disks")
    p.add_argument("file")
    p.set_defaults(fn=cmd_analyze)

    p = sub.add_parser("move", help="apply or search rewriting moves")
    p.add_argument("action", choices=["applicable", "apply", "script", "search"])
    p.add_argument("file")
    p.add_argument("--spec", help="move spec JSON (apply)")
    p.add_argument("--script", help="script file (script)")
    p.add_argument("--site", help="site filter JSON (applicable)")
    p.add_argument("--depth", type=int, default=2)
    p.add_argument("--budget", type=int, default=200)
    p.set_defaults(fn=cmd_move)

    p = sub.add_parser("enumerate", help="isomorph-free enumeration of small charts")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--max-white", type=int, default=0)
    p.add_argument("--max-black", type=int, default=0)
    p.add_argument("--max-crossings", type=int, default=0)
    p.add_argument("--max-hoops", type=int, default=0)
    p.add_argument("--policy", default="A2,A3,A4")
    p.add_argument("--out", help="directory to write chart files")
    p.set_defaults(fn=cmd_enumerate)

    p = sub.add_parser("match", help="find pattern embeddings")
    p.add_argument("file")
    p.add_argument("--pattern", required=True)
    p.add_argument("--no-symmetry", action="store_true")
    p.set_defaults(fn=cmd_match)

    p = sub.add_parser("iocalc", help="balance tallies and feasibility")
    p.add_argument("file", nargs="?")
    p.add_argument("--domain", help="semicolon-separated face keys")
    p.add_argument("--label", type=int)
    p.add_argument("--profile", help="ioprofile/v1 file")
    p.add_argument("--budget", type=int)
    p.set_defaults(fn=cmd_iocalc)

    p = sub.add_parser("scenario", help="replay the proof-step scenarios")
    p.add_argument("action", choices=["run"])
    p.add_argument("id", help="scenario id or 'all'")
    p.set_defaults(fn=cmd_scenario)

    p = sub.add_parser("catalog", help="list or show catalog patterns")
    p.add_argument("id", nargs="?")
    p.set_defaults(fn=cmd_catalog)

    p = sub.add_parser("serve", help="run the JSON-over-HTTP service")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8077)
    p.set_defaults(fn=cmd_serve)

    args = ap.parse_args(argv)
    return args.fn(args)


if __name__ == "__main__":
    raise SystemExit(main())
