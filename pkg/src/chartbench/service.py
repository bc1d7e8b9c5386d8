"""JSON-over-HTTP service: validation, analysis, moves, matching, scenario
replay, and in-memory editing sessions."""

from __future__ import annotations

import itertools
import threading
from typing import Optional

from fastapi import FastAPI, HTTPException
from pydantic import BaseModel

from . import analysis, zoo
from .iocalc import all_domains, io_tally, make_domain
from .model import Chart, OperationError, build_chart, canonical_key, to_payload, validate
from .moves import applicable_moves, apply_move, run_script, script_from_payload, spec_from_payload
from .patterns import catalog_ids, load_pattern, match, pattern_to_payload
from .scenarios import run_scenario, scenario_ids

CATALOG_CHARTS = {
    "empty": lambda: zoo.empty_chart(3),
    "free-edge": zoo.free_edge_chart,
    "oval": zoo.oval_chart,
    "lens": zoo.lens_chart,
    "cut-lens": zoo.cut_lens_chart,
    "hoop": zoo.hoop_chart,
    "three-rings": zoo.three_rings_chart,
    "ring-lens": zoo.ring_lens_chart,
    "twin-lens": zoo.twin_lens_chart,
    "dip": zoo.dip_chart,
    "special-oval": zoo.special_oval_chart,
    "shiftable": zoo.shiftable_chart,
    "seven-white": zoo.seven_white_chart,
    "seven-white-a": zoo.seven_white_a_chart,
    "fig25": zoo.fig25_chart,
}


class ChartIn(BaseModel):
    chart: dict
    policy: Optional[list[str]] = None


class SiteIn(BaseModel):
    chart: dict
    site: Optional[dict] = None


class ApplyIn(BaseModel):
    chart: dict
    move: dict
    pinned_edges: Optional[list[str]] = None
    pinned_vertices: Optional[list[str]] = None


class MatchIn(BaseModel):
    chart: dict
    pattern: str
    symmetry: bool = True


class SessionOpen(BaseModel):
    chart: Optional[dict] = None
    catalog: Optional[str] = None


class SessionApply(BaseModel):
    move: dict


def _chart(payload: dict) -> Chart:
    try:
        return build_chart(payload)
    except Exception as exc:
        raise HTTPException(status_code=422, detail=str(exc))


def _invariants(chart: Chart) -> dict:
    cen = analysis.census(chart)
    tv = analysis.type_of(chart)
    cx = analysis.complexity(chart)
    return {
        "w": cen.w,
        "b": cen.b,
        "c": cen.c,
        "f": cen.f,
        "type": None if tv is None else {"m": tv.m, "counts": list(tv.counts)},
        "complexity": [cx.w, cx.neg_f],
    }


def analysis_report(chart: Chart) -> dict:
    report = {
        "invariants": _invariants(chart),
        "labels": {},
        "validation": validation_payload(chart, None),
    }
    for m in chart.labels():
        g = analysis.gamma(chart, m)
        cen = analysis.census(chart, subgraph=g)
        inv = analysis.closed_curves(chart, m)
        disks = analysis.angled_disks(chart, m)
        report["labels"][str(m)] = {
            "census": {"w": cen.w, "b": cen.b, "c": cen.c, "f": cen.f},
            "components": len(g.components),
            "hoops": list(inv.hoops),
            "rings": len(inv.rings),
            "loops": len(inv.loops),
            "angled_disks": [
                {
                    "k": d.k,
                    "feelers": len(d.feelers),
                    "special": d.special,
                    "interior_whites": analysis.interior_white_count(chart, d),
                }
                for d in disks
            ],
        }
    return report


def validation_payload(chart: Chart, policy) -> dict:
    rep = validate(chart, policy=tuple(policy) if policy is not None else ("A2", "A3", "A4"))
    return {
        "verdict": rep.verdict,
        "policy": list(rep.policy),
        "violations": [{"rule": v.rule, "locus": v.locus} for v in rep.violations],
    }


class SessionStore:
    def __init__(self):
        self._lock = threading.Lock()
        self._sessions: dict[str, dict] = {}
        self._counter = itertools.count(1)

    def open(self, chart: Chart) -> str:
        with self._lock:
            sid = f"s{next(self._counter)}"
            self._sessions[sid] = {"chart": chart, "undo": []}
            return sid

    def get(self, sid: str) -> dict:
        with self._lock:
            sess = self._sessions.get(sid)
            if sess is None:
                raise HTTPException(status_code=404, detail=f"no session {sid}")
            return sess


def create_app() -> FastAPI:
    app = FastAPI(title="chartbench", version="0.1.0")
    store = SessionStore()

    @app.get("/v1/catalog/patterns")
    def patterns_index():
        return {"patterns": catalog_ids()}

    @app.get("/v1/catalog/patterns/{pid}")
    def pattern_show(pid: str):
        try:
            return pattern_to_payload(load_pattern(pid))
        except OperationError as exc:
            raise HTTPException(status_code=404, detail=str(exc))

    @app.get("/v1/catalog/charts")
    def charts_index():
        return {"charts": sorted(CATALOG_CHARTS)}

    @app.get("/v1/catalog/charts/{name}")
    def chart_show(name: str):
        fn = CATALOG_CHARTS.get(name)
        if fn is None:
            raise HTTPException(status_code=404, detail=f"no catalog chart {name}")
        return to_payload(fn())

    @app.post("/v1/validate")
    def validate_endpoint(body: ChartIn):
        chart = _chart(body.chart)
        return validation_payload(chart, body.policy)

    @app.post("/v1/analyze")
    def analyze_endpoint(body: ChartIn):
        return analysis_report(_chart(body.chart))

    @app.post("/v1/moves/applicable")
    def applicable_endpoint(body: SiteIn):
        chart = _chart(body.chart)
        moves = applicable_moves(chart, body.site)
        return {"moves": [m.to_payload() for m in moves]}

    @app.post("/v1/moves/apply")
    def apply_endpoint(body: ApplyIn):
        chart = _chart(body.chart)
        try:
            mv = spec_from_payload(body.move)
            out = apply_move(
                chart,
                mv,
                frozenset(body.pinned_edges or ()),
                frozenset(body.pinned_vertices or ()),
            )
        except OperationError as exc:
            raise HTTPException(status_code=409, detail=str(exc))
        return {"chart": to_payload(out), "key": canonical_key(out)}

    @app.post("/v1/patterns/match")
    def match_endpoint(body: MatchIn):
        chart = _chart(body.chart)
        try:
            pattern = load_pattern(body.pattern)
        except OperationError as exc:
            raise HTTPException(status_code=404, detail=str(exc))
        found = match(chart, pattern, symmetry=body.symmetry)
        return {
            "embeddings": [
                {
                    "m": e.m,
                    "eps": e.eps,
                    "member": e.member,
                    "vertices": dict(e.vertex_map),
                }
                for e in found
            ]
        }

    @app.post("/v1/scenarios/{sid}/run")
    def scenario_endpoint(sid: str):
        try:
            result = run_scenario(sid)
        except OperationError as exc:
            raise HTTPException(status_code=404, detail=str(exc))
        return {"id": result.id, "ok": result.ok, "steps": result.steps}

    @app.get("/v1/scenarios")
    def scenarios_index():
        return {"scenarios": scenario_ids()}

    def session_state(sid: str) -> dict:
        sess = store.get(sid)
        chart = sess["chart"]
        return {
            "session": sid,
            "chart": to_payload(chart),
            "key": canonical_key(chart),
            "invariants": _invariants(chart),
            "undo_depth": len(sess["undo"]),
        }

    @app.post("/v1/sessions")
    def session_open(body: SessionOpen):
        if body.chart is not None:
            chart = _chart(body.chart)
        elif body.catalog is not None:
            fn = CATALOG_CHARTS.get(body.catalog)
            if fn is None:
                raise HTTPException(status_code=404, detail=f"no catalog chart {body.catalog}")
            chart = fn()
        else:
            chart = zoo.empty_chart(3)
        sid = store.open(chart)
        return session_state(sid)

    @app.get("/v1/sessions/{sid}")
    def session_get(sid: str):
        return session_state(sid)

    @app.post("/v1/sessions/{sid}/apply")
    def session_apply(sid: str, body: SessionApply):
        sess = store.get(sid)
        chart = sess["chart"]
        try:
            mv = spec_from_payload(body.move)
            out = apply_move(chart, mv)
        except OperationError as exc:
            raise HTTPException(status_code=409, detail=str(exc))
        sess["undo"].append(chart)
        sess["chart"] = out
        return session_state(sid)

    @app.post("/v1/sessions/{sid}/undo")
    def session_undo(sid: str):
        sess = store.get(sid)
        if not sess["undo"]:
            raise HTTPException(status_code=409, detail="nothing to undo")
        sess["chart"] = sess["undo"].pop()
        return session_state(sid)

    return app


app = create_app()
