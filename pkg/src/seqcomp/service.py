"""Sessioned HTTP facade exposing the explore-select-compare-align workflow.

Endpoints return plain JSON built by the owning modules' serializers, so a
replayed request script produces byte-identical responses. Requests for the
same session are serialized by a per-session lock; sessions share read-only
datasets and trees.
"""

from __future__ import annotations

import dataclasses
import json
import re
import threading
from dataclasses import dataclass, field
from pathlib import Path
from typing import Literal, Optional

from fastapi import FastAPI, HTTPException, Query, Request
from fastapi.responses import JSONResponse
from pydantic import BaseModel, Field

from . import affix, alignment, layout, mining
from . import dataset as ds
from .errors import SeqcompError, StateError

DEFAULT_MAX_DEPTH = 10
DEFAULT_CANVAS_WIDTH = 960.0
DEFAULT_CANVAS_HEIGHT = 600.0
_PATTERN_ID = re.compile(r"^g(\d+)-p(\d+)$")


@dataclass
class Session:
    id: str
    dataset_name: str
    full: ds.Dataset
    filtered: ds.Dataset
    ptree: affix.AffixTree
    stree: affix.AffixTree
    state: affix.MatrixState
    selection: affix.Selection | None = None
    mining_config: mining.MiningConfig = field(default_factory=mining.MiningConfig)
    patterns: list[mining.Pattern] | None = None
    generation: int = 0
    lock: threading.Lock = field(default_factory=threading.Lock, repr=False)

    def grid(self) -> affix.MatrixGrid:
        return affix.materialize_matrix(self.ptree, self.stree, self.state)


class CreateSessionBody(BaseModel):
    dataset: str


class MatrixOpBody(BaseModel):
    op: Literal[
        "expandCell", "expandRow", "expandColumn", "collapse", "expandAllNextLevel", "collapseAll"
    ]
    rowPath: Optional[list[str]] = None
    colPath: Optional[list[str]] = None


class SortBody(BaseModel):
    metric: Literal["count", "avgLength"]
    order: Literal["ascending", "descending", "none"]


class FilterBody(BaseModel):
    minLen: int = Field(ge=1)
    maxLen: Optional[int] = None


class PickBody(BaseModel):
    mode: Literal["cell", "row", "column"]
    row: Optional[int] = None
    col: Optional[int] = None


class SelectionBody(BaseModel):
    picksA: list[PickBody]
    picksB: list[PickBody]


class _AppState:
    def __init__(self, data_dir: Path, snapshot_dir: Path | None):
        self.manifests = ds.load_manifest_dir(data_dir)
        self.snapshot_dir = snapshot_dir
        self.sessions: dict[str, Session] = {}
        self.datasets: dict[str, ds.Dataset] = {}
        self.counter = 0
        self.lock = threading.Lock()

    def dataset(self, name: str) -> ds.Dataset:
        with self.lock:
            if name not in self.datasets:
                if name not in self.manifests:
                    raise HTTPException(404, f"unknown dataset {name!r}")
                self.datasets[name] = ds.load_dataset(self.manifests[name])
            return self.datasets[name]

    def new_session_id(self) -> str:
        with self.lock:
            self.counter += 1
            return f"s{self.counter}"

    def get(self, session_id: str) -> Session:
        session = self.sessions.get(session_id)
        if session is None:
            raise HTTPException(404, f"unknown session {session_id!r}")
        return session


def _build_session(state: _AppState, name: str, session_id: str,
                   length_filter: tuple[int, int | None] = (3, None)) -> Session:
    full = state.dataset(name)
    filtered = ds.filter_by_length(full, length_filter[0], length_filter[1])
    return Session(
        id=session_id,
        dataset_name=name,
        full=full,
        filtered=filtered,
        ptree=affix.build_prefix_tree(filtered, DEFAULT_MAX_DEPTH),
        stree=affix.build_suffix_tree(filtered, DEFAULT_MAX_DEPTH),
        state=affix.MatrixState(length_filter=length_filter),
    )


def _snapshot(state: _AppState, session: Session) -> None:
    if state.snapshot_dir is None:
        return
    doc = {
        "id": session.id,
        "dataset": session.dataset_name,
        "matrixState": {
            "expandedPrefix": sorted(list(p) for p in session.state.expanded_prefix),
            "expandedSuffix": sorted(list(p) for p in session.state.expanded_suffix),
            "sortMetric": session.state.sort_metric,
            "sortOrder": session.state.sort_order,
            "lengthFilter": list(session.state.length_filter),
            "barMetric": session.state.bar_metric,
        },
        "selection": None
        if session.selection is None
        else {
            "setA": sorted(session.selection.set_a),
            "setB": sorted(session.selection.set_b),
            "provenance": session.selection.provenance,
            "warnings": list(session.selection.warnings),
        },
        "miningConfig": {
            "minSupportPct": session.mining_config.min_support_pct,
            "maxPatternLength": session.mining_config.max_pattern_length,
            "mode": session.mining_config.mode,
        },
        "generation": session.generation,
    }
    state.snapshot_dir.mkdir(parents=True, exist_ok=True)
    path = state.snapshot_dir / f"{session.id}.json"
    path.write_text(json.dumps(doc, indent=2), encoding="utf-8")


def _restore_sessions(state: _AppState) -> None:
    if state.snapshot_dir is None or not state.snapshot_dir.exists():
        return
    highest = 0
    for path in sorted(state.snapshot_dir.glob("*.json")):
        doc = json.loads(path.read_text(encoding="utf-8"))
        ms = doc["matrixState"]
        length_filter = (ms["lengthFilter"][0], ms["lengthFilter"][1])
        session = _build_session(state, doc["dataset"], doc["id"], length_filter)
        session.state = affix.MatrixState(
            expanded_prefix=frozenset(tuple(p) for p in ms["expandedPrefix"]),
            expanded_suffix=frozenset(tuple(p) for p in ms["expandedSuffix"]),
            sort_metric=ms["sortMetric"],
            sort_order=ms["sortOrder"],
            length_filter=length_filter,
            bar_metric=ms["barMetric"],
        )
        if doc["selection"] is not None:
            sel = doc["selection"]
            session.selection = affix.Selection(
                set_a=frozenset(sel["setA"]),
                set_b=frozenset(sel["setB"]),
                provenance=sel["provenance"],
                warnings=tuple(sel["warnings"]),
            )
        mc = doc["miningConfig"]
        session.mining_config = mining.MiningConfig(
            min_support_pct=mc["minSupportPct"],
            max_pattern_length=mc["maxPatternLength"],
            mode=mc["mode"],
        )
        session.generation = doc["generation"]
        state.sessions[session.id] = session
        num = int(session.id[1:]) if session.id[1:].isdigit() else 0
        highest = max(highest, num)
    state.counter = max(state.counter, highest)


def _grid_payload(session: Session, noop: bool = False) -> dict:
    return {"grid": affix.serialize_grid(session.grid()), "noop": noop}


def _ordered_support(p: mining.Pattern, selection: affix.Selection) -> list[tuple[str, str]]:
    """Support ids as (sid, set) with A first; overlap renders as A."""
    a_ids = sorted(sid for sid in p.support_ids if sid in selection.set_a)
    b_ids = sorted(
        sid for sid in p.support_ids if sid in selection.set_b and sid not in selection.set_a
    )
    return [(sid, "A") for sid in a_ids] + [(sid, "B") for sid in b_ids]


def create_app(
    data_dir: str | Path,
    snapshot_dir: str | Path | None = None,
    ui_dir: str | Path | None = None,
) -> FastAPI:
    state = _AppState(Path(data_dir), Path(snapshot_dir) if snapshot_dir else None)
    _restore_sessions(state)
    app = FastAPI(title="seqcomp", version="0.1.0")
    if ui_dir is not None:
        from fastapi.staticfiles import StaticFiles

        app.mount("/ui", StaticFiles(directory=ui_dir, html=True), name="ui")

    @app.exception_handler(StateError)
    async def _state_error(request: Request, exc: StateError):
        return JSONResponse(status_code=409, content={"detail": str(exc)})

    @app.exception_handler(SeqcompError)
    async def _engine_error(request: Request, exc: SeqcompError):
        return JSONResponse(status_code=422, content={"detail": str(exc)})

    @app.exception_handler(ValueError)
    async def _value_error(request: Request, exc: ValueError):
        return JSONResponse(status_code=422, content={"detail": str(exc)})

    @app.get("/datasets")
    def list_datasets():
        return {"datasets": sorted(state.manifests)}

    @app.post("/sessions")
    def create_session(body: CreateSessionBody):
        session_id = state.new_session_id()
        session = _build_session(state, body.dataset, session_id)
        state.sessions[session_id] = session
        _snapshot(state, session)
        st = ds.stats(session.full)
        return {
            "sessionId": session_id,
            "stats": {"count": st.count, "avgLength": st.avg_length},
            "initialGrid": affix.serialize_grid(session.grid()),
        }

    @app.get("/sessions/{session_id}/status")
    def session_status(session_id: str):
        session = state.get(session_id)
        with session.lock:
            return {
                "state": "ready",
                "generation": session.generation,
                "patternsCached": session.patterns is not None,
            }

    @app.get("/sessions/{session_id}/matrix")
    def get_matrix(session_id: str):
        session = state.get(session_id)
        with session.lock:
            return _grid_payload(session)

    @app.post("/sessions/{session_id}/matrix")
    def matrix_op(session_id: str, body: MatrixOpBody):
        session = state.get(session_id)
        with session.lock:
            noop = False
            row = tuple(body.rowPath) if body.rowPath is not None else None
            col = tuple(body.colPath) if body.colPath is not None else None
            if body.op == "expandCell":
                if row is None or col is None:
                    raise HTTPException(422, "expandCell needs rowPath and colPath")
                session.state, row_noop, col_noop = affix.expand_cell(
                    session.state, session.ptree, session.stree, row, col
                )
                noop = row_noop and col_noop
            elif body.op == "expandRow":
                if row is None:
                    raise HTTPException(422, "expandRow needs rowPath")
                session.state, noop = affix.expand_row(session.state, session.stree, row)
            elif body.op == "expandColumn":
                if col is None:
                    raise HTTPException(422, "expandColumn needs colPath")
                session.state, noop = affix.expand_column(session.state, session.ptree, col)
            elif body.op == "collapse":
                if row is None and col is None:
                    raise HTTPException(422, "collapse needs rowPath and/or colPath")
                if row is not None:
                    session.state = affix.collapse(session.state, session.stree, row)
                if col is not None:
                    session.state = affix.collapse(session.state, session.ptree, col)
            elif body.op == "expandAllNextLevel":
                session.state = affix.expand_all_next_level(
                    session.state, session.ptree, session.stree
                )
            else:  # collapseAll
                session.state = affix.collapse_all(session.state)
            _snapshot(state, session)
            return _grid_payload(session, noop)

    @app.post("/sessions/{session_id}/matrix/sort")
    def matrix_sort(session_id: str, body: SortBody):
        session = state.get(session_id)
        with session.lock:
            session.state = dataclasses.replace(
                session.state, sort_metric=body.metric, sort_order=body.order
            )
            _snapshot(state, session)
            return _grid_payload(session)

    @app.post("/sessions/{session_id}/matrix/filter")
    def matrix_filter(session_id: str, body: FilterBody):
        session = state.get(session_id)
        with session.lock:
            if body.maxLen is not None and body.maxLen < body.minLen:
                raise HTTPException(422, "maxLen must be >= minLen")
            length_filter = (body.minLen, body.maxLen)
            session.filtered = ds.filter_by_length(session.full, body.minLen, body.maxLen)
            session.ptree = affix.build_prefix_tree(session.filtered, DEFAULT_MAX_DEPTH)
            session.stree = affix.build_suffix_tree(session.filtered, DEFAULT_MAX_DEPTH)
            session.state = affix.MatrixState(
                sort_metric=session.state.sort_metric,
                sort_order=session.state.sort_order,
                length_filter=length_filter,
                bar_metric=session.state.bar_metric,
            )
            _snapshot(state, session)
            return _grid_payload(session)

    @app.post("/sessions/{session_id}/selection")
    def set_selection(session_id: str, body: SelectionBody):
        session = state.get(session_id)
        with session.lock:
            picks_a = [affix.Pick(p.mode, p.row, p.col) for p in body.picksA]
            picks_b = [affix.Pick(p.mode, p.row, p.col) for p in body.picksB]
            selection = affix.select_sets(session.grid(), picks_a, picks_b)
            if not selection.set_a or not selection.set_b:
                raise HTTPException(422, "both selection sets must be non-empty")
            session.selection = selection
            session.patterns = None
            session.generation += 1
            _snapshot(state, session)
            return {
                "sizeA": len(selection.set_a),
                "sizeB": len(selection.set_b),
                "overlap": len(selection.overlap),
                "warnings": list(selection.warnings),
            }

    @app.get("/sessions/{session_id}/patterns")
    def get_patterns(
        session_id: str,
        minSupport: float = Query(default=30.0, gt=0, le=100),
        mode: Literal["maximal", "frequent"] = "maximal",
        maxLen: int = Query(default=8, ge=1),
        patternLayout: Literal["map2d", "fillx", "filly", "maxfill", "pack"] = "map2d",
        unitLayout: Literal["fillx", "filly", "maxfill", "pack"] = "maxfill",
        sortKey: Literal["supportCount", "patternLength", "none"] = "none",
        width: float = Query(default=DEFAULT_CANVAS_WIDTH, gt=0),
        height: float = Query(default=DEFAULT_CANVAS_HEIGHT, gt=0),
    ):
        session = state.get(session_id)
        with session.lock:
            if session.selection is None:
                raise HTTPException(409, "no selection in this session")
            cfg = mining.MiningConfig(
                min_support_pct=minSupport, max_pattern_length=maxLen, mode=mode
            )
            if session.patterns is None or cfg != session.mining_config:
                if session.patterns is not None:
                    session.generation += 1  # config change invalidates pattern ids
                union = session.selection.set_a | session.selection.set_b
                d_union = ds.Dataset.from_sequences(
                    s for s in session.filtered.sequences if s.id in union
                )
                session.patterns = mining.mine(d_union, cfg, session.selection)
                session.mining_config = cfg
            pids = [f"g{session.generation}-p{i}" for i in range(len(session.patterns))]
            items = layout.make_layout_items(
                zip(pids, session.patterns), session.selection.set_a, session.selection.set_b
            )
            request = layout.LayoutRequest(
                canvas=layout.Rect(0, 0, width, height),
                pattern_layout=patternLayout,
                unit_layout=unitLayout,
                sort_key=sortKey,
            )
            result = layout.compute_layout(request, items)
            return {
                "generation": session.generation,
                "patterns": [
                    mining.serialize_pattern(pid, p) for pid, p in zip(pids, session.patterns)
                ],
                "layout": layout.serialize_layout(result),
            }

    @app.get("/sessions/{session_id}/patterns/{pattern_id}/sequences")
    def get_sequences(session_id: str, pattern_id: str, alignEvent: Optional[str] = None):
        session = state.get(session_id)
        with session.lock:
            match = _PATTERN_ID.match(pattern_id)
            if match is None:
                raise HTTPException(404, f"malformed pattern id {pattern_id!r}")
            generation, index = int(match.group(1)), int(match.group(2))
            if (
                session.patterns is None
                or generation != session.generation
                or index >= len(session.patterns)
            ):
                raise HTTPException(404, f"stale pattern id {pattern_id!r}")
            pattern = session.patterns[index]
            if alignEvent is not None and alignEvent not in pattern.events:
                raise HTTPException(
                    422, f"alignEvent {alignEvent!r} is not a key event of this pattern"
                )
            seq_map = session.filtered.sequence_map()
            rows = [
                (sid, tag, seq_map[sid].event_types())
                for sid, tag in _ordered_support(pattern, session.selection)
            ]
            view = alignment.build_view(pattern_id, pattern.events, rows)
            view = alignment.align_by_event(view, alignEvent)
            return alignment.serialize_view(view)

    return app
