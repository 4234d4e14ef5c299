"""Sequence-level comparison: key-event lookup and vertical alignment offsets.

A pattern's support sequences are rendered top-to-bottom; aligning by a key
event shifts each sequence down so that the event's first occurrence sits
on one shared baseline row.
"""

from __future__ import annotations

from dataclasses import dataclass

from .dataset import Sequence
from .errors import ConsistencyError


@dataclass(frozen=True)
class AlignmentRow:
    sid: str
    set_tag: str  # "A" | "B"
    events: tuple[str, ...]
    offset: int = 0


@dataclass(frozen=True)
class AlignmentView:
    pattern_id: str
    key_events: tuple[str, ...]
    rows: tuple[AlignmentRow, ...]


def first_occurrence(s: Sequence | tuple[str, ...], event_type: str) -> int | None:
    """Index of the first event of the given type, or None."""
    events = s.event_types() if isinstance(s, Sequence) else s
    for i, e in enumerate(events):
        if e == event_type:
            return i
    return None


def build_view(
    pattern_id: str,
    key_events: tuple[str, ...],
    sequences: list[tuple[str, str, tuple[str, ...]]],  # (sid, set tag, event types)
) -> AlignmentView:
    rows = tuple(AlignmentRow(sid=sid, set_tag=tag, events=ev) for sid, tag, ev in sequences)
    return AlignmentView(pattern_id=pattern_id, key_events=key_events, rows=rows)


def align_by_event(view: AlignmentView, event_type: str | None) -> AlignmentView:
    """Offsets that put the event's first occurrence on a common baseline.

    With no event every offset is zero. Every row must contain the event;
    a miss means the rows are not the support set they claim to be.
    """
    if event_type is None:
        rows = tuple(
            AlignmentRow(sid=r.sid, set_tag=r.set_tag, events=r.events) for r in view.rows
        )
        return AlignmentView(view.pattern_id, view.key_events, rows)
    firsts = []
    for r in view.rows:
        idx = first_occurrence(r.events, event_type)
        if idx is None:
            raise ConsistencyError(
                f"sequence {r.sid!r} lacks key event {event_type!r}; not a support row"
            )
        firsts.append(idx)
    baseline = max(firsts, default=0)
    rows = tuple(
        AlignmentRow(sid=r.sid, set_tag=r.set_tag, events=r.events, offset=baseline - idx)
        for r, idx in zip(view.rows, firsts)
    )
    return AlignmentView(view.pattern_id, view.key_events, rows)


def key_event_highlight(view: AlignmentView, event_type: str) -> list[int | None]:
    """First occurrence of the event per row; pure lookup for hover marks."""
    return [first_occurrence(r.events, event_type) for r in view.rows]


def serialize_view(view: AlignmentView) -> dict:
    return {
        "pattern": view.pattern_id,
        "keyEvents": list(view.key_events),
        "rows": [
            {"sid": r.sid, "set": r.set_tag, "offset": r.offset, "events": list(r.events)}
            for r in view.rows
        ],
    }
