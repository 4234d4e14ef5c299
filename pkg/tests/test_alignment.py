from __future__ import annotations

import pytest

from seqcomp.alignment import (
    align_by_event,
    build_view,
    first_occurrence,
    key_event_highlight,
    serialize_view,
)
from seqcomp.errors import ConsistencyError

from .conftest import make_seq


def view(rows):
    return build_view("g0-p0", ("a", "b"), rows)


class TestFirstOccurrence:
    @pytest.mark.parametrize(
        "seq,event,expected",
        [("aba", "a", 0), ("ab", "c", None), ("baa", "a", 1)],
    )
    def test_examples(self, seq, event, expected):
        assert first_occurrence(make_seq("s", seq), event) == expected

    def test_accepts_tuples(self):
        assert first_occurrence(("x", "y"), "y") == 1


class TestAlignByEvent:
    def test_offsets_put_event_on_shared_baseline(self):
        v = view([("s1", "A", ("a", "x")), ("s2", "B", ("x", "y", "a"))])
        out = align_by_event(v, "a")
        assert [r.offset for r in out.rows] == [2, 0]
        baselines = {
            r.offset + first_occurrence(r.events, "a") for r in out.rows
        }
        assert baselines == {2}

    def test_equal_first_occurrences_align_trivially(self):
        v = view([("s1", "A", ("a", "x")), ("s2", "B", ("a", "y"))])
        out = align_by_event(v, "a")
        assert [r.offset for r in out.rows] == [0, 0]

    def test_single_sequence(self):
        out = align_by_event(view([("s1", "A", ("x", "a"))]), "a")
        assert out.rows[0].offset == 0

    def test_no_event_resets_offsets(self):
        v = view([("s1", "A", ("a", "x")), ("s2", "B", ("x", "a"))])
        out = align_by_event(align_by_event(v, "a"), None)
        assert [r.offset for r in out.rows] == [0, 0]

    def test_missing_event_violates_support_contract(self):
        v = view([("s1", "A", ("a",)), ("s2", "B", ("x",))])
        with pytest.raises(ConsistencyError, match="s2"):
            align_by_event(v, "a")

    def test_idempotent(self):
        v = view([("s1", "A", ("a", "x")), ("s2", "B", ("x", "y", "a"))])
        once = align_by_event(v, "a")
        twice = align_by_event(once, "a")
        assert once == twice

    def test_never_reorders_or_drops_rows(self):
        rows = [("s1", "A", ("a", "x")), ("s2", "B", ("x", "a")), ("s3", "A", ("a",))]
        out = align_by_event(view(rows), "a")
        assert [r.sid for r in out.rows] == ["s1", "s2", "s3"]
        assert [r.events for r in out.rows] == [r[2] for r in rows]


class TestHighlight:
    def test_vectorized_first_occurrence(self):
        v = view([("s1", "A", ("a", "b", "a")), ("s2", "B", ("a", "b")), ("s3", "A", ("b", "a", "a"))])
        assert key_event_highlight(v, "a") == [0, 0, 1]
        assert key_event_highlight(v, "c") == [None, None, None]


def test_serialization_shape():
    out = align_by_event(view([("s1", "A", ("a", "b"))]), "b")
    doc = serialize_view(out)
    assert doc == {
        "pattern": "g0-p0",
        "keyEvents": ["a", "b"],
        "rows": [{"sid": "s1", "set": "A", "offset": 0, "events": ["a", "b"]}],
    }
