"""Sequential pattern mining over the union of two selected sequence sets.

``mine`` is a bitmap depth-first miner: every event type gets an occurrence
bitmap over all sequence positions, and a pattern is extended by masking
everything up to the first match and intersecting with the next event's
bitmap. ``brute_force_mine`` is the independent oracle: it enumerates the
subsequences of every sequence and filters them by the very definitions.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Iterable, Mapping, Sequence as Seq

import numpy as np

from . import kernels
from .dataset import Dataset, Sequence
from .errors import ConsistencyError, SizeGuardError


@dataclass(frozen=True)
class Pattern:
    """A mined pattern with its exact support set and per-origin counts."""

    events: tuple[str, ...]
    support_ids: frozenset[str]
    support_pct: float
    count_a: int = 0
    count_b: int = 0


@dataclass(frozen=True)
class MiningConfig:
    min_support_pct: float = 30.0
    max_pattern_length: int = 8
    mode: str = "maximal"

    def __post_init__(self) -> None:
        if not 0 < self.min_support_pct <= 100:
            raise ValueError("min_support_pct must be in (0, 100]")
        if self.max_pattern_length < 1:
            raise ValueError("max_pattern_length must be >= 1")
        if self.mode not in ("maximal", "frequent"):
            raise ValueError(f"unknown mining mode {self.mode!r}")


def _meets_support(count: int, total: int, min_pct: float) -> bool:
    # 100*count/total >= min_pct; slack only guards float rounding of min_pct.
    return 100.0 * count >= min_pct * total - 1e-9


def is_subsequence(pattern: Iterable[str], s: Sequence | Seq[str]) -> bool:
    """True iff the pattern's events occur in order in s, gaps allowed."""
    events = s.event_types() if isinstance(s, Sequence) else s
    it = iter(events)
    return all(p in it for p in pattern)


def _sort_patterns(patterns: list[Pattern]) -> list[Pattern]:
    return sorted(patterns, key=lambda p: (-len(p.support_ids), p.events))


class _BitmapIndex:
    """Per-event-type occurrence bitmaps, one uint64-word row set per sequence."""

    def __init__(self, d: Dataset):
        self.ids = [s.id for s in d.sequences]
        self.n = len(self.ids)
        self.types = sorted(d.alphabet)
        type_id = {t: k for k, t in enumerate(self.types)}
        max_len = max((len(s) for s in d.sequences), default=1)
        self.n_words = (max_len + 63) // 64
        self.event_bm = np.zeros((len(self.types), self.n, self.n_words), dtype=np.uint64)
        for i, s in enumerate(d.sequences):
            for j, e in enumerate(s.events):
                self.event_bm[type_id[e.event_type], i, j // 64] |= np.uint64(1 << (j % 64))

    def support_ids(self, bm: np.ndarray) -> frozenset[str]:
        mask = np.zeros(self.n, dtype=np.uint8)
        kernels.occupied_rows(bm, mask)
        return frozenset(self.ids[i] for i in np.flatnonzero(mask))


def mine(d_union: Dataset, cfg: MiningConfig, selection=None) -> list[Pattern]:
    """Mine frequent or maximal patterns, deterministically ordered.

    Order: descending support-set size, then lexicographic events. When a
    ``Selection`` is passed, per-set counts are filled via ``tag_support``.
    """
    if len(d_union) == 0:
        raise ValueError("cannot mine an empty dataset")
    index = _BitmapIndex(d_union)
    total = index.n
    cap = cfg.max_pattern_length

    frequent_types = [
        k
        for k in range(len(index.types))
        if _meets_support(
            int(np.count_nonzero(index.event_bm[k].any(axis=1))), total, cfg.min_support_pct
        )
    ]

    collected: list[tuple[tuple[int, ...], np.ndarray]] = []
    # Grown only in maximal mode: candidates surviving the running subsumption check.
    maximal: list[tuple[tuple[int, ...], np.ndarray]] = []

    def extend(prefix: tuple[int, ...], bm: np.ndarray) -> None:
        children = []
        if len(prefix) < cap:
            for k in frequent_types:
                out = np.empty_like(bm)
                support = kernels.sstep_and(bm, index.event_bm[k], out)
                if _meets_support(support, total, cfg.min_support_pct):
                    children.append((prefix + (k,), out))
        if cfg.mode == "frequent":
            collected.append((prefix, bm))
        elif not children:
            # A pattern with no frequent extension is maximal unless an
            # already-found pattern subsumes it; it may subsume earlier finds.
            if not any(is_subsequence(prefix, other) for other, _ in maximal):
                maximal[:] = [entry for entry in maximal if not is_subsequence(entry[0], prefix)]
                maximal.append((prefix, bm))
        for child_prefix, child_bm in children:
            extend(child_prefix, child_bm)

    for k in frequent_types:
        extend((k,), index.event_bm[k].copy())

    found = collected if cfg.mode == "frequent" else maximal
    patterns = []
    for prefix, bm in found:
        ids = index.support_ids(bm)
        patterns.append(
            Pattern(
                events=tuple(index.types[k] for k in prefix),
                support_ids=ids,
                support_pct=100.0 * len(ids) / total,
            )
        )
    patterns = _sort_patterns(patterns)
    return tag_support(patterns, selection) if selection is not None else patterns


# Size guard for the oracle; enumeration is exponential past desk scale.
_GUARD_MAX_SEQUENCES = 30
_GUARD_MAX_LENGTH = 10
_GUARD_MAX_ALPHABET = 6


def brute_force_mine(d_union: Dataset, cfg: MiningConfig) -> list[Pattern]:
    """Definitional oracle for ``mine``: enumerate, count, filter.

    Refuses instances beyond a small size guard; supports are recomputed
    per pattern with ``is_subsequence`` rather than any bitmap machinery.
    """
    from itertools import combinations

    if len(d_union) == 0:
        raise ValueError("cannot mine an empty dataset")
    if len(d_union) > _GUARD_MAX_SEQUENCES:
        raise SizeGuardError(f"too many sequences for brute force (> {_GUARD_MAX_SEQUENCES})")
    if any(len(s) > _GUARD_MAX_LENGTH for s in d_union.sequences):
        raise SizeGuardError(f"sequence too long for brute force (> {_GUARD_MAX_LENGTH})")
    if len(d_union.alphabet) > _GUARD_MAX_ALPHABET:
        raise SizeGuardError(f"alphabet too large for brute force (> {_GUARD_MAX_ALPHABET})")

    candidates: set[tuple[str, ...]] = set()
    for s in d_union.sequences:
        types = s.event_types()
        for length in range(1, min(len(types), cfg.max_pattern_length) + 1):
            for positions in combinations(range(len(types)), length):
                candidates.add(tuple(types[i] for i in positions))

    total = len(d_union)
    frequent: dict[tuple[str, ...], frozenset[str]] = {}
    for cand in candidates:
        ids = frozenset(s.id for s in d_union.sequences if is_subsequence(cand, s))
        if _meets_support(len(ids), total, cfg.min_support_pct):
            frequent[cand] = ids

    if cfg.mode == "maximal":
        kept = {
            cand: ids
            for cand, ids in frequent.items()
            if not any(other != cand and is_subsequence(cand, other) for other in frequent)
        }
    else:
        kept = frequent

    patterns = [
        Pattern(events=cand, support_ids=ids, support_pct=100.0 * len(ids) / total)
        for cand, ids in kept.items()
    ]
    return _sort_patterns(patterns)


def tag_support(patterns: list[Pattern], selection) -> list[Pattern]:
    """Fill count_a/count_b from the selection; sequences in both count twice."""
    set_a: frozenset[str] = selection.set_a
    set_b: frozenset[str] = selection.set_b
    known = set_a | set_b
    tagged = []
    for p in patterns:
        orphans = p.support_ids - known
        if orphans:
            raise ConsistencyError(
                f"support ids {sorted(orphans)} of pattern {p.events} are in neither set"
            )
        tagged.append(
            replace(p, count_a=len(p.support_ids & set_a), count_b=len(p.support_ids & set_b))
        )
    return tagged


def serialize_pattern(pattern_id: str, p: Pattern) -> dict:
    return {
        "id": pattern_id,
        "events": list(p.events),
        "support": {
            "pct": p.support_pct,
            "count": len(p.support_ids),
            "countA": p.count_a,
            "countB": p.count_b,
        },
        "sequenceIds": sorted(p.support_ids),
    }
