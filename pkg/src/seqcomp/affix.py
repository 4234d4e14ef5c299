"""Prefix/suffix trees over a dataset and the multi-scale matrix between them.

Prefix-tree paths run from the first event forward; suffix-tree paths are
handled end-aligned everywhere in this API (the last element of a suffix
path is the sequence's final event). Only the internal traversal reverses
them. Trees are immutable; state transitions return new states.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Iterable, Mapping

from .dataset import Dataset
from .errors import StateError

Path = tuple[str, ...]


@dataclass(frozen=True)
class AffixNode:
    event_type: str  # "" at the root
    depth: int
    children: tuple["AffixNode", ...]
    member_ids: frozenset[str]
    count: int
    avg_length: float


@dataclass(frozen=True)
class AffixTree:
    root: AffixNode
    kind: str  # "prefix" | "suffix"
    lengths: Mapping[str, int]  # sequence id -> event count, for residual stats


def _mean_length(ids: Iterable[str], lengths: Mapping[str, int]) -> float:
    ids = list(ids)
    if not ids:
        return 0.0
    return sum(lengths[i] for i in ids) / len(ids)


def _build_tree(d: Dataset, kind: str, max_depth: int) -> AffixTree:
    if max_depth < 1:
        raise ValueError("max_depth must be >= 1")
    lengths = {s.id: len(s) for s in d.sequences}
    views: dict[str, tuple[str, ...]] = {}
    for s in d.sequences:
        types = s.event_types()
        views[s.id] = types if kind == "prefix" else types[::-1]

    def make(event_type: str, depth: int, members: list[str]) -> AffixNode:
        children: tuple[AffixNode, ...] = ()
        if depth < max_depth:
            groups: dict[str, list[str]] = {}  # first-touch order
            for sid in members:
                types = views[sid]
                if len(types) > depth:
                    groups.setdefault(types[depth], []).append(sid)
            children = tuple(
                make(ev, depth + 1, group) for ev, group in groups.items()
            )
        return AffixNode(
            event_type=event_type,
            depth=depth,
            children=children,
            member_ids=frozenset(members),
            count=len(members),
            avg_length=_mean_length(members, lengths),
        )

    root = make("", 0, [s.id for s in d.sequences])
    return AffixTree(root=root, kind=kind, lengths=lengths)


def build_prefix_tree(d: Dataset, max_depth: int = 10) -> AffixTree:
    """Group sequences by their first k events, k up to max_depth."""
    return _build_tree(d, "prefix", max_depth)


def build_suffix_tree(d: Dataset, max_depth: int = 10) -> AffixTree:
    """Group sequences by their last k events; paths are end-aligned."""
    return _build_tree(d, "suffix", max_depth)


def _traversal_order(kind: str, path: Path) -> Path:
    return path if kind == "prefix" else path[::-1]


def _child_path(kind: str, parent: Path, event_type: str) -> Path:
    return parent + (event_type,) if kind == "prefix" else (event_type,) + parent


def _parent_path(kind: str, path: Path) -> Path:
    return path[:-1] if kind == "prefix" else path[1:]


def node_at(tree: AffixTree, path: Iterable[str]) -> AffixNode:
    """Node for a (prefix, or end-aligned suffix) path; StateError if absent."""
    path = tuple(path)
    node = tree.root
    for step in _traversal_order(tree.kind, path):
        for child in node.children:
            if child.event_type == step:
                node = child
                break
        else:
            raise StateError(f"path {list(path)} not in {tree.kind} tree")
    return node


@dataclass(frozen=True)
class FrontierEntry:
    """One visible row or column: a tree node, or a residual for sequences
    that terminate at an expanded node's depth."""

    path: Path
    residual: bool
    member_ids: frozenset[str]
    count: int
    avg_length: float
    depth: int


def visible_frontier(tree: AffixTree, expanded: Iterable[Path]) -> list[FrontierEntry]:
    """Visible nodes for an expansion state, in depth-first sibling order.

    Every expanded node contributes its unexpanded children, plus a residual
    entry (listed first) when member sequences terminate at its own depth,
    so that frontier counts always sum to the dataset size.
    """
    expanded_set = {tuple(p) for p in expanded} | {()}
    for p in expanded_set:
        node_at(tree, p)  # raises StateError for unknown paths
        if p and _parent_path(tree.kind, p) not in expanded_set:
            raise StateError(f"expanded set not ancestor-closed at {list(p)}")

    out: list[FrontierEntry] = []

    def visit(node: AffixNode, path: Path) -> None:
        covered = frozenset().union(*(c.member_ids for c in node.children)) if node.children else frozenset()
        residual = node.member_ids - covered
        if residual:
            out.append(
                FrontierEntry(
                    path=path,
                    residual=True,
                    member_ids=residual,
                    count=len(residual),
                    avg_length=_mean_length(residual, tree.lengths),
                    depth=node.depth,
                )
            )
        for child in node.children:
            cpath = _child_path(tree.kind, path, child.event_type)
            if cpath in expanded_set:
                visit(child, cpath)
            else:
                out.append(
                    FrontierEntry(
                        path=cpath,
                        residual=False,
                        member_ids=child.member_ids,
                        count=child.count,
                        avg_length=child.avg_length,
                        depth=child.depth,
                    )
                )

    visit(tree.root, ())
    return out


@dataclass(frozen=True)
class MatrixState:
    expanded_prefix: frozenset[Path] = frozenset({()})
    expanded_suffix: frozenset[Path] = frozenset({()})
    sort_metric: str = "count"
    sort_order: str = "none"
    length_filter: tuple[int, int | None] = (3, None)
    bar_metric: str = "count"

    def __post_init__(self) -> None:
        if self.sort_metric not in ("count", "avgLength"):
            raise ValueError(f"unknown sort metric {self.sort_metric!r}")
        if self.sort_order not in ("ascending", "descending", "none"):
            raise ValueError(f"unknown sort order {self.sort_order!r}")
        if self.bar_metric not in ("count", "avgLength"):
            raise ValueError(f"unknown bar metric {self.bar_metric!r}")


@dataclass(frozen=True)
class MatrixCell:
    member_ids: frozenset[str]
    count: int
    avg_length: float


@dataclass(frozen=True)
class MatrixGrid:
    columns: tuple[FrontierEntry, ...]  # prefix frontier
    rows: tuple[FrontierEntry, ...]  # suffix frontier
    cells: tuple[tuple[MatrixCell, ...], ...]  # cells[row][col]
    max_cell_count: int


def sort_siblings(tree: AffixTree, metric: str, order: str) -> AffixTree:
    """Reorder sibling lists by a metric; ties fall back to event-type order."""
    if metric not in ("count", "avgLength"):
        raise ValueError(f"unknown sort metric {metric!r}")
    if order not in ("ascending", "descending", "none"):
        raise ValueError(f"unknown sort order {order!r}")
    if order == "none":
        return tree

    value = (lambda n: n.count) if metric == "count" else (lambda n: n.avg_length)

    def rebuild(node: AffixNode) -> AffixNode:
        kids = [rebuild(c) for c in node.children]
        kids.sort(key=lambda c: c.event_type)
        kids.sort(key=value, reverse=(order == "descending"))
        return replace(node, children=tuple(kids))

    return replace(tree, root=rebuild(tree.root))


def materialize_matrix(ptree: AffixTree, stree: AffixTree, state: MatrixState) -> MatrixGrid:
    """The visible grid: prefix frontier as columns, suffix frontier as rows,
    each cell holding the sequences that satisfy both affix constraints."""
    if ptree.root.member_ids != stree.root.member_ids:
        raise ValueError("prefix and suffix trees were built from different datasets")
    psorted = sort_siblings(ptree, state.sort_metric, state.sort_order)
    ssorted = sort_siblings(stree, state.sort_metric, state.sort_order)
    columns = tuple(visible_frontier(psorted, state.expanded_prefix))
    rows = tuple(visible_frontier(ssorted, state.expanded_suffix))

    lengths = ptree.lengths
    cells = []
    max_count = 0
    for r in rows:
        row_cells = []
        for c in columns:
            members = r.member_ids & c.member_ids
            row_cells.append(
                MatrixCell(
                    member_ids=members,
                    count=len(members),
                    avg_length=_mean_length(members, lengths),
                )
            )
            max_count = max(max_count, len(members))
        cells.append(tuple(row_cells))
    return MatrixGrid(columns=columns, rows=rows, cells=tuple(cells), max_cell_count=max_count)


def serialize_grid(grid: MatrixGrid) -> dict:
    def entry(e: FrontierEntry) -> dict:
        return {
            "path": list(e.path),
            "count": e.count,
            "avgLength": e.avg_length,
            "residual": e.residual,
        }

    return {
        "columns": [entry(c) for c in grid.columns],
        "rows": [entry(r) for r in grid.rows],
        "cells": [
            [{"count": c.count, "avgLength": c.avg_length} for c in row] for row in grid.cells
        ],
        "maxCellCount": grid.max_cell_count,
    }


def _expand_one(state: MatrixState, tree: AffixTree, path: Path) -> tuple[MatrixState, bool]:
    path = tuple(path)
    node = node_at(tree, path)
    expanded = state.expanded_prefix if tree.kind == "prefix" else state.expanded_suffix
    if path and _parent_path(tree.kind, path) not in expanded:
        raise StateError(f"cannot expand {list(path)}: parent is not expanded")
    if not node.children:
        return state, True  # leaf: no-op, flagged
    if path in expanded:
        return state, False
    new = frozenset(expanded | {path})
    if tree.kind == "prefix":
        return replace(state, expanded_prefix=new), False
    return replace(state, expanded_suffix=new), False


def expand_column(state: MatrixState, ptree: AffixTree, col_path: Path) -> tuple[MatrixState, bool]:
    if ptree.kind != "prefix":
        raise ValueError("expand_column expects the prefix tree")
    return _expand_one(state, ptree, col_path)


def expand_row(state: MatrixState, stree: AffixTree, row_path: Path) -> tuple[MatrixState, bool]:
    if stree.kind != "suffix":
        raise ValueError("expand_row expects the suffix tree")
    return _expand_one(state, stree, row_path)


def expand_cell(
    state: MatrixState, ptree: AffixTree, stree: AffixTree, row_path: Path, col_path: Path
) -> tuple[MatrixState, bool, bool]:
    """Expand both trees at once; returns (state, row_noop, col_noop)."""
    state, row_noop = expand_row(state, stree, row_path)
    state, col_noop = expand_column(state, ptree, col_path)
    return state, row_noop, col_noop


def collapse(state: MatrixState, tree: AffixTree, path: Path) -> MatrixState:
    """Remove a path and all its expanded descendants from the state."""
    path = tuple(path)
    if not path:
        raise StateError("cannot collapse the root")
    node_at(tree, path)  # validate
    k = len(path)

    def is_descendant_or_self(p: Path) -> bool:
        if len(p) < k:
            return False
        return (p[:k] == path) if tree.kind == "prefix" else (p[len(p) - k :] == path)

    expanded = state.expanded_prefix if tree.kind == "prefix" else state.expanded_suffix
    new = frozenset(p for p in expanded if not is_descendant_or_self(p))
    if tree.kind == "prefix":
        return replace(state, expanded_prefix=new)
    return replace(state, expanded_suffix=new)


def collapse_all(state: MatrixState) -> MatrixState:
    return replace(state, expanded_prefix=frozenset({()}), expanded_suffix=frozenset({()}))


def expand_all_next_level(
    state: MatrixState, ptree: AffixTree, stree: AffixTree
) -> MatrixState:
    """Expand every node one level beyond the deepest currently expanded level,
    per tree (leaves are skipped; expanding them is a no-op anyway)."""

    def side(tree: AffixTree, expanded: frozenset[Path]) -> frozenset[Path]:
        target = max(len(p) for p in expanded) + 1
        found: set[Path] = set()

        def collect(node: AffixNode, path: Path) -> None:
            if node.children and node.depth <= target:
                found.add(path)
                if node.depth < target:
                    for c in node.children:
                        collect(c, _child_path(tree.kind, path, c.event_type))

        collect(tree.root, ())
        return frozenset(expanded | found)

    return replace(
        state,
        expanded_prefix=side(ptree, state.expanded_prefix),
        expanded_suffix=side(stree, state.expanded_suffix),
    )


@dataclass(frozen=True)
class Pick:
    mode: str  # "cell" | "row" | "column"
    row: int | None = None
    col: int | None = None

    def __post_init__(self) -> None:
        if self.mode not in ("cell", "row", "column"):
            raise ValueError(f"unknown pick mode {self.mode!r}")


@dataclass(frozen=True)
class Selection:
    set_a: frozenset[str]
    set_b: frozenset[str]
    provenance: str
    warnings: tuple[str, ...] = ()

    @property
    def overlap(self) -> frozenset[str]:
        return self.set_a & self.set_b


def _resolve_pick(grid: MatrixGrid, pick: Pick) -> tuple[frozenset[str], str]:
    def fmt(e: FrontierEntry) -> str:
        label = "·".join(e.path)
        return label + ("∎" if e.residual else "")

    if pick.mode == "cell":
        if pick.row is None or pick.col is None:
            raise StateError("cell pick needs row and col indices")
        if not (0 <= pick.row < len(grid.rows) and 0 <= pick.col < len(grid.columns)):
            raise StateError(f"cell pick ({pick.row}, {pick.col}) out of range")
        members = grid.cells[pick.row][pick.col].member_ids
        return members, f"cell({fmt(grid.rows[pick.row])} × {fmt(grid.columns[pick.col])})"
    if pick.mode == "row":
        if pick.row is None or not 0 <= pick.row < len(grid.rows):
            raise StateError(f"row pick {pick.row} out of range")
        members = frozenset().union(*(c.member_ids for c in grid.cells[pick.row]))
        return members, f"row({fmt(grid.rows[pick.row])})"
    if pick.col is None or not 0 <= pick.col < len(grid.columns):
        raise StateError(f"column pick {pick.col} out of range")
    members = frozenset().union(*(grid.cells[r][pick.col].member_ids for r in range(len(grid.rows))))
    return members, f"column({fmt(grid.columns[pick.col])})"


def select_sets(grid: MatrixGrid, picks_a: Iterable[Pick], picks_b: Iterable[Pick]) -> Selection:
    """Union the picked regions into two sets; overlap is allowed but flagged."""
    warnings: list[str] = []
    sets: dict[str, frozenset[str]] = {}
    descs: dict[str, list[str]] = {}
    for label, picks in (("A", picks_a), ("B", picks_b)):
        members: frozenset[str] = frozenset()
        parts = []
        for pick in picks:
            got, desc = _resolve_pick(grid, pick)
            if not got:
                warnings.append(f"{label}: empty region {desc}")
            members |= got
            parts.append(desc)
        sets[label] = members
        descs[label] = parts
    overlap = sets["A"] & sets["B"]
    if overlap:
        warnings.append(f"selection sets share {len(overlap)} sequence(s)")
    provenance = f"A: {' + '.join(descs['A']) or '(none)'}; B: {' + '.join(descs['B']) or '(none)'}"
    return Selection(
        set_a=sets["A"], set_b=sets["B"], provenance=provenance, warnings=tuple(warnings)
    )
