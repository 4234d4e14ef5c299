"""Geometry and tree predicates shared by module tests and the acceptance suite."""

from __future__ import annotations

from seqcomp.affix import AffixNode, AffixTree, MatrixGrid, visible_frontier
from seqcomp.layout import LayoutResult, Rect

GEOM_TOL = 1e-6  # pixels; far below anything visible, far above float dust


def rects_disjoint(a: Rect, b: Rect, tol: float = GEOM_TOL) -> bool:
    overlap_x = min(a.right, b.right) - max(a.x, b.x)
    overlap_y = min(a.bottom, b.bottom) - max(a.y, b.y)
    return overlap_x <= tol or overlap_y <= tol


def rect_inside(inner: Rect, outer: Rect, tol: float = GEOM_TOL) -> bool:
    return (
        inner.x >= outer.x - tol
        and inner.y >= outer.y - tol
        and inner.right <= outer.right + tol
        and inner.bottom <= outer.bottom + tol
    )


def unit_rects(result: LayoutResult) -> dict[str, list[Rect]]:
    per_container: dict[str, list[Rect]] = {}
    for u in result.units:
        per_container.setdefault(u.pid, []).append(
            Rect(u.x, u.y, result.unit_size, result.unit_size)
        )
    return per_container


def assert_layout_contracts(result: LayoutResult) -> None:
    containers = list(result.containers.items())
    for i in range(len(containers)):
        for j in range(i + 1, len(containers)):
            assert rects_disjoint(containers[i][1], containers[j][1]), (
                f"containers {containers[i][0]} and {containers[j][0]} overlap"
            )
    per_container = unit_rects(result)
    for pid, rects in per_container.items():
        if pid not in result.overflow:
            for r in rects:
                assert rect_inside(r, result.containers[pid]), f"unit outside container {pid}"
        for i in range(len(rects)):
            for j in range(i + 1, len(rects)):
                assert rects_disjoint(rects[i], rects[j]), f"units overlap in {pid}"


def assert_area_proportionality(
    containers: dict[str, Rect], weights: dict[str, float], rel_tol: float = 1e-6
) -> None:
    total_area = sum(r.area for r in containers.values())
    total_weight = sum(weights[pid] for pid in containers)
    for pid, rect in containers.items():
        expected = weights[pid] / total_weight
        actual = rect.area / total_area
        assert abs(actual - expected) <= rel_tol * max(expected, 1e-12), (
            f"container {pid}: area share {actual} vs weight share {expected}"
        )


def frontier_counts_conserved(tree: AffixTree, expanded) -> bool:
    frontier = visible_frontier(tree, expanded)
    return sum(e.count for e in frontier) == tree.root.count


def grid_row_col_sums_consistent(grid: MatrixGrid) -> bool:
    for r, row_entry in enumerate(grid.rows):
        if sum(c.count for c in grid.cells[r]) != row_entry.count:
            return False
    for c, col_entry in enumerate(grid.columns):
        if sum(grid.cells[r][c].count for r in range(len(grid.rows))) != col_entry.count:
            return False
    return True


def trees_equal(a: AffixNode, b: AffixNode) -> bool:
    if (
        a.event_type != b.event_type
        or a.depth != b.depth
        or a.count != b.count
        or a.member_ids != b.member_ids
        or abs(a.avg_length - b.avg_length) > 1e-12
        or len(a.children) != len(b.children)
    ):
        return False
    return all(trees_equal(ca, cb) for ca, cb in zip(a.children, b.children))
