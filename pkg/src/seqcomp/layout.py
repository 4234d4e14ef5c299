"""Two-level unit-visualization geometry.

Pattern containers are non-uniform (area proportional to support count) and
are arranged by one of five operations: similarity map (MDS of token edit
distance), axis fill strips, squarified treemap, or spiral packing. Inside
each container the sequence units share one global edge length and are
arranged by a uniform layout. All functions are pure and deterministic.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, NamedTuple

import numpy as np

from . import kernels

MAP2D_FILL_RATIO = 0.45  # share of the canvas covered by containers
UNIT_MIN = 1.0
UNIT_MAX = 24.0
SEPARATION_MAX_SWEEPS = 200

PATTERN_LAYOUTS = ("map2d", "fillx", "filly", "maxfill", "pack")
UNIT_LAYOUTS = ("fillx", "filly", "maxfill", "pack")
SORT_KEYS = ("supportCount", "patternLength", "none")


@dataclass(frozen=True)
class Rect:
    """Axis-aligned rectangle, origin top-left, y growing downward."""

    x: float
    y: float
    width: float
    height: float

    def __post_init__(self) -> None:
        if not (self.width > 0 and self.height > 0):
            raise ValueError(f"degenerate rect {self.width}x{self.height}")

    @property
    def right(self) -> float:
        return self.x + self.width

    @property
    def bottom(self) -> float:
        return self.y + self.height

    @property
    def area(self) -> float:
        return self.width * self.height

    @property
    def center(self) -> tuple[float, float]:
        return (self.x + self.width / 2, self.y + self.height / 2)


@dataclass(frozen=True)
class LayoutRequest:
    canvas: Rect
    pattern_layout: str = "map2d"
    unit_layout: str = "maxfill"
    sort_key: str = "none"
    padding_px: float = 2.0

    def __post_init__(self) -> None:
        if self.pattern_layout not in PATTERN_LAYOUTS:
            raise ValueError(f"unknown pattern layout {self.pattern_layout!r}")
        if self.unit_layout not in UNIT_LAYOUTS:
            raise ValueError(f"unknown unit layout {self.unit_layout!r}")
        if self.sort_key not in SORT_KEYS:
            raise ValueError(f"unknown sort key {self.sort_key!r}")
        if self.padding_px < 0:
            raise ValueError("padding_px must be >= 0")


@dataclass(frozen=True)
class LayoutItem:
    """One pattern as the layout engine sees it."""

    pid: str
    events: tuple[str, ...]
    weight: float  # support count driving container area
    units_a: tuple[str, ...] = ()  # sequence ids from set A, sorted
    units_b: tuple[str, ...] = ()

    @property
    def unit_count(self) -> int:
        return len(self.units_a) + len(self.units_b)


class PatternLayoutOutcome(NamedTuple):
    containers: dict[str, Rect]
    clamped: bool


@dataclass(frozen=True)
class UnitPlacement:
    pid: str
    sid: str
    set_tag: str  # "A" | "B"
    x: float
    y: float


@dataclass(frozen=True)
class LayoutResult:
    containers: dict[str, Rect]
    units: tuple[UnitPlacement, ...]
    unit_size: float
    set_of: dict[str, str]
    overflow: tuple[str, ...] = ()
    clamped: bool = False


def pattern_distance(p1, p2) -> float:
    """Levenshtein distance over event tokens, normalized by max length."""
    a = tuple(getattr(p1, "events", p1))
    b = tuple(getattr(p2, "events", p2))
    if not a and not b:
        return 0.0
    vocab: dict[str, int] = {}
    for tok in (*a, *b):
        vocab.setdefault(tok, len(vocab))
    xa = np.asarray([vocab[t] for t in a], dtype=np.int32)
    xb = np.asarray([vocab[t] for t in b], dtype=np.int32)
    return kernels.levenshtein(xa, xb) / max(len(a), len(b))


def mds_2d(distances: np.ndarray) -> np.ndarray:
    """Classical MDS onto 2 dimensions.

    Double-centers the squared distance matrix, takes the top two positive
    eigenpairs and scales eigenvectors by sqrt(eigenvalue). Each axis gets a
    deterministic sign (first non-negligible coordinate made positive);
    missing positive eigenvalues leave the axis at zero.
    """
    d = np.asarray(distances, dtype=float)
    if d.ndim != 2 or d.shape[0] != d.shape[1]:
        raise ValueError("distance matrix must be square")
    n = d.shape[0]
    if not np.allclose(d, d.T, rtol=0, atol=1e-9):
        raise ValueError("distance matrix must be symmetric")
    if (d < -1e-12).any():
        raise ValueError("distances must be non-negative")
    if not np.allclose(np.diag(d), 0, rtol=0, atol=1e-9):
        raise ValueError("distance matrix must have a zero diagonal")
    if n == 1:
        return np.zeros((1, 2))

    j = np.eye(n) - np.full((n, n), 1.0 / n)
    b = -0.5 * j @ (d * d) @ j
    evals, evecs = np.linalg.eigh(b)
    order = np.argsort(evals)[::-1]
    points = np.zeros((n, 2))
    tol = 1e-12 * max(1.0, float(np.abs(evals).max()))
    for axis in range(2):
        if axis >= n:
            break
        lam = evals[order[axis]]
        if lam <= tol:
            continue
        vec = evecs[:, order[axis]].copy()
        for v in vec:
            if abs(v) > 1e-12:
                if v < 0:
                    vec = -vec
                break
        points[:, axis] = vec * math.sqrt(lam)
    return points


def _apply_sort(items: list[LayoutItem], sort_key: str) -> list[LayoutItem]:
    if sort_key == "supportCount":
        return sorted(items, key=lambda it: (-it.weight, it.events))
    if sort_key == "patternLength":
        return sorted(items, key=lambda it: (-len(it.events), it.events))
    return list(items)


def _check_items(items: list[LayoutItem]) -> None:
    if not items:
        raise ValueError("at least one pattern is required")
    if any(it.weight <= 0 for it in items):
        raise ValueError("pattern weights must be positive")


def layout_patterns_fill(
    items: list[LayoutItem],
    canvas: Rect,
    axis: str,
    sort_key: str = "none",
    padding: float = 0.0,
) -> PatternLayoutOutcome:
    """Full-width (or full-height) strips, extent proportional to weight."""
    _check_items(items)
    if axis not in ("x", "y"):
        raise ValueError("axis must be 'x' or 'y'")
    ordered = _apply_sort(items, sort_key)
    total = sum(it.weight for it in ordered)
    extent = canvas.height if axis == "y" else canvas.width
    avail = extent - padding * (len(ordered) - 1)
    if avail <= 0:
        raise ValueError("canvas too small for the requested padding")
    containers: dict[str, Rect] = {}
    cursor = canvas.y if axis == "y" else canvas.x
    for it in ordered:
        span = avail * it.weight / total
        if axis == "y":
            containers[it.pid] = Rect(canvas.x, cursor, canvas.width, span)
        else:
            containers[it.pid] = Rect(cursor, canvas.y, span, canvas.height)
        cursor += span + padding
    return PatternLayoutOutcome(containers, clamped=False)


def _squarify(areas: list[float], rect: Rect) -> list[Rect]:
    """Squarified treemap of the given areas (already summing to rect.area)."""

    def worst(row: list[float], side: float) -> float:
        s = sum(row)
        mx, mn = max(row), min(row)
        return max(side * side * mx / (s * s), s * s / (side * side * mn))

    def lay_row(row: list[float], free: tuple[float, float, float, float]):
        x, y, w, h = free
        s = sum(row)
        rects = []
        if w >= h:  # column along the left edge
            thickness = s / h
            cy = y
            for a in row:
                rects.append(Rect(x, cy, thickness, a / thickness))
                cy += a / thickness
            return rects, (x + thickness, y, w - thickness, h)
        thickness = s / w
        cx = x
        for a in row:
            rects.append(Rect(cx, y, a / thickness, thickness))
            cx += a / thickness
        return rects, (x, y + thickness, w, h - thickness)

    free = (rect.x, rect.y, rect.width, rect.height)
    out: list[Rect] = []
    row: list[float] = []
    for a in areas:
        side = min(free[2], free[3])
        if not row or worst(row + [a], side) <= worst(row, side):
            row.append(a)
        else:
            rects, free = lay_row(row, free)
            out.extend(rects)
            row = [a]
    rects, _ = lay_row(row, free)
    out.extend(rects)
    return out


def layout_patterns_treemap(items: list[LayoutItem], canvas: Rect) -> PatternLayoutOutcome:
    """Squarified treemap; cell areas are exactly proportional to weights."""
    _check_items(items)
    ordered = sorted(items, key=lambda it: (-it.weight, it.events))
    total = sum(it.weight for it in ordered)
    areas = [canvas.area * it.weight / total for it in ordered]
    rects = _squarify(areas, canvas)
    return PatternLayoutOutcome(
        {it.pid: r for it, r in zip(ordered, rects)}, clamped=False
    )


def _squares_overlap(
    c1: tuple[float, float], e1: float, c2: tuple[float, float], e2: float, gap: float
) -> bool:
    half = (e1 + e2) / 2 + gap
    return abs(c1[0] - c2[0]) < half - 1e-9 and abs(c1[1] - c2[1]) < half - 1e-9


def _spiral_place(
    edges: list[float], canvas: Rect, padding: float
) -> list[tuple[float, float]] | None:
    """Greedy Archimedean-spiral placement; None when the canvas is too tight."""
    cx0, cy0 = canvas.center
    step = 0.05 * min(canvas.width, canvas.height)  # radius gained per turn
    centers: list[tuple[float, float]] = []

    def inside(cx: float, cy: float, e: float) -> bool:
        h = e / 2
        return (
            cx - h >= canvas.x - 1e-9
            and cy - h >= canvas.y - 1e-9
            and cx + h <= canvas.right + 1e-9
            and cy + h <= canvas.bottom + 1e-9
        )

    for e in edges:
        placed = None
        theta = 0.0
        while theta <= 400.0 * math.pi:  # 200 turns
            r = step * theta / (2 * math.pi)
            cx = cx0 + r * math.cos(theta)
            cy = cy0 + r * math.sin(theta)
            if inside(cx, cy, e) and not any(
                _squares_overlap((cx, cy), e, c, e2, padding)
                for c, e2 in zip(centers, edges)
            ):
                placed = (cx, cy)
                break
            theta += 0.05
        if placed is None:
            return None
        centers.append(placed)
    return centers


def layout_patterns_pack(
    items: list[LayoutItem], canvas: Rect, padding: float = 0.0
) -> PatternLayoutOutcome:
    """Greedy spiral packing of weight-proportional squares, largest first."""
    _check_items(items)
    ordered = sorted(items, key=lambda it: (-it.weight, it.events))
    total = sum(it.weight for it in ordered)
    k = MAP2D_FILL_RATIO * canvas.area / total
    edges = [math.sqrt(k * it.weight) for it in ordered]
    scale = 1.0
    clamped = False
    while True:
        centers = _spiral_place([e * scale for e in edges], canvas, padding)
        if centers is not None:
            break
        scale *= 0.85
        clamped = True
    containers = {
        it.pid: Rect(c[0] - e * scale / 2, c[1] - e * scale / 2, e * scale, e * scale)
        for it, e, c in zip(ordered, edges, centers)
    }
    return PatternLayoutOutcome(containers, clamped)


def layout_patterns_map2d(
    items: list[LayoutItem], canvas: Rect, padding: float = 0.0
) -> PatternLayoutOutcome:
    """Similarity map: MDS of normalized edit distances, squares sized by
    weight, overlaps resolved by deterministic pairwise separation."""
    _check_items(items)
    n = len(items)
    total = sum(it.weight for it in items)
    k = MAP2D_FILL_RATIO * canvas.area / total
    edges = [math.sqrt(k * it.weight) for it in items]
    clamped = False

    if n == 1:
        cx, cy = canvas.center
        e = edges[0]
        return PatternLayoutOutcome(
            {items[0].pid: Rect(cx - e / 2, cy - e / 2, e, e)}, clamped=False
        )

    dist = np.zeros((n, n))
    for i in range(n):
        for j in range(i + 1, n):
            dist[i, j] = dist[j, i] = pattern_distance(items[i], items[j])
    points = mds_2d(dist)

    margin = max(edges) / 2 + padding
    xs = _scale_axis(points[:, 0], canvas.x + margin, canvas.right - margin)
    ys = _scale_axis(points[:, 1], canvas.y + margin, canvas.bottom - margin)
    centers = [[float(x), float(y)] for x, y in zip(xs, ys)]

    resolved = _separate(centers, edges, padding)
    if not resolved:
        spiral = _spiral_place(edges, canvas, padding)
        scale = 1.0
        while spiral is None:
            scale *= 0.85
            spiral = _spiral_place([e * scale for e in edges], canvas, padding)
        centers = [list(c) for c in spiral]
        edges = [e * scale for e in edges]
        clamped = True
    else:
        centers, edges, shrunk = _fit_to_canvas(centers, edges, canvas)
        clamped = clamped or shrunk

    containers = {
        it.pid: Rect(c[0] - e / 2, c[1] - e / 2, e, e)
        for it, c, e in zip(items, centers, edges)
    }
    return PatternLayoutOutcome(containers, clamped)


def _scale_axis(values: np.ndarray, lo: float, hi: float) -> np.ndarray:
    if hi <= lo:  # canvas too small for the margin: collapse to the middle
        return np.full(len(values), (lo + hi) / 2)
    span = float(values.max() - values.min())
    if span < 1e-12:
        return np.full(len(values), (lo + hi) / 2)
    return lo + (values - values.min()) * (hi - lo) / span


def _separate(centers: list[list[float]], edges: list[float], gap: float) -> bool:
    """Push overlapping squares apart along the axis of least penetration.
    Returns False when still overlapping after the sweep budget."""
    n = len(centers)
    nudge = 5e-10  # keep resolved pairs strictly clear of float dust
    for _ in range(SEPARATION_MAX_SWEEPS):
        moved = False
        for i in range(n):
            for j in range(i + 1, n):
                half = (edges[i] + edges[j]) / 2 + gap
                dx = centers[j][0] - centers[i][0]
                dy = centers[j][1] - centers[i][1]
                ox = half - abs(dx)
                oy = half - abs(dy)
                if ox <= 1e-9 or oy <= 1e-9:
                    continue
                if ox <= oy:
                    shift = ox / 2 + nudge
                    sign = 1.0 if dx >= 0 else -1.0
                    centers[i][0] -= sign * shift
                    centers[j][0] += sign * shift
                else:
                    shift = oy / 2 + nudge
                    sign = 1.0 if dy >= 0 else -1.0
                    centers[i][1] -= sign * shift
                    centers[j][1] += sign * shift
                moved = True
        if not moved:
            return True
    return False


def _fit_to_canvas(
    centers: list[list[float]], edges: list[float], canvas: Rect
) -> tuple[list[list[float]], list[float], bool]:
    """Uniformly rescale and translate so every square lies inside the canvas;
    uniform scaling preserves disjointness and area ratios."""
    xmin = min(c[0] - e / 2 for c, e in zip(centers, edges))
    xmax = max(c[0] + e / 2 for c, e in zip(centers, edges))
    ymin = min(c[1] - e / 2 for c, e in zip(centers, edges))
    ymax = max(c[1] + e / 2 for c, e in zip(centers, edges))
    bw, bh = xmax - xmin, ymax - ymin
    scale = min(1.0, canvas.width / bw, canvas.height / bh)
    shrunk = scale < 1.0
    if shrunk:
        mx, my = (xmin + xmax) / 2, (ymin + ymax) / 2
        centers = [[mx + (c[0] - mx) * scale, my + (c[1] - my) * scale] for c in centers]
        edges = [e * scale for e in edges]
        xmin = min(c[0] - e / 2 for c, e in zip(centers, edges))
        xmax = max(c[0] + e / 2 for c, e in zip(centers, edges))
        ymin = min(c[1] - e / 2 for c, e in zip(centers, edges))
        ymax = max(c[1] + e / 2 for c, e in zip(centers, edges))
    dx = max(0.0, canvas.x - xmin) - max(0.0, xmax - canvas.right)
    dy = max(0.0, canvas.y - ymin) - max(0.0, ymax - canvas.bottom)
    if dx or dy:
        centers = [[c[0] + dx, c[1] + dy] for c in centers]
    return centers, edges, shrunk


def _inner(container: Rect, padding: float) -> tuple[float, float, float, float]:
    return (
        container.x + padding,
        container.y + padding,
        container.width - 2 * padding,
        container.height - 2 * padding,
    )


def _cells_along(extent: float, u: float) -> int:
    # Relative epsilon only absorbs representation dust, so a feasibility
    # probe never rounds up across a real capacity boundary.
    return int((extent / u) * (1 + 1e-12))


def _capacity(w: float, h: float, unit_layout: str, u: float, count: int) -> bool:
    if w <= 0 or h <= 0:
        return count == 0
    cols = _cells_along(w, u)
    rows = _cells_along(h, u)
    if unit_layout in ("maxfill", "pack"):
        return cols * rows >= count
    if unit_layout == "fillx":
        return cols >= count and u <= h + 1e-12
    return rows >= count and u <= w + 1e-12  # filly


def shared_unit_size(
    containers: dict[str, Rect],
    unit_counts: dict[str, int],
    unit_layout: str,
    padding: float = 0.0,
    u_min: float = UNIT_MIN,
    u_max: float = UNIT_MAX,
) -> tuple[float, list[str]]:
    """Largest shared unit edge that fits every container, floored at u_min.

    Containers that still cannot hold their units at the final size are
    returned as the overflow list.
    """
    if unit_layout not in UNIT_LAYOUTS:
        raise ValueError(f"unknown unit layout {unit_layout!r}")

    def best_for(pid: str) -> float:
        w, h = _inner(containers[pid], padding)[2:]
        count = unit_counts.get(pid, 0)
        if count == 0:
            return u_max
        if not _capacity(w, h, unit_layout, 1e-9, count):
            return 0.0
        if _capacity(w, h, unit_layout, u_max, count):
            return u_max
        lo, hi = 1e-9, u_max
        for _ in range(80):
            mid = (lo + hi) / 2
            if _capacity(w, h, unit_layout, mid, count):
                lo = mid
            else:
                hi = mid
        return lo

    candidates = [best_for(pid) for pid in containers if unit_counts.get(pid, 0) > 0]
    u = min(candidates) if candidates else u_max
    u *= 1 - 1e-12  # land strictly on the feasible side of capacity boundaries
    u = min(u, u_max)
    if u < u_min:
        u = u_min
    overflow = [
        pid
        for pid in containers
        if unit_counts.get(pid, 0) > 0
        and not _capacity(*_inner(containers[pid], padding)[2:], unit_layout, u, unit_counts[pid])
    ]
    return u, overflow


def layout_units(
    container: Rect,
    n_units: int,
    unit_layout: str,
    u: float,
    padding: float = 0.0,
) -> tuple[list[tuple[float, float]], bool]:
    """Unit top-left positions inside a container; the flag marks overflow."""
    if unit_layout not in UNIT_LAYOUTS:
        raise ValueError(f"unknown unit layout {unit_layout!r}")
    if n_units == 0:
        return [], False
    x, y, w, h = _inner(container, padding)
    overflow = not _capacity(w, h, unit_layout, u, n_units)
    if w <= 0 or h <= 0:
        x, y, w, h = container.x, container.y, container.width, container.height
    positions: list[tuple[float, float]] = []
    if unit_layout == "fillx":
        positions = [(x + i * u, y) for i in range(n_units)]
    elif unit_layout == "filly":
        positions = [(x, y + i * u) for i in range(n_units)]
    else:
        cols = max(1, _cells_along(w, u))
        if unit_layout == "maxfill":
            positions = [(x + (i % cols) * u, y + (i // cols) * u) for i in range(n_units)]
        else:  # pack: grid rows centered horizontally
            row = 0
            remaining = n_units
            while remaining > 0:
                in_row = min(cols, remaining)
                x0 = x + (w - in_row * u) / 2
                positions.extend((x0 + c * u, y + row * u) for c in range(in_row))
                remaining -= in_row
                row += 1
    return positions, overflow


def make_layout_items(
    patterns: Iterable[tuple[str, object]],
    set_a: frozenset[str] | set[str] = frozenset(),
    set_b: frozenset[str] | set[str] = frozenset(),
) -> list[LayoutItem]:
    """Adapt (pid, Pattern) pairs for the layout engine.

    Units from set A come first, then set B; a sequence picked into both
    sets renders as one set-A unit but keeps both per-set counts in the
    container weight.
    """
    items = []
    for pid, p in patterns:
        a_ids = tuple(sorted(sid for sid in p.support_ids if sid in set_a))
        b_ids = tuple(sorted(sid for sid in p.support_ids if sid in set_b and sid not in set_a))
        rest = tuple(sorted(p.support_ids - set_a - set_b))
        weight = p.count_a + p.count_b
        if weight == 0:
            weight = len(p.support_ids)
        items.append(
            LayoutItem(
                pid=pid,
                events=tuple(p.events),
                weight=float(weight),
                units_a=a_ids + rest,  # untagged ids default to A
                units_b=b_ids,
            )
        )
    return items


def compute_layout(request: LayoutRequest, items: list[LayoutItem]) -> LayoutResult:
    """Containers, shared unit size, and unit placements for one request."""
    if not items:
        return LayoutResult(containers={}, units=(), unit_size=UNIT_MAX, set_of={})
    canvas, pad = request.canvas, request.padding_px
    if request.pattern_layout == "map2d":
        outcome = layout_patterns_map2d(items, canvas, pad)
    elif request.pattern_layout == "fillx":
        outcome = layout_patterns_fill(items, canvas, "x", request.sort_key, pad)
    elif request.pattern_layout == "filly":
        outcome = layout_patterns_fill(items, canvas, "y", request.sort_key, pad)
    elif request.pattern_layout == "maxfill":
        outcome = layout_patterns_treemap(items, canvas)
    else:
        outcome = layout_patterns_pack(items, canvas, pad)

    by_pid = {it.pid: it for it in items}
    counts = {pid: by_pid[pid].unit_count for pid in outcome.containers}
    u, overflow = shared_unit_size(outcome.containers, counts, request.unit_layout, pad)

    units: list[UnitPlacement] = []
    set_of: dict[str, str] = {}
    for pid, container in outcome.containers.items():
        item = by_pid[pid]
        ordered = [(sid, "A") for sid in item.units_a] + [(sid, "B") for sid in item.units_b]
        positions, _ = layout_units(container, len(ordered), request.unit_layout, u, pad)
        for (sid, tag), (ux, uy) in zip(ordered, positions):
            units.append(UnitPlacement(pid=pid, sid=sid, set_tag=tag, x=ux, y=uy))
            set_of.setdefault(sid, tag)
    return LayoutResult(
        containers=outcome.containers,
        units=tuple(units),
        unit_size=u,
        set_of=set_of,
        overflow=tuple(overflow),
        clamped=outcome.clamped,
    )


def serialize_layout(result: LayoutResult) -> dict:
    return {
        "unitSize": result.unit_size,
        "containers": {
            pid: {"x": r.x, "y": r.y, "w": r.width, "h": r.height}
            for pid, r in result.containers.items()
        },
        "units": [
            {"pid": u.pid, "sid": u.sid, "set": u.set_tag, "x": u.x, "y": u.y}
            for u in result.units
        ],
        "overflow": list(result.overflow),
        "clamped": result.clamped,
    }
