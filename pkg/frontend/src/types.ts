// Wire formats of the seqcomp service. These mirror the engine's JSON
// serializers; the client renders them verbatim and computes no analytics.

export interface FrontierEntry {
  path: string[];
  count: number;
  avgLength: number;
  residual: boolean;
}

export interface CellStat {
  count: number;
  avgLength: number;
}

export interface Grid {
  columns: FrontierEntry[];
  rows: FrontierEntry[];
  cells: CellStat[][];
  maxCellCount: number;
}

export interface GridResponse {
  grid: Grid;
  noop?: boolean;
}

export interface SessionResponse {
  sessionId: string;
  stats: { count: number; avgLength: number };
  initialGrid: Grid;
}

export interface PatternSupport {
  pct: number;
  count: number;
  countA: number;
  countB: number;
}

export interface Pattern {
  id: string;
  events: string[];
  support: PatternSupport;
  sequenceIds: string[];
}

export interface LayoutRect {
  x: number;
  y: number;
  w: number;
  h: number;
}

export type SetTag = "A" | "B";

export interface UnitPlacement {
  pid: string;
  sid: string;
  set: SetTag;
  x: number;
  y: number;
}

export interface LayoutPayload {
  unitSize: number;
  containers: Record<string, LayoutRect>;
  units: UnitPlacement[];
  overflow: string[];
  clamped: boolean;
}

export interface PatternsResponse {
  generation: number;
  patterns: Pattern[];
  layout: LayoutPayload;
}

export interface AlignmentRow {
  sid: string;
  set: SetTag;
  offset: number;
  events: string[];
}

export interface AlignmentView {
  pattern: string;
  keyEvents: string[];
  rows: AlignmentRow[];
}

export interface SelectionResponse {
  sizeA: number;
  sizeB: number;
  overlap: number;
  warnings: string[];
}

export type PatternLayout = "map2d" | "fillx" | "filly" | "maxfill" | "pack";
export type UnitLayout = "fillx" | "filly" | "maxfill" | "pack";
export type SortKey = "supportCount" | "patternLength" | "none";
export type SortMetric = "count" | "avgLength";
export type SortOrder = "ascending" | "descending" | "none";
export type MatrixOpName =
  | "expandCell"
  | "expandRow"
  | "expandColumn"
  | "collapse"
  | "expandAllNextLevel"
  | "collapseAll";

export interface Pick {
  mode: "cell" | "row" | "column";
  row?: number;
  col?: number;
}

export interface PatternQuery {
  minSupport?: number;
  mode?: "maximal" | "frequent";
  patternLayout?: PatternLayout;
  unitLayout?: UnitLayout;
  sortKey?: SortKey;
}
