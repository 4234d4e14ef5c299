// Matrix View: interactive heatmap of the prefix/suffix grid.
//
// Every number shown (counts, averages, the color normalizer) comes from
// the grid payload; this renderer only maps them to pixels and colors.

import { HIGHLIGHT_COLOR, cellColor } from "./palette.js";
import type { FrontierEntry, Grid, SortMetric } from "./types.js";

const SVG_NS = "http://www.w3.org/2000/svg";

export const CELL = 36;
const ROW_HEADER_W = 150;
const COL_HEADER_H = 110;
const BAR_EXTENT = 70;
const INDENT_PER_LEVEL = 10;

export type SelectionMode = "cell" | "row" | "column";

export interface MatrixCallbacks {
  onExpandCell(rowPath: string[], colPath: string[]): void;
  onExpandRow(rowPath: string[]): void;
  onExpandColumn(colPath: string[]): void;
  onSelect(mode: SelectionMode, row: number | undefined, col: number | undefined, set: "A" | "B"): void;
}

function svgEl<K extends keyof SVGElementTagNameMap>(tag: K): SVGElementTagNameMap[K] {
  return document.createElementNS(SVG_NS, tag);
}

function entryLabel(entry: FrontierEntry): string {
  const name = entry.path.join("·");
  return entry.residual ? `${name} ■` : name;
}

/** Modifier-click assigns picks: shift selects into set A, ctrl/alt into B. */
function selectionSet(ev: MouseEvent): "A" | "B" | null {
  if (ev.shiftKey) return "A";
  if (ev.ctrlKey || ev.altKey || ev.metaKey) return "B";
  return null;
}

export class MatrixView {
  private grid: Grid | null = null;
  private barMetric: SortMetric = "count";
  private scale = 1;
  private tx = 0;
  private ty = 0;
  private readonly svg: SVGSVGElement;
  private readonly zoomLayer: SVGGElement;
  private readonly tooltip: HTMLDivElement;
  private panFrom: { x: number; y: number } | null = null;

  constructor(
    private readonly root: HTMLElement,
    private readonly callbacks: MatrixCallbacks,
  ) {
    this.root.classList.add("matrix-view");
    this.tooltip = document.createElement("div");
    this.tooltip.className = "tooltip";
    this.tooltip.hidden = true;
    this.svg = svgEl("svg");
    this.svg.setAttribute("class", "matrix-svg");
    this.zoomLayer = svgEl("g");
    this.svg.appendChild(this.zoomLayer);
    this.root.append(this.tooltip, this.svg);
    this.bindPanZoom();
  }

  setBarMetric(metric: SortMetric): void {
    this.barMetric = metric;
    if (this.grid) this.render(this.grid);
  }

  render(grid: Grid): void {
    this.grid = grid;
    this.zoomLayer.replaceChildren();
    const width = ROW_HEADER_W + grid.columns.length * CELL + BAR_EXTENT + 20;
    const height = COL_HEADER_H + grid.rows.length * CELL + BAR_EXTENT + 20;
    this.svg.setAttribute("viewBox", `0 0 ${width} ${height}`);
    this.svg.setAttribute("width", String(width));
    this.svg.setAttribute("height", String(height));

    this.renderHighlights(grid);
    this.renderHeaders(grid);
    this.renderCells(grid);
    this.renderBars(grid);
    this.applyTransform();
  }

  private metricOf(entry: FrontierEntry): number {
    return this.barMetric === "count" ? entry.count : entry.avgLength;
  }

  private renderHighlights(grid: Grid): void {
    const rowBand = svgEl("rect");
    rowBand.setAttribute("class", "row-highlight");
    rowBand.setAttribute("x", "0");
    rowBand.setAttribute("width", String(ROW_HEADER_W + grid.columns.length * CELL));
    rowBand.setAttribute("height", String(CELL));
    rowBand.setAttribute("fill", "none");
    rowBand.setAttribute("stroke", HIGHLIGHT_COLOR);
    rowBand.setAttribute("stroke-width", "2");
    rowBand.setAttribute("visibility", "hidden");
    const colBand = svgEl("rect");
    colBand.setAttribute("class", "col-highlight");
    colBand.setAttribute("y", "0");
    colBand.setAttribute("width", String(CELL));
    colBand.setAttribute("height", String(COL_HEADER_H + grid.rows.length * CELL));
    colBand.setAttribute("fill", "none");
    colBand.setAttribute("stroke", HIGHLIGHT_COLOR);
    colBand.setAttribute("stroke-width", "2");
    colBand.setAttribute("visibility", "hidden");
    this.zoomLayer.append(rowBand, colBand);
  }

  private renderHeaders(grid: Grid): void {
    const headers = svgEl("g");
    headers.setAttribute("class", "headers");
    grid.columns.forEach((col, c) => {
      const text = svgEl("text");
      text.setAttribute("class", "col-header");
      const indent = (col.path.length - 1) * INDENT_PER_LEVEL;
      text.setAttribute("x", String(ROW_HEADER_W + c * CELL + CELL / 2));
      text.setAttribute("y", String(COL_HEADER_H - 8 - indent));
      text.setAttribute("data-depth", String(col.path.length));
      text.setAttribute("text-anchor", "start");
      text.setAttribute(
        "transform",
        `rotate(-45 ${ROW_HEADER_W + c * CELL + CELL / 2} ${COL_HEADER_H - 8 - indent})`,
      );
      text.textContent = entryLabel(col);
      headers.appendChild(text);
    });
    grid.rows.forEach((row, r) => {
      const text = svgEl("text");
      text.setAttribute("class", "row-header");
      const indent = (row.path.length - 1) * INDENT_PER_LEVEL;
      text.setAttribute("x", String(indent + 4));
      text.setAttribute("y", String(COL_HEADER_H + r * CELL + CELL / 2 + 4));
      text.setAttribute("data-depth", String(row.path.length));
      text.textContent = entryLabel(row);
      headers.appendChild(text);
    });
    this.zoomLayer.appendChild(headers);
  }

  private renderCells(grid: Grid): void {
    const cells = svgEl("g");
    cells.setAttribute("class", "cells");
    grid.rows.forEach((row, r) => {
      grid.columns.forEach((col, c) => {
        const stat = grid.cells[r][c];
        const rect = svgEl("rect");
        rect.setAttribute("class", "cell");
        rect.setAttribute("data-row", String(r));
        rect.setAttribute("data-col", String(c));
        rect.setAttribute("x", String(ROW_HEADER_W + c * CELL));
        rect.setAttribute("y", String(COL_HEADER_H + r * CELL));
        rect.setAttribute("width", String(CELL));
        rect.setAttribute("height", String(CELL));
        rect.setAttribute("fill", cellColor(stat.count, grid.maxCellCount));
        rect.setAttribute("stroke", "#d0d0d0");
        rect.addEventListener("click", (ev) => {
          const set = selectionSet(ev as MouseEvent);
          if (set) {
            this.callbacks.onSelect("cell", r, c, set);
          } else {
            this.callbacks.onExpandCell(row.path, col.path);
          }
        });
        rect.addEventListener("mouseenter", (ev) =>
          this.showHover(r, c, stat.count, stat.avgLength, ev as MouseEvent),
        );
        rect.addEventListener("mouseleave", () => this.hideHover());
        cells.appendChild(rect);
      });
    });
    this.zoomLayer.appendChild(cells);
  }

  private renderBars(grid: Grid): void {
    const bars = svgEl("g");
    bars.setAttribute("class", "bars");
    const colMax = Math.max(...grid.columns.map((e) => this.metricOf(e)), 1);
    const rowMax = Math.max(...grid.rows.map((e) => this.metricOf(e)), 1);
    const barBase = COL_HEADER_H + grid.rows.length * CELL;
    grid.columns.forEach((col, c) => {
      const value = this.metricOf(col);
      const extent = (value / colMax) * BAR_EXTENT;
      const bar = svgEl("rect");
      bar.setAttribute("class", "col-bar");
      bar.setAttribute("data-col", String(c));
      bar.setAttribute("x", String(ROW_HEADER_W + c * CELL + 4));
      bar.setAttribute("y", String(barBase + 4));
      bar.setAttribute("width", String(CELL - 8));
      bar.setAttribute("height", String(Math.max(extent, 1)));
      bar.setAttribute("fill", "#7da6c9");
      bar.addEventListener("click", (ev) => {
        const set = selectionSet(ev as MouseEvent);
        if (set) {
          this.callbacks.onSelect("column", undefined, c, set);
        } else {
          this.callbacks.onExpandColumn(col.path);
        }
      });
      bar.addEventListener("mouseenter", (ev) =>
        this.showHover(null, c, col.count, col.avgLength, ev as MouseEvent),
      );
      bar.addEventListener("mouseleave", () => this.hideHover());
      bars.appendChild(bar);
    });
    const rowBase = ROW_HEADER_W + grid.columns.length * CELL;
    grid.rows.forEach((row, r) => {
      const value = this.metricOf(row);
      const extent = (value / rowMax) * BAR_EXTENT;
      const bar = svgEl("rect");
      bar.setAttribute("class", "row-bar");
      bar.setAttribute("data-row", String(r));
      bar.setAttribute("x", String(rowBase + 4));
      bar.setAttribute("y", String(COL_HEADER_H + r * CELL + 4));
      bar.setAttribute("width", String(Math.max(extent, 1)));
      bar.setAttribute("height", String(CELL - 8));
      bar.setAttribute("fill", "#7da6c9");
      bar.addEventListener("click", (ev) => {
        const set = selectionSet(ev as MouseEvent);
        if (set) {
          this.callbacks.onSelect("row", r, undefined, set);
        } else {
          this.callbacks.onExpandRow(row.path);
        }
      });
      bar.addEventListener("mouseenter", (ev) =>
        this.showHover(r, null, row.count, row.avgLength, ev as MouseEvent),
      );
      bar.addEventListener("mouseleave", () => this.hideHover());
      bars.appendChild(bar);
    });
    this.zoomLayer.appendChild(bars);
  }

  private showHover(
    row: number | null,
    col: number | null,
    count: number,
    avgLength: number,
    ev: MouseEvent,
  ): void {
    const rowBand = this.zoomLayer.querySelector<SVGRectElement>(".row-highlight");
    const colBand = this.zoomLayer.querySelector<SVGRectElement>(".col-highlight");
    if (rowBand && row !== null) {
      rowBand.setAttribute("y", String(COL_HEADER_H + row * CELL));
      rowBand.setAttribute("visibility", "visible");
    }
    if (colBand && col !== null) {
      colBand.setAttribute("x", String(ROW_HEADER_W + col * CELL));
      colBand.setAttribute("visibility", "visible");
    }
    this.tooltip.hidden = false;
    this.tooltip.textContent = `${count} sequences, avg length ${avgLength.toFixed(2)}`;
    this.tooltip.style.left = `${ev.clientX + 12}px`;
    this.tooltip.style.top = `${ev.clientY + 12}px`;
  }

  private hideHover(): void {
    this.tooltip.hidden = true;
    for (const selector of [".row-highlight", ".col-highlight"]) {
      this.zoomLayer.querySelector<SVGRectElement>(selector)?.setAttribute("visibility", "hidden");
    }
  }

  private bindPanZoom(): void {
    this.svg.addEventListener("wheel", (ev) => {
      ev.preventDefault();
      const factor = Math.pow(1.1, -(ev as WheelEvent).deltaY / 100);
      this.scale = Math.min(8, Math.max(0.2, this.scale * factor));
      this.applyTransform();
    });
    this.svg.addEventListener("mousedown", (ev) => {
      this.panFrom = { x: (ev as MouseEvent).clientX - this.tx, y: (ev as MouseEvent).clientY - this.ty };
    });
    this.svg.addEventListener("mousemove", (ev) => {
      if (!this.panFrom) return;
      this.tx = (ev as MouseEvent).clientX - this.panFrom.x;
      this.ty = (ev as MouseEvent).clientY - this.panFrom.y;
      this.applyTransform();
    });
    for (const name of ["mouseup", "mouseleave"]) {
      this.svg.addEventListener(name, () => {
        this.panFrom = null;
      });
    }
  }

  private applyTransform(): void {
    this.zoomLayer.setAttribute(
      "transform",
      `translate(${this.tx} ${this.ty}) scale(${this.scale})`,
    );
  }
}
