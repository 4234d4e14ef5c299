// Sequence panel: support sequences of one pattern, events top to bottom,
// aligned by the offsets the service computed. Hovering a key event marks
// its first occurrence in every sequence; clicking re-requests alignment.

import { EventPalette, SET_COLORS } from "./palette.js";
import type { AlignmentView } from "./types.js";

const SVG_NS = "http://www.w3.org/2000/svg";
const COL_W = 26;
const ROW_H = 24;
const LABEL_W = 120;
const TOP_PAD = 30;
const RADIUS = 8;

export interface SequenceCallbacks {
  onAlign(eventType: string): void;
}

export class SequenceView {
  private readonly svg: SVGSVGElement;
  private readonly palette = new EventPalette();

  constructor(
    private readonly root: HTMLElement,
    private readonly callbacks: SequenceCallbacks,
  ) {
    this.root.classList.add("sequence-view");
    this.svg = document.createElementNS(SVG_NS, "svg");
    this.svg.setAttribute("class", "sequence-svg");
    this.root.appendChild(this.svg);
  }

  render(view: AlignmentView): void {
    this.svg.replaceChildren();
    const maxRows = Math.max(
      1,
      ...view.rows.map((r) => r.offset + r.events.length),
    );
    const width = LABEL_W + view.rows.length * COL_W + 20;
    const height = TOP_PAD + maxRows * ROW_H + 20;
    this.svg.setAttribute("viewBox", `0 0 ${width} ${height}`);
    this.svg.setAttribute("width", String(width));
    this.svg.setAttribute("height", String(height));

    const labels = document.createElementNS(SVG_NS, "g");
    labels.setAttribute("class", "key-events");
    view.keyEvents.forEach((eventType, i) => {
      const label = document.createElementNS(SVG_NS, "text");
      label.setAttribute("class", "key-event");
      label.dataset.event = eventType;
      label.setAttribute("x", "4");
      label.setAttribute("y", String(TOP_PAD + (i + 1) * ROW_H));
      label.textContent = eventType;
      label.addEventListener("mouseenter", () => this.highlightKey(eventType));
      label.addEventListener("mouseleave", () => this.clearHighlight());
      label.addEventListener("click", () => this.callbacks.onAlign(eventType));
      labels.appendChild(label);
    });
    this.svg.appendChild(labels);

    view.rows.forEach((row, colIndex) => {
      const column = document.createElementNS(SVG_NS, "g");
      column.setAttribute("class", "sequence-column");
      column.dataset.sid = row.sid;
      const cx = LABEL_W + colIndex * COL_W + COL_W / 2;

      const triangle = document.createElementNS(SVG_NS, "path");
      triangle.setAttribute("class", "set-flag");
      triangle.dataset.set = row.set;
      triangle.setAttribute(
        "d",
        `M ${cx - 7} 6 L ${cx + 7} 6 L ${cx} 18 Z`,
      );
      triangle.setAttribute("fill", SET_COLORS[row.set]);
      column.appendChild(triangle);

      row.events.forEach((eventType, i) => {
        const circle = document.createElementNS(SVG_NS, "circle");
        circle.setAttribute("class", "event-mark");
        circle.dataset.event = eventType;
        circle.dataset.index = String(i);
        circle.setAttribute("cx", String(cx));
        // the payload's offset shifts the whole sequence down
        circle.setAttribute("cy", String(TOP_PAD + (row.offset + i) * ROW_H + ROW_H / 2));
        circle.setAttribute("r", String(RADIUS));
        circle.setAttribute("fill", this.palette.colorOf(eventType));
        if (this.palette.isTextured(eventType)) {
          circle.setAttribute("stroke-dasharray", "2,2");
          circle.setAttribute("stroke", "#444");
        }
        const title = document.createElementNS(SVG_NS, "title");
        title.textContent = eventType;
        circle.appendChild(title);
        column.appendChild(circle);
      });
      this.svg.appendChild(column);
    });
  }

  /** Gray border on the first occurrence of the event in every sequence. */
  highlightKey(eventType: string): void {
    this.clearHighlight();
    for (const column of this.svg.querySelectorAll<SVGGElement>("g.sequence-column")) {
      const marks = column.querySelectorAll<SVGCircleElement>("circle.event-mark");
      for (const mark of marks) {
        if (mark.dataset.event === eventType) {
          mark.classList.add("key-highlight");
          mark.setAttribute("stroke", "#808080");
          mark.setAttribute("stroke-width", "3");
          break; // first occurrence only
        }
      }
    }
  }

  clearHighlight(): void {
    for (const mark of this.svg.querySelectorAll<SVGCircleElement>("circle.key-highlight")) {
      mark.classList.remove("key-highlight");
      mark.removeAttribute("stroke");
      mark.removeAttribute("stroke-width");
      if (mark.dataset.event && this.palette.isTextured(mark.dataset.event)) {
        mark.setAttribute("stroke-dasharray", "2,2");
        mark.setAttribute("stroke", "#444");
      }
    }
  }
}
