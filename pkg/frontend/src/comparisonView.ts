// Comparison View: pattern-level unit visualization. Draws the layout
// payload verbatim; no client-side layout math beyond pixel mapping.

import { CONTAINER_FILL, CONTAINER_STROKE, SET_COLORS } from "./palette.js";
import type { LayoutPayload, Pattern } from "./types.js";

const SVG_NS = "http://www.w3.org/2000/svg";
const TRANSITION_MS = 300;

const raf: (fn: () => void) => void =
  typeof requestAnimationFrame === "function"
    ? (fn) => requestAnimationFrame(() => fn())
    : (fn) => fn();

export interface ComparisonCallbacks {
  onPatternClick(patternId: string): void;
}

export class ComparisonView {
  private readonly svg: SVGSVGElement;

  constructor(
    private readonly root: HTMLElement,
    private readonly callbacks: ComparisonCallbacks,
  ) {
    this.root.classList.add("comparison-view");
    this.svg = document.createElementNS(SVG_NS, "svg");
    this.svg.setAttribute("class", "comparison-svg");
    this.root.appendChild(this.svg);
  }

  render(patterns: Pattern[], layout: LayoutPayload): void {
    const byId = new Map(patterns.map((p) => [p.id, p]));
    const previous = new Map<string, SVGRectElement>();
    for (const el of this.svg.querySelectorAll<SVGRectElement>("rect.unit")) {
      previous.set(`${el.dataset.pid}/${el.dataset.sid}`, el);
    }
    this.svg.replaceChildren();

    let maxX = 0;
    let maxY = 0;
    for (const [pid, rect] of Object.entries(layout.containers)) {
      const container = document.createElementNS(SVG_NS, "rect");
      container.setAttribute("class", "container");
      container.dataset.pid = pid;
      container.setAttribute("x", String(rect.x));
      container.setAttribute("y", String(rect.y));
      container.setAttribute("width", String(rect.w));
      container.setAttribute("height", String(rect.h));
      container.setAttribute("fill", CONTAINER_FILL);
      container.setAttribute("stroke", CONTAINER_STROKE);
      const pattern = byId.get(pid);
      if (pattern) {
        const title = document.createElementNS(SVG_NS, "title");
        title.textContent = `${pattern.events.join(" → ")} — ${
          pattern.support.count
        } sequences (${pattern.support.pct.toFixed(1)}%)`;
        container.appendChild(title);
      }
      container.addEventListener("click", () => this.callbacks.onPatternClick(pid));
      this.svg.appendChild(container);
      if (layout.overflow.includes(pid)) {
        const badge = document.createElementNS(SVG_NS, "text");
        badge.setAttribute("class", "overflow-badge");
        badge.dataset.pid = pid;
        badge.setAttribute("x", String(rect.x + rect.w - 4));
        badge.setAttribute("y", String(rect.y + 12));
        badge.setAttribute("text-anchor", "end");
        badge.textContent = "⚠";
        this.svg.appendChild(badge);
      }
      maxX = Math.max(maxX, rect.x + rect.w);
      maxY = Math.max(maxY, rect.y + rect.h);
    }

    for (const unit of layout.units) {
      const key = `${unit.pid}/${unit.sid}`;
      const mark = document.createElementNS(SVG_NS, "rect");
      mark.setAttribute("class", "unit");
      mark.dataset.pid = unit.pid;
      mark.dataset.sid = unit.sid;
      mark.dataset.set = unit.set;
      const prior = previous.get(key);
      if (prior) {
        // start from the old position, then transition to the new one
        mark.setAttribute("x", prior.getAttribute("x") ?? String(unit.x));
        mark.setAttribute("y", prior.getAttribute("y") ?? String(unit.y));
        mark.style.transition = `x ${TRANSITION_MS}ms ease, y ${TRANSITION_MS}ms ease`;
        raf(() => {
          mark.setAttribute("x", String(unit.x));
          mark.setAttribute("y", String(unit.y));
        });
      } else {
        mark.setAttribute("x", String(unit.x));
        mark.setAttribute("y", String(unit.y));
      }
      mark.setAttribute("width", String(layout.unitSize));
      mark.setAttribute("height", String(layout.unitSize));
      mark.setAttribute("fill", SET_COLORS[unit.set]);
      mark.addEventListener("click", () => this.callbacks.onPatternClick(unit.pid));
      this.svg.appendChild(mark);
    }

    this.svg.setAttribute("viewBox", `0 0 ${Math.max(maxX + 10, 100)} ${Math.max(maxY + 10, 100)}`);
    this.svg.setAttribute("width", String(Math.max(maxX + 10, 100)));
    this.svg.setAttribute("height", String(Math.max(maxY + 10, 100)));
  }
}
