// Colors: fixed set colors (A orange, B blue) and a categorical event
// palette capped at 20 hues; later event types reuse hues by hash and are
// marked for textured rendering.

import type { SetTag } from "./types.js";

export const SET_COLORS: Record<SetTag, string> = {
  A: "#e08214",
  B: "#4393c3",
};

export const CONTAINER_FILL = "#f2f2f2";
export const CONTAINER_STROKE = "#9e9e9e";
export const HIGHLIGHT_COLOR = "#d62728";

const BASE_HUES = [
  "#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd",
  "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf",
  "#aec7e8", "#ffbb78", "#98df8a", "#ff9896", "#c5b0d5",
  "#c49c94", "#f7b6d2", "#c7c7c7", "#dbdb8d", "#9edae5",
];

function hashString(value: string): number {
  let h = 2166136261;
  for (let i = 0; i < value.length; i++) {
    h ^= value.charCodeAt(i);
    h = Math.imul(h, 16777619);
  }
  return h >>> 0;
}

export class EventPalette {
  private readonly assigned = new Map<string, number>();

  colorOf(eventType: string): string {
    let slot = this.assigned.get(eventType);
    if (slot === undefined) {
      slot =
        this.assigned.size < BASE_HUES.length
          ? this.assigned.size
          : hashString(eventType) % BASE_HUES.length;
      this.assigned.set(eventType, slot);
    }
    return BASE_HUES[slot];
  }

  /** True when the type overflowed the palette and reuses a hue. */
  isTextured(eventType: string): boolean {
    this.colorOf(eventType);
    const firstTwenty = [...this.assigned.keys()].slice(0, BASE_HUES.length);
    return !firstTwenty.includes(eventType);
  }
}

/** Sequential colormap for matrix cells: white at 0 up to a deep blue. */
export function cellColor(count: number, maxCount: number): string {
  if (maxCount <= 0 || count <= 0) return "#ffffff";
  const t = count / maxCount;
  const from = { r: 0xff, g: 0xff, b: 0xff };
  const to = { r: 0x08, g: 0x45, b: 0x94 };
  const mix = (a: number, b: number) => Math.round(a + (b - a) * t);
  const hex = (v: number) => v.toString(16).padStart(2, "0");
  return `#${hex(mix(from.r, to.r))}${hex(mix(from.g, to.g))}${hex(mix(from.b, to.b))}`;
}
