// Workbench wiring: one matrix panel, one comparison panel, one sequence
// panel, and a toolbar. All state changes round-trip through the API; the
// interaction log in the client replays to the same request sequence.

import { ApiClient } from "./api.js";
import { ComparisonView } from "./comparisonView.js";
import { MatrixView, SelectionMode } from "./matrixView.js";
import { SequenceView } from "./sequenceView.js";
import type {
  Grid,
  PatternLayout,
  PatternQuery,
  Pick,
  SortMetric,
  SortOrder,
  UnitLayout,
} from "./types.js";

interface PendingSelection {
  A: Pick[];
  B: Pick[];
}

export class Workbench {
  private sessionId: string | null = null;
  private currentPatternId: string | null = null;
  private pending: PendingSelection = { A: [], B: [] };
  private patternLayout: PatternLayout = "map2d"; // default configuration
  private unitLayout: UnitLayout = "maxfill";
  private requestToken = 0; // latest-wins: stale responses are dropped

  private readonly matrixView: MatrixView;
  private readonly comparisonView: ComparisonView;
  private readonly sequenceView: SequenceView;
  private readonly status: HTMLElement;

  constructor(
    private readonly api: ApiClient,
    root: HTMLElement,
  ) {
    root.innerHTML = `
      <div class="toolbar">
        <label>dataset <input id="dataset-name" value="sample" size="10"></label>
        <button id="load">load</button>
        <button id="expand-next">unfold next level</button>
        <button id="collapse-all">fold all</button>
        <label>sort <select id="sort-metric">
          <option value="count">count</option>
          <option value="avgLength">avg length</option>
        </select><select id="sort-order">
          <option value="none">none</option>
          <option value="descending">desc</option>
          <option value="ascending">asc</option>
        </select></label>
        <label>min length <input id="min-len" type="number" value="3" min="1" size="3"></label>
        <button id="apply-filter">filter</button>
        <label>bars <select id="bar-metric">
          <option value="count">count</option>
          <option value="avgLength">avg length</option>
        </select></label>
        <span class="hint">shift-click: pick into A, ctrl-click: pick into B</span>
        <button id="compare">compare A vs B</button>
        <span id="layout-buttons">
          <button data-layout="map2d" class="active">Map2D</button>
          <button data-layout="filly">FillY</button>
          <button data-layout="fillx">FillX</button>
          <button data-layout="maxfill">MaxFill</button>
          <button data-layout="pack">Pack</button>
          <select id="unit-layout">
            <option value="maxfill">MaxFill units</option>
            <option value="fillx">FillX units</option>
            <option value="filly">FillY units</option>
            <option value="pack">Pack units</option>
          </select>
        </span>
        <span id="status"></span>
      </div>
      <div class="panels">
        <div id="matrix-panel"></div>
        <div id="comparison-panel"></div>
        <div id="sequence-panel"></div>
      </div>`;

    this.status = root.querySelector("#status")!;
    this.matrixView = new MatrixView(root.querySelector("#matrix-panel")!, {
      onExpandCell: (rowPath, colPath) => void this.expand("expandCell", { rowPath, colPath }),
      onExpandRow: (rowPath) => void this.expand("expandRow", { rowPath }),
      onExpandColumn: (colPath) => void this.expand("expandColumn", { colPath }),
      onSelect: (mode, row, col, set) => this.addPick(mode, row, col, set),
    });
    this.comparisonView = new ComparisonView(root.querySelector("#comparison-panel")!, {
      onPatternClick: (pid) => void this.showSequences(pid),
    });
    this.sequenceView = new SequenceView(root.querySelector("#sequence-panel")!, {
      onAlign: (eventType) => void this.showSequences(this.currentPatternId, eventType),
    });

    root.querySelector("#load")!.addEventListener("click", () => {
      const name = (root.querySelector("#dataset-name") as HTMLInputElement).value;
      void this.loadDataset(name);
    });
    root.querySelector("#expand-next")!.addEventListener("click", () =>
      void this.expand("expandAllNextLevel", {}),
    );
    root.querySelector("#collapse-all")!.addEventListener("click", () =>
      void this.expand("collapseAll", {}),
    );
    const applySort = () => {
      const metric = (root.querySelector("#sort-metric") as HTMLSelectElement).value as SortMetric;
      const order = (root.querySelector("#sort-order") as HTMLSelectElement).value as SortOrder;
      void this.sort(metric, order);
    };
    root.querySelector("#sort-metric")!.addEventListener("change", applySort);
    root.querySelector("#sort-order")!.addEventListener("change", applySort);
    root.querySelector("#apply-filter")!.addEventListener("click", () => {
      const minLen = Number((root.querySelector("#min-len") as HTMLInputElement).value);
      void this.filter(minLen);
    });
    root.querySelector("#bar-metric")!.addEventListener("change", (ev) => {
      this.matrixView.setBarMetric((ev.target as HTMLSelectElement).value as SortMetric);
    });
    root.querySelector("#compare")!.addEventListener("click", () => void this.compare());
    for (const button of root.querySelectorAll<HTMLButtonElement>("#layout-buttons button")) {
      button.addEventListener("click", () => {
        this.patternLayout = button.dataset.layout as PatternLayout;
        for (const other of root.querySelectorAll("#layout-buttons button")) {
          other.classList.toggle("active", other === button);
        }
        void this.refreshPatterns();
      });
    }
    root.querySelector("#unit-layout")!.addEventListener("change", (ev) => {
      this.unitLayout = (ev.target as HTMLSelectElement).value as UnitLayout;
      void this.refreshPatterns();
    });
  }

  private say(message: string): void {
    this.status.textContent = message;
  }

  async loadDataset(name: string): Promise<void> {
    const doc = await this.api.createSession(name);
    this.sessionId = doc.sessionId;
    this.pending = { A: [], B: [] };
    this.say(`${doc.stats.count} sequences, avg length ${doc.stats.avgLength.toFixed(2)}`);
    this.matrixView.render(doc.initialGrid);
  }

  private renderGrid(grid: Grid, noop?: boolean): void {
    this.matrixView.render(grid);
    if (noop) this.say("nothing to expand there");
  }

  async expand(
    op: "expandCell" | "expandRow" | "expandColumn" | "expandAllNextLevel" | "collapseAll",
    paths: { rowPath?: string[]; colPath?: string[] },
  ): Promise<void> {
    if (!this.sessionId) return;
    const doc = await this.api.matrixOp(this.sessionId, op, paths);
    this.renderGrid(doc.grid, doc.noop);
  }

  async sort(metric: SortMetric, order: SortOrder): Promise<void> {
    if (!this.sessionId) return;
    const doc = await this.api.sort(this.sessionId, metric, order);
    this.renderGrid(doc.grid);
  }

  async filter(minLen: number, maxLen?: number): Promise<void> {
    if (!this.sessionId) return;
    const doc = await this.api.filter(this.sessionId, minLen, maxLen);
    this.renderGrid(doc.grid);
  }

  addPick(mode: SelectionMode, row: number | undefined, col: number | undefined, set: "A" | "B"): void {
    const pick: Pick = { mode };
    if (row !== undefined) pick.row = row;
    if (col !== undefined) pick.col = col;
    this.pending[set].push(pick);
    this.say(`selection: ${this.pending.A.length} pick(s) in A, ${this.pending.B.length} in B`);
  }

  async compare(): Promise<void> {
    if (!this.sessionId) return;
    if (this.pending.A.length === 0 || this.pending.B.length === 0) {
      this.say("pick regions into both sets first (shift-click / ctrl-click)");
      return;
    }
    const doc = await this.api.select(this.sessionId, this.pending.A, this.pending.B);
    this.say(
      `A: ${doc.sizeA}, B: ${doc.sizeB}` +
        (doc.overlap > 0 ? `, overlap ${doc.overlap}` : "") +
        (doc.warnings.length ? ` (${doc.warnings.join("; ")})` : ""),
    );
    this.pending = { A: [], B: [] };
    await this.refreshPatterns();
  }

  async refreshPatterns(extra: PatternQuery = {}): Promise<void> {
    if (!this.sessionId) return;
    const token = ++this.requestToken;
    const doc = await this.api.getPatterns(this.sessionId, {
      patternLayout: this.patternLayout,
      unitLayout: this.unitLayout,
      ...extra,
    });
    if (token !== this.requestToken) return; // a newer request superseded this one
    this.comparisonView.render(doc.patterns, doc.layout);
  }

  async showSequences(patternId: string | null, alignEvent?: string): Promise<void> {
    if (!this.sessionId || !patternId) return;
    this.currentPatternId = patternId;
    const view = await this.api.getSequences(this.sessionId, patternId, alignEvent);
    this.sequenceView.render(view);
  }
}
