// Interaction-log replay: re-issuing a captured log must reproduce the
// exact request sequence (method, path, body) the original session made.

import { describe, expect, it } from "vitest";

import { ApiClient, replay } from "../src/api.js";
import gridFixture from "./fixtures/grid.json";
import patternsFixture from "./fixtures/patterns.json";
import sequencesFixture from "./fixtures/sequences.json";

interface Recorded {
  method: string;
  url: string;
  body: string | null;
}

function mockServer() {
  const requests: Recorded[] = [];
  const fetchFn = async (input: string, init?: RequestInit): Promise<Response> => {
    requests.push({
      method: init?.method ?? "GET",
      url: input,
      body: (init?.body as string | undefined) ?? null,
    });
    const path = new URL(input, "http://test").pathname;
    let payload: unknown = {};
    if (path === "/sessions") {
      payload = {
        sessionId: "s1",
        stats: { count: 320, avgLength: 6.4375 },
        initialGrid: (gridFixture as { grid: unknown }).grid,
      };
    } else if (path.endsWith("/matrix") || path.endsWith("/sort") || path.endsWith("/filter")) {
      payload = gridFixture;
    } else if (path.endsWith("/selection")) {
      payload = { sizeA: 10, sizeB: 8, overlap: 0, warnings: [] };
    } else if (path.endsWith("/sequences")) {
      payload = sequencesFixture;
    } else if (path.endsWith("/patterns")) {
      payload = patternsFixture;
    }
    return new Response(JSON.stringify(payload), {
      status: 200,
      headers: { "Content-Type": "application/json" },
    });
  };
  return { requests, fetchFn };
}

async function scriptedSession(client: ApiClient): Promise<void> {
  const session = await client.createSession("sample");
  const sid = session.sessionId;
  const grid = session.initialGrid;
  await client.matrixOp(sid, "expandCell", {
    rowPath: grid.rows[0].path,
    colPath: grid.columns[0].path,
  });
  await client.sort(sid, "count", "descending");
  await client.select(
    sid,
    [{ mode: "cell", row: 0, col: 0 }],
    [{ mode: "cell", row: 1, col: 1 }],
  );
  const patterns = await client.getPatterns(sid, {
    patternLayout: "map2d",
    unitLayout: "maxfill",
  });
  await client.getPatterns(sid, { patternLayout: "filly", unitLayout: "maxfill" });
  const first = patterns.patterns[0];
  await client.getSequences(sid, first.id, first.events[0]);
}

describe("interaction log replay", () => {
  it("reproduces an identical request sequence", async () => {
    const original = mockServer();
    const client = new ApiClient("http://test", original.fetchFn);
    await scriptedSession(client);
    expect(client.log.length).toBeGreaterThanOrEqual(6);

    const replayed = mockServer();
    await replay(client.log, new ApiClient("http://test", replayed.fetchFn));

    expect(replayed.requests).toEqual(original.requests);
  });

  it("logs bodies verbatim for POSTs and none for GETs", async () => {
    const server = mockServer();
    const client = new ApiClient("http://test", server.fetchFn);
    await scriptedSession(client);
    for (const entry of client.log) {
      if (entry.method === "GET") {
        expect(entry.body).toBeUndefined();
      } else {
        expect(entry.body).toBeDefined();
      }
    }
  });

  it("raises ApiError with the detail on failure", async () => {
    const fetchFn = async () =>
      new Response(JSON.stringify({ detail: "no selection in this session" }), { status: 409 });
    const client = new ApiClient("http://test", fetchFn);
    await expect(client.getPatterns("s1")).rejects.toMatchObject({ status: 409 });
  });
});
