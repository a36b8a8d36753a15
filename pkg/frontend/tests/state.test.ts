import { describe, expect, it } from "vitest";

import { ApiError, WhatIfRequest, WhatIfResponse } from "../src/api.js";
import {
  ConsoleController,
  parseScores,
  presetPool,
  validateRow,
} from "../src/state.js";

function fakeResponse(tag: string): WhatIfResponse {
  return {
    sector: tag,
    scenario: "race_only",
    scheme: "pdei",
    k: 1,
    ranking: [],
    selection: [],
    audit: { groups: {}, passes: true },
    plot: { scatter: [], polar: [] },
  };
}

describe("presetPool", () => {
  it("holds 32 rows with 8/7/6/5 score vectors per group cell", () => {
    const pool = presetPool();
    expect(pool).toHaveLength(32);
    const cells = new Set(pool.map((r) => `${r.race_group}|${r.gender_group}`));
    expect(cells.size).toBe(8);
    for (const cell of cells) {
      const [race, gender] = cell.split("|");
      const members = pool.filter(
        (r) => r.race_group === race && r.gender_group === gender,
      );
      expect(members.map((r) => r.scores[0])).toEqual([8, 7, 6, 5]);
      for (const member of members) {
        expect(member.scores).toHaveLength(4);
        expect(new Set(member.scores).size).toBe(1);
      }
    }
    expect(new Set(pool.map((r) => r.id)).size).toBe(32);
  });
});

describe("validateRow", () => {
  const ok = { id: "a", race_group: "R1", gender_group: "G1", scores: [1, 2] };

  it("accepts a valid row", () => {
    expect(validateRow(ok, new Set())).toEqual([]);
  });

  it("rejects negative scores inline", () => {
    const errors = validateRow({ ...ok, scores: [3, -1] }, new Set());
    expect(errors.some((e) => e.field === "scores")).toBe(true);
  });

  it("rejects all-zero scores", () => {
    expect(validateRow({ ...ok, scores: [0, 0] }, new Set())).not.toEqual([]);
  });

  it("rejects duplicate ids", () => {
    const errors = validateRow(ok, new Set(["a"]));
    expect(errors[0].field).toBe("id");
    expect(errors[0].message).toContain("duplicate");
  });

  it("rejects unknown groups", () => {
    expect(validateRow({ ...ok, race_group: "R9" }, new Set())).not.toEqual([]);
    expect(validateRow({ ...ok, gender_group: "X" }, new Set())).not.toEqual([]);
  });
});

describe("parseScores", () => {
  it("splits on commas and whitespace", () => {
    expect(parseScores("8, 7 6;5")).toEqual([8, 7, 6, 5]);
  });
});

describe("ConsoleController", () => {
  const sectors = {
    sectors: [
      { sector_id: "S1", sector_name: "one", total_thousands: 1, pct: {} },
      { sector_id: "S2", sector_name: "two", total_thousands: 2, pct: {} },
    ],
  };

  it("initializes sector from the server list", async () => {
    const controller = new ConsoleController({
      sectors: async () => sectors,
      whatif: async () => fakeResponse("S1"),
    });
    await controller.init();
    expect(controller.state.sector).toBe("S1");
    expect(controller.state.sectors).toHaveLength(2);
  });

  it("applies only the most recently issued what-if response", async () => {
    const resolvers: ((r: WhatIfResponse) => void)[] = [];
    const controller = new ConsoleController({
      sectors: async () => sectors,
      whatif: (request: WhatIfRequest) =>
        new Promise<WhatIfResponse>((resolve) => {
          resolvers.push(resolve);
        }),
    });
    controller.loadPreset();
    const first = controller.runWhatIf();
    const second = controller.runWhatIf();
    // the second (newest) request resolves first ...
    resolvers[1](fakeResponse("newest"));
    await second;
    expect(controller.state.response?.sector).toBe("newest");
    // ... and the stale first response must be discarded when it lands
    resolvers[0](fakeResponse("stale"));
    await first;
    expect(controller.state.response?.sector).toBe("newest");
    expect(controller.state.pending).toBe(false);
  });

  it("keeps the prior response and surfaces the server error on failure", async () => {
    let fail = false;
    const controller = new ConsoleController({
      sectors: async () => sectors,
      whatif: async () => {
        if (fail) {
          throw new ApiError(422, "validation_error", "k=99 exceeds the pool size 32", "k");
        }
        return fakeResponse("good");
      },
    });
    controller.loadPreset();
    await controller.runWhatIf();
    expect(controller.state.response?.sector).toBe("good");
    fail = true;
    await controller.runWhatIf();
    expect(controller.state.error).toBe("validation_error: k=99 exceeds the pool size 32");
    expect(controller.state.response?.sector).toBe("good");
  });

  it("validates edits before applying them", () => {
    const controller = new ConsoleController({
      sectors: async () => sectors,
      whatif: async () => fakeResponse("x"),
    });
    controller.loadPreset();
    const bad = controller.upsertRow(
      { id: "C1_R1_G1", race_group: "R1", gender_group: "G1", scores: [1] },
    );
    expect(bad[0].message).toContain("duplicate");
    expect(controller.state.pool).toHaveLength(32);
    const good = controller.upsertRow(
      { id: "fresh", race_group: "R2", gender_group: "G2", scores: [3] },
    );
    expect(good).toEqual([]);
    expect(controller.state.pool).toHaveLength(33);
    controller.removeRow(32);
    expect(controller.state.pool).toHaveLength(32);
  });
});
