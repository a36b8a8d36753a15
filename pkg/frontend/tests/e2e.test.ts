// End-to-end: drive the real HTTP service with the console's own client,
// then check the rendered values against the captured responses.
import { ChildProcess, spawn } from "node:child_process";
import { afterAll, beforeAll, describe, expect, it } from "vitest";

import { ApiClient } from "../src/api.js";
import { badgeModel, isServerNumber, rankingRows } from "../src/render.js";
import { ConsoleController } from "../src/state.js";

const PORT = 8490 + (process.pid % 400);
const BASE = `http://127.0.0.1:${PORT}`;

let server: ChildProcess;

async function waitForHealth(timeoutMs = 30_000): Promise<void> {
  const deadline = Date.now() + timeoutMs;
  while (Date.now() < deadline) {
    try {
      const response = await fetch(`${BASE}/api/health`);
      if (response.ok) {
        return;
      }
    } catch {
      // not up yet
    }
    await new Promise((resolve) => setTimeout(resolve, 200));
  }
  throw new Error(`service did not come up on ${BASE}`);
}

beforeAll(async () => {
  server = spawn(
    "python3",
    ["-m", "pdei.cli", "serve", "--port", String(PORT), "--host", "127.0.0.1"],
    { stdio: ["ignore", "pipe", "pipe"] },
  );
  server.stderr?.on("data", (chunk) => process.stderr.write(chunk));
  await waitForHealth();
}, 40_000);

afterAll(() => {
  server?.kill("SIGTERM");
});

describe("console against the live service", () => {
  it("preset + what-if (S5, race_and_gender) matches the published block", async () => {
    const api = new ApiClient(BASE);
    const controller = new ConsoleController(api);
    await controller.init();
    expect(controller.state.sectors.map((s) => s.sector_id)).toContain("S5");

    controller.loadPreset();
    expect(controller.state.pool).toHaveLength(32);

    controller.setSector("S5");
    controller.setScenario("race_and_gender");
    controller.setScheme("pdei");
    controller.setK(4);
    await controller.runWhatIf();

    expect(controller.state.error).toBeNull();
    const response = controller.state.response;
    expect(response).not.toBeNull();

    const rows = rankingRows(response!);
    for (const race of ["R1", "R2", "R3", "R4"]) {
      const row = rows.find((r) => r.candidateId === `C1_${race}_G2`);
      expect(row, `row C1_${race}_G2`).toBeDefined();
      expect(row!.pdei).toBe("1.00");
    }

    const badge = badgeModel(response!.audit);
    expect(badge.passes).toBe(response!.audit.passes);
    expect(badge.label.includes("pass")).toBe(response!.audit.passes);

    // every numeric string on screen must come from a captured response
    const rendered = [
      ...rows.flatMap((r) => [r.rawScore, r.pdei]),
      ...badge.ratios.flatMap((r) => [r.rate, r.ratio]),
    ];
    for (const value of rendered) {
      expect(isServerNumber(value, api.captured), `rendered ${value}`).toBe(true);
    }
  }, 30_000);

  it("switching the scheme re-renders from a fresh server response", async () => {
    const api = new ApiClient(BASE);
    const controller = new ConsoleController(api);
    await controller.init();
    controller.loadPreset();
    controller.setSector("S1");
    controller.setScenario("race_only");
    controller.setScheme("raw_score");
    controller.setK(4);
    await controller.runWhatIf();
    const rawSelection = controller.state.response!.selection;
    expect(rawSelection).toHaveLength(4);
    expect(typeof controller.state.response!.audit.passes).toBe("boolean");

    controller.setScheme("pdei");
    await controller.runWhatIf();
    const adjustedSelection = controller.state.response!.selection;
    expect(adjustedSelection).toHaveLength(4);
    // raw picks the four top scorers; the adjusted scheme shifts the mix
    expect(adjustedSelection).not.toEqual(rawSelection);
  }, 30_000);

  it("server-side validation errors surface verbatim and preserve state", async () => {
    const api = new ApiClient(BASE);
    const controller = new ConsoleController(api);
    await controller.init();
    controller.loadPreset();
    controller.setSector("S1");
    await controller.runWhatIf();
    const before = controller.state.response;
    expect(before).not.toBeNull();

    controller.setK(99);
    await controller.runWhatIf();
    expect(controller.state.error).toContain("validation_error");
    expect(controller.state.error).toContain("99");
    expect(controller.state.response).toBe(before);
  }, 30_000);

  it("network failure shows a banner and keeps prior state", async () => {
    const api = new ApiClient("http://127.0.0.1:1");
    const controller = new ConsoleController({
      sectors: async () => ({ sectors: [] }),
      whatif: (request) => api.whatif(request),
    });
    controller.loadPreset();
    await controller.runWhatIf();
    expect(controller.state.error).toContain("network_error");
    expect(controller.state.response).toBeNull();
  }, 30_000);
});
