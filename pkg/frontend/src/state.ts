// Console state and the operations the UI performs on it. All numbers the
// console displays come from server responses; nothing here recomputes
// disparity or efficiency values.

import {
  ApiError,
  CandidatePayload,
  SectorInfo,
  WhatIfRequest,
  WhatIfResponse,
} from "./api.js";

export const RACE_GROUPS = ["R1", "R2", "R3", "R4"] as const;
export const GENDER_GROUPS = ["G1", "G2"] as const;
export const SCENARIOS = ["race_only", "race_and_gender"] as const;
export const SCHEMES = ["raw_score", "pdei", "equal_per_group"] as const;

export type Scenario = (typeof SCENARIOS)[number];
export type Scheme = (typeof SCHEMES)[number];
export type PoolRow = CandidatePayload;

export interface FieldError {
  field: string;
  message: string;
}

export interface ConsoleState {
  sectors: SectorInfo[];
  sector: string;
  scenario: Scenario;
  scheme: Scheme;
  k: number;
  pool: PoolRow[];
  response: WhatIfResponse | null;
  error: string | null;
  pending: boolean;
}

const PRESET_SCORES = [8, 7, 6, 5];

/** The 32-row uniform evaluation grid: 4 candidates per race x gender cell. */
export function presetPool(): PoolRow[] {
  const rows: PoolRow[] = [];
  for (const race of RACE_GROUPS) {
    for (const gender of GENDER_GROUPS) {
      PRESET_SCORES.forEach((score, index) => {
        rows.push({
          id: `C${index + 1}_${race}_${gender}`,
          race_group: race,
          gender_group: gender,
          scores: [score, score, score, score],
        });
      });
    }
  }
  return rows;
}

/** Field-level validation mirroring the server's 422 semantics. */
export function validateRow(row: PoolRow, otherIds: ReadonlySet<string>): FieldError[] {
  const errors: FieldError[] = [];
  if (!row.id.trim()) {
    errors.push({ field: "id", message: "id must be nonempty" });
  } else if (otherIds.has(row.id)) {
    errors.push({ field: "id", message: `duplicate id ${row.id}` });
  }
  if (!(RACE_GROUPS as readonly string[]).includes(row.race_group)) {
    errors.push({ field: "race_group", message: `race group must be one of ${RACE_GROUPS.join(", ")}` });
  }
  if (!(GENDER_GROUPS as readonly string[]).includes(row.gender_group)) {
    errors.push({ field: "gender_group", message: `gender group must be one of ${GENDER_GROUPS.join(", ")}` });
  }
  if (row.scores.length === 0) {
    errors.push({ field: "scores", message: "scores must be nonempty" });
  } else if (row.scores.some((s) => !Number.isFinite(s) || s < 0)) {
    errors.push({ field: "scores", message: "scores must be finite and nonnegative" });
  } else if (!row.scores.some((s) => s > 0)) {
    errors.push({ field: "scores", message: "at least one score must be positive" });
  }
  return errors;
}

/** "1, 2, 3" -> numbers; NaN entries surface as validation errors later. */
export function parseScores(text: string): number[] {
  return text
    .split(/[,;\s]+/)
    .filter((part) => part.length > 0)
    .map((part) => Number(part));
}

export function initialState(): ConsoleState {
  return {
    sectors: [],
    sector: "",
    scenario: "race_only",
    scheme: "pdei",
    k: 4,
    pool: [],
    response: null,
    error: null,
    pending: false,
  };
}

interface WhatIfApi {
  sectors(): Promise<{ sectors: SectorInfo[] }>;
  whatif(request: WhatIfRequest): Promise<WhatIfResponse>;
}

export class ConsoleController {
  readonly state: ConsoleState = initialState();
  private issued = 0;

  constructor(private readonly api: WhatIfApi) {}

  async init(): Promise<void> {
    const body = await this.api.sectors();
    this.state.sectors = body.sectors;
    if (!this.state.sector && body.sectors.length) {
      this.state.sector = body.sectors[0].sector_id;
    }
  }

  loadPreset(): void {
    this.state.pool = presetPool();
  }

  /** Validate and apply an edit; returns field errors (empty on success). */
  upsertRow(row: PoolRow, index?: number): FieldError[] {
    const others = new Set(
      this.state.pool.filter((_, i) => i !== index).map((r) => r.id),
    );
    const errors = validateRow(row, others);
    if (errors.length) {
      return errors;
    }
    if (index === undefined) {
      this.state.pool.push(row);
    } else if (index >= 0 && index < this.state.pool.length) {
      this.state.pool[index] = row;
    } else {
      return [{ field: "index", message: `no row at index ${index}` }];
    }
    return [];
  }

  removeRow(index: number): void {
    this.state.pool.splice(index, 1);
  }

  setSector(sector: string): void {
    this.state.sector = sector;
  }

  setScenario(scenario: Scenario): void {
    this.state.scenario = scenario;
  }

  setScheme(scheme: Scheme): void {
    this.state.scheme = scheme;
  }

  setK(k: number): void {
    this.state.k = k;
  }

  /**
   * Issue a what-if round trip. Responses of superseded requests are
   * discarded, so the rendered state always matches the latest request;
   * on failure the previous response is preserved and the server's error
   * is surfaced verbatim.
   */
  async runWhatIf(): Promise<void> {
    const seq = ++this.issued;
    this.state.pending = true;
    try {
      const response = await this.api.whatif({
        pool: this.state.pool,
        sector: this.state.sector,
        scenario: this.state.scenario,
        scheme: this.state.scheme,
        k: this.state.k,
      });
      if (seq !== this.issued) {
        return; // a newer request owns the screen
      }
      this.state.response = response;
      this.state.error = null;
    } catch (err) {
      if (seq !== this.issued) {
        return;
      }
      this.state.error =
        err instanceof ApiError ? `${err.code}: ${err.message}` : String(err);
    } finally {
      if (seq === this.issued) {
        this.state.pending = false;
      }
    }
  }
}
