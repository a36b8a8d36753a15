// Typed client for the screening service. Every successful response body
// is appended to `captured`, which is what the provenance checks in the
// tests compare rendered numbers against.

export interface SectorInfo {
  sector_id: string;
  sector_name: string;
  total_thousands: number;
  pct: Record<string, number>;
}

export interface RankRow {
  candidate_id: string;
  race_group: string;
  gender_group: string;
  mean_score: number;
  pdei: number;
}

export interface GroupAudit {
  applicants: number;
  selected: number;
  rate: number;
  impact_ratio: number;
}

export interface AuditResult {
  groups: Record<string, GroupAudit>;
  passes: boolean;
}

export interface PlotRecord {
  series: string;
  x: number | string;
  y: number;
}

export interface WhatIfResponse {
  sector: string;
  scenario: string;
  scheme: string;
  k: number;
  ranking: RankRow[];
  selection: string[];
  audit: AuditResult;
  plot: { scatter: PlotRecord[]; polar: PlotRecord[] };
}

export interface DisparityResponse {
  sectors: Record<string, Record<string, number>>;
  star: PlotRecord[];
}

export interface CandidatePayload {
  id: string;
  race_group: string;
  gender_group: string;
  scores: number[];
}

export interface WhatIfRequest {
  pool: CandidatePayload[];
  sector: string;
  scenario: string;
  scheme: string;
  k: number;
}

export class ApiError extends Error {
  constructor(
    readonly status: number,
    readonly code: string,
    message: string,
    readonly field?: string,
  ) {
    super(message);
  }
}

type FetchLike = (url: string, init?: RequestInit) => Promise<Response>;

export class ApiClient {
  readonly captured: unknown[] = [];

  constructor(
    readonly baseUrl: string = "",
    private readonly fetchFn: FetchLike = (url, init) => fetch(url, init),
  ) {}

  private async request<T>(path: string, init?: RequestInit): Promise<T> {
    let response: Response;
    try {
      response = await this.fetchFn(this.baseUrl + path, init);
    } catch (err) {
      throw new ApiError(0, "network_error", String(err));
    }
    const body = await response.json().catch(() => null);
    if (!response.ok) {
      const code = (body && body.code) || "http_error";
      const message = (body && body.message) || `HTTP ${response.status}`;
      throw new ApiError(response.status, code, message, body ? body.field : undefined);
    }
    this.captured.push(body);
    return body as T;
  }

  health(): Promise<{ status: string }> {
    return this.request("/api/health");
  }

  sectors(): Promise<{ sectors: SectorInfo[] }> {
    return this.request("/api/sectors");
  }

  disparity(): Promise<DisparityResponse> {
    return this.request("/api/disparity");
  }

  whatif(request: WhatIfRequest): Promise<WhatIfResponse> {
    return this.request("/api/whatif", {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify(request),
    });
  }
}
