// Render models: plain data for the DOM and chart layers. Keeping these
// pure lets the tests assert exactly what gets displayed, including that
// every numeric string traces back to a captured server response.

import { AuditResult, PlotRecord, WhatIfResponse } from "./api.js";

export function formatNumber(value: number): string {
  return value.toFixed(2);
}

export interface RankingDisplayRow {
  candidateId: string;
  group: string;
  rawScore: string;
  pdei: string;
  selected: boolean;
}

export function rankingRows(response: WhatIfResponse): RankingDisplayRow[] {
  const chosen = new Set(response.selection);
  return response.ranking.map((row) => ({
    candidateId: row.candidate_id,
    group:
      response.scenario === "race_and_gender"
        ? `${row.race_group}&${row.gender_group}`
        : row.race_group,
    rawScore: formatNumber(row.mean_score),
    pdei: formatNumber(row.pdei),
    selected: chosen.has(row.candidate_id),
  }));
}

export interface BadgeModel {
  passes: boolean;
  label: string;
  ratios: { group: string; rate: string; ratio: string }[];
}

export function badgeModel(audit: AuditResult): BadgeModel {
  return {
    passes: audit.passes,
    label: audit.passes ? "4/5 rule: pass" : "4/5 rule: FAIL",
    ratios: Object.entries(audit.groups)
      .sort(([a], [b]) => (a < b ? -1 : 1))
      .map(([group, outcome]) => ({
        group,
        rate: formatNumber(outcome.rate),
        ratio: formatNumber(outcome.impact_ratio),
      })),
  };
}

export interface SeriesModel {
  name: string;
  points: { x: number; y: number }[];
}

export interface RadarModel {
  labels: string[];
  series: { name: string; values: number[] }[];
}

/** Star records (series = sector or the unit ring, x = group label). */
export function radarModel(star: PlotRecord[]): RadarModel {
  const labels: string[] = [];
  for (const record of star) {
    const label = String(record.x);
    if (!labels.includes(label)) {
      labels.push(label);
    }
  }
  const byName = new Map<string, Map<string, number>>();
  for (const record of star) {
    if (!byName.has(record.series)) {
      byName.set(record.series, new Map());
    }
    byName.get(record.series)!.set(String(record.x), record.y);
  }
  return {
    labels,
    series: [...byName.entries()].map(([name, values]) => ({
      name,
      values: labels.map((label) => values.get(label) ?? 0),
    })),
  };
}

export function seriesModel(points: PlotRecord[]): SeriesModel[] {
  const byName = new Map<string, { x: number; y: number }[]>();
  for (const record of points) {
    if (!byName.has(record.series)) {
      byName.set(record.series, []);
    }
    byName.get(record.series)!.push({ x: Number(record.x), y: record.y });
  }
  return [...byName.entries()].map(([name, pts]) => ({ name, points: pts }));
}

/** Every number reachable in a JSON-like value. */
export function numbersIn(value: unknown): number[] {
  if (typeof value === "number") {
    return [value];
  }
  if (Array.isArray(value)) {
    return value.flatMap(numbersIn);
  }
  if (value && typeof value === "object") {
    return Object.values(value as Record<string, unknown>).flatMap(numbersIn);
  }
  return [];
}

/**
 * True when a rendered numeric string equals the display form of some
 * number present in the captured server responses.
 */
export function isServerNumber(rendered: string, captured: readonly unknown[]): boolean {
  for (const body of captured) {
    for (const value of numbersIn(body)) {
      if (formatNumber(value) === rendered) {
        return true;
      }
    }
  }
  return false;
}
