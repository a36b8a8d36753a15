// Chart.js glue (browser only; Chart comes from the UMD bundle loaded in
// index.html). Angles and radii are server data; only the projection to
// screen coordinates happens here.

import { PlotRecord } from "./api.js";
import { radarModel, seriesModel } from "./render.js";

declare const Chart: any;

const PALETTE = [
  "#4e79a7",
  "#f28e2b",
  "#e15759",
  "#76b7b2",
  "#59a14f",
  "#edc948",
  "#b07aa1",
];

const charts = new Map<string, any>();

function replaceChart(canvas: HTMLCanvasElement, config: unknown): void {
  charts.get(canvas.id)?.destroy();
  charts.set(canvas.id, new Chart(canvas, config));
}

export function renderRadar(canvas: HTMLCanvasElement, star: PlotRecord[]): void {
  const model = radarModel(star);
  replaceChart(canvas, {
    type: "radar",
    data: {
      labels: model.labels,
      datasets: model.series.map((s, i) => ({
        label: s.name,
        data: s.values,
        fill: false,
        borderColor: s.name === "DI=1" ? "#999999" : PALETTE[i % PALETTE.length],
        borderDash: s.name === "DI=1" ? [6, 4] : undefined,
        pointRadius: s.name === "DI=1" ? 0 : 2,
      })),
    },
    options: { responsive: false, scales: { r: { beginAtZero: true } } },
  });
}

export function renderScatter(canvas: HTMLCanvasElement, points: PlotRecord[]): void {
  const model = seriesModel(points);
  replaceChart(canvas, {
    type: "scatter",
    data: {
      datasets: model.map((s, i) => ({
        label: s.name,
        data: s.points,
        backgroundColor: PALETTE[i % PALETTE.length],
      })),
    },
    options: {
      responsive: false,
      scales: {
        x: { title: { display: true, text: "disparate impact" } },
        y: { title: { display: true, text: "adjusted score" }, beginAtZero: true },
      },
    },
  });
}

export function renderPolar(canvas: HTMLCanvasElement, points: PlotRecord[]): void {
  const model = seriesModel(points);
  replaceChart(canvas, {
    type: "scatter",
    data: {
      datasets: model.map((s, i) => ({
        label: s.name,
        // projection of (angle, radius) onto the plane
        data: s.points.map((p) => ({ x: p.y * Math.cos(p.x), y: p.y * Math.sin(p.x) })),
        backgroundColor: s.name === "DI" ? "#999999" : PALETTE[i % PALETTE.length],
        pointStyle: s.name === "DI" ? "rectRot" : "circle",
        radius: s.name === "DI" ? 6 : 3,
      })),
    },
    options: {
      responsive: false,
      scales: {
        x: { ticks: { display: false } },
        y: { ticks: { display: false } },
      },
    },
  });
}
