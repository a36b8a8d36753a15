// DOM wiring for the console. State transitions live in state.ts and the
// display strings in render.ts; this file only moves them into the page.

import { ApiClient } from "./api.js";
import { renderPolar, renderRadar, renderScatter } from "./charts.js";
import { badgeModel, rankingRows } from "./render.js";
import {
  ConsoleController,
  GENDER_GROUPS,
  PoolRow,
  RACE_GROUPS,
  Scenario,
  Scheme,
  parseScores,
} from "./state.js";

const api = new ApiClient("");
const controller = new ConsoleController(api);

function el<T extends HTMLElement>(id: string): T {
  const node = document.getElementById(id);
  if (!node) {
    throw new Error(`missing element #${id}`);
  }
  return node as T;
}

function options(values: readonly string[], selected: string): string {
  return values
    .map((v) => `<option value="${v}" ${v === selected ? "selected" : ""}>${v}</option>`)
    .join("");
}

function renderPool(): void {
  const body = el<HTMLTableSectionElement>("pool-body");
  body.innerHTML = "";
  controller.state.pool.forEach((row, index) => {
    const tr = document.createElement("tr");
    tr.innerHTML = `
      <td><input class="id" value="${row.id}" size="12"></td>
      <td><select class="race">${options(RACE_GROUPS, row.race_group)}</select></td>
      <td><select class="gender">${options(GENDER_GROUPS, row.gender_group)}</select></td>
      <td><input class="scores" value="${row.scores.join(", ")}" size="16"></td>
      <td><button class="remove">x</button></td>
      <td class="row-error"></td>`;
    const commit = () => {
      const edited: PoolRow = {
        id: tr.querySelector<HTMLInputElement>(".id")!.value.trim(),
        race_group: tr.querySelector<HTMLSelectElement>(".race")!.value,
        gender_group: tr.querySelector<HTMLSelectElement>(".gender")!.value,
        scores: parseScores(tr.querySelector<HTMLInputElement>(".scores")!.value),
      };
      const errors = controller.upsertRow(edited, index);
      tr.querySelector<HTMLTableCellElement>(".row-error")!.textContent = errors
        .map((e) => `${e.field}: ${e.message}`)
        .join("; ");
    };
    tr.querySelectorAll("input, select").forEach((node) =>
      node.addEventListener("change", commit),
    );
    tr.querySelector<HTMLButtonElement>(".remove")!.addEventListener("click", () => {
      controller.removeRow(index);
      renderPool();
    });
    body.appendChild(tr);
  });
  el<HTMLSpanElement>("pool-size").textContent = String(controller.state.pool.length);
}

function renderResults(): void {
  const state = controller.state;
  el<HTMLDivElement>("error-banner").textContent = state.error ?? "";
  el<HTMLDivElement>("error-banner").style.display = state.error ? "block" : "none";
  if (!state.response) {
    return;
  }
  const badge = badgeModel(state.response.audit);
  const badgeNode = el<HTMLDivElement>("badge");
  badgeNode.textContent = badge.label;
  badgeNode.className = badge.passes ? "badge pass" : "badge fail";
  el<HTMLTableSectionElement>("ratio-body").innerHTML = badge.ratios
    .map((r) => `<tr><td>${r.group}</td><td>${r.rate}</td><td>${r.ratio}</td></tr>`)
    .join("");
  el<HTMLTableSectionElement>("ranking-body").innerHTML = rankingRows(state.response)
    .map(
      (row) => `
      <tr class="${row.selected ? "selected" : ""}">
        <td>${row.candidateId}</td><td>${row.group}</td>
        <td>${row.rawScore}</td><td>${row.pdei}</td>
        <td>${row.selected ? "yes" : ""}</td>
      </tr>`,
    )
    .join("");
  renderScatter(el<HTMLCanvasElement>("scatter-chart"), state.response.plot.scatter);
  renderPolar(el<HTMLCanvasElement>("polar-chart"), state.response.plot.polar);
}

async function run(): Promise<void> {
  const button = el<HTMLButtonElement>("run");
  button.disabled = true;
  await controller.runWhatIf();
  button.disabled = controller.state.pending;
  renderResults();
}

async function boot(): Promise<void> {
  await controller.init();
  const sectorSelect = el<HTMLSelectElement>("sector");
  sectorSelect.innerHTML = controller.state.sectors
    .map((s) => `<option value="${s.sector_id}">${s.sector_id} – ${s.sector_name}</option>`)
    .join("");
  sectorSelect.value = controller.state.sector;
  sectorSelect.addEventListener("change", () => controller.setSector(sectorSelect.value));

  const scenarioSelect = el<HTMLSelectElement>("scenario");
  scenarioSelect.addEventListener("change", () =>
    controller.setScenario(scenarioSelect.value as Scenario),
  );
  const schemeSelect = el<HTMLSelectElement>("scheme");
  schemeSelect.addEventListener("change", () =>
    controller.setScheme(schemeSelect.value as Scheme),
  );
  const kInput = el<HTMLInputElement>("k");
  kInput.addEventListener("change", () => controller.setK(Number(kInput.value)));

  el<HTMLButtonElement>("preset").addEventListener("click", () => {
    controller.loadPreset();
    renderPool();
  });
  el<HTMLButtonElement>("add-row").addEventListener("click", () => {
    const errors = controller.upsertRow({
      id: `new_${controller.state.pool.length + 1}`,
      race_group: "R1",
      gender_group: "G1",
      scores: [5, 5, 5, 5],
    });
    if (!errors.length) {
      renderPool();
    }
  });
  el<HTMLButtonElement>("run").addEventListener("click", () => void run());

  const disparity = await api.disparity();
  renderRadar(el<HTMLCanvasElement>("radar-chart"), disparity.star);

  controller.loadPreset();
  renderPool();
}

void boot();
