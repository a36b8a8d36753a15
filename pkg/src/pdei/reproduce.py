"""Recompute the built-in dataset's reference tables and report deviations.

Used by the ``reproduce`` CLI subcommand: every cell of the selected
reference table is recomputed from the embedded dataset and compared at a
tolerance (default 0.02, the print precision of the reference values).
Cells flagged ``known_paper_typo`` are reported with their derived values
instead of being compared.
"""
from __future__ import annotations

from dataclasses import dataclass

from pdei.datasets import (
    ALL_TABLES,
    KNOWN_TYPO_CELLS,
    REFERENCE_DI,
    REFERENCE_PDEI,
    REPRODUCTION_TOL,
    load_dataset,
)
from pdei.errors import InputError
from pdei.labor import ALL_GROUPS, RACE_GROUPS, build_disparity_profile
from pdei.pipeline import compute_pdei, uniform_pool

STATUS_OK = "ok"
STATUS_FAIL = "fail"
STATUS_TYPO = "known_paper_typo"


@dataclass(frozen=True)
class CellReport:
    table: int
    block: str
    row: str
    column: str
    computed: float
    reference: float
    delta: float | None
    status: str


def _table3_reports(tol: float) -> list[CellReport]:
    sectors, labor = load_dataset()
    profile = build_disparity_profile(sectors, labor)
    reports = []
    for sector in sorted(REFERENCE_DI):
        for group in ALL_GROUPS:
            computed = profile.di(sector, group)
            reference = REFERENCE_DI[sector][group]
            delta = abs(computed - reference)
            reports.append(
                CellReport(
                    table=3,
                    block="disparity",
                    row=sector,
                    column=group,
                    computed=computed,
                    reference=reference,
                    delta=delta,
                    status=STATUS_OK if delta <= tol else STATUS_FAIL,
                )
            )
    return reports


def _pdei_reports(table: int, tol: float) -> list[CellReport]:
    table_ref = REFERENCE_PDEI[table]
    sector = table_ref["sector"]
    sectors, labor = load_dataset()
    profile = build_disparity_profile(sectors, labor)
    reports = []

    race_scores = compute_pdei(uniform_pool("race_only"), profile, sector, "race_only")
    by_id = {s.candidate_id: s.pdei for s in race_scores}
    for race in RACE_GROUPS:
        for j in range(4):
            computed = by_id[f"C{j + 1}_{race}"]
            reference = table_ref["race_only"][race][j]
            delta = abs(computed - reference)
            reports.append(
                CellReport(
                    table=table,
                    block="race_only",
                    row=race,
                    column=f"C{j + 1}",
                    computed=computed,
                    reference=reference,
                    delta=delta,
                    status=STATUS_OK if delta <= tol else STATUS_FAIL,
                )
            )

    combined_scores = compute_pdei(
        uniform_pool("race_and_gender"), profile, sector, "race_and_gender"
    )
    by_id = {s.candidate_id: s.pdei for s in combined_scores}
    for (race, gender), row in table_ref["race_and_gender"].items():
        for j in range(4):
            computed = by_id[f"C{j + 1}_{race}_{gender}"]
            reference = row[j]
            if (table, (race, gender), j) in KNOWN_TYPO_CELLS:
                reports.append(
                    CellReport(
                        table=table,
                        block="race_and_gender",
                        row=f"{race}&{gender}",
                        column=f"C{j + 1}",
                        computed=computed,
                        reference=reference,
                        delta=None,
                        status=STATUS_TYPO,
                    )
                )
                continue
            delta = abs(computed - reference)
            reports.append(
                CellReport(
                    table=table,
                    block="race_and_gender",
                    row=f"{race}&{gender}",
                    column=f"C{j + 1}",
                    computed=computed,
                    reference=reference,
                    delta=delta,
                    status=STATUS_OK if delta <= tol else STATUS_FAIL,
                )
            )
    return reports


def reproduce_table(table: int, tol: float = REPRODUCTION_TOL) -> list[CellReport]:
    if table == 3:
        return _table3_reports(tol)
    if table in REFERENCE_PDEI:
        return _pdei_reports(table, tol)
    raise InputError(f"unknown table {table}; available tables: {ALL_TABLES}")


def render_report(table: int, reports: list[CellReport], tol: float) -> str:
    lines = []
    if table == 3:
        lines.append(f"table 3: disparity by sector and group (tolerance {tol:g})")
        lines.append("")
        header = "sector  " + "".join(f"{g:>8}" for g in ALL_GROUPS)
        lines.append(header)
        for sector in sorted({r.row for r in reports}):
            row = [r for r in reports if r.row == sector]
            cells = {r.column: r.computed for r in row}
            lines.append(f"{sector:<8}" + "".join(f"{cells[g]:>8.4f}" for g in ALL_GROUPS))
    else:
        sector = REFERENCE_PDEI[table]["sector"]
        lines.append(f"table {table}: adjusted scores, sector {sector} (tolerance {tol:g})")
        for block in ("race_only", "race_and_gender"):
            rows = [r for r in reports if r.block == block]
            if not rows:
                continue
            lines.append("")
            lines.append(f"{block:<16}" + "".join(f"{c:>8}" for c in ("C1", "C2", "C3", "C4")))
            seen: list[str] = []
            for r in rows:
                if r.row not in seen:
                    seen.append(r.row)
            for label in seen:
                cells = {r.column: r.computed for r in rows if r.row == label}
                lines.append(f"  {label:<14}" + "".join(f"{cells[c]:>8.4f}" for c in ("C1", "C2", "C3", "C4")))
    lines.append("")
    lines.append("per-cell report:")
    for r in reports:
        if r.status == STATUS_TYPO:
            lines.append(
                f"  {r.block} {r.row} {r.column}: computed {r.computed:.4f} "
                f"printed {r.reference:.2f} status {r.status} (derived value {r.computed:.4f})"
            )
        else:
            lines.append(
                f"  {r.block} {r.row} {r.column}: computed {r.computed:.4f} "
                f"reference {r.reference:.2f} |delta| {r.delta:.4f} {r.status}"
            )
    compared = [r for r in reports if r.status != STATUS_TYPO]
    failed = [r for r in compared if r.status == STATUS_FAIL]
    typos = len(reports) - len(compared)
    summary = f"summary: {len(compared) - len(failed)}/{len(compared)} cells within {tol:g}"
    if typos:
        summary += f"; {typos} flagged {STATUS_TYPO}"
    if failed:
        summary += f"; {len(failed)} FAILED"
    lines.append(summary)
    return "\n".join(lines) + "\n"
