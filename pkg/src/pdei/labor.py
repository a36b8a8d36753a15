"""Labor-statistics ingestion and disparity derivation.

Sector files give each sector's total employment and the share of women
and of four race/ethnicity groups; a labor-force table gives national
employed totals per race/ethnicity group.  Cross-referencing the two
yields a disparate-impact value per sector and group:

* race/ethnicity: the group's sector employment rate over the pooled rate
  of the other three groups (the sector total cancels), i.e.
  ``[pct(g)/lf(g)] / [sum pct(g') / sum lf(g')]`` over ``g' != g``;
* gender: ``pct_women / (100 - pct_women)`` and its reciprocal.  No
  per-gender labor totals are available, so the gender ratio assumes equal
  labor-force pools; this is a documented statistical caveat, as is the
  treatment of the overlapping Hispanic/Latino category as a disjoint pool.

Values are kept at full double precision; rounding happens only at
serialization time.
"""
from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field
from typing import Mapping, Sequence

from pdei.errors import InputError
from pdei.metrics import UndefinedRateError, UnknownGroupError

RACE_GROUPS = ("R1", "R2", "R3", "R4")
GENDER_GROUPS = ("G1", "G2")
ALL_GROUPS = RACE_GROUPS + GENDER_GROUPS

SECTOR_HEADER = [
    "sector_id",
    "sector_name",
    "total_thousands",
    "pct_women",
    "pct_white",
    "pct_black",
    "pct_asian",
    "pct_hispanic",
]
_PCT_COLUMNS = {
    "pct_women": "G1",
    "pct_white": "R1",
    "pct_black": "R2",
    "pct_asian": "R3",
    "pct_hispanic": "R4",
}
LABOR_HEADER = ["group_id", "employed_thousands"]
DI_HEADER = ["sector_id", "group_id", "di"]

# Combined race/ethnicity share cap; the groups overlap (Hispanic/Latino
# spans race categories), so the sum may exceed 100 by a bounded margin.
MAX_COMBINED_RACE_PCT = 110.0


@dataclass
class SectorRecord:
    """One sector's employment statistics (total in thousands, shares in %)."""

    sector_id: str
    sector_name: str
    total_thousands: float
    pct: Mapping[str, float]

    def __post_init__(self) -> None:
        if not self.sector_id:
            raise InputError("sector_id must be nonempty")
        if self.total_thousands <= 0:
            raise InputError(f"sector {self.sector_id}: total_thousands must be > 0")
        missing = [g for g in ("G1",) + RACE_GROUPS if g not in self.pct]
        if missing:
            raise InputError(f"sector {self.sector_id}: missing shares for {missing}")
        for group, value in self.pct.items():
            if not 0.0 <= value <= 100.0:
                raise InputError(
                    f"sector {self.sector_id}: share for {group} is {value}, outside [0, 100]"
                )
        combined = sum(self.pct[g] for g in RACE_GROUPS)
        if combined > MAX_COMBINED_RACE_PCT:
            raise InputError(
                f"sector {self.sector_id}: combined race/ethnicity share {combined:.1f} "
                f"exceeds {MAX_COMBINED_RACE_PCT:.0f}"
            )


@dataclass
class LaborForceTable:
    """National employed persons per race/ethnicity group, thousands."""

    employed: Mapping[str, float]

    def __post_init__(self) -> None:
        missing = [g for g in RACE_GROUPS if g not in self.employed]
        if missing:
            raise InputError(f"labor-force table missing groups {missing}")
        for group, value in self.employed.items():
            if group not in RACE_GROUPS:
                raise UnknownGroupError(f"unknown labor-force group {group!r}")
            if value <= 0:
                raise InputError(f"labor-force total for {group} must be > 0, got {value}")

    def total_excluding(self, group: str) -> float:
        return sum(v for g, v in self.employed.items() if g != group)


@dataclass(frozen=True)
class DisparityProfile:
    """sector id -> group id -> disparate impact, full precision."""

    values: Mapping[str, Mapping[str, float]]
    gender_reciprocity_tol: float = field(default=1e-12, compare=False)

    def __post_init__(self) -> None:
        for sector, groups in self.values.items():
            for group, di in groups.items():
                if group not in ALL_GROUPS:
                    raise UnknownGroupError(f"sector {sector}: unknown group {group!r}")
                if not di > 0:
                    raise InputError(f"sector {sector}: DI for {group} must be > 0, got {di}")
            if "G1" in groups and "G2" in groups:
                product = groups["G1"] * groups["G2"]
                if abs(product - 1.0) > self.gender_reciprocity_tol:
                    raise InputError(
                        f"sector {sector}: G1*G2 = {product!r} violates reciprocity"
                    )

    @property
    def sectors(self) -> list[str]:
        return sorted(self.values)

    def di(self, sector: str, group: str) -> float:
        if sector not in self.values:
            raise InputError(
                f"unknown sector {sector}; known sectors: {', '.join(self.sectors)}"
            )
        groups = self.values[sector]
        if group not in groups:
            raise UnknownGroupError(f"sector {sector} has no DI for group {group!r}")
        return groups[group]

    def to_csv(self) -> str:
        out = io.StringIO()
        writer = csv.writer(out, lineterminator="\n")
        writer.writerow(DI_HEADER)
        for sector in self.sectors:
            for group in ALL_GROUPS:
                if group in self.values[sector]:
                    writer.writerow([sector, group, f"{self.values[sector][group]:.6f}"])
        return out.getvalue()

    @classmethod
    def from_csv(cls, data: bytes | str) -> "DisparityProfile":
        rows = _read_csv(data, DI_HEADER, "di.csv")
        values: dict[str, dict[str, float]] = {}
        for line, row in rows:
            sector, group = row["sector_id"], row["group_id"]
            di = _parse_number(row["di"], line, "di")
            if group in values.get(sector, {}):
                raise InputError(f"row {line}: duplicate entry for {sector}/{group}")
            values.setdefault(sector, {})[group] = di
        # 6-decimal cells cannot satisfy exact reciprocity; allow quantization.
        return cls(values=values, gender_reciprocity_tol=1e-5)


def _parse_number(cell: str, line: int, column: str) -> float:
    try:
        return float(cell)
    except ValueError:
        raise InputError(f"row {line}, column {column!r}: could not parse {cell!r} as a number") from None


def _read_csv(data: bytes | str, header: list[str], label: str):
    text = data.decode("utf-8") if isinstance(data, bytes) else data
    reader = csv.reader(io.StringIO(text))
    try:
        got_header = next(reader)
    except StopIteration:
        raise InputError(f"{label}: file is empty") from None
    if [h.strip() for h in got_header] != header:
        raise InputError(f"{label}: expected header {','.join(header)}, got {','.join(got_header)}")
    rows = []
    for line, row in enumerate(reader, start=2):
        if not row or all(not cell.strip() for cell in row):
            continue
        if len(row) != len(header):
            raise InputError(f"{label}: row {line} has {len(row)} cells, expected {len(header)}")
        rows.append((line, dict(zip(header, (cell.strip() for cell in row)))))
    return rows


def parse_sector_stats(data: bytes | str) -> list[SectorRecord]:
    """Parse a sector_stats.csv payload into validated records."""
    rows = _read_csv(data, SECTOR_HEADER, "sector_stats.csv")
    records = []
    seen = set()
    for line, row in rows:
        sector_id = row["sector_id"]
        if sector_id in seen:
            raise InputError(f"row {line}: duplicate sector_id {sector_id!r}")
        seen.add(sector_id)
        total = _parse_number(row["total_thousands"], line, "total_thousands")
        pct = {
            group: _parse_number(row[column], line, column)
            for column, group in _PCT_COLUMNS.items()
        }
        records.append(
            SectorRecord(
                sector_id=sector_id,
                sector_name=row["sector_name"],
                total_thousands=total,
                pct=pct,
            )
        )
    if not records:
        raise InputError("sector_stats.csv: no data rows")
    return records


def parse_labor_force(data: bytes | str) -> LaborForceTable:
    rows = _read_csv(data, LABOR_HEADER, "labor_force.csv")
    employed: dict[str, float] = {}
    for line, row in rows:
        group = row["group_id"]
        if group in employed:
            raise InputError(f"row {line}: duplicate group_id {group!r}")
        employed[group] = _parse_number(row["employed_thousands"], line, "employed_thousands")
    return LaborForceTable(employed=employed)


def race_di(sector: SectorRecord, group: str, labor_force: LaborForceTable) -> float:
    """Disparate impact for one race/ethnicity group in one sector.

    The group's employment rate (sector share over national pool) is
    divided by the pooled rate of the other three groups; the sector total
    cancels algebraically, so only shares and pool sizes enter.
    """
    if group not in RACE_GROUPS:
        raise UnknownGroupError(f"race DI is defined for {RACE_GROUPS}, got {group!r}")
    share = sector.pct[group]
    if share <= 0:
        raise UndefinedRateError(
            f"sector {sector.sector_id}: group {group} has zero share; DI undefined"
        )
    other_share = sum(sector.pct[g] for g in RACE_GROUPS if g != group)
    if other_share <= 0:
        raise UndefinedRateError(
            f"sector {sector.sector_id}: complement of {group} has zero share; DI undefined"
        )
    rate = share / labor_force.employed[group]
    complement_rate = other_share / labor_force.total_excluding(group)
    return rate / complement_rate


def gender_di(sector: SectorRecord) -> tuple[float, float]:
    """(DI for women, DI for the complement), assuming equal labor pools."""
    share = sector.pct["G1"]
    if not 0.0 < share < 100.0:
        raise UndefinedRateError(
            f"sector {sector.sector_id}: women's share {share} leaves a zero group; DI undefined"
        )
    di_women = share / (100.0 - share)
    return di_women, 1.0 / di_women


def build_disparity_profile(
    sectors: Sequence[SectorRecord], labor_force: LaborForceTable
) -> DisparityProfile:
    """Derive the full sector-by-group disparity table at full precision."""
    if not sectors:
        raise InputError("no sectors given")
    values: dict[str, dict[str, float]] = {}
    for sector in sectors:
        row: dict[str, float] = {}
        for group in RACE_GROUPS:
            row[group] = race_di(sector, group, labor_force)
        row["G1"], row["G2"] = gender_di(sector)
        values[sector.sector_id] = row
    return DisparityProfile(values=values)
