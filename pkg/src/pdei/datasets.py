"""Built-in dataset and the reference tables behind the reproduce command.

``bls-2022-mgmt`` embeds six management-occupation sectors (employment
totals in thousands plus women's and race/ethnicity shares) and the four
national race/ethnicity employed totals they are cross-referenced
against.  The reference tables are the published values this dataset is
expected to reproduce: the 2-decimal disparity table (table 3) and the
adjusted-score tables for four sectors under both adjustment scenarios
(tables 4-7).  Two cells of table 5 contradict their own row neighbors in
the published source and are flagged ``known_paper_typo``; their derived
replacements are listed separately.
"""
from __future__ import annotations

from pdei.errors import InputError
from pdei.labor import LaborForceTable, SectorRecord

_SECTOR_ROWS = (
    ("S1", "Chief executives", 1780.0, 29.2, 85.9, 5.9, 6.7, 6.8),
    ("S2", "Sales managers Computer and information systems managers", 566.0, 34.2, 88.3, 5.9, 3.5, 11.3),
    ("S3", "Medical and health services managers", 764.0, 26.4, 72.6, 7.8, 16.5, 7.5),
    ("S4", "Education and childcare administrators Property", 797.0, 71.6, 74.6, 16.0, 7.3, 9.0),
    ("S5", "Real estate", 988.0, 68.1, 78.0, 16.3, 4.0, 9.8),
    ("S6", "Community association managers", 835.0, 50.3, 83.1, 9.9, 4.3, 11.0),
)

_LABOR_TOTALS = {"R1": 121908.0, "R2": 19937.0, "R3": 10615.0, "R4": 29299.0}

BUILTIN_DATASETS = ("bls-2022-mgmt",)


def load_dataset(name: str = "bls-2022-mgmt") -> tuple[list[SectorRecord], LaborForceTable]:
    if name not in BUILTIN_DATASETS:
        raise InputError(
            f"unknown dataset {name!r}; built-in datasets: {', '.join(BUILTIN_DATASETS)}"
        )
    sectors = [
        SectorRecord(
            sector_id=sid,
            sector_name=sname,
            total_thousands=total,
            pct={"G1": g1, "R1": r1, "R2": r2, "R3": r3, "R4": r4},
        )
        for sid, sname, total, g1, r1, r2, r3, r4 in _SECTOR_ROWS
    ]
    return sectors, LaborForceTable(employed=dict(_LABOR_TOTALS))


# Reference disparity table (2-decimal print precision), groups ordered
# R1, R2, R3, R4, G1, G2.
REFERENCE_DI = {
    "S1": {"R1": 2.18, "R2": 0.48, "R3": 1.09, "R4": 0.36, "G1": 0.41, "G2": 2.42},
    "S2": {"R1": 2.10, "R2": 0.46, "R3": 0.54, "R4": 0.60, "G1": 0.52, "G2": 1.92},
    "S3": {"R1": 1.12, "R2": 0.66, "R3": 3.02, "R4": 0.40, "G1": 0.36, "G2": 2.78},
    "S4": {"R1": 1.13, "R2": 1.43, "R3": 1.18, "R4": 0.48, "G1": 2.53, "G2": 0.40},
    "S5": {"R1": 1.27, "R2": 1.44, "R3": 0.63, "R4": 0.52, "G1": 2.14, "G2": 0.47},
    "S6": {"R1": 1.61, "R2": 0.82, "R3": 0.67, "R4": 0.59, "G1": 1.01, "G2": 0.99},
}

# Adjusted-score reference tables.  Key: table number -> sector plus the
# race-only block (one row per race group, columns C1..C4 = top-four
# candidates) and the race+gender block (one row per race x gender cell).
REFERENCE_PDEI = {
    4: {
        "sector": "S1",
        "race_only": {
            "R1": (0.17, 0.14, 0.12, 0.10),
            "R2": (0.75, 0.65, 0.56, 0.47),
            "R3": (0.33, 0.29, 0.25, 0.21),
            "R4": (1.00, 0.88, 0.75, 0.63),
        },
        "race_and_gender": {
            ("R1", "G1"): (1.00, 0.88, 0.75, 0.63),
            ("R2", "G1"): (1.00, 0.88, 0.75, 0.63),
            ("R3", "G1"): (1.00, 0.88, 0.75, 0.63),
            ("R4", "G1"): (1.00, 0.88, 0.75, 0.63),
            ("R1", "G2"): (0.17, 0.15, 0.13, 0.11),
            ("R2", "G2"): (0.75, 0.65, 0.56, 0.47),
            ("R3", "G2"): (0.33, 0.29, 0.25, 0.21),
            ("R4", "G2"): (1.00, 0.88, 0.75, 0.63),
        },
    },
    5: {
        "sector": "S2",
        "race_only": {
            "R1": (0.22, 0.19, 0.16, 0.14),
            "R2": (1.00, 0.88, 0.75, 0.63),
            "R3": (0.85, 0.74, 0.64, 0.53),
            "R4": (0.76, 0.67, 0.57, 0.48),
        },
        "race_and_gender": {
            ("R1", "G1"): (1.00, 0.88, 0.75, 0.63),
            ("R2", "G1"): (1.00, 0.88, 0.75, 0.63),
            ("R3", "G1"): (1.00, 0.88, 0.75, 0.63),
            ("R4", "G1"): (1.00, 0.88, 0.75, 0.63),
            ("R1", "G2"): (0.00, 0.24, 0.20, 0.17),
            ("R2", "G2"): (1.00, 0.88, 0.75, 0.63),
            ("R3", "G2"): (1.00, 0.74, 0.64, 0.53),
            ("R4", "G2"): (0.76, 0.67, 0.57, 0.48),
        },
    },
    6: {
        "sector": "S5",
        "race_only": {
            "R1": (0.41, 0.36, 0.31, 0.26),
            "R2": (0.36, 0.32, 0.27, 0.23),
            "R3": (0.83, 0.72, 0.62, 0.52),
            "R4": (1.00, 0.88, 0.75, 0.63),
        },
        "race_and_gender": {
            ("R1", "G1"): (0.41, 0.36, 0.31, 0.26),
            ("R2", "G1"): (0.36, 0.32, 0.27, 0.23),
            ("R3", "G1"): (0.83, 0.72, 0.62, 0.52),
            ("R4", "G1"): (1.00, 0.88, 0.75, 0.63),
            ("R1", "G2"): (1.00, 0.88, 0.75, 0.63),
            ("R2", "G2"): (1.00, 0.88, 0.75, 0.63),
            ("R3", "G2"): (1.00, 0.88, 0.75, 0.63),
            ("R4", "G2"): (1.00, 0.88, 0.75, 0.63),
        },
    },
    7: {
        "sector": "S6",
        "race_only": {
            "R1": (0.36, 0.32, 0.27, 0.23),
            "R2": (0.72, 0.63, 0.54, 0.45),
            "R3": (0.88, 0.77, 0.66, 0.55),
            "R4": (1.00, 0.88, 0.75, 0.63),
        },
        "race_and_gender": {
            ("R1", "G1"): (0.98, 0.85, 0.73, 0.61),
            ("R2", "G1"): (0.98, 0.85, 0.73, 0.61),
            ("R3", "G1"): (0.98, 0.85, 0.73, 0.61),
            ("R4", "G1"): (1.00, 0.88, 0.75, 0.63),
            ("R1", "G2"): (1.00, 0.88, 0.75, 0.63),
            ("R2", "G2"): (1.00, 0.88, 0.75, 0.63),
            ("R3", "G2"): (1.00, 0.88, 0.75, 0.63),
            ("R4", "G2"): (1.00, 0.88, 0.75, 0.63),
        },
    },
}

# Cells whose printed values contradict their own C2-C4 neighbors (which
# scale as 7/8, 6/8, 5/8 of C1).  Key: (table, row, column index); value:
# the value derived from the row's structure at full input precision.
KNOWN_TYPO_CELLS = {
    (5, ("R1", "G2"), 0): 0.2701,
    (5, ("R3", "G2"), 0): 0.8684,
}

REPRODUCTION_TOL = 0.02

PDEI_TABLES = tuple(sorted(REFERENCE_PDEI))
ALL_TABLES = (3,) + PDEI_TABLES
