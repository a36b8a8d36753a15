"""Fairness-adjusted candidate screening.

Derives disparate-impact values from labor statistics, adjusts candidate
evaluation scores into relative-efficiency scores under constant returns
to scale, and supports ranking, selection and 4/5-rule auditing through a
CLI, an HTTP service, and a browser console.
"""

from pdei.dea import (
    DeaResult,
    Dmu,
    DmuScore,
    build_ccr_multiplier,
    ccr_efficiency,
    ccr_efficiency_all,
    ratio_oracle,
)
from pdei.errors import ComputeError, InputError, PdeiError
from pdei.estimator import CcrEfficiency
from pdei.labor import (
    DisparityProfile,
    LaborForceTable,
    SectorRecord,
    build_disparity_profile,
    gender_di,
    parse_labor_force,
    parse_sector_stats,
    race_di,
)
from pdei.lp import LinearProgram, LpSolution, LpStatus, solve_lp
from pdei.metrics import (
    ConfusionMatrix,
    GroupRates,
    average_absolute_odds,
    disparate_impact,
    fpr_parity_gap,
    statistical_parity_gap,
    tpr_parity_gap,
)
from pdei.pipeline import (
    Candidate,
    PdeiScore,
    PlotSeries,
    SelectionAudit,
    assemble_dmus,
    audit_four_fifths,
    compute_pdei,
    export_plot_series,
    rank,
    select_top_k,
    uniform_pool,
)

__version__ = "0.1.0"

__all__ = [
    "Candidate",
    "CcrEfficiency",
    "ComputeError",
    "ConfusionMatrix",
    "DeaResult",
    "DisparityProfile",
    "Dmu",
    "DmuScore",
    "GroupRates",
    "InputError",
    "LaborForceTable",
    "LinearProgram",
    "LpSolution",
    "LpStatus",
    "PdeiError",
    "PdeiScore",
    "PlotSeries",
    "SectorRecord",
    "SelectionAudit",
    "assemble_dmus",
    "audit_four_fifths",
    "average_absolute_odds",
    "build_ccr_multiplier",
    "build_disparity_profile",
    "ccr_efficiency",
    "ccr_efficiency_all",
    "compute_pdei",
    "disparate_impact",
    "export_plot_series",
    "fpr_parity_gap",
    "gender_di",
    "parse_labor_force",
    "parse_sector_stats",
    "race_di",
    "rank",
    "ratio_oracle",
    "select_top_k",
    "solve_lp",
    "statistical_parity_gap",
    "tpr_parity_gap",
    "uniform_pool",
]
