"""Screening pipeline: candidates plus a disparity profile in, adjusted
scores, rankings, selections, audits and chart data out.

A candidate's adjusted score is the efficiency of a unit whose outputs are
the candidate's evaluation scores and whose inputs are the disparity
values of the candidate's groups: the race/ethnicity DI alone
(``race_only``) or race plus gender DI (``race_and_gender``).  The
reference set is exactly the pool under evaluation.
"""
from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

import numpy as np

from pdei.dea import Dmu, ccr_efficiency_all
from pdei.errors import InputError
from pdei.labor import GENDER_GROUPS, RACE_GROUPS, DisparityProfile

SCENARIOS = ("race_only", "race_and_gender")
SCHEMES = ("raw_score", "pdei", "equal_per_group")
GROUP_KEYS = ("race", "gender", "race_gender")

SCORES_HEADER = ["candidate_id", "sector_id", "scenario", "pdei"]

# The preset evaluation grid: four candidates per group cell with uniform
# score vectors 8/7/6/5 across four competencies.
UNIFORM_SCORE_VECTORS = (
    (8.0, 8.0, 8.0, 8.0),
    (7.0, 7.0, 7.0, 7.0),
    (6.0, 6.0, 6.0, 6.0),
    (5.0, 5.0, 5.0, 5.0),
)


@dataclass
class Candidate:
    id: str
    race_group: str
    gender_group: str
    scores: tuple[float, ...]

    def __post_init__(self) -> None:
        if not self.id:
            raise InputError("candidate id must be nonempty")
        if self.race_group not in RACE_GROUPS:
            raise InputError(
                f"candidate {self.id}: race_group {self.race_group!r} not in {RACE_GROUPS}"
            )
        if self.gender_group not in GENDER_GROUPS:
            raise InputError(
                f"candidate {self.id}: gender_group {self.gender_group!r} not in {GENDER_GROUPS}"
            )
        self.scores = tuple(float(s) for s in self.scores)
        if not self.scores:
            raise InputError(f"candidate {self.id}: scores must be nonempty")
        if any(not math.isfinite(s) or s < 0 for s in self.scores):
            raise InputError(f"candidate {self.id}: scores must be finite and >= 0")
        if not any(s > 0 for s in self.scores):
            raise InputError(f"candidate {self.id}: at least one score must be positive")

    @property
    def mean_score(self) -> float:
        return sum(self.scores) / len(self.scores)


@dataclass(frozen=True)
class PdeiScore:
    """One candidate's adjusted score, self-sufficient for ranking."""

    candidate_id: str
    sector: str
    scenario: str
    pdei: float
    mean_score: float
    race_group: str
    gender_group: str


@dataclass(frozen=True)
class GroupOutcome:
    applicants: int
    selected: int
    rate: float
    impact_ratio: float


@dataclass(frozen=True)
class SelectionAudit:
    groups: Mapping[str, GroupOutcome]
    passes: bool

    def to_dict(self) -> dict:
        return {
            "groups": {
                g: {
                    "applicants": o.applicants,
                    "selected": o.selected,
                    "rate": o.rate,
                    "impact_ratio": o.impact_ratio,
                }
                for g, o in sorted(self.groups.items())
            },
            "passes": self.passes,
        }


@dataclass(frozen=True)
class PlotPoint:
    series: str
    x: float | str
    y: float


@dataclass(frozen=True)
class PlotSeries:
    kind: str
    points: tuple[PlotPoint, ...]

    def to_records(self) -> list[dict]:
        return [{"series": p.series, "x": p.x, "y": p.y} for p in self.points]


def uniform_pool(scenario: str) -> list[Candidate]:
    """The preset pool: 16 candidates (4 per race group) for race_only,
    32 (4 per race x gender cell) for race_and_gender."""
    _check_scenario(scenario)
    pool = []
    if scenario == "race_only":
        for race in RACE_GROUPS:
            for j, vector in enumerate(UNIFORM_SCORE_VECTORS, start=1):
                pool.append(Candidate(f"C{j}_{race}", race, "G1", vector))
    else:
        for race in RACE_GROUPS:
            for gender in GENDER_GROUPS:
                for j, vector in enumerate(UNIFORM_SCORE_VECTORS, start=1):
                    pool.append(Candidate(f"C{j}_{race}_{gender}", race, gender, vector))
    return pool


def _check_scenario(scenario: str) -> None:
    if scenario not in SCENARIOS:
        raise InputError(f"unknown scenario {scenario!r}; expected one of {SCENARIOS}")


def _check_pool(pool: Sequence[Candidate]) -> None:
    if not pool:
        raise InputError("candidate pool is empty")
    dim = len(pool[0].scores)
    seen: set[str] = set()
    for c in pool:
        if len(c.scores) != dim:
            raise InputError(
                f"candidate {c.id}: score vector has length {len(c.scores)}, expected {dim}"
            )
        if c.id in seen:
            raise InputError(f"duplicate candidate id {c.id!r}")
        seen.add(c.id)


def assemble_dmus(
    pool: Sequence[Candidate], profile: DisparityProfile, sector: str, scenario: str
) -> list[Dmu]:
    """One unit per candidate: outputs = scores, inputs = the candidate's
    group DI values at full precision."""
    _check_pool(pool)
    _check_scenario(scenario)
    dmus = []
    for c in pool:
        race = profile.di(sector, c.race_group)
        if scenario == "race_only":
            inputs = [race]
        else:
            inputs = [race, profile.di(sector, c.gender_group)]
        dmus.append(Dmu(id=c.id, inputs=np.array(inputs), outputs=np.array(c.scores)))
    return dmus


def compute_pdei(
    pool: Sequence[Candidate], profile: DisparityProfile, sector: str, scenario: str
) -> list[PdeiScore]:
    """Adjusted score per candidate, in pool order."""
    dmus = assemble_dmus(pool, profile, sector, scenario)
    result = ccr_efficiency_all(dmus)
    return [
        PdeiScore(
            candidate_id=c.id,
            sector=sector,
            scenario=scenario,
            pdei=score.efficiency,
            mean_score=c.mean_score,
            race_group=c.race_group,
            gender_group=c.gender_group,
        )
        for c, score in zip(pool, result.scores)
    ]


def _rank_key(score: PdeiScore):
    return (-score.pdei, -score.mean_score, score.candidate_id)


def rank(scores: Sequence[PdeiScore]) -> list[PdeiScore]:
    """Descending by adjusted score; ties broken by higher raw mean, then id."""
    if not scores:
        raise InputError("nothing to rank: empty score list")
    return sorted(scores, key=_rank_key)


def _group_label(race: str, gender: str, group_key: str) -> str:
    if group_key == "race":
        return race
    if group_key == "gender":
        return gender
    return f"{race}&{gender}"


def group_key_for_scenario(scenario: str) -> str:
    _check_scenario(scenario)
    return "race" if scenario == "race_only" else "race_gender"


def select_top_k(ranked: Sequence[PdeiScore], k: int, scheme: str) -> list[PdeiScore]:
    """Pick k candidates under a selection scheme.

    raw_score orders by mean raw score (id tie-break); pdei uses the
    adjusted ranking; equal_per_group takes the top ceil(k/G) slice of
    each group in ranking order, then trims the union back to k, again in
    ranking order.
    """
    if not ranked:
        raise InputError("nothing to select from: empty ranking")
    if scheme not in SCHEMES:
        raise InputError(f"unknown scheme {scheme!r}; expected one of {SCHEMES}")
    if not 1 <= k <= len(ranked):
        raise InputError(f"k must be between 1 and the pool size {len(ranked)}, got {k}")
    if scheme == "raw_score":
        ordered = sorted(ranked, key=lambda s: (-s.mean_score, s.candidate_id))
        return ordered[:k]
    ordered = sorted(ranked, key=_rank_key)
    if scheme == "pdei":
        return ordered[:k]
    group_key = group_key_for_scenario(ordered[0].scenario)
    per_group: dict[str, list[PdeiScore]] = {}
    for s in ordered:
        per_group.setdefault(_group_label(s.race_group, s.gender_group, group_key), []).append(s)
    quota = math.ceil(k / len(per_group))
    shortlisted = {s.candidate_id for members in per_group.values() for s in members[:quota]}
    result = [s for s in ordered if s.candidate_id in shortlisted][:k]
    if len(result) < k:
        # Groups smaller than the quota can leave the shortlist short; top
        # up from the ranking so exactly k candidates come back.
        taken = {s.candidate_id for s in result}
        for s in ordered:
            if len(result) == k:
                break
            if s.candidate_id not in taken:
                result.append(s)
    return result


def audit_four_fifths(
    pool: Sequence[Candidate], selection: Iterable[str], group_key: str = "race"
) -> SelectionAudit:
    """Per-group selection rates and impact ratios under the 4/5 rule.

    A group passes when its selection rate is at least four fifths of the
    best group's rate; the boundary is inclusive, decided by integer
    cross-multiplication so no float division can tip it.  An empty
    selection trivially passes (no group is differentially affected).
    """
    _check_pool(pool)
    if group_key not in GROUP_KEYS:
        raise InputError(f"unknown group_key {group_key!r}; expected one of {GROUP_KEYS}")
    selected_ids = list(selection)
    known = {c.id for c in pool}
    unknown = [cid for cid in selected_ids if cid not in known]
    if unknown:
        raise InputError(f"selection references unknown candidates: {unknown}")
    if len(set(selected_ids)) != len(selected_ids):
        raise InputError("selection contains duplicate candidate ids")
    selected = set(selected_ids)

    applicants: dict[str, int] = {}
    chosen: dict[str, int] = {}
    for c in pool:
        label = _group_label(c.race_group, c.gender_group, group_key)
        applicants[label] = applicants.get(label, 0) + 1
        if c.id in selected:
            chosen[label] = chosen.get(label, 0) + 1

    best_label = max(applicants, key=lambda g: (chosen.get(g, 0) / applicants[g], g))
    best_sel, best_app = chosen.get(best_label, 0), applicants[best_label]

    groups: dict[str, GroupOutcome] = {}
    passes = True
    for label, count in applicants.items():
        sel = chosen.get(label, 0)
        rate = sel / count
        if best_sel == 0:
            ratio = 1.0
            ok = True
        else:
            ratio = rate / (best_sel / best_app)
            ok = 5 * sel * best_app >= 4 * best_sel * count
        passes = passes and ok
        groups[label] = GroupOutcome(applicants=count, selected=sel, rate=rate, impact_ratio=ratio)
    return SelectionAudit(groups=groups, passes=passes)


def export_plot_series(
    kind: str,
    *,
    profile: DisparityProfile | None = None,
    scores: Sequence[PdeiScore] | None = None,
) -> PlotSeries:
    """Chart-ready data, no rendering.

    di_star: one series per sector with the four race-group DI values,
    plus a unit reference ring.  pdei_scatter: (race DI, adjusted score)
    per candidate, one series per race group.  pdei_polar: the scatter
    folded onto evenly spaced group angles, with the group DI values as a
    reference series.
    """
    if kind == "di_star":
        if profile is None or not profile.values:
            raise InputError("di_star needs a nonempty disparity profile")
        points = [
            PlotPoint(series=sector, x=group, y=profile.di(sector, group))
            for sector in profile.sectors
            for group in RACE_GROUPS
        ]
        points += [PlotPoint(series="DI=1", x=group, y=1.0) for group in RACE_GROUPS]
        return PlotSeries(kind=kind, points=tuple(points))

    if kind not in ("pdei_scatter", "pdei_polar"):
        raise InputError(f"unknown plot kind {kind!r}")
    if not scores:
        raise InputError(f"{kind} needs a nonempty score list")
    if profile is None:
        raise InputError(f"{kind} needs the disparity profile the scores were built from")
    sector = scores[0].sector

    if kind == "pdei_scatter":
        points = [
            PlotPoint(series=s.race_group, x=profile.di(sector, s.race_group), y=s.pdei)
            for s in scores
        ]
        return PlotSeries(kind=kind, points=tuple(points))

    present = sorted({s.race_group for s in scores})
    angle = {g: 2 * math.pi * i / len(present) for i, g in enumerate(present)}
    points = [PlotPoint(series=s.race_group, x=angle[s.race_group], y=s.pdei) for s in scores]
    points += [PlotPoint(series="DI", x=angle[g], y=profile.di(sector, g)) for g in present]
    return PlotSeries(kind=kind, points=tuple(points))


def scores_to_csv(scores: Sequence[PdeiScore]) -> str:
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(SCORES_HEADER)
    for s in scores:
        writer.writerow([s.candidate_id, s.sector, s.scenario, f"{s.pdei:.4f}"])
    return out.getvalue()


def rank_payload(scores: Sequence[PdeiScore]) -> dict:
    """Canonical ranking payload shared by the CLI and the HTTP service."""
    ranked = rank(scores)
    return {
        "sector": ranked[0].sector,
        "scenario": ranked[0].scenario,
        "results": [
            {
                "candidate_id": s.candidate_id,
                "race_group": s.race_group,
                "gender_group": s.gender_group,
                "mean_score": s.mean_score,
                "pdei": s.pdei,
            }
            for s in ranked
        ],
    }


def whatif_payload(
    pool: Sequence[Candidate],
    profile: DisparityProfile,
    sector: str,
    scenario: str,
    scheme: str,
    k: int,
) -> dict:
    """One round-trip for the console: ranking, selection, audit and charts."""
    scores = compute_pdei(pool, profile, sector, scenario)
    ranked = rank(scores)
    selection = select_top_k(ranked, k, scheme)
    audit = audit_four_fifths(
        pool, [s.candidate_id for s in selection], group_key_for_scenario(scenario)
    )
    return {
        "sector": sector,
        "scenario": scenario,
        "scheme": scheme,
        "k": k,
        "ranking": rank_payload(scores)["results"],
        "selection": [s.candidate_id for s in selection],
        "audit": audit.to_dict(),
        "plot": {
            "scatter": export_plot_series("pdei_scatter", profile=profile, scores=scores).to_records(),
            "polar": export_plot_series("pdei_polar", profile=profile, scores=scores).to_records(),
        },
    }
