"""HTTP service over the screening pipeline.

Stateless request handling over an immutable dataset loaded at startup.
Validation failures return 422 with ``{code, message, field?}``; internal
failures return 500 with ``{code, message}``.
"""
from __future__ import annotations

from pathlib import Path
from typing import Literal, Sequence

from fastapi import FastAPI, Query, Request
from fastapi.exceptions import RequestValidationError
from fastapi.responses import JSONResponse
from pydantic import BaseModel, Field, field_validator, model_validator

from pdei.datasets import load_dataset
from pdei.errors import InputError, PdeiError
from pdei.labor import LaborForceTable, SectorRecord, build_disparity_profile
from pdei.pipeline import (
    Candidate,
    audit_four_fifths,
    compute_pdei,
    export_plot_series,
    group_key_for_scenario,
    rank,
    rank_payload,
    select_top_k,
    whatif_payload,
)

Scenario = Literal["race_only", "race_and_gender"]
Scheme = Literal["raw_score", "pdei", "equal_per_group"]


class CandidateModel(BaseModel):
    id: str = Field(min_length=1)
    race_group: Literal["R1", "R2", "R3", "R4"]
    gender_group: Literal["G1", "G2"]
    scores: list[float] = Field(min_length=1)

    @field_validator("scores")
    @classmethod
    def _scores_valid(cls, scores: list[float]) -> list[float]:
        if any(s < 0 for s in scores):
            raise ValueError("scores must be nonnegative")
        if not any(s > 0 for s in scores):
            raise ValueError("at least one score must be positive")
        return scores

    def to_candidate(self) -> Candidate:
        return Candidate(
            id=self.id,
            race_group=self.race_group,
            gender_group=self.gender_group,
            scores=tuple(self.scores),
        )


class RankRequest(BaseModel):
    pool: list[CandidateModel] = Field(min_length=1)
    sector: str
    scenario: Scenario

    @model_validator(mode="after")
    def _pool_consistent(self):
        ids = [c.id for c in self.pool]
        if len(set(ids)) != len(ids):
            raise ValueError("pool contains duplicate candidate ids")
        dims = {len(c.scores) for c in self.pool}
        if len(dims) > 1:
            raise ValueError("all candidates must share the same score dimensionality")
        return self


class AuditRequest(RankRequest):
    scheme: Scheme
    k: int = Field(ge=1)

    @model_validator(mode="after")
    def _k_in_range(self):
        if self.k > len(self.pool):
            raise ValueError(f"k={self.k} exceeds the pool size {len(self.pool)}")
        return self


class WhatIfRequest(AuditRequest):
    pass


def _error_body(code: str, message: str, field: str | None = None) -> dict:
    body = {"code": code, "message": message}
    if field:
        body["field"] = field
    return body


def create_app(
    sectors: Sequence[SectorRecord] | None = None,
    labor: LaborForceTable | None = None,
    console_dir: str | None = None,
) -> FastAPI:
    if sectors is None or labor is None:
        builtin_sectors, builtin_labor = load_dataset()
        sectors = sectors or builtin_sectors
        labor = labor or builtin_labor
    profile = build_disparity_profile(sectors, labor)
    sector_index = {s.sector_id: s for s in sectors}

    app = FastAPI(title="pdei", version="0.1.0")

    @app.exception_handler(RequestValidationError)
    async def _validation_handler(request: Request, exc: RequestValidationError):
        first = exc.errors()[0] if exc.errors() else {}
        field = ".".join(str(part) for part in first.get("loc", []) if part != "body")
        return JSONResponse(
            status_code=422,
            content=_error_body("validation_error", str(first.get("msg", "invalid request")), field or None),
        )

    @app.exception_handler(InputError)
    async def _input_handler(request: Request, exc: InputError):
        return JSONResponse(status_code=422, content=_error_body("invalid_input", str(exc)))

    @app.exception_handler(PdeiError)
    async def _compute_handler(request: Request, exc: PdeiError):
        return JSONResponse(status_code=500, content=_error_body("internal_error", str(exc)))

    @app.get("/api/health")
    def health():
        return {"status": "ok"}

    @app.get("/api/sectors")
    def list_sectors():
        return {
            "sectors": [
                {
                    "sector_id": s.sector_id,
                    "sector_name": s.sector_name,
                    "total_thousands": s.total_thousands,
                    "pct": dict(s.pct),
                }
                for s in sectors
            ]
        }

    @app.get("/api/disparity")
    def disparity(sector: str | None = Query(default=None)):
        if sector is not None:
            if sector not in profile.values:
                raise InputError(
                    f"unknown sector {sector}; known sectors: {', '.join(profile.sectors)}"
                )
            return {"sector": sector, "di": dict(profile.values[sector])}
        return {
            "sectors": {sid: dict(groups) for sid, groups in profile.values.items()},
            "star": export_plot_series("di_star", profile=profile).to_records(),
        }

    @app.post("/api/rank")
    def rank_pool(request: RankRequest):
        pool = [c.to_candidate() for c in request.pool]
        scores = compute_pdei(pool, profile, request.sector, request.scenario)
        return rank_payload(scores)

    @app.post("/api/audit")
    def audit_pool(request: AuditRequest):
        pool = [c.to_candidate() for c in request.pool]
        scores = compute_pdei(pool, profile, request.sector, request.scenario)
        selection = select_top_k(rank(scores), request.k, request.scheme)
        audit = audit_four_fifths(
            pool,
            [s.candidate_id for s in selection],
            group_key_for_scenario(request.scenario),
        )
        return {"selection": [s.candidate_id for s in selection], "audit": audit.to_dict()}

    @app.post("/api/whatif")
    def whatif(request: WhatIfRequest):
        pool = [c.to_candidate() for c in request.pool]
        return whatif_payload(
            pool, profile, request.sector, request.scenario, request.scheme, request.k
        )

    if console_dir:
        if not Path(console_dir).is_dir():
            raise InputError(f"console directory {console_dir} does not exist")
        from fastapi.staticfiles import StaticFiles

        app.mount("/", StaticFiles(directory=console_dir, html=True), name="console")

    return app
