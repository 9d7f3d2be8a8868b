from __future__ import annotations

import math
from pathlib import Path
from typing import Literal, Optional

from fastapi import FastAPI, HTTPException
from fastapi.middleware.cors import CORSMiddleware
from pydantic import BaseModel, Field

from src.core.constants import ANGSTROM, ELECTRON_MASS_KG, MomentumConvention, make_engine_config
from src.core.exceptions import EngineError
from src.core.settings import configure_logging, load_settings
from src.cycle.stirling import run_cycle
from src.ensemble.partition import Method
from src.uncertainty.thermal import uncertainty_report

# settings read the .env beside the repository root; process variables win
env_path = Path(__file__).parent.parent / ".env"
configure_logging(load_settings(env_path).log_level)

app = FastAPI(
    title="Relativistic Quantum Stirling Engine",
    description="Thermal uncertainty relations and Stirling cycle of a Klein-Gordon particle in a box.",
    version="1.0.0",
)

app.add_middleware(
    CORSMiddleware,
    allow_origins=["*"],
    allow_credentials=True,
    allow_methods=["*"],
    allow_headers=["*"],
)

MethodName = Literal["oracle", "paper", "corrected"]


class EngineRequest(BaseModel):
    mass_kg: float = ELECTRON_MASS_KG
    L_angstrom: float = 0.5
    method: MethodName = "oracle"
    paper_literal: bool = False

    def engine_config(self):
        momentum = MomentumConvention.PAPER_LITERAL if self.paper_literal else MomentumConvention.DIMENSIONAL
        return make_engine_config(self.mass_kg, self.L_angstrom * ANGSTROM, momentum=momentum)


class UncertaintyRequest(EngineRequest):
    T_K: float = Field(100.0, description="bath temperature in K")


class CycleRequest(EngineRequest):
    T1_K: float = 300.0
    T2_K: float = 100.0
    energy_shift: Optional[float] = None


def _json_safe(payload: dict) -> dict:
    # JSON has no NaN; flagged values go out as null
    return {
        key: None if isinstance(value, float) and not math.isfinite(value) else value
        for key, value in payload.items()
    }


@app.get("/health")
def health_check() -> dict[str, str]:
    return {"status": "ok"}


@app.get("/")
def root() -> dict[str, str]:
    return {
        "message": "Relativistic quantum Stirling engine is running.",
        "docs": "/docs",
        "uncertainty_endpoint": "/uncertainty",
        "cycle_endpoint": "/cycle",
    }


@app.post("/uncertainty")
def thermal_uncertainty(request: UncertaintyRequest):
    try:
        report = uncertainty_report(request.engine_config(), request.T_K, Method(request.method))
    except EngineError as exc:
        raise HTTPException(status_code=400, detail=f"{type(exc).__name__}: {exc}") from exc
    except Exception as exc:  # pragma: no cover
        raise HTTPException(status_code=500, detail=str(exc)) from exc

    return _json_safe(report.to_dict())


@app.post("/cycle")
def stirling_cycle(request: CycleRequest):
    try:
        report = run_cycle(
            request.engine_config(),
            request.T1_K,
            request.T2_K,
            Method(request.method),
            energy_shift=request.energy_shift or 0.0,
        )
    except EngineError as exc:
        raise HTTPException(status_code=400, detail=f"{type(exc).__name__}: {exc}") from exc
    except Exception as exc:  # pragma: no cover
        raise HTTPException(status_code=500, detail=str(exc)) from exc

    return _json_safe(report.to_dict())
