"""
Simulation API: browse presets, run scenarios and fetch stored runs.
"""

import logging
from typing import List, Optional
from uuid import UUID

from django.shortcuts import get_object_or_404
from ninja import Field, ModelSchema, Router, Schema
from ninja.errors import HttpError

from scenarios.config import validate_config
from scenarios.models import SimulationEvent, SimulationRun
from scenarios.presets import PRESET_GROUPS, PRESETS, get_preset
from scenarios.services import execute
from simcore.errors import ScenarioConfigError, SimulationError, UnknownPresetError

logger = logging.getLogger(__name__)

MAX_API_ITERATIONS = 20

router = Router()


class PresetSchema(Schema):
    name: str
    description: str
    broker_enabled: bool
    duration: float
    terminals: int


class PresetGroupSchema(Schema):
    name: str
    members: List[str]


class PresetListSchema(Schema):
    presets: List[PresetSchema]
    groups: List[PresetGroupSchema]


class RunRequestSchema(Schema):
    scenario: Optional[str] = None
    config: Optional[dict] = None
    seed: Optional[int] = None
    iterations: int = Field(1, ge=1, le=MAX_API_ITERATIONS)


class RunSchema(ModelSchema):
    class Meta:
        model = SimulationRun
        fields = [
            "id",
            "created_at",
            "scenario",
            "seed",
            "iterations",
            "status",
            "summary",
            "total_latency_ms",
            "error_message",
            "error_code",
        ]


class RunEventSchema(ModelSchema):
    class Meta:
        model = SimulationEvent
        fields = ["seq", "stage", "sim_time", "data", "latency_ms"]


class ErrorSchema(Schema):
    detail: str
    key_path: str = ""


@router.get("/presets", auth=None, response=PresetListSchema)
def list_presets(request):
    presets = []
    for name in sorted(PRESETS):
        config = validate_config(get_preset(name))
        presets.append({
            "name": name,
            "description": config.description,
            "broker_enabled": config.broker_enabled,
            "duration": config.duration,
            "terminals": config.terminal_count,
        })
    groups = [{"name": name, "members": members} for name, members in sorted(PRESET_GROUPS.items())]
    return {"presets": presets, "groups": groups}


@router.get("/presets/{name}", auth=None, response={200: dict, 404: ErrorSchema})
def get_preset_config(request, name: str):
    try:
        return validate_config(get_preset(name)).to_dict()
    except UnknownPresetError as e:
        return 404, {"detail": str(e)}


@router.post("/runs", auth=None, response={201: RunSchema, 400: ErrorSchema, 404: ErrorSchema})
def create_run(request, payload: RunRequestSchema):
    """
    Run a preset (``scenario``) or an inline configuration (``config``) and
    store the aggregated result as a SimulationRun.
    """
    if (payload.scenario is None) == (payload.config is None):
        return 400, {"detail": "give exactly one of 'scenario' or 'config'"}

    try:
        data = get_preset(payload.scenario) if payload.scenario is not None else payload.config
        config = validate_config(data)
    except UnknownPresetError as e:
        return 404, {"detail": str(e)}
    except ScenarioConfigError as e:
        return 400, {"detail": str(e), "key_path": e.key_path}

    logger.info(f"API run of {config.name}: {payload.iterations} replications")
    try:
        execution = execute(config, iterations=payload.iterations, seed=payload.seed, parallel=False, persist=True)
    except ScenarioConfigError as e:
        return 400, {"detail": str(e), "key_path": e.key_path}
    except SimulationError as e:
        logger.error(f"API run of {config.name} failed: {e}")
        raise HttpError(500, f"[{e.code.value}] {e}")

    return 201, SimulationRun.objects.get(id=execution.run_id)


@router.get("/runs", auth=None, response=List[RunSchema])
def list_runs(request, scenario: Optional[str] = None, limit: int = 20):
    runs = SimulationRun.objects.all()
    if scenario:
        runs = runs.filter(scenario=scenario)
    return runs[:max(1, min(limit, 100))]


@router.get("/runs/{run_id}", auth=None, response=RunSchema)
def get_run(request, run_id: UUID):
    return get_object_or_404(SimulationRun, id=run_id)


@router.get("/runs/{run_id}/events", auth=None, response=List[RunEventSchema])
def get_run_events(request, run_id: UUID, stage: Optional[str] = None):
    run = get_object_or_404(SimulationRun, id=run_id)
    events = run.events.all()
    if stage:
        events = events.filter(stage=stage)
    return events
