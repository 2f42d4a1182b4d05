"""
Run a scenario end to end: replications, aggregation and optional persistence.

Shared by the ``run`` management command and the runs API.
"""

import logging
import time
from dataclasses import dataclass
from typing import Optional

from django.conf import settings

from scenarios.config import ScenarioConfig
from scenarios.runner import run_replications
from scenarios.stats import Summary, aggregate
from simcore.errors import ErrorCode, SimulationError
from simcore.recorder import EventRecorder, NullRecorder

logger = logging.getLogger(__name__)


@dataclass
class Execution:
    summary: Summary
    run_id: Optional[str] = None
    latency_ms: int = 0


def execute(
    config: ScenarioConfig,
    iterations: Optional[int] = None,
    seed: Optional[int] = None,
    parallel: Optional[bool] = None,
    persist: Optional[bool] = None,
) -> Execution:
    """
    Run and aggregate all replications of one scenario.

    With persistence on, a SimulationRun row tracks status, summary and
    latency, and engine events are written as SimulationEvent rows.
    """
    iterations = iterations if iterations is not None else config.iterations
    seed = seed if seed is not None else config.seed
    if persist is None:
        persist = getattr(settings, 'SIMULATION_PERSIST_RUNS', False)

    record = None
    recorder = NullRecorder()
    if persist:
        from scenarios.models import SimulationRun

        record = SimulationRun.objects.create(
            scenario=config.name,
            seed=seed,
            iterations=iterations,
            config=config.to_dict(),
            status='running',
        )
        recorder = EventRecorder(run_id=record.id, persist=True)

    start = time.perf_counter()
    try:
        results = run_replications(config, iterations=iterations, base_seed=seed, parallel=parallel, recorder=recorder)
        summary = aggregate(results, policy=config.policy_set.as_dict())
    except SimulationError as e:
        _record_failure(record, e.code.value, str(e), start)
        logger.error(f"Scenario {config.name} failed: {e}")
        raise
    except Exception as e:
        _record_failure(record, ErrorCode.SIMULATOR_LOGIC.value, f"{type(e).__name__}: {e}", start)
        logger.exception(f"Scenario {config.name} crashed: {e}")
        raise

    latency_ms = int((time.perf_counter() - start) * 1000)
    if record is not None:
        record.status = 'success'
        record.summary = summary.to_dict()
        record.total_latency_ms = latency_ms
        record.save()

    logger.info(f"Scenario {config.name}: {iterations} replications in {latency_ms}ms")
    return Execution(summary=summary, run_id=str(record.id) if record else None, latency_ms=latency_ms)


def _record_failure(record, code: str, message: str, start: float) -> None:
    if record is None:
        return
    record.status = 'error'
    record.error_code = code
    record.error_message = message
    record.total_latency_ms = int((time.perf_counter() - start) * 1000)
    record.save()
