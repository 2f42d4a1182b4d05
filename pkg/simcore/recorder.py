"""
EventRecorder - ordered trace of notable simulation events.

Usage:
    recorder = EventRecorder(run_id=run.id, persist=True)

    recorder.event('attach', {'terminal': 3, 'nap': 'AP1'}, sim_time=12.3)

    with recorder.span('replication') as span:
        result = run(config, seed)
        span.data = {'seed': seed, 'handovers': result.handovers}

Events are kept in memory; with persist=True they are also written to the
SimulationEvent table of the given SimulationRun.
"""

import logging
import time
from contextlib import contextmanager
from dataclasses import dataclass, field
from typing import Optional
from uuid import UUID

logger = logging.getLogger(__name__)


@dataclass
class SpanData:
    """Mutable container for span data that can be set during execution."""
    data: dict = field(default_factory=dict)

    def update(self, **kwargs):
        self.data.update(kwargs)


class EventRecorder:
    """Records simulation events for one run (or one replication)."""

    def __init__(self, run_id: Optional[UUID] = None, persist: bool = False):
        """
        Args:
            run_id: SimulationRun UUID events belong to (required when persisting)
            persist: If True, write each event to the database immediately
        """
        if persist and run_id is None:
            raise ValueError("a run_id is required to persist events")
        self.run_id = run_id
        self.persist = persist
        self.events: list[dict] = []
        self._seq = 0

    def event(self, stage: str, data: dict, sim_time: float = None, latency_ms: int = None) -> dict:
        """
        Record an event.

        Args:
            stage: attach, handover, block, crowd, rejected_report, replication, ...
            data: Event payload
            sim_time: Simulated time in seconds, if the event happened inside a run
            latency_ms: Wall-clock duration for span events
        """
        self._seq += 1
        event = {
            'seq': self._seq,
            'stage': stage,
            'sim_time': sim_time,
            'data': data,
            'latency_ms': latency_ms,
        }
        self.events.append(event)

        if self.persist:
            self._persist_event(event)

        logger.debug(f'Sim event [{self.run_id}] #{self._seq}: {stage} @ {sim_time}')
        return event

    @contextmanager
    def span(self, stage: str):
        """Measure wall-clock latency of a block and record it as one event."""
        span_data = SpanData()
        start = time.perf_counter()
        try:
            yield span_data
        finally:
            latency_ms = int((time.perf_counter() - start) * 1000)
            self.event(stage, span_data.data, latency_ms=latency_ms)

    def get_events_by_stage(self, stage: str) -> list[dict]:
        return [e for e in self.events if e['stage'] == stage]

    def _persist_event(self, event: dict):
        from scenarios.models import SimulationEvent

        try:
            SimulationEvent.objects.create(
                run_id=self.run_id,
                seq=event['seq'],
                stage=event['stage'],
                sim_time=event['sim_time'],
                data=event['data'],
                latency_ms=event['latency_ms'],
            )
        except Exception as e:
            logger.error(f'Failed to persist simulation event: {e}')


class NullRecorder:
    """
    No-op recorder for when tracing is disabled.

    All methods are no-ops, so code can unconditionally call trace methods.
    """

    @property
    def events(self) -> list:
        return []

    def event(self, stage: str, data: dict, sim_time: float = None, latency_ms: int = None) -> None:
        pass

    @contextmanager
    def span(self, stage: str):
        yield SpanData()

    def get_events_by_stage(self, stage: str) -> list:
        return []
