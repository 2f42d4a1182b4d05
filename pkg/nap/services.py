"""
Network attachment point (AP / BS) behaviour.

A NAP counts its attached flows, derives its wireless quality from that count
and periodically broadcasts the latest broker metrics to every terminal in
coverage.
"""

import logging
from dataclasses import dataclass, field
from typing import Iterable, Optional

from broker.units import AnnouncedMetrics
from metrics.formulas import compute_wireless_quality
from metrics.policy import PolicySet, Technology
from simcore.errors import SimulatorLogicError
from simcore.geometry import DEFAULT_POW_THR, Position, received_power

logger = logging.getLogger(__name__)

DEFAULT_BROADCAST_PERIOD = {
    Technology.WIFI.value: 0.1,  # beacon cadence
    Technology.WIMAX.value: 0.5,  # neighbour advertisement cadence
}
DEFAULT_WIRELESS_CAPACITY = {
    Technology.WIFI.value: 3_500_000.0,
    Technology.WIMAX.value: 16_000_000.0,
}
FALLBACK_BROADCAST_PERIOD = 0.5


@dataclass
class NapState:
    nap_id: str
    technology: str
    position: Position
    coverage_radius: float
    wireless_capacity: float
    k1: float
    broadcast_period: float = FALLBACK_BROADCAST_PERIOD
    attached_flows: set[int] = field(default_factory=set)
    admission_order: list[int] = field(default_factory=list)
    wq: float = 1.0
    last_metrics: Optional[AnnouncedMetrics] = None

    def __post_init__(self):
        if self.coverage_radius <= 0:
            raise ValueError(f"coverage radius of {self.nap_id} must be positive")
        if self.wireless_capacity <= 0:
            raise ValueError(f"wireless capacity of {self.nap_id} must be positive")
        if self.broadcast_period <= 0:
            raise ValueError(f"broadcast period of {self.nap_id} must be positive")
        self.recompute()

    @property
    def n_flow(self) -> int:
        return len(self.attached_flows)

    def recompute(self) -> float:
        self.wq = compute_wireless_quality(self.n_flow, self.k1)
        return self.wq


def make_nap(
    nap_id: str,
    technology: str,
    position: Position,
    coverage_radius: float,
    policy: PolicySet,
    wireless_capacity: Optional[float] = None,
    broadcast_period: Optional[float] = None,
) -> NapState:
    """Build a NapState with per-technology defaults for capacity and cadence."""
    tech = str(getattr(technology, 'value', technology))
    return NapState(
        nap_id=nap_id,
        technology=tech,
        position=position,
        coverage_radius=coverage_radius,
        wireless_capacity=wireless_capacity or DEFAULT_WIRELESS_CAPACITY.get(tech, DEFAULT_WIRELESS_CAPACITY['wifi']),
        k1=policy.k1_for(tech),
        broadcast_period=broadcast_period or DEFAULT_BROADCAST_PERIOD.get(tech, FALLBACK_BROADCAST_PERIOD),
    )


def attach(nap: NapState, flow_id: int) -> NapState:
    if flow_id in nap.attached_flows:
        raise SimulatorLogicError(f"flow {flow_id} is already attached to {nap.nap_id}")
    nap.attached_flows.add(flow_id)
    nap.admission_order.append(flow_id)
    nap.recompute()
    return nap


def detach(nap: NapState, flow_id: int) -> NapState:
    if flow_id not in nap.attached_flows:
        raise SimulatorLogicError(f"flow {flow_id} is not attached to {nap.nap_id}")
    nap.attached_flows.remove(flow_id)
    nap.admission_order.remove(flow_id)
    nap.recompute()
    return nap


def excess_flows(nap: NapState, limit: int) -> list[int]:
    """
    Flows above ``limit``, most recently admitted first.

    These are the flows a NAP drops when a burst of admissions taken on the
    same stale metrics pushed it past its admission limit.
    """
    if limit < 0:
        raise ValueError(f"admission limit of {nap.nap_id} must be non-negative (got {limit})")
    surplus = nap.n_flow - limit
    if surplus <= 0:
        return []
    return list(reversed(nap.admission_order[-surplus:]))


@dataclass(frozen=True)
class Delivery:
    """One announcement heard by one terminal."""

    terminal_id: int
    nap_id: str
    metrics: AnnouncedMetrics
    power: float
    broadcast_period: float


def broadcast(
    nap: NapState,
    terminals: Iterable[tuple[int, Position]],
    now: float,
    pow_thr: float = DEFAULT_POW_THR,
) -> list[Delivery]:
    """Fan the NAP's last metrics out to every terminal within coverage."""
    if nap.last_metrics is None:
        return []
    deliveries = []
    for terminal_id, position in terminals:
        if position.distance_to(nap.position) > nap.coverage_radius:
            continue
        deliveries.append(Delivery(
            terminal_id=terminal_id,
            nap_id=nap.nap_id,
            metrics=nap.last_metrics,
            power=received_power(position, nap, pow_thr),
            broadcast_period=nap.broadcast_period,
        ))
    return deliveries


def self_announce(nap: NapState, now: float) -> AnnouncedMetrics:
    """Local-only metrics a NAP advertises when no broker is running."""
    previous = nap.last_metrics
    if previous is not None and previous.n_flow == nap.n_flow:
        return previous
    nap.last_metrics = AnnouncedMetrics(
        nap_id=nap.nap_id,
        technology=nap.technology,
        q_nap=nap.wq,
        reputation=1.0,
        priority=1,
        timestamp=now,
        wq=nap.wq,
        n_flow=nap.n_flow,
    )
    return nap.last_metrics
