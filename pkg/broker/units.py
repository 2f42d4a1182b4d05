"""
Broker slave and master units.

One slave per access technology probes the technology's backhaul, combines
the backhaul quality with every NAP's wireless quality and derives the
technology reputation. The master ranks technologies by reputation and hands
each slave its priority. Announcements produced here are what NAPs piggyback
on their periodic broadcasts.
"""

import logging
from dataclasses import dataclass, field
from typing import Mapping, Optional

from metrics.formulas import compute_backhaul_quality, compute_nap_quality, compute_reputation
from metrics.policy import PolicySet
from simcore.backhaul import BackhaulModel, backhaul_rtt
from simcore.errors import ForeignReportError, SimulatorLogicError
from simcore.traffic import DEFAULT_CBR_RATE

logger = logging.getLogger(__name__)

PERIOD_TOLERANCE = 1e-6


@dataclass(frozen=True)
class ProbeConfig:
    period: float = 0.5  # seconds between probe cycles
    timeout: float = 0.1  # seconds an echo may take to count as answered
    max_retries: int = 3

    def __post_init__(self):
        if not 0 < self.timeout < self.period:
            raise ValueError(f"probe timeout must be positive and below the period (got {self.timeout})")
        if self.max_retries < 0:
            raise ValueError(f"max_retries must be non-negative (got {self.max_retries})")


@dataclass(frozen=True)
class AnnouncedMetrics:
    """
    Metrics a NAP disseminates to terminals.

    Besides Q_NAP and the technology reputation/priority, the announcement
    carries the NAP's raw wireless quality and flow count plus the backhaul
    quality the technology would have with one more flow, so terminals can
    project the effect of their own admission.
    """

    nap_id: str
    technology: str
    q_nap: float
    reputation: float
    priority: int = 1
    timestamp: float = 0.0
    wq: float = 1.0
    n_flow: int = 0
    q_back: float = 1.0
    q_back_admit: Optional[float] = None


@dataclass(frozen=True)
class NapReport:
    wq: float
    n_flow: int = 0


@dataclass(frozen=True)
class StatusReport:
    """What a slave tells the master after an aggregation round."""

    technology: str
    reputation: float
    q_back: float
    timestamp: float
    rejected: tuple[str, ...] = ()


@dataclass
class TechnologyState:
    technology: str
    nap_ids: frozenset[str]
    backhaul: BackhaulModel = field(default_factory=BackhaulModel)
    provider: str = 'default'
    last_rtt: Optional[float] = None
    q_back: float = 1.0
    q_back_admit: float = 1.0
    q_nap_by_nap: dict[str, float] = field(default_factory=dict)
    wq_by_nap: dict[str, float] = field(default_factory=dict)
    n_flow_by_nap: dict[str, int] = field(default_factory=dict)
    reputation: float = 1.0
    priority: int = 1
    admission_rate: float = DEFAULT_CBR_RATE
    failed_probes: int = 0

    def __post_init__(self):
        self.nap_ids = frozenset(self.nap_ids)
        if self.last_rtt is None:
            self.last_rtt = self.backhaul.rtt_base


def _probe_rtt(offered_load: float, model: BackhaulModel, probe: ProbeConfig) -> tuple[float, bool]:
    """Echo the probe server up to 1 + max_retries times; worst-case RTT when all time out."""
    timeout_ms = probe.timeout * 1000.0
    for attempt in range(1 + probe.max_retries):
        rtt = backhaul_rtt(offered_load, model)
        if rtt <= timeout_ms:
            return rtt, True
        logger.debug(f"Probe attempt {attempt + 1} timed out ({rtt:.1f}ms > {timeout_ms:.0f}ms)")
    return model.rtt_max, False


def slave_probe(
    tech: TechnologyState,
    offered_load: float,
    now: float,
    probe: ProbeConfig,
    policy: PolicySet,
) -> TechnologyState:
    """Measure backhaul RTT under the current offered load and refresh Q_back."""
    cycles = now / probe.period
    if abs(cycles - round(cycles)) > PERIOD_TOLERANCE:
        raise SimulatorLogicError(f"probe for {tech.technology} invoked off-period at t={now}")

    rtt, answered = _probe_rtt(offered_load, tech.backhaul, probe)
    if not answered:
        tech.failed_probes += 1
        logger.warning(
            f"Backhaul probe for {tech.technology} failed after {probe.max_retries} retries at t={now}; "
            f"recording {rtt:.0f}ms"
        )
    tech.last_rtt = rtt
    tech.q_back = compute_backhaul_quality(rtt, policy)

    admit_rtt, _ = _probe_rtt(offered_load + tech.admission_rate, tech.backhaul, probe)
    tech.q_back_admit = compute_backhaul_quality(admit_rtt, policy)
    return tech


def slave_aggregate(
    tech: TechnologyState,
    reports: Mapping[str, NapReport],
    now: float,
    policy: PolicySet,
    strict: bool = False,
) -> tuple[TechnologyState, list[AnnouncedMetrics], StatusReport]:
    """
    Combine NAP wireless reports with the backhaul quality.

    NAPs that did not report keep their previous Q_NAP. Reports from NAPs of
    another technology are rejected (listed in the status report, or raised
    as ForeignReportError when ``strict``).
    """
    rejected = []
    for nap_id in sorted(reports):
        if nap_id not in tech.nap_ids:
            if strict:
                raise ForeignReportError(nap_id, tech.technology)
            logger.warning(f"Rejected report from foreign NAP {nap_id} at {tech.technology} slave")
            rejected.append(nap_id)
            continue
        report = reports[nap_id]
        tech.wq_by_nap[nap_id] = report.wq
        tech.n_flow_by_nap[nap_id] = report.n_flow
        tech.q_nap_by_nap[nap_id] = compute_nap_quality(report.wq, tech.q_back, policy)

    if tech.q_nap_by_nap:
        tech.reputation = compute_reputation(tech.q_nap_by_nap.values())

    announcements = [
        AnnouncedMetrics(
            nap_id=nap_id,
            technology=tech.technology,
            q_nap=q_nap,
            reputation=tech.reputation,
            priority=tech.priority,
            timestamp=now,
            wq=tech.wq_by_nap[nap_id],
            n_flow=tech.n_flow_by_nap[nap_id],
            q_back=tech.q_back,
            q_back_admit=tech.q_back_admit,
        )
        for nap_id, q_nap in sorted(tech.q_nap_by_nap.items())
    ]
    status = StatusReport(
        technology=tech.technology,
        reputation=tech.reputation,
        q_back=tech.q_back,
        timestamp=now,
        rejected=tuple(rejected),
    )
    logger.debug(
        f"{tech.technology} aggregated at t={now}: q_back={tech.q_back:.3f} reputation={tech.reputation:.4f}"
    )
    return tech, announcements, status


def master_prioritize(tech_qualities: Mapping[str, float]) -> dict[str, int]:
    """
    Assign dense priorities from technology quality.

    The best technology (rank 1) gets the highest value, n; the worst gets 1.
    Equal qualities are ordered by technology id.
    """
    if not tech_qualities:
        raise ValueError("master needs at least one technology to prioritize")
    ordered = sorted(tech_qualities.items(), key=lambda item: (-item[1], item[0]))
    count = len(ordered)
    return {tech: count - rank for rank, (tech, _) in enumerate(ordered)}


def apply_priorities(technologies: Mapping[str, TechnologyState], priorities: Mapping[str, int]) -> None:
    for tech_id, priority in priorities.items():
        technologies[tech_id].priority = priority
