"""
Terminal agent: the distributed handover decision.

Each terminal keeps the metrics it hears from in-coverage NAPs, ranks them
and decides whether to attach, stay, hand over or block its flow.

Eligibility: the serving NAP stays eligible while its announced Q_NAP is above
the quality threshold. Any other NAP is judged on the quality it would have
after admitting this flow (one more flow on its wireless side, and the
backhaul quality the slave projected for one more flow). When deciding on a
handover, flows that joined a candidate after its announcement count too.
"""

import logging
from dataclasses import dataclass, field
from enum import Enum
from typing import Mapping, Optional, Union

import numpy as np

from broker.units import AnnouncedMetrics
from metrics.formulas import (
    RankCandidate,
    build_ranking,
    compute_nap_quality,
    compute_rank_score,
    compute_wireless_quality,
)
from metrics.policy import PolicySet
from simcore.geometry import Position
from simcore.mobility import MobilityPlan
from simcore.traffic import Flow

logger = logging.getLogger(__name__)

STALENESS_FACTOR = 3  # broadcast periods a NAP may stay silent before eviction
DEFAULT_STALENESS_WINDOW = STALENESS_FACTOR * 0.5

RETRY_BASE_SECONDS = 1.0
RETRY_CAP_FACTOR = 8
RETRY_JITTER_SECONDS = 0.5


class AttachmentState(str, Enum):
    DETACHED = "detached"
    ATTACHED = "attached"
    BLOCKED = "blocked"


@dataclass(frozen=True)
class KnownNap:
    metrics: AnnouncedMetrics
    power: float
    last_heard: float
    window: float = DEFAULT_STALENESS_WINDOW


@dataclass
class TerminalState:
    terminal_id: int
    plan: MobilityPlan
    position: Position
    subscription: str = 'default'
    flow: Optional[Flow] = None
    flow_active: bool = False
    state: AttachmentState = AttachmentState.DETACHED
    serving: Optional[str] = None
    known_naps: dict[str, KnownNap] = field(default_factory=dict)
    handover_count: int = 0
    block_events: int = 0
    retry_failures: int = 0
    retry_at: Optional[float] = None

    @property
    def attachment(self) -> str:
        if self.state is AttachmentState.ATTACHED:
            return f"attached({self.serving})"
        return self.state.value


@dataclass(frozen=True)
class Stay:
    pass


@dataclass(frozen=True)
class Attach:
    nap_id: str


@dataclass(frozen=True)
class Handover:
    from_nap: str
    to_nap: str


@dataclass(frozen=True)
class Block:
    pass


Action = Union[Stay, Attach, Handover, Block]


def serving_eligible(metrics: AnnouncedMetrics, policy: PolicySet) -> bool:
    return metrics.q_nap > policy.qual_thr


def projected_quality(metrics: AnnouncedMetrics, policy: PolicySet, arrivals: int = 0) -> float:
    """
    Q_NAP a NAP would have with this flow on it, on top of ``arrivals`` flows
    known to have joined since the announcement was computed.
    """
    if arrivals < 0:
        raise ValueError(f"arrivals must be non-negative (got {arrivals})")
    wq_next = compute_wireless_quality(metrics.n_flow + arrivals + 1, policy.k1_for(metrics.technology))
    q_back = metrics.q_back if metrics.q_back_admit is None else metrics.q_back_admit
    return min(metrics.q_nap, compute_nap_quality(wq_next, q_back, policy))


def admission_quality(metrics: AnnouncedMetrics, policy: PolicySet, arrivals: int = 0) -> float:
    """Quality a NAP would offer once this terminal's flow is added to it."""
    wq_next = compute_wireless_quality(metrics.n_flow + arrivals + 1, policy.k1_for(metrics.technology))
    return min(projected_quality(metrics, policy, arrivals), wq_next)


def admissible(metrics: AnnouncedMetrics, policy: PolicySet, arrivals: int = 0) -> bool:
    return admission_quality(metrics, policy, arrivals) > policy.qual_thr


def evict_stale(t: TerminalState, now: float) -> bool:
    """Forget NAPs silent for longer than their window; True if the serving NAP was lost."""
    stale = [nap_id for nap_id, known in t.known_naps.items() if now - known.last_heard > known.window]
    for nap_id in stale:
        del t.known_naps[nap_id]
    return t.serving is not None and t.serving in stale


def decide(t: TerminalState, policy: PolicySet, arrivals: Optional[Mapping[str, int]] = None) -> Action:
    """
    Pick the next action from the metrics the terminal currently holds.

    ``arrivals`` counts, per NAP, the flows that joined it after its held
    metrics were computed. Without it every candidate is judged on its
    announced load alone.
    """
    if t.flow is None or not t.flow_active:
        return Stay()

    joined = arrivals or {}
    ranking = build_ranking(
        [
            RankCandidate(
                nap_id=nap_id,
                power=known.power,
                q_nap=known.metrics.q_nap,
                reputation=known.metrics.reputation,
                priority=known.metrics.priority,
            )
            for nap_id, known in sorted(t.known_naps.items())
        ],
        policy,
    )
    serving = t.serving if t.state is AttachmentState.ATTACHED else None
    candidates = [
        ranked for ranked in ranking
        if ranked.nap_id != serving
        and admissible(t.known_naps[ranked.nap_id].metrics, policy, joined.get(ranked.nap_id, 0))
    ]

    if serving is None:
        return Attach(candidates[0].nap_id) if candidates else Block()

    current = t.known_naps.get(serving)
    if current is None or not serving_eligible(current.metrics, policy):
        return Handover(serving, candidates[0].nap_id) if candidates else Block()

    if not candidates:
        return Stay()
    # the gain is measured against the target as it would be after the move
    serving_score = next(r.score for r in ranking if r.nap_id == serving)
    target = t.known_naps[candidates[0].nap_id]
    target_score = compute_rank_score(
        target.power,
        projected_quality(target.metrics, policy, joined.get(candidates[0].nap_id, 0)),
        target.metrics.reputation,
        policy,
    )
    if target_score - serving_score > policy.delta:
        return Handover(serving, candidates[0].nap_id)
    return Stay()


def decide_unbrokered(t: TerminalState, default_technology: str) -> Action:
    """
    Without a broker the terminal simply camps on the strongest NAP of its
    preferred technology and keeps it while it is heard.
    """
    if t.flow is None or not t.flow_active:
        return Stay()
    if t.state is AttachmentState.ATTACHED and t.serving in t.known_naps:
        return Stay()

    preferred = [(k.power, nap_id) for nap_id, k in t.known_naps.items() if k.metrics.technology == default_technology]
    pool = preferred or [(k.power, nap_id) for nap_id, k in t.known_naps.items()]
    if not pool:
        return Stay()
    best = min(pool, key=lambda item: (-item[0], item[1]))[1]
    if t.state is AttachmentState.ATTACHED:
        return Handover(t.serving, best)
    return Attach(best)


def on_announcement(
    t: TerminalState,
    m: AnnouncedMetrics,
    power: float,
    now: float,
    policy: PolicySet,
    window: float = DEFAULT_STALENESS_WINDOW,
    brokered: bool = True,
    default_technology: str = 'wimax',
) -> tuple[TerminalState, Optional[Action]]:
    """
    Absorb one heard announcement and decide if anything relevant changed.

    A decision is taken for a waiting flow, for a newly discovered NAP, for
    changed metrics, or when the serving NAP went stale. Blocked flows only
    reconsider once their retry backoff has expired.
    """
    if power <= 0:
        raise ValueError(f"announcement from {m.nap_id} heard with non-positive power {power}")

    previous = t.known_naps.get(m.nap_id)
    t.known_naps[m.nap_id] = KnownNap(metrics=m, power=power, last_heard=now, window=window)
    serving_lost = evict_stale(t, now)

    if t.flow is None or not t.flow_active:
        return t, None
    if t.state is AttachmentState.BLOCKED:
        if t.retry_at is not None and now < t.retry_at:
            return t, None
    elif t.state is AttachmentState.ATTACHED:
        changed = previous is None or previous.metrics != m
        if not (changed or serving_lost):
            return t, None

    if brokered:
        return t, decide(t, policy)
    return t, decide_unbrokered(t, default_technology)


def retry_delay(failures: int, rng: np.random.Generator, base: float = RETRY_BASE_SECONDS,
                cap: int = RETRY_CAP_FACTOR, jitter: float = RETRY_JITTER_SECONDS) -> float:
    """Exponential backoff before a blocked flow retries: base * min(cap, 2**(failures-1)) + jitter."""
    factor = min(cap, 2 ** max(0, failures - 1))
    return base * factor + (float(rng.uniform(0.0, jitter)) if jitter > 0 else 0.0)
