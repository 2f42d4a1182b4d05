"""
Fixed-tick simulation engine.

Every tick runs the same phases in the same order:

    1. mobility update and flow arrivals
    2. NAP broadcasts due this tick
    3. broker round (every probe period): NAPs above their admission limit
       shed their newest flows, then probe, aggregation and prioritization
    4. terminal decisions, in terminal-id order
    5. traffic allocation per NAP, then per backhaul, then class-of-service shaping
    6. statistics sampling (every sample period)

Given the same initial state and seed, two runs produce identical results.
"""

import logging
from bisect import bisect_left
from collections import defaultdict
from dataclasses import dataclass, field
from typing import Optional, Union

import numpy as np

from broker.units import (
    NapReport,
    ProbeConfig,
    TechnologyState,
    apply_priorities,
    master_prioritize,
    slave_aggregate,
    slave_probe,
)
from metrics.formulas import admission_limit
from metrics.policy import ClassOfService, PolicySet
from nap.services import Delivery, NapState, attach, broadcast, detach, excess_flows, self_announce
from simcore.clock import SimClock
from simcore.mobility import Static
from simcore.recorder import EventRecorder, NullRecorder
from simcore.results import FlowSample, RunResult
from simcore.traffic import Flow, interarrival_delay, lost_packets, share_capacity
from terminal.agent import (
    STALENESS_FACTOR,
    Attach,
    AttachmentState,
    Block,
    Handover,
    Stay,
    TerminalState,
    decide,
    decide_unbrokered,
    evict_stale,
    on_announcement,
    retry_delay,
)
from terminal.classes import map_traffic_class
from terminal.shaping import NapContext, TokenBucket, cs1_throttle_factors, enforce_cs

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class RetryPolicy:
    base: float = 1.0
    cap: int = 8
    jitter: float = 0.5


@dataclass(frozen=True)
class EngineEvent:
    kind: str  # flow_start, crowd, attach, handover, block, rejected_report
    time: float
    data: dict


@dataclass
class SimulationState:
    clock: SimClock
    policy: PolicySet
    naps: dict[str, NapState]
    technologies: dict[str, TechnologyState]
    terminals: dict[int, TerminalState]
    scenario: str = 'adhoc'
    seed: int = 0
    probe: ProbeConfig = field(default_factory=ProbeConfig)
    broker_enabled: bool = True
    default_technology: str = 'wimax'
    differentiated_classes: bool = False
    sample_period: float = 1.0
    retry: RetryPolicy = field(default_factory=RetryPolicy)
    crowds: list[tuple[float, int]] = field(default_factory=list)
    recorder: Union[EventRecorder, NullRecorder] = field(default_factory=NullRecorder)
    rng: Optional[np.random.Generator] = None
    result: Optional[RunResult] = None
    pending: list[Delivery] = field(default_factory=list)
    rates: dict[int, float] = field(default_factory=dict)
    offered_load: dict[str, float] = field(default_factory=dict)
    buckets: dict[int, TokenBucket] = field(default_factory=dict)
    joins: dict[str, list[float]] = field(default_factory=dict)
    handovers: int = 0
    blocks: int = 0

    def __post_init__(self):
        if self.rng is None:
            self.rng = np.random.default_rng(self.seed)
        if self.result is None:
            self.result = RunResult(
                scenario=self.scenario,
                seed=self.seed,
                technologies=sorted(self.technologies),
                terminal_count=len(self.terminals),
            )
        for nap in self.naps.values():
            self.result.nap_quality.setdefault(nap.nap_id, [])
        self.terminal_ids = sorted(self.terminals)
        self._arrivals = sorted(
            (self.clock.step_at(t.flow.start_time), tid)
            for tid, t in self.terminals.items() if t.flow is not None
        )
        self._next_arrival = 0
        self._fresh: set[int] = set()
        longest_broadcast = max((nap.broadcast_period for nap in self.naps.values()), default=0.0)
        self._join_horizon = 2 * self.probe.period + STALENESS_FACTOR * longest_broadcast

    def nap_of_flow(self, flow_id: int) -> Optional[NapState]:
        terminal = self.terminals[flow_id]
        return self.naps.get(terminal.serving) if terminal.state is AttachmentState.ATTACHED else None


def advance(state: SimulationState) -> list[EngineEvent]:
    """Run one tick and return the events it produced."""
    now = state.clock.now
    events: list[EngineEvent] = []

    _move_terminals(state, now)
    _start_flows(state, now, events)
    _broadcast(state, now)
    if state.broker_enabled and state.clock.is_due(state.probe.period):
        _broker_round(state, now, events)
    _decide(state, now, events)
    _allocate(state)
    if state.clock.is_due(state.sample_period):
        _sample(state, now)

    for ev in events:
        state.recorder.event(ev.kind, ev.data, sim_time=ev.time)
    state.clock.advance()
    return events


def run_until(state: SimulationState, duration: float) -> RunResult:
    """Advance from the current tick through ``duration`` inclusive."""
    last_step = state.clock.step_at(duration)
    while state.clock.step <= last_step:
        advance(state)
    state.result.handovers = state.handovers
    state.result.blocks = state.blocks
    return state.result


def _move_terminals(state: SimulationState, now: float) -> None:
    for t in state.terminals.values():
        if not isinstance(t.plan, Static):
            t.position = t.plan.position_at(now)


def _start_flows(state: SimulationState, now: float, events: list[EngineEvent]) -> None:
    for crowd_time, size in state.crowds:
        if state.clock.step_at(crowd_time) == state.clock.step:
            events.append(EngineEvent('crowd', now, {'size': size}))
    arrivals = state._arrivals
    while state._next_arrival < len(arrivals) and arrivals[state._next_arrival][0] <= state.clock.step:
        tid = arrivals[state._next_arrival][1]
        state._next_arrival += 1
        t = state.terminals[tid]
        t.flow_active = True
        state._fresh.add(tid)
        events.append(EngineEvent('flow_start', now, {'terminal': tid, 'flow': t.flow.id}))


def _broadcast(state: SimulationState, now: float) -> None:
    positions = [(tid, state.terminals[tid].position) for tid in state.terminal_ids]
    for nap_id in sorted(state.naps):
        nap = state.naps[nap_id]
        if not state.clock.is_due(nap.broadcast_period):
            continue
        if not state.broker_enabled:
            self_announce(nap, now)
        state.pending.extend(broadcast(nap, positions, now, state.policy.pow_thr))


def _broker_round(state: SimulationState, now: float, events: list[EngineEvent]) -> None:
    for tech_id in sorted(state.technologies):
        tech = state.technologies[tech_id]
        for nap_id in sorted(tech.nap_ids):
            _shed_excess(state, state.naps[nap_id], now, events)
        slave_probe(tech, state.offered_load.get(tech_id, 0.0), now, state.probe, state.policy)
        reports = {
            nap_id: NapReport(wq=state.naps[nap_id].wq, n_flow=state.naps[nap_id].n_flow)
            for nap_id in sorted(tech.nap_ids)
        }
        _, announcements, status = slave_aggregate(tech, reports, now, state.policy)
        for metrics in announcements:
            state.naps[metrics.nap_id].last_metrics = metrics
        for nap_id in status.rejected:
            events.append(EngineEvent('rejected_report', now, {'nap': nap_id, 'technology': tech_id}))

    priorities = master_prioritize({tech_id: tech.reputation for tech_id, tech in state.technologies.items()})
    apply_priorities(state.technologies, priorities)

    cutoff = now - state._join_horizon
    for nap_id, log in state.joins.items():
        state.joins[nap_id] = log[bisect_left(log, cutoff):]


def _shed_excess(state: SimulationState, nap: NapState, now: float, events: list[EngineEvent]) -> None:
    """Drop the newest flows of a NAP that concurrent admissions pushed past its knee."""
    shed = excess_flows(nap, admission_limit(nap.k1, state.policy.qual_thr))
    if not shed:
        return
    logger.debug(f"{nap.nap_id} sheds {len(shed)} flows at t={now:.1f} (n_flow={nap.n_flow})")
    for flow_id in shed:
        _block(state, state.terminals[flow_id], now, events, shed_from=nap.nap_id)


def _decide(state: SimulationState, now: float, events: list[EngineEvent]) -> None:
    heard: dict[int, list[Delivery]] = defaultdict(list)
    for delivery in state.pending:
        heard[delivery.terminal_id].append(delivery)
    state.pending = []
    fresh, state._fresh = state._fresh, set()

    for tid in state.terminal_ids:
        t = state.terminals[tid]
        wants_decision = False
        for delivery in heard.get(tid, ()):
            _, action = on_announcement(
                t,
                delivery.metrics,
                delivery.power,
                now,
                state.policy,
                window=STALENESS_FACTOR * delivery.broadcast_period,
                brokered=state.broker_enabled,
                default_technology=state.default_technology,
            )
            wants_decision = wants_decision or action is not None

        # one decision per tick, taken with everything heard this tick
        if wants_decision:
            _apply(state, t, _choose(state, t), now, events)
            continue
        if not t.flow_active:
            continue
        serving_lost = evict_stale(t, now)
        retry_due = t.state is AttachmentState.BLOCKED and t.retry_at is not None and now >= t.retry_at
        # a fresh flow that has not heard any NAP waits Detached for the first announcement
        waiting = tid in fresh and not t.known_naps
        if (tid in fresh and not waiting) or serving_lost or retry_due:
            _apply(state, t, _choose(state, t), now, events)


def _choose(state: SimulationState, t: TerminalState):
    if not state.broker_enabled:
        return decide_unbrokered(t, state.default_technology)
    # fresh admissions race on the announced load; handovers also count recent joiners
    if t.state is AttachmentState.ATTACHED:
        return decide(t, state.policy, _joined_since_announcement(state, t))
    return decide(t, state.policy)


def _joined_since_announcement(state: SimulationState, t: TerminalState) -> dict[str, int]:
    joined = {}
    for nap_id, known in t.known_naps.items():
        log = state.joins.get(nap_id)
        if log:
            joined[nap_id] = len(log) - bisect_left(log, known.metrics.timestamp)
    return joined


def _apply(state: SimulationState, t: TerminalState, action, now: float, events: list[EngineEvent]) -> None:
    if isinstance(action, Stay):
        return

    flow_id = t.flow.id
    if isinstance(action, Attach):
        attach(state.naps[action.nap_id], flow_id)
        state.joins.setdefault(action.nap_id, []).append(now)
        t.state = AttachmentState.ATTACHED
        t.serving = action.nap_id
        t.retry_failures = 0
        t.retry_at = None
        events.append(EngineEvent('attach', now, {'terminal': t.terminal_id, 'nap': action.nap_id}))
        return

    if isinstance(action, Handover):
        detach(state.naps[action.from_nap], flow_id)
        attach(state.naps[action.to_nap], flow_id)
        state.joins.setdefault(action.to_nap, []).append(now)
        t.serving = action.to_nap
        t.handover_count += 1
        state.handovers += 1
        events.append(EngineEvent(
            'handover', now, {'terminal': t.terminal_id, 'from': action.from_nap, 'to': action.to_nap},
        ))
        return

    if isinstance(action, Block):
        _block(state, t, now, events)


def _block(
    state: SimulationState,
    t: TerminalState,
    now: float,
    events: list[EngineEvent],
    shed_from: Optional[str] = None,
) -> None:
    flow_id = t.flow.id
    if t.state is AttachmentState.ATTACHED:
        detach(state.naps[t.serving], flow_id)
        t.serving = None
    if t.state is not AttachmentState.BLOCKED:
        t.block_events += 1
        state.blocks += 1
        data = {'terminal': t.terminal_id}
        if shed_from is not None:
            data.update(nap=shed_from, reason='shed')
        events.append(EngineEvent('block', now, data))
    t.state = AttachmentState.BLOCKED
    t.retry_failures += 1
    t.retry_at = now + retry_delay(
        t.retry_failures, state.rng, state.retry.base, state.retry.cap, state.retry.jitter,
    )
    state.rates.pop(flow_id, None)


def _class_of(state: SimulationState, flow: Flow) -> ClassOfService:
    if state.differentiated_classes:
        return map_traffic_class(flow.traffic_type).cs_class
    return state.policy.cs_class


def _allocate(state: SimulationState) -> None:
    tick = state.clock.tick
    wireless: dict[int, float] = {}
    contexts: dict[str, NapContext] = {}
    classes: dict[int, ClassOfService] = {}
    offered = {tech_id: 0.0 for tech_id in state.technologies}

    for nap_id in sorted(state.naps):
        nap = state.naps[nap_id]
        if not nap.attached_flows:
            continue
        flow_ids = sorted(nap.attached_flows)
        flows = [state.terminals[fid].flow for fid in flow_ids]
        for flow in flows:
            classes[flow.id] = _class_of(state, flow)

        throttle = {}
        cs1 = [(f.traffic_type, f.cbr_rate) for f in flows if classes[f.id] is ClassOfService.CS1]
        if cs1:
            q_back = state.technologies[nap.technology].q_back if nap.technology in state.technologies else 1.0
            throttle = cs1_throttle_factors(
                [(f.traffic_type, f.cbr_rate) for f in flows], nap.wireless_capacity, state.policy, q_back,
            )

        demands = []
        for flow in flows:
            cs = classes[flow.id]
            if cs is ClassOfService.CS0:
                demands.append(nap.wireless_capacity)
            elif cs is ClassOfService.CS1:
                demands.append(flow.cbr_rate * throttle.get(flow.traffic_type, 1.0))
            else:
                demands.append(flow.cbr_rate)
        for fid, granted in zip(flow_ids, share_capacity(demands, nap.wireless_capacity)):
            wireless[fid] = granted
        contexts[nap_id] = NapContext(capacity=nap.wireless_capacity, throttle=throttle)
        offered[nap.technology] = offered.get(nap.technology, 0.0) + sum(wireless[fid] for fid in flow_ids)

    # Backhaul bottleneck per technology
    for tech_id, tech in state.technologies.items():
        if offered.get(tech_id, 0.0) <= tech.backhaul.capacity:
            continue
        flow_ids = sorted(
            fid for nap_id in tech.nap_ids for fid in state.naps[nap_id].attached_flows
        )
        for fid, granted in zip(flow_ids, share_capacity([wireless[fid] for fid in flow_ids], tech.backhaul.capacity)):
            wireless[fid] = granted

    for nap_id, context in contexts.items():
        context.allocated_total = sum(wireless[fid] for fid in state.naps[nap_id].attached_flows)

    rates = {}
    for fid in sorted(wireless):
        flow = state.terminals[fid].flow
        nap = state.nap_of_flow(fid)
        cs = classes[fid]
        bucket = None
        if cs is ClassOfService.CS1:
            bucket = state.buckets.get(fid)
            if bucket is None:
                bucket = state.buckets[fid] = TokenBucket(flow.cbr_rate, tick=tick)
        rates[fid] = enforce_cs(flow, wireless[fid], cs, contexts[nap.nap_id], bucket)
        state.result.lost_packets[fid] = (
            state.result.lost_packets.get(fid, 0.0) + lost_packets(flow.cbr_rate, rates[fid], tick)
        )
    state.rates = rates
    state.offered_load = offered


def _sample(state: SimulationState, now: float) -> None:
    result = state.result
    result.times.append(now)

    per_tech = {tech: 0 for tech in result.technologies}
    for nap in state.naps.values():
        per_tech[nap.technology] = per_tech.get(nap.technology, 0) + nap.n_flow
    for tech in result.technologies:
        result.flows_per_tech[tech].append(per_tech.get(tech, 0))

    active = blocked = detached = 0
    for tid in state.terminal_ids:
        t = state.terminals[tid]
        if not t.flow_active:
            continue
        active += 1
        if t.state is AttachmentState.BLOCKED:
            blocked += 1
        elif t.state is AttachmentState.DETACHED:
            detached += 1
        else:
            nap = state.naps[t.serving]
            rate = state.rates.get(t.flow.id, 0.0)
            result.flow_samples.append(FlowSample(
                t=now,
                flow_id=t.flow.id,
                nap_id=nap.nap_id,
                technology=nap.technology,
                throughput=rate,
                cbr_rate=t.flow.cbr_rate,
                lost_packets=result.lost_packets.get(t.flow.id, 0.0),
                delay=interarrival_delay(rate),
            ))
    result.active.append(active)
    result.blocked.append(blocked)
    result.detached.append(detached)
    result.handover_series.append(state.handovers)
    result.block_series.append(state.blocks)

    for tech_id in result.technologies:
        tech = state.technologies.get(tech_id)
        result.backhaul_quality[tech_id].append(tech.q_back if tech else 1.0)
        result.reputation[tech_id].append(tech.reputation if tech else 1.0)
    for nap_id, nap in state.naps.items():
        quality = nap.last_metrics.q_nap if nap.last_metrics is not None else nap.wq
        result.nap_quality[nap_id].append(quality)
