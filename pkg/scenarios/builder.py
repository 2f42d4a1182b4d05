"""
Turn a validated ScenarioConfig into the engine's initial SimulationState.

Terminal ids are assigned group by group: mobile terminals first, then trace
nodes, then static terminals, then flash-crowd terminals. Flow id equals
terminal id. Regular flows start at ``arrivals.first`` and one every
``arrivals.interval`` in id order; crowd flows all start at their crowd time.
"""

import logging
from typing import Optional, Union

import numpy as np

from broker.units import TechnologyState
from nap.services import make_nap
from scenarios.config import MobileGroup, ScenarioConfig, StaticGroup, TraceGroup
from simcore.backhaul import BackhaulModel
from simcore.bonnmotion import RandomWaypointParams, generate_random_waypoint, load_bonnmotion
from simcore.clock import SimClock
from simcore.engine import RetryPolicy, SimulationState
from simcore.errors import ScenarioConfigError
from simcore.geometry import Position
from simcore.mobility import LinearTo, MobilityPlan, Static
from simcore.recorder import EventRecorder, NullRecorder
from simcore.traffic import Flow
from terminal.agent import TerminalState

logger = logging.getLogger(__name__)

GROUP_ORDER = {'mobile': 0, 'trace': 1, 'static': 2}


def _mobile_plans(group: MobileGroup) -> list[MobilityPlan]:
    dest = Position(*group.dest)
    plans = []
    for i in range(group.count):
        origin = Position(*group.origins[i % len(group.origins)])
        start = group.start_time + group.stagger * (i // group.pair_size)
        plans.append(LinearTo(origin=origin, dest=dest, speed=group.speed, start_time=start))
    return plans


def _trace_plans(group: TraceGroup, config: ScenarioConfig, seed: int, key_path: str) -> list[MobilityPlan]:
    if group.path is not None:
        try:
            traces = load_bonnmotion(group.path)
        except OSError as e:
            raise ScenarioConfigError(f"cannot read trace: {e}", key_path=f'{key_path}.path') from e
        if len(traces) < group.count:
            raise ScenarioConfigError(
                f"trace has {len(traces)} nodes, {group.count} requested", key_path=f'{key_path}.count',
            )
        return list(traces[:group.count])

    spec = group.random_waypoint
    params = RandomWaypointParams(
        duration=spec.duration or config.duration,
        nodes=group.count,
        x=spec.x,
        y=spec.y,
        dimension=spec.dimension,
        max_speed=spec.max_speed,
        min_speed=spec.min_speed,
        max_pause=spec.max_pause,
    )
    return list(generate_random_waypoint(params, seed))


def _group_plans(group, config: ScenarioConfig, seed: int, key_path: str) -> list[MobilityPlan]:
    if isinstance(group, StaticGroup):
        return [Static(Position(group.x, group.y))] * group.count
    if isinstance(group, MobileGroup):
        return _mobile_plans(group)
    return _trace_plans(group, config, seed, key_path)


def _crowd_position(config: ScenarioConfig, index: int) -> Position:
    crowd = config.crowds[index]
    if crowd.x is not None and crowd.y is not None:
        return Position(crowd.x, crowd.y)
    for group in config.terminals:
        if isinstance(group, StaticGroup):
            return Position(group.x, group.y)
    raise ScenarioConfigError("crowd needs x/y when the scenario has no static terminals", key_path=f'crowds.{index}')


def build_state(
    config: ScenarioConfig,
    seed: int,
    recorder: Optional[Union[EventRecorder, NullRecorder]] = None,
) -> SimulationState:
    policy = config.policy_set

    naps = {}
    for spec in config.naps:
        naps[spec.id] = make_nap(
            spec.id,
            spec.technology,
            Position(spec.x, spec.y),
            spec.coverage_radius,
            policy,
            wireless_capacity=spec.wireless_capacity,
            broadcast_period=spec.broadcast_period,
        )

    technologies = {}
    for tech in config.technologies:
        backhaul = config.backhaul.get(tech)
        technologies[tech] = TechnologyState(
            technology=tech,
            nap_ids=frozenset(spec.id for spec in config.naps if spec.technology == tech),
            backhaul=backhaul.to_model() if backhaul else BackhaulModel(),
            provider=backhaul.provider if backhaul else 'default',
            admission_rate=config.arrivals.cbr_rate,
        )

    plans: list[MobilityPlan] = []
    ordered = sorted(enumerate(config.terminals), key=lambda item: (GROUP_ORDER[item[1].kind], item[0]))
    for index, group in ordered:
        plans.extend(_group_plans(group, config, seed, key_path=f'terminals.{index}'))

    arrivals = config.arrivals
    mix = arrivals.traffic_mix
    terminals = {}
    for tid, plan in enumerate(plans):
        flow = Flow(
            id=tid,
            terminal_id=tid,
            cbr_rate=arrivals.cbr_rate,
            start_time=arrivals.first + arrivals.interval * tid,
            traffic_type=mix[tid % len(mix)],
        )
        terminals[tid] = TerminalState(terminal_id=tid, plan=plan, position=plan.position_at(0.0), flow=flow)

    tid = len(plans)
    for index, crowd in enumerate(config.crowds):
        position = _crowd_position(config, index)
        for _ in range(crowd.size):
            flow = Flow(
                id=tid,
                terminal_id=tid,
                cbr_rate=arrivals.cbr_rate,
                start_time=crowd.time,
                traffic_type=mix[tid % len(mix)],
            )
            terminals[tid] = TerminalState(terminal_id=tid, plan=Static(position), position=position, flow=flow)
            tid += 1

    logger.debug(
        f"Built scenario '{config.name}' seed={seed}: {len(naps)} NAPs, {len(terminals)} terminals"
    )
    return SimulationState(
        clock=SimClock(tick=config.tick),
        policy=policy,
        naps=naps,
        technologies=technologies,
        terminals=terminals,
        scenario=config.name,
        seed=seed,
        probe=config.probe.to_probe(),
        broker_enabled=config.broker_enabled,
        default_technology=config.default_technology,
        differentiated_classes=config.differentiated_classes,
        sample_period=config.sample_period,
        retry=RetryPolicy(),
        recorder=recorder or NullRecorder(),
        rng=np.random.default_rng(seed),
        crowds=[(crowd.time, crowd.size) for crowd in config.crowds],
    )
