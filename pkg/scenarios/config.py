"""
Scenario configuration schema.

A scenario file (TOML or JSON) or a built-in preset is validated into a
ScenarioConfig. Unknown keys are rejected; every validation failure surfaces
as a ScenarioConfigError naming the dotted key path.
"""

import logging
from typing import Annotated, Any, Literal, Optional, Union

from pydantic import BaseModel, ConfigDict, Field, ValidationError, model_validator

from broker.units import ProbeConfig
from metrics.policy import ClassOfService, PolicySet
from nap.services import DEFAULT_BROADCAST_PERIOD, FALLBACK_BROADCAST_PERIOD
from simcore.backhaul import OVERPROVISIONED_CAPACITY, BackhaulModel
from simcore.errors import ScenarioConfigError
from simcore.traffic import DEFAULT_CBR_RATE, TrafficType

logger = logging.getLogger(__name__)

TICK_TOLERANCE = 1e-9


class StrictModel(BaseModel):
    model_config = ConfigDict(extra='forbid', frozen=True)


class PolicyOverrides(StrictModel):
    """Any subset of PolicySet fields; unset fields keep their defaults."""

    rtt_max: Optional[float] = None
    k_back: Optional[float] = None
    rtt_congestion_threshold: Optional[float] = None
    k1_per_technology: Optional[dict[str, float]] = None
    w1: Optional[float] = None
    w2: Optional[float] = None
    alpha: Optional[float] = None
    pow_thr: Optional[float] = None
    qual_thr: Optional[float] = None
    delta: Optional[float] = None
    backhaul_quality_mode: Optional[Literal['literal', 'normalized']] = None
    rtt_base: Optional[float] = None
    cs_class: Optional[ClassOfService] = None

    def to_policy(self) -> PolicySet:
        return PolicySet(**self.model_dump(exclude_none=True))


class ProbeSpec(StrictModel):
    period: float = Field(0.5, gt=0)
    timeout: float = Field(0.1, gt=0)
    max_retries: int = Field(3, ge=0)

    def to_probe(self) -> ProbeConfig:
        return ProbeConfig(period=self.period, timeout=self.timeout, max_retries=self.max_retries)


class NapSpec(StrictModel):
    id: str
    technology: str
    x: float
    y: float
    coverage_radius: float = Field(gt=0)
    wireless_capacity: Optional[float] = Field(None, gt=0)
    broadcast_period: Optional[float] = Field(None, gt=0)


class BackhaulSpec(StrictModel):
    capacity: float = Field(OVERPROVISIONED_CAPACITY, gt=0)
    rtt_base: float = 20.0
    rtt_max: float = 300.0
    util_knee: float = 0.9
    util_sat: float = 1.2
    provider: str = 'default'

    def to_model(self) -> BackhaulModel:
        return BackhaulModel(
            capacity=self.capacity,
            rtt_base=self.rtt_base,
            rtt_max=self.rtt_max,
            util_knee=self.util_knee,
            util_sat=self.util_sat,
        )


class StaticGroup(StrictModel):
    kind: Literal['static'] = 'static'
    count: int = Field(ge=0)
    x: float
    y: float


class MobileGroup(StrictModel):
    """
    Terminals walking in a straight line to a common destination.

    Terminal i of the group starts from origins[i % len(origins)] and leaves
    at start_time + stagger * (i // pair_size).
    """

    kind: Literal['mobile'] = 'mobile'
    count: int = Field(ge=0)
    origins: list[tuple[float, float]] = Field(min_length=1)
    dest: tuple[float, float]
    speed: float = Field(1.0, gt=0)
    start_time: float = Field(10.0, ge=0)
    stagger: float = Field(5.0, ge=0)
    pair_size: int = Field(2, ge=1)


class RandomWaypointSpec(StrictModel):
    duration: Optional[float] = Field(None, gt=0)
    x: float = Field(26.0, gt=0)
    y: float = Field(26.0, gt=0)
    dimension: int = Field(3, ge=1, le=3)
    max_speed: float = Field(1.2, gt=0)
    min_speed: float = Field(0.8, gt=0)
    max_pause: float = Field(60.0, ge=0)


class TraceGroup(StrictModel):
    """BonnMotion nodes, replayed from a file or generated from the run seed."""

    kind: Literal['trace'] = 'trace'
    count: int = Field(ge=1)
    path: Optional[str] = None
    random_waypoint: Optional[RandomWaypointSpec] = None

    @model_validator(mode='after')
    def _one_source(self):
        if (self.path is None) == (self.random_waypoint is None):
            raise ValueError("exactly one of 'path' or 'random_waypoint' is required")
        return self


TerminalGroup = Annotated[Union[StaticGroup, MobileGroup, TraceGroup], Field(discriminator='kind')]


class ArrivalSpec(StrictModel):
    first: float = Field(9.0, ge=0)
    interval: float = Field(1.0, ge=0)
    cbr_rate: float = Field(DEFAULT_CBR_RATE, gt=0)
    traffic_mix: list[TrafficType] = Field(default_factory=lambda: [TrafficType.VOICE], min_length=1)


class CrowdSpec(StrictModel):
    time: float = Field(ge=0)
    size: int = Field(gt=0)
    x: Optional[float] = None
    y: Optional[float] = None


class ScenarioConfig(StrictModel):
    name: str
    description: str = ''
    duration: float = Field(gt=0)
    tick: float = Field(0.1, gt=0)
    sample_period: float = Field(1.0, gt=0)
    broker_enabled: bool = True
    default_technology: str = 'wimax'
    differentiated_classes: bool = False
    iterations: int = Field(10, ge=1)
    seed: int = 1
    policy: PolicyOverrides = Field(default_factory=PolicyOverrides)
    probe: ProbeSpec = Field(default_factory=ProbeSpec)
    naps: list[NapSpec] = Field(default_factory=list)
    backhaul: dict[str, BackhaulSpec] = Field(default_factory=dict)
    terminals: list[TerminalGroup] = Field(default_factory=list)
    arrivals: ArrivalSpec = Field(default_factory=ArrivalSpec)
    crowds: list[CrowdSpec] = Field(default_factory=list)

    @model_validator(mode='after')
    def _consistent_topology(self):
        seen = set()
        for nap in self.naps:
            if nap.id in seen:
                raise ValueError(f"duplicate NAP id '{nap.id}'")
            seen.add(nap.id)
        return self

    @property
    def policy_set(self) -> PolicySet:
        return self.policy.to_policy()

    @property
    def technologies(self) -> list[str]:
        return sorted({nap.technology for nap in self.naps})

    @property
    def terminal_count(self) -> int:
        return sum(group.count for group in self.terminals) + sum(crowd.size for crowd in self.crowds)

    def to_dict(self) -> dict:
        return self.model_dump(mode='json')


def _key_path(loc: tuple) -> str:
    return '.'.join(str(part) for part in loc)


def _whole_ticks(period: float, tick: float) -> bool:
    steps = period / tick
    return round(steps) >= 1 and abs(steps - round(steps)) <= TICK_TOLERANCE * steps


def _check_periods(config: ScenarioConfig) -> None:
    """Every scheduled activity must fall on a tick boundary."""
    periods = [('probe.period', config.probe.period), ('sample_period', config.sample_period)]
    for index, nap in enumerate(config.naps):
        period = nap.broadcast_period or DEFAULT_BROADCAST_PERIOD.get(nap.technology, FALLBACK_BROADCAST_PERIOD)
        periods.append((f'naps.{index}.broadcast_period', period))
    for key_path, period in periods:
        if not _whole_ticks(period, config.tick):
            raise ScenarioConfigError(
                f"period {period}s is not a whole number of {config.tick}s ticks", key_path=key_path,
            )


def validate_config(data: dict[str, Any]) -> ScenarioConfig:
    """Validate raw configuration data, raising ScenarioConfigError with the failing key path."""
    try:
        config = ScenarioConfig.model_validate(data)
    except ValidationError as e:
        first = e.errors()[0]
        raise ScenarioConfigError(first['msg'], key_path=_key_path(first['loc'])) from e

    try:
        policy = config.policy_set
    except ValueError as e:
        raise ScenarioConfigError(str(e), key_path='policy') from e
    try:
        config.probe.to_probe()
    except ValueError as e:
        raise ScenarioConfigError(str(e), key_path='probe') from e
    _check_periods(config)
    for tech, spec in config.backhaul.items():
        try:
            spec.to_model()
        except ValueError as e:
            raise ScenarioConfigError(str(e), key_path=f'backhaul.{tech}') from e
    for index, nap in enumerate(config.naps):
        if nap.technology not in policy.k1_per_technology:
            raise ScenarioConfigError(
                f"no k1 configured for technology '{nap.technology}'", key_path=f'naps.{index}.technology',
            )
    for tech in config.backhaul:
        if tech not in config.technologies:
            raise ScenarioConfigError(f"no NAP uses technology '{tech}'", key_path=f'backhaul.{tech}')

    logger.debug(f"Validated scenario '{config.name}' ({config.terminal_count} terminals)")
    return config
