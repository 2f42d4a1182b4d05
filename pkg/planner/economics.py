"""
Techno-economic model: two providers sharing one hotspot for a week.

Provider A runs Wi-Fi access points, provider B one WiMAX base station. Each
subscriber pays its home provider a tariff per connected hour whatever network
carries it. With the broker on, overflow beyond a provider's own capacity is
moved to the other provider's spare capacity (the home provider pays p_h per
moved client-hour to the host) and whatever still does not fit is blocked,
costing the home provider one churn penalty per client. With the broker off
every client attaches to its home network best-effort and quality degrades as
capacity / load.
"""

import logging
from dataclasses import dataclass, field, replace
from enum import Enum
from typing import Iterable, Optional

import numpy as np

from metrics.policy import Technology
from planner.demand import HOURS_PER_WEEK, DemandProfile

logger = logging.getLogger(__name__)

MBPS_PER_CLIENT = 0.32
WEEKS_PER_YEAR = 52
DEFAULT_INFRA_COST = {
    Technology.WIFI.value: 600.0,  # money units per Mbit/s per year
    Technology.WIMAX.value: 1200.0,
}


class Provider(str, Enum):
    A = "A"  # Wi-Fi access points
    B = "B"  # WiMAX base station


STRATEGIES = {
    1: {'p_a': 0.45, 'ap_count': 3},
    2: {'p_a': 0.70, 'ap_count': 5},
}


@dataclass(frozen=True)
class EconomicScenario:
    strategy: int = 1
    p_a: float = 0.45
    p_b: float = 0.90
    p_h: float = 0.68
    ap_count: int = 3
    bs_count: int = 1
    ap_capacity_clients: int = 8
    bs_capacity_clients: int = 24
    infra_cost_per_mbps_year: dict = field(default_factory=lambda: dict(DEFAULT_INFRA_COST))
    churn_cost_per_block: float = 1.35
    market_share: float = 0.5  # provider A's share; B holds the rest
    broker_enabled: bool = True

    def __post_init__(self):
        for name in ('p_a', 'p_b', 'p_h', 'churn_cost_per_block'):
            if getattr(self, name) < 0:
                raise ValueError(f"{name} must be non-negative (got {getattr(self, name)})")
        for name in ('ap_count', 'bs_count', 'ap_capacity_clients', 'bs_capacity_clients'):
            if getattr(self, name) < 1:
                raise ValueError(f"{name} must be at least 1 (got {getattr(self, name)})")
        if not 0 < self.market_share < 1:
            raise ValueError(f"market_share must lie in (0, 1) (got {self.market_share})")
        for tech in (Technology.WIFI.value, Technology.WIMAX.value):
            if self.infra_cost_per_mbps_year.get(tech, -1) < 0:
                raise ValueError(f"infrastructure cost for {tech} must be given and non-negative")

    @classmethod
    def for_strategy(cls, strategy: int, broker_enabled: bool, **overrides) -> 'EconomicScenario':
        """Provider A's deployment strategy 1 (3 APs, low tariff) or 2 (5 APs, higher tariff)."""
        try:
            preset = STRATEGIES[strategy]
        except KeyError:
            raise ValueError(f"unknown strategy {strategy} (known: {', '.join(map(str, STRATEGIES))})") from None
        return cls(strategy=strategy, broker_enabled=broker_enabled, **{**preset, **overrides})

    def capacity(self, provider: Provider) -> int:
        if provider is Provider.A:
            return self.ap_count * self.ap_capacity_clients
        return self.bs_count * self.bs_capacity_clients

    def tariff(self, provider: Provider) -> float:
        return self.p_a if provider is Provider.A else self.p_b

    def share(self, provider: Provider) -> float:
        return self.market_share if provider is Provider.A else 1.0 - self.market_share

    def weekly_infra_cost(self, provider: Provider) -> float:
        tech = Technology.WIFI.value if provider is Provider.A else Technology.WIMAX.value
        mbps = self.capacity(provider) * MBPS_PER_CLIENT
        return mbps * self.infra_cost_per_mbps_year[tech] / WEEKS_PER_YEAR

    def with_overrides(self, **overrides) -> 'EconomicScenario':
        return replace(self, **overrides)


@dataclass(frozen=True)
class HourOutcome:
    hour: int
    provider: Provider
    subscribers: float
    served: float  # on the home network
    moved_out: float  # carried by the other provider
    hosted: float  # the other provider's clients carried here
    blocked: float
    revenue: float  # tariffs from own subscribers
    transfer: float  # p_h received for hosted minus paid for moved
    churn_cost: float
    infra_cost: float  # weekly infrastructure cost spread over the week
    profit: float
    quality: float
    service_ratio: float  # (served + moved_out) / subscribers


@dataclass
class WeekOutcome:
    scenario: EconomicScenario
    hours: list[HourOutcome]

    def for_provider(self, provider: Provider) -> list[HourOutcome]:
        return [h for h in self.hours if h.provider is provider]

    def series(self, provider: Provider, name: str) -> np.ndarray:
        return np.array([getattr(h, name) for h in self.for_provider(provider)], dtype=float)

    def weekly_profit(self, provider: Provider) -> float:
        return float(self.series(provider, 'profit').sum())

    def mean_quality(self, provider: Provider) -> float:
        return float(self.series(provider, 'quality').mean())

    def mean_service_ratio(self, provider: Provider) -> float:
        return float(self.series(provider, 'service_ratio').mean())

    def total_blocked(self, provider: Provider) -> float:
        return float(self.series(provider, 'blocked').sum())


def _ratio(numerator: np.ndarray, denominator: np.ndarray) -> np.ndarray:
    """numerator / denominator capped at 1, and 1 where the denominator is 0."""
    with np.errstate(divide='ignore', invalid='ignore'):
        ratio = np.where(denominator > 0, numerator / np.where(denominator > 0, denominator, 1.0), 1.0)
    return np.minimum(ratio, 1.0)


def simulate_week(scenario: EconomicScenario, demand: DemandProfile) -> WeekOutcome:
    """Hour-by-hour profit and quality for both providers."""
    providers = (Provider.A, Provider.B)
    customers = demand.counts
    subs = {p: customers * scenario.share(p) for p in providers}
    cap = {p: float(scenario.capacity(p)) for p in providers}
    zeros = np.zeros(HOURS_PER_WEEK)

    if scenario.broker_enabled:
        own = {p: np.minimum(subs[p], cap[p]) for p in providers}
        overflow = {p: subs[p] - own[p] for p in providers}
        spare = {p: cap[p] - own[p] for p in providers}
        other = {Provider.A: Provider.B, Provider.B: Provider.A}
        moved = {p: np.minimum(overflow[p], spare[other[p]]) for p in providers}
        hosted = {p: moved[other[p]] for p in providers}
        blocked = {p: overflow[p] - moved[p] for p in providers}
        # admitted clients always fit the carrying network
        quality = {p: np.ones(HOURS_PER_WEEK) for p in providers}
    else:
        own = dict(subs)
        moved = {p: zeros for p in providers}
        hosted = {p: zeros for p in providers}
        blocked = {p: zeros for p in providers}
        quality = {p: _ratio(np.full(HOURS_PER_WEEK, cap[p]), subs[p]) for p in providers}

    hours = []
    for p in providers:
        revenue = scenario.tariff(p) * (own[p] + moved[p])
        transfer = scenario.p_h * (hosted[p] - moved[p])
        churn = scenario.churn_cost_per_block * blocked[p]
        infra = scenario.weekly_infra_cost(p) / HOURS_PER_WEEK
        profit = revenue + transfer - churn - infra
        service = _ratio(own[p] + moved[p], subs[p])
        for hour in range(HOURS_PER_WEEK):
            hours.append(HourOutcome(
                hour=hour,
                provider=p,
                subscribers=float(subs[p][hour]),
                served=float(own[p][hour]),
                moved_out=float(moved[p][hour]),
                hosted=float(hosted[p][hour]),
                blocked=float(blocked[p][hour]),
                revenue=float(revenue[hour]),
                transfer=float(transfer[hour]),
                churn_cost=float(churn[hour]),
                infra_cost=infra,
                profit=float(profit[hour]),
                quality=float(quality[p][hour]),
                service_ratio=float(service[hour]),
            ))

    outcome = WeekOutcome(scenario=scenario, hours=hours)
    logger.debug(
        f"Strategy {scenario.strategy} broker={'on' if scenario.broker_enabled else 'off'}: "
        f"A {outcome.weekly_profit(Provider.A):.1f}, B {outcome.weekly_profit(Provider.B):.1f}"
    )
    return outcome


@dataclass(frozen=True)
class ComparisonRow:
    strategy: int
    broker_enabled: bool
    provider: Provider
    weekly_profit: float
    mean_quality: float
    mean_service_ratio: float
    blocked: float
    dominant: bool


@dataclass
class Comparison:
    outcomes: dict[tuple[int, bool], WeekOutcome]

    def dominant(self, strategy: int, broker_enabled: bool) -> Provider:
        """Provider with the higher weekly profit (A on a tie)."""
        outcome = self.outcomes[(strategy, broker_enabled)]
        a, b = outcome.weekly_profit(Provider.A), outcome.weekly_profit(Provider.B)
        return Provider.A if a >= b else Provider.B

    def rows(self) -> list[ComparisonRow]:
        rows = []
        for (strategy, broker), outcome in sorted(self.outcomes.items()):
            leader = self.dominant(strategy, broker)
            for provider in Provider:
                rows.append(ComparisonRow(
                    strategy=strategy,
                    broker_enabled=broker,
                    provider=provider,
                    weekly_profit=outcome.weekly_profit(provider),
                    mean_quality=outcome.mean_quality(provider),
                    mean_service_ratio=outcome.mean_service_ratio(provider),
                    blocked=outcome.total_blocked(provider),
                    dominant=provider is leader,
                ))
        return rows


def compare(
    demand: DemandProfile,
    strategies: Iterable[int] = (1, 2),
    broker_settings: Iterable[bool] = (False, True),
    overrides: Optional[dict] = None,
) -> Comparison:
    """Run every (strategy, broker setting) combination against the same demand."""
    overrides = overrides or {}
    broker_settings = list(broker_settings)
    outcomes = {}
    for strategy in strategies:
        for broker in broker_settings:
            scenario = EconomicScenario.for_strategy(strategy, broker, **overrides)
            outcomes[(strategy, broker)] = simulate_week(scenario, demand)

    comparison = Comparison(outcomes=outcomes)
    for strategy, broker in sorted(outcomes):
        logger.info(
            f"Strategy {strategy}, broker {'on' if broker else 'off'}: "
            f"provider {comparison.dominant(strategy, broker).value} dominates"
        )
    return comparison
