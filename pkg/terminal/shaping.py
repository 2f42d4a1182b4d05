"""
Class-of-service enforcement on per-flow rates.

CS0 flows may use whatever the NAP has left, CS2 flows never exceed their
contractual rate, and CS1 flows are throttled through a token bucket when the
NAP's load would push its quality to the threshold. Background traffic is
throttled first, then Video; Voice is never throttled.
"""

import logging
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Optional

from metrics.policy import ClassOfService, PolicySet
from simcore.clock import DEFAULT_TICK
from simcore.traffic import Flow, TrafficType

logger = logging.getLogger(__name__)

CS1_RATE_FLOOR = 0.1  # fraction of the contractual rate a throttled flow keeps
CS1_THROTTLE_ORDER = (TrafficType.BACKGROUND, TrafficType.VIDEO)


class TokenBucket:
    """
    Token bucket for shaping a flow to an average rate.

    Tokens are bits. The bucket drips ``rate`` tokens per simulated second up
    to ``capacity``; time is advanced explicitly with ``drip(elapsed)`` so the
    shaper stays deterministic.
    """

    def __init__(self, rate: float, capacity: Optional[float] = None, tick: float = DEFAULT_TICK):
        self.tick = tick
        self.rate = 0.0
        self.capacity = 0.0
        self.set_rate(rate, capacity)
        self.tokens = self.capacity

    def set_rate(self, rate: float, capacity: Optional[float] = None) -> None:
        if rate < 0:
            raise ValueError(f"token rate must be non-negative (got {rate})")
        self.rate = rate
        self.capacity = capacity if capacity is not None else rate * self.tick
        self.tokens = min(getattr(self, 'tokens', self.capacity), self.capacity)

    def drip(self, elapsed: float) -> None:
        self.tokens = min(self.capacity, self.tokens + self.rate * elapsed)

    def consume(self, amount: float) -> float:
        """Take up to ``amount`` tokens; returns how many were granted."""
        granted = min(amount, self.tokens)
        self.tokens -= granted
        return granted


@dataclass
class NapContext:
    """What enforce_cs needs to know about the NAP carrying the flow."""

    capacity: float
    allocated_total: float = 0.0
    throttle: Mapping[TrafficType, float] = field(default_factory=dict)


def cs1_target_ratio(policy: PolicySet, q_back: float = 1.0) -> float:
    """
    Minimum carried/offered ratio that keeps w1*ratio + w2*q_back above QT.

    Returns 0 when the backhaul term alone already clears the threshold.
    """
    if policy.w1 <= 0:
        return 0.0
    return max(0.0, min(1.0, (policy.qual_thr - policy.w2 * q_back) / policy.w1))


def cs1_throttle_factors(
    demands: Iterable[tuple[TrafficType, float]],
    capacity: float,
    policy: PolicySet,
    q_back: float = 1.0,
) -> dict[TrafficType, float]:
    """
    Per-traffic-type scale factors that bring the NAP's offered load back to
    what it can carry while staying above the quality threshold.
    """
    factors = {ttype: 1.0 for ttype in TrafficType}
    by_type = {ttype: 0.0 for ttype in TrafficType}
    for ttype, demand in demands:
        by_type[TrafficType(ttype)] += demand

    target = cs1_target_ratio(policy, q_back)
    if target <= 0:
        return factors
    sustainable = capacity / target
    excess = sum(by_type.values()) - sustainable
    for ttype in CS1_THROTTLE_ORDER:
        if excess <= 0:
            break
        class_demand = by_type[ttype]
        if class_demand <= 0:
            continue
        factor = max(CS1_RATE_FLOOR, 1.0 - excess / class_demand)
        factors[ttype] = factor
        excess -= class_demand * (1.0 - factor)
    if excess > 0:
        logger.debug(f"CS1 throttling leaves {excess:.0f} bit/s above the sustainable load")
    return factors


def enforce_cs(
    flow: Flow,
    allocation: float,
    cs: ClassOfService,
    nap: NapContext,
    bucket: Optional[TokenBucket] = None,
) -> float:
    """Shape one flow's allocated rate according to its class of service."""
    if allocation < 0:
        raise ValueError(f"allocation must be non-negative (got {allocation})")
    cs = ClassOfService(cs)

    if cs is ClassOfService.CS0:
        remaining = nap.capacity - (nap.allocated_total - allocation)
        return max(0.0, min(allocation, remaining))

    if cs is ClassOfService.CS2:
        return min(allocation, flow.cbr_rate)

    factor = max(CS1_RATE_FLOOR, nap.throttle.get(flow.traffic_type, 1.0))
    shaped_rate = factor * flow.cbr_rate
    if bucket is None:
        return min(allocation, shaped_rate)
    bucket.set_rate(shaped_rate)
    bucket.drip(bucket.tick)
    return bucket.consume(allocation * bucket.tick) / bucket.tick
