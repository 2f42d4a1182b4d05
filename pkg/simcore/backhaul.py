from dataclasses import dataclass

DEFAULT_UTIL_KNEE = 0.9
DEFAULT_UTIL_SAT = 1.2
OVERPROVISIONED_CAPACITY = 100_000_000.0  # bits/s


@dataclass(frozen=True)
class BackhaulModel:
    """Load to round-trip-time response of a technology's wired backhaul."""

    capacity: float = OVERPROVISIONED_CAPACITY
    rtt_base: float = 20.0
    rtt_max: float = 300.0
    util_knee: float = DEFAULT_UTIL_KNEE
    util_sat: float = DEFAULT_UTIL_SAT

    def __post_init__(self):
        if self.capacity <= 0:
            raise ValueError(f"backhaul capacity must be positive (got {self.capacity})")
        if not self.rtt_base < self.rtt_max:
            raise ValueError("rtt_base must be below rtt_max")
        if not self.util_knee < self.util_sat:
            raise ValueError("util_knee must be below util_sat")


def backhaul_rtt(offered_load: float, model: BackhaulModel) -> float:
    """RTT in ms: flat up to the utilisation knee, then a linear ramp to rtt_max."""
    if offered_load < 0:
        raise ValueError(f"offered_load must be non-negative (got {offered_load})")
    utilisation = offered_load / model.capacity
    if utilisation <= model.util_knee:
        return model.rtt_base
    ramp = min(1.0, (utilisation - model.util_knee) / (model.util_sat - model.util_knee))
    return model.rtt_base + (model.rtt_max - model.rtt_base) * ramp
