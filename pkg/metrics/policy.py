"""
Brokerage management policies.

PolicySet is the centralized configuration pushed to every broker unit and
terminal agent: fitness weights, thresholds, the hysteresis margin and the
active class of service.
"""

from dataclasses import asdict, dataclass, field, replace
from enum import Enum
from typing import Mapping


class Technology(str, Enum):
    """Access technology families known to the simulator."""

    WIFI = "wifi"
    WIMAX = "wimax"


class BackhaulQualityMode(str, Enum):
    """How Q_back is computed once RTT exceeds the congestion threshold."""

    LITERAL = "literal"  # (rtt_max - rtt) / k_back
    NORMALIZED = "normalized"  # (rtt_max - rtt) / (rtt_max - rtt_base)


class ClassOfService(str, Enum):
    CS0 = "CS0"  # unconstrained
    CS1 = "CS1"  # throttled to protect the NAP quality threshold
    CS2 = "CS2"  # capped at the contractual rate


DEFAULT_RTT_MAX_MS = 300.0
DEFAULT_K_BACK = 9600.0
DEFAULT_RTT_CONGESTION_THRESHOLD_MS = 150.0
DEFAULT_RTT_BASE_MS = 20.0
DEFAULT_K1 = {
    Technology.WIMAX.value: 0.0183,
    Technology.WIFI.value: 0.0524,
}
DEFAULT_QUAL_THR = 0.525
WEIGHT_TOLERANCE = 1e-9


@dataclass(frozen=True)
class PolicySet:
    rtt_max: float = DEFAULT_RTT_MAX_MS
    k_back: float = DEFAULT_K_BACK
    rtt_congestion_threshold: float = DEFAULT_RTT_CONGESTION_THRESHOLD_MS
    k1_per_technology: Mapping[str, float] = field(default_factory=lambda: dict(DEFAULT_K1))
    w1: float = 0.8
    w2: float = 0.2
    alpha: float = 0.2
    pow_thr: float = 7e-9
    qual_thr: float = DEFAULT_QUAL_THR
    delta: float = 0.33
    backhaul_quality_mode: BackhaulQualityMode = BackhaulQualityMode.NORMALIZED
    rtt_base: float = DEFAULT_RTT_BASE_MS
    cs_class: ClassOfService = ClassOfService.CS2

    def __post_init__(self):
        # Accept plain strings for the enum fields (config files, API payloads)
        object.__setattr__(self, 'backhaul_quality_mode', BackhaulQualityMode(self.backhaul_quality_mode))
        object.__setattr__(self, 'cs_class', ClassOfService(self.cs_class))
        object.__setattr__(
            self,
            'k1_per_technology',
            {str(getattr(tech, 'value', tech)): float(k1) for tech, k1 in self.k1_per_technology.items()},
        )
        self.validate()

    def validate(self) -> None:
        """Raise ValueError naming the first violated policy invariant."""
        if self.w1 < 0 or self.w2 < 0:
            raise ValueError(f"weights must be non-negative (w1={self.w1}, w2={self.w2})")
        if abs(self.w1 + self.w2 - 1.0) > WEIGHT_TOLERANCE:
            raise ValueError(f"w1 + w2 must equal 1 (got {self.w1 + self.w2})")
        if not 0 <= self.alpha <= 1:
            raise ValueError(f"alpha must lie in [0, 1] (got {self.alpha})")
        if not 0 < self.qual_thr < 1:
            raise ValueError(f"qual_thr must lie in (0, 1) (got {self.qual_thr})")
        if self.delta < 0:
            raise ValueError(f"delta must be non-negative (got {self.delta})")
        if self.pow_thr <= 0:
            raise ValueError(f"pow_thr must be positive (got {self.pow_thr})")
        if not self.k1_per_technology:
            raise ValueError("k1_per_technology must name at least one technology")
        for tech, k1 in self.k1_per_technology.items():
            if k1 <= 0:
                raise ValueError(f"k1 for {tech} must be positive (got {k1})")
        if not self.rtt_base < self.rtt_congestion_threshold <= self.rtt_max:
            raise ValueError(
                "rtt_base < rtt_congestion_threshold <= rtt_max must hold "
                f"(got {self.rtt_base}, {self.rtt_congestion_threshold}, {self.rtt_max})"
            )
        if self.k_back <= 0:
            raise ValueError(f"k_back must be positive (got {self.k_back})")

    def k1_for(self, technology: str) -> float:
        key = str(getattr(technology, 'value', technology))
        try:
            return self.k1_per_technology[key]
        except KeyError:
            raise ValueError(f"no k1 configured for technology '{key}'") from None

    def with_overrides(self, **overrides) -> 'PolicySet':
        """Return a copy with the given fields replaced (re-validated)."""
        return replace(self, **overrides)

    def as_dict(self) -> dict:
        data = asdict(self)
        data['backhaul_quality_mode'] = self.backhaul_quality_mode.value
        data['cs_class'] = self.cs_class.value
        data['k1_per_technology'] = dict(sorted(self.k1_per_technology.items()))
        return data


DEFAULT_POLICY = PolicySet()
