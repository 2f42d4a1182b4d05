"""
RunResult - everything one simulation run records.

Series are sampled every ``sample_period`` of simulated time and aligned with
``times``. Per-flow samples are only taken while the flow is attached.
"""

from dataclasses import asdict, dataclass, field
from typing import Optional

import numpy as np


@dataclass(frozen=True)
class FlowSample:
    t: float
    flow_id: int
    nap_id: str
    technology: str
    throughput: float  # bits/s actually carried
    cbr_rate: float
    lost_packets: float  # cumulative
    delay: float  # seconds between packets


@dataclass
class RunResult:
    scenario: str
    seed: int
    technologies: list[str]
    terminal_count: int = 0
    times: list[float] = field(default_factory=list)
    flows_per_tech: dict[str, list[int]] = field(default_factory=dict)
    active: list[int] = field(default_factory=list)
    blocked: list[int] = field(default_factory=list)
    detached: list[int] = field(default_factory=list)
    handover_series: list[int] = field(default_factory=list)
    block_series: list[int] = field(default_factory=list)
    backhaul_quality: dict[str, list[float]] = field(default_factory=dict)
    reputation: dict[str, list[float]] = field(default_factory=dict)
    nap_quality: dict[str, list[float]] = field(default_factory=dict)
    flow_samples: list[FlowSample] = field(default_factory=list)
    lost_packets: dict[int, float] = field(default_factory=dict)
    handovers: int = 0
    blocks: int = 0

    def __post_init__(self):
        for tech in self.technologies:
            self.flows_per_tech.setdefault(tech, [])
            self.backhaul_quality.setdefault(tech, [])
            self.reputation.setdefault(tech, [])

    def index_at(self, t: float) -> int:
        """Index of the last sample taken at or before ``t``."""
        position = int(np.searchsorted(np.asarray(self.times), t + 1e-9, side='right')) - 1
        if position < 0:
            raise ValueError(f"no sample at or before t={t}")
        return position

    def attached_at(self, t: float, technology: Optional[str] = None) -> int:
        i = self.index_at(t)
        if technology is not None:
            return self.flows_per_tech[technology][i]
        return sum(series[i] for series in self.flows_per_tech.values())

    def attached_totals(self) -> list[int]:
        if not self.times:
            return []
        return np.sum([self.flows_per_tech[tech] for tech in self.technologies], axis=0).astype(int).tolist()

    def throughput_ratios_at(self, t: float) -> list[float]:
        sample_time = self.times[self.index_at(t)]
        return [s.throughput / s.cbr_rate for s in self.flow_samples if s.t == sample_time]

    def mean_throughput_ratio(self, since: float = 0.0) -> float:
        ratios = [s.throughput / s.cbr_rate for s in self.flow_samples if s.t >= since]
        return float(np.mean(ratios)) if ratios else 0.0

    def to_dict(self) -> dict:
        return asdict(self)

    @classmethod
    def from_dict(cls, data: dict) -> 'RunResult':
        data = dict(data)
        data['flow_samples'] = [FlowSample(**sample) for sample in data.get('flow_samples', [])]
        data['lost_packets'] = {int(k): v for k, v in data.get('lost_packets', {}).items()}
        return cls(**data)
