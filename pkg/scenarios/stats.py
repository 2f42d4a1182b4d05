"""
Replication statistics: means with Student-t 95% confidence half-widths.
"""

import logging
from dataclasses import asdict, dataclass, field
from typing import Optional, Sequence

import numpy as np
from scipy import stats

from simcore.results import RunResult

logger = logging.getLogger(__name__)

CONFIDENCE = 0.95


@dataclass(frozen=True)
class Estimate:
    mean: float
    half_width: Optional[float]  # None when fewer than two replications

    @property
    def has_ci(self) -> bool:
        return self.half_width is not None


def estimate(values: Sequence[float], confidence: float = CONFIDENCE) -> Estimate:
    """Mean and t-based confidence half-width of a sample."""
    a = np.asarray(values, dtype=float)
    if a.size == 0:
        raise ValueError("cannot estimate an empty sample")
    mean = float(np.mean(a))
    if a.size < 2:
        return Estimate(mean=mean, half_width=None)
    if np.all(a == a[0]):
        return Estimate(mean=mean, half_width=0.0)
    half_width = float(stats.sem(a) * stats.t.ppf((1 + confidence) / 2.0, a.size - 1))
    return Estimate(mean=mean, half_width=half_width)


@dataclass
class SeriesEstimate:
    times: list[float]
    mean: list[float]
    half_width: list[Optional[float]]


@dataclass
class Summary:
    scenario: str
    replications: int
    seeds: list[int]
    technologies: list[str]
    policy: dict = field(default_factory=dict)
    scalars: dict[str, Estimate] = field(default_factory=dict)
    flows_per_tech: dict[str, SeriesEstimate] = field(default_factory=dict)
    backhaul_quality: dict[str, SeriesEstimate] = field(default_factory=dict)
    reputation: dict[str, SeriesEstimate] = field(default_factory=dict)
    runs: list[RunResult] = field(default_factory=list)

    @property
    def has_ci(self) -> bool:
        return self.replications >= 2

    def to_dict(self, include_runs: bool = False) -> dict:
        data = asdict(self)
        if not include_runs:
            data.pop('runs')
        return data


def _series(results: Sequence[RunResult], pick) -> SeriesEstimate:
    length = min(len(r.times) for r in results)
    times = list(results[0].times[:length])
    means, halves = [], []
    for i in range(length):
        e = estimate([pick(r)[i] for r in results])
        means.append(e.mean)
        halves.append(e.half_width)
    return SeriesEstimate(times=times, mean=means, half_width=halves)


def final_attached(result: RunResult, technology: str) -> int:
    series = result.flows_per_tech.get(technology, [])
    return series[-1] if series else 0


def aggregate(results: Sequence[RunResult], policy: Optional[dict] = None) -> Summary:
    """
    Summarize replications of one scenario.

    With a single replication only means are reported (every half-width is None).
    """
    if not results:
        raise ValueError("aggregate needs at least one result")
    first = results[0]
    summary = Summary(
        scenario=first.scenario,
        replications=len(results),
        seeds=[r.seed for r in results],
        technologies=list(first.technologies),
        policy=dict(policy or {}),
        runs=list(results),
    )
    if len(results) < 2:
        logger.info(f"Only one replication of {first.scenario}; confidence intervals omitted")

    summary.scalars['handovers'] = estimate([r.handovers for r in results])
    summary.scalars['blocks'] = estimate([r.blocks for r in results])
    summary.scalars['mean_throughput_ratio'] = estimate([r.mean_throughput_ratio() for r in results])
    summary.scalars['lost_packets'] = estimate([sum(r.lost_packets.values()) for r in results])
    for tech in summary.technologies:
        summary.scalars[f'final_attached_{tech}'] = estimate([final_attached(r, tech) for r in results])

    if all(r.times for r in results):
        for tech in summary.technologies:
            summary.flows_per_tech[tech] = _series(results, lambda r, t=tech: r.flows_per_tech[t])
            summary.backhaul_quality[tech] = _series(results, lambda r, t=tech: r.backhaul_quality[t])
            summary.reputation[tech] = _series(results, lambda r, t=tech: r.reputation[t])
    return summary
