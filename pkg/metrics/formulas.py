"""
Quality formulas and the terminal ranking score.

All functions are pure. Every quality is clamped to [0, 1]; rank scores are
bounded to [-1, 1] because both normalized terms are clamped.
"""

import math
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from metrics.policy import BackhaulQualityMode, PolicySet

SCORE_TIE_TOLERANCE = 1e-9


def clamp(value: float, low: float, high: float) -> float:
    return max(low, min(high, value))


def compute_backhaul_quality(rtt: float, policy: PolicySet) -> float:
    """
    Backhaul quality from a measured round trip time (ms).

    Below the congestion threshold the backhaul is considered healthy and the
    quality is always 1.
    """
    if rtt < 0:
        raise ValueError(f"rtt must be non-negative (got {rtt})")
    if rtt <= policy.rtt_congestion_threshold:
        return 1.0
    if policy.backhaul_quality_mode is BackhaulQualityMode.LITERAL:
        raw = (policy.rtt_max - rtt) / policy.k_back
    else:
        raw = (policy.rtt_max - rtt) / (policy.rtt_max - policy.rtt_base)
    return clamp(raw, 0.0, 1.0)


def compute_wireless_quality(n_flow: int, k1: float) -> float:
    if n_flow < 0:
        raise ValueError(f"n_flow must be non-negative (got {n_flow})")
    if k1 <= 0:
        raise ValueError(f"k1 must be positive (got {k1})")
    return clamp(1.0 - n_flow * k1, 0.0, 1.0)


def admission_limit(k1: float, qual_thr: float) -> int:
    """Largest flow count whose wireless quality stays above qual_thr (the knee)."""
    if k1 <= 0:
        raise ValueError(f"k1 must be positive (got {k1})")
    if not 0.0 < qual_thr < 1.0:
        raise ValueError(f"qual_thr must lie in (0, 1) (got {qual_thr})")
    limit = max(0, math.ceil((1.0 - qual_thr) / k1) - 1)
    while compute_wireless_quality(limit + 1, k1) > qual_thr:
        limit += 1
    while limit > 0 and compute_wireless_quality(limit, k1) <= qual_thr:
        limit -= 1
    return limit


def compute_nap_quality(wq: float, q_back: float, policy: PolicySet) -> float:
    for name, value in (('wq', wq), ('q_back', q_back)):
        if not 0.0 <= value <= 1.0:
            raise ValueError(f"{name} must lie in [0, 1] (got {value})")
    return clamp(policy.w1 * wq + policy.w2 * q_back, 0.0, 1.0)


def compute_reputation(nap_qualities: Iterable[float]) -> float:
    """Technology reputation: mean quality of all its NAPs."""
    values = np.asarray(list(nap_qualities), dtype=float)
    if values.size == 0:
        raise ValueError("cannot compute reputation of a technology without NAP qualities")
    return clamp(float(values.mean()), 0.0, 1.0)


def compute_rank_score(power: float, q_nap: float, reputation: float, policy: PolicySet) -> float:
    if power < 0:
        raise ValueError(f"power must be non-negative (got {power})")
    power_term = clamp((power - policy.pow_thr) / policy.pow_thr, -1.0, 1.0)
    quality_term = clamp((q_nap - policy.qual_thr) / policy.qual_thr, -1.0, 1.0)
    return reputation * (policy.alpha * power_term + (1.0 - policy.alpha) * quality_term)


@dataclass(frozen=True)
class RankCandidate:
    nap_id: str
    power: float
    q_nap: float
    reputation: float
    priority: int = 1


@dataclass(frozen=True)
class RankedNap:
    nap_id: str
    score: float


def build_ranking(candidates: Sequence[RankCandidate], policy: PolicySet) -> list[RankedNap]:
    """
    Order candidate NAPs by rank score, best first.

    Scores within SCORE_TIE_TOLERANCE of the head of a run are tied; ties go to
    the higher technology priority, then to the lower nap id.
    """
    scored = [
        (compute_rank_score(c.power, c.q_nap, c.reputation, policy), c)
        for c in candidates
    ]
    scored.sort(key=lambda item: (-item[0], -item[1].priority, item[1].nap_id))

    ranking: list[RankedNap] = []
    i = 0
    while i < len(scored):
        head_score = scored[i][0]
        j = i + 1
        while j < len(scored) and head_score - scored[j][0] < SCORE_TIE_TOLERANCE:
            j += 1
        tied = sorted(scored[i:j], key=lambda item: (-item[1].priority, item[1].nap_id))
        ranking.extend(RankedNap(nap_id=c.nap_id, score=score) for score, c in tied)
        i = j
    return ranking
