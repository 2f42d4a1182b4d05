"""
Fluid traffic model: flows, max-min fair sharing and per-tick loss/delay.
"""

from dataclasses import dataclass
from enum import Enum
from typing import Sequence

import numpy as np

DEFAULT_CBR_RATE = 320_000.0  # bits/s
PACKET_SIZE_BITS = 8000.0  # 1000-byte packets


class TrafficType(str, Enum):
    VOICE = "voice"
    VIDEO = "video"
    BACKGROUND = "background"


@dataclass(frozen=True)
class Flow:
    id: int
    terminal_id: int
    cbr_rate: float = DEFAULT_CBR_RATE
    start_time: float = 0.0
    traffic_type: TrafficType = TrafficType.VOICE

    def __post_init__(self):
        if self.cbr_rate <= 0:
            raise ValueError(f"cbr_rate must be positive (got {self.cbr_rate})")
        object.__setattr__(self, 'traffic_type', TrafficType(self.traffic_type))


def share_capacity(demands: Sequence[float], capacity: float) -> list[float]:
    """
    Max-min fair (water-filling) allocation of capacity among demands.

    Each flow receives min(demand, fair share); unused share of small flows is
    redistributed to the remaining ones.
    """
    if capacity <= 0:
        raise ValueError(f"capacity must be positive (got {capacity})")
    demand = np.asarray(demands, dtype=float)
    if demand.size == 0:
        return []
    if np.any(demand < 0):
        raise ValueError("demands must be non-negative")
    if demand.sum() <= capacity:
        return demand.tolist()

    allocation = np.zeros_like(demand)
    remaining = float(capacity)
    order = np.argsort(demand, kind='stable')
    for position, index in enumerate(order):
        share = remaining / (demand.size - position)
        granted = min(demand[index], share)
        allocation[index] = granted
        remaining -= granted
    return allocation.tolist()


def lost_packets(demand: float, allocation: float, tick: float) -> float:
    """Packets not carried during one tick."""
    return max(0.0, demand - allocation) * tick / PACKET_SIZE_BITS


def interarrival_delay(allocation: float) -> float:
    """Seconds between consecutive packets at the allocated rate (inf when starved)."""
    if allocation <= 0:
        return float('inf')
    return PACKET_SIZE_BITS / allocation
