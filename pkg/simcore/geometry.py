"""
Plane geometry and received signal strength.
"""

import math
from dataclasses import dataclass
from typing import Protocol

DEFAULT_POW_THR = 7e-9  # watts received at the coverage edge
MIN_DISTANCE_M = 1.0


@dataclass(frozen=True)
class Position:
    x: float
    y: float

    def __post_init__(self):
        if not (math.isfinite(self.x) and math.isfinite(self.y)):
            raise ValueError(f"position must be finite (got {self.x}, {self.y})")

    def distance_to(self, other: 'Position') -> float:
        return math.hypot(self.x - other.x, self.y - other.y)

    def as_tuple(self) -> tuple[float, float]:
        return (self.x, self.y)


class Radiating(Protocol):
    position: Position
    coverage_radius: float


def in_coverage(terminal: Position, nap: Radiating) -> bool:
    return terminal.distance_to(nap.position) <= nap.coverage_radius


def received_power(terminal: Position, nap: Radiating, pow_thr: float = DEFAULT_POW_THR) -> float:
    """
    Inverse-square received power (watts), zero outside coverage.

    The emitter constant is calibrated so that a terminal exactly on the
    coverage edge receives pow_thr.
    """
    distance = terminal.distance_to(nap.position)
    if distance > nap.coverage_radius:
        return 0.0
    emitter = pow_thr * nap.coverage_radius ** 2
    return emitter / max(distance, MIN_DISTANCE_M) ** 2
