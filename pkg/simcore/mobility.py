"""
Mobility plans: where a terminal is at simulated time t.

Three kinds are supported: a fixed position, straight-line motion toward a
destination at constant speed, and a waypoint trace replayed with linear
interpolation (the BonnMotion model).
"""

from dataclasses import dataclass, field
from typing import Sequence, Union

import numpy as np

from simcore.geometry import Position


@dataclass(frozen=True)
class Static:
    position: Position

    def position_at(self, t: float) -> Position:
        return self.position


@dataclass(frozen=True)
class LinearTo:
    origin: Position
    dest: Position
    speed: float
    start_time: float = 0.0

    def __post_init__(self):
        if self.speed <= 0:
            raise ValueError(f"speed must be positive (got {self.speed})")

    def position_at(self, t: float) -> Position:
        total = self.origin.distance_to(self.dest)
        travelled = self.speed * max(0.0, t - self.start_time)
        if total == 0 or travelled >= total:
            return self.dest
        fraction = travelled / total
        return Position(
            self.origin.x + (self.dest.x - self.origin.x) * fraction,
            self.origin.y + (self.dest.y - self.origin.y) * fraction,
        )


@dataclass(frozen=True)
class WaypointTrace:
    waypoints: tuple[tuple[float, Position], ...]
    _times: np.ndarray = field(init=False, repr=False, compare=False)
    _xs: np.ndarray = field(init=False, repr=False, compare=False)
    _ys: np.ndarray = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if not self.waypoints:
            raise ValueError("a waypoint trace needs at least one waypoint")
        times = np.array([t for t, _ in self.waypoints], dtype=float)
        if np.any(np.diff(times) <= 0):
            raise ValueError("waypoint timestamps must be strictly increasing")
        object.__setattr__(self, 'waypoints', tuple(self.waypoints))
        object.__setattr__(self, '_times', times)
        object.__setattr__(self, '_xs', np.array([p.x for _, p in self.waypoints], dtype=float))
        object.__setattr__(self, '_ys', np.array([p.y for _, p in self.waypoints], dtype=float))

    @classmethod
    def from_points(cls, points: Sequence[tuple[float, float, float]]) -> 'WaypointTrace':
        return cls(tuple((float(t), Position(float(x), float(y))) for t, x, y in points))

    def position_at(self, t: float) -> Position:
        # np.interp holds the first/last waypoint outside the trace span
        return Position(
            float(np.interp(t, self._times, self._xs)),
            float(np.interp(t, self._times, self._ys)),
        )

    @property
    def start(self) -> Position:
        return self.waypoints[0][1]


MobilityPlan = Union[Static, LinearTo, WaypointTrace]
