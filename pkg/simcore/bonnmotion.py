"""
BonnMotion waypoint traces: parsing, writing and RandomWaypoint generation.

A trace has one line per node: whitespace-separated triples ``t x y`` with
strictly increasing ``t``. Generation follows the RandomWaypoint model with
BonnMotion's parameter names (-d duration, -n nodes, -x/-y area, -o dimension,
-h max speed, -l min speed, -p max pause).
"""

import logging
import math
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable

import numpy as np

from simcore.errors import TraceParseError
from simcore.mobility import WaypointTrace

logger = logging.getLogger(__name__)


def parse_bonnmotion(text: str) -> list[WaypointTrace]:
    traces: list[WaypointTrace] = []
    for line_no, raw in enumerate(text.splitlines(), start=1):
        tokens = raw.split()
        if not tokens:
            continue
        if len(tokens) % 3 != 0:
            raise TraceParseError(
                f"expected whitespace-separated 't x y' triples, got {len(tokens)} tokens",
                line=line_no,
            )
        values = []
        for column, token in enumerate(tokens, start=1):
            try:
                value = float(token)
            except ValueError:
                raise TraceParseError(f"non-numeric token '{token}'", line=line_no, column=column) from None
            if not math.isfinite(value):
                raise TraceParseError(f"non-finite value '{token}'", line=line_no, column=column)
            values.append(value)

        points = [tuple(values[i:i + 3]) for i in range(0, len(values), 3)]
        for index in range(1, len(points)):
            if points[index][0] <= points[index - 1][0]:
                raise TraceParseError(
                    f"time {points[index][0]} does not increase after {points[index - 1][0]}",
                    line=line_no,
                    column=3 * index + 1,
                )
        traces.append(WaypointTrace.from_points(points))
    logger.debug(f"Parsed BonnMotion trace with {len(traces)} nodes")
    return traces


def load_bonnmotion(path) -> list[WaypointTrace]:
    return parse_bonnmotion(Path(path).read_text())


def format_bonnmotion(traces: Iterable[WaypointTrace]) -> str:
    lines = []
    for trace in traces:
        lines.append(' '.join(f"{t:.10g} {p.x:.10g} {p.y:.10g}" for t, p in trace.waypoints))
    return '\n'.join(lines) + '\n'


@dataclass(frozen=True)
class RandomWaypointParams:
    duration: float = 300.0  # -d
    nodes: int = 80  # -n
    x: float = 26.0  # -x
    y: float = 26.0  # -y
    dimension: int = 3  # -o: 1 moves along x only, 2 along x or y, 3 free 2-D
    max_speed: float = 1.2  # -h
    min_speed: float = 0.8  # -l
    max_pause: float = 60.0  # -p

    def __post_init__(self):
        if self.duration <= 0 or self.nodes < 1:
            raise ValueError("duration and node count must be positive")
        if not 0 < self.min_speed <= self.max_speed:
            raise ValueError("speeds must satisfy 0 < min_speed <= max_speed")
        if self.max_pause < 0:
            raise ValueError("max_pause must be non-negative")
        if self.dimension not in (1, 2, 3):
            raise ValueError("dimension must be 1, 2 or 3")


def _next_target(rng: np.random.Generator, params: RandomWaypointParams, x: float, y: float) -> tuple[float, float]:
    if params.dimension == 1:
        return float(rng.uniform(0, params.x)), y
    if params.dimension == 2:
        if rng.random() < 0.5:
            return float(rng.uniform(0, params.x)), y
        return x, float(rng.uniform(0, params.y))
    return float(rng.uniform(0, params.x)), float(rng.uniform(0, params.y))


def generate_random_waypoint(params: RandomWaypointParams, seed: int) -> list[WaypointTrace]:
    """Generate one trace per node; identical (params, seed) give identical traces."""
    rng = np.random.default_rng(seed)
    traces = []
    for _ in range(params.nodes):
        t = 0.0
        x, y = float(rng.uniform(0, params.x)), float(rng.uniform(0, params.y))
        points = [(t, x, y)]
        while t < params.duration:
            pause = float(rng.uniform(0, params.max_pause))
            if pause > 0 and t + pause < params.duration:
                t += pause
                points.append((t, x, y))
            elif pause > 0:
                points.append((params.duration, x, y))
                break

            tx, ty = _next_target(rng, params, x, y)
            speed = float(rng.uniform(params.min_speed, params.max_speed))
            travel = float(np.hypot(tx - x, ty - y)) / speed
            if travel <= 0:
                continue
            if t + travel >= params.duration:
                fraction = (params.duration - t) / travel
                points.append((params.duration, x + (tx - x) * fraction, y + (ty - y) * fraction))
                break
            t += travel
            x, y = tx, ty
            points.append((t, x, y))
        traces.append(WaypointTrace.from_points(points))
    logger.info(f"Generated RandomWaypoint trace: {params.nodes} nodes over {params.duration}s")
    return traces
