import math
from dataclasses import dataclass

DEFAULT_TICK = 0.1


@dataclass
class SimClock:
    """
    Fixed-tick simulation clock.

    Time is kept as an integer step count so that ``now`` is always an exact
    tick multiple and periodic events line up without float drift.
    """

    tick: float = DEFAULT_TICK
    step: int = 0

    def __post_init__(self):
        if self.tick <= 0:
            raise ValueError(f"tick must be positive (got {self.tick})")

    @property
    def now(self) -> float:
        return round(self.step * self.tick, 9)

    def steps_for(self, period: float) -> int:
        return max(1, round(period / self.tick))

    def step_at(self, time: float) -> int:
        """Index of the first tick at or after ``time``."""
        return max(0, math.ceil(round(time / self.tick, 9)))

    def is_due(self, period: float) -> bool:
        return self.step % self.steps_for(period) == 0

    def advance(self) -> float:
        self.step += 1
        return self.now
