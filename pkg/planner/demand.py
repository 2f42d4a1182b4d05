"""
Weekly demand profiles for the techno-economic planner.

A profile is 168 hourly customer counts, Monday 00:00 first. Profiles come
from a CSV with ``hour,customers`` columns or from the built-in synthetic
commuter week (two weekday rush hours, flat weekend).
"""

import csv
import logging
from dataclasses import dataclass
from pathlib import Path
from typing import Union

import numpy as np

from simcore.errors import DemandValidationError

logger = logging.getLogger(__name__)

HOURS_PER_DAY = 24
HOURS_PER_WEEK = 7 * HOURS_PER_DAY
WORKING_DAYS = 5

DEFAULT_PEAK = 96.0
PEAK_TO_OFFPEAK = 3.4  # busy-hour growth factor
NIGHT_FRACTION = 0.25
RUSH_HOURS = (8, 18)
RUSH_SPREAD = 1.5  # hours
NIGHT_START = 22
NIGHT_END = 6


@dataclass(frozen=True)
class DemandProfile:
    counts: np.ndarray
    source: str = 'synthetic'

    def __post_init__(self):
        counts = np.asarray(self.counts, dtype=float)
        if counts.shape != (HOURS_PER_WEEK,):
            raise DemandValidationError(f"a demand profile needs exactly {HOURS_PER_WEEK} hours (got {counts.size})")
        if not np.all(np.isfinite(counts)):
            raise DemandValidationError("customer counts must be finite")
        negative = np.flatnonzero(counts < 0)
        if negative.size:
            raise DemandValidationError(f"negative customer count at hour {int(negative[0])}")
        counts.setflags(write=False)
        object.__setattr__(self, 'counts', counts)

    def scaled(self, factor: float) -> 'DemandProfile':
        if factor < 0:
            raise DemandValidationError(f"demand scale must be non-negative (got {factor})")
        return DemandProfile(self.counts * factor, source=self.source)

    @property
    def total(self) -> float:
        return float(self.counts.sum())

    @property
    def peak(self) -> float:
        return float(self.counts.max())


def _parse_hour(raw: str, line: int) -> int:
    try:
        value = float(raw)
    except (TypeError, ValueError):
        raise DemandValidationError(f"line {line}: hour '{raw}' is not a number") from None
    if not value.is_integer() or not 0 <= value < HOURS_PER_WEEK:
        raise DemandValidationError(f"line {line}: hour {raw} is outside 0-{HOURS_PER_WEEK - 1}")
    return int(value)


def _parse_customers(raw: str, line: int) -> float:
    try:
        return float(raw)
    except (TypeError, ValueError):
        raise DemandValidationError(f"line {line}: customers '{raw}' is not a number") from None


def parse_demand(text: str, source: str = 'csv') -> DemandProfile:
    reader = csv.DictReader(text.splitlines())
    fields = [name.strip() for name in (reader.fieldnames or [])]
    missing_columns = {'hour', 'customers'} - set(fields)
    if missing_columns:
        raise DemandValidationError(f"demand CSV is missing column(s): {', '.join(sorted(missing_columns))}")
    reader.fieldnames = fields

    counts: dict[int, float] = {}
    for line, row in enumerate(reader, start=2):
        hour = _parse_hour(row['hour'], line)
        if hour in counts:
            raise DemandValidationError(f"line {line}: hour {hour} appears twice")
        customers = _parse_customers(row['customers'], line)
        if customers < 0:
            raise DemandValidationError(f"line {line}: negative customer count {customers:g} at hour {hour}")
        counts[hour] = customers

    gaps = [hour for hour in range(HOURS_PER_WEEK) if hour not in counts]
    if gaps:
        shown = ', '.join(str(hour) for hour in gaps[:5])
        more = f" and {len(gaps) - 5} more" if len(gaps) > 5 else ''
        raise DemandValidationError(f"demand CSV is missing hour(s) {shown}{more}")

    return DemandProfile(np.array([counts[hour] for hour in range(HOURS_PER_WEEK)]), source=source)


def load_demand(path: Union[str, Path], scale: float = 1.0) -> DemandProfile:
    """
    Read a weekly demand CSV (``hour`` 0-167, ``customers`` >= 0).

    Raises DemandValidationError naming the first problem found: a missing
    column, a bad or duplicated hour, a negative count, or missing hours.
    """
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as e:
        raise DemandValidationError(f"cannot read demand file {path}: {e.strerror or e}") from e
    profile = parse_demand(text, source=str(path))
    logger.info(f"Loaded demand profile from {path}: {profile.total:.0f} customer-hours, peak {profile.peak:.0f}")
    return profile.scaled(scale) if scale != 1.0 else profile


def synthetic_week(
    peak: float = DEFAULT_PEAK,
    peak_ratio: float = PEAK_TO_OFFPEAK,
    night_fraction: float = NIGHT_FRACTION,
) -> DemandProfile:
    """
    Commuter-shaped week: weekday rush hours at 08:00 and 18:00 reaching
    ``peak``, a daytime base of ``peak / peak_ratio`` and quiet nights.
    Weekends stay at the daytime base.
    """
    if peak < 0 or peak_ratio < 1 or not 0 <= night_fraction <= 1:
        raise DemandValidationError(
            f"invalid synthetic week (peak={peak}, peak_ratio={peak_ratio}, night_fraction={night_fraction})"
        )
    base = peak / peak_ratio
    hours = np.arange(HOURS_PER_DAY)
    rush = np.max([np.exp(-((hours - h) ** 2) / (2 * RUSH_SPREAD ** 2)) for h in RUSH_HOURS], axis=0)
    night = (hours < NIGHT_END) | (hours >= NIGHT_START)

    weekday = np.where(night, base * night_fraction, base + (peak - base) * rush)
    weekend = np.where(night, base * night_fraction, base)
    counts = np.concatenate([weekday] * WORKING_DAYS + [weekend] * (7 - WORKING_DAYS))
    return DemandProfile(counts, source='synthetic')
