"""
Mapping from application traffic type to access category, broker class of
service and DiffServ per-hop behaviour.
"""

from enum import Enum
from typing import NamedTuple

from metrics.policy import ClassOfService
from simcore.traffic import TrafficType


class AccessCategory(str, Enum):
    AC_VO = "AC_VO"
    AC_VI = "AC_VI"
    AC_BK = "AC_BK"


class PerHopBehaviour(str, Enum):
    EF = "EF"
    AF = "AF"
    BE = "BE"


class TrafficClass(NamedTuple):
    access_category: AccessCategory
    cs_class: ClassOfService
    phb: PerHopBehaviour


TRAFFIC_CLASSES = {
    TrafficType.VOICE: TrafficClass(AccessCategory.AC_VO, ClassOfService.CS2, PerHopBehaviour.EF),
    TrafficType.VIDEO: TrafficClass(AccessCategory.AC_VI, ClassOfService.CS1, PerHopBehaviour.AF),
    TrafficType.BACKGROUND: TrafficClass(AccessCategory.AC_BK, ClassOfService.CS0, PerHopBehaviour.BE),
}


def map_traffic_class(traffic_type) -> TrafficClass:
    return TRAFFIC_CLASSES[TrafficType(traffic_type)]
