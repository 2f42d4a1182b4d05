"""
Built-in scenarios.

Topology shared by the wireless, backhaul and flash-crowd scenarios: one
WiMAX base station and two Wi-Fi access points side by side, with static
terminals parked between the two APs. Mobile terminals walk toward them from
either side at 1 m/s, a new pair leaving every 5 s.
"""

from copy import deepcopy

from simcore.errors import UnknownPresetError

BS1 = {'id': 'BS1', 'technology': 'wimax', 'x': 1000.0, 'y': 1300.0, 'coverage_radius': 1000.0}
AP1 = {'id': 'AP1', 'technology': 'wifi', 'x': 995.0, 'y': 1000.0, 'coverage_radius': 20.0}
AP2 = {'id': 'AP2', 'technology': 'wifi', 'x': 1005.0, 'y': 1000.0, 'coverage_radius': 20.0}
HOTSPOT = (1000.0, 999.0)

BALANCED_WEIGHTS = {'w1': 0.5, 'w2': 0.5}
CONGESTED_BACKHAUL = 5_000_000.0
AMPLE_BACKHAUL = 15_000_000.0


def _static(count):
    return {'kind': 'static', 'count': count, 'x': HOTSPOT[0], 'y': HOTSPOT[1]}


def _mobile(count):
    return {
        'kind': 'mobile',
        'count': count,
        'origins': [(900.0, HOTSPOT[1]), (1100.0, HOTSPOT[1])],
        'dest': HOTSPOT,
        'speed': 1.0,
        'start_time': 10.0,
        'stagger': 5.0,
        'pair_size': 2,
    }


def _base(name, description, terminals, duration=300.0, **extra):
    preset = {
        'name': name,
        'description': description,
        'duration': duration,
        'naps': [BS1, AP1, AP2],
        'terminals': terminals,
    }
    preset.update(extra)
    return preset


PRESETS = {
    'A': _base(
        'A', 'No broker: every terminal camps on WiMAX', [_static(80)],
        broker_enabled=False, default_technology='wimax',
    ),
    'B': _base('B', 'Broker on, QT 0.525', [_static(80)], policy={'qual_thr': 0.525}),
    'C': _base('C', 'Broker on, QT 0.725', [_static(80)], policy={'qual_thr': 0.725}),
    'D': _base('D', '64 static and 16 mobile terminals', [_mobile(16), _static(64)], policy={'qual_thr': 0.525}),
    'E': _base('E', '32 static and 48 mobile terminals', [_mobile(48), _static(32)], policy={'qual_thr': 0.525}),
    'F': _base(
        'F', 'Overprovisioned WiMAX backhaul, balanced weights', [_static(40)],
        policy={**BALANCED_WEIGHTS, 'qual_thr': 0.525},
        backhaul={'wimax': {'capacity': AMPLE_BACKHAUL}},
    ),
    'G': _base(
        'G', 'Underprovisioned WiMAX backhaul, QT 0.525', [_static(40)],
        policy={**BALANCED_WEIGHTS, 'qual_thr': 0.525},
        backhaul={'wimax': {'capacity': CONGESTED_BACKHAUL}},
    ),
    'H': _base(
        'H', 'Underprovisioned WiMAX backhaul, QT 0.725', [_static(40)],
        policy={**BALANCED_WEIGHTS, 'qual_thr': 0.725},
        backhaul={'wimax': {'capacity': CONGESTED_BACKHAUL}},
    ),
    'I': _base(
        'I', 'Three flash crowds of 40 flows', [_static(80)], duration=900.0,
        policy={'qual_thr': 0.525},
        crowds=[{'time': t, 'size': 40} for t in (260.0, 460.0, 660.0)],
    ),
    'RW': {
        'name': 'RW',
        'description': 'RandomWaypoint walkers around two APs under a distant BS',
        'duration': 300.0,
        'policy': {'qual_thr': 0.525},
        'naps': [
            {'id': 'BS1', 'technology': 'wimax', 'x': 326.0, 'y': 10.0, 'coverage_radius': 1000.0},
            {'id': 'AP1', 'technology': 'wifi', 'x': 8.0, 'y': 26.0, 'coverage_radius': 20.0},
            {'id': 'AP2', 'technology': 'wifi', 'x': 18.0, 'y': 26.0, 'coverage_radius': 20.0},
        ],
        'terminals': [{
            'kind': 'trace',
            'count': 80,
            'random_waypoint': {'x': 26.0, 'y': 26.0, 'dimension': 3, 'max_speed': 1.2, 'min_speed': 0.8, 'max_pause': 60.0},
        }],
    },
}

for _flows in (40, 80):
    for _qt in (0.525, 0.725):
        _name = f'J-{_flows}-{int(round(_qt * 1000))}'
        PRESETS[_name] = _base(
            _name, f'QT sweep: {_flows} flows at QT {_qt}', [_static(_flows)],
            policy={'w1': 0.8, 'w2': 0.2, 'qual_thr': _qt},
        )

PRESET_GROUPS = {
    'J': ['J-40-525', 'J-40-725', 'J-80-525', 'J-80-725'],
}


def preset_names() -> list[str]:
    return sorted(PRESETS) + sorted(PRESET_GROUPS)


def get_preset(name: str) -> dict:
    """Raw configuration data for a single preset (a fresh copy)."""
    try:
        return deepcopy(PRESETS[name])
    except KeyError:
        raise UnknownPresetError(name, preset_names()) from None


def expand_preset(name: str) -> list[str]:
    """Member presets of a group, or the name itself."""
    if name in PRESET_GROUPS:
        return list(PRESET_GROUPS[name])
    if name in PRESETS:
        return [name]
    raise UnknownPresetError(name, preset_names())
