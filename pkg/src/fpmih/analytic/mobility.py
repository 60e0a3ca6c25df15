"""City-section mobility: epoch length, subnet crossings and handover rate."""

import math

from ..params import DomainError, MobilityParams


def epoch_length(mob: MobilityParams) -> float:
    """Expected distance travelled in one epoch (m)."""
    nh, nv = mob.n_h, mob.n_v
    return mob.d_x * (nh + 1) * (nh - 1) / (3 * nh) + mob.d_y * (nv + 1) * (nv - 1) / (3 * nv)


def _crossings(m: int, k: float, n: int) -> float:
    return m * (m + 1) * k / (6 * n * n) * (6 * n - 4 * m * k + k + 3)


def crossings_x(mob: MobilityParams) -> float:
    return _crossings(mob.m_mob, mob.k1, mob.n_h)


def crossings_y(mob: MobilityParams) -> float:
    return _crossings(mob.m_mob, mob.k2, mob.n_v)


def expected_crossings(mob: MobilityParams) -> float:
    """Expected subnet crossings per epoch."""
    return crossings_x(mob) + crossings_y(mob)


def epoch_time(mob: MobilityParams, allow_constant_speed: bool = False) -> float:
    """Expected travel time of an epoch (s) for speed uniform on [v_min, v_max]."""
    length = epoch_length(mob)
    if mob.v_max == mob.v_min:
        if not allow_constant_speed:
            raise DomainError("v_min == v_max; pass allow_constant_speed=True for L/v")
        return length / mob.v_min
    return length * math.log(abs(mob.v_max / mob.v_min)) / (mob.v_max - mob.v_min)


def pause_time(mob: MobilityParams) -> float:
    return 0.5 * mob.t_max


def handover_rate(mob: MobilityParams, allow_constant_speed: bool = False) -> float:
    """Expected handovers per second."""
    return expected_crossings(mob) / (
        epoch_time(mob, allow_constant_speed) + 2 * pause_time(mob)
    )
