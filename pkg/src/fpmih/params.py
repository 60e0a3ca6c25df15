"""Parameter records shared by the analytic model and the simulator.

Defaults come from the evaluation setup (frame error rate, interframe time,
L2 handover delay, hop counts, city section) plus a few link constants the
model needs but never pins down (frame size, wireless/wired delay, wired
bandwidth, data packet size).
"""

import math
from dataclasses import dataclass, fields, replace
from enum import Enum


class DomainError(ValueError):
    pass


class Scheme(str, Enum):
    STANDARD_MOBILE = "standard_mobile"
    STANDARD_NETWORK = "standard_network"
    FPMIP_PREDICTIVE = "fpmip_predictive"
    FPMIP_REACTIVE = "fpmip_reactive"
    FAST_MIH = "fast_mih"
    PROPOSED = "proposed"

    @property
    def family(self):
        """Closed-form family ('standard', 'fast', 'proposed') or None."""
        return _FAMILY.get(self)


_FAMILY = {
    Scheme.STANDARD_MOBILE: "standard",
    Scheme.STANDARD_NETWORK: "standard",
    Scheme.FAST_MIH: "fast",
    Scheme.PROPOSED: "proposed",
}

FAMILIES = ("standard", "fast", "proposed")


class _Params:
    def replace(self, **changes):
        return replace(self, **changes)

    @classmethod
    def field_names(cls):
        return [f.name for f in fields(cls)]


@dataclass(frozen=True)
class Topology(_Params):
    h_mn_mag: int = 1
    h_mag_lma: int = 10
    h_mag_mag: int = 10
    h_mag_miis: int = 10

    def __post_init__(self):
        for f in fields(self):
            if getattr(self, f.name) < 1:
                raise DomainError(f"{f.name} must be >= 1")


@dataclass(frozen=True)
class DelayParams(_Params):
    """Wireless ARQ and wired link constants; times in ms, sizes in octets."""

    tau: float = 20.0
    rho_f: float = 0.1
    L_f: int = 100
    D_wl: float = 10.0
    retx_limit: int = 10
    bw_wired: float = 12.5e6  # octets per second
    d_wired: float = 2.0
    t_l2: float = 45.35
    L_D: int = 1024

    def __post_init__(self):
        if not self.tau > 0:
            raise DomainError("tau must be > 0")
        if not 0 <= self.rho_f < 1:
            raise DomainError("rho_f must lie in [0, 1)")
        if not self.L_f > 0:
            raise DomainError("L_f must be > 0")
        if self.D_wl < 0:
            raise DomainError("D_wl must be >= 0")
        if self.retx_limit < 1:
            raise DomainError("retx_limit must be >= 1")
        if not self.bw_wired > 0:
            raise DomainError("bw_wired must be > 0")
        if self.d_wired < 0:
            raise DomainError("d_wired must be >= 0")
        if self.t_l2 < 0:
            raise DomainError("t_l2 must be >= 0")
        if not self.L_D > 0:
            raise DomainError("L_D must be > 0")


@dataclass(frozen=True)
class CostParams(_Params):
    p_f: float = 0.5
    A: float = 1.0
    B: float = 1.5
    n: int = 6
    m: int = 6
    retx_factor: str = "paper"  # or "expected_transmissions"

    def __post_init__(self):
        if not 0 <= self.p_f < 1:
            raise DomainError("p_f must lie in [0, 1)")
        if not (self.A > 0 and self.B > 0):
            raise DomainError("unit costs A and B must be > 0")
        if self.n < 0 or self.m < 0:
            raise DomainError("n and m must be >= 0")
        if self.retx_factor not in ("paper", "expected_transmissions"):
            raise DomainError(f"unknown retx_factor {self.retx_factor!r}")


@dataclass(frozen=True)
class MobilityParams(_Params):
    """City-section model: lengths in m, speeds in m/s, pause in s."""

    a: float = 36000.0
    b: float = 24000.0
    d_x: float = 10.0
    d_y: float = 10.0
    r: float = 100.0
    v_min: float = 1.0
    v_max: float = 50.0
    t_max: float = 70.0
    m_mob: int = 6

    def __post_init__(self):
        if not (self.d_x > 0 and self.d_y > 0):
            raise DomainError("road spacings must be > 0")
        if self.a < self.d_x or self.b < self.d_y:
            raise DomainError("section must be at least one road spacing in each direction")
        if self.r < 0:
            raise DomainError("cell radius must be >= 0")
        if not 0 < self.v_min <= self.v_max:
            raise DomainError("need 0 < v_min <= v_max")
        if self.t_max < 0:
            raise DomainError("t_max must be >= 0")
        if self.m_mob < 0:
            raise DomainError("m_mob must be >= 0")

    @property
    def n_h(self) -> int:
        return math.ceil(self.a / self.d_x - 1e-9)

    @property
    def n_v(self) -> int:
        return math.ceil(self.b / self.d_y - 1e-9)

    @property
    def k1(self) -> float:
        return 2 * self.r / self.d_x

    @property
    def k2(self) -> float:
        return 2 * self.r / self.d_y
